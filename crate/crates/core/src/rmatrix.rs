//! Hecke R-matrices and the Yang-Baxter checks.

use num::traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::exact::{ExactError, JsonScalar, LaurentPoly1, LaurentPoly2, Rational, Substitution};
use crate::tensor::{Leg, RingMatrix, TensorError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("q must be a rational outside {{0, 1, -1}}")]
    BadQ,
    #[error("dim V must be at least 2, got {0}")]
    BadDim(usize),
    #[error("omega does not equal q - 1/q")]
    OmegaMismatch,
    #[error("R violates the Hecke condition R^2 = omega R + 1")]
    HeckeViolated,
    #[error("R violates the braid relation")]
    BraidViolated,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl From<ExactError> for RMatrixError {
    fn from(e: ExactError) -> Self {
        RMatrixError::Tensor(e.into())
    }
}

/// An R-matrix on `V⊗V` with its Hecke parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RSpec {
    dim: usize,
    q: Rational,
    omega: Rational,
    r: RingMatrix<Rational>,
}

pub fn admissible_q(q: &Rational) -> bool {
    !(q.is_zero() || q.is_one() || *q == -Rational::one())
}

pub fn omega_of(q: &Rational) -> Rational {
    q - q.recip()
}

impl RSpec {
    /// Validates `q`, `omega = q - 1/q`, the Hecke condition and the braid relation.
    pub fn new(dim: usize, q: Rational, r: RingMatrix<Rational>) -> Result<Self, RMatrixError> {
        if dim < 2 {
            return Err(RMatrixError::BadDim(dim));
        }
        if !admissible_q(&q) {
            return Err(RMatrixError::BadQ);
        }
        if r.rows() != dim * dim || !r.is_square() {
            return Err(TensorError::ShapeMismatch(format!(
                "R is {}x{}, expected {n}x{n}",
                r.rows(),
                r.cols(),
                n = dim * dim
            ))
            .into());
        }
        let rs = RSpec {
            dim,
            omega: omega_of(&q),
            q,
            r,
        };
        if !hecke_residual(&rs).is_zero() {
            return Err(RMatrixError::HeckeViolated);
        }
        if !braid_residual(&rs).is_zero() {
            return Err(RMatrixError::BraidViolated);
        }
        Ok(rs)
    }

    /// No validation at all; for probing the residual functions with non-Hecke input.
    pub fn unchecked(dim: usize, q: Rational, omega: Rational, r: RingMatrix<Rational>) -> Self {
        RSpec { dim, q, omega, r }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    pub fn matrix(&self) -> &RingMatrix<Rational> {
        &self.r
    }

    /// `R^-1 = R - omega` (valid only under the Hecke condition).
    pub fn inverse(&self) -> RingMatrix<Rational> {
        &self.r - &RingMatrix::scalar(self.dim * self.dim, self.omega.clone())
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.r.to_json();
        let obj = v.as_object_mut().expect("matrix json is an object");
        obj.insert("dim".into(), Value::from(self.dim));
        obj.insert("q".into(), self.q.to_json());
        obj.insert("omega".into(), self.omega.to_json());
        v
    }

    /// Parses the output of [`RSpec::to_json`]; the R-matrix is re-validated.
    pub fn from_json(v: &Value) -> Result<Self, RMatrixError> {
        let r = RingMatrix::<Rational>::from_json(v)?;
        let q = Rational::from_json(
            v.get("q")
                .ok_or_else(|| ExactError::Parse("missing field \"q\"".into()))?,
        )?;
        let dim = (1..=r.rows()).find(|d| d * d == r.rows()).ok_or_else(|| {
            TensorError::ShapeMismatch(format!("{} is not a square dimension", r.rows()))
        })?;
        if let Some(w) = v.get("omega") {
            if Rational::from_json(w)? != omega_of(&q) {
                return Err(RMatrixError::OmegaMismatch);
            }
        }
        RSpec::new(dim, q, r)
    }
}

/// The Jimbo R-matrix of `U_q(gl(dim))`:
/// `q Σ e^i_i⊗e^i_i + Σ_{i≠j} e^i_j⊗e^j_i + ω Σ_{i<j} e^i_i⊗e^j_j`.
pub fn jimbo_r(dim: usize, q: Rational) -> Result<RSpec, RMatrixError> {
    if dim < 2 {
        return Err(RMatrixError::BadDim(dim));
    }
    if !admissible_q(&q) {
        return Err(RMatrixError::BadQ);
    }
    let omega = omega_of(&q);
    let n = dim * dim;
    let mut r = RingMatrix::zeros(n, n);
    for a in 0..dim {
        for b in 0..dim {
            let col = a * dim + b;
            if a == b {
                r.set(col, col, q.clone());
                continue;
            }
            // e_a⊗e_b -> e_b⊗e_a, plus omega e_a⊗e_b when a < b
            r.set(b * dim + a, col, Rational::one());
            if a < b {
                r.set(col, col, omega.clone());
            }
        }
    }
    RSpec::new(dim, q, r)
}

/// `R^2 - ωR - 1`.
pub fn hecke_residual(rs: &RSpec) -> RingMatrix<Rational> {
    let n = rs.r.rows();
    let r2 = &rs.r * &rs.r;
    &(&r2 - &rs.r.scale(&rs.omega)) - &RingMatrix::identity(n)
}

/// `R12 R23 R12 - R23 R12 R23` on `V⊗V⊗V`.
pub fn braid_residual(rs: &RSpec) -> RingMatrix<Rational> {
    let r12 = rs.r.embed_leg(Leg::L12, rs.dim).expect("shape checked");
    let r23 = rs.r.embed_leg(Leg::L23, rs.dim).expect("shape checked");
    &(&(&r12 * &r23) * &r12) - &(&(&r23 * &r12) * &r23)
}

/// `x R(x) = (x - 1) R + ω` where `R(x) = R - x^-1 R^-1`.
pub fn r_spectral_numerator(rs: &RSpec) -> Result<RingMatrix<LaurentPoly1>, RMatrixError> {
    if !hecke_residual(rs).is_zero() {
        return Err(RMatrixError::HeckeViolated);
    }
    Ok(spectral_numerator_unchecked(rs))
}

pub(crate) fn spectral_numerator_unchecked(rs: &RSpec) -> RingMatrix<LaurentPoly1> {
    let x_minus_1 = LaurentPoly1::from_terms([(1, Rational::one()), (0, -Rational::one())]);
    let n = rs.r.rows();
    RingMatrix::from_fn(n, n, |i, j| {
        let mut e = x_minus_1.scale(rs.r.get(i, j));
        if i == j {
            e = e + LaurentPoly1::constant(rs.omega.clone());
        }
        e
    })
}

/// The cleared numerator `z R(z)` with `z` one of `x`, `y`, `xy`, `x/y`.
pub fn spectral_factor(rs: &RSpec, arg: Substitution) -> RingMatrix<LaurentPoly2> {
    spectral_numerator_unchecked(rs).map(|p| p.embed2(arg))
}

/// `R23(x) R12(xy) R23(y) - R12(y) R23(xy) R12(x)` with every factor replaced
/// by its cleared numerator; both sides carry the same three denominators.
pub fn spectral_ybe_residual(rs: &RSpec) -> RingMatrix<LaurentPoly2> {
    spectral_ybe_residual_with(rs, Substitution::XY)
}

/// As [`spectral_ybe_residual`], with the argument of the two middle factors
/// replaced by `middle`. Anything other than `xy` is a negative control.
pub fn spectral_ybe_residual_with(rs: &RSpec, middle: Substitution) -> RingMatrix<LaurentPoly2> {
    let d = rs.dim;
    let leg = |arg, leg| {
        spectral_factor(rs, arg)
            .embed_leg(leg, d)
            .expect("shape checked")
    };
    use Substitution::{X, Y};
    let lhs = &(&leg(X, Leg::L23) * &leg(middle, Leg::L12)) * &leg(Y, Leg::L23);
    let rhs = &(&leg(Y, Leg::L12) * &leg(middle, Leg::L23)) * &leg(X, Leg::L12);
    &lhs - &rhs
}
