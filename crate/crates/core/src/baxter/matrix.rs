//! Concrete matrices: annihilating polynomials, the character family of RE
//! matrices, and evaluation of solutions on a given `K`.

use num::traits::{One, Zero};

use super::{AnnPoly, BaxterError, KPolynomial};
use crate::exact::{
    format_rational, ExactError, LaurentPoly1, LaurentPoly2, Rational, Substitution,
};
use crate::rmatrix::{spectral_factor, RSpec};
use crate::tensor::{RingMatrix, TensorError};

fn require_square<S: crate::exact::Scalar>(
    m: &RingMatrix<S>,
    what: &str,
) -> Result<(), BaxterError> {
    if !m.is_square() || m.rows() == 0 {
        return Err(TensorError::ShapeMismatch(format!(
            "{what} must be a nonempty square matrix, got {}x{}",
            m.rows(),
            m.cols()
        ))
        .into());
    }
    Ok(())
}

fn flatten(m: &RingMatrix<Rational>) -> Vec<Rational> {
    m.entries().to_vec()
}

/// The monic annihilator of least degree (or, with `characteristic`, the
/// characteristic polynomial), written as `-u^{n+1} + A_0 u^n + ... + A_n`.
pub fn minimal_polynomial(
    m: &RingMatrix<Rational>,
    characteristic: bool,
) -> Result<AnnPoly, BaxterError> {
    require_square(m, "K")?;
    let size = m.rows();
    if characteristic {
        return Ok(faddeev_leverrier(m));
    }
    let mut powers = vec![RingMatrix::identity(size)];
    loop {
        let d = powers.len();
        let next = &powers[d - 1] * m;
        // columns: vec(M^0) .. vec(M^{d-1}) | vec(M^d)
        let cols: Vec<Vec<Rational>> = powers.iter().chain([&next]).map(flatten).collect();
        let sys = RingMatrix::from_fn(size * size, d + 1, |r, c| cols[c][r].clone());
        let (red, pivots) = sys.rref();
        if !pivots.contains(&d) {
            // M^d = Σ_j c_j M^j with c_j read off the reduced augmented column
            let c: Vec<Rational> = (0..d).map(|j| red.get(j, d).clone()).collect();
            let a = (0..d).map(|i| c[d - 1 - i].clone()).collect();
            return Ok(AnnPoly::new(a).expect("degree >= 1"));
        }
        powers.push(next);
    }
}

/// `det(uI - M)` via the Faddeev-LeVerrier recursion, re-signed.
fn faddeev_leverrier(m: &RingMatrix<Rational>) -> AnnPoly {
    let size = m.rows();
    // char poly Σ c_k u^k with c_size = 1
    let mut c = vec![Rational::zero(); size + 1];
    c[size] = Rational::one();
    let mut mk = RingMatrix::<Rational>::zeros(size, size);
    for k in 1..=size {
        mk = &(m * &mk) + &RingMatrix::scalar(size, c[size - k + 1].clone());
        let t = (m * &mk).trace();
        c[size - k] = -t / Rational::from_integer((k as i64).into());
    }
    AnnPoly::new((0..size).map(|i| -c[size - 1 - i].clone()).collect()).expect("size >= 1")
}

/// Parameters of the character family: `pairs` coupled 2x2 blocks with
/// eigenvalues `λ, μ`, then `lambdas` slots equal to `λ`, then `zeros` zero slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrixSpec {
    pub pairs: usize,
    pub lambdas: usize,
    pub zeros: usize,
    pub lambda: Rational,
    pub mu: Rational,
    pub u: Vec<Rational>,
}

impl CharMatrixSpec {
    pub fn size(&self) -> usize {
        2 * self.pairs + self.lambdas + self.zeros
    }
}

/// The matrix with `(i,i) = λ+μ` and anti-diagonal couplings `u_i`,
/// `v_i = -λμ/u_i` for `i < pairs`, then `λ` on the middle slots of the
/// coupled box and zeros in the trailing slots.
pub fn char_matrix(spec: &CharMatrixSpec) -> Result<RingMatrix<Rational>, BaxterError> {
    if spec.u.len() != spec.pairs || spec.u.iter().any(Zero::is_zero) {
        return Err(BaxterError::ZeroU);
    }
    let size = spec.size();
    if size == 0 {
        return Err(TensorError::ShapeMismatch("empty character matrix".into()).into());
    }
    let k = spec.pairs;
    let boxed = 2 * k + spec.lambdas;
    let lm = &spec.lambda * &spec.mu;
    let mut m = RingMatrix::zeros(size, size);
    for (i, u) in spec.u.iter().enumerate() {
        m.set(i, i, &spec.lambda + &spec.mu);
        m.set(i, boxed - 1 - i, u.clone());
        m.set(boxed - 1 - i, i, -(&lm / u));
    }
    for j in 0..spec.lambdas {
        m.set(k + j, k + j, spec.lambda.clone());
    }
    Ok(m)
}

/// `R K2 R K2 - K2 R K2 R` with `K2 = I ⊗ K`.
pub fn constant_re_residual(
    rs: &RSpec,
    k: &RingMatrix<Rational>,
) -> Result<RingMatrix<Rational>, BaxterError> {
    let d = rs.dim();
    if k.rows() != d || k.cols() != d {
        return Err(TensorError::ShapeMismatch(format!(
            "K is {}x{} but the R-matrix acts on {d}-dimensional V",
            k.rows(),
            k.cols()
        ))
        .into());
    }
    let k2 = RingMatrix::identity(d).kron(k);
    let r = rs.matrix();
    let rk = r * &k2;
    Ok(&(&rk * &rk) - &(&(&k2 * r) * &(&k2 * r)))
}

/// A solution evaluated on a concrete matrix: `numerator / denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instantiated {
    pub numerator: RingMatrix<LaurentPoly1>,
    pub denominator: LaurentPoly1,
}

impl Instantiated {
    /// `K(x0)`; fails where the denominator vanishes.
    pub fn eval_at(&self, x0: &Rational) -> Result<RingMatrix<Rational>, BaxterError> {
        let d = self.denominator.eval(x0)?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero.into());
        }
        let inv = d.recip();
        let mut out = RingMatrix::zeros(self.numerator.rows(), self.numerator.cols());
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                out.set(i, j, self.numerator.get(i, j).eval(x0)? * &inv);
            }
        }
        Ok(out)
    }
}

/// `N(x) = Σ c_i(x) K^{n-i}` on a matrix `K` annihilated by the solution's polynomial.
pub fn instantiate(
    kp: &KPolynomial,
    k: &RingMatrix<Rational>,
) -> Result<Instantiated, BaxterError> {
    require_square(k, "K")?;
    let size = k.rows();
    let n = kp.n();
    let mut powers = vec![RingMatrix::identity(size)];
    for i in 0..=n {
        powers.push(&powers[i] * k);
    }
    let p = kp.poly();
    let mut p_of_k = powers[n + 1].scale(&-Rational::one());
    for (i, a) in p.coeffs().iter().enumerate() {
        p_of_k = &p_of_k + &powers[n - i].scale(a);
    }
    if !p_of_k.is_zero() {
        return Err(BaxterError::PolynomialMismatch);
    }
    let numerator = RingMatrix::from_fn(size, size, |a, b| {
        kp.coeffs()
            .iter()
            .enumerate()
            .fold(LaurentPoly1::zero(), |acc, (i, c)| {
                acc + c.scale(powers[n - i].get(a, b))
            })
    });
    Ok(Instantiated {
        numerator,
        denominator: LaurentPoly1::x_minus_x_inv(),
    })
}

/// `R(x/y) N2(x) R(xy) N2(y) - N2(y) R(xy) N2(x) R(x/y)` with `N2 = I ⊗ N`
/// and every `R(z)` replaced by `z R(z)`.
pub fn spectral_re_residual(
    rs: &RSpec,
    nx: &RingMatrix<LaurentPoly1>,
) -> Result<RingMatrix<LaurentPoly2>, BaxterError> {
    let d = rs.dim();
    if nx.rows() != d || nx.cols() != d {
        return Err(TensorError::ShapeMismatch(format!(
            "N(x) is {}x{} but V has dimension {d}",
            nx.rows(),
            nx.cols()
        ))
        .into());
    }
    let id = RingMatrix::<LaurentPoly1>::identity(d);
    let n2 = id.kron(nx);
    let n2x = n2.map(|c| c.embed2(Substitution::X));
    let n2y = n2.map(|c| c.embed2(Substitution::Y));
    let r_ratio = spectral_factor(rs, Substitution::XOverY);
    let r_prod = spectral_factor(rs, Substitution::XY);
    let lhs = &(&(&r_ratio * &n2x) * &r_prod) * &n2y;
    let rhs = &(&(&n2y * &r_prod) * &n2x) * &r_ratio;
    Ok(&lhs - &rhs)
}

/// Readable label for diagnostics, e.g. `-u^3 + 6u^2 - 11u + 6`.
pub fn describe(p: &AnnPoly) -> String {
    let n = p.n();
    let mut s = format!("-u^{}", n + 1);
    for (i, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let e = n - i;
        let mono = match e {
            0 => String::new(),
            1 => "u".to_string(),
            _ => format!("u^{e}"),
        };
        s.push_str(&format!(" + ({}){mono}", format_rational(a)));
    }
    s
}
