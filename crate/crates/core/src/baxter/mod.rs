//! Spectral-parameter solutions `K(x)` of the reflection equation, built
//! as polynomials in `K` over the quotient `Q[K]/(p)`.
//!
//! A solution is stored through its cleared numerator
//! `N(x) = (x - x^-1) K(x) = Σ c_i(x) K^{n-i}`.

mod matrix;
mod properties;

pub use matrix::{
    char_matrix, constant_re_residual, describe, instantiate, minimal_polynomial,
    spectral_re_residual, CharMatrixSpec, Instantiated,
};
pub use properties::{
    dif_residual, normalize_unitary, project_divisor_residual, psi, regularity_residual,
    scaling_residual, sums_prime_residual, sums_residual, unitarity_residual,
};

pub use crate::poly::AnnPoly;

use std::fmt;

use num::traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{format_rational, ExactError, JsonScalar, LaurentPoly1, Rational};
use crate::tensor::{RingMatrix, TensorError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaxterError {
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("xi must be nonzero")]
    ZeroXi,
    #[error("{0} is not the square of a rational")]
    NotASquare(String),
    #[error("wrong degree: {0}")]
    WrongDegree(String),
    #[error("the second polynomial does not divide the first")]
    NotADivisor,
    #[error("coupling constants u_i must be nonzero (and one per pair)")]
    ZeroU,
    #[error("the matrix is not annihilated by the solution's polynomial")]
    PolynomialMismatch,
    #[error("operation needs a principal solution")]
    NotPrincipal,
    #[error("malformed solution: {0}")]
    Malformed(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    Principal,
    Quadratic,
    Small,
    Trivial,
}

impl SolutionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolutionKind::Principal => "principal",
            SolutionKind::Quadratic => "quadratic",
            SolutionKind::Small => "small",
            SolutionKind::Trivial => "trivial",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "principal" => SolutionKind::Principal,
            "quadratic" => SolutionKind::Quadratic,
            "small" => SolutionKind::Small,
            "trivial" => SolutionKind::Trivial,
            _ => return None,
        })
    }
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `K(x) = (Σ c_i(x) K^{n-i}) / (x - x^-1)` in `Q[K]/(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KPolynomial {
    poly: AnnPoly,
    coeffs: Vec<LaurentPoly1>,
    xi: Rational,
    zeta: Rational,
    root: Option<Rational>,
    kind: SolutionKind,
}

impl KPolynomial {
    /// Assembles a solution from raw parts; `coeffs` must have length `n + 1`.
    pub fn from_parts(
        poly: AnnPoly,
        coeffs: Vec<LaurentPoly1>,
        xi: Rational,
        zeta: Rational,
        kind: SolutionKind,
    ) -> Result<Self, BaxterError> {
        if coeffs.len() != poly.n() + 1 {
            return Err(BaxterError::Malformed(format!(
                "{} coefficients for n = {}",
                coeffs.len(),
                poly.n()
            )));
        }
        Ok(KPolynomial {
            poly,
            coeffs,
            xi,
            zeta,
            root: None,
            kind,
        })
    }

    /// The scalar solution `K(x) = f(x)·1`.
    pub fn trivial(poly: AnnPoly, f: LaurentPoly1) -> Self {
        let mut coeffs = vec![LaurentPoly1::zero(); poly.n() + 1];
        coeffs[poly.n()] = &f * &LaurentPoly1::x_minus_x_inv();
        KPolynomial {
            poly,
            coeffs,
            xi: Rational::zero(),
            zeta: Rational::zero(),
            root: None,
            kind: SolutionKind::Trivial,
        }
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn poly(&self) -> &AnnPoly {
        &self.poly
    }

    /// `c_i` multiplies `K^{n-i}`.
    pub fn coeffs(&self) -> &[LaurentPoly1] {
        &self.coeffs
    }

    pub fn xi(&self) -> &Rational {
        &self.xi
    }

    pub fn zeta(&self) -> &Rational {
        &self.zeta
    }

    /// The square root of `-A_3` used by a small solution.
    pub fn root(&self) -> Option<&Rational> {
        self.root.as_ref()
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    /// `N(x0)` as descending coefficients over `Q`.
    pub fn numerator_at(&self, x0: &Rational) -> Result<Vec<Rational>, ExactError> {
        self.coeffs.iter().map(|c| c.eval(x0)).collect()
    }

    /// `K(x0) = N(x0) / (x0 - 1/x0)`; fails at `x0 ∈ {0, 1, -1}`.
    pub fn value_at(&self, x0: &Rational) -> Result<Vec<Rational>, ExactError> {
        let d = LaurentPoly1::x_minus_x_inv().eval(x0)?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let inv = d.recip();
        Ok(self
            .numerator_at(x0)?
            .into_iter()
            .map(|c| c * &inv)
            .collect())
    }

    /// Serializes the solution; `k_matrix` is attached when given.
    pub fn to_json(&self, k_matrix: Option<&RingMatrix<Rational>>) -> Value {
        let mut v = json!({
            "n": self.n(),
            "xi": format_rational(&self.xi),
            "zeta": format_rational(&self.zeta),
            "kind": self.kind.as_str(),
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "denominator": "x - x^-1",
            "annihilator": self.poly.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        });
        if let Some(r) = &self.root {
            v["root"] = json!(format_rational(r));
        }
        if let Some(k) = k_matrix {
            v["k_matrix"] = k.to_json();
        }
        v
    }

    /// Parses a solution and its optional `k_matrix`. Without an explicit
    /// `annihilator`, the minimal polynomial of `k_matrix` is used.
    pub fn from_json(v: &Value) -> Result<(Self, Option<RingMatrix<Rational>>), BaxterError> {
        let bad = |m: &str| BaxterError::Malformed(m.to_string());
        let field_rat = |name: &str| -> Result<Rational, BaxterError> {
            match v.get(name) {
                Some(x) => Ok(Rational::from_json(x)?),
                None => Err(BaxterError::Malformed(format!("missing field {name}"))),
            }
        };
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing or invalid n"))? as usize;
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .and_then(SolutionKind::parse)
            .ok_or_else(|| bad("missing or invalid kind"))?;
        match v.get("denominator").and_then(Value::as_str) {
            Some("x - x^-1") | None => {}
            Some(other) => return Err(bad(&format!("unsupported denominator {other}"))),
        }
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(LaurentPoly1::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let k_matrix = match v.get("k_matrix") {
            Some(m) => Some(RingMatrix::<Rational>::from_json(m)?),
            None => None,
        };
        let poly = match (v.get("annihilator"), &k_matrix) {
            (Some(a), _) => {
                let a = a
                    .as_array()
                    .ok_or_else(|| bad("annihilator must be an array"))?
                    .iter()
                    .map(Rational::from_json)
                    .collect::<Result<Vec<_>, _>>()?;
                AnnPoly::new(a).map_err(|e| bad(&e.to_string()))?
            }
            (None, Some(k)) => minimal_polynomial(k, false)?,
            (None, None) => return Err(bad("need annihilator or k_matrix")),
        };
        if poly.n() != n {
            return Err(bad(&format!(
                "n = {n} but annihilator has n = {}",
                poly.n()
            )));
        }
        let mut kp =
            KPolynomial::from_parts(poly, coeffs, field_rat("xi")?, field_rat("zeta")?, kind)?;
        if let Some(r) = v.get("root") {
            kp.root = Some(Rational::from_json(r)?);
        }
        Ok((kp, k_matrix))
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match n - i {
                0 => format!("({c})"),
                1 => format!("({c})·K"),
                e => format!("({c})·K^{e}"),
            })
            .collect();
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        write!(f, "[{body}] / (x - x^-1)")
    }
}

/// `φ_0 .. φ_upto` with `φ_0 = 1`, `φ_{i+1} = φ_i ξx - A_i`.
pub fn phi(p: &AnnPoly, xi: &Rational, upto: usize) -> Result<Vec<LaurentPoly1>, BaxterError> {
    if upto > p.n() + 1 {
        return Err(BaxterError::IndexOutOfRange(format!(
            "phi index {upto} exceeds n + 1 = {}",
            p.n() + 1
        )));
    }
    let xi_x = LaurentPoly1::monomial(1, xi.clone());
    let mut out = vec![LaurentPoly1::one()];
    for i in 0..upto {
        let next = &out[i] * &xi_x - LaurentPoly1::constant(p.coeff(i).clone());
        out.push(next);
    }
    Ok(out)
}

/// `A^(m)_0 .. A^(m)_n` with `K^m = Σ A^(m)_i K^{n-i}`, for `n+1 <= m <= 2n`.
pub fn high_power_coeffs(p: &AnnPoly, m: usize) -> Result<Vec<Rational>, BaxterError> {
    let n = p.n();
    if m < n + 1 || m > 2 * n {
        return Err(BaxterError::IndexOutOfRange(format!(
            "m = {m} outside {}..={}",
            n + 1,
            2 * n
        )));
    }
    Ok(p.power_descending(m))
}

/// The principal solution `c_i = (x - x^-1) φ_i` (`i < n`), `c_n = ζ - x^-1 φ_n`.
///
/// Requires `ξζ = A_n`; in particular `ξ = 0` needs `A_n = 0`.
pub fn baxterize_principal(
    p: &AnnPoly,
    xi: &Rational,
    zeta: &Rational,
) -> Result<KPolynomial, BaxterError> {
    if &(xi * zeta) != p.constant_term() {
        return Err(BaxterError::ConstraintViolated(format!(
            "xi*zeta = {} but p(0) = {}",
            format_rational(&(xi * zeta)),
            format_rational(p.constant_term())
        )));
    }
    let n = p.n();
    let phis = phi(p, xi, n)?;
    let d = LaurentPoly1::x_minus_x_inv();
    let mut coeffs: Vec<LaurentPoly1> = phis[..n].iter().map(|f| f * &d).collect();
    let x_inv = LaurentPoly1::monomial(-1, Rational::one());
    coeffs.push(LaurentPoly1::constant(zeta.clone()) - &x_inv * &phis[n]);
    Ok(KPolynomial {
        poly: p.clone(),
        coeffs,
        xi: xi.clone(),
        zeta: zeta.clone(),
        root: None,
        kind: SolutionKind::Principal,
    })
}

/// The principal solution with `ζ = A_n / ξ`, or `ζ = 0` when `ξ = 0`.
pub fn baxterize_auto(p: &AnnPoly, xi: &Rational) -> Result<KPolynomial, BaxterError> {
    let zeta = if xi.is_zero() {
        Rational::zero()
    } else {
        p.constant_term() / xi
    };
    baxterize_principal(p, xi, &zeta)
}

/// `K + (ζ - ξ + A_0 x^-1)/(x - x^-1)` for `p = -K^2 + A_0 K + A_1`, any `ξ`, `ζ`.
pub fn baxterize_quadratic(
    a0: &Rational,
    a1: &Rational,
    xi: &Rational,
    zeta: &Rational,
) -> KPolynomial {
    let poly = AnnPoly::new(vec![a0.clone(), a1.clone()]).expect("two coefficients");
    let c1 = LaurentPoly1::from_terms([(0, zeta - xi), (-1, a0.clone())]);
    KPolynomial {
        poly,
        coeffs: vec![LaurentPoly1::x_minus_x_inv(), c1],
        xi: xi.clone(),
        zeta: zeta.clone(),
        root: None,
        kind: SolutionKind::Quadratic,
    }
}

/// The small solution for `n = 3`, where `root^2 = -A_3`:
/// `K^3 - A_0 K^2 - (A_1 - x·root) K + (x^-1 A_2 + A_0 root)/(x - x^-1)`.
pub fn baxterize_small(p: &AnnPoly, root: &Rational) -> Result<KPolynomial, BaxterError> {
    if p.n() != 3 {
        return Err(BaxterError::WrongDegree(format!(
            "small solutions need n = 3, got n = {}",
            p.n()
        )));
    }
    let a = p.coeffs();
    if root * root != -a[3].clone() {
        return Err(BaxterError::NotASquare(format!(
            "root^2 = {} but -A_3 = {}",
            format_rational(&(root * root)),
            format_rational(&-a[3].clone())
        )));
    }
    let d = LaurentPoly1::x_minus_x_inv();
    let c2 = LaurentPoly1::from_terms([(0, -a[1].clone()), (1, root.clone())]);
    let c3 = LaurentPoly1::from_terms([(-1, a[2].clone()), (0, &a[0] * root)]);
    Ok(KPolynomial {
        poly: p.clone(),
        coeffs: vec![d.clone(), d.scale(&-a[0].clone()), &c2 * &d, c3],
        xi: Rational::zero(),
        zeta: Rational::zero(),
        root: Some(root.clone()),
        kind: SolutionKind::Small,
    })
}

/// Whether the `K^{n-1}` coordinate in the basis `{K^i}_{i<n} ∪ {K~}` is
/// nonzero; always true for `n <= 1`.
pub fn is_principal(kp: &KPolynomial) -> bool {
    if kp.n() <= 1 {
        return true;
    }
    // K^n = K~ + A_0 K^{n-1} + ..., so the coordinate is c_1 + A_0 c_0.
    let coord = &kp.coeffs[1] + &kp.coeffs[0].scale(kp.poly.coeff(0));
    !coord.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::poly::ann;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly1 {
        LaurentPoly1::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn phi_sequence() {
        let p = ann(&[6, -11, 6]);
        let f = phi(&p, &int(1), 3).unwrap();
        assert_eq!(f[0], LaurentPoly1::one());
        assert_eq!(f[1], lp(&[(1, 1), (0, -6)]));
        assert_eq!(f[2], lp(&[(2, 1), (1, -6), (0, 11)]));
        assert_eq!(f[3], -p.eval_scaled(&int(1)));
        assert!(phi(&p, &int(1), 4).is_err());

        let f = phi(&p, &int(3), 3).unwrap();
        assert_eq!(f[3], -p.eval_scaled(&int(3)));
    }

    #[test]
    fn high_powers() {
        let p = ann(&[6, -11, 6]);
        assert_eq!(high_power_coeffs(&p, 3).unwrap(), p.coeffs().to_vec());
        assert_eq!(
            high_power_coeffs(&p, 4).unwrap(),
            vec![int(25), int(-60), int(36)]
        );
        assert!(high_power_coeffs(&p, 2).is_err());
        assert!(high_power_coeffs(&p, 5).is_err());
    }

    #[test]
    fn principal_cubic_sample() {
        let p = ann(&[6, -11, 6]);
        let kp = baxterize_principal(&p, &int(1), &int(6)).unwrap();
        assert_eq!(kp.kind(), SolutionKind::Principal);
        // K(2) = K^2 - 4K + 3
        assert_eq!(kp.value_at(&int(2)).unwrap(), vec![int(1), int(-4), int(3)]);
        // general n = 2 form
        let (xi, zeta) = (rat(-3, 2), int(-4));
        let kp = baxterize_principal(&p, &xi, &zeta).unwrap();
        let d = LaurentPoly1::x_minus_x_inv();
        let c1 = LaurentPoly1::from_terms([(1, xi.clone()), (0, int(-6))]);
        let free = LaurentPoly1::from_terms([(0, zeta.clone())])
            - LaurentPoly1::from_terms([(1, &xi * &xi), (0, -int(6) * &xi), (-1, int(11))]);
        assert_eq!(kp.coeffs(), &[d.clone(), &c1 * &d, free]);
        assert!(is_principal(&kp));

        let err = baxterize_principal(&p, &int(1), &int(5)).unwrap_err();
        assert!(matches!(err, BaxterError::ConstraintViolated(_)));
        assert!(baxterize_principal(&p, &int(0), &int(0)).is_err());
    }

    #[test]
    fn principal_linear_case_is_quadratic() {
        let (a0, a1) = (int(3), int(-2));
        let xi = int(4);
        let zeta = &a1 / &xi;
        let kp = baxterize_principal(&ann(&[3, -2]), &xi, &zeta).unwrap();
        let quad = baxterize_quadratic(&a0, &a1, &xi, &zeta);
        assert_eq!(kp.coeffs(), quad.coeffs());
        assert!(is_principal(&kp));
    }

    #[test]
    fn quadratic_forms() {
        let z = rat(5, 7);
        let kp = baxterize_quadratic(&int(3), &int(-2), &int(0), &z);
        assert_eq!(
            kp.coeffs()[1],
            LaurentPoly1::from_terms([(0, z.clone()), (-1, int(3))])
        );
        let shifted = baxterize_quadratic(&int(3), &int(-2), &int(9), &(&z + int(9)));
        assert_eq!(shifted.coeffs(), kp.coeffs());
        let constant = baxterize_quadratic(&int(0), &int(1), &int(0), &int(0));
        assert!(constant.coeffs()[1].is_zero());
    }

    #[test]
    fn small_solution() {
        let p = ann(&[12, -47, 72, -36]);
        let kp = baxterize_small(&p, &int(6)).unwrap();
        let d = LaurentPoly1::x_minus_x_inv();
        assert_eq!(kp.coeffs()[0], d);
        assert_eq!(kp.coeffs()[1], d.scale(&int(-12)));
        assert_eq!(kp.coeffs()[2], &lp(&[(0, 47), (1, 6)]) * &d);
        assert_eq!(kp.coeffs()[3], lp(&[(-1, 72), (0, 72)]));
        assert!(!is_principal(&kp));
        let other = baxterize_small(&p, &int(-6)).unwrap();
        assert_ne!(other.coeffs(), kp.coeffs());

        assert!(matches!(
            baxterize_small(&p, &int(5)),
            Err(BaxterError::NotASquare(_))
        ));
        assert!(matches!(
            baxterize_small(&ann(&[6, -11, 6]), &int(0)),
            Err(BaxterError::WrongDegree(_))
        ));
    }

    #[test]
    fn small_limit_matches_degenerate_principal() {
        let p = ann(&[5, -3, 7, 0]);
        let small = baxterize_small(&p, &int(0)).unwrap();
        let principal = baxterize_principal(&p, &int(0), &int(0)).unwrap();
        assert_eq!(small.coeffs(), principal.coeffs());
        assert!(!is_principal(&principal));
    }

    #[test]
    fn trivial_and_json() {
        let p = ann(&[6, -11, 6]);
        let t = KPolynomial::trivial(p.clone(), LaurentPoly1::one());
        assert_eq!(t.coeffs()[2], LaurentPoly1::x_minus_x_inv());
        assert!(t.coeffs()[0].is_zero());

        let kp = baxterize_principal(&p, &rat(2, 3), &int(9)).unwrap();
        let k = RingMatrix::diag(vec![int(1), int(2), int(3)]);
        let v = kp.to_json(Some(&k));
        assert_eq!(v["denominator"], "x - x^-1");
        let (back, km) = KPolynomial::from_json(&v).unwrap();
        assert_eq!(back, kp);
        assert_eq!(km.unwrap(), k);

        let mut no_ann = v.clone();
        no_ann.as_object_mut().unwrap().remove("annihilator");
        assert_eq!(KPolynomial::from_json(&no_ann).unwrap().0, kp);

        let small = baxterize_small(&ann(&[12, -47, 72, -36]), &int(-6)).unwrap();
        assert_eq!(
            KPolynomial::from_json(&small.to_json(None)).unwrap().0,
            small
        );
        assert!(KPolynomial::from_json(&json!({"n": 1})).is_err());
    }
}
