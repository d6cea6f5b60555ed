//! The annihilating polynomial `p(u) = -u^{n+1} + A_0 u^n + ... + A_n` and
//! arithmetic in the commutative quotient `Q[K]/(p)`.
//!
//! Elements of the quotient are coefficient vectors in one of two orders:
//! *descending* (`c[i]` multiplies `K^{n-i}`, the order of baxterized
//! solutions) or *ascending* (`c[i]` multiplies `K^i`).

use num::traits::{One, Zero};
use thiserror::Error;

use crate::exact::{int, LaurentPoly1, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("an annihilating polynomial needs at least one coefficient")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnnPoly {
    a: Vec<Rational>,
}

impl AnnPoly {
    /// `coeffs` is `A_0..A_n`; the degree is `coeffs.len()`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::Empty);
        }
        Ok(AnnPoly { a: coeffs })
    }

    /// `p(u) = -Π (u - r)`.
    pub fn from_roots(roots: &[Rational]) -> Result<Self, PolyError> {
        // monic product, ascending coefficients
        let mut prod = vec![Rational::one()];
        for r in roots {
            let mut next = vec![Rational::zero(); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            prod = next;
        }
        let deg = roots.len();
        // -u^deg - c_{deg-1} u^{deg-1} - ... ; A_i multiplies u^{deg-1-i}
        AnnPoly::new((0..deg).map(|i| -prod[deg - 1 - i].clone()).collect())
    }

    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.a
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.a[i]
    }

    /// `p(0) = A_n`.
    pub fn constant_term(&self) -> &Rational {
        &self.a[self.n()]
    }

    pub fn eval(&self, u: &Rational) -> Rational {
        // Horner on -u^{n+1} + A_0 u^n + ... + A_n
        self.a.iter().fold(-Rational::one(), |acc, c| acc * u + c)
    }

    /// `p` as a polynomial in the variable `x`.
    pub fn to_laurent(&self) -> LaurentPoly1 {
        let n = self.n() as i32;
        let mut p = LaurentPoly1::monomial(n + 1, -Rational::one());
        for (i, c) in self.a.iter().enumerate() {
            p.add_term(n - i as i32, c.clone());
        }
        p
    }

    /// `p(ξx)` as a polynomial in `x`.
    pub fn eval_scaled(&self, xi: &Rational) -> LaurentPoly1 {
        self.to_laurent().scale_var(xi)
    }

    /// `p_ξ(u) = ξ^{-(n+1)} p(ξu)`, whose coefficients are `A_i ξ^{-(i+1)}`.
    pub fn rescaled(&self, xi: &Rational) -> AnnPoly {
        let inv = xi.recip();
        let mut f = Rational::one();
        let a = self
            .a
            .iter()
            .map(|c| {
                f *= &inv;
                c * &f
            })
            .collect();
        AnnPoly { a }
    }

    /// Reduces an ascending coefficient vector of any length modulo `p`;
    /// the result has length `n + 1`.
    pub fn reduce_ascending<S: Scalar>(&self, mut c: Vec<S>) -> Vec<S> {
        let n = self.n();
        while c.len() > n + 1 {
            let top = c.pop().expect("nonempty");
            let d = c.len(); // top multiplies K^d with d >= n+1
                             // K^d = Σ_i A_i K^{d-1-i}
            for (i, a) in self.a.iter().enumerate() {
                let slot = d - 1 - i;
                let cur = std::mem::replace(&mut c[slot], S::zero());
                c[slot] = cur + top.scale(a);
            }
        }
        c.resize(n + 1, S::zero());
        c
    }

    /// `K^m` reduced modulo `p`, ascending.
    pub fn power_ascending(&self, m: usize) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); m + 1];
        c[m] = Rational::one();
        self.reduce_ascending(c)
    }

    /// `K^m` reduced modulo `p`, descending: `K^m = Σ_i c[i] K^{n-i}`.
    pub fn power_descending(&self, m: usize) -> Vec<Rational> {
        to_descending(self.power_ascending(m))
    }

    /// `K~ = K^n - A_0 K^{n-1} - ... - A_{n-1}`, ascending; `K K~ = A_n`.
    pub fn k_tilde(&self) -> Vec<Rational> {
        let n = self.n();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        for i in 0..n {
            c[n - 1 - i] = -self.a[i].clone();
        }
        c
    }

    /// `K^-1 = K~ / A_n`, ascending; `None` when `A_n = 0`.
    pub fn inverse_ascending(&self) -> Option<Vec<Rational>> {
        let an = self.constant_term();
        if an.is_zero() {
            return None;
        }
        let inv = an.recip();
        Some(self.k_tilde().into_iter().map(|c| c * &inv).collect())
    }

    /// Product in `Q[K]/(p)` of two ascending vectors.
    pub fn mul_ascending<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        if a.is_empty() || b.is_empty() {
            return vec![S::zero(); self.n() + 1];
        }
        let mut out = vec![S::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let cur = std::mem::replace(&mut out[i + j], S::zero());
                out[i + j] = cur + x.clone() * y.clone();
            }
        }
        self.reduce_ascending(out)
    }

    /// Product in `Q[K]/(p)` of two descending vectors of length `n + 1`.
    pub fn mul_descending<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        let asc = |v: &[S]| v.iter().rev().cloned().collect::<Vec<_>>();
        to_descending(self.mul_ascending(&asc(a), &asc(b)))
    }

    /// Reduces a descending vector of arbitrary length (top power first).
    pub fn reduce_descending<S: Scalar>(&self, c: &[S]) -> Vec<S> {
        to_descending(self.reduce_ascending(c.iter().rev().cloned().collect()))
    }
}

pub fn to_descending<S: Clone>(mut c: Vec<S>) -> Vec<S> {
    c.reverse();
    c
}

/// Rational coefficients `A_i` from integers, for tests and examples.
pub fn ann(coeffs: &[i64]) -> AnnPoly {
    AnnPoly::new(coeffs.iter().map(|&c| int(c)).collect()).expect("nonempty coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn roots_and_evaluation() {
        let p = AnnPoly::from_roots(&[int(1), int(2), int(3)]).unwrap();
        assert_eq!(p, ann(&[6, -11, 6]));
        for r in 1..=3 {
            assert!(p.eval(&int(r)).is_zero());
        }
        assert_eq!(p.eval(&int(0)), int(6));
        assert_eq!(p.eval(&int(4)), int(-6));
        let q = AnnPoly::from_roots(&[int(1), int(2), int(3), int(6)]).unwrap();
        assert_eq!(q, ann(&[12, -47, 72, -36]));
    }

    #[test]
    fn power_reduction() {
        let p = ann(&[6, -11, 6]);
        assert_eq!(p.power_descending(3), vec![int(6), int(-11), int(6)]);
        // K^4 = 6K^3 - 11K^2 + 6K = 25K^2 - 60K + 36
        assert_eq!(p.power_descending(4), vec![int(25), int(-60), int(36)]);
        assert_eq!(p.power_descending(1), vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn inverse_and_k_tilde() {
        let p = ann(&[3, -2]);
        let inv = p.inverse_ascending().unwrap();
        // K^-1 = (K - 3)/(-2)
        assert_eq!(inv, vec![rat(3, 2), rat(-1, 2)]);
        let one = p.mul_ascending(&[int(0), int(1)], &inv);
        assert_eq!(one, vec![int(1), int(0)]);
        assert!(ann(&[1, 2, 0]).inverse_ascending().is_none());

        let p3 = ann(&[12, -47, 72, -36]);
        let kt = p3.k_tilde();
        assert_eq!(
            p3.mul_ascending(&[int(0), int(1)], &kt),
            vec![int(-36), int(0), int(0), int(0)]
        );
    }

    #[test]
    fn rescaling() {
        let p = ann(&[6, -11, 6]);
        let xi = int(2);
        let ps = p.rescaled(&xi);
        for u in [int(1), rat(1, 3), int(-2)] {
            let lhs = ps.eval(&u);
            let rhs = p.eval(&(&xi * &u)) / int(8);
            assert_eq!(lhs, rhs);
        }
        assert_eq!(p.eval_scaled(&xi).eval(&int(1)).unwrap(), p.eval(&xi));
        assert_eq!(p.to_laurent().eval(&int(5)).unwrap(), p.eval(&int(5)));
    }
}
