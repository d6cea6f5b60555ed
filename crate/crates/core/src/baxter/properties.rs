//! Residuals of the identities satisfied by baxterized solutions and by the
//! φ-polynomials they are built from. Every function returns zero exactly
//! when the identity holds.

use num::traits::{One, Zero};

use super::{baxterize_principal, phi, AnnPoly, BaxterError, KPolynomial, SolutionKind};
use crate::exact::{LaurentPoly1, LaurentPoly2, Rational, Substitution};

fn nonzero_xi(xi: &Rational) -> Result<(), BaxterError> {
    if xi.is_zero() {
        Err(BaxterError::ZeroXi)
    } else {
        Ok(())
    }
}

/// `ψ(ξ,x) = p(ξx) / (ξ(x - x^-1))` as `(p(ξx)/ξ, x - x^-1)`.
pub fn psi(p: &AnnPoly, xi: &Rational) -> Result<(LaurentPoly1, LaurentPoly1), BaxterError> {
    nonzero_xi(xi)?;
    Ok((
        p.eval_scaled(xi).scale(&xi.recip()),
        LaurentPoly1::x_minus_x_inv(),
    ))
}

/// `N(x)N(x^-1) - ξ^-2 p(ξx) p(ξx^-1)·1` in `Q[K]/(p)`, descending.
///
/// For a trivial solution `f(x)·1` the right side is `N(x)N(x^-1)` itself.
pub fn unitarity_residual(kp: &KPolynomial) -> Result<Vec<LaurentPoly1>, BaxterError> {
    let p = kp.poly();
    let n = kp.n();
    let inverted: Vec<_> = kp.coeffs().iter().map(LaurentPoly1::invert_var).collect();
    let mut prod = p.mul_descending(kp.coeffs(), &inverted);
    let rhs = match kp.kind() {
        SolutionKind::Small => return Err(BaxterError::NotPrincipal),
        SolutionKind::Trivial => &kp.coeffs()[n] * &inverted[n],
        SolutionKind::Principal | SolutionKind::Quadratic => {
            let xi = kp.xi();
            nonzero_xi(xi)?;
            let pxi = p.eval_scaled(xi);
            (&pxi * &pxi.invert_var()).scale(&(xi * xi).recip())
        }
    };
    prod[n] = &prod[n] - &rhs;
    Ok(prod)
}

/// `(ξN(1) - p(ξ)·1, ξN(-1) - p(-ξ)·1)`, descending.
pub fn regularity_residual(
    kp: &KPolynomial,
) -> Result<(Vec<Rational>, Vec<Rational>), BaxterError> {
    let xi = kp.xi();
    nonzero_xi(xi)?;
    let p = kp.poly();
    let at = |x0: Rational, target: Rational| -> Result<Vec<Rational>, BaxterError> {
        let mut v: Vec<Rational> = kp.numerator_at(&x0)?.into_iter().map(|c| c * xi).collect();
        let last = v.len() - 1;
        v[last] -= target;
        Ok(v)
    };
    Ok((
        at(Rational::one(), p.eval(xi))?,
        at(-Rational::one(), p.eval(&-xi.clone()))?,
    ))
}

/// `K(x)/ψ(ξ,x) = ξN(x)/p(ξx)`, returned as `(ξc_i, p(ξx))` without dividing.
pub fn normalize_unitary(
    kp: &KPolynomial,
) -> Result<(Vec<LaurentPoly1>, LaurentPoly1), BaxterError> {
    let xi = kp.xi();
    nonzero_xi(xi)?;
    Ok((
        kp.coeffs().iter().map(|c| c.scale(xi)).collect(),
        kp.poly().eval_scaled(xi),
    ))
}

/// For `p = p~~ · p~`, reduces `K_p(ξ, ζ, x)` modulo `p~` and subtracts
/// `p~~(ξx) K_{p~}(ξ, ζ~, x)`, where `ξζ~ = p~(0)` and `ζ = p~~(0) ζ~`.
pub fn project_divisor_residual(
    p: &AnnPoly,
    ptilde: &AnnPoly,
    xi: &Rational,
) -> Result<Vec<LaurentPoly1>, BaxterError> {
    nonzero_xi(xi)?;
    if ptilde.n() > p.n() {
        return Err(BaxterError::NotADivisor);
    }
    let quotient = p
        .to_laurent()
        .divexact(&ptilde.to_laurent())
        .map_err(|_| BaxterError::NotADivisor)?;
    let zeta_t = ptilde.constant_term() / xi;
    let zeta = quotient.coeff(0) * &zeta_t;
    let big = baxterize_principal(p, xi, &zeta)?;
    let small = baxterize_principal(ptilde, xi, &zeta_t)?;
    let projected = ptilde.reduce_descending(big.coeffs());
    let factor = quotient.scale_var(xi);
    Ok(projected
        .iter()
        .zip(small.coeffs())
        .map(|(a, b)| a - &(&factor * b))
        .collect())
}

/// Substitutes `K = ξK'` into `K_p(ξ, x)` and subtracts `ξ^n K_{p_ξ}(1, x)`,
/// where `p_ξ(u) = ξ^{-(n+1)} p(ξu)` annihilates `K'`.
pub fn scaling_residual(p: &AnnPoly, xi: &Rational) -> Result<Vec<LaurentPoly1>, BaxterError> {
    nonzero_xi(xi)?;
    let n = p.n();
    let lhs = baxterize_principal(p, xi, &(p.constant_term() / xi))?;
    let p_xi = p.rescaled(xi);
    let rhs = baxterize_principal(&p_xi, &Rational::one(), p_xi.constant_term())?;
    let mut xi_pow = vec![Rational::one()];
    for i in 0..n {
        xi_pow.push(&xi_pow[i] * xi);
    }
    Ok((0..=n)
        .map(|i| lhs.coeffs()[i].scale(&xi_pow[n - i]) - rhs.coeffs()[i].scale(&xi_pow[n]))
        .collect())
}

struct PhiPair {
    x: Vec<LaurentPoly2>,
    y: Vec<LaurentPoly2>,
}

impl PhiPair {
    fn new(p: &AnnPoly, xi: &Rational) -> Self {
        let f = phi(p, xi, p.n() + 1).expect("n + 1 is in range");
        PhiPair {
            x: f.iter().map(|c| c.embed2(Substitution::X)).collect(),
            y: f.iter().map(|c| c.embed2(Substitution::Y)).collect(),
        }
    }

    fn delta(&self, i: usize) -> LaurentPoly2 {
        &self.x[i] - &self.y[i]
    }
}

fn xi_x_minus_y(xi: &Rational) -> LaurentPoly2 {
    LaurentPoly2::from_terms([((1, 0), xi.clone()), ((0, 1), -xi.clone())])
}

/// For `0 <= i <= m <= n`:
/// `ξ(x-y) Σ_{α=i}^m φ'_α φ''_{m+i-α} - [φ'_{m+1}φ''_i - φ'_iφ''_{m+1} - Σ_{α=i}^m A_α Δ_{m+i-α}]`
/// with `φ' = φ(x)`, `φ'' = φ(y)`, `Δ = φ' - φ''`.
pub fn dif_residual(
    p: &AnnPoly,
    xi: &Rational,
    i: usize,
    m: usize,
) -> Result<LaurentPoly2, BaxterError> {
    if i > m || m > p.n() {
        return Err(BaxterError::IndexOutOfRange(format!(
            "need 0 <= i <= m <= n, got i = {i}, m = {m}, n = {}",
            p.n()
        )));
    }
    let f = PhiPair::new(p, xi);
    let mut sum = LaurentPoly2::zero();
    let mut a_delta = LaurentPoly2::zero();
    for alpha in i..=m {
        sum = sum + &f.x[alpha] * &f.y[m + i - alpha];
        a_delta = a_delta + f.delta(m + i - alpha).scale(p.coeff(alpha));
    }
    let lhs = &xi_x_minus_y(xi) * &sum;
    let rhs = &(&f.x[m + 1] * &f.y[i]) - &(&f.x[i] * &f.y[m + 1]) - a_delta;
    Ok(lhs - rhs)
}

/// For `0 <= k < n`, `0 <= i <= n`:
/// `A^(n+k+1)_i - Σ_{α=0}^{k-1} A^(n+k-α)_i A_α - A_{k+i}` (last term only when `i <= n-k`).
pub fn sums_residual(p: &AnnPoly, k: usize, i: usize) -> Result<Rational, BaxterError> {
    let n = p.n();
    if k >= n || i > n {
        return Err(BaxterError::IndexOutOfRange(format!(
            "need 0 <= k < n and 0 <= i <= n, got k = {k}, i = {i}, n = {n}"
        )));
    }
    let high = |m: usize| p.power_descending(m)[i].clone();
    let mut rhs = Rational::zero();
    for alpha in 0..k {
        rhs += high(n + k - alpha) * p.coeff(alpha);
    }
    if i + k <= n {
        rhs += p.coeff(k + i);
    }
    Ok(high(n + k + 1) - rhs)
}

/// For `0 < i <= n`, `0 <= j <= n`:
/// `ξ(x-y) Σ_{α=0}^{i-1} A^(n+i-α)_j Σ_{β=0}^α φ'_β φ''_{α-β} - Σ_{α=max(j+i-n,0)}^{i} Δ_α A_{j+i-α}`.
pub fn sums_prime_residual(
    p: &AnnPoly,
    xi: &Rational,
    i: usize,
    j: usize,
) -> Result<LaurentPoly2, BaxterError> {
    let n = p.n();
    if i == 0 || i > n || j > n {
        return Err(BaxterError::IndexOutOfRange(format!(
            "need 0 < i <= n and 0 <= j <= n, got i = {i}, j = {j}, n = {n}"
        )));
    }
    let f = PhiPair::new(p, xi);
    let mut lhs = LaurentPoly2::zero();
    for alpha in 0..i {
        let a = p.power_descending(n + i - alpha)[j].clone();
        let mut conv = LaurentPoly2::zero();
        for beta in 0..=alpha {
            conv = conv + &f.x[beta] * &f.y[alpha - beta];
        }
        lhs = lhs + conv.scale(&a);
    }
    let lhs = &xi_x_minus_y(xi) * &lhs;
    let mut rhs = LaurentPoly2::zero();
    for alpha in (j + i).saturating_sub(n)..=i {
        rhs = rhs + f.delta(alpha).scale(p.coeff(j + i - alpha));
    }
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baxter::{baxterize_auto, baxterize_quadratic};
    use crate::exact::{int, rat};
    use crate::poly::ann;

    fn all_zero(v: &[LaurentPoly1]) -> bool {
        v.iter().all(Zero::is_zero)
    }

    #[test]
    fn psi_parts() {
        let p = ann(&[6, -11, 6]);
        let (num, den) = psi(&p, &int(1)).unwrap();
        assert_eq!(
            num,
            LaurentPoly1::from_terms([(3, int(-1)), (2, int(6)), (1, int(-11)), (0, int(6))])
        );
        assert_eq!(den, LaurentPoly1::x_minus_x_inv());
        let xi = int(5);
        let (num, _) = psi(&p, &xi).unwrap();
        assert_eq!(num.eval(&int(1)).unwrap(), p.eval(&xi) / &xi);
        assert_eq!(psi(&p, &int(0)), Err(BaxterError::ZeroXi));
    }

    #[test]
    fn unitarity_and_regularity() {
        let p = ann(&[6, -11, 6]);
        for xi in [int(1), int(5), rat(-2, 3)] {
            let kp = baxterize_auto(&p, &xi).unwrap();
            assert!(all_zero(&unitarity_residual(&kp).unwrap()));
            let (plus, minus) = regularity_residual(&kp).unwrap();
            assert!(plus.iter().chain(&minus).all(Zero::is_zero));
        }
        let kp = baxterize_principal(&p, &int(1), &int(6)).unwrap();
        // K(2) K(1/2) vanishes in the quotient since 2 is a root of p
        let a = kp.value_at(&int(2)).unwrap();
        let b = kp.value_at(&rat(1, 2)).unwrap();
        assert_eq!(b, vec![int(1), rat(-11, 2), int(7)]);
        assert!(p.mul_descending(&a, &b).iter().all(Zero::is_zero));

        let perturbed = baxterize_quadratic(&int(3), &int(-2), &int(5), &int(1));
        let (plus, _) = regularity_residual(&perturbed).unwrap();
        assert!(plus.iter().any(|c| !c.is_zero()));
        assert!(!all_zero(&unitarity_residual(&perturbed).unwrap()));

        let trivial = KPolynomial::trivial(p.clone(), LaurentPoly1::from_terms([(2, int(3))]));
        assert!(all_zero(&unitarity_residual(&trivial).unwrap()));
    }

    #[test]
    fn normalization_pair() {
        let p = ann(&[6, -11, 6]);
        let xi = rat(7, 2);
        let kp = baxterize_auto(&p, &xi).unwrap();
        let (num, den) = normalize_unitary(&kp).unwrap();
        let at_one: Vec<Rational> = num.iter().map(|c| c.eval(&int(1)).unwrap()).collect();
        let d = den.eval(&int(1)).unwrap();
        assert_eq!(at_one, vec![int(0), int(0), d]);
        let inv: Vec<_> = num.iter().map(LaurentPoly1::invert_var).collect();
        let prod = p.mul_descending(&num, &inv);
        assert_eq!(prod[2], &den * &den.invert_var());
        assert!(prod[..2].iter().all(Zero::is_zero));
    }

    #[test]
    fn divisor_projection() {
        let p = ann(&[6, -11, 6]);
        let pt = AnnPoly::from_roots(&[int(1), int(2)]).unwrap();
        for xi in [int(1), int(2), rat(-1, 3)] {
            assert!(all_zero(&project_divisor_residual(&p, &pt, &xi).unwrap()));
            assert!(all_zero(&project_divisor_residual(&p, &p, &xi).unwrap()));
        }
        let lin = AnnPoly::from_roots(&[int(3)]).unwrap();
        let root2 = AnnPoly::from_roots(&[int(2)]).unwrap();
        assert!(all_zero(
            &project_divisor_residual(&pt, &root2, &int(1)).unwrap()
        ));
        assert!(all_zero(
            &project_divisor_residual(&p, &lin, &int(4)).unwrap()
        ));
        let not_div = AnnPoly::from_roots(&[int(1), int(5)]).unwrap();
        assert_eq!(
            project_divisor_residual(&p, &not_div, &int(1)),
            Err(BaxterError::NotADivisor)
        );
    }

    #[test]
    fn rescaling() {
        let p = ann(&[6, -11, 6]);
        for xi in [int(1), int(2), int(-3)] {
            assert!(all_zero(&scaling_residual(&p, &xi).unwrap()));
        }
        let p_xi = p.rescaled(&int(2));
        assert_eq!(p_xi.constant_term(), &rat(6, 8));
    }

    #[test]
    fn lemma_identities() {
        let p = ann(&[2, 3, 5, 7]);
        let xi = rat(-3, 2);
        for m in 0..=3 {
            for i in 0..=m {
                assert!(
                    dif_residual(&p, &xi, i, m).unwrap().is_zero(),
                    "dif i={i} m={m}"
                );
            }
        }
        for k in 0..3 {
            for i in 0..=3 {
                assert!(
                    sums_residual(&p, k, i).unwrap().is_zero(),
                    "sums k={k} i={i}"
                );
            }
        }
        for i in 1..=3 {
            for j in 0..=3 {
                assert!(
                    sums_prime_residual(&p, &xi, i, j).unwrap().is_zero(),
                    "sums' i={i} j={j}"
                );
            }
        }
        let p2 = ann(&[6, -11, 6]);
        assert_eq!(sums_residual(&p2, 1, 0).unwrap(), int(0));
        assert!(dif_residual(&p, &xi, 2, 1).is_err());
        assert!(sums_residual(&p, 3, 0).is_err());
        assert!(sums_prime_residual(&p, &xi, 0, 0).is_err());
    }
}
