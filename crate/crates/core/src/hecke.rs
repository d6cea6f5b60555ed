//! The rank-one affine Hecke algebra modulo `p(K) = 0`, in PBW normal form.
//!
//! Elements are combinations of the monomials `K^i Y^j R^m` with
//! `0 <= i, j <= n`, `m ∈ {0, 1}`, where `Y := RKR`. Multiplication is
//! computed once on basis monomials by right-multiplying with generators and
//! rewriting with
//!
//! ```text
//! R·R -> ωR + 1        R·K -> YR - ωY        R·Y -> KR + ωY       YK = KY
//! K^{n+1} -> Σ A_i K^{n-i}
//! Y^{n+1} -> Σ A_i Y^{n-i} - ω (Y s(K,Y) - p(Y)) R,   s = (p(Y) - p(K)) / (Y - K)
//! ```
//!
//! The last rule is `R p(K) = p(Y) R - ωY s(K,Y)` right-multiplied by `R`.
//! Products of general elements go through the cached structure-constant table.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::traits::{One, Zero};
use thiserror::Error;

use crate::exact::{Laurent, LaurentPoly1, LaurentPoly2, Rational, Scalar, Substitution};
use crate::poly::AnnPoly;
use crate::rmatrix::{admissible_q, omega_of, RSpec};
use crate::tensor::RingMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("q must be a rational outside {{0, 1, -1}} with q + 1/q != 0")]
    BadQ,
    #[error("the cyclotomic quotient needs deg p >= 2 (n >= 1), got n = {0}")]
    BadDegree(usize),
    #[error("element does not belong to this algebra: {0}")]
    ParamMismatch(String),
    #[error("K is not invertible (A_n = 0)")]
    NotInvertible,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("residual left the submodule spanned by the e_(j;i)")]
    NotInL,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeParams {
    poly: AnnPoly,
    q: Rational,
    omega: Rational,
}

impl HeckeParams {
    pub fn new(poly: AnnPoly, q: Rational) -> Result<Self, HeckeError> {
        if poly.n() < 1 {
            return Err(HeckeError::BadDegree(poly.n()));
        }
        if !admissible_q(&q) {
            return Err(HeckeError::BadQ);
        }
        Ok(HeckeParams {
            poly,
            omega: omega_of(&q),
            q,
        })
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn poly(&self) -> &AnnPoly {
        &self.poly
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }
}

/// The PBW monomial `K^k Y^y R^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pbw {
    pub k: usize,
    pub y: usize,
    pub r: u8,
}

impl Pbw {
    pub const ONE: Pbw = Pbw { k: 0, y: 0, r: 0 };

    pub fn new(k: usize, y: usize, r: u8) -> Self {
        Pbw { k, y, r }
    }
}

impl fmt::Display for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (g, e) in [("K", self.k), ("Y", self.y), ("R", self.r as usize)] {
            match e {
                0 => {}
                1 => parts.push(g.to_string()),
                _ => parts.push(format!("{g}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// An element of `H_p` with coefficients in `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElem<S> {
    coeffs: BTreeMap<Pbw, S>,
}

impl<S: Scalar> HeckeElem<S> {
    pub fn zero() -> Self {
        HeckeElem {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Pbw::ONE, S::one())
    }

    pub fn monomial(b: Pbw, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(b, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Pbw, S)>) -> Self {
        let mut e = Self::zero();
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    /// `Σ c[i] K^i` from an ascending coefficient vector.
    pub fn from_k_ascending(c: Vec<S>) -> Self {
        Self::from_terms(
            c.into_iter()
                .enumerate()
                .map(|(i, s)| (Pbw::new(i, 0, 0), s)),
        )
    }

    pub fn add_term(&mut self, b: Pbw, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let cur = std::mem::replace(o.get_mut(), S::zero());
                let sum = cur + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, b: Pbw) -> S {
        self.coeffs.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pbw, &S)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(b, c)| (*b, c.scale(r))))
    }

    pub fn scale_by(&self, s: &S) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(b, c)| (*b, c.clone() * s.clone())))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> HeckeElem<T> {
        HeckeElem::from_terms(self.coeffs.iter().map(|(b, c)| (*b, f(c))))
    }

    fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().map(|b| b.k.max(b.y)).max()
    }
}

impl<S: Scalar> Add for HeckeElem<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (b, c) in rhs.coeffs {
            self.add_term(b, c);
        }
        self
    }
}

impl<S: Scalar> Sub for HeckeElem<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for HeckeElem<S> {
    type Output = Self;
    fn neg(self) -> Self {
        HeckeElem {
            coeffs: self.coeffs.into_iter().map(|(b, c)| (b, -c)).collect(),
        }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for HeckeElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    K,
    Y,
    R,
}

/// Which of the two commutator identities to evaluate in [`HeckeAlgebra::lemma_pm_residual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerSign {
    /// `RK^mRK^k - K^kRK^mR = ω Σ_{i=1}^k (K^{m+k-i}RK^i - K^iRK^{m+k-i})`
    Plus,
    /// `RK^mRK^{-k} - K^{-k}RK^mR = ω Σ_{i=1}^k (K^{i-k}RK^{m-i} - K^{m-i}RK^{i-k})`
    Minus,
}

/// `H_p` with its multiplication table and a solver for coordinates in `L_p`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    params: HeckeParams,
    /// `K^a` reduced, ascending, for `a <= 2n + 1`.
    kpow: Vec<Vec<Rational>>,
    /// `Y s(K,Y) - p(Y)` as `((K-degree, Y-degree), coefficient)`.
    ys_minus_p: Vec<((usize, usize), Rational)>,
    /// `table[idx(u) * dim + idx(v)] = u·v` for basis monomials, dense.
    table: Vec<Vec<(usize, Rational)>>,
    l_pairs: Vec<(usize, usize)>,
    l_elems: Vec<HeckeElem<Rational>>,
    l_pivots: Vec<Pbw>,
    l_pivot_inverse: RingMatrix<Rational>,
}

impl HeckeAlgebra {
    pub fn new(params: HeckeParams) -> Result<Self, HeckeError> {
        let q = params.q();
        if (q + q.recip()).is_zero() {
            return Err(HeckeError::BadQ);
        }
        let n = params.n();
        let poly = params.poly().clone();
        let kpow = (0..=2 * n + 1).map(|a| poly.power_ascending(a)).collect();
        let ys_minus_p = y_s_minus_p(&poly);

        let mut alg = HeckeAlgebra {
            params,
            kpow,
            ys_minus_p,
            table: Vec::new(),
            l_pairs: Vec::new(),
            l_elems: Vec::new(),
            l_pivots: Vec::new(),
            l_pivot_inverse: RingMatrix::identity(1),
        };
        alg.build_table();
        alg.build_l_solver();
        Ok(alg)
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// Rank of `H_p` over the scalars: `2(n+1)^2`.
    pub fn dim(&self) -> usize {
        2 * (self.n() + 1) * (self.n() + 1)
    }

    fn idx(&self, b: Pbw) -> usize {
        (b.k * (self.n() + 1) + b.y) * 2 + b.r as usize
    }

    fn pbw_at(&self, idx: usize) -> Pbw {
        let n1 = self.n() + 1;
        Pbw::new(idx / 2 / n1, idx / 2 % n1, (idx % 2) as u8)
    }

    pub fn basis(&self) -> impl Iterator<Item = Pbw> + '_ {
        (0..self.dim()).map(|i| self.pbw_at(i))
    }

    /// Adds `c K^k Y^y R^r` in normal form, for any `k <= 2n+1` and `y <= n+1`.
    fn push(&self, out: &mut [Rational], k: usize, y: usize, r: u8, c: Rational) {
        if c.is_zero() {
            return;
        }
        let n = self.n();
        let omega = self.params.omega();
        if y == n + 1 {
            for (t, a) in self.params.poly().coeffs().iter().enumerate() {
                self.push(out, k, n - t, r, &c * a);
            }
            for ((ka, yb), d) in &self.ys_minus_p {
                let cd = -(omega * &c * d);
                if r == 0 {
                    self.push(out, k + ka, *yb, 1, cd);
                } else {
                    // R·R = ωR + 1
                    self.push(out, k + ka, *yb, 1, omega * &cd);
                    self.push(out, k + ka, *yb, 0, cd);
                }
            }
            return;
        }
        debug_assert!(y <= n, "Y-degree {y} escaped the PBW bound");
        for (t, coef) in self.kpow[k].iter().enumerate() {
            if !coef.is_zero() {
                out[self.idx(Pbw::new(t, y, r))] += &c * coef;
            }
        }
    }

    fn mul_gen(&self, v: &[Rational], g: Gen) -> Vec<Rational> {
        let omega = self.params.omega();
        let mut out = vec![Rational::zero(); self.dim()];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Pbw { k, y, r } = self.pbw_at(idx);
            match (g, r) {
                (Gen::R, 0) => self.push(&mut out, k, y, 1, c.clone()),
                (Gen::R, _) => {
                    self.push(&mut out, k, y, 1, omega * c);
                    self.push(&mut out, k, y, 0, c.clone());
                }
                (Gen::K, 0) => self.push(&mut out, k + 1, y, 0, c.clone()),
                // R K = Y R - ω Y
                (Gen::K, _) => {
                    self.push(&mut out, k, y + 1, 1, c.clone());
                    self.push(&mut out, k, y + 1, 0, -(omega * c));
                }
                (Gen::Y, 0) => self.push(&mut out, k, y + 1, 0, c.clone()),
                // R Y = K R + ω Y
                (Gen::Y, _) => {
                    self.push(&mut out, k + 1, y, 1, c.clone());
                    self.push(&mut out, k, y + 1, 0, omega * c);
                }
            }
        }
        out
    }

    fn build_table(&mut self) {
        let d = self.dim();
        let n = self.n();
        let sparse = |v: Vec<Rational>| -> Vec<(usize, Rational)> {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };
        let mut table = vec![Vec::new(); d * d];
        for u in 0..d {
            let mut by_k = vec![Rational::zero(); d];
            by_k[u] = Rational::one();
            for a in 0..=n {
                let mut cur = by_k.clone();
                for b in 0..=n {
                    let with_r = self.mul_gen(&cur, Gen::R);
                    table[u * d + self.idx(Pbw::new(a, b, 0))] = sparse(cur.clone());
                    table[u * d + self.idx(Pbw::new(a, b, 1))] = sparse(with_r);
                    if b < n {
                        cur = self.mul_gen(&cur, Gen::Y);
                    }
                }
                if a < n {
                    by_k = self.mul_gen(&by_k, Gen::K);
                }
            }
        }
        self.table = table;
    }

    fn check_bounds<S: Scalar>(&self, e: &HeckeElem<S>) -> Result<(), HeckeError> {
        match e.max_index() {
            Some(m) if m > self.n() => Err(HeckeError::ParamMismatch(format!(
                "exponent {m} exceeds n = {}",
                self.n()
            ))),
            _ => Ok(()),
        }
    }

    /// Product in PBW normal form.
    pub fn nf_mul<S: Scalar>(
        &self,
        a: &HeckeElem<S>,
        b: &HeckeElem<S>,
    ) -> Result<HeckeElem<S>, HeckeError> {
        self.check_bounds(a)?;
        self.check_bounds(b)?;
        Ok(self.mul(a, b))
    }

    /// As [`HeckeAlgebra::nf_mul`] for elements already known to be in range.
    pub fn mul<S: Scalar>(&self, a: &HeckeElem<S>, b: &HeckeElem<S>) -> HeckeElem<S> {
        let d = self.dim();
        let mut acc: Vec<S> = vec![S::zero(); d];
        for (&u, cu) in &a.coeffs {
            let iu = self.idx(u);
            for (&v, cv) in &b.coeffs {
                let prod = cu.clone() * cv.clone();
                for (w, t) in &self.table[iu * d + self.idx(v)] {
                    let cur = std::mem::replace(&mut acc[*w], S::zero());
                    acc[*w] = cur + prod.scale(t);
                }
            }
        }
        HeckeElem::from_terms(
            acc.into_iter()
                .enumerate()
                .map(|(i, c)| (self.pbw_at(i), c)),
        )
    }

    /// Left-to-right product of several factors.
    pub fn product<S: Scalar>(&self, factors: &[&HeckeElem<S>]) -> HeckeElem<S> {
        factors
            .iter()
            .fold(HeckeElem::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn k<S: Scalar>(&self) -> HeckeElem<S> {
        HeckeElem::monomial(Pbw::new(1, 0, 0), S::one())
    }

    pub fn y<S: Scalar>(&self) -> HeckeElem<S> {
        HeckeElem::monomial(Pbw::new(0, 1, 0), S::one())
    }

    pub fn r<S: Scalar>(&self) -> HeckeElem<S> {
        HeckeElem::monomial(Pbw::new(0, 0, 1), S::one())
    }

    /// `K^m` for any integer `m`; negative powers need `A_n != 0`.
    pub fn k_power(&self, m: i32) -> Result<HeckeElem<Rational>, HeckeError> {
        let poly = self.params.poly();
        let asc = if m >= 0 {
            poly.power_ascending(m as usize)
        } else {
            let inv = poly.inverse_ascending().ok_or(HeckeError::NotInvertible)?;
            let mut acc = poly.power_ascending(0);
            for _ in 0..m.unsigned_abs() {
                acc = poly.mul_ascending(&acc, &inv);
            }
            acc
        };
        Ok(HeckeElem::from_k_ascending(asc))
    }

    /// `K^-1 = K~ / A_n` with `K~ = K^n - A_0 K^{n-1} - ... - A_{n-1}`.
    pub fn k_inverse(&self) -> Result<HeckeElem<Rational>, HeckeError> {
        self.k_power(-1)
    }

    /// `K^a R K^b` for any integers `a`, `b`.
    pub fn sandwich(&self, a: i32, b: i32) -> Result<HeckeElem<Rational>, HeckeError> {
        Ok(self.product(&[&self.k_power(a)?, &self.r(), &self.k_power(b)?]))
    }

    /// `e_(i;j) = K^i R K^j - K^j R K^i`.
    pub fn e_basis(&self, i: usize, j: usize) -> Result<HeckeElem<Rational>, HeckeError> {
        let n = self.n();
        if i > n || j > n {
            return Err(HeckeError::IndexOutOfRange(format!(
                "e_({i};{j}) needs indices <= {n}"
            )));
        }
        Ok(self.sandwich(i as i32, j as i32)? - self.sandwich(j as i32, i as i32)?)
    }

    /// The pairs `(j, i)`, `0 <= i < j <= n`, indexing [`HeckeAlgebra::l_expand`] output.
    pub fn l_basis_pairs(&self) -> &[(usize, usize)] {
        &self.l_pairs
    }

    fn build_l_solver(&mut self) {
        let n = self.n();
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|j| (0..j).map(move |i| (j, i))).collect();
        let elems: Vec<_> = pairs
            .iter()
            .map(|&(j, i)| self.e_basis(j, i).expect("in range"))
            .collect();
        let d = self.dim();
        let rows = RingMatrix::from_fn(elems.len(), d, |l, c| elems[l].coeff(self.pbw_at(c)));
        let (_, pivots) = rows.rref();
        assert_eq!(
            pivots.len(),
            elems.len(),
            "the e_(j;i) must be linearly independent"
        );
        let sub = RingMatrix::from_fn(elems.len(), elems.len(), |l, c| {
            rows.get(l, pivots[c]).clone()
        });
        self.l_pivot_inverse = sub.inverse().expect("pivot block is invertible");
        self.l_pivots = pivots.into_iter().map(|c| self.pbw_at(c)).collect();
        self.l_pairs = pairs;
        self.l_elems = elems;
    }

    /// Coordinates of `elem` over `{e_(j;i)}` (ordered as [`HeckeAlgebra::l_basis_pairs`]),
    /// or `None` when `elem` lies outside their span.
    pub fn l_expand<S: Scalar>(&self, elem: &HeckeElem<S>) -> Option<Vec<S>> {
        let m = self.l_elems.len();
        let v: Vec<S> = self.l_pivots.iter().map(|&b| elem.coeff(b)).collect();
        // coords · sub = v  =>  coords = v · sub^-1
        let coords: Vec<S> = (0..m)
            .map(|l| {
                (0..m).fold(S::zero(), |acc, c| {
                    acc + v[c].scale(self.l_pivot_inverse.get(c, l))
                })
            })
            .collect();
        let rebuilt = coords
            .iter()
            .zip(&self.l_elems)
            .fold(HeckeElem::zero(), |acc, (c, e)| acc + e.map(|t| c.scale(t)));
        (rebuilt == *elem).then_some(coords)
    }

    /// LHS - RHS of the `(+)` or `(-)` commutator identity; zero when it holds.
    pub fn lemma_pm_residual(
        &self,
        m: i32,
        k: u32,
        sign: PowerSign,
    ) -> Result<HeckeElem<Rational>, HeckeError> {
        if k == 0 {
            return Err(HeckeError::IndexOutOfRange("k must be >= 1".into()));
        }
        let k = k as i32;
        let omega = self.params.omega().clone();
        let r = self.r::<Rational>();
        let kk = match sign {
            PowerSign::Plus => k,
            PowerSign::Minus => -k,
        };
        let km = self.k_power(m)?;
        let kpow = self.k_power(kk)?;
        let lhs = self.product(&[&r, &km, &r, &kpow]) - self.product(&[&kpow, &r, &km, &r]);
        let mut sum = HeckeElem::zero();
        for i in 1..=k {
            let (a, b) = match sign {
                PowerSign::Plus => (m + k - i, i),
                PowerSign::Minus => (i - k, m - i),
            };
            sum = sum + self.sandwich(a, b)? - self.sandwich(b, a)?;
        }
        Ok(lhs - sum.scale(&omega))
    }

    /// `P+ = (q - R)/(q + 1/q)` and `P- = (R + 1/q)/(q + 1/q)`.
    pub fn idempotents(&self) -> Result<(HeckeElem<Rational>, HeckeElem<Rational>), HeckeError> {
        let q = self.params.q();
        let norm = q + q.recip();
        if norm.is_zero() {
            return Err(HeckeError::BadQ);
        }
        let inv = norm.recip();
        let one = HeckeElem::<Rational>::one();
        let r = self.r::<Rational>();
        let plus = (one.scale(q) - r.clone()).scale(&inv);
        let minus = (r + one.scale(&q.recip())).scale(&inv);
        Ok((plus, minus))
    }

    /// `Σ_i kx[i] K^{n-i}` with the coefficients moved into two variables.
    pub fn k_polynomial(
        &self,
        kx: &[LaurentPoly1],
        sub: Substitution,
    ) -> Result<HeckeElem<LaurentPoly2>, HeckeError> {
        let n = self.n();
        if kx.len() != n + 1 {
            return Err(HeckeError::ParamMismatch(format!(
                "{} coefficients for n = {n}",
                kx.len()
            )));
        }
        Ok(HeckeElem::from_terms(
            kx.iter()
                .enumerate()
                .map(|(i, c)| (Pbw::new(n - i, 0, 0), c.embed2(sub))),
        ))
    }

    /// The cleared numerator `z R(z) = (z - 1) R + ω`.
    pub fn r_numerator(&self, arg: Substitution) -> HeckeElem<LaurentPoly2> {
        let z = LaurentPoly1::x().embed2(arg);
        HeckeElem::from_terms([
            (Pbw::new(0, 0, 1), z - LaurentPoly2::one()),
            (
                Pbw::ONE,
                LaurentPoly2::constant(self.params.omega().clone()),
            ),
        ])
    }

    /// `R(x/y) N(x) R(xy) N(y) - N(y) R(xy) N(x) R(x/y)` where `N(x)` is the
    /// cleared numerator encoded by `kx` (coefficient `i` multiplies `K^{n-i}`)
    /// and every `R(z)` is replaced by `z R(z)`. Zero iff `kx` solves the
    /// spectral reflection equation.
    pub fn re_spectral_residual(
        &self,
        kx: &[LaurentPoly1],
    ) -> Result<HeckeElem<LaurentPoly2>, HeckeError> {
        let nx = self.k_polynomial(kx, Substitution::X)?;
        let ny = self.k_polynomial(kx, Substitution::Y)?;
        let r_ratio = self.r_numerator(Substitution::XOverY);
        let r_prod = self.r_numerator(Substitution::XY);
        let lhs = self.product(&[&r_ratio, &nx, &r_prod, &ny]);
        let rhs = self.product(&[&ny, &r_prod, &nx, &r_ratio]);
        Ok(lhs - rhs)
    }

    /// The reduced three-term form
    /// `(x - 1/y - y + 1/x)[RN'RN'' - N''RN'R] + ω(y - 1/x)[N'RN'' - N''RN']
    ///  + ω(1/y - 1/x)[RN'N'' - N''N'R]`, with `N' = N(x)`, `N'' = N(y)`.
    ///
    /// Equals `x^-1` times [`HeckeAlgebra::re_spectral_residual`]. The result must
    /// lie in the span of the `e_(j;i)`; [`HeckeError::NotInL`] otherwise.
    pub fn re_prime_residual(
        &self,
        kx: &[LaurentPoly1],
    ) -> Result<HeckeElem<LaurentPoly2>, HeckeError> {
        let nx = self.k_polynomial(kx, Substitution::X)?;
        let ny = self.k_polynomial(kx, Substitution::Y)?;
        let r = self.r::<LaurentPoly2>();
        let omega = self.params.omega();
        let mono = |ex: i32, ey: i32| LaurentPoly2::monomial((ex, ey), Rational::one());
        let c1 = mono(1, 0) - mono(0, -1) - mono(0, 1) + mono(-1, 0);
        let c2 = (mono(0, 1) - mono(-1, 0)).scale(omega);
        let c3 = (mono(0, -1) - mono(-1, 0)).scale(omega);

        let t1 = self.product(&[&r, &nx, &r, &ny]) - self.product(&[&ny, &r, &nx, &r]);
        let t2 = self.product(&[&nx, &r, &ny]) - self.product(&[&ny, &r, &nx]);
        let t3 = self.product(&[&r, &nx, &ny]) - self.product(&[&ny, &nx, &r]);
        let res = t1.scale_by(&c1) + t2.scale_by(&c2) + t3.scale_by(&c3);
        if self.l_expand(&res).is_none() {
            return Err(HeckeError::NotInL);
        }
        Ok(res)
    }

    /// Image of `elem` under `R -> R`, `K -> 1⊗K`, `Y -> R(1⊗K)R`.
    pub fn represent(
        &self,
        elem: &HeckeElem<Rational>,
        rs: &RSpec,
        k: &RingMatrix<Rational>,
    ) -> RingMatrix<Rational> {
        let d = rs.dim();
        let big = d * d;
        let k2 = RingMatrix::identity(d).kron(k);
        let r = rs.matrix();
        let y = &(r * &k2) * r;
        let mut out = RingMatrix::zeros(big, big);
        for (b, c) in elem.terms() {
            let mut m = &k2.pow(b.k as u32) * &y.pow(b.y as u32);
            if b.r == 1 {
                m = &m * r;
            }
            out = &out + &m.scale(c);
        }
        out
    }
}

/// `Y s(K,Y) - p(Y)` where `s = (p(Y) - p(K)) / (Y - K)`; monomials are
/// `(K-degree, Y-degree)`. The `Y^{n+1}` terms cancel.
fn y_s_minus_p(poly: &AnnPoly) -> Vec<((usize, usize), Rational)> {
    let in_var = |k_var: bool| -> LaurentPoly2 {
        Laurent::from_terms(
            poly.to_laurent()
                .terms()
                .map(|(&e, c)| (if k_var { (e, 0) } else { (0, e) }, c.clone())),
        )
    };
    let (pk, py) = (in_var(true), in_var(false));
    let y = LaurentPoly2::monomial((0, 1), Rational::one());
    let k = LaurentPoly2::monomial((1, 0), Rational::one());
    let s = (&py - &pk)
        .divexact(&(&y - &k))
        .expect("Y - K divides p(Y) - p(K)");
    let out = &(&y * &s) - &py;
    let n = poly.n() as i32;
    out.terms()
        .map(|(&(a, b), c)| {
            assert!(a >= 0 && b >= 0 && a <= n && b <= n, "degree bound");
            ((a as usize, b as usize), c.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::poly::ann;

    fn alg(a: &[i64], q: Rational) -> HeckeAlgebra {
        HeckeAlgebra::new(HeckeParams::new(ann(a), q).unwrap()).unwrap()
    }

    fn q_elem(terms: &[((usize, usize, u8), Rational)]) -> HeckeElem<Rational> {
        HeckeElem::from_terms(
            terms
                .iter()
                .map(|((k, y, r), c)| (Pbw::new(*k, *y, *r), c.clone())),
        )
    }

    #[test]
    fn generator_rules() {
        let h = alg(&[2, 3, 5], int(2));
        let w = rat(3, 2);
        let (k, y, r) = (h.k::<Rational>(), h.y::<Rational>(), h.r::<Rational>());
        assert_eq!(
            h.mul(&r, &r),
            q_elem(&[((0, 0, 1), w.clone()), ((0, 0, 0), int(1))])
        );
        assert_eq!(
            h.mul(&r, &k),
            q_elem(&[((0, 1, 1), int(1)), ((0, 1, 0), -w.clone())])
        );
        assert_eq!(
            h.mul(&r, &y),
            q_elem(&[((1, 0, 1), int(1)), ((0, 1, 0), w)])
        );
        assert_eq!(h.mul(&k, &y), q_elem(&[((1, 1, 0), int(1))]));
        assert_eq!(h.mul(&y, &k), h.mul(&k, &y));
        assert_eq!(h.product(&[&r, &k, &r]), y);
    }

    #[test]
    fn cyclotomic_relation() {
        let h = alg(&[2, 3, 5], rat(3, 2));
        let k3 = h.product(&[&h.k(), &h.k(), &h.k()]);
        assert_eq!(
            k3,
            q_elem(&[
                ((2, 0, 0), int(2)),
                ((1, 0, 0), int(3)),
                ((0, 0, 0), int(5))
            ])
        );
        // p(Y) is not zero, but R p(K) = 0 forces p(Y)R = ωY s(K,Y)
        let y = h.y::<Rational>();
        let y3 = h.product(&[&y, &y, &y]);
        let py = q_elem(&[
            ((0, 2, 0), int(2)),
            ((0, 1, 0), int(3)),
            ((0, 0, 0), int(5)),
        ]) - y3;
        assert!(!py.is_zero());
        let r = h.r::<Rational>();
        let lhs = h.mul(&py, &r);
        // s(K,Y) = -(Y^2 + YK + K^2) + A0 (Y + K) + A1
        let s = q_elem(&[
            ((0, 2, 0), int(-1)),
            ((1, 1, 0), int(-1)),
            ((2, 0, 0), int(-1)),
            ((0, 1, 0), int(2)),
            ((1, 0, 0), int(2)),
            ((0, 0, 0), int(3)),
        ]);
        let rhs = h.mul(&y, &s).scale(h.params().omega());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_equation_holds() {
        for a in [&[3, -2][..], &[2, 3, 5], &[2, 3, 5, 7]] {
            let h = alg(a, int(2));
            let (k, r) = (h.k::<Rational>(), h.r::<Rational>());
            let lhs = h.product(&[&r, &k, &r, &k]);
            let rhs = h.product(&[&k, &r, &k, &r]);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_of_k() {
        let h = alg(&[3, -2], int(2));
        let inv = h.k_inverse().unwrap();
        assert_eq!(
            inv,
            q_elem(&[((1, 0, 0), rat(-1, 2)), ((0, 0, 0), rat(3, 2))])
        );
        assert_eq!(h.mul(&h.k(), &inv), HeckeElem::one());

        let h3 = alg(&[12, -47, 72, -36], rat(3, 2));
        let inv = h3.k_inverse().unwrap();
        let expected = q_elem(&[
            ((3, 0, 0), int(1)),
            ((2, 0, 0), int(-12)),
            ((1, 0, 0), int(47)),
            ((0, 0, 0), int(-72)),
        ])
        .scale(&rat(-1, 36));
        assert_eq!(inv, expected);
        assert_eq!(h3.mul(&inv, &h3.k()), HeckeElem::one());

        let degenerate = alg(&[3, -2, 0], int(2));
        assert_eq!(degenerate.k_inverse(), Err(HeckeError::NotInvertible));
    }

    #[test]
    fn e_basis_forms() {
        let h = alg(&[2, 3, 5], int(2));
        let w = rat(3, 2);
        assert_eq!(
            h.e_basis(1, 0).unwrap(),
            q_elem(&[((1, 0, 1), int(1)), ((0, 1, 1), int(-1)), ((0, 1, 0), w)])
        );
        assert!(h.e_basis(2, 2).unwrap().is_zero());
        assert_eq!(h.e_basis(2, 1).unwrap(), -h.e_basis(1, 2).unwrap());
        assert!(matches!(
            h.e_basis(3, 0),
            Err(HeckeError::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn l_coordinates() {
        let h = alg(&[2, 3, 5], int(2));
        let pairs = h.l_basis_pairs().to_vec();
        assert_eq!(pairs, vec![(1, 0), (2, 0), (2, 1)]);
        let c = h.l_expand(&h.e_basis(1, 0).unwrap()).unwrap();
        assert_eq!(c, vec![int(1), int(0), int(0)]);
        assert_eq!(
            h.l_expand(&HeckeElem::<Rational>::zero()).unwrap(),
            vec![int(0); 3]
        );
        assert!(h.l_expand(&h.r::<Rational>()).is_none());
        assert!(h.l_expand(&HeckeElem::<Rational>::one()).is_none());

        // RK^2RK - KRK^2R = ω e_(2;1)
        let (k, r) = (h.k::<Rational>(), h.r::<Rational>());
        let k2 = h.mul(&k, &k);
        let elem = h.product(&[&r, &k2, &r, &k]) - h.product(&[&k, &r, &k2, &r]);
        assert_eq!(h.l_expand(&elem).unwrap(), vec![int(0), int(0), rat(3, 2)]);
    }

    #[test]
    fn commutator_identities() {
        let h = alg(&[2, 3, 5], rat(3, 2));
        for m in -2..=3 {
            for k in 1..=3 {
                assert!(
                    h.lemma_pm_residual(m, k, PowerSign::Plus)
                        .unwrap()
                        .is_zero(),
                    "+ m={m} k={k}"
                );
                assert!(
                    h.lemma_pm_residual(m, k, PowerSign::Minus)
                        .unwrap()
                        .is_zero(),
                    "- m={m} k={k}"
                );
            }
        }
        let degenerate = alg(&[3, -2, 0], int(2));
        assert!(degenerate
            .lemma_pm_residual(2, 1, PowerSign::Plus)
            .unwrap()
            .is_zero());
        assert_eq!(
            degenerate.lemma_pm_residual(-1, 1, PowerSign::Plus),
            Err(HeckeError::NotInvertible)
        );
    }

    #[test]
    fn idempotent_relations() {
        let h = alg(&[3, -2], int(2));
        let (p, m) = h.idempotents().unwrap();
        let one = HeckeElem::<Rational>::one();
        assert_eq!(p.clone() + m.clone(), one);
        assert_eq!(h.mul(&p, &p), p);
        assert_eq!(h.mul(&m, &m), m);
        assert!(h.mul(&p, &m).is_zero());
        let q = int(2);
        assert_eq!(p.scale(&-q.recip()) + m.scale(&q), h.r());
    }

    #[test]
    fn out_of_range_operands_are_rejected() {
        let h = alg(&[3, -2], int(2));
        let big = HeckeElem::monomial(Pbw::new(2, 0, 0), int(1));
        assert!(matches!(
            h.nf_mul(&big, &h.k()),
            Err(HeckeError::ParamMismatch(_))
        ));
        assert_eq!(
            HeckeParams::new(ann(&[1]), int(2)).unwrap_err(),
            HeckeError::BadDegree(0)
        );
        assert_eq!(
            HeckeParams::new(ann(&[1, 1]), int(-1)).unwrap_err(),
            HeckeError::BadQ
        );
    }

    #[test]
    fn scalar_solutions_and_controls() {
        let h = alg(&[6, -11, 6], int(2));
        let f = LaurentPoly1::from_terms([(2, int(1)), (-1, int(3))]);
        let trivial = vec![LaurentPoly1::zero(), LaurentPoly1::zero(), f];
        assert!(h.re_spectral_residual(&trivial).unwrap().is_zero());
        assert!(h.re_prime_residual(&trivial).unwrap().is_zero());

        let constant_k = vec![
            LaurentPoly1::zero(),
            LaurentPoly1::one(),
            LaurentPoly1::zero(),
        ];
        assert!(!h.re_spectral_residual(&constant_k).unwrap().is_zero());
        assert!(matches!(
            h.re_spectral_residual(&constant_k[..2]),
            Err(HeckeError::ParamMismatch(_))
        ));
    }

    #[test]
    fn baxterized_solutions_vanish() {
        use crate::baxter::{baxterize_auto, baxterize_small};
        let h = alg(&[2, 3, 5], rat(3, 2));
        let kp = baxterize_auto(h.params().poly(), &int(2)).unwrap();
        let full = h.re_spectral_residual(kp.coeffs()).unwrap();
        assert!(full.is_zero());
        assert!(h.re_prime_residual(kp.coeffs()).unwrap().is_zero());

        let h3 = alg(&[12, -47, 72, -36], int(2));
        for root in [int(6), int(-6)] {
            let kp = baxterize_small(h3.params().poly(), &root).unwrap();
            assert!(h3.re_spectral_residual(kp.coeffs()).unwrap().is_zero());
        }
    }

    #[test]
    fn reduced_form_matches_full_residual() {
        let h = alg(&[2, 3, 5], int(2));
        let kx = vec![
            LaurentPoly1::from_terms([(1, int(1)), (0, int(2))]),
            LaurentPoly1::from_terms([(-1, int(3))]),
            LaurentPoly1::from_terms([(2, rat(1, 2)), (0, int(-1))]),
        ];
        let full = h.re_spectral_residual(&kx).unwrap();
        assert!(!full.is_zero());
        let reduced = h.re_prime_residual(&kx).unwrap();
        let x = LaurentPoly2::monomial((1, 0), int(1));
        assert_eq!(reduced.scale_by(&x), full);
    }
}
