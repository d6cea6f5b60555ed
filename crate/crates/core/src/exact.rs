//! Exact scalars and sparse Laurent polynomials.
//!
//! Everything downstream is built on two rings: [`Rational`] (arbitrary
//! precision) and [`Laurent`] polynomials over it in one or two variables.
//! Rational functions never appear; identities are cleared to Laurent
//! identities before they are checked, so equality is structural equality of
//! canonical sparse maps.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

/// The ground field.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at zero of a polynomial with negative exponents")]
    EvalAtZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, ExactError> {
    if b.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(a / b)
}

/// Parses `"num/den"` or `"num"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("bad fraction {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// `num/den`, with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// The rational square root of `r`, when one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Integer power with negative exponents allowed (`r` must then be nonzero).
pub fn rat_pow(r: &Rational, e: i32) -> Rational {
    let mut acc = Rational::one();
    let base = if e < 0 { r.recip() } else { r.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// A commutative ring the matrix and Hecke layers can carry as coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

/// Exponent vectors of Laurent monomials, ordered lexicographically.
pub trait Monomial: Copy + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    fn unit() -> Self;
    fn times(self, other: Self) -> Self;
    fn inverse(self) -> Self;
    fn component_min(self, other: Self) -> Self;
    fn component_max(self, other: Self) -> Self;
    /// Componentwise `lo <= self <= hi`.
    fn within(self, lo: Self, hi: Self) -> bool;
}

impl Monomial for i32 {
    fn unit() -> Self {
        0
    }
    fn times(self, other: Self) -> Self {
        self + other
    }
    fn inverse(self) -> Self {
        -self
    }
    fn component_min(self, other: Self) -> Self {
        self.min(other)
    }
    fn component_max(self, other: Self) -> Self {
        self.max(other)
    }
    fn within(self, lo: Self, hi: Self) -> bool {
        lo <= self && self <= hi
    }
}

impl Monomial for (i32, i32) {
    fn unit() -> Self {
        (0, 0)
    }
    fn times(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
    fn inverse(self) -> Self {
        (-self.0, -self.1)
    }
    fn component_min(self, other: Self) -> Self {
        (self.0.min(other.0), self.1.min(other.1))
    }
    fn component_max(self, other: Self) -> Self {
        (self.0.max(other.0), self.1.max(other.1))
    }
    fn within(self, lo: Self, hi: Self) -> bool {
        lo.0 <= self.0 && self.0 <= hi.0 && lo.1 <= self.1 && self.1 <= hi.1
    }
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// No zero coefficient is ever stored, so the empty map is zero and derived
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<M: Monomial> {
    terms: BTreeMap<M, Rational>,
}

pub type LaurentPoly1 = Laurent<i32>;
pub type LaurentPoly2 = Laurent<(i32, i32)>;

impl<M: Monomial> Laurent<M> {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(M::unit(), c)
    }

    pub fn monomial(m: M, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (M, Rational)>) -> Self {
        let mut p = Laurent::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: M, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: M) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value if the polynomial has no non-unit monomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&M::unit()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(M, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Componentwise exponent bounds (the bounding box of the support).
    pub fn support_box(&self) -> Option<(M, M)> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), &m| {
            (lo.component_min(m), hi.component_max(m))
        }))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn shift(&self, by: M) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times(by), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Laurent::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Runs lex-leading-term division; every quotient monomial must stay in the
    /// box forced by the supports (the Newton polytope of a product is the
    /// Minkowski sum), which both bounds the loop and detects inexactness.
    pub fn divexact(&self, divisor: &Self) -> Result<Self, ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Laurent::zero());
        }
        let (alo, ahi) = self.support_box().expect("nonzero");
        let (blo, bhi) = divisor.support_box().expect("nonzero");
        let (qlo, qhi) = (alo.times(blo.inverse()), ahi.times(bhi.inverse()));
        let (lead_m, lead_c) = divisor.leading().expect("nonzero");
        let lead_c = lead_c.clone();

        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.times(lead_m.inverse());
            if !qm.within(qlo, qhi) {
                return Err(ExactError::InexactDivision);
            }
            let qc = rc / &lead_c;
            rem = rem - divisor.shift(qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }
}

impl<M: Monomial> Zero for Laurent<M> {
    fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<M: Monomial> One for Laurent<M> {
    fn one() -> Self {
        Laurent::constant(Rational::one())
    }
}

impl<'a, M: Monomial> Add<&'a Laurent<M>> for &'a Laurent<M> {
    type Output = Laurent<M>;
    fn add(self, rhs: &'a Laurent<M>) -> Laurent<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a, M: Monomial> Sub<&'a Laurent<M>> for &'a Laurent<M> {
    type Output = Laurent<M>;
    fn sub(self, rhs: &'a Laurent<M>) -> Laurent<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a, M: Monomial> Mul<&'a Laurent<M>> for &'a Laurent<M> {
    type Output = Laurent<M>;
    fn mul(self, rhs: &'a Laurent<M>) -> Laurent<M> {
        let mut out = Laurent::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(*m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<M: Monomial> $tr for Laurent<M> {
            type Output = Laurent<M>;
            fn $f(self, rhs: Laurent<M>) -> Laurent<M> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<M: Monomial> Neg for Laurent<M> {
    type Output = Laurent<M>;
    fn neg(mut self) -> Laurent<M> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! laurent_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_rational(r: Rational) -> Self {
                Laurent::constant(r)
            }
            fn scale(&self, r: &Rational) -> Self {
                Laurent::scale(self, r)
            }
        }
    };
}
laurent_scalar!(LaurentPoly1);
laurent_scalar!(LaurentPoly2);

/// Monomial substitutions taking one-variable polynomials into `k[x^±, y^±]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    X,
    Y,
    XY,
    XOverY,
}

impl LaurentPoly1 {
    /// The variable `x`.
    pub fn x() -> Self {
        Laurent::monomial(1, Rational::one())
    }

    /// `x - x^-1`, the common denominator of every baxterized solution.
    pub fn x_minus_x_inv() -> Self {
        Laurent::from_terms([(1, Rational::one()), (-1, -Rational::one())])
    }

    /// Substitutes `x -> x^-1`.
    pub fn invert_var(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn embed2(&self, sub: Substitution) -> LaurentPoly2 {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| {
                    let m = match sub {
                        Substitution::X => (e, 0),
                        Substitution::Y => (0, e),
                        Substitution::XY => (e, e),
                        Substitution::XOverY => (e, -e),
                    };
                    (m, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, r: &Rational) -> Result<Rational, ExactError> {
        if r.is_zero() && self.terms.keys().any(|&e| e < 0) {
            return Err(ExactError::EvalAtZero);
        }
        Ok(self
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (&e, c)| acc + c * rat_pow(r, e)))
    }

    /// Substitutes `x -> s*x` for a rational `s`.
    pub fn scale_var(&self, s: &Rational) -> Self {
        Laurent::from_terms(self.terms.iter().map(|(&e, c)| (e, c * rat_pow(s, e))))
    }
}

impl<M: Monomial> fmt::Debug for Laurent<M>
where
    Laurent<M>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_terms<M: Monomial>(
    f: &mut fmt::Formatter<'_>,
    p: &Laurent<M>,
    mono: impl Fn(M) -> String,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let ms = mono(*m);
        let (neg, abs) = (c.is_negative(), c.abs());
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        match (ms.is_empty(), abs.is_one()) {
            (true, _) => write!(f, "{abs}")?,
            (false, true) => write!(f, "{ms}")?,
            (false, false) => write!(f, "{abs}*{ms}")?,
        }
    }
    Ok(())
}

fn var_power(v: &str, e: i32) -> String {
    match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |e| var_power("x", e))
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |(ex, ey)| {
            let (a, b) = (var_power("x", ex), var_power("y", ey));
            match (a.is_empty(), b.is_empty()) {
                (false, false) => format!("{a}*{b}"),
                _ => format!("{a}{b}"),
            }
        })
    }
}

/// JSON transport for scalars. Fractions always travel as strings.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ExactError>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self, ExactError> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
            other => Err(ExactError::Parse(format!(
                "expected a fraction string, got {other}"
            ))),
        }
    }
}

fn json_exponent(rec: &serde_json::Map<String, Value>, key: &str) -> Result<i32, ExactError> {
    rec.get(key)
        .and_then(Value::as_i64)
        .and_then(|e| i32::try_from(e).ok())
        .ok_or_else(|| ExactError::Parse(format!("missing integer field {key:?}")))
}

fn laurent_from_json<M: Monomial>(
    v: &Value,
    read: impl Fn(&serde_json::Map<String, Value>) -> Result<M, ExactError>,
) -> Result<Laurent<M>, ExactError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ExactError::Parse("Laurent polynomial must be an array".into()))?;
    let mut out = Laurent::zero();
    let mut last: Option<M> = None;
    for rec in arr {
        let rec = rec
            .as_object()
            .ok_or_else(|| ExactError::Parse("term must be an object".into()))?;
        let m = read(rec)?;
        if last.is_some_and(|l| l >= m) {
            return Err(ExactError::Parse(
                "exponents must be strictly increasing".into(),
            ));
        }
        last = Some(m);
        let c = Rational::from_json(
            rec.get("c")
                .ok_or_else(|| ExactError::Parse("missing field \"c\"".into()))?,
        )?;
        out.add_term(m, c);
    }
    Ok(out)
}

impl JsonScalar for LaurentPoly1 {
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({"ex": e, "c": format_rational(c)}))
                .collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self, ExactError> {
        laurent_from_json(v, |rec| json_exponent(rec, "ex"))
    }
}

impl JsonScalar for LaurentPoly2 {
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((ex, ey), c)| json!({"ex": ex, "ey": ey, "c": format_rational(c)}))
                .collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self, ExactError> {
        laurent_from_json(v, |rec| {
            Ok((json_exponent(rec, "ex")?, json_exponent(rec, "ey")?))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly1 {
        Laurent::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn rational_basics() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        let q = int(2);
        assert_eq!(&q - q.recip(), rat(3, 2));
        let r = parse_rational("5/10").unwrap();
        assert_eq!(format_rational(&r), "1/2");
        assert_eq!(format_rational(&parse_rational("-6/3").unwrap()), "-2");
        assert_eq!(parse_rational("1/0"), Err(ExactError::DivisionByZero));
        assert!(parse_rational("1.5").is_err());
        assert_eq!(
            checked_div(&int(1), &int(0)),
            Err(ExactError::DivisionByZero)
        );
        assert!(rat(1, 3) < rat(1, 2));
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&rat(36, 49)), Some(rat(6, 7)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }

    #[test]
    fn laurent_products() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = LaurentPoly1::x_minus_x_inv();
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
        assert!((&lp(&[(1, 1), (0, -1)]) * &LaurentPoly1::zero()).is_zero());
        let cubic = &(&lp(&[(1, 1), (0, -1)]) * &lp(&[(1, 1), (0, -2)])) * &lp(&[(1, 1), (0, -3)]);
        assert_eq!(cubic, lp(&[(3, 1), (2, -6), (1, 11), (0, -6)]));
    }

    #[test]
    fn invert_and_embed() {
        let d = LaurentPoly1::x_minus_x_inv();
        assert_eq!(d.invert_var(), -d.clone());
        assert_eq!(LaurentPoly1::one().invert_var(), LaurentPoly1::one());
        // phi_1 = xi*x - A0 with xi = 3, A0 = 5
        let phi1 = lp(&[(1, 3), (0, -5)]);
        assert_eq!(phi1.invert_var(), lp(&[(-1, 3), (0, -5)]));

        let xm1 = lp(&[(1, 1), (0, -1)]);
        assert_eq!(
            xm1.embed2(Substitution::XY),
            Laurent::from_terms([((1, 1), int(1)), ((0, 0), int(-1))])
        );
        assert_eq!(
            LaurentPoly1::x().embed2(Substitution::XOverY),
            Laurent::monomial((1, -1), int(1))
        );
        assert_eq!(
            xm1.embed2(Substitution::Y),
            Laurent::from_terms([((0, 1), int(1)), ((0, 0), int(-1))])
        );
    }

    #[test]
    fn evaluation() {
        let d = LaurentPoly1::x_minus_x_inv();
        assert_eq!(d.eval(&int(2)).unwrap(), rat(3, 2));
        assert_eq!(d.eval(&int(1)).unwrap(), int(0));
        assert_eq!(d.eval(&int(0)), Err(ExactError::EvalAtZero));
        assert_eq!(
            lp(&[(2, 1), (1, -6), (0, 11)]).eval(&int(2)).unwrap(),
            int(3)
        );
        assert_eq!(lp(&[(2, 1)]).eval(&int(0)).unwrap(), int(0));
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(2, 1), (0, -1)]);
        let b = lp(&[(1, 1), (0, -1)]);
        assert_eq!(a.divexact(&b).unwrap(), lp(&[(1, 1), (0, 1)]));
        assert!(LaurentPoly1::zero().divexact(&b).unwrap().is_zero());
        assert_eq!(
            lp(&[(2, 1), (0, 1)]).divexact(&b),
            Err(ExactError::InexactDivision)
        );
        assert_eq!(
            a.divexact(&LaurentPoly1::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn bivariate_divided_difference() {
        // p(u) = -u^2 + A0 u + A1; (p(Y) - p(K)) / (Y - K) = -(Y + K) + A0.
        // Exponent convention: (K-degree, Y-degree).
        let (a0, a1) = (int(7), int(-3));
        let p_of = |k: bool| {
            let v = |e: i32| if k { (e, 0) } else { (0, e) };
            Laurent::from_terms([(v(2), int(-1)), (v(1), a0.clone()), (v(0), a1.clone())])
        };
        let num = p_of(false) - p_of(true);
        let den: LaurentPoly2 = Laurent::from_terms([((0, 1), int(1)), ((1, 0), int(-1))]);
        let q = num.divexact(&den).unwrap();
        let expected = Laurent::from_terms([((0, 1), int(-1)), ((1, 0), int(-1)), ((0, 0), a0)]);
        assert_eq!(q, expected);
    }

    #[test]
    fn display_and_json() {
        let p = Laurent::from_terms([(2, int(1)), (-1, rat(-3, 2)), (0, int(4))]);
        assert_eq!(p.to_string(), "x^2 + 4 - 3/2*x^-1");
        let v = p.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"c":"-3/2","ex":-1},{"c":"4","ex":0},{"c":"1","ex":2}]"#
        );
        assert_eq!(LaurentPoly1::from_json(&v).unwrap(), p);
        let unsorted = serde_json::json!([{"ex": 2, "c": "1"}, {"ex": 0, "c": "1"}]);
        assert!(LaurentPoly1::from_json(&unsorted).is_err());
        let q: LaurentPoly2 = Laurent::from_terms([((1, -1), int(1)), ((0, 2), rat(1, 3))]);
        assert_eq!(q.to_string(), "x*y^-1 + 1/3*y^2");
        assert_eq!(LaurentPoly2::from_json(&q.to_json()).unwrap(), q);
    }

    fn arb_lp1() -> impl Strategy<Value = LaurentPoly1> {
        prop::collection::vec((-3i32..=3, -5i64..=5, 1i64..=3), 0..5)
            .prop_map(|ts| Laurent::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    fn arb_lp2() -> impl Strategy<Value = LaurentPoly2> {
        prop::collection::vec((-2i32..=2, -2i32..=2, -4i64..=4), 0..5)
            .prop_map(|ts| Laurent::from_terms(ts.into_iter().map(|(a, b, n)| ((a, b), int(n)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(a in arb_lp2(), b in arb_lp2(), c in arb_lp2()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn invert_is_involution_and_embed_is_multiplicative(a in arb_lp1(), b in arb_lp1()) {
            prop_assert_eq!(a.invert_var().invert_var(), a.clone());
            for sub in [Substitution::X, Substitution::Y, Substitution::XY, Substitution::XOverY] {
                prop_assert_eq!((&a * &b).embed2(sub), &a.embed2(sub) * &b.embed2(sub));
            }
        }

        #[test]
        fn divexact_inverts_multiplication(a in arb_lp2(), b in arb_lp2()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).divexact(&b).unwrap(), a);
        }
    }
}
