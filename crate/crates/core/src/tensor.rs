//! Dense matrices over the exact scalar rings, Kronecker products and leg
//! embeddings `End(V⊗V) -> End(V⊗V⊗V)`.
//!
//! The basis of `V⊗V` is ordered row-major: `e_i ⊗ e_j` has index `i*dim + j`.
//! A matrix unit `e^i_j` has its single 1 at row `i`, column `j`, so it maps
//! `e_j` to `e_i`.

use std::ops::{Add, Mul, Sub};

use num::traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{ExactError, JsonScalar, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    L12,
    L23,
}

impl<S: Scalar> RingMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self, TensorError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(TensorError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RingMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        RingMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, s: S) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { s.clone() } else { S::zero() })
    }

    pub fn diag(d: Vec<S>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, s) in d.into_iter().enumerate() {
            m.set(i, i, s);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: S) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `(row, col, entry)` for every nonzero entry, in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| (k / self.cols, k % self.cols, s))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RingMatrix<T> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|s| s.scale(r))
    }

    pub fn scale_by(&self, s: &S) -> Self {
        self.map(|e| e.clone() * s.clone())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, TensorError> {
        if self.cols != other.rows {
            return Err(TensorError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    let acc = std::mem::replace(&mut out.entries[idx], S::zero());
                    out.entries[idx] = acc + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TensorError> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self, TensorError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(TensorError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            if a.is_zero() {
                return S::zero();
            }
            a.clone() * other.get(i % other.rows, j % other.cols).clone()
        })
    }

    /// Embeds an operator on `V⊗V` into `V⊗V⊗V` on the given pair of legs.
    pub fn embed_leg(&self, leg: Leg, dim: usize) -> Result<Self, TensorError> {
        if self.rows != dim * dim || self.cols != dim * dim {
            return Err(TensorError::ShapeMismatch(format!(
                "{}x{} is not an operator on V⊗V with dim V = {dim}",
                self.rows, self.cols
            )));
        }
        let id = Self::identity(dim);
        Ok(match leg {
            Leg::L12 => self.kron(&id),
            Leg::L23 => id.kron(self),
        })
    }

    /// `Some(s)` when the matrix is exactly `s·I`.
    pub fn is_scalar_identity(&self) -> Option<S> {
        if !self.is_square() {
            return None;
        }
        let s = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { *e == s } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(s)
    }
}

impl<'a, S: Scalar> Mul<&'a RingMatrix<S>> for &'a RingMatrix<S> {
    type Output = RingMatrix<S>;

    /// Panics on a shape mismatch; use [`RingMatrix::mat_mul`] for the fallible form.
    fn mul(self, rhs: &'a RingMatrix<S>) -> RingMatrix<S> {
        self.mat_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, S: Scalar> Add<&'a RingMatrix<S>> for &'a RingMatrix<S> {
    type Output = RingMatrix<S>;
    fn add(self, rhs: &'a RingMatrix<S>) -> RingMatrix<S> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, S: Scalar> Sub<&'a RingMatrix<S>> for &'a RingMatrix<S> {
    type Output = RingMatrix<S>;
    fn sub(self, rhs: &'a RingMatrix<S>) -> RingMatrix<S> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl RingMatrix<Rational> {
    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j) - &f * m.get(row, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// The matrix unit `e^i_j` of size `n`.
pub fn matrix_unit<S: Scalar>(n: usize, i: usize, j: usize) -> RingMatrix<S> {
    RingMatrix::from_fn(n, n, |a, b| {
        if (a, b) == (i, j) {
            S::one()
        } else {
            S::zero()
        }
    })
}

impl<S: Scalar + JsonScalar> RingMatrix<S> {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect()))
            .collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self, TensorError> {
        let parse_err = |msg: &str| TensorError::Exact(ExactError::Parse(msg.to_string()));
        let dim = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|d| d as usize)
                .ok_or_else(|| parse_err(&format!("missing matrix field {key:?}")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing matrix field \"entries\""))?;
        if entries.len() != rows {
            return Err(TensorError::ShapeMismatch(format!(
                "{} entry rows, expected {rows}",
                entries.len()
            )));
        }
        let mut flat = Vec::with_capacity(rows * cols);
        for row in entries {
            let row = row
                .as_array()
                .ok_or_else(|| parse_err("matrix row must be an array"))?;
            if row.len() != cols {
                return Err(TensorError::ShapeMismatch(format!(
                    "row of length {}, expected {cols}",
                    row.len()
                )));
            }
            for e in row {
                flat.push(S::from_json(e)?);
            }
        }
        RingMatrix::new(rows, cols, flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    type Q = RingMatrix<Rational>;

    fn qm(rows: usize, vals: &[i64]) -> Q {
        RingMatrix::new(
            rows,
            vals.len() / rows,
            vals.iter().map(|&v| int(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn products() {
        let m = qm(2, &[1, 2, 3, 4]);
        assert_eq!(&Q::identity(2) * &m, m);
        let p = qm(4, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(&p * &p, Q::identity(4));
        assert!(matches!(
            m.mat_mul(&Q::identity(3)),
            Err(TensorError::ShapeMismatch(_))
        ));
        assert!(Q::new(2, 2, vec![int(1)]).is_err());
    }

    #[test]
    fn kronecker() {
        assert_eq!(Q::identity(2).kron(&Q::identity(2)), Q::identity(4));
        let d = Q::diag(vec![int(5), int(7)]);
        assert_eq!(
            Q::identity(2).kron(&d),
            Q::diag(vec![int(5), int(7), int(5), int(7)])
        );
        let e11 = matrix_unit::<Rational>(2, 0, 0);
        assert_eq!(e11.kron(&e11), matrix_unit(4, 0, 0));
    }

    #[test]
    fn legs() {
        assert_eq!(
            Q::identity(4).embed_leg(Leg::L12, 2).unwrap(),
            Q::identity(8)
        );
        let r = qm(4, &[2, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 2]);
        assert_eq!(r.embed_leg(Leg::L12, 2).unwrap(), r.kron(&Q::identity(2)));
        assert_eq!(r.embed_leg(Leg::L23, 2).unwrap(), Q::identity(2).kron(&r));
        assert!(Q::identity(3).embed_leg(Leg::L12, 2).is_err());
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(Q::scalar(4, int(3)).is_scalar_identity(), Some(int(3)));
        assert_eq!(Q::diag(vec![int(1), int(2)]).is_scalar_identity(), None);
        assert_eq!(Q::zeros(2, 3).is_scalar_identity(), None);
    }

    #[test]
    fn elimination() {
        let m = qm(3, &[2, 1, 0, 1, 1, 0, 0, 0, 3]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Q::identity(3));
        let sing = qm(2, &[1, 2, 2, 4]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.rank(), 1);
        let (_, piv) = qm(2, &[0, 1, 2, 0, 2, 4]).rref();
        assert_eq!(piv, vec![1]);
    }

    #[test]
    fn json_round_trip() {
        let m = RingMatrix::new(1, 2, vec![crate::exact::rat(1, 2), int(-3)]).unwrap();
        let v = m.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"cols":2,"entries":[["1/2","-3"]],"rows":1}"#
        );
        assert_eq!(Q::from_json(&v).unwrap(), m);
        let bad = serde_json::json!({"rows": 2, "cols": 2, "entries": [["1", "2"]]});
        assert!(matches!(
            Q::from_json(&bad),
            Err(TensorError::ShapeMismatch(_))
        ));
    }

    fn arb(n: usize) -> impl Strategy<Value = Q> {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| qm(n, &v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn mixed_product_property(a in arb(2), b in arb(2), c in arb(2), d in arb(2)) {
            prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
        }

        #[test]
        fn legs_agree_with_triple_kron(a in arb(2), b in arb(2), m in arb(4), n in arb(4)) {
            let id = Q::identity(2);
            let m12 = m.embed_leg(Leg::L12, 2).unwrap();
            let n23 = n.embed_leg(Leg::L23, 2).unwrap();
            prop_assert_eq!(&m12 * &n23, &m.kron(&id) * &id.kron(&n));
            // on pure tensors the embeddings are the 3-fold Kronecker products
            let ab = a.kron(&b);
            prop_assert_eq!(ab.embed_leg(Leg::L12, 2).unwrap(), a.kron(&b).kron(&id));
            prop_assert_eq!(ab.embed_leg(Leg::L23, 2).unwrap(), id.kron(&a).kron(&b));
        }
    }
}
