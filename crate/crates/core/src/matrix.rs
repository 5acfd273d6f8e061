//! Dense square matrices over a [`FieldSpec`].

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{rref, DependencyFinder};
use crate::poly::PolyGF;

/// An `n x n` matrix, entries stored row-major as field codes.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: FieldSpec,
    n: usize,
    entries: Vec<u32>,
}

impl Hash for MatrixGF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl MatrixGF {
    pub fn from_codes(field: FieldSpec, n: usize, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        MatrixGF { field, n, entries }
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        if rows.iter().flatten().any(|&c| c >= field.order()) {
            return Err(Error::InvalidInput("matrix entry outside the field".into()));
        }
        Ok(MatrixGF { field, n, entries: rows.concat() })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        MatrixGF { field, n, entries: vec![0; n * n] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: FieldSpec, n: usize, c: u32) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    /// The matrix unit `E_{i,j}` (zero-based indices).
    pub fn unit(field: FieldSpec, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(field, n);
        m.entries[i * n + j] = 1;
        m
    }

    pub fn diag(field: FieldSpec, d: &[u32]) -> Self {
        let n = d.len();
        let mut m = Self::zero(field, n);
        for (i, &c) in d.iter().enumerate() {
            m.entries[i * n + i] = c;
        }
        m
    }

    /// The `idx`-th matrix in row-major lexicographic order of entry codes.
    pub fn from_index(field: FieldSpec, n: usize, mut idx: u64) -> Self {
        let q = field.order() as u64;
        let mut entries = vec![0u32; n * n];
        for e in entries.iter_mut().rev() {
            *e = (idx % q) as u32;
            idx /= q;
        }
        MatrixGF { field, n, entries }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn codes(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: u32) {
        self.entries[i * self.n + j] = c;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect();
        MatrixGF { field: f.clone(), n: self.n, entries }
    }

    pub(crate) fn sub_raw(&self, other: &Self) -> Self {
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect();
        MatrixGF { field: f.clone(), n: self.n, entries }
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        let (f, n) = (&self.field, self.n);
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        MatrixGF { field: f.clone(), n, entries: out }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        MatrixGF { field: f.clone(), n: self.n, entries: self.entries.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field.clone(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base);
            }
        }
        acc
    }

    /// The p-map `X -> X^p`, with `p` the characteristic.
    pub fn pmap(&self) -> Self {
        self.pow(self.field.p() as u128)
    }

    pub fn trace(&self) -> u32 {
        (0..self.n).fold(0, |acc, i| self.field.add(acc, self.entries[i * self.n + i]))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        MatrixGF { field: self.field.clone(), n, entries }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let (f, n) = (&self.field, self.n);
        (0..n)
            .map(|i| (0..n).fold(0, |acc, k| f.add(acc, f.mul(self.entries[i * n + k], v[k]))))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: FieldSpec, cols: &[Vec<u32>]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("columns must form a square".into()));
        }
        let mut m = Self::zero(field, n);
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        rref(&self.field, &mut rows).len()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let (f, n) = (&self.field, self.n);
        let mut a = self.entries.clone();
        let mut inv = Self::identity(f.clone(), n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let s = f.inv(a[col * n + col]).expect("nonzero pivot");
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], s);
                inv[col * n + j] = f.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                let c = a[r * n + col];
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(c, inv[col * n + j]));
                }
            }
        }
        Some(MatrixGF { field: f.clone(), n, entries: inv })
    }

    /// `U^{-1} X U` given both `U` and its inverse.
    pub fn conjugate_by(&self, u: &Self, u_inv: &Self) -> Self {
        u_inv.mul_raw(self).mul_raw(u)
    }

    /// `m(X)` by Horner's rule.
    pub fn eval_poly(&self, m: &PolyGF) -> Self {
        let id = Self::identity(self.field.clone(), self.n);
        m.coeffs().iter().rev().fold(Self::zero(self.field.clone(), self.n), |acc, &c| {
            acc.mul_raw(self).add_raw(&id.scale(c))
        })
    }
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

pub fn commutator(x: &MatrixGF, y: &MatrixGF) -> Result<MatrixGF> {
    x.check(y)?;
    Ok(x.mul_raw(y).sub_raw(&y.mul_raw(x)))
}

pub fn pmap(x: &MatrixGF) -> MatrixGF {
    x.pmap()
}

/// Minimal polynomial as the lcm of the Krylov minimal polynomials of the
/// standard basis vectors.
pub fn min_poly_matrix(x: &MatrixGF) -> PolyGF {
    let f = x.field().clone();
    let n = x.n();
    let mut acc = PolyGF::one(f.clone());
    for i in 0..n {
        let mut v = vec![0u32; n];
        v[i] = 1;
        let mut finder = DependencyFinder::new(f.clone());
        let local = loop {
            if let Some(c) = finder.push(v.clone()) {
                break PolyGF::new(f.clone(), c);
            }
            v = x.mul_vec(&v);
        };
        acc = acc.lcm(&local);
    }
    acc
}

/// Diagonalizable over the algebraic closure, i.e. squarefree minimal polynomial.
pub fn is_abs_semisimple(x: &MatrixGF) -> bool {
    min_poly_matrix(x).is_squarefree().unwrap_or(true)
}
