//! Subspaces of `Mat(n, K)` in canonical reduced row-echelon form, and the
//! Lie-theoretic solvers built on them.
//!
//! A matrix is vectorized row-major into `K^(n^2)`. Two subspaces are equal
//! iff their RREF row arrays are identical, which makes them usable as hash
//! keys during orbit enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{kernel, reduce, rref};
use crate::matrix::{commutator, MatrixGF};

#[derive(Clone)]
pub struct Subspace {
    field: FieldSpec,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace { field, n, rows: Vec::new(), pivots: Vec::new() }
    }

    /// All of `gl(n, K)`.
    pub fn full(field: FieldSpec, n: usize) -> Self {
        let rows = (0..n * n)
            .map(|i| {
                let mut v = vec![0u32; n * n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, n, rows, pivots: (0..n * n).collect() }
    }

    /// The trace-zero matrices `sl(n, K)`.
    pub fn trace_zero(field: FieldSpec, n: usize) -> Self {
        let mut trace = vec![0u32; n * n];
        for i in 0..n {
            trace[i * n + i] = 1;
        }
        Self::from_vectors(field.clone(), n, kernel(&field, &[trace], n * n))
    }

    pub fn span(field: FieldSpec, n: usize, gens: &[MatrixGF]) -> Result<Self> {
        for g in gens {
            if g.n() != n {
                return Err(Error::DimensionMismatch(format!("generator of size {} in Mat({n})", g.n())));
            }
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self::from_vectors(field, n, gens.iter().map(|g| g.codes().to_vec()).collect()))
    }

    pub(crate) fn from_vectors(field: FieldSpec, n: usize, mut rows: Vec<Vec<u32>>) -> Self {
        let pivots = rref(&field, &mut rows);
        Subspace { field, n, rows, pivots }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<MatrixGF> {
        self.rows.iter().map(|r| MatrixGF::from_codes(self.field.clone(), self.n, r.clone())).collect()
    }

    /// Number of elements `q^dim`, if it fits.
    pub fn cardinality(&self) -> Option<u64> {
        (self.field.order() as u64).checked_pow(self.dim() as u32)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("Mat({}) vs Mat({})", self.n, other.n)));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub(crate) fn reduce_vec(&self, v: &mut [u32]) {
        reduce(&self.field, &self.rows, &self.pivots, v);
    }

    pub fn contains(&self, x: &MatrixGF) -> bool {
        if x.n() != self.n || x.field() != &self.field {
            return false;
        }
        let mut v = x.codes().to_vec();
        self.reduce_vec(&mut v);
        v.iter().all(|&c| c == 0)
    }

    /// Coordinates of `x` in the canonical basis.
    pub fn coords(&self, x: &MatrixGF) -> Option<Vec<u32>> {
        self.contains(x).then(|| self.pivots.iter().map(|&p| x.codes()[p]).collect())
    }

    pub fn combine(&self, coeffs: &[u32]) -> MatrixGF {
        let f = &self.field;
        let mut v = vec![0u32; self.n * self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        MatrixGF::from_codes(f.clone(), self.n, v)
    }

    /// The `idx`-th element, coordinates read as base-`q` digits.
    pub fn element(&self, mut idx: u64) -> MatrixGF {
        let q = self.field.order() as u64;
        let coeffs: Vec<u32> = (0..self.dim())
            .map(|_| {
                let c = (idx % q) as u32;
                idx /= q;
                c
            })
            .collect();
        self.combine(&coeffs)
    }

    pub fn elements(&self) -> impl Iterator<Item = MatrixGF> + '_ {
        (0..self.cardinality().expect("enumerable subspace")).map(move |i| self.element(i))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.compatible(other).is_ok()
            && self.rows.iter().all(|r| {
                let mut v = r.clone();
                other.reduce_vec(&mut v);
                v.iter().all(|&c| c == 0)
            })
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_vectors(self.field.clone(), self.n, rows))
    }

    pub fn with(&self, extra: &[MatrixGF]) -> Result<Self> {
        self.join(&Self::span(self.field.clone(), self.n, extra)?)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let images: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = r.clone();
                other.reduce_vec(&mut v);
                v
            })
            .collect();
        Ok(self.solve(|k| images[k].clone()))
    }

    /// `{ sum c_k B_k : sum c_k L(B_k) = 0 }` over the canonical basis `B_k`,
    /// with `image(k)` the vector `L(B_k)`.
    pub(crate) fn solve(&self, image: impl Fn(usize) -> Vec<u32>) -> Self {
        let d = self.dim();
        let cols: Vec<Vec<u32>> = (0..d).map(&image).collect();
        let len = cols.first().map_or(0, Vec::len);
        let rows: Vec<Vec<u32>> = (0..len).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let sol = if rows.is_empty() {
            (0..d)
                .map(|k| {
                    let mut v = vec![0u32; d];
                    v[k] = 1;
                    v
                })
                .collect()
        } else {
            kernel(&self.field, &rows, d)
        };
        let vecs = sol.iter().map(|c| self.combine(c).codes().to_vec()).collect();
        Self::from_vectors(self.field.clone(), self.n, vecs)
    }

    /// `U^{-1} S U`.
    pub fn conjugate(&self, u: &MatrixGF, u_inv: &MatrixGF) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let b = MatrixGF::from_codes(self.field.clone(), self.n, r.clone());
                b.conjugate_by(u, u_inv).codes().to_vec()
            })
            .collect();
        Self::from_vectors(self.field.clone(), self.n, rows)
    }

    pub fn is_commutative(&self) -> bool {
        let b = self.basis();
        b.iter().enumerate().all(|(i, x)| b[i + 1..].iter().all(|y| x.mul_raw(y) == y.mul_raw(x)))
    }

    pub fn is_commutator_closed(&self) -> bool {
        let b = self.basis();
        b.iter()
            .enumerate()
            .all(|(i, x)| b[i + 1..].iter().all(|y| self.contains(&commutator(x, y).expect("same ambient"))))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && self.field == other.field
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.rows.len(), &self.rows).cmp(&(other.n, other.rows.len(), &other.rows))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace").field("n", &self.n).field("dim", &self.dim()).field("rows", &self.rows).finish()
    }
}

pub fn rref_subspace(field: &FieldSpec, n: usize, generators: &[MatrixGF]) -> Result<Subspace> {
    Subspace::span(field.clone(), n, generators)
}

/// `{X in ambient : [X, B] = 0 for every basis element B of s}`.
pub fn centralizer_in(ambient: &Subspace, s: &Subspace) -> Result<Subspace> {
    ambient.compatible(s)?;
    let amb = ambient.basis();
    let sb = s.basis();
    Ok(ambient.solve(|k| sb.iter().flat_map(|b| commutator(&amb[k], b).expect("compatible").codes().to_vec()).collect()))
}

/// `{X in ambient : [X, h] in H for all h in H}`.
pub fn normalizer_subalgebra(ambient: &Subspace, h: &Subspace) -> Result<Subspace> {
    ambient.compatible(h)?;
    if !h.is_subspace_of(ambient) {
        return Err(Error::NotASubspace);
    }
    let amb = ambient.basis();
    let hb = h.basis();
    Ok(ambient.solve(|k| {
        hb.iter()
            .flat_map(|b| {
                let mut v = commutator(&amb[k], b).expect("compatible").codes().to_vec();
                h.reduce_vec(&mut v);
                v
            })
            .collect()
    }))
}

/// `span{[x, y] : x in a, y in b}` over basis pairs.
pub fn bracket_span(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.compatible(b)?;
    let (ab, bb) = (a.basis(), b.basis());
    let rows = ab.iter().flat_map(|x| bb.iter().map(move |y| commutator(x, y).expect("compatible").codes().to_vec()));
    Ok(Subspace::from_vectors(a.field.clone(), a.n, rows.collect()))
}

/// `H = H^1 ⊇ H^2 ⊇ ...` with `H^{k+1} = [H, H^k]`, stopping at `{0}` or at
/// the first repeated term (which is not duplicated).
pub fn lower_central_series(h: &Subspace) -> Result<Vec<Subspace>> {
    if !h.is_commutator_closed() {
        return Err(Error::NotClosed);
    }
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = bracket_span(h, last)?;
        if &next == last {
            break;
        }
        series.push(next);
    }
    Ok(series)
}

pub fn is_nilpotent(h: &Subspace) -> Result<bool> {
    Ok(lower_central_series(h)?.last().is_some_and(Subspace::is_zero))
}

/// Smallest subspace containing `x` and stable under bracketing with `ambient`.
pub fn ideal_closure(x: &MatrixGF, ambient: &Subspace) -> Result<Subspace> {
    if !ambient.contains(x) {
        return Err(Error::NotMember);
    }
    let mut j = Subspace::span(ambient.field.clone(), ambient.n, std::slice::from_ref(x))?;
    let amb = ambient.basis();
    for _ in 0..=ambient.dim() {
        let brackets: Vec<MatrixGF> =
            j.basis().iter().flat_map(|b| amb.iter().map(move |a| commutator(b, a).expect("compatible"))).collect();
        let next = j.with(&brackets)?;
        if next.dim() == j.dim() {
            return Ok(j);
        }
        j = next;
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;

    fn gf(q: u64) -> FieldSpec {
        field_of_order(q).unwrap()
    }

    fn span(f: &FieldSpec, n: usize, g: &[MatrixGF]) -> Subspace {
        Subspace::span(f.clone(), n, g).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f3 = gf(3);
        let e11 = MatrixGF::unit(f3.clone(), 2, 0, 0);
        let s = rref_subspace(&f3, 2, &[e11.clone(), e11.scale(2)]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), vec![e11]);
        let z = rref_subspace(&f3, 2, &[]).unwrap();
        assert_eq!(z, Subspace::zero(f3, 2));
        assert_eq!(z.dim(), 0);
        let f2 = gf(2);
        let s = rref_subspace(&f2, 2, &[MatrixGF::identity(f2.clone(), 2), MatrixGF::diag(f2.clone(), &[1, 0])]).unwrap();
        assert_eq!(s.basis(), vec![MatrixGF::diag(f2.clone(), &[1, 0]), MatrixGF::diag(f2, &[0, 1])]);
    }

    #[test]
    fn rref_is_idempotent() {
        let f = gf(5);
        let g: Vec<_> = (0..5).map(|i| MatrixGF::from_index(f.clone(), 2, 37 * i + 11)).collect();
        let s = rref_subspace(&f, 2, &g).unwrap();
        assert_eq!(rref_subspace(&f, 2, &s.basis()).unwrap().basis(), s.basis());
        let mut shuffled = g.clone();
        shuffled.reverse();
        shuffled.push(g[0].add(&g[1]).unwrap());
        assert_eq!(rref_subspace(&f, 2, &shuffled).unwrap(), s);
    }

    #[test]
    fn centralizer_examples() {
        let f2 = gf(2);
        let gl = Subspace::full(f2.clone(), 2);
        let s = span(&f2, 2, &[MatrixGF::identity(f2.clone(), 2), MatrixGF::from_codes(f2.clone(), 2, vec![0, 1, 1, 1])]);
        assert_eq!(centralizer_in(&gl, &s).unwrap(), s);
        assert_eq!(centralizer_in(&gl, &Subspace::zero(f2, 2)).unwrap(), gl);
        let f3 = gf(3);
        let gl3 = Subspace::full(f3.clone(), 2);
        let c = centralizer_in(&gl3, &span(&f3, 2, &[MatrixGF::diag(f3.clone(), &[1, 2])])).unwrap();
        assert_eq!(c, span(&f3, 2, &[MatrixGF::diag(f3.clone(), &[1, 0]), MatrixGF::diag(f3.clone(), &[0, 1])]));
    }

    #[test]
    fn normalizer_examples() {
        let f2 = gf(2);
        let gl = Subspace::full(f2.clone(), 2);
        let d = span(&f2, 2, &[MatrixGF::diag(f2.clone(), &[1, 0]), MatrixGF::diag(f2.clone(), &[0, 1])]);
        assert_eq!(normalizer_subalgebra(&gl, &d).unwrap(), d);
        assert_eq!(normalizer_subalgebra(&gl, &gl).unwrap(), gl);
        let f3 = gf(3);
        let gl3 = Subspace::full(f3.clone(), 2);
        let n = span(&f3, 2, &[MatrixGF::unit(f3.clone(), 2, 0, 1)]);
        let b = normalizer_subalgebra(&gl3, &n).unwrap();
        assert_eq!(b.dim(), 3);
        assert!(!b.contains(&MatrixGF::unit(f3.clone(), 2, 1, 0)));
        let sl = Subspace::trace_zero(f3.clone(), 2);
        assert!(matches!(normalizer_subalgebra(&sl, &gl3), Err(Error::NotASubspace)));
    }

    #[test]
    fn lower_central_series_examples() {
        let f2 = gf(2);
        let sl2 = Subspace::trace_zero(f2.clone(), 2);
        let dims: Vec<_> = lower_central_series(&sl2).unwrap().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![3, 1, 0]);
        assert_eq!(lower_central_series(&sl2).unwrap()[1], span(&f2, 2, &[MatrixGF::identity(f2.clone(), 2)]));
        let f3 = gf(3);
        let d = span(&f3, 2, &[MatrixGF::diag(f3.clone(), &[1, 0]), MatrixGF::diag(f3.clone(), &[0, 1])]);
        let s = lower_central_series(&d).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s[1].is_zero());
        let sl3 = Subspace::trace_zero(f3.clone(), 2);
        assert_eq!(lower_central_series(&sl3).unwrap(), vec![sl3.clone()]);
        let not_closed = span(&f3, 2, &[MatrixGF::unit(f3.clone(), 2, 0, 1), MatrixGF::unit(f3.clone(), 2, 1, 0)]);
        assert!(matches!(lower_central_series(&not_closed), Err(Error::NotClosed)));
    }

    #[test]
    fn ideal_closure_examples() {
        let f3 = gf(3);
        let gl = Subspace::full(f3.clone(), 2);
        let j = ideal_closure(&MatrixGF::unit(f3.clone(), 2, 0, 1), &gl).unwrap();
        assert_eq!(j, Subspace::trace_zero(f3.clone(), 2));
        let id = MatrixGF::identity(f3.clone(), 2);
        assert_eq!(ideal_closure(&id, &gl).unwrap(), span(&f3, 2, &[id]));
        let f2 = gf(2);
        let gl32 = Subspace::full(f2.clone(), 3);
        assert_eq!(ideal_closure(&MatrixGF::diag(f2.clone(), &[1, 0, 0]), &gl32).unwrap(), gl32);
        let sl = Subspace::trace_zero(f3.clone(), 2);
        assert!(matches!(ideal_closure(&MatrixGF::unit(f3, 2, 0, 0), &sl), Err(Error::NotMember)));
    }

    #[test]
    fn ideal_closure_is_bracket_invariant() {
        let f = gf(3);
        let gl = Subspace::full(f.clone(), 3);
        for idx in [5u64, 1000, 12345, 19682] {
            let x = MatrixGF::from_index(f.clone(), 3, idx);
            let j = ideal_closure(&x, &gl).unwrap();
            assert!(j.contains(&x));
            for b in j.basis() {
                for a in gl.basis() {
                    assert!(j.contains(&commutator(&b, &a).unwrap()));
                }
            }
        }
    }

    #[test]
    fn centralizer_contains_commutative_and_is_antitone() {
        let f = gf(3);
        let gl = Subspace::full(f.clone(), 3);
        let d1 = span(&f, 3, &[MatrixGF::diag(f.clone(), &[1, 2, 0])]);
        let d2 = d1.with(&[MatrixGF::diag(f.clone(), &[0, 1, 1])]).unwrap();
        let c1 = centralizer_in(&gl, &d1).unwrap();
        let c2 = centralizer_in(&gl, &d2).unwrap();
        assert!(d1.is_subspace_of(&c1) && d2.is_subspace_of(&c2));
        assert!(c2.is_subspace_of(&c1));
    }

    #[test]
    fn intersection_of_diagonals_and_sl() {
        let f = gf(3);
        let d = span(&f, 3, &(0..3).map(|i| MatrixGF::unit(f.clone(), 3, i, i)).collect::<Vec<_>>());
        let i = d.intersect(&Subspace::trace_zero(f.clone(), 3)).unwrap();
        assert_eq!(i.dim(), 2);
        assert!(i.contains(&MatrixGF::identity(f, 3)));
    }
}
