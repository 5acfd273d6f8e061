//! Tori and Cartan subalgebras of `gl(n, K)` and `sl(n, K)`.
//!
//! A torus is a subspace that is closed under the p-map (T1), commutative
//! (T2), and consists of absolutely semisimple matrices (T3). A maximal torus
//! `M` of `gl(n, K)` is a commutative semisimple algebra containing `I_n`, so
//! it splits as a product of fields `M E_1 x ... x M E_t`; the block
//! dimensions, sorted decreasingly, form its type.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{make_extension, regular_representation, FieldSpec};
use crate::linalg::DependencyFinder;
use crate::matrix::{commutator, is_abs_semisimple, MatrixGF};
use crate::poly::{factor_poly, PolyGF};
use crate::subspace::{is_nilpotent, normalizer_subalgebra, Subspace};

/// A partition `n_1 >= ... >= n_t` of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartitionType {
    parts: Vec<usize>,
}

impl PartitionType {
    /// Sorts `parts` decreasingly; every part must be positive.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionType { parts })
    }

    /// From `m[i-1]` = multiplicity of the part `i`.
    pub fn from_multiplicities(m: &[usize]) -> Result<Self> {
        let parts = m.iter().enumerate().rev().flat_map(|(i, &k)| std::iter::repeat_n(i + 1, k)).collect();
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `m[i-1]` = multiplicity of the part `i`, for `i = 1..=n`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0usize; self.n()];
        for &p in &self.parts {
            m[p - 1] += 1;
        }
        m
    }

    pub fn is_division(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_split(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl TryFrom<Vec<usize>> for PartitionType {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PartitionType> for Vec<usize> {
    fn from(t: PartitionType) -> Self {
        t.parts
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for PartitionType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Gl,
    Sl,
}

impl Ambient {
    pub fn space(self, field: &FieldSpec, n: usize) -> Subspace {
        match self {
            Ambient::Gl => Subspace::full(field.clone(), n),
            Ambient::Sl => Subspace::trace_zero(field.clone(), n),
        }
    }

    /// Dimension of a maximal torus.
    pub fn rank(self, n: usize) -> usize {
        match self {
            Ambient::Gl => n,
            Ambient::Sl => n.saturating_sub(1),
        }
    }

    pub fn check_supported(self, field: &FieldSpec, n: usize) -> Result<()> {
        if self == Ambient::Sl && field.p() == 2 && n == 2 {
            return Err(Error::UnsupportedSL2Char2);
        }
        Ok(())
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::Gl => "gl",
            Ambient::Sl => "sl",
        })
    }
}

impl std::str::FromStr for Ambient {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(Ambient::Gl),
            "sl" => Ok(Ambient::Sl),
            _ => Err(Error::InvalidInput(format!("unknown algebra {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum T3Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// p-map closure.
    T1,
    /// Commutativity.
    T2,
    /// Absolute semisimplicity.
    T3,
    /// A basis element lies outside the ambient algebra.
    Ambient,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::T1 => "T1",
            Axiom::T2 => "T2",
            Axiom::T3 => "T3",
            Axiom::Ambient => "ambient",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CertificationFailure {
    pub axiom: Axiom,
    pub witness: Vec<MatrixGF>,
}

impl fmt::Display for CertificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated, witness {:?}", self.axiom, self.witness)
    }
}

impl std::error::Error for CertificationFailure {}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Spaces with at most this many elements get every element checked for T3.
    pub exhaustive_bound: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { exhaustive_bound: 4096, samples: 512, seed: 0 }
    }
}

/// A certified torus. Type and idempotents are filled in on first request.
#[derive(Clone, Debug)]
pub struct Torus {
    space: Subspace,
    ambient: Ambient,
    t3_mode: T3Mode,
    ty: OnceLock<PartitionType>,
    idempotents: OnceLock<Vec<MatrixGF>>,
}

impl Torus {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn t3_mode(&self) -> T3Mode {
        self.t3_mode
    }

    pub fn field(&self) -> &FieldSpec {
        self.space.field()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The type if it has been computed.
    pub fn cached_type(&self) -> Option<&PartitionType> {
        self.ty.get()
    }

    pub fn cached_idempotents(&self) -> Option<&[MatrixGF]> {
        self.idempotents.get().map(Vec::as_slice)
    }

    /// Wraps a subspace already known to satisfy the axioms.
    pub(crate) fn trusted(space: Subspace, ambient: Ambient, t3_mode: T3Mode) -> Self {
        Torus { space, ambient, t3_mode, ty: OnceLock::new(), idempotents: OnceLock::new() }
    }

    pub fn conjugate(&self, u: &MatrixGF, u_inv: &MatrixGF) -> Torus {
        Torus::trusted(self.space.conjugate(u, u_inv), self.ambient, self.t3_mode)
    }
}

impl PartialEq for Torus {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.space == other.space
    }
}

impl Eq for Torus {}

pub fn certify_torus(s: &Subspace, ambient: Ambient) -> std::result::Result<Torus, CertificationFailure> {
    certify_torus_with(s, ambient, &CertifyOptions::default())
}

/// Checks T1 and T2 on the basis and T3 on every element, or on the basis
/// plus seeded random combinations when the space is too large to exhaust.
pub fn certify_torus_with(
    s: &Subspace,
    ambient: Ambient,
    opts: &CertifyOptions,
) -> std::result::Result<Torus, CertificationFailure> {
    let basis = s.basis();
    let fail = |axiom, witness| Err(CertificationFailure { axiom, witness });
    if ambient == Ambient::Sl {
        if let Some(b) = basis.iter().find(|b| b.trace() != 0) {
            return fail(Axiom::Ambient, vec![b.clone()]);
        }
    }
    for b in &basis {
        if !s.contains(&b.pmap()) {
            return fail(Axiom::T1, vec![b.clone()]);
        }
    }
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            if !commutator(x, y).expect("same space").is_zero() {
                return fail(Axiom::T2, vec![x.clone(), y.clone()]);
            }
        }
    }
    let exhaustive = s.cardinality().is_some_and(|c| c <= opts.exhaustive_bound);
    if exhaustive {
        if let Some(x) = s.elements().find(|x| !is_abs_semisimple(x)) {
            return fail(Axiom::T3, vec![x]);
        }
    } else {
        if let Some(b) = basis.iter().find(|b| !is_abs_semisimple(b)) {
            return fail(Axiom::T3, vec![b.clone()]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let q = s.field().order();
        for _ in 0..opts.samples {
            let coeffs: Vec<u32> = (0..s.dim()).map(|_| rng.gen_range(0..q)).collect();
            let x = s.combine(&coeffs);
            if !is_abs_semisimple(&x) {
                return fail(Axiom::T3, vec![x]);
            }
        }
    }
    let mode = if exhaustive { T3Mode::Exhaustive } else { T3Mode::Sampled };
    Ok(Torus::trusted(s.clone(), ambient, mode))
}

/// A torus is maximal iff its dimension is `n` in gl or `n - 1` in sl.
pub fn is_maximal_torus(t: &Torus) -> Result<bool> {
    t.ambient.check_supported(t.field(), t.n())?;
    Ok(t.dim() == t.ambient.rank(t.n()))
}

/// Block diagonal sum of the regular representations of `GF(q^{n_i})`,
/// largest block first; the trace-zero part of it for `sl`.
pub fn canonical_torus(t: &PartitionType, field: &FieldSpec, ambient: Ambient) -> Result<Torus> {
    let n = t.n();
    ambient.check_supported(field, n)?;
    let mut gens = Vec::with_capacity(n);
    let mut offset = 0;
    for &d in t.parts() {
        let ext = make_extension(field, d)?;
        let rho = regular_representation(&ext, field)?;
        for block in rho.power_basis_images()? {
            let mut m = MatrixGF::zero(field.clone(), n);
            for i in 0..d {
                for j in 0..d {
                    m.set(offset + i, offset + j, block.get(i, j));
                }
            }
            gens.push(m);
        }
        offset += d;
    }
    let gl = Subspace::span(field.clone(), n, &gens)?;
    let space = match ambient {
        Ambient::Gl => gl,
        Ambient::Sl => gl.intersect(&Subspace::trace_zero(field.clone(), n))?,
    };
    let torus = certify_torus(&space, ambient)?;
    if ambient == Ambient::Gl {
        let _ = torus.ty.set(t.clone());
    }
    Ok(torus)
}

/// Minimal polynomial of `y` inside the algebra with unit `e`.
fn algebra_min_poly(y: &MatrixGF, e: &MatrixGF) -> PolyGF {
    let f = y.field().clone();
    let mut finder = DependencyFinder::new(f.clone());
    let mut cur = e.clone();
    loop {
        if let Some(c) = finder.push(cur.codes().to_vec()) {
            return PolyGF::new(f, c);
        }
        cur = cur.mul_raw(y);
    }
}

/// `g(y)` with `y^0 = e`.
fn eval_in_algebra(g: &PolyGF, y: &MatrixGF, e: &MatrixGF) -> MatrixGF {
    g.coeffs()
        .iter()
        .rev()
        .fold(MatrixGF::zero(y.field().clone(), y.n()), |acc, &c| acc.mul_raw(y).add_raw(&e.scale(c)))
}

fn block_space(m: &Subspace, e: &MatrixGF) -> Subspace {
    let prods: Vec<MatrixGF> = m.basis().iter().map(|b| b.mul_raw(e)).collect();
    Subspace::span(m.field().clone(), m.n(), &prods).expect("same ambient")
}

/// Elements of the block fixed by `Y -> Y^q`. This subalgebra is split with
/// one idempotent per field factor, so the block is a field iff it has dimension 1.
fn frobenius_fixed(block: &Subspace) -> Subspace {
    let q = block.field().order() as u128;
    let basis = block.basis();
    block.solve(|k| {
        let y = &basis[k];
        y.pow(q).sub_raw(y).codes().to_vec()
    })
}

/// CRT idempotents from factoring the minimal polynomial of `y`; `None` if
/// the minimal polynomial is irreducible.
fn split_by(y: &MatrixGF, e: &MatrixGF) -> Result<Option<Vec<MatrixGF>>> {
    let m = algebra_min_poly(y, e);
    let factors = factor_poly(&m)?;
    if factors.iter().any(|(_, k)| *k > 1) {
        return Err(Error::NotMaximal("algebra contains a nonzero nilpotent".into()));
    }
    if factors.len() < 2 {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(factors.len());
    for (f, _) in &factors {
        let h = m.exact_div(f)?;
        let (_, s, _) = h.xgcd(f);
        let g = h.mul(&s).rem(&m)?;
        out.push(eval_in_algebra(&g, y, e));
    }
    Ok(Some(out))
}

/// Orthogonal primitive idempotents of a maximal gl torus, sorted by block
/// dimension (largest first) and then by entries.
pub fn primitive_idempotents(t: &Torus) -> Result<Vec<MatrixGF>> {
    if let Some(e) = t.idempotents.get() {
        return Ok(e.clone());
    }
    let found = compute_idempotents(t.space(), t.ambient())?;
    let _ = t.idempotents.set(found.clone());
    Ok(found)
}

pub(crate) fn compute_idempotents(m: &Subspace, ambient: Ambient) -> Result<Vec<MatrixGF>> {
    if ambient != Ambient::Gl {
        return Err(Error::NotMaximal("idempotents are defined for gl tori; lift sl tori first".into()));
    }
    let (field, n) = (m.field().clone(), m.n());
    if m.dim() != n {
        return Err(Error::NotMaximal(format!("dimension {} != {n}", m.dim())));
    }
    let one = MatrixGF::identity(field.clone(), n);
    if !m.contains(&one) {
        return Err(Error::NotMaximal("identity is missing".into()));
    }
    let basis = m.basis();
    for x in &basis {
        for y in &basis {
            if !m.contains(&x.mul_raw(y)) {
                return Err(Error::NotMaximal("associative closure is larger than the torus".into()));
            }
        }
    }
    let mut pending = vec![one];
    let mut done = Vec::new();
    while let Some(e) = pending.pop() {
        let block = block_space(m, &e);
        let fixed = frobenius_fixed(&block);
        if fixed.dim() == 1 {
            done.push(e);
            continue;
        }
        let mut candidates = block.basis();
        candidates.extend(fixed.basis());
        let mut split = None;
        for y in &candidates {
            if let Some(parts) = split_by(y, &e)? {
                split = Some(parts);
                break;
            }
        }
        match split {
            Some(parts) => pending.extend(parts),
            None => return Err(Error::NotMaximal("block failed to split".into())),
        }
    }
    let mut keyed: Vec<(usize, MatrixGF)> = done.into_iter().map(|e| (block_space(m, &e).dim(), e)).collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.codes().cmp(b.1.codes())));
    Ok(keyed.into_iter().map(|(_, e)| e).collect())
}

/// Dimensions of the field blocks `M E_i`, largest first.
pub fn torus_type(t: &Torus) -> Result<PartitionType> {
    if let Some(ty) = t.ty.get() {
        return Ok(ty.clone());
    }
    let idem = primitive_idempotents(t)?;
    let parts = idem.iter().map(|e| block_space(t.space(), e).dim()).collect();
    let ty = PartitionType::new(parts)?;
    let _ = t.ty.set(ty.clone());
    Ok(ty)
}

/// A primitive element of the field block `block` (unit `e`) together with
/// its minimal polynomial.
fn primitive_element(block: &Subspace, e: &MatrixGF) -> (MatrixGF, PolyGF) {
    let d = block.dim();
    let by_basis = block.basis().into_iter();
    let by_index = (1..block.cardinality().unwrap_or(u64::MAX)).map(|i| block.element(i));
    for y in by_basis.chain(by_index) {
        let g = algebra_min_poly(&y, e);
        if g.degree() == Some(d) {
            return (y, g);
        }
    }
    unreachable!("finite fields have primitive elements")
}

/// Finds `U` with `U^{-1} M U` equal to the canonical torus of its type.
///
/// Per block `E_i` this picks a root `Z` of the canonical modulus inside the
/// field `M E_i`, a vector `v` with `E_i v != 0`, and uses `v, Zv, ..., Z^{d-1} v`
/// as the block's columns, so `Z` acts as the companion matrix of the modulus.
pub fn canonicalize(t: &Torus) -> Result<(MatrixGF, PartitionType)> {
    let ty = torus_type(t)?;
    let idem = primitive_idempotents(t)?;
    let (field, n) = (t.field().clone(), t.n());
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(n);
    for e in &idem {
        let block = block_space(t.space(), e);
        let d = block.dim();
        let j = (0..n).find(|&j| e.column(j).iter().any(|&c| c != 0)).expect("nonzero idempotent");
        let mut w = e.column(j);
        if d == 1 {
            columns.push(w);
            continue;
        }
        let target = PolyGF::new(field.clone(), make_extension(&field, d)?.modulus().to_vec());
        let (y, g) = primitive_element(&block, e);
        let z = if g == target {
            y
        } else {
            let iso = FieldSpec::with_modulus(&field, g.coeffs().to_vec())?;
            let lifted = PolyGF::new(iso.clone(), target.coeffs().to_vec());
            let root = factor_poly(&lifted)?
                .into_iter()
                .find(|(h, _)| h.degree() == Some(1))
                .map(|(h, _)| iso.neg(h.coeffs()[0]))
                .ok_or_else(|| Error::NotMaximal("canonical modulus has no root in the block".into()))?;
            eval_in_algebra(&PolyGF::new(field.clone(), iso.coeffs_of(root)), &y, e)
        };
        for _ in 0..d {
            columns.push(w.clone());
            w = z.mul_vec(&w);
        }
    }
    let u = MatrixGF::from_columns(field.clone(), &columns)?;
    let u_inv = u.inverse().ok_or_else(|| Error::NotMaximal("module basis is singular".into()))?;
    let canonical = canonical_torus(&ty, &field, Ambient::Gl)?;
    if t.space().conjugate(&u, &u_inv) != *canonical.space() {
        return Err(Error::NotMaximal("conjugate does not match the canonical torus".into()));
    }
    Ok((u, ty))
}

/// Nilpotent and self-normalizing in the ambient algebra.
pub fn is_cartan(h: &Subspace, ambient: Ambient) -> Result<bool> {
    if !h.is_commutator_closed() {
        return Err(Error::NotClosed);
    }
    let amb = ambient.space(h.field(), h.n());
    Ok(is_nilpotent(h)? && normalizer_subalgebra(&amb, h)? == *h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;

    fn gf(q: u64) -> FieldSpec {
        field_of_order(q).unwrap()
    }

    fn pt(p: &[usize]) -> PartitionType {
        PartitionType::new(p.to_vec()).unwrap()
    }

    fn span(f: &FieldSpec, n: usize, g: &[MatrixGF]) -> Subspace {
        Subspace::span(f.clone(), n, g).unwrap()
    }

    fn diagonal(f: &FieldSpec, n: usize) -> Subspace {
        span(f, n, &(0..n).map(|i| MatrixGF::unit(f.clone(), n, i, i)).collect::<Vec<_>>())
    }

    #[test]
    fn partition_forms_agree() {
        let t = pt(&[1, 4, 2, 2]);
        assert_eq!(t.parts(), &[4, 2, 2, 1]);
        assert_eq!(t.multiplicities(), vec![1, 2, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(PartitionType::from_multiplicities(&t.multiplicities()).unwrap(), t);
        assert!(PartitionType::new(vec![2, 0]).is_err());
        assert_eq!("2,1".parse::<PartitionType>().unwrap(), pt(&[2, 1]));
    }

    #[test]
    fn certify_examples() {
        let f2 = gf(2);
        let s = span(&f2, 2, &[MatrixGF::identity(f2.clone(), 2), MatrixGF::from_codes(f2.clone(), 2, vec![0, 1, 1, 1])]);
        let t = certify_torus(&s, Ambient::Gl).unwrap();
        assert_eq!(t.t3_mode(), T3Mode::Exhaustive);
        let e12 = MatrixGF::unit(f2.clone(), 2, 0, 1);
        let err = certify_torus(&span(&f2, 2, std::slice::from_ref(&e12)), Ambient::Gl).unwrap_err();
        assert_eq!(err.axiom, Axiom::T3);
        assert_eq!(err.witness, vec![e12]);
        let f3 = gf(3);
        let s = span(&f3, 2, &[MatrixGF::unit(f3.clone(), 2, 0, 1), MatrixGF::unit(f3.clone(), 2, 1, 0)]);
        assert_eq!(certify_torus(&s, Ambient::Gl).unwrap_err().axiom, Axiom::T2);
        let not_sl = span(&f3, 2, &[MatrixGF::unit(f3.clone(), 2, 0, 0)]);
        assert_eq!(certify_torus(&not_sl, Ambient::Sl).unwrap_err().axiom, Axiom::Ambient);
    }

    #[test]
    fn t3_is_not_basis_checkable() {
        // both basis elements are semisimple but their sum is a Jordan block
        let f3 = gf(3);
        let a = MatrixGF::diag(f3.clone(), &[1, 0]);
        let b = MatrixGF::from_codes(f3.clone(), 2, vec![0, 1, 0, 1]);
        assert!(is_abs_semisimple(&a) && is_abs_semisimple(&b));
        let s = span(&f3, 2, &[a, b]);
        assert_eq!(certify_torus(&s, Ambient::Gl).unwrap_err().axiom, Axiom::T2);
    }

    #[test]
    fn sampled_mode_for_large_spaces() {
        let f = gf(9);
        let d = diagonal(&f, 4);
        let t = certify_torus(&d, Ambient::Gl).unwrap();
        assert_eq!(t.t3_mode(), T3Mode::Sampled);
    }

    #[test]
    fn maximality_examples() {
        let f2 = gf(2);
        let t = canonical_torus(&pt(&[2]), &f2, Ambient::Gl).unwrap();
        assert!(is_maximal_torus(&t).unwrap());
        let small = certify_torus(&span(&f2, 2, &[MatrixGF::identity(f2.clone(), 2)]), Ambient::Gl).unwrap();
        assert!(!is_maximal_torus(&small).unwrap());
        let f3 = gf(3);
        let s = certify_torus(&span(&f3, 2, &[MatrixGF::diag(f3.clone(), &[1, 2])]), Ambient::Sl).unwrap();
        assert!(is_maximal_torus(&s).unwrap());
        let sl22 = certify_torus(&span(&f2, 2, &[MatrixGF::identity(f2.clone(), 2)]), Ambient::Sl).unwrap();
        assert!(matches!(is_maximal_torus(&sl22), Err(Error::UnsupportedSL2Char2)));
    }

    #[test]
    fn canonical_examples() {
        let f2 = gf(2);
        let t = canonical_torus(&pt(&[2]), &f2, Ambient::Gl).unwrap();
        let expected = span(&f2, 2, &[MatrixGF::identity(f2.clone(), 2), MatrixGF::from_codes(f2.clone(), 2, vec![0, 1, 1, 1])]);
        assert_eq!(t.space(), &expected);
        for q in [2, 3, 4] {
            let f = gf(q);
            assert_eq!(canonical_torus(&pt(&[1, 1]), &f, Ambient::Gl).unwrap().space(), &diagonal(&f, 2));
        }
        let f3 = gf(3);
        let sl = canonical_torus(&pt(&[1, 1, 1]), &f3, Ambient::Sl).unwrap();
        assert_eq!(sl.dim(), 2);
        assert!(sl.space().is_subspace_of(&diagonal(&f3, 3)));
        assert!(sl.space().basis().iter().all(|b| b.trace() == 0));
        assert!(matches!(canonical_torus(&pt(&[1, 1]), &f2, Ambient::Sl), Err(Error::UnsupportedSL2Char2)));
    }

    #[test]
    fn idempotent_examples() {
        let f3 = gf(3);
        let d = certify_torus(&diagonal(&f3, 2), Ambient::Gl).unwrap();
        let e = primitive_idempotents(&d).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.contains(&MatrixGF::diag(f3.clone(), &[1, 0])));
        assert!(e.contains(&MatrixGF::diag(f3.clone(), &[0, 1])));
        let f2 = gf(2);
        let div = canonical_torus(&pt(&[2]), &f2, Ambient::Gl).unwrap();
        assert_eq!(primitive_idempotents(&div).unwrap(), vec![MatrixGF::identity(f2.clone(), 2)]);
        let t21 = canonical_torus(&pt(&[2, 1]), &f2, Ambient::Gl).unwrap();
        assert_eq!(
            primitive_idempotents(&t21).unwrap(),
            vec![MatrixGF::diag(f2.clone(), &[1, 1, 0]), MatrixGF::diag(f2.clone(), &[0, 0, 1])]
        );
    }

    #[test]
    fn split_algebra_without_primitive_element() {
        // GF(2)^3 has no primitive element; every element has min poly dividing x^2 + x
        let f2 = gf(2);
        let d = certify_torus(&diagonal(&f2, 3), Ambient::Gl).unwrap();
        assert_eq!(primitive_idempotents(&d).unwrap().len(), 3);
        assert_eq!(torus_type(&d).unwrap(), pt(&[1, 1, 1]));
    }

    #[test]
    fn type_examples() {
        let f2 = gf(2);
        let t = canonical_torus(&pt(&[2, 1]), &f2, Ambient::Gl).unwrap();
        let fresh = certify_torus(t.space(), Ambient::Gl).unwrap();
        assert_eq!(torus_type(&fresh).unwrap(), pt(&[2, 1]));
        let f3 = gf(3);
        let d = certify_torus(&diagonal(&f3, 3), Ambient::Gl).unwrap();
        assert_eq!(torus_type(&d).unwrap(), pt(&[1, 1, 1]));
        let div = canonical_torus(&pt(&[2]), &f3, Ambient::Gl).unwrap();
        let u = MatrixGF::from_codes(f3.clone(), 2, vec![1, 1, 0, 1]);
        let conj = div.conjugate(&u, &u.inverse().unwrap());
        assert_ne!(conj.space(), div.space());
        assert_eq!(torus_type(&conj).unwrap(), pt(&[2]));
    }

    #[test]
    fn canonicalize_examples() {
        let f3 = gf(3);
        let d = canonical_torus(&pt(&[1, 1]), &f3, Ambient::Gl).unwrap();
        let u0 = MatrixGF::from_codes(f3.clone(), 2, vec![1, 1, 0, 1]);
        let m = d.conjugate(&u0, &u0.inverse().unwrap());
        let m = certify_torus(m.space(), Ambient::Gl).unwrap();
        let (u, ty) = canonicalize(&m).unwrap();
        assert_eq!(ty, pt(&[1, 1]));
        assert_eq!(m.space().conjugate(&u, &u.inverse().unwrap()), *d.space());

        let f2 = gf(2);
        let div = canonical_torus(&pt(&[2]), &f2, Ambient::Gl).unwrap();
        let perm = MatrixGF::from_codes(f2.clone(), 2, vec![0, 1, 1, 0]);
        let m = certify_torus(div.conjugate(&perm, &perm).space(), Ambient::Gl).unwrap();
        let (u, ty) = canonicalize(&m).unwrap();
        assert_eq!(ty, pt(&[2]));
        assert_eq!(m.space().conjugate(&u, &u.inverse().unwrap()), *div.space());
    }

    #[test]
    fn canonicalize_needs_field_isomorphism() {
        // over GF(3) the division torus of gl(3) contains elements whose min
        // poly is a different irreducible cubic from the canonical modulus
        let f3 = gf(3);
        let div = canonical_torus(&pt(&[3]), &f3, Ambient::Gl).unwrap();
        for idx in [7u64, 100, 4000] {
            let u = MatrixGF::from_index(f3.clone(), 3, idx);
            let Some(ui) = u.inverse() else { continue };
            let m = certify_torus(div.conjugate(&u, &ui).space(), Ambient::Gl).unwrap();
            let (v, ty) = canonicalize(&m).unwrap();
            assert_eq!(ty, pt(&[3]));
            assert_eq!(m.space().conjugate(&v, &v.inverse().unwrap()), *div.space());
        }
    }

    #[test]
    fn cartan_examples() {
        let f3 = gf(3);
        assert!(is_cartan(&diagonal(&f3, 2), Ambient::Gl).unwrap());
        let f2 = gf(2);
        assert!(is_cartan(&Subspace::trace_zero(f2, 2), Ambient::Sl).unwrap());
        let upper = span(&f3, 2, &[MatrixGF::unit(f3.clone(), 2, 0, 1)]);
        assert!(!is_cartan(&upper, Ambient::Gl).unwrap());
        let bad = span(&f3, 2, &[MatrixGF::unit(f3.clone(), 2, 0, 1), MatrixGF::unit(f3.clone(), 2, 1, 0)]);
        assert!(matches!(is_cartan(&bad, Ambient::Gl), Err(Error::NotClosed)));
    }

    #[test]
    fn degenerate_n1() {
        for q in [2, 3, 4] {
            let f = gf(q);
            let t = canonical_torus(&pt(&[1]), &f, Ambient::Gl).unwrap();
            assert_eq!(t.space(), &Subspace::full(f.clone(), 1));
            assert!(is_maximal_torus(&t).unwrap());
            let s = canonical_torus(&pt(&[1]), &f, Ambient::Sl).unwrap();
            assert!(s.space().is_zero());
            assert!(is_maximal_torus(&s).unwrap());
            assert_eq!(canonicalize(&t).unwrap().1, pt(&[1]));
        }
    }
}
