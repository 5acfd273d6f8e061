//! Conjugacy classes and counts of maximal tori.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldSpec};
use crate::json::big;
use crate::matrix::MatrixGF;
use crate::par::{fold_range, map_slice, Exec};
use crate::subspace::Subspace;
use crate::torus::{canonical_torus, Ambient, PartitionType, Torus};

pub const DEFAULT_GL_BOUND: u64 = 10_000_000;
pub const DEFAULT_SCAN_BOUND: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `|GL(n, q)|` that may be scanned.
    pub gl: u64,
    /// Largest `q^{n^2}` that may be scanned.
    pub scan: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { gl: DEFAULT_GL_BOUND, scan: DEFAULT_SCAN_BOUND }
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions(n: usize) -> Vec<PartitionType> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<PartitionType>) {
        if rest == 0 {
            out.push(PartitionType::new(cur.clone()).expect("positive parts"));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

fn check_q(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

/// `prod_{i=1}^{n} (q^n - q^{n-i})`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    (1..=n).map(|i| &qn - q.pow((n - i) as u32)).product()
}

fn factorial(m: usize) -> BigUint {
    (1..=m as u64).map(BigUint::from).product()
}

/// `prod_i m_i! (i (q^i - 1))^{m_i}`.
pub fn normalizer_order_formula(t: &PartitionType, q: u64) -> BigUint {
    let q = BigUint::from(q);
    t.multiplicities()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(k, &m)| {
            let i = k + 1;
            factorial(m) * (BigUint::from(i) * (q.pow(i as u32) - 1u32)).pow(m as u32)
        })
        .product()
}

/// `|GL(n, q)| / |N(M)|` for `M` of type `t`.
pub fn class_size(t: &PartitionType, n: usize, q: u64) -> Result<BigUint> {
    if t.n() != n {
        return Err(Error::InvalidPartition(format!("{t} is not a partition of {n}")));
    }
    let (quot, rem) = gl_order(n, q).div_rem(&normalizer_order_formula(t, q));
    if !rem.is_zero() {
        return Err(Error::NonIntegralClassSize(format!("type {t}, q = {q}")));
    }
    Ok(quot)
}

/// `q^{n(n-1)}`, the number of maximal tori in `gl(n, q)` and in `sl(n, q)`.
pub fn total_count(n: usize, q: u64, ambient: Ambient) -> Result<BigUint> {
    check_q(q)?;
    if ambient == Ambient::Sl && q.is_multiple_of(2) && n == 2 {
        return Err(Error::UnsupportedSL2Char2);
    }
    Ok(BigUint::from(q).pow((n * n.saturating_sub(1)) as u32))
}

fn check_gl_bound(n: usize, q: u64, bound: u64) -> Result<()> {
    let order = gl_order(n, q);
    if order > BigUint::from(bound) {
        return Err(Error::BoundExceeded { what: "|GL(n,q)|", size: order.to_string(), bound });
    }
    Ok(())
}

fn matrix_count(n: usize, q: u64) -> Option<u64> {
    u32::try_from(n * n).ok().and_then(|e| q.checked_pow(e))
}

/// Folds over `(U, U^{-1})` for every `U` in `GL(n, q)`, streaming matrices
/// in row-major lexicographic order.
pub fn fold_gl<T, I, F, M>(field: &FieldSpec, n: usize, bound: u64, exec: Exec, identity: I, fold: F, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, &MatrixGF, &MatrixGF) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let q = field.order() as u64;
    check_gl_bound(n, q, bound)?;
    let total = matrix_count(n, q).expect("bounded by the group order check");
    Ok(fold_range(
        exec,
        0..total,
        identity,
        |acc, idx| {
            let u = MatrixGF::from_index(field.clone(), n, idx);
            match u.inverse() {
                Some(ui) => fold(acc, &u, &ui),
                None => acc,
            }
        },
        merge,
    ))
}

fn stabilizes(m: &Subspace, basis: &[MatrixGF], u: &MatrixGF, ui: &MatrixGF) -> bool {
    basis.iter().all(|b| m.contains(&b.conjugate_by(u, ui)))
}

/// `|{U in GL(n, q) : U^{-1} M U = M}|` by exhaustive scan.
pub fn normalizer_group_bruteforce(t: &Torus, bound: u64, exec: Exec) -> Result<BigUint> {
    let basis = t.space().basis();
    let count = fold_gl(
        t.field(),
        t.n(),
        bound,
        exec,
        || 0u64,
        |acc, u, ui| acc + u64::from(stabilizes(t.space(), &basis, u, ui)),
        |a, b| a + b,
    )?;
    Ok(BigUint::from(count))
}

/// The normalizer's elements, sorted by entries.
pub fn normalizer_group_elements(t: &Torus, bound: u64, exec: Exec) -> Result<Vec<MatrixGF>> {
    let basis = t.space().basis();
    let mut found = fold_gl(
        t.field(),
        t.n(),
        bound,
        exec,
        Vec::new,
        |mut acc, u, ui| {
            if stabilizes(t.space(), &basis, u, ui) {
                acc.push(u.clone());
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    found.sort_by(|a, b| a.codes().cmp(b.codes()));
    Ok(found)
}

/// The conjugacy class of `t`, sorted.
pub fn orbit(t: &Torus, bound: u64, exec: Exec) -> Result<Vec<Subspace>> {
    let set = fold_gl(
        t.field(),
        t.n(),
        bound,
        exec,
        HashSet::new,
        |mut acc, u, ui| {
            acc.insert(t.space().conjugate(u, ui));
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    let mut v: Vec<Subspace> = set.into_iter().collect();
    v.sort();
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct TorusClass {
    pub ty: PartitionType,
    pub members: Vec<Torus>,
}

/// Every maximal torus of the ambient algebra, grouped by type, in
/// partition order with members sorted.
pub fn enumerate_maximal_tori(n: usize, field: &FieldSpec, ambient: Ambient, bound: u64, exec: Exec) -> Result<Vec<TorusClass>> {
    ambient.check_supported(field, n)?;
    check_gl_bound(n, field.order() as u64, bound)?;
    partitions(n)
        .into_iter()
        .map(|ty| {
            let rep = canonical_torus(&ty, field, ambient)?;
            let mode = rep.t3_mode();
            let members = orbit(&rep, bound, exec)?.into_iter().map(|s| Torus::trusted(s, ambient, mode)).collect();
            Ok(TorusClass { ty, members })
        })
        .collect()
}

/// Number of `X` in `Mat(n, q)` with `X^n = 0`, by exhaustive scan.
pub fn count_nilpotent_bruteforce(n: usize, field: &FieldSpec, bound: u64, exec: Exec) -> Result<BigUint> {
    let q = field.order() as u64;
    let total = matrix_count(n, q).filter(|&c| c <= bound).ok_or_else(|| Error::BoundExceeded {
        what: "q^(n^2)",
        size: BigUint::from(q).pow((n * n) as u32).to_string(),
        bound,
    })?;
    let count = fold_range(
        exec,
        0..total,
        || 0u64,
        |acc, idx| acc + u64::from(MatrixGF::from_index(field.clone(), n, idx).pow(n as u128).is_zero()),
        |a, b| a + b,
    );
    Ok(BigUint::from(count))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    #[serde(rename = "type")]
    pub ty: PartitionType,
    #[serde(serialize_with = "big")]
    pub normalizer: BigUint,
    #[serde(serialize_with = "big")]
    pub class_size: BigUint,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "crate::json::big_opt")]
    pub normalizer_bruteforce: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "crate::json::big_opt")]
    pub orbit_size: Option<BigUint>,
    /// The canonical torus, built only when a scan needs it.
    #[serde(skip)]
    pub representative: Option<Torus>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub q: u64,
    pub algebra: Ambient,
    pub classes: Vec<ClassReport>,
    #[serde(serialize_with = "big")]
    pub total: BigUint,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "crate::json::big_opt")]
    pub enumerated_total: Option<BigUint>,
}

impl CensusReport {
    /// Every disagreement between formulas and scans.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let sum: BigUint = self.classes.iter().map(|c| &c.class_size).sum();
        if sum != self.total {
            out.push(format!("sum of class sizes {sum} != total {}", self.total));
        }
        if let Some(e) = &self.enumerated_total {
            if *e != self.total {
                out.push(format!("enumerated {e} != total {}", self.total));
            }
        }
        for c in &self.classes {
            if c.normalizer_bruteforce.as_ref().is_some_and(|b| *b != c.normalizer) {
                out.push(format!("type {}: brute-force normalizer {:?} != {}", c.ty, c.normalizer_bruteforce, c.normalizer));
            }
            if c.orbit_size.as_ref().is_some_and(|o| *o != c.class_size) {
                out.push(format!("type {}: orbit size {:?} != {}", c.ty, c.orbit_size, c.class_size));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("type,normalizer,class_size\n");
        for c in &self.classes {
            let ty: Vec<String> = c.ty.parts().iter().map(ToString::to_string).collect();
            s.push_str(&format!("\"{}\",{},{}\n", ty.join(","), c.normalizer, c.class_size));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CensusOptions {
    pub enumerate: bool,
    pub verify_normalizers: bool,
    pub bounds: Bounds,
    pub exec: Exec,
}

pub fn census(n: usize, q: u64, ambient: Ambient, opts: &CensusOptions) -> Result<CensusReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let field = crate::field::field_of_order(q)?;
    let total = total_count(n, q, ambient)?;
    let mut classes = Vec::new();
    let enumerated = if opts.enumerate {
        Some(enumerate_maximal_tori(n, &field, ambient, opts.bounds.gl, opts.exec)?)
    } else {
        None
    };
    for (k, ty) in partitions(n).into_iter().enumerate() {
        let rep = match opts.enumerate || opts.verify_normalizers {
            true => Some(canonical_torus(&ty, &field, ambient)?),
            false => None,
        };
        let normalizer_bruteforce = match (&rep, opts.verify_normalizers) {
            (Some(rep), true) => Some(normalizer_group_bruteforce(rep, opts.bounds.gl, opts.exec)?),
            _ => None,
        };
        classes.push(ClassReport {
            normalizer: normalizer_order_formula(&ty, q),
            class_size: class_size(&ty, n, q)?,
            normalizer_bruteforce,
            orbit_size: enumerated.as_ref().map(|e| BigUint::from(e[k].members.len())),
            representative: rep,
            ty,
        });
    }
    let enumerated_total = enumerated.map(|e| e.iter().map(|c| BigUint::from(c.members.len())).sum());
    Ok(CensusReport { n, q, algebra: ambient, classes, total, enumerated_total })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CayleyMode {
    #[default]
    Coefficients,
    Points,
}

#[derive(Clone, Debug, Serialize)]
pub struct CayleyReport {
    pub n: usize,
    pub mode: CayleyMode,
    pub partitions: usize,
    /// Coefficients or points compared for each identity.
    pub comparisons: usize,
    pub identity_i: bool,
    pub identity_ii: bool,
    pub inversion_link: bool,
}

type Poly = Vec<BigRational>;

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ppow(a: &Poly, e: usize) -> Poly {
    (0..e).fold(vec![BigRational::one()], |acc, _| pmul(&acc, a))
}

fn padd(a: &mut Poly, b: &Poly) {
    if a.len() < b.len() {
        a.resize(b.len(), BigRational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn trim(mut a: Poly) -> Poly {
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// `1 - q^i` when `sign = -1`, `q^i - 1` when `sign = 1`.
fn binom(i: usize, sign: i64) -> Poly {
    let mut p = vec![BigRational::zero(); i + 1];
    p[0] = int(-sign);
    p[i] = int(sign);
    p
}

/// `prod_i 1 / (m_i! i^{m_i})`.
fn partition_weight(t: &PartitionType) -> BigRational {
    let denom: BigUint = t
        .multiplicities()
        .iter()
        .enumerate()
        .map(|(k, &m)| factorial(m) * BigUint::from(k + 1).pow(m as u32))
        .product();
    BigRational::new(BigInt::one(), BigInt::from(denom))
}

fn compare(lhs: &Poly, rhs: &Poly, which: &str) -> Result<usize> {
    let (lhs, rhs) = (trim(lhs.clone()), trim(rhs.clone()));
    let len = lhs.len().max(rhs.len());
    for k in 0..len {
        let a = lhs.get(k).cloned().unwrap_or_else(BigRational::zero);
        let b = rhs.get(k).cloned().unwrap_or_else(BigRational::zero);
        if a != b {
            return Err(Error::IdentityFailed(format!("{which}: coefficient of q^{k} is {a} on the left, {b} on the right")));
        }
    }
    Ok(len)
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Checks both partition identities as identities of rational functions in `q`.
///
/// Identity (i): `sum_t prod_i 1/(m_i! (i(1-q^i))^{m_i}) = prod_{i<=n} 1/(1-q^i)`.
/// Identity (ii): `sum_t prod_i 1/(m_i! (i(q^i-1))^{m_i}) = q^{n(n-1)/2} / prod_{i<=n} (q^i-1)`.
/// Both sides are multiplied by `prod_i (1 -+ q^i)^{floor(n/i)}`, which every
/// denominator divides. The link replaces `q` by `1/q` in each term of (i):
/// since `sum_i i m_i = n`, reversing the degree-`n` denominator of each term
/// of (i) gives the denominator of the matching term of (ii).
pub fn cayley_identity_check(n: usize, mode: CayleyMode) -> Result<CayleyReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let parts = partitions(n);
    let cleared = |sign: i64, drop: &dyn Fn(usize) -> usize| -> Poly {
        (1..=n).fold(vec![BigRational::one()], |acc, i| pmul(&acc, &ppow(&binom(i, sign), n / i - drop(i))))
    };
    let mut sides = Vec::new();
    for sign in [-1i64, 1] {
        let mut lhs: Poly = vec![BigRational::zero()];
        for t in &parts {
            let m = t.multiplicities();
            let term = cleared(sign, &|i| m[i - 1]);
            padd(&mut lhs, &term.iter().map(|c| c * partition_weight(t)).collect());
        }
        let mut rhs = cleared(sign, &|_| 1);
        if sign == 1 {
            let shift = n * (n - 1) / 2;
            let mut shifted = vec![BigRational::zero(); shift];
            shifted.append(&mut rhs);
            rhs = shifted;
        }
        sides.push((lhs, rhs));
    }
    let names = ["identity (i)", "identity (ii)"];
    let mut comparisons = 0;
    match mode {
        CayleyMode::Coefficients => {
            for ((lhs, rhs), name) in sides.iter().zip(names) {
                comparisons = comparisons.max(compare(lhs, rhs, name)?);
            }
        }
        CayleyMode::Points => {
            for ((lhs, rhs), name) in sides.iter().zip(names) {
                let degree = lhs.len().max(rhs.len()) - 1;
                for x in 2..=(degree as i64 + 2) {
                    let x = int(x);
                    let (a, b) = (eval(lhs, &x), eval(rhs, &x));
                    if a != b {
                        return Err(Error::IdentityFailed(format!("{name}: at q = {x}, left {a}, right {b}")));
                    }
                }
                comparisons = comparisons.max(degree + 1);
            }
        }
    }
    for t in &parts {
        let m = t.multiplicities();
        let weighted: usize = m.iter().enumerate().map(|(k, &mi)| (k + 1) * mi).sum();
        let denom = |sign| (1..=n).fold(vec![BigRational::one()], |acc, i| pmul(&acc, &ppow(&binom(i, sign), m[i - 1])));
        let mut reversed = denom(-1);
        reversed.resize(weighted + 1, BigRational::zero());
        reversed.reverse();
        if weighted != n || trim(reversed) != trim(denom(1)) {
            return Err(Error::IdentityFailed(format!("q -> 1/q link fails for type {t}")));
        }
    }
    let mut rhs_i = (1..=n).fold(vec![BigRational::one()], |acc, i| pmul(&acc, &binom(i, -1)));
    rhs_i.reverse();
    let rhs_ii = (1..=n).fold(vec![BigRational::one()], |acc, i| pmul(&acc, &binom(i, 1)));
    if trim(rhs_i) != trim(rhs_ii) {
        return Err(Error::IdentityFailed("q -> 1/q link fails for the right-hand side".into()));
    }
    Ok(CayleyReport { n, mode, partitions: parts.len(), comparisons, identity_i: true, identity_ii: true, inversion_link: true })
}

/// Class sizes summed over partitions, without enumeration.
pub fn class_size_sum(n: usize, q: u64) -> Result<BigUint> {
    partitions(n).iter().map(|t| class_size(t, n, q)).sum()
}

/// Canonical representatives for every type, computed in parallel.
pub fn representatives(n: usize, field: &FieldSpec, ambient: Ambient, exec: Exec) -> Result<Vec<Torus>> {
    map_slice(exec, &partitions(n), |t| canonical_torus(t, field, ambient)).into_iter().collect()
}

/// Whether `u` is a monomial matrix: exactly one nonzero entry per row and column.
pub fn is_monomial(u: &MatrixGF) -> bool {
    let n = u.n();
    let rows_ok = (0..n).all(|i| (0..n).filter(|&j| u.get(i, j) != 0).count() == 1);
    let cols_ok = (0..n).all(|j| (0..n).filter(|&i| u.get(i, j) != 0).count() == 1);
    rows_ok && cols_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;

    fn pt(p: &[usize]) -> PartitionType {
        PartitionType::new(p.to_vec()).unwrap()
    }

    fn gf(q: u64) -> FieldSpec {
        field_of_order(q).unwrap()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions(1), vec![pt(&[1])]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(3), vec![pt(&[3]), pt(&[2, 1]), pt(&[1, 1, 1])]);
        assert_eq!(partitions(10).len(), 42);
    }

    #[test]
    fn order_examples() {
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order(2, 3), BigUint::from(48u32));
        assert_eq!(gl_order(1, 7), BigUint::from(6u32));
        assert_eq!(gl_order(3, 3), BigUint::from(11232u32));
    }

    #[test]
    fn normalizer_formula_examples() {
        assert_eq!(normalizer_order_formula(&pt(&[2]), 2), BigUint::from(6u32));
        assert_eq!(normalizer_order_formula(&pt(&[1, 1]), 2), BigUint::from(2u32));
        assert_eq!(normalizer_order_formula(&pt(&[2, 1]), 2), BigUint::from(6u32));
        assert_eq!(normalizer_order_formula(&pt(&[3]), 2), BigUint::from(21u32));
    }

    #[test]
    fn class_size_examples() {
        assert_eq!(class_size(&pt(&[2]), 2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(class_size(&pt(&[1, 1]), 2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(class_size(&pt(&[2, 1]), 3, 2).unwrap(), BigUint::from(28u32));
    }

    #[test]
    fn bruteforce_normalizers() {
        let f2 = gf(2);
        let split = canonical_torus(&pt(&[1, 1]), &f2, Ambient::Gl).unwrap();
        let elems = normalizer_group_elements(&split, DEFAULT_GL_BOUND, Exec::Sequential).unwrap();
        assert_eq!(elems, vec![MatrixGF::from_codes(f2.clone(), 2, vec![0, 1, 1, 0]), MatrixGF::identity(f2.clone(), 2)]);
        let div = canonical_torus(&pt(&[2]), &f2, Ambient::Gl).unwrap();
        assert_eq!(normalizer_group_bruteforce(&div, DEFAULT_GL_BOUND, Exec::Parallel).unwrap(), BigUint::from(6u32));
        let f3 = gf(3);
        let split3 = canonical_torus(&pt(&[1, 1]), &f3, Ambient::Gl).unwrap();
        assert_eq!(normalizer_group_bruteforce(&split3, DEFAULT_GL_BOUND, Exec::Parallel).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn bound_is_enforced() {
        let f3 = gf(3);
        let t = canonical_torus(&pt(&[2]), &f3, Ambient::Gl).unwrap();
        assert!(matches!(normalizer_group_bruteforce(&t, 10, Exec::Sequential), Err(Error::BoundExceeded { .. })));
        assert!(matches!(count_nilpotent_bruteforce(2, &f3, 80, Exec::Sequential), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn enumeration_examples() {
        let f2 = gf(2);
        let classes = enumerate_maximal_tori(3, &f2, Ambient::Gl, DEFAULT_GL_BOUND, Exec::Parallel).unwrap();
        let sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, vec![8, 28, 28]);
        let seq = enumerate_maximal_tori(3, &f2, Ambient::Gl, DEFAULT_GL_BOUND, Exec::Sequential).unwrap();
        for (a, b) in classes.iter().zip(&seq) {
            assert_eq!(a.members, b.members);
        }
    }

    #[test]
    fn total_count_examples() {
        assert_eq!(total_count(2, 2, Ambient::Gl).unwrap(), BigUint::from(4u32));
        assert_eq!(total_count(3, 2, Ambient::Sl).unwrap(), BigUint::from(64u32));
        assert_eq!(total_count(1, 7, Ambient::Gl).unwrap(), BigUint::one());
        assert!(matches!(total_count(2, 4, Ambient::Sl), Err(Error::UnsupportedSL2Char2)));
        assert!(matches!(total_count(2, 6, Ambient::Gl), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn class_sizes_sum_to_total() {
        for n in 1..=6 {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                assert_eq!(class_size_sum(n, q).unwrap(), total_count(n, q, Ambient::Gl).unwrap(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn nilpotent_examples() {
        assert_eq!(count_nilpotent_bruteforce(2, &gf(2), DEFAULT_SCAN_BOUND, Exec::Parallel).unwrap(), BigUint::from(4u32));
        assert_eq!(count_nilpotent_bruteforce(1, &gf(5), DEFAULT_SCAN_BOUND, Exec::Parallel).unwrap(), BigUint::one());
        assert_eq!(count_nilpotent_bruteforce(2, &gf(3), DEFAULT_SCAN_BOUND, Exec::Sequential).unwrap(), BigUint::from(9u32));
    }

    /// Direct evaluation of both identities at a rational point, independent
    /// of the cleared-denominator code path.
    fn direct(n: usize, x: &BigRational) -> (BigRational, BigRational, BigRational, BigRational) {
        let one = BigRational::one();
        let pw = |k: usize| (0..k).fold(one.clone(), |a, _| a * x);
        let mut l1 = BigRational::zero();
        let mut l2 = BigRational::zero();
        for t in partitions(n) {
            let mut a = one.clone();
            let mut b = one.clone();
            for (k, &m) in t.multiplicities().iter().enumerate() {
                let i = k + 1;
                for j in 1..=m {
                    a /= int(j as i64) * int(i as i64) * (&one - pw(i));
                    b /= int(j as i64) * int(i as i64) * (pw(i) - &one);
                }
            }
            l1 += a;
            l2 += b;
        }
        let r1 = (1..=n).fold(one.clone(), |a, i| a / (&one - pw(i)));
        let r2 = (1..=n).fold(pw(n * (n - 1) / 2), |a, i| a / (pw(i) - &one));
        (l1, r1, l2, r2)
    }

    #[test]
    fn cayley_matches_direct_evaluation() {
        for n in 1..=6 {
            for x in [2i64, 3, 7] {
                let (l1, r1, l2, r2) = direct(n, &int(x));
                assert_eq!(l1, r1);
                assert_eq!(l2, r2);
            }
        }
    }

    #[test]
    fn cayley_small_cases() {
        let x = BigRational::new(BigInt::from(5), BigInt::from(3));
        let one = BigRational::one();
        let lhs = &one / (int(2) * (&one - &x * &x)) + &one / (int(2) * (&one - &x) * (&one - &x));
        assert_eq!(lhs, &one / ((&one - &x) * (&one - &x * &x)));
        for n in 1..=8 {
            let r = cayley_identity_check(n, CayleyMode::Coefficients).unwrap();
            assert!(r.identity_i && r.identity_ii && r.inversion_link);
            cayley_identity_check(n, CayleyMode::Points).unwrap();
        }
    }

    #[test]
    fn census_report_json() {
        let opts = CensusOptions { enumerate: true, ..Default::default() };
        let r = census(3, 2, Ambient::Gl, &opts).unwrap();
        assert!(r.failures().is_empty());
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"classes\":[{\"type\":[3],\"normalizer\":21,\"class_size\":8"));
        assert!(j.contains("\"total\":64,\"enumerated_total\":64"));
        assert_eq!(r.to_csv().lines().nth(1).unwrap(), "\"3\",21,8");
    }
}
