//! The correspondence between maximal tori of `gl(n, K)` and `sl(n, K)`,
//! ideals of both algebras, and the characteristic 2 case of `sl(2, K)`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::MatrixGF;
use crate::par::{fold_range, Exec};
use crate::subspace::{ideal_closure, lower_central_series, Subspace};
use crate::torus::{canonical_torus, certify_torus, compute_idempotents, is_cartan, Ambient, PartitionType, Torus};

pub const DEFAULT_IDEAL_SCAN_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct AmbientAlgebra {
    pub kind: Ambient,
    pub n: usize,
    pub field: FieldSpec,
    pub space: Subspace,
}

impl AmbientAlgebra {
    pub fn new(kind: Ambient, field: &FieldSpec, n: usize) -> Self {
        AmbientAlgebra { kind, n, field: field.clone(), space: kind.space(field, n) }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn p_divides_n(&self) -> bool {
        self.n.is_multiple_of(self.field.p() as usize)
    }
}

fn scalars(field: &FieldSpec, n: usize) -> Subspace {
    Subspace::span(field.clone(), n, &[MatrixGF::identity(field.clone(), n)]).expect("same field")
}

/// `M ∩ sl(n, K)` for a maximal torus `M` of `gl(n, K)`.
pub fn intersect_sl(m: &Torus) -> Result<Torus> {
    if m.ambient() != Ambient::Gl {
        return Err(Error::InvalidInput("expected a torus of gl".into()));
    }
    Ambient::Sl.check_supported(m.field(), m.n())?;
    if m.dim() != m.n() {
        return Err(Error::NotMaximal(format!("dimension {} != {}", m.dim(), m.n())));
    }
    let s = m.space().intersect(&Subspace::trace_zero(m.field().clone(), m.n()))?;
    Ok(Torus::trusted(s, Ambient::Sl, m.t3_mode()))
}

/// Smallest subspace containing `s` and `I_n` and closed under products.
pub fn associative_closure(s: &Subspace) -> Subspace {
    let one = MatrixGF::identity(s.field().clone(), s.n());
    let mut cur = s.with(&[one]).expect("same field");
    loop {
        let basis = cur.basis();
        let mut prods = Vec::new();
        for x in &basis {
            for y in &basis {
                let xy = x.mul_raw(y);
                if !cur.contains(&xy) {
                    prods.push(xy);
                }
            }
        }
        if prods.is_empty() {
            return cur;
        }
        cur = cur.with(&prods).expect("same field");
    }
}

/// Inverse of [`intersect_sl`]: `K I_n + M0` when `p` does not divide `n`,
/// the associative algebra generated by `M0` otherwise.
pub fn lift_to_gl(m0: &Torus) -> Result<Torus> {
    if m0.ambient() != Ambient::Sl {
        return Err(Error::InvalidInput("expected a torus of sl".into()));
    }
    let (field, n) = (m0.field().clone(), m0.n());
    Ambient::Sl.check_supported(&field, n)?;
    if m0.dim() + 1 != n {
        return Err(Error::NotMaximal(format!("dimension {} != {}", m0.dim(), n - 1)));
    }
    let lifted = if n % field.p() as usize != 0 {
        m0.space().with(&[MatrixGF::identity(field.clone(), n)])?
    } else {
        associative_closure(m0.space())
    };
    if lifted.dim() != n {
        return Err(Error::AssociativeClosureNotMaximal { dim: lifted.dim(), n });
    }
    Ok(certify_torus(&lifted, Ambient::Gl)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub algebra: Ambient,
    pub n: usize,
    pub q: u32,
    /// Labels of the proper nonzero ideals found.
    pub ideals: Vec<String>,
    pub elements_scanned: u64,
    #[serde(skip)]
    pub subspaces: Vec<Subspace>,
}

fn label(ideal: &Subspace, field: &FieldSpec, n: usize) -> Option<&'static str> {
    if *ideal == scalars(field, n) {
        Some("K I_n")
    } else if *ideal == Subspace::trace_zero(field.clone(), n) {
        Some("sl")
    } else {
        None
    }
}

/// Ideal closures of every nonzero element, one per line through the origin.
pub fn classify_ideals(a: &AmbientAlgebra, bound: u64, exec: Exec) -> Result<IdealReport> {
    a.kind.check_supported(&a.field, a.n)?;
    let q = a.field.order() as u64;
    let d = a.dim();
    let size = u32::try_from(d).ok().and_then(|d| q.checked_pow(d)).filter(|&s| s <= bound).ok_or_else(|| {
        Error::BoundExceeded { what: "ambient element count", size: format!("{q}^{d}"), bound }
    })?;
    let (found, scanned) = fold_range(
        exec,
        1..size,
        || (HashSet::new(), 0u64),
        |(mut acc, k), idx| {
            let mut coords = Vec::with_capacity(d);
            let mut r = idx;
            for _ in 0..d {
                coords.push((r % q) as u32);
                r /= q;
            }
            if coords.iter().find(|&&c| c != 0) != Some(&1) {
                return (acc, k);
            }
            let ideal = ideal_closure(&a.space.combine(&coords), &a.space).expect("member of the ambient");
            if ideal != a.space {
                acc.insert(ideal);
            }
            (acc, k + 1)
        },
        |(mut x, k1), (y, k2)| {
            x.extend(y);
            (x, k1 + k2)
        },
    );
    let mut subspaces: Vec<Subspace> = found.into_iter().collect();
    subspaces.sort();
    let mut ideals = Vec::new();
    for s in &subspaces {
        match label(s, &a.field, a.n) {
            Some(l) => ideals.push(l.to_string()),
            None => return Err(Error::UnexpectedIdeal(format!("ideal of dimension {}", s.dim()))),
        }
    }
    ideals.sort();
    let expected: Vec<&str> = match (a.kind, a.p_divides_n()) {
        (Ambient::Gl, _) => vec!["K I_n", "sl"],
        (Ambient::Sl, false) => vec![],
        (Ambient::Sl, true) => vec!["K I_n"],
    };
    if let Some(missing) = expected.iter().find(|e| !ideals.iter().any(|i| i == *e)) {
        return Err(Error::MissingIdeal(missing.to_string()));
    }
    Ok(IdealReport { algebra: a.kind, n: a.n, q: a.field.order(), ideals, elements_scanned: scanned, subspaces })
}

/// Every subspace of `space`, by enumerating reduced echelon coordinate matrices.
pub fn all_subspaces(space: &Subspace, bound: u64) -> Result<Vec<Subspace>> {
    let d = space.dim();
    let q = space.field().order() as u64;
    let mut out = Vec::new();
    for pivots in (0..1u32 << d).map(|mask| (0..d).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>()) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let count = u32::try_from(free.len()).ok().and_then(|e| q.checked_pow(e)).unwrap_or(u64::MAX);
        if out.len() as u64 + count > bound {
            return Err(Error::BoundExceeded { what: "subspace count", size: format!("> {bound}"), bound });
        }
        for idx in 0..count {
            let mut rows: Vec<Vec<u32>> = pivots
                .iter()
                .map(|&pc| {
                    let mut r = vec![0u32; d];
                    r[pc] = 1;
                    r
                })
                .collect();
            let mut rest = idx;
            for &(r, c) in &free {
                rows[r][c] = (rest % q) as u32;
                rest /= q;
            }
            let gens: Vec<MatrixGF> = rows.iter().map(|r| space.combine(r)).collect();
            out.push(Subspace::span(space.field().clone(), space.n(), &gens)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Sl2Char2Report {
    pub q: u32,
    pub series_dims: Vec<usize>,
    pub subspaces_scanned: usize,
    pub tori: usize,
    pub maximal_tori: Vec<Subspace>,
    pub unique_maximal_is_scalars: bool,
    pub sl_is_cartan: bool,
    /// Two distinct maximal tori of `gl(2, K)` with the same trace-zero part.
    pub collapse: (Torus, Torus, Subspace),
}

impl Sl2Char2Report {
    pub fn passed(&self) -> bool {
        self.series_dims == [3, 1, 0] && self.unique_maximal_is_scalars && self.sl_is_cartan && self.collapse.0 != self.collapse.1
    }
}

pub fn sl2_char2_report(field: &FieldSpec, bound: u64) -> Result<Sl2Char2Report> {
    if field.p() != 2 {
        return Err(Error::InvalidInput(format!("characteristic {} is not 2", field.p())));
    }
    let sl = Subspace::trace_zero(field.clone(), 2);
    let series_dims: Vec<usize> = lower_central_series(&sl)?.iter().map(Subspace::dim).collect();
    let subspaces = all_subspaces(&sl, bound)?;
    let tori: Vec<&Subspace> = subspaces.iter().filter(|s| certify_torus(s, Ambient::Sl).is_ok()).collect();
    let maximal_tori: Vec<Subspace> = tori
        .iter()
        .filter(|s| !tori.iter().any(|t| t.dim() > s.dim() && s.is_subspace_of(t)))
        .map(|s| (*s).clone())
        .collect();
    let unique_maximal_is_scalars = maximal_tori == [scalars(field, 2)];
    let split = canonical_torus(&PartitionType::new(vec![1, 1])?, field, Ambient::Gl)?;
    let division = canonical_torus(&PartitionType::new(vec![2])?, field, Ambient::Gl)?;
    let a = split.space().intersect(&sl)?;
    let b = division.space().intersect(&sl)?;
    if a != b {
        return Err(Error::IdentityFailed("trace-zero parts of the split and division tori differ".into()));
    }
    Ok(Sl2Char2Report {
        q: field.order(),
        series_dims,
        subspaces_scanned: subspaces.len(),
        tori: tori.len(),
        maximal_tori,
        unique_maximal_is_scalars,
        sl_is_cartan: is_cartan(&sl, Ambient::Sl)?,
        collapse: (split, division, a),
    })
}

#[derive(Clone, Debug)]
pub struct TraceDecompositionReport {
    /// `(d_i, m_i)`: degree over `K` and multiplicity of each field block.
    pub blocks: Vec<(usize, usize)>,
    pub checked: usize,
    pub counterexample: Option<MatrixGF>,
}

impl TraceDecompositionReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// `Tr_{E/K}(y) e` for `y` in the field block with unit `e` and degree `d`.
fn block_field_trace(y: &MatrixGF, e: &MatrixGF, d: usize) -> u32 {
    let q = y.field().order() as u128;
    let mut sum = MatrixGF::zero(y.field().clone(), y.n());
    let mut cur = y.clone();
    for _ in 0..d {
        sum = sum.add_raw(&cur);
        cur = cur.pow(q);
    }
    let f = y.field();
    let k = e.codes().iter().position(|&c| c != 0).expect("nonzero idempotent");
    f.mul(sum.codes()[k], f.inv(e.codes()[k]).expect("nonzero"))
}

/// Checks `Tr(X) = sum_i m_i Tr_{E_i/K}(X E_i)` on the basis of `M0`, on
/// `I_n`, and on `samples` seeded random elements.
pub fn trace_decomposition_check(m0: &Torus, samples: usize, seed: u64) -> Result<TraceDecompositionReport> {
    let (field, n) = (m0.field().clone(), m0.n());
    if n % field.p() as usize != 0 {
        return Err(Error::InvalidInput(format!("p = {} does not divide n = {n}", field.p())));
    }
    let lifted = lift_to_gl(m0)?;
    let idem = compute_idempotents(lifted.space(), Ambient::Gl)?;
    let blocks: Vec<(usize, usize)> = idem
        .iter()
        .map(|e| {
            let prods: Vec<MatrixGF> = lifted.space().basis().iter().map(|b| b.mul_raw(e)).collect();
            let d = Subspace::span(field.clone(), n, &prods).expect("same field").dim();
            (d, e.rank() / d)
        })
        .collect();
    let mut elems = m0.space().basis();
    if m0.space().contains(&MatrixGF::identity(field.clone(), n)) {
        elems.push(MatrixGF::identity(field.clone(), n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let c: Vec<u32> = (0..m0.dim()).map(|_| rng.gen_range(0..field.order())).collect();
        elems.push(m0.space().combine(&c));
    }
    let mut counterexample = None;
    for x in &elems {
        let rhs = idem.iter().zip(&blocks).fold(0u32, |acc, (e, &(d, m))| {
            let t = block_field_trace(&x.mul_raw(e), e, d);
            field.add(acc, field.mul(field.from_int(m as i64), t))
        });
        if rhs != x.trace() {
            counterexample = Some(x.clone());
            break;
        }
    }
    Ok(TraceDecompositionReport { blocks, checked: elems.len(), counterexample })
}
