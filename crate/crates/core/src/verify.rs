//! Property suites run by `torusforge verify`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::{
    cayley_identity_check, count_nilpotent_bruteforce, enumerate_maximal_tori, normalizer_group_bruteforce,
    normalizer_order_formula, partitions, class_size, total_count, Bounds, CayleyMode,
};
use crate::error::{Error, Result};
use crate::field::field_of_order;
use crate::matrix::{min_poly_matrix, MatrixGF};
use crate::par::Exec;
use crate::sl::{classify_ideals, intersect_sl, lift_to_gl, sl2_char2_report, AmbientAlgebra, DEFAULT_IDEAL_SCAN_BOUND};
use crate::subspace::{centralizer_in, is_nilpotent, normalizer_subalgebra, Subspace};
use crate::torus::{canonical_torus, certify_torus, is_maximal_torus, torus_type, Ambient, Axiom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Winter,
    Normalizers,
    Cayley,
    Ideals,
    SlBridge,
    NilpotentRemark,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Axioms, Suite::Winter, Suite::Normalizers, Suite::Cayley, Suite::Ideals, Suite::SlBridge, Suite::NilpotentRemark];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Winter => "winter",
            Suite::Normalizers => "normalizers",
            Suite::Cayley => "cayley",
            Suite::Ideals => "ideals",
            Suite::SlBridge => "sl-bridge",
            Suite::NilpotentRemark => "nilpotent-remark",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: suite.name(), name: name.into(), passed, detail: detail.into() });
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub n_max: Option<usize>,
    pub bounds: Bounds,
    pub scan_bound: u64,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n: None,
            q: None,
            n_max: None,
            bounds: Bounds::default(),
            scan_bound: DEFAULT_IDEAL_SCAN_BOUND,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

impl VerifyConfig {
    /// The explicit `(n, q)` if both are given, else `defaults`.
    fn sizes(&self, defaults: &[(usize, u64)]) -> Vec<(usize, u64)> {
        match (self.n, self.q) {
            (Some(n), Some(q)) => vec![(n, q)],
            (Some(n), None) => defaults.iter().map(|&(_, q)| (n, q)).collect::<std::collections::BTreeSet<_>>().into_iter().collect(),
            (None, Some(q)) => defaults.iter().map(|&(n, _)| (n, q)).collect::<std::collections::BTreeSet<_>>().into_iter().collect(),
            (None, None) => defaults.to_vec(),
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    match suite {
        Suite::All => {
            for s in Suite::EACH {
                r.checks.extend(run_suite(s, cfg)?.checks);
            }
        }
        Suite::Axioms => axioms(cfg, &mut r)?,
        Suite::Winter => winter(cfg, &mut r)?,
        Suite::Normalizers => normalizers(cfg, &mut r)?,
        Suite::Cayley => {
            for n in 1..=cfg.n_max.or(cfg.n).unwrap_or(8) {
                let c = cayley_identity_check(n, CayleyMode::Coefficients)?;
                r.push(suite, format!("n={n}"), true, format!("{} partitions, {} coefficients", c.partitions, c.comparisons));
            }
        }
        Suite::Ideals => ideals(cfg, &mut r)?,
        Suite::SlBridge => sl_bridge(cfg, &mut r)?,
        Suite::NilpotentRemark => {
            for (n, q) in cfg.sizes(&[(2, 2), (2, 3), (2, 4), (3, 2)]) {
                let count = count_nilpotent_bruteforce(n, &field_of_order(q)?, cfg.bounds.scan, cfg.exec)?;
                let total = total_count(n, q, Ambient::Gl)?;
                r.push(suite, format!("n={n} q={q}"), count == total, format!("nilpotent count {count}, maximal tori {total}"));
            }
        }
    }
    Ok(r)
}

fn axioms(cfg: &VerifyConfig, r: &mut SuiteReport) -> Result<()> {
    let suite = Suite::Axioms;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (n, q) in cfg.sizes(&[(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]) {
        let f = field_of_order(q)?;
        for t in partitions(n) {
            for ambient in [Ambient::Gl, Ambient::Sl] {
                if ambient.check_supported(&f, n).is_err() {
                    continue;
                }
                let m = canonical_torus(&t, &f, ambient)?;
                // p-map closure on every element, not just the basis
                let small = m.space().cardinality().is_some_and(|c| c <= 4096);
                let closed = !small || m.space().elements().all(|x| m.space().contains(&x.pmap()));
                let typed = ambient == Ambient::Sl || torus_type(&m)? == t;
                r.push(
                    suite,
                    format!("{ambient}({n},{q}) type {t}"),
                    is_maximal_torus(&m)? && typed && closed,
                    format!("dim {}, T3 {}", m.dim(), serde_json::to_value(m.t3_mode()).expect("serializable")),
                );
            }
        }
        let nil = Subspace::span(f.clone(), n, &[MatrixGF::unit(f.clone(), n, 0, n - 1)])?;
        let rejected = n == 1 || certify_torus(&nil, Ambient::Gl).is_err_and(|e| e.axiom == Axiom::T3);
        r.push(suite, format!("gl({n},{q}) nilpotent line rejected"), rejected, "T3");
        let q32 = f.order();
        let annihilated = (0..200).all(|_| {
            let x = MatrixGF::from_codes(f.clone(), n, (0..n * n).map(|_| rng.gen_range(0..q32)).collect());
            x.eval_poly(&min_poly_matrix(&x)).is_zero()
        });
        r.push(suite, format!("min poly annihilates 200 random X in gl({n},{q})"), annihilated, "");
    }
    Ok(())
}

fn winter(cfg: &VerifyConfig, r: &mut SuiteReport) -> Result<()> {
    let suite = Suite::Winter;
    for (n, q) in cfg.sizes(&[(2, 2), (2, 3), (3, 2)]) {
        let f = field_of_order(q)?;
        for ambient in [Ambient::Gl, Ambient::Sl] {
            if ambient.check_supported(&f, n).is_err() {
                continue;
            }
            let amb = ambient.space(&f, n);
            let classes = enumerate_maximal_tori(n, &f, ambient, cfg.bounds.gl, cfg.exec)?;
            let (mut good, mut total) = (0usize, 0usize);
            let mut witness = String::new();
            for m in classes.iter().flat_map(|c| &c.members) {
                total += 1;
                let ok = centralizer_in(&amb, m.space())? == *m.space()
                    && normalizer_subalgebra(&amb, m.space())? == *m.space()
                    && is_nilpotent(m.space())?;
                if ok {
                    good += 1;
                } else if witness.is_empty() {
                    witness = format!(", first failure {:?}", m.space().basis());
                }
            }
            r.push(suite, format!("{ambient}({n},{q})"), good == total, format!("{good}/{total} self-centralizing and Cartan{witness}"));
        }
    }
    Ok(())
}

fn normalizers(cfg: &VerifyConfig, r: &mut SuiteReport) -> Result<()> {
    let suite = Suite::Normalizers;
    let n_max = cfg.n_max.unwrap_or(3);
    let defaults: Vec<(usize, u64)> = (1..=n_max).flat_map(|n| [(n, 2), (n, 3)]).collect();
    for (n, q) in cfg.sizes(&defaults) {
        let f = field_of_order(q)?;
        let classes = enumerate_maximal_tori(n, &f, Ambient::Gl, cfg.bounds.gl, cfg.exec)?;
        for class in classes {
            let rep = canonical_torus(&class.ty, &f, Ambient::Gl)?;
            let brute = normalizer_group_bruteforce(&rep, cfg.bounds.gl, cfg.exec)?;
            let formula = normalizer_order_formula(&class.ty, q);
            let size = class_size(&class.ty, n, q)?;
            let orbit = BigUint::from(class.members.len());
            r.push(
                suite,
                format!("gl({n},{q}) type {}", class.ty),
                brute == formula && orbit == size,
                format!("|N| {brute} vs {formula}, orbit {orbit} vs {size}"),
            );
        }
    }
    Ok(())
}

fn ideals(cfg: &VerifyConfig, r: &mut SuiteReport) -> Result<()> {
    let suite = Suite::Ideals;
    let cases: Vec<(Ambient, usize, u64)> = match (cfg.n, cfg.q) {
        (Some(n), Some(q)) => vec![(Ambient::Gl, n, q), (Ambient::Sl, n, q)],
        _ => vec![(Ambient::Gl, 2, 3), (Ambient::Gl, 3, 2), (Ambient::Sl, 2, 3), (Ambient::Sl, 3, 2), (Ambient::Sl, 3, 3)],
    };
    for (kind, n, q) in cases {
        let f = field_of_order(q)?;
        if kind.check_supported(&f, n).is_err() {
            continue;
        }
        let name = format!("{kind}({n},{q})");
        match classify_ideals(&AmbientAlgebra::new(kind, &f, n), cfg.scan_bound, cfg.exec) {
            Ok(rep) => r.push(suite, name, true, format!("{:?} from {} elements", rep.ideals, rep.elements_scanned)),
            Err(e @ (Error::UnexpectedIdeal(_) | Error::MissingIdeal(_))) => r.push(suite, name, false, e.to_string()),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn sl_bridge(cfg: &VerifyConfig, r: &mut SuiteReport) -> Result<()> {
    let suite = Suite::SlBridge;
    for (n, q) in cfg.sizes(&[(2, 3), (3, 2)]) {
        let f = field_of_order(q)?;
        if Ambient::Sl.check_supported(&f, n).is_err() {
            let rep = sl2_char2_report(&f, cfg.scan_bound)?;
            r.push(suite, format!("sl(2,{q}) characteristic 2"), rep.passed(), format!("series {:?}, {} tori", rep.series_dims, rep.tori));
            continue;
        }
        let sl = Subspace::trace_zero(f.clone(), n);
        let gl_tori = enumerate_maximal_tori(n, &f, Ambient::Gl, cfg.bounds.gl, cfg.exec)?;
        let sl_tori = enumerate_maximal_tori(n, &f, Ambient::Sl, cfg.bounds.gl, cfg.exec)?;
        let gl_count: usize = gl_tori.iter().map(|c| c.members.len()).sum();
        let sl_count: usize = sl_tori.iter().map(|c| c.members.len()).sum();
        let total = total_count(n, q, Ambient::Sl)?;
        r.push(suite, format!("sl({n},{q}) count"), BigUint::from(sl_count) == total && sl_count == gl_count, format!("{sl_count} sl, {gl_count} gl, formula {total}"));
        let mut round = true;
        for m in gl_tori.iter().flat_map(|c| &c.members) {
            round &= lift_to_gl(&intersect_sl(m)?)? == *m;
        }
        let mut central = true;
        for m0 in sl_tori.iter().flat_map(|c| &c.members) {
            round &= intersect_sl(&lift_to_gl(m0)?)? == *m0;
            central &= centralizer_in(&sl, m0.space())? == *m0.space();
        }
        r.push(suite, format!("sl({n},{q}) bijection round trip"), round, "");
        r.push(suite, format!("sl({n},{q}) self-centralizing"), central, "");
    }
    if cfg.n.is_none() && cfg.q.is_none() {
        let total = total_count(3, 3, Ambient::Sl)?;
        let sum: BigUint = partitions(3).iter().map(|t| class_size(t, 3, 3)).sum::<Result<BigUint>>()?;
        r.push(suite, "sl(3,3) count by formula", sum == total, format!("{total}"));
        for q in [2, 4] {
            let rep = sl2_char2_report(&field_of_order(q)?, cfg.scan_bound)?;
            r.push(suite, format!("sl(2,{q}) characteristic 2"), rep.passed(), format!("series {:?}, {} tori", rep.series_dims, rep.tori));
        }
    }
    Ok(())
}
