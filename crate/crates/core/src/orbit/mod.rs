//! Top-level decision procedure: n = 0 check, spectral dispatch, eventual analysis per
//! residue class, then an exhaustive search below the certified bound.

pub mod instance;
pub mod paths;
pub mod search;
pub mod system;

pub use instance::{Config, OrbitInstance, Outcome, Source, Verdict};
pub use paths::{analyse_named, classify, registry, Analysis, DecisionPath};
pub use search::bounded_search;

use crate::asc::real::Eventual;
use crate::kernel::algebraic::AlgebraicNumber;
use crate::semialg::formula::SignCondition;
use crate::semialg::{decide_sentence, sample_points, MPoly, SemialgebraicSet};
use crate::spectral::RationalMatrix;
use num_rational::BigRational;
use num_traits::Zero;
use search::{search_point, set_hits_at, SetOracle};

/// Search horizon used when the analysis is inconclusive but a witness may still be found.
const FALLBACK_HORIZON: u64 = 200;

/// Pads an instance of dimension below 3 with coordinates fixed at zero.
pub fn embed3(inst: &OrbitInstance) -> OrbitInstance {
    let n = inst.dim();
    if n >= 3 {
        return inst.clone();
    }
    let map: Vec<usize> = (0..n).collect();
    let pad = |s: &SemialgebraicSet, zero: bool| {
        let mut dnf: Vec<Vec<SignCondition>> = s
            .dnf
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| SignCondition {
                        poly: a.poly.remap(3, &map),
                        rel: a.rel,
                    })
                    .collect()
            })
            .collect();
        if zero {
            for c in dnf.iter_mut() {
                for j in n..3 {
                    c.push(SignCondition::zero(MPoly::var(3, j)));
                }
            }
        }
        SemialgebraicSet { num_vars: 3, dnf }
    };
    let source = match &inst.source {
        Source::Point(p) => {
            let mut p = p.clone();
            p.resize(3, BigRational::zero());
            Source::Point(p)
        }
        Source::Set(s) => Source::Set(pad(s, true)),
    };
    OrbitInstance {
        matrix: inst.matrix.embed3(),
        source,
        target: pad(&inst.target, false),
    }
}

/// Plain-text rendering of an algebraic coordinate.
pub fn describe(a: &AlgebraicNumber) -> String {
    match a.as_rational() {
        Some(q) => q.to_string(),
        None => format!(
            "root of {:?} near {:.12}",
            a.rep_poly()
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            a.to_f64().0
        ),
    }
}

struct Searcher<'a> {
    inst: &'a OrbitInstance,
    set: Option<SetOracle>,
}

impl<'a> Searcher<'a> {
    fn new(inst: &'a OrbitInstance, cfg: &Config) -> Self {
        let set = match &inst.source {
            Source::Set(s) => Some(SetOracle::new(&inst.matrix, s, &inst.target, cfg.qe)),
            Source::Point(_) => None,
        };
        Searcher { inst, set }
    }

    fn run(&self, from: u64, to: u64) -> Result<Option<u64>, String> {
        let i = self.inst;
        match (&i.source, &self.set) {
            (Source::Point(s), _) => Ok(search_point(&i.matrix, s, &i.target, from, to)),
            (Source::Set(s), Some(o)) => o.search(&i.matrix, s, &i.target, from, to),
            _ => unreachable!(),
        }
    }
}

/// Exact re-verification of a witness.
fn verify(inst: &OrbitInstance, n: u64, cfg: &Config) -> Result<bool, String> {
    let an = inst.matrix.pow(n);
    match &inst.source {
        Source::Point(s) => Ok(inst.target.contains_rat(&an.apply(s))),
        Source::Set(s) => set_hits_at(&an, s, &inst.target, cfg.qe),
    }
}

fn witness_point(inst: &OrbitInstance, n: u64, cfg: &Config) -> Option<Vec<String>> {
    let Source::Set(s) = &inst.source else {
        return None;
    };
    let an: RationalMatrix = inst.matrix.pow(n);
    let set = s.intersect(&inst.target.preimage_linear(an.rows()));
    let pts = sample_points(&set, cfg.qe).ok()?;
    pts.first().map(|p| p.iter().map(describe).collect())
}

/// Largest n that may still be a witness, from the per-class outcomes.
fn last_candidate(offset: u64, d: u64, m: u64, r: u64) -> u64 {
    if r == 0 {
        offset.saturating_sub(1)
    } else {
        offset + d * (r - 1) + m
    }
}

pub fn decide(inst: &OrbitInstance, cfg: &Config) -> Verdict {
    if let Err(e) = inst.check() {
        return Verdict::unknown(e.to_string(), cfg);
    }
    let inst = &embed3(inst);
    let mut v = decide_inner(inst, cfg);
    if v.outcome == Outcome::Reachable {
        let n = v.witness_n.unwrap();
        match verify(inst, n, cfg) {
            Ok(true) => {
                if cfg.witness {
                    v.witness_point = witness_point(inst, n, cfg);
                }
            }
            Ok(false) => {
                return Verdict::unknown(format!("witness n={n} failed exact re-verification"), cfg)
            }
            Err(e) => v
                .diagnostics
                .push(format!("re-verification inconclusive: {e}")),
        }
    }
    v
}

fn decide_inner(inst: &OrbitInstance, cfg: &Config) -> Verdict {
    // n = 0
    let at_zero = match &inst.source {
        Source::Point(s) => Ok(inst.target.contains_rat(s)),
        Source::Set(s) => decide_sentence(&s.intersect(&inst.target), cfg.qe).map_err(|e| e.0),
    };
    match at_zero {
        Ok(true) => {
            let mut v = Verdict::reachable(0, cfg);
            v.path = "initial".into();
            return v;
        }
        Ok(false) => {}
        Err(e) => {
            let mut v = Verdict::unknown(e, cfg);
            v.path = "initial".into();
            return v;
        }
    }
    let searcher = Searcher::new(inst, cfg);
    let (path, analysis) = match analyse_named(inst, cfg) {
        Ok(x) => x,
        Err(e) => {
            // a witness found directly is still a valid answer
            let mut v = match searcher.run(1, FALLBACK_HORIZON.min(cfg.search_cap)) {
                Ok(Some(n)) => Verdict::reachable(n, cfg),
                _ => Verdict::unknown(e.clone(), cfg),
            };
            v.path = "search".into();
            v.diagnostics
                .push(format!("eventual analysis unavailable: {e}"));
            return v;
        }
    };
    let mut exists_by: Option<u64> = None;
    let mut exists_unbounded = false;
    let mut unknown: Option<String> = None;
    let mut n_star = 0u64;
    let k = analysis.offset;
    for (_, co) in &analysis.classes {
        match &co.outcome {
            Eventual::Holds(Some(r)) => {
                let n = k + co.d * r + co.m;
                exists_by = Some(exists_by.map_or(n, |b| b.min(n)));
            }
            Eventual::Holds(None) => exists_unbounded = true,
            Eventual::Bounded(r) => n_star = n_star.max(last_candidate(k, co.d, co.m, *r)),
            Eventual::Unknown(e) => {
                unknown.get_or_insert_with(|| e.clone());
            }
        }
    }
    n_star = n_star.max(k.saturating_sub(1));
    let finish = |mut v: Verdict| {
        v.path = path.to_string();
        v.diagnostics = analysis.notes.clone();
        v
    };
    if exists_by.is_some() || exists_unbounded {
        let to = exists_by.unwrap_or(u64::MAX).min(cfg.search_cap);
        return finish(match searcher.run(1, to) {
            Ok(Some(n)) => Verdict::reachable(n, cfg),
            Ok(None) if exists_by.is_some_and(|b| b <= to) => Verdict::unknown(
                format!("certified witness class not confirmed by search up to {to}"),
                cfg,
            ),
            Ok(None) => Verdict::unknown(
                format!("a witness exists but none was found below the search cap {to}"),
                cfg,
            ),
            Err(e) => Verdict::unknown(e, cfg),
        });
    }
    if let Some(e) = unknown {
        let to = FALLBACK_HORIZON.min(cfg.search_cap);
        return finish(match searcher.run(1, to) {
            Ok(Some(n)) => Verdict::reachable(n, cfg),
            _ => Verdict::unknown(e, cfg),
        });
    }
    if n_star > cfg.search_cap {
        let to = FALLBACK_HORIZON.min(cfg.search_cap);
        return finish(match searcher.run(1, to) {
            Ok(Some(n)) => Verdict::reachable(n, cfg),
            _ => Verdict::unknown(
                format!(
                    "bound N*={n_star} exceeds the search cap {}",
                    cfg.search_cap
                ),
                cfg,
            ),
        });
    }
    finish(match searcher.run(1, n_star) {
        Ok(Some(n)) => Verdict::reachable(n, cfg),
        Ok(None) => Verdict::not_reachable(n_star, cfg),
        Err(e) => Verdict::unknown(e, cfg),
    })
}
