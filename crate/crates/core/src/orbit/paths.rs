//! Decision paths, chosen by a registry of strategies in a fixed order.

use super::instance::{Config, OrbitInstance, Source};
use super::system::{point_atoms, set_atoms, Conj, PowerBasis};
use crate::asc::dominant::Rotation;
use crate::asc::real::Eventual;
use crate::asc::{solve_system, ClassOutcome, SolveConfig};
use crate::semialg::formula::SignCondition;
use crate::semialg::{decide_sentence, MPoly, SemialgebraicSet};
use crate::spectral::singular::singular_reduce;
use crate::spectral::{classify_and_decompose, RationalMatrix, SpectralData, SpectralKind};
use num_rational::BigRational;
use num_traits::Zero;

pub struct Context<'a> {
    pub inst: &'a OrbitInstance,
    pub cfg: &'a Config,
    /// None for singular matrices.
    pub spec: Option<&'a SpectralData>,
}

/// Eventual behaviour of every (disjunct, residue class), with n = offset + d r + m.
#[derive(Clone, Debug, Default)]
pub struct Analysis {
    pub offset: u64,
    pub classes: Vec<(usize, ClassOutcome)>,
    pub notes: Vec<String>,
}

pub trait DecisionPath: Send + Sync {
    fn name(&self) -> &'static str;
    fn applies(&self, ctx: &Context) -> bool;
    fn analyse(&self, ctx: &Context) -> Result<Analysis, String>;
}

fn solve_cfg(cfg: &Config) -> SolveConfig {
    SolveConfig {
        baker_d: cfg.baker_d,
        cap: cfg.search_cap.max(1 << 16),
    }
}

/// Largest placeholder set handed to the eventual analysis. Composition with the closed form of
/// A^n costs roughly (disjuncts) x (terms) x (degree^2 terms per power), so both are capped.
const MAX_PLACEHOLDER_DISJUNCTS: usize = 96;
const MAX_PLACEHOLDER_DEGREE: u32 = 6;

fn conjunctions(ctx: &Context, spec: &SpectralData) -> Result<Vec<Conj>, String> {
    let inst = ctx.inst;
    Ok(match &inst.source {
        Source::Point(s) => point_atoms(spec, s, &inst.target),
        Source::Set(s) => {
            let pb = PowerBasis::new(&inst.matrix);
            let mut out = vec![];
            // one placeholder set per source disjunct, in input order
            for c in &s.dnf {
                let si = SemialgebraicSet {
                    num_vars: s.num_vars,
                    dnf: vec![c.clone()],
                };
                let u = pb
                    .placeholder_set(&si, &inst.target, ctx.cfg.qe)
                    .map_err(|e| e.0)?;
                if u.dnf.len() > MAX_PLACEHOLDER_DISJUNCTS
                    || u.max_degree() > MAX_PLACEHOLDER_DEGREE
                {
                    return Err(format!(
                        "placeholder set too large for the eventual analysis: {} disjuncts of degree up to {} (limits {MAX_PLACEHOLDER_DISJUNCTS}, {MAX_PLACEHOLDER_DEGREE})",
                        u.dnf.len(),
                        u.max_degree()
                    ));
                }
                out.extend(set_atoms(spec, &pb, &u));
            }
            out
        }
    })
}

fn analyse_invertible(ctx: &Context) -> Result<Analysis, String> {
    let spec = ctx.spec.ok_or("spectral data missing")?;
    let conjs = conjunctions(ctx, spec)?;
    let scfg = solve_cfg(ctx.cfg);
    let mut a = Analysis::default();
    for (i, c) in conjs.iter().enumerate() {
        for co in solve_system(c, &scfg).map_err(|e| e.to_string())? {
            a.notes.push(format!(
                "disjunct {i}, n = {}r + {}: {:?}",
                co.d, co.m, co.outcome
            ));
            a.classes.push((i, co));
        }
    }
    if conjs.is_empty() {
        a.notes.push("target or placeholder set is empty".into());
    }
    Ok(a)
}

struct SingularPath;
struct RealSpectrumPath;
struct RootOfUnityPath;
struct PointToSemialgPath;
struct SemialgToSemialgPath;

fn complex_dense(ctx: &Context) -> bool {
    match ctx.spec {
        Some(s) if s.kind == SpectralKind::ComplexPair => {
            matches!(Rotation::unity_period(&s.forward.space), Ok(None))
        }
        _ => false,
    }
}

impl DecisionPath for SingularPath {
    fn name(&self) -> &'static str {
        "singular"
    }
    fn applies(&self, ctx: &Context) -> bool {
        ctx.spec.is_none()
    }
    fn analyse(&self, ctx: &Context) -> Result<Analysis, String> {
        let inst = ctx.inst;
        let red = singular_reduce(&inst.matrix, &inst.source.as_set(), &inst.target)
            .map_err(|e| e.to_string())?;
        let k = red.offset;
        let Some(b) = &red.block else {
            // A^n = 0 from n = k on
            let zero = vec![BigRational::zero(); inst.dim()];
            let src_nonempty = match &inst.source {
                Source::Point(_) => true,
                Source::Set(s) => decide_sentence(s, ctx.cfg.qe).map_err(|e| e.0)?,
            };
            let hit = src_nonempty && inst.target.contains_rat(&zero);
            let outcome = if hit {
                Eventual::Holds(Some(0))
            } else {
                Eventual::Bounded(0)
            };
            return Ok(Analysis {
                offset: k,
                classes: vec![(
                    0,
                    ClassOutcome {
                        d: 1,
                        m: 0,
                        outcome,
                    },
                )],
                notes: vec![format!("nilpotent, A^n = 0 for n >= {k}")],
            });
        };
        let m = red.dim();
        let pad = |p: &MPoly| p.remap(3, &(0..m).collect::<Vec<_>>());
        let lift_set = |s: &SemialgebraicSet| {
            let mut dnf: Vec<Vec<SignCondition>> = s
                .dnf
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|a| SignCondition {
                            poly: pad(&a.poly),
                            rel: a.rel,
                        })
                        .collect()
                })
                .collect();
            for c in dnf.iter_mut() {
                for j in m..3 {
                    c.push(SignCondition::zero(MPoly::var(3, j)));
                }
            }
            SemialgebraicSet { num_vars: 3, dnf }
        };
        let target = SemialgebraicSet {
            num_vars: 3,
            dnf: red
                .target
                .dnf
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|a| SignCondition {
                            poly: pad(&a.poly),
                            rel: a.rel,
                        })
                        .collect()
                })
                .collect(),
        };
        let source = match &inst.source {
            Source::Point(s) => {
                let mut w = red.project_point(s);
                w.resize(3, BigRational::zero());
                Source::Point(w)
            }
            Source::Set(_) => Source::Set(lift_set(&red.source)),
        };
        let reduced = OrbitInstance {
            matrix: b.embed3(),
            source,
            target,
        };
        let mut a = analyse_instance(&reduced, ctx.cfg)?;
        a.notes.insert(
            0,
            format!("singular: zero eigenvalue multiplicity {k}, reduced block of size {m}"),
        );
        a.offset += k;
        Ok(a)
    }
}

impl DecisionPath for RealSpectrumPath {
    fn name(&self) -> &'static str {
        "real-spectrum"
    }
    fn applies(&self, ctx: &Context) -> bool {
        ctx.spec
            .is_some_and(|s| s.kind != SpectralKind::ComplexPair)
    }
    fn analyse(&self, ctx: &Context) -> Result<Analysis, String> {
        analyse_invertible(ctx)
    }
}

impl DecisionPath for RootOfUnityPath {
    fn name(&self) -> &'static str {
        "root-of-unity"
    }
    fn applies(&self, ctx: &Context) -> bool {
        ctx.spec
            .is_some_and(|s| s.kind == SpectralKind::ComplexPair)
            && !complex_dense(ctx)
    }
    fn analyse(&self, ctx: &Context) -> Result<Analysis, String> {
        let spec = ctx.spec.unwrap();
        let d = Rotation::unity_period(&spec.forward.space)
            .map_err(|e| e.to_string())?
            .unwrap_or(1);
        let deg = 2 * spec.lambda().map(|l| l.min_poly().degree()).unwrap_or(1) as u64;
        if d > deg * deg * 2 {
            return Err(format!("rotation period {d} exceeds the degree bound"));
        }
        let mut a = analyse_invertible(ctx)?;
        a.notes.insert(0, format!("rotation period {d}"));
        Ok(a)
    }
}

impl DecisionPath for PointToSemialgPath {
    fn name(&self) -> &'static str {
        "point-to-semialgebraic"
    }
    fn applies(&self, ctx: &Context) -> bool {
        complex_dense(ctx) && matches!(ctx.inst.source, Source::Point(_))
    }
    fn analyse(&self, ctx: &Context) -> Result<Analysis, String> {
        analyse_invertible(ctx)
    }
}

impl DecisionPath for SemialgToSemialgPath {
    fn name(&self) -> &'static str {
        "semialgebraic-to-semialgebraic"
    }
    fn applies(&self, ctx: &Context) -> bool {
        complex_dense(ctx) && matches!(ctx.inst.source, Source::Set(_))
    }
    fn analyse(&self, ctx: &Context) -> Result<Analysis, String> {
        analyse_invertible(ctx)
    }
}

/// Strategies in dispatch order; exactly one applies to any instance.
pub fn registry() -> Vec<Box<dyn DecisionPath>> {
    vec![
        Box::new(SingularPath),
        Box::new(RealSpectrumPath),
        Box::new(RootOfUnityPath),
        Box::new(PointToSemialgPath),
        Box::new(SemialgToSemialgPath),
    ]
}

/// Name of the path that handles the instance.
pub fn classify(inst: &OrbitInstance) -> Result<&'static str, String> {
    let spec = spectral_of(&inst.matrix)?;
    let cfg = Config::default();
    let ctx = Context {
        inst,
        cfg: &cfg,
        spec: spec.as_ref(),
    };
    registry()
        .into_iter()
        .find(|p| p.applies(&ctx))
        .map(|p| p.name())
        .ok_or_else(|| "no decision path applies".into())
}

pub fn spectral_of(a: &RationalMatrix) -> Result<Option<SpectralData>, String> {
    if a.is_singular() {
        Ok(None)
    } else {
        classify_and_decompose(a)
            .map(Some)
            .map_err(|e| e.to_string())
    }
}

/// Runs the applicable path. The returned name is recorded in the verdict.
pub fn analyse_instance(inst: &OrbitInstance, cfg: &Config) -> Result<Analysis, String> {
    analyse_named(inst, cfg).map(|(_, a)| a)
}

pub fn analyse_named(
    inst: &OrbitInstance,
    cfg: &Config,
) -> Result<(&'static str, Analysis), String> {
    let spec = spectral_of(&inst.matrix)?;
    let ctx = Context {
        inst,
        cfg,
        spec: spec.as_ref(),
    };
    let path = registry()
        .into_iter()
        .find(|p| p.applies(&ctx))
        .ok_or("no decision path applies")?;
    let mut a = path.analyse(&ctx)?;
    a.notes.insert(0, format!("path {}", path.name()));
    Ok((path.name(), a))
}
