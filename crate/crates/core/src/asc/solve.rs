//! Eventual truth of conjunctions of sign conditions on exponential polynomials, per residue
//! class of n.

use super::bound::decay_threshold;
use super::circle::on_circle;
use super::dominant::{analyse_dominant, DominantBound, Rotation};
use super::normalize::{normalize, Normalized};
use super::real::{solve_real_conj, Eventual};
use super::system::{residue_space, substitute_affine};
use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::field::{KElem, KPoly};
use crate::kernel::dyadic::{CIv, Dyadic, Iv, Round};
use crate::kernel::isolate::{isolate_complex, refine_disc, Disc};
use crate::kernel::upoly;
use crate::semialg::Sign;
use num_integer::Integer;
use num_rational::BigRational;

const PREC: u64 = 128;

#[derive(Clone, Copy, Debug)]
pub struct SolveConfig {
    /// Exponent d in the gap exponent (size(gamma) + size(xi))^d.
    pub baker_d: u32,
    /// Thresholds beyond this are reported as unknown.
    pub cap: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            baker_d: 3,
            cap: 1 << 24,
        }
    }
}

/// Certified analysis of one atom on a complex-pair space: for n >= threshold, f(n) is nonzero
/// and has the sign of g(gamma^n).
#[derive(Clone, Debug)]
pub struct AtomAnalysis {
    pub norm: Normalized,
    pub dominant: DominantBound,
    pub threshold: u64,
}

pub fn analyse_atom(
    f: &ExpPoly,
    rot: Option<&Rotation>,
    cfg: &SolveConfig,
) -> Result<Option<AtomAnalysis>> {
    let Some(norm) = normalize(f)? else {
        return Ok(None);
    };
    let dominant = analyse_dominant(&norm, rot, cfg.baker_d)?;
    let mut threshold = (dominant.n1 + 1).max(1);
    if !norm.residual.is_empty() {
        let c_res = norm.residual.iter().fold(Dyadic::zero(), |a, (chi, _)| {
            a.add(&chi.enclose(PREC).abs_hi(PREC))
        });
        let q_sq = norm
            .residual
            .iter()
            .map(|(_, m)| m.enclose(PREC).re.hi)
            .max()
            .unwrap();
        let q = q_sq.sqrt(PREC, Round::Up);
        let e: u32 = dominant
            .e
            .try_into()
            .map_err(|_| Error::Internal("gap exponent overflow".into()))?;
        let n4 = decay_threshold(&c_res, &q, e, &dominant.c, cfg.cap).ok_or_else(|| {
            Error::Internal(format!("residual threshold exceeds the cap {}", cfg.cap))
        })?;
        threshold = threshold.max(2).max(n4);
    }
    Ok(Some(AtomAnalysis {
        norm,
        dominant,
        threshold,
    }))
}

/// Enclosure of g(z) for z on the unit circle, negative powers through conj(z).
pub fn g_enclose(norm: &Normalized, z: &CIv, prec: u64) -> CIv {
    let mut acc = CIv::zero();
    for (m, b) in &norm.beta {
        let zp = if *m >= 0 {
            z.pow(*m as u64, prec)
        } else {
            z.conj().pow(m.unsigned_abs(), prec)
        };
        acc = acc.add(&b.enclose(prec).mul(&zp, prec), prec);
    }
    acc
}

/// Sign of the real value g(z) at a rational point of the circle that is not a zero.
fn sign_at_circle_point(norm: &Normalized, x: &BigRational, y: &BigRational) -> Result<i32> {
    let mut prec = 64;
    while prec <= 1 << 16 {
        let z = CIv::new(Iv::from_rational(x, prec), Iv::from_rational(y, prec));
        if let Some(s) = g_enclose(norm, &z, prec).re.sign() {
            if s != 0 {
                return Ok(s);
            }
        }
        prec *= 2;
    }
    Err(Error::PrecisionCap("sign on the circle"))
}

/// Rational point ((1 - t^2)/(1 + t^2), 2t/(1 + t^2)) of the unit circle.
pub fn circle_point(t: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::from_integer(1.into());
    let d = &one + t * t;
    ((&one - t * t) / &d, (t + t) / &d)
}

/// t-interval of the stereographic parameter t = y/(1 + x) for a root isolated in `d`.
fn t_interval(d: &Disc) -> Option<Iv> {
    let e = d.enclosure();
    let den = e.re.add(&Iv::from_int(1), PREC);
    if den.lo.signum() <= 0 {
        return None;
    }
    e.im.div(&den, PREC)
}

/// Is {z : |z| = 1, g_J(z) > 0 for all J} nonempty?
pub fn circle_region_nonempty(gs: &[&Normalized]) -> Result<bool> {
    let mut polys = vec![];
    for g in gs {
        if g.is_constant() {
            if g.beta[&0].sign() < 0 {
                return Ok(false);
            }
            continue;
        }
        polys.push(g.poly().0);
    }
    if polys.is_empty() {
        return Ok(true);
    }
    let f = polys[0][0].field().clone();
    let mut q = polys
        .iter()
        .skip(1)
        .fold(polys[0].clone(), |a, p| upoly::mul(&a, p));
    q = upoly::squarefree(&q);
    // z = -1 sits at t = infinity and never needs a sample
    let minus_one = KElem::from_int(&f, -1);
    if upoly::eval(&q, &minus_one).is_zero() {
        q = upoly::div_rem(&q, &[KElem::from_int(&f, 1), KElem::from_int(&f, 1)]).0;
    }
    let mut ts: Vec<(Iv, Disc)> = vec![];
    for d in isolate_complex(&KPoly(&q))? {
        let (on, d) = on_circle(&q, &d)?;
        if !on {
            continue;
        }
        let mut d = d;
        let iv = loop {
            if let Some(iv) = t_interval(&d) {
                break iv;
            }
            d = refine_disc(&KPoly(&q), &d, &d.r.mul_pow2(-4))?;
        };
        ts.push((iv, d));
    }
    // separate the t-intervals
    for _ in 0..64 {
        ts.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
        let clash = (1..ts.len())
            .filter(|&i| ts[i - 1].0.hi >= ts[i].0.lo)
            .collect::<Vec<_>>();
        if clash.is_empty() {
            break;
        }
        for i in clash {
            for k in [i - 1, i] {
                let d = refine_disc(&KPoly(&q), &ts[k].1, &ts[k].1.r.mul_pow2(-4))?;
                ts[k] = (
                    t_interval(&d).ok_or(Error::Internal("root at -1".into()))?,
                    d,
                );
            }
        }
    }
    let mut samples: Vec<BigRational> = vec![];
    if ts.is_empty() {
        samples.push(BigRational::from_integer(0.into()));
    } else {
        let one = BigRational::from_integer(1.into());
        samples.push(ts[0].0.lo.to_rational() - &one);
        for w in ts.windows(2) {
            if w[0].0.hi >= w[1].0.lo {
                return Err(Error::PrecisionCap("circle zero separation"));
            }
            samples.push(
                (w[0].0.hi.to_rational() + w[1].0.lo.to_rational())
                    / BigRational::from_integer(2.into()),
            );
        }
        samples.push(ts.last().unwrap().0.hi.to_rational() + &one);
    }
    for t in samples {
        let (x, y) = circle_point(&t);
        let mut ok = true;
        for g in gs {
            if sign_at_circle_point(g, &x, &y)? <= 0 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Conjunction on a complex-pair space whose rotation is not a root of unity.
pub fn solve_complex_conj(
    atoms: &[(ExpPoly, Sign)],
    rot: &Rotation,
    cfg: &SolveConfig,
) -> Result<Eventual> {
    let mut eq_bound: Option<u64> = None;
    let mut pos = vec![];
    for (f, rel) in atoms {
        let a = analyse_atom(f, Some(rot), cfg)?;
        match (rel, a) {
            (Sign::Zero, None) => {}
            (Sign::Zero, Some(a)) => {
                eq_bound = Some(eq_bound.map_or(a.threshold, |b| b.min(a.threshold)))
            }
            (Sign::Pos, None) => return Ok(Eventual::Bounded(0)),
            (Sign::Pos, Some(a)) => pos.push(a),
        }
    }
    if let Some(n) = eq_bound {
        return Ok(Eventual::Bounded(n));
    }
    let gs: Vec<&Normalized> = pos.iter().map(|a| &a.norm).collect();
    if circle_region_nonempty(&gs)? {
        // gamma^n is dense on the circle, so the open region is visited infinitely often
        let from = pos.iter().map(|a| a.threshold).max().unwrap_or(0);
        let all_const = gs.iter().all(|g| g.is_constant());
        return Ok(Eventual::Holds(all_const.then_some(from)));
    }
    Ok(Eventual::Bounded(
        pos.iter().map(|a| a.threshold).max().unwrap_or(0),
    ))
}

/// Outcome for the residue class n = d r + m, in terms of r.
#[derive(Clone, Debug)]
pub struct ClassOutcome {
    pub d: u64,
    pub m: u64,
    pub outcome: Eventual,
}

/// How n is split: period d and whether the classes need the real solver.
pub fn split_period(atoms: &[(ExpPoly, Sign)]) -> Result<(u64, bool)> {
    let Some((f0, _)) = atoms.first() else {
        return Ok((1, true));
    };
    let sp = &f0.space;
    let neg = sp.bases.iter().any(|b| b.is_real() && b.sign() < 0);
    let two = if neg { 2 } else { 1 };
    if !sp.conj_pair {
        return Ok((two, true));
    }
    Ok(match Rotation::unity_period(sp)? {
        Some(q) => (q.lcm(&two), true),
        None => (two, false),
    })
}

/// Solves the conjunction on every residue class.
pub fn solve_system(atoms: &[(ExpPoly, Sign)], cfg: &SolveConfig) -> Result<Vec<ClassOutcome>> {
    let (d, real) = split_period(atoms)?;
    let Some((f0, _)) = atoms.first() else {
        return Ok(vec![ClassOutcome {
            d: 1,
            m: 0,
            outcome: Eventual::Holds(Some(0)),
        }]);
    };
    let sp = if d == 1 {
        f0.space.clone()
    } else {
        residue_space(&f0.space, d)
    };
    let rot = if real { None } else { Rotation::of_space(&sp)? };
    let mut out = vec![];
    for m in 0..d {
        let sub: Vec<(ExpPoly, Sign)> = atoms
            .iter()
            .map(|(f, s)| {
                (
                    if d == 1 {
                        f.clone()
                    } else {
                        substitute_affine(f, &sp, d, m)
                    },
                    *s,
                )
            })
            .collect();
        let outcome = match &rot {
            None => solve_real_conj(&sub, cfg.cap),
            Some(r) => solve_complex_conj(&sub, r, cfg)
                .unwrap_or_else(|e| Eventual::Unknown(e.to_string())),
        };
        out.push(ClassOutcome { d, m, outcome });
    }
    Ok(out)
}
