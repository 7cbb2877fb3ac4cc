//! Existential quantifier elimination by virtual substitution of test points (degree at most
//! two in each eliminated variable), with exact univariate decision as the last step.

use super::eval::sign_univariate_at;
use super::formula::{and_dnf, simplify_conj, simplify_dnf, SemialgebraicSet, Sign, SignCondition};
use super::mpoly::MPoly;
use crate::kernel::algebraic::AlgebraicNumber;
use crate::kernel::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

pub type Dnf = Vec<Vec<SignCondition>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QeLimits {
    pub max_degree: u32,
    pub max_free_vars: usize,
    pub max_disjuncts: usize,
}

impl Default for QeLimits {
    fn default() -> Self {
        QeLimits {
            max_degree: 32,
            max_free_vars: 24,
            max_disjuncts: 50_000,
        }
    }
}

/// Quantifier elimination gave up; the message says why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QeUnknown(pub String);

impl fmt::Display for QeUnknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for QeUnknown {}

type QeResult<T> = std::result::Result<T, QeUnknown>;

struct Ctx {
    limits: QeLimits,
    step: usize,
}

impl Ctx {
    fn check(&self, d: &Dnf) -> QeResult<()> {
        for a in d.iter().flatten() {
            let deg = a.poly.total_degree();
            if deg > self.limits.max_degree {
                return Err(QeUnknown(format!(
                    "qe degree limit {} exceeded at projection step {} (degree {deg})",
                    self.limits.max_degree, self.step
                )));
            }
        }
        if d.len() > self.limits.max_disjuncts {
            return Err(QeUnknown(format!(
                "qe disjunct limit {} exceeded at projection step {}",
                self.limits.max_disjuncts, self.step
            )));
        }
        Ok(())
    }
}

/// Test point (a + b sqrt(c)) / d, optionally shifted by a positive infinitesimal.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Root {
    a: MPoly,
    b: MPoly,
    c: MPoly,
    d: MPoly,
}

fn pos(p: MPoly) -> SignCondition {
    SignCondition::pos(p)
}

fn zer(p: MPoly) -> SignCondition {
    SignCondition::zero(p)
}

/// p != 0 as a DNF.
fn nonzero(p: &MPoly) -> Dnf {
    vec![vec![pos(p.clone())], vec![pos(p.neg())]]
}

/// p >= 0 as a DNF.
fn nonneg(p: &MPoly) -> Dnf {
    vec![vec![pos(p.clone())], vec![zer(p.clone())]]
}

/// (A, B) with q(t) * d^k = A + B sqrt(c), then multiplied by d once more when k is odd so the
/// sign of A + B sqrt(c) equals the sign of q(t).
fn substitute(q: &MPoly, x: usize, t: &Root) -> (MPoly, MPoly) {
    let cs = q.coeffs_in(x);
    let k = cs.len() - 1;
    let nv = q.nvars();
    let mut pa = MPoly::one(nv);
    let mut pb = MPoly::zero(nv);
    let mut dpow = vec![MPoly::one(nv)];
    for i in 1..=k {
        dpow.push(dpow[i - 1].mul(&t.d));
    }
    let mut ra = MPoly::zero(nv);
    let mut rb = MPoly::zero(nv);
    for (i, ci) in cs.iter().enumerate() {
        if !ci.is_zero() {
            let f = ci.mul(&dpow[k - i]);
            ra = ra.add(&f.mul(&pa));
            rb = rb.add(&f.mul(&pb));
        }
        // (pa + pb sqrt c)(a + b sqrt c)
        let na = pa.mul(&t.a).add(&pb.mul(&t.b).mul(&t.c));
        let nb = pa.mul(&t.b).add(&pb.mul(&t.a));
        pa = na;
        pb = nb;
    }
    if k % 2 == 1 {
        ra = ra.mul(&t.d);
        rb = rb.mul(&t.d);
    }
    (ra, rb)
}

fn subst_atom(q: &MPoly, rel: Sign, x: usize, t: &Root) -> Dnf {
    let (a, b) = substitute(q, x, t);
    if b.is_zero() {
        return vec![vec![SignCondition { poly: a, rel }]];
    }
    let e = a.mul(&a).sub(&b.mul(&b).mul(&t.c));
    match rel {
        Sign::Zero => vec![
            vec![zer(e.clone()), pos(a.mul(&b).neg())],
            vec![zer(e), zer(a.mul(&b))],
        ],
        Sign::Pos => vec![
            vec![pos(a.clone()), pos(e.clone())],
            vec![pos(b.clone()), pos(a)],
            vec![pos(b), pos(e.neg())],
        ],
    }
}

/// q(t + eps) > 0
fn subst_eps(q: &MPoly, x: usize, t: &Root) -> Dnf {
    let k = q.degree_in(x) as usize;
    let mut out: Dnf = vec![];
    let mut prefix: Dnf = vec![vec![]];
    let mut d = q.clone();
    for _ in 0..=k {
        out.extend(and_dnf(&prefix, &subst_atom(&d, Sign::Pos, x, t)));
        prefix = and_dnf(&prefix, &subst_atom(&d, Sign::Zero, x, t));
        if prefix.is_empty() {
            break;
        }
        d = d.derivative(x);
    }
    simplify_dnf(out)
}

/// q(-inf) > 0
fn subst_minus_inf(q: &MPoly, x: usize) -> Dnf {
    let cs = q.coeffs_in(x);
    let mut out: Dnf = vec![];
    let mut prefix: Vec<SignCondition> = vec![];
    for i in (0..cs.len()).rev() {
        let c = if i % 2 == 1 {
            cs[i].neg()
        } else {
            cs[i].clone()
        };
        let mut conj = prefix.clone();
        conj.push(pos(c));
        out.push(conj);
        prefix.push(zer(cs[i].clone()));
    }
    simplify_dnf(out)
}

/// Candidate roots of q in x with their existence guards.
fn roots_of(q: &MPoly, x: usize) -> Vec<(Dnf, Root)> {
    let cs = q.coeffs_in(x);
    let nv = q.nvars();
    let zero = MPoly::zero(nv);
    let one = MPoly::one(nv);
    let mut out = vec![];
    match cs.len() - 1 {
        1 => {
            out.push((
                nonzero(&cs[1]),
                Root {
                    a: cs[0].neg(),
                    b: zero.clone(),
                    c: zero,
                    d: cs[1].clone(),
                },
            ));
        }
        2 => {
            let disc = cs[1]
                .mul(&cs[1])
                .sub(&cs[0].mul(&cs[2]).scale(&BigInt::from(4)));
            let guard = and_dnf(&nonzero(&cs[2]), &nonneg(&disc));
            let d = cs[2].scale(&BigInt::from(2));
            for s in [one.clone(), one.neg()] {
                out.push((
                    guard.clone(),
                    Root {
                        a: cs[1].neg(),
                        b: s,
                        c: disc.clone(),
                        d: d.clone(),
                    },
                ));
            }
            let lin_guard = and_dnf(&[vec![zer(cs[2].clone())]], &nonzero(&cs[1]));
            out.push((
                lin_guard,
                Root {
                    a: cs[0].neg(),
                    b: zero.clone(),
                    c: zero,
                    d: cs[1].clone(),
                },
            ));
        }
        _ => {}
    }
    out
}

fn conj_all(
    atoms: &[SignCondition],
    f: impl Fn(&SignCondition) -> Dnf,
    ctx: &Ctx,
) -> QeResult<Dnf> {
    let mut acc: Dnf = vec![vec![]];
    for a in atoms {
        acc = and_dnf(&acc, &f(a));
        ctx.check(&acc)?;
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// Exact decision of a conjunction in the single variable x.
pub fn decide_univariate(conj: &[SignCondition], x: usize) -> bool {
    let polys: Vec<(IntPoly, Sign)> = conj
        .iter()
        .map(|a| {
            (
                a.poly.to_univariate(x).expect("univariate conjunction"),
                a.rel,
            )
        })
        .collect();
    let holds = |pt: &AlgebraicNumber| {
        polys.iter().all(|(p, rel)| {
            let s = sign_univariate_at(p, pt).expect("real point");
            match rel {
                Sign::Pos => s > 0,
                Sign::Zero => s == 0,
            }
        })
    };
    for c in univariate_candidates(&polys) {
        if holds(&c) {
            return true;
        }
    }
    false
}

/// Sample points covering every sign-invariant cell of the given polynomials (only roots of the
/// equations when an equation is present).
fn univariate_candidates(polys: &[(IntPoly, Sign)]) -> Vec<AlgebraicNumber> {
    let eqs: Vec<&IntPoly> = polys
        .iter()
        .filter(|(p, r)| *r == Sign::Zero && !p.is_zero())
        .map(|(p, _)| p)
        .collect();
    if let Some(first) = eqs.first() {
        let mut g = (*first).clone();
        for e in &eqs[1..] {
            g = g.gcd(e);
        }
        return AlgebraicNumber::roots_of(&g, true).unwrap_or_default();
    }
    let mut prod = IntPoly::constant(BigInt::one());
    for (p, _) in polys {
        if p.degree() > 0 {
            prod = prod.mul(p);
        }
    }
    let roots = AlgebraicNumber::roots_of(&prod, true).unwrap_or_default();
    let mut out: Vec<AlgebraicNumber> = rational_gaps(&roots)
        .into_iter()
        .map(AlgebraicNumber::from_rational)
        .collect();
    out.extend(roots);
    out
}

/// Rationals strictly below, between, and above the given sorted distinct real numbers.
pub fn rational_gaps(roots: &[AlgebraicNumber]) -> Vec<BigRational> {
    if roots.is_empty() {
        return vec![BigRational::zero()];
    }
    let one = BigRational::one();
    let mut ivs: Vec<(BigRational, BigRational)> =
        roots.iter().map(|r| r.real_interval(&one)).collect();
    let mut out = vec![&ivs[0].0 - &one];
    for i in 0..roots.len() - 1 {
        let mut w = BigRational::new(1.into(), 2.into());
        while ivs[i].1 >= ivs[i + 1].0 {
            ivs[i] = roots[i].real_interval(&w);
            ivs[i + 1] = roots[i + 1].real_interval(&w);
            w = w / BigRational::from_integer(2.into());
        }
        out.push((&ivs[i].1 + &ivs[i + 1].0) / BigRational::from_integer(2.into()));
    }
    out.push(&ivs[roots.len() - 1].1 + &one);
    out
}

fn uses_only(conj: &[SignCondition], x: usize) -> bool {
    conj.iter()
        .all(|a| a.poly.vars_used().iter().all(|&v| v == x))
}

/// Eliminates one variable from a conjunction.
fn eliminate_one(conj: &[SignCondition], x: usize, ctx: &mut Ctx) -> QeResult<Dnf> {
    let (with_x, without): (Vec<SignCondition>, Vec<SignCondition>) =
        conj.iter().cloned().partition(|a| a.poly.uses_var(x));
    if with_x.is_empty() {
        return Ok(vec![conj.to_vec()]);
    }
    if uses_only(&with_x, x) {
        return Ok(if decide_univariate(&with_x, x) {
            vec![without]
        } else {
            vec![]
        });
    }
    let maxdeg = with_x.iter().map(|a| a.poly.degree_in(x)).max().unwrap();
    if maxdeg > 2 {
        return Err(QeUnknown(format!(
            "degree {maxdeg} in an eliminated variable exceeds the virtual-substitution limit 2 at projection step {}",
            ctx.step
        )));
    }
    let base: Dnf = vec![without.clone()];
    let eq = with_x
        .iter()
        .filter(|a| a.rel == Sign::Zero)
        .min_by_key(|a| {
            let cs = a.poly.coeffs_in(x);
            let lead_const = cs.last().unwrap().as_constant().is_some();
            (a.poly.degree_in(x), !lead_const, a.poly.num_terms())
        })
        .cloned();
    let mut out: Dnf = vec![];
    if let Some(eq) = eq {
        let others: Vec<SignCondition> = with_x.iter().filter(|a| **a != eq).cloned().collect();
        let cs = eq.poly.coeffs_in(x);
        let lead = cs.last().unwrap().clone();
        for (guard, t) in roots_of(&eq.poly, x) {
            // the linear fallback of a quadratic is handled through the degenerate branch below
            if cs.len() == 3 && t.b.is_zero() {
                continue;
            }
            let g = and_dnf(&base, &guard);
            if g.is_empty() {
                continue;
            }
            let s = conj_all(&others, |a| subst_atom(&a.poly, a.rel, x, &t), ctx)?;
            out.extend(and_dnf(&g, &s));
            ctx.check(&out)?;
        }
        // leading coefficient vanishes: drop it and recurse on the lower-degree equation
        let mut rest = without.clone();
        rest.extend(others.iter().cloned());
        rest.push(zer(lead.clone()));
        let lower = MPoly::from_coeffs_in(x, &cs[..cs.len() - 1]);
        rest.push(zer(lower));
        if let Some(rest) = simplify_conj(rest) {
            if lead.as_constant().is_none() {
                out.extend(eliminate_one(&rest, x, ctx)?);
            }
        }
    } else {
        out.extend(and_dnf(
            &base,
            &conj_all(&with_x, |a| subst_minus_inf(&a.poly, x), ctx)?,
        ));
        ctx.check(&out)?;
        let mut seen: Vec<Root> = vec![];
        for a in &with_x {
            for (guard, t) in roots_of(&a.poly, x) {
                if seen.contains(&t) {
                    continue;
                }
                seen.push(t.clone());
                let g = and_dnf(&base, &guard);
                if g.is_empty() {
                    continue;
                }
                let s = conj_all(&with_x, |b| subst_eps(&b.poly, x, &t), ctx)?;
                out.extend(and_dnf(&g, &s));
                ctx.check(&out)?;
            }
        }
    }
    let out = simplify_dnf(out);
    ctx.check(&out)?;
    Ok(out)
}

fn eliminate(conj: Vec<SignCondition>, bound: &[usize], ctx: &mut Ctx) -> QeResult<Dnf> {
    let Some(conj) = simplify_conj(conj) else {
        return Ok(vec![]);
    };
    let used: Vec<usize> = bound
        .iter()
        .copied()
        .filter(|&v| conj.iter().any(|a| a.poly.uses_var(v)))
        .collect();
    if used.is_empty() {
        return Ok(vec![conj]);
    }
    // prefer a variable fixed by an equation that is linear with constant coefficient
    let score = |v: usize| {
        let lin_eq = conj.iter().any(|a| {
            a.rel == Sign::Zero
                && a.poly.degree_in(v) == 1
                && a.poly.coeffs_in(v)[1].as_constant().is_some()
        });
        let maxdeg = conj.iter().map(|a| a.poly.degree_in(v)).max().unwrap_or(0);
        let occ = conj.iter().filter(|a| a.poly.uses_var(v)).count();
        (!lin_eq, maxdeg, occ)
    };
    let x = *used.iter().min_by_key(|&&v| score(v)).unwrap();
    ctx.step += 1;
    let parts = eliminate_one(&conj, x, ctx)?;
    let rest: Vec<usize> = bound.iter().copied().filter(|&v| v != x).collect();
    let mut out = vec![];
    for p in parts {
        out.extend(eliminate(p, &rest, ctx)?);
        ctx.check(&out)?;
    }
    Ok(simplify_dnf(out))
}

/// Eliminates the bound variables; the result keeps the variable indexing of the input.
pub fn qe_exists(
    set: &SemialgebraicSet,
    bound: &[usize],
    limits: QeLimits,
) -> QeResult<SemialgebraicSet> {
    let free: Vec<usize> = (0..set.num_vars)
        .filter(|v| !bound.contains(v) && set.dnf.iter().flatten().any(|a| a.poly.uses_var(*v)))
        .collect();
    if free.len() > limits.max_free_vars {
        return Err(QeUnknown(format!(
            "{} free variables exceed the limit {}",
            free.len(),
            limits.max_free_vars
        )));
    }
    let mut ctx = Ctx { limits, step: 0 };
    ctx.check(&set.dnf)?;
    let mut out = vec![];
    for conj in &set.dnf {
        out.extend(eliminate(conj.clone(), bound, &mut ctx)?);
    }
    Ok(SemialgebraicSet {
        num_vars: set.num_vars,
        dnf: simplify_dnf(out),
    })
}

/// Truth of the existential closure of the set.
pub fn decide_sentence(set: &SemialgebraicSet, limits: QeLimits) -> QeResult<bool> {
    let all: Vec<usize> = (0..set.num_vars).collect();
    let mut ctx = Ctx { limits, step: 0 };
    ctx.check(&set.dnf)?;
    for conj in &set.dnf {
        if !eliminate(conj.clone(), &all, &mut ctx)?.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One exact sample point per satisfiable disjunct.
pub fn sample_points(
    set: &SemialgebraicSet,
    limits: QeLimits,
) -> QeResult<Vec<Vec<AlgebraicNumber>>> {
    let mut out = vec![];
    for conj in &set.dnf {
        if let Some(p) = sample_conj(conj, set.num_vars, limits)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn sample_conj(
    conj: &[SignCondition],
    n: usize,
    limits: QeLimits,
) -> QeResult<Option<Vec<AlgebraicNumber>>> {
    let mut point: Vec<AlgebraicNumber> = vec![];
    let mut cur: Vec<SignCondition> = conj.to_vec();
    for v in 0..n {
        let later: Vec<usize> = (v + 1..n).collect();
        let proj = qe_exists(
            &SemialgebraicSet {
                num_vars: n,
                dnf: vec![cur.clone()],
            },
            &later,
            limits,
        )?;
        let mut chosen: Option<AlgebraicNumber> = None;
        for d in &proj.dnf {
            if let Some(c) = lift_candidate(d, &point, v, n)? {
                chosen = Some(c);
                break;
            }
        }
        let Some(c) = chosen else { return Ok(None) };
        if let Some(q) = c.as_rational() {
            cur = cur
                .iter()
                .map(|a| SignCondition {
                    poly: a.poly.subst_rational(v, &q),
                    rel: a.rel,
                })
                .collect();
        }
        point.push(c);
        cur.retain(|a| (v + 1..n).any(|w| a.poly.uses_var(w)));
    }
    Ok(Some(point))
}

/// A value for coordinate v satisfying the conjunction d (in variables up to v) above the
/// already chosen coordinates. Irrational coordinates are eliminated by resultants.
fn lift_candidate(
    d: &[SignCondition],
    point: &[AlgebraicNumber],
    v: usize,
    n: usize,
) -> QeResult<Option<AlgebraicNumber>> {
    let mut crit: Vec<IntPoly> = vec![];
    for a in d {
        let mut u = a.poly.clone();
        for (i, c) in point.iter().enumerate() {
            if u.uses_var(i) {
                u = match c.as_rational() {
                    Some(q) => u.subst_rational(i, &q),
                    None => u.resultant_with(i, c.rep_poly()),
                };
            }
        }
        if u.is_zero() {
            if a.poly.uses_var(v) {
                return Err(QeUnknown(
                    "resultant vanished while lifting a sample point".into(),
                ));
            }
            continue;
        }
        let u = u
            .to_univariate(v)
            .ok_or_else(|| QeUnknown("projection not univariate".into()))?;
        if u.degree() > 0 {
            crit.push(u);
        }
    }
    let eqs: Vec<&IntPoly> = d
        .iter()
        .zip(&crit)
        .filter(|(a, _)| a.rel == Sign::Zero)
        .map(|(_, u)| u)
        .collect();
    let polys: Vec<(IntPoly, Sign)> = if eqs.len() == d.len() && !eqs.is_empty() {
        eqs.into_iter().map(|u| (u.clone(), Sign::Zero)).collect()
    } else {
        crit.into_iter().map(|u| (u, Sign::Pos)).collect()
    };
    let mut cands = univariate_candidates(&polys);
    if polys.iter().all(|(_, r)| *r == Sign::Zero) && !polys.is_empty() {
        // candidates are common roots; keep the full root sets in case the gcd lost some
        cands.extend(
            polys
                .iter()
                .flat_map(|(p, _)| AlgebraicNumber::roots_of(p, true).unwrap_or_default()),
        );
    }
    cands.sort_by_key(|c| c.as_rational().is_none());
    let mut full: Vec<AlgebraicNumber> = point.to_vec();
    for c in cands {
        full.truncate(v);
        full.push(c.clone());
        full.extend((v + 1..n).map(|_| AlgebraicNumber::from_int(0)));
        let mut ok = true;
        for a in d {
            let s =
                super::eval::sign_at_point(&a.poly, &full).map_err(|e| QeUnknown(e.to_string()))?;
            if !a.holds(s) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
