//! Brute-force reference: iterate the orbit and test membership step by step.
//!
//! Nothing here goes through the spectral or eventual analysis, so the oracle can be used
//! to cross-check verdicts of the decision procedure on a finite horizon.

use crate::kernel::dyadic::Iv;
use crate::orbit::{OrbitInstance, Source};
use crate::semialg::{decide_sentence, MPoly, QeLimits, SemialgebraicSet};
use crate::spectral::RationalMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

const START_PREC: u64 = 128;
const MAX_PREC: u64 = 8192;
/// Up to this many steps the iterate is computed exactly and then enclosed.
const EXACT_STEPS: u64 = 64;

/// Enclosure of an orbit point, one interval per coordinate.
#[derive(Clone, Debug)]
pub struct IntervalBox3 {
    pub coords: Vec<Iv>,
}

impl IntervalBox3 {
    pub fn from_exact(x: &[BigRational], prec: u64) -> Self {
        IntervalBox3 {
            coords: x.iter().map(|c| Iv::from_rational(c, prec)).collect(),
        }
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.coords
            .iter()
            .zip(x)
            .all(|(iv, c)| iv.lo.to_rational() <= *c && *c <= iv.hi.to_rational())
    }

    fn step(&self, a: &[Vec<Iv>], prec: u64) -> Self {
        let coords = a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.coords)
                    .fold(Iv::zero(), |acc, (m, v)| acc.add(&m.mul(v, prec), prec))
            })
            .collect();
        IntervalBox3 { coords }
    }
}

fn interval_matrix(a: &RationalMatrix, prec: u64) -> Vec<Vec<Iv>> {
    a.rows()
        .iter()
        .map(|r| r.iter().map(|x| Iv::from_rational(x, prec)).collect())
        .collect()
}

/// Enclosure of A^n s. Exact below 65 steps, interval iteration beyond.
pub fn iterate_interval(a: &RationalMatrix, s: &[BigRational], n: u64, prec: u64) -> IntervalBox3 {
    if n <= EXACT_STEPS {
        return IntervalBox3::from_exact(&a.pow(n).apply(s), prec);
    }
    let am = interval_matrix(a, prec);
    let mut b = IntervalBox3::from_exact(&a.pow(EXACT_STEPS).apply(s), prec);
    for _ in EXACT_STEPS..n {
        b = b.step(&am, prec);
    }
    b
}

fn eval_iv(p: &MPoly, x: &[Iv], prec: u64) -> Iv {
    p.terms().fold(Iv::zero(), |acc, (e, c)| {
        let t = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .fold(Iv::from_int(c.clone()), |t, (i, &k)| {
                t.mul(&x[i].pow(k, prec), prec)
            });
        acc.add(&t, prec)
    })
}

/// Membership decided on the enclosure alone, None when some sign is not certain.
fn member_iv(set: &SemialgebraicSet, b: &IntervalBox3, prec: u64) -> Option<bool> {
    let mut undecided = false;
    for conj in &set.dnf {
        let mut all = Some(true);
        for a in conj {
            match eval_iv(&a.poly, &b.coords, prec).sign() {
                Some(s) if !a.holds(s) => {
                    all = Some(false);
                    break;
                }
                Some(_) => {}
                None => all = None,
            }
        }
        match all {
            Some(true) => return Some(true),
            None => undecided = true,
            Some(false) => {}
        }
    }
    if undecided {
        None
    } else {
        Some(false)
    }
}

/// Exact iterate kept as an integer vector over a common denominator, so steps need no gcd.
struct ScaledIterate {
    m: Vec<Vec<BigInt>>,
    d: BigInt,
    v: Vec<BigInt>,
    den: BigInt,
    n: u64,
}

impl ScaledIterate {
    fn new(a: &RationalMatrix, s: &[BigRational]) -> Self {
        let d = a
            .rows()
            .iter()
            .flatten()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let m = a
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.numer() * (&d / x.denom())).collect())
            .collect();
        let den = s.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let v = s.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        ScaledIterate { m, d, v, den, n: 0 }
    }

    fn advance_to(&mut self, n: u64) {
        while self.n < n {
            self.v = self
                .m
                .iter()
                .map(|row| row.iter().zip(&self.v).map(|(a, b)| a * b).sum())
                .collect();
            self.den *= &self.d;
            self.n += 1;
        }
    }

    fn point(&self) -> Vec<BigRational> {
        self.v
            .iter()
            .map(|x| BigRational::new(x.clone(), self.den.clone()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// The first step that lands in the target.
    Hit(u64),
    /// No step in 0..=horizon lands in the target.
    Miss {
        horizon: u64,
    },
    Undetermined(String),
}

/// Tries every n in 0..=horizon. Point sources are iterated with intervals, falling back to
/// exact rationals on uncertain signs; set sources decide one sentence per step.
pub fn brute_force_decide(inst: &OrbitInstance, horizon: u64, limits: QeLimits) -> OracleVerdict {
    match &inst.source {
        Source::Point(s) => point_search(&inst.matrix, s, &inst.target, horizon),
        Source::Set(s) => set_search(&inst.matrix, s, &inst.target, horizon, limits),
    }
}

fn point_search(
    a: &RationalMatrix,
    s: &[BigRational],
    t: &SemialgebraicSet,
    horizon: u64,
) -> OracleVerdict {
    let mut prec = START_PREC;
    let mut am = interval_matrix(a, prec);
    let mut b = IntervalBox3::from_exact(s, prec);
    // exact iterate, advanced only when the enclosure is not enough
    let mut exact = ScaledIterate::new(a, s);
    for n in 0..=horizon {
        if n > 0 {
            b = b.step(&am, prec);
        }
        let hit = match member_iv(t, &b, prec) {
            Some(h) => h,
            None => {
                // uncertain: fall back to the exact point and re-seed the enclosure from it
                exact.advance_to(n);
                let x = exact.point();
                let mut res = None;
                let mut p = prec;
                while p <= MAX_PREC && res.is_none() {
                    res = member_iv(t, &IntervalBox3::from_exact(&x, p), p);
                    p *= 2;
                }
                let h = res.unwrap_or_else(|| t.contains_rat(&x));
                prec = (prec * 2).min(MAX_PREC);
                am = interval_matrix(a, prec);
                b = IntervalBox3::from_exact(&x, prec);
                h
            }
        };
        if hit {
            return OracleVerdict::Hit(n);
        }
    }
    OracleVerdict::Miss { horizon }
}

fn set_search(
    a: &RationalMatrix,
    s: &SemialgebraicSet,
    t: &SemialgebraicSet,
    horizon: u64,
    limits: QeLimits,
) -> OracleVerdict {
    let mut an = RationalMatrix::identity(a.dim());
    for n in 0..=horizon {
        if n > 0 {
            an = a.mul(&an);
        }
        match decide_sentence(&t.preimage_linear(an.rows()).intersect(s), limits) {
            Ok(true) => return OracleVerdict::Hit(n),
            Ok(false) => {}
            Err(e) => return OracleVerdict::Undetermined(format!("step {n}: {e}")),
        }
    }
    OracleVerdict::Miss { horizon }
}
