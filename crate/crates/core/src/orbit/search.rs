//! Exhaustive search over n with exact membership.

use super::instance::{OrbitInstance, Source};
use super::system::PowerBasis;
use crate::kernel::dyadic::{Dyadic, Iv, Round};
use crate::semialg::formula::SignCondition;
use crate::semialg::{decide_sentence, MPoly, QeLimits, SemialgebraicSet};
use crate::spectral::RationalMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const PREC: u64 = 128;

/// Orbit of a rational point as integer vectors over a growing positive denominator:
/// A^n s = w_n / t_n with w_{n+1} = M w_n, t_{n+1} = d t_n and M = d A integral.
struct IntOrbit {
    m: Vec<Vec<BigInt>>,
    d: BigInt,
    w: Vec<BigInt>,
    t: BigInt,
    /// Prime factors of d when it factors by trial division; common factors of w and t can
    /// only come from these.
    primes: Option<Vec<u64>>,
}

fn small_prime_factors(d: &BigInt) -> Option<Vec<u64>> {
    let mut n = u64::try_from(d).ok()?;
    let mut ps = vec![];
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
        if p > 1 << 20 {
            return None;
        }
    }
    if n > 1 {
        ps.push(n);
    }
    Some(ps)
}

impl IntOrbit {
    fn new(a: &RationalMatrix, s: &[BigRational]) -> Self {
        let n = a.dim();
        let mut d = BigInt::one();
        for i in 0..n {
            for j in 0..n {
                d = d.lcm(a.get(i, j).denom());
            }
        }
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (a.get(i, j) * BigRational::from_integer(d.clone())).to_integer())
                    .collect()
            })
            .collect();
        let mut t = BigInt::one();
        for x in s {
            t = t.lcm(x.denom());
        }
        let w = s
            .iter()
            .map(|x| (x * BigRational::from_integer(t.clone())).to_integer())
            .collect();
        let primes = small_prime_factors(&d);
        IntOrbit { m, d, w, t, primes }
    }

    fn step(&mut self, n: u64) {
        let w: Vec<BigInt> = self
            .m
            .iter()
            .map(|row| row.iter().zip(&self.w).map(|(a, b)| a * b).sum())
            .collect();
        self.w = w;
        self.t *= &self.d;
        if self.d.is_one() {
            return;
        }
        match &self.primes {
            Some(ps) => {
                for &p in ps {
                    let p = BigInt::from(p);
                    while (&self.t % &p).is_zero() && self.w.iter().all(|x| (x % &p).is_zero()) {
                        self.w.iter_mut().for_each(|x| *x /= &p);
                        self.t /= &p;
                    }
                }
            }
            // a full gcd is quadratic in the size, so only at powers of two
            None if n.is_power_of_two() => {
                let g = self.w.iter().fold(self.t.clone(), |g, x| g.gcd(x));
                if !g.is_one() && !g.is_zero() {
                    self.w.iter_mut().for_each(|x| *x /= &g);
                    self.t /= &g;
                }
            }
            None => {}
        }
    }
}

fn iv_of(x: &BigInt, prec: u64) -> Iv {
    let d = Dyadic::from_int(x.clone());
    Iv::new(d.round(prec, Round::Down), d.round(prec, Round::Up))
}

/// p(w / t) t^deg on enclosures of w and t; None when the sign is not certain.
fn eval_homog(p: &MPoly, wi: &[Iv], ti: &Iv, prec: u64) -> Option<i32> {
    let deg = p.total_degree();
    let mut acc = Iv::zero();
    for (e, c) in p.terms() {
        let mut term = Iv::from_int(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = term.mul(&wi[i].pow(k, prec), prec);
            }
        }
        let rest = deg - e.iter().sum::<u32>();
        if rest > 0 {
            term = term.mul(&ti.pow(rest, prec), prec);
        }
        acc = acc.add(&term, prec);
    }
    acc.sign().filter(|&s| s != 0)
}

/// Exact powers of the iterate, filled in on first use and shared by all atoms at one step.
struct PowCache<'a> {
    w: &'a [BigInt],
    t: &'a BigInt,
    /// pw[i][k] = w_i^k; the last slot holds powers of t
    pw: Vec<Vec<BigInt>>,
}

impl<'a> PowCache<'a> {
    fn new(w: &'a [BigInt], t: &'a BigInt) -> Self {
        PowCache {
            w,
            t,
            pw: vec![vec![BigInt::one()]; w.len() + 1],
        }
    }

    fn get(&mut self, i: usize, k: u32) -> &BigInt {
        let base = if i < self.w.len() { &self.w[i] } else { self.t };
        let v = &mut self.pw[i];
        while v.len() <= k as usize {
            let next = v.last().unwrap() * base;
            v.push(next);
        }
        &v[k as usize]
    }
}

/// Sign of p(w / t) t^deg, by interval evaluation first and exactly if that is inconclusive.
/// Raising the interval precision instead does not pay off: the cancellation grows with n
/// almost as fast as the integers themselves.
fn sign_homog(p: &MPoly, cache: &mut PowCache, wi: &[Iv], ti: &Iv) -> i32 {
    if let Some(s) = eval_homog(p, wi, ti, PREC) {
        return s;
    }
    let deg = p.total_degree();
    let tslot = cache.w.len();
    let mut exact = BigInt::zero();
    for (e, c) in p.terms() {
        let mut term = c.clone();
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term *= cache.get(i, k);
            }
        }
        let rest = deg - e.iter().sum::<u32>();
        if rest > 0 {
            term *= cache.get(tslot, rest);
        }
        exact += term;
    }
    if exact.is_positive() {
        1
    } else if exact.is_negative() {
        -1
    } else {
        0
    }
}

fn member(set: &SemialgebraicSet, o: &IntOrbit) -> bool {
    let wi: Vec<Iv> = o.w.iter().map(|x| iv_of(x, PREC)).collect();
    let ti = iv_of(&o.t, PREC);
    let mut cache = PowCache::new(&o.w, &o.t);
    set.dnf.iter().any(|c| {
        c.iter()
            .all(|a: &SignCondition| a.holds(sign_homog(&a.poly, &mut cache, &wi, &ti)))
    })
}

/// Smallest n in [from, to] with A^n s in T.
pub fn search_point(
    a: &RationalMatrix,
    s: &[BigRational],
    t: &SemialgebraicSet,
    from: u64,
    to: u64,
) -> Option<u64> {
    let mut o = IntOrbit::new(a, s);
    for n in 0..=to {
        if n > 0 {
            o.step(n);
        }
        if n >= from && member(t, &o) {
            return Some(n);
        }
    }
    None
}

/// Membership test for set sources: c(n) in the placeholder set U, or a sentence per n.
pub enum SetOracle {
    Placeholder {
        basis: PowerBasis,
        u: SemialgebraicSet,
    },
    Sentences {
        limits: QeLimits,
    },
}

impl SetOracle {
    pub fn new(
        a: &RationalMatrix,
        s: &SemialgebraicSet,
        t: &SemialgebraicSet,
        limits: QeLimits,
    ) -> Self {
        let basis = PowerBasis::new(a);
        match basis.placeholder_set(s, t, limits) {
            Ok(u) => SetOracle::Placeholder { basis, u },
            Err(_) => SetOracle::Sentences { limits },
        }
    }

    /// Smallest n in [from, to] with (A^n S) meeting T.
    pub fn search(
        &self,
        a: &RationalMatrix,
        s: &SemialgebraicSet,
        t: &SemialgebraicSet,
        from: u64,
        to: u64,
    ) -> Result<Option<u64>, String> {
        match self {
            // c(n) is the orbit of e_0 under the companion matrix
            SetOracle::Placeholder { basis, u } => {
                let dim = u.num_vars.max(basis.rank());
                let mut e0 = vec![BigRational::zero(); dim];
                e0[0] = BigRational::one();
                Ok(search_point(&basis.companion(a, dim), &e0, u, from, to))
            }
            SetOracle::Sentences { limits } => {
                let mut an = RationalMatrix::identity(a.dim());
                for n in 0..=to {
                    if n > 0 {
                        an = an.mul(a);
                    }
                    if n >= from && set_hits_at(&an, s, t, *limits)? {
                        return Ok(Some(n));
                    }
                }
                Ok(None)
            }
        }
    }
}

/// Does A^n S meet T, given the matrix power?
pub fn set_hits_at(
    an: &RationalMatrix,
    s: &SemialgebraicSet,
    t: &SemialgebraicSet,
    limits: QeLimits,
) -> Result<bool, String> {
    let pre = t.preimage_linear(an.rows());
    decide_sentence(&s.intersect(&pre), limits).map_err(|e| e.0)
}

/// Smallest witness n in [0, n_max], exact membership throughout.
pub fn bounded_search(
    inst: &OrbitInstance,
    n_max: u64,
    limits: QeLimits,
) -> Result<Option<u64>, String> {
    match &inst.source {
        Source::Point(s) => Ok(search_point(&inst.matrix, s, &inst.target, 0, n_max)),
        Source::Set(s) => SetOracle::new(&inst.matrix, s, &inst.target, limits).search(
            &inst.matrix,
            s,
            &inst.target,
            0,
            n_max,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semialg::formula::{Formula, Rel};
    use crate::semialg::to_dnf;

    fn x(i: usize) -> MPoly {
        MPoly::var(3, i)
    }

    fn rot() -> RationalMatrix {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        RationalMatrix::new(vec![
            vec![r(3, 5), r(-4, 5), r(0, 1)],
            vec![r(4, 5), r(3, 5), r(0, 1)],
            vec![r(0, 1), r(0, 1), r(1, 1)],
        ])
        .unwrap()
    }

    fn one0() -> Vec<BigRational> {
        vec![BigRational::one(), BigRational::zero(), BigRational::zero()]
    }

    #[test]
    fn quadrant_witness() {
        let t = to_dnf(
            &Formula::And(vec![
                Formula::atom(x(0).neg(), Rel::Gt),
                Formula::atom(x(1), Rel::Gt),
            ]),
            3,
        );
        assert_eq!(search_point(&rot(), &one0(), &t, 0, 10), Some(2));
        let inst = OrbitInstance::set(rot(), SemialgebraicSet::point(&one0()), t.clone());
        assert_eq!(bounded_search(&inst, 10, QeLimits::default()), Ok(Some(2)));
        let o = SetOracle::Sentences {
            limits: QeLimits::default(),
        };
        assert_eq!(
            o.search(&rot(), &SemialgebraicSet::point(&one0()), &t, 0, 10),
            Ok(Some(2))
        );
    }

    #[test]
    fn invariant_circle_has_no_witness() {
        let c = MPoly::constant(3, 2.into());
        let t = to_dnf(
            &Formula::atom(x(0).mul(&x(0)).add(&x(1).mul(&x(1))).sub(&c), Rel::Eq),
            3,
        );
        assert_eq!(search_point(&rot(), &one0(), &t, 0, 50), None);
        // n_max = 0 looks at the start only
        let whole = SemialgebraicSet::whole(3);
        assert_eq!(search_point(&rot(), &one0(), &whole, 0, 0), Some(0));
    }
}
