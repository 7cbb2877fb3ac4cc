//! Root isolation: Descartes bisection for real roots, Aberth iteration with
//! Pellet-test certification for complex roots.

use super::dyadic::{CIv, Dyadic, Iv, Round};
use super::poly::IntPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const MAX_PREC: u64 = 1 << 15;

// ---------------------------------------------------------------- real roots

fn sign_variations(c: &[BigInt]) -> usize {
    let mut last = 0;
    let mut v = 0;
    for x in c {
        let s = super::poly::sign_of(x);
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Upper bound on the number of roots of q in (0, 1).
fn descartes01(q: &IntPoly) -> usize {
    sign_variations(q.reverse().shift(&BigInt::one()).coeffs())
}

/// Isolating intervals for the real roots of a square-free polynomial, in increasing order.
/// Each entry is either a degenerate interval holding an exact rational root, or an open
/// interval (lo, hi) with exactly one root and p(lo) p(hi) < 0.
pub fn real_root_intervals(p: &IntPoly) -> Vec<(BigRational, BigRational)> {
    if p.degree() == 0 {
        return vec![];
    }
    let b = p.root_bound();
    let two = BigInt::from(2);
    // q(x) = p(2B x - B) maps (0,1) onto (-B, B)
    let q0 = p.shift(&-&b).scale_var(&(&two * &b), &BigInt::one());
    let mut out = vec![];
    let lo0 = BigRational::from_integer(-&b);
    let w0 = BigRational::from_integer(&two * &b);
    let mut stack = vec![(q0, lo0, w0)];
    while let Some((q, lo, w)) = stack.pop() {
        let v = descartes01(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push((lo.clone(), &lo + &w));
            continue;
        }
        let half = &w / BigRational::from_integer(two.clone());
        let mid = &lo + &half;
        let mut ql = q.scale_var(&BigInt::one(), &two);
        if ql.eval_int(&BigInt::one()).is_zero() {
            out.push((mid.clone(), mid.clone()));
            ql = ql
                .div_exact(&IntPoly::from_i64(&[-1, 1]))
                .expect("root at 1");
        }
        let qr = ql.shift(&BigInt::one());
        stack.push((ql, lo, half.clone()));
        stack.push((qr, mid, half));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    // rational roots found at bisection points may sit on the ends of neighbouring intervals
    let two = BigRational::from_integer(2.into());
    for (lo, hi) in out.iter_mut() {
        while lo != hi && (p.sign_at(lo) == 0 || p.sign_at(hi) == 0) {
            let slo = side_sign(p, lo);
            let m = (&*lo + &*hi) / &two;
            let s = p.sign_at(&m);
            if s == 0 {
                *lo = m.clone();
                *hi = m;
            } else if s == slo {
                *lo = m;
            } else {
                *hi = m;
            }
        }
    }
    out
}

/// Sign of a square-free p just to the right of x.
fn side_sign(p: &IntPoly, x: &BigRational) -> i32 {
    match p.sign_at(x) {
        0 => p.derivative().sign_at(x),
        s => s,
    }
}

/// Shrinks an isolating interval of a square-free polynomial by bisection until narrower than `w`.
pub fn refine_real_interval(
    p: &IntPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    w: &BigRational,
) -> (BigRational, BigRational) {
    if lo == hi {
        return (lo, hi);
    }
    let slo = side_sign(p, &lo);
    let two = BigRational::from_integer(2.into());
    while &hi - &lo >= *w {
        let m = (&lo + &hi) / &two;
        let s = p.sign_at(&m);
        if s == 0 {
            return (m.clone(), m);
        }
        if s == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    (lo, hi)
}

// ------------------------------------------------------- coefficient sources

/// A polynomial whose coefficients can be enclosed to any precision.
pub trait CoeffSource {
    fn degree(&self) -> usize;
    /// Enclosures of the coefficients, low degree first.
    fn coeffs_at(&self, prec: u64) -> Vec<CIv>;
}

impl CoeffSource for IntPoly {
    fn degree(&self) -> usize {
        IntPoly::degree(self)
    }
    fn coeffs_at(&self, _prec: u64) -> Vec<CIv> {
        self.coeffs()
            .iter()
            .map(|c| CIv::real(Iv::from_int(c.clone())))
            .collect()
    }
}

/// Certified disc in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disc {
    pub re: Dyadic,
    pub im: Dyadic,
    pub r: Dyadic,
}

impl Disc {
    pub fn center(&self) -> CIv {
        CIv::point(self.re.clone(), self.im.clone())
    }

    /// Complex rectangle enclosing the disc.
    pub fn enclosure(&self) -> CIv {
        CIv::new(
            Iv::new(self.re.sub(&self.r), self.re.add(&self.r)),
            Iv::new(self.im.sub(&self.r), self.im.add(&self.r)),
        )
    }

    /// Squared distance between centers.
    fn center_dist_sq(&self, o: &Disc) -> Dyadic {
        let dx = self.re.sub(&o.re);
        let dy = self.im.sub(&o.im);
        dx.mul(&dx).add(&dy.mul(&dy))
    }

    pub fn disjoint(&self, o: &Disc) -> bool {
        let s = self.r.add(&o.r);
        self.center_dist_sq(o) > s.mul(&s)
    }

    pub fn intersects(&self, o: &Disc) -> bool {
        !self.disjoint(o)
    }

    pub fn contains_disc(&self, o: &Disc) -> bool {
        // |c - c'| + r' <= r
        let slack = self.r.sub(&o.r);
        if slack.signum() < 0 {
            return false;
        }
        self.center_dist_sq(o) <= slack.mul(&slack)
    }

    /// Does the disc contain the rectangle's center region entirely inside? Conservative test
    /// whether a rectangle meets the disc.
    pub fn meets_box(&self, b: &CIv) -> bool {
        let cx = clamp(&self.re, &b.re);
        let cy = clamp(&self.im, &b.im);
        let dx = self.re.sub(&cx);
        let dy = self.im.sub(&cy);
        dx.mul(&dx).add(&dy.mul(&dy)) <= self.r.mul(&self.r)
    }
}

fn clamp(x: &Dyadic, iv: &Iv) -> Dyadic {
    if x < &iv.lo {
        iv.lo.clone()
    } else if x > &iv.hi {
        iv.hi.clone()
    } else {
        x.clone()
    }
}

/// Taylor coefficients q_j = p^(j)(c)/j! by repeated synthetic division.
fn taylor_at(coeffs: &[CIv], c: &CIv, prec: u64) -> Vec<CIv> {
    let mut a = coeffs.to_vec();
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // evaluate a[k..] at c with synthetic division, leaving quotient in place
        for j in (k..n - 1).rev() {
            let t = a[j + 1].mul(c, prec);
            a[j] = a[j].add(&t, prec);
        }
        out.push(a[k].clone());
    }
    out
}

/// Pellet test: certifies that the disc holds exactly `k` roots (k = 0 or 1), counted with
/// multiplicity, with none on its boundary.
pub fn pellet(coeffs: &[CIv], disc: &Disc, k: usize, prec: u64) -> bool {
    let q = taylor_at(coeffs, &disc.center(), prec);
    if disc.r.is_zero() {
        return false;
    }
    let mut lhs = Dyadic::zero();
    let mut rhs = Dyadic::zero();
    let mut rp = Dyadic::from_int(1);
    for (j, qj) in q.iter().enumerate() {
        if j == k {
            lhs = qj.abs_lo(prec).mul(&rp).round(prec, Round::Down);
        } else {
            rhs = rhs.add(&qj.abs_hi(prec).mul(&rp)).round(prec, Round::Up);
        }
        rp = rp.mul(&disc.r).round(prec, Round::Up);
    }
    lhs > rhs
}

// ---------------------------------------------------------- approximate complex

#[derive(Clone, Debug)]
struct C {
    re: Dyadic,
    im: Dyadic,
}

impl C {
    fn add(&self, o: &C) -> C {
        C {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
    fn sub(&self, o: &C) -> C {
        C {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
    fn mul(&self, o: &C, p: u64) -> C {
        C {
            re: self
                .re
                .mul(&o.re)
                .sub(&self.im.mul(&o.im))
                .round(p, Round::Down),
            im: self
                .re
                .mul(&o.im)
                .add(&self.im.mul(&o.re))
                .round(p, Round::Down),
        }
    }
    fn norm_sq(&self, p: u64) -> Dyadic {
        self.re
            .mul(&self.re)
            .add(&self.im.mul(&self.im))
            .round(p, Round::Down)
    }
    fn div(&self, o: &C, p: u64) -> Option<C> {
        let n = o.norm_sq(p);
        if n.is_zero() {
            return None;
        }
        let num = C {
            re: o.re.clone(),
            im: o.im.neg(),
        };
        let t = self.mul(&num, p);
        Some(C {
            re: t.re.div(&n, p, Round::Down),
            im: t.im.div(&n, p, Round::Down),
        })
    }
    fn round(&self, p: u64) -> C {
        C {
            re: self.re.round(p, Round::Down),
            im: self.im.round(p, Round::Down),
        }
    }
}

fn mid(c: &CIv) -> C {
    C {
        re: c.re.mid(),
        im: c.im.mid(),
    }
}

/// p(z) and p'(z) at an approximate point.
fn eval_pd(coeffs: &[C], z: &C, prec: u64) -> (C, C) {
    let zero = C {
        re: Dyadic::zero(),
        im: Dyadic::zero(),
    };
    let mut p = zero.clone();
    let mut d = zero;
    for c in coeffs.iter().rev() {
        d = d.mul(z, prec).add(&p);
        p = p.mul(z, prec).add(c);
    }
    (p.round(prec), d.round(prec))
}

/// Rough modulus bound for initial Aberth points: 1 + max |a_i / a_d| as an f64 estimate.
fn initial_radius(coeffs: &[C]) -> f64 {
    let d = coeffs.len() - 1;
    let ld = coeffs[d].norm_sq(64).to_f64().sqrt();
    let mut r: f64 = 0.0;
    for (i, c) in coeffs[..d].iter().enumerate() {
        let a = c.norm_sq(64).to_f64().sqrt() / ld;
        if a > 0.0 {
            r = r.max(a.powf(1.0 / (d - i) as f64));
        }
    }
    (2.0 * r).max(1e-3)
}

fn aberth(coeffs: &[C], z: &mut [C], prec: u64, iters: usize) {
    let n = z.len();
    let tol_exp = -(prec as i64) / 2;
    for _ in 0..iters {
        let mut moved = false;
        for i in 0..n {
            let (p, d) = eval_pd(coeffs, &z[i], prec);
            if p.re.is_zero() && p.im.is_zero() {
                continue;
            }
            let Some(w) = p.div(&d, prec) else {
                // perturb away from a critical point
                z[i].re = z[i].re.add(&Dyadic::pow2(-20));
                moved = true;
                continue;
            };
            let mut s = C {
                re: Dyadic::zero(),
                im: Dyadic::zero(),
            };
            let unit = C {
                re: Dyadic::from_int(1),
                im: Dyadic::zero(),
            };
            for j in 0..n {
                if j != i {
                    if let Some(t) = unit.div(&z[i].sub(&z[j]), prec) {
                        s = s.add(&t);
                    }
                }
            }
            let one = C {
                re: Dyadic::from_int(1),
                im: Dyadic::zero(),
            };
            let den = one.sub(&w.mul(&s, prec));
            let step = w.div(&den, prec).unwrap_or(w);
            let mag = step.norm_sq(prec);
            let zm = z[i].norm_sq(prec).add(&Dyadic::from_int(1));
            // relative step size
            if let (Some(a), Some(b)) = (mag.log2_ceil(), zm.log2_ceil()) {
                if a - b > 2 * tol_exp {
                    moved = true;
                }
            }
            z[i] = z[i].sub(&step).round(prec);
        }
        if !moved {
            break;
        }
    }
}

/// Newton-step radius |p/p'| as an upper-rounded dyadic, from certified enclosures.
fn newton_radius(coeffs: &[CIv], c: &CIv, prec: u64) -> Option<Dyadic> {
    let q = taylor_at(&coeffs[..coeffs.len().min(coeffs.len())], c, prec);
    let q0 = q[0].abs_hi(prec);
    let q1 = q.get(1)?.abs_lo(prec);
    if q1.is_zero() {
        return None;
    }
    Some(q0.div(&q1, prec, Round::Up))
}

fn try_certify(coeffs: &[CIv], z: &C, prec: u64) -> Option<Disc> {
    let c = CIv::point(z.re.clone(), z.im.clone());
    let rho = newton_radius(coeffs, &c, prec)?;
    let scale = z.re.abs().max(z.im.abs()).add(&Dyadic::from_int(1));
    let floor = scale.mul(&Dyadic::pow2(-(prec as i64) + 16));
    for mult in [2i64, 4, 16] {
        let r = rho
            .mul(&Dyadic::from_int(mult))
            .add(&floor)
            .round(32, Round::Up);
        let d = Disc {
            re: z.re.clone(),
            im: z.im.clone(),
            r,
        };
        if pellet(coeffs, &d, 1, prec) {
            return Some(d);
        }
    }
    None
}

/// Certified isolating discs for all roots of a square-free polynomial.
pub fn isolate_complex<S: CoeffSource + ?Sized>(src: &S) -> Result<Vec<Disc>> {
    let d = src.degree();
    if d == 0 {
        return Ok(vec![]);
    }
    let mut prec = 64u64;
    let mut z: Vec<C> = vec![];
    while prec <= MAX_PREC {
        let ci = src.coeffs_at(prec + 32);
        let cm: Vec<C> = ci.iter().map(mid).collect();
        if z.is_empty() {
            let r = initial_radius(&cm);
            z = (0..d)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.4;
                    C {
                        re: f64_dyadic(r * t.cos()),
                        im: f64_dyadic(r * t.sin()),
                    }
                })
                .collect();
        }
        aberth(&cm, &mut z, prec, 40 + 8 * d);
        let discs: Vec<Option<Disc>> = z.iter().map(|zi| try_certify(&ci, zi, prec + 32)).collect();
        if discs.iter().all(|x| x.is_some()) {
            let discs: Vec<Disc> = discs.into_iter().map(|x| x.unwrap()).collect();
            let mut ok = true;
            'outer: for i in 0..d {
                for j in i + 1..d {
                    if !discs[i].disjoint(&discs[j]) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                return Ok(discs);
            }
        }
        prec *= 2;
    }
    Err(Error::PrecisionCap("complex root isolation"))
}

pub fn f64_dyadic(x: f64) -> Dyadic {
    if x == 0.0 || !x.is_finite() {
        return Dyadic::zero();
    }
    // scale into [2^52, 2^53) so the mantissa fits an i64 for any magnitude
    let e = x.abs().log2().floor() as i32;
    let m = (x * 2f64.powi(52 - e)).round() as i64;
    Dyadic::new(BigInt::from(m), (e - 52) as i64)
}

/// Refines a certified isolating disc until its radius is below `target`. The result is
/// certified to contain the same root.
pub fn refine_disc<S: CoeffSource + ?Sized>(src: &S, disc: &Disc, target: &Dyadic) -> Result<Disc> {
    if disc.r <= *target {
        return Ok(disc.clone());
    }
    let need = target.log2_ceil().map(|e| (-e).max(0) as u64).unwrap_or(64);
    let mut prec = (need + 64).max(64);
    let mut cur = disc.clone();
    while prec <= MAX_PREC * 4 {
        let ci = src.coeffs_at(prec + 32);
        let cm: Vec<C> = ci.iter().map(mid).collect();
        let mut z = C {
            re: cur.re.clone(),
            im: cur.im.clone(),
        };
        for _ in 0..200 {
            let (p, dp) = eval_pd(&cm, &z, prec);
            let Some(step) = p.div(&dp, prec) else { break };
            z = z.sub(&step).round(prec);
            let small = step
                .norm_sq(prec)
                .log2_ceil()
                .is_none_or(|e| e < 2 * (-(prec as i64) + 8));
            if small {
                break;
            }
        }
        if let Some(nd) = try_certify(&ci, &z, prec + 32) {
            let same = cur.contains_disc(&nd) || {
                // enlarge the old disc just enough to cover the new one and re-certify
                let dx = cur.re.sub(&nd.re);
                let dy = cur.im.sub(&nd.im);
                let dist = dx.mul(&dx).add(&dy.mul(&dy)).sqrt(64, Round::Up);
                let big = Disc {
                    re: cur.re.clone(),
                    im: cur.im.clone(),
                    r: dist.add(&nd.r).max(cur.r.clone()),
                };
                big.r <= cur.r.mul_pow2(1) && pellet(&ci, &big, 1, prec + 32)
            };
            if same && nd.r < cur.r {
                cur = nd;
                if cur.r <= *target {
                    return Ok(cur);
                }
                continue;
            }
        }
        prec *= 2;
    }
    Err(Error::PrecisionCap("disc refinement"))
}

/// For a polynomial with real coefficients: is the isolated root real? Uses conjugate symmetry:
/// an isolating disc that misses the real axis holds a non-real root; one centered on the axis
/// holds a real root.
pub fn disc_is_real<S: CoeffSource + ?Sized>(src: &S, disc: &Disc) -> Result<bool> {
    let mut d = disc.clone();
    loop {
        if d.im.abs() > d.r {
            return Ok(false);
        }
        let on_axis = Disc {
            re: d.re.clone(),
            im: Dyadic::zero(),
            r: d.r.add(&d.im.abs()),
        };
        let prec = 64 + d.r.log2_ceil().map(|e| (-e).max(0) as u64).unwrap_or(0);
        if on_axis.r <= disc.r.mul_pow2(1)
            && pellet(&src.coeffs_at(prec + 32), &on_axis, 1, prec + 32)
        {
            // conjugate of the root lies in the mirrored disc, which is this disc; uniqueness
            // forces the root to be real
            return Ok(true);
        }
        let t = d.r.mul_pow2(-4);
        d = refine_disc(src, &d, &t)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn real_intervals_sqrt2() {
        let r = real_root_intervals(&p(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        let two = BigRational::from_integer(2.into());
        for (lo, hi) in &r {
            assert!(lo < hi);
            assert!(p(&[-2, 0, 1]).sign_at(lo) * p(&[-2, 0, 1]).sign_at(hi) < 0);
            assert!(lo * lo < two || hi * hi < two);
        }
    }

    #[test]
    fn real_intervals_rational_roots() {
        let r = real_root_intervals(&p(&[-2, 7, -7, 2]));
        assert_eq!(r.len(), 3);
        let r = real_root_intervals(&p(&[0, -1, 0, 1]));
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn complex_discs_cover_all_roots() {
        for c in [
            vec![1, 0, 1],
            vec![25, -30, 25],
            vec![-1, 0, 0, 0, 0, 1],
            vec![1, 1, 1, 1, 1, 1, 1],
        ] {
            let q = p(&c);
            let discs = isolate_complex(&q).unwrap();
            assert_eq!(discs.len(), q.degree());
        }
    }

    #[test]
    fn close_roots_separate() {
        // (x - 1)(x - 1 - 2^-20)(x^2 + 1), scaled to integers
        let a = p(&[-1, 1]);
        let b = IntPoly::new(vec![
            -BigInt::from((1i64 << 20) + 1),
            BigInt::from(1i64 << 20),
        ]);
        let q = a.mul(&b).mul(&p(&[1, 0, 1]));
        let discs = isolate_complex(&q).unwrap();
        assert_eq!(discs.len(), 4);
        let reals: Vec<bool> = discs.iter().map(|d| disc_is_real(&q, d).unwrap()).collect();
        assert_eq!(reals.iter().filter(|&&r| r).count(), 2);
    }

    #[test]
    fn refinement_shrinks() {
        let q = p(&[25, -30, 25]);
        let discs = isolate_complex(&q).unwrap();
        let t = Dyadic::pow2(-200);
        for d in &discs {
            let n = refine_disc(&q, d, &t).unwrap();
            assert!(n.r <= t);
            assert!(d.intersects(&n));
            assert!((n.re.to_f64() - 0.6).abs() < 1e-12);
        }
    }
}
