//! Certified thresholds: decay of c q^n n^e, Weil heights and the Baker-type gap exponent.

use crate::error::{Error, Result};
use crate::kernel::dyadic::{Dyadic, Iv, Round};
use crate::kernel::isolate::{isolate_complex, refine_disc};
use crate::kernel::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;

const PREC: u64 = 128;

/// Upper bound of c q^n n^e.
fn decay_value(c: &Dyadic, q: &Dyadic, e: u32, n: u64) -> Dyadic {
    let qn = Iv::point(q.clone()).pow(n as u32, PREC);
    let ne = Iv::from_int(BigInt::from(n)).pow(e, PREC);
    Iv::point(c.clone()).mul(&qn, PREC).mul(&ne, PREC).hi
}

/// Least n0 such that c q^n n^e < target for every n >= n0, where 0 <= q < 1. The search starts
/// at the point past which n^e q^n decreases, so the answer may be larger than necessary.
/// `None` when the threshold exceeds `cap` (at most 2^32).
pub fn decay_threshold(c: &Dyadic, q: &Dyadic, e: u32, target: &Dyadic, cap: u64) -> Option<u64> {
    let cap = cap.min(u32::MAX as u64);
    if c.signum() <= 0 || q.signum() <= 0 {
        return Some(1);
    }
    let one = Dyadic::from_int(1);
    if *q >= one {
        return None;
    }
    // ln(1/q) >= 1 - q, so n >= e / (1 - q) is past the peak
    let gap = one.sub(q);
    let peak: BigInt = Dyadic::from_int(e).div(&gap, 64, Round::Up).floor() + 1;
    let peak: u64 = peak.try_into().ok()?;
    let start = peak.max(1);
    if start > cap {
        return None;
    }
    let holds = |n: u64| decay_value(c, q, e, n) < *target;
    if holds(start) {
        return Some(start);
    }
    let mut lo = start;
    let mut hi = start.max(2);
    while !holds(hi) {
        lo = hi;
        hi = hi.checked_mul(2)?;
        if hi > cap {
            if holds(cap) {
                hi = cap;
                break;
            }
            return None;
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

fn ln2() -> Iv {
    Iv::from_rationals(
        &BigRational::new(693147.into(), 1000000.into()),
        &BigRational::new(693148.into(), 1000000.into()),
        PREC,
    )
}

/// Lower and upper bounds of ln(x) for x >= 1, from x = 2^k y with y in [1, 2) and
/// (u - 1)/u <= ln u <= u - 1.
pub fn ln_bounds(x: &Dyadic) -> (Dyadic, Dyadic) {
    let one = Dyadic::from_int(1);
    if *x <= one {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let mut k = x.log2_ceil().unwrap_or(0) - 1;
    while x.mul_pow2(-k) < one {
        k -= 1;
    }
    // ln y = 2^s ln(y^(2^-s)), and the elementary bounds are tight near 1
    let s = 10;
    let mut y = Iv::point(x.mul_pow2(-k));
    for _ in 0..s {
        y = y.sqrt(PREC);
    }
    let y1 = y.sub(&Iv::from_int(1), PREC);
    let kl = ln2().mul(&Iv::from_int(k), PREC);
    let lo = kl
        .add(&y1.div(&y, PREC).expect("y >= 1").mul_pow2(s), PREC)
        .lo;
    let hi = kl.add(&y1.mul_pow2(s), PREC).hi;
    (lo.max(Dyadic::zero()), hi)
}

/// Bounds on the Mahler measure of a square-free integer polynomial from certified root
/// enclosures of radius at most 2^-prec.
pub fn mahler_bounds(p: &IntPoly, prec: u64) -> Result<(Dyadic, Dyadic)> {
    let lc = Dyadic::from_int(p.lc()).abs();
    let one = Dyadic::from_int(1);
    let (mut lo, mut hi) = (lc.clone(), lc);
    let target = Dyadic::pow2(-(prec as i64));
    for d in isolate_complex(p)? {
        let d = refine_disc(p, &d, &target)?;
        let e = d.enclosure();
        lo = lo.mul(&e.abs_lo(PREC).max(one.clone()));
        hi = hi.mul(&e.abs_hi(PREC).max(one.clone()));
    }
    Ok((lo, hi))
}

/// Positive lower bound of the absolute logarithmic Weil height ln M(p) / deg p of the root of an
/// irreducible integer polynomial that is not a cyclotomic factor.
pub fn height_lower(min_poly: &IntPoly) -> Result<Dyadic> {
    let deg = Dyadic::from_int(min_poly.degree() as i64);
    let mut prec = 32;
    while prec <= 4096 {
        let (lo, _) = mahler_bounds(min_poly, prec)?;
        let (l, _) = ln_bounds(&lo);
        if l.signum() > 0 {
            return Ok(l.div(&deg, PREC, Round::Down));
        }
        prec *= 2;
    }
    Err(Error::PrecisionCap("height lower bound"))
}

/// Upper bound of ln M(p).
pub fn log_mahler_upper(p: &IntPoly) -> Result<Dyadic> {
    let (_, hi) = mahler_bounds(p, 16)?;
    Ok(ln_bounds(&hi).1)
}

/// Size measure ceil(log2(deg + 1)) of an algebraic number of the given degree.
pub fn size_measure(deg: usize) -> u64 {
    let mut k = 0u64;
    while (1u64 << k) < deg as u64 + 1 {
        k += 1;
    }
    k
}

/// Exponent E in the gap |gamma^n - xi| >= n^-E: (size(gamma) + size(xi))^d.
pub fn baker_exponent(deg_gamma: usize, deg_xi: usize, d: u32) -> u64 {
    (size_measure(deg_gamma) + size_measure(deg_xi)).pow(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decay_examples() {
        let half = Dyadic::pow2(-1);
        // 2^-n < 1/1000 from n = 10 on
        let n = decay_threshold(
            &Dyadic::from_int(1),
            &half,
            0,
            &Dyadic::new(1.into(), -10).add(&Dyadic::pow2(-20)),
            1 << 20,
        )
        .unwrap();
        assert_eq!(n, 10);
        // 100 n^2 2^-n < 1
        let n = decay_threshold(
            &Dyadic::from_int(100),
            &half,
            2,
            &Dyadic::from_int(1),
            1 << 20,
        )
        .unwrap();
        assert!(100.0 * (n as f64).powi(2) * 0.5f64.powi(n as i32) < 1.0);
        assert!(100.0 * ((n - 1) as f64).powi(2) * 0.5f64.powi(n as i32 - 1) >= 1.0);
        assert_eq!(
            decay_threshold(&Dyadic::from_int(1), &Dyadic::from_int(1), 0, &half, 100),
            None
        );
    }

    #[test]
    fn logs_and_heights() {
        for x in [1.5f64, 2.0, 3.0, 100.0, 12345.678] {
            let (lo, hi) = ln_bounds(&crate::kernel::isolate::f64_dyadic(x));
            assert!(lo.to_f64() <= x.ln() && x.ln() <= hi.to_f64(), "{x}");
            assert!(
                hi.to_f64() - lo.to_f64() < 1e-2,
                "{x} {} {}",
                lo.to_f64(),
                hi.to_f64()
            );
        }
        // (3 + 4i)/5 has minimal polynomial 5z^2 - 6z + 5 and height ln 5 / 2
        let h = height_lower(&IntPoly::from_i64(&[5, -6, 5]))
            .unwrap()
            .to_f64();
        assert!(h > 0.0 && h <= 5f64.ln() / 2.0);
        assert_eq!(size_measure(1), 1);
        assert_eq!(size_measure(3), 2);
        assert_eq!(size_measure(4), 3);
        assert_eq!(baker_exponent(2, 3, 3), 64);
    }
}
