//! Dyadic rationals m * 2^e and outward-rounded interval arithmetic over them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Round {
    Down,
    Up,
}

fn shl(m: &BigInt, k: u64) -> BigInt {
    m << k as usize
}

/// floor or ceil of m / 2^k
fn shr_round(m: &BigInt, k: u64, dir: Round) -> BigInt {
    let d = BigInt::one() << k as usize;
    match dir {
        Round::Down => m.div_floor(&d),
        Round::Up => -((-m).div_floor(&d)),
    }
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Dyadic { m, e: 0 };
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                m: m >> tz as usize,
                e: e + tz as i64,
            }
        } else {
            Dyadic { m, e }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// 2^e
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            m: BigInt::one(),
            e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i32 {
        crate::kernel::poly::sign_of(&self.m)
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = shl(&self.m, (self.e - e) as u64);
        let b = shl(&o.m, (o.e - e) as u64);
        Self::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.m * &o.m, self.e + o.e)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic {
            m: self.m.clone(),
            e: if self.m.is_zero() { 0 } else { self.e + k },
        }
    }

    /// Upper bound on log2 |x| (exclusive); None for zero.
    pub fn log2_ceil(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.m.bits() as i64 + self.e)
        }
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u64, dir: Round) -> Self {
        let bits = self.m.bits();
        if bits <= prec {
            return self.clone();
        }
        let k = bits - prec;
        Self::new(shr_round(&self.m, k, dir), self.e + k as i64)
    }

    /// Round to a multiple of 2^-frac.
    pub fn round_abs(&self, frac: i64, dir: Round) -> Self {
        if self.e >= -frac {
            return self.clone();
        }
        let k = (-frac - self.e) as u64;
        Self::new(shr_round(&self.m, k, dir), -frac)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(shl(&self.m, self.e as u64))
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    /// Dyadic approximation of a rational with `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u64, dir: Round) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let nb = q.numer().bits() as i64;
        let db = q.denom().bits() as i64;
        // choose k so q * 2^k has about prec + 2 bits
        let k = prec as i64 + 2 - (nb - db);
        let (num, den) = if k >= 0 {
            (shl(q.numer(), k as u64), q.denom().clone())
        } else {
            (q.numer().clone(), shl(q.denom(), (-k) as u64))
        };
        let v = match dir {
            Round::Down => num.div_floor(&den),
            Round::Up => -((-num).div_floor(&den)),
        };
        Self::new(v, -k).round(prec, dir)
    }

    pub fn div(&self, o: &Self, prec: u64, dir: Round) -> Self {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let k = prec as i64 + 2 + o.m.bits() as i64 - self.m.bits() as i64;
        let k = k.max(0);
        let num = shl(&self.m, k as u64);
        let (num, den) = if o.m.is_negative() {
            (-num, -o.m.clone())
        } else {
            (num, o.m.clone())
        };
        let v = match dir {
            Round::Down => num.div_floor(&den),
            Round::Up => -((-num).div_floor(&den)),
        };
        Self::new(v, self.e - o.e - k).round(prec, dir)
    }

    /// Square root of a nonnegative dyadic, rounded.
    pub fn sqrt(&self, prec: u64, dir: Round) -> Self {
        assert!(!self.m.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        // make exponent even and mantissa large
        let mut k = 2 * prec as i64 + 4 - self.m.bits() as i64;
        if k < 0 {
            k = 0;
        }
        if (self.e - k) % 2 != 0 {
            k += 1;
        }
        let big = shl(&self.m, k as u64);
        let mut r = big.sqrt();
        if dir == Round::Up && &r * &r != big {
            r += 1;
        }
        Self::new(r, (self.e - k) / 2).round(prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.m.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.m >> shift as usize).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.e + shift).clamp(-2000, 2000) as i32)
    }

    pub fn floor(&self) -> BigInt {
        if self.e >= 0 {
            shl(&self.m, self.e as u64)
        } else {
            shr_round(&self.m, (-self.e) as u64, Round::Down)
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).m.sign().cmp(&num_bigint::Sign::NoSign)
    }
}

/// Closed real interval with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iv {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Iv {
    pub fn point(x: Dyadic) -> Self {
        Iv {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi);
        Iv { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::point(Dyadic::from_int(n))
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        Iv {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    pub fn from_rationals(lo: &BigRational, hi: &BigRational, prec: u64) -> Self {
        Iv {
            lo: Dyadic::from_rational(lo, prec, Round::Down),
            hi: Dyadic::from_rational(hi, prec, Round::Up),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// Sign if certain.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn neg(&self) -> Self {
        Iv {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        Iv {
            lo: self.lo.add(&o.lo).round(prec, Round::Down),
            hi: self.hi.add(&o.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min().unwrap().round(prec, Round::Down);
        let hi = c.iter().max().unwrap().round(prec, Round::Up);
        Iv { lo, hi }
    }

    pub fn sqr(&self, prec: u64) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        let hi = a.clone().max(b.clone()).round(prec, Round::Up);
        let lo = if self.contains_zero() {
            Dyadic::zero()
        } else {
            a.min(b).round(prec, Round::Down)
        };
        Iv { lo, hi }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Iv {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    /// Reciprocal; None if the interval contains zero.
    pub fn recip(&self, prec: u64) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = Dyadic::from_int(1);
        Some(Iv {
            lo: one.div(&self.hi, prec, Round::Down),
            hi: one.div(&self.lo, prec, Round::Up),
        })
    }

    pub fn div(&self, o: &Self, prec: u64) -> Option<Self> {
        Some(self.mul(&o.recip(prec)?, prec))
    }

    /// Square root of the nonnegative part.
    pub fn sqrt(&self, prec: u64) -> Self {
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(prec, Round::Down)
        };
        let hi = if self.hi.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.hi.sqrt(prec, Round::Up)
        };
        Iv { lo, hi }
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            Iv {
                lo: Dyadic::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
            }
        }
    }

    /// Largest absolute value.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn hull(&self, o: &Self) -> Self {
        Iv {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn pow(&self, e: u32, prec: u64) -> Self {
        let mut r = Iv::from_int(1);
        let mut b = self.clone();
        let mut e = e;
        // odd powers keep sign information, so use plain multiplication
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, prec);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, prec);
            }
        }
        r
    }
}

/// Complex rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIv {
    pub re: Iv,
    pub im: Iv,
}

impl CIv {
    pub fn real(re: Iv) -> Self {
        CIv { re, im: Iv::zero() }
    }

    pub fn new(re: Iv, im: Iv) -> Self {
        CIv { re, im }
    }

    pub fn zero() -> Self {
        Self::real(Iv::zero())
    }

    pub fn one() -> Self {
        Self::real(Iv::from_int(1))
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        CIv {
            re: Iv::point(re),
            im: Iv::point(im),
        }
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        CIv {
            re: self.re.add(&o.re, prec),
            im: self.im.add(&o.im, prec),
        }
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        CIv {
            re: self.re.sub(&o.re, prec),
            im: self.im.sub(&o.im, prec),
        }
    }

    pub fn neg(&self) -> Self {
        CIv {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        CIv {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        let re = self
            .re
            .mul(&o.re, prec)
            .sub(&self.im.mul(&o.im, prec), prec);
        let im = self
            .re
            .mul(&o.im, prec)
            .add(&self.im.mul(&o.re, prec), prec);
        CIv { re, im }
    }

    pub fn scale(&self, s: &Iv, prec: u64) -> Self {
        CIv {
            re: self.re.mul(s, prec),
            im: self.im.mul(s, prec),
        }
    }

    pub fn norm_sq(&self, prec: u64) -> Iv {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    pub fn recip(&self, prec: u64) -> Option<Self> {
        let n = self.norm_sq(prec);
        let inv = n.recip(prec)?;
        Some(self.conj().scale(&inv, prec))
    }

    pub fn div(&self, o: &Self, prec: u64) -> Option<Self> {
        Some(self.mul(&o.recip(prec)?, prec))
    }

    /// Upper bound on the modulus.
    pub fn abs_hi(&self, prec: u64) -> Dyadic {
        let r = self.re.mag();
        let i = self.im.mag();
        r.mul(&r)
            .add(&i.mul(&i))
            .round(prec, Round::Up)
            .sqrt(prec, Round::Up)
    }

    /// Lower bound on the modulus.
    pub fn abs_lo(&self, prec: u64) -> Dyadic {
        let r = self.re.mig();
        let i = self.im.mig();
        r.mul(&r)
            .add(&i.mul(&i))
            .round(prec, Round::Down)
            .sqrt(prec, Round::Down)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn pow(&self, e: u64, prec: u64) -> Self {
        let mut r = CIv::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, prec);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, prec);
            }
        }
        r
    }

    pub fn hull(&self, o: &Self) -> Self {
        CIv {
            re: self.re.hull(&o.re),
            im: self.im.hull(&o.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn rounding_brackets_rationals() {
        for (a, b) in [(1, 3), (-7, 5), (22, 7), (-1, 1000)] {
            let x = q(a, b);
            let iv = Iv::from_rational(&x, 40);
            assert!(iv.lo.to_rational() <= x && x <= iv.hi.to_rational());
            assert!(iv.width().to_f64() < 1e-10);
        }
    }

    #[test]
    fn sqrt_brackets() {
        let two = Iv::from_int(2).sqrt(64);
        let lo = two.lo.to_rational();
        let hi = two.hi.to_rational();
        assert!(&lo * &lo <= q(2, 1) && &hi * &hi >= q(2, 1));
        assert!((two.hi.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn ordering_and_division() {
        let a = Dyadic::from_int(3);
        let b = Dyadic::from_int(-5);
        assert!(b < a);
        let lo = a.div(&b, 50, Round::Down).to_rational();
        let hi = a.div(&b, 50, Round::Up).to_rational();
        assert!(lo <= q(-3, 5) && q(-3, 5) <= hi);
    }

    #[test]
    fn complex_mul_encloses() {
        let i = CIv::point(Dyadic::zero(), Dyadic::from_int(1));
        let m = i.mul(&i, 30);
        assert_eq!(m.re.sign(), Some(-1));
        assert!(m.im.contains_zero());
    }
}
