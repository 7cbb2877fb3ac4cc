//! Algebraic numbers: a square-free integer polynomial plus a certified isolating region.

use super::dyadic::{CIv, Dyadic, Iv, Round};
use super::isolate::{self, Disc};
use super::poly::{resultant, IntPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

/// Disc in the complex plane with rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingBox {
    pub center_re: BigRational,
    pub center_im: BigRational,
    pub radius: BigRational,
}

#[derive(Clone, Debug)]
enum Loc {
    Exact(BigRational),
    /// open interval with exactly one root and a sign change
    Real(BigRational, BigRational),
    Complex(Disc),
}

/// Root of a square-free primitive integer polynomial, pinned down by a region holding no
/// other root. Refinements are cached.
pub struct AlgebraicNumber {
    rep: IntPoly,
    minimal: bool,
    loc: Mutex<Loc>,
}

impl Clone for AlgebraicNumber {
    fn clone(&self) -> Self {
        AlgebraicNumber {
            rep: self.rep.clone(),
            minimal: self.minimal,
            loc: Mutex::new(self.loc()),
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.enclose(40);
        write!(
            f,
            "Alg[{} ~ {:.12}{:+.12}i]",
            self.rep,
            b.re.mid().to_f64(),
            b.im.mid().to_f64()
        )
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let b = self.enclose(60);
        let (re, im) = (b.re.mid().to_f64(), b.im.mid().to_f64());
        if self.is_real() {
            write!(f, "root of {} near {re:.15}", self.rep)
        } else {
            write!(f, "root of {} near {re:.15}{im:+.15}i", self.rep)
        }
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pow2_rat(e: i64) -> BigRational {
    Dyadic::pow2(e).to_rational()
}

fn guess_minimal(p: &IntPoly) -> bool {
    p.degree() <= 1 || (p.degree() <= 3 && p.rational_roots().is_empty())
}

/// Lower bound on the minimum distance between distinct roots of a square-free polynomial:
/// sqrt(6) / (d^((d+1)/2) H^(d-1)), rounded down to a rational.
pub fn mignotte_gap(p: &IntPoly) -> Result<BigRational> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::NoRootPair(d));
    }
    let h = p.height();
    let sqrt6_lo = BigRational::new(2449.into(), 1000.into());
    let dd = BigInt::from(d as u64);
    let mut den = BigRational::from_integer(num_traits::pow(dd.clone(), (d + 1) / 2));
    if (d + 1) % 2 == 1 {
        // d^(1/2) rounded up
        let s = (&dd * BigInt::from(1_000_000u64)).sqrt() + 1;
        den *= BigRational::new(s, 1000.into());
    }
    den *= BigRational::from_integer(num_traits::pow(h, d - 1));
    Ok(sqrt6_lo / den)
}

impl AlgebraicNumber {
    fn with_loc(rep: IntPoly, loc: Loc) -> Self {
        let minimal = guess_minimal(&rep);
        AlgebraicNumber {
            rep,
            minimal,
            loc: Mutex::new(loc),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        AlgebraicNumber {
            rep: IntPoly::linear_root(&q).primitive(),
            minimal: true,
            loc: Mutex::new(Loc::Exact(q)),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    fn loc(&self) -> Loc {
        self.loc.lock().unwrap().clone()
    }

    fn set_loc(&self, l: Loc) {
        *self.loc.lock().unwrap() = l;
    }

    /// The defining square-free polynomial.
    pub fn rep_poly(&self) -> &IntPoly {
        &self.rep
    }

    pub fn minimal_flag(&self) -> bool {
        self.minimal
    }

    pub fn degree(&self) -> usize {
        self.rep.degree()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.loc() {
            Loc::Exact(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self.loc(), Loc::Complex(_))
    }

    /// Isolating box with radius below a quarter of the root gap of the defining polynomial.
    pub fn isolating_box(&self) -> IsolatingBox {
        let target = match mignotte_gap(&self.rep) {
            Ok(g) => g / rat(5),
            Err(_) => rat(1) / rat(8),
        };
        match self.loc() {
            Loc::Exact(q) => IsolatingBox {
                center_re: q,
                center_im: BigRational::zero(),
                radius: target,
            },
            Loc::Real(..) => {
                self.refine_to(&(&target * rat(2)));
                let Loc::Real(lo, hi) = self.loc() else {
                    unreachable!()
                };
                let radius = (&hi - &lo) * half();
                let radius = if radius.is_zero() { target } else { radius };
                IsolatingBox {
                    center_re: (lo + hi) * half(),
                    center_im: BigRational::zero(),
                    radius,
                }
            }
            Loc::Complex(_) => {
                self.refine_to(&target);
                let Loc::Complex(d) = self.loc() else {
                    unreachable!()
                };
                IsolatingBox {
                    center_re: d.re.to_rational(),
                    center_im: d.im.to_rational(),
                    radius: d.r.to_rational(),
                }
            }
        }
    }

    /// Shrinks the isolating region to width (or radius) at most `w`.
    fn refine_to(&self, w: &BigRational) {
        match self.loc() {
            Loc::Exact(_) => {}
            Loc::Real(lo, hi) => {
                if &hi - &lo <= *w {
                    return;
                }
                let (lo, hi) = isolate::refine_real_interval(&self.rep, lo, hi, w);
                if lo == hi {
                    self.set_loc(Loc::Exact(lo));
                } else {
                    self.set_loc(Loc::Real(lo, hi));
                }
            }
            Loc::Complex(d) => {
                let t = Dyadic::from_rational(w, 32, Round::Down);
                if d.r <= t {
                    return;
                }
                let nd =
                    isolate::refine_disc(&self.rep, &d, &t).expect("refinement of isolated root");
                self.set_loc(Loc::Complex(nd));
            }
        }
    }

    /// Enclosure of width at most about 2^-prec.
    pub fn enclose(&self, prec: u64) -> CIv {
        let w = pow2_rat(-(prec as i64));
        self.refine_to(&w);
        let p = prec + 16;
        match self.loc() {
            Loc::Exact(q) => CIv::real(Iv::from_rational(&q, p)),
            Loc::Real(lo, hi) => CIv::real(Iv::from_rationals(&lo, &hi, p)),
            Loc::Complex(d) => d.enclosure(),
        }
    }

    /// Enclosure of the real part for a real number.
    pub fn enclose_real(&self, prec: u64) -> Iv {
        self.enclose(prec).re
    }

    /// Rational interval [lo, hi] containing a real number.
    pub fn real_interval(&self, w: &BigRational) -> (BigRational, BigRational) {
        self.refine_to(w);
        match self.loc() {
            Loc::Exact(q) => (q.clone(), q),
            Loc::Real(lo, hi) => (lo, hi),
            Loc::Complex(_) => panic!("real_interval on non-real number"),
        }
    }

    /// Sign of a real algebraic number.
    pub fn sign(&self) -> Result<i32> {
        if !self.is_real() {
            return Err(Error::NonReal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            });
        }
        // a non-rational real root is nonzero, so refinement terminates
        let mut prec = 16;
        loop {
            if let Some(s) = self.enclose_real(prec).sign() {
                return Ok(s);
            }
            prec *= 2;
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let b = self.enclose(60);
        (b.re.mid().to_f64(), b.im.mid().to_f64())
    }

    // ------------------------------------------------------------- isolation

    /// All roots of `p` (made square-free), real ones first in increasing order when `real_only`.
    pub fn roots_of(p: &IntPoly, real_only: bool) -> Result<Vec<AlgebraicNumber>> {
        let sq = p.squarefree();
        if sq.degree() == 0 {
            return Ok(vec![]);
        }
        let mut out = vec![];
        for (lo, hi) in isolate::real_root_intervals(&sq) {
            out.push(Self::real_root(&sq, lo, hi));
        }
        if !real_only {
            let discs = isolate::isolate_complex(&sq)?;
            for d in discs {
                if !isolate::disc_is_real(&sq, &d)? {
                    out.push(Self::with_loc(sq.clone(), Loc::Complex(d)));
                }
            }
            if out.len() != sq.degree() {
                return Err(Error::Internal("root count mismatch".into()));
            }
        }
        Ok(out)
    }

    fn real_root(sq: &IntPoly, lo: BigRational, hi: BigRational) -> Self {
        if lo == hi {
            return Self::from_rational(lo);
        }
        if sq.degree() == 1 {
            let q = BigRational::new(-sq.coeff(0), sq.coeff(1));
            return Self::from_rational(q);
        }
        Self::with_loc(sq.clone(), Loc::Real(lo, hi))
    }

    /// Picks the unique root of `p` consistent with a shrinking family of enclosures.
    pub fn select_root(
        p: &IntPoly,
        real: bool,
        enclose: impl Fn(u64) -> CIv,
    ) -> Result<AlgebraicNumber> {
        let sq = p.squarefree();
        if real {
            let mut cands: Vec<(BigRational, BigRational)> = isolate::real_root_intervals(&sq);
            let mut prec = 32;
            loop {
                let b = enclose(prec).re;
                let (blo, bhi) = (b.lo.to_rational(), b.hi.to_rational());
                cands.retain(|(lo, hi)| *lo <= bhi && blo <= *hi);
                if cands.len() == 1 {
                    let (lo, hi) = cands.pop().unwrap();
                    return Ok(Self::real_root(&sq, lo, hi));
                }
                if cands.is_empty() {
                    return Err(Error::Internal("no root matches enclosure".into()));
                }
                let w = pow2_rat(-(prec as i64));
                cands = cands
                    .into_iter()
                    .map(|(lo, hi)| isolate::refine_real_interval(&sq, lo, hi, &w))
                    .collect();
                prec += 32;
                if prec > 1 << 16 {
                    return Err(Error::PrecisionCap("root selection"));
                }
            }
        }
        let mut cands: Vec<Disc> = isolate::isolate_complex(&sq)?;
        let mut prec = 32;
        loop {
            let b = enclose(prec);
            cands.retain(|d| d.meets_box(&b));
            if cands.len() == 1 {
                let d = cands.pop().unwrap();
                if sq.degree() == 1 {
                    return Ok(Self::from_rational(BigRational::new(
                        -sq.coeff(0),
                        sq.coeff(1),
                    )));
                }
                let real = isolate::disc_is_real(&sq, &d)?;
                if real {
                    // convert to a real interval
                    let rd = isolate::refine_disc(&sq, &d, &d.r.mul_pow2(-2))?;
                    let re = rd.re.to_rational();
                    let r = rd.r.to_rational();
                    let lo = &re - &r;
                    let hi = &re + &r;
                    // the disc holds exactly one root, so exactly one real interval ends up inside it
                    for (a, bb) in isolate::real_root_intervals(&sq) {
                        let (mut a, mut bb) = (a, bb);
                        loop {
                            if bb < lo || a > hi {
                                break;
                            }
                            if a >= lo && bb <= hi {
                                return Ok(Self::real_root(&sq, a, bb));
                            }
                            let w = (&bb - &a) * half();
                            (a, bb) = isolate::refine_real_interval(&sq, a, bb, &w);
                        }
                    }
                    return Err(Error::Internal("real root lost".into()));
                }
                return Ok(Self::with_loc(sq, Loc::Complex(d)));
            }
            if cands.is_empty() {
                return Err(Error::Internal("no root matches enclosure".into()));
            }
            let t = Dyadic::pow2(-(prec as i64));
            cands = cands
                .iter()
                .map(|d| isolate::refine_disc(&sq, d, &t))
                .collect::<Result<_>>()?;
            prec += 32;
            if prec > 1 << 16 {
                return Err(Error::PrecisionCap("root selection"));
            }
        }
    }

    // ------------------------------------------------------------ arithmetic

    pub fn neg(&self) -> Self {
        let rep = self.rep.reflect().primitive();
        let loc = match self.loc() {
            Loc::Exact(q) => Loc::Exact(-q),
            Loc::Real(lo, hi) => Loc::Real(-hi, -lo),
            Loc::Complex(d) => Loc::Complex(Disc {
                re: d.re.neg(),
                im: d.im.neg(),
                r: d.r,
            }),
        };
        AlgebraicNumber {
            rep,
            minimal: self.minimal,
            loc: Mutex::new(loc),
        }
    }

    pub fn conj(&self) -> Self {
        let loc = match self.loc() {
            Loc::Complex(d) => Loc::Complex(Disc {
                re: d.re,
                im: d.im.neg(),
                r: d.r,
            }),
            other => other,
        };
        AlgebraicNumber {
            rep: self.rep.clone(),
            minimal: self.minimal,
            loc: Mutex::new(loc),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if let Some(q) = self.as_rational() {
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::from_rational(q.recip()));
        }
        // irrational numbers are never zero
        let rep = self.rep.reverse().primitive();
        let real = self.is_real();
        Self::select_root(&rep, real, |p| {
            self.enclose(p + 8).recip(p + 8).expect("nonzero enclosure")
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Self::from_rational(a + b);
        }
        let r = sum_poly(&self.rep, &o.rep);
        let real = self.is_real() && o.is_real();
        Self::select_root(&r, real, |p| {
            self.enclose(p + 4).add(&o.enclose(p + 4), p + 8)
        })
        .expect("sum root")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Self::from_rational(a * b);
        }
        for (x, y) in [(self, o), (o, self)] {
            if let Some(q) = x.as_rational() {
                if q.is_zero() {
                    return Self::from_int(0);
                }
                // scale the roots of y by q
                let rep = y.rep.scale_var(q.denom(), q.numer()).primitive();
                return Self::select_root(&rep, y.is_real(), |p| {
                    let m = y.enclose(p + 4 + q.numer().bits());
                    m.scale(&Iv::from_rational(&q, p + 16), p + 16)
                })
                .expect("scaled root");
            }
        }
        let r = product_poly(&self.rep, &o.rep);
        let real = self.is_real() && o.is_real();
        Self::select_root(&r, real, |p| {
            let a = self.enclose(p + 8);
            let b = o.enclose(p + 8);
            let s = a.abs_hi(64).log2_ceil().unwrap_or(0).max(0)
                + b.abs_hi(64).log2_ceil().unwrap_or(0).max(0);
            let a = self.enclose(p + 8 + s as u64);
            let b = o.enclose(p + 8 + s as u64);
            a.mul(&b, p + 16 + s as u64)
        })
        .expect("product root")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::from_int(1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// (conjugate, modulus)
    pub fn conj_abs(&self) -> (Self, Self) {
        let c = self.conj();
        if let Some(q) = self.as_rational() {
            return (c, Self::from_rational(q.abs()));
        }
        let n2 = if self.is_real() {
            self.mul(self)
        } else {
            self.mul(&c)
        };
        (c, n2.sqrt_nonneg())
    }

    /// Nonnegative square root of a nonnegative real number.
    pub fn sqrt_nonneg(&self) -> Self {
        if let Some(q) = self.as_rational() {
            if let Some(r) = rational_sqrt(&q) {
                return Self::from_rational(r);
            }
        }
        let rep = self.rep.inflate(2);
        Self::select_root(&rep, true, |p| {
            self.enclose(2 * p + 8).re.sqrt(p + 16).into_complex()
        })
        .expect("square root")
    }

    // ------------------------------------------------------------ comparison

    /// Exact equality through root-gap refinement.
    pub fn equals(&self, o: &Self) -> bool {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return a == b;
        }
        if self.rep.gcd(&o.rep).degree() == 0 {
            return false;
        }
        if self.is_real() != o.is_real() {
            return false;
        }
        // cheap separation first
        for prec in [32u64, 96] {
            let a = self.enclose(prec);
            let b = o.enclose(prec);
            if !a.re.intersects(&b.re) || !a.im.intersects(&b.im) {
                return false;
            }
        }
        let prod = self.rep.mul(&o.rep).squarefree();
        let gap = match mignotte_gap(&prod) {
            Ok(g) => g,
            Err(_) => return true,
        };
        let w = gap / rat(8);
        let prec = w.recip().to_integer().bits() + 2;
        let a = self.enclose(prec);
        let b = o.enclose(prec);
        a.re.intersects(&b.re) && a.im.intersects(&b.im)
    }

    /// Order for real numbers; None when either number is non-real and they differ.
    pub fn compare(&self, o: &Self) -> Option<Ordering> {
        if self.equals(o) {
            return Some(Ordering::Equal);
        }
        if !self.is_real() || !o.is_real() {
            return None;
        }
        let mut prec = 32;
        loop {
            let a = self.enclose_real(prec);
            let b = o.enclose_real(prec);
            if a.hi < b.lo {
                return Some(Ordering::Less);
            }
            if b.hi < a.lo {
                return Some(Ordering::Greater);
            }
            prec *= 2;
        }
    }

    // -------------------------------------------------------- roots of unity

    /// Least m with self^m = 1, or None if the number lies on the unit circle without being a
    /// root of unity.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>> {
        let d = self.rep.degree() as u64;
        let mut m = 1u64;
        // phi(m) >= sqrt(m/2), so m <= 2 d^2 bounds the search
        while m <= 2 * d * d + 2 {
            if euler_phi(m) <= d {
                let g = self.rep.gcd(&cyclotomic(m));
                if g.degree() > 0 {
                    for r in Self::roots_of(&g, false)? {
                        if r.equals(self) {
                            return Ok(Some(m));
                        }
                    }
                }
            }
            m += 1;
        }
        let (_, a) = self.conj_abs();
        if a.equals(&Self::from_int(1)) {
            Ok(None)
        } else {
            Err(Error::NotOnUnitCircle)
        }
    }
}

trait IntoComplex {
    fn into_complex(self) -> CIv;
}

impl IntoComplex for Iv {
    fn into_complex(self) -> CIv {
        CIv::real(self)
    }
}

pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Lagrange interpolation through (i, v_i), i = 0..n, returning the integer multiple with
/// content removed.
fn interpolate(vals: &[BigInt]) -> IntPoly {
    let n = vals.len();
    let mut acc: Vec<BigRational> = vec![];
    for (i, v) in vals.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut basis = vec![BigRational::one()];
        let mut den = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            basis = super::upoly::mul(&basis, &[rat(-(j as i64)), BigRational::one()]);
            den *= rat(i as i64 - j as i64);
        }
        let c = BigRational::from_integer(v.clone()) / den;
        acc = super::upoly::add(&acc, &super::upoly::scale(&basis, &c));
    }
    IntPoly::from_rationals(&acc)
}

/// Square-free polynomial vanishing at every alpha + beta.
pub fn sum_poly(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let n = p.degree() * q.degree();
    let rq = q.reflect();
    let vals: Vec<BigInt> = (0..=n)
        .map(|x0| {
            // q(x0 - y) as a polynomial in y
            let s = rq.shift(&-BigInt::from(x0 as u64));
            resultant(p, &s)
        })
        .collect();
    interpolate(&vals).squarefree()
}

/// Square-free polynomial vanishing at every alpha * beta (alpha, beta nonzero).
pub fn product_poly(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let n = p.degree() * q.degree();
    let dq = q.degree();
    let vals: Vec<BigInt> = (0..=n)
        .map(|x0| {
            // y^dq q(x0 / y) = sum b_i x0^i y^(dq - i)
            let x0 = BigInt::from(x0 as u64);
            let mut c = vec![BigInt::zero(); dq + 1];
            for i in 0..=dq {
                c[dq - i] = q.coeff(i) * num_traits::pow(x0.clone(), i);
            }
            resultant(p, &IntPoly::new(c))
        })
        .collect();
    interpolate(&vals).squarefree()
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut r = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// m-th cyclotomic polynomial.
pub fn cyclotomic(m: u64) -> IntPoly {
    let mut c = vec![BigInt::zero(); m as usize + 1];
    c[0] = BigInt::from(-1);
    c[m as usize] = BigInt::one();
    let mut p = IntPoly::new(c);
    for d in 1..m {
        if m % d == 0 {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic divisor");
        }
    }
    p
}

/// Convenience: rational as f64 for diagnostics.
pub fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
