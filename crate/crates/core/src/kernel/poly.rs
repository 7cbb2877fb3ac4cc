//! Dense univariate polynomials with integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial over Z, coefficients stored low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - r` scaled to integers: `den*x - num`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Maximum absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Total bit length of the coefficient list.
    pub fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits() + 1).sum::<u64>().max(1)
    }

    pub fn l2_norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(BigInt::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        // homogenised Horner keeps everything integral until the final division
        let (p, q) = (x.numer(), x.denom());
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        let denom = num_traits::pow(q.clone(), d);
        BigRational::new(acc, denom)
    }

    /// Sign of p(x) at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        sign_of(&acc)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder: lc(d)^(deg a - deg d + 1) * a mod d.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.lc();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = r[r.len() - 1].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &t * dc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Exact division over Z; returns None if the divisor does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.lc();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            let (qq, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qq * dc;
            }
            q[k] = qq;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn squarefree(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides")
            .primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// p(-x)
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// x^deg p(1/x)
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// p(x^k)
    pub fn inflate(&self, k: usize) -> Self {
        let mut out = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::new(out)
    }

    /// p(x + c) for integer c.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// Integer polynomial with the same roots as p(a*x/b) i.e. b^d p(a x / b).
    pub fn scale_var(&self, a: &BigInt, b: &BigInt) -> Self {
        let d = self.degree();
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * num_traits::pow(a.clone(), i) * num_traits::pow(b.clone(), d - i))
                .collect(),
        )
    }

    /// Clears denominators of a rational polynomial and returns the primitive integer multiple.
    pub fn from_rationals(c: &[BigRational]) -> Self {
        let mut l = BigInt::one();
        for q in c {
            l = l.lcm(q.denom());
        }
        Self::new(c.iter().map(|q| q.numer() * (&l / q.denom())).collect()).primitive()
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Cauchy bound: every complex root has modulus < 1 + max|a_i/a_d|, returned as an integer.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        m.div_ceil(&lc) + 1
    }

    /// Rational roots, found from the integer roots of lc^(d-1) p(x / lc).
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let p = self.primitive();
        if p.degree() == 0 {
            return vec![];
        }
        let mut out = vec![];
        let mut q = p.clone();
        if q.coeff(0).is_zero() {
            out.push(BigRational::zero());
            while q.coeff(0).is_zero() {
                q = Self::new(q.coeffs[1..].to_vec());
            }
        }
        for r in crate::kernel::isolate::real_root_intervals(&q.squarefree()) {
            let lc = q.lc();
            let mid = (&r.0 + &r.1) / BigRational::from_integer(BigInt::from(2));
            let cand = BigRational::new(
                (mid * BigRational::from_integer(lc.clone()))
                    .round()
                    .to_integer(),
                lc,
            );
            if cand >= r.0 && cand <= r.1 && q.sign_at(&cand) == 0 {
                out.push(cand);
            } else {
                // interval may be too wide for rounding to land; refine
                let (mut lo, mut hi) = r.clone();
                let sq = q.squarefree();
                let width_target = BigRational::new(BigInt::one(), BigInt::from(4) * q.lc().abs());
                while &hi - &lo > width_target {
                    let m = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                    let sm = sq.sign_at(&m);
                    if sm == 0 {
                        lo = m.clone();
                        hi = m;
                        break;
                    }
                    if sm == sq.sign_at(&lo) {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                let lc = q.lc();
                let cand = BigRational::new(
                    (mid * BigRational::from_integer(lc.clone()))
                        .round()
                        .to_integer(),
                    lc,
                );
                if q.sign_at(&cand) == 0 {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

pub fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Resultant of two integer polynomials, computed by Euclid over Q.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    let a = p.to_rationals();
    let b = q.to_rationals();
    let r = crate::kernel::upoly::resultant_field(&a, &b);
    assert!(r.is_integer());
    r.to_integer()
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show = !a.is_one() || i == 0;
            if show {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
