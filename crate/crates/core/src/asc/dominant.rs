//! Lower bound |g(gamma^n)| >= c n^-e for the dominant part, valid once gamma^n has moved past
//! the zeros of g that it could hit exactly.

use super::bound::{baker_exponent, height_lower, log_mahler_upper};
use super::circle::{split_roots, CircleRoot};
use super::normalize::Normalized;
use crate::error::{Error, Result};
use crate::exppoly::ExpSpace;
use crate::field::KElem;
use crate::kernel::algebraic::{cyclotomic, euler_phi, AlgebraicNumber};
use crate::kernel::dyadic::{CIv, Dyadic, Iv, Round};
use crate::kernel::isolate::Disc;
use crate::kernel::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;

const PREC: u64 = 128;

/// The rotation gamma = lambda/|lambda| of a complex-pair space, through gamma^2 = z1/z2 in K.
#[derive(Clone, Debug)]
pub struct Rotation {
    pub gamma_sq: KElem,
    /// Degree bound for gamma (twice the degree of gamma^2).
    pub degree: usize,
    pub height_lo: Dyadic,
}

impl Rotation {
    /// `None` when gamma is a root of unity (then n must be split by residue class).
    pub fn of_space(space: &ExpSpace) -> Result<Option<Rotation>> {
        if !space.conj_pair {
            return Err(Error::RealSpectrum);
        }
        let gamma_sq = space.bases[0]
            .div(&space.bases[1])
            .ok_or(Error::DivisionByZero)?;
        let mp = gamma_sq.min_poly();
        if cyclotomic_index(&mp).is_some() {
            return Ok(None);
        }
        let height_lo = height_lower(&mp)?;
        Ok(Some(Rotation {
            degree: 2 * mp.degree(),
            gamma_sq,
            height_lo,
        }))
    }

    /// A period d with gamma^d = 1, if gamma is a root of unity; z1^d is then real positive.
    pub fn unity_period(space: &ExpSpace) -> Result<Option<u64>> {
        let gamma_sq = space.bases[0]
            .div(&space.bases[1])
            .ok_or(Error::DivisionByZero)?;
        Ok(match cyclotomic_index(&gamma_sq.min_poly()) {
            None => None,
            Some(q) => {
                let lq = space.bases[0].pow(q);
                Some(if lq.is_real() && lq.sign() > 0 {
                    q
                } else {
                    2 * q
                })
            }
        })
    }
}

/// m with p = Phi_m up to sign. The minimal polynomial of an element of K is exact, so this
/// decides whether a unit-modulus element is a root of unity, and of which order.
fn cyclotomic_index(p: &IntPoly) -> Option<u64> {
    let d = p.degree() as u64;
    let lc = p.coeffs().last()?.clone();
    if lc != BigInt::from(1) && lc != BigInt::from(-1) {
        return None;
    }
    let p = if lc == BigInt::from(1) {
        p.clone()
    } else {
        p.neg()
    };
    (1..=2 * d * d + 2).find(|&m| euler_phi(m) == d && cyclotomic(m) == p)
}

#[derive(Clone, Debug)]
pub struct ZeroInfo {
    pub root: CircleRoot,
    /// Lower bound of |d^d/dt^d g(phi e^(it))| at t = 0.
    pub deriv_lo: Dyadic,
    pub baker: u64,
    /// gamma^n differs from the zero for every n > n1.
    pub n1: u64,
}

#[derive(Clone, Debug)]
pub struct DominantBound {
    pub c: Dyadic,
    pub e: u64,
    pub n1: u64,
    pub eps1: Dyadic,
    pub b: Dyadic,
    pub zeros: Vec<ZeroInfo>,
}

fn kabs_hi(x: &KElem) -> Dyadic {
    x.enclose(PREC).abs_hi(PREC)
}

fn factorial(d: usize) -> BigInt {
    (1..=d).map(BigInt::from).product()
}

/// sum beta_m m^d z^(m+k), whose modulus equals |g^(d)| on the circle up to the factor i^d.
fn deriv_at(norm: &Normalized, k: i64, d: usize, z: &CIv, prec: u64) -> CIv {
    let mut acc = CIv::zero();
    for (m, b) in &norm.beta {
        let w = BigInt::from(*m).pow(d as u32);
        let t = b
            .enclose(prec)
            .scale(&Iv::from_int(w), prec)
            .mul(&z.pow((m + k) as u64, prec), prec);
        acc = acc.add(&t, prec);
    }
    acc
}

fn zero_info(
    norm: &Normalized,
    k: i64,
    r: &CircleRoot,
    rot: &Rotation,
    baker_d: u32,
) -> Result<ZeroInfo> {
    let mut target = Dyadic::pow2(-40);
    let mut disc: Disc = r.refined(&target)?;
    let deriv_lo = loop {
        let prec = PREC + (-target.log2_ceil().unwrap_or(0)).max(0) as u64;
        let v = deriv_at(norm, k, r.mult, &disc.enclosure(), prec);
        let lo = v.abs_lo(prec);
        if lo.signum() > 0 {
            break lo;
        }
        target = target.mul_pow2(-(target.log2_ceil().unwrap_or(-40).abs().max(40)));
        if target.log2_ceil().unwrap_or(0) < -20000 {
            return Err(Error::PrecisionCap("derivative at a circle zero"));
        }
        disc = r.refined(&target)?;
    };
    let rep = r.rep();
    let baker = baker_exponent(rot.degree, rep.degree(), baker_d);
    // gamma^n = xi forces n h(gamma^2) = h(xi^2) <= 2 ln M(rep)
    let lm = log_mahler_upper(&rep)?;
    let n1 = Iv::point(lm.mul_pow2(1))
        .div(&Iv::point(rot.height_lo.clone()), PREC)
        .ok_or(Error::DivisionByZero)?
        .hi
        .floor();
    let n1: u64 = n1
        .try_into()
        .map_err(|_| Error::Internal("height bound overflow".into()))?;
    Ok(ZeroInfo {
        root: CircleRoot { disc, ..r.clone() },
        deriv_lo,
        baker,
        n1,
    })
}

fn pi_hi() -> Iv {
    Iv::from_rational(&BigRational::new(314160.into(), 100000.into()), PREC)
}

/// Lower bound for |g| on the circle, c n^-e for n > n1.
pub fn analyse_dominant(
    norm: &Normalized,
    rot: Option<&Rotation>,
    baker_d: u32,
) -> Result<DominantBound> {
    let (p, k) = norm.poly();
    let lc = p.last().unwrap().enclose(PREC).abs_lo(PREC);
    let split = split_roots(&p)?;
    let one = Dyadic::from_int(1);
    // off-circle factors |z - w| >= ||w| - 1|
    let mut b = lc;
    for r in &split.off {
        let m = r.disc.enclosure().norm_sq(PREC).sqrt(PREC);
        let gap = if m.lo > one {
            m.lo.sub(&one)
        } else {
            one.sub(&m.hi)
        };
        b = b.mul(&gap);
    }
    if split.on.is_empty() {
        return Ok(DominantBound {
            c: b.clone(),
            e: 0,
            n1: 0,
            eps1: one,
            b,
            zeros: vec![],
        });
    }
    let rot = rot.ok_or_else(|| Error::Internal("circle zeros need a rotation".into()))?;
    let mut zeros = vec![];
    for r in &split.on {
        zeros.push(zero_info(norm, k, r, rot, baker_d)?);
    }
    // eps1: Taylor control near every zero, and neighbourhoods pairwise disjoint
    let mut eps = one.clone();
    for z in &zeros {
        let d = z.root.mult;
        let mbound = norm.beta.iter().fold(Dyadic::zero(), |acc, (m, bm)| {
            acc.add(&kabs_hi(bm).mul(&Dyadic::from_int(BigInt::from(m.abs()).pow(d as u32 + 1))))
        });
        let num = z.deriv_lo.mul(&Dyadic::from_int(d as i64));
        eps = eps.min(num.div(&mbound.mul_pow2(1), PREC, Round::Down));
    }
    for i in 0..zeros.len() {
        for j in i + 1..zeros.len() {
            let (a, c) = (&zeros[i].root.disc, &zeros[j].root.disc);
            let dist = a
                .center()
                .sub(&c.center(), PREC)
                .abs_lo(PREC)
                .sub(&a.r)
                .sub(&c.r);
            if dist.signum() <= 0 {
                return Err(Error::Internal("circle zeros not separated".into()));
            }
            eps = eps.min(dist.mul_pow2(-1));
        }
    }
    // outside the neighbourhoods |z - phi| >= 2 eps1 / pi
    let chord = Iv::point(eps.mul_pow2(1)).div(&pi_hi(), PREC).unwrap().lo;
    let total: usize = zeros.iter().map(|z| z.root.mult).sum();
    b = b.mul(&Iv::point(chord).pow(total as u32, PREC).lo);
    let mut c = b.clone();
    let mut e = 0u64;
    let mut n1 = 0u64;
    for z in &zeros {
        let d = z.root.mult;
        let near = Iv::point(z.deriv_lo.clone())
            .div(&Iv::from_int(factorial(d) * 2), PREC)
            .unwrap()
            .lo;
        c = c.min(near);
        e = e.max(z.baker * d as u64);
        n1 = n1.max(z.n1);
    }
    Ok(DominantBound {
        c,
        e,
        n1,
        eps1: eps,
        b,
        zeros,
    })
}

/// Rotation gamma^2 as an algebraic number (for audits).
pub fn gamma_sq_algebraic(rot: &Rotation) -> AlgebraicNumber {
    rot.gamma_sq.to_algebraic()
}
