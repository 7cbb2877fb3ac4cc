//! Roots of P(z) = z^k g(z) on and off the unit circle.

use crate::error::{Error, Result};
use crate::field::{norm_poly, KElem, KPoly};
use crate::kernel::dyadic::{CIv, Dyadic, Iv};
use crate::kernel::isolate::{isolate_complex, pellet, refine_disc, CoeffSource, Disc};
use crate::kernel::poly::IntPoly;
use crate::kernel::upoly;

const PREC: u64 = 96;

/// Square-free decomposition p = c * prod a_i^i (Yun). Returns (a_i, i) with deg a_i > 0.
pub fn yun(p: &[KElem]) -> Vec<(Vec<KElem>, usize)> {
    let p = upoly::monic(p);
    if upoly::deg(&p) == 0 {
        return vec![];
    }
    let dp = upoly::derivative(&p);
    let a0 = upoly::gcd(&p, &dp);
    let mut b = upoly::div_rem(&p, &a0).0;
    let c = upoly::div_rem(&dp, &a0).0;
    let mut d = upoly::sub(&c, &upoly::derivative(&b));
    let mut out = vec![];
    let mut i = 1;
    while upoly::deg(&b) > 0 {
        let a = upoly::gcd(&b, &d);
        b = upoly::div_rem(&b, &a).0;
        let c = upoly::div_rem(&d, &a).0;
        d = upoly::sub(&c, &upoly::derivative(&b));
        if upoly::deg(&a) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Root of P with its multiplicity and certified isolating disc for the square-free factor
/// `factor` (the product of the roots of that multiplicity).
#[derive(Clone, Debug)]
pub struct CircleRoot {
    pub factor: Vec<KElem>,
    pub disc: Disc,
    pub mult: usize,
}

impl CircleRoot {
    pub fn refined(&self, target: &Dyadic) -> Result<Disc> {
        refine_disc(&KPoly(&self.factor), &self.disc, target)
    }

    /// Square-free integer polynomial vanishing at the root.
    pub fn rep(&self) -> IntPoly {
        norm_poly(&self.factor).squarefree()
    }
}

#[derive(Clone, Debug, Default)]
pub struct RootSplit {
    pub on: Vec<CircleRoot>,
    pub off: Vec<CircleRoot>,
}

fn abs_sq_iv(d: &Disc) -> Iv {
    d.enclosure().norm_sq(PREC)
}

/// Image of the disc under z -> 1/conj(z), as (center box, radius bound); `None` if the disc
/// meets the origin.
fn mirror(d: &Disc) -> Option<(CIv, Dyadic)> {
    let c = d.center();
    let r = Iv::point(d.r.clone());
    let den = c.norm_sq(PREC).sub(&r.sqr(PREC), PREC);
    if den.lo.signum() <= 0 {
        return None;
    }
    let inv = den.recip(PREC)?;
    Some((c.scale(&inv, PREC), r.mul(&inv, PREC).hi))
}

/// Decides whether the root isolated in `disc` lies on the unit circle. Needs the root set of
/// the factor to be closed under z -> 1/conj(z) with multiplicities.
pub fn on_circle(factor: &[KElem], disc: &Disc) -> Result<(bool, Disc)> {
    let src = KPoly(factor);
    let one = Dyadic::from_int(1);
    let mut d = disc.clone();
    for _ in 0..200 {
        let m = abs_sq_iv(&d);
        if m.hi < one || m.lo > one {
            return Ok((false, d));
        }
        // mirror image of d inside a 4x disc holding a single root forces the root onto the circle
        if let Some((mc, mr)) = mirror(&d) {
            let big = Disc {
                re: d.re.clone(),
                im: d.im.clone(),
                r: d.r.mul_pow2(2),
            };
            let off = mc.sub(&d.center(), PREC).abs_hi(PREC);
            let prec = PREC + d.r.log2_ceil().map(|e| (-e).max(0) as u64).unwrap_or(0);
            if off.add(&mr) < big.r && pellet(&src.coeffs_at(prec + 32), &big, 1, prec + 32) {
                return Ok((true, d));
            }
        }
        let t = d.r.mul_pow2(-4);
        d = refine_disc(&src, &d, &t)?;
    }
    Err(Error::PrecisionCap("unit circle test"))
}

/// Roots of P split by their position relative to the unit circle.
pub fn split_roots(p: &[KElem]) -> Result<RootSplit> {
    let mut out = RootSplit::default();
    for (a, mult) in yun(p) {
        let discs = isolate_complex(&KPoly(&a))?;
        for disc in discs {
            let (on, disc) = on_circle(&a, &disc)?;
            let r = CircleRoot {
                factor: a.clone(),
                disc,
                mult,
            };
            if on {
                out.on.push(r);
            } else {
                out.off.push(r);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDef;
    use num_rational::BigRational;

    #[test]
    fn yun_multiplicities() {
        let f = FieldDef::quadratic(Some(BigRational::from_integer((-1).into())));
        let k = |n: i64| KElem::from_int(&f, n);
        // (z - 1)^2 (z + 2)
        let p = upoly::mul(&upoly::mul(&[k(-1), k(1)], &[k(-1), k(1)]), &[k(2), k(1)]);
        let y = yun(&p);
        assert_eq!(y.len(), 2);
        assert_eq!(y[0], (vec![k(2), k(1)], 1));
        assert_eq!((y[1].0.clone(), y[1].1), (vec![k(-1), k(1)], 2));
    }

    #[test]
    fn circle_split() {
        let f = FieldDef::quadratic(Some(BigRational::from_integer((-1).into())));
        let k = |n: i64| KElem::from_int(&f, n);
        let i = KElem::omega(&f);
        // g(z) = z + 1/z - 1 has two roots on the circle; times (z - 2)(z - 1/2) which is
        // self-reciprocal
        let a = vec![k(1), k(-1), k(1)];
        let b = vec![k(2), k(-5), k(2)];
        let s = split_roots(&upoly::mul(&a, &b)).unwrap();
        assert_eq!(s.on.len(), 2);
        assert_eq!(s.off.len(), 2);
        // (z - i)^2 conj-reciprocal: double root on the circle
        let c = upoly::mul(&[i.neg(), k(1)], &[i.neg(), k(1)]);
        let s = split_roots(&c).unwrap();
        assert_eq!(s.on.len(), 1);
        assert_eq!(s.on[0].mult, 2);
    }
}
