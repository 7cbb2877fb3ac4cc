//! Exact sign evaluation of polynomials at real algebraic points.

use super::formula::SemialgebraicSet;
use super::mpoly::MPoly;
use crate::error::{Error, Result};
use crate::kernel::algebraic::AlgebraicNumber;
use crate::kernel::dyadic::Iv;
use crate::kernel::poly::IntPoly;
use num_rational::BigRational;
use num_traits::Signed;

fn sign_rat(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of a univariate integer polynomial at a real algebraic number.
pub fn sign_univariate_at(q: &IntPoly, a: &AlgebraicNumber) -> Result<i32> {
    if !a.is_real() {
        return Err(Error::NonReal);
    }
    if let Some(r) = a.as_rational() {
        return Ok(q.sign_at(&r));
    }
    if q.is_zero() {
        return Ok(0);
    }
    let g = q.gcd(a.rep_poly());
    if g.degree() > 0 {
        let (lo, hi) = a.real_interval(&BigRational::from_integer(1.into()));
        if lo == hi {
            return Ok(q.sign_at(&lo));
        }
        if g.sign_at(&lo) * g.sign_at(&hi) < 0 {
            return Ok(0);
        }
    }
    // q(a) != 0 now, so refinement terminates
    let mut prec = 32u64;
    loop {
        let iv = a.enclose_real(prec);
        let mut acc = Iv::zero();
        for c in q.coeffs().iter().rev() {
            acc = acc
                .mul(&iv, prec + 64)
                .add(&Iv::from_int(c.clone()), prec + 64);
        }
        if let Some(s) = acc.sign() {
            if s != 0 {
                return Ok(s);
            }
        }
        prec *= 2;
    }
}

fn interval_eval(p: &MPoly, ivs: &[Iv], prec: u64) -> Iv {
    let mut acc = Iv::zero();
    for (e, c) in p.terms() {
        let mut t = Iv::from_int(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                t = t.mul(&ivs[i].pow(k, prec), prec);
            }
        }
        acc = acc.add(&t, prec);
    }
    acc
}

/// Exact sign of p at a real algebraic point.
pub fn sign_at_point(p: &MPoly, point: &[AlgebraicNumber]) -> Result<i32> {
    if point.iter().any(|a| !a.is_real()) {
        return Err(Error::NonReal);
    }
    let rats: Vec<Option<BigRational>> = point.iter().map(|a| a.as_rational()).collect();
    if rats.iter().all(|r| r.is_some()) {
        let x: Vec<BigRational> = rats.into_iter().map(|r| r.unwrap()).collect();
        return Ok(sign_rat(&p.eval_rat(&x)));
    }
    // substitute the rational coordinates
    let mut q = p.clone();
    for (i, r) in rats.iter().enumerate() {
        if let Some(r) = r {
            q = q.subst_rational(i, r);
        }
    }
    let irr: Vec<usize> = (0..point.len())
        .filter(|&i| rats[i].is_none() && q.uses_var(i))
        .collect();
    if irr.is_empty() {
        return Ok(sign_rat(&BigRational::from_integer(
            q.as_constant().unwrap_or_default(),
        )));
    }
    if irr.len() == 1 {
        let u = q.to_univariate(irr[0]).expect("single variable left");
        return sign_univariate_at(&u, &point[irr[0]]);
    }
    // interval attempt before exact arithmetic
    for prec in [64u64, 256] {
        let ivs: Vec<Iv> = point.iter().map(|a| a.enclose_real(prec)).collect();
        if let Some(s) = interval_eval(&q, &ivs, prec + 64).sign() {
            if s != 0 {
                return Ok(s);
            }
        }
    }
    let mut acc = AlgebraicNumber::from_int(0);
    for (e, c) in q.terms() {
        let mut t = AlgebraicNumber::from_rational(BigRational::from_integer(c.clone()));
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                t = t.mul(&point[i].pow(k));
            }
        }
        acc = acc.add(&t);
    }
    acc.sign()
}

/// Exact membership of a real algebraic point.
pub fn eval_membership(point: &[AlgebraicNumber], set: &SemialgebraicSet) -> Result<bool> {
    if point.len() != set.num_vars {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, set has {} variables",
            point.len(),
            set.num_vars
        )));
    }
    for conj in &set.dnf {
        let mut ok = true;
        for a in conj {
            if !a.holds(sign_at_point(&a.poly, point)?) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semialg::formula::{Formula, Rel};
    use crate::semialg::to_dnf;

    fn x(i: usize) -> MPoly {
        MPoly::var(3, i)
    }

    fn q(n: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn membership_examples() {
        let c = |k: i64| MPoly::constant(3, k.into());
        let s = to_dnf(
            &Formula::And(vec![
                Formula::atom(x(0).add(&c(1)), Rel::Eq),
                Formula::atom(x(1), Rel::Eq),
                Formula::atom(x(2), Rel::Eq),
            ]),
            3,
        );
        assert!(eval_membership(&[q(-1, 1), q(0, 1), q(0, 1)], &s).unwrap());
        let circle = to_dnf(&Formula::atom(x(0).mul(&x(0)).sub(&c(2)), Rel::Eq), 3);
        let r2 = AlgebraicNumber::roots_of(&IntPoly::from_i64(&[-2, 0, 1]), true)
            .unwrap()
            .pop()
            .unwrap();
        assert!(eval_membership(&[r2.clone(), q(0, 1), q(0, 1)], &circle).unwrap());
        let two = to_dnf(
            &Formula::atom(x(0).mul(&x(0)).add(&x(1).mul(&x(1))).sub(&c(2)), Rel::Eq),
            3,
        );
        assert!(!eval_membership(&[q(3, 5), q(4, 5), q(1, 1)], &two).unwrap());
        // two irrational coordinates: sqrt2 * sqrt2 - 2 = 0
        let prod = to_dnf(&Formula::atom(x(0).mul(&x(1)).sub(&c(2)), Rel::Eq), 3);
        assert!(eval_membership(&[r2.clone(), r2, q(0, 1)], &prod).unwrap());
    }
}
