//! Exponential-polynomial systems: substitution of closed forms into target polynomials and
//! splitting by residue classes of n.

use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, ExpSpace, Key};
use crate::field::KElem;
use crate::semialg::MPoly;
use crate::spectral::{SpectralData, SpectralKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Almost self-conjugate polynomial in (lambda^n, conj(lambda)^n, rho^n).
pub type AscPolynomial = ExpPoly;

/// p(y_1(n), ..., y_k(n)) for an integer polynomial p.
pub fn compose(p: &MPoly, ys: &[ExpPoly], space: &Arc<ExpSpace>) -> ExpPoly {
    let mut cache: BTreeMap<(usize, u32), ExpPoly> = BTreeMap::new();
    let mut acc = ExpPoly::zero(space);
    for (e, c) in p.terms() {
        let mut t = ExpPoly::rational(space, BigRational::from_integer(c.clone()));
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                let pw = cache.entry((i, k)).or_insert_with(|| ys[i].pow(k)).clone();
                t = t.mul(&pw);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// R(A^n s) in closed form for a complex-pair spectrum.
pub fn build_point_system(
    r: &MPoly,
    spec: &SpectralData,
    s: &[BigRational],
) -> Result<AscPolynomial> {
    if spec.kind != SpectralKind::ComplexPair {
        return Err(Error::RealSpectrum);
    }
    Ok(sequence_system(r, spec, s))
}

/// R(A^n s) for any invertible spectrum.
pub fn sequence_system(r: &MPoly, spec: &SpectralData, s: &[BigRational]) -> ExpPoly {
    let ys = spec.forward.apply(s);
    compose(r, &ys, &spec.forward.space)
}

/// The space with every base raised to the power d.
pub fn residue_space(space: &Arc<ExpSpace>, d: u64) -> Arc<ExpSpace> {
    ExpSpace::new(
        space.field.clone(),
        space.bases.iter().map(|b| b.pow(d)).collect(),
        space.conj_pair,
    )
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// e(d r + m) as an exponential polynomial in r over `target` (which must be residue_space(d)).
pub fn substitute_affine(e: &ExpPoly, target: &Arc<ExpSpace>, d: u64, m: u64) -> ExpPoly {
    let mut acc = ExpPoly::zero(target);
    for (k, c) in e.terms() {
        let shift = e.monomial_base(&k.e).pow(m);
        let c = c.mul(&shift);
        // (d r + m)^j = sum_t C(j,t) d^t m^(j-t) r^t
        for t in 0..=k.j {
            let w = binom(k.j, t) * BigInt::from(d).pow(t) * BigInt::from(m).pow(k.j - t);
            if w.is_zero() {
                continue;
            }
            let ct = c.scale(&BigRational::from_integer(w));
            acc = acc.add(&ExpPoly::term(target, Key { e: k.e, j: t }, ct));
        }
    }
    acc
}

/// Exact check of the self-conjugacy invariant.
pub fn is_almost_self_conjugate(p: &AscPolynomial) -> bool {
    p.is_self_conjugate()
}

/// Exact value of p at n as a field element (real when p is self-conjugate).
pub fn value_at(p: &ExpPoly, n: u64) -> KElem {
    p.eval(n)
}
