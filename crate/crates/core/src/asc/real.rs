//! Eventual signs when every monomial base is real and positive (real spectra, and complex
//! pairs whose argument is a rational multiple of pi after splitting n by residue class).

use super::bound::decay_threshold;
use crate::exppoly::ExpPoly;
use crate::kernel::dyadic::{Dyadic, Iv};
use crate::semialg::Sign;
use num_bigint::BigInt;
use std::cmp::Ordering;

const PREC: u64 = 128;

/// Eventual behaviour of a conjunction along n = 0, 1, 2, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eventual {
    /// Holds for every n >= N (Some), or for infinitely many n with no explicit start (None).
    Holds(Option<u64>),
    /// Fails for every n >= N.
    Bounded(u64),
    Unknown(String),
}

/// For n >= `from`, f(n) is nonzero with sign `sign`; sign 0 means f vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    pub sign: i32,
    pub from: u64,
}

fn abs_hi(x: &crate::field::KElem) -> Dyadic {
    x.enclose(PREC).abs_hi(PREC)
}

pub fn real_tail(f: &ExpPoly, cap: u64) -> Result<Tail, String> {
    let g = f.merge_equal_bases();
    if g.is_zero() {
        return Ok(Tail { sign: 0, from: 0 });
    }
    let mut terms = vec![];
    for (k, c) in g.terms() {
        let v = g.monomial_base(&k.e);
        if !v.is_real() || v.sign() <= 0 || !c.is_real() {
            return Err("monomial base is not real and positive".into());
        }
        terms.push((v, k.j, c.clone()));
    }
    let lead = terms
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.cmp_real(&b.1 .0).then(a.1 .1.cmp(&b.1 .1)))
        .map(|(i, _)| i)
        .unwrap();
    let (v, jl, cl) = terms[lead].clone();
    let others = (terms.len() - 1) as u64;
    let mut from = 1u64;
    for (i, (vt, jt, ct)) in terms.iter().enumerate() {
        if i == lead {
            continue;
        }
        // each of the other terms must stay below |lead| / others
        let a = abs_hi(&ct.div(&cl).expect("nonzero lead"));
        let ta = Iv::point(a)
            .mul(&Iv::from_int(BigInt::from(others)), PREC)
            .hi;
        let n_t = match vt.cmp_real(&v) {
            Ordering::Equal => {
                debug_assert!(*jt < jl);
                let fl: u64 = (ta.floor() + BigInt::from(1))
                    .try_into()
                    .map_err(|_| "threshold overflow".to_string())?;
                fl
            }
            _ => {
                let r = vt.div(&v).expect("nonzero base").enclose(PREC).re.hi;
                let e = jt.saturating_sub(jl);
                decay_threshold(&ta, &r, e, &Dyadic::from_int(1), cap)
                    .ok_or("decay threshold above the search cap")?
            }
        };
        from = from.max(n_t);
    }
    Ok(Tail {
        sign: cl.sign(),
        from,
    })
}

/// Conjunction of sign conditions on real-base exponential polynomials.
pub fn solve_real_conj(atoms: &[(ExpPoly, Sign)], cap: u64) -> Eventual {
    let mut false_from: Option<u64> = None;
    let mut true_from = 0u64;
    let mut note_false = |n: u64| false_from = Some(false_from.map_or(n, |m: u64| m.min(n)));
    for (f, rel) in atoms {
        let t = match real_tail(f, cap) {
            Ok(t) => t,
            Err(e) => return Eventual::Unknown(e),
        };
        match (rel, t.sign) {
            (Sign::Zero, 0) => {}
            (Sign::Zero, _) => note_false(t.from),
            (Sign::Pos, 0) => note_false(0),
            (Sign::Pos, s) if s < 0 => note_false(t.from),
            (Sign::Pos, _) => true_from = true_from.max(t.from),
        }
    }
    match false_from {
        Some(n) => Eventual::Bounded(n),
        None => Eventual::Holds(Some(true_from)),
    }
}
