//! Splitting an exponential polynomial on a complex-pair space into its dominant part
//! Lambda^n g(gamma^n) and an exponentially smaller residual.

use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::field::KElem;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// f(n) = Lambda^n (g(gamma^n) + sum chi_t mu_t^n) with |mu_t| < 1 and g(z) = sum beta_m z^m.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub beta: BTreeMap<i64, KElem>,
    /// Lambda^2, a positive element of K.
    pub lambda_sq: KElem,
    /// (chi_t, |mu_t|^2) for the residual terms.
    pub residual: Vec<(KElem, KElem)>,
}

impl Normalized {
    /// Coefficients of P(z) = z^k g(z), k = -min m, low degree first.
    pub fn poly(&self) -> (Vec<KElem>, i64) {
        let lo = *self.beta.keys().next().unwrap();
        let hi = *self.beta.keys().last().unwrap();
        let f = self.lambda_sq.field();
        let mut p = vec![KElem::from_int(f, 0); (hi - lo + 1) as usize];
        for (m, b) in &self.beta {
            p[(m - lo) as usize] = b.clone();
        }
        (p, -lo)
    }

    pub fn is_constant(&self) -> bool {
        self.beta.len() == 1 && self.beta.contains_key(&0)
    }
}

/// `None` when f vanishes identically. Requires a complex-pair space, polynomial degree 0 in
/// n, and a self-conjugate input.
pub fn normalize(f: &ExpPoly) -> Result<Option<Normalized>> {
    if !f.space.conj_pair {
        return Err(Error::RealSpectrum);
    }
    let g = f.merge_equal_bases();
    if g.is_zero() {
        return Ok(None);
    }
    if g.n_degree() > 0 {
        return Err(Error::Internal(
            "n-polynomial coefficients on a complex-pair space".into(),
        ));
    }
    if !g.is_self_conjugate() {
        return Err(Error::Internal(
            "exponential polynomial is not self-conjugate".into(),
        ));
    }
    let mods: Vec<(i64, KElem, KElem)> = g
        .terms()
        .map(|(k, c)| {
            (
                k.e[0] as i64 - k.e[1] as i64,
                c.clone(),
                g.monomial_base(&k.e).abs_sq(),
            )
        })
        .collect();
    let top = mods
        .iter()
        .map(|t| &t.2)
        .max_by(|a, b| a.cmp_real(b))
        .unwrap()
        .clone();
    let mut beta = BTreeMap::new();
    let mut residual = vec![];
    for (m, c, a) in mods {
        if a.cmp_real(&top) == Ordering::Equal {
            // equal modulus and equal m means equal base, already merged
            let prev = beta.insert(m, c);
            debug_assert!(prev.is_none());
        } else {
            residual.push((c, a.div(&top).expect("positive modulus")));
        }
    }
    Ok(Some(Normalized {
        beta,
        lambda_sq: top,
        residual,
    }))
}
