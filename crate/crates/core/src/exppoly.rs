//! Exponential polynomials in n: finite sums of c * n^j * z1^(n e1) z2^(n e2) z3^(n e3) with
//! coefficients and bases in a number field K.

use crate::field::{Field, KElem};
use crate::kernel::dyadic::{CIv, Iv};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// The bases z1, z2, z3. When `conj_pair` is set, z2 is the complex conjugate of z1 and z3 is real.
pub struct ExpSpace {
    pub field: Field,
    pub bases: Vec<KElem>,
    pub conj_pair: bool,
}

impl fmt::Debug for ExpSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExpSpace({:?}, conj_pair={})",
            self.bases, self.conj_pair
        )
    }
}

impl ExpSpace {
    pub fn new(field: Field, bases: Vec<KElem>, conj_pair: bool) -> Arc<Self> {
        assert!(bases.len() <= 3);
        Arc::new(ExpSpace {
            field,
            bases,
            conj_pair,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Key {
    pub e: [u32; 3],
    pub j: u32,
}

impl Key {
    pub const ONE: Key = Key { e: [0, 0, 0], j: 0 };

    pub fn add(&self, o: &Key) -> Key {
        Key {
            e: [self.e[0] + o.e[0], self.e[1] + o.e[1], self.e[2] + o.e[2]],
            j: self.j + o.j,
        }
    }

    /// Exchange of the first two exponents (complex conjugation of the monomial).
    pub fn swapped(&self) -> Key {
        Key {
            e: [self.e[1], self.e[0], self.e[2]],
            j: self.j,
        }
    }
}

#[derive(Clone)]
pub struct ExpPoly {
    pub space: Arc<ExpSpace>,
    terms: BTreeMap<Key, KElem>,
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{:?}{:?}", k.e, c))
            .collect();
        write!(f, "ExpPoly[{}]", v.join(" + "))
    }
}

impl PartialEq for ExpPoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl ExpPoly {
    pub fn zero(space: &Arc<ExpSpace>) -> Self {
        ExpPoly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<ExpSpace>, c: KElem) -> Self {
        Self::term(space, Key::ONE, c)
    }

    pub fn rational(space: &Arc<ExpSpace>, q: BigRational) -> Self {
        Self::constant(space, KElem::from_rational(&space.field, q))
    }

    pub fn term(space: &Arc<ExpSpace>, k: Key, c: KElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        ExpPoly {
            space: space.clone(),
            terms,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &KElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &Key) -> Option<&KElem> {
        self.terms.get(k)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value if the polynomial does not depend on n.
    pub fn as_constant(&self) -> Option<KElem> {
        match self.terms.len() {
            0 => Some(KElem::from_int(&self.space.field, 0)),
            1 => self.terms.get(&Key::ONE).cloned(),
            _ => None,
        }
    }

    fn insert_add(terms: &mut BTreeMap<Key, KElem>, k: Key, c: KElem) {
        match terms.get_mut(&k) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    terms.remove(&k);
                }
            }
            None => {
                if !c.is_zero() {
                    terms.insert(k, c);
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            Self::insert_add(&mut t, *k, c.clone());
        }
        ExpPoly {
            space: self.space.clone(),
            terms: t,
        }
    }

    pub fn neg(&self) -> Self {
        ExpPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                Self::insert_add(&mut t, k1.add(k2), c1.mul(c2));
            }
        }
        ExpPoly {
            space: self.space.clone(),
            terms: t,
        }
    }

    pub fn scale(&self, c: &KElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        ExpPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
        }
    }

    pub fn scale_rat(&self, q: &BigRational) -> Self {
        self.scale(&KElem::from_rational(&self.space.field, q.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(&self.space, KElem::from_int(&self.space.field, 1));
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Highest power of n appearing.
    pub fn n_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.j).max().unwrap_or(0)
    }

    /// Exact value at n.
    pub fn eval(&self, n: u64) -> KElem {
        let f = &self.space.field;
        let mut acc = KElem::from_int(f, 0);
        let powers: Vec<KElem> = self.space.bases.iter().map(|b| b.pow(n)).collect();
        let mut cache: BTreeMap<[u32; 3], KElem> = BTreeMap::new();
        for (k, c) in &self.terms {
            let m = cache
                .entry(k.e)
                .or_insert_with(|| {
                    let mut m = KElem::from_int(f, 1);
                    for (i, &e) in k.e.iter().enumerate() {
                        if e > 0 {
                            m = m.mul(&powers[i].pow(e as u64));
                        }
                    }
                    m
                })
                .clone();
            let nj = KElem::from_rational(
                f,
                BigRational::from_integer(num_bigint::BigInt::from(n).pow(k.j)),
            );
            acc = acc.add(&c.mul(&m).mul(&nj));
        }
        acc
    }

    /// Enclosure of the value at n, for n too large for exact evaluation.
    pub fn enclose(&self, n: u64, prec: u64) -> CIv {
        let wp = prec + 64 - n.leading_zeros() as u64;
        let powers: Vec<CIv> = self
            .space
            .bases
            .iter()
            .map(|b| b.enclose(wp).pow(n, wp))
            .collect();
        let mut acc = CIv::zero();
        for (k, c) in &self.terms {
            let mut t = c.enclose(wp);
            for (i, &e) in k.e.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i].pow(e as u64, wp), wp);
                }
            }
            if k.j > 0 {
                t = t.scale(&Iv::from_int(num_bigint::BigInt::from(n).pow(k.j)), wp);
            }
            acc = acc.add(&t, wp);
        }
        acc
    }

    /// Value of the monomial base z^e (without coefficient and n-power).
    pub fn monomial_base(&self, e: &[u32; 3]) -> KElem {
        let mut m = KElem::from_int(&self.space.field, 1);
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                m = m.mul(&self.space.bases[i].pow(x as u64));
            }
        }
        m
    }

    /// Self-conjugacy: the coefficient of the swapped monomial is the conjugate coefficient.
    pub fn is_self_conjugate(&self) -> bool {
        if !self.space.conj_pair {
            return self.terms.values().all(|c| c.is_real());
        }
        self.terms
            .iter()
            .all(|(k, c)| match self.terms.get(&k.swapped()) {
                Some(d) => *d == c.conj(),
                None => false,
            })
    }

    /// Merges monomials with equal base value z^e into a single representative key. Only
    /// needed when the bases are multiplicatively dependent.
    pub fn merge_equal_bases(&self) -> Self {
        let one = KElem::from_int(&self.space.field, 1);
        let mut reps: Vec<([u32; 3], KElem)> = vec![([0, 0, 0], one)];
        let mut t = BTreeMap::new();
        // smallest total exponent first, so each class keeps its simplest key
        let mut keys: Vec<&Key> = self.terms.keys().collect();
        keys.sort_by_key(|k| (k.e.iter().sum::<u32>(), k.e));
        for k in keys {
            let c = &self.terms[k];
            let v = self.monomial_base(&k.e);
            let e = match reps.iter().find(|(_, w)| *w == v) {
                Some((e, _)) => *e,
                None => {
                    reps.push((k.e, v));
                    k.e
                }
            };
            Self::insert_add(&mut t, Key { e, j: k.j }, c.clone());
        }
        ExpPoly {
            space: self.space.clone(),
            terms: t,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDef;

    #[test]
    fn eval_and_products() {
        let f = FieldDef::quadratic(Some(BigRational::from_integer((-1).into())));
        let i = KElem::omega(&f);
        let sp = ExpSpace::new(
            f.clone(),
            vec![i.clone(), i.conj(), KElem::from_int(&f, 1)],
            true,
        );
        let half = KElem::from_rational(&f, BigRational::new(1.into(), 2.into()));
        // (i^n + (-i)^n) / 2
        let c = ExpPoly::term(&sp, Key { e: [1, 0, 0], j: 0 }, half.clone()).add(&ExpPoly::term(
            &sp,
            Key { e: [0, 1, 0], j: 0 },
            half,
        ));
        assert!(c.is_self_conjugate());
        let expect = [1, 0, -1, 0, 1];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(c.eval(n as u64), KElem::from_int(&f, *e));
        }
        let sq = c.mul(&c);
        assert!(sq.is_self_conjugate());
        assert_eq!(sq.eval(2), KElem::from_int(&f, 1));
        // (i * conj i)^n = 1 merges with the constant
        let m = sq.merge_equal_bases();
        assert!(m.len() < sq.len());
        assert_eq!(m.eval(3), sq.eval(3));
    }
}
