//! Sparse multivariate polynomials with integer coefficients.

use crate::kernel::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            if !a.is_one() || constant {
                write!(f, "{a}")?;
            }
            let mut star = !a.is_one() && !constant;
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    if star {
                        write!(f, "*")?;
                    }
                    write!(f, "x{}", i + 1)?;
                    if x > 1 {
                        write!(f, "^{x}")?;
                    }
                    star = true;
                }
            }
        }
        Ok(())
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigInt) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Divides by the positive content (preserves sign).
    pub fn primitive_pos(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c / &g))
                .collect(),
        }
    }

    /// Primitive with positive leading term (for equations, where sign does not matter).
    pub fn primitive_signed(&self) -> Self {
        let p = self.primitive_pos();
        match p.terms.iter().next_back() {
            Some((_, c)) if c.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Coefficients as a polynomial in variable v, low degree first.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: usize, cs: &[MPoly]) -> Self {
        let nvars = cs[0].nvars;
        let mut r = Self::zero(nvars);
        for (k, c) in cs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                r.add_term(e2, x.clone());
            }
        }
        r
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                r.add_term(e2, c * BigInt::from(e[v]));
            }
        }
        r
    }

    /// Exact value at a rational point.
    pub fn eval_rat(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(x[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes each variable i by polynomial `subs[i]` (all over a common variable set).
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        let nv = subs[0].nvars;
        let mut r = MPoly::zero(nv);
        let mut cache: BTreeMap<(usize, u32), MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let p = cache
                        .entry((i, k))
                        .or_insert_with(|| subs[i].pow(k))
                        .clone();
                    t = t.mul(&p);
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Substitutes variable v by a rational value, scaling by den^deg_v to stay integral.
    /// The scale factor is positive, so signs are preserved.
    pub fn subst_rational(&self, v: usize, q: &BigRational) -> MPoly {
        let cs = self.coeffs_in(v);
        let d = cs.len() - 1;
        let mut r = MPoly::zero(self.nvars);
        for (k, c) in cs.iter().enumerate() {
            let f =
                num_traits::pow(q.numer().clone(), k) * num_traits::pow(q.denom().clone(), d - k);
            r = r.add(&c.scale(&f));
        }
        r
    }

    /// Univariate view if only variable v occurs.
    pub fn to_univariate(&self, v: usize) -> Option<IntPoly> {
        if self
            .terms
            .keys()
            .any(|e| e.iter().enumerate().any(|(i, &k)| i != v && k > 0))
        {
            return None;
        }
        let d = self.degree_in(v) as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for (e, x) in &self.terms {
            c[e[v] as usize] = x.clone();
        }
        Some(IntPoly::new(c))
    }

    pub fn from_univariate(p: &IntPoly, nvars: usize, v: usize) -> MPoly {
        let mut r = MPoly::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[v] = k as u32;
            r.add_term(e, c.clone());
        }
        r
    }

    /// Re-indexes variables into a space of `nvars` variables: old variable i becomes map[i].
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut r = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[i]] += k;
                }
            }
            r.add_term(e2, c.clone());
        }
        r
    }

    /// Exact quotient self / d, or None when d does not divide self.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            if re.iter().zip(de).any(|(a, b)| a < b) || !(rc % dc).is_zero() {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let t = MPoly::monomial(e, rc / dc);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Resultant in variable v of r(x_v) and self, by fraction-free elimination of the
    /// Sylvester matrix.
    pub fn resultant_with(&self, v: usize, r: &IntPoly) -> MPoly {
        let nv = self.nvars;
        let p = self.coeffs_in(v);
        let dp = p.len() - 1;
        let dr = r.degree() as usize;
        if dp == 0 {
            return self.pow(dr as u32);
        }
        let rc: Vec<MPoly> = r
            .coeffs()
            .iter()
            .map(|c| MPoly::constant(nv, c.clone()))
            .collect();
        let n = dp + dr;
        let mut m = vec![vec![MPoly::zero(nv); n]; n];
        for i in 0..dp {
            for (k, c) in rc.iter().enumerate() {
                m[i][i + dr - k] = c.clone();
            }
        }
        for i in 0..dr {
            for (k, c) in p.iter().enumerate() {
                m[dp + i][i + dp - k] = c.clone();
            }
        }
        bareiss_det(m)
    }
}

fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    let nv = m[0][0].nvars;
    let mut sign = false;
    let mut prev = MPoly::one(nv);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return MPoly::zero(nv);
            };
            m.swap(k, sw);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_coeffs() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x
            .mul(&x)
            .add(&x.mul(&y).scale(&3.into()))
            .sub(&MPoly::one(2));
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(MPoly::from_coeffs_in(0, &cs), p);
        assert_eq!(p.degree_in(1), 1);
        let v = p.eval_rat(&[
            BigRational::from_integer(2.into()),
            BigRational::from_integer(1.into()),
        ]);
        assert_eq!(v, BigRational::from_integer(9.into()));
        assert_eq!(p.to_string(), "x1^2 + 3*x1*x2 - 1");
    }

    #[test]
    fn rational_substitution_scales_positively() {
        let x = MPoly::var(1, 0);
        let p = x.mul(&x).sub(&MPoly::constant(1, 2.into()));
        let s = p.subst_rational(0, &BigRational::new(3.into(), 2.into()));
        // (9/4 - 2) * 4 = 1
        assert_eq!(s.as_constant(), Some(BigInt::from(1)));
    }

    #[test]
    fn resultant_eliminates_algebraic_variable() {
        // res_x(x^2 - 2, y - x) = y^2 - 2
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let r = y.sub(&x).resultant_with(0, &IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(
            r.to_univariate(1).unwrap().primitive(),
            IntPoly::from_i64(&[-2, 0, 1])
        );
        let p = x.mul(&y).sub(&MPoly::one(2));
        assert_eq!(p.mul(&y).div_exact(&y), Some(p.clone()));
        assert_eq!(p.div_exact(&y), None);
    }
}
