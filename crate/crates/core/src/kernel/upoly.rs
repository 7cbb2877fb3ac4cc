//! Dense univariate polynomials over an exact field, as plain coefficient vectors (low degree first).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Exact field element. Elements may carry their field as context, hence the `_like` constructors.
pub trait FieldElem: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// Caller guarantees the element is nonzero.
    fn finv(&self) -> Self;
}

impl FieldElem for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        self.recip()
    }
}

pub fn trim<T: FieldElem>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero_elem()) {
        p.pop();
    }
    p
}

pub fn deg<T: FieldElem>(p: &[T]) -> usize {
    p.len().saturating_sub(1)
}

pub fn add<T: FieldElem>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.fadd(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            _ => unreachable!(),
        });
    }
    trim(out)
}

pub fn neg<T: FieldElem>(a: &[T]) -> Vec<T> {
    a.iter().map(|c| c.fneg()).collect()
}

pub fn sub<T: FieldElem>(a: &[T], b: &[T]) -> Vec<T> {
    add(a, &neg(b))
}

pub fn mul<T: FieldElem>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let z = a[0].zero_like();
    let mut out = vec![z; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero_elem() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].fadd(&x.fmul(y));
        }
    }
    trim(out)
}

pub fn scale<T: FieldElem>(a: &[T], c: &T) -> Vec<T> {
    trim(a.iter().map(|x| x.fmul(c)).collect())
}

pub fn derivative<T: FieldElem>(a: &[T]) -> Vec<T> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.fmul(&c.from_int_like(i as i64)))
            .collect(),
    )
}

pub fn eval<T: FieldElem>(a: &[T], x: &T) -> T {
    let mut acc = x.zero_like();
    for c in a.iter().rev() {
        acc = acc.fmul(x).fadd(c);
    }
    acc
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem<T: FieldElem>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r: Vec<T> = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv = b[b.len() - 1].finv();
    let db = b.len() - 1;
    let mut q = vec![b[0].zero_like(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let t = r[r.len() - 1].fmul(&inv);
        for (i, c) in b.iter().enumerate() {
            r[k + i] = r[k + i].fsub(&t.fmul(c));
        }
        q[k] = t;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic<T: FieldElem>(a: &[T]) -> Vec<T> {
    match a.last() {
        None => vec![],
        Some(l) => scale(a, &l.finv()),
    }
}

pub fn gcd<T: FieldElem>(a: &[T], b: &[T]) -> Vec<T> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn squarefree<T: FieldElem>(a: &[T]) -> Vec<T> {
    let a = trim(a.to_vec());
    if a.len() <= 2 {
        return monic(&a);
    }
    let g = gcd(&a, &derivative(&a));
    monic(&div_rem(&a, &g).0)
}

/// Resultant over a field via the Euclidean recurrence.
pub fn resultant_field<T: FieldElem>(a: &[T], b: &[T]) -> T {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let proto = a.first().or(b.first()).cloned();
    let Some(proto) = proto else {
        panic!("resultant of zero polynomials");
    };
    if a.is_empty() || b.is_empty() {
        return proto.zero_like();
    }
    let (mut a, mut b) = (a, b);
    let mut acc = proto.one_like();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        if db == 0 {
            let mut r = acc;
            for _ in 0..da {
                r = r.fmul(&b[0]);
            }
            return r;
        }
        if da == 0 {
            let mut r = acc;
            for _ in 0..db {
                r = r.fmul(&a[0]);
            }
            return r;
        }
        let (_, r) = div_rem(&a, &b);
        if r.is_empty() {
            return proto.zero_like();
        }
        let dr = deg(&r);
        if (da * db) % 2 == 1 {
            acc = acc.fneg();
        }
        let lb = b[db].clone();
        for _ in 0..(da - dr) {
            acc = acc.fmul(&lb);
        }
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = q(&[1, 2, 3, 4]);
        let b = q(&[-1, 2]);
        let (qq, r) = div_rem(&a, &b);
        assert_eq!(add(&mul(&qq, &b), &r), a);
    }

    #[test]
    fn resultant_matches_product_formula() {
        // Res(x - 3, x^2 + 1) = (-1)^2 * (3^2 + 1) up to sign convention: a=x-3 deg1, value b(3)=10
        assert_eq!(
            resultant_field(&q(&[-3, 1]), &q(&[1, 0, 1])),
            BigRational::from_integer(10.into())
        );
        assert_eq!(
            resultant_field(&q(&[-2, 0, 1]), &q(&[-2, 0, 1])),
            BigRational::zero()
        );
    }

    #[test]
    fn squarefree_rational() {
        let a = mul(&q(&[-1, 1]), &mul(&q(&[-1, 1]), &q(&[2, 1])));
        assert_eq!(squarefree(&a), mul(&q(&[-1, 1]), &q(&[2, 1])));
    }
}
