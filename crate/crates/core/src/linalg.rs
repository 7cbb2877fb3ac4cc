//! Small dense linear algebra over exact fields.

use crate::kernel::upoly::{self, FieldElem};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Mat<T> = Vec<Vec<T>>;

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier, monic, low degree first.
pub fn char_poly_q(m: &Mat<BigRational>) -> Vec<BigRational> {
    let n = m.len();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk: Mat<BigRational> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = M * M_{k-1} + c_{n-k+1} I
        let mut next = mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(m, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / BigRational::from_integer((k as i64).into());
    }
    c
}

pub fn mul<T: FieldElem>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let n = a.len();
    let p = b[0].len();
    let k = b.len();
    let mut out = Vec::with_capacity(n);
    for row in a.iter() {
        let mut r = Vec::with_capacity(p);
        for j in 0..p {
            let mut acc = row[0].zero_like();
            for (t, x) in row.iter().enumerate().take(k) {
                if !x.is_zero_elem() {
                    acc = acc.fadd(&x.fmul(&b[t][j]));
                }
            }
            r.push(acc);
        }
        out.push(r);
    }
    out
}

pub fn mat_vec<T: FieldElem>(a: &Mat<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            let mut acc = v[0].zero_like();
            for (x, y) in row.iter().zip(v) {
                acc = acc.fadd(&x.fmul(y));
            }
            acc
        })
        .collect()
}

pub fn identity<T: FieldElem>(proto: &T, n: usize) -> Mat<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        proto.one_like()
                    } else {
                        proto.zero_like()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &Mat<T>) -> Mat<T> {
    let n = a.len();
    let m = a[0].len();
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref<T: FieldElem>(a: &mut Mat<T>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero_elem()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].finv();
        for j in 0..cols {
            a[r][j] = a[r][j].fmul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero_elem() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = f.fmul(&a[r][j]);
                    a[i][j] = a[i][j].fsub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: FieldElem>(a: &Mat<T>) -> usize {
    let mut b = a.clone();
    rref(&mut b).len()
}

/// Basis of the null space {x : A x = 0}.
pub fn kernel<T: FieldElem>(a: &Mat<T>) -> Vec<Vec<T>> {
    let mut b = a.clone();
    let cols = a[0].len();
    let pivots = rref(&mut b);
    let proto = a[0][0].clone();
    let mut out = vec![];
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![proto.zero_like(); cols];
        v[free] = proto.one_like();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = b[r][free].fneg();
        }
        out.push(v);
    }
    out
}

pub fn inverse<T: FieldElem>(a: &Mat<T>) -> Option<Mat<T>> {
    let n = a.len();
    let proto = a[0][0].clone();
    let mut aug: Mat<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    proto.one_like()
                } else {
                    proto.zero_like()
                });
            }
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<T: FieldElem>(a: &Mat<T>) -> T {
    let n = a.len();
    let mut b = a.clone();
    let mut d = a[0][0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !b[i][c].is_zero_elem()) else {
            return a[0][0].zero_like();
        };
        if p != c {
            b.swap(p, c);
            d = d.fneg();
        }
        d = d.fmul(&b[c][c]);
        let inv = b[c][c].finv();
        for i in c + 1..n {
            if b[i][c].is_zero_elem() {
                continue;
            }
            let f = b[i][c].fmul(&inv);
            for j in c..n {
                let t = f.fmul(&b[c][j]);
                b[i][j] = b[i][j].fsub(&t);
            }
        }
    }
    d
}

/// Solves A x = b for square invertible A.
pub fn solve<T: FieldElem>(a: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    let inv = inverse(a)?;
    Some(mat_vec(&inv, b))
}

pub fn mat_pow<T: FieldElem>(a: &Mat<T>, e: u64) -> Mat<T> {
    let mut r = identity(&a[0][0], a.len());
    let mut b = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(&r, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul(&b, &b);
        }
    }
    r
}

/// Characteristic polynomial for a matrix over any field, via the Hessenberg-free Berkowitz-style
/// interpolation: det(x_i I - A) at n+1 integer points.
pub fn char_poly<T: FieldElem>(a: &Mat<T>) -> Vec<T> {
    let n = a.len();
    let proto = a[0][0].clone();
    let vals: Vec<T> = (0..=n)
        .map(|x| {
            let mut m = a.clone();
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = v.fneg();
                    if i == j {
                        *v = v.fadd(&proto.from_int_like(x as i64));
                    }
                }
            }
            det(&m)
        })
        .collect();
    let mut acc: Vec<T> = vec![];
    for (i, v) in vals.iter().enumerate() {
        let mut basis = vec![proto.one_like()];
        let mut den = proto.one_like();
        for j in 0..=n {
            if j != i {
                basis = upoly::mul(
                    &basis,
                    &[proto.from_int_like(-(j as i64)), proto.one_like()],
                );
                den = den.fmul(&proto.from_int_like(i as i64 - j as i64));
            }
        }
        acc = upoly::add(&acc, &upoly::scale(&basis, &v.fmul(&den.finv())));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn m(rows: &[[i64; 3]]) -> Mat<BigRational> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x, 1)).collect())
            .collect()
    }

    #[test]
    fn char_poly_methods_agree() {
        let a = m(&[[1, 2, 0], [3, -1, 4], [0, 5, 2]]);
        assert_eq!(char_poly_q(&a), char_poly(&a));
        let d = vec![
            vec![q(2, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 2), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1)],
        ];
        // (x-2)(x-1/2)(x-1) = x^3 - 7/2 x^2 + 7/2 x - 1
        assert_eq!(char_poly_q(&d), vec![q(-1, 1), q(7, 2), q(-7, 2), q(1, 1)]);
    }

    #[test]
    fn inverse_and_kernel() {
        let a = m(&[[2, 1, 0], [1, 1, 0], [0, 0, 3]]);
        let i = inverse(&a).unwrap();
        assert_eq!(mul(&a, &i), identity(&q(1, 1), 3));
        let s = m(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert!(inverse(&s).is_none());
        let k = kernel(&s);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&s, &k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(det(&s), q(0, 1));
        assert_eq!(rank(&s), 2);
    }
}
