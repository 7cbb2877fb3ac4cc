//! Sign-condition systems along the orbit: closed forms of A^n s for point sources, and the
//! placeholder set over the coefficients of A^n in the basis I, A, A^2 for set sources.

use crate::asc::compose;
use crate::exppoly::ExpPoly;
use crate::linalg::{self, Mat};
use crate::semialg::formula::{compose_homog, linear_form, SignCondition};
use crate::semialg::{qe_exists, MPoly, QeLimits, QeUnknown, SemialgebraicSet, Sign};
use crate::spectral::{RationalMatrix, SpectralData};
use num_rational::BigRational;
use num_traits::Zero;

/// A conjunction of sign conditions on exponential polynomials in n.
pub type Conj = Vec<(ExpPoly, Sign)>;

fn lift_conj(conj: &[SignCondition], ys: &[ExpPoly], spec: &SpectralData) -> Conj {
    conj.iter()
        .map(|a| (compose(&a.poly, ys, &spec.forward.space), a.rel))
        .collect()
}

/// One conjunction per target disjunct, in the closed form of A^n s.
pub fn point_atoms(spec: &SpectralData, s: &[BigRational], target: &SemialgebraicSet) -> Vec<Conj> {
    let ys = spec.forward.apply(s);
    target.dnf.iter().map(|c| lift_conj(c, &ys, spec)).collect()
}

/// A^n = sum_k c_k(n) A^k over the powers below the degree r of the minimal polynomial.
#[derive(Clone, Debug)]
pub struct PowerBasis {
    pub powers: Vec<RationalMatrix>,
    /// Entry positions at which the powers are linearly independent.
    pos: Vec<(usize, usize)>,
    /// Inverse of the r x r matrix (A^k)_{pos_p}.
    minv: Mat<BigRational>,
}

impl PowerBasis {
    pub fn new(a: &RationalMatrix) -> Self {
        let n = a.dim();
        let flat = |m: &RationalMatrix| -> Vec<BigRational> {
            (0..n * n).map(|i| m.get(i / n, i % n).clone()).collect()
        };
        let mut powers = vec![RationalMatrix::identity(n)];
        loop {
            let next = powers.last().unwrap().mul(a);
            let mut rows: Vec<Vec<BigRational>> = powers.iter().map(flat).collect();
            rows.push(flat(&next));
            if linalg::rank(&rows) < rows.len() {
                break;
            }
            powers.push(next);
        }
        let r = powers.len();
        // greedy choice of independent positions
        let mut pos: Vec<(usize, usize)> = vec![];
        for idx in 0..n * n {
            let mut trial = pos.clone();
            trial.push((idx / n, idx % n));
            let m: Mat<BigRational> = trial
                .iter()
                .map(|&(i, j)| powers.iter().map(|p| p.get(i, j).clone()).collect())
                .collect();
            if linalg::rank(&m) == trial.len() {
                pos = trial;
                if pos.len() == r {
                    break;
                }
            }
        }
        let m: Mat<BigRational> = pos
            .iter()
            .map(|&(i, j)| powers.iter().map(|p| p.get(i, j).clone()).collect())
            .collect();
        let minv = linalg::inverse(&m).expect("independent positions");
        PowerBasis { powers, pos, minv }
    }

    pub fn rank(&self) -> usize {
        self.powers.len()
    }

    /// Exact c(n) from the matrix A^n.
    pub fn coeffs_exact(&self, an: &RationalMatrix) -> Vec<BigRational> {
        let v: Vec<BigRational> = self
            .pos
            .iter()
            .map(|&(i, j)| an.get(i, j).clone())
            .collect();
        linalg::mat_vec(&self.minv, &v)
    }

    /// Companion matrix C with c(n + 1) = C c(n), padded with zero rows and columns to size dim.
    pub fn companion(&self, a: &RationalMatrix, dim: usize) -> RationalMatrix {
        let r = self.rank();
        let p = self.coeffs_exact(&self.powers.last().unwrap().mul(a));
        let mut rows = vec![vec![BigRational::zero(); dim]; dim];
        for k in 0..r {
            if k + 1 < r {
                rows[k + 1][k] = BigRational::from_integer(1.into());
            } else {
                for (j, pj) in p.iter().enumerate() {
                    rows[j][k] = pj.clone();
                }
            }
        }
        RationalMatrix::new(rows).unwrap()
    }

    /// c(n) as exponential polynomials.
    pub fn coeffs_exp(&self, spec: &SpectralData) -> Vec<ExpPoly> {
        let sp = &spec.forward.space;
        (0..self.rank())
            .map(|k| {
                self.pos
                    .iter()
                    .enumerate()
                    .fold(ExpPoly::zero(sp), |acc, (p, &(i, j))| {
                        let w = &self.minv[k][p];
                        if w.is_zero() {
                            acc
                        } else {
                            acc.add(&spec.forward.entries[i][j].scale_rat(w))
                        }
                    })
            })
            .collect()
    }

    /// U = { y : exists x in S with T(sum_k y_k A^k x) }, over r + n variables of which only the
    /// first r remain free.
    pub fn placeholder_set(
        &self,
        s: &SemialgebraicSet,
        t: &SemialgebraicSet,
        limits: QeLimits,
    ) -> Result<SemialgebraicSet, QeUnknown> {
        let n = s.num_vars;
        let r = self.rank();
        let nv = r + n;
        let xs: Vec<usize> = (r..nv).collect();
        // z_j = sum_k y_k (A^k x)_j as an integer polynomial over a positive denominator
        let subs: Vec<(MPoly, num_bigint::BigInt)> = (0..n)
            .map(|j| {
                let mut den = num_bigint::BigInt::from(1);
                let forms: Vec<(MPoly, num_bigint::BigInt)> = self
                    .powers
                    .iter()
                    .map(|p| linear_form(&p.rows()[j], n))
                    .collect();
                for (_, d) in &forms {
                    den = num_integer::Integer::lcm(&den, d);
                }
                let mut z = MPoly::zero(nv);
                for (k, (f, d)) in forms.iter().enumerate() {
                    let f = f.remap(nv, &xs).scale(&(&den / d));
                    z = z.add(&f.mul(&MPoly::var(nv, k)));
                }
                (z, den)
            })
            .collect();
        let tt = SemialgebraicSet {
            num_vars: nv,
            dnf: t
                .dnf
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|a| SignCondition {
                            poly: compose_homog(&a.poly, &subs),
                            rel: a.rel,
                        })
                        .collect()
                })
                .collect(),
        };
        let ss = SemialgebraicSet {
            num_vars: nv,
            dnf: s
                .dnf
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|a| SignCondition {
                            poly: a.poly.remap(nv, &xs),
                            rel: a.rel,
                        })
                        .collect()
                })
                .collect(),
        };
        qe_exists(&ss.intersect(&tt), &xs, limits)
    }
}

/// One conjunction per disjunct of the placeholder set, along c(n).
pub fn set_atoms(spec: &SpectralData, pb: &PowerBasis, u: &SemialgebraicSet) -> Vec<Conj> {
    let mut ys = pb.coeffs_exp(spec);
    while ys.len() < u.num_vars {
        ys.push(ExpPoly::zero(&spec.forward.space));
    }
    u.dnf.iter().map(|c| lift_conj(c, &ys, spec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::classify_and_decompose;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn companion_steps_the_coefficients() {
        for rows in [
            &[&[3i64, -4, 0][..], &[4, 3, 0], &[0, 0, 1]][..],
            &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]],
            &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 5]],
        ] {
            let a = RationalMatrix::from_i64(rows);
            let pb = PowerBasis::new(&a);
            let c = pb.companion(&a, 5);
            let mut y = vec![BigRational::zero(); 5];
            y[0] = q(1);
            let mut an = RationalMatrix::identity(3);
            for _ in 0..8 {
                let mut want = pb.coeffs_exact(&an);
                want.resize(5, BigRational::zero());
                assert_eq!(y, want);
                y = c.apply(&y);
                an = an.mul(&a);
            }
        }
    }

    #[test]
    fn power_basis_reconstructs_powers() {
        for rows in [
            &[&[3i64, -4, 0][..], &[4, 3, 0], &[0, 0, 1]][..],
            &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]],
            &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]],
        ] {
            let a = RationalMatrix::from_i64(rows);
            let pb = PowerBasis::new(&a);
            let sd = classify_and_decompose(&a).unwrap();
            let ce = pb.coeffs_exp(&sd);
            for n in 0..8u64 {
                let an = a.pow(n);
                let c = pb.coeffs_exact(&an);
                let mut sum = RationalMatrix::new(vec![vec![q(0); 3]; 3]).unwrap();
                for (k, p) in pb.powers.iter().enumerate() {
                    let scaled = RationalMatrix::new(
                        p.rows()
                            .iter()
                            .map(|r| r.iter().map(|x| x * &c[k]).collect())
                            .collect(),
                    )
                    .unwrap();
                    sum = RationalMatrix::new(
                        (0..3)
                            .map(|i| (0..3).map(|j| sum.get(i, j) + scaled.get(i, j)).collect())
                            .collect(),
                    )
                    .unwrap();
                }
                assert_eq!(sum, an);
                for k in 0..pb.rank() {
                    assert_eq!(ce[k].eval(n).as_rational(), Some(c[k].clone()));
                }
            }
        }
        let scalar = PowerBasis::new(&RationalMatrix::from_i64(&[
            &[2, 0, 0],
            &[0, 2, 0],
            &[0, 0, 2],
        ]));
        assert_eq!(scalar.rank(), 1);
    }
}
