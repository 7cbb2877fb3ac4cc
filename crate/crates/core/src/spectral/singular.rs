//! Dimension reduction for singular matrices.
//!
//! With V = ker(A^3) + im(A^3) (Fitting decomposition) and k the multiplicity of the eigenvalue
//! zero, A^n x = Q1 B^(n-k) (B^k y) for n >= k, where the columns of Q1 span im(A^3), B is the
//! invertible restriction of A to that span and y are the coordinates of x along it.

use super::RationalMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::semialg::formula::{linear_form, SignCondition};
use crate::semialg::qe::{qe_exists, QeLimits};
use crate::semialg::{MPoly, SemialgebraicSet};
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct SingularReduction {
    /// Algebraic multiplicity of the eigenvalue zero; steps n < offset must be checked directly.
    pub offset: u64,
    /// Invertible block (None when A is nilpotent).
    pub block: Option<RationalMatrix>,
    /// 3 x m matrix sending reduced coordinates back to the original space.
    pub lift: Mat<BigRational>,
    /// m x 3 matrix sending x to B^k y.
    pub project: Mat<BigRational>,
    /// Reduced source set (projection of S).
    pub source: SemialgebraicSet,
    /// Reduced target set { w : lift w in T }.
    pub target: SemialgebraicSet,
}

impl SingularReduction {
    pub fn dim(&self) -> usize {
        self.project.len()
    }

    pub fn project_point(&self, x: &[BigRational]) -> Vec<BigRational> {
        linalg::mat_vec(&self.project, x)
    }

    pub fn lift_point(&self, w: &[BigRational]) -> Vec<BigRational> {
        linalg::mat_vec(&self.lift, w)
    }
}

/// Image of a set under a rational linear map of full row rank.
pub fn linear_image(
    set: &SemialgebraicSet,
    l: &Mat<BigRational>,
    limits: QeLimits,
) -> Result<SemialgebraicSet> {
    let m = l.len();
    let n = set.num_vars;
    let nv = m + n;
    // variables: w_0..w_{m-1}, then x_0..x_{n-1}
    let shift: Vec<usize> = (m..nv).collect();
    let mut eqs = vec![];
    for (i, row) in l.iter().enumerate() {
        let (p, d) = linear_form(row, n);
        let p = p.remap(nv, &shift).sub(&MPoly::var(nv, i).scale(&d));
        eqs.push(SignCondition::zero(p));
    }
    let dnf = set
        .dnf
        .iter()
        .map(|c| {
            let mut c2: Vec<SignCondition> = c
                .iter()
                .map(|a| SignCondition {
                    poly: a.poly.remap(nv, &shift),
                    rel: a.rel,
                })
                .collect();
            c2.extend(eqs.iter().cloned());
            c2
        })
        .collect();
    let big = SemialgebraicSet { num_vars: nv, dnf };
    let bound: Vec<usize> = (m..nv).collect();
    let proj = qe_exists(&big, &bound, limits).map_err(|e| Error::Qe(e.0))?;
    let back: Vec<usize> = (0..nv).map(|i| if i < m { i } else { 0 }).collect();
    let dnf = proj
        .dnf
        .iter()
        .map(|c| {
            c.iter()
                .map(|a| SignCondition {
                    poly: a.poly.remap(m, &back),
                    rel: a.rel,
                })
                .collect()
        })
        .collect();
    Ok(SemialgebraicSet { num_vars: m, dnf })
}

pub fn singular_reduce(
    a: &RationalMatrix,
    s: &SemialgebraicSet,
    t: &SemialgebraicSet,
) -> Result<SingularReduction> {
    if !a.is_singular() {
        return Err(Error::NotSingular);
    }
    let n = a.dim();
    if s.num_vars != n || t.num_vars != n {
        return Err(Error::Dimension(format!("sets must live in dimension {n}")));
    }
    let an = a.pow(n as u64);
    let ker = linalg::kernel(&an.rows().to_vec());
    let k = ker.len();
    let m = n - k;
    // independent columns of A^n span its image
    let mut img: Vec<Vec<BigRational>> = vec![];
    for j in 0..n {
        let col: Vec<BigRational> = (0..n).map(|i| an.get(i, j).clone()).collect();
        let mut trial = img.clone();
        trial.push(col.clone());
        if linalg::rank(&trial) == trial.len() {
            img = trial;
        }
    }
    if img.len() != m {
        return Err(Error::Internal(
            "image and kernel dimensions disagree".into(),
        ));
    }
    let cols: Vec<Vec<BigRational>> = img.iter().chain(ker.iter()).cloned().collect();
    let q = linalg::transpose(&cols);
    let qinv = linalg::inverse(&q)
        .ok_or_else(|| Error::Internal("fitting basis not invertible".into()))?;
    let lift: Mat<BigRational> = (0..n).map(|i| q[i][..m].to_vec()).collect();
    if m == 0 {
        return Ok(SingularReduction {
            offset: k as u64,
            block: None,
            lift,
            project: vec![],
            source: SemialgebraicSet::whole(0),
            target: SemialgebraicSet::whole(0),
        });
    }
    let conj = linalg::mul(&linalg::mul(&qinv, &a.rows().to_vec()), &q);
    for i in 0..n {
        for j in 0..n {
            if (i < m) != (j < m) && !conj[i][j].is_zero() {
                return Err(Error::Internal(
                    "fitting decomposition is not block diagonal".into(),
                ));
            }
        }
    }
    let b = RationalMatrix::new((0..m).map(|i| conj[i][..m].to_vec()).collect())?;
    let pi: Mat<BigRational> = qinv[..m].to_vec();
    let project = linalg::mul(&b.pow(k as u64).rows().to_vec(), &pi);
    let target = t.preimage_linear(&lift);
    let source = linear_image(s, &project, QeLimits::default())?;
    Ok(SingularReduction {
        offset: k as u64,
        block: Some(b),
        lift,
        project,
        source,
        target,
    })
}
