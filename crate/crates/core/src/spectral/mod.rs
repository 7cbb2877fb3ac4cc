//! Exact eigenstructure of small rational matrices and closed forms for their powers.

pub mod singular;

pub use singular::{singular_reduce, SingularReduction};

use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, ExpSpace, Key};
use crate::field::{Field, FieldDef, KElem};
use crate::kernel::algebraic::{rational_sqrt, AlgebraicNumber};
use crate::kernel::isolate;
use crate::kernel::poly::IntPoly;
use crate::kernel::upoly;
use crate::linalg::{self, Mat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "matrix must be square, got {n} rows"
            )));
        }
        Ok(RationalMatrix { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix {
            rows: linalg::identity(&rat(0), n),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalMatrix {
            rows: linalg::mul(&self.rows, &o.rows),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        RationalMatrix {
            rows: linalg::mat_pow(&self.rows, e),
        }
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        linalg::mat_vec(&self.rows, v)
    }

    pub fn inverse(&self) -> Option<Self> {
        linalg::inverse(&self.rows).map(|rows| RationalMatrix { rows })
    }

    pub fn det(&self) -> BigRational {
        linalg::det(&self.rows)
    }

    pub fn is_singular(&self) -> bool {
        self.det().is_zero()
    }

    /// Block-diagonal embedding of a smaller matrix with trailing ones.
    pub fn embed3(&self) -> Self {
        let n = self.dim();
        let mut rows = linalg::identity(&rat(0), 3);
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = self.rows[i][j].clone();
            }
        }
        RationalMatrix { rows }
    }

    fn to_k(&self, f: &Field) -> Mat<KElem> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| KElem::from_rational(f, x.clone()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Integer characteristic polynomial together with the factor used to clear denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub poly: IntPoly,
    pub denominator: BigInt,
}

pub fn char_poly(a: &RationalMatrix) -> CharPoly {
    let c = linalg::char_poly_q(&a.rows);
    let mut l = BigInt::one();
    for q in &c {
        l = l.lcm(q.denom());
    }
    let poly = IntPoly::new(c.iter().map(|q| q.numer() * (&l / q.denom())).collect());
    let g = poly.content();
    CharPoly {
        poly: IntPoly::new(poly.coeffs().iter().map(|x| x / &g).collect()),
        denominator: l / g,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpectralKind {
    ComplexPair,
    RealDiagonal,
    RealJordan2,
    RealJordan3,
}

/// Distinct eigenvalue with algebraic multiplicity and index (size of largest Jordan block).
#[derive(Clone, Debug)]
pub struct Eigen {
    pub value: KElem,
    pub multiplicity: usize,
    pub index: usize,
}

/// Splitting field of a monic rational cubic together with its roots (with multiplicity).
pub fn splitting_field(chi: &[BigRational]) -> Result<(Field, Vec<KElem>)> {
    assert_eq!(chi.len(), 4, "cubic expected");
    let chi = upoly::monic(chi);
    let ip = IntPoly::from_rationals(&chi);
    let mut rational = vec![];
    let mut rest = chi.clone();
    for r in ip.rational_roots() {
        let lin = vec![-r.clone(), BigRational::one()];
        loop {
            let (q, rem) = upoly::div_rem(&rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            rational.push(r.clone());
        }
    }
    let roots: Vec<KElem>;
    let field: Field;
    match rest.len() - 1 {
        0 => {
            field = FieldDef::quadratic(None);
            roots = rational
                .iter()
                .map(|r| KElem::from_rational(&field, r.clone()))
                .collect();
        }
        2 => {
            let b = rest[1].clone();
            let c = rest[0].clone();
            let disc = &b * &b - rat(4) * &c;
            if rational_sqrt(&disc).is_some() {
                return Err(Error::Internal(
                    "quadratic factor unexpectedly reducible".into(),
                ));
            }
            field = FieldDef::quadratic(Some(disc));
            let w = KElem::omega(&field);
            let mb = KElem::from_rational(&field, -b);
            let half = BigRational::new(1.into(), 2.into());
            let mut rs: Vec<KElem> = rational
                .iter()
                .map(|r| KElem::from_rational(&field, r.clone()))
                .collect();
            rs.push(mb.add(&w).scale(&half));
            rs.push(mb.sub(&w).scale(&half));
            roots = rs;
        }
        3 => {
            let ivs = isolate::real_root_intervals(&ip.squarefree());
            let (lo, hi) = ivs[0].clone();
            let (a, b, c) = (chi[2].clone(), chi[1].clone(), chi[0].clone());
            let disc = rat(18) * &a * &b * &c - rat(4) * &a * &a * &a * &c + &a * &a * &b * &b
                - rat(4) * &b * &b * &b
                - rat(27) * &c * &c;
            let sq = rational_sqrt(&disc);
            field = FieldDef::new(
                &ip,
                lo,
                hi,
                if sq.is_some() {
                    None
                } else {
                    Some(disc.clone())
                },
            );
            let t = KElem::theta(&field);
            let w = match &sq {
                Some(d) => KElem::from_rational(&field, d.clone()),
                None => KElem::omega(&field),
            };
            let bq = t.add(&KElem::from_rational(&field, a.clone()));
            let dchi = t
                .mul(&t)
                .scale(&rat(3))
                .add(&t.scale(&(rat(2) * &a)))
                .add(&KElem::from_rational(&field, b));
            let s = w
                .div(&dchi)
                .ok_or_else(|| Error::Internal("repeated root in irreducible cubic".into()))?;
            let half = BigRational::new(1.into(), 2.into());
            roots = vec![
                t.clone(),
                bq.neg().add(&s).scale(&half),
                bq.neg().sub(&s).scale(&half),
            ];
        }
        _ => unreachable!(),
    }
    for r in &roots {
        if !upoly::eval(
            &chi.iter()
                .map(|c| KElem::from_rational(&field, c.clone()))
                .collect::<Vec<_>>(),
            r,
        )
        .is_zero()
        {
            return Err(Error::Internal(
                "eigenvalue fails characteristic equation".into(),
            ));
        }
    }
    Ok((field, roots))
}

/// Matrix power closed form: A^n = sum_k n^j_k mu_k^n M_k, valid for all integers n.
#[derive(Clone, Debug)]
pub struct PowerForm {
    pub space: Arc<ExpSpace>,
    /// entries of A^n as exponential polynomials
    pub entries: Vec<Vec<ExpPoly>>,
}

impl PowerForm {
    pub fn apply(&self, s: &[BigRational]) -> Vec<ExpPoly> {
        self.entries
            .iter()
            .map(|row| {
                let mut acc = ExpPoly::zero(&self.space);
                for (e, x) in row.iter().zip(s) {
                    if !x.is_zero() {
                        acc = acc.add(&e.scale_rat(x));
                    }
                }
                acc
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub kind: SpectralKind,
    pub field: Field,
    pub char_poly: CharPoly,
    pub eigen: Vec<Eigen>,
    /// A^n in the bases (lambda, conj lambda, rho) or the distinct real eigenvalues
    pub forward: PowerForm,
    /// A^-n in the reciprocal bases
    pub inverse: PowerForm,
    /// ComplexPair only: P = [v, conj v, w] and its inverse
    pub eigvecs: Option<(Mat<KElem>, Mat<KElem>)>,
}

/// Per-coordinate forward coefficients (a_i, b_i) with (A^n s)_i = a_i l^n + conj(a_i) conj(l)^n + b_i r^n.
#[derive(Clone, Debug)]
pub struct ForwardCoeffs {
    pub a: Vec<KElem>,
    pub b: Vec<KElem>,
}

fn normalize_first(v: Vec<KElem>) -> Vec<KElem> {
    let p = v
        .iter()
        .find(|x| !x.is_zero())
        .expect("nonzero eigenvector")
        .clone();
    let inv = p.inv().unwrap();
    v.iter().map(|x| x.mul(&inv)).collect()
}

fn shifted(a: &Mat<KElem>, mu: &KElem) -> Mat<KElem> {
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].sub(mu);
    }
    m
}

/// Basis functions (mu, j) and the matrices M_k, solved from A^0..A^(r-1).
fn power_form(
    a: &Mat<KElem>,
    basis: &[(usize, u32)],
    vals: &[KElem],
    space: &Arc<ExpSpace>,
    inverse: bool,
) -> PowerForm {
    let r = basis.len();
    let f = &space.field;
    let n = a.len();
    // V[n][k] = n^j mu^n
    let v: Mat<KElem> = (0..r)
        .map(|t| {
            basis
                .iter()
                .map(|&(bi, j)| {
                    vals[bi]
                        .pow(t as u64)
                        .mul(&KElem::from_int(f, (t as i64).pow(j)))
                })
                .collect()
        })
        .collect();
    let vinv = linalg::inverse(&v).expect("generalized Vandermonde is invertible");
    let pows: Vec<Mat<KElem>> = (0..r).map(|t| linalg::mat_pow(a, t as u64)).collect();
    let mut entries = vec![vec![ExpPoly::zero(space); n]; n];
    for (k, &(bi, j)) in basis.iter().enumerate() {
        // M_k = sum_t vinv[k][t] A^t
        let mut sign = KElem::from_int(f, 1);
        if inverse && j % 2 == 1 {
            sign = sign.neg();
        }
        let mut e = [0u32; 3];
        e[bi] = 1;
        let key = Key { e, j };
        for (row_i, row) in entries.iter_mut().enumerate() {
            for (col_j, cell) in row.iter_mut().enumerate() {
                let mut m = KElem::from_int(f, 0);
                for (t, pw) in pows.iter().enumerate() {
                    m = m.add(&vinv[k][t].mul(&pw[row_i][col_j]));
                }
                *cell = cell.add(&ExpPoly::term(space, key, m.mul(&sign)));
            }
        }
    }
    PowerForm {
        space: space.clone(),
        entries,
    }
}

/// Classifies an invertible matrix and builds closed forms for its positive and negative powers.
pub fn classify_and_decompose(a: &RationalMatrix) -> Result<SpectralData> {
    if a.dim() != 3 {
        return Err(Error::Dimension(
            "spectral decomposition expects a 3x3 matrix".into(),
        ));
    }
    if a.is_singular() {
        return Err(Error::Singular);
    }
    let cp = char_poly(a);
    let chi = linalg::char_poly_q(&a.rows);
    let (field, roots) = splitting_field(&chi)?;
    let ak = a.to_k(&field);
    let complex = roots.iter().any(|r| !r.is_real());
    let mut eigen: Vec<Eigen> = vec![];
    for r in &roots {
        if let Some(e) = eigen.iter_mut().find(|e| e.value == *r) {
            e.multiplicity += 1;
        } else {
            eigen.push(Eigen {
                value: r.clone(),
                multiplicity: 1,
                index: 1,
            });
        }
    }
    if complex {
        // order: lambda with positive imaginary part, its conjugate, the real eigenvalue
        let lam = eigen
            .iter()
            .find(|e| !e.value.is_real())
            .unwrap()
            .value
            .clone();
        let lam = if lam.enclose(64).im.sign() == Some(1) {
            lam
        } else {
            lam.conj()
        };
        let rho = eigen
            .iter()
            .find(|e| e.value.is_real())
            .unwrap()
            .value
            .clone();
        eigen = vec![
            Eigen {
                value: lam.clone(),
                multiplicity: 1,
                index: 1,
            },
            Eigen {
                value: lam.conj(),
                multiplicity: 1,
                index: 1,
            },
            Eigen {
                value: rho.clone(),
                multiplicity: 1,
                index: 1,
            },
        ];
    } else {
        eigen.sort_by(|x, y| x.value.cmp_real(&y.value));
        for e in eigen.iter_mut() {
            if e.multiplicity > 1 {
                let m = shifted(&ak, &e.value);
                let target = 3 - e.multiplicity;
                let mut p = m.clone();
                let mut k = 1;
                while linalg::rank(&p) > target {
                    p = linalg::mul(&p, &m);
                    k += 1;
                }
                e.index = k;
            }
        }
    }
    let kind = if complex {
        SpectralKind::ComplexPair
    } else {
        match eigen.iter().map(|e| e.index).max().unwrap() {
            1 => SpectralKind::RealDiagonal,
            2 => SpectralKind::RealJordan2,
            _ => SpectralKind::RealJordan3,
        }
    };
    let vals: Vec<KElem> = eigen.iter().map(|e| e.value.clone()).collect();
    let inv_vals: Vec<KElem> = vals.iter().map(|v| v.inv().unwrap()).collect();
    let basis: Vec<(usize, u32)> = eigen
        .iter()
        .enumerate()
        .flat_map(|(i, e)| (0..e.index as u32).map(move |j| (i, j)))
        .collect();
    let fwd_space = ExpSpace::new(field.clone(), vals.clone(), complex);
    let inv_space = ExpSpace::new(field.clone(), inv_vals, complex);
    let forward = power_form(&ak, &basis, &vals, &fwd_space, false);
    let inverse = power_form(&ak, &basis, &vals, &inv_space, true);
    let eigvecs = if complex {
        let v = normalize_first(linalg::kernel(&shifted(&ak, &vals[0])).pop().unwrap());
        let w = normalize_first(linalg::kernel(&shifted(&ak, &vals[2])).pop().unwrap());
        let vb: Vec<KElem> = v.iter().map(|x| x.conj()).collect();
        let p: Mat<KElem> = (0..3)
            .map(|i| vec![v[i].clone(), vb[i].clone(), w[i].clone()])
            .collect();
        let pinv = linalg::inverse(&p)
            .ok_or_else(|| Error::Internal("eigenvector matrix singular".into()))?;
        Some((p, pinv))
    } else {
        None
    };
    Ok(SpectralData {
        kind,
        field,
        char_poly: cp,
        eigen,
        forward,
        inverse,
        eigvecs,
    })
}

impl SpectralData {
    pub fn lambda(&self) -> Option<&KElem> {
        (self.kind == SpectralKind::ComplexPair).then(|| &self.eigen[0].value)
    }

    pub fn rho(&self) -> Option<&KElem> {
        (self.kind == SpectralKind::ComplexPair).then(|| &self.eigen[2].value)
    }

    pub fn eigenvalues_algebraic(&self) -> Vec<AlgebraicNumber> {
        self.eigen.iter().map(|e| e.value.to_algebraic()).collect()
    }

    /// Forward coefficients from the eigenvector matrix (ComplexPair only).
    pub fn forward_coeffs(&self, s: &[BigRational]) -> Option<ForwardCoeffs> {
        let (p, pinv) = self.eigvecs.as_ref()?;
        let sk: Vec<KElem> = s
            .iter()
            .map(|x| KElem::from_rational(&self.field, x.clone()))
            .collect();
        let c = linalg::mat_vec(pinv, &sk);
        Some(ForwardCoeffs {
            a: (0..3).map(|i| p[i][0].mul(&c[0])).collect(),
            b: (0..3).map(|i| p[i][2].mul(&c[2])).collect(),
        })
    }

    /// Inverse coefficients a_ij, b_ij (ComplexPair only): ((A^-1)^n x)_i = sum_j (a_ij z^n + conj + b_ij e^n) x_j.
    pub fn inverse_coeffs(&self) -> Option<(Mat<KElem>, Mat<KElem>)> {
        let (p, pinv) = self.eigvecs.as_ref()?;
        let a = (0..3)
            .map(|i| (0..3).map(|j| p[i][0].mul(&pinv[0][j])).collect())
            .collect();
        let b = (0..3)
            .map(|i| (0..3).map(|j| p[i][2].mul(&pinv[2][j])).collect())
            .collect();
        Some((a, b))
    }

    /// Does some real eigenvalue (or the real eigenvalue of a complex pair) have negative sign?
    pub fn has_negative_real(&self) -> bool {
        self.eigen
            .iter()
            .any(|e| e.value.is_real() && e.value.sign() < 0)
    }

    pub fn spectrum_is_real(&self) -> bool {
        self.kind != SpectralKind::ComplexPair
    }
}
