//! Exact arithmetic in a number field K = F(w) where F = Q(t) with t a real root of an
//! irreducible rational polynomial and w^2 = delta a rational non-square (or w absent).
//! Every eigenvalue of a rational 3x3 matrix lives in such a field.

use crate::kernel::algebraic::AlgebraicNumber;
use crate::kernel::dyadic::{CIv, Dyadic, Iv};
use crate::kernel::isolate::{self, CoeffSource};
use crate::kernel::poly::IntPoly;
use crate::kernel::upoly::{self, FieldElem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::{Arc, Mutex};

pub struct FieldDef {
    /// monic minimal polynomial of t, low degree first
    min: Vec<BigRational>,
    min_int: IntPoly,
    /// isolating interval of t (unused when t is rational)
    theta: Mutex<(BigRational, BigRational)>,
    delta: Option<BigRational>,
}

pub type Field = Arc<FieldDef>;

impl fmt::Debug for FieldDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(min={}, delta={:?})",
            self.min_int,
            self.delta.as_ref().map(|d| d.to_string())
        )
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl FieldDef {
    /// `min_int` must be irreducible with a real root inside (lo, hi); `delta` must not be a
    /// square in Q(t).
    pub fn new(
        min_int: &IntPoly,
        lo: BigRational,
        hi: BigRational,
        delta: Option<BigRational>,
    ) -> Field {
        let lc = BigRational::from_integer(min_int.lc());
        let min: Vec<BigRational> = min_int.to_rationals().iter().map(|c| c / &lc).collect();
        Arc::new(FieldDef {
            min,
            min_int: min_int.primitive(),
            theta: Mutex::new((lo, hi)),
            delta,
        })
    }

    /// Q or Q(sqrt(delta)).
    pub fn quadratic(delta: Option<BigRational>) -> Field {
        Self::new(&IntPoly::from_i64(&[0, 1]), rat(0), rat(0), delta)
    }

    pub fn base_degree(&self) -> usize {
        self.min.len() - 1
    }

    pub fn delta(&self) -> Option<&BigRational> {
        self.delta.as_ref()
    }

    pub fn is_imaginary(&self) -> bool {
        self.delta.as_ref().is_some_and(|d| d.is_negative())
    }

    pub fn degree(&self) -> usize {
        self.base_degree() * if self.delta.is_some() { 2 } else { 1 }
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_int
    }

    /// Enclosure of t of width at most 2^-prec.
    fn theta_iv(&self, prec: u64) -> Iv {
        if self.base_degree() == 1 {
            let t = -&self.min[0];
            return Iv::from_rational(&t, prec + 16);
        }
        let w = Dyadic::pow2(-(prec as i64)).to_rational();
        let mut g = self.theta.lock().unwrap();
        if &g.1 - &g.0 > w {
            let (lo, hi) =
                isolate::refine_real_interval(&self.min_int, g.0.clone(), g.1.clone(), &w);
            *g = (lo, hi);
        }
        Iv::from_rationals(&g.0, &g.1, prec + 16)
    }

    fn omega_iv(&self, prec: u64) -> CIv {
        match &self.delta {
            None => CIv::zero(),
            Some(d) => {
                let s = Iv::from_rational(&d.abs(), prec + 16).sqrt(prec + 16);
                if d.is_negative() {
                    CIv::new(Iv::zero(), s)
                } else {
                    CIv::real(s)
                }
            }
        }
    }

    fn reduce(&self, p: Vec<BigRational>) -> Vec<BigRational> {
        let p = upoly::trim(p);
        if p.len() < self.min.len() {
            return p;
        }
        upoly::div_rem(&p, &self.min).1
    }

    fn fmul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        self.reduce(upoly::mul(a, b))
    }

    /// Inverse in F by the extended Euclidean algorithm.
    fn finv(&self, a: &[BigRational]) -> Vec<BigRational> {
        assert!(!a.is_empty(), "inverse of zero in base field");
        let (mut r0, mut r1) = (self.min.clone(), upoly::trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = upoly::div_rem(&r0, &r1);
            let s = upoly::sub(&s0, &upoly::mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r1 is a nonzero constant
        let c = r1[0].recip();
        self.reduce(upoly::scale(&s1, &c))
    }
}

/// Element u + v w of K, with u, v in F reduced modulo the minimal polynomial.
#[derive(Clone)]
pub struct KElem {
    f: Field,
    u: Vec<BigRational>,
    v: Vec<BigRational>,
}

impl PartialEq for KElem {
    fn eq(&self, o: &Self) -> bool {
        self.u == o.u && self.v == o.v
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.enclose(50);
        write!(
            f,
            "K[{:.10}{:+.10}i]",
            e.re.mid().to_f64(),
            e.im.mid().to_f64()
        )
    }
}

impl KElem {
    pub fn from_rational(f: &Field, q: BigRational) -> Self {
        KElem {
            f: f.clone(),
            u: upoly::trim(vec![q]),
            v: vec![],
        }
    }

    pub fn from_int(f: &Field, n: i64) -> Self {
        Self::from_rational(f, rat(n))
    }

    pub fn theta(f: &Field) -> Self {
        let u = f.reduce(vec![rat(0), rat(1)]);
        KElem {
            f: f.clone(),
            u,
            v: vec![],
        }
    }

    pub fn omega(f: &Field) -> Self {
        assert!(f.delta.is_some());
        KElem {
            f: f.clone(),
            u: vec![],
            v: vec![rat(1)],
        }
    }

    /// Element of F given by a polynomial in t.
    pub fn from_base(f: &Field, p: Vec<BigRational>) -> Self {
        KElem {
            f: f.clone(),
            u: f.reduce(p),
            v: vec![],
        }
    }

    pub fn field(&self) -> &Field {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_empty() && self.v.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.v.is_empty() && self.u.len() == 1 && self.u[0].is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.v.is_empty() || self.u.len() > 1 {
            return None;
        }
        Some(self.u.first().cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn is_real(&self) -> bool {
        !self.f.is_imaginary() || self.v.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        KElem {
            f: self.f.clone(),
            u: upoly::add(&self.u, &o.u),
            v: upoly::add(&self.v, &o.v),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        KElem {
            f: self.f.clone(),
            u: upoly::sub(&self.u, &o.u),
            v: upoly::sub(&self.v, &o.v),
        }
    }

    pub fn neg(&self) -> Self {
        KElem {
            f: self.f.clone(),
            u: upoly::neg(&self.u),
            v: upoly::neg(&self.v),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.f;
        let mut u = f.fmul(&self.u, &o.u);
        if let Some(d) = &f.delta {
            let vv = f.fmul(&self.v, &o.v);
            u = upoly::add(&u, &upoly::scale(&vv, d));
        }
        let v = if f.delta.is_some() {
            upoly::add(&f.fmul(&self.u, &o.v), &f.fmul(&self.v, &o.u))
        } else {
            vec![]
        };
        KElem { f: f.clone(), u, v }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        KElem {
            f: self.f.clone(),
            u: upoly::scale(&self.u, q),
            v: upoly::scale(&self.v, q),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = KElem::from_int(&self.f, 1);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Galois conjugate w -> -w.
    pub fn galois_conj(&self) -> Self {
        KElem {
            f: self.f.clone(),
            u: self.u.clone(),
            v: upoly::neg(&self.v),
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.f.is_imaginary() {
            self.galois_conj()
        } else {
            self.clone()
        }
    }

    /// Norm down to F: u^2 - delta v^2.
    pub fn norm_to_base(&self) -> Self {
        let f = &self.f;
        let mut n = f.fmul(&self.u, &self.u);
        if let Some(d) = &f.delta {
            n = upoly::sub(&n, &upoly::scale(&f.fmul(&self.v, &self.v), d));
        }
        KElem {
            f: f.clone(),
            u: n,
            v: vec![],
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_to_base();
        let ni = self.f.finv(&n.u);
        let g = self.galois_conj();
        Some(KElem {
            f: self.f.clone(),
            u: self.f.fmul(&g.u, &ni),
            v: self.f.fmul(&g.v, &ni),
        })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    /// |x|^2 = x * conj(x), a real element.
    pub fn abs_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    pub fn re(&self) -> Self {
        if self.f.is_imaginary() {
            KElem {
                f: self.f.clone(),
                u: self.u.clone(),
                v: vec![],
            }
        } else {
            self.clone()
        }
    }

    /// Enclosure with width at most about 2^-prec.
    pub fn enclose(&self, prec: u64) -> CIv {
        let mut q = prec + 32;
        loop {
            let t = self.f.theta_iv(q);
            let w = self.f.omega_iv(q);
            let eu = eval_iv(&self.u, &t, q + 16);
            let ev = eval_iv(&self.v, &t, q + 16);
            let r = CIv::real(eu).add(&CIv::real(ev).mul(&w, q + 16), q + 16);
            let wd = r.re.width().max(r.im.width());
            if wd.log2_ceil().is_none_or(|e| e <= -(prec as i64)) || q > prec * 8 + 4096 {
                return r;
            }
            q *= 2;
        }
    }

    /// Sign of a real element; exact zero check first, then refinement.
    pub fn sign(&self) -> i32 {
        assert!(self.is_real(), "sign of non-real field element");
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        let mut p = 32;
        loop {
            if let Some(s) = self.enclose(p).re.sign() {
                if s != 0 {
                    return s;
                }
            }
            p *= 2;
        }
    }

    pub fn cmp_real(&self, o: &Self) -> std::cmp::Ordering {
        self.sub(o).sign().cmp(&0)
    }

    /// Coordinates over Q in the basis t^i, t^i w.
    fn coords(&self) -> Vec<BigRational> {
        let e = self.f.base_degree();
        let mut c = vec![BigRational::zero(); self.f.degree()];
        for (i, x) in self.u.iter().enumerate() {
            c[i] = x.clone();
        }
        if self.f.delta.is_some() {
            for (i, x) in self.v.iter().enumerate() {
                c[e + i] = x.clone();
            }
        }
        c
    }

    fn basis(f: &Field, i: usize) -> Self {
        let e = f.base_degree();
        let mut p = vec![BigRational::zero(); (i % e) + 1];
        p[i % e] = BigRational::one();
        if i < e {
            KElem {
                f: f.clone(),
                u: upoly::trim(p),
                v: vec![],
            }
        } else {
            KElem {
                f: f.clone(),
                u: vec![],
                v: upoly::trim(p),
            }
        }
    }

    /// Characteristic polynomial of multiplication by self over Q (monic, low degree first).
    pub fn char_poly(&self) -> Vec<BigRational> {
        let n = self.f.degree();
        let cols: Vec<Vec<BigRational>> = (0..n)
            .map(|i| self.mul(&Self::basis(&self.f, i)).coords())
            .collect();
        // m[r][c] = cols[c][r]
        let m: Vec<Vec<BigRational>> = (0..n)
            .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
            .collect();
        crate::linalg::char_poly_q(&m)
    }

    /// Square-free primitive integer polynomial vanishing at self.
    pub fn min_poly(&self) -> IntPoly {
        IntPoly::from_rationals(&self.char_poly()).squarefree()
    }

    /// This element as a kernel algebraic number.
    pub fn to_algebraic(&self) -> AlgebraicNumber {
        if let Some(q) = self.as_rational() {
            return AlgebraicNumber::from_rational(q);
        }
        AlgebraicNumber::select_root(&self.min_poly(), self.is_real(), |p| self.enclose(p + 4))
            .expect("field element root selection")
    }

    /// Bit size of the defining polynomial's coefficient list.
    pub fn size_bits(&self) -> u64 {
        self.min_poly().bit_size()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let e = self.enclose(60);
        (e.re.mid().to_f64(), e.im.mid().to_f64())
    }
}

fn eval_iv(p: &[BigRational], t: &Iv, prec: u64) -> Iv {
    let mut acc = Iv::zero();
    for c in p.iter().rev() {
        acc = acc.mul(t, prec).add(&Iv::from_rational(c, prec), prec);
    }
    acc
}

impl FieldElem for KElem {
    fn zero_like(&self) -> Self {
        KElem {
            f: self.f.clone(),
            u: vec![],
            v: vec![],
        }
    }
    fn one_like(&self) -> Self {
        KElem::from_int(&self.f, 1)
    }
    fn from_int_like(&self, n: i64) -> Self {
        KElem::from_int(&self.f, n)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
}

/// Polynomial with coefficients in K viewed as a root-isolation coefficient source.
pub struct KPoly<'a>(pub &'a [KElem]);

impl CoeffSource for KPoly<'_> {
    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
    fn coeffs_at(&self, prec: u64) -> Vec<CIv> {
        self.0.iter().map(|c| c.enclose(prec)).collect()
    }
}

/// Norm of a K[z] polynomial down to Q[z]: product over the embeddings of K, computed as
/// resultants. Vanishes at every root of the input.
pub fn norm_poly(p: &[KElem]) -> IntPoly {
    if p.is_empty() {
        return IntPoly::zero();
    }
    let f = p[0].field().clone();
    let dz = p.len() - 1;
    // N(z) = Res_t(m(t), U(z,t)^2 - delta V(z,t)^2) evaluated at integer points and interpolated
    let total = dz * f.degree();
    let vals: Vec<BigRational> = (0..=total)
        .map(|z0| {
            let z0 = KElem::from_int(&f, z0 as i64);
            let val = upoly::eval(p, &z0);
            let n = val.norm_to_base();
            // Res_t(m, n(t)) / lc stuff: the norm from F to Q of n
            base_norm(&f, &n.u)
        })
        .collect();
    // interpolate
    let mut acc: Vec<BigRational> = vec![];
    let npts = vals.len();
    for (i, v) in vals.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut basis = vec![BigRational::one()];
        let mut den = BigRational::one();
        for j in 0..npts {
            if j != i {
                basis = upoly::mul(&basis, &[rat(-(j as i64)), BigRational::one()]);
                den *= rat(i as i64 - j as i64);
            }
        }
        acc = upoly::add(&acc, &upoly::scale(&basis, &(v / den)));
    }
    IntPoly::from_rationals(&acc)
}

/// Norm from F = Q(t) to Q of the element given by polynomial u(t).
pub fn base_norm(f: &Field, u: &[BigRational]) -> BigRational {
    if u.is_empty() {
        return BigRational::zero();
    }
    if f.base_degree() == 1 {
        return upoly::eval(u, &-f.min[0].clone());
    }
    // for monic m, N(u(t)) = Res(m, u)
    upoly::resultant_field(&f.min, u)
}

/// Helper for tests and diagnostics.
pub fn rational_of_int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}
