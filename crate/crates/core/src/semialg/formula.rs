//! Quantifier-free formulas and their disjunctive normal form.

use super::mpoly::MPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

/// Relation of a polynomial against zero, including the sugar accepted on input.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Rel {
    Gt,
    Eq,
    Ge,
    Lt,
    Le,
    Ne,
}

impl Rel {
    pub fn symbol(&self) -> &'static str {
        match self {
            Rel::Gt => ">",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Ne => "!=",
        }
    }

    pub fn parse(s: &str) -> Option<Rel> {
        Some(match s {
            ">" => Rel::Gt,
            "=" => Rel::Eq,
            ">=" => Rel::Ge,
            "<" => Rel::Lt,
            "<=" => Rel::Le,
            "!=" => Rel::Ne,
            _ => return None,
        })
    }

    pub fn holds(&self, sign: i32) -> bool {
        match self {
            Rel::Gt => sign > 0,
            Rel::Eq => sign == 0,
            Rel::Ge => sign >= 0,
            Rel::Lt => sign < 0,
            Rel::Le => sign <= 0,
            Rel::Ne => sign != 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    True,
    False,
    Atom(MPoly, Rel),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    pub fn atom(p: MPoly, r: Rel) -> Self {
        Formula::Atom(p, r)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Truth at a rational point.
    pub fn eval_rat(&self, x: &[BigRational]) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(p, r) => r.holds(sign_rat(&p.eval_rat(x))),
            Formula::And(v) => v.iter().all(|f| f.eval_rat(x)),
            Formula::Or(v) => v.iter().any(|f| f.eval_rat(x)),
            Formula::Not(f) => !f.eval_rat(x),
        }
    }
}

fn sign_rat(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// The two primitive relations of sign conditions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Zero,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignCondition {
    pub poly: MPoly,
    pub rel: Sign,
}

impl fmt::Debug for SignCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} 0",
            self.poly,
            if self.rel == Sign::Pos { ">" } else { "=" }
        )
    }
}

impl SignCondition {
    pub fn pos(p: MPoly) -> Self {
        SignCondition {
            poly: p,
            rel: Sign::Pos,
        }
    }

    pub fn zero(p: MPoly) -> Self {
        SignCondition {
            poly: p,
            rel: Sign::Zero,
        }
    }

    pub fn holds(&self, sign: i32) -> bool {
        match self.rel {
            Sign::Pos => sign > 0,
            Sign::Zero => sign == 0,
        }
    }

    pub fn rel_symbol(&self) -> Rel {
        match self.rel {
            Sign::Pos => Rel::Gt,
            Sign::Zero => Rel::Eq,
        }
    }

    /// Truth value when the polynomial is constant.
    pub fn constant_truth(&self) -> Option<bool> {
        self.poly.as_constant().map(|c| {
            self.holds(if c.is_positive() {
                1
            } else if c.is_negative() {
                -1
            } else {
                0
            })
        })
    }

    /// Canonical scaling (content removed, equations sign-normalized).
    pub fn normalized(&self) -> Self {
        match self.rel {
            Sign::Pos => SignCondition::pos(self.poly.primitive_pos()),
            Sign::Zero => SignCondition::zero(self.poly.primitive_signed()),
        }
    }
}

/// Disjunction of conjunctions of sign conditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemialgebraicSet {
    pub num_vars: usize,
    pub dnf: Vec<Vec<SignCondition>>,
}

impl fmt::Display for SemialgebraicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dnf.is_empty() {
            return write!(f, "false");
        }
        let ds: Vec<String> = self
            .dnf
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "true".to_string()
                } else {
                    c.iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(" and ")
                }
            })
            .collect();
        write!(f, "{}", ds.join(" or "))
    }
}

/// Simplifies a conjunction; None means it is unsatisfiable for a syntactic reason.
pub fn simplify_conj(conj: Vec<SignCondition>) -> Option<Vec<SignCondition>> {
    let mut out: Vec<SignCondition> = vec![];
    for a in conj {
        let a = a.normalized();
        match a.constant_truth() {
            Some(true) => continue,
            Some(false) => return None,
            None => {}
        }
        if out.contains(&a) {
            continue;
        }
        let neg = a.poly.neg();
        for b in &out {
            // p > 0 together with -p > 0, or p = 0 together with p > 0 / -p > 0
            let clash = match (a.rel, b.rel) {
                (Sign::Pos, Sign::Pos) => b.poly == neg,
                (Sign::Pos, Sign::Zero) => {
                    b.poly == a.poly.primitive_signed() || b.poly == neg.primitive_signed()
                }
                (Sign::Zero, Sign::Pos) => b.poly.primitive_signed() == a.poly,
                (Sign::Zero, Sign::Zero) => false,
            };
            if clash {
                return None;
            }
        }
        out.push(a);
    }
    out.sort();
    Some(out)
}

/// Removes unsatisfiable and duplicate disjuncts.
pub fn simplify_dnf(dnf: Vec<Vec<SignCondition>>) -> Vec<Vec<SignCondition>> {
    let mut out: Vec<Vec<SignCondition>> = vec![];
    for c in dnf {
        if let Some(c) = simplify_conj(c) {
            if c.is_empty() {
                return vec![vec![]];
            }
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

/// Conjunction of two DNFs.
pub fn and_dnf(a: &[Vec<SignCondition>], b: &[Vec<SignCondition>]) -> Vec<Vec<SignCondition>> {
    let mut out = vec![];
    for x in a {
        for y in b {
            let mut c = x.clone();
            c.extend(y.iter().cloned());
            if let Some(c) = simplify_conj(c) {
                out.push(c);
            }
        }
    }
    simplify_dnf(out)
}

fn atom_dnf(p: &MPoly, r: Rel) -> Vec<Vec<SignCondition>> {
    let pos = |q: MPoly| vec![SignCondition::pos(q)];
    let zer = |q: MPoly| vec![SignCondition::zero(q)];
    match r {
        Rel::Gt => vec![pos(p.clone())],
        Rel::Eq => vec![zer(p.clone())],
        Rel::Ge => vec![pos(p.clone()), zer(p.clone())],
        Rel::Lt => vec![pos(p.neg())],
        Rel::Le => vec![pos(p.neg()), zer(p.clone())],
        Rel::Ne => vec![pos(p.clone()), pos(p.neg())],
    }
}

fn negate_rel(r: Rel) -> Rel {
    match r {
        Rel::Gt => Rel::Le,
        Rel::Eq => Rel::Ne,
        Rel::Ge => Rel::Lt,
        Rel::Lt => Rel::Ge,
        Rel::Le => Rel::Gt,
        Rel::Ne => Rel::Eq,
    }
}

fn dnf_of(f: &Formula, negated: bool) -> Vec<Vec<SignCondition>> {
    match (f, negated) {
        (Formula::True, false) | (Formula::False, true) => vec![vec![]],
        (Formula::True, true) | (Formula::False, false) => vec![],
        (Formula::Atom(p, r), false) => atom_dnf(p, *r),
        (Formula::Atom(p, r), true) => atom_dnf(p, negate_rel(*r)),
        (Formula::Not(g), n) => dnf_of(g, !n),
        (Formula::And(v), false) | (Formula::Or(v), true) => {
            let mut acc = vec![vec![]];
            for g in v {
                acc = and_dnf(&acc, &dnf_of(g, negated));
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        (Formula::Or(v), false) | (Formula::And(v), true) => {
            let mut acc = vec![];
            for g in v {
                acc.extend(dnf_of(g, negated));
            }
            simplify_dnf(acc)
        }
    }
}

/// Pushes negations to the atoms and distributes into disjunctive normal form.
pub fn to_dnf(f: &Formula, num_vars: usize) -> SemialgebraicSet {
    SemialgebraicSet {
        num_vars,
        dnf: simplify_dnf(dnf_of(f, false)),
    }
}

impl SemialgebraicSet {
    pub fn empty(num_vars: usize) -> Self {
        SemialgebraicSet {
            num_vars,
            dnf: vec![],
        }
    }

    pub fn whole(num_vars: usize) -> Self {
        SemialgebraicSet {
            num_vars,
            dnf: vec![vec![]],
        }
    }

    /// The singleton {p} for a rational point.
    pub fn point(p: &[BigRational]) -> Self {
        let n = p.len();
        let conj = p
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let x = MPoly::var(n, i).scale(q.denom());
                SignCondition::zero(x.sub(&MPoly::constant(n, q.numer().clone())))
            })
            .collect();
        SemialgebraicSet {
            num_vars: n,
            dnf: vec![conj],
        }
    }

    pub fn is_syntactically_empty(&self) -> bool {
        self.dnf.is_empty()
    }

    pub fn contains_rat(&self, x: &[BigRational]) -> bool {
        self.dnf
            .iter()
            .any(|c| c.iter().all(|a| a.holds(sign_rat(&a.poly.eval_rat(x)))))
    }

    pub fn intersect(&self, o: &Self) -> Self {
        SemialgebraicSet {
            num_vars: self.num_vars,
            dnf: and_dnf(&self.dnf, &o.dnf),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        let mut d = self.dnf.clone();
        d.extend(o.dnf.iter().cloned());
        SemialgebraicSet {
            num_vars: self.num_vars,
            dnf: simplify_dnf(d),
        }
    }

    /// Substitutes each variable by a polynomial in a (possibly different) variable set.
    pub fn compose(&self, subs: &[MPoly]) -> Self {
        let nv = subs[0].nvars();
        let dnf = self
            .dnf
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| SignCondition {
                        poly: a.poly.compose(subs),
                        rel: a.rel,
                    })
                    .collect()
            })
            .collect();
        SemialgebraicSet {
            num_vars: nv,
            dnf: simplify_dnf(dnf),
        }
    }

    /// Preimage under x -> M x for a rational matrix M: { x : M x in self }.
    pub fn preimage_linear(&self, m: &[Vec<BigRational>]) -> Self {
        let n = m[0].len();
        let subs: Vec<(MPoly, BigInt)> = m.iter().map(|row| linear_form(row, n)).collect();
        self.compose_scaled(&subs)
    }

    /// Composition where the substitutions are given as (integer polynomial / positive denominator).
    fn compose_scaled(&self, subs: &[(MPoly, BigInt)]) -> Self {
        let nv = subs[0].0.nvars();
        let dnf = self
            .dnf
            .iter()
            .map(|c| {
                c.iter()
                    .map(|a| SignCondition {
                        poly: compose_homog(&a.poly, subs),
                        rel: a.rel,
                    })
                    .collect()
            })
            .collect();
        SemialgebraicSet {
            num_vars: nv,
            dnf: simplify_dnf(dnf),
        }
    }

    /// Formula view.
    pub fn to_formula(&self) -> Formula {
        Formula::Or(
            self.dnf
                .iter()
                .map(|c| {
                    Formula::And(
                        c.iter()
                            .map(|a| Formula::Atom(a.poly.clone(), a.rel_symbol()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn max_degree(&self) -> u32 {
        self.dnf
            .iter()
            .flatten()
            .map(|a| a.poly.total_degree())
            .max()
            .unwrap_or(0)
    }
}

/// A rational linear form sum_j row_j x_j as (integer polynomial, positive denominator).
pub fn linear_form(row: &[BigRational], n: usize) -> (MPoly, BigInt) {
    let mut l = BigInt::from(1);
    for q in row {
        l = num_integer::Integer::lcm(&l, q.denom());
    }
    let mut p = MPoly::zero(n);
    for (j, q) in row.iter().enumerate() {
        if !q.is_zero() {
            p = p.add(&MPoly::var(n, j).scale(&(q.numer() * (&l / q.denom()))));
        }
    }
    (p, l)
}

/// p(s_1/d_1, ..., s_n/d_n) scaled by prod d_i^deg_i (a positive factor), hence sign-preserving.
pub fn compose_homog(p: &MPoly, subs: &[(MPoly, BigInt)]) -> MPoly {
    let nv = subs[0].0.nvars();
    let degs: Vec<u32> = (0..subs.len()).map(|i| p.degree_in(i)).collect();
    let mut r = MPoly::zero(nv);
    for (e, c) in p.terms() {
        let mut t = MPoly::constant(nv, c.clone());
        for (i, &k) in e.iter().enumerate() {
            let (s, d) = &subs[i];
            if k > 0 {
                t = t.mul(&s.pow(k));
            }
            if degs[i] > k {
                t = t.scale(&num_traits::pow(d.clone(), (degs[i] - k) as usize));
            }
        }
        r = r.add(&t);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(2, i)
    }

    #[test]
    fn negation_of_strict() {
        let s = to_dnf(&Formula::not(Formula::atom(x(0), Rel::Gt)), 2);
        assert_eq!(s.dnf.len(), 2);
        assert!(s.dnf.contains(&vec![SignCondition::pos(x(0).neg())]));
        assert!(s.dnf.contains(&vec![SignCondition::zero(x(0))]));
    }

    #[test]
    fn negated_conjunction() {
        let f = Formula::not(Formula::And(vec![
            Formula::atom(x(0), Rel::Eq),
            Formula::atom(x(1), Rel::Gt),
        ]));
        let s = to_dnf(&f, 2);
        assert_eq!(s.dnf.len(), 4);
    }

    #[test]
    fn distribution() {
        let f = Formula::And(vec![
            Formula::Or(vec![
                Formula::atom(x(0), Rel::Gt),
                Formula::atom(x(1), Rel::Gt),
            ]),
            Formula::atom(x(0).add(&x(1)), Rel::Eq),
        ]);
        assert_eq!(to_dnf(&f, 2).dnf.len(), 2);
    }

    #[test]
    fn contradictions_drop() {
        let f = Formula::And(vec![
            Formula::atom(x(0), Rel::Gt),
            Formula::atom(x(0), Rel::Lt),
        ]);
        assert!(to_dnf(&f, 2).is_syntactically_empty());
    }
}
