#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use orbit_core::orbit::{OrbitInstance, Outcome};
use orbit_core::semialg::{to_dnf, Formula, MPoly, Rel, SemialgebraicSet};
use orbit_core::spectral::RationalMatrix;

pub fn q(s: &str) -> BigRational {
    orbit_core::io::parse_rational(s).expect("rational literal")
}

pub fn mat(rows: [[&str; 3]; 3]) -> RationalMatrix {
    RationalMatrix::new(
        rows.iter()
            .map(|r| r.iter().map(|x| q(x)).collect())
            .collect(),
    )
    .unwrap()
}

pub fn pt(c: [&str; 3]) -> Vec<BigRational> {
    c.iter().map(|x| q(x)).collect()
}

pub fn x(i: usize) -> MPoly {
    MPoly::var(3, i)
}

pub fn k(c: i64) -> MPoly {
    MPoly::constant(3, BigInt::from(c))
}

/// a0 x1 + a1 x2 + a2 x3 + c
pub fn lin(a: [i64; 3], c: i64) -> MPoly {
    (0..3).fold(k(c), |acc, i| acc.add(&x(i).scale(&BigInt::from(a[i]))))
}

pub fn conj(atoms: Vec<(MPoly, Rel)>) -> SemialgebraicSet {
    to_dnf(
        &Formula::And(
            atoms
                .into_iter()
                .map(|(p, r)| Formula::atom(p, r))
                .collect(),
        ),
        3,
    )
}

pub fn union(parts: Vec<SemialgebraicSet>) -> SemialgebraicSet {
    to_dnf(
        &Formula::Or(parts.iter().map(|s| s.to_formula()).collect()),
        3,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Reach(u64),
    Never,
}

pub struct Case {
    pub name: &'static str,
    pub inst: OrbitInstance,
    pub expect: Expect,
}

impl Expect {
    pub fn outcome(&self) -> Outcome {
        match self {
            Expect::Reach(_) => Outcome::Reachable,
            Expect::Never => Outcome::NotReachable,
        }
    }
}

fn point(
    name: &'static str,
    a: RationalMatrix,
    s: [&str; 3],
    t: SemialgebraicSet,
    expect: Expect,
) -> Case {
    Case {
        name,
        inst: OrbitInstance::point(a, pt(s), t),
        expect,
    }
}

fn set(
    name: &'static str,
    a: RationalMatrix,
    s: SemialgebraicSet,
    t: SemialgebraicSet,
    expect: Expect,
) -> Case {
    Case {
        name,
        inst: OrbitInstance::set(a, s, t),
        expect,
    }
}

pub fn quarter_turn() -> RationalMatrix {
    mat([["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "1"]])
}

pub fn pythagorean() -> RationalMatrix {
    mat([["3/5", "-4/5", "0"], ["4/5", "3/5", "0"], ["0", "0", "1"]])
}

/// Small instances with known answers, checked against plain iteration where possible.
pub fn corpus() -> Vec<Case> {
    use Expect::*;
    use Rel::*;
    let sixth = mat([["1/2", "-1", "0"], ["3/4", "1/2", "0"], ["0", "0", "1"]]);
    let unit_circle = conj(vec![
        (x(0).mul(&x(0)).add(&x(1).mul(&x(1))).sub(&k(1)), Eq),
        (x(2), Eq),
    ]);
    vec![
        point(
            "quarter turn reaches the negative axis",
            quarter_turn(),
            ["1", "0", "0"],
            conj(vec![(lin([1, 0, 0], 1), Eq), (x(1), Eq)]),
            Reach(2),
        ),
        point(
            "quarter turn misses x1 = 1/2",
            quarter_turn(),
            ["1", "0", "0"],
            conj(vec![(lin([2, 0, 0], -1), Eq)]),
            Never,
        ),
        point(
            "dense rotation enters the open third quadrant",
            pythagorean(),
            ["1", "0", "0"],
            conj(vec![(lin([-1, 0, 0], 0), Gt), (lin([0, -1, 0], 0), Gt)]),
            Reach(4),
        ),
        point(
            "dense rotation never leaves its circle",
            pythagorean(),
            ["1", "0", "0"],
            conj(vec![(x(0).mul(&x(0)).add(&x(1).mul(&x(1))).sub(&k(2)), Eq)]),
            Never,
        ),
        point(
            "dense rotation never hits x2 = 0 again",
            pythagorean(),
            ["1", "0", "0"],
            conj(vec![(x(1), Eq), (lin([1, 0, 0], 1), Eq)]),
            Never,
        ),
        point(
            "order six rotation hits its start",
            sixth.clone(),
            ["1", "0", "0"],
            conj(vec![(lin([1, 0, 0], -1), Eq)]),
            Reach(0),
        ),
        point(
            "order six rotation half turn",
            sixth,
            ["1", "0", "0"],
            conj(vec![(lin([1, 0, 0], 1), Eq), (x(1), Eq)]),
            Reach(3),
        ),
        point(
            "diagonal growth",
            mat([["2", "0", "0"], ["0", "1/2", "0"], ["0", "0", "1"]]),
            ["1", "1", "1"],
            conj(vec![(lin([1, 0, 0], -100), Gt)]),
            Reach(7),
        ),
        point(
            "diagonal decay never below zero",
            mat([["2", "0", "0"], ["0", "1/2", "0"], ["0", "0", "1"]]),
            ["1", "1", "1"],
            conj(vec![(lin([0, 1, 0], 0), Lt)]),
            Never,
        ),
        point(
            "jordan block ratio",
            mat([["2", "1", "0"], ["0", "2", "0"], ["0", "0", "1"]]),
            ["0", "1", "0"],
            conj(vec![(lin([1, -3, 0], 0), Eq)]),
            Reach(6),
        ),
        point(
            "jordan block offset",
            mat([["2", "1", "0"], ["0", "2", "0"], ["0", "0", "1"]]),
            ["0", "1", "0"],
            conj(vec![(lin([1, -1, 0], -1), Eq)]),
            Never,
        ),
        point(
            "unipotent triangular number",
            mat([["1", "1", "0"], ["0", "1", "1"], ["0", "0", "1"]]),
            ["0", "0", "1"],
            conj(vec![(lin([1, 0, 0], -10), Eq)]),
            Reach(5),
        ),
        point(
            "unipotent skips eleven",
            mat([["1", "1", "0"], ["0", "1", "1"], ["0", "0", "1"]]),
            ["0", "0", "1"],
            conj(vec![(lin([1, 0, 0], -11), Eq)]),
            Never,
        ),
        point(
            "alternating sign growth",
            mat([["-2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]),
            ["1", "0", "0"],
            conj(vec![(lin([1, 0, 0], -10), Gt)]),
            Reach(4),
        ),
        point(
            "alternating sign with a fixed coordinate",
            mat([["-2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]),
            ["1", "1", "0"],
            conj(vec![(lin([1, 0, 0], 0), Lt), (lin([0, 1, 0], -1), Gt)]),
            Never,
        ),
        point(
            "singular with a growing block",
            mat([["0", "1", "0"], ["0", "0", "0"], ["0", "0", "2"]]),
            ["1", "1", "1"],
            conj(vec![(lin([0, 0, 1], -64), Eq)]),
            Reach(6),
        ),
        point(
            "singular rotation block",
            mat([["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]),
            ["1", "0", "1"],
            conj(vec![(lin([0, 1, 0], -1), Eq), (x(2), Eq)]),
            Reach(1),
        ),
        point(
            "singular block never revisits x3",
            mat([["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]),
            ["1", "0", "1"],
            conj(vec![(lin([0, 0, 1], -1), Eq), (lin([1, 0, 0], 1), Eq)]),
            Never,
        ),
        point(
            "nilpotent reaches zero",
            mat([["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]),
            ["1", "1", "1"],
            conj(vec![(x(0), Eq), (x(1), Eq), (x(2), Eq)]),
            Reach(3),
        ),
        point(
            "nilpotent never reaches five",
            mat([["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]),
            ["1", "1", "1"],
            conj(vec![(lin([1, 0, 0], -5), Eq)]),
            Never,
        ),
        point(
            "dense rotation enters the open second quadrant",
            pythagorean(),
            ["1", "0", "0"],
            conj(vec![(lin([-1, 0, 0], 0), Gt), (lin([0, 1, 0], 0), Gt)]),
            Reach(2),
        ),
        point(
            "unsatisfiable target",
            pythagorean(),
            ["1", "0", "0"],
            conj(vec![(x(0).mul(&x(0)).add(&k(1)), Eq)]),
            Never,
        ),
        point(
            "whole space",
            pythagorean(),
            ["1", "0", "0"],
            conj(vec![]),
            Reach(0),
        ),
        point(
            "order six companion returns",
            mat([["0", "-1", "0"], ["1", "1", "0"], ["0", "0", "1"]]),
            ["1", "0", "0"],
            conj(vec![(lin([1, 0, 0], -1), Eq), (x(1), Eq), (x(2), Eq)]),
            Reach(0),
        ),
        point(
            "order six companion negates",
            mat([["0", "-1", "0"], ["1", "1", "0"], ["0", "0", "1"]]),
            ["1", "0", "0"],
            conj(vec![(lin([1, 0, 0], 1), Eq), (x(1), Eq), (x(2), Eq)]),
            Reach(3),
        ),
        point(
            "quarter turn stays on lattice points",
            quarter_turn(),
            ["1", "0", "0"],
            conj(vec![(lin([2, 0, 0], -1), Eq), (x(1), Eq), (x(2), Eq)]),
            Never,
        ),
        point(
            "diagonal power of two",
            mat([["2", "0", "0"], ["0", "1/2", "0"], ["0", "0", "1"]]),
            ["1", "1", "1"],
            conj(vec![(lin([1, 0, 0], -8), Eq)]),
            Reach(3),
        ),
        point(
            "diagonal invariant product",
            mat([["2", "0", "0"], ["0", "1/2", "0"], ["0", "0", "1"]]),
            ["1", "1", "1"],
            conj(vec![(x(0).mul(&x(1)).sub(&k(1)), Gt)]),
            Never,
        ),
        point(
            "singular diagonal, one zero",
            mat([["0", "0", "0"], ["0", "2", "0"], ["0", "0", "3"]]),
            ["1", "1", "1"],
            conj(vec![(lin([0, 1, 0], -4), Eq)]),
            Reach(2),
        ),
        point(
            "singular diagonal, two zeros",
            mat([["0", "0", "0"], ["0", "0", "0"], ["0", "0", "2"]]),
            ["1", "1", "1"],
            conj(vec![(lin([0, 0, 1], -4), Eq)]),
            Reach(2),
        ),
        point(
            "singular diagonal, never fixed",
            mat([["0", "0", "0"], ["0", "0", "0"], ["0", "0", "2"]]),
            ["1", "1", "1"],
            conj(vec![(lin([0, 0, 1], -6), Eq)]),
            Never,
        ),
        set(
            "singleton source",
            quarter_turn(),
            SemialgebraicSetExt::single(["1", "0", "0"]),
            conj(vec![(lin([1, 0, 0], 1), Eq)]),
            Reach(2),
        ),
        set(
            "circle source meets a point at once",
            pythagorean(),
            unit_circle,
            conj(vec![(lin([1, 0, 0], 0), Eq), (lin([0, 1, 0], -1), Eq)]),
            Reach(0),
        ),
        set(
            "singleton source in the dense rotation",
            pythagorean(),
            conj(vec![(lin([1, 0, 0], -1), Eq), (x(1), Eq), (x(2), Eq)]),
            conj(vec![(lin([-1, 0, 0], 0), Gt), (lin([0, 1, 0], 0), Gt)]),
            Reach(2),
        ),
        set(
            "invariant plane",
            pythagorean(),
            conj(vec![(lin([0, 0, 1], -2), Eq)]),
            conj(vec![(lin([0, 0, 1], -3), Eq)]),
            Never,
        ),
    ]
}

pub struct SemialgebraicSetExt;

impl SemialgebraicSetExt {
    pub fn single(c: [&str; 3]) -> SemialgebraicSet {
        SemialgebraicSet::point(&pt(c))
    }
}
