use super::*;
use crate::semialg::{MPoly, Sign};
use crate::spectral::{classify_and_decompose, RationalMatrix};
use num_rational::BigRational;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn x(i: usize) -> MPoly {
    MPoly::var(3, i)
}

fn c(k: i64) -> MPoly {
    MPoly::constant(3, k.into())
}

/// Exact truth of the conjunction at n by iterating the matrix.
fn holds_at(a: &RationalMatrix, s: &[BigRational], atoms: &[(MPoly, Sign)], n: u64) -> bool {
    let v = a.pow(n).apply(s);
    atoms.iter().all(|(p, rel)| {
        let val = p.eval_rat(&v);
        match rel {
            Sign::Pos => val > q(0),
            Sign::Zero => val == q(0),
        }
    })
}

fn check(rows: &[&[i64]], s: [i64; 3], atoms: &[(MPoly, Sign)]) -> Vec<ClassOutcome> {
    let a = RationalMatrix::from_i64(rows);
    let sd = classify_and_decompose(&a).unwrap();
    let s: Vec<BigRational> = s.iter().map(|&v| q(v)).collect();
    let sys: Vec<_> = atoms
        .iter()
        .map(|(p, rel)| (sequence_system(p, &sd, &s), *rel))
        .collect();
    let out = solve_system(&sys, &SolveConfig::default()).unwrap();
    for co in &out {
        match co.outcome {
            Eventual::Bounded(nb) => {
                for r in nb..nb + 40 {
                    assert!(
                        !holds_at(&a, &s, atoms, co.d * r + co.m),
                        "class {co:?} holds at r = {r}"
                    );
                }
            }
            Eventual::Holds(Some(nb)) => {
                for r in nb..nb + 40 {
                    assert!(
                        holds_at(&a, &s, atoms, co.d * r + co.m),
                        "class {co:?} fails at r = {r}"
                    );
                }
            }
            Eventual::Holds(None) => {
                assert!(
                    (0..400).any(|r| holds_at(&a, &s, atoms, co.d * r + co.m)),
                    "{co:?}"
                );
            }
            Eventual::Unknown(ref e) => panic!("unknown: {e}"),
        }
    }
    out
}

const ROT: &[&[i64]] = &[&[3, -4, 0], &[4, 3, 0], &[0, 0, 1]];

#[test]
fn irrational_rotation_quadrant() {
    let out = check(ROT, [1, 0, 0], &[(x(0), Sign::Pos), (x(1), Sign::Pos)]);
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].outcome, Eventual::Holds(None));
}

#[test]
fn irrational_rotation_never_on_axis() {
    let out = check(ROT, [1, 0, 0], &[(x(0), Sign::Zero)]);
    assert!(matches!(out[0].outcome, Eventual::Bounded(_)));
}

#[test]
fn irrational_rotation_empty_region() {
    // x1 > 0 and -x1 > 0 is empty on the circle
    let out = check(
        ROT,
        [1, 2, 0],
        &[(x(0), Sign::Pos), (x(0).neg(), Sign::Pos)],
    );
    assert!(matches!(out[0].outcome, Eventual::Bounded(_)));
}

#[test]
fn dominant_real_eigenvalue() {
    // rho = 7 beats |lambda| = 5: sign of x3 decides
    let rows: &[&[i64]] = &[&[3, -4, 0], &[4, 3, 0], &[0, 0, 7]];
    let out = check(rows, [1, 0, 1], &[(x(2).sub(&x(0)), Sign::Pos)]);
    assert!(matches!(out[0].outcome, Eventual::Holds(Some(_))));
}

#[test]
fn negative_real_eigenvalue_splits() {
    let rows: &[&[i64]] = &[&[3, -4, 0], &[4, 3, 0], &[0, 0, -7]];
    let out = check(rows, [1, 0, 1], &[(x(2), Sign::Pos)]);
    assert_eq!(out.len(), 2);
    assert!(matches!(out[0].outcome, Eventual::Holds(Some(_))));
    assert!(matches!(out[1].outcome, Eventual::Bounded(_)));
}

#[test]
fn rational_rotation_splits() {
    // quarter turn scaled by 2
    let rows: &[&[i64]] = &[&[0, -2, 0], &[2, 0, 0], &[0, 0, 1]];
    let out = check(
        rows,
        [1, 0, 5],
        &[(x(0), Sign::Pos), (x(2).sub(&c(5)), Sign::Zero)],
    );
    assert_eq!(out.len(), 4);
    assert!(matches!(out[0].outcome, Eventual::Holds(Some(_))));
    assert!(out[1..]
        .iter()
        .all(|o| matches!(o.outcome, Eventual::Bounded(_))));
}

#[test]
fn circle_with_tangent_zero() {
    // x1 + |x| - type target: 25^n (1 + cos) >= 0 touches zero at angle pi only
    let out = check(
        ROT,
        [1, 0, 0],
        &[(
            x(0).mul(&x(0))
                .add(&x(1).mul(&x(1)))
                .add(&x(0).scale(&5.into())),
            Sign::Pos,
        )],
    );
    assert!(!matches!(out[0].outcome, Eventual::Unknown(_)));
}

#[test]
fn real_spectrum_jordan() {
    let rows: &[&[i64]] = &[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]];
    let out = check(rows, [0, 1, 0], &[(x(0).sub(&c(100)), Sign::Pos)]);
    assert!(matches!(out[0].outcome, Eventual::Holds(Some(_))));
}
