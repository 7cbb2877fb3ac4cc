mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use orbit_core::oracle::{brute_force_decide, OracleVerdict};
use orbit_core::orbit::{decide, Config, OrbitInstance, Outcome};
use orbit_core::semialg::{QeLimits, Rel};
use orbit_core::spectral::RationalMatrix;
use proptest::prelude::*;

const HORIZON: u64 = 300;

fn agrees(inst: &OrbitInstance, cfg: &Config) -> Result<(), String> {
    let trace = std::env::var("TRACE_CASES").is_ok();
    if trace {
        eprintln!(
            "start {:?} {:?} {:?}",
            inst.matrix, inst.source, inst.target
        );
    }
    let t0 = std::time::Instant::now();
    let v = decide(inst, cfg);
    if trace {
        eprintln!("  -> {v} [{}] {:?}", v.path, t0.elapsed());
    }
    let o = brute_force_decide(inst, HORIZON, QeLimits::default());
    match (v.outcome, &o) {
        (Outcome::Reachable, OracleVerdict::Hit(n)) if v.witness_n == Some(*n) => Ok(()),
        (Outcome::Reachable, OracleVerdict::Miss { .. }) if v.witness_n.unwrap() > HORIZON => {
            Ok(())
        }
        (Outcome::NotReachable, OracleVerdict::Miss { .. }) => Ok(()),
        (Outcome::Unknown, _) | (_, OracleVerdict::Undetermined(_)) => Ok(()),
        _ => Err(format!("decide says {v}, oracle says {o:?}")),
    }
}

#[test]
fn corpus_agrees_with_oracle() {
    let cfg = Config::default();
    for c in corpus() {
        agrees(&c.inst, &cfg).unwrap_or_else(|e| panic!("{}: {e}", c.name));
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, prop_oneof![Just(1i64), Just(2), Just(3)])
        .prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn matrix() -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(small_rational(), 9)
        .prop_map(|v| RationalMatrix::new(v.chunks(3).map(|r| r.to_vec()).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn random_linear_targets(a in matrix(),
                             s in prop::collection::vec(-3i64..=3, 3),
                             w in prop::collection::vec(-2i64..=2, 3),
                             c in -20i64..=20,
                             strict in any::<bool>()) {
        prop_assume!(w.iter().any(|&x| x != 0));
        let rel = if strict { Rel::Gt } else { Rel::Eq };
        let s: Vec<BigRational> = s.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect();
        let inst = OrbitInstance::point(a, s, conj(vec![(lin([w[0], w[1], w[2]], c), rel)]));
        let cfg = Config { search_cap: 20_000, ..Config::default() };
        prop_assert!(agrees(&inst, &cfg).is_ok(), "{}", agrees(&inst, &cfg).unwrap_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn random_quadratic_targets(a in matrix(),
                                s in prop::collection::vec(-3i64..=3, 3),
                                i in 0usize..3,
                                j in 0usize..3,
                                c in -30i64..=30,
                                strict in any::<bool>()) {
        let rel = if strict { Rel::Gt } else { Rel::Eq };
        let s: Vec<BigRational> = s.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect();
        let p = x(i).mul(&x(j)).add(&k(c));
        let inst = OrbitInstance::point(a, s, conj(vec![(p, rel)]));
        let cfg = Config { search_cap: 20_000, ..Config::default() };
        prop_assert!(agrees(&inst, &cfg).is_ok(), "{}", agrees(&inst, &cfg).unwrap_err());
    }
}
