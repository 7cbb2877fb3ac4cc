mod common;

use common::*;
use orbit_core::orbit::{decide, Config, Outcome};

#[test]
fn corpus_verdicts() {
    let cfg = Config::default();
    let mut bad = vec![];
    for c in corpus() {
        let t = std::time::Instant::now();
        let v = decide(&c.inst, &cfg);
        eprintln!("{:<55} {} [{}] {:?}", c.name, v, v.path, t.elapsed());
        let ok = match c.expect {
            Expect::Reach(n) => v.outcome == Outcome::Reachable && v.witness_n == Some(n),
            Expect::Never => v.outcome == Outcome::NotReachable,
        };
        if !ok {
            bad.push(format!("{}: expected {:?}, got {v}", c.name, c.expect));
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}
