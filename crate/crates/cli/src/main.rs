use clap::Parser;
use orbit_core::io::parse_instance;
use orbit_core::oracle::{brute_force_decide, OracleVerdict};
use orbit_core::orbit::{decide, Config, Outcome, Verdict};
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_IO: u8 = 66;
const EXIT_ORACLE_MISMATCH: u8 = 70;
/// Largest horizon the oracle is asked to cover for --oracle-check.
const ORACLE_HORIZON: u64 = 2000;

/// Decide whether the orbit of a rational 3x3 matrix reaches a semialgebraic target.
#[derive(Parser, Debug)]
#[command(name = "orbit-decide", version)]
struct Args {
    /// Instance file (JSON); `-` reads standard input.
    #[arg(long)]
    input: String,
    /// Print the full verdict as JSON.
    #[arg(long)]
    json: bool,
    /// Exponent d in the gap bound n^-(size(gamma)+size(xi))^d.
    #[arg(long, value_name = "D")]
    baker_exponent: Option<u32>,
    /// Largest polynomial degree quantifier elimination will handle.
    #[arg(long, value_name = "K")]
    qe_max_degree: Option<u32>,
    /// Ceiling for the exhaustive search below the certified bound.
    #[arg(long, value_name = "N")]
    search_cap: Option<u64>,
    /// Re-run the instance through the brute-force oracle and compare.
    #[arg(long)]
    oracle_check: bool,
    /// Emit a witness point for set sources.
    #[arg(long)]
    witness: bool,
    /// Per-disjunct diagnostics on stderr.
    #[arg(long)]
    trace: bool,
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

fn exit_for(v: &Verdict) -> u8 {
    match v.outcome {
        Outcome::Reachable => 0,
        Outcome::NotReachable => 1,
        Outcome::Unknown => 2,
    }
}

/// The oracle can only contradict a verdict on the horizon it covers.
fn oracle_agrees(v: &Verdict, o: &OracleVerdict) -> bool {
    match (v.outcome, o) {
        (_, OracleVerdict::Undetermined(_)) => true,
        (Outcome::Reachable, OracleVerdict::Hit(n)) => v.witness_n == Some(*n),
        (Outcome::Reachable, OracleVerdict::Miss { horizon }) => {
            v.witness_n.is_some_and(|n| n > *horizon)
        }
        (Outcome::NotReachable, OracleVerdict::Hit(n)) => v.bound.is_some_and(|b| *n > b),
        (Outcome::NotReachable, OracleVerdict::Miss { .. }) => true,
        (Outcome::Unknown, _) => true,
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input);
            return ExitCode::from(EXIT_IO);
        }
    };
    let (inst, opts) = match parse_instance(&text) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input);
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let mut cfg = Config::default();
    if let Some(d) = args.baker_exponent.or(opts.baker_exponent) {
        cfg.baker_d = d;
    }
    if let Some(k) = args.qe_max_degree.or(opts.qe_max_degree) {
        cfg = cfg.with_qe_max_degree(k);
    }
    if let Some(n) = args.search_cap.or(opts.search_cap) {
        cfg.search_cap = n;
    }
    cfg.witness = args.witness;

    let t0 = Instant::now();
    let v = decide(&inst, &cfg);
    let elapsed = t0.elapsed();

    if args.trace {
        eprintln!("path: {}", v.path);
        for d in &v.diagnostics {
            eprintln!("  {d}");
        }
    }

    let mut code = exit_for(&v);
    let oracle = args.oracle_check.then(|| {
        let horizon = match v.outcome {
            Outcome::Reachable => v.witness_n.unwrap_or(0),
            Outcome::NotReachable => v.bound.unwrap_or(0),
            Outcome::Unknown => 200,
        }
        .min(ORACLE_HORIZON);
        let o = brute_force_decide(&inst, horizon, cfg.qe);
        if !oracle_agrees(&v, &o) {
            eprintln!("error: oracle disagrees: {o:?}");
            code = EXIT_ORACLE_MISMATCH;
        }
        o
    });

    if args.json {
        let mut out = serde_json::to_value(&v).expect("verdict serializes");
        out["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1e3);
        if let Some(o) = &oracle {
            out["oracle"] = json!(format!("{o:?}"));
        }
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("{v}");
        if let Some(p) = &v.witness_point {
            println!("witness point: ({})", p.join(", "));
        }
        if let Some(o) = &oracle {
            println!("oracle: {o:?}");
        }
    }
    ExitCode::from(code)
}
