//! The nine acceptance criteria, one pass/fail line each.
//!
//! Lines are written straight to stdout so they show up in `cargo test` output even when the
//! test passes. `ONLY_CRITERION=k` runs a single criterion; `TRACE_FUZZ=1` logs each random
//! instance of criteria 2 and 7 to stderr.

mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use orbit_core::asc::dominant::Rotation;
use orbit_core::asc::solve::{analyse_atom, circle_point, g_enclose, split_period, AtomAnalysis};
use orbit_core::asc::{residue_space, substitute_affine, SolveConfig};
use orbit_core::exppoly::ExpPoly;
use orbit_core::field::KElem;
use orbit_core::kernel::algebraic::{mignotte_gap, AlgebraicNumber};
use orbit_core::kernel::dyadic::{CIv, Iv};
use orbit_core::kernel::poly::IntPoly;
use orbit_core::oracle::{brute_force_decide, OracleVerdict};
use orbit_core::orbit::system::point_atoms;
use orbit_core::orbit::{decide, Config, OrbitInstance, Outcome, Source, Verdict};
use orbit_core::semialg::{qe_exists, to_dnf, Formula, MPoly, QeLimits, Rel, SemialgebraicSet};
use orbit_core::spectral::{classify_and_decompose, RationalMatrix, SpectralKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::time::Instant;

fn report(k: usize, title: &str, pass: bool, detail: &str) -> bool {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {k} [{}] {title}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> RationalMatrix {
    let rows = (0..3)
        .map(|_| {
            (0..3)
                .map(|_| rat(rng.gen_range(-2..=2), rng.gen_range(1..=2)))
                .collect()
        })
        .collect();
    RationalMatrix::new(rows).unwrap()
}

/// [[a, -b, 0], [b, a, 0], [0, 0, c]]: a complex pair for b != 0.
fn random_rotation(rng: &mut ChaCha8Rng) -> RationalMatrix {
    let a = rat(rng.gen_range(-4..=4), rng.gen_range(1..=5));
    let b = rat(rng.gen_range(1..=4), rng.gen_range(1..=5));
    let c = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    let z = BigRational::zero();
    RationalMatrix::new(vec![
        vec![a.clone(), -b.clone(), z.clone()],
        vec![b, a, z.clone()],
        vec![z.clone(), z, c],
    ])
    .unwrap()
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    (0..3)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-1..=1))))
        .collect()
}

/// One conjunction of one or two atoms of degree at most 2.
fn random_target(rng: &mut ChaCha8Rng) -> SemialgebraicSet {
    let monomials: [[u32; 3]; 10] = [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [2, 0, 0],
        [0, 2, 0],
        [0, 0, 2],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
    ];
    let atoms = (0..rng.gen_range(1..=2))
        .map(|_| loop {
            let terms: Vec<(Vec<u32>, BigInt)> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    (
                        monomials[rng.gen_range(0..10)].to_vec(),
                        BigInt::from(rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 }),
                    )
                })
                .collect();
            let p = MPoly::from_terms(3, terms);
            if p.as_constant().is_none() {
                let rel = [Rel::Eq, Rel::Gt, Rel::Lt][rng.gen_range(0..3)];
                break Formula::atom(p, rel);
            }
        })
        .collect();
    to_dnf(&Formula::And(atoms), 3)
}

fn dense(a: &RationalMatrix) -> bool {
    if a.is_singular() {
        return false;
    }
    match classify_and_decompose(a) {
        Ok(s) if s.kind == SpectralKind::ComplexPair => {
            matches!(Rotation::unity_period(&s.forward.space), Ok(None))
        }
        _ => false,
    }
}

/// Per-atom analyses of a dense point instance, one per residue class.
struct AtomCase {
    f: ExpPoly,
    a: AtomAnalysis,
}

fn dense_atoms(inst: &OrbitInstance, cfg: &SolveConfig) -> Vec<AtomCase> {
    let Source::Point(s) = &inst.source else {
        return vec![];
    };
    if !dense(&inst.matrix) {
        return vec![];
    }
    let spec = classify_and_decompose(&inst.matrix).unwrap();
    let mut out = vec![];
    for conj in point_atoms(&spec, s, &inst.target) {
        let Ok((d, false)) = split_period(&conj) else {
            continue;
        };
        let Some((f0, _)) = conj.first() else {
            continue;
        };
        let sp = if d == 1 {
            f0.space.clone()
        } else {
            residue_space(&f0.space, d)
        };
        let Ok(Some(rot)) = Rotation::of_space(&sp) else {
            continue;
        };
        for m in 0..d {
            for (f, _) in &conj {
                let g = if d == 1 {
                    f.clone()
                } else {
                    substitute_affine(f, &sp, d, m)
                };
                if let Ok(Some(a)) = analyse_atom(&g, Some(&rot), cfg) {
                    out.push(AtomCase { f: g, a });
                }
            }
        }
    }
    out
}

fn matches_expect(v: &Verdict, e: Expect) -> bool {
    match e {
        Expect::Reach(n) => v.outcome == Outcome::Reachable && v.witness_n == Some(n),
        Expect::Never => v.outcome == Outcome::NotReachable,
    }
}

fn criterion_1() -> bool {
    let t0 = Instant::now();
    let cfg = Config::default();
    let cases = corpus();
    let mut paths = std::collections::BTreeSet::new();
    let mut bad = vec![];
    for c in &cases {
        let v = decide(&c.inst, &cfg);
        paths.insert(v.path.clone());
        if !matches_expect(&v, c.expect) {
            bad.push(format!("{} gave {v}", c.name));
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let pass = bad.is_empty() && cases.len() >= 12 && secs < 300.0;
    report(
        1,
        "end-to-end corpus",
        pass,
        &format!(
            "{}/{} verdicts match, paths {:?}, {secs:.1}s {}",
            cases.len() - bad.len(),
            cases.len(),
            paths,
            bad.join("; ")
        ),
    )
}

/// Fuzz instances shared by criteria 2, 5 and 6.
fn fuzz_instances() -> Vec<OrbitInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    (0..200)
        .map(|_| {
            OrbitInstance::point(
                random_matrix(&mut rng),
                random_point(&mut rng),
                random_target(&mut rng),
            )
        })
        .collect()
}

fn criterion_2(insts: &[OrbitInstance]) -> bool {
    let cfg = Config::default();
    let mut unknown = 0;
    let mut bad = vec![];
    let trace = std::env::var("TRACE_FUZZ").is_ok();
    for (i, inst) in insts.iter().enumerate() {
        let t0 = Instant::now();
        let v = decide(inst, &cfg);
        if trace {
            eprintln!("#{i} {v} [{}] {:?}", v.path, t0.elapsed());
        }
        let n_max = v.bound.map_or(5000, |b| (b + 1000).max(5000));
        match v.outcome {
            Outcome::Unknown => unknown += 1,
            Outcome::Reachable => {
                let n = v.witness_n.unwrap();
                match brute_force_decide(inst, n.max(n_max), cfg.qe) {
                    OracleVerdict::Hit(m) if m == n => {}
                    o => bad.push(format!("#{i}: {v} vs {o:?}")),
                }
            }
            Outcome::NotReachable => match brute_force_decide(inst, n_max, cfg.qe) {
                OracleVerdict::Miss { .. } => {}
                o => bad.push(format!("#{i}: {v} vs {o:?}")),
            },
        }
    }
    let rate = unknown as f64 / insts.len() as f64;
    report(
        2,
        "oracle equivalence fuzzing",
        bad.is_empty() && rate < 0.10,
        &format!(
            "{} instances, {} contradictions, UNKNOWN rate {:.1}% {}",
            insts.len(),
            bad.len(),
            100.0 * rate,
            bad.join("; ")
        ),
    )
}

fn dist_bounds(a: &AlgebraicNumber, b: &AlgebraicNumber, prec: u64) -> (BigRational, BigRational) {
    let d = a.enclose(prec).sub(&b.enclose(prec), prec);
    (d.abs_lo(prec).to_rational(), d.abs_hi(prec).to_rational())
}

fn criterion_3() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut tested = 0;
    let mut violations = vec![];
    let mut tightest: Option<f64> = None;
    while tested < 100 {
        let deg = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-100..=100)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        let p = IntPoly::from_i64(&c).squarefree();
        if p.degree() < 2 {
            continue;
        }
        tested += 1;
        let gap = mignotte_gap(&p).unwrap();
        let roots = AlgebraicNumber::roots_of(&p, false).unwrap();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let mut prec = 64;
                loop {
                    let (lo, hi) = dist_bounds(&roots[i], &roots[j], prec);
                    if lo >= gap {
                        let r =
                            num_traits::ToPrimitive::to_f64(&(&lo / &gap)).unwrap_or(f64::INFINITY);
                        tightest = Some(tightest.map_or(r, |t: f64| t.min(r)));
                        break;
                    }
                    if hi < gap || prec > 4096 {
                        violations.push(format!("{c:?} roots {i},{j}"));
                        break;
                    }
                    prec *= 2;
                }
            }
        }
    }
    report(
        3,
        "Mignotte separation",
        violations.is_empty(),
        &format!(
            "{tested} polynomials, {} violations, smallest certified gap / bound = {:.3} {}",
            violations.len(),
            tightest.unwrap_or(0.0),
            violations.join("; ")
        ),
    )
}

fn criterion_4() -> bool {
    let mut checked = 0;
    let mut bad = vec![];
    for c in corpus() {
        let Source::Point(s) = &c.inst.source else {
            continue;
        };
        let a = &c.inst.matrix;
        if a.is_singular() {
            continue;
        }
        let Ok(spec) = classify_and_decompose(a) else {
            continue;
        };
        if spec.kind != SpectralKind::ComplexPair {
            continue;
        }
        checked += 1;
        let ys = spec.forward.apply(s);
        let mut x = s.clone();
        for n in 0..=30u64 {
            for (i, y) in ys.iter().enumerate() {
                if y.eval(n) != KElem::from_rational(&y.space.field, x[i].clone()) {
                    bad.push(format!("{} n={n} coordinate {i}", c.name));
                }
            }
            x = a.apply(&x);
        }
    }
    report(
        4,
        "closed form agrees with matrix powers",
        bad.is_empty() && checked > 0,
        &format!(
            "{checked} complex-pair instances, n = 0..30, {} mismatches {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn factorial(d: usize) -> BigInt {
    (1..=d as u64)
        .map(BigInt::from)
        .product::<BigInt>()
        .max(BigInt::from(1))
}

fn unit(u: &BigRational, prec: u64) -> CIv {
    let (x, y) = circle_point(u);
    CIv::new(Iv::from_rational(&x, prec), Iv::from_rational(&y, prec))
}

/// Sampling check of the lower bounds on |g| around and away from its circle zeros.
fn audit_dominant(
    a: &AtomAnalysis,
    rng: &mut ChaCha8Rng,
    prec: u64,
) -> Result<(usize, usize), String> {
    let mut near_checked = 0;
    let norm = &a.norm;
    let dom = &a.dominant;
    let k = norm
        .beta
        .keys()
        .map(|m| m.unsigned_abs())
        .max()
        .unwrap_or(0) as usize;
    if dom.zeros.len() > 4 * k.max(1) {
        return Err(format!("{} circle zeros for k = {k}", dom.zeros.len()));
    }
    let eps = dom.eps1.to_rational();
    for z in &dom.zeros {
        let d = z.root.mult;
        if d > 4 * k {
            return Err(format!("zero multiplicity {d} for k = {k}"));
        }
        let phi = z.root.disc.center();
        // phi is known to within the disc radius; the bound below absorbs that slack
        let slack = z.root.disc.r.to_rational();
        let coef = z.deriv_lo.to_rational() / BigRational::from_integer(factorial(d) * 2);
        for i in 0..100 {
            let frac = rat(rng.gen_range(1..=1000), 1000);
            let u = &eps / BigRational::from_integer(2.into())
                * frac
                * if i % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            // t = 2 atan(u), so |t| <= 2|u|
            let t_hi = u.abs() * BigRational::from_integer(2.into());
            if slack > t_hi.clone() / BigRational::from_integer(1000.into()) {
                continue;
            }
            let w = phi.mul(&unit(&u, prec), prec);
            let g = g_enclose(norm, &w, prec).abs_lo(prec).to_rational();
            let need = &coef * num_traits::pow(t_hi - &slack, d);
            if g < need {
                return Err(format!(
                    "near-zero bound fails at u = {u}: |g| >= {g} < {need}"
                ));
            }
            near_checked += 1;
        }
    }
    let b = dom.b.to_rational();
    let mut hits = 0;
    let mut tries = 0;
    while hits < 100 && tries < 2000 {
        tries += 1;
        let u = rat(rng.gen_range(-4000..=4000), 1000);
        let w = unit(&u, prec);
        let near = dom.zeros.iter().any(|z| {
            w.sub(&z.root.disc.center(), prec)
                .abs_lo(prec)
                .to_rational()
                < &eps + z.root.disc.r.to_rational()
        });
        if near {
            continue;
        }
        hits += 1;
        let g = g_enclose(norm, &w, prec).abs_lo(prec).to_rational();
        if g < b {
            return Err(format!(
                "outside bound fails at u = {u}: |g| >= {g} < B = {b}"
            ));
        }
    }
    Ok((near_checked, hits))
}

fn dense_cases(fuzz: &[OrbitInstance]) -> Vec<OrbitInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut out: Vec<OrbitInstance> = corpus()
        .into_iter()
        .map(|c| c.inst)
        .filter(|i| dense(&i.matrix))
        .collect();
    out.extend(fuzz.iter().filter(|i| dense(&i.matrix)).cloned());
    while out.len() < 60 {
        let a = random_rotation(&mut rng);
        if dense(&a) {
            out.push(OrbitInstance::point(
                a,
                random_point(&mut rng),
                random_target(&mut rng),
            ));
        }
    }
    out.into_iter()
        .filter(|i| matches!(i.source, Source::Point(_)))
        .collect()
}

fn criterion_5(insts: &[OrbitInstance]) -> bool {
    let scfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0055);
    let mut atoms = 0;
    let mut zeros = 0;
    let (mut near, mut far) = (0, 0);
    let mut bad = vec![];
    for (i, inst) in insts.iter().enumerate() {
        for c in dense_atoms(inst, &scfg) {
            atoms += 1;
            zeros += c.a.dominant.zeros.len();
            match audit_dominant(&c.a, &mut rng, 256) {
                Ok((n, f)) => {
                    near += n;
                    far += f;
                }
                Err(e) => bad.push(format!("instance {i}: {e}")),
            }
        }
    }
    report(
        5,
        "dominant-part invariants",
        bad.is_empty() && atoms > 0 && near > 0,
        &format!(
            "{} instances, {atoms} atoms, {zeros} circle zeros, {near} samples near zeros and {far} away, {} violations {}",
            insts.len(),
            bad.len(),
            bad.join("; ")
        ),
    )
}

/// gamma^n for gamma = z1/|z1| on the space of f.
fn gamma_pow(f: &ExpPoly, n: u64, prec: u64) -> CIv {
    let wp = prec + 64;
    let l = f.space.bases[0].enclose(wp);
    let m = l
        .norm_sq(wp)
        .sqrt(wp)
        .recip(wp)
        .expect("nonzero eigenvalue");
    l.scale(&m, wp).pow(n, wp)
}

fn criterion_6(insts: &[OrbitInstance]) -> bool {
    let scfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let (mut samples, mut uncertified) = (0usize, 0usize);
    let mut bad = vec![];
    for (i, inst) in insts.iter().enumerate() {
        for c in dense_atoms(inst, &scfg) {
            let n0 = c.a.threshold;
            for _ in 0..200 {
                let n = n0 + rng.gen_range(1..=2000);
                samples += 1;
                let mut done = false;
                let mut prec = 256;
                while !done && prec <= 4096 {
                    let dom = g_enclose(&c.a.norm, &gamma_pow(&c.f, n, prec), prec)
                        .re
                        .sign();
                    let full = c.f.enclose(n, prec).re.sign();
                    match (dom, full) {
                        (Some(0), _) => {
                            bad.push(format!("instance {i}: dominant part vanishes at n = {n}"));
                            done = true;
                        }
                        (Some(a), Some(b)) if b != 0 => {
                            if a != b {
                                bad.push(format!(
                                    "instance {i}: sign flip at n = {n} beyond N = {n0}"
                                ));
                            }
                            done = true;
                        }
                        _ => prec *= 2,
                    }
                }
                if !done {
                    uncertified += 1;
                }
            }
        }
    }
    report(
        6,
        "sign stability beyond the bound",
        bad.is_empty() && samples > 0,
        &format!(
            "{samples} sampled n, {} violations, {uncertified} left uncertified at 4096 bits {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn criterion_7() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let cfg = Config::default();
    let (mut compared, mut dense_n, mut unknown) = (0, 0, 0);
    let mut bad = vec![];
    for i in 0..100 {
        let a = if i % 2 == 0 {
            random_rotation(&mut rng)
        } else {
            random_matrix(&mut rng)
        };
        let s = random_point(&mut rng);
        let t = random_target(&mut rng);
        if dense(&a) {
            dense_n += 1;
        }
        let vp = decide(&OrbitInstance::point(a.clone(), s.clone(), t.clone()), &cfg);
        let t0 = Instant::now();
        let si = OrbitInstance::set(a, SemialgebraicSet::point(&s), t);
        if std::env::var("TRACE_FUZZ").is_ok() {
            eprintln!("{}", orbit_core::io::instance_json(&si));
        }
        let vs = decide(&si, &cfg);
        if std::env::var("TRACE_FUZZ").is_ok() {
            eprintln!(
                "#{i} point {vp} [{}], set {vs} [{}] {:?}",
                vp.path,
                vs.path,
                t0.elapsed()
            );
        }
        if vp.outcome == Outcome::Unknown || vs.outcome == Outcome::Unknown {
            unknown += 1;
            continue;
        }
        compared += 1;
        if vp.outcome != vs.outcome
            || (vp.outcome == Outcome::Reachable && vp.witness_n != vs.witness_n)
        {
            bad.push(format!(
                "#{i}: point {vp} [{}], set {vs} [{}]",
                vp.path, vs.path
            ));
        }
    }
    report(
        7,
        "set and point paths agree on singletons",
        bad.is_empty(),
        &format!("{compared} compared ({dense_n} dense rotations), {unknown} skipped as UNKNOWN, {} disagreements {}", bad.len(), bad.join("; ")),
    )
}

fn criterion_8() -> bool {
    let mut checked = vec![];
    let mut bad = vec![];
    let mut mats: Vec<RationalMatrix> = corpus().into_iter().map(|c| c.inst.matrix).collect();
    mats.dedup_by(|a, b| a == b);
    for a in mats {
        if a.is_singular() {
            continue;
        }
        let Ok(spec) = classify_and_decompose(&a) else {
            continue;
        };
        let Some(l) = spec.lambda() else { continue };
        if !l.mul(&l.conj()).is_one() {
            continue;
        }
        let order = l.to_algebraic().root_of_unity_order().unwrap();
        // period of the rotation block by plain iteration
        let mut p = l.clone();
        let mut period = None;
        for q in 1..=60u64 {
            if p.is_one() {
                period = Some(q);
                break;
            }
            p = p.mul(l);
        }
        let block_period = period.filter(|&q| {
            let aq = a.pow(q);
            (0..2).all(|i| (0..2).all(|j| aq.get(i, j) == &rat((i == j) as i64, 1)))
        });
        if order != period || period != block_period {
            bad.push(format!("{a:?}: detected {order:?}, iterated {period:?}"));
        }
        checked.push(format!("{order:?}"));
    }
    let dense = AlgebraicNumber::roots_of(&IntPoly::from_i64(&[5, -6, 5]), false).unwrap();
    let certified = dense.iter().all(|g| g.root_of_unity_order() == Ok(None));
    report(
        8,
        "root-of-unity detection",
        bad.is_empty() && certified && !checked.is_empty(),
        &format!("unit-modulus blocks with orders {checked:?} match iteration; (3+4i)/5 certified not a root of unity: {certified} {}", bad.join("; ")),
    )
}

fn criterion_9() -> bool {
    let limits = QeLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let v = |n: usize, i: usize| MPoly::var(n, i);
    let cases: Vec<(
        &str,
        SemialgebraicSet,
        Vec<usize>,
        Box<dyn Fn(&[BigRational]) -> bool>,
    )> = vec![
        (
            "exists x: x^2 = a",
            to_dnf(
                &Formula::atom(v(2, 1).mul(&v(2, 1)).sub(&v(2, 0)), Rel::Eq),
                2,
            ),
            vec![1],
            Box::new(|p: &[BigRational]| !p[0].is_negative()),
        ),
        (
            "exists x: a x + b = 0",
            to_dnf(
                &Formula::atom(v(3, 0).mul(&v(3, 2)).add(&v(3, 1)), Rel::Eq),
                3,
            ),
            vec![2],
            Box::new(|p: &[BigRational]| !p[0].is_zero() || p[1].is_zero()),
        ),
        (
            "exists x, y: x^2 + y^2 = c and x > 0",
            to_dnf(
                &Formula::And(vec![
                    Formula::atom(
                        v(3, 1)
                            .mul(&v(3, 1))
                            .add(&v(3, 2).mul(&v(3, 2)))
                            .sub(&v(3, 0)),
                        Rel::Eq,
                    ),
                    Formula::atom(v(3, 1), Rel::Gt),
                ]),
                3,
            ),
            vec![1, 2],
            Box::new(|p: &[BigRational]| p[0].is_positive()),
        ),
    ];
    let mut bad = vec![];
    for (name, set, bound, truth) in &cases {
        let out = match qe_exists(set, bound, limits) {
            Ok(o) => o,
            Err(e) => {
                bad.push(format!("{name}: {}", e.0));
                continue;
            }
        };
        let mut mismatches = 0;
        for i in 0..1000 {
            let mut p: Vec<BigRational> = (0..set.num_vars)
                .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
                .collect();
            // keep exact zeros well represented
            if i % 5 == 0 {
                p[rng.gen_range(0..set.num_vars - bound.len())] = BigRational::zero();
            }
            for &b in bound {
                p[b] = BigRational::zero();
            }
            if out.contains_rat(&p) != truth(&p) {
                mismatches += 1;
            }
        }
        if mismatches > 0 {
            bad.push(format!("{name}: {mismatches} mismatches"));
        }
    }
    report(
        9,
        "quantifier elimination micro-suite",
        bad.is_empty(),
        &format!(
            "3 formulas x 1000 samples, {}",
            if bad.is_empty() {
                "no mismatches".to_string()
            } else {
                bad.join("; ")
            }
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let t0 = Instant::now();
    let fuzz = fuzz_instances();
    let dense = dense_cases(&fuzz);
    if let Ok(k) = std::env::var("ONLY_CRITERION") {
        let ok = match k.as_str() {
            "1" => criterion_1(),
            "2" => criterion_2(&fuzz),
            "3" => criterion_3(),
            "4" => criterion_4(),
            "5" => criterion_5(&dense),
            "6" => criterion_6(&dense),
            "7" => criterion_7(),
            "8" => criterion_8(),
            _ => criterion_9(),
        };
        assert!(ok);
        return;
    }
    let results = [
        criterion_1(),
        criterion_2(&fuzz),
        criterion_3(),
        criterion_4(),
        criterion_5(&dense),
        criterion_6(&dense),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "note: complexity claims and the non-constructive Baker exponent are not checked; verdicts are sound relative to the configured exponent d = {} ({:.1}s total)",
        Config::default().baker_d,
        t0.elapsed().as_secs_f64()
    );
    drop(out);
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
