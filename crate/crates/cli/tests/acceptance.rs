//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use wsweave::generator::{
    generate_divisible, generate_divisible_trace, informal_generate, oracle_enumerate, DivisibleInstance, OracleMode,
    OracleOptions,
};
use wsweave::plabic::{rotational_symmetry_certificate, Color};
use wsweave::weave::validate_ngraph;
use wsweave::{
    build_tiling, cliques, dual_plabic_graph, feasibility, generate, generate_with_trace, is_rho_symmetric,
    is_ws_collection, symmetric_weave_pipeline, BraidWord, Collection, KSubset, OrbitOrder, Params,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn sweep(nmax: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in 3..=nmax {
        for k in 1..=n / 2 {
            for ell in 1..n {
                if feasibility(k, n, ell).unwrap().feasible {
                    out.push((k, n, ell));
                }
            }
        }
    }
    out
}

fn subsets(text: &str, n: u32) -> BTreeSet<KSubset> {
    text.split_whitespace().map(|s| KSubset::parse(s, n).unwrap()).collect()
}

fn c1() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_wsweave"))
        .args(["generate", "-k", "3", "-n", "6", "-l", "3", "--order", "3,2,1", "--seedless"])
        .output()
        .map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))?;
    ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let d: Collection = serde_json::from_value(v["payload"].clone()).map_err(|e| e.to_string())?;
    let got: BTreeSet<KSubset> = d.iter().copied().collect();
    ensure(got == subsets("123 234 345 456 156 126 125 245 124 145", 6), || format!("got {d}"))?;
    Ok(format!("{d} in {:.0?}", start.elapsed()))
}

fn c2() -> Check {
    let start = Instant::now();
    let instances = sweep(12);
    for &(k, n, ell) in &instances {
        let d = generate(k, n, ell, None).map_err(|e| format!("({k},{n},{ell}): {e}"))?;
        ensure(d.len() as u32 == k * (n - k) + 1, || format!("({k},{n},{ell}): size {}", d.len()))?;
        ensure(is_ws_collection(&d).separated, || format!("({k},{n},{ell}): not separated"))?;
        ensure(is_rho_symmetric(&d, ell as i64).symmetric, || format!("({k},{n},{ell}): not symmetric"))?;
        for i in 1..=n {
            ensure(d.contains(&KSubset::interval(n, i, k).unwrap()), || format!("({k},{n},{ell}): interval {i}"))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} instances in {:.2?}", instances.len(), start.elapsed()))
}

fn c3() -> Check {
    let mut stages = 0;
    let mut count = 0;
    for (k, n, ell) in sweep(12).into_iter().filter(|&(_, n, ell)| n % ell == 0) {
        let inst = DivisibleInstance::new(k, n, ell).unwrap();
        let trace = generate_divisible_trace(&inst, &OrbitOrder::descending(ell)).map_err(|e| e.to_string())?;
        let (d, r, c) = (n / ell, inst.r, inst.c);
        for st in &trace.stages {
            let s = st.s;
            let (b, l) = if s + r < ell {
                (Some(k), d * k)
            } else if s + r == ell {
                let b = if c == 1 { k - r } else { k };
                (Some(b), d * b)
            } else {
                (None, [k + 1, 1, 0][(c + 1) as usize])
            };
            ensure(st.l_s.len() as u32 == l, || format!("({k},{n},{ell}) |L_{s}| = {} ≠ {l}", st.l_s.len()))?;
            if let Some(b) = b {
                ensure(st.b_s.len() as u32 == b, || format!("({k},{n},{ell}) |B_{s}| = {} ≠ {b}", st.b_s.len()))?;
            }
            stages += 1;
        }
        count += 1;
    }
    Ok(format!("{stages} stages over {count} divisible instances"))
}

fn c4() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=8u32 {
        for k in 1..=n / 2 {
            for ell in 1..n {
                let feasible = feasibility(k, n, ell).unwrap().feasible;
                let opts = OracleOptions { budget: 16, first_only: true };
                let found = oracle_enumerate(k, n, OracleMode::Symmetric { ell }, opts).map_err(|e| e.to_string())?;
                ensure(found.is_empty() != feasible, || format!("({k},{n},{ell}): feasible {feasible}, found {}", found.len()))?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{checked} instances in {:.2?}", start.elapsed()))
}

/// Triangulations of a convex polygon, counted by the apex over a fixed side.
fn triangulations(m: usize) -> u64 {
    let mut t = vec![0u64; m.max(3) + 1];
    t[2] = 1;
    for size in 3..=m {
        t[size] = (2..size).map(|apex| t[apex] * t[size - apex + 1]).sum();
    }
    t[m]
}

fn c5() -> Check {
    let mut report = Vec::new();
    for n in [6u32, 7] {
        let found = oracle_enumerate(2, n, OracleMode::All, OracleOptions::default()).map_err(|e| e.to_string())?.len() as u64;
        let expected = triangulations(n as usize);
        ensure(found == expected, || format!("(2,{n}): oracle {found}, triangulations {expected}"))?;
        report.push(format!("(2,{n}) = {found}"));
    }
    Ok(report.join(", "))
}

fn c6() -> Check {
    let d = Collection::parse("123 234 345 456 156 126 136 236 346 356", 6, 3).unwrap();
    let cs = cliques(&d);
    let cores = |c: Color| -> BTreeSet<KSubset> { cs.iter().filter(|q| q.color == c && q.is_nontrivial()).map(|q| q.core).collect() };
    ensure(cores(Color::White) == subsets("23 56 16 34 36", 6), || "white cores".into())?;
    ensure(cores(Color::Black) == subsets("1236 3456 2346 1356", 6), || "black cores".into())?;
    let members = |core: &str| {
        let core = KSubset::parse(core, 6).unwrap();
        cs.iter().find(|q| q.core == core).map(|q| q.members.iter().copied().collect::<BTreeSet<_>>()).unwrap_or_default()
    };
    ensure(members("36") == subsets("136 236 346 356", 6), || "W(36)".into())?;
    ensure(members("1356") == subsets("136 156 356", 6), || "B(1356)".into())?;
    let t = build_tiling(&d).map_err(|e| e.to_string())?;
    ensure(t.euler_characteristic() == 1, || "Euler".into())?;
    let single: BTreeSet<(KSubset, KSubset)> = t
        .edges
        .iter()
        .filter(|&&(a, b)| t.faces_on_edge(a, b).len() == 1)
        .map(|&(a, b)| (t.vertices[a].min(t.vertices[b]), t.vertices[a].max(t.vertices[b])))
        .collect();
    let steps: BTreeSet<(KSubset, KSubset)> = (1..=6)
        .map(|i| {
            let (a, b) = (KSubset::interval(6, i, 3).unwrap(), KSubset::interval(6, i % 6 + 1, 3).unwrap());
            (a.min(b), a.max(b))
        })
        .collect();
    ensure(single == steps, || "boundary edges are not the interval steps".into())?;
    Ok("cores, W(36), B(1356), Euler and boundary match".into())
}

fn c7() -> Check {
    let instances = sweep(12);
    for &(k, n, ell) in &instances {
        let d = generate(k, n, ell, None).map_err(|e| e.to_string())?;
        let g = dual_plabic_graph(&build_tiling(&d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let labels = g.face_labels().map_err(|e| e.to_string())?;
        ensure(labels.iter().eq(d.iter()), || format!("({k},{n},{ell}): labels differ"))?;
    }
    Ok(format!("{} instances", instances.len()))
}

fn c8() -> Check {
    let mut report = Vec::new();
    for (k, n, ell) in [(3, 6, 3), (2, 6, 3), (4, 8, 2)] {
        let start = Instant::now();
        let r = symmetric_weave_pipeline(k, n, ell, None).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(5))?;
        let ranks: Vec<u32> = (1..=k).rev().collect();
        ensure(r.ranks == ranks, || format!("({k},{n},{ell}) ranks {:?}", r.ranks))?;
        let w = r.weave.as_ref().ok_or("no weave")?;
        ensure(w.num_layers() == k - 1, || format!("({k},{n},{ell}) {} layers", w.num_layers()))?;
        ensure(validate_ngraph(w).is_empty(), || format!("({k},{n},{ell}) {:?}", validate_ngraph(w)))?;
        let braid = r.braid.as_ref().ok_or("no braid")?;
        ensure(*braid == BraidWord::torus(k, n), || format!("({k},{n},{ell}) braid {braid}"))?;
        let c = &r.certificates;
        ensure(c.tiling.is_symmetric(), || format!("({k},{n},{ell}) tiling certificate"))?;
        ensure(c.graph.is_symmetric(), || format!("({k},{n},{ell}) graph certificate"))?;
        let wc = c.weave.as_ref().ok_or("no weave certificate")?;
        ensure(wc.holds(), || format!("({k},{n},{ell}) weave certificate"))?;
        let how = if wc.exact { "exact" } else { "up to re-resolution at fixed sites" };
        report.push(format!("({k},{n},{ell}) {how} in {:.0?}", start.elapsed()));
    }
    Ok(report.join("; "))
}

fn c9() -> Check {
    let (d, trace) = generate_with_trace(3, 6, 4, None).map_err(|e| e.to_string())?;
    let fold = trace.fold.ok_or("no folding")?;
    ensure(trace.instance.n == 12 && fold.g == 2 && fold.dropped_stages == 2, || format!("{fold:?}, n' = {}", trace.instance.n))?;
    ensure(d.len() == 10, || format!("|D| = {}", d.len()))?;
    ensure(is_ws_collection(&d).separated && is_rho_symmetric(&d, 4).symmetric, || "checks".into())?;
    for i in 1..=6 {
        ensure(d.contains(&KSubset::interval(6, i, 3).unwrap()), || format!("interval {i}"))?;
    }
    ensure(rotational_symmetry_certificate(&build_tiling(&d).map_err(|e| e.to_string())?, 4).is_symmetric(), || "tiling".into())?;
    Ok(format!("n' = 12, {d}"))
}

fn c10() -> Check {
    let mut count = 0;
    for (k, n, ell) in sweep(9).into_iter().filter(|&(_, n, ell)| n % ell == 0) {
        let p = Params::new(k, n, ell).unwrap();
        for order in OrbitOrder::all_admissible(ell, ell) {
            let a = generate_divisible(&p, &order).map_err(|e| e.to_string())?;
            let b = informal_generate(&p, &order).map_err(|e| format!("({k},{n},{ell}) {order}: {e}"))?;
            ensure(a == b, || format!("({k},{n},{ell}) order {order}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (instance, order) pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden reproduction", c1),
        ("size law sweep", c2),
        ("stagewise counts", c3),
        ("necessity at desk scale", c4),
        ("oracle sanity", c5),
        ("clique and tiling fidelity", c6),
        ("duality round-trip", c7),
        ("pipeline", c8),
        ("folding case", c9),
        ("differential test", c10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
