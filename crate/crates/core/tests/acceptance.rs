//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use covertime_core::bounds::{
    harmonic, matthews_bounds, resistance_upper, scaling_ratio, scaling_study, CoverEstimator,
    Family, MethodChoice, StudyConfig,
};
use covertime_core::generators::{
    apollonian, barabasi_albert, complete, cycle, path, pseudofractal, star, BaConfig,
};
use covertime_core::ingest::{self, EdgeListFormat};
use covertime_core::resistance::apollonian::{
    apollonian_matrix_identity_residual, apollonian_resistance_recursive,
};
use covertime_core::resistance::{resistance_table, BoundedFamily, Method, SolverOptions};
use covertime_core::verify::sum_rule_max_residual;
use covertime_core::walks::{exact_cover_all, exact_hitting_times, mc_graph_cover};
use covertime_core::{Graph, WalkConfig};

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }
}

type Outcome = Result<Verdict, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load_dataset(name: &str) -> Result<Graph, String> {
    let path = data_path(&format!("{name}.txt"));
    if !path.exists() {
        return Err(format!("data file {} not found", path.display()));
    }
    let raw = ingest::read_edge_list(&path, EdgeListFormat::default()).map_err(err)?;
    ingest::normalize(&raw).map_err(err)
}

fn within_runtime(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut recursion_worst: f64 = 0.0;
    for g in 0..=4 {
        let recursive = apollonian_resistance_recursive(g).map_err(err)?;
        let dense =
            resistance_table(&apollonian(g).map_err(err)?.graph, Method::Dense).map_err(err)?;
        recursion_worst = recursion_worst.max(recursive.max_abs_diff(&dense));
    }
    let mut block_worst = 0;
    for g in 0..=2 {
        block_worst = block_worst.max(apollonian_matrix_identity_residual(g).map_err(err)?.abs());
    }
    let a4 = apollonian(4).map_err(err)?.graph;
    let f4 = pseudofractal(4).map_err(err)?.graph;
    let sum_a = sum_rule_max_residual(
        &resistance_table(&a4, Method::Dense).map_err(err)?,
        &a4,
        1000,
        1,
    );
    let sum_f = sum_rule_max_residual(
        &resistance_table(&f4, Method::Dense).map_err(err)?,
        &f4,
        1000,
        2,
    );
    let elapsed = start.elapsed();
    let passed = recursion_worst <= 1e-9
        && block_worst == 0
        && sum_a <= 1e-9
        && sum_f <= 1e-9
        && within_runtime(elapsed, 60);
    Ok(Verdict::new(
        passed,
        format!(
            "recursion vs dense g<=4 max {recursion_worst:.2e} (<=1e-9); block product g<=2 max {block_worst} (=0); \
             sum rule A_4 {sum_a:.2e}, F_4 {sum_f:.2e} (<=1e-9); {:.1}s (<=60s)",
            elapsed.as_secs_f64()
        ),
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut r_a: f64 = 0.0;
    for g in 0..=5 {
        let t = resistance_table(&apollonian(g).map_err(err)?.graph, Method::Dense).map_err(err)?;
        r_a = r_a.max(t.diameter());
    }
    let mut r_f: f64 = 0.0;
    for g in 0..=6 {
        let t =
            resistance_table(&pseudofractal(g).map_err(err)?.graph, Method::Dense).map_err(err)?;
        r_f = r_f.max(t.diameter());
    }
    let elapsed = start.elapsed();
    let bound_a = BoundedFamily::Apollonian.resistance_bound();
    let bound_f = BoundedFamily::Pseudofractal.resistance_bound();
    Ok(Verdict::new(
        r_a <= bound_a && r_f <= bound_f && within_runtime(elapsed, 300),
        format!(
            "max R(A_g), g<=5: {r_a:.6} (<=5/3); max R(F_g), g<=6: {r_f:.6} (<=3); {:.1}s (<=300s)",
            elapsed.as_secs_f64()
        ),
    ))
}

struct DatasetRow {
    name: &'static str,
    n: usize,
    e: usize,
    d_avg: &'static str,
    delta: usize,
    r: f64,
}

fn criterion_3() -> Outcome {
    let rows = [
        DatasetRow {
            name: "karate",
            n: 34,
            e: 78,
            d_avg: "4.59",
            delta: 5,
            r: 1.83,
        },
        DatasetRow {
            name: "windsurfers",
            n: 43,
            e: 336,
            d_avg: "15.63",
            delta: 3,
            r: 0.34,
        },
        DatasetRow {
            name: "lesmis",
            n: 77,
            e: 254,
            d_avg: "6.60",
            delta: 5,
            r: 3.62,
        },
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for row in &rows {
        let g = match load_dataset(row.name) {
            Ok(g) => g,
            Err(e) => {
                passed = false;
                parts.push(format!("{}: {e}", row.name));
                continue;
            }
        };
        let delta = g.hop_diameter().map_err(err)?;
        let r = resistance_table(&g, Method::Dense).map_err(err)?.diameter();
        let d_avg = format!("{:.2}", g.average_degree());
        let ok = g.node_count() == row.n
            && g.edge_count() == row.e
            && d_avg == row.d_avg
            && delta == row.delta
            && (r - row.r).abs() <= 0.01;
        passed &= ok;
        parts.push(format!(
            "{}: N={} E={} d_avg={d_avg} delta={delta} R={r:.4} ({})",
            row.name,
            g.node_count(),
            g.edge_count(),
            if ok { "ok" } else { "mismatch" }
        ));
    }
    Ok(Verdict::new(passed, parts.join("; ")))
}

fn criterion_4() -> Outcome {
    let g = load_dataset("karate")?;
    let cfg = WalkConfig::new(1000, 0);
    let est = mc_graph_cover(&g, &cfg).map_err(err)?;
    let c = est.worst.mean;
    let ratio = scaling_ratio(c, g.node_count()).map_err(err)?;
    let c_ok = (c - 328.0).abs() <= 0.10 * 328.0;
    let ratio_ok = (ratio - 2.735).abs() <= 0.10 * 2.735;
    Ok(Verdict::new(
        c_ok && ratio_ok,
        format!(
            "karate C_mc={c:.2} +/- {:.2} (start {}, 34 starts x 1000 trials, seed 0; target 328 +/-10%), \
             ratio={ratio:.4} (target 2.735 +/-10%)",
            est.worst.ci95_halfwidth, est.worst_start
        ),
    ))
}

fn criterion_5() -> Outcome {
    let mut worst_complete: f64 = 0.0;
    for n in 3..=10 {
        let exact = exact_cover_all(&complete(n).map_err(err)?).map_err(err)?;
        let expected = (n as f64 - 1.0) * harmonic(n - 1).map_err(err)?;
        for c in exact {
            worst_complete = worst_complete.max((c - expected).abs());
        }
    }
    let graphs = [
        ("K_6", complete(6).map_err(err)?),
        ("cycle(8)", cycle(8).map_err(err)?),
        ("path(7)", path(7).map_err(err)?),
        ("A_1", apollonian(1).map_err(err)?.graph),
    ];
    let mut passed = worst_complete <= 1e-10;
    let mut parts = vec![format!(
        "K_3..K_10 DP vs (N-1)h_(N-1) max {worst_complete:.2e} (<=1e-10)"
    )];
    for (k, (name, g)) in graphs.iter().enumerate() {
        let exact = exact_cover_all(g).map_err(err)?;
        let est = mc_graph_cover(g, &WalkConfig::new(10_000, k as u64)).map_err(err)?;
        let mut worst_z: f64 = 0.0;
        for (s, stats) in &est.per_start {
            worst_z = worst_z.max((stats.mean - exact[*s]).abs() / stats.ci95_halfwidth);
        }
        let exact_cover = exact.iter().copied().fold(0.0, f64::max);
        passed &= worst_z <= 3.0;
        parts.push(format!(
            "{name}: C exact {exact_cover:.4}, MC {:.4}, worst |MC-DP|/ci95 over starts {worst_z:.2} (<=3)",
            est.worst.mean
        ));
    }
    Ok(Verdict::new(passed, parts.join("; ")))
}

fn criterion_6() -> Outcome {
    let graphs = [
        ("karate", load_dataset("karate")?),
        ("A_2", apollonian(2).map_err(err)?.graph),
        ("F_3", pseudofractal(3).map_err(err)?.graph),
        ("K_8", complete(8).map_err(err)?),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, g) in &graphs {
        let h = exact_hitting_times(g).map_err(err)?;
        let t = resistance_table(g, Method::Dense).map_err(err)?;
        let two_e = 2.0 * g.edge_count() as f64;
        let n = g.node_count();
        let mut worst: f64 = 0.0;
        for u in 0..n {
            for v in 0..n {
                worst = worst.max((h[(u, v)] + h[(v, u)] - two_e * t.get(u, v)).abs());
            }
        }
        passed &= worst <= 1e-8;
        parts.push(format!("{name} {worst:.2e}"));
    }
    Ok(Verdict::new(
        passed,
        format!(
            "max |H_uv + H_vu - 2E Omega_uv| (<=1e-8): {}",
            parts.join(", ")
        ),
    ))
}

fn criterion_7() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 3..=12 {
        graphs.push((format!("K_{n}"), complete(n).map_err(err)?));
        graphs.push((format!("cycle({n})"), cycle(n).map_err(err)?));
        graphs.push((format!("path({n})"), path(n).map_err(err)?));
    }
    graphs.push(("star(11)".into(), star(11).map_err(err)?));
    graphs.push(("A_0".into(), apollonian(0).map_err(err)?.graph));
    graphs.push(("A_1".into(), apollonian(1).map_err(err)?.graph));
    graphs.push(("F_0".into(), pseudofractal(0).map_err(err)?.graph));
    graphs.push(("F_1".into(), pseudofractal(1).map_err(err)?.graph));
    graphs.push(("F_2".into(), pseudofractal(2).map_err(err)?.graph));
    for seed in 0..5 {
        for m in 1..=3 {
            let g = barabasi_albert(BaConfig::new(12, m, seed)).map_err(err)?;
            graphs.push((format!("BA(12,{m},{seed})"), g));
        }
    }
    // Floating slack for sides that coincide exactly, as on complete graphs.
    let slack = |x: f64| 1e-9 * x.abs().max(1.0);
    let mut failures = Vec::new();
    for (name, g) in &graphs {
        let h = exact_hitting_times(g).map_err(err)?;
        let mb = matthews_bounds(&h);
        let cover = exact_cover_all(g)
            .map_err(err)?
            .into_iter()
            .fold(0.0, f64::max);
        let r = resistance_table(g, Method::Dense).map_err(err)?.diameter();
        let top = resistance_upper(g, r).rigorous;
        let holds = mb.lower <= cover + slack(cover)
            && cover <= mb.upper + slack(cover)
            && mb.upper <= top + slack(top);
        if !holds {
            failures.push(format!(
                "{name}: {:.6} <= {cover:.6} <= {:.6} <= {top:.6}",
                mb.lower, mb.upper
            ));
        }
    }
    Ok(Verdict::new(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "h*H_min <= C <= h*H_max <= 2ERh on all {} graphs with N <= 12",
                graphs.len()
            )
        } else {
            format!("violated on {}", failures.join("; "))
        },
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let ms = [2usize, 3, 4];
    let sizes = [500usize, 1000, 2000];
    let seeds: Vec<u64> = (0..10).collect();
    // means[m][size]
    let mut means = vec![vec![0.0; sizes.len()]; ms.len()];
    for (mi, &m) in ms.iter().enumerate() {
        let cfg = StudyConfig {
            family: Family::Ba { m },
            sizes: sizes.to_vec(),
            seeds: seeds.clone(),
            method: MethodChoice::Fixed(Method::Solver(SolverOptions::default())),
            cover: CoverEstimator::None,
        };
        let rows = scaling_study(&cfg);
        for (si, &size) in sizes.iter().enumerate() {
            let values: Vec<f64> = rows
                .iter()
                .filter(|r| r.size == size)
                .map(|r| r.outcome.as_ref().map(|o| o.diameter).map_err(Clone::clone))
                .collect::<Result<_, _>>()?;
            if values.len() != seeds.len() {
                return Err(format!("expected {} rows for m={m} N={size}", seeds.len()));
            }
            means[mi][si] = values.iter().sum::<f64>() / values.len() as f64;
        }
    }
    let elapsed = start.elapsed();
    let decreasing =
        (0..sizes.len()).all(|si| (1..ms.len()).all(|mi| means[mi][si] < means[mi - 1][si]));
    let changes: Vec<f64> = means
        .iter()
        .map(|row| (row[sizes.len() - 1] - row[0]).abs() / row[0])
        .collect();
    let flat = changes.iter().all(|&c| c <= 0.25);
    let table: Vec<String> = ms
        .iter()
        .zip(&means)
        .zip(&changes)
        .map(|((m, row), c)| {
            format!(
                "m={m}: {:.4}/{:.4}/{:.4} (change {:.1}%)",
                row[0],
                row[1],
                row[2],
                100.0 * c
            )
        })
        .collect();
    Ok(Verdict::new(
        decreasing && flat && within_runtime(elapsed, 1800),
        format!(
            "mean R at N=500/1000/2000 over 10 seeds, solver: {}; decreasing in m: {decreasing}; \
             change <=25%: {flat}; {:.1}s (<=1800s)",
            table.join(", "),
            elapsed.as_secs_f64()
        ),
    ))
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

fn criterion_9() -> Outcome {
    let study = || {
        let cfg = StudyConfig {
            family: Family::Ba { m: 2 },
            sizes: vec![80, 120],
            seeds: vec![0, 1, 2],
            method: MethodChoice::Auto,
            cover: CoverEstimator::MonteCarlo(WalkConfig::new(100, 9)),
        };
        serde_json::to_string(&scaling_study(&cfg)).expect("rows serialize")
    };
    let karate = load_dataset("karate")?;
    let analyze = || {
        ingest::summarize(&karate, "karate", &WalkConfig::new(200, 3), Method::Dense)
            .map(|r| r.csv_row())
            .map_err(err)
    };
    let base_study = in_pool(1, study);
    let base_analyze = in_pool(1, analyze)?;
    let mut identical = true;
    for threads in [1, 2, 4, 7] {
        identical &= in_pool(threads, study) == base_study;
        identical &= in_pool(threads, analyze)? == base_analyze;
    }
    Ok(Verdict::new(
        identical,
        format!(
            "study ({} bytes) and analyze rows identical across repeats at 1, 2, 4, 7 threads: {identical}",
            base_study.len()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("resistance identities", criterion_1),
        ("resistance diameter bounds", criterion_2),
        ("dataset structure", criterion_3),
        ("karate cover time", criterion_4),
        ("exact and Monte Carlo cover agree", criterion_5),
        ("commute time identity", criterion_6),
        ("cover time sandwich", criterion_7),
        ("BA resistance diameter study", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let (status, detail) = match run() {
            Ok(v) => (if v.passed { "PASS" } else { "FAIL" }, v.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {} [{status}] {title}: {detail}", k + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
