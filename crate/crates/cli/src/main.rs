//! `covertime`: reproducible cover-time and resistance experiments.
//!
//! Exit codes: 0 success, 1 failed verification or computation, 2 usage
//! error, 3 I/O or input-format error.

mod args;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use covertime_core::bounds::{scaling_study, CoverEstimator, Family, MethodChoice, StudyConfig};
use covertime_core::generators::{self, BaConfig};
use covertime_core::ingest::{self, DatasetReport, EdgeListFormat, LabelKind};
use covertime_core::resistance::{resistance_table, BoundedFamily, Method, SolverOptions};
use covertime_core::verify::{verify_family, VerifyConfig};
use covertime_core::walks::{self, Starts, WalkConfig};
use covertime_core::{Error, Graph};
use serde::Serialize;

use crate::args::*;

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::Io(_) | Error::Parse { .. } | Error::EmptyEdgeSet) => 3,
            Some(Error::InvalidConfig(_) | Error::TooLarge { .. }) => 2,
            Some(_) => 1,
            None if error.downcast_ref::<std::io::Error>().is_some() => 3,
            None => 2,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        error: anyhow::anyhow!(msg.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("warning: could not configure {threads} threads: {e}");
        }
    }
    let config = serde_json::to_string(&cli).expect("arguments serialize");
    let outcome = match &cli.command {
        Command::Generate(a) => generate(a, &config),
        Command::Analyze(a) => analyze(a, &config),
        Command::Verify(a) => verify(a, &config),
        Command::Study(a) => study(a, &config),
        Command::Resistance(a) => resistance(a, &config),
        Command::Cover(a) => cover(a, &config),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn header(command: &str, config: &str) -> String {
    format!("# covertime {command}\n# config: {config}\n")
}

fn emit(out: Option<&Path>, content: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| Failure { code: 3, error: e }),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| Failure {
                code: 3,
                error: e.into(),
            }),
    }
}

fn label_kind(l: LabelArg) -> EdgeListFormat {
    EdgeListFormat {
        labels: match l {
            LabelArg::Token => LabelKind::Token,
            LabelArg::Integer => LabelKind::Integer,
        },
    }
}

fn family_of(arg: FamilyArg, m: Option<usize>) -> Result<Family, Failure> {
    Ok(match arg {
        FamilyArg::Apollonian => Family::Apollonian,
        FamilyArg::Pseudofractal => Family::Pseudofractal,
        FamilyArg::Ba => Family::Ba {
            m: m.ok_or_else(|| usage("--m is required for the ba family"))?,
        },
        FamilyArg::Complete => Family::Complete,
        FamilyArg::Cycle => Family::Cycle,
        FamilyArg::Path => Family::Path,
    })
}

fn build_family(arg: FamilyArg, p: &FamilyParams, seed: u64) -> Result<Graph, Failure> {
    let need_g = || p.g.ok_or_else(|| usage("--g is required for this family"));
    let need_n = || p.n.ok_or_else(|| usage("--n is required for this family"));
    let g = match arg {
        FamilyArg::Apollonian => generators::apollonian(need_g()?)?.graph,
        FamilyArg::Pseudofractal => generators::pseudofractal(need_g()?)?.graph,
        FamilyArg::Ba => {
            let m =
                p.m.ok_or_else(|| usage("--m is required for the ba family"))?;
            let mut cfg = BaConfig::new(need_n()?, m, seed);
            if let Some(m0) = p.m0 {
                cfg.m0 = m0;
            }
            generators::barabasi_albert(cfg)?
        }
        FamilyArg::Complete => generators::complete(need_n()?)?,
        FamilyArg::Cycle => generators::cycle(need_n()?)?,
        FamilyArg::Path => generators::path(need_n()?)?,
    };
    Ok(g)
}

fn load_graph(source: &GraphSource) -> Result<Graph, Failure> {
    match (&source.input, source.family) {
        (Some(path), _) => {
            let raw = ingest::read_edge_list(path, label_kind(source.labels)).map_err(|e| {
                anyhow::Error::from(e).context(format!("reading {}", path.display()))
            })?;
            let normalized = ingest::normalize_with_report(&raw)?;
            warn_dropped(&normalized);
            Ok(normalized.graph)
        }
        (None, Some(family)) => build_family(family, &source.params, source.graph_seed),
        (None, None) => Err(usage("either --in or --family is required")),
    }
}

fn warn_dropped(n: &ingest::Normalized) {
    if n.dropped_nodes > 0 {
        eprintln!(
            "warning: dropped {} node(s) outside the largest connected component",
            n.dropped_nodes
        );
    }
    if n.self_loops > 0 {
        eprintln!("warning: removed {} self-loop(s)", n.self_loops);
    }
}

fn method_of(m: &MethodArgs, n: usize) -> Method {
    let solver = Method::Solver(SolverOptions {
        tol: m.tol,
        max_iterations: None,
    });
    match m.method {
        MethodArg::Auto if n > covertime_core::resistance::DENSE_CAP => solver,
        MethodArg::Auto | MethodArg::Dense => Method::Dense,
        MethodArg::Solver => solver,
    }
}

fn method_choice(m: &MethodArgs) -> MethodChoice {
    match m.method {
        MethodArg::Auto => MethodChoice::Auto,
        MethodArg::Dense => MethodChoice::Fixed(Method::Dense),
        MethodArg::Solver => MethodChoice::Fixed(Method::Solver(SolverOptions {
            tol: m.tol,
            max_iterations: None,
        })),
    }
}

fn parse_starts(value: &str) -> Result<Starts, Failure> {
    if value == "all" {
        return Ok(Starts::All);
    }
    if let Some(list) = value.strip_prefix("list:") {
        let nodes = list
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("bad --starts list: {e}")))?;
        return Ok(Starts::List(nodes));
    }
    value.parse::<usize>().map(Starts::Sampled).map_err(|_| {
        usage(format!(
            "--starts must be 'all', a count or 'list:a,b,..' (got {value:?})"
        ))
    })
}

fn walk_config(w: &WalkArgs) -> Result<WalkConfig, Failure> {
    Ok(WalkConfig {
        trials: w.trials,
        seed: w.seed,
        max_steps: w.max_steps,
        starts: parse_starts(&w.starts)?,
    })
}

fn generate(a: &GenerateArgs, config: &str) -> CmdResult {
    let g = build_family(a.family, &a.params, a.seed)?;
    let mut content = header("generate", config);
    content.push_str(&ingest::write_edge_list(&g));
    emit(a.out.as_deref(), &content)?;
    let summary = format!("N={} E={}", g.node_count(), g.edge_count());
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeRecord<'a> {
    report: &'a DatasetReport,
    method: &'static str,
    dropped_nodes: usize,
    self_loops: usize,
    config: serde_json::Value,
}

fn analyze(a: &AnalyzeArgs, config: &str) -> CmdResult {
    let raw = ingest::read_edge_list(&a.input, label_kind(a.labels))
        .map_err(|e| anyhow::Error::from(e).context(format!("reading {}", a.input.display())))?;
    let normalized = ingest::normalize_with_report(&raw)?;
    warn_dropped(&normalized);
    let g = &normalized.graph;
    let name = a.name.clone().unwrap_or_else(|| {
        a.input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "graph".into())
    });
    let method = method_of(&a.method, g.node_count());
    let report = ingest::summarize(g, &name, &walk_config(&a.walk)?, method)?;

    let mut content = header("analyze", config);
    writeln!(content, "{}", DatasetReport::CSV_HEADER).unwrap();
    writeln!(content, "{}", report.csv_row()).unwrap();
    emit(a.out.as_deref(), &content)?;

    let record = AnalyzeRecord {
        report: &report,
        method: method.name(),
        dropped_nodes: normalized.dropped_nodes,
        self_loops: normalized.self_loops,
        config: serde_json::from_str(config).expect("config is JSON"),
    };
    let line = serde_json::to_string(&record).expect("record serializes") + "\n";
    match &a.record {
        Some(path) => fs::write(path, line)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| Failure { code: 3, error: e })?,
        None => eprint!("{line}"),
    }
    Ok(())
}

fn verify(a: &VerifyArgs, config: &str) -> CmdResult {
    let family = match a.family {
        BoundedFamilyArg::Apollonian => BoundedFamily::Apollonian,
        BoundedFamilyArg::Pseudofractal => BoundedFamily::Pseudofractal,
    };
    let supplied = match &a.input {
        Some(path) => {
            // Ids are taken as given so a modified generator output lines up
            // with the generated node order.
            let raw = ingest::read_edge_list(path, label_kind(LabelArg::Integer))?;
            let n = raw
                .labels
                .iter()
                .map(|l| l.parse::<usize>().expect("integer labels checked") + 1)
                .max()
                .unwrap_or(0);
            let edges = raw.edges.iter().map(|&(u, v)| {
                (
                    raw.labels[u].parse().unwrap(),
                    raw.labels[v].parse().unwrap(),
                )
            });
            Some(Graph::from_edges(
                n,
                edges.filter(|(u, v): &(usize, usize)| u != v),
            )?)
        }
        None => None,
    };
    let cfg = VerifyConfig {
        family,
        max_generation: a.g,
        tol: a.tol,
        sum_rule_pairs: a.pairs,
        seed: a.seed,
    };
    let outcomes = verify_family(&cfg, supplied.as_ref())?;
    let mut content = header("verify", config);
    writeln!(content, "check,status,value,threshold").unwrap();
    for o in &outcomes {
        writeln!(
            content,
            "{},{},{:.3e},{:.3e}",
            o.name,
            if o.passed { "pass" } else { "FAIL" },
            o.value,
            o.threshold
        )
        .unwrap();
    }
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.name.as_str())
        .collect();
    writeln!(
        content,
        "# {} of {} checks passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    )
    .unwrap();
    emit(a.out.as_deref(), &content)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            error: anyhow::anyhow!("failed checks: {}", failed.join(", ")),
        })
    }
}

pub const STUDY_HEADER: &str = "family,param,size_param,N,E,R,C_mc,ratio,seed";

fn study(a: &StudyArgs, config: &str) -> CmdResult {
    let ms: Vec<Option<usize>> = if a.family == FamilyArg::Ba {
        if a.m.is_empty() {
            return Err(usage("--m is required for the ba family"));
        }
        a.m.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let seeds = if a.seeds.is_empty() {
        (0..a.replicates).collect()
    } else {
        a.seeds.clone()
    };
    let cover = match a.cover {
        CoverArg::Mc => CoverEstimator::MonteCarlo(walk_config(&a.walk)?),
        CoverArg::Exact => CoverEstimator::Exact,
        CoverArg::None => CoverEstimator::None,
    };

    let mut content = header("study", config);
    writeln!(content, "{STUDY_HEADER}").unwrap();
    let mut failures = 0;
    for m in ms {
        let cfg = StudyConfig {
            family: family_of(a.family, m)?,
            sizes: a.sizes.clone(),
            seeds: seeds.clone(),
            method: method_choice(&a.method),
            cover: cover.clone(),
        };
        for row in scaling_study(&cfg) {
            let param = row
                .family
                .param()
                .map(|m| m.to_string())
                .unwrap_or_default();
            let seed = row.seed.map(|s| s.to_string()).unwrap_or_default();
            let fam = row.family.name();
            match &row.outcome {
                Ok(r) => {
                    let opt = |v: Option<f64>, prec: usize| {
                        v.map(|x| format!("{x:.prec$}")).unwrap_or_default()
                    };
                    writeln!(
                        content,
                        "{fam},{param},{},{},{},{:.6},{},{},{seed}",
                        row.size,
                        r.n,
                        r.e,
                        r.diameter,
                        opt(r.cover, 3),
                        opt(r.ratio, 4)
                    )
                    .unwrap();
                }
                Err(msg) => {
                    failures += 1;
                    writeln!(content, "{fam},{param},{},NA,NA,NA,NA,NA,{seed}", row.size).unwrap();
                    writeln!(
                        content,
                        "# failed: {fam} size={} seed={seed}: {msg}",
                        row.size
                    )
                    .unwrap();
                }
            }
        }
    }
    emit(a.out.as_deref(), &content)?;
    if failures > 0 {
        eprintln!("warning: {failures} row(s) failed");
    }
    Ok(())
}

fn resistance(a: &ResistanceArgs, config: &str) -> CmdResult {
    let g = load_graph(&a.source)?;
    let method = method_of(&a.method, g.node_count());
    let table = resistance_table(&g, method)?;
    let (i, j) = table.argmax_pair();
    println!("N,E,R,argmax_i,argmax_j,method");
    println!(
        "{},{},{:.10},{i},{j},{}",
        g.node_count(),
        g.edge_count(),
        table.diameter(),
        method.name()
    );
    if let Some(path) = &a.out {
        let mut content = header("resistance", config);
        writeln!(content, "i,j,omega").unwrap();
        for u in 0..g.node_count() {
            for v in u + 1..g.node_count() {
                writeln!(content, "{u},{v},{:.12}", table.get(u, v)).unwrap();
            }
        }
        emit(Some(path), &content)?;
    }
    Ok(())
}

fn cover(a: &CoverArgs, config: &str) -> CmdResult {
    let g = load_graph(&a.source)?;
    let cfg = walk_config(&a.walk)?;
    let estimate = walks::mc_graph_cover(&g, &cfg)?;
    let exact = if a.exact {
        Some(walks::exact_cover_all(&g)?)
    } else {
        None
    };
    let mut content = header("cover", config);
    writeln!(
        content,
        "start,mean,variance,trials,ci95{}",
        if exact.is_some() { ",exact" } else { "" }
    )
    .unwrap();
    for (s, st) in &estimate.per_start {
        write!(
            content,
            "{s},{:.4},{:.4},{},{:.4}",
            st.mean, st.variance, st.trials, st.ci95_halfwidth
        )
        .unwrap();
        if let Some(ex) = &exact {
            write!(content, ",{:.8}", ex[*s]).unwrap();
        }
        content.push('\n');
    }
    writeln!(
        content,
        "# cover time estimate {:.4} ± {:.4} (start {})",
        estimate.worst.mean, estimate.worst.ci95_halfwidth, estimate.worst_start
    )
    .unwrap();
    if let Some(ex) = &exact {
        let worst = ex.iter().copied().fold(0.0, f64::max);
        writeln!(content, "# exact cover time {worst:.8}").unwrap();
    }
    emit(a.out.as_deref(), &content)
}
