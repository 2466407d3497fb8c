//! Cover-time bounds and scaling diagnostics.
//!
//! All logarithms are natural. Harmonic-number bounds use `h_{N−1}`, the
//! index at which the hitting-time sandwich is exact on complete graphs; the
//! `h_N` variant is reported alongside for comparison.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{
    apollonian, barabasi_albert, complete, cycle, path, pseudofractal, BaConfig,
};
use crate::graph::Graph;
use crate::resistance::{self, Method};
use crate::walks::{self, WalkConfig, EXACT_COVER_CAP};

/// `h_n = Σ_{i=1}^{n} 1/i`.
pub fn harmonic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidConfig("harmonic number needs n >= 1".into()));
    }
    Ok((1..=n).rev().map(|i| 1.0 / i as f64).sum())
}

fn harmonic_or_zero(n: usize) -> f64 {
    harmonic(n).unwrap_or(0.0)
}

/// Extreme off-diagonal hitting times and the harmonic sandwich built on them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatthewsBounds {
    pub h_min: f64,
    pub h_max: f64,
    /// `h_{N−1}`.
    pub harmonic: f64,
    pub lower: f64,
    pub upper: f64,
    /// Same bounds with `h_N`.
    pub lower_hn: f64,
    pub upper_hn: f64,
}

pub fn matthews_bounds(hitting: &DMatrix<f64>) -> MatthewsBounds {
    let n = hitting.nrows();
    let mut h_min = f64::INFINITY;
    let mut h_max: f64 = 0.0;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                h_min = h_min.min(hitting[(u, v)]);
                h_max = h_max.max(hitting[(u, v)]);
            }
        }
    }
    if n < 2 {
        h_min = 0.0;
    }
    let h = harmonic_or_zero(n.saturating_sub(1));
    let hn = harmonic_or_zero(n);
    MatthewsBounds {
        h_min,
        h_max,
        harmonic: h,
        lower: h * h_min,
        upper: h * h_max,
        lower_hn: hn * h_min,
        upper_hn: hn * h_max,
    }
}

/// Resistance-diameter upper bounds on the cover time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResistanceUpper {
    /// `2 E R h_{N−1}`, which dominates `h_{N−1} H_max`.
    pub rigorous: f64,
    /// `2 E R ln N`.
    pub log_form: f64,
}

pub fn resistance_upper(g: &Graph, diameter: f64) -> ResistanceUpper {
    let n = g.node_count();
    let e2r = 2.0 * g.edge_count() as f64 * diameter;
    ResistanceUpper {
        rigorous: e2r * harmonic_or_zero(n.saturating_sub(1)),
        log_form: e2r * (n.max(1) as f64).ln(),
    }
}

/// `C / (N ln N)`.
pub fn scaling_ratio(cover: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidConfig("scaling ratio needs n >= 2".into()));
    }
    let nf = n as f64;
    Ok(cover / (nf * nf.ln()))
}

/// Every bound and scaling reference for one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub e: usize,
    /// `h_{N−1}`.
    pub h: f64,
    pub matthews_lower: f64,
    pub matthews_upper: f64,
    pub resistance_upper: f64,
    pub resistance_upper_log: f64,
    /// `N ln N`, a scaling reference.
    pub nlogn: f64,
    pub spectral_indicator: f64,
    pub ratio: f64,
}

/// Assembles a [`BoundsReport`] from exact hitting times, the resistance
/// diameter, the spectral gap and a cover-time value.
pub fn bounds_report(
    g: &Graph,
    hitting: &DMatrix<f64>,
    diameter: f64,
    walk_gap: f64,
    cover: f64,
) -> Result<BoundsReport> {
    let n = g.node_count();
    let mb = matthews_bounds(hitting);
    let ru = resistance_upper(g, diameter);
    let nf = n as f64;
    Ok(BoundsReport {
        n,
        e: g.edge_count(),
        h: mb.harmonic,
        matthews_lower: mb.lower,
        matthews_upper: mb.upper,
        resistance_upper: ru.rigorous,
        resistance_upper_log: ru.log_form,
        nlogn: nf * nf.ln(),
        spectral_indicator: nf * nf.ln() / walk_gap,
        ratio: scaling_ratio(cover, n)?,
    })
}

/// Graph families a scaling study can sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "family")]
pub enum Family {
    /// Size parameter is the node count.
    Ba {
        m: usize,
    },
    /// Size parameter is the generation.
    Apollonian,
    Pseudofractal,
    /// Size parameter is the node count.
    Complete,
    Cycle,
    Path,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Ba { .. } => "ba",
            Family::Apollonian => "apollonian",
            Family::Pseudofractal => "pseudofractal",
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Path => "path",
        }
    }

    /// Family parameter (`m` for BA), if any.
    pub fn param(&self) -> Option<usize> {
        match self {
            Family::Ba { m } => Some(*m),
            _ => None,
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Family::Ba { .. })
    }

    /// Builds the member with the given size parameter.
    pub fn build(&self, size: usize, seed: u64) -> Result<Graph> {
        let generation =
            || u32::try_from(size).map_err(|_| Error::InvalidConfig(format!("generation {size}")));
        match *self {
            Family::Ba { m } => barabasi_albert(BaConfig::new(size, m, seed)),
            Family::Apollonian => Ok(apollonian(generation()?)?.graph),
            Family::Pseudofractal => Ok(pseudofractal(generation()?)?.graph),
            Family::Complete => complete(size),
            Family::Cycle => cycle(size),
            Family::Path => path(size),
        }
    }
}

/// How a study estimates cover time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum CoverEstimator {
    None,
    /// Exact DP; only for graphs within [`EXACT_COVER_CAP`].
    Exact,
    MonteCarlo(WalkConfig),
}

/// How a study picks the resistance method per graph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum MethodChoice {
    Auto,
    Fixed(Method),
}

impl MethodChoice {
    fn resolve(&self, n: usize) -> Method {
        match self {
            MethodChoice::Auto => Method::auto(n),
            MethodChoice::Fixed(m) => *m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    /// Ignored for deterministic families, which run once per size.
    pub seeds: Vec<u64>,
    pub method: MethodChoice,
    pub cover: CoverEstimator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub n: usize,
    pub e: usize,
    pub diameter: f64,
    pub cover: Option<f64>,
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub family: Family,
    pub size: usize,
    pub seed: Option<u64>,
    /// Failure message for rows whose computation errored.
    pub outcome: std::result::Result<Measurement, String>,
}

fn measure(g: &Graph, method: Method, cover: &CoverEstimator) -> Result<Measurement> {
    let table = resistance::resistance_table(g, method)?;
    let n = g.node_count();
    let value = match cover {
        CoverEstimator::None => None,
        CoverEstimator::Exact => {
            if n > EXACT_COVER_CAP {
                return Err(Error::TooLarge {
                    what: "exact cover DP",
                    size: n,
                    cap: EXACT_COVER_CAP,
                    hint: "; use Monte Carlo",
                });
            }
            Some(walks::exact_graph_cover(g)?)
        }
        CoverEstimator::MonteCarlo(cfg) => Some(walks::mc_graph_cover(g, cfg)?.worst.mean),
    };
    Ok(Measurement {
        n,
        e: g.edge_count(),
        diameter: table.diameter(),
        cover: value,
        ratio: value.map(|c| scaling_ratio(c, n)).transpose()?,
    })
}

/// Runs one row per (size, seed), in schedule order. Row failures are
/// recorded in the row rather than aborting the study.
pub fn scaling_study(cfg: &StudyConfig) -> Vec<StudyRow> {
    let mut jobs = Vec::new();
    for &size in &cfg.sizes {
        if cfg.family.is_random() {
            jobs.extend(cfg.seeds.iter().map(|&s| (size, Some(s))));
        } else {
            jobs.push((size, None));
        }
    }
    jobs.into_par_iter()
        .map(|(size, seed)| {
            let outcome = cfg
                .family
                .build(size, seed.unwrap_or(0))
                .and_then(|g| measure(&g, cfg.method.resolve(g.node_count()), &cfg.cover))
                .map_err(|e| e.to_string());
            StudyRow {
                family: cfg.family,
                size,
                seed,
                outcome,
            }
        })
        .collect()
}
