//! Simple random walks: Monte Carlo estimators and exact oracles.
//!
//! Each trial draws from its own ChaCha stream keyed by
//! `(seed, purpose, node key, trial)`, so results are identical whatever the
//! thread count or scheduling order.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::resistance::DENSE_CAP;

/// Largest graph handled by the exact cover-time DP.
pub const EXACT_COVER_CAP: usize = 16;

/// Which start nodes a graph cover estimate runs from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Starts {
    All,
    List(Vec<NodeId>),
    /// A seeded sample of distinct nodes.
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub trials: u64,
    pub seed: u64,
    /// Per-trial step cap; `None` means `10⁴ N ln N`.
    pub max_steps: Option<u64>,
    pub starts: Starts,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            trials: 1000,
            seed: 0,
            max_steps: None,
            starts: Starts::All,
        }
    }
}

impl WalkConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        WalkConfig {
            trials,
            seed,
            ..Default::default()
        }
    }

    pub fn with_starts(mut self, starts: Starts) -> Self {
        self.starts = starts;
        self
    }

    fn step_cap(&self, n: usize) -> Result<u64> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        let n_f = n.max(2) as f64;
        let cap = self
            .max_steps
            .unwrap_or_else(|| (1e4 * n_f * n_f.ln()).ceil() as u64);
        if cap < n as u64 {
            return Err(Error::InvalidConfig(format!(
                "max_steps {cap} is below the node count {n}"
            )));
        }
        Ok(cap)
    }

    /// Resolves the configured start nodes, ascending.
    pub fn start_nodes(&self, g: &Graph) -> Result<Vec<NodeId>> {
        let n = g.node_count();
        match &self.starts {
            Starts::All => Ok((0..n).collect()),
            Starts::List(list) => {
                for &v in list {
                    g.check_node(v)?;
                }
                if list.is_empty() {
                    return Err(Error::InvalidConfig("empty start list".into()));
                }
                Ok(list.clone())
            }
            Starts::Sampled(k) => {
                if *k == 0 {
                    return Err(Error::InvalidConfig(
                        "sampled start count must be >= 1".into(),
                    ));
                }
                if *k >= n {
                    return Ok((0..n).collect());
                }
                let mut rng = stream(self.seed, Purpose::StartSample, 0, 0);
                let mut picked = rand::seq::index::sample(&mut rng, n, *k).into_vec();
                picked.sort_unstable();
                Ok(picked)
            }
        }
    }
}

/// Summary of i.i.d. step counts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkStats {
    pub mean: f64,
    /// Unbiased sample variance (zero for a single trial).
    pub variance: f64,
    pub trials: u64,
    pub ci95_halfwidth: f64,
}

impl WalkStats {
    /// Statistics of integer step counts. The sum is exact, so the result does
    /// not depend on sample order.
    pub fn from_samples(samples: &[u64]) -> Self {
        let trials = samples.len() as u64;
        let total: u128 = samples.iter().map(|&s| s as u128).sum();
        let mean = total as f64 / trials as f64;
        let variance = if trials > 1 {
            let ss: f64 = samples
                .iter()
                .map(|&s| {
                    let d = s as f64 - mean;
                    d * d
                })
                .sum();
            ss / (trials - 1) as f64
        } else {
            0.0
        };
        WalkStats {
            mean,
            variance,
            trials,
            ci95_halfwidth: 1.96 * (variance / trials as f64).sqrt(),
        }
    }
}

#[derive(Clone, Copy)]
#[repr(u64)]
enum Purpose {
    Cover = 1,
    Commute = 2,
    StartSample = 3,
}

/// Independent stream for one trial; the key is the full counter tuple.
fn stream(seed: u64, purpose: Purpose, node_key: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(purpose as u64).to_le_bytes());
    key[16..24].copy_from_slice(&node_key.to_le_bytes());
    key[24..].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// One walk step: a uniformly random neighbor of `v`.
pub fn step<R: Rng + ?Sized>(g: &Graph, v: NodeId, rng: &mut R) -> Result<NodeId> {
    let nb = g.neighbors(v);
    if nb.is_empty() {
        return Err(Error::IsolatedNode(v));
    }
    Ok(nb[rng.random_range(0..nb.len())])
}

#[inline]
fn step_unchecked<R: Rng>(g: &Graph, v: NodeId, rng: &mut R) -> NodeId {
    let nb = g.neighbors(v);
    nb[rng.random_range(0..nb.len())]
}

fn check_walkable(g: &Graph) -> Result<()> {
    if g.node_count() == 0 {
        return Err(Error::InvalidConfig("graph has no nodes".into()));
    }
    if g.node_count() > 1 {
        if let Some(v) = g.degrees().iter().position(|&d| d == 0) {
            return Err(Error::IsolatedNode(v));
        }
    }
    g.require_connected()
}

fn cover_trial(g: &Graph, start: NodeId, seed: u64, trial: u64, cap: u64) -> Result<u64> {
    let n = g.node_count();
    let mut rng = stream(seed, Purpose::Cover, start as u64, trial);
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut remaining = n - 1;
    let mut v = start;
    let mut steps = 0u64;
    while remaining > 0 {
        if steps == cap {
            return Err(Error::StepLimit {
                start,
                trial,
                max_steps: cap,
            });
        }
        v = step_unchecked(g, v, &mut rng);
        steps += 1;
        if !visited[v] {
            visited[v] = true;
            remaining -= 1;
        }
    }
    Ok(steps)
}

fn hit_steps<R: Rng>(g: &Graph, from: NodeId, to: NodeId, rng: &mut R, budget: u64) -> Option<u64> {
    let mut v = from;
    let mut steps = 0;
    while v != to {
        if steps == budget {
            return None;
        }
        v = step_unchecked(g, v, rng);
        steps += 1;
    }
    Some(steps)
}

/// Monte Carlo estimate of the cover time from `u`.
pub fn mc_cover_from(g: &Graph, u: NodeId, cfg: &WalkConfig) -> Result<WalkStats> {
    g.check_node(u)?;
    check_walkable(g)?;
    let cap = cfg.step_cap(g.node_count())?;
    let samples = (0..cfg.trials)
        .into_par_iter()
        .map(|t| cover_trial(g, u, cfg.seed, t, cap))
        .collect::<Result<Vec<u64>>>()?;
    Ok(WalkStats::from_samples(&samples))
}

/// Per-start cover estimates and the worst start.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphCoverEstimate {
    pub worst: WalkStats,
    pub worst_start: NodeId,
    pub per_start: Vec<(NodeId, WalkStats)>,
}

/// Monte Carlo graph cover time: the largest per-start mean.
pub fn mc_graph_cover(g: &Graph, cfg: &WalkConfig) -> Result<GraphCoverEstimate> {
    check_walkable(g)?;
    let cap = cfg.step_cap(g.node_count())?;
    let starts = cfg.start_nodes(g)?;
    let trials = cfg.trials;
    let samples = (0..starts.len() as u64 * trials)
        .into_par_iter()
        .map(|job| {
            let start = starts[(job / trials) as usize];
            cover_trial(g, start, cfg.seed, job % trials, cap)
        })
        .collect::<Result<Vec<u64>>>()?;
    let per_start: Vec<(NodeId, WalkStats)> = starts
        .iter()
        .zip(samples.chunks(trials as usize))
        .map(|(&s, chunk)| (s, WalkStats::from_samples(chunk)))
        .collect();
    let (worst_start, worst) = per_start
        .iter()
        .copied()
        .fold(None, |best: Option<(NodeId, WalkStats)>, cur| match best {
            Some(b) if b.1.mean >= cur.1.mean => Some(b),
            _ => Some(cur),
        })
        .expect("at least one start");
    Ok(GraphCoverEstimate {
        worst,
        worst_start,
        per_start,
    })
}

/// Monte Carlo commute time: steps `u → v` plus `v → u`.
pub fn mc_commute(g: &Graph, u: NodeId, v: NodeId, cfg: &WalkConfig) -> Result<WalkStats> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(Error::InvalidConfig("commute time needs u != v".into()));
    }
    check_walkable(g)?;
    let cap = cfg.step_cap(g.node_count())?;
    let key = (u as u64) * g.node_count() as u64 + v as u64;
    let samples = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream(cfg.seed, Purpose::Commute, key, trial);
            let limit = Error::StepLimit {
                start: u,
                trial,
                max_steps: cap,
            };
            let there = hit_steps(g, u, v, &mut rng, cap).ok_or(limit)?;
            let back = hit_steps(g, v, u, &mut rng, cap - there).ok_or(Error::StepLimit {
                start: u,
                trial,
                max_steps: cap,
            })?;
            Ok(there + back)
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(WalkStats::from_samples(&samples))
}

/// Exact expected cover time from every start node.
///
/// `E[T(S, v)]` is the expected remaining time with visited set `S` and the
/// walker at `v ∈ S`. Visited sets only grow, so sets are processed by
/// decreasing size; within one set the values of its members are coupled and
/// solved as a linear system. Only connected sets are reachable.
pub fn exact_cover_all(g: &Graph) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n > EXACT_COVER_CAP {
        return Err(Error::TooLarge {
            what: "exact cover DP",
            size: n,
            cap: EXACT_COVER_CAP,
            hint: "",
        });
    }
    check_walkable(g)?;
    if n == 1 {
        return Ok(vec![0.0]);
    }
    let full: u32 = (1u32 << n) - 1;
    let nb_mask: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();

    let mut expect = vec![0.0f64; (full as usize + 1) * n];
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for s in 1..full {
        if is_connected_mask(s, &nb_mask) {
            by_size[s.count_ones() as usize].push(s);
        }
    }

    for size in (1..n).rev() {
        for &s in &by_size[size] {
            let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            let k = members.len();
            let mut local = [usize::MAX; EXACT_COVER_CAP];
            for (idx, &v) in members.iter().enumerate() {
                local[v] = idx;
            }
            let mut a = DMatrix::<f64>::identity(k, k);
            let mut b = DVector::<f64>::from_element(k, 1.0);
            for (row, &v) in members.iter().enumerate() {
                let p = 1.0 / g.neighbors(v).len() as f64;
                for &w in g.neighbors(v) {
                    if s >> w & 1 == 1 {
                        a[(row, local[w])] -= p;
                    } else {
                        let grown = (s | 1 << w) as usize;
                        b[row] += p * expect[grown * n + w];
                    }
                }
            }
            let x = a
                .lu()
                .solve(&b)
                .ok_or(Error::Singular("cover DP subsystem"))?;
            for (row, &v) in members.iter().enumerate() {
                expect[s as usize * n + v] = x[row];
            }
        }
    }
    Ok((0..n).map(|u| expect[(1usize << u) * n + u]).collect())
}

fn is_connected_mask(s: u32, nb_mask: &[u32]) -> bool {
    let first = s.trailing_zeros();
    let mut reached = 1u32 << first;
    let mut frontier = reached;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = nb_mask[v] & s & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached == s
}

/// Exact expected cover time from `u`.
pub fn exact_cover_from(g: &Graph, u: NodeId) -> Result<f64> {
    g.check_node(u)?;
    Ok(exact_cover_all(g)?[u])
}

/// Exact graph cover time `max_u C_u`.
pub fn exact_graph_cover(g: &Graph) -> Result<f64> {
    Ok(exact_cover_all(g)?.into_iter().fold(0.0, f64::max))
}

/// Exact hitting times `H[(u, v)]` from `u` to `v`.
///
/// For each target `v`, multiplying the first-step equations by `d_u` turns
/// them into the reduced Laplacian system `L_{−v} h = d_{−v}`, which is
/// positive definite on a connected graph.
pub fn exact_hitting_times(g: &Graph) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    if n > DENSE_CAP {
        return Err(Error::TooLarge {
            what: "exact hitting times",
            size: n,
            cap: DENSE_CAP,
            hint: "",
        });
    }
    check_walkable(g)?;
    let columns: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|target| hitting_column(g, target))
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(n, n, |u, v| columns[v][u]))
}

fn hitting_column(g: &Graph, target: NodeId) -> Result<Vec<f64>> {
    let n = g.node_count();
    let index = |u: NodeId| if u < target { u } else { u - 1 };
    let mut lap = DMatrix::<f64>::zeros(n - 1, n - 1);
    let mut rhs = DVector::<f64>::zeros(n - 1);
    for u in (0..n).filter(|&u| u != target) {
        let r = index(u);
        let d = g.neighbors(u).len() as f64;
        lap[(r, r)] = d;
        rhs[r] = d;
        for &w in g.neighbors(u) {
            if w != target {
                lap[(r, index(w))] = -1.0;
            }
        }
    }
    let h = lap
        .cholesky()
        .ok_or(Error::Singular("reduced Laplacian"))?
        .solve(&rhs);
    let mut out = vec![0.0; n];
    for u in (0..n).filter(|&u| u != target) {
        out[u] = h[index(u)];
    }
    Ok(out)
}
