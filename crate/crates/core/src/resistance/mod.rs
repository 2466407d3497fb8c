//! Effective resistance between node pairs of a unit-resistor network.
//!
//! Two independent routes produce the pseudoinverse `L⁺`: a dense
//! factorization (eigendecomposition in [`spectral`], Cholesky of the shifted
//! Laplacian for tables) and matrix-free conjugate gradient in [`solver`]. The
//! Apollonian family additionally has a closed recursion in [`apollonian`]
//! that uses no linear algebra at all.

pub mod apollonian;
pub mod solver;
pub mod spectral;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, NodeId};

pub use solver::{pseudoinverse_iterative, SolverOptions};
pub use spectral::{laplacian, pseudoinverse_shifted, spectral, SpectralData, DENSE_CAP};

/// How to compute `L⁺` for a resistance table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Method {
    Dense,
    Solver(SolverOptions),
}

impl Method {
    /// Dense up to [`DENSE_CAP`] nodes, solver beyond.
    pub fn auto(n: usize) -> Self {
        if n <= DENSE_CAP {
            Method::Dense
        } else {
            Method::Solver(SolverOptions::default())
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Dense => "dense",
            Method::Solver(_) => "solver",
        }
    }
}

/// All-pairs effective resistance with its maximum.
#[derive(Clone, Debug)]
pub struct ResistanceTable {
    omega: DMatrix<f64>,
    diameter: f64,
    argmax: (NodeId, NodeId),
}

impl ResistanceTable {
    /// Builds the table from a symmetric matrix with zero diagonal.
    pub fn from_matrix(mut omega: DMatrix<f64>) -> Self {
        let n = omega.nrows();
        for i in 0..n {
            omega[(i, i)] = 0.0;
        }
        let mut diameter = 0.0;
        let mut argmax = (0, 0);
        // Strict comparison keeps the lexicographically smallest maximizer.
        for i in 0..n {
            for j in i + 1..n {
                if omega[(i, j)] > diameter {
                    diameter = omega[(i, j)];
                    argmax = (i, j);
                }
            }
        }
        ResistanceTable {
            omega,
            diameter,
            argmax,
        }
    }

    /// `Ω_ij = L⁺_ii + L⁺_jj − 2 L⁺_ij`.
    pub fn from_pseudoinverse(pinv: &DMatrix<f64>) -> Self {
        let n = pinv.nrows();
        let omega = DMatrix::from_fn(n, n, |i, j| {
            pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)]
        });
        Self::from_matrix(omega)
    }

    pub fn node_count(&self) -> usize {
        self.omega.nrows()
    }

    #[inline]
    pub fn get(&self, i: NodeId, j: NodeId) -> f64 {
        self.omega[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.omega
    }

    /// Resistance diameter `R`.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn argmax_pair(&self) -> (NodeId, NodeId) {
        self.argmax
    }

    /// `Σ_{i∈F, j∈Y} Ω_ij`.
    pub fn set_sum(&self, from: &[NodeId], to: &[NodeId]) -> f64 {
        from.iter()
            .map(|&i| to.iter().map(|&j| self.get(i, j)).sum::<f64>())
            .sum()
    }

    /// Pairwise sum `Ω_pq + Ω_qr + Ω_rp` over a triangle.
    pub fn triangle_sum(&self, [p, q, r]: [NodeId; 3]) -> f64 {
        self.get(p, q) + self.get(q, r) + self.get(r, p)
    }

    /// `Σ_{(i,j)∈E} Ω_ij`, which equals `N − 1` on a connected graph.
    pub fn edge_sum(&self, g: &Graph) -> f64 {
        g.edges().map(|(i, j)| self.get(i, j)).sum()
    }

    /// Max-abs entrywise difference to another table of equal size.
    pub fn max_abs_diff(&self, other: &ResistanceTable) -> f64 {
        (&self.omega - &other.omega).amax()
    }
}

/// Full resistance table of a connected graph.
pub fn resistance_table(g: &Graph, method: Method) -> Result<ResistanceTable> {
    let pinv = match method {
        Method::Dense => spectral::pseudoinverse_shifted(g)?,
        Method::Solver(opts) => solver::pseudoinverse_iterative(g, &opts)?,
    };
    Ok(ResistanceTable::from_pseudoinverse(&pinv))
}

/// Ω_ij read from spectral data; zero when `i == j`.
pub fn resistance_pair(s: &SpectralData, i: NodeId, j: NodeId) -> f64 {
    s.resistance(i, j)
}

/// Sum-rule residual `d_i Ω_ij + Σ_{k∈Δ_i} (Ω_ik − Ω_jk) − 2`.
pub fn sum_rule_residual(t: &ResistanceTable, g: &Graph, i: NodeId, j: NodeId) -> f64 {
    let nb = g.neighbors(i);
    let spread: f64 = nb.iter().map(|&k| t.get(i, k) - t.get(j, k)).sum();
    nb.len() as f64 * t.get(i, j) + spread - 2.0
}

/// Families with a proven constant bound on the resistance diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundedFamily {
    Apollonian,
    Pseudofractal,
}

impl BoundedFamily {
    pub fn resistance_bound(self) -> f64 {
        match self {
            BoundedFamily::Apollonian => 5.0 / 3.0,
            BoundedFamily::Pseudofractal => 3.0,
        }
    }
}

pub fn check_resistance_bound(t: &ResistanceTable, family: BoundedFamily) -> bool {
    t.diameter() <= family.resistance_bound()
}
