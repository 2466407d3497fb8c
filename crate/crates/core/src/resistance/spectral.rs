use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest node count handled by dense factorizations.
pub const DENSE_CAP: usize = 6000;

/// Eigenvalues below this are treated as zero when checking connectivity.
const ZERO_EIGENVALUE: f64 = 1e-9;

/// Laplacian spectrum and pseudoinverse of a connected graph.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub laplacian: DMatrix<f64>,
    /// Moore–Penrose pseudoinverse assembled from the nonzero spectrum.
    pub pseudoinverse: DMatrix<f64>,
    /// Ascending; the first is zero up to rounding.
    pub eigenvalues: DVector<f64>,
    /// Orthonormal, column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: DMatrix<f64>,
    /// `1 - σ₂` of the transition matrix `D⁻¹A`.
    pub walk_gap: f64,
}

pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut l = DMatrix::zeros(n, n);
    for u in 0..n {
        let nb = g.neighbors(u);
        l[(u, u)] = nb.len() as f64;
        for &v in nb {
            l[(u, v)] = -1.0;
        }
    }
    l
}

fn check_dense(g: &Graph) -> Result<()> {
    if g.node_count() > DENSE_CAP {
        return Err(Error::TooLarge {
            what: "dense Laplacian",
            size: g.node_count(),
            cap: DENSE_CAP,
            hint: "; use the solver method",
        });
    }
    if g.node_count() == 0 {
        return Err(Error::InvalidConfig("graph has no nodes".into()));
    }
    g.require_connected()
}

fn sorted_eigen(m: DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Full eigendecomposition of `L` and of the symmetrized walk matrix.
pub fn spectral(g: &Graph) -> Result<SpectralData> {
    check_dense(g)?;
    let n = g.node_count();
    let lap = laplacian(g);
    let (values, vectors) = sorted_eigen(lap.clone());
    if n > 1 && values[1] <= ZERO_EIGENVALUE {
        return Err(Error::Singular("second Laplacian eigenvalue is zero"));
    }

    let mut pinv = DMatrix::zeros(n, n);
    for k in 1..n {
        let u = vectors.column(k);
        pinv.ger(1.0 / values[k], &u, &u, 1.0);
    }

    // D^{-1/2} A D^{-1/2} is similar to D^{-1} A and symmetric.
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .iter()
        .map(|&d| 1.0 / (d as f64).sqrt())
        .collect();
    let mut sym = DMatrix::zeros(n, n);
    for u in 0..n {
        for &v in g.neighbors(u) {
            sym[(u, v)] = inv_sqrt[u] * inv_sqrt[v];
        }
    }
    let walk_gap = if n == 1 {
        1.0
    } else {
        let (walk_values, _) = sorted_eigen(sym);
        1.0 - walk_values[n - 2]
    };

    Ok(SpectralData {
        laplacian: lap,
        pseudoinverse: pinv,
        eigenvalues: values,
        eigenvectors: vectors,
        walk_gap,
    })
}

/// `L⁺ = (L + J/N)⁻¹ − J/N` by Cholesky factorization of the shifted matrix.
pub fn pseudoinverse_shifted(g: &Graph) -> Result<DMatrix<f64>> {
    check_dense(g)?;
    let n = g.node_count();
    let shift = 1.0 / n as f64;
    let shifted = laplacian(g).add_scalar(shift);
    let chol = shifted
        .cholesky()
        .ok_or(Error::Singular("L + J/N is not positive definite"))?;
    Ok(chol.inverse().add_scalar(-shift))
}

impl SpectralData {
    pub fn node_count(&self) -> usize {
        self.laplacian.nrows()
    }

    /// Ω_ij from pseudoinverse entries.
    pub fn resistance(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let p = &self.pseudoinverse;
        p[(i, i)] + p[(j, j)] - 2.0 * p[(i, j)]
    }

    /// Ω_ij as the eigen-sum `Σ_{k≥2} (u_ki − u_kj)² / λ_k`.
    pub fn resistance_spectral(&self, i: usize, j: usize) -> f64 {
        (1..self.node_count())
            .map(|k| {
                let d = self.eigenvectors[(i, k)] - self.eigenvectors[(j, k)];
                d * d / self.eigenvalues[k]
            })
            .sum()
    }

    /// Max-abs entry of `L L⁺ L − L`.
    pub fn reflexive_residual(&self) -> f64 {
        let l = &self.laplacian;
        (l * &self.pseudoinverse * l - l).amax()
    }

    /// Spectral cover-time indicator `N ln N / (1 − σ₂)`. Indicative only.
    pub fn spectral_indicator(&self) -> f64 {
        let n = self.node_count() as f64;
        n * n.ln() / self.walk_gap
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::generators::{apollonian, complete, path};

    #[test]
    fn single_edge_closed_form() {
        let s = spectral(&path(2).unwrap()).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.eigenvalues[1], 2.0, epsilon = 1e-12);
        let expect = DMatrix::from_row_slice(2, 2, &[0.25, -0.25, -0.25, 0.25]);
        assert_abs_diff_eq!(s.pseudoinverse, expect, epsilon = 1e-12);
    }

    #[test]
    fn complete_graph_spectrum() {
        let s = spectral(&complete(4).unwrap()).unwrap();
        for k in 1..4 {
            assert_abs_diff_eq!(s.eigenvalues[k], 4.0, epsilon = 1e-10);
        }
        // T of K_4 has σ₂ = -1/3.
        assert_abs_diff_eq!(s.walk_gap, 4.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn both_pseudoinverse_forms_agree() {
        for g in [
            apollonian(2).unwrap().graph,
            path(7).unwrap(),
            complete(6).unwrap(),
        ] {
            let s = spectral(&g).unwrap();
            let shifted = pseudoinverse_shifted(&g).unwrap();
            assert!((&s.pseudoinverse - shifted).amax() < 1e-10);
            assert!(s.reflexive_residual() < 1e-10);
            for r in 0..g.node_count() {
                assert!(s.laplacian.row(r).sum().abs() < 1e-12);
                assert!(s.pseudoinverse.row(r).sum().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(spectral(&g), Err(Error::Disconnected { .. })));
        assert!(pseudoinverse_shifted(&g).is_err());
    }
}
