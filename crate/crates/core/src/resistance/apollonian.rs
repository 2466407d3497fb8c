//! Resistance recursions for Apollonian networks.
//!
//! Going from `A_g` to `A_{g+1}` the old nodes `α = 0..N_g` keep their
//! adjacency and the new nodes `β` each sit inside one triangle `Δ_i` of old
//! nodes. Eliminating `β` from `L_{g+1}` gives a Schur complement of exactly
//! `(5/3) L_g`, so old-pair resistances shrink by `3/5`; every other pair is
//! then fixed by the sum rule applied at the degree-3 new nodes.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::generators::{apollonian_sequence, ApollonianState};
use crate::graph::Graph;
use crate::resistance::ResistanceTable;

/// Largest generation for which the recursive table is materialized
/// (`N = 4376`, about 150 MB).
pub const RECURSIVE_MAX_GENERATION: u32 = 7;

/// Largest `g + 1` for the dense integer block-product check.
pub const BLOCK_PRODUCT_MAX_GENERATION: u32 = 6;

fn adjacency_i64(g: &Graph, n: usize) -> DMatrix<i64> {
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        if u < n && v < n {
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
    }
    a
}

/// `max |A^{αβ} A^{βα} − (D_g + 2 A_g)|` for the split of `A_{g+1}`.
///
/// Integer arithmetic throughout, so a correct construction yields exactly 0.
pub fn apollonian_matrix_identity_residual(g: u32) -> Result<i64> {
    if g + 1 > BLOCK_PRODUCT_MAX_GENERATION {
        return Err(Error::TooLarge {
            what: "block-product generation",
            size: (g + 1) as usize,
            cap: BLOCK_PRODUCT_MAX_GENERATION as usize,
            hint: "",
        });
    }
    let states = apollonian_sequence(g + 1)?;
    let (prev, next) = (&states[g as usize], &states[g as usize + 1]);
    Ok(block_product_residual(&prev.graph, &next.graph))
}

/// The block-product residual for an arbitrary old/new pair of graphs, where
/// `old` occupies the node prefix of `grown`.
pub fn block_product_residual(old: &Graph, grown: &Graph) -> i64 {
    let n_old = old.node_count();
    let n_new = grown.node_count() - n_old;
    let full = adjacency_i64(grown, grown.node_count());
    let beta_alpha = full.view((n_old, 0), (n_new, n_old)).into_owned();
    let product = beta_alpha.transpose() * &beta_alpha;
    let mut expected = adjacency_i64(old, n_old) * 2;
    for (v, d) in old.degrees().into_iter().enumerate() {
        expected[(v, v)] = d as i64;
    }
    (product - expected).abs().max()
}

/// All-pairs resistance of `A_g` from the recursion alone, starting from the
/// tetrahedron where every pair is at `1/2`.
pub fn apollonian_resistance_recursive(g: u32) -> Result<ResistanceTable> {
    if g > RECURSIVE_MAX_GENERATION {
        return Err(Error::TooLarge {
            what: "recursive resistance generation",
            size: g as usize,
            cap: RECURSIVE_MAX_GENERATION as usize,
            hint: "",
        });
    }
    let states = apollonian_sequence(g)?;
    let mut omega = DMatrix::from_fn(4, 4, |i, j| if i == j { 0.0 } else { 0.5 });
    for state in &states[..g as usize] {
        omega = grow_table(&omega, state);
    }
    Ok(ResistanceTable::from_matrix(omega))
}

/// One recursion level: `omega` is the table of `state`, the result is the
/// table of `state.grow()`.
fn grow_table(omega: &DMatrix<f64>, state: &ApollonianState) -> DMatrix<f64> {
    let n_old = omega.nrows();
    let triangles = &state.active_triangles;
    let n = n_old + triangles.len();
    let mut next = DMatrix::zeros(n, n);

    // Old pairs scale by 3/5.
    for j in 0..n_old {
        for i in 0..n_old {
            next[(i, j)] = 0.6 * omega[(i, j)];
        }
    }

    let tri_sums: Vec<f64> = triangles
        .iter()
        .map(|&[p, q, r]| next[(p, q)] + next[(q, r)] + next[(r, p)])
        .collect();

    // New node against old node: Ω_ij = (1 − Ω_Δi/3 + Ω_{Δi,j}) / 3.
    for (k, &[p, q, r]) in triangles.iter().enumerate() {
        let i = n_old + k;
        for j in 0..n_old {
            let to_j = next[(p, j)] + next[(q, j)] + next[(r, j)];
            let value = (1.0 - tri_sums[k] / 3.0 + to_j) / 3.0;
            next[(i, j)] = value;
            next[(j, i)] = value;
        }
    }

    // New against new: Ω_ij = 2/3 − (Ω_Δi + Ω_Δj)/9 + Ω_{Δi,Δj}/9.
    for (a, ta) in triangles.iter().enumerate() {
        for (b, tb) in triangles.iter().enumerate().skip(a + 1) {
            let cross: f64 = ta
                .iter()
                .map(|&x| tb.iter().map(|&y| next[(x, y)]).sum::<f64>())
                .sum();
            let value = 2.0 / 3.0 - (tri_sums[a] + tri_sums[b]) / 9.0 + cross / 9.0;
            next[(n_old + a, n_old + b)] = value;
            next[(n_old + b, n_old + a)] = value;
        }
    }
    next
}

/// `max |Ω^{(g+1)}_ij − (3/5) Ω^{(g)}_ij|` over old pairs, given the tables
/// of consecutive generations.
pub fn old_pair_scaling_residual(prev: &ResistanceTable, next: &ResistanceTable) -> f64 {
    let n = prev.node_count();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((next.get(i, j) - 0.6 * prev.get(i, j)).abs());
        }
    }
    worst
}

/// `max |Ω_{i,Δ_i} − (1 + Ω_{Δ_i}/3)|` over the nodes created by `prev.grow()`,
/// read from the table of the grown network.
pub fn new_node_neighborhood_residual(prev: &ApollonianState, next: &ResistanceTable) -> f64 {
    let n_old = prev.graph.node_count();
    prev.active_triangles
        .iter()
        .enumerate()
        .map(|(k, &tri)| {
            let i = n_old + k;
            let to_corners = next.set_sum(&[i], &tri);
            (to_corners - (1.0 + next.triangle_sum(tri) / 3.0)).abs()
        })
        .fold(0.0, f64::max)
}
