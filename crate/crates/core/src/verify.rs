//! Numerical verification of the resistance identities and bounds for the
//! two deterministic scale-free families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generators::{
    apollonian_edge_count, apollonian_node_count, apollonian_sequence, pseudofractal,
    pseudofractal_edge_count, pseudofractal_node_count,
};
use crate::graph::Graph;
use crate::resistance::apollonian::{
    apollonian_resistance_recursive, block_product_residual, new_node_neighborhood_residual,
    old_pair_scaling_residual, BLOCK_PRODUCT_MAX_GENERATION, RECURSIVE_MAX_GENERATION,
};
use crate::resistance::{
    check_resistance_bound, resistance_table, sum_rule_residual, BoundedFamily, Method,
    ResistanceTable,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Worst residual (or the measured value for bound checks).
    pub value: f64,
    pub threshold: f64,
}

impl CheckOutcome {
    fn within(name: String, value: f64, threshold: f64) -> Self {
        CheckOutcome {
            name,
            passed: value <= threshold,
            value,
            threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub family: BoundedFamily,
    /// Checks run for every generation `0..=max_generation`.
    pub max_generation: u32,
    pub tol: f64,
    pub sum_rule_pairs: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(family: BoundedFamily, max_generation: u32) -> Self {
        VerifyConfig {
            family,
            max_generation,
            tol: 1e-9,
            sum_rule_pairs: 1000,
            seed: 0,
        }
    }
}

/// Worst sum-rule residual over `pairs` random ordered pairs `i ≠ j`.
pub fn sum_rule_max_residual(t: &ResistanceTable, g: &Graph, pairs: usize, seed: u64) -> f64 {
    let n = g.node_count();
    if n < 2 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..pairs)
        .map(|_| {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            sum_rule_residual(t, g, i, j).abs()
        })
        .fold(0.0, f64::max)
}

/// `|Σ_{(i,j)∈E} Ω_ij − (N − 1)|`.
pub fn edge_sum_residual(t: &ResistanceTable, g: &Graph) -> f64 {
    (t.edge_sum(g) - (g.node_count() as f64 - 1.0)).abs()
}

fn generic_checks(
    out: &mut Vec<CheckOutcome>,
    cfg: &VerifyConfig,
    gen: u32,
    g: &Graph,
    table: &ResistanceTable,
    expected: (usize, usize),
) {
    let actual = (g.node_count(), g.edge_count());
    out.push(CheckOutcome {
        name: format!("structure g={gen}"),
        passed: actual == expected,
        value: (actual.0.abs_diff(expected.0) + actual.1.abs_diff(expected.1)) as f64,
        threshold: 0.0,
    });
    out.push(CheckOutcome::within(
        format!("sum-rule g={gen}"),
        sum_rule_max_residual(table, g, cfg.sum_rule_pairs, cfg.seed ^ gen as u64),
        cfg.tol,
    ));
    out.push(CheckOutcome::within(
        format!("edge-sum g={gen}"),
        edge_sum_residual(table, g),
        cfg.tol * g.node_count() as f64,
    ));
    out.push(CheckOutcome {
        name: format!("bound g={gen}"),
        passed: check_resistance_bound(table, cfg.family),
        value: table.diameter(),
        threshold: cfg.family.resistance_bound(),
    });
}

/// Runs every check for the configured family. If `supplied` is given it
/// replaces the generated graph at `max_generation`, so a modified graph can
/// be checked against the family's claims.
pub fn verify_family(cfg: &VerifyConfig, supplied: Option<&Graph>) -> Result<Vec<CheckOutcome>> {
    match cfg.family {
        BoundedFamily::Apollonian => verify_apollonian(cfg, supplied),
        BoundedFamily::Pseudofractal => verify_pseudofractal(cfg, supplied),
    }
}

fn verify_apollonian(cfg: &VerifyConfig, supplied: Option<&Graph>) -> Result<Vec<CheckOutcome>> {
    let states = apollonian_sequence(cfg.max_generation)?;
    let graphs: Vec<&Graph> = states
        .iter()
        .enumerate()
        .map(|(k, s)| match supplied {
            Some(g) if k as u32 == cfg.max_generation => g,
            _ => &s.graph,
        })
        .collect();
    let tables: Vec<ResistanceTable> = graphs
        .iter()
        .map(|g| resistance_table(g, Method::Dense))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    for gen in 0..=cfg.max_generation {
        let k = gen as usize;
        let (g, table) = (graphs[k], &tables[k]);
        generic_checks(
            &mut out,
            cfg,
            gen,
            g,
            table,
            (apollonian_node_count(gen), apollonian_edge_count(gen)),
        );
        if (1..=BLOCK_PRODUCT_MAX_GENERATION).contains(&gen) {
            let residual = block_product_residual(graphs[k - 1], g);
            out.push(CheckOutcome::within(
                format!("block-product g={}", gen - 1),
                residual as f64,
                0.0,
            ));
        }
        if gen <= RECURSIVE_MAX_GENERATION {
            let recursive = apollonian_resistance_recursive(gen)?;
            let value = if recursive.node_count() == table.node_count() {
                recursive.max_abs_diff(table)
            } else {
                f64::INFINITY
            };
            out.push(CheckOutcome::within(
                format!("recursion-vs-dense g={gen}"),
                value,
                cfg.tol,
            ));
        }
        if gen >= 1 {
            let old_n = tables[k - 1].node_count();
            let fits = table.node_count() >= old_n
                && states[k - 1].active_triangles.len() + old_n == table.node_count();
            let (scaling, neighborhood) = if fits {
                (
                    old_pair_scaling_residual(&tables[k - 1], table),
                    new_node_neighborhood_residual(&states[k - 1], table),
                )
            } else {
                (f64::INFINITY, f64::INFINITY)
            };
            out.push(CheckOutcome::within(
                format!("old-pair-scaling g={gen}"),
                scaling,
                cfg.tol,
            ));
            out.push(CheckOutcome::within(
                format!("new-node-neighborhood g={gen}"),
                neighborhood,
                cfg.tol,
            ));
        }
    }
    Ok(out)
}

fn verify_pseudofractal(cfg: &VerifyConfig, supplied: Option<&Graph>) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for gen in 0..=cfg.max_generation {
        let generated;
        let g = match supplied {
            Some(g) if gen == cfg.max_generation => g,
            _ => {
                generated = pseudofractal(gen)?.graph;
                &generated
            }
        };
        let table = resistance_table(g, Method::Dense)?;
        generic_checks(
            &mut out,
            cfg,
            gen,
            g,
            &table,
            (pseudofractal_node_count(gen), pseudofractal_edge_count(gen)),
        );
    }
    Ok(out)
}
