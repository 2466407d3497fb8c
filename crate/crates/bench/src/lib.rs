//! Shared benchmark fixtures.

use covertime_core::generators::{apollonian, barabasi_albert, pseudofractal, BaConfig};
use covertime_core::Graph;

/// Named graphs at the sizes the benches sweep.
pub fn resistance_fixtures() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for g in [3, 4, 5] {
        out.push((format!("apollonian_g{g}"), apollonian(g).unwrap().graph));
    }
    for g in [4, 5] {
        out.push((
            format!("pseudofractal_g{g}"),
            pseudofractal(g).unwrap().graph,
        ));
    }
    for n in [250, 500, 1000] {
        out.push((
            format!("ba_m3_n{n}"),
            barabasi_albert(BaConfig::new(n, 3, 0)).unwrap(),
        ));
    }
    out
}

pub fn walk_fixtures() -> Vec<(String, Graph)> {
    vec![
        ("apollonian_g2".into(), apollonian(2).unwrap().graph),
        ("pseudofractal_g3".into(), pseudofractal(3).unwrap().graph),
        (
            "ba_m2_n100".into(),
            barabasi_albert(BaConfig::new(100, 2, 0)).unwrap(),
        ),
    ]
}
