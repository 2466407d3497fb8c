use covertime_core::generators::{barabasi_albert, pseudofractal, BaConfig};
use covertime_core::resistance::{resistance_table, Method};
use covertime_core::walks::{exact_cover_all, mc_commute, mc_graph_cover, Starts};
use covertime_core::WalkConfig;

/// Discrete power-law exponent by maximum likelihood above `d_min`.
fn tail_exponent(degrees: &[usize], d_min: usize) -> f64 {
    let tail: Vec<f64> = degrees
        .iter()
        .filter(|&&d| d >= d_min)
        .map(|&d| d as f64)
        .collect();
    let denom: f64 = tail.iter().map(|d| (d / (d_min as f64 - 0.5)).ln()).sum();
    1.0 + tail.len() as f64 / denom
}

#[test]
fn ba_degree_tail_is_near_three() {
    for seed in 0..3 {
        let g = barabasi_albert(BaConfig::new(10_000, 3, seed)).unwrap();
        let gamma = tail_exponent(&g.degrees(), 10);
        assert!((2.5..=3.5).contains(&gamma), "seed {seed}: gamma {gamma}");
    }
}

#[test]
fn pseudofractal_degree_counts_shrink_by_three() {
    // Nodes born at step t >= 1 number 3^t and have degree 2^(g - t + 1);
    // the three initial nodes have degree 2^(g + 1).
    let gen = 8u32;
    let g = pseudofractal(gen).unwrap().graph;
    let mut counts = std::collections::BTreeMap::new();
    for d in g.degrees() {
        *counts.entry(d).or_insert(0usize) += 1;
    }
    let mut expected = std::collections::BTreeMap::new();
    expected.insert(1usize << (gen + 1), 3usize);
    for t in 1..=gen {
        expected.insert(1usize << (gen - t + 1), 3usize.pow(t));
    }
    assert_eq!(counts, expected);
}

#[test]
fn sampled_starts_do_not_exceed_full_estimate_much() {
    let g = barabasi_albert(BaConfig::new(40, 2, 1)).unwrap();
    let all = mc_graph_cover(&g, &WalkConfig::new(300, 4)).unwrap();
    let some =
        mc_graph_cover(&g, &WalkConfig::new(300, 4).with_starts(Starts::Sampled(5))).unwrap();
    assert_eq!(some.per_start.len(), 5);
    assert!(some.worst.mean <= all.worst.mean + 4.0 * all.worst.ci95_halfwidth);
}

#[test]
fn mc_commute_matches_resistance() {
    let g = pseudofractal(2).unwrap().graph;
    let t = resistance_table(&g, Method::Dense).unwrap();
    let two_e = 2.0 * g.edge_count() as f64;
    for (u, v) in [(0, 1), (0, 14), (5, 9)] {
        let stats = mc_commute(&g, u, v, &WalkConfig::new(20_000, 11)).unwrap();
        let exact = two_e * t.get(u, v);
        assert!(
            (stats.mean - exact).abs() <= 3.0 * stats.ci95_halfwidth,
            "({u},{v}): {} vs {exact}",
            stats.mean
        );
    }
}

#[test]
fn mc_cover_agrees_with_dp_on_small_ba() {
    let g = barabasi_albert(BaConfig::new(12, 2, 3)).unwrap();
    let exact = exact_cover_all(&g).unwrap();
    let est = mc_graph_cover(&g, &WalkConfig::new(5000, 8)).unwrap();
    for (s, stats) in &est.per_start {
        assert!((stats.mean - exact[*s]).abs() <= 3.0 * stats.ci95_halfwidth);
    }
}
