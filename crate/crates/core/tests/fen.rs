mod common;

use proptest::prelude::*;
use tww_core::exact::{optimal_sequence_with, SolverConfig};
use tww_core::fen::{
    fen_approximate, kernel_size_bound, kernelize, sqrt_bound_sequence, FenConfig, FenRoute,
};
use tww_core::report::verify;
use tww_core::{generate, Color, Trigraph, VertexId};

/// Paley(9) with a path of `len` new vertices running from vertex 0 to
/// vertex 1.
fn paley_with_path(len: usize) -> Trigraph {
    let mut g = generate::paley(9).unwrap();
    let mut prev = VertexId(0);
    for i in 0..len {
        let v = VertexId(9 + i);
        g.add_vertex(v);
        g.add_edge(prev, v, Color::Black).unwrap();
        prev = v;
    }
    g.add_edge(prev, VertexId(1), Color::Black).unwrap();
    g
}

#[test]
fn wide_core_takes_the_kernel_route() {
    let g = paley_with_path(60);
    let cfg = FenConfig {
        solver: SolverConfig {
            cap: 24,
            decide_cap: 24,
            jobs: None,
        },
        ..FenConfig::default()
    };
    let r = fen_approximate(&g, &cfg).unwrap();
    assert_eq!(r.report.route, FenRoute::Kernel);
    let v = verify(&r.result.sequence);
    assert!(v.valid && v.complete);
    assert_eq!(r.result.sequence.initial(), &g);
    // Paley(9) is induced, so the twin-width is at least 4.
    assert!(
        (4..=5).contains(&r.result.width),
        "width {}",
        r.result.width
    );
    let stats = r.report.kernel.unwrap();
    assert!(stats.vertices <= kernel_size_bound(r.report.k));
    assert!(stats.vertices < g.vertex_count());
    assert_eq!(r.report.kernel_optimal, Some(true));
    assert!(r.report.lower_bound <= 4);
}

#[test]
fn kernel_lift_returns_to_the_input() {
    for seed in 0..10 {
        let g = generate::tree_plus_k(200, 4, seed).unwrap();
        let kr = kernelize(&g, &FenConfig::default()).unwrap();
        let c = optimal_sequence_with(&kr.kernel, None, &SolverConfig::default())
            .map(|r| r.sequence)
            .unwrap_or_else(|_| tww_core::exact::greedy_sequence(&kr.kernel));
        let lifted = kr.lift(&c).unwrap();
        assert_eq!(lifted.initial(), &g);
        assert!(lifted.is_complete());
        let w = lifted.width().unwrap();
        assert!(w <= c.width().unwrap().max(kr.tidy_prefix.width().unwrap()) + 1);
    }
}

#[test]
fn forests_skip_the_kernel() {
    let g = generate::tree(30, 3).unwrap();
    let r = fen_approximate(&g, &FenConfig::default()).unwrap();
    assert!(r.result.width <= 2);
    assert_eq!(r.report.k, 0);
}

#[test]
fn disconnected_input_is_refused() {
    let g = Trigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(fen_approximate(&g, &FenConfig::default()).is_err());
    assert!(sqrt_bound_sequence(&g, &SolverConfig::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sandwich_on_small_instances(n in 4usize..=9, k in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(k <= n * (n - 1) / 2 - (n - 1));
        let g = generate::tree_plus_k(n, k, seed).unwrap();
        let tww = common::brute_force_tww(&g);
        let r = fen_approximate(&g, &FenConfig::default()).unwrap();
        let w = r.result.sequence.width().unwrap();
        prop_assert!(tww <= w && w <= tww + 1);
        prop_assert!(r.report.lower_bound <= tww);
    }

    #[test]
    fn kernel_respects_its_bound(n in 20usize..=300, k in 1usize..=8, seed in any::<u64>()) {
        let g = generate::tree_plus_k(n, k, seed).unwrap();
        let kr = kernelize(&g, &FenConfig::default()).unwrap();
        prop_assert!(kr.stats.vertices <= kernel_size_bound(k));
        prop_assert!(kr.tidy_prefix.width().unwrap() <= 2);
    }

    #[test]
    fn sqrt_prefix_is_narrow(n in 10usize..=200, k in 1usize..=10, seed in any::<u64>()) {
        let g = generate::tree_plus_k(n, k, seed).unwrap();
        let r = sqrt_bound_sequence(&g, &SolverConfig::default().sequential()).unwrap();
        prop_assert!(r.report.prefix_width <= 2);
        prop_assert!(r.report.beta_edges <= 29 * k);
        prop_assert!(verify(&r.result.sequence).valid);
    }
}
