//! One pass/fail line per acceptance criterion, checked against
//! independent oracles where the value is derived.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tww_core::contraction::{format_sequence, trigraph_from_bags, Contractor};
use tww_core::exact::{greedy_sequence, optimal_sequence_with, SolverConfig};
use tww_core::fen::{
    contract_given_ch, contract_gtidy_tail, fen_approximate, follow_on_trigraph, kernel_size_bound,
    kernelize, sqrt_bound_sequence, synthetic_tidy, FenConfig,
};
use tww_core::report::verify;
use tww_core::vi::{reduced_size_bound, vi_approximate, Threshold, ViConfig};
use tww_core::{generate, Color, ContractionSequence, Error, Trigraph, VertexId};

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&self, id: usize, title: &str) -> bool {
        let status = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!("criterion {id} [{status}] {title}");
        if !self.notes.is_empty() {
            line.push_str(&format!(" ({})", self.notes.join("; ")));
        }
        // Written to the raw handle so the lines survive output capture.
        let mut out = std::io::stdout().lock();
        writeln!(out, "{line}").unwrap();
        for f in self.failures.iter().take(5) {
            writeln!(out, "    {f}").unwrap();
        }
        self.failures.is_empty()
    }
}

fn seq_cfg() -> SolverConfig {
    SolverConfig::default().sequential()
}

fn replay_ok(c: &ContractionSequence) -> bool {
    let r = verify(c);
    r.valid && r.complete && r.bag_oracle == Some(true)
}

/// A random full sequence: uniformly random live pair at every step.
fn random_sequence(g: &Trigraph, rng: &mut ChaCha8Rng) -> Contractor {
    let mut k = Contractor::new(g.clone());
    while k.current().vertex_count() > 1 {
        let vs: Vec<VertexId> = k.current().vertices().collect();
        let pair: Vec<VertexId> = vs.choose_multiple(rng, 2).copied().collect();
        k.contract(pair[0], pair[1]).unwrap();
    }
    k
}

/// Quotient by bags computed from scratch: black when every cross pair
/// is black, absent when no cross pair is adjacent, red otherwise.
fn quotient(
    initial: &Trigraph,
    bags: &BTreeMap<VertexId, BTreeSet<VertexId>>,
) -> BTreeMap<(VertexId, VertexId), Color> {
    let mut out = BTreeMap::new();
    let keys: Vec<VertexId> = bags.keys().copied().collect();
    for (i, &a) in keys.iter().enumerate() {
        for &b in &keys[i + 1..] {
            let (mut black, mut any, mut all) = (0, false, true);
            for &x in &bags[&a] {
                for &y in &bags[&b] {
                    match initial.edge(x, y) {
                        Some(Color::Black) => {
                            black += 1;
                            any = true;
                        }
                        Some(Color::Red) => {
                            any = true;
                            all = false;
                        }
                        None => all = false,
                    }
                }
            }
            if any {
                let c = if all && black > 0 {
                    Color::Black
                } else {
                    Color::Red
                };
                out.insert((a, b), c);
            }
        }
    }
    out
}

fn edge_map(g: &Trigraph) -> BTreeMap<(VertexId, VertexId), Color> {
    g.edges()
        .into_iter()
        .map(|(u, v, c)| ((u.min(v), u.max(v)), c))
        .collect()
}

#[test]
fn acceptance() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

fn criterion_1() -> bool {
    let mut o = Outcome::new();
    let mut slowest = Duration::ZERO;
    let mut run = |o: &mut Outcome, name: String, g: &Trigraph, ok: &dyn Fn(usize) -> bool| {
        let t = Instant::now();
        let r = optimal_sequence_with(g, None, &SolverConfig::default());
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        match r {
            Ok(r) => {
                o.check(ok(r.width) && r.optimal, || {
                    format!("{name}: width {} optimal {}", r.width, r.optimal)
                });
                o.check(replay_ok(&r.sequence), || format!("{name}: replay failed"));
                o.check(r.sequence.width().unwrap() == r.width, || {
                    format!("{name}: reported width differs")
                });
            }
            Err(e) => o.failures.push(format!("{name}: {e}")),
        }
        o.check(dt < Duration::from_secs(60), || format!("{name}: {dt:?}"));
    };
    for n in 1..=8 {
        run(&mut o, format!("K{n}"), &generate::complete(n), &|w| w == 0);
    }
    for seed in 0..50u64 {
        let n = 1 + (seed as usize % 12);
        let g = generate::tree(n, seed).unwrap();
        run(&mut o, format!("tree({n}, {seed})"), &g, &|w| w <= 2);
    }
    run(
        &mut o,
        "paley(5)".into(),
        &generate::paley(5).unwrap(),
        &|w| w == 2,
    );
    run(
        &mut o,
        "paley(9)".into(),
        &generate::paley(9).unwrap(),
        &|w| w == 4,
    );
    o.notes
        .push(format!("slowest run {:.2}s", slowest.as_secs_f64()));
    o.report(1, "exact solver on K_n, trees, Paley(5), Paley(9)")
}

fn criterion_2() -> bool {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0usize;
    for case in 0..1000 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.0..1.0);
        let mut g = generate::gnp(n, p, rng.gen());
        if case % 2 == 1 {
            for (u, v, _) in g.clone().edges() {
                if rng.gen_bool(0.3) {
                    g.set_edge(u, v, Some(Color::Red)).unwrap();
                }
            }
        }
        let mut k = Contractor::new(g.clone());
        loop {
            checked += 1;
            let lib = trigraph_from_bags(&g, k.bags()).unwrap();
            let ours = quotient(&g, k.bags());
            o.check(
                edge_map(k.current()) == ours && edge_map(&lib) == ours,
                || format!("case {case}: mismatch after {} steps", k.step_count()),
            );
            if k.current().vertex_count() <= 1 {
                break;
            }
            let vs: Vec<VertexId> = k.current().vertices().collect();
            let pair: Vec<VertexId> = vs.choose_multiple(&mut rng, 2).copied().collect();
            k.contract(pair[0], pair[1]).unwrap();
        }
    }
    o.notes.push(format!("{checked} trigraphs compared"));
    o.report(
        2,
        "incremental trigraphs equal bag quotients, 1000 random sequences",
    )
}

fn criterion_3() -> bool {
    let mut o = Outcome::new();
    let cfg = FenConfig::default();
    let mut routes = BTreeMap::new();
    let forced = FenConfig {
        force_kernel: true,
        ..cfg.clone()
    };
    let mut forced_runs = 0;
    let mut brute = 0;
    for seed in 0..100u64 {
        let n = 5 + (seed as usize % 10);
        let k = 1 + (seed as usize % 3);
        let g = generate::tree_plus_k(n, k, seed).unwrap();
        let name = format!("tree_plus_k({n}, {k}, {seed})");
        let oracle = optimal_sequence_with(&g, None, &seq_cfg()).unwrap();
        assert!(oracle.optimal);
        if n <= 8 {
            brute += 1;
            o.check(common::brute_force_tww(&g) == oracle.width, || {
                format!("{name}: solver disagrees with brute force")
            });
        }
        match fen_approximate(&g, &cfg) {
            Ok(r) => {
                let w = r.result.sequence.width().unwrap();
                o.check(replay_ok(&r.result.sequence), || {
                    format!("{name}: replay failed")
                });
                o.check(oracle.width <= w && w <= oracle.width + 1, || {
                    format!("{name}: width {w}, oracle {}", oracle.width)
                });
                *routes.entry(format!("{:?}", r.report.route)).or_insert(0) += 1;
            }
            Err(e) => o.failures.push(format!("{name}: {e}")),
        }
        if oracle.width >= 1 {
            match fen_approximate(&g, &forced) {
                Ok(r) => {
                    let w = r.result.sequence.width().unwrap();
                    forced_runs += 1;
                    o.check(replay_ok(&r.result.sequence), || {
                        format!("{name}: forced replay failed")
                    });
                    o.check(w <= oracle.width + 1, || {
                        format!("{name}: forced kernel width {w}, oracle {}", oracle.width)
                    });
                }
                Err(e) => o.failures.push(format!("{name}: forced kernel: {e}")),
            }
        }
        let kr = kernelize(&g, &cfg).unwrap();
        let bound = 128 * k * k + 112 * k;
        o.check(
            kr.stats.vertices <= bound && kernel_size_bound(k) == bound,
            || format!("{name}: kernel {} > {bound}", kr.stats.vertices),
        );
    }
    let mut largest = 0usize;
    for seed in 0..20u64 {
        let k = 1 + (seed as usize % 10);
        let g = generate::tree_plus_k(400, k, seed).unwrap();
        let kr = kernelize(&g, &cfg).unwrap();
        largest = largest.max(kr.stats.vertices);
        o.check(kr.stats.vertices <= 128 * k * k + 112 * k, || {
            format!("n=400 k={k}: kernel {}", kr.stats.vertices)
        });
        let lifted = kr.lift(&greedy_sequence(&kr.kernel)).unwrap();
        o.check(replay_ok(&lifted) && lifted.initial() == &g, || {
            format!("n=400 k={k}: kernel lift invalid")
        });
    }
    o.notes.push(format!(
        "routes {routes:?}, {forced_runs} forced kernel runs"
    ));
    o.notes
        .push(format!("{brute} oracle runs cross-checked by brute force"));
    o.notes.push(format!("largest kernel at n=400: {largest}"));
    o.report(
        3,
        "FEN sandwich tww <= w <= tww+1 and kernel size <= 128k^2+112k",
    )
}

fn criterion_4() -> bool {
    let mut o = Outcome::new();
    let mut over_ceiling = 0;
    let mut worst_ratio = 0.0f64;
    for seed in 0..50u64 {
        let k = 1 + (seed as usize % 10);
        let n = 20 + (seed as usize * 97) % 481;
        let g = generate::tree_plus_k(n, k, seed).unwrap();
        let name = format!("tree_plus_k({n}, {k}, {seed})");
        match sqrt_bound_sequence(&g, &seq_cfg()) {
            Ok(r) => {
                let rep = &r.report;
                o.check(rep.prefix_width <= 2, || {
                    format!("{name}: prefix width {}", rep.prefix_width)
                });
                o.check(rep.beta_edges <= 29 * k, || {
                    format!("{name}: {} edges > 29k", rep.beta_edges)
                });
                o.check(
                    replay_ok(&r.result.sequence) && r.result.sequence.initial() == &g,
                    || format!("{name}: replay failed"),
                );
                if rep.width > rep.soft_ceiling {
                    over_ceiling += 1;
                }
                worst_ratio = worst_ratio.max(rep.beta_edges as f64 / k as f64);
            }
            Err(e) => o.failures.push(format!("{name}: {e}")),
        }
    }
    o.notes.push(format!("max |E|/k {worst_ratio:.1}"));
    o.notes
        .push(format!("{over_ceiling} soft-ceiling warnings"));
    o.report(
        4,
        "square-root construction: prefix width <= 2, |E| <= 29k, replay",
    )
}

/// Random trigraph with red degree at most 2 and every red edge touching
/// a vertex of degree at most 2.
fn follow_instance(rng: &mut ChaCha8Rng) -> Trigraph {
    let n = rng.gen_range(2..=10);
    let mut g = generate::gnp(n, rng.gen_range(0.1..0.7), rng.gen());
    let mut edges = g.edges();
    edges.shuffle(rng);
    for (u, v, _) in edges {
        if !rng.gen_bool(0.6) {
            continue;
        }
        if g.red_degree(u) < 2
            && g.red_degree(v) < 2
            && (g.total_degree(u) <= 2 || g.total_degree(v) <= 2)
        {
            g.set_edge(u, v, Some(Color::Red)).unwrap();
        }
    }
    g
}

fn criterion_5() -> bool {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut with_red = 0;
    let mut worst = 0usize;
    for case in 0..200 {
        let g = follow_instance(&mut rng);
        if g.red_edge_count() > 0 {
            with_red += 1;
        }
        let black = g.all_black();
        let candidates = [
            optimal_sequence_with(&black, None, &seq_cfg())
                .unwrap()
                .sequence,
            random_sequence(&black, &mut rng).into_sequence(),
        ];
        for c in candidates {
            match follow_on_trigraph(&g, &c) {
                Ok(f) => {
                    let (wb, wf) = (c.width().unwrap(), f.width().unwrap());
                    worst = worst.max(wf.saturating_sub(wb));
                    o.check(wf <= wb + 4, || format!("case {case}: {wf} > {wb} + 4"));
                    o.check(replay_ok(&f), || format!("case {case}: replay failed"));
                }
                Err(e) => o.failures.push(format!("case {case}: {e}")),
            }
        }
    }
    o.notes.push(format!(
        "{with_red} instances with red edges, largest increase {worst}"
    ));
    o.report(5, "followed sequence width <= w(C')+4 on 200 trigraphs")
}

fn criterion_6() -> bool {
    let mut o = Outcome::new();
    let mut tail_max = 0;
    let mut validations = 0;
    for seed in 0..50u64 {
        let core = 3 + (seed as usize % 6);
        let m = 1 + (seed as usize % 3);
        let name = format!("synthetic_tidy({core}, {m}, seed {seed})");
        let t = synthetic_tidy(core, m, 5, seed).unwrap();
        o.check(t.paths.iter().all(|p| p.len() >= 8 * m), || {
            format!("{name}: short path")
        });
        let h = t.h();
        let c_h = if seed % 2 == 0 {
            optimal_sequence_with(&h, None, &seq_cfg())
                .unwrap()
                .sequence
        } else {
            greedy_sequence(&h)
        };
        let w_h = c_h.width().unwrap();
        let r = match contract_given_ch(&t, &c_h) {
            Ok(r) => r,
            Err(e) => {
                o.failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        validations += r.validations;
        o.check(r.validations == c_h.len() + 1, || {
            format!("{name}: {} validations", r.validations)
        });
        o.check(r.state.width() <= (w_h + 1).max(4), || {
            format!("{name}: width {} vs C_H {w_h}", r.state.width())
        });
        let done = r.state.sequence().len();
        match contract_gtidy_tail(r.state) {
            Ok(full) => {
                let profile = full.width_profile().unwrap();
                let tail = profile.per_trigraph[done + 1..]
                    .iter()
                    .copied()
                    .max()
                    .unwrap_or(0);
                tail_max = tail_max.max(tail);
                o.check(tail <= 4, || format!("{name}: tail width {tail}"));
                o.check(replay_ok(&full) && full.initial() == &t.g, || {
                    format!("{name}: replay failed")
                });
            }
            Err(e) => o.failures.push(format!("{name}: tail: {e}")),
        }
    }
    o.notes.push(format!(
        "{validations} validator passes, tail width max {tail_max}"
    ));
    o.report(
        6,
        "contract_given_CH <= max(w(C_H)+1, 4), tail <= 4, validator after every H-step",
    )
}

/// Core `s` vertices with random edges, plus `copies` copies of a random
/// connected component on `t` vertices attached by a random non-empty set
/// of (component, core) pairs.
fn vi_random_instance(rng: &mut ChaCha8Rng, threshold: usize) -> Trigraph {
    loop {
        let s = rng.gen_range(1..=2);
        let t = rng.gen_range(1..=3);
        let copies = threshold + rng.gen_range(1..=5);
        if s + threshold * t > 14 {
            continue;
        }
        let core = generate::gnp(s, 0.5, rng.gen());
        let comp = if t == 1 {
            generate::complete(1)
        } else {
            generate::tree_plus_k(t, rng.gen_range(0..=(t - 2).min(1)), rng.gen()).unwrap()
        };
        let mut attach: Vec<(usize, usize)> = (0..t)
            .flat_map(|c| (0..s).map(move |x| (c, x)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        if attach.is_empty() {
            attach.push((rng.gen_range(0..t), rng.gen_range(0..s)));
        }
        let g = generate::replicated_components(&core, &comp, copies, &attach).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Copies of a clique whose vertices all see the same core vertices, so
/// twin contractions merge copies before anything touches the core.
fn vi_engineered_instance(rng: &mut ChaCha8Rng, threshold: usize) -> Trigraph {
    loop {
        let s = rng.gen_range(1..=3);
        let t = rng.gen_range(1..=3);
        if s + threshold * t > 14 {
            continue;
        }
        let core = generate::gnp(s, 0.5, rng.gen());
        let seen: Vec<usize> = (0..s).filter(|_| rng.gen_bool(0.6)).collect();
        if seen.is_empty() || seen.len() < s && !core.is_connected() {
            continue;
        }
        let attach: Vec<(usize, usize)> = (0..t)
            .flat_map(|c| seen.iter().map(move |&x| (c, x)))
            .collect();
        let copies = threshold + rng.gen_range(1..=5);
        let g = generate::replicated_components(&core, &generate::complete(t), copies, &attach)
            .unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn criterion_7() -> bool {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let wide = SolverConfig {
        cap: 24,
        decide_cap: 24,
        jobs: Some(1),
    };
    let (mut merged, mut g_compared, mut max_p, mut max_gp) = (0, 0, 0, 0);
    let mut check_vi = |o: &mut Outcome,
                        name: String,
                        g: &Trigraph,
                        threshold: usize|
     -> std::result::Result<(), Error> {
        let cfg = ViConfig {
            solver: seq_cfg(),
            threshold: Threshold::Fixed(threshold),
            ..ViConfig::default()
        };
        let r = vi_approximate(g, &cfg)?;
        let rep = &r.report;
        max_p = max_p.max(rep.p);
        max_gp = max_gp.max(rep.gprime_vertices);
        if rep.removed > 0 {
            merged += 1;
        }
        o.check(rep.p <= 5 && rep.gprime_vertices <= 14, || {
            format!(
                "{name}: p {} g' {} out of range",
                rep.p, rep.gprime_vertices
            )
        });
        let w = r.result.sequence.width().unwrap();
        o.check(
            replay_ok(&r.result.sequence) && r.result.sequence.initial() == g,
            || format!("{name}: replay failed"),
        );
        o.check(w <= 2 * rep.width_gprime, || {
            format!("{name}: width {w} > 2 * {}", rep.width_gprime)
        });
        if let Ok(full) = optimal_sequence_with(g, None, &wide) {
            g_compared += 1;
            o.check(rep.width_gprime <= full.width, || {
                format!(
                    "{name}: tww(g') {} > tww(G) {}",
                    rep.width_gprime, full.width
                )
            });
        }
        Ok(())
    };
    for case in 0..50 {
        let threshold = 3 + case % 3;
        let g = vi_engineered_instance(&mut rng, threshold);
        if let Err(e) = check_vi(&mut o, format!("engineered {case}"), &g, threshold) {
            o.failures.push(format!(
                "engineered {case} (n={}, threshold {threshold}): {e}",
                g.vertex_count()
            ));
        }
    }
    let mut too_small = 0;
    for case in 0..50 {
        let threshold = 3 + case % 3;
        let g = vi_random_instance(&mut rng, threshold);
        match check_vi(&mut o, format!("random {case}"), &g, threshold) {
            Ok(()) => {}
            Err(Error::ThresholdTooSmall { .. }) => too_small += 1,
            Err(e) => o.failures.push(format!("random {case}: {e}")),
        }
    }
    o.check(merged >= 80, || {
        format!("only {merged} instances removed blocks")
    });

    for p in 1..=3usize {
        let f = BigUint::from(1u8) << (7 * p * p * p);
        let expected = BigUint::from(p)
            + BigUint::from(p * p) * &f * BigUint::from(2u8).pow((2 * p * p) as u32);
        o.check(
            Threshold::Guaranteed.value(p) == f && reduced_size_bound(p, &f) == expected,
            || format!("size formula at p = {p}"),
        );
    }
    let bound = reduced_size_bound(1, &Threshold::Guaranteed.value(1));
    o.check(bound == BigUint::from(513u32), || {
        format!("p = 1 bound {bound}")
    });
    let exact_cfg = ViConfig {
        solver: seq_cfg(),
        ..ViConfig::default()
    };
    let mut by_p = BTreeSet::new();
    let mut default_graphs = vec![generate::complete(1)];
    for copies in [1usize, 3, 8, 40] {
        default_graphs.push(
            generate::InstanceSpec::ReplicatedComponents {
                core: 1,
                component: 1,
                copies,
            }
            .generate()
            .unwrap(),
        );
    }
    for g in &default_graphs {
        let r = vi_approximate(g, &exact_cfg).unwrap();
        by_p.insert(r.report.p);
        let bound = reduced_size_bound(r.report.p, &Threshold::Guaranteed.value(r.report.p));
        o.check(BigUint::from(r.report.gprime_vertices) <= bound, || {
            format!("n={}: g' {}", g.vertex_count(), r.report.gprime_vertices)
        });
        o.check(r.report.removed == 0, || {
            format!("n={}: default threshold removed blocks", g.vertex_count())
        });
    }
    o.check(by_p.contains(&1), || "no p = 1 instance".into());
    o.notes.push(format!("{merged}/100 with merges, max p {max_p}, max |g'| {max_gp}, {g_compared} compared with tww(G)"));
    o.notes.push(format!(
        "{too_small}/50 random instances report threshold too small"
    ));
    o.notes
        .push(format!("default threshold checked at p in {by_p:?}"));
    o.report(
        7,
        "VI lift width <= 2 tww(g'), size formula exact for p <= 3",
    )
}

fn criterion_8() -> bool {
    let mut o = Outcome::new();
    let cfg = seq_cfg();
    let fen = FenConfig {
        solver: cfg.clone(),
        ..FenConfig::default()
    };
    let forced = FenConfig {
        force_kernel: true,
        ..fen.clone()
    };
    let vi = ViConfig {
        solver: cfg.clone(),
        threshold: Threshold::Fixed(3),
        ..ViConfig::default()
    };
    let tpk = generate::tree_plus_k(40, 3, 11).unwrap();
    let cyc = generate::cycle(40).unwrap();
    let rc = generate::InstanceSpec::ReplicatedComponents {
        core: 2,
        component: 2,
        copies: 8,
    }
    .generate()
    .unwrap();
    let paley = generate::paley(9).unwrap();
    type Run<'a> = Box<dyn Fn() -> ContractionSequence + 'a>;
    let runs: Vec<(&str, Run)> = vec![
        (
            "exact",
            Box::new(|| optimal_sequence_with(&paley, None, &cfg).unwrap().sequence),
        ),
        (
            "fen",
            Box::new(|| fen_approximate(&tpk, &fen).unwrap().result.sequence),
        ),
        (
            "fen forced",
            Box::new(|| fen_approximate(&cyc, &forced).unwrap().result.sequence),
        ),
        (
            "kernelize",
            Box::new(|| kernelize(&tpk, &fen).unwrap().tidy_prefix),
        ),
        (
            "sqrt",
            Box::new(|| sqrt_bound_sequence(&tpk, &cfg).unwrap().result.sequence),
        ),
        (
            "vi",
            Box::new(|| vi_approximate(&rc, &vi).unwrap().result.sequence),
        ),
    ];
    for (name, run) in &runs {
        let a = format_sequence(&run());
        let b = format_sequence(&run());
        o.check(a == b, || format!("{name}: sequence files differ"));
    }
    let widths: BTreeSet<usize> = [None, Some(1), Some(2), Some(4)]
        .into_iter()
        .map(|jobs| {
            let c = SolverConfig {
                jobs,
                ..SolverConfig::default()
            };
            optimal_sequence_with(&paley, None, &c).unwrap().width
        })
        .collect();
    o.check(widths.len() == 1, || format!("exact widths {widths:?}"));
    o.notes.push(format!("{} commands repeated", runs.len()));
    o.report(
        8,
        "byte-identical repeated runs, equal widths across thread counts",
    )
}
