//! End-to-end acceptance sweep: eight independent criteria, one pass/fail
//! line each. Every criterion re-derives its own evidence from scratch so a
//! green run certifies the whole stack, not a cached artifact.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use odd5::coloring::verify_odd;
use odd5::oracle::{chi_odd, is_odd_k_colorable};
use odd5::rules::{extend_step, frame_of, rule_for_tag_2bp};
use odd5::special::{
    antiprism_graph, color_antiprism, color_prism, prism_graph, recognize_special,
};
use odd5::{
    enumerate_small, find_config_2bp, gen_2bp, gen_o1p, odd_five_color_2bp, odd_five_color_o1p,
    Coloring, ConfigTag, Detection, Embedding, GenError, GenParams, Graph, GraphClass, Instance,
    ReductionStep, SolveTrace, SpecialKind, TwoBoundaryEmbedding, Vertex, SOLVER_K,
};

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn solve(inst: &Instance) -> Result<(Coloring, SolveTrace), odd5::SolveError> {
    match inst {
        Instance::OuterOnePlanar(e) => odd_five_color_o1p(e),
        Instance::TwoBoundaryPlanar(e) => odd_five_color_2bp(e),
    }
}

fn verified(g: &Graph, tau: &Coloring) -> bool {
    verify_odd(g, tau).is_valid() && tau.colors_used().len() <= SOLVER_K as usize
}

#[test]
fn criterion_1_oracle_exact_small_values() {
    let cases = [(cycle(5), 5), (cycle(4), 4), (complete(4), 4)];
    for (g, want) in &cases {
        let start = Instant::now();
        let (chi, witness) = chi_odd(g);
        let elapsed = start.elapsed();
        assert_eq!(chi, *want);
        let tau = witness.expect("witness exists");
        assert!(verify_odd(g, &tau).is_valid());
        assert_eq!(tau.colors_used().len(), *want as usize);
        assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    }
    println!("criterion 1 (oracle exactness: C5=5, C4=4, K4=4, each under a second): PASS");
}

fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn sweep(class: GraphClass) -> (usize, f64) {
    let start = Instant::now();
    let mut count = 0usize;
    enumerate_small(class, 8, |inst| {
        count += 1;
        let g = inst.graph();
        let (tau, trace) = solve(&inst).unwrap_or_else(|e| {
            panic!("instance {count} ({} edges): {e}", g.edge_count())
        });
        assert!(verified(g, &tau), "instance {count} got an invalid coloring");
        assert!(
            is_odd_k_colorable(g, SOLVER_K).is_some(),
            "oracle denies a 5-coloring for instance {count}"
        );
        check_accounting(&trace, count);
    })
    .unwrap();
    (count, start.elapsed().as_secs_f64())
}

fn check_accounting(trace: &SolveTrace, id: usize) {
    for step in &trace.steps {
        assert!(
            step.decrement() == step.expected_decrement() && step.decrement() > 0,
            "instance {id}: step {} shrank |V|+|E| by {} instead of {}",
            step.config.tag(),
            step.decrement(),
            step.expected_decrement()
        );
    }
}

#[test]
fn criterion_2_outer_one_planar_small_sweep() {
    let (count, secs) = sweep(GraphClass::OuterOnePlanar);
    assert!(secs < 600.0, "sweep took {secs:.1}s");
    println!(
        "criterion 2 (all {count} outer-1-planar instances up to 8 vertices solved, \
         verified, and oracle-confirmed in {secs:.1}s): PASS"
    );
}

#[test]
fn criterion_3_two_boundary_small_sweep() {
    let mut seen = BTreeSet::new();
    enumerate_small(GraphClass::TwoBoundaryPlanar, 8, |inst| {
        if let Some(s) = recognize_special(inst.graph()) {
            match s.kind {
                SpecialKind::Prism(n @ 3..=4) => {
                    seen.insert(format!("M({n})"));
                }
                SpecialKind::Antiprism(n @ 3..=4) => {
                    seen.insert(format!("P({n})"));
                }
                _ => {}
            }
        }
    })
    .unwrap();
    for want in ["M(3)", "M(4)", "P(3)", "P(4)"] {
        assert!(seen.contains(want), "stream never produced {want}");
    }
    let (count, secs) = sweep(GraphClass::TwoBoundaryPlanar);
    assert!(secs < 600.0, "sweep took {secs:.1}s");
    println!(
        "criterion 3 (all {count} two-boundary instances up to 8 vertices solved, verified, \
         and oracle-confirmed, including M(3), M(4), P(3), P(4), in {secs:.1}s): PASS"
    );
}

fn seeded_params(class: GraphClass, seed: u64) -> GenParams {
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ 0xacce_97ed);
    match class {
        GraphClass::OuterOnePlanar => GenParams {
            n: r.gen_range(1..=60),
            chord_density: r.gen(),
            crossing_density: r.gen(),
            seed,
            ..GenParams::default()
        },
        GraphClass::TwoBoundaryPlanar => {
            let n_out = r.gen_range(3..=40);
            let n_in = r.gen_range(0..=20.min(60 - n_out));
            GenParams {
                n_out,
                n_in,
                inter_edge_density: r.gen(),
                crossing_density: r.gen(),
                shared_vertex_count: if n_in >= 3 && r.gen_bool(0.2) {
                    r.gen_range(1..3)
                } else {
                    0
                },
                seed,
                ..GenParams::default()
            }
        }
    }
}

fn seeded_instance(class: GraphClass, seed: u64) -> Instance {
    let mut params = seeded_params(class, seed);
    let build = |p: &GenParams| match class {
        GraphClass::OuterOnePlanar => gen_o1p(p).map(Instance::OuterOnePlanar),
        GraphClass::TwoBoundaryPlanar => gen_2bp(p).map(Instance::TwoBoundaryPlanar),
    };
    match build(&params) {
        Ok(inst) => inst,
        Err(GenError::SharedInfeasible { .. }) => {
            params.shared_vertex_count = 0;
            build(&params).expect("unshared layout generates")
        }
        Err(e) => panic!("seed {seed}: {e}"),
    }
}

#[test]
fn criterion_4_seeded_fuzzing() {
    let start = Instant::now();
    let mut exhausted: Vec<u64> = Vec::new();
    for class in [GraphClass::OuterOnePlanar, GraphClass::TwoBoundaryPlanar] {
        for seed in 0..10_000u64 {
            let inst = seeded_instance(class, seed);
            match solve(&inst) {
                Ok((tau, trace)) => {
                    assert!(
                        verified(inst.graph(), &tau),
                        "{class} seed {seed}: invalid coloring"
                    );
                    check_accounting(&trace, seed as usize);
                }
                Err(odd5::SolveError::Exhausted(_)) => exhausted.push(seed),
                Err(e) => panic!("{class} seed {seed}: {e}"),
            }
        }
    }
    assert!(
        exhausted.is_empty(),
        "reportable finding: detector exhausted on seeds {exhausted:?}"
    );
    println!(
        "criterion 4 (10,000 seeded instances per class, 100% verified, zero invalid, \
         zero exhausted, in {:.1}s): PASS",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_5_exceptional_family_formulas() {
    for n in 3..=200 {
        let g = prism_graph(n);
        let tau = color_prism(n);
        assert!(verify_odd(&g, &tau).is_valid(), "prism {n}");
        assert!(tau.colors_used().len() <= 3, "prism {n} used too many colors");
    }
    for n in 4..=200 {
        let g = antiprism_graph(n);
        let tau = color_antiprism(n);
        assert!(verify_odd(&g, &tau).is_valid(), "antiprism {n}");
        let want = if n % 2 == 0 { 4 } else { 5 };
        assert_eq!(
            tau.colors_used().len(),
            want,
            "antiprism {n} color count"
        );
    }
    println!(
        "criterion 5 (prisms 3..=200 within 3 colors; antiprisms 4..=200 exactly 4 when even, \
         exactly 5 when odd): PASS"
    );
}

const EXTENSIONS: [&str; 8] = [
    "degree-1",
    "triangle-deg-2",
    "path-deg-2",
    "deg-3-two-odd",
    "triangle-3-3",
    "adjacent-triangles",
    "triple-triangle",
    "fan",
];

fn extension_index(tag: ConfigTag) -> usize {
    match tag {
        ConfigTag::A1 | ConfigTag::A2 => 0,
        ConfigTag::B1 | ConfigTag::B2 => 1,
        ConfigTag::C1 | ConfigTag::C2 => 2,
        ConfigTag::D2 => 3,
        ConfigTag::D1 | ConfigTag::E2 => 4,
        ConfigTag::G2 => 5,
        ConfigTag::H2 => 6,
        ConfigTag::I2 => 7,
    }
}

fn run_fixture(host: &Graph, step: &ReductionStep, reduced: &Graph) -> Result<(), String> {
    let tag = step.config.tag();
    let tau_h = is_odd_k_colorable(reduced, SOLVER_K)
        .ok_or_else(|| format!("{tag}: oracle found no reduced coloring"))?;
    let out =
        extend_step(host, step, &tau_h).map_err(|e| format!("{tag}: extension failed: {e}"))?;
    if !verify_odd(host, &out).is_valid() {
        return Err(format!("{tag}: extended coloring does not verify"));
    }
    let mut frame: BTreeSet<Vertex> = frame_of(step).into_iter().collect();
    frame.extend(step.removed_vertices.iter().copied());
    for v in 0..host.n_slots() {
        if host.is_alive(v) && !frame.contains(&v) && out.get(v) != tau_h.get(v) {
            return Err(format!("{tag}: vertex {v} outside the frame changed color"));
        }
    }
    Ok(())
}

fn fixture_params(seed: u64) -> GenParams {
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ 0x00f1_c7e5);
    let style = r.gen_range(0..10u32);
    let n_out = r.gen_range(4..13);
    let (n_in, inter_edge_density) = if style < 4 {
        (n_out, 0.85 + r.gen::<f64>() * 0.14)
    } else if style < 6 {
        (r.gen_range(0..3), 0.3 + r.gen::<f64>() * 0.6)
    } else {
        (r.gen_range(3..10), 0.3 + r.gen::<f64>() * 0.6)
    };
    GenParams {
        n: 0,
        n_out,
        n_in,
        chord_density: 0.0,
        crossing_density: r.gen(),
        inter_edge_density,
        shared_vertex_count: if n_in >= 3 && r.gen_bool(0.1) { 1 } else { 0 },
        seed,
    }
}

fn chain_2bp(
    emb: &TwoBoundaryEmbedding,
    counts: &mut [usize; 8],
    target: usize,
    failures: &mut Vec<String>,
) {
    let mut current = emb.clone();
    loop {
        let isolated = current.graph().isolated_vertices();
        if !isolated.is_empty() {
            current = match current.delete_vertices(&isolated) {
                Ok(e) => e,
                Err(_) => return,
            };
        }
        if current.graph().live_count() <= 6 {
            return;
        }
        let cfg = match find_config_2bp(&current) {
            Ok(Detection::Config(c)) => c,
            Ok(Detection::Special(_)) | Err(_) => return,
        };
        let rule = rule_for_tag_2bp(cfg.tag()).expect("registered rule");
        let (step, next) = match rule.reduce(&current, &cfg, SOLVER_K) {
            Ok(x) => x,
            Err(_) => return,
        };
        let idx = extension_index(step.config.tag());
        if counts[idx] < target && next.graph().live_count() <= 12 {
            match run_fixture(current.graph(), &step, next.graph()) {
                Ok(()) => counts[idx] += 1,
                Err(e) => failures.push(e),
            }
        }
        current = next;
    }
}

fn chain_o1p(
    emb: &odd5::OuterOnePlanarEmbedding,
    counts: &mut [usize; 8],
    target: usize,
    failures: &mut Vec<String>,
) {
    use odd5::rules::rule_for_tag_o1p;
    let mut current = emb.clone();
    loop {
        let isolated = current.graph().isolated_vertices();
        if !isolated.is_empty() {
            current = match current.delete_vertices(&isolated) {
                Ok(e) => e,
                Err(_) => return,
            };
        }
        if current.graph().live_count() <= 6 {
            return;
        }
        let cfg = match odd5::find_config_o1p(&current) {
            Ok(c) => c,
            Err(_) => return,
        };
        let rule = rule_for_tag_o1p(cfg.tag()).expect("registered rule");
        let (step, next) = match rule.reduce(&current, &cfg, SOLVER_K) {
            Ok(x) => x,
            Err(_) => return,
        };
        let idx = extension_index(step.config.tag());
        if counts[idx] < target && next.graph().live_count() <= 12 {
            match run_fixture(current.graph(), &step, next.graph()) {
                Ok(()) => counts[idx] += 1,
                Err(e) => failures.push(e),
            }
        }
        current = next;
    }
}

#[test]
fn criterion_6_extension_fixture_suite() {
    let start = Instant::now();
    let target = 1000usize;
    let mut counts = [0usize; 8];
    let mut failures: Vec<String> = Vec::new();
    for seed in 0..300_000u64 {
        if counts.iter().all(|&c| c >= target) {
            break;
        }
        if let Ok(e) = gen_2bp(&fixture_params(seed)) {
            chain_2bp(&e, &mut counts, target, &mut failures);
        }
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 0x0001_91a5);
        let params = GenParams {
            n: r.gen_range(7..15),
            chord_density: 0.3 + r.gen::<f64>() * 0.7,
            crossing_density: r.gen(),
            seed,
            ..GenParams::default()
        };
        if let Ok(e) = gen_o1p(&params) {
            chain_o1p(&e, &mut counts, target, &mut failures);
        }
        if !failures.is_empty() {
            break;
        }
    }
    assert!(failures.is_empty(), "fixture failures: {failures:?}");
    let starved: Vec<_> = EXTENSIONS
        .iter()
        .zip(counts)
        .filter(|&(_, c)| c < target)
        .collect();
    assert!(starved.is_empty(), "starved extensions: {starved:?}");
    println!(
        "criterion 6 ({target} oracle-backed fixtures per extension procedure, all extended \
         colorings verified inside their frames, in {:.1}s): PASS",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_7_detector_completeness_small() {
    let start = Instant::now();
    let mut checked = 0usize;
    enumerate_small(GraphClass::TwoBoundaryPlanar, 8, |inst| {
        let emb = match &inst {
            Instance::TwoBoundaryPlanar(e) => e,
            Instance::OuterOnePlanar(_) => unreachable!(),
        };
        let g = inst.graph();
        if g.live_count() == 0 || !g.isolated_vertices().is_empty() {
            return;
        }
        if recognize_special(g).is_some() {
            return;
        }
        match find_config_2bp(emb) {
            Ok(Detection::Config(cfg)) => {
                let rule = rule_for_tag_2bp(cfg.tag()).expect("registered rule");
                assert!(rule.check(emb, &cfg), "re-check failed for {}", cfg.tag());
                checked += 1;
            }
            Ok(Detection::Special(_)) => unreachable!("specials were filtered"),
            Err(e) => panic!("detector exhausted on a {}-vertex instance: {e}", g.live_count()),
        }
    })
    .unwrap();
    println!(
        "criterion 7 (every one of {checked} min-degree-1 two-boundary instances up to 8 \
         vertices outside the exceptional families yields a re-checked configuration, \
         in {:.1}s): PASS",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_8_termination_accounting() {
    let start = Instant::now();
    let mut steps = 0usize;
    for class in [GraphClass::OuterOnePlanar, GraphClass::TwoBoundaryPlanar] {
        enumerate_small(class, 7, |inst| {
            let (_, trace) = solve(&inst).expect("small instance solves");
            check_accounting(&trace, 0);
            steps += trace.steps.len();
        })
        .unwrap();
        for seed in 0..2000u64 {
            let inst = seeded_instance(class, seed.wrapping_mul(77).wrapping_add(5));
            if let Ok((_, trace)) = solve(&inst) {
                check_accounting(&trace, seed as usize);
                steps += trace.steps.len();
            }
        }
    }
    println!(
        "criterion 8 (every reduction step across {steps} traced steps shrank |V|+|E| by \
         exactly its documented decrement, in {:.1}s): PASS",
        start.elapsed().as_secs_f64()
    );
}
