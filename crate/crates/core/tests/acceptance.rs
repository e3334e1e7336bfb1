//! Acceptance suite. Every criterion runs, prints one PASS/FAIL line, and the
//! process exits nonzero if any criterion fails.

use std::f64::consts::TAU;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypergen::analysis::{exponent_from_degrees, MetricReport, DEFAULT_K_MIN};
use hypergen::dynamics::{DynamicGraph, MovementState, DEFAULT_TAU_PHI_RANGE, DEFAULT_TAU_R_RANGE};
use hypergen::geometry::{min_max_phi, radial_cdf, AngularRange};
use hypergen::oracle::generate_quadratic;
use hypergen::slab::{RadialBoundaries, SlabIndex};
use hypergen::stats::{ks_test, Summary};
use hypergen::validation::{bench_grid, best_of_reps, compare_ensembles, fit_complexity, EnsembleConfig};
use hypergen::{
    generate_positions, hyperbolic_distance, threshold_graph, Adjacency, DiskParameters, GeneratorConfig, Graph,
    HyperbolicGenerator, PolarPoint, RadiusSpec,
};

const KS_SIGNIFICANCE: f64 = 0.01;
const MAX_Z: f64 = 3.0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn params(n: u64, gamma: f64, k_bar: f64) -> DiskParameters {
    DiskParameters::new(n, gamma, RadiusSpec::AvgDegree(k_bar)).expect("calibration")
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    let mut mismatches = Vec::new();
    for &n in &[500u64, 1000, 2000] {
        for &gamma in &[2.2, 3.0, 4.0] {
            for &k in &[4.0, 16.0] {
                let p = params(n, gamma, k);
                for seed in 0..20 {
                    let positions = generate_positions(n as usize, p.alpha(), p.radius(), seed, 0);
                    let fast = threshold_graph(positions.clone(), p.radius(), &GeneratorConfig::default()).unwrap();
                    let slow = generate_quadratic(&positions, p.radius()).unwrap();
                    runs += 1;
                    if fast.sorted_edges() != slow.sorted_edges() {
                        mismatches.push(format!("n={n} gamma={gamma} k={k} seed={seed}"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && elapsed < Duration::from_secs(120);
    Outcome::new(
        pass,
        format!("{}/{runs} runs identical in {:.1}s {:?}", runs - mismatches.len(), elapsed.as_secs_f64(), mismatches),
    )
}

fn calibration() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &k in &[4.0, 6.0, 16.0, 64.0] {
        let p = params(10_000, 3.0, k);
        let degrees: Vec<f64> = (0..20)
            .map(|seed| {
                let g = HyperbolicGenerator::from_params(p, seed).run().unwrap().graph;
                2.0 * g.m() as f64 / g.n() as f64
            })
            .collect();
        let mean = Summary::of(&degrees).mean;
        let rel = (mean - k).abs() / k;
        pass &= rel <= 0.15;
        parts.push(format!("k={k}: {mean:.3} ({:+.1}%)", 100.0 * (mean - k) / k));
    }
    Outcome::new(pass, parts.join(", "))
}

fn degree_exponent() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &gamma in &[2.2, 3.0] {
        let g = HyperbolicGenerator::from_params(params(100_000, gamma, 10.0), 3).run().unwrap().graph;
        let estimate = exponent_from_degrees(&g.adjacency().degrees(), DEFAULT_K_MIN).unwrap();
        pass &= (estimate - gamma).abs() <= 0.3;
        parts.push(format!("gamma={gamma}: estimate {estimate:.3}"));
    }
    Outcome::new(pass, parts.join(", "))
}

fn distributional_match() -> Outcome {
    let cmp = compare_ensembles(&EnsembleConfig::new(10_000, 6.0, 3.0, 100, 2024)).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["cc", "assort", "degeneracy", "lcc_size", "lcc_diam"] {
        let m = cmp.get(name).unwrap();
        pass &= m.z < MAX_Z;
        parts.push(format!("{name} z={:.2}", m.z));
    }
    Outcome::new(pass, parts.join(", "))
}

fn radial_and_angular_ks(positions: &[PolarPoint], alpha: f64, radius: f64) -> (f64, f64) {
    let r: Vec<f64> = positions.iter().map(|p| p.r).collect();
    let phi: Vec<f64> = positions.iter().map(|p| p.phi).collect();
    let kr = ks_test(&r, |x| radial_cdf(alpha, radius, x));
    let kp = ks_test(&phi, |x| (x / TAU).clamp(0.0, 1.0));
    (kr.p_value, kp.p_value)
}

fn audit_pairs(graph: &Graph, rng: &mut ChaCha8Rng, pairs: usize) -> usize {
    let adj = graph.adjacency();
    let coords = graph.coords();
    let n = graph.n();
    let mut bad = 0;
    for _ in 0..pairs {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let close = hyperbolic_distance(coords[u], coords[v]) <= graph.radius();
        bad += usize::from(close != adj.has_edge(u, v));
    }
    for &(u, v) in graph.edges().iter().take(pairs) {
        bad += usize::from(hyperbolic_distance(coords[u as usize], coords[v as usize]) > graph.radius());
    }
    bad
}

fn moving_graph(n: u64, seed: u64) -> (DynamicGraph, DiskParameters) {
    let p = params(n, 3.0, 6.0);
    let graph = HyperbolicGenerator::from_params(p, seed).run().unwrap().graph;
    let movement = MovementState::sample(n as usize, DEFAULT_TAU_PHI_RANGE, DEFAULT_TAU_R_RANGE, seed + 1).unwrap();
    (DynamicGraph::new(graph, p.alpha(), movement).unwrap(), p)
}

fn dynamic_consistency() -> Outcome {
    let mut pass = true;
    let mut worst_r = 1.0f64;
    let mut worst_phi = 1.0f64;
    let mut audit_errors = 0;
    let mut regen_mismatch = 0;

    let (mut dynamic, p) = moving_graph(10_000, 77);
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for step in 1..=100 {
        dynamic.move_step().unwrap();
        if step % 10 == 0 {
            let (pr, pp) = radial_and_angular_ks(dynamic.positions(), p.alpha(), p.radius());
            worst_r = worst_r.min(pr);
            worst_phi = worst_phi.min(pp);
            pass &= pr >= KS_SIGNIFICANCE && pp >= KS_SIGNIFICANCE;
            let current = dynamic.to_graph();
            audit_errors += audit_pairs(&current, &mut rng, 100_000);
            let regen = threshold_graph(dynamic.positions().to_vec(), p.radius(), &GeneratorConfig::default()).unwrap();
            regen_mismatch += usize::from(regen.sorted_edges() != current.sorted_edges());
        }
    }

    let (mut small, p_small) = moving_graph(2_000, 91);
    let mut exact_mismatch = 0;
    for step in 1..=100 {
        small.move_step().unwrap();
        if step % 10 == 0 {
            let oracle = generate_quadratic(small.positions(), p_small.radius()).unwrap();
            exact_mismatch += usize::from(oracle.sorted_edges() != small.edges());
        }
    }
    pass &= audit_errors == 0 && regen_mismatch == 0 && exact_mismatch == 0;
    Outcome::new(
        pass,
        format!(
            "min KS p radial {worst_r:.3} angular {worst_phi:.3}; audit errors {audit_errors}; \
             regeneration mismatches {regen_mismatch}/10 (n=1e4), {exact_mismatch}/10 vs reference (n=2000)"
        ),
    )
}

fn empirical_complexity() -> Outcome {
    let rows = bench_grid(&[10_000, 100_000, 1_000_000], &[2.0, 8.0, 32.0], 3.0, 5, 5, 1).unwrap();
    let fit = fit_complexity(&best_of_reps(&rows)).unwrap();
    let gap = fit.n_log_n_plus_m.r_squared - fit.quadratic.r_squared;

    let start = Instant::now();
    let g = HyperbolicGenerator::new(1_000_000, 3.0, RadiusSpec::AvgDegree(16.0), 6)
        .unwrap()
        .with_config(GeneratorConfig::with_threads(1))
        .run()
        .unwrap();
    let elapsed = start.elapsed();
    let pass = gap >= 0.05 && elapsed < Duration::from_secs(300);
    Outcome::new(
        pass,
        format!(
            "R² n log n + m {:.4}, quadratic {:.4}, gap {gap:.4}; n=1e6 k=16 single thread {:.1}s (m={})",
            fit.n_log_n_plus_m.r_squared,
            fit.quadratic.r_squared,
            elapsed.as_secs_f64(),
            g.graph.m()
        ),
    )
}

fn parallel_scaling() -> Outcome {
    let p = params(1_000_000, 3.0, 16.0);
    let run = |threads| {
        HyperbolicGenerator::from_params(p, 8)
            .with_config(GeneratorConfig::with_threads(threads))
            .run()
            .unwrap()
    };
    let one = run(1);
    let four = run(4);
    let speedup = one.timings.edges.as_secs_f64() / four.timings.edges.as_secs_f64();
    let identical = one.graph.edges() == four.graph.edges();
    let cores = std::thread::available_parallelism().map_or(1, |c| c.get());
    Outcome::new(
        identical && speedup >= 3.0,
        format!("edge phase speedup {speedup:.2}x with 4 threads ({cores} cores available); edge sets identical: {identical}"),
    )
}

fn incremental_advantage() -> Outcome {
    let p = params(100_000, 3.0, 8.0);
    let mut move_time = Duration::ZERO;
    let mut regen_time = Duration::ZERO;
    for run in 0..10 {
        let graph = HyperbolicGenerator::from_params(p, 100 + run).run().unwrap().graph;
        let movement = MovementState::with_default_ranges(graph.n(), 200 + run);
        let mut dynamic = DynamicGraph::new(graph, p.alpha(), movement)
            .unwrap()
            .with_move_fraction(0.05, 300 + run)
            .unwrap();
        let start = Instant::now();
        dynamic.move_step().unwrap();
        move_time += start.elapsed();

        let positions = dynamic.positions().to_vec();
        let start = Instant::now();
        let regen = threshold_graph(positions, p.radius(), &GeneratorConfig::default()).unwrap();
        regen_time += start.elapsed();
        assert_eq!(regen.m(), dynamic.m());
    }
    let ratio = move_time.as_secs_f64() / regen_time.as_secs_f64();
    Outcome::new(
        ratio < 1.0,
        format!(
            "moving 5%: {:.1} ms, regeneration: {:.1} ms, ratio {ratio:.3}",
            move_time.as_secs_f64() * 100.0,
            regen_time.as_secs_f64() * 100.0
        ),
    )
}

fn candidate_completeness(runner: &mut TestRunner, cases: &AtomicUsize) -> std::result::Result<(), String> {
    let strategy = (4.0..20.0f64, 0.0..1.0f64, 0.0..1.0f64, 0.0..TAU, any::<u64>());
    runner
        .run(&strategy, |(radius, rv, rc, phi, seed)| {
            cases.fetch_add(1, Ordering::Relaxed);
            let v = PolarPoint::new(phi, rv * radius);
            let c = rc * radius;
            let range = min_max_phi(v, c, radius).widened(1e-9, 1e-12);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..500 {
                let u = PolarPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(c..=radius));
                if hyperbolic_distance(u, v) <= radius {
                    prop_assert!(range.contains(u.phi), "missed {u:?} for {v:?}, c={c}");
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn slab_queries(runner: &mut TestRunner, cases: &AtomicUsize) -> std::result::Result<(), String> {
    let strategy = (1usize..3000, 0.55..2.0f64, 2.0..25.0f64, any::<u64>(), 0u8..4, 0.0..TAU, 0.0..3.5f64);
    runner
        .run(&strategy, |(n, alpha, radius, seed, kind, center, hw)| {
            cases.fetch_add(1, Ordering::Relaxed);
            let positions = generate_positions(n, alpha, radius, seed, 1);
            let boundaries = RadialBoundaries::compute(radius, n as u64, 0.9).unwrap();
            let index = SlabIndex::from_positions(&positions, boundaries.clone()).unwrap();
            let range = match kind {
                0 => AngularRange::FullCircle,
                1 => AngularRange::Empty,
                _ => AngularRange::Arc {
                    center,
                    half_width: hw.min(std::f64::consts::PI - 1e-9),
                },
            };
            let mut seen = vec![0u8; n];
            for slab in index.slabs() {
                for e in slab.entries() {
                    seen[e.id as usize] += 1;
                    prop_assert_eq!(boundaries.slab_of(e.point.r), slab.index());
                }
                let mut got: Vec<u32> = slab.candidates_in(range).map(|(id, _)| id).collect();
                got.sort_unstable();
                let want: Vec<u32> = positions
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| boundaries.slab_of(p.r) == slab.index() && range.contains(p.phi))
                    .map(|(i, _)| i as u32)
                    .collect();
                prop_assert_eq!(got, want);
            }
            prop_assert!(seen.iter().all(|&s| s == 1));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Brute-force metrics on an adjacency matrix.
fn brute_metrics(n: usize, matrix: &[Vec<bool>]) -> (f64, f64, usize, usize, usize) {
    let deg: Vec<usize> = matrix.iter().map(|row| row.iter().filter(|&&b| b).count()).collect();
    let mut cc_sum = 0.0;
    for v in 0..n {
        if deg[v] < 2 {
            continue;
        }
        let mut closed = 0;
        for a in 0..n {
            for b in a + 1..n {
                if matrix[v][a] && matrix[v][b] && matrix[a][b] {
                    closed += 1;
                }
            }
        }
        cc_sum += closed as f64 / (deg[v] * (deg[v] - 1) / 2) as f64;
    }
    let cc = if n == 0 { 0.0 } else { cc_sum / n as f64 };

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if matrix[u][v] {
                xs.push(deg[u] as f64);
                ys.push(deg[v] as f64);
            }
        }
    }
    let assort = if xs.is_empty() {
        f64::NAN
    } else {
        let mx = xs.iter().sum::<f64>() / xs.len() as f64;
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - mx)).sum();
        let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        if var < 1e-9 {
            1.0
        } else {
            cov / var
        }
    };

    // largest k with a nonempty k-core
    let mut degeneracy = 0;
    for k in 1..=n {
        let mut alive = vec![true; n];
        loop {
            let drop: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && (0..n).filter(|&w| alive[w] && matrix[v][w]).count() < k)
                .collect();
            if drop.is_empty() {
                break;
            }
            for v in drop {
                alive[v] = false;
            }
        }
        if alive.iter().any(|&a| a) {
            degeneracy = k;
        }
    }

    let inf = usize::MAX / 4;
    let mut dist = vec![vec![inf; n]; n];
    for u in 0..n {
        dist[u][u] = 0;
        for v in 0..n {
            if matrix[u][v] {
                dist[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    // components keyed by their smallest vertex; ties go to the smaller key
    let mut best: Option<(usize, usize)> = None;
    for root in 0..n {
        if (0..root).any(|u| dist[root][u] < inf) {
            continue;
        }
        let size = (0..n).filter(|&u| dist[root][u] < inf).count();
        if best.map_or(true, |(s, _)| size > s) {
            best = Some((size, root));
        }
    }
    let (lcc_size, lcc_diam) = match best {
        None => (0, 0),
        Some((size, root)) => {
            let members: Vec<usize> = (0..n).filter(|&u| dist[root][u] < inf).collect();
            let diam = members
                .iter()
                .flat_map(|&a| members.iter().map(move |&b| (a, b)))
                .map(|(a, b)| dist[a][b])
                .max()
                .unwrap_or(0);
            (size, diam)
        }
    };
    (cc, assort, degeneracy, lcc_size, lcc_diam)
}

fn metric_exactness(runner: &mut TestRunner, cases: &AtomicUsize) -> std::result::Result<(), String> {
    let strategy = (0usize..=50, 0.0..0.4f64, any::<u64>());
    runner
        .run(&strategy, |(n, density, seed)| {
            cases.fetch_add(1, Ordering::Relaxed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut matrix = vec![vec![false; n]; n];
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        matrix[u][v] = true;
                        matrix[v][u] = true;
                        edges.push((u as u32, v as u32));
                    }
                }
            }
            let report = MetricReport::compute(&Adjacency::from_edges(n, &edges), DEFAULT_K_MIN);
            let (cc, assort, degeneracy, lcc_size, lcc_diam) = brute_metrics(n, &matrix);
            prop_assert!((report.cc - cc).abs() < 1e-12);
            if assort.is_nan() {
                prop_assert!(report.assort.is_nan());
            } else {
                prop_assert!((report.assort - assort).abs() < 1e-9, "{} vs {}", report.assort, assort);
            }
            prop_assert_eq!(report.degeneracy, degeneracy);
            prop_assert_eq!(report.lcc_size, lcc_size);
            prop_assert_eq!(report.lcc_diam, lcc_diam);
            Ok::<(), TestCaseError>(())
        })
        .map_err(|e| e.to_string())
}

fn property_suites() -> Outcome {
    type Suite = fn(&mut TestRunner, &AtomicUsize) -> std::result::Result<(), String>;
    let suites: [(&str, Suite); 3] = [
        ("candidate ranges", candidate_completeness),
        ("slab queries", slab_queries),
        ("metrics", metric_exactness),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, suite) in suites {
        let mut runner = TestRunner::new(Config {
            cases: 256,
            failure_persistence: None,
            ..Config::default()
        });
        let cases = AtomicUsize::new(0);
        let result = suite(&mut runner, &cases);
        let cases = cases.into_inner();
        pass &= result.is_ok() && cases > 0;
        parts.push(match result {
            Ok(()) => format!("{name} ok ({cases} cases)"),
            Err(e) => format!("{name} failed: {e}"),
        });
    }
    Outcome::new(pass, parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 degree calibration", calibration),
        ("3 degree exponent", degree_exponent),
        ("4 ensemble match", distributional_match),
        ("5 dynamic consistency", dynamic_consistency),
        ("6 empirical complexity", empirical_complexity),
        ("7 parallel scaling", parallel_scaling),
        ("8 incremental update", incremental_advantage),
        ("9 property suites", property_suites),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout();
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        failed += usize::from(!outcome.pass);
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict} criterion {name} [{:.1}s]: {}", start.elapsed().as_secs_f64(), outcome.detail);
        let _ = out.flush();
    }
    let _ = writeln!(out, "acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
