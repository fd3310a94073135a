//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::Instant;

use fuchsian_bd::bd::{
    bd_vector, closed_leaf_report, dimension_audit, random_slice_point, realize_slice,
    shearing_invariant, triangle_invariant, twist_residuals, Coord, VertexConvention,
};
use fuchsian_bd::cli::{run_suite, SuiteConfig};
use fuchsian_bd::multilinear::ScalarMode;
use fuchsian_bd::pants::{
    assemble_surface, develop_pants, end_sum, validate_shears, DevelopedSurface, PantsLamination,
    SurfaceSpec,
};
use fuchsian_bd::sampling::rng_from_seed;
use rand::Rng;

const TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(name: &str, n: usize, mode: ScalarMode, seed: u64) -> SuiteConfig {
    SuiteConfig { suite: name.into(), n, samples: 200, seed, mode, max: 10, tol: TOL }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut passed = true;
    let mut cases = 0;
    for n in 3..=8 {
        let r = run_suite(&suite("triple-ratio", n, ScalarMode::Exact, 1)).unwrap();
        passed &= r.passed() && r.checks.iter().all(|c| c.worst_deviation == 0.0 && c.cases == 200);
        cases += r.checks.iter().map(|c| c.cases).sum::<usize>();
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: passed && secs < 60.0,
        detail: format!("{cases} exact triple ratios equal to 1, n = 3..8, {secs:.1} s"),
    }
}

fn criterion_2() -> Outcome {
    let mut passed = true;
    let mut worst_float = 0.0f64;
    for n in 2..=8 {
        let exact = run_suite(&suite("double-ratio", n, ScalarMode::Exact, 2)).unwrap();
        passed &= exact.passed() && exact.checks.iter().all(|c| c.worst_deviation == 0.0);
        let float = run_suite(&suite("double-ratio", n, ScalarMode::Float, 2)).unwrap();
        passed &= float.passed();
        worst_float = float.checks.iter().map(|c| c.worst_deviation).fold(worst_float, f64::max);
    }
    Outcome {
        passed,
        detail: format!("D_p = -1/z exactly for n = 2..8; float worst relative error {worst_float:.3e}"),
    }
}

fn criterion_3() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for name in ["rhombus", "band"] {
        let r = run_suite(&suite(name, 3, ScalarMode::Exact, 0)).unwrap();
        passed &= r.checks[0].failures == 0;
        parts.push(format!(
            "{name}: {} cases, |·| equal, {} sign mismatches",
            r.checks[0].cases, r.checks[1].failures
        ));
    }
    Outcome { passed, detail: parts.join("; ") }
}

fn criterion_4() -> Outcome {
    let mut rng = rng_from_seed(4);
    let mut worst = 0.0f64;
    let mut runs = 0;
    for bits in 0..8u8 {
        let signs = [0, 1, 2].map(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
        let mut lams = vec![PantsLamination::type_i(signs)];
        for i in 0..3 {
            lams.push(PantsLamination::type_ii(i, signs).unwrap());
        }
        for lam in &lams {
            let mut accepted = 0;
            while accepted < 100 {
                let s = [0; 3].map(|_| rng.gen_range(-3.0..3.0));
                if !validate_shears(lam, &s) {
                    continue;
                }
                accepted += 1;
                let d = develop_pants(lam, &s).unwrap();
                for (b, bd) in d.boundaries.iter().enumerate() {
                    let signed = f64::from(signs[b]) * end_sum(lam, &s, b);
                    worst = worst.max((bd.length - signed).abs());
                }
            }
            runs += accepted;
        }
    }
    Outcome {
        passed: worst < TOL,
        detail: format!(
            "{runs} developed pants over 4 laminations x 8 sign patterns; worst |length - signed sum| {worst:.3e}"
        ),
    }
}

/// Random shears realizing random lengths, and random twists, alternating
/// between the two bundled genus-two surfaces.
fn random_assembly(seed: u64) -> DevelopedSurface {
    let spec = if seed.is_multiple_of(2) { SurfaceSpec::genus_two() } else { SurfaceSpec::genus_two_mixed() };
    let topo = spec.topology().unwrap();
    let mut rng = rng_from_seed(seed);
    let sp = random_slice_point(&mut rng, &topo);
    let twists: Vec<f64> = topo.curves.iter().map(|_| rng.gen_range(-1.5..1.5)).collect();
    assemble_surface(&topo, &sp.shears, &twists).unwrap()
}

fn criterion_5() -> Outcome {
    let (mut tau, mut spread, mut vs_two) = (0.0f64, 0.0f64, 0.0f64);
    for seed in 0..50 {
        let ds = random_assembly(seed);
        for n in 3..=5 {
            let v = bd_vector(&ds, n).unwrap();
            for triangle in 0..2 * ds.pants.len() {
                for v0 in 0..3 {
                    for &pqr in v.layout().triples() {
                        tau = tau.max(triangle_invariant(&ds, triangle, v0, pqr, n).unwrap().abs());
                    }
                }
            }
            for leaf in 0..v.layout().leaf_ids.len() {
                let classical = shearing_invariant(&ds, leaf, 1, 2).unwrap();
                let vals: Vec<f64> = (1..n).map(|p| v.get(&Coord::Sigma { leaf, p }).unwrap()).collect();
                spread = spread.max(range(&vals));
                vs_two = vals.iter().map(|s| (s - classical).abs()).fold(vs_two, f64::max);
            }
            for curve in 0..v.layout().curve_ids.len() {
                let vals: Vec<f64> = (1..n).map(|p| v.get(&Coord::Theta { curve, p }).unwrap()).collect();
                spread = spread.max(range(&vals));
            }
        }
    }
    Outcome {
        passed: tau < TOL && spread < TOL && vs_two < TOL,
        detail: format!(
            "50 assemblies, n = 3..5: max |tau| {tau:.3e}, max p-spread {spread:.3e}, max |sigma_p - shear| {vs_two:.3e}"
        ),
    }
}

fn range(v: &[f64]) -> f64 {
    let hi = v.iter().copied().fold(f64::MIN, f64::max);
    let lo = v.iter().copied().fold(f64::MAX, f64::min);
    hi - lo
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let mut entries = 0;
    for seed in 0..50 {
        let ds = random_assembly(seed);
        for n in 2..=5 {
            let v = bd_vector(&ds, n).unwrap();
            for conv in [VertexConvention::SpiralCorner, VertexConvention::Counterclockwise] {
                let r = closed_leaf_report(&v, &ds, conv).unwrap();
                entries += r.entries.len();
                worst = worst.max(r.max_spread());
            }
        }
    }
    Outcome {
        passed: worst < TOL,
        detail: format!("{entries} (curve, p) entries: max spread of l_p, R_p, L_p {worst:.3e}"),
    }
}

fn criterion_7() -> Outcome {
    let (mut dev, mut resid) = (0.0f64, 0.0f64);
    for seed in 0..50u64 {
        let spec = if seed.is_multiple_of(2) { SurfaceSpec::genus_two() } else { SurfaceSpec::genus_two_mixed() };
        let topo = spec.topology().unwrap();
        let sp = random_slice_point(&mut rng_from_seed(700 + seed), &topo);
        let ds = realize_slice(&sp, &topo).unwrap();
        resid = twist_residuals(&ds, &sp).unwrap().into_iter().fold(resid, f64::max);
        for n in 3..=5 {
            let v = bd_vector(&ds, n).unwrap();
            dev = dev.max(v.max_deviation(&sp.to_bd_vector(&topo, n).unwrap()).unwrap());
        }
    }
    Outcome {
        passed: dev < TOL && resid < TOL,
        detail: format!("50 slice points, n = 3..5: max deviation {dev:.3e}, max twist residual {resid:.3e}"),
    }
}

fn criterion_8() -> Outcome {
    let topo = SurfaceSpec::genus_two().topology().unwrap();
    let a = dimension_audit(&topo, 3, VertexConvention::default()).unwrap();
    let passed = a.coordinates == 22
        && a.closed_leaf_rank == 6
        && a.polytope_dimension == 16
        && a.slice_parameters == 9
        && a.slice_constraint_rank == 3
        && a.slice_dimension == 6;
    Outcome {
        passed,
        detail: format!(
            "N = {}, closed-leaf rank {}, polytope dim {}, slice {} - {} = {}",
            a.coordinates,
            a.closed_leaf_rank,
            a.polytope_dimension,
            a.slice_parameters,
            a.slice_constraint_rank,
            a.slice_dimension
        ),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("veronese triple ratios", criterion_1),
        ("veronese double ratios", criterion_2),
        ("binomial determinants", criterion_3),
        ("pants boundary lengths", criterion_4),
        ("fuchsian slice invariants", criterion_5),
        ("closed-leaf sums", criterion_6),
        ("slice round trip", criterion_7),
        ("dimension count", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {} ({name}): {}", i + 1, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
