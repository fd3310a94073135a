//! Seeded identity-verification suites.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::bd::interior_triples;
use crate::error::{Error, Result};
use crate::flags::{double_ratio, triple_ratio, Flag};
use crate::hyperbolic::{cross_ratio, ProjPoint};
use crate::multilinear::{
    compare_band, compare_rhombus, format_f64, ClosedFormCheck, Field, ScalarMode,
};
use crate::sampling::{
    clockwise_triple, counterclockwise_quadruple, rng_from_seed, separated_clockwise_triple,
    separated_counterclockwise_quadruple,
};
use crate::veronese::veronese_flag;

pub const SUITES: [&str; 4] = ["triple-ratio", "double-ratio", "rhombus", "band"];

/// Minimum angular gap between sampled points in float mode.
pub const FLOAT_MIN_GAP: f64 = 0.25;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub worst_deviation: f64,
    /// Reported but never fails the suite.
    pub informational: bool,
}

impl CheckResult {
    fn new(name: String, informational: bool) -> Self {
        CheckResult { name, cases: 0, failures: 0, worst_deviation: 0.0, informational }
    }

    fn record(&mut self, ok: bool, deviation: f64) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
        if deviation.is_nan() || deviation > self.worst_deviation {
            self.worst_deviation = deviation;
        }
    }

    pub fn passed(&self) -> bool {
        self.informational || self.failures == 0
    }

    pub fn line(&self) -> String {
        let status = if self.informational {
            "INFO"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        let label = if self.informational { "mismatches" } else { "failures" };
        format!(
            "{status} {}: cases={} {label}={} worst_deviation={}",
            self.name,
            self.cases,
            self.failures,
            format_f64(self.worst_deviation)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub mode: ScalarMode,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Parameters of a verification run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub mode: ScalarMode,
    /// Largest parameter of the closed-form determinant suites.
    pub max: i64,
    /// Relative tolerance in float mode.
    pub tol: f64,
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.samples == 0 {
        return Err(Error::OutOfRange("samples must be at least 1".into()));
    }
    let checks = match cfg.suite.as_str() {
        "triple-ratio" => triple_ratio_suite(cfg)?,
        "double-ratio" => double_ratio_suite(cfg)?,
        "rhombus" => closed_form_suite("rhombus", rhombus_cases(cfg.max)?)?,
        "band" => closed_form_suite("band", band_cases(cfg.max)?)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: cfg.suite.clone(),
        mode: cfg.mode,
        n: cfg.n,
        samples: cfg.samples,
        seed: cfg.seed,
        checks,
    })
}

fn unit_float(p: &ProjPoint<BigRational>) -> ProjPoint<f64> {
    let (a, b) = p.normalize_float();
    ProjPoint::new(a, b).expect("nonzero point")
}

fn flags_exact(pts: &[ProjPoint<BigRational>], n: usize) -> Result<Vec<Flag<BigRational>>> {
    pts.iter().map(|p| veronese_flag(p, n)).collect()
}

fn flags_float(pts: &[ProjPoint<BigRational>], n: usize) -> Result<Vec<Flag<f64>>> {
    pts.iter().map(|p| veronese_flag(&unit_float(p), n)).collect()
}

/// `T_pqr(ν(a), ν(b), ν(c)) = 1` for clockwise `(a, b, c)`.
fn triple_ratio_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = cfg.n;
    if n < 3 {
        return Err(Error::OutOfRange(format!("triple-ratio suite needs n >= 3, got {n}")));
    }
    let triples = interior_triples(n);
    let mut checks: Vec<CheckResult> = triples
        .iter()
        .map(|[p, q, r]| CheckResult::new(format!("n={n} T_{p}{q}{r} = 1"), false))
        .collect();
    let mut rng = rng_from_seed(cfg.seed);
    for _ in 0..cfg.samples {
        let pts = match cfg.mode {
            ScalarMode::Exact => clockwise_triple(&mut rng),
            ScalarMode::Float => separated_clockwise_triple(&mut rng, FLOAT_MIN_GAP),
        };
        match cfg.mode {
            ScalarMode::Exact => {
                let f = flags_exact(&pts, n)?;
                for (check, &[p, q, r]) in checks.iter_mut().zip(&triples) {
                    let t = triple_ratio(&f[0], &f[1], &f[2], p, q, r)?;
                    let one = BigRational::one();
                    check.record(t == one, (t - one).abs().to_f64());
                }
            }
            ScalarMode::Float => {
                let f = flags_float(&pts, n)?;
                for (check, &[p, q, r]) in checks.iter_mut().zip(&triples) {
                    let d = (triple_ratio(&f[0], &f[1], &f[2], p, q, r)? - 1.0).abs();
                    check.record(d <= cfg.tol, d);
                }
            }
        }
    }
    Ok(checks)
}

/// `D_p(ν(a), ν(c), ν(b), ν(d)) = −1/z(c, d, a, b)`.
fn double_ratio_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = cfg.n;
    if n < 2 {
        return Err(Error::OutOfRange(format!("double-ratio suite needs n >= 2, got {n}")));
    }
    let mut checks: Vec<CheckResult> =
        (1..n).map(|p| CheckResult::new(format!("n={n} D_{p} = -1/z"), false)).collect();
    let mut rng = rng_from_seed(cfg.seed);
    for _ in 0..cfg.samples {
        let pts = match cfg.mode {
            ScalarMode::Exact => counterclockwise_quadruple(&mut rng),
            ScalarMode::Float => separated_counterclockwise_quadruple(&mut rng, FLOAT_MIN_GAP),
        };
        let [a, b, c, d] = &pts;
        let z = cross_ratio(c, d, a, b)?;
        let target = -z.recip();
        match cfg.mode {
            ScalarMode::Exact => {
                let f = flags_exact(&pts, n)?;
                for (check, p) in checks.iter_mut().zip(1..) {
                    let v = double_ratio(&f[0], &f[2], &f[1], &f[3], p)?;
                    let dev = (&v - &target).abs().to_f64();
                    check.record(v == target, dev);
                }
            }
            ScalarMode::Float => {
                let f = flags_float(&pts, n)?;
                let t = target.to_f64();
                for (check, p) in checks.iter_mut().zip(1..) {
                    let v = double_ratio(&f[0], &f[2], &f[1], &f[3], p)?;
                    let dev = (v - t).abs() / t.abs();
                    check.record(dev <= cfg.tol, dev);
                }
            }
        }
    }
    Ok(checks)
}

fn check_max(max: i64) -> Result<()> {
    if !(0..=40).contains(&max) {
        return Err(Error::OutOfRange(format!("--max must lie in 0..=40, got {max}")));
    }
    Ok(())
}

/// Every `(n, k, l)` with `0 <= k <= n <= max`, `0 <= l <= max`.
pub fn rhombus_cases(max: i64) -> Result<Vec<ClosedFormCheck>> {
    check_max(max)?;
    let mut out = Vec::new();
    for n in 0..=max {
        for k in 0..=n {
            for l in 0..=max {
                out.push(compare_rhombus(n, k, l)?);
            }
        }
    }
    Ok(out)
}

/// Every `(p, q, r)` with `0 <= p, r <= max`, `1 <= q <= max`.
pub fn band_cases(max: i64) -> Result<Vec<ClosedFormCheck>> {
    check_max(max)?;
    let mut out = Vec::new();
    for p in 0..=max {
        for q in 1..=max.max(1) {
            for r in 0..=max {
                out.push(compare_band(p, q, r)?);
            }
        }
    }
    Ok(out)
}

/// `|formula| = |brute force|` must hold; sign agreement is informational.
fn closed_form_suite(name: &str, cases: Vec<ClosedFormCheck>) -> Result<Vec<CheckResult>> {
    let mut abs = CheckResult::new(format!("{name} |closed form| = |determinant|"), false);
    let mut sign = CheckResult::new(format!("{name} sign mismatches"), true);
    for c in &cases {
        let dev = (c.formula.abs().to_f64() - c.bruteforce.abs().to_f64()).abs();
        abs.record(c.abs_equal, dev);
        sign.record(c.sign_equal, 0.0);
    }
    Ok(vec![abs, sign])
}
