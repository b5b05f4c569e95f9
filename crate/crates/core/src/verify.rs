//! A seeded battery of identities and bounds, run at one matrix order.
//!
//! Each check draws from its own generator, derived from the suite seed and
//! the check's position, so adding or removing a check leaves the others'
//! instances unchanged. Reports depend only on the configuration.

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{dk_gr_norm_exact, dkper_norm_bound, gr_perturb_bound, gr_perturb_bound_weak, per_perturb_bound};
use crate::charpoly::{charpoly_all, dk_gr};
use crate::derivatives::{dkper, dper_forms, Formula};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, GaussianMatrix};
use crate::multiindex::factorial;
use crate::oracle::{faddeev_leverrier, finite_diff, mixed_partial_interp, Functional};
use crate::permanent::per;
use crate::random::{self, TestRng};
use crate::scalar::{relative_deviation, GaussianInt, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MAX_VERIFY_ORDER: usize = 8;

/// Slack allowed when a sampled value is compared against an upper bound.
pub const BOUND_SLACK: f64 = 1e-12;
pub const FINITE_DIFF_STEP: f64 = 1e-5;
pub const FINITE_DIFF_TOLERANCE: f64 = 1e-6;

const EXACT_MAX_ORDER: usize = 5;
const EXACT_MAX_K: usize = 3;
const EXACT_GR_MAX_ORDER: usize = 4;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub kmax: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl VerifyConfig {
    pub fn new(n: usize, kmax: usize, seed: u64) -> Self {
        VerifyConfig {
            n,
            kmax,
            seed,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_VERIFY_ORDER {
            return Err(Error::OutOfRange(format!("n={} outside 1..={MAX_VERIFY_ORDER}", self.n)));
        }
        if self.kmax == 0 || self.kmax > self.n {
            return Err(Error::OutOfRange(format!("kmax={} outside 1..={}", self.kmax, self.n)));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::OutOfRange(format!("tolerance {} is not positive", self.tolerance)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Largest deviation seen; for bound checks, the largest relative excess
    /// of a sampled value over its bound (negative when all are below).
    pub max_deviation: f64,
    pub tolerance: f64,
    pub cases: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub n: usize,
    pub kmax: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<CheckResult>,
}

struct Tally {
    worst: f64,
    cases: usize,
    failed: bool,
}

impl Tally {
    fn new() -> Self {
        Tally {
            worst: f64::NEG_INFINITY,
            cases: 0,
            failed: false,
        }
    }

    fn deviation(&mut self, d: f64, tol: f64) {
        self.cases += 1;
        self.worst = self.worst.max(d);
        if d.is_nan() || d > tol {
            self.failed = true;
        }
    }

    fn exact<T: PartialEq>(&mut self, a: &T, b: &T) {
        self.cases += 1;
        let d = if a == b { 0.0 } else { 1.0 };
        self.worst = self.worst.max(d);
        if a != b {
            self.failed = true;
        }
    }

    fn finish(self, name: &'static str, tolerance: f64) -> CheckResult {
        CheckResult {
            name,
            passed: !self.failed,
            max_deviation: if self.cases == 0 { 0.0 } else { self.worst },
            tolerance,
            cases: self.cases,
        }
    }
}

fn check_rng(seed: u64, index: u64) -> TestRng {
    random::rng(seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Relative excess of `sampled` over `bound`.
fn excess(sampled: f64, bound: f64) -> f64 {
    (sampled - bound) / bound.max(1.0)
}

pub fn run_suite(config: &VerifyConfig) -> Result<VerifyReport> {
    config.validate()?;
    type Check = fn(&VerifyConfig, &mut TestRng) -> Result<CheckResult>;
    let checks: [Check; 12] = [
        perm_cross_formula,
        perm_oracle_exact,
        perm_degenerate,
        jacobi_analogue,
        perm_symmetry_multilinearity,
        gr_cross_formula,
        gr_oracle_exact,
        gr_sanity,
        dkper_bound_soundness,
        gr_exact_norm,
        perturbation_bounds,
        finite_differences,
    ];
    let results = checks
        .iter()
        .enumerate()
        .map(|(i, check)| check(config, &mut check_rng(config.seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        passed: results.iter().all(|c| c.passed),
        n: config.n,
        kmax: config.kmax,
        seed: config.seed,
        tolerance: config.tolerance,
        checks: results,
    })
}

fn directions(rng: &mut TestRng, n: usize, k: usize) -> Vec<ComplexMatrix> {
    (0..k).map(|_| random::complex_gaussian(rng, n)).collect()
}

fn int_directions(rng: &mut TestRng, n: usize, k: usize) -> Vec<GaussianMatrix> {
    (0..k).map(|_| random::gaussian_int(rng, n, 3)).collect()
}

fn max_pairwise(values: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            worst = worst.max(relative_deviation(&values[i], &values[j]));
        }
    }
    worst
}

fn perm_cross_formula(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    for _ in 0..3 {
        let a = random::complex_gaussian(rng, c.n);
        for k in 1..=c.kmax {
            let dirs = directions(rng, c.n, k);
            let vals = Formula::ALL
                .iter()
                .map(|&f| dkper(&a, &dirs, f))
                .collect::<Result<Vec<_>>>()?;
            t.deviation(max_pairwise(&vals), c.tolerance);
        }
    }
    Ok(t.finish("perm_cross_formula", c.tolerance))
}

fn perm_oracle_exact(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let n = c.n.min(EXACT_MAX_ORDER);
    let mut t = Tally::new();
    for _ in 0..2 {
        let a = random::gaussian_int(rng, n, 3);
        for k in 1..=c.kmax.min(EXACT_MAX_K).min(n) {
            let dirs = int_directions(rng, n, k);
            let oracle = mixed_partial_interp(Functional::Permanent, &a, &dirs)?;
            for f in Formula::ALL {
                t.exact(&dkper(&a, &dirs, f)?, &oracle);
            }
        }
    }
    Ok(t.finish("perm_oracle_exact", 0.0))
}

fn perm_degenerate(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let n = c.n.min(EXACT_MAX_ORDER);
    let mut t = Tally::new();
    for _ in 0..3 {
        let a = random::gaussian_int(rng, n, 3);
        let x = random::gaussian_int(rng, n, 3);
        let expected = GaussianInt::from_u64(factorial(n)) * per(&x)?;
        for f in Formula::ALL {
            t.exact(&dkper(&a, &vec![x.clone(); n], f)?, &expected);
            for extra in 1..=2 {
                t.exact(&dkper(&a, &vec![x.clone(); n + extra], f)?, &GaussianInt::from_i64(0));
            }
        }
    }
    Ok(t.finish("perm_degenerate", 0.0))
}

fn jacobi_analogue(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    for _ in 0..5 {
        let a = random::complex_gaussian(rng, c.n);
        let x = random::complex_gaussian(rng, c.n);
        t.deviation(max_pairwise(&dper_forms(&a, &x)?), c.tolerance);
    }
    Ok(t.finish("jacobi_analogue", c.tolerance))
}

fn perm_symmetry_multilinearity(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    let k = c.kmax.min(3);
    let a = random::complex_gaussian(rng, c.n);
    let dirs = directions(rng, c.n, k);
    let base = dkper(&a, &dirs, Formula::Minors)?;
    let mut reversed = dirs.clone();
    reversed.reverse();
    t.deviation(relative_deviation(&dkper(&a, &reversed, Formula::Minors)?, &base), c.tolerance);

    let y = random::complex_gaussian(rng, c.n);
    let s = Complex64::new(0.75, -1.5);
    let mut mixed = dirs.clone();
    mixed[0] = dirs[0].add_scaled(&s, &y)?;
    let mut only_y = dirs.clone();
    only_y[0] = y;
    let lhs = dkper(&a, &mixed, Formula::Minors)?;
    let rhs = base + s * dkper(&a, &only_y, Formula::Minors)?;
    t.deviation(relative_deviation(&lhs, &rhs), c.tolerance);
    Ok(t.finish("perm_symmetry_multilinearity", c.tolerance))
}

fn gr_cross_formula(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    let a = random::complex_gaussian(rng, c.n);
    for r in 1..=c.n {
        for k in 1..=c.kmax.min(r) {
            let dirs = directions(rng, c.n, k);
            let vals = Formula::ALL
                .iter()
                .map(|&f| dk_gr(&a, &dirs, r, f))
                .collect::<Result<Vec<_>>>()?;
            t.deviation(max_pairwise(&vals), c.tolerance);
        }
    }
    Ok(t.finish("gr_cross_formula", c.tolerance))
}

fn gr_oracle_exact(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let n = c.n.min(EXACT_GR_MAX_ORDER);
    let mut t = Tally::new();
    let a = random::gaussian_int(rng, n, 3);
    for r in 1..=n {
        for k in 1..=c.kmax.min(r).min(EXACT_MAX_K) {
            let dirs = int_directions(rng, n, k);
            let oracle = mixed_partial_interp(Functional::CharCoefficient(r), &a, &dirs)?;
            for f in Formula::ALL {
                t.exact(&dk_gr(&a, &dirs, r, f)?, &oracle);
            }
        }
    }
    Ok(t.finish("gr_oracle_exact", 0.0))
}

fn gr_sanity(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let tol = 1e-9;
    let mut t = Tally::new();
    for _ in 0..3 {
        let a = random::complex_gaussian(rng, c.n);
        let g = charpoly_all(&a)?.g;
        t.deviation(relative_deviation(&g[0], &a.trace()), tol);
        t.deviation(relative_deviation(&g[c.n - 1], &Complex64::determinant(&a)), tol);
        let fl = faddeev_leverrier(&a)?.g;
        for (x, y) in g.iter().zip(&fl) {
            t.deviation(relative_deviation(x, y), tol);
        }
    }
    Ok(t.finish("gr_sanity", tol))
}

fn dkper_bound_soundness(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    let a = random::complex_gaussian(rng, c.n);
    for k in 1..=c.kmax {
        let bound = dkper_norm_bound(&a, k)?;
        if let Some(w) = &bound.witness {
            t.deviation(excess(w.attained, bound.value), BOUND_SLACK);
        }
        for draw in 0..10 {
            let dirs = (0..k)
                .map(|_| random::unit_direction(rng, c.n, draw))
                .collect::<Result<Vec<_>>>()?;
            let v = dkper(&a, &dirs, Formula::Minors)?.norm();
            t.deviation(excess(v, bound.value), BOUND_SLACK);
        }
    }
    Ok(t.finish("dkper_bound_soundness", BOUND_SLACK))
}

fn gr_exact_norm(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    let a = random::complex_gaussian(rng, c.n);
    for r in 1..=c.n {
        for k in 1..=c.kmax.min(r) {
            let rep = dk_gr_norm_exact(&a, k, r)?;
            if let Some(w) = &rep.witness {
                t.deviation(excess(w.attained, rep.value), BOUND_SLACK);
            }
            for draw in 0..5 {
                let dirs = (0..k)
                    .map(|_| random::unit_direction(rng, c.n, draw))
                    .collect::<Result<Vec<_>>>()?;
                let v = dk_gr(&a, &dirs, r, Formula::Columns)?.norm();
                t.deviation(excess(v, rep.value), BOUND_SLACK);
            }
        }
    }
    Ok(t.finish("gr_exact_norm", BOUND_SLACK))
}

fn perturbation_bounds(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    // tightness at A = I, X = xI, recorded as a relative gap
    let id = ComplexMatrix::identity(c.n);
    for x in [0.1, 0.5, 1.0, 2.0] {
        let xi = id.scale(&Complex64::new(x, 0.0));
        let rep = per_perturb_bound(&id, &xi)?;
        let attained = rep.witness.as_ref().map_or(f64::NAN, |w| w.attained);
        t.deviation((attained - rep.value).abs() / rep.value.max(1.0), BOUND_SLACK);
        for r in 1..=c.n {
            let rep = gr_perturb_bound(&id, &xi, r)?;
            let attained = rep.witness.as_ref().map_or(f64::NAN, |w| w.attained);
            t.deviation((attained - rep.value).abs() / rep.value.max(1.0), BOUND_SLACK);
        }
    }
    // soundness and dominance on random pairs
    for _ in 0..3 {
        let a = random::complex_gaussian(rng, c.n);
        let x = random::complex_gaussian(rng, c.n).scale(&Complex64::new(0.5, 0.0));
        let rep = per_perturb_bound(&a, &x)?;
        t.deviation(excess(rep.witness.as_ref().map_or(f64::NAN, |w| w.attained), rep.value), BOUND_SLACK);
        for r in 1..=c.n {
            let sharp = gr_perturb_bound(&a, &x, r)?;
            let weak = gr_perturb_bound_weak(&a, &x, r)?;
            let attained = sharp.witness.as_ref().map_or(f64::NAN, |w| w.attained);
            t.deviation(excess(attained, sharp.value), BOUND_SLACK);
            t.deviation(excess(sharp.value, weak.value), BOUND_SLACK);
        }
    }
    Ok(t.finish("perturbation_bounds", BOUND_SLACK))
}

fn finite_differences(c: &VerifyConfig, rng: &mut TestRng) -> Result<CheckResult> {
    let mut t = Tally::new();
    let a = random::unit_norm(rng, c.n)?;
    let x = random::unit_norm(rng, c.n)?;
    let exact = dper_forms(&a, &x)?[0];
    let fd = finite_diff(Functional::Permanent, &a, &x, FINITE_DIFF_STEP)?;
    t.deviation(relative_deviation(&fd, &exact), FINITE_DIFF_TOLERANCE);
    for r in 1..=c.n {
        let exact = dk_gr(&a, std::slice::from_ref(&x), r, Formula::Columns)?;
        let fd = finite_diff(Functional::CharCoefficient(r), &a, &x, FINITE_DIFF_STEP)?;
        t.deviation(relative_deviation(&fd, &exact), FINITE_DIFF_TOLERANCE);
    }
    Ok(t.finish("finite_differences", FINITE_DIFF_TOLERANCE))
}
