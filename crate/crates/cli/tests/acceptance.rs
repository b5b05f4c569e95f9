//! Acceptance criteria, one line of output per criterion.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use permderiv::bounds::{dk_gr_norm_exact, dkper_norm_bound, gr_perturb_bound, gr_perturb_bound_weak, per_perturb_bound};
use permderiv::charpoly::{charpoly_all, dk_gr, g_r};
use permderiv::derivatives::{dkper, dper_forms, Formula};
use permderiv::multiindex::factorial;
use permderiv::oracle::{faddeev_leverrier, finite_diff, mixed_partial_interp, Functional};
use permderiv::random::{self, TestRng};
use permderiv::scalar::{relative_deviation, Scalar};
use permderiv::{per, ComplexMatrix, GaussianInt, GaussianMatrix, Result};

type Outcome = Result<(bool, String)>;

fn max_pairwise(values: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            worst = worst.max(relative_deviation(&values[i], &values[j]));
        }
    }
    worst
}

fn complex_dirs(rng: &mut TestRng, n: usize, k: usize) -> Vec<ComplexMatrix> {
    (0..k).map(|_| random::complex_gaussian(rng, n)).collect()
}

fn int_dirs(rng: &mut TestRng, n: usize, k: usize) -> Vec<GaussianMatrix> {
    (0..k).map(|_| random::gaussian_int(rng, n, 3)).collect()
}

fn unit_dirs(rng: &mut TestRng, n: usize, k: usize, draw: usize) -> Result<Vec<ComplexMatrix>> {
    (0..k).map(|_| random::unit_direction(rng, n, draw)).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(1001);
    let mut worst = 0.0f64;
    let mut evaluations = 0;
    for i in 0..200 {
        let n = 2 + i % 5;
        let a = random::complex_gaussian(&mut rng, n);
        for k in 1..=n {
            let dirs = complex_dirs(&mut rng, n, k);
            let vals = Formula::ALL
                .iter()
                .map(|&f| dkper(&a, &dirs, f))
                .collect::<Result<Vec<_>>>()?;
            worst = worst.max(max_pairwise(&vals));
            evaluations += 1;
        }
    }
    let mut exact_mismatches = 0;
    let mut exact_cases = 0;
    for i in 0..60 {
        let n = 1 + i % 5;
        let a = random::gaussian_int(&mut rng, n, 3);
        for k in 1..=n.min(3) {
            let dirs = int_dirs(&mut rng, n, k);
            let oracle = mixed_partial_interp(Functional::Permanent, &a, &dirs)?;
            for f in Formula::ALL {
                exact_cases += 1;
                if dkper(&a, &dirs, f)? != oracle {
                    exact_mismatches += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        worst <= 1e-10 && exact_mismatches == 0 && secs <= 60.0,
        format!(
            "{evaluations} floating cases, max pairwise deviation {worst:.3e}; \
             {exact_cases} exact oracle comparisons, {exact_mismatches} mismatches; {secs:.2}s"
        ),
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = random::rng(1002);
    let mut failures = 0;
    let zero = GaussianInt::from_i64(0);
    for i in 0..50 {
        let n = 1 + i % 5;
        let a = random::gaussian_int(&mut rng, n, 4);
        let x = random::gaussian_int(&mut rng, n, 4);
        let expected = GaussianInt::from_u64(factorial(n)) * per(&x)?;
        for f in Formula::ALL {
            if dkper(&a, &vec![x.clone(); n], f)? != expected {
                failures += 1;
            }
            for extra in 1..=2 {
                if dkper(&a, &vec![x.clone(); n + extra], f)? != zero {
                    failures += 1;
                }
            }
        }
    }
    Ok((failures == 0, format!("50 integer instances, {failures} failures")))
}

fn criterion_3() -> Outcome {
    let mut rng = random::rng(1003);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let n = 1 + i % 7;
        let a = random::complex_gaussian(&mut rng, n);
        let x = random::complex_gaussian(&mut rng, n);
        worst = worst.max(max_pairwise(&dper_forms(&a, &x)?));
    }
    Ok((worst <= 1e-12, format!("200 instances, max deviation {worst:.3e}")))
}

fn criterion_4() -> Outcome {
    let mut rng = random::rng(1004);
    let mut worst_ratio = 0.0f64;
    let mut samples = 0;
    for n in 1..=5 {
        let a = random::complex_gaussian(&mut rng, n);
        for k in 1..=n {
            let bound = dkper_norm_bound(&a, k)?;
            if let Some(w) = &bound.witness {
                worst_ratio = worst_ratio.max(w.attained / bound.value);
            }
            for draw in 0..500 {
                let dirs = unit_dirs(&mut rng, n, k, draw)?;
                let v = dkper(&a, &dirs, Formula::Minors)?.norm();
                worst_ratio = worst_ratio.max(v / bound.value);
                samples += 1;
            }
        }
    }
    let mut worst_gap = 0.0f64;
    for n in 1..=6 {
        let id = ComplexMatrix::identity(n);
        for x in [0.1, 0.5, 1.0, 2.0] {
            let rep = per_perturb_bound(&id, &id.scale(&Complex64::new(x, 0.0)))?;
            let lhs = rep.witness.as_ref().map_or(f64::NAN, |w| w.attained);
            worst_gap = worst_gap.max((lhs - rep.value).abs() / rep.value.max(1.0));
        }
    }
    Ok((
        worst_ratio <= 1.0 + 1e-12 && worst_gap <= 1e-12,
        format!("{samples} samples, max |D^k per|/bound {worst_ratio:.6}; tightness gap {worst_gap:.3e}"),
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = random::rng(1005);
    let mut worst = 0.0f64;
    let mut cases = 0;
    while cases < 200 {
        let n = 1 + cases % 5;
        let r = 1 + (cases / 5) % n;
        let k = 1 + (cases / 25) % r;
        let a = random::complex_gaussian(&mut rng, n);
        let dirs = complex_dirs(&mut rng, n, k);
        let vals = Formula::ALL
            .iter()
            .map(|&f| dk_gr(&a, &dirs, r, f))
            .collect::<Result<Vec<_>>>()?;
        worst = worst.max(max_pairwise(&vals));
        cases += 1;
    }
    let mut mismatches = 0;
    for i in 0..50 {
        let n = 1 + i % 4;
        let r = 1 + (i / 4) % n;
        let k = 1 + (i / 8) % r;
        let a = random::gaussian_int(&mut rng, n, 3);
        let dirs = int_dirs(&mut rng, n, k);
        let oracle = mixed_partial_interp(Functional::CharCoefficient(r), &a, &dirs)?;
        for f in Formula::ALL {
            if dk_gr(&a, &dirs, r, f)? != oracle {
                mismatches += 1;
            }
        }
    }
    Ok((
        worst <= 1e-10 && mismatches == 0,
        format!("200 floating cases, max deviation {worst:.3e}; 50 exact oracle cases, {mismatches} mismatches"),
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = random::rng(1006);
    let mut worst = 0.0f64;
    for i in 0..40 {
        let n = 1 + i % 8;
        let a = random::complex_gaussian(&mut rng, n);
        let g = charpoly_all(&a)?.g;
        worst = worst.max(relative_deviation(&g[0], &a.trace()));
        worst = worst.max(relative_deviation(&g[n - 1], &Complex64::determinant(&a)));
        for (x, y) in g.iter().zip(&faddeev_leverrier(&a)?.g) {
            worst = worst.max(relative_deviation(x, y));
        }
    }
    Ok((worst <= 1e-9, format!("40 instances n<=8, max deviation {worst:.3e}")))
}

/// Largest sampled `|D^k g_r(A)|` over the witness and `draws` random unit tuples.
fn sampled_sup(rng: &mut TestRng, a: &ComplexMatrix, k: usize, r: usize, draws: usize) -> Result<(f64, f64)> {
    let rep = dk_gr_norm_exact(a, k, r)?;
    let mut sup = rep.witness.as_ref().map_or(0.0, |w| w.attained);
    for draw in 0..draws {
        let dirs = unit_dirs(rng, a.rows(), k, draw)?;
        sup = sup.max(dk_gr(a, &dirs, r, Formula::Columns)?.norm());
    }
    Ok((sup, rep.value))
}

fn criterion_7() -> Outcome {
    let mut rng = random::rng(1007);
    let mut worst_excess = 0.0f64;
    let mut general = Vec::new();
    for n in [3usize, 4] {
        let a = random::complex_gaussian(&mut rng, n);
        for r in 1..=n {
            for k in 1..=r {
                let (sup, value) = sampled_sup(&mut rng, &a, k, r, 2000)?;
                worst_excess = worst_excess.max(sup / value);
                if k == 1 {
                    general.push(sup / value);
                }
            }
        }
    }
    let mut worst_attainment = f64::INFINITY;
    for n in 2..=5 {
        let d: Vec<Complex64> = (0..n).map(|i| Complex64::new(0.25 + i as f64 * 0.8, 0.0)).collect();
        let a = ComplexMatrix::diagonal(&d);
        for r in 1..=n {
            let (sup, value) = sampled_sup(&mut rng, &a, 1, r, 2000)?;
            worst_excess = worst_excess.max(sup / value);
            worst_attainment = worst_attainment.min(sup / value);
        }
    }
    let identity = dk_gr_norm_exact(&ComplexMatrix::identity(3), 1, 2)?.value;
    let general_min = general.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((
        worst_excess <= 1.0 + 1e-12 && worst_attainment >= 0.9 && identity == 6.0,
        format!(
            "max sup/value {worst_excess:.6}; diagonal attainment >= {worst_attainment:.6}; \
             I_3 r=2 k=1 value {identity}; non-diagonal k=1 attainment >= {general_min:.3} (reported)"
        ),
    ))
}

fn criterion_8() -> Outcome {
    let mut worst_gap = 0.0f64;
    for n in 1..=6 {
        let id = ComplexMatrix::identity(n);
        for x in [0.1, 0.5, 1.0, 2.0] {
            let xi = id.scale(&Complex64::new(x, 0.0));
            for r in 1..=n {
                let rhs = gr_perturb_bound(&id, &xi, r)?.value;
                let lhs = (g_r(&id.add(&xi)?, r)? - g_r(&id, r)?).norm();
                worst_gap = worst_gap.max((lhs - rhs).abs() / rhs.max(1.0));
            }
        }
    }
    let mut rng = random::rng(1008);
    let mut violations = 0;
    for i in 0..200 {
        let n = 1 + i % 6;
        let r = 1 + (i / 6) % n;
        let a = random::complex_gaussian(&mut rng, n);
        let x = random::complex_gaussian(&mut rng, n);
        let sharp = gr_perturb_bound(&a, &x, r)?.value;
        let weak = gr_perturb_bound_weak(&a, &x, r)?.value;
        if weak < sharp * (1.0 - 1e-12) {
            violations += 1;
        }
    }
    Ok((
        worst_gap <= 1e-12 && violations == 0,
        format!("tightness gap {worst_gap:.3e}; weak below sharp in {violations}/200"),
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = random::rng(1009);
    let mut worst = 0.0f64;
    let mut ratios = Vec::new();
    for i in 0..20 {
        let n = 2 + i % 4;
        let a = random::unit_norm(&mut rng, n)?;
        let x = random::unit_norm(&mut rng, n)?;
        let mut targets = vec![(Functional::Permanent, dper_forms(&a, &x)?[0])];
        for r in 1..=n {
            targets.push((Functional::CharCoefficient(r), dk_gr(&a, std::slice::from_ref(&x), r, Formula::Columns)?));
        }
        for (phi, exact) in targets {
            let fd = finite_diff(phi, &a, &x, 1e-5)?;
            worst = worst.max(relative_deviation(&fd, &exact));
            if phi.degree(n) >= 3 {
                let e1 = (finite_diff(phi, &a, &x, 1e-2)? - exact).norm();
                let e2 = (finite_diff(phi, &a, &x, 5e-3)? - exact).norm();
                if e2 > 1e-12 {
                    ratios.push(e1 / e2);
                }
            }
        }
    }
    ratios.sort_by(f64::total_cmp);
    let median = ratios[ratios.len() / 2];
    let (lo, hi) = (ratios[0], ratios[ratios.len() - 1]);
    Ok((
        worst <= 1e-6 && (3.5..=4.5).contains(&median),
        format!(
            "max relative error at h=1e-5 {worst:.3e}; error ratio under h-halving median {median:.3} \
             (range {lo:.3}..{hi:.3}, {} cases)",
            ratios.len()
        ),
    ))
}

fn run_verify(threads: &str) -> std::io::Result<(Vec<u8>, Option<i32>)> {
    let out = Command::new(env!("CARGO_BIN_EXE_permderiv"))
        .args(["verify", "--seed", "7"])
        .env("PERMDERIV_THREADS", threads)
        .output()?;
    Ok((out.stdout, out.status.code()))
}

fn passed_flags(report: &[u8]) -> Vec<String> {
    let s = String::from_utf8_lossy(report);
    s.match_indices("\"passed\":")
        .map(|(i, _)| s[i..].chars().skip(9).take_while(|c| c.is_alphabetic()).collect())
        .collect()
}

fn criterion_10() -> Outcome {
    let io = |e: std::io::Error| permderiv::Error::Threads(e.to_string());
    let (first, c1) = run_verify("0").map_err(io)?;
    let (second, c2) = run_verify("0").map_err(io)?;
    let (threaded, c3) = run_verify("4").map_err(io)?;
    let identical = first == second && !first.is_empty() && c1 == c2;
    let same_verdicts = passed_flags(&first) == passed_flags(&threaded) && c1 == c3;
    Ok((
        identical && same_verdicts && c1 == Some(0),
        format!(
            "sequential runs byte-identical: {identical}; threaded pass/fail identical: {same_verdicts}; \
             threaded bytes identical: {}",
            first == threaded
        ),
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("cross-formula identity, permanent", criterion_1),
        ("degenerate identities", criterion_2),
        ("first-derivative forms", criterion_3),
        ("norm-bound soundness and tightness", criterion_4),
        ("cross-formula identity, g_r", criterion_5),
        ("g_r sanity", criterion_6),
        ("exact norm of D^k g_r", criterion_7),
        ("g_r perturbation tightness and weak bound", criterion_8),
        ("numerical differentiation", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!("[{}] {}. {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
