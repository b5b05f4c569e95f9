use num_complex::Complex64;
use permderiv::charpoly::{dk_det, principal_restriction};
use permderiv::multiindex::enumerate_strict;
use permderiv::oracle::{finite_diff, mixed_partial_interp, Functional};
use permderiv::permanent::submatrix;
use permderiv::random;
use permderiv::scalar::{relative_deviation, sum_ordered};
use permderiv::{
    charpoly_all, dk_gr, dkper, dper, faddeev_leverrier, g_r, ComplexMatrix, DerivativeRequest, Formula,
    GaussianInt, GaussianMatrix, Scalar,
};

#[test]
fn permanent_formulas_match_interpolation_oracle() {
    let mut rng = random::rng(201);
    for n in 1..=5 {
        for k in 1..=3 {
            let a = random::gaussian_int(&mut rng, n, 3);
            let dirs: Vec<GaussianMatrix> = (0..k).map(|_| random::gaussian_int(&mut rng, n, 3)).collect();
            let oracle = mixed_partial_interp(Functional::Permanent, &a, &dirs).unwrap();
            for f in Formula::ALL {
                assert_eq!(dkper(&a, &dirs, f).unwrap(), oracle, "n={n} k={k} {f}");
            }
        }
    }
}

#[test]
fn coefficient_formulas_match_interpolation_oracle() {
    let mut rng = random::rng(202);
    for n in 1..=4 {
        for r in 1..=n {
            for k in 1..=r.min(3) {
                let a = random::gaussian_int(&mut rng, n, 3);
                let dirs: Vec<GaussianMatrix> = (0..k).map(|_| random::gaussian_int(&mut rng, n, 3)).collect();
                let oracle = mixed_partial_interp(Functional::CharCoefficient(r), &a, &dirs).unwrap();
                for f in Formula::ALL {
                    assert_eq!(dk_gr(&a, &dirs, r, f).unwrap(), oracle, "n={n} r={r} k={k} {f}");
                }
            }
        }
    }
}

#[test]
fn composition_through_principal_restrictions() {
    // D^k g_r(A) is the sum over I of D^k det at A_I, computed here by
    // interpolating det on each restriction.
    let mut rng = random::rng(203);
    let n = 4;
    for r in 1..=n {
        for k in 1..=r.min(3) {
            let a = random::gaussian_int(&mut rng, n, 3);
            let dirs: Vec<GaussianMatrix> = (0..k).map(|_| random::gaussian_int(&mut rng, n, 3)).collect();
            let pieces: Vec<GaussianInt> = enumerate_strict(r, n)
                .iter()
                .map(|idx| {
                    let ai = principal_restriction(&a, idx).unwrap().value;
                    let xi: Vec<_> = dirs.iter().map(|x| submatrix(x, idx, idx).unwrap()).collect();
                    let via_oracle = mixed_partial_interp(Functional::CharCoefficient(r), &ai, &xi).unwrap();
                    assert_eq!(dk_det(&ai, &xi, Formula::Minors).unwrap(), via_oracle);
                    via_oracle
                })
                .collect();
            assert_eq!(dk_gr(&a, &dirs, r, Formula::Tensor).unwrap(), sum_ordered(pieces));
        }
    }
}

#[test]
fn floating_formulas_agree_up_to_order_six() {
    let mut rng = random::rng(204);
    for n in 2..=6 {
        let a = random::complex_gaussian(&mut rng, n);
        for k in 1..=n {
            let dirs: Vec<ComplexMatrix> = (0..k).map(|_| random::complex_gaussian(&mut rng, n)).collect();
            let c = dkper(&a, &dirs, Formula::Columns).unwrap();
            for f in [Formula::Minors, Formula::Tensor] {
                let v = dkper(&a, &dirs, f).unwrap();
                assert!(relative_deviation(&c, &v) <= 1e-10, "n={n} k={k} {f}");
            }
        }
    }
}

#[test]
fn collapsed_request_matches_full_sum() {
    let mut rng = random::rng(205);
    let a = random::complex_gaussian(&mut rng, 5);
    let x = random::complex_gaussian(&mut rng, 5);
    for k in 1..=5 {
        let dirs = vec![x.clone(); k];
        for f in Formula::ALL {
            let full = DerivativeRequest::new(&a, &dirs, f).unwrap().evaluate().unwrap();
            let fast = DerivativeRequest::new(&a, &dirs, f)
                .unwrap()
                .collapse_repeated(true)
                .evaluate()
                .unwrap();
            assert!(relative_deviation(&full, &fast) <= 1e-12, "k={k} {f}");
        }
    }
}

#[test]
fn central_differences_converge_at_second_order() {
    let mut rng = random::rng(206);
    let a = random::unit_norm(&mut rng, 4).unwrap();
    let x = random::unit_norm(&mut rng, 4).unwrap();
    let exact = dper(&a, &x).unwrap();
    let err = |h: f64| (finite_diff(Functional::Permanent, &a, &x, h).unwrap() - exact).norm();
    let ratio = err(2e-2) / err(1e-2);
    assert!((3.8..=4.2).contains(&ratio), "ratio {ratio}");
    assert!(relative_deviation(&finite_diff(Functional::Permanent, &a, &x, 1e-5).unwrap(), &exact) <= 1e-6);

    let exact = dk_gr(&a, std::slice::from_ref(&x), 3, Formula::Columns).unwrap();
    let fd = finite_diff(Functional::CharCoefficient(3), &a, &x, 1e-5).unwrap();
    assert!(relative_deviation(&fd, &exact) <= 1e-6);
}

#[test]
fn faddeev_leverrier_matches_minor_sums() {
    let mut rng = random::rng(207);
    for n in 1..=8 {
        let a = random::complex_gaussian(&mut rng, n);
        let minors = charpoly_all(&a).unwrap().g;
        let fl = faddeev_leverrier(&a).unwrap().g;
        for (r, (x, y)) in minors.iter().zip(&fl).enumerate() {
            assert!(relative_deviation(x, y) <= 1e-9, "n={n} r={}", r + 1);
        }
        assert!(relative_deviation(&g_r(&a, n).unwrap(), &Complex64::determinant(&a)) <= 1e-12);
    }
}
