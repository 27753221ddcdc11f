//! Cross-module checks through the public API.

use std::f64::consts::PI;

use unruh_core::bogoliubov::{self, BoundaryTerm};
use unruh_core::counting::{self, DetectorBand, RatePrefactor};
use unruh_core::localized::{self, PlaneOptions};
use unruh_core::{AccelerationParam, Complex64, QuadratureSpec, Wedge};

fn acc(a: f64) -> AccelerationParam {
    AccelerationParam::new(a).unwrap()
}

#[test]
fn numeric_bogoliubov_matches_closed_form_away_from_the_boundary() {
    let a = acc(1.0);
    let spec = QuadratureSpec::for_acceleration(a).with_epsilon(1e-5).with_x0(1e-6);
    for (k, big_k) in [(0.7, 0.4), (2.0, 1.5), (-1.0, -0.8)] {
        let num = bogoliubov::bogoliubov_numeric(k, big_k, a, Wedge::I, &spec).unwrap();
        let (alpha, beta) = num.without_f();
        let closed = bogoliubov::bogoliubov_wedge1(k, big_k, a, BoundaryTerm::Excluded).unwrap();
        assert!((alpha - closed.alpha).norm() < 1e-2 * closed.alpha.norm(), "alpha at k={k}, K={big_k}");
        assert!((beta - closed.beta).norm() < 2e-2 * closed.beta.norm(), "beta at k={k}, K={big_k}");
    }
}

#[test]
fn plane_amplitudes_are_k_transforms_of_bogoliubov_coefficients() {
    let a = acc(1.0);
    let spec = QuadratureSpec::for_acceleration(a).with_rel_tol(1e-9);
    let opts = PlaneOptions::unregulated();
    for (x, big_k) in [(0.8, 1.3), (-1.5, 0.6), (2.0, -0.9)] {
        let coef = |k: f64| {
            bogoliubov::alpha_closed(k, big_k, a, BoundaryTerm::Excluded).unwrap_or(Complex64::new(0.0, 0.0))
        };
        let num = localized::k_transform(coef, x, 1.0, &spec).unwrap().value;
        let closed = localized::plane_in_localized_basis(x, big_k, a, false, &opts).unwrap();
        assert!((num - closed).norm() < 1e-5 * closed.norm().max(1.0), "x={x}, K={big_k}: {num} vs {closed}");
    }
}

#[test]
fn collapsed_state_keeps_unit_norm_in_the_minkowski_basis() {
    let a = acc(1.0);
    let spec = QuadratureSpec::for_acceleration(a).with_rel_tol(1e-7);
    let state = counting::collapsed_state(0.0, a);
    // ∫dx (|pos|² - |neg|²) over both signs of x, sampled in s = ln|x|.
    let h = 0.25;
    let s: Vec<f64> = (0..=320).map(|i| -40.0 + h * i as f64).collect();
    let xs: Vec<f64> = s.iter().flat_map(|s| [s.exp(), -s.exp()]).collect();
    let p = counting::project_collapsed_to_minkowski(&state, &xs, &spec).unwrap();
    let norm: f64 = xs
        .iter()
        .zip(p.positive.values.iter().zip(&p.negative.values))
        .map(|(x, (u, v))| x.abs() * (u.norm_sqr() - v.norm_sqr()) * h)
        .sum();
    assert!((norm - 1.0).abs() < 3e-2, "norm {norm}");
}

#[test]
fn coincidence_total_adds_the_uncorrelated_product() {
    let a = acc(1.0);
    let spec = QuadratureSpec::for_acceleration(a);
    let band = DetectorBand::new(0.05, 0.0, Wedge::I).unwrap();
    let w = counting::single_rate_cutoff(&band, a, RatePrefactor::Integral).unwrap();
    for dv in [0.0, 3.0, 50.0] {
        let total = counting::coincidence_total(dv, &band, a, RatePrefactor::Integral, &spec).unwrap();
        let r = counting::coincidence_correlated(dv, &band, a, &spec).unwrap();
        assert!((total.value.re - r.value.re - w * w).abs() < 1e-15);
    }
}

#[test]
fn temperature_and_proper_rate_scale_together() {
    let a = acc(2.0);
    for xi in [-1.0, 0.0, 0.7] {
        let alpha = unruh_core::coords::proper_acceleration(a, xi);
        let local_t = bogoliubov::unruh_temperature(acc(alpha));
        assert!((local_t - alpha / (2.0 * PI)).abs() < 1e-15);
        let rate = counting::to_proper_rate(counting::one_detector_rate(a), a, xi);
        assert!((rate - counting::proper_rate(a, xi)).abs() < 1e-15);
    }
}
