//! Counting observables for accelerated and inertial photon detectors.
//!
//! Detectors absorb right-to-left photons (`K < 0`) labelled by the Rindler
//! null coordinate `v = η + ξ`. Rates are per unit Rindler time; multiply by
//! `α/a` for rates per unit proper time.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coords::{proper_acceleration, AccelerationParam, Direction, Wedge};
use crate::curve::SampledCurve;
use crate::error::{nonzero, Error, Result};
use crate::localized::{plane_wedge2_in_localized_basis, PlaneOptions};
use crate::quad::{integrate_adaptive, integrate_damped_tail, integrate_sqrt_singular, IntegralResult, QuadratureSpec};

/// Rindler null coordinate `v = η + ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullCoordinate {
    pub v: f64,
}

impl NullCoordinate {
    pub fn new(eta: f64, xi: f64) -> Self {
        Self { v: eta + xi }
    }
}

/// An absorbing surface at Rindler position `xi_surface` that responds only
/// to Rindler frequencies above `omega0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorBand {
    pub omega0: f64,
    pub xi_surface: f64,
    pub wedge: Wedge,
}

impl DetectorBand {
    pub fn new(omega0: f64, xi_surface: f64, wedge: Wedge) -> Result<Self> {
        if !(omega0 >= 0.0 && omega0.is_finite()) {
            return Err(Error::InvalidArgument(format!("cutoff frequency must be nonnegative, got {omega0}")));
        }
        Ok(Self {
            omega0,
            xi_surface,
            wedge,
        })
    }

    fn positive_cutoff(&self) -> Result<f64> {
        if self.omega0 > 0.0 {
            Ok(self.omega0)
        } else {
            Err(Error::InvalidArgument("rate diverges without a positive cutoff frequency".into()))
        }
    }
}

/// Prefactor convention for the cutoff single-detector rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatePrefactor {
    /// `a/2π`, the value of the defining integral.
    #[default]
    Integral,
    /// `a/π`, twice the integral.
    Doubled,
}

/// Two-photon absorption amplitude of the one-pair term,
/// `(1/2π) / (iΔv + π/a)` with `Δv = v' - v''`.
pub fn pair_amplitude(vp: f64, vpp: f64, a: AccelerationParam) -> Complex64 {
    Complex64::new(1.0, 0.0) / (2.0 * PI * Complex64::new(PI / a.get(), vp - vpp))
}

/// `∫_{-∞}^0 dK e^{-π|K|/a} e^{iKΔv} / 2π` by quadrature.
pub fn pair_amplitude_numeric(vp: f64, vpp: f64, a: AccelerationParam, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let rate = PI / a.get();
    let dv = vp - vpp;
    let chunk = if dv == 0.0 { 1.0 / rate } else { (1.0 / rate).min(16.0 * PI / dv.abs()) };
    let r = integrate_damped_tail(
        move |q: f64| Complex64::from_polar((-rate * q).exp() / (2.0 * PI), -q * dv),
        0.0,
        chunk,
        rate,
        move |q: f64| (-rate * q).exp() / (2.0 * PI),
        spec,
    )?;
    Ok(r)
}

/// Marginal one-detector rate `a/4π²`.
pub fn one_detector_rate(a: AccelerationParam) -> f64 {
    a.get() / (4.0 * PI * PI)
}

/// `∫ dv'' |pair_amplitude|²` by quadrature.
pub fn one_detector_rate_numeric(a: AccelerationParam, spec: &QuadratureSpec) -> Result<IntegralResult> {
    integrate_adaptive(
        |dv: f64| Complex64::new(pair_amplitude(dv, 0.0, a).norm_sqr(), 0.0),
        f64::NEG_INFINITY,
        f64::INFINITY,
        spec,
    )
}

/// Rate per unit proper time for an absorbing surface at `xi`: `α/4π²`.
pub fn proper_rate(a: AccelerationParam, xi: f64) -> f64 {
    proper_acceleration(a, xi) / (4.0 * PI * PI)
}

/// Converts a rate per unit Rindler time to one per unit proper time.
pub fn to_proper_rate(rindler_rate: f64, a: AccelerationParam, xi: f64) -> f64 {
    rindler_rate * proper_acceleration(a, xi) / a.get()
}

/// Cutoff single-detector rate `(a/2π)(-ln(1 - e^{-2πΩ₀/a}))`, or twice that
/// under [`RatePrefactor::Doubled`].
pub fn single_rate_cutoff(band: &DetectorBand, a: AccelerationParam, prefactor: RatePrefactor) -> Result<f64> {
    let w0 = band.positive_cutoff()?;
    let av = a.get();
    let base = -(av / (2.0 * PI)) * (-(-2.0 * PI * w0 / av).exp()).ln_1p();
    Ok(match prefactor {
        RatePrefactor::Integral => base,
        RatePrefactor::Doubled => 2.0 * base,
    })
}

/// `∫_{Ω₀}^∞ dΩ (e^{2πΩ/a} - 1)^{-1}` by quadrature in `ln Ω`.
pub fn single_rate_numeric(band: &DetectorBand, a: AccelerationParam, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let w0 = band.positive_cutoff()?;
    let av = a.get();
    let bose = move |w: f64| 1.0 / (2.0 * PI * w / av).exp_m1();
    // Beyond 15a the integrand is below e^{-90}.
    let hi = (15.0 * av).max(2.0 * w0);
    let head = integrate_adaptive(
        |s: f64| {
            let w = s.exp();
            Complex64::new(bose(w) * w, 0.0)
        },
        w0.ln(),
        hi.ln(),
        spec,
    )?;
    let tail = integrate_adaptive(|w: f64| Complex64::new(bose(w), 0.0), hi, f64::INFINITY, spec)?;
    Ok(head + tail)
}

/// `e^{π|K|/a} / (e^{2π|K|/a} - 1) = 1 / (2 sinh(π|K|/a))`.
pub fn pair_annihilation_kernel(big_k: f64, a: AccelerationParam) -> Result<f64> {
    nonzero(big_k, "K")?;
    Ok(0.5 / (PI * big_k.abs() / a.get()).sinh())
}

/// The kernel from its defining sum `C² e^{π|K|/a} Σ n xⁿ`.
pub fn pair_annihilation_kernel_series(big_k: f64, a: AccelerationParam, terms: u32) -> Result<f64> {
    nonzero(big_k, "K")?;
    let r = PI * big_k.abs() / a.get();
    let x = (-2.0 * r).exp();
    let mut sum = 0.0;
    let mut power = 1.0;
    for n in 1..=terms {
        power *= x;
        sum += n as f64 * power;
    }
    Ok((1.0 - x) * r.exp() * sum)
}

fn coincidence_amplitude<W>(dv: f64, omega0: f64, a: f64, weight: W, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    W: Fn(f64) -> f64,
{
    // K = -q: e^{-iKΔv} = e^{iqΔv}. Integrated in ln q; the weight has
    // decayed below e^{-120} at 40a.
    let hi = (40.0 * a).max(2.0 * omega0);
    integrate_adaptive(
        |s: f64| {
            let q = s.exp();
            Complex64::from_polar(weight(q) * q / (2.0 * PI), q * dv)
        },
        omega0.ln(),
        hi.ln(),
        spec,
    )
}

/// Correlated coincidence density
/// `r(Δv) = |∫_{-∞}^{-Ω₀} dK e^{π|K|/a - iKΔv} / (2π(e^{2π|K|/a} - 1))|²`
/// with `Δv = v'' - v'`.
pub fn coincidence_correlated(dv: f64, band: &DetectorBand, a: AccelerationParam, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let w0 = band.positive_cutoff()?;
    let av = a.get();
    let amp = coincidence_amplitude(dv, w0, av, |q| 0.5 / (PI * q / av).sinh(), spec)?;
    Ok(squared(amp))
}

/// The one-pair term of the coincidence density: kernel `e^{-π|K|/a}` and
/// no cutoff. Equals `|pair_amplitude|²`.
pub fn coincidence_one_pair(dv: f64, a: AccelerationParam, spec: &QuadratureSpec) -> Result<IntegralResult> {
    Ok(squared(pair_amplitude_numeric(0.0, dv, a, spec)?))
}

fn squared(amp: IntegralResult) -> IntegralResult {
    let m = amp.value.norm();
    IntegralResult {
        value: Complex64::new(m * m, 0.0),
        abs_error_estimate: 2.0 * m * amp.abs_error_estimate + amp.abs_error_estimate.powi(2),
        converged: amp.converged,
    }
}

/// `r(0) = [(a/4π²) ln coth(πΩ₀/2a)]²`.
pub fn coincidence_peak_closed(band: &DetectorBand, a: AccelerationParam) -> Result<f64> {
    let w0 = band.positive_cutoff()?;
    let av = a.get();
    let lncoth = -(PI * w0 / (2.0 * av)).tanh().ln();
    Ok((av / (4.0 * PI * PI) * lncoth).powi(2))
}

/// `r(Δv) + w_I w_II`, with both single rates taken from `band`.
pub fn coincidence_total(
    dv: f64,
    band: &DetectorBand,
    a: AccelerationParam,
    prefactor: RatePrefactor,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    let r = coincidence_correlated(dv, band, a, spec)?;
    let w = single_rate_cutoff(band, a, prefactor)?;
    Ok(r.map_value(|v| v + w * w))
}

/// The one-photon state left in wedge II after a wedge-I click at `ξ'`:
/// `(u_{K,II}, ψ) = √(π/a) e^{-π|K|/a} e^{-iKξ'}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapsedState {
    pub xi_prime: f64,
    pub a: AccelerationParam,
}

pub fn collapsed_state(xi_prime: f64, a: AccelerationParam) -> CollapsedState {
    CollapsedState { xi_prime, a }
}

impl CollapsedState {
    pub fn k_amplitude(&self, big_k: f64) -> Complex64 {
        let av = self.a.get();
        Complex64::from_polar((PI / av).sqrt() * (-PI * big_k.abs() / av).exp(), -big_k * self.xi_prime)
    }

    /// `∫ dK |(u_{K,II}, ψ)|²` by quadrature.
    pub fn norm_numeric(&self, spec: &QuadratureSpec) -> Result<IntegralResult> {
        let f = |k: f64| Complex64::new(self.k_amplitude(k).norm_sqr(), 0.0);
        Ok(integrate_adaptive(f, f64::NEG_INFINITY, 0.0, spec)? + integrate_adaptive(f, 0.0, f64::INFINITY, spec)?)
    }

    /// `(u_{ξ,II}, ψ) = ∫ dK e^{iKξ} (u_{K,II}, ψ) / √(2π)` by quadrature.
    pub fn xi_amplitude(&self, xi: f64, spec: &QuadratureSpec) -> Result<IntegralResult> {
        let av = self.a.get();
        let f = |k: f64| self.k_amplitude(k) * Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), k * xi);
        let rate = PI / av;
        let env = move |k: f64| (PI / av).sqrt() * (-rate * k).exp() / (2.0 * PI).sqrt();
        let chunk = 1.0 / rate;
        let right = integrate_damped_tail(f, 0.0, chunk, rate, env, spec)?;
        let left = integrate_damped_tail(|k| f(-k), 0.0, chunk, rate, env, spec)?;
        Ok(right + left)
    }

    /// Closed form of [`Self::xi_amplitude`]:
    /// `(2a)^{-1/2} (2π/a) / ((π/a)² + (ξ - ξ')²)`.
    pub fn xi_amplitude_closed(&self, xi: f64) -> f64 {
        let av = self.a.get();
        let d = xi - self.xi_prime;
        (2.0 * av).sqrt().recip() * (2.0 * PI / av) / ((PI / av).powi(2) + d * d)
    }

    /// The alternative form `(2π/a^{3/2}) / ((ξ - ξ') + iπ/a)`, kept for
    /// comparison with [`Self::xi_amplitude`].
    pub fn xi_amplitude_printed(&self, xi: f64) -> Complex64 {
        let av = self.a.get();
        (2.0 * PI / av.powf(1.5)) / Complex64::new(xi - self.xi_prime, PI / av)
    }
}

/// Minkowski localized amplitudes of a collapsed state.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MinkowskiProjection {
    /// `(u_{x,M}, ψ)` on the grid.
    pub positive: SampledCurve,
    /// `(u*_{x,M}, ψ)` on the grid.
    pub negative: SampledCurve,
}

/// `(u_{x,M}, ψ) = ∫ dK (u_{x,M}, u_{K,II}) (u_{K,II}, ψ)` for each `x` in
/// the grid (and likewise for `u*_{x,M}`). This is the `ξ`-integral of
/// `α^{II}_{xξ} (u_{ξ,II}, ψ)` carried out in `K` space, where it converges
/// without a regulator.
pub fn project_collapsed_to_minkowski(
    state: &CollapsedState,
    x_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<MinkowskiProjection> {
    let opts = PlaneOptions::unregulated();
    let av = state.a.get();
    // e^{-π|K|/a} is below 1e-40 beyond 30a.
    let window = 30.0 * av;
    let point = |x: f64, conjugate: bool| -> Result<IntegralResult> {
        let f = |k: f64| {
            plane_wedge2_in_localized_basis(x, k, state.a, conjugate, &opts)
                .map(|p| p * state.k_amplitude(k))
                .unwrap_or_else(|_| Complex64::new(f64::NAN, f64::NAN))
        };
        let r = integrate_sqrt_singular(f, window, spec)? + integrate_sqrt_singular(|k| f(-k), window, spec)?;
        if !r.value.re.is_finite() {
            return Err(Error::InvalidArgument(format!("projection undefined at x = {x}")));
        }
        Ok(r)
    };
    let rows: Vec<(IntegralResult, IntegralResult)> = x_grid
        .par_iter()
        .map(|&x| Ok((point(x, false)?, point(x, true)?)))
        .collect::<Result<_>>()?;
    let mut out = MinkowskiProjection::default();
    for (&x, (p, n)) in x_grid.iter().zip(rows) {
        out.positive.push(x, p.value, p.abs_error_estimate, p.converged);
        out.negative.push(x, n.value, n.abs_error_estimate, n.converged);
    }
    Ok(out)
}

/// Flux `±c n` for a number density `n`, positive for left-to-right
/// propagation (`c = 1`).
pub fn flux_from_density(density: f64, direction: Direction) -> Result<f64> {
    if !(density >= 0.0) {
        return Err(Error::InvalidArgument(format!("number density must be nonnegative, got {density}")));
    }
    Ok(direction.sign() * density)
}

/// Samples `|pair_amplitude|²` on `[-half_width, half_width]` and measures
/// its full width at half maximum.
pub fn correlation_fwhm(a: AccelerationParam, half_width: f64, points: usize) -> Option<f64> {
    let mut c = SampledCurve::default();
    for i in 0..points {
        let dv = -half_width + 2.0 * half_width * i as f64 / (points - 1) as f64;
        c.push(dv, Complex64::new(pair_amplitude(dv, 0.0, a).norm_sqr(), 0.0), 0.0, true);
    }
    c.fwhm()
}
