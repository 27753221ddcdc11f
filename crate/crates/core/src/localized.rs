//! Exactly localized Minkowski and Rindler states and the amplitudes that
//! connect them.
//!
//! Localized states are specified by their wave-vector amplitudes; for
//! Minkowski states `√(2|k|) exp[-ik(x' - ε_k t')] / √(2π)`. The amplitudes
//! of a Rindler plane wave in the Minkowski localized basis are the
//! `k`-transforms of the Bogoliubov coefficients, available in closed form
//! through the thermal factor [`g_factor`]. Transforming once more over `K`
//! gives the localized-to-localized coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coords::{AccelerationParam, Wedge};
use crate::error::{nonzero, Error, Result};
use crate::modes::SpectralPair;
use crate::quad::{
    integrate_adaptive, integrate_damped_tail, integrate_oscillatory_tail, integrate_sqrt_singular,
    ln_gamma, IntegralResult, QuadratureSpec,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalizedFrame {
    Minkowski,
    Rindler(Wedge),
}

/// A localized state: position `x'` (or `ξ'`) on the slice `t = t'` (or
/// `η = η'`), positive frequency unless `conjugate` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizedLabel {
    pub frame: LocalizedFrame,
    pub position: f64,
    pub slice_time: f64,
    pub conjugate: bool,
}

impl LocalizedLabel {
    /// Spectral amplitudes over the plane waves of `modes`. Rindler states
    /// have no components on the other wedge's modes or on Minkowski modes,
    /// and Minkowski states none on Rindler modes: those bases are related
    /// by the Bogoliubov transformation, not by this function.
    pub fn spectrum(&self, modes: LocalizedFrame) -> SpectralPair {
        let (pos, time) = (self.position, self.slice_time);
        let amp: Box<dyn Fn(f64) -> Complex64 + Send + Sync> = match (self.frame, modes) {
            (LocalizedFrame::Minkowski, LocalizedFrame::Minkowski) => {
                Box::new(move |k| minkowski_localized_k(pos, time, k).unwrap_or_default())
            }
            (LocalizedFrame::Rindler(w), LocalizedFrame::Rindler(m)) if w == m => {
                Box::new(move |k| rindler_localized_k(pos, time, w, k).unwrap_or_default())
            }
            _ => Box::new(|_| Complex64::new(0.0, 0.0)),
        };
        if self.conjugate {
            SpectralPair::negative_only(move |k| amp(k).conj())
        } else {
            SpectralPair::positive_only(amp)
        }
    }
}

pub fn minkowski_localized_k(xp: f64, tp: f64, k: f64) -> Result<Complex64> {
    nonzero(k, "k")?;
    let phase = -k * (xp - k.signum() * tp);
    Ok(Complex64::from_polar((2.0 * k.abs() / (2.0 * PI)).sqrt(), phase))
}

/// Amplitude of the wedge-`wedge` localized state on that wedge's modes.
/// The `η'` term enters with the opposite sign in wedge II.
pub fn rindler_localized_k(xip: f64, etap: f64, wedge: Wedge, big_k: f64) -> Result<Complex64> {
    nonzero(big_k, "K")?;
    let eps = big_k.signum() * wedge.sign();
    let phase = -big_k * (xip - eps * etap);
    Ok(Complex64::from_polar((2.0 * big_k.abs() / (2.0 * PI)).sqrt(), phase))
}

/// `∫_0^∞ q^{-1/2} e^{iqz} dq`, computed numerically: the endpoint
/// singularity by substitution, the undamped tail by extrapolation.
fn half_line_fresnel(z: f64, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let f = move |q: f64| Complex64::from_polar(q.powf(-0.5), q * z);
    let half = PI / z.abs();
    let head = integrate_sqrt_singular(f, half, spec)?;
    let tail = integrate_oscillatory_tail(f, half, half, spec)?;
    Ok(head + tail)
}

/// Field of the Minkowski localized state at `(t', x')`, evaluated at
/// `(t, x)`: `∫ dk exp[ik(x - x') - iε_k k(t - t')] / (2π √(2|k|))`.
pub fn localized_spacetime_field(xp: f64, tp: f64, t: f64, x: f64, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let (dx, dt) = (x - xp, t - tp);
    let (right, left) = (dx - dt, dx + dt);
    if right == 0.0 || left == 0.0 {
        return Err(Error::InvalidArgument("field is singular on the light cone of the localization event".into()));
    }
    // k > 0 gives e^{iq(Δx - Δt)}, k < 0 gives e^{-iq(Δx + Δt)}.
    let r = half_line_fresnel(right, spec)?;
    let l = half_line_fresnel(-left, spec)?;
    Ok((r + l).scale(Complex64::new(1.0 / (2.0 * PI * 2f64.sqrt()), 0.0)))
}

/// Equal-time profile `C |Δx|^{-p}` of the localized field, fitted from
/// quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualTimeFit {
    /// `C`, the mean of `field(Δx) √Δx` over `Δx ∈ {1, 2, 4}`.
    pub prefactor: f64,
    /// Largest relative deviation of `field(Δx) √Δx` from `prefactor`.
    pub prefactor_spread: f64,
    /// `p` from a least-squares log-log fit over `Δx ∈ [10, 1000]`.
    pub exponent: f64,
}

pub fn fit_equal_time_profile(spec: &QuadratureSpec) -> Result<EqualTimeFit> {
    let scaled = |d: f64| -> Result<f64> {
        let v = localized_spacetime_field(0.0, 0.0, 0.0, d, spec)?;
        Ok(v.value.re * d.sqrt())
    };
    let samples = [scaled(1.0)?, scaled(2.0)?, scaled(4.0)?];
    let prefactor = samples.iter().sum::<f64>() / 3.0;
    let prefactor_spread = samples
        .iter()
        .map(|s| (s / prefactor - 1.0).abs())
        .fold(0.0, f64::max);
    let pts: Vec<(f64, f64)> = (0..=10)
        .map(|i| 10f64.powf(1.0 + 0.2 * i as f64))
        .map(|d| {
            let v = localized_spacetime_field(0.0, 0.0, 0.0, d, spec)?;
            Ok((d.ln(), v.value.norm().ln()))
        })
        .collect::<Result<_>>()?;
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = pts
        .iter()
        .fold((0.0, 0.0), |(u, v), p| (u + (p.0 - mx) * (p.1 - my), v + (p.0 - mx).powi(2)));
    Ok(EqualTimeFit {
        prefactor,
        prefactor_spread,
        exponent: -num / den,
    })
}

/// `(1/2π) ∫ dk exp(ikΔx - iε_k kΔt - ε|k|)` by quadrature, with
/// ε = `spec.epsilon_reg`.
pub fn counterprop_amplitude(dx: f64, dt: f64, spec: &QuadratureSpec) -> Result<IntegralResult> {
    spec.validate()?;
    let eps = spec.epsilon_reg;
    let half = |z: f64| -> Result<IntegralResult> {
        let chunk = if z == 0.0 { 1.0 / eps } else { (1.0 / eps).min(16.0 * PI / z.abs()) };
        integrate_damped_tail(
            move |q: f64| Complex64::from_polar((-eps * q).exp(), q * z),
            0.0,
            chunk,
            eps,
            move |q: f64| (-eps * q).exp(),
            spec,
        )
    };
    let sum = half(dx - dt)? + half(-(dx + dt))?;
    Ok(sum.scale(Complex64::new(1.0 / (2.0 * PI), 0.0)))
}

/// Closed form of [`counterprop_amplitude`]:
/// `(1/2π) [1/(ε - i(Δx - Δt)) + 1/(ε + i(Δx + Δt))]`.
pub fn counterprop_closed(dx: f64, dt: f64, eps: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (one / Complex64::new(eps, -(dx - dt)) + one / Complex64::new(eps, dx + dt)) / (2.0 * PI)
}

/// `ln[(√|ν|/2π) Γ(iν) Γ(1/2 - iν) e^{-π|ν|}]` with `ν = K/a`: the
/// thermal factor without its `ε_K e^{iπ/4}` phase.
fn ln_g0(nu: f64) -> Result<Complex64> {
    Ok(ln_gamma(Complex64::new(0.0, nu))? + ln_gamma(Complex64::new(0.5, -nu))?
        + (0.5 * nu.abs().ln() - (2.0 * PI).ln() - PI * nu.abs()))
}

/// `g(K) = (1/2π) e^{iπ/4} ε_K √(|K|/a) Γ(1/2 - iK/a) Γ(iK/a) e^{-π|K|/a}`.
pub fn g_factor(big_k: f64, a: AccelerationParam) -> Result<Complex64> {
    nonzero(big_k, "K")?;
    Ok(big_k.signum() * (ln_g0(big_k / a.get())? + I * (PI / 4.0)).exp())
}

/// Exact `k`-transform of the `x₀` boundary term of the Bogoliubov
/// coefficients: `iε_K (ax₀)^{iK/a} / (4π √(|K| |x - x₀|))`.
pub fn f_term(x: f64, big_k: f64, a: AccelerationParam, x0: f64) -> Result<Complex64> {
    nonzero(big_k, "K")?;
    let a = a.get();
    let d = (x - x0).abs();
    if d == 0.0 {
        return Err(Error::ZeroArgument { name: "x - x0" });
    }
    let phase = big_k / a * (a * x0).ln();
    Ok(I * big_k.signum() * Complex64::from_polar(1.0 / (4.0 * PI * (big_k.abs() * d).sqrt()), phase))
}

/// How the thermal factor enters the plane-wave amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThermalModel {
    #[default]
    Exact,
    /// `g(K)` replaced by its large-`|K|` behaviour: only the flat
    /// positive-frequency amplitude for `x > 0` survives.
    Plateau,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneOptions {
    /// Lower cutoff `x₀` when the boundary term is included.
    pub f_term_x0: Option<f64>,
    /// `δ` in the convergence factor `e^{-δ|K|}`; zero for none.
    pub damping: f64,
    pub thermal: ThermalModel,
}

impl PlaneOptions {
    pub fn unregulated() -> Self {
        Self {
            f_term_x0: None,
            damping: 0.0,
            thermal: ThermalModel::Exact,
        }
    }

    /// Damping length `δ = ε/a²`, the same linewidth as `e^{-ε|K|/a}` for
    /// `ε` measured in units of `a`.
    pub fn regulated(spec: &QuadratureSpec, a: AccelerationParam) -> Self {
        Self {
            damping: spec.epsilon_reg / (a.get() * a.get()),
            ..Self::unregulated()
        }
    }

    pub fn with_f_term(mut self, x0: f64) -> Self {
        self.f_term_x0 = Some(x0);
        self
    }

    pub fn with_thermal(mut self, thermal: ThermalModel) -> Self {
        self.thermal = thermal;
        self
    }
}

/// `(u_{x,M}, u_{K,I})`, or `(u*_{x,M}, u_{K,I})` when `conjugate`.
pub fn plane_in_localized_basis(
    x: f64,
    big_k: f64,
    a: AccelerationParam,
    conjugate: bool,
    opts: &PlaneOptions,
) -> Result<Complex64> {
    nonzero(x, "x")?;
    nonzero(big_k, "K")?;
    let av = a.get();
    let nu = big_k / av;
    let (sigma, sx) = (big_k.signum(), x.signum());
    let base = I * nu * (av * x.abs()).ln() - 0.5 * (2.0 * PI * av * x.abs()).ln();
    let mut value = match opts.thermal {
        ThermalModel::Exact => {
            let n = nu.abs();
            let (growth, quarter) = if conjugate {
                (PI * n / 2.0 - PI * n * sx / 2.0, -sigma * sx)
            } else {
                (3.0 * PI * n / 2.0 + PI * n * sx / 2.0, sigma * sx)
            };
            (ln_g0(nu)? + growth + I * (PI / 4.0 * quarter) + base).exp()
        }
        ThermalModel::Plateau if x > 0.0 && !conjugate => base.exp(),
        ThermalModel::Plateau => Complex64::new(0.0, 0.0),
    };
    value *= (-opts.damping * big_k.abs()).exp();
    if let Some(x0) = opts.f_term_x0 {
        value += f_term(x, big_k, a, x0)?;
    }
    Ok(value)
}

/// `(u_{x,M}, u_{K,II})` (or the conjugate counterpart): the wedge-I
/// amplitude at `-x` with the wedge-II sign convention.
pub fn plane_wedge2_in_localized_basis(
    x: f64,
    big_k: f64,
    a: AccelerationParam,
    conjugate: bool,
    opts: &PlaneOptions,
) -> Result<Complex64> {
    Ok(-plane_in_localized_basis(-x, big_k, a, conjugate, opts)?)
}

/// `α_xξ = (u_{x,M}, u_{ξ,J})` and `β_xξ = (u*_{x,M}, u_{ξ,J})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformCoefficients {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub wedge: Wedge,
    pub abs_error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformOptions {
    pub spec: QuadratureSpec,
    /// The `K`-integral runs over `|K| ≤ k_window`.
    pub k_window: f64,
    pub plane: PlaneOptions,
}

impl TransformOptions {
    /// `|K| ≤ 40a`, damping from `spec.epsilon_reg`, boundary term dropped.
    pub fn new(spec: QuadratureSpec, a: AccelerationParam) -> Self {
        Self {
            spec,
            k_window: 40.0 * a.get(),
            plane: PlaneOptions::regulated(&spec, a),
        }
    }
}

/// `∫ dK (u_{x,M}, u_{K,I}) e^{-iKξ} / √(2π)` (and the conjugate
/// counterpart) over the `K` window. Wedge II uses
/// `α^{II}_{xξ} = -α^{I}_{-x,ξ}`, `β^{II}_{xξ} = -β^{I}_{-x,ξ}`, which for
/// `x < 0` reads `α^{II}_{xξ} = -α^{I}_{|x|ξ}`.
pub fn localized_transform(
    x: f64,
    xi: f64,
    a: AccelerationParam,
    wedge: Wedge,
    opts: &TransformOptions,
) -> Result<TransformCoefficients> {
    nonzero(x, "x")?;
    // Parity maps wedge II onto wedge I and x onto -x; the overall sign is
    // the wedge-II phase convention.
    let xe = match wedge {
        Wedge::I => x,
        Wedge::II => -x,
    };
    let sign = match wedge {
        Wedge::I => 1.0,
        Wedge::II => -1.0,
    };
    let coefficient = |conjugate: bool| -> Result<IntegralResult> {
        let integrand = |big_k: f64| {
            plane_in_localized_basis(xe, big_k, a, conjugate, &opts.plane)
                .map(|v| v * Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), -big_k * xi))
                .unwrap_or_else(|_| Complex64::new(f64::NAN, f64::NAN))
        };
        let right = integrate_sqrt_singular(integrand, opts.k_window, &opts.spec)?;
        let left = integrate_sqrt_singular(|k| integrand(-k), opts.k_window, &opts.spec)?;
        let total = right + left;
        if !total.value.re.is_finite() {
            return Err(Error::InvalidArgument("transform integrand is not finite".into()));
        }
        Ok(total)
    };
    let alpha = coefficient(false)?;
    let beta = coefficient(true)?;
    Ok(TransformCoefficients {
        alpha: sign * alpha.value,
        beta: sign * beta.value,
        wedge,
        abs_error: alpha.abs_error_estimate + beta.abs_error_estimate,
        converged: alpha.converged && beta.converged,
    })
}

/// Numeric `k`-transform `∫ dk e^{±ikx} c(k) / √(2π)` of a Bogoliubov
/// coefficient `c(k)` decaying like `|k|^{-1/2}`. Used to cross-check the
/// closed forms of [`plane_in_localized_basis`].
pub fn k_transform<F>(coefficient: F, x: f64, sign: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    nonzero(x, "x")?;
    let half = PI / x.abs();
    let f = |k: f64| coefficient(k) * Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), sign * k * x);
    let mut total = IntegralResult::zero();
    for s in [1.0, -1.0] {
        let g = |q: f64| f(s * q);
        total = total + integrate_sqrt_singular(g, half, spec)?;
        total = total + integrate_oscillatory_tail(g, half, half, spec)?;
    }
    Ok(total)
}

/// Finite-window surrogate of a delta function, used by Gram checks:
/// `sin(WΔ)/(πΔ)`.
pub fn window_delta(window: f64, d: f64) -> f64 {
    if d == 0.0 {
        window / PI
    } else {
        (window * d).sin() / (PI * d)
    }
}

/// Integrates `|f|²` of a real-line function over `[lo, hi]`.
pub fn norm_squared_on<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_adaptive(|x| Complex64::new(f(x).norm_sqr(), 0.0), lo, hi, spec)
}
