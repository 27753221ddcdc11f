//! Bogoliubov coefficients between Minkowski and Rindler plane waves.
//!
//! On the `t = η = 0` slice the wedge-I coefficients are
//!
//! ```text
//! α_kK = ∫_{x₀}^∞ dx (|K|/(ax) + |k|) e^{-ikx} (ax)^{iK/a} / (4π√|kK|)
//! β_kK = ∫_{x₀}^∞ dx (|K|/(ax) - |k|) e^{+ikx} (ax)^{iK/a} / (4π√|kK|)
//! ```
//!
//! Integrating the `1/x` term by parts leaves a boundary term at `x₀` plus a
//! Gamma-function piece that is nonzero only for parallel `k` and `K`. The
//! boundary term is carried separately as `f_term`. Wedge-II coefficients
//! are the same integrals over `|x|`, which amounts to `k → -k`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coords::{AccelerationParam, Direction, Wedge};
use crate::error::{nonzero, Error, Result};
use crate::quad::{integrate_power_phase, ln_gamma, PowerWeight, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `ħ` in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in m/s.
pub const C_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant in J/K.
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

/// Whether the `x₀` boundary term is added to a closed-form coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryTerm {
    Excluded,
    /// Included for the lower cutoff `x₀`.
    At(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPair {
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Boundary term contained in `alpha` (for `beta` it is
    /// `beta_f_term`); zero when excluded.
    pub f_term: Complex64,
    pub beta_f_term: Complex64,
    pub wedge: Wedge,
    /// Combined quadrature error estimate; zero for closed forms.
    pub abs_error: f64,
    pub converged: bool,
}

impl BogoliubovPair {
    /// `alpha` and `beta` with their boundary terms removed.
    pub fn without_f(&self) -> (Complex64, Complex64) {
        (self.alpha - self.f_term, self.beta - self.beta_f_term)
    }
}

/// `√|K|/(2πa√|k|) (|k|/a)^{-iK/a} Γ(iK/a) e^{s π|K|/2a}`, evaluated in log
/// space so that large `|K|/a` neither overflows nor underflows early.
fn gamma_part(k: f64, big_k: f64, a: f64, s: f64) -> Result<Complex64> {
    let nu = big_k / a;
    let ln_mag = 0.5 * big_k.abs().ln() - (2.0 * PI * a).ln() - 0.5 * k.abs().ln();
    let ln = ln_gamma(Complex64::new(0.0, nu))? - I * nu * (k.abs() / a).ln()
        + s * PI * nu.abs() / 2.0
        + ln_mag;
    Ok(ln.exp())
}

/// Exact integration-by-parts boundary term of the `1/x` integrand,
/// `iε_K (ax₀)^{iK/a} e^{-iκx₀} / (4π√|kK|)`, where `κ` is the signed
/// wave vector in the exponent `e^{-iκx}`.
fn boundary_term(kappa: f64, k: f64, big_k: f64, a: f64, x0: f64) -> Complex64 {
    let phase = big_k / a * (a * x0).ln() - kappa * x0;
    I * big_k.signum() * Complex64::from_polar(1.0, phase) / (4.0 * PI * (k * big_k).abs().sqrt())
}

fn closed(k: f64, big_k: f64, a: AccelerationParam, f: BoundaryTerm, wedge: Wedge) -> Result<BogoliubovPair> {
    nonzero(k, "k")?;
    nonzero(big_k, "K")?;
    let av = a.get();
    // Wedge II is wedge I with k → -k.
    let ke = match wedge {
        Wedge::I => k,
        Wedge::II => -k,
    };
    let parallel = ke.signum() == big_k.signum();
    let (mut alpha, mut beta) = if parallel {
        (gamma_part(k, big_k, av, 1.0)?, gamma_part(k, big_k, av, -1.0)?)
    } else {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    };
    let (mut fa, mut fb) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    if let BoundaryTerm::At(x0) = f {
        if !(x0 > 0.0) {
            return Err(Error::InvalidArgument(format!("x0 must be positive, got {x0}")));
        }
        fa = boundary_term(ke, k, big_k, av, x0);
        fb = boundary_term(-ke, k, big_k, av, x0);
        alpha += fa;
        beta += fb;
    }
    Ok(BogoliubovPair {
        alpha,
        beta,
        f_term: fa,
        beta_f_term: fb,
        wedge,
        abs_error: 0.0,
        converged: true,
    })
}

/// Closed-form `α^I_kK`.
pub fn alpha_closed(k: f64, big_k: f64, a: AccelerationParam, f: BoundaryTerm) -> Result<Complex64> {
    Ok(closed(k, big_k, a, f, Wedge::I)?.alpha)
}

/// Closed-form `β^I_kK`.
pub fn beta_closed(k: f64, big_k: f64, a: AccelerationParam, f: BoundaryTerm) -> Result<Complex64> {
    Ok(closed(k, big_k, a, f, Wedge::I)?.beta)
}

/// Closed-form wedge-I pair.
pub fn bogoliubov_wedge1(k: f64, big_k: f64, a: AccelerationParam, f: BoundaryTerm) -> Result<BogoliubovPair> {
    closed(k, big_k, a, f, Wedge::I)
}

/// Closed-form wedge-II pair: the selection rule pairs `k` with `-K`.
pub fn bogoliubov_wedge2(k: f64, big_k: f64, a: AccelerationParam, f: BoundaryTerm) -> Result<BogoliubovPair> {
    closed(k, big_k, a, f, Wedge::II)
}

/// Numeric evaluation of the defining integrals with cutoff `spec.x0` and
/// damping `spec.epsilon_reg`. The result contains the boundary term, which
/// is also reported on its own.
pub fn bogoliubov_numeric(
    k: f64,
    big_k: f64,
    a: AccelerationParam,
    wedge: Wedge,
    spec: &QuadratureSpec,
) -> Result<BogoliubovPair> {
    nonzero(k, "k")?;
    nonzero(big_k, "K")?;
    let av = a.get();
    let ke = match wedge {
        Wedge::I => k,
        Wedge::II => -k,
    };
    let norm = 1.0 / (4.0 * PI * (k * big_k).abs().sqrt());
    let ratio = big_k.abs() / av;
    let leg = |dir: Direction, weight| integrate_power_phase(ke, big_k, a, dir, weight, spec);
    // e^{-ikx} is Direction::Minus.
    let a_inv = leg(Direction::Minus, PowerWeight::Inverse)?;
    let a_one = leg(Direction::Minus, PowerWeight::Constant)?;
    let b_inv = leg(Direction::Plus, PowerWeight::Inverse)?;
    let b_one = leg(Direction::Plus, PowerWeight::Constant)?;
    let alpha = (a_inv.value * ratio + a_one.value * k.abs()) * norm;
    let beta = (b_inv.value * ratio - b_one.value * k.abs()) * norm;
    let abs_error = norm
        * (ratio * (a_inv.abs_error_estimate + b_inv.abs_error_estimate)
            + k.abs() * (a_one.abs_error_estimate + b_one.abs_error_estimate));
    Ok(BogoliubovPair {
        alpha,
        beta,
        f_term: boundary_term(ke, k, big_k, av, spec.x0),
        beta_f_term: boundary_term(-ke, k, big_k, av, spec.x0),
        wedge,
        abs_error,
        converged: a_inv.converged && a_one.converged && b_inv.converged && b_one.converged,
    })
}

/// Weights of `u_{K,J}` and `u*_{-K,J'}` in the normalized Unruh mode
/// `U_{K,J}`, where `J'` is the other wedge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnruhWeights {
    pub wedge: Wedge,
    pub own: f64,
    pub partner: f64,
}

pub fn unruh_mode_coefficients(big_k: f64, wedge: Wedge, a: AccelerationParam) -> Result<UnruhWeights> {
    nonzero(big_k, "K")?;
    let r = PI * big_k.abs() / a.get();
    // 1 - e^{-2r} without cancellation for small r.
    let n = (-(-2.0 * r).exp_m1()).sqrt();
    Ok(UnruhWeights {
        wedge,
        own: 1.0 / n,
        partner: (-r).exp() / n,
    })
}

/// Numeric check that `U_{K,I}` has no negative-frequency Minkowski
/// component at wave vector `k`. Returns `(|(u*_k, U_K)|, scale)` where the
/// scale is the single-mode overlap `|(u_{k'}, u_{K,I})|` with `k'` parallel
/// to `K`. The `x₀` boundary terms are removed first: they are artifacts of
/// the cutoff, not of the mode.
pub fn unruh_annihilation_residual(
    k: f64,
    big_k: f64,
    a: AccelerationParam,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let w = unruh_mode_coefficients(big_k, Wedge::I, a)?;
    let one = bogoliubov_numeric(k, big_k, a, Wedge::I, spec)?;
    let two = bogoliubov_numeric(k, -big_k, a, Wedge::II, spec)?;
    let (_, beta1) = one.without_f();
    let (alpha2, _) = two.without_f();
    // (u*_k, u*_{-K,II}) = -(u_k, u_{-K,II})*
    let overlap = w.own * beta1 - w.partner * alpha2.conj();
    let parallel = k.abs() * big_k.signum();
    let scale = bogoliubov_numeric(parallel, big_k, a, Wedge::I, spec)?.without_f().0.norm() * w.own;
    Ok((overlap.norm(), scale))
}

/// Thermal pair statistics of one Rindler mode in the Minkowski vacuum:
/// `P(n) = (1 - x) xⁿ` with `x = e^{-2π|K|/a}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDistribution {
    pub x: f64,
}

impl PairDistribution {
    pub fn pmf(&self, n: u32) -> f64 {
        (1.0 - self.x) * self.x.powi(n as i32)
    }

    pub fn mean(&self) -> f64 {
        self.x / (1.0 - self.x)
    }

    /// `P(0), …, P(n_max)`.
    pub fn truncated(&self, n_max: u32) -> Vec<f64> {
        (0..=n_max).map(|n| self.pmf(n)).collect()
    }

    /// Probability of more than `n_max` pairs.
    pub fn tail_mass(&self, n_max: u32) -> f64 {
        self.x.powi(n_max as i32 + 1)
    }
}

pub fn vacuum_pair_distribution(big_k: f64, a: AccelerationParam) -> Result<PairDistribution> {
    nonzero(big_k, "K")?;
    Ok(PairDistribution {
        x: (-2.0 * PI * big_k.abs() / a.get()).exp(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumMode {
    pub j: i64,
    pub big_k: f64,
    /// Boltzmann ratio `x_j`.
    pub x: f64,
    /// Normalization `C_j = √(1 - x_j)`.
    pub c: f64,
}

/// The Minkowski vacuum as a product of two-mode pair states over a
/// discretized Rindler spectrum `K_j = 2πj/L`, `0 < |j| ≤ j_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct VacuumModel {
    pub a: AccelerationParam,
    pub box_length: f64,
    pub modes: Vec<VacuumMode>,
}

impl VacuumModel {
    pub fn new(a: AccelerationParam) -> Self {
        Self::with_box(a, 200.0 / a.get(), 400).expect("default box is valid")
    }

    pub fn with_box(a: AccelerationParam, box_length: f64, j_max: i64) -> Result<Self> {
        if !(box_length > 0.0 && box_length.is_finite()) || j_max < 1 {
            return Err(Error::InvalidArgument("box length and j_max must be positive".into()));
        }
        let modes = (-j_max..=j_max)
            .filter(|&j| j != 0)
            .map(|j| {
                let big_k = 2.0 * PI * j as f64 / box_length;
                let x = (-2.0 * PI * big_k.abs() / a.get()).exp();
                VacuumMode {
                    j,
                    big_k,
                    x,
                    c: (1.0 - x).sqrt(),
                }
            })
            .collect();
        Ok(Self { a, box_length, modes })
    }

    /// The wedge-II partner of mode `K_j` is `-K_j`.
    pub fn partner(&self, mode: &VacuumMode) -> f64 {
        -mode.big_k
    }

    pub fn mean_occupancy(&self, mode: &VacuumMode) -> f64 {
        PairDistribution { x: mode.x }.mean()
    }
}

/// `T_U = a/2π` in natural units.
pub fn unruh_temperature(a: AccelerationParam) -> f64 {
    a.get() / (2.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiConversion {
    pub acceleration: f64,
    pub temperature_kelvin: f64,
    /// `a/c` in 1/s.
    pub acceleration_frequency: f64,
}

/// SI quantities for a proper acceleration in m/s².
pub fn si_conversions(a_si: f64) -> Result<SiConversion> {
    if !(a_si > 0.0 && a_si.is_finite()) {
        return Err(Error::NonPositiveAcceleration(a_si));
    }
    Ok(SiConversion {
        acceleration: a_si,
        temperature_kelvin: a_si * HBAR / (2.0 * PI * C_LIGHT * K_BOLTZMANN),
        acceleration_frequency: a_si / C_LIGHT,
    })
}

/// Inverse of [`si_conversions`] for a temperature in kelvin.
pub fn si_from_temperature(kelvin: f64) -> Result<SiConversion> {
    if !(kelvin > 0.0 && kelvin.is_finite()) {
        return Err(Error::InvalidArgument(format!("temperature must be positive, got {kelvin}")));
    }
    si_conversions(2.0 * PI * C_LIGHT * K_BOLTZMANN * kelvin / HBAR)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc(a: f64) -> AccelerationParam {
        AccelerationParam::new(a).unwrap()
    }

    fn thermal(k: f64, big_k: f64, a: f64) -> f64 {
        2.0 * PI * a * k.abs() * (2.0 * PI * big_k.abs() / a).exp_m1()
    }

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
            .collect()
    }

    const OFF: BoundaryTerm = BoundaryTerm::Excluded;

    #[test]
    fn selection_rule() {
        let a = acc(1.0);
        assert_eq!(alpha_closed(1.0, -1.0, a, OFF).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(beta_closed(1.0, -1.0, a, OFF).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(bogoliubov_wedge2(1.0, 1.0, a, OFF).unwrap().alpha, Complex64::new(0.0, 0.0));
        assert!(bogoliubov_wedge2(1.0, -1.0, a, OFF).unwrap().alpha.norm() > 0.1);
        assert!(alpha_closed(0.0, 1.0, a, OFF).is_err());
        assert!(beta_closed(1.0, 0.0, a, OFF).is_err());
    }

    #[test]
    fn closed_form_values() {
        let a = acc(1.0);
        let al = alpha_closed(1.0, 1.0, a, OFF).unwrap().norm_sqr();
        let expected = PI.exp() / (4.0 * PI * PI) * PI / PI.sinh();
        assert!((al / expected - 1.0).abs() < 1e-12);
        let be = beta_closed(1.0, 1.0, a, OFF).unwrap().norm_sqr();
        assert!((be - 2.9777e-4).abs() < 1e-8);
        assert!((be - 1.0 / (2.0 * PI * (2.0 * PI).exp_m1())).abs() < 1e-16);
        // |α|² - |β|² = |β|² (e^{2π|K|/a} - 1)
        assert!(((al - be) / (be * (2.0 * PI).exp_m1()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_and_ratio_laws() {
        for &av in &[0.5, 1.0, 3.0] {
            let a = acc(av);
            for &k in &log_grid(0.1 * av, 10.0 * av, 5) {
                for &kk in &log_grid(0.1 * av, 10.0 * av, 5) {
                    for s in [1.0, -1.0] {
                        let b = beta_closed(s * k, s * kk, a, OFF).unwrap().norm_sqr();
                        assert!((b * thermal(k, kk, av) - 1.0).abs() < 1e-10);
                        let al = alpha_closed(s * k, s * kk, a, OFF).unwrap().norm_sqr();
                        let ratio = al / b / (2.0 * PI * kk / av).exp();
                        assert!((ratio - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn large_k_stays_finite() {
        let a = acc(1.0);
        let b = beta_closed(1.0, 60.0, a, OFF).unwrap();
        assert!(b.norm() > 0.0 && b.norm().is_finite());
        assert!((b.norm_sqr() * thermal(1.0, 60.0, 1.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn wedge2_mirrors_wedge1() {
        let a = acc(1.3);
        for (k, kk) in [(0.7, 2.0), (-1.5, 0.4), (3.0, -3.0)] {
            let one = bogoliubov_wedge1(k, kk, a, OFF).unwrap();
            let two = bogoliubov_wedge2(k, -kk, a, OFF).unwrap();
            assert!((two.beta.norm() - one.beta.norm()).abs() < 1e-14);
            assert!((two.alpha.norm() - one.alpha.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn numeric_matches_closed_form() {
        let a = acc(1.0);
        let spec = QuadratureSpec::for_acceleration(a).with_epsilon(1e-4).with_x0(1e-4);
        let x0 = BoundaryTerm::At(spec.x0);
        for (k, kk) in [(1.0, 1.0), (-0.8, -0.5), (2.0, -1.0)] {
            let num = bogoliubov_numeric(k, kk, a, Wedge::I, &spec).unwrap();
            let cl = bogoliubov_wedge1(k, kk, a, x0).unwrap();
            assert!(num.converged);
            let scale = cl.alpha.norm();
            assert!((num.alpha - cl.alpha).norm() < 1e-2 * scale, "{k} {kk}");
            assert!((num.beta - cl.beta).norm() < 1e-2 * scale, "{k} {kk}");
            assert_eq!(num.f_term, cl.f_term);
        }
        let num = bogoliubov_numeric(-1.0, -1.0, a, Wedge::II, &spec).unwrap();
        let cl = bogoliubov_wedge2(-1.0, -1.0, a, x0).unwrap();
        assert!((num.alpha - cl.alpha).norm() < 1e-2 * cl.alpha.norm());
    }

    #[test]
    fn cutoff_moves_only_the_boundary_term() {
        let a = acc(1.0);
        let spec = QuadratureSpec::for_acceleration(a).with_epsilon(1e-3).with_x0(1e-4);
        let full = bogoliubov_numeric(1.0, 1.0, a, Wedge::I, &spec).unwrap();
        let half = bogoliubov_numeric(1.0, 1.0, a, Wedge::I, &spec.with_x0(5e-5)).unwrap();
        let (a1, b1) = full.without_f();
        let (a2, b2) = half.without_f();
        assert!((a1 - a2).norm() < 1e-3 * a1.norm());
        assert!((b1 - b2).norm() < 1e-3 * a1.norm());
        assert!((full.f_term.arg() - half.f_term.arg()).abs() > 0.5);
    }

    #[test]
    fn vanishing_k_is_flagged() {
        let a = acc(1.0);
        let spec = QuadratureSpec::for_acceleration(a);
        let r = bogoliubov_numeric(1.0, 1e-5, a, Wedge::I, &spec).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn unruh_modes() {
        let a = acc(1.0);
        let w = unruh_mode_coefficients(1.0, Wedge::I, a).unwrap();
        let n = (1.0 - (-2.0 * PI).exp()).sqrt();
        assert!((w.own - 1.0 / n).abs() < 1e-15);
        assert!((w.partner - (-PI).exp() / n).abs() < 1e-15);
        let w = unruh_mode_coefficients(-80.0, Wedge::II, a).unwrap();
        assert_eq!(w.own, 1.0);
        assert!(w.partner < 1e-100);
        assert!(unruh_mode_coefficients(0.0, Wedge::I, a).is_err());
    }

    #[test]
    fn unruh_mode_annihilated_by_negative_frequencies() {
        let a = acc(1.0);
        let spec = QuadratureSpec::for_acceleration(a).with_epsilon(1e-4);
        for k in [-2.0, -0.3, 0.3, 1.0, 4.0] {
            let (res, scale) = unruh_annihilation_residual(k, 1.0, a, &spec).unwrap();
            assert!(res < 1e-3 * scale, "k = {k}: {res} vs {scale}");
        }
    }

    #[test]
    fn pair_distribution() {
        let a = acc(2.0);
        let d = vacuum_pair_distribution(2.0, a).unwrap();
        assert!((d.pmf(0) - (1.0 - (-2.0 * PI).exp())).abs() < 1e-15);
        for n in 0..20 {
            assert!((d.pmf(n + 1) / d.pmf(n) - d.x).abs() < 1e-15);
        }
        let total: f64 = d.truncated(10).iter().sum::<f64>() + d.tail_mass(10);
        assert!((total - 1.0).abs() < 1e-12);
        let bose = 1.0 / (2.0 * PI * 2.0 / 2.0).exp_m1();
        assert!((d.mean() - bose).abs() < 1e-12 * bose);
        assert!(vacuum_pair_distribution(0.0, a).is_err());
    }

    #[test]
    fn vacuum_model_modes() {
        let a = acc(1.0);
        let m = VacuumModel::new(a);
        assert_eq!(m.modes.len(), 800);
        for mode in &m.modes {
            assert!(mode.x > 0.0 && mode.x < 1.0);
            assert!((mode.c * mode.c - (1.0 - mode.x)).abs() < 1e-15);
            let bose = 1.0 / (2.0 * PI * mode.big_k.abs()).exp_m1();
            assert!((m.mean_occupancy(mode) - bose).abs() <= 1e-12 * bose.max(1e-300));
        }
        let last = m.modes.last().unwrap();
        assert!(last.x < 1e-10);
        assert_eq!(m.partner(last), -last.big_k);
    }

    #[test]
    fn temperatures() {
        assert!((unruh_temperature(acc(2.0 * PI)) - 1.0).abs() < 1e-15);
        assert_eq!(unruh_temperature(acc(4.0)), 2.0 * unruh_temperature(acc(2.0)));
        let s = si_from_temperature(1.0).unwrap();
        assert!((s.acceleration / 2.4659e20 - 1.0).abs() < 1e-3);
        assert!((s.acceleration_frequency / 8.2253e11 - 1.0).abs() < 1e-3);
        let back = si_conversions(s.acceleration).unwrap();
        assert!((back.temperature_kelvin - 1.0).abs() < 1e-12);
        assert!(si_conversions(-1.0).is_err());
    }
}
