//! Numerical integration for the oscillatory, endpoint-singular and
//! regulator-dependent integrals used throughout the crate.
//!
//! The workhorse is a globally adaptive 21-point Gauss-Kronrod rule over
//! complex-valued integrands. Infinite endpoints are compactified onto the
//! unit interval. Oscillatory tails are damped by `exp(-εx)`, the same
//! regulator that appears in the physics, and then summed chunk by chunk
//! until a rigorous envelope bound on the remainder is below tolerance.
//!
//! Every regulator and cutoff lives in [`QuadratureSpec`].

mod gamma;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::Add;

use num_complex::Complex64;

use crate::coords::{AccelerationParam, Direction};
use crate::error::{Error, Result};

pub use gamma::{complex_gamma, gamma, ln_gamma};

/// Regulators, cutoffs and tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Damping rate ε of oscillatory integrands (inverse length).
    pub epsilon_reg: f64,
    /// Lower cutoff x₀ of `1/x` integrands.
    pub x0: f64,
    /// Minimum absorbable Rindler frequency Ω₀.
    pub omega0_cutoff: f64,
    /// Truncation bound for wave-vector integrals over the whole line.
    pub k_max: f64,
    pub rel_tol: f64,
    /// Absolute error accepted when the integral itself is close to zero.
    pub abs_floor: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    /// Defaults scaled to the chart constant `a`: ε = 0.01a, x₀ = 1e-4/a,
    /// Ω₀ = 0.01a, k_max = 50a.
    pub fn for_acceleration(a: AccelerationParam) -> Self {
        let a = a.get();
        Self {
            epsilon_reg: 0.01 * a,
            x0: 1e-4 / a,
            omega0_cutoff: 0.01 * a,
            k_max: 50.0 * a,
            rel_tol: 1e-8,
            abs_floor: 1e-14,
            max_subdivisions: 2000,
        }
    }

    pub fn with_epsilon(mut self, epsilon_reg: f64) -> Self {
        self.epsilon_reg = epsilon_reg;
        self
    }

    pub fn with_x0(mut self, x0: f64) -> Self {
        self.x0 = x0;
        self
    }

    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0_cutoff = omega0;
        self
    }

    pub fn with_k_max(mut self, k_max: f64) -> Self {
        self.k_max = k_max;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSpec(msg.to_string()));
        if !(self.epsilon_reg > 0.0 && self.epsilon_reg.is_finite()) {
            return bad("epsilon_reg must be positive");
        }
        if !(self.x0 > 0.0 && self.x0.is_finite()) {
            return bad("x0 must be positive");
        }
        if !(self.rel_tol > 0.0) {
            return bad("rel_tol must be positive");
        }
        if !(self.abs_floor >= 0.0) {
            return bad("abs_floor must be nonnegative");
        }
        if !(self.omega0_cutoff >= 0.0) {
            return bad("omega0_cutoff must be nonnegative");
        }
        if !(self.k_max > self.omega0_cutoff) {
            return bad("k_max must exceed omega0_cutoff");
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions must be positive");
        }
        Ok(())
    }

    fn target(&self, value: Complex64) -> f64 {
        (self.rel_tol * value.norm()).max(self.abs_floor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub converged: bool,
}

impl IntegralResult {
    pub fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            converged: true,
        }
    }

    pub fn scale(self, factor: Complex64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.norm(),
            converged: self.converged,
        }
    }

    pub fn map_value(self, f: impl FnOnce(Complex64) -> Complex64) -> Self {
        Self {
            value: f(self.value),
            ..self
        }
    }
}

impl Add for IntegralResult {
    type Output = IntegralResult;

    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            abs_error_estimate: self.abs_error_estimate + rhs.abs_error_estimate,
            converged: self.converged && rhs.converged,
        }
    }
}

// 21-point Kronrod nodes (descending, last is the centre) and weights, with
// the embedded 10-point Gauss weights at the odd Kronrod indices.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_664_166_460,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn kronrod21<F: Fn(f64) -> Complex64>(f: &F, lo: f64, hi: f64) -> Segment {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut res_abs = fc.norm() * WGK[10];
    let mut fvals = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fvals[j] = (f1, f2);
        kronrod += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fvals[j].0 - mean).norm() + (fvals[j].1 - mean).norm());
    }
    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((kronrod - gauss) * half).norm();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        error = f64::INFINITY;
    }
    Segment {
        lo,
        hi,
        value,
        error,
    }
}

/// Globally adaptive Gauss-Kronrod on a finite interval.
fn adaptive_finite<F: Fn(f64) -> Complex64>(
    f: &F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> IntegralResult {
    let first = kronrod21(f, lo, hi);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut converged = false;
    let mut subdivisions = 1usize;
    loop {
        if total_err <= spec.target(total) {
            converged = true;
            break;
        }
        if subdivisions >= spec.max_subdivisions || !total_err.is_finite() {
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval no longer divisible in floating point.
            heap.push(worst);
            break;
        }
        let left = kronrod21(f, worst.lo, mid);
        let right = kronrod21(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }
    // Re-sum in interval order so the result does not carry the running
    // update's rounding drift.
    let mut segs = heap.into_vec();
    segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value = segs.iter().map(|s| s.value).sum::<Complex64>();
    let abs_error_estimate = segs.iter().map(|s| s.error).sum::<f64>();
    IntegralResult {
        value,
        abs_error_estimate,
        converged: converged && abs_error_estimate.is_finite(),
    }
}

/// Integrates `f` over `[lo, hi]`; either endpoint may be infinite.
///
/// Semi-infinite ranges use `x = lo + t/(1-t)`, the whole line uses
/// `x = t/(1-t²)`. Failure to meet the tolerance within
/// `spec.max_subdivisions` bisections is reported through `converged`.
pub fn integrate_adaptive<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if lo == hi {
        return Ok(IntegralResult::zero());
    }
    let guard = |x: f64, w: f64| -> Complex64 {
        if !x.is_finite() || !w.is_finite() {
            Complex64::new(0.0, 0.0)
        } else {
            f(x) * w
        }
    };
    let result = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => adaptive_finite(&f, lo, hi, spec),
        (true, false) => adaptive_finite(
            &|t: f64| {
                let s = 1.0 - t;
                guard(lo + t / s, 1.0 / (s * s))
            },
            0.0,
            1.0,
            spec,
        ),
        (false, true) => adaptive_finite(
            &|t: f64| {
                let s = 1.0 - t;
                guard(hi - t / s, 1.0 / (s * s))
            },
            0.0,
            1.0,
            spec,
        ),
        (false, false) => adaptive_finite(
            &|t: f64| {
                let s = 1.0 - t * t;
                guard(t / s, (1.0 + t * t) / (s * s))
            },
            -1.0,
            1.0,
            spec,
        ),
    };
    Ok(result)
}

/// Integrates a damped oscillatory integrand over `[start, ∞)` in chunks.
///
/// `envelope(x)` must bound `|f|` on `[x, ∞)` and decay like `exp(-rate x)`;
/// summation stops once `envelope(x) / rate` is below the tolerance, which
/// bounds the discarded tail.
pub fn integrate_damped_tail<F, E>(
    f: F,
    start: f64,
    chunk: f64,
    rate: f64,
    envelope: E,
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
    E: Fn(f64) -> f64,
{
    if !(chunk > 0.0 && rate > 0.0) {
        return Err(Error::InvalidArgument(
            "damped tail needs positive chunk length and decay rate".into(),
        ));
    }
    let mut total = IntegralResult::zero();
    let mut lo = start;
    // Hard cap: ~80 e-folds past the start cannot matter at double precision.
    let max_chunks = ((80.0 / rate) / chunk).ceil() as usize + 1;
    let chunk_spec = QuadratureSpec {
        abs_floor: spec.abs_floor * 1e-3,
        ..*spec
    };
    for _ in 0..max_chunks {
        let hi = lo + chunk;
        let piece = integrate_adaptive(&f, lo, hi, &chunk_spec)?;
        total = total + piece;
        lo = hi;
        let remainder = envelope(lo) / rate;
        if remainder <= 0.25 * spec.target(total.value) {
            total.abs_error_estimate += remainder;
            return Ok(total);
        }
    }
    total.abs_error_estimate += envelope(lo) / rate;
    total.converged = total.converged && total.abs_error_estimate <= spec.target(total.value);
    Ok(total)
}

/// Integrates an undamped oscillatory integrand with a slowly decaying
/// envelope over `[start, ∞)`: the integral is split at multiples of the
/// half period and the partial sums are extrapolated with Wynn's epsilon
/// algorithm. The error estimate is the spread of the last extrapolants.
pub fn integrate_oscillatory_tail<F>(f: F, start: f64, half_period: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(half_period > 0.0) {
        return Err(Error::InvalidArgument("half period must be positive".into()));
    }
    const MAX_TERMS: usize = 60;
    let mut partial = Vec::with_capacity(MAX_TERMS);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quad_err = 0.0;
    let mut converged = true;
    let mut lo = start;
    let mut previous: Option<Complex64> = None;
    let mut best = (Complex64::new(0.0, 0.0), f64::INFINITY);
    for n in 0..MAX_TERMS {
        let piece = integrate_adaptive(&f, lo, lo + half_period, spec)?;
        converged &= piece.converged;
        quad_err += piece.abs_error_estimate;
        sum += piece.value;
        partial.push(sum);
        lo += half_period;
        if n < 4 {
            continue;
        }
        let estimate = wynn_epsilon(&partial);
        if let Some(prev) = previous {
            let spread = (estimate - prev).norm();
            if spread < best.1 {
                best = (estimate, spread);
            }
            if spread <= 0.25 * spec.target(estimate) {
                return Ok(IntegralResult {
                    value: estimate,
                    abs_error_estimate: spread + quad_err,
                    converged,
                });
            }
        }
        previous = Some(estimate);
    }
    Ok(IntegralResult {
        value: best.0,
        abs_error_estimate: best.1 + quad_err,
        converged: false,
    })
}

/// Highest even column of Wynn's epsilon table for the given partial sums.
fn wynn_epsilon(s: &[Complex64]) -> Complex64 {
    let n = s.len();
    // prev = ε_{k-1}, cur = ε_k, both indexed by start position.
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Complex64> = s.to_vec();
    let mut best = *s.last().expect("nonempty");
    for k in 1..n {
        let mut next = Vec::with_capacity(n - k);
        for j in 0..n - k {
            let diff = cur[j + 1] - cur[j];
            if diff.norm() == 0.0 {
                return best;
            }
            next.push(prev[j + 1] + diff.inv());
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            best = *cur.last().expect("nonempty");
        }
    }
    best
}

/// Weight multiplying the power-phase integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerWeight {
    /// `1/x`
    Inverse,
    Constant,
}

/// `∫_{x₀}^∞ dx w(x) (ax)^{iK/a} exp(±ikx - εx)` with ε = `spec.epsilon_reg`.
///
/// The region below `1/|k|` is integrated in `ln x`, where the
/// `(ax)^{iK/a}` phase is linear; the remainder is integrated along a ray into the complex
/// plane on which the oscillation becomes exponential decay.
/// With the `1/x` weight and `|K| ln(1/ax₀)/a < 1e-3` the value is dominated
/// by the logarithmic cutoff dependence and is reported as not converged.
pub fn integrate_power_phase(
    k: f64,
    big_k: f64,
    a: AccelerationParam,
    sign: Direction,
    weight: PowerWeight,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    spec.validate()?;
    if k == 0.0 || !k.is_finite() {
        return Err(Error::ZeroArgument { name: "k" });
    }
    let a = a.get();
    let x0 = spec.x0;
    let eps = spec.epsilon_reg;
    let nu = big_k / a;
    let kk = sign.sign() * k;
    let integrand = move |x: f64| -> Complex64 {
        let phase = nu * (a * x).ln() + kk * x;
        let w = match weight {
            PowerWeight::Inverse => 1.0 / x,
            PowerWeight::Constant => 1.0,
        };
        Complex64::from_polar(w * (-eps * x).exp(), phase)
    };

    let split = (1.0 / k.abs()).max(x0);
    let near = if split > x0 {
        integrate_adaptive(
            |s: f64| {
                let x = s.exp();
                integrand(x) * x
            },
            x0.ln(),
            split.ln(),
            spec,
        )?
    } else {
        IntegralResult::zero()
    };
    // Beyond the split the integrand is analytic in the half plane where
    // e^{±ikx} decays, so the ray x = X + iσt (σ = sign of ±k) carries the
    // same integral with decay rate |k| instead of ε.
    let sigma = kk.signum();
    let ray = move |t: f64| -> Complex64 {
        let x = Complex64::new(split, sigma * t);
        let w = match weight {
            PowerWeight::Inverse => x.inv(),
            PowerWeight::Constant => Complex64::new(1.0, 0.0),
        };
        let exponent = Complex64::i() * nu * (a * x).ln() + (Complex64::i() * kk - eps) * x;
        w * exponent.exp() * Complex64::new(0.0, sigma)
    };
    // |(ax)^{iν}| ≤ e^{π|ν|/2} on the ray.
    let bound = match weight {
        PowerWeight::Inverse => 1.0 / split,
        PowerWeight::Constant => 1.0,
    } * (-eps * split + PI * nu.abs() / 2.0).exp();
    let rate = k.abs();
    let far = integrate_damped_tail(ray, 0.0, 4.0 / rate, rate, move |t: f64| bound * (-rate * t).exp(), spec)?;
    let mut result = near + far;
    if weight == PowerWeight::Inverse && nu.abs() * (a * x0).ln().abs() < 1e-3 {
        result.converged = false;
    }
    Ok(result)
}

/// `∫_0^hi f(K) dK` for `f` with an integrable `K^{-1/2}` singularity at 0,
/// via the substitution `K = u²`.
pub fn integrate_sqrt_singular<F>(f: F, hi: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(hi >= 0.0) {
        return Err(Error::InvalidInterval { lo: 0.0, hi });
    }
    integrate_adaptive(|u: f64| f(u * u) * (2.0 * u), 0.0, hi.sqrt(), spec)
}
