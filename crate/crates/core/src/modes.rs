//! Plane-wave mode functions and the invariant indefinite scalar product.
//!
//! Positive-frequency Minkowski plane waves are
//! `u_k(t, x) = exp[ik(x - ε_k t)] / √(4π|k|)` and Rindler plane waves are
//! `exp[iK(ξ ∓ ε_K η)] / √(4π|K|)` inside their wedge (upper sign in wedge I)
//! and zero in the other wedge. Negative-frequency modes are the complex
//! conjugates.
//!
//! The scalar product `(f, g) = i ∫ dx (f* ∂ₜg - ∂ₜf* g)` is available on a
//! uniform grid ([`scalar_product_x`]), adaptively on a possibly tilted slice
//! ([`scalar_product_on_slice`]), and in wave-vector space
//! ([`scalar_product_k`]).

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::coords::{to_rindler, AccelerationParam, RindlerEvent, SpacetimeEvent, Wedge};
use crate::error::{nonzero, Error, Result};
use crate::quad::{integrate_adaptive, integrate_sqrt_singular, IntegralResult, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

type Profile = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
type EventProfile = Arc<dyn Fn(SpacetimeEvent) -> Complex64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Minkowski,
    Rindler(Wedge),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqSign {
    Positive,
    /// The complex-conjugate mode.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLabel {
    pub frame: Frame,
    pub wavevector: f64,
    pub freq_sign: FreqSign,
}

impl ModeLabel {
    pub fn new(frame: Frame, wavevector: f64, freq_sign: FreqSign) -> Result<Self> {
        nonzero(wavevector, "wavevector")?;
        Ok(Self {
            frame,
            wavevector,
            freq_sign,
        })
    }

    /// Value of the mode at a Minkowski event. Rindler modes vanish outside
    /// their wedge and are undefined on the horizon.
    pub fn eval(&self, ev: SpacetimeEvent, a: AccelerationParam) -> Result<Complex64> {
        let v = match self.frame {
            Frame::Minkowski => minkowski_mode(self.wavevector, ev.t, ev.x)?,
            Frame::Rindler(w) => rindler_mode(self.wavevector, w, to_rindler(ev, a)?)?,
        };
        Ok(match self.freq_sign {
            FreqSign::Positive => v,
            FreqSign::Negative => v.conj(),
        })
    }
}

fn norm(k: f64) -> f64 {
    1.0 / (4.0 * PI * k.abs()).sqrt()
}

pub fn minkowski_mode(k: f64, t: f64, x: f64) -> Result<Complex64> {
    nonzero(k, "k")?;
    Ok(Complex64::from_polar(norm(k), k * x - k.abs() * t))
}

/// `∂ₜ u_k = -i|k| u_k`.
pub fn minkowski_mode_dt(k: f64, t: f64, x: f64) -> Result<Complex64> {
    Ok(-I * k.abs() * minkowski_mode(k, t, x)?)
}

/// Rindler plane wave of wedge `wedge` evaluated at `at`; zero when `at`
/// lies in the other wedge.
pub fn rindler_mode(big_k: f64, wedge: Wedge, at: RindlerEvent) -> Result<Complex64> {
    nonzero(big_k, "K")?;
    if at.wedge != wedge {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let eps = big_k.signum();
    let phase = match wedge {
        Wedge::I => big_k * (at.xi - eps * at.eta),
        // Increasing η runs backwards in Minkowski time in wedge II.
        Wedge::II => big_k * (at.xi + eps * at.eta),
    };
    Ok(Complex64::from_polar(norm(big_k), phase))
}

/// A field and its time derivative on a constant-time slice, as functions
/// of position. Derivatives are carried analytically.
#[derive(Clone)]
pub struct SliceField {
    value: Profile,
    time_derivative: Profile,
}

impl SliceField {
    pub fn new<V, D>(value: V, time_derivative: D) -> Self
    where
        V: Fn(f64) -> Complex64 + Send + Sync + 'static,
        D: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            time_derivative: Arc::new(time_derivative),
        }
    }

    pub fn value(&self, x: f64) -> Complex64 {
        (self.value)(x)
    }

    pub fn time_derivative(&self, x: f64) -> Complex64 {
        (self.time_derivative)(x)
    }

    pub fn conj(&self) -> Self {
        let (v, d) = (self.value.clone(), self.time_derivative.clone());
        SliceField::new(move |x| v(x).conj(), move |x| d(x).conj())
    }

    /// `self + c · other`
    pub fn add_scaled(&self, c: Complex64, other: &SliceField) -> Self {
        let (v1, d1) = (self.value.clone(), self.time_derivative.clone());
        let (v2, d2) = (other.value.clone(), other.time_derivative.clone());
        SliceField::new(move |x| v1(x) + c * v2(x), move |x| d1(x) + c * d2(x))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let (v, d) = (self.value.clone(), self.time_derivative.clone());
        SliceField::new(move |x| c * v(x), move |x| c * d(x))
    }

    /// Minkowski plane wave on the slice `t = t0`.
    pub fn minkowski(k: f64, t0: f64) -> Result<Self> {
        nonzero(k, "k")?;
        Ok(SliceField::new(
            move |x| Complex64::from_polar(norm(k), k * x - k.abs() * t0),
            move |x| -I * k.abs() * Complex64::from_polar(norm(k), k * x - k.abs() * t0),
        ))
    }

    /// Rindler plane wave on the `t = η = 0` slice: `|ax|^{iK/a} / √(4π|K|)`
    /// inside the wedge with `∂ₜ = -i|K|/(a|x|)`, zero outside.
    pub fn rindler_t0(big_k: f64, wedge: Wedge, a: AccelerationParam) -> Result<Self> {
        nonzero(big_k, "K")?;
        let a = a.get();
        let inside = move |x: f64| x * wedge.sign() > 0.0;
        let value = move |x: f64| {
            if inside(x) {
                Complex64::from_polar(norm(big_k), big_k / a * (a * x.abs()).ln())
            } else {
                Complex64::new(0.0, 0.0)
            }
        };
        Ok(SliceField::new(value, move |x| {
            if inside(x) {
                -I * big_k.abs() / (a * x.abs()) * value(x)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }
}

/// Uniform sampling of a slice. Periodic grids use the rectangle rule on
/// `n` points; open grids use the trapezoid rule on `n + 1` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub periodic: bool,
}

impl UniformGrid {
    pub fn periodic(lo: f64, hi: f64, n: usize) -> Self {
        Self {
            lo,
            hi,
            n,
            periodic: true,
        }
    }

    pub fn open(lo: f64, hi: f64, n: usize) -> Self {
        Self {
            lo,
            hi,
            n,
            periodic: false,
        }
    }

    fn step(&self) -> f64 {
        (self.hi - self.lo) / self.n as f64
    }

    fn sum_every(&self, stride: usize, f: &impl Fn(f64) -> Complex64) -> Complex64 {
        let h = self.step() * stride as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut j = 0;
        while j < self.n {
            acc += f(self.lo + j as f64 * self.step());
            j += stride;
        }
        if !self.periodic {
            acc += 0.5 * (f(self.hi) - f(self.lo));
        }
        acc * h
    }
}

/// `(f, g) = i ∫ dx [f* ∂ₜg - (∂ₜf)* g]` on a uniform grid. The error
/// estimate compares against the same rule at half resolution.
pub fn scalar_product_x(
    f: &SliceField,
    g: &SliceField,
    grid: &UniformGrid,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    if grid.n < 2 || !grid.n.is_multiple_of(2) || !(grid.hi > grid.lo) {
        return Err(Error::InvalidArgument(
            "grid needs an even number of intervals on a nonempty range".into(),
        ));
    }
    let density = |x: f64| I * (f.value(x).conj() * g.time_derivative(x) - f.time_derivative(x).conj() * g.value(x));
    let fine = grid.sum_every(1, &density);
    let coarse = grid.sum_every(2, &density);
    let err = (fine - coarse).norm();
    Ok(IntegralResult {
        value: fine,
        abs_error_estimate: err,
        converged: err <= (spec.rel_tol * fine.norm()).max(spec.abs_floor),
    })
}

/// Gram matrix of positive-frequency plane waves on a periodic box.
pub fn plane_wave_gram(
    ks: &[f64],
    grid: &UniformGrid,
    spec: &QuadratureSpec,
) -> Result<Vec<Vec<Complex64>>> {
    let fields = ks
        .iter()
        .map(|&k| SliceField::minkowski(k, 0.0))
        .collect::<Result<Vec<_>>>()?;
    fields
        .iter()
        .map(|f| {
            fields
                .iter()
                .map(|g| scalar_product_x(f, g, grid, spec).map(|r| r.value))
                .collect()
        })
        .collect()
}

/// Residuals of `(φ,ψ) = -(φ*,ψ*)* = (ψ,φ)*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugationResiduals {
    /// `|(φ,ψ) + (φ*,ψ*)*|`
    pub conjugate_pair: f64,
    /// `|(φ,ψ) - (ψ,φ)*|`
    pub hermitian: f64,
    /// `|(φ*,ψ*) + (ψ,φ)|`
    pub cross: f64,
}

impl ConjugationResiduals {
    pub fn max(&self) -> f64 {
        self.conjugate_pair.max(self.hermitian).max(self.cross)
    }
}

pub fn conjugation_identities(
    f: &SliceField,
    g: &SliceField,
    grid: &UniformGrid,
    spec: &QuadratureSpec,
) -> Result<ConjugationResiduals> {
    let fg = scalar_product_x(f, g, grid, spec)?.value;
    let fcgc = scalar_product_x(&f.conj(), &g.conj(), grid, spec)?.value;
    let gf = scalar_product_x(g, f, grid, spec)?.value;
    Ok(ConjugationResiduals {
        conjugate_pair: (fg + fcgc.conj()).norm(),
        hermitian: (fg - gf.conj()).norm(),
        cross: (fcgc + gf).norm(),
    })
}

/// A solution of the wave equation with its full gradient, for scalar
/// products on slices other than `t = const`.
#[derive(Clone)]
pub struct SpacetimeField {
    value: EventProfile,
    dt: EventProfile,
    dx: EventProfile,
}

impl SpacetimeField {
    pub fn new<V, T, X>(value: V, dt: T, dx: X) -> Self
    where
        V: Fn(SpacetimeEvent) -> Complex64 + Send + Sync + 'static,
        T: Fn(SpacetimeEvent) -> Complex64 + Send + Sync + 'static,
        X: Fn(SpacetimeEvent) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            dt: Arc::new(dt),
            dx: Arc::new(dx),
        }
    }

    pub fn minkowski(k: f64) -> Result<Self> {
        nonzero(k, "k")?;
        let u = move |e: SpacetimeEvent| Complex64::from_polar(norm(k), k * e.x - k.abs() * e.t);
        Ok(Self::new(u, move |e| -I * k.abs() * u(e), move |e| I * k * u(e)))
    }

    /// Rindler plane wave with its gradient in Minkowski coordinates; zero
    /// outside the wedge (and on the horizon, which has measure zero).
    pub fn rindler(big_k: f64, wedge: Wedge, a: AccelerationParam) -> Result<Self> {
        nonzero(big_k, "K")?;
        let eps = big_k.signum();
        let s = match wedge {
            Wedge::I => 1.0,
            Wedge::II => -1.0,
        };
        let value = move |e: SpacetimeEvent| match to_rindler(e, a) {
            Ok(r) => rindler_mode(big_k, wedge, r).unwrap_or_default(),
            Err(_) => Complex64::new(0.0, 0.0),
        };
        // Same expressions in both wedges: a∂ξ = (x dx - t dt)/(x² - t²),
        // a∂η = (x dt - t dx)/(x² - t²).
        let grad = move |e: SpacetimeEvent, along_t: bool| -> Complex64 {
            let v = value(e);
            if v == Complex64::new(0.0, 0.0) {
                return v;
            }
            let d = (e.x - e.t) * (e.x + e.t) * a.get();
            let (dxi, deta) = if along_t {
                (-e.t / d, e.x / d)
            } else {
                (e.x / d, -e.t / d)
            };
            I * big_k * (dxi - s * eps * deta) * v
        };
        Ok(Self::new(value, move |e| grad(e, true), move |e| grad(e, false)))
    }

    pub fn conj(&self) -> Self {
        let (v, t, x) = (self.value.clone(), self.dt.clone(), self.dx.clone());
        Self::new(move |e| v(e).conj(), move |e| t(e).conj(), move |e| x(e).conj())
    }

    pub fn value(&self, e: SpacetimeEvent) -> Complex64 {
        (self.value)(e)
    }
}

/// Scalar product on the slice `t = tilt · x` for `x ∈ [lo, hi]`:
/// `i ∫ dx [f* ∂ₜg - ∂ₜf* g + tilt (f* ∂ₓg - ∂ₓf* g)]`.
pub fn scalar_product_on_slice(
    f: &SpacetimeField,
    g: &SpacetimeField,
    tilt: f64,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    if !(tilt.abs() < 1.0) {
        return Err(Error::InvalidArgument("slice must be spacelike (|tilt| < 1)".into()));
    }
    integrate_adaptive(
        |x| {
            let e = SpacetimeEvent::new(tilt * x, x);
            let (fv, gv) = ((f.value)(e).conj(), (g.value)(e));
            let temporal = fv * (g.dt)(e) - (f.dt)(e).conj() * gv;
            let spatial = fv * (g.dx)(e) - (f.dx)(e).conj() * gv;
            I * (temporal + tilt * spatial)
        },
        lo,
        hi,
        spec,
    )
}

/// Positive- and negative-frequency wave-vector amplitudes of a one-photon
/// field: `ψ = ∫dk [ψ⁺(k) u_k + ψ⁻(k) u_k*]`.
#[derive(Clone)]
pub struct SpectralPair {
    positive: Profile,
    negative: Profile,
}

impl SpectralPair {
    pub fn new<P, N>(positive: P, negative: N) -> Self
    where
        P: Fn(f64) -> Complex64 + Send + Sync + 'static,
        N: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            positive: Arc::new(positive),
            negative: Arc::new(negative),
        }
    }

    pub fn positive_only<P>(positive: P) -> Self
    where
        P: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self::new(positive, |_| Complex64::new(0.0, 0.0))
    }

    pub fn negative_only<N>(negative: N) -> Self
    where
        N: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self::new(|_| Complex64::new(0.0, 0.0), negative)
    }

    pub fn positive(&self, k: f64) -> Complex64 {
        (self.positive)(k)
    }

    pub fn negative(&self, k: f64) -> Complex64 {
        (self.negative)(k)
    }

    /// Spectral amplitudes of the conjugate field ψ*: the roles of the
    /// positive and negative parts swap.
    pub fn conj(&self) -> Self {
        let (p, n) = (self.positive.clone(), self.negative.clone());
        Self::new(move |k| n(k).conj(), move |k| p(k).conj())
    }
}

/// `∫ dk/(2|k|) [f⁺* g⁺ - f⁻* g⁻]` over `|k| ≤ spec.k_max`.
pub fn scalar_product_k(
    f: &SpectralPair,
    g: &SpectralPair,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    let density = |k: f64| {
        (f.positive(k).conj() * g.positive(k) - f.negative(k).conj() * g.negative(k)) / (2.0 * k.abs())
    };
    // Split at k = 0 and remove any |k|^{-1/2} behaviour there.
    let right = integrate_sqrt_singular(density, spec.k_max, spec)?;
    let left = integrate_sqrt_singular(|k| density(-k), spec.k_max, spec)?;
    Ok(right + left)
}
