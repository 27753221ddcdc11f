//! Rindler and Minkowski charts on 1+1 dimensional flat spacetime.
//!
//! Wedge I is the region `x > |t|`, wedge II the region `x < -|t|`. In wedge I
//!
//! ```text
//! t = exp(a ξ) sinh(a η) / a,   x = exp(a ξ) cosh(a η) / a
//! ```
//!
//! and wedge II is the point reflection `(t, x) -> (-t, -x)` of the same map.
//! Points on or outside the horizon `|t| = |x|` have no Rindler coordinates
//! and are rejected with [`Error::Horizon`].

use crate::error::{Error, Result};

/// Tolerance of the internal consistency check in [`null_coordinate_identity`].
const NULL_IDENTITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeEvent {
    pub t: f64,
    pub x: f64,
}

impl SpacetimeEvent {
    pub fn new(t: f64, x: f64) -> Self {
        Self { t, x }
    }

    /// The wedge containing this event, if any. Strict inequalities, no fuzz.
    pub fn wedge(&self) -> Option<Wedge> {
        if self.x > self.t.abs() {
            Some(Wedge::I)
        } else if self.x < -self.t.abs() {
            Some(Wedge::II)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wedge {
    I,
    II,
}

impl Wedge {
    pub fn other(self) -> Wedge {
        match self {
            Wedge::I => Wedge::II,
            Wedge::II => Wedge::I,
        }
    }

    /// +1 for wedge I, -1 for wedge II: the sign of `x` inside the wedge.
    pub fn sign(self) -> f64 {
        match self {
            Wedge::I => 1.0,
            Wedge::II => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RindlerEvent {
    pub eta: f64,
    pub xi: f64,
    pub wedge: Wedge,
}

impl RindlerEvent {
    pub fn new(eta: f64, xi: f64, wedge: Wedge) -> Self {
        Self { eta, xi, wedge }
    }
}

/// The chart constant `a` (inverse length). Always positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AccelerationParam(f64);

impl AccelerationParam {
    pub fn new(a: f64) -> Result<Self> {
        if a > 0.0 && a.is_finite() {
            Ok(Self(a))
        } else {
            Err(Error::NonPositiveAcceleration(a))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Propagation direction label ε = ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// ε = +1, left to right.
    Plus,
    /// ε = -1, right to left.
    Minus,
}

impl Direction {
    pub fn of(value: f64) -> Direction {
        if value.is_sign_negative() {
            Direction::Minus
        } else {
            Direction::Plus
        }
    }

    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }
}

pub fn to_minkowski(ev: RindlerEvent, a: AccelerationParam) -> SpacetimeEvent {
    let a = a.get();
    let rho = (a * ev.xi).exp() / a;
    let s = ev.wedge.sign();
    SpacetimeEvent {
        t: s * rho * (a * ev.eta).sinh(),
        x: s * rho * (a * ev.eta).cosh(),
    }
}

pub fn to_rindler(ev: SpacetimeEvent, a: AccelerationParam) -> Result<RindlerEvent> {
    let wedge = ev.wedge().ok_or(Error::Horizon { t: ev.t, x: ev.x })?;
    let a = a.get();
    // Reflect wedge II onto wedge I; the map is odd in (t, x).
    let s = wedge.sign();
    let (t, x) = (s * ev.t, s * ev.x);
    // x^2 - t^2 = (x - t)(x + t) avoids cancellation near the horizon.
    let interval = ((x - t) * (x + t)).sqrt();
    Ok(RindlerEvent {
        eta: (t / x).atanh() / a,
        xi: (a * interval).ln() / a,
        wedge,
    })
}

/// Returns `a(ξ - εη)` for the event and checks it against `ln(a|x - εt|)`.
pub fn null_coordinate_identity(
    ev: SpacetimeEvent,
    eps: Direction,
    a: AccelerationParam,
) -> Result<f64> {
    let r = to_rindler(ev, a)?;
    let e = eps.sign();
    let lhs = a.get() * (r.xi - e * r.eta);
    let rhs = (a.get() * (ev.x - e * ev.t).abs()).ln();
    let residual = (lhs - rhs).abs();
    if residual > NULL_IDENTITY_TOL * (1.0 + rhs.abs()) {
        return Err(Error::IdentityViolation {
            what: "null coordinate identity",
            residual,
            tolerance: NULL_IDENTITY_TOL,
        });
    }
    Ok(lhs)
}

/// Proper acceleration `α = a exp(-aξ)` of the worldline at fixed ξ.
pub fn proper_acceleration(a: AccelerationParam, xi: f64) -> f64 {
    a.get() * (-a.get() * xi).exp()
}

/// Common velocity `dx/dt = tanh(aη)` of the constant-η slice.
pub fn slice_velocity(a: AccelerationParam, eta: f64) -> f64 {
    (a.get() * eta).tanh()
}

/// Translated coordinate `X = x - 1/a`.
pub fn shifted_coordinate(x: f64, a: AccelerationParam) -> f64 {
    x - 1.0 / a.get()
}
