//! Complex Gamma function.
//!
//! `ln Γ` is evaluated from the Stirling series after shifting the argument
//! to `Re z >= SHIFT_TO`; the left half plane is reached through the
//! reflection formula. Working in log space keeps products such as
//! `Γ(iK/a) exp(π|K|/2a)` finite long after the factors themselves would
//! overflow or underflow.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const SHIFT_TO: f64 = 20.0;
#[allow(clippy::excessive_precision)]
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Stirling coefficients B_{2n} / (2n (2n - 1)), n = 1..=10.
#[allow(clippy::excessive_precision)]
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// A logarithm of Γ(z). The imaginary part is correct modulo 2π, which is
/// all that `exp` and `|Γ|` need.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite Gamma argument {z}")));
    }
    if is_pole(z) {
        return Err(Error::GammaPole(z));
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        let rest = ln_gamma_right(Complex64::new(1.0, 0.0) - z);
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - rest);
    }
    Ok(ln_gamma_right(z))
}

pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// Real-argument convenience wrapper.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(complex_gamma(Complex64::new(x, 0.0))?.re)
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut shifted = z;
    let mut product = Complex64::new(1.0, 0.0);
    let mut log_acc = Complex64::new(0.0, 0.0);
    while shifted.re < SHIFT_TO {
        product *= shifted;
        shifted += 1.0;
        // Fold into the log before the product can overflow.
        if product.norm() > 1e200 {
            log_acc += product.ln();
            product = Complex64::new(1.0, 0.0);
        }
    }
    log_acc += product.ln();
    stirling(shifted) - log_acc
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        series += term * c;
        term *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// ln sin(πz), stable for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(πz) = e^{-iπz} (1 - e^{2iπz}) / (-2i) with |e^{2iπz}| small
        -i * PI * z - (-2.0 * i).ln() + (1.0 - (2.0 * i * PI * z).exp()).ln()
    } else {
        i * PI * z - (2.0 * i).ln() + (1.0 - (-2.0 * i * PI * z).exp()).ln()
    }
}
