use std::f64::consts::{FRAC_2_PI, FRAC_PI_4};
use std::sync::OnceLock;

use gauss_quad::GaussLaguerre;

use crate::error::{Error, Result};

/// Argument at which [`struve_h0`] leaves the power series for the
/// `Y0`-plus-remainder form. Both branches agree to ~1e-12 here.
pub const STRUVE_SWITCH: f64 = 12.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LAGUERRE_NODES: usize = 60;

/// Struve function of order zero, `H0(z)` for `z >= 0`.
///
/// Small arguments use the power series
/// `H0(z) = (2/π) Σ (-1)^k z^(2k+1) / ((2k+1)!!)²`.
/// Beyond [`STRUVE_SWITCH`] the function is written as
/// `Y0(z) + (2/π) ∫₀^∞ e^(-zt) / sqrt(1+t²) dt`; the integral is the
/// remainder whose expansion is the familiar `2/(πz) (1 - 1/z² + 9/z⁴ - …)`
/// tail, and is evaluated with Gauss–Laguerre nodes so it stays accurate
/// where the divergent asymptotic series would not.
pub fn struve_h0(z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain {
            function: "struve_h0",
            reason: format!("argument must be >= 0, got {z}"),
        });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z.is_infinite() {
        return Ok(0.0);
    }
    Ok(if z <= STRUVE_SWITCH { h0_series(z) } else { h0_large(z) })
}

pub(crate) fn h0_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for k in 1..200 {
        let odd = (2 * k + 1) as f64;
        term *= -z2 / (odd * odd);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_PI * sum
}

pub(crate) fn h0_large(z: f64) -> f64 {
    y0_hankel(z) + FRAC_2_PI * laplace_remainder(z)
}

/// `∫₀^∞ e^(-zt) (1+t²)^(-1/2) dt`, substituted to `s = zt`.
fn laplace_remainder(z: f64) -> f64 {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    let rule = RULE.get_or_init(|| {
        GaussLaguerre::new(LAGUERRE_NODES, 0.0)
            .expect("valid Gauss-Laguerre degree")
            .into_node_weight_pairs()
    });
    let sum: f64 = rule
        .iter()
        .map(|&(s, w)| {
            let r = s / z;
            w / (1.0 + r * r).sqrt()
        })
        .sum();
    sum / z
}

/// Bessel function of the second kind, order zero, for `z > 0`.
///
/// Ascending series up to [`STRUVE_SWITCH`], Hankel asymptotic form beyond.
pub fn bessel_y0(z: f64) -> Result<f64> {
    if z.is_nan() || z <= 0.0 {
        return Err(Error::Domain {
            function: "bessel_y0",
            reason: format!("argument must be > 0, got {z}"),
        });
    }
    if z.is_infinite() {
        return Ok(0.0);
    }
    Ok(if z <= STRUVE_SWITCH { y0_series(z) } else { y0_hankel(z) })
}

fn y0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut j0 = 1.0;
    let mut tail = 0.0;
    let mut harmonic = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        j0 += term;
        tail -= term * harmonic;
        if term.abs() < 1e-18 {
            break;
        }
    }
    FRAC_2_PI * (((0.5 * z).ln() + EULER_GAMMA) * j0 + tail)
}

fn y0_hankel(z: f64) -> f64 {
    // a_k = Π_{j<=k} (2j-1)² / (k! (8z)^k); P = a0 - a2 + a4 …, Q = -a1 + a3 - …
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    for k in 0..200usize {
        match k % 4 {
            0 => p += a,
            1 => q -= a,
            2 => p -= a,
            _ => q += a,
        }
        let odd = (2 * k + 1) as f64;
        let next = a * odd * odd / ((k + 1) as f64 * 8.0 * z);
        if next >= a || next < 1e-17 {
            break;
        }
        a = next;
    }
    let chi = z - FRAC_PI_4;
    (FRAC_2_PI / z).sqrt() * (p * chi.sin() + q * chi.cos())
}
