use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Modulation, Regime, RegimeConfig, WindowChoice};
use crate::error::{Error, Result};
use crate::medium::Medium;
use crate::specfun::{
    check_edge_decay, csinc, fourier_sum_unchecked, relative_l2, FrequencyWindow, QuadratureSpec, EDGE_DECAY,
};

/// Largest frequency sample count the automatic window may choose.
pub const MAX_SAMPLES: usize = 1 << 23;
const MIN_SAMPLES: usize = 1 << 14;
const PEAK_PROBES: usize = 4097;
const MAX_WIDENINGS: usize = 24;
const SITE_CHUNK: usize = 64;

/// One position node of the slit integral: `weight` already holds the
/// quadrature weight, the standing-wave envelope and the factor 2 from
/// folding the even integrand onto `[0, d/2]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Site {
    pub x: f64,
    pub weight: f64,
    pub cos2: f64,
}

pub(crate) fn sites(medium: &Medium, modulation: Modulation, rule: &QuadratureSpec, x_lo: f64) -> Vec<Site> {
    let d = medium.grating.d();
    match modulation {
        Modulation::Grating => rule
            .rule(x_lo, 0.5 * d)
            .into_iter()
            .map(|(x, w)| Site {
                x,
                weight: 2.0 * w * medium.standing_wave(x),
                cos2: medium.cos2(x),
            })
            .collect(),
        Modulation::Uniform => vec![Site {
            x: 0.0,
            weight: d,
            cos2: 1.0,
        }],
    }
}

/// Transverse phase `e^{i k x sinθ}` of a site, folded with its mirror
/// image; for uniform drive the whole period integrates to a sinc.
pub(crate) fn slit_phase(medium: &Medium, modulation: Modulation, site: &Site, sin_theta: f64) -> f64 {
    let k = medium.grating.k_as();
    match modulation {
        Modulation::Grating => (k * site.x * sin_theta).cos(),
        Modulation::Uniform => csinc(Complex64::new(0.5 * k * medium.grating.d() * sin_theta, 0.0)).re,
    }
}

pub(crate) fn kernel(medium: &Medium, regime: Regime, omega: f64, cos2: f64) -> Complex64 {
    match regime {
        Regime::Resonance => medium.chi3_at(omega, cos2),
        Regime::PhaseMatching => medium.phase_matching_at(omega, cos2),
        Regime::Full => medium.chi3_at(omega, cos2) * medium.phase_matching_at(omega, cos2),
    }
}

/// `(cos², weight × transverse phase)` pairs for one rule and angle.
fn weighted_sites(medium: &Medium, config: &RegimeConfig, rule: &QuadratureSpec, sin_theta: f64) -> Vec<(f64, f64)> {
    sites(medium, config.modulation, rule, 0.0)
        .iter()
        .map(|s| (s.cos2, s.weight * slit_phase(medium, config.modulation, s, sin_theta)))
        .collect()
}

fn spectrum_values(medium: &Medium, regime: Regime, weighted: &[(f64, f64)], grid: &[f64]) -> Vec<Complex64> {
    grid.par_iter()
        .map(|&w| {
            weighted
                .iter()
                .map(|&(cos2, weight)| weight * kernel(medium, regime, w, cos2))
                .sum()
        })
        .collect()
}

/// Slit-integrated spectrum on `grid`, computed with the configured rule
/// and its refinement. Fails if the two differ by more than the rule's
/// tolerance; otherwise returns the refined values.
pub(crate) fn checked_spectrum(
    medium: &Medium,
    config: &RegimeConfig,
    grid: &[f64],
    sin_theta: f64,
) -> Result<Vec<Complex64>> {
    let rule = config.x_quadrature;
    let coarse = spectrum_values(
        medium,
        config.regime,
        &weighted_sites(medium, config, &rule, sin_theta),
        grid,
    );
    if config.modulation == Modulation::Uniform {
        return Ok(coarse);
    }
    let fine = spectrum_values(
        medium,
        config.regime,
        &weighted_sites(medium, config, &rule.refined(), sin_theta),
        grid,
    );
    converged(&coarse, &fine, rule.rel_tol())?;
    Ok(fine)
}

fn converged(coarse: &[Complex64], fine: &[Complex64], tol: f64) -> Result<()> {
    let change = relative_l2(coarse, fine);
    if change > tol {
        return Err(Error::NotConverged {
            quadrature: "slit-position Gauss-Legendre",
            change,
            tol,
        });
    }
    Ok(())
}

/// Frequency window for transforming the configured spectrum at delays up
/// to `tau_extent` in magnitude, at transverse angle `asin(sin_theta)`.
///
/// The automatic choice starts from `W = 20 max(Ωe(0), 2π v0/L, γe)` and
/// doubles `W` until both edge samples are below the decay threshold
/// relative to the spectral peak. The spacing keeps the period `2π/Δω`
/// above `40/γe` for the resonance kernel and above `100 max(L/v0, 1/γe)`
/// when phase matching is included (its slowly decaying tail needs the
/// wider clearance), and above twice the delay extent.
pub(crate) fn resolve_window(
    medium: &Medium,
    config: &RegimeConfig,
    tau_extent: f64,
    sin_theta: f64,
) -> Result<FrequencyWindow> {
    let refine = match config.window {
        WindowChoice::Fixed(w) => return Ok(w),
        WindowChoice::Auto { refine } => refine,
    };
    let ge = medium.effective_dephasing();
    let t0 = medium.antinode_transit();
    let rabi0 = medium.effective_rabi(0.0);
    let w0 = 20.0 * rabi0.max(TAU / t0).max(ge);

    let weighted = weighted_sites(medium, config, &config.x_quadrature, sin_theta);
    let probes: Vec<f64> = (0..PEAK_PROBES)
        .map(|i| -w0 + 2.0 * w0 * i as f64 / (PEAK_PROBES - 1) as f64)
        .collect();
    let peak = spectrum_values(medium, config.regime, &weighted, &probes)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);

    let mut w = w0;
    let mut widenings = 0;
    loop {
        let edges = spectrum_values(medium, config.regime, &weighted, &[-w, w]);
        if edges[0].norm().max(edges[1].norm()) <= 0.9 * EDGE_DECAY * peak {
            break;
        }
        widenings += 1;
        if widenings > MAX_WIDENINGS {
            return Err(Error::ResolutionLimit {
                what: "frequency-window doublings",
                needed: widenings,
                limit: MAX_WIDENINGS,
            });
        }
        w *= 2.0;
    }

    let period = match config.regime {
        Regime::Resonance => 40.0 / ge,
        Regime::PhaseMatching | Regime::Full => 100.0 * t0.max(1.0 / ge),
    }
    .max(2.0 * tau_extent);
    let needed = (2.0 * w * period / TAU).ceil() as usize;
    let n = needed.next_power_of_two().max(MIN_SAMPLES) << refine;
    if n > MAX_SAMPLES {
        return Err(Error::ResolutionLimit {
            what: "frequency samples",
            needed: n,
            limit: MAX_SAMPLES,
        });
    }
    FrequencyWindow::new(w, n)
}

/// Single-period amplitude at `τ` for the phase-matching kernel alone.
///
/// At each position the frequency integral of `sinc(ΔkL/2) e^{iΔkL/2}` is
/// `(2π/T) e^{-αL τ/T}` for `0 <= τ <= T = L/v_g` and zero otherwise, so
/// only positions with `T(x) >= τ` contribute and the position integral
/// runs over that smooth sub-interval.
pub(crate) fn boxcar_amplitude(
    medium: &Medium,
    modulation: Modulation,
    tau: f64,
    sin_theta: f64,
    rule: &QuadratureSpec,
) -> f64 {
    if tau < 0.0 {
        return 0.0;
    }
    let t0 = medium.antinode_transit();
    let d = medium.grating.d();
    let x_lo = match modulation {
        Modulation::Uniform if tau > t0 => return 0.0,
        Modulation::Uniform => 0.0,
        Modulation::Grating if tau <= t0 => 0.0,
        Modulation::Grating => d / PI * (t0 / tau).sqrt().acos(),
    };
    sites(medium, modulation, rule, x_lo)
        .iter()
        .map(|s| {
            let rate = s.cos2 / t0;
            s.weight
                * slit_phase(medium, modulation, s, sin_theta)
                * TAU
                * rate
                * (-medium.absorption_at(s.cos2) * tau * rate).exp()
        })
        .sum()
}

pub(crate) fn checked_boxcar(
    medium: &Medium,
    config: &RegimeConfig,
    tau: &[f64],
    sin_theta: f64,
) -> Result<Vec<Complex64>> {
    let eval = |rule: &QuadratureSpec| -> Vec<Complex64> {
        tau.par_iter()
            .map(|&t| Complex64::new(boxcar_amplitude(medium, config.modulation, t, sin_theta, rule), 0.0))
            .collect()
    };
    let rule = config.x_quadrature;
    let coarse = eval(&rule);
    if config.modulation == Modulation::Uniform {
        return Ok(coarse);
    }
    let fine = eval(&rule.refined());
    converged(&coarse, &fine, rule.rel_tol())?;
    Ok(fine)
}

/// Single-period amplitude at one delay for many angles, using the given
/// position rule (no refinement check).
///
/// Each site's frequency integral is computed once and the angles only
/// change the transverse weights. The edge-decay requirement is enforced
/// on the slit-integrated spectrum at `θ = 0`.
pub(crate) fn slit_pattern(
    medium: &Medium,
    config: &RegimeConfig,
    tau: f64,
    sin_thetas: &[f64],
    rule: &QuadratureSpec,
) -> Result<Vec<Complex64>> {
    if !tau.is_finite() {
        return Err(Error::invalid("tau", format!("must be finite, got {tau}")));
    }
    if config.regime == Regime::PhaseMatching {
        return Ok(sin_thetas
            .par_iter()
            .map(|&s| Complex64::new(boxcar_amplitude(medium, config.modulation, tau, s, rule), 0.0))
            .collect());
    }
    let window = resolve_window(medium, config, tau.abs(), 0.0)?;
    let grid = window.grid();
    let sites = sites(medium, config.modulation, rule, 0.0);
    let mut aggregate = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut transforms = Vec::with_capacity(sites.len());
    for chunk in sites.chunks(SITE_CHUNK) {
        let done: Vec<(Complex64, Vec<Complex64>)> = chunk
            .par_iter()
            .map(|s| {
                let values: Vec<Complex64> = grid.iter().map(|&w| kernel(medium, config.regime, w, s.cos2)).collect();
                let g = fourier_sum_unchecked(&window, &values, &[tau])[0];
                (g, values)
            })
            .collect();
        for (s, (g, values)) in chunk.iter().zip(done) {
            for (acc, v) in aggregate.iter_mut().zip(&values) {
                *acc += s.weight * v;
            }
            transforms.push(g);
        }
    }
    check_edge_decay(&window, &aggregate)?;
    Ok(sin_thetas
        .par_iter()
        .map(|&st| {
            sites
                .iter()
                .zip(&transforms)
                .map(|(s, g)| s.weight * slit_phase(medium, config.modulation, s, st) * g)
                .sum()
        })
        .collect())
}
