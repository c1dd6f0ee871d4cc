use std::f64::consts::TAU;

use num_complex::Complex64;

use super::kernel::{checked_boxcar, checked_spectrum, resolve_window};
use super::{check_uniform, CoincidenceTrace, ComplexSpectrum, Regime, RegimeConfig};
use crate::error::{Error, Result};
use crate::medium::{GratingGeometry, Medium};
use crate::specfun::{oscillatory_ft, struve_h0};

const DEFAULT_TAU_POINTS: usize = 2000;

/// 2000 delays over `[0, 5 max(1/γe, L/v0)]`.
pub fn default_tau_grid(medium: &Medium) -> Vec<f64> {
    let span = 5.0 * (1.0 / medium.effective_dephasing()).max(medium.antinode_transit());
    let last = (DEFAULT_TAU_POINTS - 1) as f64;
    (0..DEFAULT_TAU_POINTS).map(|i| span * (i as f64 / last)).collect()
}

/// `Σ_{j=0}^{M} e^{i u (j - M/2)}` with `u = k_as d sinθ`, summed term by
/// term.
pub fn array_factor(theta: f64, g: &GratingGeometry) -> Complex64 {
    let u = g.k_as() * g.d() * theta.sin();
    let half = 0.5 * g.m_slits() as f64;
    (0..=g.m_slits())
        .map(|j| Complex64::from_polar(1.0, u * (j as f64 - half)))
        .sum()
}

/// `sin(M u/2) / sin(u/2)`, the closed form as commonly printed for the
/// slit sum. It counts `M` rather than `M + 1` terms, so it differs from
/// [`array_factor`]; kept for comparison.
pub fn array_factor_printed_form(theta: f64, g: &GratingGeometry) -> f64 {
    let u = g.k_as() * g.d() * theta.sin();
    let m = g.m_slits() as f64;
    let den = (0.5 * u).sin();
    if den.abs() < 1e-300 {
        m * (0.5 * m * u).cos() / (0.5 * u).cos()
    } else {
        (0.5 * m * u).sin() / den
    }
}

/// Slit-integrated joint spectrum at `θ = 0` on the transform window the
/// configuration resolves to.
pub fn joint_spectrum(medium: &Medium, config: &RegimeConfig) -> Result<ComplexSpectrum> {
    let window = resolve_window(medium, config, 0.0, 0.0)?;
    let grid = window.grid();
    let values = checked_spectrum(medium, config, &grid, 0.0)?;
    ComplexSpectrum::new(grid, values)
}

/// Slit-integrated joint spectrum at `θ = 0` on a caller-supplied uniform
/// grid.
pub fn joint_spectrum_on(medium: &Medium, config: &RegimeConfig, omega_grid: Vec<f64>) -> Result<ComplexSpectrum> {
    check_uniform("omega_grid", &omega_grid)?;
    let values = checked_spectrum(medium, config, &omega_grid, 0.0)?;
    ComplexSpectrum::new(omega_grid, values)
}

fn check_tau(tau: &[f64]) -> Result<f64> {
    tau.iter().try_fold(0.0f64, |acc, &t| {
        if t.is_finite() {
            Ok(acc.max(t.abs()))
        } else {
            Err(Error::invalid("tau_grid", format!("delays must be finite, got {t}")))
        }
    })
}

/// Single-period amplitude `B(τ; θ)` for each delay.
///
/// The position integral is carried out on the spectrum first and the
/// result transformed once; by linearity this equals transforming at each
/// position and integrating afterwards.
pub fn single_slit_amplitude(
    tau: &[f64],
    theta: f64,
    medium: &Medium,
    config: &RegimeConfig,
) -> Result<Vec<Complex64>> {
    let extent = check_tau(tau)?;
    let sin_theta = theta.sin();
    if config.regime == Regime::PhaseMatching {
        return checked_boxcar(medium, config, tau, sin_theta);
    }
    let window = resolve_window(medium, config, extent, sin_theta)?;
    let values = checked_spectrum(medium, config, &window.grid(), sin_theta)?;
    oscillatory_ft(&window, &values, tau)
}

/// `array_factor(θ) · B(τ; θ)`.
pub fn two_photon_amplitude(tau: &[f64], theta: f64, medium: &Medium, config: &RegimeConfig) -> Result<Vec<Complex64>> {
    let af = array_factor(theta, &medium.grating);
    Ok(single_slit_amplitude(tau, theta, medium, config)?
        .into_iter()
        .map(|b| af * b)
        .collect())
}

/// Normalized `|B(τ; 0)|²` for the configured regime.
pub fn coincidence_trace(tau: &[f64], medium: &Medium, config: &RegimeConfig) -> Result<CoincidenceTrace> {
    let amp = single_slit_amplitude(tau, 0.0, medium, config)?;
    Ok(CoincidenceTrace::from_amplitude(tau.to_vec(), &amp))
}

/// Resonance-only trace by numerical frequency and position quadrature,
/// with the medium's own form of `Ωe(x)`.
pub fn coincidence_resonance_numeric(tau: &[f64], medium: &Medium, config: &RegimeConfig) -> Result<CoincidenceTrace> {
    coincidence_trace(tau, medium, &config.with_regime(Regime::Resonance))
}

/// Phase-matching trace; `include_chi3` multiplies in the nonlinear
/// susceptibility. The standing-wave modulation follows `config.modulation`.
pub fn coincidence_phasematch(
    tau: &[f64],
    medium: &Medium,
    config: &RegimeConfig,
    include_chi3: bool,
) -> Result<CoincidenceTrace> {
    let regime = if include_chi3 {
        Regime::Full
    } else {
        Regime::PhaseMatching
    };
    coincidence_trace(tau, medium, &config.with_regime(regime))
}

/// `-(2π/Ωc) d H0(Ωc τ) e^{-γe τ}`: the resonance amplitude with
/// `Ωe ≈ Ωc cos(πx/d)`, zero for `τ < 0`.
pub fn resonance_amplitude(tau: &[f64], medium: &Medium) -> Result<Vec<f64>> {
    check_tau(tau)?;
    let oc = medium.atomic.omega_c().abs();
    let ge = medium.effective_dephasing();
    let d = medium.grating.d();
    tau.iter()
        .map(|&t| {
            if t < 0.0 {
                return Ok(0.0);
            }
            let h = if oc > 0.0 {
                struve_h0(oc * t)? / oc
            } else {
                // H0(z)/Ωc → 2τ/π as Ωc → 0
                2.0 * t / std::f64::consts::PI
            };
            Ok(-TAU * d * h * (-ge * t).exp())
        })
        .collect()
}

/// Normalized `[H0(Ωc τ) e^{-γe τ}]²`.
pub fn coincidence_resonance(tau: &[f64], medium: &Medium) -> Result<CoincidenceTrace> {
    let amp: Vec<Complex64> = resonance_amplitude(tau, medium)?
        .into_iter()
        .map(|a| Complex64::new(a, 0.0))
        .collect();
    Ok(CoincidenceTrace::from_amplitude(tau.to_vec(), &amp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::{AtomicParams, RabiForm, DEFAULT_GAMMA31};
    use crate::specfun::relative_l2;
    use proptest::prelude::*;

    #[test]
    fn array_factor_at_normal_incidence_counts_sites() {
        let g = GratingGeometry::new(2.0, 10, 1.0, 0.795).unwrap();
        assert!((array_factor(0.0, &g) - Complex64::new(11.0, 0.0)).norm() < 1e-12);
        assert!((array_factor_printed_form(0.0, &g) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn array_factor_is_a_geometric_series() {
        let g = GratingGeometry::default();
        let m = g.m_slits() as f64;
        for i in 1..200 {
            let theta = -1.2 + 0.0121 * i as f64;
            let u = g.k_as() * g.d() * theta.sin();
            let direct = array_factor(theta, &g);
            let summed = (0.5 * (m + 1.0) * u).sin() / (0.5 * u).sin();
            assert!((direct - Complex64::new(summed, 0.0)).norm() < 1e-10 * (m + 1.0));
        }
    }

    #[test]
    fn principal_maxima_sit_at_grating_orders() {
        let g = GratingGeometry::default();
        let n = 20_001;
        let step = 1.0 / (n - 1) as f64;
        let power: Vec<f64> = (0..n)
            .map(|i| array_factor((i as f64 * step).asin(), &g).norm_sqr())
            .collect();
        let top = power.iter().cloned().fold(0.0, f64::max);
        let maxima: Vec<f64> = (1..n - 1)
            .filter(|&i| power[i] >= power[i - 1] && power[i] >= power[i + 1] && power[i] > 0.9 * top)
            .map(|i| i as f64 * step)
            .collect();
        let ratio = g.lambda_as() / g.d();
        assert_eq!(maxima.len(), 2);
        assert!((maxima[0] - ratio).abs() <= step);
        assert!((maxima[1] - 2.0 * ratio).abs() <= step);
    }

    proptest! {
        #[test]
        fn array_factor_magnitude_is_even(theta in -1.5f64..1.5, m in 1u32..40) {
            let g = GratingGeometry::default().with_m_slits(m).unwrap();
            let (a, b) = (array_factor(theta, &g).norm(), array_factor(-theta, &g).norm());
            prop_assert!((a - b).abs() <= 1e-10 * (m as f64 + 1.0));
        }
    }

    #[test]
    fn resonance_trace_starts_at_zero() {
        let m = Medium::default();
        let tau = default_tau_grid(&m);
        assert_eq!(tau.len(), 2000);
        assert_eq!(tau[1999], 5.0 * m.antinode_transit());
        let trace = coincidence_resonance(&tau, &m).unwrap();
        assert_eq!(trace.rate()[0], 0.0);
        assert!(trace.is_normalized());
        let negative = resonance_amplitude(&[-3.0, -1e-9], &m).unwrap();
        assert_eq!(negative, vec![0.0, 0.0]);
        assert!(resonance_amplitude(&[f64::NAN], &m).is_err());
    }

    #[test]
    fn numeric_resonance_matches_the_struve_form_under_the_cosine_drive() {
        let m = Medium::default().with_rabi_form(RabiForm::CosineApprox);
        let ge = m.effective_dephasing();
        let tau: Vec<f64> = (0..400).map(|i| i as f64 * 5.0 / ge / 399.0).collect();
        let numeric = single_slit_amplitude(&tau, 0.0, &m, &RegimeConfig::new(Regime::Resonance)).unwrap();
        let analytic: Vec<Complex64> = resonance_amplitude(&tau, &m)
            .unwrap()
            .into_iter()
            .map(|a| Complex64::new(a, 0.0))
            .collect();
        assert!(relative_l2(&numeric, &analytic) < 1e-3);
    }

    #[test]
    fn exact_drive_approaches_struve_form_for_strong_control() {
        let a = AtomicParams::builder().omega_c(20.0 * DEFAULT_GAMMA31).build().unwrap();
        let m = Medium::new(a, GratingGeometry::default());
        let ge = m.effective_dephasing();
        let tau: Vec<f64> = (0..400).map(|i| i as f64 * 5.0 / ge / 399.0).collect();
        let numeric = coincidence_resonance_numeric(&tau, &m, &RegimeConfig::default()).unwrap();
        let analytic = coincidence_resonance(&tau, &m).unwrap();
        let to_c = |v: &[f64]| v.iter().map(|&r| Complex64::new(r, 0.0)).collect::<Vec<_>>();
        assert!(relative_l2(&to_c(numeric.rate()), &to_c(analytic.rate())) < 1e-2);
    }

    #[test]
    fn two_photon_amplitude_at_zero_angle_scales_the_slit() {
        let m = Medium::default();
        let cfg = RegimeConfig::new(Regime::Resonance);
        let tau = [10.0, 40.0, 90.0];
        let b = single_slit_amplitude(&tau, 0.0, &m, &cfg).unwrap();
        let a = two_photon_amplitude(&tau, 0.0, &m, &cfg).unwrap();
        let sites = f64::from(m.grating.m_slits() + 1);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - sites * y).norm() <= 1e-12 * x.norm());
        }
    }
}
