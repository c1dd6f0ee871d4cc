//! Two-photon amplitude and coincidence traces of the biphotons emitted by
//! the grating medium.
//!
//! The amplitude factorizes into an array factor over the illuminated
//! periods and a single-period amplitude
//! `B(τ; θ) = ∫dx cos(πx/d) e^{i k x sinθ} ∫dω F(ω, x) e^{-iωτ}`,
//! where the spectral kernel `F` is the nonlinear susceptibility, the
//! longitudinal phase-matching factor, or their product depending on
//! [`Regime`].

mod kernel;
mod traces;

pub use traces::{
    array_factor, array_factor_printed_form, coincidence_phasematch, coincidence_resonance,
    coincidence_resonance_numeric, coincidence_trace, default_tau_grid, joint_spectrum, joint_spectrum_on,
    resonance_amplitude, single_slit_amplitude, two_photon_amplitude,
};

pub(crate) use kernel::slit_pattern;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{FrequencyWindow, QuadratureSpec};

/// Which spectral factors enter the single-period amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Regime {
    /// Nonlinear susceptibility only; phase matching taken as flat.
    Resonance,
    /// Longitudinal phase matching only. Its frequency integral is an
    /// attenuated boxcar per position and is evaluated in that closed form.
    PhaseMatching,
    /// Both factors, multiplied pointwise in frequency.
    #[default]
    Full,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Resonance => "resonance",
            Regime::PhaseMatching => "phase-matching",
            Regime::Full => "full",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "resonance" => Ok(Regime::Resonance),
            "phase-matching" | "phase_matching" => Ok(Regime::PhaseMatching),
            "full" => Ok(Regime::Full),
            other => Err(Error::invalid(
                "regime",
                format!("expected resonance, phase-matching or full, got `{other}`"),
            )),
        }
    }
}

/// Whether the control field forms a standing wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Modulation {
    #[default]
    Grating,
    /// Uniform drive: `cos ≡ 1`, `v_g ≡ v0`, `α ≡ α(0)` over the whole period.
    Uniform,
}

/// Frequency window used for the Fourier integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowChoice {
    /// Chosen from the medium's time scales and the requested delays; each
    /// `refine` step doubles the sample count.
    Auto {
        refine: u32,
    },
    Fixed(FrequencyWindow),
}

impl Default for WindowChoice {
    fn default() -> Self {
        WindowChoice::Auto { refine: 0 }
    }
}

/// Numerical settings for amplitude and trace evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeConfig {
    pub regime: Regime,
    pub modulation: Modulation,
    pub x_quadrature: QuadratureSpec,
    pub window: WindowChoice,
}

impl Default for RegimeConfig {
    fn default() -> Self {
        Self {
            regime: Regime::Full,
            modulation: Modulation::Grating,
            x_quadrature: default_x_quadrature(),
            window: WindowChoice::default(),
        }
    }
}

/// 32 panels of 16 Gauss–Legendre nodes over the half period, accepting a
/// relative change of `1e-3` under refinement.
pub fn default_x_quadrature() -> QuadratureSpec {
    QuadratureSpec::new(32, 16, 1e-3).expect("valid default quadrature")
}

impl RegimeConfig {
    pub fn new(regime: Regime) -> Self {
        Self {
            regime,
            ..Self::default()
        }
    }

    pub fn with_modulation(self, modulation: Modulation) -> Self {
        Self { modulation, ..self }
    }

    pub fn with_regime(self, regime: Regime) -> Self {
        Self { regime, ..self }
    }

    /// Twice the position panels and twice the frequency samples.
    pub fn refined(&self) -> Self {
        let window = match self.window {
            WindowChoice::Auto { refine } => WindowChoice::Auto { refine: refine + 1 },
            WindowChoice::Fixed(w) => WindowChoice::Fixed(w.refined()),
        };
        Self {
            x_quadrature: self.x_quadrature.refined(),
            window,
            ..*self
        }
    }
}

/// Complex function of detuning sampled on a uniform ascending grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    omega_grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn new(omega_grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if omega_grid.len() != values.len() {
            return Err(Error::invalid("values", "length must match omega_grid"));
        }
        check_uniform("omega_grid", &omega_grid)?;
        Ok(Self { omega_grid, values })
    }

    pub fn omega_grid(&self) -> &[f64] {
        &self.omega_grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Full width at half maximum of `|Φ|²`, with the half-maximum
    /// crossings located by linear interpolation. `None` when either
    /// crossing lies outside the grid.
    pub fn fwhm(&self) -> Option<f64> {
        let power: Vec<f64> = self.values.iter().map(|v| v.norm_sqr()).collect();
        let (imax, &pmax) = power.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
        if pmax == 0.0 {
            return None;
        }
        let half = 0.5 * pmax;
        let w = &self.omega_grid;
        let lo = (0..imax).rev().find(|&i| power[i] < half)?;
        let hi = (imax + 1..power.len()).find(|&i| power[i] < half)?;
        let cross = |a: usize, b: usize| w[a] + (half - power[a]) / (power[b] - power[a]) * (w[b] - w[a]);
        Some(cross(hi, hi - 1) - cross(lo, lo + 1))
    }
}

/// Nonnegative coincidence rate over relative delay (ns).
#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceTrace {
    tau_grid: Vec<f64>,
    rate: Vec<f64>,
    normalized: bool,
}

impl CoincidenceTrace {
    pub fn new(tau_grid: Vec<f64>, rate: Vec<f64>, normalized: bool) -> Result<Self> {
        if tau_grid.len() != rate.len() {
            return Err(Error::invalid("rate", "length must match tau_grid"));
        }
        if let Some(r) = rate.iter().find(|r| !(**r >= 0.0)) {
            return Err(Error::invalid("rate", format!("must be nonnegative, found {r}")));
        }
        if normalized && rate.iter().cloned().fold(0.0, f64::max) != 1.0 {
            return Err(Error::invalid("rate", "a normalized trace must peak at exactly 1"));
        }
        Ok(Self {
            tau_grid,
            rate,
            normalized,
        })
    }

    /// `|A|²` scaled to unit peak. An identically zero amplitude stays
    /// unnormalized.
    pub fn from_amplitude(tau_grid: Vec<f64>, amplitude: &[Complex64]) -> Self {
        let mut rate: Vec<f64> = amplitude.iter().map(|a| a.norm_sqr()).collect();
        let peak = rate.iter().cloned().fold(0.0, f64::max);
        let normalized = peak > 0.0;
        if normalized {
            for r in &mut rate {
                *r /= peak;
            }
        }
        Self {
            tau_grid,
            rate,
            normalized,
        }
    }

    pub fn tau_grid(&self) -> &[f64] {
        &self.tau_grid
    }

    pub fn rate(&self) -> &[f64] {
        &self.rate
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn peak(&self) -> (f64, f64) {
        self.tau_grid
            .iter()
            .zip(&self.rate)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(t, r)| (*t, *r))
            .unwrap_or((f64::NAN, 0.0))
    }
}

pub(crate) fn check_uniform(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Ok(());
    }
    let n = grid.len() - 1;
    let step = (grid[n] - grid[0]) / n as f64;
    if !(step > 0.0) {
        return Err(Error::invalid(name, "must be strictly ascending"));
    }
    for (k, &v) in grid.iter().enumerate() {
        if (v - (grid[0] + k as f64 * step)).abs() > 1e-6 * step {
            return Err(Error::invalid(name, "must be uniformly spaced"));
        }
    }
    Ok(())
}
