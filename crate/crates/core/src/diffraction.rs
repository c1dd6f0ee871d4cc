//! Far-field angular distribution of the anti-Stokes photons.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use num_complex::Complex64;

use crate::biphoton::{array_factor, slit_pattern, RegimeConfig};
use crate::error::{Error, Result};
use crate::medium::{GratingGeometry, Medium};
use crate::specfun::relative_l2;

const DEFAULT_THETA_POINTS: usize = 4001;

/// Direction of a grating order `sinθ = m λ_as / d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiffractionOrder {
    Propagating(f64),
    Evanescent,
}

impl DiffractionOrder {
    pub fn angle(&self) -> Option<f64> {
        match self {
            DiffractionOrder::Propagating(t) => Some(*t),
            DiffractionOrder::Evanescent => None,
        }
    }
}

pub fn order_angle(m: i32, g: &GratingGeometry) -> DiffractionOrder {
    let s = f64::from(m) * g.lambda_as() / g.d();
    if s.abs() <= 1.0 {
        DiffractionOrder::Propagating(s.asin())
    } else {
        DiffractionOrder::Evanescent
    }
}

/// Orders with `|m λ_as / d| <= 1`, in ascending order.
pub fn propagating_orders(g: &GratingGeometry) -> Vec<i32> {
    let top = (g.d() / g.lambda_as()).floor() as i32;
    (-top..=top).filter(|&m| order_angle(m, g).angle().is_some()).collect()
}

/// 4001 angles over `[-π/3, π/3]`.
pub fn default_theta_grid() -> Vec<f64> {
    let n = DEFAULT_THETA_POINTS;
    (0..n)
        .map(|i| -FRAC_PI_3 + 2.0 * FRAC_PI_3 * i as f64 / (n - 1) as f64)
        .collect()
}

/// `n` cell-centred angles spanning the open interval `(-π/2, π/2)`.
pub fn propagating_theta_grid(n: usize) -> Vec<f64> {
    let h = PI / n as f64;
    (0..n).map(|i| -FRAC_PI_2 + (i as f64 + 0.5) * h).collect()
}

/// Diffracted intensity over emission angle.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularPattern {
    theta_grid: Vec<f64>,
    intensity: Vec<f64>,
}

impl AngularPattern {
    pub fn new(theta_grid: Vec<f64>, intensity: Vec<f64>) -> Result<Self> {
        check_theta_grid(&theta_grid)?;
        if theta_grid.len() != intensity.len() {
            return Err(Error::invalid("intensity", "length must match theta_grid"));
        }
        if intensity.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::invalid("intensity", "must be nonnegative"));
        }
        Ok(Self { theta_grid, intensity })
    }

    pub fn theta_grid(&self) -> &[f64] {
        &self.theta_grid
    }

    pub fn intensity(&self) -> &[f64] {
        &self.intensity
    }

    /// Integral over `θ` of the piecewise-linear interpolant.
    pub fn total(&self) -> f64 {
        self.band_integral(f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Integral of the piecewise-linear interpolant over `[lo, hi] ∩ grid`.
    pub fn band_integral(&self, lo: f64, hi: f64) -> f64 {
        let (t, f) = (&self.theta_grid, &self.intensity);
        let mut sum = 0.0;
        for i in 0..t.len().saturating_sub(1) {
            let a = t[i].max(lo);
            let b = t[i + 1].min(hi);
            if b <= a {
                continue;
            }
            let slope = (f[i + 1] - f[i]) / (t[i + 1] - t[i]);
            let fa = f[i] + slope * (a - t[i]);
            let fb = f[i] + slope * (b - t[i]);
            sum += 0.5 * (b - a) * (fa + fb);
        }
        sum
    }

    /// Local maxima rising above `floor` times the global peak.
    pub fn local_maxima(&self, floor: f64) -> Vec<f64> {
        let f = &self.intensity;
        let top = f.iter().cloned().fold(0.0, f64::max);
        (1..f.len().saturating_sub(1))
            .filter(|&i| f[i] > f[i - 1] && f[i] >= f[i + 1] && f[i] > floor * top)
            .map(|i| self.theta_grid[i])
            .collect()
    }

    /// Share of the total within `±θ1/2`, `θ1` the first-order angle. When
    /// the first order is evanescent everything counts as zeroth order.
    pub fn zeroth_order_fraction(&self, g: &GratingGeometry) -> f64 {
        let total = self.total();
        if total == 0.0 {
            return 0.0;
        }
        match order_angle(1, g) {
            DiffractionOrder::Propagating(t1) => self.band_integral(-0.5 * t1, 0.5 * t1) / total,
            DiffractionOrder::Evanescent => 1.0,
        }
    }

    /// Share of the total carried by each propagating order, with each
    /// order owning the band `|sinθ - m λ_as/d| <= λ_as/(2d)`.
    pub fn order_shares(&self, g: &GratingGeometry) -> Vec<(i32, f64)> {
        let total = self.total();
        let r = g.lambda_as() / g.d();
        propagating_orders(g)
            .into_iter()
            .map(|m| {
                let lo = ((f64::from(m) - 0.5) * r).clamp(-1.0, 1.0).asin();
                let hi = ((f64::from(m) + 0.5) * r).clamp(-1.0, 1.0).asin();
                let share = if total > 0.0 {
                    self.band_integral(lo, hi) / total
                } else {
                    0.0
                };
                (m, share)
            })
            .collect()
    }
}

fn check_theta_grid(theta: &[f64]) -> Result<()> {
    if theta.iter().any(|t| !(t.abs() < FRAC_PI_2)) {
        return Err(Error::invalid("theta_grid", "angles must lie inside (-π/2, π/2)"));
    }
    if theta.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("theta_grid", "must be strictly ascending"));
    }
    Ok(())
}

/// `|array_factor(θ) · B(τ; θ)|²` normalized to unit peak.
///
/// The pattern is computed with the configured position rule and with its
/// refinement; a relative change above the rule's tolerance is an error.
pub fn angular_pattern(
    tau_fixed: f64,
    theta_grid: &[f64],
    medium: &Medium,
    config: &RegimeConfig,
) -> Result<AngularPattern> {
    if !(tau_fixed >= 0.0) {
        return Err(Error::invalid("tau_fixed", format!("must be >= 0, got {tau_fixed}")));
    }
    check_theta_grid(theta_grid)?;
    let sin_theta: Vec<f64> = theta_grid.iter().map(|t| t.sin()).collect();
    let rule = config.x_quadrature;
    let amplitude = |slit: Vec<Complex64>| -> Vec<Complex64> {
        theta_grid
            .iter()
            .zip(slit)
            .map(|(&t, b)| array_factor(t, &medium.grating) * b)
            .collect()
    };
    let coarse = amplitude(slit_pattern(medium, config, tau_fixed, &sin_theta, &rule)?);
    let fine = if config.modulation == crate::biphoton::Modulation::Uniform {
        coarse
    } else {
        let fine = amplitude(slit_pattern(medium, config, tau_fixed, &sin_theta, &rule.refined())?);
        let change = relative_l2(&coarse, &fine);
        if change > rule.rel_tol() {
            return Err(Error::NotConverged {
                quadrature: "slit-position Gauss-Legendre",
                change,
                tol: rule.rel_tol(),
            });
        }
        fine
    };
    let mut intensity: Vec<f64> = fine.iter().map(|a| a.norm_sqr()).collect();
    let peak = intensity.iter().cloned().fold(0.0, f64::max);
    if peak > 0.0 {
        for v in &mut intensity {
            *v /= peak;
        }
    }
    AngularPattern::new(theta_grid.to_vec(), intensity)
}

/// Pattern over the whole propagating range on `n` cell-centred angles.
pub fn propagating_pattern(tau_fixed: f64, n: usize, medium: &Medium, config: &RegimeConfig) -> Result<AngularPattern> {
    angular_pattern(tau_fixed, &propagating_theta_grid(n), medium, config)
}

/// Zeroth-order share of the diffracted power on the default 4001-angle
/// propagating grid.
pub fn zeroth_order_fraction(tau_fixed: f64, medium: &Medium, config: &RegimeConfig) -> Result<f64> {
    Ok(propagating_pattern(tau_fixed, DEFAULT_THETA_POINTS, medium, config)?.zeroth_order_fraction(&medium.grating))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biphoton::Regime;
    use crate::specfun::QuadratureSpec;

    fn config() -> RegimeConfig {
        RegimeConfig {
            x_quadrature: QuadratureSpec::new(8, 16, 1e-3).unwrap(),
            ..RegimeConfig::new(Regime::Resonance)
        }
    }

    #[test]
    fn order_angles() {
        let g = GratingGeometry::default();
        assert_eq!(order_angle(0, &g), DiffractionOrder::Propagating(0.0));
        assert_eq!(order_angle(1, &g), DiffractionOrder::Propagating(0.3975f64.asin()));
        assert_eq!(order_angle(-1, &g).angle(), Some(-(0.3975f64.asin())));
        assert_eq!(order_angle(3, &g), DiffractionOrder::Evanescent);
        assert_eq!(propagating_orders(&g), vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn band_integrals_of_a_linear_profile() {
        let theta: Vec<f64> = (0..11).map(|i| -0.5 + 0.1 * i as f64).collect();
        let f: Vec<f64> = theta.iter().map(|t| 2.0 + t).collect();
        let p = AngularPattern::new(theta, f).unwrap();
        assert!((p.total() - 2.0).abs() < 1e-14);
        // ∫_{-0.13}^{0.27} (2 + t) dt
        let want = 2.0 * 0.4 + 0.5 * (0.27f64.powi(2) - 0.13f64.powi(2));
        assert!((p.band_integral(-0.13, 0.27) - want).abs() < 1e-14);
    }

    #[test]
    fn invalid_grids_are_rejected() {
        assert!(AngularPattern::new(vec![0.0, FRAC_PI_2], vec![1.0, 1.0]).is_err());
        assert!(AngularPattern::new(vec![0.1, 0.0], vec![1.0, 1.0]).is_err());
        assert!(angular_pattern(-1.0, &[0.0], &Medium::default(), &config()).is_err());
    }

    #[test]
    fn pattern_peaks_at_zero_with_first_orders_in_place() {
        let m = Medium::default();
        let theta = default_theta_grid();
        let p = angular_pattern(100.0, &theta, &m, &config()).unwrap();
        let step = theta[1] - theta[0];
        let (imax, _) = p
            .intensity()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert!(theta[imax].abs() <= 0.5 * step);
        let t1 = order_angle(1, &m.grating).angle().unwrap();
        let maxima = p.local_maxima(1e-3);
        for target in [-t1, t1] {
            assert!(
                maxima.iter().any(|&t| (t - target).abs() <= step),
                "no maximum near {target}"
            );
        }
        let n = theta.len();
        for i in 0..n {
            let (a, b) = (p.intensity()[i], p.intensity()[n - 1 - i]);
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn zeroth_order_grows_with_slit_count() {
        let base = Medium::default();
        let few = Medium {
            grating: base.grating.with_m_slits(1).unwrap(),
            ..base
        };
        let f_few = zeroth_order_fraction(100.0, &few, &config()).unwrap();
        let f_many = zeroth_order_fraction(100.0, &base, &config()).unwrap();
        assert!(f_few < f_many && f_many <= 1.0, "{f_few} vs {f_many}");
    }

    #[test]
    fn total_power_is_stable_under_angle_refinement() {
        let m = Medium::default();
        let coarse = propagating_pattern(100.0, 4001, &m, &config()).unwrap();
        let fine = propagating_pattern(100.0, 8001, &m, &config()).unwrap();
        let rel = (coarse.total() - fine.total()).abs() / fine.total();
        assert!(rel < 1e-3, "{rel}");
    }
}
