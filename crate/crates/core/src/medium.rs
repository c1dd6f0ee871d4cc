//! Optical response of the double-Λ medium under a standing-wave control
//! field.
//!
//! Units throughout: angular frequencies in rad/ns, times in ns, lengths in
//! μm, speeds in μm/ns. Every response is a pure function of immutable
//! parameter records.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::exprel;

/// `γ31 = 2π × 3 MHz` expressed in rad/ns.
pub const DEFAULT_GAMMA31: f64 = TAU * 3e-3;

/// Decay rates, drive strengths and optical depth of the atomic medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicParams {
    gamma31: f64,
    gamma21: f64,
    gamma41: f64,
    omega_c: f64,
    omega_p: f64,
    delta_p: f64,
    optical_depth: f64,
    v0: f64,
}

impl AtomicParams {
    pub fn builder() -> AtomicParamsBuilder {
        AtomicParamsBuilder(Self::default())
    }

    pub fn gamma31(&self) -> f64 {
        self.gamma31
    }
    pub fn gamma21(&self) -> f64 {
        self.gamma21
    }
    pub fn gamma41(&self) -> f64 {
        self.gamma41
    }
    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }
    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }
    pub fn delta_p(&self) -> f64 {
        self.delta_p
    }
    pub fn optical_depth(&self) -> f64 {
        self.optical_depth
    }
    /// Group velocity at the standing-wave antinodes, μm/ns.
    pub fn v0(&self) -> f64 {
        self.v0
    }

    /// Effective dephasing `γe = (γ31 + γ21)/2`.
    pub fn gamma_e(&self) -> f64 {
        0.5 * (self.gamma31 + self.gamma21)
    }

    fn validate(self) -> Result<Self> {
        for (name, v) in [
            ("gamma31", self.gamma31),
            ("gamma21", self.gamma21),
            ("gamma41", self.gamma41),
            ("v0", self.v0),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        for (name, v) in [
            ("omega_c", self.omega_c),
            ("omega_p", self.omega_p),
            ("delta_p", self.delta_p),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        if !(self.optical_depth >= 0.0 && self.optical_depth.is_finite()) {
            return Err(Error::invalid(
                "optical_depth",
                format!("must be >= 0, got {}", self.optical_depth),
            ));
        }
        if self.omega_p.abs() >= 0.1 * self.delta_p.abs() {
            return Err(Error::invalid(
                "omega_p",
                format!(
                    "|omega_p| = {} must stay below 0.1 |delta_p| = {} for the Stokes response to be negligible",
                    self.omega_p.abs(),
                    0.1 * self.delta_p.abs()
                ),
            ));
        }
        Ok(self)
    }
}

impl Default for AtomicParams {
    fn default() -> Self {
        let g = DEFAULT_GAMMA31;
        Self {
            gamma31: g,
            gamma21: 0.6 * g,
            gamma41: g,
            omega_c: 5.0 * g,
            omega_p: 0.1 * g,
            delta_p: 10.0 * g,
            optical_depth: 5.0,
            v0: DEFAULT_LENGTH / 800.0,
        }
    }
}

/// Builder for [`AtomicParams`]; starts from the defaults and validates on
/// [`build`](Self::build).
#[derive(Debug, Clone, Copy)]
pub struct AtomicParamsBuilder(AtomicParams);

impl AtomicParamsBuilder {
    pub fn gamma31(mut self, v: f64) -> Self {
        self.0.gamma31 = v;
        self
    }
    pub fn gamma21(mut self, v: f64) -> Self {
        self.0.gamma21 = v;
        self
    }
    pub fn gamma41(mut self, v: f64) -> Self {
        self.0.gamma41 = v;
        self
    }
    pub fn omega_c(mut self, v: f64) -> Self {
        self.0.omega_c = v;
        self
    }
    pub fn omega_p(mut self, v: f64) -> Self {
        self.0.omega_p = v;
        self
    }
    pub fn delta_p(mut self, v: f64) -> Self {
        self.0.delta_p = v;
        self
    }
    pub fn optical_depth(mut self, v: f64) -> Self {
        self.0.optical_depth = v;
        self
    }
    pub fn v0(mut self, v: f64) -> Self {
        self.0.v0 = v;
        self
    }
    pub fn build(self) -> Result<AtomicParams> {
        self.0.validate()
    }
}

pub const DEFAULT_LENGTH: f64 = 15_000.0;

/// Standing-wave period, illuminated period count, medium length and
/// anti-Stokes wavelength. Lengths in μm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GratingGeometry {
    d: f64,
    m_slits: u32,
    length: f64,
    lambda_as: f64,
}

impl GratingGeometry {
    /// The slit sum runs over `n = j - M/2` for `j = 0..=M`, so any `M >= 1`
    /// gives `M + 1` symmetric-about-centre sites.
    pub fn new(d: f64, m_slits: u32, length: f64, lambda_as: f64) -> Result<Self> {
        for (name, v) in [("d", d), ("length", length), ("lambda_as", lambda_as)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        if m_slits == 0 {
            return Err(Error::invalid("m_slits", "must be at least 1"));
        }
        Ok(Self {
            d,
            m_slits,
            length,
            lambda_as,
        })
    }

    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn m_slits(&self) -> u32 {
        self.m_slits
    }
    pub fn length(&self) -> f64 {
        self.length
    }
    pub fn lambda_as(&self) -> f64 {
        self.lambda_as
    }
    /// Central anti-Stokes wave number `2π/λ_as`, rad/μm.
    pub fn k_as(&self) -> f64 {
        TAU / self.lambda_as
    }

    pub fn with_m_slits(self, m_slits: u32) -> Result<Self> {
        Self::new(self.d, m_slits, self.length, self.lambda_as)
    }
}

impl Default for GratingGeometry {
    fn default() -> Self {
        Self {
            d: 2.0,
            m_slits: 20,
            length: DEFAULT_LENGTH,
            lambda_as: 0.795,
        }
    }
}

/// Grouped prefactor of the nonlinear susceptibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumResponse {
    pub chi3_scale: Complex64,
}

impl Default for MediumResponse {
    fn default() -> Self {
        Self {
            chi3_scale: Complex64::new(1.0, 0.0),
        }
    }
}

/// How the effective Rabi frequency depends on position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RabiForm {
    /// `Ωe = sqrt(Ωc² cos²(πx/d) + γ31 γ21)`.
    #[default]
    Exact,
    /// `Ωe ≈ |Ωc cos(πx/d)|`, valid where `Ωc² ≫ γ31 γ21`. This is the form
    /// under which the slit average of the resonance kernel reduces to `H0`.
    CosineApprox,
}

/// A medium: atomic parameters on a grating geometry.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Medium {
    pub atomic: AtomicParams,
    pub grating: GratingGeometry,
    pub response: MediumResponse,
    pub rabi_form: RabiForm,
}

impl Medium {
    pub fn new(atomic: AtomicParams, grating: GratingGeometry) -> Self {
        Self {
            atomic,
            grating,
            ..Self::default()
        }
    }

    pub fn with_rabi_form(self, rabi_form: RabiForm) -> Self {
        Self { rabi_form, ..self }
    }

    /// `cos²(πx/d)`, exactly 1 at antinodes and exactly 0 at nodes.
    pub fn cos2(&self, x: f64) -> f64 {
        let c = self.standing_wave(x);
        c * c
    }

    /// Field envelope `|cos(πx/d)|` of the standing wave.
    pub fn standing_wave(&self, x: f64) -> f64 {
        let u = x / self.grating.d;
        let u = (u - u.round()).abs();
        (PI * (0.5 - u)).sin()
    }

    pub fn effective_rabi(&self, x: f64) -> f64 {
        self.rabi_at(self.cos2(x))
    }

    fn rabi_at(&self, cos2: f64) -> f64 {
        let a = &self.atomic;
        match self.rabi_form {
            RabiForm::Exact => (a.omega_c * a.omega_c * cos2 + a.gamma31 * a.gamma21).sqrt(),
            RabiForm::CosineApprox => a.omega_c.abs() * cos2.sqrt(),
        }
    }

    pub fn effective_dephasing(&self) -> f64 {
        self.atomic.gamma_e()
    }

    /// `χ3(ω, x) = s / ((ω - Ωe + iγe)(ω + Ωe + iγe))`.
    pub fn chi3_as(&self, omega: f64, x: f64) -> Complex64 {
        self.chi3_at(omega, self.cos2(x))
    }

    pub(crate) fn chi3_at(&self, omega: f64, cos2: f64) -> Complex64 {
        let rabi = self.rabi_at(cos2);
        let ge = self.atomic.gamma_e();
        self.response.chi3_scale / (Complex64::new(omega - rabi, ge) * Complex64::new(omega + rabi, ge))
    }

    /// Anti-Stokes linear susceptibility, up to its normalized prefactor.
    pub fn chi_linear_as(&self, omega: f64, x: f64) -> Complex64 {
        let a = &self.atomic;
        let drive = a.omega_c * a.omega_c * self.cos2(x);
        let num = Complex64::new(omega, a.gamma21);
        num / (drive - Complex64::new(omega, a.gamma31) * Complex64::new(omega, a.gamma21))
    }

    /// Stokes linear susceptibility, carrying the far-detuned suppression
    /// factor `Ωp²/(Δp² + γ41²)`.
    pub fn chi_linear_s(&self, omega: f64, x: f64) -> Complex64 {
        let a = &self.atomic;
        let drive = a.omega_c * a.omega_c * self.cos2(x);
        let num = Complex64::new(omega, -a.gamma31);
        let suppression = a.omega_p * a.omega_p / (a.delta_p * a.delta_p + a.gamma41 * a.gamma41);
        0.25 * suppression * num / (drive - Complex64::new(omega, -a.gamma31) * Complex64::new(omega, -a.gamma21))
    }

    /// `v_g = v0 cos²(πx/d)`, μm/ns.
    pub fn group_velocity(&self, x: f64) -> f64 {
        self.atomic.v0 * self.cos2(x)
    }

    /// Field absorption over the medium length, `αL`.
    pub fn absorption(&self, x: f64) -> f64 {
        self.absorption_at(self.cos2(x))
    }

    pub(crate) fn absorption_at(&self, cos2: f64) -> f64 {
        let a = &self.atomic;
        let ratio = a.omega_c * a.omega_c * cos2 / (a.gamma21 * a.gamma31);
        a.optical_depth / (2.0 * (1.0 + ratio))
    }

    /// Intensity transmission `exp(-2αL)`.
    pub fn transmission(&self, x: f64) -> f64 {
        (-2.0 * self.absorption(x)).exp()
    }

    pub fn transmission_profile(&self, x_grid: &[f64]) -> Result<Vec<f64>> {
        if x_grid.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::invalid("x_grid", "must be sorted in ascending order"));
        }
        Ok(x_grid.iter().map(|&x| self.transmission(x)).collect())
    }

    /// Transit time `L/v0` through an antinode, ns.
    pub fn antinode_transit(&self) -> f64 {
        self.grating.length / self.atomic.v0
    }

    /// Transit time `L/v_g(x)`, infinite at nodes.
    pub fn transit_time(&self, x: f64) -> f64 {
        self.antinode_transit() / self.cos2(x)
    }

    /// Longitudinal phase-matching factor `sinc(ΔkL/2) e^{iΔkL/2}` with
    /// `ΔkL = ωL/v_g + iαL`. Vanishes at nodes where `v_g = 0`.
    pub fn phase_matching(&self, omega: f64, x: f64) -> Complex64 {
        self.phase_matching_at(omega, self.cos2(x))
    }

    pub(crate) fn phase_matching_at(&self, omega: f64, cos2: f64) -> Complex64 {
        if cos2 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let transit = self.antinode_transit() / cos2;
        exprel(Complex64::new(-self.absorption_at(cos2), omega * transit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn medium() -> Medium {
        Medium::default()
    }

    #[test]
    fn rabi_at_nodes_and_antinodes() {
        let m = medium();
        let a = m.atomic;
        let d = m.grating.d();
        let floor = (a.gamma31() * a.gamma21()).sqrt();
        assert_eq!(m.effective_rabi(0.5 * d), floor);
        let quarter = (0.5 * a.omega_c().powi(2) + a.gamma31() * a.gamma21()).sqrt();
        assert!((m.effective_rabi(0.25 * d) - quarter).abs() < 1e-15 * quarter);
        let strong = Medium::new(
            AtomicParams::builder().omega_c(50.0 * a.gamma31()).build().unwrap(),
            m.grating,
        );
        let oc = strong.atomic.omega_c();
        let rel = (strong.effective_rabi(0.0) - oc) / oc;
        assert!(rel > 0.0 && rel <= a.gamma31() * a.gamma21() / (2.0 * oc * oc));
    }

    #[test]
    fn chi3_peaks_where_the_product_of_lorentzians_peaks() {
        let m = medium();
        let rabi = m.effective_rabi(0.0);
        let ge = m.effective_dephasing();
        let n = 600_001;
        let step = 6.0 * rabi / (n - 1) as f64;
        let mags: Vec<f64> = (0..n)
            .map(|i| m.chi3_as(-3.0 * rabi + i as f64 * step, 0.0).norm())
            .collect();
        let peaks: Vec<f64> = (1..n - 1)
            .filter(|&i| mags[i] > mags[i - 1] && mags[i] >= mags[i + 1])
            .map(|i| -3.0 * rabi + i as f64 * step)
            .collect();
        let want = (rabi * rabi - ge * ge).sqrt();
        assert_eq!(peaks.len(), 2);
        assert!((peaks[0] + want).abs() <= step);
        assert!((peaks[1] - want).abs() <= step);
    }

    #[test]
    fn chi3_lobe_width_is_twice_the_dephasing() {
        let g = DEFAULT_GAMMA31;
        // Ωe = 10 γe at the antinode
        let ge = 0.8 * g;
        let oc = ((10.0 * ge).powi(2) - g * 0.6 * g).sqrt();
        let m = Medium::new(
            AtomicParams::builder().omega_c(oc).build().unwrap(),
            GratingGeometry::default(),
        );
        let rabi = m.effective_rabi(0.0);
        let n = 400_001;
        let step = 2.0 * rabi / (n - 1) as f64;
        let power: Vec<f64> = (0..n).map(|i| m.chi3_as(i as f64 * step, 0.0).norm_sqr()).collect();
        let (imax, pmax) = power
            .iter()
            .enumerate()
            .fold((0, 0.0), |acc, (i, &p)| if p > acc.1 { (i, p) } else { acc });
        let lo = (0..imax).rev().find(|&i| power[i] < 0.5 * pmax).unwrap();
        let hi = (imax..n).find(|&i| power[i] < 0.5 * pmax).unwrap();
        let fwhm = (hi - lo) as f64 * step;
        assert!((fwhm / (2.0 * ge) - 1.0).abs() < 0.1, "fwhm {fwhm}, 2γe {}", 2.0 * ge);
    }

    #[test]
    fn stokes_response_is_suppressed() {
        let g = DEFAULT_GAMMA31;
        let m = Medium::new(
            AtomicParams::builder()
                .omega_p(0.1 * g)
                .delta_p(10.0 * g)
                .build()
                .unwrap(),
            GratingGeometry::default(),
        );
        for i in -200..=200 {
            let w = i as f64 * 0.05 * g;
            for x in [0.0, 0.3, 0.7, 1.0] {
                assert!(m.chi_linear_s(w, x).norm() <= 1e-4 * m.chi_linear_as(w, x).norm());
            }
        }
    }

    #[test]
    fn anti_stokes_absorption_is_largest_at_nodes() {
        let m = medium();
        let d = m.grating.d();
        let grid: Vec<f64> = (0..=200).map(|i| i as f64 * 0.5 * d / 200.0).collect();
        let im: Vec<f64> = grid.iter().map(|&x| m.chi_linear_as(0.0, x).im).collect();
        let (lo, hi) = (
            im.iter().cloned().fold(f64::MAX, f64::min),
            im.iter().cloned().fold(f64::MIN, f64::max),
        );
        assert_eq!(lo, im[0]);
        assert_eq!(hi, im[200]);
    }

    #[test]
    fn velocity_and_absorption_extremes() {
        let m = medium();
        let d = m.grating.d();
        let v0 = m.atomic.v0();
        assert_eq!(m.group_velocity(0.0), v0);
        assert_eq!(m.group_velocity(0.5 * d), 0.0);
        assert!((m.group_velocity(0.25 * d) - 0.5 * v0).abs() < 1e-15 * v0);
        let od = m.atomic.optical_depth();
        assert_eq!(m.absorption(0.5 * d), 0.5 * od);
        let a = m.atomic;
        let limit = od * a.gamma21() * a.gamma31() / (2.0 * a.omega_c().powi(2));
        assert!((m.absorption(0.0) / limit - 1.0).abs() < a.gamma21() * a.gamma31() / a.omega_c().powi(2) * 1.01);
    }

    #[test]
    fn node_transmission_is_exp_minus_od() {
        let m = medium();
        let t = m.transmission(0.5 * m.grating.d());
        assert!((t - 6.737_946_999_085_467e-3).abs() < 1e-15);
        let clear = Medium::new(AtomicParams::builder().optical_depth(0.0).build().unwrap(), m.grating);
        assert!(clear
            .transmission_profile(&[-1.0, 0.0, 0.4, 1.0])
            .unwrap()
            .iter()
            .all(|&t| t == 1.0));
        assert!(m.transmission_profile(&[0.0, -1.0]).is_err());
    }

    #[test]
    fn phase_matching_limits() {
        let m = medium();
        assert_eq!(m.phase_matching(0.3, 0.5 * m.grating.d()), Complex64::new(0.0, 0.0));
        let clear = Medium::new(AtomicParams::builder().optical_depth(0.0).build().unwrap(), m.grating);
        let k = clear.phase_matching(1e-9, 0.0);
        assert!((k - Complex64::new(1.0, 0.0)).norm() < 1e-5);
    }

    #[test]
    fn invalid_parameters() {
        assert!(AtomicParams::builder().gamma31(0.0).build().is_err());
        assert!(AtomicParams::builder().optical_depth(-1.0).build().is_err());
        let err = AtomicParams::builder().omega_p(1.0).delta_p(5.0).build().unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "omega_p", .. }));
        assert!(GratingGeometry::new(0.0, 2, 1.0, 1.0).is_err());
        assert!(GratingGeometry::new(1.0, 0, 1.0, 1.0).is_err());
        assert!(GratingGeometry::new(1.0, 1, 1.0, 1.0).is_ok());
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1e-300)
    }

    proptest! {
        #[test]
        fn responses_are_periodic_and_even(x in -20.0f64..20.0, w in -1.0f64..1.0) {
            let m = medium();
            let d = m.grating.d();
            for shifted in [x + d, -x] {
                prop_assert!(close(m.chi3_as(w, x), m.chi3_as(w, shifted)));
                prop_assert!(close(m.chi_linear_as(w, x), m.chi_linear_as(w, shifted)));
                prop_assert!(close(m.chi_linear_s(w, x), m.chi_linear_s(w, shifted)));
                prop_assert!((m.absorption(x) - m.absorption(shifted)).abs() <= 1e-12);
                prop_assert!((m.group_velocity(x) - m.group_velocity(shifted)).abs() <= 1e-12);
            }
        }

        #[test]
        fn chi3_magnitude_is_even_in_frequency(w in -2.0f64..2.0, x in -1.0f64..1.0) {
            let m = medium();
            let (a, b) = (m.chi3_as(w, x).norm(), m.chi3_as(-w, x).norm());
            prop_assert!((a - b).abs() <= 1e-13 * a);
        }

        #[test]
        fn absorption_falls_as_drive_rises(x1 in 0.0f64..1.0, x2 in 0.0f64..1.0) {
            let m = medium();
            let (c1, c2) = (m.cos2(x1), m.cos2(x2));
            prop_assume!(c1 < c2);
            prop_assert!(m.absorption(x1) >= m.absorption(x2));
            prop_assert!(m.transmission(x1) <= m.transmission(x2));
        }

        #[test]
        fn stokes_suppression_bound(
            r21 in 0.26f64..2.0,
            ratio in 0.0f64..0.0999,
            oc in 0.0f64..20.0,
            w in -5.0f64..5.0,
            x in -1.0f64..1.0,
        ) {
            let g = DEFAULT_GAMMA31;
            let a = AtomicParams::builder()
                .gamma21(r21 * g)
                .omega_c(oc * g)
                .delta_p(10.0 * g)
                .omega_p(ratio * 10.0 * g)
                .build()
                .unwrap();
            let m = Medium::new(a, GratingGeometry::default());
            let wg = w * g;
            prop_assert!(m.chi_linear_s(wg, x).norm() < 1e-2 * m.chi_linear_as(wg, x).norm());
        }
    }
}
