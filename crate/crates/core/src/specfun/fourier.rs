//! Fourier integrals `∫ f(ω) e^{-iωτ} dω` of spectra sampled on a finite,
//! uniform frequency window.
//!
//! The integral is the trapezoid sum over the window. For uniform `τ` grids
//! the sum is evaluated for all delays at once with a chirp-z (Bluestein)
//! transform; otherwise each delay is summed directly. By Poisson summation
//! the trapezoid sum equals the exact transform plus images spaced by the
//! period `2π/Δω`, so the window spacing must keep those images far away,
//! and the window edges must sit where the spectrum has decayed.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Largest admissible ratio of the edge samples to the peak sample.
pub const EDGE_DECAY: f64 = 1e-6;

const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;
const ANCHOR_EVERY: usize = 512;

/// Uniform frequency grid `ω_j = (j - N/2) Δω`, `j = 0..=N`, spanning
/// `[-half_width, half_width]` with `N = n_samples` intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyWindow {
    half_width: f64,
    n_samples: usize,
}

impl FrequencyWindow {
    pub fn new(half_width: f64, n_samples: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::invalid(
                "half_width",
                format!("must be positive and finite, got {half_width}"),
            ));
        }
        if n_samples < 16 || !n_samples.is_power_of_two() {
            return Err(Error::invalid(
                "n_samples",
                format!("must be a power of two >= 16, got {n_samples}"),
            ));
        }
        Ok(Self { half_width, n_samples })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Number of grid points (`n_samples + 1`, both edges included).
    pub fn len(&self) -> usize {
        self.n_samples + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n_samples as f64
    }

    /// Delay period `2π/Δω` of the trapezoid sum.
    pub fn period(&self) -> f64 {
        TAU / self.spacing()
    }

    pub fn omega(&self, j: usize) -> f64 {
        (j as f64 - (self.n_samples / 2) as f64) * self.spacing()
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.omega(j)).collect()
    }

    /// Same window with half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            n_samples: 2 * self.n_samples,
            ..*self
        }
    }

    /// Twice the half width at the same spacing.
    pub fn widened(&self) -> Self {
        Self {
            half_width: 2.0 * self.half_width,
            n_samples: 2 * self.n_samples,
        }
    }
}

/// Trapezoid-rule Fourier integral `∫_{-W}^{W} f(ω) e^{-iωτ} dω` for every
/// `τ` in `tau`, with `values[j] = f(window.omega(j))`.
///
/// Fails with [`Error::WindowTooNarrow`] unless both edge samples are below
/// [`EDGE_DECAY`] times the peak magnitude.
pub fn oscillatory_ft(window: &FrequencyWindow, values: &[Complex64], tau: &[f64]) -> Result<Vec<Complex64>> {
    check_edge_decay(window, values)?;
    Ok(fourier_sum_unchecked(window, values, tau))
}

/// Length and edge-decay validation of a sampled spectrum.
pub(crate) fn check_edge_decay(window: &FrequencyWindow, values: &[Complex64]) -> Result<()> {
    check_len(window, values)?;
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(());
    }
    let edge = values[0].norm().max(values[values.len() - 1].norm()) / peak;
    if edge > EDGE_DECAY {
        return Err(Error::WindowTooNarrow {
            edge_ratio: edge,
            threshold: EDGE_DECAY,
            half_width: window.half_width,
        });
    }
    Ok(())
}

fn check_len(window: &FrequencyWindow, values: &[Complex64]) -> Result<()> {
    if values.len() != window.len() {
        return Err(Error::invalid(
            "values",
            format!("expected {} samples for the window, got {}", window.len(), values.len()),
        ));
    }
    Ok(())
}

/// [`oscillatory_ft`] without the edge-decay guard, for callers that have
/// already validated an aggregate of the spectra they transform.
pub(crate) fn fourier_sum_unchecked(window: &FrequencyWindow, values: &[Complex64], tau: &[f64]) -> Vec<Complex64> {
    debug_assert_eq!(values.len(), window.len());
    let dw = window.spacing();
    let last = values.len() - 1;
    let weighted: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(j, v)| if j == 0 || j == last { v * (0.5 * dw) } else { v * dw })
        .collect();

    match uniform_step(tau) {
        Some(step) if prefer_chirp_z(weighted.len(), tau.len()) => chirp_z(&weighted, window, tau[0], step, tau.len()),
        _ => tau.iter().map(|&t| direct_sum(&weighted, window, t)).collect(),
    }
}

fn uniform_step(tau: &[f64]) -> Option<f64> {
    if tau.len() < 2 {
        return None;
    }
    let m = tau.len() - 1;
    let step = (tau[m] - tau[0]) / m as f64;
    if step == 0.0 || !step.is_finite() {
        return None;
    }
    let scale = tau[0].abs().max(tau[m].abs());
    let uniform = tau
        .iter()
        .enumerate()
        .all(|(k, &t)| (t - (tau[0] + k as f64 * step)).abs() <= 1e-10 * scale);
    uniform.then_some(step)
}

fn prefer_chirp_z(n: usize, m: usize) -> bool {
    if m < 16 {
        return false;
    }
    let len = (n + m - 1).next_power_of_two() as f64;
    (n as f64) * (m as f64) > 6.0 * len * len.log2()
}

/// `e^{i a b}` with the product and the reduction modulo 2π carried in
/// extended precision, so large chirp phases keep full accuracy.
fn cis_product(a: f64, b: f64) -> Complex64 {
    let p = a * b;
    let err = a.mul_add(b, -p);
    let turns = (p / TAU).round();
    let r = (-turns).mul_add(TAU, p);
    let r = (-turns).mul_add(TAU_LO, r) + err;
    let (s, c) = r.sin_cos();
    Complex64::new(c, s)
}

fn direct_sum(weighted: &[Complex64], window: &FrequencyWindow, t: f64) -> Complex64 {
    let dw = window.spacing();
    let half = (window.n_samples / 2) as f64;
    let phase_step = dw * t;
    let step = cis_product(-1.0, phase_step);
    let mut total = Complex64::new(0.0, 0.0);
    for (block, chunk) in weighted.chunks(ANCHOR_EVERY).enumerate() {
        let j0 = (block * ANCHOR_EVERY) as f64;
        let mut rot = cis_product(-(j0 - half), phase_step);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in chunk {
            acc += c * rot;
            rot *= step;
        }
        total += acc;
    }
    total
}

/// Bluestein evaluation of `Σ_j c_j e^{-i ω_j τ_k}` on `τ_k = τ0 + kΔτ`.
///
/// With `ω_j = (j - h)Δω`, `s = Δω τ0`, `a = Δω Δτ`:
/// `F_k = e^{i h s} e^{i h a k} e^{-i a k²/2} Σ_j [c_j e^{-i s j} e^{-i a j²/2}] e^{i a (k-j)²/2}`.
fn chirp_z(weighted: &[Complex64], window: &FrequencyWindow, tau0: f64, dtau: f64, m: usize) -> Vec<Complex64> {
    let n = weighted.len();
    let h = (window.n_samples / 2) as f64;
    let s = window.spacing() * tau0;
    let a = window.spacing() * dtau;
    let half_a = 0.5 * a;
    let len = (n + m - 1).next_power_of_two();

    let mut u = vec![Complex64::new(0.0, 0.0); len];
    for (j, (slot, c)) in u.iter_mut().zip(weighted).enumerate() {
        let jf = j as f64;
        *slot = c * cis_product(-jf, s) * cis_product(-half_a, jf * jf);
    }
    let mut v = vec![Complex64::new(0.0, 0.0); len];
    for (k, slot) in v.iter_mut().enumerate().take(m) {
        let kf = k as f64;
        *slot = cis_product(half_a, kf * kf);
    }
    for j in 1..n {
        let jf = j as f64;
        v[len - j] = cis_product(half_a, jf * jf);
    }

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(len);
    let inverse = planner.plan_fft_inverse(len);
    forward.process(&mut u);
    forward.process(&mut v);
    for (x, y) in u.iter_mut().zip(&v) {
        *x *= y;
    }
    inverse.process(&mut u);
    let norm = 1.0 / len as f64;

    let lead = cis_product(h, s);
    let ha = h * a;
    (0..m)
        .map(|k| {
            let kf = k as f64;
            lead * cis_product(ha, kf) * cis_product(-half_a, kf * kf) * u[k] * norm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    // ∫ e^{-ω²} e^{-iωτ} dω = √π e^{-τ²/4}
    fn gaussian_ft(t: f64) -> f64 {
        PI.sqrt() * (-0.25 * t * t).exp()
    }

    fn sample(window: &FrequencyWindow, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        window.grid().into_iter().map(f).collect()
    }

    fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn window_validation_and_grid() {
        assert!(FrequencyWindow::new(1.0, 15).is_err());
        assert!(FrequencyWindow::new(1.0, 24).is_err());
        assert!(FrequencyWindow::new(0.0, 32).is_err());
        let w = FrequencyWindow::new(3.0, 64).unwrap();
        let g = w.grid();
        assert_eq!(g.len(), 65);
        assert_eq!(g[0], -3.0);
        assert_eq!(g[32], 0.0);
        assert_eq!(g[64], 3.0);
        assert_eq!(w.refined().spacing(), 0.5 * w.spacing());
        assert_eq!(w.widened().spacing(), w.spacing());
    }

    #[test]
    fn gaussian_both_paths() {
        let w = FrequencyWindow::new(9.0, 1 << 12).unwrap();
        let f = sample(&w, |x| Complex64::new((-x * x).exp(), 0.0));
        let tau = linspace(-12.0, 12.0, 801);
        let fast = oscillatory_ft(&w, &f, &tau).unwrap();
        for (t, got) in tau.iter().zip(&fast) {
            assert!((got - gaussian_ft(*t)).norm() < 1e-12, "tau = {t}");
            let slow = direct_sum_checked(&w, &f, *t);
            assert!((got - slow).norm() < 1e-12);
        }
    }

    fn direct_sum_checked(w: &FrequencyWindow, f: &[Complex64], t: f64) -> Complex64 {
        oscillatory_ft(w, f, &[t]).unwrap()[0]
    }

    #[test]
    fn even_real_spectrum_gives_conjugate_pairs() {
        let w = FrequencyWindow::new(40.0, 1 << 12).unwrap();
        let f = sample(&w, |x| {
            Complex64::new(1.0 / (1.0 + x.powi(4)) * (-0.01 * x * x).exp(), 0.0)
        });
        let tau = linspace(-10.0, 10.0, 201);
        let out = oscillatory_ft(&w, &f, &tau).unwrap();
        for k in 0..tau.len() {
            let mirror = out[tau.len() - 1 - k];
            assert!((out[k] - mirror.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn single_pole_residue() {
        // 1/(ω + iγ) has one pole in the lower half plane: -2πi e^{-γτ} for τ > 0.
        let gamma = 1.0;
        let w = FrequencyWindow::new((1u64 << 20) as f64, 1 << 23).unwrap();
        let f = sample(&w, |x| 1.0 / Complex64::new(x, gamma));
        let tau = [0.5, 1.0, 2.0, 3.5, 5.0];
        let out = oscillatory_ft(&w, &f, &tau).unwrap();
        for (t, got) in tau.iter().zip(out) {
            let want = Complex64::new(0.0, -2.0 * PI * (-gamma * t).exp());
            assert!((got - want).norm() < 1e-4 * want.norm(), "tau = {t}: {got} vs {want}");
        }
    }

    fn two_pole(omega: f64, rabi: f64, gamma: f64) -> Complex64 {
        1.0 / (Complex64::new(omega - rabi, gamma) * Complex64::new(omega + rabi, gamma))
    }

    fn two_pole_residue(t: f64, rabi: f64, gamma: f64) -> f64 {
        if t < 0.0 {
            0.0
        } else {
            -2.0 * PI / rabi * (rabi * t).sin() * (-gamma * t).exp()
        }
    }

    #[test]
    fn two_pole_residue_and_grid_convergence() {
        let (rabi, gamma) = (5.0, 0.8);
        let w = FrequencyWindow::new(4096.0, 1 << 16).unwrap();
        let tau = linspace(-3.0, 6.0, 300);
        let coarse = oscillatory_ft(&w, &sample(&w, |x| two_pole(x, rabi, gamma)), &tau).unwrap();
        let fine_w = w.refined();
        let fine = oscillatory_ft(&fine_w, &sample(&fine_w, |x| two_pole(x, rabi, gamma)), &tau).unwrap();
        let exact: Vec<Complex64> = tau
            .iter()
            .map(|&t| Complex64::new(two_pole_residue(t, rabi, gamma), 0.0))
            .collect();
        let peak = exact.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (got, want) in coarse.iter().zip(&exact) {
            assert!((got - want).norm() < 1e-3 * peak);
        }
        assert!(crate::specfun::relative_l2(&coarse, &exact) < 1e-4);
        assert!(crate::specfun::relative_l2(&coarse, &fine) < 1e-6);
    }

    #[test]
    fn narrow_window_is_rejected() {
        let w = FrequencyWindow::new(100.0, 1 << 10).unwrap();
        let f = sample(&w, |x| 1.0 / Complex64::new(x, 1.0));
        let err = oscillatory_ft(&w, &f, &[1.0]).unwrap_err();
        assert!(matches!(err, Error::WindowTooNarrow { .. }));
        assert!(oscillatory_ft(&w, &f[1..], &[1.0]).is_err());
    }

    #[test]
    fn zero_spectrum_gives_zero() {
        let w = FrequencyWindow::new(1.0, 16).unwrap();
        let out = oscillatory_ft(&w, &vec![Complex64::new(0.0, 0.0); 17], &[0.0, 1.0]).unwrap();
        assert!(out.iter().all(|v| v.norm() == 0.0));
    }

    proptest! {
        #[test]
        fn linear_in_the_spectrum(
            a_re in -3.0f64..3.0, a_im in -3.0f64..3.0,
            b_re in -3.0f64..3.0, b_im in -3.0f64..3.0,
            c1 in -2.0f64..2.0, c2 in -2.0f64..2.0,
        ) {
            let w = FrequencyWindow::new(12.0, 1 << 10).unwrap();
            let (a, b) = (Complex64::new(a_re, a_im), Complex64::new(b_re, b_im));
            let f = sample(&w, |x| Complex64::new((-(x - c1).powi(2)).exp(), 0.0));
            let g = sample(&w, |x| Complex64::new(0.0, (-(x - c2).powi(2) * 0.5).exp()));
            let mix: Vec<Complex64> = f.iter().zip(&g).map(|(u, v)| a * u + b * v).collect();
            let tau = linspace(-4.0, 8.0, 100);
            let lhs = oscillatory_ft(&w, &mix, &tau).unwrap();
            let fu = oscillatory_ft(&w, &f, &tau).unwrap();
            let gu = oscillatory_ft(&w, &g, &tau).unwrap();
            let rhs: Vec<Complex64> = fu.iter().zip(&gu).map(|(u, v)| a * u + b * v).collect();
            prop_assert!(crate::specfun::relative_l2(&lhs, &rhs) < 1e-12);
        }
    }
}
