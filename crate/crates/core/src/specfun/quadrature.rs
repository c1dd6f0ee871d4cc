use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Composite Gauss–Legendre rule: `n_panels` equal panels with `n_points`
/// nodes each. Nodes are interior to every panel, so the interval end points
/// are never evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    n_panels: usize,
    n_points: usize,
    rel_tol: f64,
}

impl QuadratureSpec {
    pub fn new(n_panels: usize, n_points: usize, rel_tol: f64) -> Result<Self> {
        if n_panels == 0 {
            return Err(Error::invalid("n_panels", "must be at least 1"));
        }
        if n_points < 2 {
            return Err(Error::invalid("n_points", format!("must be >= 2, got {n_points}")));
        }
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::invalid("rel_tol", format!("must be > 0, got {rel_tol}")));
        }
        Ok(Self {
            n_panels,
            n_points,
            rel_tol,
        })
    }

    pub fn n_panels(&self) -> usize {
        self.n_panels
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn total_nodes(&self) -> usize {
        self.n_panels * self.n_points
    }

    /// Same rule with twice as many panels.
    pub fn refined(&self) -> Self {
        Self {
            n_panels: 2 * self.n_panels,
            ..*self
        }
    }

    /// Node/weight pairs on `[a, b]`, in ascending node order.
    pub fn rule(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let base = GaussLegendre::new(self.n_points)
            .expect("n_points >= 2 is a constructor invariant")
            .into_node_weight_pairs();
        let mut base: Vec<_> = base;
        base.sort_by(|p, q| p.0.total_cmp(&q.0));
        let h = (b - a) / self.n_panels as f64;
        let mut out = Vec::with_capacity(self.total_nodes());
        for panel in 0..self.n_panels {
            let lo = a + panel as f64 * h;
            let mid = lo + 0.5 * h;
            for &(t, w) in &base {
                out.push((mid + 0.5 * h * t, 0.5 * h * w));
            }
        }
        out
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.rule(a, b).into_iter().map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        self.rule(a, b).into_iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Integrates with this rule and with [`refined`](Self::refined); errors
    /// if the two disagree by more than `rel_tol`. Returns the refined value.
    pub fn integrate_checked<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> Result<f64> {
        let coarse = self.integrate(a, b, &mut f);
        let fine = self.refined().integrate(a, b, &mut f);
        let change = (fine - coarse).abs() / fine.abs().max(f64::MIN_POSITIVE);
        if change > self.rel_tol {
            return Err(Error::NotConverged {
                quadrature: "Gauss-Legendre",
                change,
                tol: self.rel_tol,
            });
        }
        Ok(fine)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            n_panels: 32,
            n_points: 16,
            rel_tol: 1e-4,
        }
    }
}

/// Trapezoid rule for samples on a uniform grid.
pub fn trapezoid(values: &[f64], spacing: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => spacing * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// `‖a - b‖₂ / ‖b‖₂` for complex sequences of equal length.
pub(crate) fn relative_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    if den == 0.0 {
        if num == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (num / den).sqrt()
    }
}
