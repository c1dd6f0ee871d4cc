//! Orchestration of the runs behind each subcommand.

use eigshape::biphoton::{
    array_factor, coincidence_resonance, coincidence_resonance_numeric, coincidence_trace, joint_spectrum_on,
};
use eigshape::diffraction::{angular_pattern, order_angle, propagating_orders, propagating_pattern};
use eigshape::{ComplexSpectrum, Modulation, Regime};

use crate::config::RunConfig;
use crate::CliError;

/// One named data column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: &'static str,
    pub values: Vec<f64>,
}

impl Column {
    pub fn new(name: &str, unit: &'static str, values: Vec<f64>) -> Self {
        Self {
            name: name.to_string(),
            unit,
            values,
        }
    }
}

/// Grid column plus value columns, with free-text notes for the header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub grid: Column,
    pub series: Vec<Column>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn series(&self, name: &str) -> Option<&[f64]> {
        self.series.iter().find(|c| c.name == name).map(|c| c.values.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Transmission,
    Coincidence,
    Diffraction,
    Spectrum,
    Orders,
}

impl Subcommand {
    pub const ALL: [Subcommand; 5] = [
        Subcommand::Transmission,
        Subcommand::Coincidence,
        Subcommand::Diffraction,
        Subcommand::Spectrum,
        Subcommand::Orders,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Subcommand::Transmission => "transmission",
            Subcommand::Coincidence => "coincidence",
            Subcommand::Diffraction => "diffraction",
            Subcommand::Spectrum => "spectrum",
            Subcommand::Orders => "orders",
        }
    }

    pub fn compute(&self, cfg: &RunConfig) -> Result<Table, CliError> {
        match self {
            Subcommand::Transmission => run_transmission(cfg),
            Subcommand::Coincidence => run_coincidence(cfg),
            Subcommand::Diffraction => run_diffraction(cfg),
            Subcommand::Spectrum => run_spectrum(cfg),
            Subcommand::Orders => run_orders(cfg),
        }
    }
}

fn unit_peak(mut v: Vec<f64>) -> Vec<f64> {
    let peak = v.iter().cloned().fold(0.0, f64::max);
    if peak > 0.0 {
        for x in &mut v {
            *x /= peak;
        }
    }
    v
}

/// Transmission, absorption and group velocity over two periods.
pub fn run_transmission(cfg: &RunConfig) -> Result<Table, CliError> {
    let m = &cfg.medium;
    let x = cfg.x_grid();
    let transmission = m.transmission_profile(&x)?;
    let col = |f: &dyn Fn(f64) -> f64| x.iter().map(|&x| f(x)).collect::<Vec<_>>();
    Ok(Table {
        series: vec![
            Column::new("transmission", "1", transmission),
            Column::new("alpha_l", "1", col(&|x| m.absorption(x))),
            Column::new("group_velocity_um_per_ns", "um/ns", col(&|x| m.group_velocity(x))),
            Column::new("cos2", "1", col(&|x| m.cos2(x))),
        ],
        grid: Column::new("x_um", "um", x),
        notes: vec![format!(
            "node transmission exp(-od) = {:e}",
            (-cfg.atomic().optical_depth()).exp()
        )],
    })
}

/// Normalized coincidence rates. The resonance regime pairs the closed
/// form with the numerical double integral; the other regimes pair the
/// grating medium with a uniformly driven one.
pub fn run_coincidence(cfg: &RunConfig) -> Result<Table, CliError> {
    let m = &cfg.medium;
    let tau = cfg.tau_grid();
    let (names, traces) = match cfg.regime.regime {
        Regime::Resonance => (
            ["analytic", "numeric"],
            [
                coincidence_resonance(&tau, m)?,
                coincidence_resonance_numeric(&tau, m, &cfg.regime)?,
            ],
        ),
        Regime::PhaseMatching | Regime::Full => (
            ["grating", "no_grating"],
            [
                coincidence_trace(&tau, m, &cfg.regime.with_modulation(Modulation::Grating))?,
                coincidence_trace(&tau, m, &cfg.regime.with_modulation(Modulation::Uniform))?,
            ],
        ),
    };
    Ok(Table {
        series: names
            .iter()
            .zip(traces)
            .map(|(n, t)| Column::new(n, "1", t.rate().to_vec()))
            .collect(),
        grid: Column::new("tau_ns", "ns", tau),
        notes: vec![format!("regime {}", cfg.regime.regime.name())],
    })
}

/// Normalized far-field intensity at `tau_fixed_ns`, the normalized
/// `|array_factor|²`, and a 0/1 marker of the intensity maxima.
pub fn run_diffraction(cfg: &RunConfig) -> Result<Table, CliError> {
    let m = &cfg.medium;
    let theta = cfg.theta_grid();
    let pattern = angular_pattern(cfg.values.tau_fixed_ns, &theta, m, &cfg.regime)?;
    let af = unit_peak(theta.iter().map(|&t| array_factor(t, &m.grating).norm_sqr()).collect());
    let maxima = pattern.local_maxima(1e-2);
    let marker = theta
        .iter()
        .map(|t| if maxima.contains(t) { 1.0 } else { 0.0 })
        .collect();
    let notes = propagating_orders(&m.grating)
        .into_iter()
        .filter_map(|k| {
            order_angle(k, &m.grating)
                .angle()
                .map(|a| format!("order {k} at theta = {a:e} rad"))
        })
        .chain([format!("regime {}", cfg.regime.regime.name())])
        .collect();
    Ok(Table {
        series: vec![
            Column::new("intensity", "1", pattern.intensity().to_vec()),
            Column::new("array_factor_sq", "1", af),
            Column::new("maximum", "1", marker),
        ],
        grid: Column::new("theta_rad", "rad", theta),
        notes,
    })
}

fn fwhm_note(name: &str, s: &ComplexSpectrum) -> String {
    match s.fwhm() {
        Some(w) => format!("{name} fwhm = {w:e} rad/ns"),
        None => format!("{name} fwhm not resolved on the grid"),
    }
}

/// `|Φ|²` with and without the grating, each normalized to unit peak.
pub fn run_spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let m = &cfg.medium;
    let omega = cfg.omega_grid();
    let grating = joint_spectrum_on(m, &cfg.regime.with_modulation(Modulation::Grating), omega.clone())?;
    let uniform = joint_spectrum_on(m, &cfg.regime.with_modulation(Modulation::Uniform), omega.clone())?;
    let power = |s: &ComplexSpectrum| unit_peak(s.values().iter().map(|v| v.norm_sqr()).collect());
    Ok(Table {
        series: vec![
            Column::new("grating", "1", power(&grating)),
            Column::new("no_grating", "1", power(&uniform)),
        ],
        grid: Column::new("omega_rad_per_ns", "rad/ns", omega),
        notes: vec![
            fwhm_note("grating", &grating),
            fwhm_note("no_grating", &uniform),
            format!("regime {}", cfg.regime.regime.name()),
        ],
    })
}

/// Angle and power share of each propagating order at `tau_fixed_ns`.
pub fn run_orders(cfg: &RunConfig) -> Result<Table, CliError> {
    let g = cfg.grating();
    let pattern = propagating_pattern(
        cfg.values.tau_fixed_ns,
        cfg.values.theta_points,
        &cfg.medium,
        &cfg.regime,
    )?;
    let shares = pattern.order_shares(g);
    let order: Vec<f64> = shares.iter().map(|(k, _)| f64::from(*k)).collect();
    let sin_theta = shares
        .iter()
        .map(|(k, _)| f64::from(*k) * g.lambda_as() / g.d())
        .collect();
    let theta = shares
        .iter()
        .map(|(k, _)| order_angle(*k, g).angle().unwrap_or(f64::NAN))
        .collect();
    Ok(Table {
        series: vec![
            Column::new("sin_theta", "1", sin_theta),
            Column::new("theta_rad", "rad", theta),
            Column::new("share", "1", shares.iter().map(|(_, s)| *s).collect()),
        ],
        grid: Column::new("order", "1", order),
        notes: vec![
            format!("zeroth-order fraction = {:e}", pattern.zeroth_order_fraction(g)),
            format!("regime {}", cfg.regime.regime.name()),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn transmission_at_the_nodes_is_exp_minus_od() {
        let cfg = parse_config("").unwrap();
        let t = run_transmission(&cfg).unwrap();
        let x = &t.grid.values;
        let tr = t.series("transmission").unwrap();
        let expected = (-5.0f64).exp();
        for (xi, ti) in x.iter().zip(tr) {
            if ((xi / 2.0).abs() - 0.5).abs() < 1e-9 {
                assert!((ti - expected).abs() < 1e-12, "x = {xi}: {ti}");
            }
        }
        assert_eq!(t.series.len(), 4);
    }

    #[test]
    fn orders_list_every_propagating_order() {
        let cfg = parse_config("regime = resonance\nx_panels = 8\ntheta_points = 801").unwrap();
        let t = run_orders(&cfg).unwrap();
        assert_eq!(t.grid.values, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        let share = t.series("share").unwrap();
        assert!(share[2] > share[1] && share[2] > share[3]);
    }
}
