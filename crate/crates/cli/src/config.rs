//! Flat `key = value` run configuration.
//!
//! Every key has a default, so an empty file is a valid configuration.
//! Rates are given in MHz or in units of `γ31`, times in ns and lengths in
//! μm; the library works in rad/ns internally.
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `gamma31_mhz` | 3 | `γ31 / 2π` |
//! | `gamma21_ratio` | 0.6 | `γ21 / γ31` |
//! | `gamma41_ratio` | 1 | `γ41 / γ31` |
//! | `omega_c_over_gamma31` | 5 | coupling Rabi frequency |
//! | `omega_p_over_gamma31` | 0.1 | pump Rabi frequency |
//! | `delta_p_over_gamma31` | 10 | pump detuning |
//! | `od` | 5 | optical depth |
//! | `l_over_v0_ns` | 800 | antinode transit time `L/v0` |
//! | `length_um` | 15000 | medium length |
//! | `d_um` | 2 | standing-wave period |
//! | `m_slits` | 20 | illuminated periods `M` (`M + 1` sites) |
//! | `lambda_as_um` | 0.795 | anti-Stokes wavelength |
//! | `rabi_form` | exact | `exact` or `cosine` |
//! | `regime` | full | `resonance`, `phase-matching` or `full` |
//! | `x_panels`, `x_points`, `x_rel_tol` | 32, 16, 1e-3 | slit-position rule |
//! | `window_half_width`, `window_samples` | auto | frequency window (rad/ns, power of two) |
//! | `window_refine` | 0 | doublings of the frequency sample count |
//! | `tau_points`, `tau_max_ns` | 2000, auto | delay grid `[0, tau_max]`; auto is `5 max(1/γe, L/v0)` |
//! | `transmission_points` | 1001 | positions over `[-d, d]` |
//! | `theta_points`, `theta_max_rad` | 4001, π/3 | angle grid `[-θmax, θmax]`; also the propagating grid size for `orders` |
//! | `tau_fixed_ns` | 100 | delay of the angular pattern |
//! | `spectrum_points`, `spectrum_span_over_gamma31` | 4001, 8 | detuning grid `[-span, span] γ31` |
//! | `output` | auto | data file path; auto is `<subcommand>.<format>` |
//! | `format` | csv | `csv` or `json` |
//! | `emit_plot_script` | false | also write a plotting script |

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, TAU};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use eigshape::{
    AtomicParams, FrequencyWindow, GratingGeometry, Medium, QuadratureSpec, RabiForm, Regime, RegimeConfig,
    WindowChoice,
};
use thiserror::Error;

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("expected csv or json, got `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

/// Every configuration value, in the units of the file.
#[derive(Debug, Clone, PartialEq)]
pub struct Values {
    pub gamma31_mhz: f64,
    pub gamma21_ratio: f64,
    pub gamma41_ratio: f64,
    pub omega_c_over_gamma31: f64,
    pub omega_p_over_gamma31: f64,
    pub delta_p_over_gamma31: f64,
    pub od: f64,
    pub l_over_v0_ns: f64,
    pub length_um: f64,
    pub d_um: f64,
    pub m_slits: u32,
    pub lambda_as_um: f64,
    pub rabi_form: RabiForm,
    pub regime: Regime,
    pub x_panels: usize,
    pub x_points: usize,
    pub x_rel_tol: f64,
    pub window_half_width: Option<f64>,
    pub window_samples: Option<usize>,
    pub window_refine: u32,
    pub tau_points: usize,
    pub tau_max_ns: Option<f64>,
    pub transmission_points: usize,
    pub theta_points: usize,
    pub theta_max_rad: f64,
    pub tau_fixed_ns: f64,
    pub spectrum_points: usize,
    pub spectrum_span_over_gamma31: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub emit_plot_script: bool,
}

impl Default for Values {
    fn default() -> Self {
        Self {
            gamma31_mhz: 3.0,
            gamma21_ratio: 0.6,
            gamma41_ratio: 1.0,
            omega_c_over_gamma31: 5.0,
            omega_p_over_gamma31: 0.1,
            delta_p_over_gamma31: 10.0,
            od: 5.0,
            l_over_v0_ns: 800.0,
            length_um: 15_000.0,
            d_um: 2.0,
            m_slits: 20,
            lambda_as_um: 0.795,
            rabi_form: RabiForm::Exact,
            regime: Regime::Full,
            x_panels: 32,
            x_points: 16,
            x_rel_tol: 1e-3,
            window_half_width: None,
            window_samples: None,
            window_refine: 0,
            tau_points: 2000,
            tau_max_ns: None,
            transmission_points: 1001,
            theta_points: 4001,
            theta_max_rad: FRAC_PI_3,
            tau_fixed_ns: 100.0,
            spectrum_points: 4001,
            spectrum_span_over_gamma31: 8.0,
            output: None,
            format: Format::Csv,
            emit_plot_script: false,
        }
    }
}

/// Keys in echo order.
pub const KEYS: &[&str] = &[
    "gamma31_mhz",
    "gamma21_ratio",
    "gamma41_ratio",
    "omega_c_over_gamma31",
    "omega_p_over_gamma31",
    "delta_p_over_gamma31",
    "od",
    "l_over_v0_ns",
    "length_um",
    "d_um",
    "m_slits",
    "lambda_as_um",
    "rabi_form",
    "regime",
    "x_panels",
    "x_points",
    "x_rel_tol",
    "window_half_width",
    "window_samples",
    "window_refine",
    "tau_points",
    "tau_max_ns",
    "transmission_points",
    "theta_points",
    "theta_max_rad",
    "tau_fixed_ns",
    "spectrum_points",
    "spectrum_span_over_gamma31",
    "output",
    "format",
    "emit_plot_script",
];

fn num<T: FromStr>(v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("cannot parse `{v}` as a number"))
}

fn auto<T: FromStr>(v: &str) -> Result<Option<T>, String> {
    if v == "auto" {
        Ok(None)
    } else {
        num(v).map(Some)
    }
}

fn show_auto<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "auto".to_string(), T::to_string)
}

fn flag(v: &str) -> Result<bool, String> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("expected true or false, got `{v}`")),
    }
}

fn rabi_form_name(r: RabiForm) -> &'static str {
    match r {
        RabiForm::Exact => "exact",
        RabiForm::CosineApprox => "cosine",
    }
}

impl Values {
    /// Sets `key` from its text form. `Ok(false)` for an unknown key.
    pub fn set(&mut self, key: &str, v: &str) -> Result<bool, String> {
        match key {
            "gamma31_mhz" => self.gamma31_mhz = num(v)?,
            "gamma21_ratio" => self.gamma21_ratio = num(v)?,
            "gamma41_ratio" => self.gamma41_ratio = num(v)?,
            "omega_c_over_gamma31" => self.omega_c_over_gamma31 = num(v)?,
            "omega_p_over_gamma31" => self.omega_p_over_gamma31 = num(v)?,
            "delta_p_over_gamma31" => self.delta_p_over_gamma31 = num(v)?,
            "od" => self.od = num(v)?,
            "l_over_v0_ns" => self.l_over_v0_ns = num(v)?,
            "length_um" => self.length_um = num(v)?,
            "d_um" => self.d_um = num(v)?,
            "m_slits" => self.m_slits = num(v)?,
            "lambda_as_um" => self.lambda_as_um = num(v)?,
            "rabi_form" => {
                self.rabi_form = match v {
                    "exact" => RabiForm::Exact,
                    "cosine" => RabiForm::CosineApprox,
                    _ => return Err(format!("expected exact or cosine, got `{v}`")),
                }
            }
            "regime" => self.regime = v.parse().map_err(|e: eigshape::Error| e.to_string())?,
            "x_panels" => self.x_panels = num(v)?,
            "x_points" => self.x_points = num(v)?,
            "x_rel_tol" => self.x_rel_tol = num(v)?,
            "window_half_width" => self.window_half_width = auto(v)?,
            "window_samples" => self.window_samples = auto(v)?,
            "window_refine" => self.window_refine = num(v)?,
            "tau_points" => self.tau_points = num(v)?,
            "tau_max_ns" => self.tau_max_ns = auto(v)?,
            "transmission_points" => self.transmission_points = num(v)?,
            "theta_points" => self.theta_points = num(v)?,
            "theta_max_rad" => self.theta_max_rad = num(v)?,
            "tau_fixed_ns" => self.tau_fixed_ns = num(v)?,
            "spectrum_points" => self.spectrum_points = num(v)?,
            "spectrum_span_over_gamma31" => self.spectrum_span_over_gamma31 = num(v)?,
            "output" => self.output = (v != "auto").then(|| PathBuf::from(v)),
            "format" => self.format = v.parse()?,
            "emit_plot_script" => self.emit_plot_script = flag(v)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// Text form of `key`, parseable by [`set`](Self::set).
    pub fn get(&self, key: &str) -> Option<String> {
        let s = match key {
            "gamma31_mhz" => self.gamma31_mhz.to_string(),
            "gamma21_ratio" => self.gamma21_ratio.to_string(),
            "gamma41_ratio" => self.gamma41_ratio.to_string(),
            "omega_c_over_gamma31" => self.omega_c_over_gamma31.to_string(),
            "omega_p_over_gamma31" => self.omega_p_over_gamma31.to_string(),
            "delta_p_over_gamma31" => self.delta_p_over_gamma31.to_string(),
            "od" => self.od.to_string(),
            "l_over_v0_ns" => self.l_over_v0_ns.to_string(),
            "length_um" => self.length_um.to_string(),
            "d_um" => self.d_um.to_string(),
            "m_slits" => self.m_slits.to_string(),
            "lambda_as_um" => self.lambda_as_um.to_string(),
            "rabi_form" => rabi_form_name(self.rabi_form).to_string(),
            "regime" => self.regime.name().to_string(),
            "x_panels" => self.x_panels.to_string(),
            "x_points" => self.x_points.to_string(),
            "x_rel_tol" => self.x_rel_tol.to_string(),
            "window_half_width" => show_auto(&self.window_half_width),
            "window_samples" => show_auto(&self.window_samples),
            "window_refine" => self.window_refine.to_string(),
            "tau_points" => self.tau_points.to_string(),
            "tau_max_ns" => show_auto(&self.tau_max_ns),
            "transmission_points" => self.transmission_points.to_string(),
            "theta_points" => self.theta_points.to_string(),
            "theta_max_rad" => self.theta_max_rad.to_string(),
            "tau_fixed_ns" => self.tau_fixed_ns.to_string(),
            "spectrum_points" => self.spectrum_points.to_string(),
            "spectrum_span_over_gamma31" => self.spectrum_span_over_gamma31.to_string(),
            "output" => self
                .output
                .as_ref()
                .map_or_else(|| "auto".to_string(), |p| p.display().to_string()),
            "format" => self.format.extension().to_string(),
            "emit_plot_script" => self.emit_plot_script.to_string(),
            _ => return None,
        };
        Some(s)
    }

    /// `(key, value)` for every key, in echo order.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        KEYS.iter()
            .map(|&k| (k, self.get(k).expect("every listed key has a value")))
            .collect()
    }

    /// The echo as a configuration file.
    pub fn to_config_text(&self) -> String {
        self.echo().into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// Doubles the position panels and the frequency samples.
    pub fn refined(&self) -> Self {
        Self {
            x_panels: 2 * self.x_panels,
            window_refine: self.window_refine + 1,
            ..self.clone()
        }
    }
}

/// Validated configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub values: Values,
    pub medium: Medium,
    pub regime: RegimeConfig,
}

/// Library parameter names and the configuration keys they come from.
fn key_for(name: &str) -> &'static str {
    match name {
        "gamma31" => "gamma31_mhz",
        "gamma21" => "gamma21_ratio",
        "gamma41" => "gamma41_ratio",
        "omega_c" => "omega_c_over_gamma31",
        "omega_p" => "omega_p_over_gamma31",
        "delta_p" => "delta_p_over_gamma31",
        "optical_depth" => "od",
        "v0" => "l_over_v0_ns",
        "d" => "d_um",
        "length" => "length_um",
        "lambda_as" => "lambda_as_um",
        "m_slits" => "m_slits",
        "n_panels" => "x_panels",
        "n_points" => "x_points",
        "rel_tol" => "x_rel_tol",
        "half_width" => "window_half_width",
        "n_samples" => "window_samples",
        _ => "config",
    }
}

fn lib_error(e: eigshape::Error) -> ConfigError {
    match e {
        eigshape::Error::InvalidParameter { name, reason } => ConfigError::Invalid {
            key: key_for(name),
            reason,
        },
        other => ConfigError::Invalid {
            key: "config",
            reason: other.to_string(),
        },
    }
}

fn require(ok: bool, key: &'static str, reason: impl Into<String>) -> Result<(), ConfigError> {
    if ok {
        Ok(())
    } else {
        Err(ConfigError::Invalid {
            key,
            reason: reason.into(),
        })
    }
}

impl RunConfig {
    pub fn from_values(values: Values) -> Result<Self, ConfigError> {
        let v = &values;
        let g31 = TAU * 1e-3 * v.gamma31_mhz;
        require(
            v.l_over_v0_ns > 0.0 && v.l_over_v0_ns.is_finite(),
            "l_over_v0_ns",
            format!("must be positive and finite, got {}", v.l_over_v0_ns),
        )?;
        let atomic = AtomicParams::builder()
            .gamma31(g31)
            .gamma21(v.gamma21_ratio * g31)
            .gamma41(v.gamma41_ratio * g31)
            .omega_c(v.omega_c_over_gamma31 * g31)
            .omega_p(v.omega_p_over_gamma31 * g31)
            .delta_p(v.delta_p_over_gamma31 * g31)
            .optical_depth(v.od)
            .v0(v.length_um / v.l_over_v0_ns)
            .build()
            .map_err(lib_error)?;
        let grating = GratingGeometry::new(v.d_um, v.m_slits, v.length_um, v.lambda_as_um).map_err(lib_error)?;
        let medium = Medium::new(atomic, grating).with_rabi_form(v.rabi_form);

        let x_quadrature = QuadratureSpec::new(v.x_panels, v.x_points, v.x_rel_tol).map_err(lib_error)?;
        let window = match (v.window_half_width, v.window_samples) {
            (None, None) => WindowChoice::Auto {
                refine: v.window_refine,
            },
            (Some(w), Some(n)) => {
                let n = n
                    .checked_shl(v.window_refine)
                    .filter(|m| m >> v.window_refine == n)
                    .ok_or_else(|| ConfigError::Invalid {
                        key: "window_refine",
                        reason: "sample count overflows".into(),
                    })?;
                WindowChoice::Fixed(FrequencyWindow::new(w, n).map_err(lib_error)?)
            }
            _ => {
                return Err(ConfigError::Invalid {
                    key: "window_samples",
                    reason: "window_half_width and window_samples must both be set or both be auto".into(),
                })
            }
        };
        require(v.window_refine <= 16, "window_refine", "must be at most 16")?;
        let regime = RegimeConfig {
            regime: v.regime,
            x_quadrature,
            window,
            ..RegimeConfig::default()
        };

        for (key, n) in [
            ("tau_points", v.tau_points),
            ("transmission_points", v.transmission_points),
            ("theta_points", v.theta_points),
            ("spectrum_points", v.spectrum_points),
        ] {
            require(n >= 2, key, format!("needs at least 2 points, got {n}"))?;
        }
        if let Some(t) = v.tau_max_ns {
            require(
                t > 0.0 && t.is_finite(),
                "tau_max_ns",
                format!("must be positive, got {t}"),
            )?;
        }
        require(
            v.theta_max_rad > 0.0 && v.theta_max_rad < FRAC_PI_2,
            "theta_max_rad",
            format!("must lie in (0, π/2), got {}", v.theta_max_rad),
        )?;
        require(
            v.tau_fixed_ns >= 0.0 && v.tau_fixed_ns.is_finite(),
            "tau_fixed_ns",
            format!("must be >= 0, got {}", v.tau_fixed_ns),
        )?;
        require(
            v.spectrum_span_over_gamma31 > 0.0 && v.spectrum_span_over_gamma31.is_finite(),
            "spectrum_span_over_gamma31",
            format!("must be positive, got {}", v.spectrum_span_over_gamma31),
        )?;

        Ok(Self { values, medium, regime })
    }

    pub fn atomic(&self) -> &AtomicParams {
        &self.medium.atomic
    }

    pub fn grating(&self) -> &GratingGeometry {
        &self.medium.grating
    }

    pub fn format(&self) -> Format {
        self.values.format
    }

    /// Output path for `subcommand`, defaulting to `<subcommand>.<ext>`.
    pub fn output_path(&self, subcommand: &str) -> PathBuf {
        self.values
            .output
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{subcommand}.{}", self.format().extension())))
    }

    /// `[0, tau_max]` on `tau_points` delays.
    pub fn tau_grid(&self) -> Vec<f64> {
        let span = self
            .values
            .tau_max_ns
            .unwrap_or_else(|| 5.0 * (1.0 / self.medium.effective_dephasing()).max(self.medium.antinode_transit()));
        linspace(0.0, span, self.values.tau_points)
    }

    pub fn theta_grid(&self) -> Vec<f64> {
        let t = self.values.theta_max_rad;
        linspace(-t, t, self.values.theta_points)
    }

    pub fn x_grid(&self) -> Vec<f64> {
        let d = self.grating().d();
        linspace(-d, d, self.values.transmission_points)
    }

    pub fn omega_grid(&self) -> Vec<f64> {
        let w = self.values.spectrum_span_over_gamma31 * self.atomic().gamma31();
        linspace(-w, w, self.values.spectrum_points)
    }
}

/// `n` points from `a` to `b`, both ends exact.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n).map(|i| a + (b - a) * (i as f64 / last)).collect()
}

/// Parses configuration text on top of the defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut values = Values::default();
    let mut seen: Vec<String> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        }
        if seen.iter().any(|k| k == key) {
            return Err(ConfigError::Syntax {
                line,
                message: format!("key `{key}` given twice"),
            });
        }
        match values.set(key, value) {
            Ok(true) => seen.push(key.to_string()),
            Ok(false) => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
            Err(message) => {
                return Err(ConfigError::Syntax {
                    line,
                    message: format!("`{key}`: {message}"),
                })
            }
        }
    }
    RunConfig::from_values(values)
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use eigshape::medium::DEFAULT_GAMMA31;

    #[test]
    fn empty_text_gives_the_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c.values, Values::default());
        assert_eq!(c.regime, RegimeConfig::default());
        let a = c.atomic();
        let d = AtomicParams::default();
        assert!((a.gamma31() - DEFAULT_GAMMA31).abs() < 1e-15);
        assert!((a.v0() - d.v0()).abs() < 1e-12);
        assert_eq!(c.grating(), &GratingGeometry::default());
        assert_eq!(c.tau_grid()[1999], 5.0 * 800.0);
    }

    #[test]
    fn decay_ratio_is_relative_to_gamma31() {
        let c = parse_config("gamma31_mhz = 3\ngamma21_ratio = 0.6\n").unwrap();
        let a = c.atomic();
        assert!((a.gamma31() - TAU * 3e-3).abs() < 1e-15);
        assert!((a.gamma21() - 0.6 * a.gamma31()).abs() < 1e-15);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let c = parse_config("# header\n\n  od = 3   # trailing\nregime = resonance\n").unwrap();
        assert_eq!(c.values.od, 3.0);
        assert_eq!(c.regime.regime, Regime::Resonance);
    }

    #[test]
    fn unknown_key_is_named() {
        let e = parse_config("od = 5\ngamma99 = 1\n").unwrap_err();
        assert!(matches!(&e, ConfigError::UnknownKey { line: 2, key } if key == "gamma99"));
        assert!(e.to_string().contains("gamma99"));
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        let e = parse_config("od = 5\n\njunk\n").unwrap_err();
        assert!(matches!(e, ConfigError::Syntax { line: 3, .. }));
        let e = parse_config("od = five\n").unwrap_err();
        assert!(matches!(e, ConfigError::Syntax { line: 1, .. }));
        let e = parse_config("od = 1\nod = 2\n").unwrap_err();
        assert!(matches!(e, ConfigError::Syntax { line: 2, .. }));
    }

    #[test]
    fn invariant_violations_name_the_key() {
        for (text, key) in [
            ("gamma21_ratio = -1", "gamma21_ratio"),
            ("od = -2", "od"),
            ("d_um = 0", "d_um"),
            ("m_slits = 0", "m_slits"),
            ("omega_p_over_gamma31 = 5", "omega_p_over_gamma31"),
            ("x_panels = 0", "x_panels"),
            ("window_samples = 100\nwindow_half_width = 3", "window_samples"),
            ("window_samples = 1024", "window_samples"),
            ("theta_max_rad = 2", "theta_max_rad"),
            ("tau_points = 1", "tau_points"),
        ] {
            match parse_config(text) {
                Err(ConfigError::Invalid { key: k, .. }) => assert_eq!(k, key, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn echo_round_trips() {
        let text = "gamma31_mhz = 2.7\nomega_c_over_gamma31 = 0.1234567890123\nwindow_half_width = 3.3\n\
                    window_samples = 65536\ntau_max_ns = 1234.5\noutput = out/run.json\nformat = json\n\
                    rabi_form = cosine\nregime = phase-matching\nemit_plot_script = true\n";
        let c = parse_config(text).unwrap();
        let again = parse_config(&c.values.to_config_text()).unwrap();
        assert_eq!(c, again);
        let defaults = parse_config("").unwrap();
        assert_eq!(parse_config(&defaults.values.to_config_text()).unwrap(), defaults);
    }

    #[test]
    fn refinement_doubles_the_rules() {
        let c = RunConfig::from_values(Values::default().refined()).unwrap();
        assert_eq!(c.regime, RegimeConfig::default().refined());
        let fixed = parse_config("window_half_width = 2\nwindow_samples = 1024\nwindow_refine = 1").unwrap();
        assert_eq!(
            fixed.regime.window,
            WindowChoice::Fixed(FrequencyWindow::new(2.0, 2048).unwrap())
        );
    }

    #[test]
    fn grids_have_exact_ends() {
        let c = parse_config("transmission_points = 11").unwrap();
        let x = c.x_grid();
        assert_eq!((x[0], x[10], x[5]), (-2.0, 2.0, 0.0));
        let w = c.omega_grid();
        assert_eq!(w[0], -w[4000]);
        assert_eq!(c.output_path("spectrum"), PathBuf::from("spectrum.csv"));
    }
}
