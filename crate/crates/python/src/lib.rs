//! Python bindings: the medium, the numerical settings and the trace,
//! spectrum and diffraction operations.

use std::f64::consts::TAU;

use eigshape::biphoton::{self, WindowChoice};
use eigshape::diffraction;
use eigshape::specfun;
use eigshape::{AtomicParams, GratingGeometry, Medium, Modulation, QuadratureSpec, RabiForm, Regime, RegimeConfig};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    eigshape_py,
    NumericalError,
    PyRuntimeError,
    "A quadrature or transform did not converge."
);

fn to_py(e: eigshape::Error) -> PyErr {
    if e.is_numerical() {
        NumericalError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// Atomic parameters on a grating geometry. Rates are given in units of
/// `γ31`, `γ31` itself in MHz, times in ns and lengths in μm.
#[pyclass(name = "Medium", module = "eigshape_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMedium {
    inner: Medium,
}

#[pymethods]
impl PyMedium {
    #[new]
    #[pyo3(signature = (
        gamma31_mhz = 3.0,
        gamma21_ratio = 0.6,
        gamma41_ratio = 1.0,
        omega_c_over_gamma31 = 5.0,
        omega_p_over_gamma31 = 0.1,
        delta_p_over_gamma31 = 10.0,
        od = 5.0,
        l_over_v0_ns = 800.0,
        length_um = 15000.0,
        d_um = 2.0,
        m_slits = 20,
        lambda_as_um = 0.795,
        rabi_form = "exact",
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        gamma31_mhz: f64,
        gamma21_ratio: f64,
        gamma41_ratio: f64,
        omega_c_over_gamma31: f64,
        omega_p_over_gamma31: f64,
        delta_p_over_gamma31: f64,
        od: f64,
        l_over_v0_ns: f64,
        length_um: f64,
        d_um: f64,
        m_slits: u32,
        lambda_as_um: f64,
        rabi_form: &str,
    ) -> PyResult<Self> {
        let g = TAU * 1e-3 * gamma31_mhz;
        let atomic = AtomicParams::builder()
            .gamma31(g)
            .gamma21(gamma21_ratio * g)
            .gamma41(gamma41_ratio * g)
            .omega_c(omega_c_over_gamma31 * g)
            .omega_p(omega_p_over_gamma31 * g)
            .delta_p(delta_p_over_gamma31 * g)
            .optical_depth(od)
            .v0(length_um / l_over_v0_ns)
            .build()
            .map_err(to_py)?;
        let grating = GratingGeometry::new(d_um, m_slits, length_um, lambda_as_um).map_err(to_py)?;
        let form = match rabi_form {
            "exact" => RabiForm::Exact,
            "cosine" => RabiForm::CosineApprox,
            other => {
                return Err(PyValueError::new_err(format!(
                    "rabi_form must be exact or cosine, got {other}"
                )))
            }
        };
        Ok(Self {
            inner: Medium::new(atomic, grating).with_rabi_form(form),
        })
    }

    /// `γ31` in rad/ns.
    #[getter]
    fn gamma31(&self) -> f64 {
        self.inner.atomic.gamma31()
    }

    #[getter]
    fn omega_c(&self) -> f64 {
        self.inner.atomic.omega_c()
    }

    #[getter]
    fn optical_depth(&self) -> f64 {
        self.inner.atomic.optical_depth()
    }

    #[getter]
    fn d(&self) -> f64 {
        self.inner.grating.d()
    }

    #[getter]
    fn m_slits(&self) -> u32 {
        self.inner.grating.m_slits()
    }

    #[getter]
    fn lambda_as(&self) -> f64 {
        self.inner.grating.lambda_as()
    }

    #[getter]
    fn effective_dephasing(&self) -> f64 {
        self.inner.effective_dephasing()
    }

    /// `L/v0` in ns.
    #[getter]
    fn antinode_transit(&self) -> f64 {
        self.inner.antinode_transit()
    }

    fn effective_rabi(&self, x: f64) -> f64 {
        self.inner.effective_rabi(x)
    }

    fn chi3_as(&self, omega: f64, x: f64) -> Complex64 {
        self.inner.chi3_as(omega, x)
    }

    fn group_velocity(&self, x: f64) -> f64 {
        self.inner.group_velocity(x)
    }

    fn absorption(&self, x: f64) -> f64 {
        self.inner.absorption(x)
    }

    fn transmission(&self, x: f64) -> f64 {
        self.inner.transmission(x)
    }

    fn transmission_profile(&self, x_grid: Vec<f64>) -> PyResult<Vec<f64>> {
        self.inner.transmission_profile(&x_grid).map_err(to_py)
    }

    fn transit_time(&self, x: f64) -> f64 {
        self.inner.transit_time(x)
    }

    fn phase_matching(&self, omega: f64, x: f64) -> Complex64 {
        self.inner.phase_matching(omega, x)
    }

    fn __repr__(&self) -> String {
        let a = &self.inner.atomic;
        let g = &self.inner.grating;
        format!(
            "Medium(gamma31={:.6} rad/ns, omega_c={:.6} rad/ns, od={}, d={} um, m_slits={}, lambda_as={} um)",
            a.gamma31(),
            a.omega_c(),
            a.optical_depth(),
            g.d(),
            g.m_slits(),
            g.lambda_as()
        )
    }
}

/// Regime, modulation and resolution of the amplitude integrals.
#[pyclass(name = "RegimeConfig", module = "eigshape_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRegimeConfig {
    inner: RegimeConfig,
}

#[pymethods]
impl PyRegimeConfig {
    #[new]
    #[pyo3(signature = (regime = "full", modulation = "grating", x_panels = 32, x_points = 16, x_rel_tol = 1e-3, window_refine = 0))]
    fn new(
        regime: &str,
        modulation: &str,
        x_panels: usize,
        x_points: usize,
        x_rel_tol: f64,
        window_refine: u32,
    ) -> PyResult<Self> {
        let regime: Regime = regime.parse().map_err(to_py)?;
        let modulation = match modulation {
            "grating" => Modulation::Grating,
            "uniform" => Modulation::Uniform,
            other => {
                return Err(PyValueError::new_err(format!(
                    "modulation must be grating or uniform, got {other}"
                )))
            }
        };
        Ok(Self {
            inner: RegimeConfig {
                regime,
                modulation,
                x_quadrature: QuadratureSpec::new(x_panels, x_points, x_rel_tol).map_err(to_py)?,
                window: WindowChoice::Auto { refine: window_refine },
            },
        })
    }

    #[getter]
    fn regime(&self) -> &'static str {
        self.inner.regime.name()
    }

    fn refined(&self) -> Self {
        Self {
            inner: self.inner.refined(),
        }
    }
}

fn config(c: Option<&PyRegimeConfig>) -> RegimeConfig {
    c.map_or_else(RegimeConfig::default, |c| c.inner)
}

#[pyfunction]
fn struve_h0(z: f64) -> PyResult<f64> {
    specfun::struve_h0(z).map_err(to_py)
}

#[pyfunction]
fn bessel_y0(z: f64) -> PyResult<f64> {
    specfun::bessel_y0(z).map_err(to_py)
}

#[pyfunction]
fn exprel(w: Complex64) -> Complex64 {
    specfun::exprel(w)
}

#[pyfunction]
fn default_tau_grid(medium: &PyMedium) -> Vec<f64> {
    biphoton::default_tau_grid(&medium.inner)
}

/// Normalized `[H0(Ωc τ) e^{-γe τ}]²`.
#[pyfunction]
fn coincidence_resonance(tau: Vec<f64>, medium: &PyMedium) -> PyResult<Vec<f64>> {
    Ok(biphoton::coincidence_resonance(&tau, &medium.inner)
        .map_err(to_py)?
        .rate()
        .to_vec())
}

#[pyfunction]
#[pyo3(signature = (tau, medium, config = None))]
fn coincidence_resonance_numeric(
    py: Python<'_>,
    tau: Vec<f64>,
    medium: &PyMedium,
    config: Option<&PyRegimeConfig>,
) -> PyResult<Vec<f64>> {
    let (m, c) = (medium.inner, self::config(config));
    let trace = py
        .detach(|| biphoton::coincidence_resonance_numeric(&tau, &m, &c))
        .map_err(to_py)?;
    Ok(trace.rate().to_vec())
}

#[pyfunction]
#[pyo3(signature = (tau, medium, config = None, include_chi3 = true))]
fn coincidence_phasematch(
    py: Python<'_>,
    tau: Vec<f64>,
    medium: &PyMedium,
    config: Option<&PyRegimeConfig>,
    include_chi3: bool,
) -> PyResult<Vec<f64>> {
    let (m, c) = (medium.inner, self::config(config));
    let trace = py
        .detach(|| biphoton::coincidence_phasematch(&tau, &m, &c, include_chi3))
        .map_err(to_py)?;
    Ok(trace.rate().to_vec())
}

#[pyfunction]
#[pyo3(signature = (tau, theta, medium, config = None))]
fn single_slit_amplitude(
    py: Python<'_>,
    tau: Vec<f64>,
    theta: f64,
    medium: &PyMedium,
    config: Option<&PyRegimeConfig>,
) -> PyResult<Vec<Complex64>> {
    let (m, c) = (medium.inner, self::config(config));
    py.detach(|| biphoton::single_slit_amplitude(&tau, theta, &m, &c))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (tau, theta, medium, config = None))]
fn two_photon_amplitude(
    py: Python<'_>,
    tau: Vec<f64>,
    theta: f64,
    medium: &PyMedium,
    config: Option<&PyRegimeConfig>,
) -> PyResult<Vec<Complex64>> {
    let (m, c) = (medium.inner, self::config(config));
    py.detach(|| biphoton::two_photon_amplitude(&tau, theta, &m, &c))
        .map_err(to_py)
}

#[pyfunction]
fn array_factor(theta: f64, medium: &PyMedium) -> Complex64 {
    biphoton::array_factor(theta, &medium.inner.grating)
}

/// Slit-integrated joint spectrum on a uniform detuning grid (rad/ns).
#[pyfunction]
#[pyo3(signature = (omega_grid, medium, config = None))]
fn joint_spectrum(
    py: Python<'_>,
    omega_grid: Vec<f64>,
    medium: &PyMedium,
    config: Option<&PyRegimeConfig>,
) -> PyResult<Vec<Complex64>> {
    let (m, c) = (medium.inner, self::config(config));
    let s = py
        .detach(|| biphoton::joint_spectrum_on(&m, &c, omega_grid))
        .map_err(to_py)?;
    Ok(s.values().to_vec())
}

/// Normalized far-field intensity at a fixed delay.
#[pyfunction]
#[pyo3(signature = (tau_fixed, theta_grid, medium, config = None))]
fn angular_pattern(
    py: Python<'_>,
    tau_fixed: f64,
    theta_grid: Vec<f64>,
    medium: &PyMedium,
    config: Option<&PyRegimeConfig>,
) -> PyResult<Vec<f64>> {
    let (m, c) = (medium.inner, self::config(config));
    let p = py
        .detach(|| diffraction::angular_pattern(tau_fixed, &theta_grid, &m, &c))
        .map_err(to_py)?;
    Ok(p.intensity().to_vec())
}

#[pyfunction]
#[pyo3(signature = (tau_fixed, medium, config = None))]
fn zeroth_order_fraction(
    py: Python<'_>,
    tau_fixed: f64,
    medium: &PyMedium,
    config: Option<&PyRegimeConfig>,
) -> PyResult<f64> {
    let (m, c) = (medium.inner, self::config(config));
    py.detach(|| diffraction::zeroth_order_fraction(tau_fixed, &m, &c))
        .map_err(to_py)
}

/// Angle of order `m` in rad, or `None` when it is evanescent.
#[pyfunction]
fn order_angle(m: i32, medium: &PyMedium) -> Option<f64> {
    diffraction::order_angle(m, &medium.inner.grating).angle()
}

#[pymodule]
fn eigshape_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PyMedium>()?;
    m.add_class::<PyRegimeConfig>()?;
    m.add_function(wrap_pyfunction!(struve_h0, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_y0, m)?)?;
    m.add_function(wrap_pyfunction!(exprel, m)?)?;
    m.add_function(wrap_pyfunction!(default_tau_grid, m)?)?;
    m.add_function(wrap_pyfunction!(coincidence_resonance, m)?)?;
    m.add_function(wrap_pyfunction!(coincidence_resonance_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(coincidence_phasematch, m)?)?;
    m.add_function(wrap_pyfunction!(single_slit_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(two_photon_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(array_factor, m)?)?;
    m.add_function(wrap_pyfunction!(joint_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(angular_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(zeroth_order_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(order_angle, m)?)?;
    Ok(())
}
