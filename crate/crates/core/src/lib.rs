//! Biphoton wave-packet shaping by an electromagnetically induced grating.
//!
//! A control standing wave in a cold double-Λ atomic medium periodically
//! modulates the nonlinear and linear optical response. This crate evaluates
//! those responses, the resulting joint spectra and two-photon coincidence
//! traces, and the far-field diffraction of the anti-Stokes photons.
//!
//! Units: angular frequency in rad/ns, time in ns, length in μm.

pub mod biphoton;
pub mod diffraction;
mod error;
pub mod medium;
pub mod specfun;

pub use biphoton::{CoincidenceTrace, ComplexSpectrum, Modulation, Regime, RegimeConfig, WindowChoice};
pub use diffraction::{AngularPattern, DiffractionOrder};
pub use error::{Error, Result};
pub use medium::{AtomicParams, GratingGeometry, Medium, MediumResponse, RabiForm};
pub use specfun::{FrequencyWindow, QuadratureSpec};
