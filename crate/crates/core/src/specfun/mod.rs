//! Special functions and quadrature kernels.
//!
//! Only what the biphoton model needs: the order-zero Struve function (with
//! the Bessel `Y0` it leans on), an entire complex `sinc`, Gauss–Legendre
//! panels, and a trapezoid-rule Fourier transform over a finite frequency
//! window.

mod fourier;
mod quadrature;
mod sinc;
mod struve;

pub use fourier::{oscillatory_ft, FrequencyWindow, EDGE_DECAY};
pub use quadrature::{trapezoid, QuadratureSpec};
pub use sinc::{csinc, exprel};
pub use struve::{bessel_y0, struve_h0, STRUVE_SWITCH};

pub(crate) use fourier::{check_edge_decay, fourier_sum_unchecked};
pub(crate) use quadrature::relative_l2;
