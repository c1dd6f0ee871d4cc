use num_complex::Complex64;

const SERIES_RADIUS: f64 = 1e-4;

/// `sin(z)/z` for complex `z`, with the removable singularity at the origin
/// filled in by its Taylor series.
pub fn csinc(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// `(e^w - 1)/w`, the relative exponential.
///
/// With `w = 2iz` this equals `sinc(z) e^{iz}`, which is how the
/// longitudinal phase-matching factor is evaluated.
pub fn exprel(w: Complex64) -> Complex64 {
    if w.norm() < SERIES_RADIUS {
        let one = Complex64::new(1.0, 0.0);
        one + w * (0.5 + w * (1.0 / 6.0 + w / 24.0))
    } else {
        expm1(w) / w
    }
}

/// `e^w - 1` without cancellation for small `|w|`.
fn expm1(w: Complex64) -> Complex64 {
    let half_sin = (0.5 * w.im).sin();
    Complex64::new(
        w.re.exp_m1() * w.im.cos() - 2.0 * half_sin * half_sin,
        w.re.exp() * w.im.sin(),
    )
}
