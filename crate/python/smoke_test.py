"""Smoke test for the eigshape_py extension module."""

import cmath
import math

import eigshape_py as eg


def main():
    m = eg.Medium()
    assert abs(m.gamma31 - 2 * math.pi * 3e-3) < 1e-15
    assert m.m_slits == 20

    # nodes of the standing wave transmit exp(-OD)
    assert abs(m.transmission(1.0) - math.exp(-5.0)) < 1e-12
    assert m.transmission(0.0) > m.transmission(0.5)

    assert eg.struve_h0(0.0) == 0.0
    assert abs(eg.exprel(0j) - 1.0) < 1e-15

    tau = [i * 300.0 / 199 for i in range(200)]
    analytic = eg.coincidence_resonance(tau, m)
    assert analytic[0] == 0.0 and max(analytic) == 1.0
    cfg = eg.RegimeConfig(regime="resonance", x_panels=8)
    numeric = eg.coincidence_resonance_numeric(tau, eg.Medium(rabi_form="cosine"), cfg)
    err = math.sqrt(sum((a - b) ** 2 for a, b in zip(numeric, analytic)) / sum(b * b for b in analytic))
    assert err < 1e-2, err

    assert abs(eg.array_factor(0.0, m) - 21) < 1e-12
    assert abs(eg.order_angle(1, m) - math.asin(0.795 / 2)) < 1e-15
    assert eg.order_angle(3, m) is None

    amp = eg.single_slit_amplitude([50.0], 0.0, m, cfg)
    assert isinstance(amp[0], complex) and cmath.isfinite(amp[0])

    try:
        eg.Medium(od=-1.0)
    except ValueError as e:
        assert "optical_depth" in str(e)
    else:
        raise AssertionError("negative optical depth accepted")

    try:
        eg.coincidence_resonance_numeric([10.0], m, eg.RegimeConfig(regime="resonance", x_panels=1, x_points=2, x_rel_tol=1e-12))
    except eg.NumericalError as e:
        assert "slit-position" in str(e)
    else:
        raise AssertionError("unconverged rule accepted")

    print("eigshape_py smoke test passed:", repr(m))


if __name__ == "__main__":
    main()
