import cmath
import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from loopatlas import cartan, criterion, maass_selberg as ms, roots
from loopatlas.errors import InvalidCartanMatrixError, InvalidSubsetError

finite_floats = st.floats(min_value=-8, max_value=8, allow_nan=False, allow_infinity=False)


def _cm(label):
    return cartan.parse_type(label)


def _request(label, left, right, truncation, pairing=1.0):
    return ms.TruncatedPairing(
        ambient=_cm(label),
        cusp_pairing=pairing,
        left=criterion.functional(left),
        right=criterion.functional(right),
        truncation=tuple(truncation),
    )


# --- the degenerate reference value -----------------------------------------


def test_half_at_the_degenerate_point():
    """Equal self-dual parameters at the origin truncation give exactly
    one half with the leading minus, minus one half without."""
    req = _request("A1affine", (-0.5, -0.5), (-0.5, -0.5), (0.0, 0.0))
    out = ms.inner_product(req)
    assert not out.pole
    assert out.denominator == -2
    assert abs(out.value - 0.5) <= 1e-15

    kernel = ms.pairing_kernel(
        _cm("A1affine"),
        1.0,
        criterion.functional((-0.5, -0.5)),
        criterion.functional((-0.5, -0.5)),
        (0.0, 0.0),
    )
    assert abs(kernel.value + 0.5) <= 1e-15


def test_leading_minus_toggle():
    req = _request("A2affine", (-2, -3, -1), (-1, -1, -2), (0.3, -0.1, 0.2))
    plus = ms.inner_product(req, leading_minus=False)
    minus = ms.inner_product(req)
    assert minus.value == -plus.value
    assert minus.denominator == plus.denominator


# --- pole handling ----------------------------------------------------------


def test_pole_at_reflected_conjugate():
    """The summed parameter vanishes identically when the second parameter
    is minus the conjugate of the first, so the central denominator is 0."""
    left = (-1 + 2j, -3 - 1j)
    right = (1 + 2j, 3 - 1j)  # -conj(left)
    req = _request("A1affine", left, right, (0.7, 0.4))
    out = ms.inner_product(req)
    assert out.pole
    assert out.value is None
    assert out.denominator == 0


def test_pole_tolerance_is_adjustable():
    req = _request("A1affine", (-1, -1), (1 - 1e-9, 1), (0.0, 0.0))
    assert not ms.inner_product(req).pole
    assert ms.inner_product(req, pole_tolerance=1e-6).pole


def test_pole_only_on_the_central_locus():
    """Nonzero central values never report a pole, arbitrarily small
    truncation values included."""
    req = _request("A1affine", (-1, -1), (-1, -1), (1e-300, 0.0))
    out = ms.inner_product(req)
    assert not out.pole
    assert out.denominator == -4


def test_truncation_denominator_has_its_own_pole_locus():
    cm = _cm("A1affine")
    mu = criterion.functional((-1.0, 1.0))
    mu_p = criterion.functional((-1.0, 1.0))
    # summed = (-2, 2): central vanishes, the truncation value need not
    central = ms.pairing_kernel(cm, 1.0, mu, mu_p, (0.0, 0.0))
    assert central.pole
    trunc = ms.pairing_kernel(
        cm, 1.0, mu, mu_p, (0.5, 0.0), denominator=ms.DENOMINATOR_TRUNCATION
    )
    assert not trunc.pole
    assert trunc.denominator == -1
    assert abs(trunc.value - cmath.exp(-1) / -1) <= 1e-15


def test_unknown_denominator_mode():
    cm = _cm("A1affine")
    f = criterion.functional((-1, -1))
    with pytest.raises(ValueError):
        ms.pairing_kernel(cm, 1.0, f, f, (0.0, 0.0), denominator="norm")


# --- closed form ------------------------------------------------------------


def test_closed_form_small_cases():
    # summed (-3, -2), truncation (1, 2): exponent -7, central -5
    req = _request("A1affine", (-2, -1), (-1, -1), (1.0, 2.0), pairing=3.0)
    out = ms.inner_product(req)
    assert out.denominator == -5
    assert abs(out.value - 3.0 * math.exp(-7.0) / 5.0) <= 1e-15


def test_conjugation_swap_symmetry():
    left = (-1 + 1j, -2 - 3j, -1.5 + 0.25j)
    right = (-2 - 1j, -1 + 2j, -0.5 - 1j)
    trunc = (0.4, -0.2, 0.1)
    a = ms.inner_product(_request("A2affine", left, right, trunc, pairing=2.0))
    b = ms.inner_product(_request("A2affine", right, left, trunc, pairing=2.0))
    assert abs(b.value - a.value.conjugate()) <= 1e-13
    assert abs(b.denominator - a.denominator.conjugate()) <= 1e-13


@given(finite_floats, finite_floats, finite_floats)
def test_linear_in_the_cusp_pairing(x, y, scale):
    req = _request("A1affine", (x - 3, -2.5), (y - 3, -2.5), (0.1, 0.2))
    base = ms.inner_product(req)
    scaled = ms.inner_product(
        ms.TruncatedPairing(
            ambient=req.ambient,
            cusp_pairing=scale,
            left=req.left,
            right=req.right,
            truncation=req.truncation,
        )
    )
    if base.pole:
        assert scaled.pole
    else:
        assert abs(scaled.value - scale * base.value) <= 1e-12 * max(1.0, abs(base.value))


def test_against_high_precision_oracle():
    """Recompute the closed form with 50-digit arithmetic."""
    mpmath.mp.dps = 50
    cases = [
        ("A1affine", (-1.25 + 0.5j, -2.5 - 1j), (-0.75 - 0.25j, -1.5 + 2j), (0.3, -0.7), 1.5),
        ("A2affine", (-2.1, -1.3, -0.7), (-1.9, -0.4, -1.1), (0.25, 0.5, -0.125), -2.0),
        ("G2affine", (-3 + 1j, -2, -1 - 1j), (-1, -2 + 0.5j, -3), (0.1, 0.2, 0.3), 0.5 + 0.5j),
    ]
    for label, left, right, trunc, pairing in cases:
        cm = _cm(label)
        out = ms.inner_product(_request(label, left, right, trunc, pairing=pairing))
        weights = [int(w) for w in roots.central_coroot(cm)]
        summed = [mpmath.mpc(a) + mpmath.conj(mpmath.mpc(b)) for a, b in zip(left, right)]
        exponent = sum(s * mpmath.mpf(t) for s, t in zip(summed, trunc))
        denominator = sum(w * s for w, s in zip(weights, summed))
        expected = -mpmath.mpc(pairing) * mpmath.exp(exponent) / denominator
        got = mpmath.mpc(out.value)
        assert mpmath.fabs(got - expected) <= mpmath.mpf("1e-13") * max(1, mpmath.fabs(expected))


def test_bounded_near_a_simple_pole():
    """value * denominator stays pinned to -pairing * exp(exponent) as the
    central value approaches zero."""
    pairing = 2.5
    for eps in (1e-2, 1e-4, 1e-6, 1e-8):
        left = (-1 + eps, -1)
        right = (1, 1)  # summed = (eps, 0)
        req = _request("A1affine", left, right, (0.9, 0.1), pairing=pairing)
        out = ms.inner_product(req)
        assert not out.pole
        residue = out.value * out.denominator
        target = -pairing * math.exp(eps * 0.9)
        assert abs(residue - target) <= 1e-6 * abs(target)


# --- positivity -------------------------------------------------------------


@given(st.data())
def test_positive_for_real_parameters_with_negative_central(data):
    """Equal real parameters with a negative central value and a positive
    cusp pairing always give a positive inner product."""
    label = data.draw(st.sampled_from(["A1affine", "A2affine", "C2affine"]))
    cm = _cm(label)
    sigma = tuple(
        data.draw(st.floats(min_value=-6, max_value=-0.01)) for _ in range(cm.size)
    )
    trunc = tuple(data.draw(finite_floats) for _ in range(cm.size))
    f = criterion.functional(sigma)
    assert criterion.central_value(cm, f).real < 0
    req = ms.TruncatedPairing(
        ambient=cm, cusp_pairing=4.0, left=f, right=f, truncation=trunc
    )
    out = ms.inner_product(req)
    assert not out.pole
    assert out.value.real > 0
    assert out.value.imag == 0


# --- grid scans -------------------------------------------------------------


def test_region_scan_shape_and_order():
    cm = _cm("A1affine")
    nus = [criterion.functional((x, -3.0)) for x in (-4.0, -3.5, -3.0)]
    nu_primes = [criterion.functional((y, -3.0)) for y in (-4.0, -3.0)]
    report = ms.region_scan(cm, nus, nu_primes, (0.0, 0.0))
    assert report.n_points == 6
    assert report.n_poles == 0
    assert [p.nu[0] for p in report.points] == [-4.0, -4.0, -3.5, -3.5, -3.0, -3.0]
    assert [p.nu_prime[0] for p in report.points] == [-4.0, -3.0] * 3
    again = ms.region_scan(cm, nus, nu_primes, (0.0, 0.0))
    assert again == report


def test_region_scan_applies_the_shift():
    """Scan rows are the inner products of the shifted parameters."""
    cm = _cm("A1affine")
    nu = criterion.functional((-3.0, -2.0))
    nu_prime = criterion.functional((-2.5, -1.5))
    report = ms.region_scan(cm, [nu], [nu_prime], (0.2, 0.3), cusp_pairing=2.0)
    point = report.points[0]
    assert point.nu == (-3.0, -2.0)
    direct = ms.inner_product(
        ms.TruncatedPairing(
            ambient=cm,
            cusp_pairing=2.0,
            left=criterion.shift_by_weyl_vector(nu),
            right=criterion.shift_by_weyl_vector(nu_prime),
            truncation=(0.2, 0.3),
        )
    )
    assert point.value == direct.value
    assert point.denominator == direct.denominator


def test_region_scan_counts_poles():
    cm = _cm("A1affine")
    # shifted sum vanishes when nu + conj(nu') = -2 rho
    nus = [criterion.functional((-1.0, -1.0)), criterion.functional((-3.0, -3.0))]
    nu_primes = [criterion.functional((-1.0, -1.0))]
    report = ms.region_scan(cm, nus, nu_primes, (0.0, 0.0))
    assert report.n_points == 2
    assert report.n_poles == 1
    assert report.points[0].pole
    assert not report.points[1].pole


# --- validation -------------------------------------------------------------


def test_request_validation():
    cm = _cm("A1affine")
    good = criterion.functional((-1, -1))
    with pytest.raises(InvalidSubsetError):
        ms.TruncatedPairing(
            ambient=cm, cusp_pairing=1.0, left=good, right=good, truncation=(0.0,)
        )
    with pytest.raises(InvalidSubsetError):
        ms.TruncatedPairing(
            ambient=cm,
            cusp_pairing=1.0,
            left=criterion.functional((-1,)),
            right=good,
            truncation=(0.0, 0.0),
        )
    with pytest.raises(InvalidCartanMatrixError):
        ms.TruncatedPairing(
            ambient=_cm("A2"),
            cusp_pairing=1.0,
            left=good,
            right=good,
            truncation=(0.0, 0.0),
        )


# --- serialization ----------------------------------------------------------


def test_value_json():
    req = _request("A1affine", (-0.5, -0.5), (-0.5, -0.5), (0.0, 0.0))
    obj = ms.value_to_json(ms.inner_product(req))
    assert obj == {"value": [0.5, 0.0], "pole": False, "denominator": -2}

    pole = ms.inner_product(_request("A1affine", (-1, -1), (1, 1), (0.0, 0.0)))
    assert ms.value_to_json(pole) == {"value": None, "pole": True, "denominator": 0}


def test_scan_json():
    cm = _cm("A1affine")
    report = ms.region_scan(
        cm,
        [criterion.functional((-3.0, -3.0))],
        [criterion.functional((-3.0, -3.0))],
        (0.0, 0.0),
    )
    obj = ms.scan_to_json(report)
    assert obj["n_points"] == 1
    assert obj["n_poles"] == 0
    point = obj["points"][0]
    assert point["nu"] == [-3, -3]
    assert point["pole"] is False
    assert point["denominator"] == -8
    assert point["value"] == [0.125, 0.0]
