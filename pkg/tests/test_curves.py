from fractions import Fraction
from math import factorial

import pytest

from framedbps.closedforms import (NonIntegerBPS, b_extremal_twist,
                                   b_extremal_unknot, b_unknot)
from framedbps.curves import (KIND_FULL, KIND_MINUS, KIND_PLUS, DualAPoly,
                              GammaSeries, NotNormalizable, SingularBranch,
                              UnsupportedKnotKind, bps_from_gamma,
                              curve_residual, frame_transform, lagrange_log_y,
                              make_curve, newton_series_solve, normalize,
                              solve_w_series)

F = Fraction


def up_to_sign(c1, c2):
    if c1.source == c2.source:
        return True
    return c1.source == {k: -c for k, c in c2.source.items()}


def test_unknot_full_display():
    c = make_curve("unknot", KIND_FULL, 0)
    assert c.source == {(0, 2, 0): 1, (0, 0, 0): -1, (1, 2, 1): -1, (1, 0, -1): 1}
    c2 = make_curve("unknot", KIND_FULL, 2)
    assert c2.source == {(0, 2, 0): 1, (0, 0, 0): -1, (1, 6, 1): -1, (1, 4, -1): 1}


def test_extremal_unknot_displays():
    plus = make_curve("unknot", KIND_PLUS, 1)
    assert plus.source == {(0, 2, 0): -1, (0, 0, 0): 1, (1, 4, 0): -1}
    minus = make_curve("unknot", KIND_MINUS, 1)
    assert minus.source == {(0, 2, 0): -1, (0, 0, 0): 1, (1, 2, 0): 1}


def test_min_y_degree_always_zero():
    for tau in range(-4, 5):
        for kind in (KIND_FULL, KIND_PLUS, KIND_MINUS):
            c = make_curve("unknot", kind, tau)
            assert min(yd for _, yd, _ in c.source) == 0
        for p in (-2, 3):
            for kind in (KIND_PLUS, KIND_MINUS):
                c = make_curve(("twist", p), kind, tau)
                assert min(yd for _, yd, _ in c.source) == 0


def test_make_curve_rejections():
    with pytest.raises(UnsupportedKnotKind):
        make_curve(("twist", 2), KIND_FULL, 0)
    with pytest.raises(UnsupportedKnotKind):
        make_curve(("twist", 0), KIND_PLUS, 0)
    with pytest.raises(UnsupportedKnotKind):
        make_curve(("twist", 1), KIND_MINUS, 0)
    with pytest.raises(UnsupportedKnotKind):
        make_curve("granny", KIND_FULL, 0)


def test_frame_transform_matches_display_up_to_unit():
    c0 = make_curve("unknot", KIND_FULL, 0)
    for tau in range(-3, 4):
        assert up_to_sign(frame_transform(c0, tau),
                          make_curve("unknot", KIND_FULL, tau))
    # and composition is exact, with framings accumulating
    c = frame_transform(frame_transform(c0, 2), -3)
    assert c.source == frame_transform(c0, -1).source
    assert c.framing == -1


def test_normal_form_unknot():
    nf = normalize(make_curve("unknot", KIND_FULL, 0), 6)
    assert (nf.sigma, nf.e) == (1, -1)
    # phi = 1 - a(1 - lambda)
    assert nf.phi.coeffs[0] == {(0, 0): 1, (0, 2): -1}
    assert nf.phi.coeffs[1] == {(0, 2): 1}
    assert all(not c for c in nf.phi.coeffs[2:])
    assert nf.y_substitution == "Y = 1 - y^2"


def binom_any(e, j):
    # generalized C(e, j) = e(e-1)...(e-j+1)/j!, valid for negative e
    num = 1
    for t in range(j):
        num *= e - t
    return F(num, factorial(j))


def test_normal_form_powers_of_one_minus_lambda():
    # extremal curves collapse to phi = (1 - lambda)^E, E and sigma per family
    cases = [
        ("unknot", KIND_MINUS, 2, 2, 1),
        ("unknot", KIND_PLUS, 2, 3, -1),
        (("twist", -2), KIND_MINUS, 1, -1, -1),
        (("twist", -2), KIND_PLUS, 1, 6, 1),
        (("twist", 3), KIND_MINUS, 1, 3, -1),
        (("twist", 3), KIND_PLUS, 1, 9, -1),
    ]
    for knot, kind, tau, exponent, sigma in cases:
        nf = normalize(make_curve(knot, kind, tau), 8)
        assert nf.sigma == sigma, (knot, kind)
        assert nf.e == 0
        for j, c in enumerate(nf.phi.coeffs):
            coef = binom_any(exponent, j) * (-1) ** j
            assert c == ({(0, 0): coef} if coef else {}), (knot, kind, j)


def test_normal_form_reconstructs_source():
    for knot, kind in [("unknot", KIND_FULL), ("unknot", KIND_PLUS),
                       (("twist", -1), KIND_MINUS), (("twist", 2), KIND_PLUS)]:
        for tau in (-2, 0, 1):
            c = make_curve(knot, kind, tau)
            nf = normalize(c, 5)
            assert nf.reconstruct() == c.source
            assert nf.framing == tau
            assert nf.x_rescale == (nf.sigma, nf.e)


def synthetic(source):
    return DualAPoly(source, KIND_FULL, "synthetic", 0)


def test_not_normalizable_shapes():
    good_x0 = {(0, 2, 0): F(1), (0, 0, 0): F(-1)}
    with pytest.raises(NotNormalizable, match="odd y-degree"):
        normalize(synthetic({**good_x0, (1, 1, 0): F(1)}), 4)
    with pytest.raises(NotNormalizable, match="a-dependent"):
        normalize(synthetic({(0, 2, 2): F(1), (0, 0, 0): F(-1), (1, 0, 0): F(1)}), 4)
    with pytest.raises(NotNormalizable, match="exceeds 1"):
        normalize(synthetic({**good_x0, (2, 0, 0): F(1)}), 4)
    with pytest.raises(NotNormalizable, match="w-binomial"):
        normalize(synthetic({(0, 2, 0): F(1), (1, 0, 0): F(1)}), 4)
    with pytest.raises(NotNormalizable, match="w-binomial"):
        normalize(synthetic({(0, 4, 0): F(1), (0, 2, 0): F(1), (0, 0, 0): F(-2),
                             (1, 0, 0): F(1)}), 4)
    with pytest.raises(NotNormalizable, match=r"cu\*"):
        normalize(synthetic({(0, 4, 0): F(1), (0, 0, 0): F(-1), (1, 0, 0): F(1)}), 4)
    with pytest.raises(NotNormalizable, match="phi\\(0\\) = 0"):
        normalize(synthetic({**good_x0, (1, 2, 0): F(1), (1, 0, 0): F(-1)}), 4)
    with pytest.raises(NotNormalizable, match="leading unit"):
        normalize(synthetic({**good_x0, (1, 0, 0): F(2)}), 4)


def test_gamma_series_interface():
    g = GammaSeries({(1, 1): F(1, 2), (1, -1): F(-1, 2), (2, 0): F(0)}, 2)
    assert g[(1, 1)] == F(1, 2)
    assert g[(2, 0)] == 0 and (2, 0) not in g.coefficients
    assert g[(9, 9)] == 0


def test_gamma_small_values_unknot():
    nf = normalize(make_curve("unknot", KIND_FULL, 0), 3)
    g = lagrange_log_y(nf, 3)
    assert g[(1, 1)] == F(1, 2)
    assert g[(1, -1)] == F(-1, 2)
    # gamma_2 = (r=2) coefficients: a-support inside |m| <= 2
    assert set(m for r, m in g.coefficients if r == 2) <= {-2, 0, 2}


def test_lagrange_equals_newton():
    for knot, kind in [("unknot", KIND_FULL), ("unknot", KIND_MINUS),
                       (("twist", -3), KIND_PLUS), (("twist", 2), KIND_MINUS)]:
        for tau in (-2, 0, 3):
            c = make_curve(knot, kind, tau)
            assert lagrange_log_y(normalize(c, 9), 9) == newton_series_solve(c, 9)


def test_newton_residual_is_exactly_zero():
    c = make_curve("unknot", KIND_FULL, 1)
    w = solve_w_series(c, 13)
    assert all(not coeff for coeff in curve_residual(c, w).coeffs)


def test_singular_branch_detected():
    # (w - 1)^2 + x: derivative vanishes along the solved branch start
    c = synthetic({(0, 4, 0): F(1), (0, 2, 0): F(-2), (0, 0, 0): F(1),
                   (1, 0, 0): F(1)})
    with pytest.raises(SingularBranch):
        solve_w_series(c, 4)


def test_bps_from_gamma_matches_closed_forms():
    tau = 2
    c = make_curve("unknot", KIND_FULL, tau)
    b = bps_from_gamma(newton_series_solve(c, 6))
    for r in range(1, 7):
        for m in range(-r, r + 1):
            assert b.get((r, m), 0) == b_unknot(r, m, tau)


def test_bps_extremal_corner_match():
    for tau in (-1, 0, 2):
        for kind, sgn in ((KIND_PLUS, "+"), (KIND_MINUS, "-")):
            c = make_curve("unknot", kind, tau)
            b = bps_from_gamma(lagrange_log_y(normalize(c, 7), 7))
            for r in range(1, 8):
                assert b.get((r, 0), 0) == b_extremal_unknot(r, sgn, tau)
    c = make_curve(("twist", -1), KIND_MINUS, 0)
    b = bps_from_gamma(lagrange_log_y(normalize(c, 6), 6))
    for r in range(1, 7):
        assert b.get((r, 0), 0) == b_extremal_twist(r, "-", -1, 0)


def test_bps_from_gamma_integrality_guard():
    bad = GammaSeries({(1, 0): F(1, 2), (2, 0): F(1)}, 2)
    with pytest.raises(NonIntegerBPS):
        bps_from_gamma(bad)
