from fractions import Fraction
from math import factorial, prod

import pytest

from framedbps.closedforms import b_unknot
from framedbps.laurent import lp_specialize_q1
from framedbps.links import FramedLinkSpec
from framedbps.ovengine import (NonIntegerInvariant, VectorPartition, bps_list,
                                connected_F, connected_F_via_log, disk_counts,
                                enumerate_vector_partitions, f_knot, ov_table,
                                p_poly, strong_integrality_check)
from framedbps.qsymbols import BRACE_A, qsym


def unknot(tau=0):
    return FramedLinkSpec("unknot", framings=(tau,))


def whitehead(taus):
    return FramedLinkSpec("whitehead", framings=taus)


def q1(poly):
    return {da: c for (_, da), c in lp_specialize_q1(poly).items()}


# --- vector partitions ------------------------------------------------------


def test_partitions_of_scalar_color():
    # partitions of (4,) are the five integer partitions of 4
    parts = enumerate_vector_partitions((4,))
    assert len(parts) == 5
    assert VectorPartition((((1,), 4),)) in parts


def test_partitions_of_vector_color():
    parts = enumerate_vector_partitions((1, 1))
    expected = {
        VectorPartition((((1, 1), 1),)),
        VectorPartition((((1, 0), 1), ((0, 1), 1))),
    }
    assert set(parts) == expected
    # (2,1): {(2,1)}, {(2,0),(0,1)}, {(1,1),(1,0)}, {(1,0)^2,(0,1)}
    assert len(enumerate_vector_partitions((2, 1))) == 4
    assert len(enumerate_vector_partitions((2, 2))) == 9


def test_partition_invariants():
    for pt in enumerate_vector_partitions((2, 2)):
        assert pt.total == (2, 2)
        assert pt.length == sum(m for _, m in pt.parts)
        assert pt.aut == prod(factorial(m) for _, m in pt.parts)
    # no duplicates
    parts = enumerate_vector_partitions((3, 1))
    assert len(parts) == len(set(parts))


# --- connected invariants ---------------------------------------------------


def test_connected_f_knot_decomposition():
    # F_2 = H_2 - H_1^2/2 and f_2 = F_2 - Psi_2(F_1)/2
    from framedbps.ovengine import _framed_h
    h1 = _framed_h("unknot", (1,), (0,))
    h2 = _framed_h("unknot", (2,), (0,))
    f2 = connected_F(unknot(), (2,))
    assert f2 == h2.sub(h1.mul(h1).scale(Fraction(1, 2)))
    knot_f2 = f_knot(unknot(), 2)
    assert knot_f2 == f2.sub(connected_F(unknot(), (1,)).adams(2).scale(Fraction(1, 2)))


def test_connected_f_log_oracle():
    for rvec, taus in [((1, 1), (0, 0)), ((2, 1), (1, 0)), ((2, 2), (1, 1)),
                       ((2, 2), (-1, 2))]:
        link = whitehead(taus)
        direct = connected_F(link, rvec)
        via_log = connected_F_via_log(link, rvec)
        assert direct.sub(via_log).is_zero(), (rvec, taus)
    tri = FramedLinkSpec("borromean", framings=(1, 0, -1))
    assert connected_F(tri, (2, 1, 1)).sub(
        connected_F_via_log(tri, (2, 1, 1))).is_zero()


def test_log_oracle_with_wider_truncation():
    link = whitehead((0, 0))
    tight = connected_F_via_log(link, (1, 1))
    loose = connected_F_via_log(link, (1, 1), truncation=(2, 2))
    assert tight.sub(loose).is_zero()


def test_connected_f_rejects_twist():
    with pytest.raises(AssertionError):
        connected_F(FramedLinkSpec("twist", p=2), (1,))


# --- p-polynomials and tables ----------------------------------------------


def test_p_of_single_unknot_is_brace_a():
    # p_1(U^0) = {1} H_1 = {0;a}
    assert p_poly(unknot(), (1,)) == qsym(BRACE_A, 0)


def test_p_poly_k_dispatch():
    # k = 1 multiplies by {1}: p_1 has integer q-exponent parity shifts
    p1 = p_poly(unknot(), (1,))
    assert set(p1) == {(0, 1), (0, -1)}
    # k = 2 leaves the reduced sum alone; (1,1) gives a 4-term a-polynomial at q=1
    p11 = p_poly(whitehead((0, 0)), (1, 1))
    assert q1(p11) == {4: -1, 2: 3, 0: -3, -2: 1}
    # k = 3 divides by {1} exactly
    p111 = p_poly(FramedLinkSpec("borromean", framings=(0, 0, 0)), (1, 1, 1))
    assert q1(p111) == {3: -1, 1: 3, -1: -3, -3: 1}


def test_p_poly_corrected_two_one_specialization():
    # colors (2,1), framing (0,0): a^(±5/2..) coefficients at q = 1
    p = p_poly(whitehead((0, 0)), (2, 1))
    assert q1(p) == {5: -1, 3: 2, -1: -2, -3: 1}


def test_ov_table_entries_and_epsilon():
    t = ov_table("whitehead", (2, 2), (0, 0))
    assert t.entry(8, 6) == 1
    assert t.entry(6, 6) == -2
    assert t.entry(0, 0) == 0          # inside the window but zero
    assert t.entry(40, 40) == 0        # outside
    assert t.epsilon == (0, 0)
    assert strong_integrality_check(t)
    (i_lo, i_hi), (j_lo, j_hi) = t.bounds()
    assert (i_hi, j_hi) == (8, 8) and (i_lo, j_lo) == (-4, -6)


def test_ov_table_borromean_entry():
    t = ov_table("borromean", (1, 1, 2), (0, 0, 0))
    assert t.entry(4, 1) == -1
    assert t.epsilon == (0, 1)
    assert strong_integrality_check(t)


def test_ov_table_accepts_spec_and_framings():
    spec = FramedLinkSpec("whitehead", framings=(1, 0))
    a = ov_table(spec, (2, 2))
    b = ov_table("whitehead", (2, 2), (1, 0))
    assert a == b
    assert a.framings == (1, 0)


def test_non_integer_invariant_payload():
    err = NonIntegerInvariant(Fraction(3, 2), Fraction(1, 2), Fraction(1, 3))
    assert err.args == (Fraction(3, 2), Fraction(1, 2), Fraction(1, 3))


# --- BPS lists and disk counts ----------------------------------------------


def test_bps_list_row_sums():
    t = ov_table("whitehead", (1, 1), (0, 0))
    b = bps_list(t)
    assert b.values == {4: -1, 2: 3, 0: -3, -2: 1}


def test_bps_list_framed():
    t = ov_table("whitehead", (1, 1), (1, 0))
    assert bps_list(t).values == {4: 1, 2: -3, 0: 3, -2: -1}


def test_disk_counts_round_trip():
    # unknot closed forms feed the divisor levels
    for tau in (0, 1, 2, -2):
        for r in (2, 4, 6):
            levels = {}
            for rp in (1, 2, 3, 4, 6):
                if r % rp == 0:
                    levels[rp] = {m: b_unknot(rp, m, tau)
                                  for m in range(-rp, rp + 1)
                                  if b_unknot(rp, m, tau)}
            counts = disk_counts(levels, r)
            assert all(isinstance(v, Fraction) for v in counts.values())


def test_disk_counts_spot_value():
    levels = {1: {1: -1, -1: 1}, 2: {0: -1, 2: 1}}   # unknot at tau = 1
    counts = disk_counts(levels, 2)
    # K_{2,0,2} = b_{2,2} + b_{1,1}/4
    assert counts[2] == Fraction(1) + Fraction(-1, 4)
    assert counts[-2] == Fraction(1, 4)
    assert counts[0] == Fraction(-1)
