"""Colored HOMFLYPT invariants of the unknot, Whitehead link, and
Borromean rings (symmetric colors), plus the framing factor.

All invariants come back as exact `BraceRatio` values: none of them is
a Laurent polynomial on its own (brace-factorial denominators survive),
and the ratio form keeps every later division checked-exact.

Conventions baked in here and validated against the integer tables:

* products {n;a}_i are descending for base n >= 0 (in particular
  {0;a}_2 = {0;a}{-1;a}) and single factors for the only negative base
  (n = -1) the sums below ever produce, where direction is moot;
* the framing factor is (-1)^(sum r_t) q^(sum r(r-1)t/2) — the sign
  exponent is taken mod 2, so writing |t| for t changes nothing.
"""

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .laurent import lp_mono, lp_mul, lp_neg, lp_sub
from .qsymbols import (BRACE, BRACE_A, BraceRatio, brace_factorial_multiset,
                       qsym_falling)


class RecursionViolated(Exception):
    """The framed unknot recursion failed at some color n."""


_COMPONENTS = {"unknot": 1, "twist": 1, "whitehead": 2, "borromean": 3}
_FULL_H = ("unknot", "whitehead", "borromean")


class FramedLinkSpec:
    """A link name with optional framing/color vectors (and p for twist knots).

    Twist knots carry no full HOMFLYPT formula here — they exist for the
    curve-engine and closed-form modules; the plethystic engine rejects
    them via `has_full_h`.
    """

    __slots__ = ("link", "framings", "colors", "p")

    def __init__(self, link, framings=None, colors=None, p=None):
        if link not in _COMPONENTS:
            raise ValueError(f"unknown link {link!r}")
        n = _COMPONENTS[link]
        if framings is not None:
            framings = tuple(int(t) for t in framings)
            assert len(framings) == n, "framing vector length mismatch"
        if colors is not None:
            colors = tuple(int(r) for r in colors)
            assert len(colors) == n and all(r >= 0 for r in colors)
        if link == "twist":
            assert p is not None, "twist knot needs its parameter p"
            p = int(p)
        else:
            assert p is None
        self.link = link
        self.framings = framings
        self.colors = colors
        self.p = p

    @property
    def n_components(self):
        return _COMPONENTS[self.link]

    @property
    def has_full_h(self):
        return self.link in _FULL_H

    def __repr__(self):
        bits = [self.link]
        if self.p is not None:
            bits.append(f"p={self.p}")
        if self.colors is not None:
            bits.append(f"colors={self.colors}")
        if self.framings is not None:
            bits.append(f"framings={self.framings}")
        return f"FramedLinkSpec({', '.join(bits)})"


@lru_cache(maxsize=None)
def homfly_unknot(r):
    """H_r(U) = {r-1;a}_r / {r}! as an exact ratio; H_0 = 1."""
    assert r >= 0
    if r == 0:
        return BraceRatio.one()
    return BraceRatio(qsym_falling(BRACE_A, r - 1, r), brace_factorial_multiset(r))


@lru_cache(maxsize=None)
def homfly_whitehead(r1, r2):
    """Colored invariant of the (0-framed) Whitehead link.

    The alternating sum over i = 0..min(r1, r2):

        (-1)^i  {r1+i-1;a}_{r1-i}/{r1-i}!  {r2+i-1;a}_{r2-i}/{r2-i}!
              * a^(i/2) q^(i(i-1)/4) {2i-1;a}_{2i} {i-2;a}_i

    (the displayed {i}!/{i}! pair cancels and is omitted).
    """
    assert r1 >= 0 and r2 >= 0
    total = BraceRatio.zero()
    for i in range(min(r1, r2) + 1):
        num = qsym_falling(BRACE_A, r1 + i - 1, r1 - i)
        num = lp_mul(num, qsym_falling(BRACE_A, r2 + i - 1, r2 - i))
        num = lp_mul(num, lp_mono(i * (i - 1) // 2, i))
        num = lp_mul(num, qsym_falling(BRACE_A, 2 * i - 1, 2 * i))
        num = lp_mul(num, qsym_falling(BRACE_A, i - 2, i))
        if i % 2:
            num = lp_neg(num)
        den = brace_factorial_multiset(r1 - i) + brace_factorial_multiset(r2 - i)
        total = total.add(BraceRatio(num, den))
    return total


@lru_cache(maxsize=None)
def homfly_borromean(r1, r2, r3):
    """Colored invariant of the (0-framed) Borromean rings.

    Like the Whitehead sum with a third unknot-type factor, but with no
    a^(i/2) q^(i(i-1)/4) prefactor and an uncancelled {i}! multiplier.
    """
    assert r1 >= 0 and r2 >= 0 and r3 >= 0
    total = BraceRatio.zero()
    for i in range(min(r1, r2, r3) + 1):
        num = qsym_falling(BRACE_A, r1 + i - 1, r1 - i)
        num = lp_mul(num, qsym_falling(BRACE_A, r2 + i - 1, r2 - i))
        num = lp_mul(num, qsym_falling(BRACE_A, r3 + i - 1, r3 - i))
        num = lp_mul(num, qsym_falling(BRACE_A, 2 * i - 1, 2 * i))
        num = lp_mul(num, qsym_falling(BRACE_A, i - 2, i))
        num = lp_mul(num, qsym_falling(BRACE, i, i))  # {i}!
        if i % 2:
            num = lp_neg(num)
        den = (brace_factorial_multiset(r1 - i) + brace_factorial_multiset(r2 - i)
               + brace_factorial_multiset(r3 - i))
        total = total.add(BraceRatio(num, den))
    return total


def framing_factor(colors, framings):
    """The monomial (-1)^(sum r_t) q^(sum r(r-1)t / 2) as a LaurentPoly."""
    assert len(colors) == len(framings)
    s = sum(r * t for r, t in zip(colors, framings))
    dq = sum(r * (r - 1) * t for r, t in zip(colors, framings))
    return lp_mono(dq, 0, Fraction(-1 if s % 2 else 1))


def apply_framing(h, colors, framings):
    """Multiply an invariant (ratio or plain LaurentPoly) by the framing factor."""
    factor = framing_factor(colors, framings)
    if isinstance(h, BraceRatio):
        return h.mul_poly(factor)
    return lp_mul(h, factor)


def check_unknot_recursion(tau, n_max):
    """Verify the framed-unknot recursion

        (-1)^tau (q^(n+1) - 1) Hf_{n+1}
            = (a^(1/2) q^(n+1/2) - a^(-1/2) q^(1/2)) q^(n tau) Hf_n

    exactly for all 1 <= n < n_max, where Hf_n is the framed invariant.
    Returns True, or raises RecursionViolated(n).
    """
    assert n_max >= 1
    sign = Fraction(-1 if tau % 2 else 1)
    for n in range(1, n_max):
        hn = apply_framing(homfly_unknot(n), (n,), (tau,))
        hn1 = apply_framing(homfly_unknot(n + 1), (n + 1,), (tau,))
        lhs = hn1.mul_poly(lp_mono(2 * n + 2, 0, sign))
        lhs = lhs.add(hn1.mul_poly(lp_mono(0, 0, -sign)))
        step = lp_sub(lp_mono(2 * n + 1, 1), lp_mono(1, -1))
        rhs = hn.mul_poly(lp_mul(step, lp_mono(2 * n * tau, 0)))
        if not lhs.sub(rhs).is_zero():
            raise RecursionViolated(n)
    return True
