"""The plethystic pipeline: connected invariants, p-polynomials, integer
N-tables, BPS lists, strong-integrality parities, and genus-0 disk counts.

The flow is

    framed H  --vector partitions-->  connected F  --Möbius + Adams-->
    p-polynomial  --coefficients-->  N-table  --row sums-->  b-list
    --divisor sums-->  disk counts,

with every intermediate value an exact numerator/denominator pair.
Clearing to an honest Laurent polynomial happens exactly once, inside
`p_poly`, as a checked exact division — that single choke point is
where the integrality structure either survives or raises.
"""

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import groupby, product
from math import factorial, gcd

from .closedforms import divisors, mobius
from .laurent import lp_one, lp_specialize_q1
from .links import (FramedLinkSpec, apply_framing, homfly_borromean,
                    homfly_unknot, homfly_whitehead)
from .qsymbols import BRACE, BraceRatio, qsym


class NonIntegerInvariant(Exception):
    """A p-polynomial coefficient that must be an integer is not.

    Carries (i, j, value): the a- and q-exponents (as exact halves)
    and the offending rational coefficient.
    """


class VectorPartition:
    """A multiset of nonzero color vectors, stored as (part, multiplicity)
    pairs in descending lexicographic part order."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)

    @classmethod
    def from_sequence(cls, seq):
        """Group a lex-descending sequence of parts into (part, mult) pairs."""
        return cls((v, len(list(g))) for v, g in groupby(seq))

    @property
    def total(self):
        k = len(self.parts[0][0])
        out = [0] * k
        for v, mult in self.parts:
            for c in range(k):
                out[c] += mult * v[c]
        return tuple(out)

    @property
    def length(self):
        return sum(mult for _, mult in self.parts)

    @property
    def aut(self):
        out = 1
        for _, mult in self.parts:
            out *= factorial(mult)
        return out

    def __eq__(self, other):
        return isinstance(other, VectorPartition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "VectorPartition(%s)" % (self.parts,)


def enumerate_vector_partitions(rvec):
    """All multisets of nonzero componentwise-nonnegative vectors summing
    to rvec, each exactly once (parts generated lex-descending)."""
    rvec = tuple(int(r) for r in rvec)
    assert any(rvec) and all(r >= 0 for r in rvec)
    out = []

    def descend(remaining, cap, acc):
        if not any(remaining):
            out.append(VectorPartition.from_sequence(acc))
            return
        for v in product(*(range(x, -1, -1) for x in remaining)):
            if any(v) and v <= cap:
                descend(tuple(a - b for a, b in zip(remaining, v)), v, acc + (v,))

    descend(rvec, rvec, ())
    return out


@lru_cache(maxsize=None)
def _framed_h(link_name, colors, framings):
    """Framed colored invariant for one color vector (exact ratio)."""
    if link_name == "unknot":
        h = homfly_unknot(colors[0])
    elif link_name == "whitehead":
        h = homfly_whitehead(*colors)
    elif link_name == "borromean":
        h = homfly_borromean(*colors)
    else:
        raise AssertionError(f"no full invariant for {link_name!r}")
    return apply_framing(h, colors, framings)


def _spec_framings(link):
    return link.framings if link.framings is not None else (0,) * link.n_components


def connected_F(link, rvec):
    """Connected invariant F_rvec as an exact ratio.

    Sum over vector partitions U of rvec of

        (-1)^(l(U)-1) (l(U)-1)! / |Aut(U)| * prod of framed H-parts,

    framings taken from the link spec (zero if unspecified).
    """
    assert link.has_full_h, "link carries no full invariant"
    rvec = tuple(int(r) for r in rvec)
    assert len(rvec) == link.n_components
    taus = _spec_framings(link)
    total = BraceRatio.zero()
    for pt in enumerate_vector_partitions(rvec):
        coef = Fraction(factorial(pt.length - 1), pt.aut)
        if (pt.length - 1) % 2:
            coef = -coef
        prod = BraceRatio.one()
        for v, mult in pt.parts:
            hv = _framed_h(link.link, v, taus)
            for _ in range(mult):
                prod = prod.mul(hv)
        total = total.add(prod.scale(coef))
    return total


def _mv_mul(left, right, trunc):
    """Multiply two componentwise-truncated multivariate series with
    exact-ratio coefficients (dict vector -> BraceRatio)."""
    out = {}
    for va, ca in left.items():
        for vb, cb in right.items():
            v = tuple(x + y for x, y in zip(va, vb))
            if any(x > t for x, t in zip(v, trunc)):
                continue
            term = ca.mul(cb)
            out[v] = out[v].add(term) if v in out else term
    return out


def connected_F_via_log(link, rvec, truncation=None):
    """Coefficient of x^rvec in log(1 + sum_v H_v x^v), truncated
    componentwise — an independent oracle for connected_F.

    The log is expanded as sum_m (-1)^(m-1) W^m / m with W the
    constant-free part of the generating function; powers die once m
    exceeds the total truncation degree.
    """
    assert link.has_full_h
    rvec = tuple(int(r) for r in rvec)
    trunc = rvec if truncation is None else tuple(int(t) for t in truncation)
    assert all(r <= t for r, t in zip(rvec, trunc))
    taus = _spec_framings(link)
    w = {}
    for v in product(*(range(t + 1) for t in trunc)):
        if any(v):
            w[v] = _framed_h(link.link, v, taus)
    total = BraceRatio.zero()
    power = dict(w)
    for m in range(1, sum(trunc) + 1):
        if rvec in power:
            coef = Fraction(1, m) if (m - 1) % 2 == 0 else Fraction(-1, m)
            total = total.add(power[rvec].scale(coef))
        if m < sum(trunc) and power:
            power = _mv_mul(power, w, trunc)
    return total


def f_knot(knot, r):
    """Möbius-inverted knot invariant f_r = sum_{d|r} mu(d)/d Psi_d(F_{r/d})."""
    assert knot.link == "unknot" and r >= 1
    total = BraceRatio.zero()
    for d in divisors(r):
        mu = mobius(d)
        if mu:
            term = connected_F(knot, (r // d,)).adams(d).scale(Fraction(mu, d))
            total = total.add(term)
    return total


def _with_framings(link, framings):
    if isinstance(link, str):
        return FramedLinkSpec(link, framings=framings)
    if framings is None:
        return link
    return FramedLinkSpec(link.link, framings=framings, p=link.p)


def p_poly(link, rvec, framings=None):
    """The p-polynomial: Möbius/Adams sum of connected invariants times
    (q^(1/2) - q^(-1/2))^(2-k), k the number of nonzero colors.

    The k = 1 case multiplies by the brace, k = 2 is the identity, and
    k = 3 divides — the one place an exact division is demanded of the
    whole pipeline, so InexactDivision here means the integrality
    structure failed (or a bug upstream of it did).
    """
    spec = _with_framings(link, framings)
    rvec = tuple(int(r) for r in rvec)
    k = sum(1 for r in rvec if r)
    assert k in (1, 2, 3)
    g = 0
    for r in rvec:
        g = gcd(g, r)
    total = BraceRatio.zero()
    for d in divisors(g):
        mu = mobius(d)
        if mu:
            sub = tuple(r // d for r in rvec)
            total = total.add(connected_F(spec, sub).adams(d).scale(Fraction(mu, d)))
    if k == 1:
        total = total.mul_poly(qsym(BRACE, 1))
    elif k == 3:
        total = total.mul(BraceRatio(lp_one(), Counter({1: 1})))
    return total.reduce()


class OVTable:
    """Integer table N_{rvec,i,j}: entries keyed by doubled exponents
    (2i, 2j) of a^i q^j in the p-polynomial."""

    __slots__ = ("colors", "framings", "k", "entries", "p_poly")

    def __init__(self, colors, framings, k, entries, p_poly):
        self.colors = tuple(colors)
        self.framings = tuple(framings)
        self.k = k
        self.entries = dict(entries)
        self.p_poly = p_poly

    @property
    def epsilon(self):
        """Parity pair (e1, e2) the doubled exponents must match."""
        s = sum(self.colors)
        return s % 2, (s + self.k) % 2

    def entry(self, i2, j2):
        return self.entries.get((i2, j2), 0)

    def bounds(self):
        """((min 2i, max 2i), (min 2j, max 2j)) over the support; None if empty."""
        if not self.entries:
            return None
        i2s = [i2 for i2, _ in self.entries]
        j2s = [j2 for _, j2 in self.entries]
        return (min(i2s), max(i2s)), (min(j2s), max(j2s))

    def __eq__(self, other):
        return (isinstance(other, OVTable) and self.entries == other.entries
                and self.colors == other.colors and self.framings == other.framings)

    def __repr__(self):
        return (f"OVTable(colors={self.colors}, framings={self.framings}, "
                f"{len(self.entries)} entries)")


def ov_table(link, rvec, framings=None):
    """Read the p-polynomial's coefficients into an integer table.

    Raises NonIntegerInvariant(i, j, value) on the first non-integral
    coefficient (exponents reported as exact halves).
    """
    spec = _with_framings(link, framings)
    rvec = tuple(int(r) for r in rvec)
    p = p_poly(spec, rvec)
    entries = {}
    for (dq, da), c in sorted(p.items()):
        if c.denominator != 1:
            raise NonIntegerInvariant(Fraction(da, 2), Fraction(dq, 2), c)
        entries[(da, dq)] = int(c)
    k = sum(1 for r in rvec if r)
    return OVTable(rvec, _spec_framings(spec), k, entries, p)


class BPSList:
    """Row sums of an OVTable: map (doubled a-exponent) -> integer b."""

    __slots__ = ("colors", "framings", "values")

    def __init__(self, colors, framings, values):
        self.colors = tuple(colors)
        self.framings = tuple(framings)
        self.values = dict(values)

    def __eq__(self, other):
        return isinstance(other, BPSList) and self.values == other.values

    def __repr__(self):
        return f"BPSList(colors={self.colors}, framings={self.framings}, {self.values})"


def bps_list(table):
    """Collapse a table to its BPS list b_i = sum_j N_{i,j}.

    Computed twice — by row sums and as the q = 1 specialization of the
    p-polynomial — and the two are asserted equal.
    """
    rows = {}
    for (da, dq), n in table.entries.items():
        rows[da] = rows.get(da, 0) + n
    rows = {da: n for da, n in rows.items() if n}
    q1 = {da: int(c) for (_, da), c in lp_specialize_q1(table.p_poly).items()}
    assert rows == q1, "row sums disagree with q=1 specialization"
    return BPSList(table.colors, table.framings, rows)


def strong_integrality_check(table):
    """True iff every entry's doubled exponents match the parity pair
    (e1, e2) = (sum r mod 2, (sum r + k) mod 2)."""
    e1, e2 = table.epsilon
    return all(da % 2 == e1 and dq % 2 == e2
               for (da, dq), n in table.entries.items() if n)


def _level_values(bps_levels, r):
    b = bps_levels[r]
    return b.values if isinstance(b, BPSList) else dict(b)


def _disk_level(bps_levels, r):
    out = {}
    for d in divisors(r):
        for m, b in _level_values(bps_levels, r // d).items():
            key = d * m
            out[key] = out.get(key, Fraction(0)) + Fraction(b, d * d)
    return {i: v for i, v in out.items() if v}


def disk_counts(bps_levels, r):
    """Genus-0 disk counts K_{r,0,i} = sum_{d | gcd(r,i)} b_{r/d, i/d} / d^2.

    `bps_levels` maps every divisor level r' | r to its BPSList (or a
    plain index->b map); indices are doubled a-exponents throughout.
    The inverse relation b_{r,i} = sum mu(d)/d^2 K_{r/d, i/d} is
    asserted to round-trip before returning.
    """
    assert r >= 1
    levels = {rp: _disk_level(bps_levels, rp) for rp in divisors(r)}
    back = {}
    for d in divisors(r):
        mu = mobius(d)
        if not mu:
            continue
        for i, kv in levels[r // d].items():
            key = d * i
            back[key] = back.get(key, Fraction(0)) + Fraction(mu, d * d) * kv
    back = {i: v for i, v in back.items() if v}
    assert back == {i: Fraction(b) for i, b in _level_values(bps_levels, r).items() if b}, \
        "disk-count Möbius round-trip failed"
    return levels[r]
