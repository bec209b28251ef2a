"""Dual and extremal A-polynomial curves and the series machinery that
extracts BPS invariants from them.

Two independent solvers produce the same data:

* `lagrange_log_y` — Lagrange inversion applied to the functional
  equation Y = X φ(Y) obtained by normalizing the curve (Y = 1 - y²,
  X a sign-and-monomial rescale of x);
* `newton_series_solve` — quadratic Newton lifting of y² as a power
  series in x directly on the curve polynomial.

Both emit a GammaSeries: the coefficients of x · d/dx log y(x), from
which the BPS numbers b_{r,m} follow by Möbius inversion.  The solved
branch is always the one with y(0)² = 1 (equivalently Y(0) = 0).
"""

from fractions import Fraction
from math import gcd

from .closedforms import NonIntegerBPS, divisors, mobius, sign_pow
from .laurent import (NonInvertibleLeadingTerm, TruncSeries, lp_mono, lp_mul,
                      lp_one, lp_scale, series_add, series_inv, series_log1p,
                      series_mul, series_pow_int, series_scale)

KIND_FULL = "full"
KIND_PLUS = "extremal_plus"
KIND_MINUS = "extremal_minus"
KINDS = (KIND_FULL, KIND_PLUS, KIND_MINUS)


class UnsupportedKnotKind(Exception):
    """No curve of the requested (knot, kind, parameter) shape exists here."""


class NotNormalizable(Exception):
    """Curve outside the trinomial shape the normal form handles."""


class SingularBranch(Exception):
    """The Newton solver's branch has a non-invertible y-derivative."""


class DualAPoly:
    """A curve polynomial in (x, y) with a-Laurent coefficients.

    `source` maps (x-degree, y-degree, doubled a-exponent) -> Fraction;
    y-degrees are even throughout (the curves only see w = y²).
    """

    __slots__ = ("source", "kind", "knot", "framing")

    def __init__(self, source, kind, knot, framing):
        assert kind in KINDS
        self.source = {k: Fraction(c) for k, c in source.items() if c}
        self.kind = kind
        self.knot = knot
        self.framing = framing

    def __eq__(self, other):
        return (isinstance(other, DualAPoly) and self.source == other.source
                and self.kind == other.kind and self.knot == other.knot
                and self.framing == other.framing)

    def __repr__(self):
        return (f"DualAPoly(knot={self.knot!r}, kind={self.kind!r}, "
                f"framing={self.framing}, {len(self.source)} terms)")


def _cleared(terms):
    """Strip zeros and shift y-degrees by a unit monomial so min is 0."""
    terms = {k: c for k, c in terms.items() if c}
    shift = min(yd for _, yd, _ in terms)
    if shift:
        terms = {(xd, yd - shift, da): c for (xd, yd, da), c in terms.items()}
    return terms


def make_curve(knot, kind, tau):
    """Displayed curve polynomial for the framed unknot or twist knot.

    knot is "unknot" or ("twist", p) with p <= -1 or p >= 2; twist
    knots only have extremal curves.  Negative y-exponents produced by
    the displays at negative framing are cleared by a y-monomial.
    """
    tau = int(tau)
    s = sign_pow(tau)
    if knot == "unknot":
        if kind == KIND_FULL:
            terms = {(0, 2, 0): s, (0, 0, 0): -s,
                     (1, 2 * tau + 2, 1): -1, (1, 2 * tau, -1): 1}
        elif kind == KIND_PLUS:
            terms = {(0, 2, 0): s, (0, 0, 0): -s, (1, 2 * tau + 2, 0): -1}
        elif kind == KIND_MINUS:
            terms = {(0, 2, 0): s, (0, 0, 0): -s, (1, 2 * tau, 0): 1}
    elif isinstance(knot, tuple) and len(knot) == 2 and knot[0] == "twist":
        p = knot[1]
        if kind == KIND_FULL:
            raise UnsupportedKnotKind("twist knots only have extremal curves")
        if not (p <= -1 or p >= 2):
            raise UnsupportedKnotKind(f"twist parameter p={p} out of family")
        if p <= -1:
            if kind == KIND_MINUS:
                terms = {(1, 2 * tau, 0): s, (0, 4, 0): -1, (0, 6, 0): 1}
            else:
                terms = {(0, 0, 0): 1, (0, 2, 0): -1,
                         (1, 4 * abs(p) + 2 + 2 * tau, 0): s}
        else:
            if kind == KIND_MINUS:
                terms = {(0, 0, 0): 1, (0, 2, 0): -1, (1, 4 + 2 * tau, 0): -s}
            else:
                terms = {(0, 0, 0): 1, (0, 2, 0): -1, (1, 4 * p + 4 + 2 * tau, 0): -s}
    else:
        raise UnsupportedKnotKind(knot)
    return DualAPoly(_cleared(terms), kind, knot, tau)


def frame_transform(curve, tau):
    """Substitute x -> (-1)^tau y^(2 tau) x and clear the y-monomial unit.

    Composes additively in tau (up to the cleared unit); the stored
    framing field accumulates.
    """
    tau = int(tau)
    terms = {}
    for (xd, yd, da), c in curve.source.items():
        terms[(xd, yd + 2 * tau * xd, da)] = c if (tau * xd) % 2 == 0 else -c
    return DualAPoly(_cleared(terms), curve.kind, curve.knot, curve.framing + tau)


def _one_minus_lambda(order):
    coeffs = [lp_one(), lp_scale(lp_one(), -1)] + [{} for _ in range(order - 2)]
    return TruncSeries(coeffs[:order], order)


def _series_scale_poly(s, poly):
    return TruncSeries([lp_mul(c, poly) for c in s.coeffs], s.order)


class CurveNormalForm:
    """Functional-equation form Y = X φ(Y) of a curve, Y = 1 - y².

    `phi` is a TruncSeries in λ (standing for Y) with a-Laurent
    coefficients; `sigma` (±1) and `e` give the rescale X = σ a^(e/2) x.
    φ(0) is a unit of the coefficient field.  Enough of the source
    split is kept to reconstruct the curve polynomial exactly.
    """

    __slots__ = ("phi", "sigma", "e", "y_substitution", "framing",
                 "_cu", "_j", "_x1")

    def __init__(self, phi, sigma, e, framing, cu, j, x1):
        self.phi = phi
        self.sigma = sigma
        self.e = e
        self.y_substitution = "Y = 1 - y^2"
        self.framing = framing
        self._cu = cu
        self._j = j
        self._x1 = x1

    @property
    def x_rescale(self):
        return self.sigma, self.e

    def reconstruct(self):
        """The source polynomial this normal form came from."""
        terms = {(0, 2 * (self._j + 1), 0): self._cu,
                 (0, 2 * self._j, 0): -self._cu}
        for (wdeg, da), c in self._x1.items():
            terms[(1, 2 * wdeg, da)] = c
        return terms

    def __repr__(self):
        return (f"CurveNormalForm(sigma={self.sigma}, e={self.e}, "
                f"framing={self.framing}, order={self.phi.order})")


def normalize(curve, order):
    """Rewrite a trinomial-shaped curve as Y = X φ(Y), φ truncated at `order`.

    The x⁰ part must be cu·(w^(J+1) - w^J) in w = y² with no
    a-dependence, the rest linear in x; the rescale unit is read off
    the lowest a-term of φ(0), whose coefficient must be ±1.  Anything
    else raises NotNormalizable.
    """
    assert order >= 1
    x0 = {}
    x1 = {}
    for (xd, yd, da), c in curve.source.items():
        if yd % 2:
            raise NotNormalizable("odd y-degree")
        if xd == 0:
            if da:
                raise NotNormalizable("a-dependent x^0 part")
            x0[yd // 2] = x0.get(yd // 2, Fraction(0)) + c
        elif xd == 1:
            key = (yd // 2, da)
            x1[key] = x1.get(key, Fraction(0)) + c
        else:
            raise NotNormalizable("degree in x exceeds 1")
    x0 = {k: c for k, c in x0.items() if c}
    x1 = {k: c for k, c in x1.items() if c}
    if len(x0) != 2 or not x1:
        raise NotNormalizable("x^0 part is not a w-binomial")
    j1, j0 = max(x0), min(x0)
    if j1 != j0 + 1 or x0[j1] != -x0[j0]:
        raise NotNormalizable("x^0 part is not cu*(w^(J+1) - w^J)")
    cu, j = x0[j1], j0

    one_m = _one_minus_lambda(order)
    phi = TruncSeries([{} for _ in range(order)], order)
    for (wdeg, da), c in sorted(x1.items()):
        piece = series_pow_int(one_m, wdeg - j)
        piece = _series_scale_poly(piece, lp_mono(0, da, c / cu))
        phi = series_add(phi, piece)

    const = phi.coeffs[0]
    if not const:
        raise NotNormalizable("phi(0) = 0")
    m = min(da for _, da in const)
    lead = const[(0, m)]
    if lead not in (1, -1):
        raise NotNormalizable(f"leading unit {lead} is not a sign")
    sigma, e = int(lead), m
    phi = _series_scale_poly(phi, lp_mono(0, -e, sigma))
    return CurveNormalForm(phi, sigma, e, curve.framing, cu, j, x1)


class GammaSeries:
    """Coefficients of x·d/dx log y(x) = Σ γ_{r,m} x^r a^(m/2).

    `coefficients` maps (r, doubled a-exponent m) -> Fraction for
    1 <= r <= order; zero values are not stored.
    """

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients, order):
        self.coefficients = {k: Fraction(c) for k, c in coefficients.items() if c}
        self.order = order

    def __getitem__(self, key):
        return self.coefficients.get(key, Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, GammaSeries)
                and self.coefficients == other.coefficients
                and self.order == other.order)

    def __repr__(self):
        return f"GammaSeries(order={self.order}, {len(self.coefficients)} terms)"


def _gamma_entries(out, r, poly):
    for (dq, da), c in poly.items():
        assert dq == 0, "gamma coefficient leaked a q-power"
        if c:
            out[(r, da)] = c


def lagrange_log_y(nf, order):
    """GammaSeries by Lagrange inversion of Y = X φ(Y).

    Coefficient of X^n in log(1 - Y(X)) is -(1/n)·Σ_{j<n} [λ^j] φ(λ)^n,
    log y = ½ log(1 - Y); the X -> x rescale contributes σ^n a^(ne/2).
    """
    assert 1 <= order <= nf.phi.order
    out = {}
    power = nf.phi
    for n in range(1, order + 1):
        acc = {}
        for jj in range(n):
            for key, c in power.coeffs[jj].items():
                v = acc.get(key, Fraction(0)) + c
                if v:
                    acc[key] = v
                elif key in acc:
                    del acc[key]
        poly = lp_scale(acc, Fraction(-(nf.sigma ** n), 2))
        poly = lp_mul(poly, lp_mono(0, n * nf.e))
        _gamma_entries(out, n, poly)
        if n < order:
            power = series_mul(power, nf.phi)
    return GammaSeries(out, order)


def _curve_series(curve, w, order):
    """Evaluate the curve polynomial at y² = w(x) as a TruncSeries in x."""
    total = TruncSeries([{} for _ in range(order)], order)
    powers = {}
    for (xd, yd, da), c in sorted(curve.source.items()):
        jj = yd // 2
        if jj not in powers:
            powers[jj] = series_pow_int(w, jj)
        term = _series_scale_poly(powers[jj], lp_mono(0, da, c))
        if xd:
            shifted = [{} for _ in range(xd)] + list(term.coeffs[:order - xd])
            term = TruncSeries(shifted, order)
        total = series_add(total, term)
    return total


def _curve_dw_series(curve, w, order):
    """Evaluate ∂(curve)/∂w at y² = w(x)."""
    total = TruncSeries([{} for _ in range(order)], order)
    powers = {}
    for (xd, yd, da), c in sorted(curve.source.items()):
        jj = yd // 2
        if jj == 0:
            continue
        if jj - 1 not in powers:
            powers[jj - 1] = series_pow_int(w, jj - 1)
        term = _series_scale_poly(powers[jj - 1], lp_mono(0, da, c * jj))
        if xd:
            shifted = [{} for _ in range(xd)] + list(term.coeffs[:order - xd])
            term = TruncSeries(shifted, order)
        total = series_add(total, term)
    return total


def solve_w_series(curve, order):
    """Solve curve(x, y, a) = 0 for w = y² as a series with w(0) = 1.

    Quadratic Newton lifting: w ← w - A(w)/∂A(w), doubling the count of
    correct coefficients per round; raises SingularBranch when ∂A/∂w is
    not invertible at the start point.
    """
    assert order >= 1
    w = TruncSeries([lp_one()] + [{} for _ in range(order - 1)], order)
    known = 1
    while known < order:
        residual = _curve_series(curve, w, order)
        slope = _curve_dw_series(curve, w, order)
        try:
            correction = series_mul(residual, series_inv(slope))
        except NonInvertibleLeadingTerm as exc:
            raise SingularBranch(curve) from exc
        w = series_add(w, series_scale(correction, Fraction(-1)))
        known = min(2 * known, order)
    final = _curve_series(curve, w, order)
    assert all(not c for c in final.coeffs), "Newton residual nonzero"
    return w


def curve_residual(curve, w):
    """The curve polynomial evaluated at a candidate series for y²."""
    return _curve_series(curve, w, w.order)


def newton_series_solve(curve, order):
    """GammaSeries from the Newton-solved branch: γ_r = r·[x^r] log y,
    log y = ½ log w."""
    assert order >= 1
    w = solve_w_series(curve, order + 1)
    u = TruncSeries([{} if i == 0 else w.coeffs[i] for i in range(order + 1)],
                    order + 1)
    logw = series_log1p(u)
    out = {}
    for r in range(1, order + 1):
        poly = lp_scale(logw.coeffs[r], Fraction(r, 2))
        _gamma_entries(out, r, poly)
    return GammaSeries(out, order)


def bps_from_gamma(gamma):
    """BPS numbers b_{r,m} = (2/r²) Σ_{d | gcd(r,m)} μ(d) γ_{r/d, m/d}.

    gcd(r, 0) = r.  Returns a map (r, m) -> integer over the γ-support
    closure with zero values dropped; a non-integral value raises
    NonIntegerBPS.
    """
    out = {}
    for r in range(1, gamma.order + 1):
        cands = set()
        for d in divisors(r):
            for (rr, mm) in gamma.coefficients:
                if rr == r // d:
                    cands.add(d * mm)
        for m in sorted(cands):
            total = Fraction(0)
            for d in divisors(gcd(r, m)):
                mu = mobius(d)
                if mu:
                    total += mu * gamma[(r // d, m // d)]
            b = Fraction(2, r * r) * total
            if b:
                if b.denominator != 1:
                    raise NonIntegerBPS((r, m, b))
                out[(r, m)] = int(b)
    return out
