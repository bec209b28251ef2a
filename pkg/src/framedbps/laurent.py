"""Exact Laurent polynomials in q^(1/2), a^(1/2), and truncated power series.

A Laurent polynomial is a plain dict mapping an exponent pair (dq, da)
to a nonzero Fraction, where dq and da count *half units*: the key
(dq, da) stands for the monomial q^(dq/2) a^(da/2).  Storing doubled
exponents keeps everything an int — in particular the q^(i(i-1)/4)
twist factors, whose doubled exponent i(i-1)/2 is always integral.

Zero coefficients are never stored, so dict equality is value equality.
All operations are pure: inputs are never mutated.
"""

from fractions import Fraction


class InexactDivision(Exception):
    """Polynomial division left a nonzero remainder."""


class NonInvertibleLeadingTerm(Exception):
    """Series inversion needs an invertible (single-monomial) constant term."""


_F0 = Fraction(0)
_F1 = Fraction(1)


def lp_zero():
    return {}


def lp_one():
    return {(0, 0): _F1}


def lp_mono(dq, da, c=1):
    """The monomial c * q^(dq/2) * a^(da/2)."""
    c = Fraction(c)
    return {(dq, da): c} if c else {}


def lp_add(p, q):
    r = dict(p)
    for k, c in q.items():
        v = r.get(k, _F0) + c
        if v:
            r[k] = v
        elif k in r:
            del r[k]
    return r


def lp_neg(p):
    return {k: -c for k, c in p.items()}


def lp_sub(p, q):
    return lp_add(p, lp_neg(q))


def lp_mul(p, q):
    r = {}
    for (d1, a1), c1 in p.items():
        for (d2, a2), c2 in q.items():
            k = (d1 + d2, a1 + a2)
            v = r.get(k, _F0) + c1 * c2
            if v:
                r[k] = v
            elif k in r:
                del r[k]
    return r


def lp_scale(p, c):
    c = Fraction(c)
    if not c:
        return {}
    return {k: v * c for k, v in p.items()}


def lp_arith(op, lhs, rhs=None):
    """Dispatch basic ring arithmetic by name.

    Parameters
    ----------
    op : str
        One of "add", "sub", "mul", "neg", "scale".
    lhs, rhs : dict or rational
        Laurent operands; for "scale" the rational may be either side.
    """
    if op == "add":
        return lp_add(lhs, rhs)
    if op == "sub":
        return lp_sub(lhs, rhs)
    if op == "mul":
        return lp_mul(lhs, rhs)
    if op == "neg":
        return lp_neg(lhs)
    if op == "scale":
        if isinstance(lhs, dict):
            return lp_scale(lhs, rhs)
        return lp_scale(rhs, lhs)
    raise ValueError(f"unknown op {op!r}")


def _a_exact_div(num, den):
    """Exact division of univariate a-Laurent coefficients.

    num, den: dict da -> Fraction.  Raises InexactDivision on remainder.
    """
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    ns, ds = min(num), min(den)
    # shift both to ordinary polynomials in a^(1/2)
    num = {k - ns: c for k, c in num.items()}
    den = {k - ds: c for k, c in den.items()}
    dd = max(den)
    lead = den[dd]
    quo = {}
    rem = dict(num)
    while rem:
        dr = max(rem)
        if dr < dd:
            raise InexactDivision("a-coefficient remainder")
        c = rem[dr] / lead
        sh = dr - dd
        quo[sh] = c
        for k, v in den.items():
            k2 = k + sh
            w = rem.get(k2, _F0) - c * v
            if w:
                rem[k2] = w
            elif k2 in rem:
                del rem[k2]
    return {k + ns - ds: c for k, c in quo.items()}


def lp_exact_div(num, den):
    """Exact quotient num / den, raising InexactDivision on any remainder.

    Performed as long division in q^(1/2) whose coefficients are
    a-Laurent polynomials; each leading-coefficient division must itself
    be exact.  Termination: the q-degree of the remainder strictly drops.
    """
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    # regroup by q-exponent: dq -> {da: c}
    def by_q(p):
        g = {}
        for (dq, da), c in p.items():
            g.setdefault(dq, {})[da] = c
        return g

    gn, gd = by_q(num), by_q(den)
    qn, qd = min(gn), min(gd)
    gn = {k - qn: v for k, v in gn.items()}
    gd = {k - qd: v for k, v in gd.items()}
    dlead = max(gd)
    quo = {}
    while gn:
        nlead = max(gn)
        if nlead < dlead:
            raise InexactDivision("q-degree remainder")
        qc = _a_exact_div(gn[nlead], gd[dlead])  # may raise
        sh = nlead - dlead
        quo[sh] = qc
        for k, ak in gd.items():
            k2 = k + sh
            acc = dict(gn.get(k2, {}))
            for da1, c1 in ak.items():
                for da2, c2 in qc.items():
                    da = da1 + da2
                    v = acc.get(da, _F0) - c1 * c2
                    if v:
                        acc[da] = v
                    elif da in acc:
                        del acc[da]
            if acc:
                gn[k2] = acc
            elif k2 in gn:
                del gn[k2]
    out = {}
    shift = qn - qd
    for dq, ak in quo.items():
        for da, c in ak.items():
            out[(dq + shift, da)] = c
    return out


def lp_adams(f, d):
    """Adams operation: exponentwise q -> q^d, a -> a^d."""
    assert d >= 1
    return {(dq * d, da * d): c for (dq, da), c in f.items()}


def lp_specialize_q1(f):
    """Substitute q^(1/2) := 1, collecting a-terms."""
    out = {}
    for (dq, da), c in f.items():
        k = (0, da)
        v = out.get(k, _F0) + c
        if v:
            out[k] = v
        elif k in out:
            del out[k]
    return out


# --------------------------------------------------------------------------
# Truncated power series in one formal variable over Laurent coefficients.


class TruncSeries:
    """A truncated power series: coeffs[j] is the LaurentPoly at power j.

    `order` is exclusive: exactly `order` coefficients are stored and
    arithmetic never reads beyond it.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        assert order >= 0
        cs = list(coeffs[:order])
        cs += [{}] * (order - len(cs))
        self.coeffs = cs
        self.order = order

    @classmethod
    def from_terms(cls, terms, order):
        """Build from a sparse {power: LaurentPoly} map."""
        cs = [{}] * order
        for j, p in terms.items():
            if 0 <= j < order and p:
                cs[j] = dict(p)
        return cls(cs, order)

    @classmethod
    def constant(cls, p, order):
        return cls.from_terms({0: p}, order)

    def coeff(self, j):
        return self.coeffs[j] if 0 <= j < self.order else {}

    def __eq__(self, other):
        return (isinstance(other, TruncSeries)
                and self.order == other.order and self.coeffs == other.coeffs)

    def __repr__(self):
        nz = {j: c for j, c in enumerate(self.coeffs) if c}
        return f"TruncSeries(order={self.order}, {nz})"


def series_add(s1, s2):
    order = min(s1.order, s2.order)
    return TruncSeries([lp_add(s1.coeffs[j], s2.coeffs[j])
                        for j in range(order)], order)


def series_scale(s, c):
    return TruncSeries([lp_scale(p, c) for p in s.coeffs], s.order)


def series_mul(s1, s2):
    order = min(s1.order, s2.order)
    out = [{} for _ in range(order)]
    for j1, c1 in enumerate(s1.coeffs[:order]):
        if not c1:
            continue
        for j2 in range(order - j1):
            c2 = s2.coeffs[j2]
            if c2:
                out[j1 + j2] = lp_add(out[j1 + j2], lp_mul(c1, c2))
    return TruncSeries(out, order)


def series_inv(s):
    """1/s when the constant term is an invertible monomial."""
    c0 = s.coeffs[0]
    if len(c0) != 1:
        raise NonInvertibleLeadingTerm(f"constant term {c0} is not a monomial")
    ((dq, da), v), = c0.items()
    c0inv = {(-dq, -da): 1 / v}
    out = [c0inv] + [{}] * (s.order - 1)
    for j in range(1, s.order):
        acc = {}
        for i in range(1, j + 1):
            if s.coeffs[i] and out[j - i]:
                acc = lp_add(acc, lp_mul(s.coeffs[i], out[j - i]))
        if acc:
            out[j] = lp_neg(lp_mul(c0inv, acc))
    return TruncSeries(out, s.order)


def series_pow_int(s, e):
    """s**e for integer e; negative e inverts first (monomial constant term)."""
    if e < 0:
        return series_pow_int(series_inv(s), -e)
    result = TruncSeries.constant(lp_one(), s.order)
    base = s
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def series_log1p(s):
    """log(1 + s) for s with zero constant term."""
    assert not s.coeffs[0], "log1p argument must have zero constant term"
    out = TruncSeries([], s.order)
    term = TruncSeries.constant(lp_one(), s.order)
    for m in range(1, s.order):
        term = series_mul(term, s)
        if not any(term.coeffs):
            break
        out = series_add(out, series_scale(term, Fraction((-1) ** (m - 1), m)))
    return out


def series_arith(op, *args):
    """Dispatch series arithmetic: add | mul | log1p | pow_int."""
    if op == "add":
        return series_add(*args)
    if op == "mul":
        return series_mul(*args)
    if op == "log1p":
        return series_log1p(*args)
    if op == "pow_int":
        return series_pow_int(*args)
    raise ValueError(f"unknown op {op!r}")
