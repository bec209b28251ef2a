"""Command-line surface: compute invariants, tables, and curve series,
verify identities against the golden files, and emit ASCII / JSON / CSV.

ASCII tables mirror the familiar layout (rows = a-exponent i descending,
columns = q-exponent j descending, half-integers printed as fractions);
JSON and CSV carry doubled exponents (i2, j2) so everything stays an
integer.  Exit status is 0 iff there were zero failures.
"""

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from .closedforms import (b_extremal_twist, b_extremal_unknot, b_unknot,
                          integrality_statistic)
from .curves import (KIND_FULL, KIND_MINUS, KIND_PLUS, KINDS, bps_from_gamma,
                     lagrange_log_y, make_curve, newton_series_solve, normalize)
from .links import (FramedLinkSpec, apply_framing, check_unknot_recursion,
                    homfly_borromean, homfly_unknot, homfly_whitehead)
from .ovengine import bps_list, ov_table, strong_integrality_check


class MismatchDetected(Exception):
    """The two independent pipelines disagree on a value they must share."""


# --------------------------------------------------------------------------
# small formatting helpers


def fmt_half(n2):
    """Doubled exponent -> display: 4 -> '2', 5 -> '5/2', -3 -> '-3/2'."""
    if n2 % 2 == 0:
        return str(n2 // 2)
    return f"{n2}/2"


def fmt_coeff(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else str(c)


def fmt_monomial(dq, da, c):
    bits = [fmt_coeff(c)]
    if dq:
        bits.append(f"q^({fmt_half(dq)})" if dq % 2 else f"q^{dq // 2}")
    if da:
        bits.append(f"a^({fmt_half(da)})" if da % 2 else f"a^{da // 2}")
    return "*".join(bits)


def poly_terms_sorted(poly):
    """LaurentPoly items sorted a-major descending, then q descending."""
    return sorted(poly.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))


def render_grid(rows, cols, cell, corner):
    """Right-aligned ASCII grid with labeled axes."""
    header = [corner] + [fmt_half(j) for j in cols]
    body = [[fmt_half(i)] + [cell(i, j) for j in cols] for i in rows]
    widths = [max(len(line[ci]) for line in [header] + body)
              for ci in range(len(header))]
    out = []

    def fmt_line(line):
        return " ".join(s.rjust(w) for s, w in zip(line, widths))

    out.append(fmt_line(header))
    out.append("-" * len(out[0]))
    out.extend(fmt_line(line) for line in body)
    return "\n".join(out)


def parse_int_vector(text):
    return tuple(int(x) for x in text.split(","))


# --------------------------------------------------------------------------
# subcommands


def _link_spec(args, parser):
    colors = parse_int_vector(args.colors)
    framings = parse_int_vector(args.framing)
    if not any(colors):
        parser.error("zero color vector")
    if any(c < 0 for c in colors):
        parser.error("negative color")
    try:
        spec = FramedLinkSpec(args.link, framings=framings, colors=colors,
                              p=args.p if args.link == "twist" else None)
    except (ValueError, AssertionError) as exc:
        parser.error(str(exc))
    return spec


def cmd_homfly(args, parser):
    spec = _link_spec(args, parser)
    if not spec.has_full_h:
        print(f"error: UnsupportedKnotKind: no full invariant for {spec.link!r}",
              file=sys.stderr)
        return 1
    if spec.link == "unknot":
        h = homfly_unknot(spec.colors[0])
    elif spec.link == "whitehead":
        h = homfly_whitehead(*spec.colors)
    else:
        h = homfly_borromean(*spec.colors)
    h = apply_framing(h, spec.colors, spec.framings)
    den = sorted(h.den.elements())
    if args.format == "json":
        doc = {
            "link": spec.link,
            "colors": list(spec.colors),
            "framings": list(spec.framings),
            "numerator": [{"q2": dq, "a2": da, "c": fmt_coeff(c)}
                          for (dq, da), c in poly_terms_sorted(h.num)],
            "denominator": den,
        }
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print("q2,a2,c")
        for (dq, da), c in poly_terms_sorted(h.num):
            print(f"{dq},{da},{fmt_coeff(c)}")
        print("# denominator braces: " + (" ".join(f"{{{n}}}" for n in den) or "1"))
    else:
        print(f"link={spec.link} colors={spec.colors} framings={spec.framings}")
        if h.is_zero():
            print("0")
            return 0
        terms = " + ".join(fmt_monomial(dq, da, c)
                           for (dq, da), c in poly_terms_sorted(h.num))
        print(f"numerator:   {terms}")
        print("denominator: " + (" ".join(f"{{{n}}}" for n in den) or "1"))
    return 0


def _table_json(spec, table):
    e1, e2 = table.epsilon
    entries = sorted(table.entries.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
    return {
        "link": spec.link,
        "colors": list(table.colors),
        "framings": list(table.framings),
        "epsilon": [e1, e2],
        "entries": [{"i2": i2, "j2": j2, "N": n} for (i2, j2), n in entries],
    }


def render_table_ascii(table):
    bounds = table.bounds()
    if bounds is None:
        return "(empty table)"
    (i_lo, i_hi), (j_lo, j_hi) = bounds
    rows = range(i_hi, i_lo - 1, -2)
    cols = range(j_hi, j_lo - 1, -2)
    return render_grid(rows, cols, lambda i, j: str(table.entry(i, j)), "i\\j")


def cmd_ov_table(args, parser):
    spec = _link_spec(args, parser)
    if not spec.has_full_h:
        print(f"error: UnsupportedKnotKind: no full invariant for {spec.link!r}",
              file=sys.stderr)
        return 1
    table = ov_table(spec, spec.colors)
    if args.format == "json":
        print(json.dumps(_table_json(spec, table), indent=2))
    elif args.format == "csv":
        print("i2,j2,N")
        for (i2, j2), n in sorted(table.entries.items(),
                                  key=lambda kv: (-kv[0][0], -kv[0][1])):
            print(f"{i2},{j2},{n}")
    else:
        e1, e2 = table.epsilon
        print(f"link={spec.link} colors={table.colors} framings={table.framings} "
              f"epsilon=({e1},{e2})")
        print(render_table_ascii(table))
    return 0


def _unknot_bps_rows(tau, r_max, source):
    """Rows (r, m, curve value or None, closed value or None)."""
    curve_b = {}
    if source in ("curve", "both") and r_max >= 1:
        nf = normalize(make_curve("unknot", KIND_FULL, tau), r_max)
        curve_b = bps_from_gamma(lagrange_log_y(nf, r_max))
    rows = []
    for r in range(1, r_max + 1):
        for m in range(-r, r + 1):
            cv = curve_b.get((r, m), 0) if source in ("curve", "both") else None
            cl = b_unknot(r, m, tau) if source in ("closed", "both") else None
            if not (cv or cl):
                continue
            rows.append((r, m, cv, cl))
    return rows


def _twist_bps_rows(p, tau, r_max, source):
    """Rows (r, sign, curve value or None, closed value or None)."""
    curve_b = {}
    if source in ("curve", "both") and r_max >= 1:
        for kind, sgn in ((KIND_MINUS, "-"), (KIND_PLUS, "+")):
            nf = normalize(make_curve(("twist", p), kind, tau), r_max)
            b = bps_from_gamma(lagrange_log_y(nf, r_max))
            for r in range(1, r_max + 1):
                curve_b[(r, sgn)] = b.get((r, 0), 0)
    rows = []
    for r in range(1, r_max + 1):
        for sgn in ("-", "+"):
            cv = curve_b.get((r, sgn)) if source in ("curve", "both") else None
            cl = (b_extremal_twist(r, sgn, p, tau)
                  if source in ("closed", "both") else None)
            rows.append((r, sgn, cv, cl))
    return rows


def cmd_bps(args, parser):
    if args.r_max < 0:
        parser.error("r-max must be >= 0")
    tau = args.framing_int
    if args.knot == "unknot":
        rows = _unknot_bps_rows(tau, args.r_max, args.source)
        mcol = "m"
    elif args.knot == "twist":
        if args.p is None:
            parser.error("twist knot needs --p")
        rows = _twist_bps_rows(args.p, tau, args.r_max, args.source)
        mcol = "sign"
    else:
        parser.error(f"unknown knot {args.knot!r}")
    if args.source == "both":
        for r, m, cv, cl in rows:
            if cv != cl:
                raise MismatchDetected((args.knot, r, m, cv, cl))
    header = ["r", mcol]
    if args.source in ("curve", "both"):
        header.append("b_curve")
    if args.source in ("closed", "both"):
        header.append("b_closed")
    if args.source == "both":
        header.append("match")

    def row_cells(row):
        r, m, cv, cl = row
        cells = [str(r), str(m)]
        if args.source in ("curve", "both"):
            cells.append(str(cv))
        if args.source in ("closed", "both"):
            cells.append(str(cl))
        if args.source == "both":
            cells.append("yes")
        return cells

    if args.format == "json":
        doc = {"knot": args.knot, "framing": tau, "source": args.source,
               "r_max": args.r_max,
               "rows": [dict(zip(header, row_cells(row))) for row in rows]}
        if args.knot == "twist":
            doc["p"] = args.p
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(row_cells(row)))
    else:
        lines = [header] + [row_cells(row) for row in rows]
        widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
        for line in lines:
            print(" ".join(s.rjust(w) for s, w in zip(line, widths)))
    return 0


def cmd_series(args, parser):
    if args.knot == "twist":
        if args.p is None:
            parser.error("twist knot needs --p")
        knot = ("twist", args.p)
    else:
        knot = "unknot"
    curve = make_curve(knot, args.kind, args.framing_int)
    nf = normalize(curve, args.order)
    gamma = lagrange_log_y(nf, args.order)
    assert gamma == newton_series_solve(curve, args.order), \
        "solver disagreement"
    entries = sorted(gamma.coefficients.items())
    if args.format == "json":
        doc = {"knot": args.knot, "kind": args.kind, "framing": args.framing_int,
               "order": args.order,
               "curve": [{"x": xd, "y": yd, "a2": da, "c": fmt_coeff(c)}
                         for (xd, yd, da), c in sorted(curve.source.items())],
               "x_rescale": {"sigma": nf.sigma, "a2": nf.e},
               "gamma": [{"r": r, "m2": m, "c": fmt_coeff(c)}
                         for (r, m), c in entries]}
        if args.knot == "twist":
            doc["p"] = args.p
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print("r,m2,gamma")
        for (r, m), c in entries:
            print(f"{r},{m},{fmt_coeff(c)}")
    else:
        terms = " + ".join(
            "*".join(filter(None, [fmt_coeff(c),
                                   f"x^{xd}" if xd else "",
                                   f"y^{yd}" if yd else "",
                                   (f"a^({fmt_half(da)})" if da % 2
                                    else f"a^{da // 2}") if da else ""]))
            for (xd, yd, da), c in sorted(curve.source.items()))
        print(f"curve knot={knot} kind={args.kind} framing={args.framing_int}: {terms}")
        print(f"normal form: X = sigma*a^(e/2)*x, sigma={nf.sigma}, e={nf.e}, "
              f"{nf.y_substitution}")
        print("x*d/dx log y(x):")
        print(f"{'r':>3} {'m':>6} gamma")
        for (r, m), c in entries:
            print(f"{r:>3} {fmt_half(m):>6} {fmt_coeff(c)}")
    return 0


# --------------------------------------------------------------------------
# verify suites


def load_golden():
    """Golden tables from package data: list of (name, spec dict, entries)."""
    out = []
    root = resources.files("framedbps").joinpath("golden")
    for res in sorted(root.iterdir(), key=lambda r: r.name):
        if not res.name.endswith(".csv"):
            continue
        meta, entries = None, {}
        for line in res.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                fields = dict(kv.split("=") for kv in line[1:].split())
                meta = {"link": fields["link"],
                        "colors": parse_int_vector(fields["colors"]),
                        "framings": parse_int_vector(fields["framings"])}
            elif line[0].isdigit() or line[0] == "-":
                i2, j2, n = line.split(",")
                entries[(int(i2), int(j2))] = int(n)
        assert meta is not None, f"golden file {res.name} lacks metadata"
        out.append((res.name[:-4], meta, entries))
    return out


def verify_tables(args):
    failures = 0
    golden = load_golden()
    for name, meta, want in golden:
        table = ov_table(meta["link"], meta["colors"], meta["framings"])
        ok = table.entries == want
        extra = ""
        if ok and not strong_integrality_check(table):
            ok, extra = False, " (parity violation)"
        if ok:
            bps_list(table)  # row-sum / q=1 cross-check asserts internally
        print(f"table {name} link={meta['link']} colors={meta['colors']} "
              f"framings={meta['framings']}: {'PASS' if ok else 'FAIL' + extra}")
        failures += 0 if ok else 1
    total = len(golden)
    print(f"{total - failures}/{total} tables pass")
    return failures


def verify_integrality(args):
    lo, hi = (int(x) for x in args.t_range.split(":"))
    failures = 0
    for r in range(1, args.r_max + 1):
        bad = []
        for t in range(lo, hi + 1):
            value, ok = integrality_statistic(r, t)
            if not ok:
                bad.append((t, value))
        if bad:
            failures += len(bad)
            print(f"r={r}: FAIL at {bad}")
        else:
            print(f"r={r}: t={lo}..{hi} all integer")
    print(f"integrality statistic: {'all pass' if not failures else f'{failures} failures'}")
    return failures


def verify_recursion(args):
    failures = 0
    for tau in range(-args.tau_max, args.tau_max + 1):
        try:
            check_unknot_recursion(tau, args.n_max)
            print(f"tau={tau}: recursion holds for n<{args.n_max}")
        except Exception as exc:
            failures += 1
            print(f"tau={tau}: FAIL ({exc})")
    print(f"recursion: {'all pass' if not failures else f'{failures} failures'}")
    return failures


def verify_symmetry(args):
    cases = [((2, 2), (0, 1)), ((2, 2), (1, 0)), ((2, 3), (0, 1)),
             ((1, 2), (1, -1)), ((2, 3), (-1, 2))]
    failures = 0
    for colors, taus in cases:
        t1 = ov_table("whitehead", colors, taus)
        t2 = ov_table("whitehead", colors[::-1], taus[::-1])
        ok = t1.entries == t2.entries
        print(f"swap colors={colors} framings={taus}: {'PASS' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    golden = {name: entries for name, _, entries in load_golden()}
    ok = (ov_table("whitehead", (2, 2), (0, 1)).entries == golden["w22_f01"]
          == golden["w22_f10"])
    print(f"swapped-framing golden pair w22_f01 == w22_f10: {'PASS' if ok else 'FAIL'}")
    failures += 0 if ok else 1
    print(f"symmetry: {'all pass' if not failures else f'{failures} failures'}")
    return failures


def cmd_verify(args, parser):
    suite = {"tables": verify_tables, "integrality": verify_integrality,
             "recursion": verify_recursion, "symmetry": verify_symmetry}[args.suite]
    failures = suite(args)
    return 0 if failures == 0 else 1


# --------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="framedbps",
        description="Framed colored HOMFLYPT invariants, integer tables, and "
                    "BPS invariants from exact symbolic pipelines.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("ascii", "json", "csv"),
                       default="ascii")

    p_h = sub.add_parser("homfly", help="framed colored invariant as exact ratio")
    p_h.add_argument("--link", required=True,
                     choices=("unknot", "whitehead", "borromean", "twist"))
    p_h.add_argument("--colors", required=True, metavar="R1,R2,...")
    p_h.add_argument("--framing", required=True, metavar="T1,T2,...")
    p_h.add_argument("--p", type=int, default=None)
    add_format(p_h)
    p_h.set_defaults(func=cmd_homfly)

    p_t = sub.add_parser("ov-table", help="integer invariant table")
    p_t.add_argument("--link", required=True,
                     choices=("unknot", "whitehead", "borromean", "twist"))
    p_t.add_argument("--colors", required=True, metavar="R1,R2,...")
    p_t.add_argument("--framing", required=True, metavar="T1,T2,...")
    p_t.add_argument("--p", type=int, default=None)
    add_format(p_t)
    p_t.set_defaults(func=cmd_ov_table)

    p_b = sub.add_parser("bps", help="BPS invariants of framed knots")
    p_b.add_argument("--knot", required=True, choices=("unknot", "twist"))
    p_b.add_argument("--p", type=int, default=None)
    p_b.add_argument("--framing", dest="framing_int", type=int, default=0)
    p_b.add_argument("--source", choices=("curve", "closed", "both"),
                     default="both")
    p_b.add_argument("--r-max", dest="r_max", type=int, default=6)
    add_format(p_b)
    p_b.set_defaults(func=cmd_bps)

    p_s = sub.add_parser("series", help="curve normal form and log-derivative series")
    p_s.add_argument("--knot", required=True, choices=("unknot", "twist"))
    p_s.add_argument("--p", type=int, default=None)
    p_s.add_argument("--kind", choices=KINDS, default=KIND_FULL)
    p_s.add_argument("--framing", dest="framing_int", type=int, default=0)
    p_s.add_argument("--order", type=int, default=8)
    add_format(p_s)
    p_s.set_defaults(func=cmd_series)

    p_v = sub.add_parser("verify", help="run a verification suite")
    p_v.add_argument("suite", choices=("tables", "integrality", "recursion",
                                       "symmetry"))
    p_v.add_argument("--r-max", dest="r_max", type=int, default=30)
    p_v.add_argument("--t-range", dest="t_range", default="-10:10")
    p_v.add_argument("--tau-max", dest="tau_max", type=int, default=5)
    p_v.add_argument("--n-max", dest="n_max", type=int, default=12)
    p_v.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = ("--colors", "--framing", "--p", "--t-range", "--r-max",
                "--tau-max", "--n-max", "--order")


def _merge_negative_values(argv):
    """Glue flag values that start with a minus ("-1,0", "-10:10") onto their
    flag with '=' so argparse does not mistake them for options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if (tok in _VALUE_FLAGS and len(nxt) > 1 and nxt[0] == "-"
                and nxt[1].isdigit()):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    try:
        return args.func(args, parser)
    except MismatchDetected as exc:
        print(f"error: MismatchDetected: {exc.args[0]}", file=sys.stderr)
        return 1
    except Exception as exc:  # domain errors -> diagnostic, nonzero exit
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
