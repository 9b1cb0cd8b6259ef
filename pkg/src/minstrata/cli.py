"""Command line interface.

Subcommands: ag, residues, euler, components, verify, asymptotics.  Machine
output is JSON by default (csv and aligned tables are available where the
output is tabular); every numeric value is rendered as a "p/q" string in
lowest terms, so output is exact and byte-identical across runs.  Timing
information goes to stderr only.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction

from . import combinat, eulerchar, intersect, residues, series
from .series import decimal_string, format_rational

SCHEMA_VERSION = "1"


def _rat(x) -> str:
    return format_rational(x)


def _parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise ValueError("expected a comma-separated integer list, got %r" % text)


def _emit_json(record) -> None:
    sys.stdout.write(json.dumps(record, indent=2) + "\n")


def _emit_rows(rows: list, columns: list, fmt: str) -> None:
    """Render a list of row dicts as json, csv or an aligned table."""
    if fmt == "json":
        _emit_json({"schema_version": SCHEMA_VERSION, "rows": rows})
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
        return
    if fmt == "table":
        widths = [
            max(len(col), max((len(str(row[col])) for row in rows), default=0))
            for col in columns
        ]
        header = "  ".join(col.ljust(w) for col, w in zip(columns, widths))
        sys.stdout.write(header.rstrip() + "\n")
        for row in rows:
            line = "  ".join(str(row[col]).ljust(w) for col, w in zip(columns, widths))
            sys.stdout.write(line.rstrip() + "\n")
        return
    raise ValueError("unknown format %r" % fmt)


def cmd_ag(args) -> int:
    marks = _parse_int_list(args.marks)
    sig = intersect.Signature(args.genus, marks)
    value = (
        intersect.psi_top_spin(args.genus, marks)
        if args.spin
        else intersect.psi_top(args.genus, marks)
    )
    _emit_json(
        {
            "schema_version": SCHEMA_VERSION,
            "genus": str(args.genus),
            "marks": [_rat(m) for m in sig.marks],
            "spin": args.spin,
            "k": _rat(sig.k),
            "value": _rat(value),
        }
    )
    return 0


def cmd_residues(args) -> int:
    poles = _parse_int_list(args.poles)
    sig = residues.ResidueSignature(
        args.genus, args.zero, poles, args.conditions, args.spin
    )
    value = residues.a_res(sig, args.method)
    _emit_json(
        {
            "schema_version": SCHEMA_VERSION,
            "genus": str(args.genus),
            "zero": str(args.zero),
            "poles": [str(p) for p in poles],
            "conditions": str(args.conditions),
            "spin": args.spin,
            "method": args.method,
            "value": _rat(value),
        }
    )
    return 0


_EULER_COLUMNS = [
    "genus",
    "chi_total",
    "chi_spin",
    "chi_even",
    "chi_odd",
    "chi_hyp",
    "hyp_parity",
    "chi_nonhyp_even",
    "chi_nonhyp_odd",
]


def _euler_row(result) -> dict:
    return {
        "genus": str(result.genus),
        "chi_total": _rat(result.chi_total),
        "chi_spin": _rat(result.chi_spin),
        "chi_even": _rat(result.chi_even),
        "chi_odd": _rat(result.chi_odd),
        "chi_hyp": _rat(result.chi_hyp),
        "hyp_parity": result.hyp_parity,
        "chi_nonhyp_even": (
            "" if result.chi_nonhyp_even is None else _rat(result.chi_nonhyp_even)
        ),
        "chi_nonhyp_odd": (
            "" if result.chi_nonhyp_odd is None else _rat(result.chi_nonhyp_odd)
        ),
    }


def cmd_euler(args) -> int:
    if args.min_genus < 1 or args.max_genus < args.min_genus:
        raise ValueError("need 1 <= min-genus <= max-genus")
    rows = [
        _euler_row(eulerchar.components(g, args.route))
        for g in range(args.min_genus, args.max_genus + 1)
    ]
    _emit_rows(rows, _EULER_COLUMNS, args.format)
    return 0


def cmd_components(args) -> int:
    _emit_rows([_euler_row(eulerchar.components(args.genus, args.route))],
               _EULER_COLUMNS, args.format)
    return 0


def cmd_asymptotics(args) -> int:
    rows = []
    for r in eulerchar.asymptotic_report(args.max_genus):
        rows.append(
            {
                "genus": str(r.genus),
                "chi": _rat(r.chi),
                "chi_spin": _rat(r.chi_spin),
                "chi_decimal": decimal_string(r.chi, args.digits),
                "chi_spin_decimal": decimal_string(r.chi_spin, args.digits),
                "ratio_over_4_decimal": decimal_string(r.ratio_over_4, args.digits),
                "ratio_over_3_decimal": decimal_string(r.ratio_over_3, args.digits),
                "spin_ratio_g_decimal": decimal_string(r.spin_ratio_g, args.digits),
                "spin_ratio_g2_decimal": decimal_string(r.spin_ratio_g2, args.digits),
                "chi_negative": r.chi < 0,
                "chi_spin_positive": r.chi_spin > 0,
            }
        )
    columns = list(rows[0].keys()) if rows else []
    if args.format in ("csv", "table"):
        for row in rows:
            row["chi_negative"] = str(row["chi_negative"]).lower()
            row["chi_spin_positive"] = str(row["chi_spin_positive"]).lower()
    _emit_rows(rows, columns, args.format)
    return 0


# ---------------------------------------------------------------------------
# verification suites


class _Suite:
    """Accumulates named check outcomes with deterministic failure order."""

    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures = []

    def check(self, ok: bool, key: tuple, expected="pass", actual="fail"):
        self.cases += 1
        if not ok:
            self.failures.append(
                {
                    "check": key[0],
                    "inputs": [str(k) for k in key[1:]],
                    "expected": str(expected),
                    "actual": str(actual),
                }
            )

    def report(self, seed) -> dict:
        failures = sorted(
            self.failures, key=lambda f: (f["check"], f["inputs"])
        )
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.name,
            "seed": str(seed),
            "cases": str(self.cases),
            "failures": failures,
            "passed": not failures,
        }


def _random_marks(rng, n: int, bound: int = 9, even: bool = False) -> tuple:
    if even:
        return tuple(2 * rng.randint(-(bound // 2), bound // 2) for _ in range(n))
    return tuple(rng.randint(-bound, bound) for _ in range(n))


def _random_splitting_sig(rng, max_genus: int, even: bool):
    """A signature whose extended average weight is a small integer >= 0."""
    while True:
        g = rng.randint(1, max_genus)
        n = rng.randint(1, 5)
        k = rng.choice((0, 2, 4) if even else (0, 1, 2, 3))
        rest = _random_marks(rng, n - 1, even=even)
        a1 = k * (2 * g - 2 + n + 1) - sum(rest)
        if abs(a1) <= 9 and (not even or a1 % 2 == 0):
            return g, (a1,) + rest


def _random_zero_sum_sig(rng, max_genus: int, even: bool):
    while True:
        g = rng.randint(1, max_genus)
        n = rng.randint(1, 6)
        if 2 * g - 2 + n <= 0:
            continue
        rest = _random_marks(rng, n - 1, even=even)
        a1 = -sum(rest)
        if abs(a1) <= 9:
            return g, (a1,) + rest


def _suite_identities(suite: _Suite, rng, args) -> None:
    maxg = args.max_genus or 4
    samples = args.samples or 200
    for _ in range(samples):
        g = rng.randint(1, maxg)
        n = rng.randint(1, 6)
        marks = _random_marks(rng, n)
        suite.check(
            intersect.check_forgetful(g, marks), ("forgetful", g, marks)
        )
    for _ in range(samples):
        g, marks = _random_splitting_sig(rng, maxg, even=False)
        suite.check(intersect.check_splitting(g, marks), ("splitting", g, marks))
    for _ in range(max(100, samples // 2)):
        g, marks = _random_zero_sum_sig(rng, maxg, even=False)
        suite.check(intersect.check_k0(g, marks), ("k0", g, marks))
    # genus 1 closed-form cross-checks
    for _ in range(100):
        n = rng.randint(1, 6)
        marks = _random_marks(rng, n)
        suite.check(
            intersect.psi_top(1, marks) == intersect.a1_reference(marks),
            ("g1-reference", marks),
        )
    for _ in range(100):
        n = rng.randint(1, 6)
        while True:
            rest = tuple(2 * rng.randint(-4, 4) + 1 for _ in range(n - 1))
            kk = 2 * rng.randint(-2, 2) + 1
            a1 = kk * n - sum(rest)
            if abs(a1) <= 11 and a1 % 2:
                break
        marks = (a1,) + rest
        suite.check(
            intersect.psi_top_spin(1, marks) == intersect.a1_spin_reference(marks),
            ("g1-spin-reference", marks),
        )


def _suite_spin_identities(suite: _Suite, rng, args) -> None:
    maxg = args.max_genus or 3
    samples = args.samples or 100
    for _ in range(samples):
        g = rng.randint(1, maxg)
        n = rng.randint(1, 6)
        marks = _random_marks(rng, n, bound=8, even=True)
        suite.check(
            intersect.check_forgetful(g, marks, spin=True),
            ("forgetful-spin", g, marks),
        )
    for _ in range(samples):
        g, marks = _random_splitting_sig(rng, maxg, even=True)
        suite.check(
            intersect.check_spin_splitting(g, marks), ("spin-splitting", g, marks)
        )
    for _ in range(samples):
        g, marks = _random_zero_sum_sig(rng, maxg, even=True)
        ok, correction = intersect.check_spin_k0(g, marks)
        suite.check(ok, ("spin-k0", g, marks))
        suite.check(
            correction == 0,
            ("spin-k0-correction", g, marks),
            expected="0",
            actual=_rat(correction),
        )


def _suite_residues(suite: _Suite, rng, args) -> None:
    samples = args.samples or 100
    for _ in range(samples):
        n = rng.randint(2, 7)
        m = rng.randint(0, n - 2)
        poles = tuple(-rng.randint(1, 5) for _ in range(n))
        zero_order = -1 + n - sum(poles)
        sig = residues.ResidueSignature(0, zero_order, poles, m)
        suite.check(
            residues.a_res(sig, "recursion") == residues.a_res(sig, "genus0"),
            ("genus0-vs-recursion", sig.zero_order, poles, m),
        )
    maxg = min(args.max_genus or 3, 3)
    import itertools

    for g in range(0, maxg + 1):
        for n in range(1, 5):
            for poles in itertools.product(range(-5, 0), repeat=n):
                zero_order = 2 * g - 1 + n - sum(poles)
                sig = residues.ResidueSignature(g, zero_order, poles, n - 1)
                suite.check(
                    residues.a_res(sig, "recursion") == residues.a_res(sig, "treesum"),
                    ("treesum-vs-recursion", g, zero_order, poles),
                )
    # relabelling the poles must not change the value
    for _ in range(20):
        g = rng.randint(1, 2)
        n = rng.randint(2, 4)
        poles = tuple(-rng.randint(1, 4) for _ in range(n))
        zero_order = 2 * g - 1 + n - sum(poles)
        shuffled = list(poles)
        rng.shuffle(shuffled)
        a = residues.a_res(residues.ResidueSignature(g, zero_order, poles, n - 1))
        b = residues.a_res(
            residues.ResidueSignature(g, zero_order, tuple(shuffled), n - 1)
        )
        suite.check(a == b, ("label-symmetry", g, zero_order, poles, tuple(shuffled)))


def _suite_euler_crossroutes(suite: _Suite, rng, args) -> None:
    maxg = args.max_genus or 8
    for g in range(1, maxg + 1):
        genfun = eulerchar.chi_min(g, "genfun")
        suite.check(
            genfun == eulerchar.chi_min(g, "partition"),
            ("chi-genfun-vs-partition", g),
        )
        suite.check(
            eulerchar.chi_min_spin(g, "genfun")
            == eulerchar.chi_min_spin(g, "partition"),
            ("chi-spin-genfun-vs-partition", g),
        )
        if g <= 6:
            suite.check(
                genfun == eulerchar.chi_min(g, "levelgraph"),
                ("chi-genfun-vs-levelgraph", g),
            )


def _suite_series_identities(suite: _Suite, rng, args) -> None:
    k_max = args.k_max or 15
    order = args.order or 30
    report = series.verify_sinh_identities(k_max, order)
    suite.cases += report.cases - len(report.failures)
    for failure in report.failures:
        suite.check(False, ("sinh-identity",) + failure)
    bs = series.b_sequence(2)
    suite.check(bs[0] == Fraction(-1, 24), ("b1",), "-1/24", _rat(bs[0]))
    suite.check(bs[1] == Fraction(7, 5760), ("b2",), "7/5760", _rat(bs[1]))
    # ring laws on random truncations
    T = 8
    for i in range(20):
        a, b, c = (
            series.TruncSeries(
                [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(T + 1)]
            )
            for _ in range(3)
        )
        suite.check((a * b) * c == a * (b * c), ("mul-associative", i))
        suite.check(a * (b + c) == a * b + a * c, ("mul-distributive", i))
        if a.coeff(0) != 0:
            suite.check(
                a * a.inverse() == series.one(T), ("inverse", i)
            )
        za = a - series.monomial(0, T, a.coeff(0))
        zb = b - series.monomial(0, T, b.coeff(0))
        suite.check(
            (za + zb).exp_zero_const() == za.exp_zero_const() * zb.exp_zero_const(),
            ("exp-additive", i),
        )
        suite.check(
            (a * b).derivative() == a.derivative() * b.truncate(T - 1)
            + a.truncate(T - 1) * b.derivative(),
            ("leibniz", i),
        )


def _suite_appendix(suite: _Suite, rng, args) -> None:
    f_max = args.f_max or 5
    c_max = args.c_max or 40
    report = combinat.verify_sf_odd(f_max, c_max)
    suite.cases += report.cases - len(report.failures)
    for failure in report.failures:
        suite.check(False, ("sf-odd",) + failure)
    # closed extrapolation cases for small tuple lengths
    suite.check(
        combinat.odd_sum_extrapolate(lambda j: Fraction(j), 1, 1) == 0,
        ("extrapolate-m1",),
    )
    suite.check(
        combinat.odd_sum_extrapolate(lambda j, l: Fraction(1), 2, 1) == 0,
        ("extrapolate-m2",),
    )
    suite.check(
        combinat.odd_sum_extrapolate(lambda j, l, m: Fraction(1), 3, 2)
        == Fraction(-1, 8),
        ("extrapolate-m3",),
    )
    # extrapolation must reproduce the samples and ignore extra samples
    def ev(j, l):
        return Fraction(j * j * l)

    base = combinat.odd_sum_extrapolate(ev, 2, 3)
    again = combinat.odd_sum_extrapolate(ev, 2, 5)
    suite.check(base == again, ("extrapolate-stability",))


def _suite_regrouping(suite: _Suite, rng, args) -> None:
    maxg = args.max_genus or 10
    report = eulerchar.verify_regrouping(maxg)
    suite.cases += report.cases - len(report.failures)
    for failure in report.failures:
        suite.check(False, ("regrouping",) + failure)
    eta = eulerchar.eta_sequence(2)
    suite.check(eta.a[0] == Fraction(-1, 24), ("a1",), "-1/24", _rat(eta.a[0]))
    suite.check(eta.a[1] == Fraction(1, 640), ("a2",), "1/640", _rat(eta.a[1]))
    suite.check(
        eta.a_spin[0] == Fraction(1, 24), ("a1-spin",), "1/24", _rat(eta.a_spin[0])
    )


_SUITES = {
    "identities": _suite_identities,
    "spin-identities": _suite_spin_identities,
    "residues": _suite_residues,
    "euler-crossroutes": _suite_euler_crossroutes,
    "series-identities": _suite_series_identities,
    "appendix": _suite_appendix,
    "regrouping": _suite_regrouping,
}


def cmd_verify(args) -> int:
    start = time.monotonic()
    suite = _Suite(args.suite)
    rng = random.Random(args.seed)
    _SUITES[args.suite](suite, rng, args)
    report = suite.report(args.seed)
    _emit_json(report)
    sys.stderr.write(
        "suite %s: %s cases in %.3f s\n"
        % (args.suite, report["cases"], time.monotonic() - start)
    )
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minstrata",
        description="Exact top psi integrals on twisted DR cycles and Euler"
        " characteristics of minimal strata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ag", help="evaluate a top psi integral")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--marks", required=True, help="comma-separated integers")
    p.add_argument("--spin", action="store_true")
    p.set_defaults(func=cmd_ag)

    p = sub.add_parser("residues", help="integrals with residue conditions")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--zero", type=int, required=True)
    p.add_argument("--poles", required=True, help="comma-separated negative integers")
    p.add_argument("--conditions", type=int, required=True)
    p.add_argument(
        "--method", choices=("recursion", "treesum", "genus0"), default="recursion"
    )
    p.add_argument("--spin", action="store_true")
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("euler", help="Euler characteristics over a genus range")
    p.add_argument("--min-genus", type=int, default=1)
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument(
        "--route", choices=("genfun", "partition", "levelgraph"), default="genfun"
    )
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("components", help="component split for one genus")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument(
        "--route", choices=("genfun", "partition", "levelgraph"), default="genfun"
    )
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(_SUITES), required=True)
    p.add_argument("--max-genus", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--f-max", type=int, default=None)
    p.add_argument("--c-max", type=int, default=None)
    p.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="accepted for compatibility; evaluation is sequential",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymptotics", help="asymptotic observables table")
    p.add_argument("--max-genus", type=int, required=True)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.set_defaults(func=cmd_asymptotics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
