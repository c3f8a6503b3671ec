"""Command-line front end.

Prints JSON by default (rationals as "p/q" strings) or ``key: value`` lines
with ``--text``. Exit codes: 0 success, 1 usage error, 2 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from . import __version__
from .analytic import barnes_zeta_lemma, to_mpf, zak_product_check
from .audit import run_audit
from .barnes import bernoulli_barnes, bernoulli_barnes_grouped, delta_determinant, delta_matrix, dety_reconstruct
from .density import density_mod
from .oracle import PartitionSpec, count_series, expand_ak
from .quasipoly import ConsistencyError, build_quasipolynomial, count_closed_form
from .waves import decompose_waves, polynomial_part_teo4, polynomial_part_teo5

USAGE_ERROR = 1
CONSISTENCY_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE_ERROR)


def _positive_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"all entries must be >= 1, got {text!r}")
    return values


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _real(text: str) -> str:
    try:
        if float(Fraction(text)) <= 0:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return text


def _real_list(text: str) -> list[str]:
    return [_real(v) for v in text.split(",")]


def _q(x) -> str:
    return str(x)


def _rows(qp) -> list[list[str]]:
    return [[_q(c) for c in row] for row in qp.coeffs]


def cmd_count(args, spec):
    out = {}
    if args.n is not None:
        oracle = count_series(spec, args.n).values[args.n]
        closed = count_closed_form(spec, args.n)
        if closed != oracle:
            raise ConsistencyError(f"closed form {closed} != oracle {oracle} at n={args.n}")
        out["value"] = _q(oracle)
    if args.series is not None:
        out["series"] = [_q(v) for v in count_series(spec, args.series).values]
    if not out:
        raise UsageError("count needs --n and/or --series")
    return out


def cmd_coeffs(args, spec):
    qp = build_quasipolynomial(spec, "teo1", literal=args.literal)
    return {
        "period": qp.period,
        "degree": qp.deg,
        "literal": args.literal,
        "coefficients": _rows(qp),
    }


def cmd_polypart(args, spec):
    out = {"method": args.method}
    results = {}
    if args.method in ("teo4", "both"):
        results["teo4"] = polynomial_part_teo4(spec)
    if args.method in ("teo5", "both"):
        results["teo5"] = polynomial_part_teo5(spec)
    for key, coeffs in results.items():
        out[key] = [_q(c) for c in coeffs]
    if args.method == "both":
        out["agree"] = results["teo4"] == results["teo5"]
        if not out["agree"]:
            raise ConsistencyError("polynomial-part formulas disagree")
    return out


def cmd_waves(args, spec):
    ws = decompose_waves(spec)
    n_check = 2 * spec.D if args.n_check is None else args.n_check
    counts = count_series(spec, max(n_check, 1)).values
    bad = [n for n in range(n_check) if ws.total(n) != counts[n]]
    if bad:
        raise ConsistencyError(f"wave sum differs from the count at n={bad[0]}")
    return {
        "indices": ws.indices,
        "waves": {str(j): _rows(ws.waves[j]) for j in ws.indices},
        "n_check": n_check,
        "sum_matches_count": True,
    }


def cmd_bbnum(args, spec):
    direct = bernoulli_barnes(expand_ak(spec), args.j)
    grouped = bernoulli_barnes_grouped(spec, args.j)
    if direct != grouped:
        raise ConsistencyError(f"grouped Bernoulli-Barnes {grouped} != direct {direct}")
    return {"a_k": list(expand_ak(spec)), "j": args.j, "value": _q(direct)}


def cmd_delta(args, spec):
    out = {"size": delta_matrix(spec).rows, "delta": _q(delta_determinant(spec))}
    if args.system:
        out["system"] = dety_reconstruct(spec).as_dict()
    return out


def cmd_density(args, spec):
    res = density_mod(spec, args.mod, args.N)
    return {
        "density": _q(res.density),
        "bound": _q(res.bound),
        "violation": res.violation,
        "hits": res.hits,
        "N": res.N,
        "mod": res.m,
        "density_per_n": None if res.density_per_n is None else _q(res.density_per_n),
    }


def cmd_zeta(args, spec):
    s = args.s if args.s is not None else str(spec.r + 2)
    if to_mpf(s) <= spec.r:
        raise UsageError(f"--s must exceed r = {spec.r}")
    ws = args.w if args.w is not None else ["1"] * spec.k
    if len(ws) != spec.k:
        raise UsageError(f"--w needs exactly k = {spec.k} values, got {len(ws)}")
    factors = [barnes_zeta_lemma(spec.a, s, w, args.tol / 1000) for w in ws]
    entries = zak_product_check(spec, s, ws, args.cutoff, args.tol)
    return {
        "s": s,
        "w": ws,
        "barnes_zeta": [mpmath.nstr(f, 15) for f in factors],
        "entries": entries,
    }


def cmd_audit(args, spec):
    options = {"cutoff": args.cutoff, "N": args.N, "tol": args.tol}
    if args.s is not None:
        options["s"] = args.s
    return run_audit(spec, **options)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multipartition", description="Restricted k-multipartition function toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--a", type=_positive_list, required=True, help="parts, e.g. 1,2,3")
        p.add_argument("--k", type=_positive_int, default=1, help="multiplicity (default 1)")
        p.add_argument("--text", action="store_true", help="plain text instead of JSON")
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "p_{a,k}(n) and/or the series up to N_MAX")
    p.add_argument("--n", type=_nonneg_int)
    p.add_argument("--series", type=_nonneg_int, metavar="N_MAX")

    p = add("coeffs", cmd_coeffs, "quasi-polynomial coefficient table")
    p.add_argument("--literal", action="store_true", help="use the printed C(k, m) binomial")

    p = add("polypart", cmd_polypart, "polynomial part")
    p.add_argument("--method", choices=("teo4", "teo5", "both"), default="both")

    p = add("waves", cmd_waves, "Sylvester wave decomposition")
    p.add_argument("--n-check", type=_nonneg_int, default=None, help="check the wave sum for n < this (default 2D)")

    p = add("bbnum", cmd_bbnum, "Bernoulli-Barnes number B_j(a[k])")
    p.add_argument("--j", type=_nonneg_int, required=True)

    p = add("delta", cmd_delta, "Delta(r, k, D) determinant")
    p.add_argument("--system", action="store_true", help="also solve the reconstruction system")

    p = add("density", cmd_density, "density of n with p_{a,k}(n) != 0 mod m")
    p.add_argument("--mod", type=_positive_int, required=True)
    p.add_argument("--N", type=_nonneg_int, default=10_000)

    p = add("zeta", cmd_zeta, "Barnes zeta product checks")
    p.add_argument("--s", type=_real, default=None, help="real s > r (default r + 2)")
    p.add_argument("--w", type=_real_list, default=None, help="k positive shifts (default all 1)")
    p.add_argument("--cutoff", type=_positive_int, default=2000)
    p.add_argument("--tol", type=float, default=1e-6)

    p = add("audit", cmd_audit, "run the full formula audit")
    p.add_argument("--s", type=_real, default=None)
    p.add_argument("--cutoff", type=_positive_int, default=2000)
    p.add_argument("--N", type=_nonneg_int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-6)
    return parser


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from _text_lines(value, f"{prefix}{key}." if isinstance(value, (dict, list)) else f"{prefix}{key}")
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, value in enumerate(obj):
            yield from _text_lines(value, f"{prefix}{i}.")
    else:
        label = prefix.rstrip(".")
        value = " ".join(map(str, obj)) if isinstance(obj, list) else obj
        if isinstance(value, bool):
            value = str(value).lower()
        yield f"{label}: {value}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "density" and args.mod < 2:
        parser.error("argument --mod: must be >= 2")
    try:
        spec = PartitionSpec(args.a, args.k)
        result = args.func(args, spec)
    except UsageError as exc:
        parser.error(str(exc))
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return CONSISTENCY_ERROR
    if args.text:
        for line in _text_lines(result):
            print(line)
    else:
        print(json.dumps(result, separators=(",", ":")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
