"""Command line entry point.

One-off evaluations (``intersect``, ``hurwitz``, ``chiodo``, ``tr``),
verification campaigns (``verify``), and cache administration (``cache``).
Campaign settings may come from a key=value config file; command-line
flags override it. Exit status: 0 all comparisons passed, 1 some row
failed, 2 configuration or resource error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from mpmath import mp

from .campaigns import (
    CHECK_IDS,
    CampaignConfig,
    CheckReport,
    monotone_lhs,
    reports_to_json,
    rows_to_csv,
)
from .chiodo import chiodo_integral_elsv
from .errors import ElsvKitError
from .exactnum import DEFAULT_PRECISION, to_mpf, working_precision
from .hurwitz import hurwitz_number
from .psi_kappa import (
    cache_clear,
    cache_flush,
    cache_load,
    cache_stats,
    kappa_psi_intersection,
)
from .spectral_tr import (
    branch_exponent,
    closed_form_N,
    curve_monotone,
    curve_srs,
    extract_coefficients,
)

CACHE_ENV = "ELSVKIT_CACHE_DIR"
CACHE_FILENAME = "psi_kappa_cache.txt"


def _fmt_rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_ints(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ElsvKitError(f"expected a comma list of integers, got {text!r}") from exc


def _cache_path(args) -> Optional[str]:
    if getattr(args, "cache", None):
        return args.cache
    base = os.environ.get(CACHE_ENV)
    return os.path.join(base, CACHE_FILENAME) if base else None


def _load_cache(args) -> Optional[str]:
    path = _cache_path(args)
    if path and os.path.exists(path):
        cache_load(path)
    return path


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_curve(name: str):
    """Curve ids: 'monotone', 'lambert', or 'srs-R-S'."""
    if name == "monotone":
        return curve_monotone()
    if name == "lambert":
        return curve_srs(1, 1)
    if name.startswith("srs-"):
        bits = name.split("-")
        if len(bits) == 3:
            return curve_srs(int(bits[1]), int(bits[2]))
    raise ElsvKitError(f"unknown curve id {name!r}; use monotone, lambert or srs-R-S")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_intersect(args) -> int:
    path = _load_cache(args)
    psis = _parse_ints(args.psi) if args.psi else []
    kappas = _parse_ints(args.kappa) if args.kappa else []
    val = kappa_psi_intersection(args.g, kappas, psis)
    print(_fmt_rat(val))
    if path:
        cache_flush(path)
    return 0


def _cmd_hurwitz(args) -> int:
    mu = _parse_ints(args.mu)
    val = hurwitz_number(args.g, mu, args.flavor, args.r)
    print(_fmt_rat(val))
    return 0


def _cmd_chiodo(args) -> int:
    path = _load_cache(args)
    lines = ["g,r,s,mu,value"]
    for text in args.mu:
        mu = tuple(_parse_ints(text))
        val = chiodo_integral_elsv(args.g, args.r, args.s, mu)
        lines.append(f"{args.g},{args.r},{args.s},{'+'.join(map(str, mu))},{_fmt_rat(val)}")
    _emit("\n".join(lines) + "\n", args.out)
    if path:
        cache_flush(path)
    return 0


def _cmd_tr(args) -> int:
    curve = _parse_curve(args.curve)
    prec = args.precision or DEFAULT_PRECISION
    table = extract_coefficients(curve, args.g, args.n, args.mu_max, precision=prec)
    lines = ["curve,g,mu,N,closed_form,abs_diff"]
    with working_precision(prec):
        for mu in sorted(table):
            val = table[mu]
            if curve.kind == "srs":
                if branch_exponent(args.g, args.n, mu, curve.r, curve.s) is None:
                    ref = None
                else:
                    ref = closed_form_N(args.g, mu, curve.r, curve.s)
            else:
                ref = monotone_lhs(args.g, mu)
            mu_text = "+".join(map(str, mu))
            if ref is None:
                lines.append(f"{args.curve},{args.g},{mu_text},{mp.nstr(val, 30)},-,-")
            else:
                diff = abs(val - to_mpf(ref))
                lines.append(
                    f"{args.curve},{args.g},{mu_text},{mp.nstr(val, 30)},"
                    f"{_fmt_rat(ref)},{mp.nstr(diff, 8)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    cfg = CampaignConfig.load(args.config) if args.config else CampaignConfig()
    if args.check:
        cfg.check = args.check
    if args.precision:
        cfg.precision = args.precision
    if args.g_max is not None:
        cfg.g_max = args.g_max
    if args.d_max is not None:
        cfg.d_max = args.d_max
    if args.r_list:
        cfg.r_list = tuple(_parse_ints(args.r_list))
    if args.cache:
        cfg.cache = args.cache
    if args.out:
        cfg.out = args.out
    if args.format:
        cfg.format = args.format
    if args.fail_fast:
        cfg.fail_fast = True
    if args.extended:
        cfg.extended = True
    if cfg.check != "all" and cfg.check not in CHECK_IDS:
        raise ElsvKitError(
            f"unknown check id {cfg.check!r}; expected all or one of "
            f"{', '.join(CHECK_IDS)}")

    cache = cfg.cache or _cache_path(args)
    if cache and os.path.exists(cache):
        cache_load(cache)
    reports = cfg.run()
    if cache:
        cache_flush(cache)

    if cfg.format == "json":
        _emit(json.dumps(reports_to_json(reports), indent=2) + "\n", cfg.out)
    else:
        _emit(rows_to_csv(reports), cfg.out)
    for rep in reports:
        print(rep.summary(), file=sys.stderr)
    return 0 if all(rep.ok for rep in reports) else 1


def _cmd_cache(args) -> int:
    path = _cache_path(args)
    if args.action == "stats":
        if path and os.path.exists(path):
            cache_load(path)
        stats = cache_stats()
        print(f"path: {path or '-'}")
        for key, val in sorted(stats.items()):
            print(f"{key}: {val}")
        return 0
    cache_clear()
    if path and os.path.exists(path):
        os.remove(path)
        print(f"removed {path}")
    else:
        print("cleared in-memory entries")
    return 0


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elsvkit",
        description="Hurwitz numbers, twisted-class integrals, and "
                    "topological-recursion coefficients, cross-checked.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help="working precision in bits (default 256)")
    common.add_argument("--cache", default=None,
                        help=f"intersection cache file (default from ${CACHE_ENV})")
    common.add_argument("--out", default=None, help="write output to this file")

    p = sub.add_parser("intersect", parents=[common],
                       help="one psi/kappa intersection number")
    p.add_argument("g", type=int)
    p.add_argument("psi", nargs="?", default="",
                   help="comma list of psi exponents")
    p.add_argument("--kappa", default="", help="comma list of kappa indices")
    p.set_defaults(fn=_cmd_intersect)

    p = sub.add_parser("hurwitz", parents=[common],
                       help="one connected Hurwitz number")
    p.add_argument("flavor", choices=["simple", "monotone", "orbifold"])
    p.add_argument("g", type=int)
    p.add_argument("mu", help="comma list, the ramification profile")
    p.add_argument("--r", type=int, default=1, help="orbifold order")
    p.set_defaults(fn=_cmd_hurwitz)

    p = sub.add_parser("chiodo", parents=[common],
                       help="twisted-class integrals with ELSV-type tails")
    p.add_argument("g", type=int)
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("mu", nargs="+", help="one or more comma lists")
    p.set_defaults(fn=_cmd_chiodo)

    p = sub.add_parser("tr", parents=[common],
                       help="correlator expansion coefficients for one curve")
    p.add_argument("curve", help="monotone, lambert, or srs-R-S")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("mu_max", type=int)
    p.set_defaults(fn=_cmd_tr)

    p = sub.add_parser("verify", parents=[common],
                       help="run a verification campaign")
    p.add_argument("check", nargs="?", default=None,
                   help=f"all or one of: {', '.join(CHECK_IDS)}")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--g-max", dest="g_max", type=int, default=None)
    p.add_argument("--d-max", dest="d_max", type=int, default=None)
    p.add_argument("--r-list", dest="r_list", default=None,
                   help="comma list of orbifold orders")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("cache", parents=[common], help="cache administration")
    p.add_argument("action", choices=["stats", "clear"])
    p.set_defaults(fn=_cmd_cache)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ElsvKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
