"""Command-line entry point: ``hilbdesc {zc2,zsurface,verify,universal}``.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 pole at
t = 1, 4 rank-deficient configuration set.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from . import __version__
from .algebra.laurent import LaurentParseError, parse_laurent
from .algebra.ratfunc import DegenerateDirection, PoleError, RatFunc
from .algebra.series import MultiSeries, SeriesError, dumps, series_to_json

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_POLE, EXIT_RANK = 0, 1, 2, 3, 4

log = logging.getLogger("hilbdesc")


class UsageError(Exception):
    pass


# config files -----------------------------------------------------------------------

def read_config(path: str) -> List[str]:
    """Flat ``key=value`` lines become ``--key value`` flags.

    ``true``/``false`` toggle switches; repeat a key to repeat a flag.
    """
    args: List[str] = []
    try:
        fh = open(path)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (x.strip() for x in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() == "true":
                args.append(flag)
            elif value.lower() == "false":
                continue
            else:
                args.extend([flag, value])
    return args


def expand_config(argv: Sequence[str]) -> List[str]:
    argv = list(argv)
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    if not rest:
        raise UsageError("a subcommand must precede --config")
    # command first, then file flags, then explicit flags (which win)
    return rest[:1] + read_config(path) + rest[1:]


# helpers ---------------------------------------------------------------------------

def parse_orders(text: str):
    try:
        parts = [int(x) for x in str(text).split(",")]
    except ValueError:
        raise UsageError(f"bad order {text!r}")
    if any(p < 0 for p in parts):
        raise UsageError("orders must be nonnegative")
    return parts[0] if len(parts) == 1 else parts


def parse_classes(text: str):
    text = text.strip()
    if not text:
        return []
    return [parse_laurent(chunk) for chunk in text.split(",")]


def _coeff_tex(c) -> str:
    if isinstance(c, RatFunc):
        num = str(c.num).replace("*", " ")
        den = str(c.den).replace("*", " ")
        return num if den == "1" else f"\\frac{{{num}}}{{{den}}}"
    return str(c) if getattr(c, "denominator", 1) == 1 else f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def latex_table(s: MultiSeries) -> str:
    head = " & ".join(s.variables) + " & coefficient \\\\"
    lines = ["\\begin{tabular}{" + "r" * len(s.variables) + "l}", head, "\\hline"]
    for e, c in s.items():
        lines.append(" & ".join(str(x) for x in e) + f" & ${_coeff_tex(c)}$ \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def emit(args, payload: dict, series: Optional[MultiSeries] = None) -> None:
    text = latex_table(series) if (getattr(args, "latex", False) and series is not None) else dumps(payload)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cache(args):
    from .macdonald import MacdonaldCache, set_default_cache

    path = getattr(args, "macdonald_cache", None)
    if path:
        cache = MacdonaldCache(path)
        set_default_cache(cache)
        return cache
    return None


# commands --------------------------------------------------------------------------

def cmd_zc2(args) -> int:
    from .hilb_c2 import zc2_linebundle, zc2_localization, zc2_macdonald

    chars = parse_classes(args.classes)
    m = parse_orders(args.mmax)
    cache = _cache(args)
    Z = zc2_localization(chars, args.qmax, m, jobs=args.jobs)
    payload = {"command": "zc2", "classes": [str(c) for c in chars], "series": series_to_json(Z)}
    code = EXIT_OK
    if args.dual_check:
        B = zc2_macdonald(chars, args.qmax, m, cache=cache)
        routes = {"macdonald": B == Z}
        if chars and chars[0].is_monomial() and list(chars[0].terms().values()) == [1]:
            routes["linebundle"] = zc2_linebundle(chars, args.qmax, m, cache=cache) == Z
        payload["dual_check"] = routes
        if not all(routes.values()):
            log.error("route mismatch: %s", routes)
            code = EXIT_FAIL
    emit(args, payload, Z)
    return code


def cmd_zsurface(args) -> int:
    from .toric.surface import parse_bundle, parse_surface
    from .toric.series import z_surface

    S = parse_surface(args.surface)
    classes = [parse_bundle(S, b) for b in (args.bundle or [])]
    m = parse_orders(args.mmax)
    Z = z_surface(S, classes, args.qmax, m if classes else 0, jobs=args.jobs)
    payload = {"command": "zsurface", "surface": S.name, "bundles": [g.label for g in classes],
               "series": series_to_json(Z)}
    emit(args, payload, Z)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .macdonald import Convention, MacdonaldCache
    from .verify import Options, run_suite

    cache = _cache(args)
    if args.convention:
        try:
            q_part, tr = args.convention.split(",")
            conv = Convention(q_part.split("=")[1], tr.split("=")[1] in ("1", "true"))
        except (ValueError, IndexError):
            raise UsageError("--convention looks like q=t2,transpose=0")
        cache = MacdonaldCache(convention=conv)
    m = parse_orders(args.mmax)
    if not isinstance(m, int):
        raise UsageError("verify takes a single total m-order")
    opts = Options(max_size=args.max_size, degree=args.degree, q_order=args.qmax, m_order=m,
                   seed=args.seed, samples=args.samples, jobs=args.jobs, cache=cache)
    checks = run_suite(args.suite, opts)
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        print(f"[{status}] {c.suite}: {c.name}" + (f"  ({c.detail})" if c.detail and not c.ok else ""),
              file=sys.stderr)
    ok = all(c.ok for c in checks)
    emit(args, {"command": "verify", "suite": args.suite, "passed": ok,
                "checks": [c.to_json() for c in checks]})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_universal(args) -> int:
    from .toric.universal import default_configs, parse_configs, universal_extract

    try:
        ranks = tuple(int(x) for x in args.ranks.split(","))
    except ValueError:
        raise UsageError(f"bad rank tuple {args.ranks!r}")
    try:
        configs = parse_configs(args.configs or default_configs(ranks))
    except ValueError as exc:
        raise UsageError(str(exc))
    U = universal_extract(ranks, configs, args.qmax, parse_orders(args.mmax), jobs=args.jobs)
    payload = {"command": "universal", **U.to_json()}
    emit(args, payload)
    return EXIT_OK if U.residual == 0 else EXIT_FAIL


# parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hilbdesc", description="Descendent series of Hilbert schemes of points.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, qdefault=6, mdefault="3"):
        sp.add_argument("--qmax", type=int, default=qdefault, help="q-truncation order")
        sp.add_argument("--mmax", default=mdefault, help="total m-order, or comma-separated per-variable orders")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--output", help="write to a file instead of stdout")
        sp.add_argument("--macdonald-cache", help="JSON file for certified H_lambda")
        sp.add_argument("--config", help="key=value file mirroring the flags")

    z = sub.add_parser("zc2", help="equivariant series on C^2")
    z.add_argument("--classes", default="", help="comma-separated Laurent characters, e.g. 't1,1+t2^-1'")
    z.add_argument("--dual-check", action="store_true", help="recompute via the Macdonald side and compare")
    z.add_argument("--latex", action="store_true")
    common(z)
    z.set_defaults(func=cmd_zc2)

    s = sub.add_parser("zsurface", help="series on a toric surface")
    s.add_argument("--surface", required=True, help="P2, P1xP1 or F<a>")
    s.add_argument("--bundle", action="append", help="O(d), O(a,b), K, or sums like sum:O(1)+O(2); repeatable")
    s.add_argument("--latex", action="store_true")
    common(s)
    s.set_defaults(func=cmd_zsurface)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", choices=["macdonald", "symmetry", "descendents", "toric", "all"])
    v.add_argument("--max-size", type=int, default=4)
    v.add_argument("--degree", type=int, default=4)
    v.add_argument("--seed", type=int, default=2024)
    v.add_argument("--samples", type=int, default=3)
    v.add_argument("--convention", help="force a Macdonald role assignment, e.g. q=t1,transpose=1")
    common(v, qdefault=5)
    v.set_defaults(func=cmd_verify)

    u = sub.add_parser("universal", help="extract universal series")
    u.add_argument("--ranks", default="1", help="comma-separated ranks, e.g. 1 or 1,1")
    u.add_argument("--configs", nargs="+", help="SURFACE:BUNDLE[;BUNDLE...] entries")
    common(u, qdefault=3)
    u.set_defaults(func=cmd_universal)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .toric.surface import SurfaceError
    from .toric.universal import RankDeficiency

    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = expand_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "qmax", 0) < 0 or getattr(args, "jobs", 1) < 1:
        print("error: --qmax must be >= 0 and --jobs >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (UsageError, LaurentParseError, SurfaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PoleError, DegenerateDirection) as exc:
        print(f"pole: {exc}", file=sys.stderr)
        return EXIT_POLE
    except RankDeficiency as exc:
        print(f"rank deficiency: {exc}", file=sys.stderr)
        return EXIT_RANK
    except SeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
