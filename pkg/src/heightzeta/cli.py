"""Command-line front end: ``heightzeta <group> <action> [options]``.

Every command prints one JSON report

    {"command", "params", "results": [...], "checks": [...], "timing_ms", "cache"}

to standard output (or ``--output``). Exit status is 0 on success, 1 when a
check fails and 2 on usage or domain errors.

Options may also come from a ``--config`` file of ``key = value`` lines
(keys are option names, dashes or underscores); flags on the command line win.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import arakelov, fqoracle, hirz, motivic, pcount, zclass
from .analytic import AnalyticValue
from .cache import Cache
from .errors import HeightZetaError

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


# -- argument parsing helpers ----------------------------------------------------

def parse_gram(text: str) -> arakelov.ArakelovBundle:
    """``I<k>`` for the identity of rank k, or row-major rationals ``2,1;1,1``."""
    text = text.strip()
    if text[:1] in "Ii" and text[1:].isdigit():
        return arakelov.identity_bundle(int(text[1:]))
    try:
        rows = [[Fraction(x.strip()) for x in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad Gram matrix {text!r}") from None
    return arakelov.make_bundle(rows)


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r}") from None


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


def parse_split(text: str) -> tuple[int, ...]:
    """Comma separated integers, kept in the order given."""
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad splitting type {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty splitting type")
    return out


def read_config(path: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{n}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


# -- report ------------------------------------------------------------------------

class RunReport:
    def __init__(self, command: str, params: dict):
        self.command = command
        self.params = params
        self.results: list[dict] = []
        self.checks: list[dict] = []

    def value(self, name: str, v) -> None:
        rec: dict = {"name": name}
        if isinstance(v, AnalyticValue):
            rec.update(v.as_dict())
            if not math.isfinite(rec["abs_error"]):
                rec["abs_error"] = str(rec["abs_error"])
        elif isinstance(v, Fraction):
            rec.update(value=float(v), num=v.numerator, den=v.denominator)
        elif isinstance(v, complex):
            rec["value"] = v.real if v.imag == 0 else [v.real, v.imag]
        else:
            rec["value"] = v
        self.results.append(rec)

    def check(self, name: str, ok: bool, defect) -> None:
        if isinstance(defect, Fraction):
            defect = float(defect)
        self.checks.append({"name": name, "pass": bool(ok), "defect": defect})

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def as_dict(self, timing_ms, cache_stats) -> dict:
        out = {"command": self.command, "params": self.params, "results": self.results,
               "checks": self.checks, "timing_ms": timing_ms}
        if cache_stats is not None:
            out["cache"] = cache_stats
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, arakelov.ArakelovBundle):
        return ";".join(",".join(str(x) for x in row) for row in v.base) if v.base is not None else None
    return v


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise _Usage("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


class _Usage(Exception):
    pass


# -- command bodies ---------------------------------------------------------------

def cmd_points(args, rep: RunReport, cache):
    _need(args, "gram", "bound")
    V = args.gram
    if args.action == "count":
        rep.value("count", pcount.count_points(V, args.bound, cache=cache))
    else:
        recs = pcount.enumerate_points(V, args.bound)
        rep.value("count", len(recs))
        if args.csv:
            pcount.write_csv(recs, args.csv)
            rep.value("csv", str(args.csv))
        else:
            for r in recs:
                rep.results.append({"name": "point", "value": list(r.coords),
                                    "num": r.height_sq.numerator, "den": r.height_sq.denominator})


def cmd_theta(args, rep: RunReport, cache):
    _need(args, "gram")
    V = args.gram
    if args.action == "h0":
        if args.twist:
            V = arakelov.twist(V, args.twist)
        rep.value("h0", arakelov.h0(V, args.tol))
        rep.value("phi", arakelov.phi(V, args.tol))
        rep.value("degree", V.degree)
    else:
        d = arakelov.rr_defect(V, args.tol)
        rep.value("rr_defect", d)
        rep.check("riemann_roch", abs(d) <= 1e-9, abs(d))


def cmd_zeta(args, rep: RunReport, cache):
    a = args.action
    if a == "wan":
        _need(args, "n", "s")
        d = zclass.wan_formula_defect(args.n, args.s)
        rep.value("wan_formula", zclass.wan_formula(args.n, args.s))
        rep.check("wan_formula", d <= 1e-5, d)
        return
    _need(args, "gram")
    V = args.gram
    if a == "residue":
        rep.value("residue", zclass.residue_main(V))
        return
    _need(args, "s")
    if a == "eval":
        res = zclass.continued_zeta(V, args.s, args.tol)
        rep.value("Z", res.value)
        for name, part in zip(("J(V,s)", "N(V)J(V^,r-s)", "N(V)/(s-r)", "-1/s"), res.parts):
            rep.value(name, part)
    elif a == "funceq":
        d = zclass.funceq_defect(V, args.s, args.tol)
        rep.check("functional_equation", d <= 1e-6, d)
    elif a == "partial":
        _need(args, "bound")
        rep.value("partial_sum", pcount.dirichlet_partial(V, args.s, args.bound))


def _cfg(args) -> hirz.HirzebruchConfig:
    _need(args, "e", "a", "b")
    if args.base_gram is not None:
        return hirz.HirzebruchConfig(args.e, args.a, args.b, args.base_gram.base)
    return hirz.HirzebruchConfig(args.e, args.a, args.b)


def cmd_hirzebruch(args, rep: RunReport, cache):
    cfg = _cfg(args)
    a = args.action
    if a == "alpha":
        rep.value("alpha", hirz.alpha_invariant(cfg))
    elif a == "predict":
        rep.results.append({"name": "poles", "value": hirz.predicted_poles(cfg).as_dict()})
    elif a == "count":
        _need(args, "bound")
        if args.csv:
            pts = hirz.enumerate_surface(cfg, args.bound)
            hirz.write_csv(pts, args.csv)
            rep.value("count", len(pts))
        else:
            rep.value("count", hirz.count_surface(cfg, args.bound))
        rep.value("minimal_section", hirz.minimal_section_count(cfg, args.bound))
    else:
        _need(args, "bound")
        out = hirz.compare_counts(cfg, args.bound)
        for k, v in out.items():
            rep.value(k, v)


def cmd_motivic(args, rep: RunReport, cache):
    _need(args, "split")
    sp = motivic.SplittingType(args.split)
    a = args.action
    N = args.trunc
    if a in ("series", "check", "funceq") and N is None:
        raise _Usage("missing required option(s): --trunc")
    if a == "series":
        rep.value("zetaZ", str(motivic.zetaZ_series(sp, N)))
        rep.value("sect", str(motivic.sect_series(sp, N)))
    elif a == "check":
        w = motivic.rationality_witness(sp, N)
        rep.check("rationality", w.residual_zero, 0 if w.residual_zero else "nonzero")
        val, defect = motivic.value_at_critical(sp, N)
        rep.value("value_at_critical", str(val))
        rep.check("value_at_critical", defect.is_zero(), str(defect))
        bad = [n for n in range(-8, 9) if not motivic.motivic_rr_defect(sp, n).is_zero()]
        rep.check("riemann_roch_n_-8..8", not bad, bad or 0)
        fe = motivic.funceq_defect_motivic(sp, N)
        rep.check("functional_equation", fe.ok, {str(k): str(v) for k, v in fe.residual.items()} or 0)
    elif a == "funceq":
        fe = motivic.funceq_defect_motivic(sp, N)
        rep.results.append({"name": "report", "value": fe.as_dict()})
        rep.check("functional_equation", fe.ok, {str(k): str(v) for k, v in fe.residual.items()} or 0)
    elif a == "lemma48":
        if len(args.split) != 2:
            raise _Usage("lemma48 takes --split a,b (the pair (a, b))")
        la, lb = args.split
        r = motivic.lemma_poly_check(la, lb, N if N is not None else 10)
        rep.results.append({"name": "report", "value": r.as_dict()})
        rep.check("lemma_polynomial", r.ok, 0 if r.ok else "nonzero")
    elif a == "specialize":
        _need(args, "q")
        S = motivic.sect_series(sp, N if N is not None else sp.stable_from + 6)
        for d, c in S.items():
            rep.value(f"sect[{d}]", c.specialize(args.q))
    elif a == "residue":
        _need(args, "q")
        r1 = motivic.residue_specialized(sp, args.q)
        r2 = motivic.residue_from_series(sp, args.q)
        rep.value("residue", r1)
        rep.check("residue_from_series", r1 == r2, r1 - r2)


def cmd_oracle(args, rep: RunReport, cache):
    _need(args, "q", "split", "d")
    sp = motivic.SplittingType(args.split)
    n = fqoracle.count_sections(args.q, sp.degrees, args.d)
    rep.value("count", n)
    expect = motivic.sect_series(sp, max(args.d, 0) + sp.stable_from + 4)[args.d].specialize(args.q)
    rep.check("motivic_specialization", expect == n, n - expect)


def cmd_report(args, rep: RunReport, cache):
    _need(args, "a", "order", "g", "bound")
    rep.value("prediction", zclass.tauberian_predict(args.a, args.order, args.g, float(args.bound)))


GROUPS = {
    "points": (("count", "list"), cmd_points),
    "theta": (("h0", "rr-check"), cmd_theta),
    "zeta": (("eval", "residue", "funceq", "wan", "partial"), cmd_zeta),
    "hirzebruch": (("count", "predict", "compare", "alpha"), cmd_hirzebruch),
    "motivic": (("series", "check", "funceq", "lemma48", "specialize", "residue"), cmd_motivic),
    "oracle": (("sections",), cmd_oracle),
    "report": (("tauberian",), cmd_report),
}


def _add_options(p: argparse.ArgumentParser, group: str) -> None:
    if group in ("points", "theta", "zeta"):
        p.add_argument("--gram", type=parse_gram, help="I<k> or rows like 2,1;1,1")
    if group in ("points", "zeta", "hirzebruch"):
        p.add_argument("--bound", type=parse_rational, help="height bound B")
    if group in ("points", "hirzebruch"):
        p.add_argument("--csv", help="write the points to this CSV file")
    if group in ("theta", "zeta"):
        p.add_argument("--tol", type=float, default=1e-11)
    if group == "theta":
        p.add_argument("--twist", type=float, default=0.0)
    if group == "zeta":
        p.add_argument("--s", type=parse_complex, help="complex argument, e.g. 3 or 4+1i")
        p.add_argument("--n", type=int)
    if group == "hirzebruch":
        p.add_argument("--e", type=int)
        p.add_argument("--a", type=int)
        p.add_argument("--b", type=int)
        p.add_argument("--base-gram", type=parse_gram, dest="base_gram")
    if group in ("motivic", "oracle"):
        p.add_argument("--split", type=parse_split, help="comma separated degrees, e.g. --split=-1,1")
        p.add_argument("--q", type=int)
    if group == "motivic":
        p.add_argument("--trunc", type=int)
    if group == "oracle":
        p.add_argument("--d", type=int)
    if group == "report":
        p.add_argument("--a", type=float)
        p.add_argument("--order", type=int)
        p.add_argument("--g", type=float)
        p.add_argument("--bound", type=parse_rational)


def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="file of key = value lines supplying option defaults")
    common.add_argument("--output", help="write the JSON report here instead of stdout")
    common.add_argument("--no-timing", action="store_true",
                        help="report timing_ms as null so repeated runs are byte-identical")
    parser = argparse.ArgumentParser(prog="heightzeta", parents=[common],
                                     description="Height zeta functions: counts, continuation, motivic checks.")
    parser.set_defaults(config=None, output=None, no_timing=False)
    groups = parser.add_subparsers(dest="group", required=True)
    leaves = []
    for name, (actions, _) in GROUPS.items():
        g = groups.add_parser(name)
        sub = g.add_subparsers(dest="action", required=True)
        for act in actions:
            p = sub.add_parser(act, parents=[common])
            _add_options(p, name)
            leaves.append(p)
    return parser, leaves


def _apply_config(leaves, config: dict[str, str]) -> None:
    # string defaults go through each option's type converter
    for p in leaves:
        for action in p._actions:
            if action.dest in config:
                action.default = config[action.dest]


def dispatch(argv: list[str] | None = None) -> tuple[int, dict | None]:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    parser, leaves = build_parser()
    if known.config:
        try:
            _apply_config(leaves, read_config(known.config))
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    params = {k: _jsonable(v) for k, v in sorted(vars(args).items())
              if k not in ("config", "output", "no_timing", "group", "action") and v is not None}
    rep = RunReport(f"{args.group} {args.action}", params)
    cache = Cache.from_env()
    t0 = time.perf_counter()
    try:
        GROUPS[args.group][1](args, rep, cache)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"heightzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except HeightZetaError as exc:
        print(f"heightzeta: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    timing = None if args.no_timing else round((time.perf_counter() - t0) * 1000, 3)
    stats = None if cache is None else {"hits": cache.hits, "misses": cache.misses, "corrupt": cache.corrupt}
    out = rep.as_dict(timing, stats)
    text = json.dumps(out, indent=2, default=_fallback)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return (EXIT_OK if rep.ok else EXIT_CHECK), out


def _fallback(o):
    if isinstance(o, float) and not math.isfinite(o):
        return str(o)
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def main(argv: list[str] | None = None) -> int:
    code, _ = dispatch(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
