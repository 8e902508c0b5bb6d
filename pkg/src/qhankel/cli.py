"""Command-line front end.

    qhankel stirling --n 4 --r 1
    qhankel poly --family bigphi --n 3 --r 2 --format latex
    qhankel hankel --family phi --n 3 --offset 1 --r 0
    qhankel verify --suite all

``verify`` exits 0 iff every identity holds and 1 otherwise; bad flags exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import exactalg as ea
from .hankel import (
    CLOSED_FORMS,
    FAMILY_OF,
    TheoremReport,
    build_hankel,
    cross_check_random,
    det_bareiss,
    verify_theorem,
)
from .orthopoly import (
    OrthFamily,
    big_h_poly,
    check_basis_images,
    check_moment_orthogonality,
    check_orthogonality,
    check_recurrence_H,
    check_recurrence_h,
    g_poly,
    h_poly,
)
from .report import CheckReport
from .rstirling import (
    bigphi,
    check_bigphi_recurrences,
    check_dobinski,
    check_expansion,
    check_generating_function,
    check_phi_operator,
    check_remark_identities,
    falling,
    falling_scaled,
    phi,
    stirling,
)

FORMATS = ("text", "json", "latex")
FAMILIES = {
    "phi": phi,
    "bigphi": bigphi,
    "h": h_poly,
    "g": g_poly,
    "H": big_h_poly,
    "falling": falling,
    "falling2": falling_scaled,
}
SUITES = ("theorem21", "theorem31", "gf", "dobinski", "remark", "recurrences", "orthogonality")

DEFAULT_N_MAX = 6
DEFAULT_R_SET = "0,1,2,3"
DEFAULT_ORDER = 12


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    k: int | None = None
    r: list[int] | None = None
    n_max: int = DEFAULT_N_MAX
    offset: int = 0
    order: int = DEFAULT_ORDER
    family: str | None = None
    suite: str = "all"
    format: str = "text"
    parallelism: int = 1
    seed: int = 0


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty r list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get("QHANKEL_FORMAT", "text")
    if default_fmt not in FORMATS:
        default_fmt = "text"

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_fmt)
    common.add_argument("--parallelism", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="qhankel", description="Exact q-Stirling / q-exponential Hankel toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stirling", parents=[common], help="triangle of S(m, k, r) for m <= n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=_int_list, required=True)
    p.add_argument("--k", type=int, default=None, help="print only column k")

    p = sub.add_parser("poly", parents=[common], help="one polynomial of a family")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=_int_list, required=True)

    p = sub.add_parser("hankel", parents=[common], help="Hankel determinant vs closed form")
    p.add_argument("--family", choices=("phi", "bigphi"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--offset", type=int, choices=(0, 1), default=0)
    p.add_argument("--r", type=_int_list, required=True)

    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--r", type=_int_list, default=_int_list(DEFAULT_R_SET))
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    return parser


def _config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        k=getattr(args, "k", None),
        r=args.r,
        n_max=getattr(args, "n_max", DEFAULT_N_MAX),
        offset=getattr(args, "offset", 0),
        order=getattr(args, "order", DEFAULT_ORDER),
        family=getattr(args, "family", None),
        suite=getattr(args, "suite", "all"),
        format=args.format,
        parallelism=args.parallelism,
        seed=args.seed,
    )
    if cfg.parallelism < 1:
        parser.error("--parallelism must be >= 1")
    if cfg.order < 1:
        parser.error("--order must be >= 1")
    if cfg.command != "verify":
        if len(cfg.r) != 1:
            parser.error("--r takes a single value for this command")
        if cfg.n < 0 or (cfg.command == "hankel" and cfg.n < 1):
            parser.error("--n out of range")
        if cfg.k is not None and cfg.k < 0:
            parser.error("--k must be >= 0")
    else:
        if cfg.n_max < 1:
            parser.error("--n-max must be >= 1")
        if cfg.suite in ("gf", "all") and cfg.order <= cfg.n_max:
            parser.error("--order must exceed --n-max for the generating-function suite")
        if cfg.suite in ("dobinski", "all") and cfg.order < cfg.n_max + 2:
            parser.error("--order must be >= n-max + 2 for the Dobinski suite")
    return cfg


# ---------------------------------------------------------------------------
# stirling / poly / hankel
# ---------------------------------------------------------------------------


def _cell(p: ea.QLaurent) -> str:
    s = ea.render(p)
    return f"({s})" if " " in s else s


def cmd_stirling(cfg: RunConfig) -> int:
    r = cfg.r[0]
    rows = [
        [(m, k, stirling(m, k, r)) for k in range(m + 1) if cfg.k is None or k == cfg.k]
        for m in range(cfg.n + 1)
    ]
    if cfg.format == "json":
        entries = [{"n": m, "k": k, "value": ea.to_json(v)} for row in rows for m, k, v in row]
        print(json.dumps({"r": r, "entries": entries}))
    elif cfg.format == "latex":
        cols = cfg.n + 1 if cfg.k is None else 1
        print(r"\begin{tabular}{r|" + "c" * cols + "}")
        print("$n$ & " + " & ".join(f"$k={k}$" for k in range(cols) if cfg.k is None) + r" \\ \hline"
              if cfg.k is None else f"$n$ & $k={cfg.k}$ " + r"\\ \hline")
        for m, row in enumerate(rows):
            print(f"{m} & " + " & ".join(f"${ea.latex(v)}$" for _, _, v in row) + r" \\")
        print(r"\end{tabular}")
    else:
        for row in rows:
            print(" ".join(_cell(v) for _, _, v in row))
    return 0


def cmd_poly(cfg: RunConfig) -> int:
    r = cfg.r[0]
    p = FAMILIES[cfg.family](cfg.n, r)
    if cfg.format == "json":
        print(json.dumps({"family": cfg.family, "n": cfg.n, "r": r, "poly": ea.to_json(p)}))
    elif cfg.format == "latex":
        print(f"${ea.latex(p)}$")
    else:
        print(ea.render(p))
    return 0


def cmd_hankel(cfg: RunConfig) -> int:
    r = cfg.r[0]
    theorem = "2.1" if cfg.family == "phi" else "3.1"
    start = time.perf_counter()
    oracle = det_bareiss(build_hankel(cfg.family, cfg.n, cfg.offset, r))
    closed = CLOSED_FORMS[theorem](cfg.n, cfg.offset, r)
    rep = TheoremReport(theorem, cfg.n, r, cfg.offset, oracle, closed, oracle == closed,
                        elapsed_ms=int((time.perf_counter() - start) * 1000))
    if cfg.format == "json":
        print(json.dumps(rep.to_json()))
    elif cfg.format == "latex":
        print(rf"\det = {ea.latex(oracle)} \quad\text{{closed}} = {ea.latex(closed)}")
    else:
        print(f"oracle: {ea.render(oracle)}")
        print(f"closed: {ea.render(closed)}")
        print("equal" if rep.equal else "NOT EQUAL")
    return 0 if rep.equal else 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

_CHECKS = {
    "gf": check_generating_function,
    "dobinski": check_dobinski,
    "remark": check_remark_identities,
    "expansion": check_expansion,
    "recurrence-h": check_recurrence_h,
    "recurrence-H": check_recurrence_H,
    "bigphi-recurrence": check_bigphi_recurrences,
    "U-conjugate": check_phi_operator,
    "moment-orthogonality": check_moment_orthogonality,
    "basis-images": check_basis_images,
}


def _run_case(case: tuple) -> CheckReport | TheoremReport:
    name, args = case
    if name == "theorem":
        from .hankel import verify_case

        return verify_case(*args)
    if name == "orthogonality":
        kind, r, n, k = args
        return check_orthogonality(OrthFamily(kind, r), n, k)
    if name == "bareiss-random":
        seed, count = args
        agree, total = cross_check_random(seed, count)
        return CheckReport("bareiss-vs-cofactor", {"seed": seed, "matrices": total}, agree == total,
                           f"{total - agree} disagreements")
    return _CHECKS[name](*args)


def suite_cases(suite: str, cfg: RunConfig) -> list[tuple]:
    n_max, rs, order = cfg.n_max, cfg.r, cfg.order
    cases: list[tuple] = []
    if suite in ("theorem21", "theorem31"):
        th = "2.1" if suite == "theorem21" else "3.1"
        cases += [("theorem", (th, n, r, off)) for r in rs for n in range(1, n_max + 1) for off in (0, 1)]
        cases.append(("bareiss-random", (cfg.seed + (0 if th == "2.1" else 1), 25)))
    elif suite == "gf":
        cases += [("gf", (k, r, order)) for r in rs for k in range(min(n_max, order - 1) + 1)]
    elif suite == "dobinski":
        cases += [("dobinski", (n, r, order)) for r in rs for n in range(min(n_max, order - 2) + 1)]
    elif suite == "remark":
        cases += [("remark", (n, r)) for r in rs for n in range(n_max + 1)]
    elif suite == "recurrences":
        for r in rs:
            cases += [("expansion", (n, r)) for n in range(n_max + 1)]
            for n in range(1, n_max + 1):
                cases += [("recurrence-h", (n, r)), ("recurrence-H", (n, r)),
                          ("bigphi-recurrence", (n, r)), ("U-conjugate", (n, r))]
    elif suite == "orthogonality":
        for r in rs:
            for n in range(n_max + 1):
                cases.append(("basis-images", (n, r)))
                for kind in ("h", "H"):
                    cases.append(("moment-orthogonality", (kind, n, r)))
                    cases += [("orthogonality", (kind, r, n, k)) for k in range(n + 1)]
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return cases


def _report_json(rep) -> dict:
    d = rep.to_json()
    d["passed"] = rep.passed
    return d


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    cases = [(s, c) for s in suites for c in suite_cases(s, cfg)]
    failed = 0
    latex = cfg.format == "latex"
    if latex:
        print(r"\begin{itemize}", file=out)

    def emit(suite, rep):
        nonlocal failed
        failed += not rep.passed
        if cfg.format == "json":
            print(json.dumps({"suite": suite, **_report_json(rep)}), file=out, flush=True)
        elif latex:
            line = rep.line().replace("_", r"\_").replace("^", r"\^{}")
            print(rf"  \item \texttt{{[{suite}] {line}}}", file=out, flush=True)
        else:
            print(f"[{suite}] {rep.line()}", file=out, flush=True)

    start = time.perf_counter()
    if cfg.parallelism > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            for (suite, _), rep in zip(cases, pool.map(_run_case, [c for _, c in cases])):
                emit(suite, rep)
    else:
        for suite, case in cases:
            emit(suite, _run_case(case))
    elapsed = time.perf_counter() - start

    summary = f"{len(cases) - failed} passed, {failed} failed in {elapsed:.1f}s"
    if cfg.format == "json":
        print(json.dumps({"summary": {"passed": len(cases) - failed, "failed": failed}}), file=out)
    elif latex:
        print(r"\end{itemize}", file=out)
        print(f"% {summary}", file=out)
    else:
        print(f"summary: {summary}", file=out)
    return 0 if failed == 0 else 1


COMMANDS = {"stirling": cmd_stirling, "poly": cmd_poly, "hankel": cmd_hankel, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(parser, args)
    return COMMANDS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
