"""Command line front end: volume tables, bound reports, sweeps, self-checks.

All numeric output is exact.  Integers are rendered as decimal strings (the
values routinely overflow 64 bits) and bracket gaps as reduced fractions, so
identical invocations produce byte-identical bytes on stdout.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 a budget cap stopped part of the work before it could finish.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .bounds import compile_report
from .errors import BudgetExceededError
from .geometry import (
    ball_volume,
    count_bounded_compositions,
    enumerate_bounded_compositions,
    sphere_volume,
)
from .oracle import (
    BlockVector,
    SearchBudget,
    brute_sphere_volume,
    covering_radius,
    distance,
    exhaustive_min_covering,
    greedy_min_covering,
    sum_rank_weight,
)
from .params import CodeParams
from .space import DEFAULT_ENUM_CAP

DEFAULT_COVER_CAP = 1 << 16

_BOUND_COLUMNS = (
    "sphere_covering",
    "simplified_sphere_covering",
    "minimum_three",
    "iterative",
    "rank_relation",
    "systematic",
    "msrd_extension",
    "product_partition",
    "hamming_relation",
)


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srcover",
        description="Covering-code bounds and exact searches in the sum-rank metric.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, grid: bool):
        kind = _int_list if grid else int
        p.add_argument("--q", type=kind, required=True, help="base field size")
        p.add_argument("--m", type=kind, required=True, help="extension degree")
        p.add_argument("--eta", type=kind, required=True, help="block length")
        p.add_argument("--ell", type=kind, required=True, help="number of blocks")
        p.add_argument("--format", choices=("csv", "json", "plain"), default="plain")
        p.add_argument(
            "--budget-space",
            type=int,
            default=None,
            help="cap on enumerated vectors (default: env SRCOVER_BUDGET_SPACE)",
        )
        p.add_argument(
            "--budget-secs",
            type=float,
            default=None,
            help="wall-clock cap for searches (default: env SRCOVER_BUDGET_SECS)",
        )
        p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    p_vol = sub.add_parser("volumes", help="sphere and ball volumes for one parameter set")
    common(p_vol, grid=False)

    p_bounds = sub.add_parser("bounds", help="all bounds and the best bracket")
    common(p_bounds, grid=False)
    p_bounds.add_argument("--rho", type=int, required=True, help="covering radius")
    p_bounds.add_argument(
        "--rho-max",
        type=int,
        default=None,
        help="sweep radii from --rho up to this value inclusive",
    )

    p_table = sub.add_parser("table", help="bracket sweep over a parameter grid")
    common(p_table, grid=True)
    p_table.add_argument(
        "--rho",
        type=_int_list,
        default=None,
        help="radii to include (default: every 0 < rho < max weight)",
    )

    p_verify = sub.add_parser("verify", help="formula-vs-enumeration self checks")
    common(p_verify, grid=False)
    p_verify.add_argument("--rho", type=int, default=1, help="radius for the bracket check")
    return parser


def _budget(args) -> SearchBudget:
    space = args.budget_space
    if space is None:
        env = os.environ.get("SRCOVER_BUDGET_SPACE")
        space = int(env) if env else None
    secs = args.budget_secs
    if secs is None:
        env = os.environ.get("SRCOVER_BUDGET_SECS")
        secs = float(env) if env else None
    if space is not None and space < 1:
        raise UsageError("--budget-space must be positive")
    return SearchBudget(
        cover_cap=space if space is not None else DEFAULT_COVER_CAP,
        enum_cap=space if space is not None else DEFAULT_ENUM_CAP,
        time_cap_secs=secs,
    )


def _params(args) -> CodeParams:
    try:
        return CodeParams(args.q, args.m, args.eta, args.ell)
    except ValueError as exc:
        raise UsageError(str(exc))


def _emit(text: str):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _csv_line(cells) -> str:
    out = []
    for cell in cells:
        cell = "" if cell is None else str(cell)
        if any(ch in cell for ch in ',"\n'):
            cell = '"' + cell.replace('"', '""') + '"'
        out.append(cell)
    return ",".join(out)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


# -- volumes ----------------------------------------------------------


def cmd_volumes(args) -> int:
    params = _params(args)
    rows = [
        (t, sphere_volume(params, t), ball_volume(params, t))
        for t in range(params.max_weight + 1)
    ]
    if args.format == "json":
        payload = {
            "params": _params_dict(params),
            "rows": [
                {"t": t, "sphere_volume": str(s), "ball_volume": str(b)}
                for t, s, b in rows
            ],
        }
        _emit(_json_text(payload))
    elif args.format == "csv":
        lines = [_csv_line(("t", "sphere_volume", "ball_volume"))]
        lines += [_csv_line(row) for row in rows]
        _emit("\n".join(lines))
    else:
        width = len(str(rows[-1][2]))
        _emit(f"weights 0..{params.max_weight} of {params}")
        for t, s, b in rows:
            _emit(f"  t={t:<3d} sphere {s:>{width}d}  ball {b:>{width}d}")
    return 0


def _params_dict(params: CodeParams) -> dict:
    return {
        "q": params.q,
        "m": params.m,
        "eta": params.eta,
        "ell": params.ell,
        "n": params.n,
        "space_size": str(params.space_size),
    }


# -- bounds -----------------------------------------------------------


def _report_payload(report) -> dict:
    return {
        "params": _params_dict(report.params),
        "rho": report.rho,
        "bounds": [
            {
                "name": bv.name,
                "kind": bv.kind,
                "value": None if bv.value is None else str(bv.value),
                "applicable": bv.applicable,
                "assumptions": list(bv.assumptions),
            }
            for bv in report.bounds
        ],
        "best_lower": str(report.best_lower),
        "best_upper": str(report.best_upper),
        "best_lower_names": list(report.best_lower_names),
        "best_upper_names": list(report.best_upper_names),
    }


def _report_csv_rows(report) -> list[tuple]:
    rows = []
    for bv in report.bounds:
        rows.append(
            (
                report.rho,
                bv.name,
                bv.kind,
                None if bv.value is None else str(bv.value),
                "yes" if bv.applicable else "no",
                "; ".join(bv.assumptions),
            )
        )
    rows.append((report.rho, "best_lower", "summary", str(report.best_lower), "yes", ""))
    rows.append((report.rho, "best_upper", "summary", str(report.best_upper), "yes", ""))
    return rows


def cmd_bounds(args) -> int:
    params = _params(args)
    budget = _budget(args)
    lo = args.rho
    hi = args.rho_max if args.rho_max is not None else args.rho
    if hi < lo:
        raise UsageError("--rho-max must not be below --rho")
    radii = list(range(lo, hi + 1))
    reports = [
        compile_report(params, rho, enum_cap=budget.enum_cap) for rho in radii
    ]
    if args.format == "json":
        if len(reports) == 1:
            _emit(_json_text(_report_payload(reports[0])))
        else:
            _emit(_json_text([_report_payload(r) for r in reports]))
    elif args.format == "csv":
        lines = [
            _csv_line(("rho", "name", "kind", "value", "applicable", "note"))
        ]
        for report in reports:
            lines += [_csv_line(row) for row in _report_csv_rows(report)]
        _emit("\n".join(lines))
    else:
        for report in reports:
            _emit(f"{params} radius {report.rho}")
            for bv in report.bounds:
                mark = str(bv.value) if bv.applicable else f"n/a ({bv.assumptions[0]})"
                _emit(f"  {bv.kind:<5s} {bv.name:<28s} {mark}")
            _emit(
                f"  bracket [{report.best_lower}, {report.best_upper}]"
                f" from {'/'.join(report.best_lower_names)}"
                f" and {'/'.join(report.best_upper_names)}"
            )
    return 0


# -- table ------------------------------------------------------------


def _grid_rows(args, budget: SearchBudget):
    for q in args.q:
        for m in args.m:
            for eta in args.eta:
                for ell in args.ell:
                    try:
                        params = CodeParams(q, m, eta, ell)
                    except ValueError as exc:
                        raise UsageError(str(exc))
                    if args.rho is None:
                        radii = list(range(1, params.max_weight))
                    else:
                        radii = args.rho
                        bad = [r for r in radii if not 0 <= r <= params.max_weight]
                        if bad:
                            raise UsageError(
                                f"radius {bad[0]} outside [0, {params.max_weight}]"
                                f" for {params}"
                            )
                    for rho in radii:
                        yield params, compile_report(
                            params, rho, enum_cap=budget.enum_cap
                        )


def _gap_ratio(report) -> str:
    return str(Fraction(report.best_upper, report.best_lower))


def cmd_table(args) -> int:
    budget = _budget(args)
    header = (
        ("q", "m", "eta", "ell", "n", "rho")
        + _BOUND_COLUMNS
        + ("best_lower", "best_upper", "gap_ratio")
    )
    rows = []
    for params, report in _grid_rows(args, budget):
        named = {bv.name: bv for bv in report.bounds}
        cells: list = [params.q, params.m, params.eta, params.ell, params.n, report.rho]
        for name in _BOUND_COLUMNS:
            bv = named.get(name)
            cells.append(None if bv is None or bv.value is None else str(bv.value))
        cells += [str(report.best_lower), str(report.best_upper), _gap_ratio(report)]
        rows.append(cells)
    if args.format == "json":
        payload = {
            "columns": list(header),
            "rows": [
                {key: cell for key, cell in zip(header, row)} for row in rows
            ],
        }
        _emit(_json_text(payload))
    else:
        lines = [_csv_line(header)]
        lines += [_csv_line(row) for row in rows]
        _emit("\n".join(lines))
    return 0


# -- verify -----------------------------------------------------------


class _CheckRun:
    def __init__(self):
        self.results: list[tuple[str, str, str]] = []

    def run(self, name: str, fn):
        try:
            fn()
        except BudgetExceededError as exc:
            self.results.append((name, "skipped_budget", str(exc)))
        except AssertionError as exc:
            self.results.append((name, "fail", str(exc)))
        else:
            self.results.append((name, "pass", ""))

    @property
    def status(self) -> int:
        if any(status == "fail" for _, status, _ in self.results):
            return 1
        if any(status == "skipped_budget" for _, status, _ in self.results):
            return 3
        return 0


def _composition_count(t: int, ell: int, mu: int) -> int:
    if os.environ.get("SRCOVER_SELFTEST_CORRUPT") == "composition":
        # deliberately mis-shifted variant, kept to prove the harness can
        # tell a wrong formula from the enumeration it is checked against
        from .qanalog import binomial

        total = 0
        for i in range(ell + 1):
            term = binomial(ell, i) * binomial(t + ell - (mu + 1) * i, ell - 1)
            total += term if i % 2 == 0 else -term
        return total
    return count_bounded_compositions(t, ell, mu)


def _check_sphere_formula(params: CodeParams, budget: SearchBudget):
    for t in range(params.max_weight + 1):
        formula = sphere_volume(params, t)
        brute = brute_sphere_volume(params, t, enum_cap=budget.enum_cap)
        assert formula == brute, f"sphere volume differs at t={t}: {formula} vs {brute}"


def _check_compositions(params: CodeParams):
    for t in range(params.max_weight + 1):
        counted = _composition_count(t, params.ell, params.mu)
        listed = len(list(enumerate_bounded_compositions(t, params.ell, params.mu)))
        assert counted == listed, f"composition count differs at t={t}: {counted} vs {listed}"


def _check_weight_chain(params: CodeParams, rng: random.Random):
    shapes = [params.reshaped(mode) for mode in (1, params.ell, params.n)]
    for _ in range(200):
        idx = rng.randrange(params.space_size)
        w1, wl, wn = (
            sum_rank_weight(BlockVector.from_index(shape, idx)) for shape in shapes
        )
        assert w1 <= wl <= wn, f"weight chain broken at index {idx}: {w1}, {wl}, {wn}"


def _check_metric_axioms(params: CodeParams, rng: random.Random):
    for _ in range(100):
        x, y, z = (rng.randrange(params.space_size) for _ in range(3))
        dxy = distance(params, x, y)
        assert dxy == distance(params, y, x), f"asymmetry at ({x}, {y})"
        assert (dxy == 0) == (x == y), f"identity failure at ({x}, {y})"
        assert dxy <= distance(params, x, z) + distance(params, z, y), (
            f"triangle failure at ({x}, {y}, {z})"
        )


# Exact minimum-covering search is only attempted below this space size; the
# search tree for denser spaces can take minutes even when q^{mn} is tiny, and
# a size gate keeps verify deterministic where a wall-clock gate would not.
EXACT_BRACKET_LIMIT = 64


def _check_bracket(params: CodeParams, rho: int, budget: SearchBudget):
    report = compile_report(params, rho, enum_cap=budget.enum_cap)
    k_greedy, witness = greedy_min_covering(params, rho, budget)
    reach = covering_radius(witness, enum_cap=budget.enum_cap)
    assert reach <= rho, f"greedy witness has covering radius {reach} > {rho}"
    assert report.best_lower <= k_greedy, (
        f"lower bound {report.best_lower} exceeds a realized covering of size {k_greedy}"
    )
    if params.space_size <= EXACT_BRACKET_LIMIT:
        k_exact, _ = exhaustive_min_covering(params, rho, budget)
        assert report.best_lower <= k_exact <= report.best_upper, (
            f"bracket [{report.best_lower}, {report.best_upper}] misses K={k_exact}"
        )


def cmd_verify(args) -> int:
    params = _params(args)
    budget = _budget(args)
    if not 0 <= args.rho <= params.max_weight:
        raise UsageError(f"radius {args.rho} outside [0, {params.max_weight}]")
    rng = random.Random(args.seed)
    checks = _CheckRun()
    checks.run("sphere_volume_formula_vs_enumeration", lambda: _check_sphere_formula(params, budget))
    checks.run("composition_count_vs_enumeration", lambda: _check_compositions(params))
    checks.run("weight_order_chain", lambda: _check_weight_chain(params, rng))
    checks.run("metric_axioms", lambda: _check_metric_axioms(params, rng))
    checks.run("bound_bracket_vs_oracle", lambda: _check_bracket(params, args.rho, budget))
    if args.format == "json":
        payload = {
            "params": _params_dict(params),
            "rho": args.rho,
            "seed": args.seed,
            "checks": [
                {"name": name, "status": status, "detail": detail}
                for name, status, detail in checks.results
            ],
            "exit_code": checks.status,
        }
        _emit(_json_text(payload))
    elif args.format == "csv":
        lines = [_csv_line(("name", "status", "detail"))]
        lines += [_csv_line(row) for row in checks.results]
        _emit("\n".join(lines))
    else:
        _emit(f"self checks for {params} (seed {args.seed})")
        tag = {"pass": "PASS", "fail": "FAIL", "skipped_budget": "SKIP"}
        for name, status, detail in checks.results:
            suffix = f": {detail}" if detail else ""
            _emit(f"  {tag[status]} {name}{suffix}")
    return checks.status


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handlers = {
        "volumes": cmd_volumes,
        "bounds": cmd_bounds,
        "table": cmd_table,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
