"""Times the compiled rank-table kernel against the numpy fallback.

Both backends fill the identical table (ranks of every rows x cols matrix
over F_q, indexed by base-q digit strings), so wall time is the only thing
being compared.  Run from the repository root:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeats 5 --shapes 2x4x4,3x3x3
"""

import argparse
import time

import numpy as np

from srcover.gf import get_field
from srcover.kernels import _ranks_py

try:
    from srcover.kernels import _ranks_cy
except ImportError:
    _ranks_cy = None

DEFAULT_SHAPES = [
    (2, 2, 2),
    (2, 3, 3),
    (2, 4, 3),
    (2, 4, 4),
    (3, 2, 2),
    (3, 3, 2),
    (4, 2, 2),
    (5, 2, 2),
    (9, 2, 2),
    (2, 4, 5),
]


def parse_shapes(text: str) -> list[tuple[int, int, int]]:
    shapes = []
    for piece in text.split(","):
        q, rows, cols = (int(x) for x in piece.split("x"))
        shapes.append((q, rows, cols))
    return shapes


def best_of(fn, repeats: int) -> float:
    fn()  # warm-up, also populates any lazy tables
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--shapes", type=parse_shapes, default=DEFAULT_SHAPES)
    args = ap.parse_args()

    if _ranks_cy is None:
        print("compiled kernel not available, timing the fallback only")
    header = f"{'shape':>10s} {'entries':>9s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for q, rows, cols in args.shapes:
        field = get_field(q)
        tables = (field.sub_table, field.mul_table, field.inv_table)
        entries = q ** (rows * cols)

        t_py = best_of(lambda: _ranks_py.rank_table(q, rows, cols, *tables), args.repeats)
        if _ranks_cy is not None:
            t_cy = best_of(lambda: _ranks_cy.rank_table(q, rows, cols, *tables), args.repeats)
            got_py = _ranks_py.rank_table(q, rows, cols, *tables)
            got_cy = _ranks_cy.rank_table(q, rows, cols, *tables)
            if not np.array_equal(got_py, got_cy):
                raise SystemExit(f"backends disagree on {q}x{rows}x{cols}")
            ratio = f"{t_py / t_cy:7.1f}x"
            cy_txt = f"{t_cy * 1e3:8.2f}ms"
        else:
            ratio = "-"
            cy_txt = "-"
        print(
            f"{f'{q}^{rows}x{cols}':>10s} {entries:>9d} {t_py * 1e3:8.2f}ms"
            f" {cy_txt:>10s} {ratio:>8s}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
