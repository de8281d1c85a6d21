"""Floating-point companion: Newton evaluation of the tree function on
[0, 1/e), and float projections of Ramanujan's Q for growth checks.

Principal branch only.  The domain stops strictly below the singularity at
z = 1/e, where the Newton derivative e^(-y)(1 - y) collapses; refusing to
converge there is more honest than returning garbage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .identity import ramanujan_q

__all__ = [
    "TREE_DOMAIN_SUP",
    "QGrowthRow",
    "TreeEvalResult",
    "q_float",
    "q_growth_check",
    "tree_eval",
]

# sup of the admissible z domain: the tree function's singularity.
TREE_DOMAIN_SUP = math.exp(-1.0)


@dataclass(frozen=True)
class TreeEvalResult:
    """Accepted Newton solve of y = z*e^y with its diagnostics."""

    z: float
    y: float
    iterations: int
    residual: float  # |y - z*e^y| at the accepted y


def tree_eval(z: float, tol: float = 1e-14, max_iter: int = 64) -> TreeEvalResult:
    """Solve y = z*e^y for y in [0, 1) by Newton iteration on f(y) = y e^(-y) - z.

    Seeded at y0 = z; f is increasing and concave on [0, 1), so the
    iterates climb monotonically to the root without overshooting.  Stops
    once |f| <= tol, errors out at max_iter updates.
    """
    if not 0.0 <= z < TREE_DOMAIN_SUP:
        raise ValueError(
            f"tree_eval requires 0 <= z < 1/e (approx {TREE_DOMAIN_SUP:.6f}), got {z}"
        )
    y = z
    for iterations in range(max_iter + 1):
        ey = math.exp(-y)
        f = y * ey - z
        if abs(f) <= tol:
            residual = abs(y - z * math.exp(y))
            if not 0.0 <= y < 1.0:
                raise RuntimeError(f"tree_eval left its basin: y={y} for z={z}")
            return TreeEvalResult(z=z, y=y, iterations=iterations, residual=residual)
        y -= f / (ey * (1.0 - y))
    raise RuntimeError(
        f"tree_eval did not converge within {max_iter} iterations for z={z}"
    )


def q_float(n: int) -> float:
    """Exact Q(n) rounded to the nearest float."""
    return float(ramanujan_q(n))


@dataclass(frozen=True)
class QGrowthRow:
    """One row of the Q growth table: exact value and leading-order ratio."""

    n: int
    q: Fraction
    ratio: float  # Q(n) / sqrt(pi*n/2)


def q_growth_check(n_values: list[int]) -> list[QGrowthRow]:
    """Tabulate Q(n) against its leading-order growth sqrt(pi*n/2).

    The ratio approaches 1 from below (the next-order correction is -1/3,
    quoted here for orientation only, never asserted).  Window and
    monotonicity assertions are a test-suite concern, not a runtime one.
    """
    rows = []
    for n in n_values:
        q = ramanujan_q(n)
        ratio = float(q) / math.sqrt(math.pi * n / 2.0)
        rows.append(QGrowthRow(n=n, q=q, ratio=ratio))
    return rows
