"""Adaptive Simpson quadrature with an evaluation budget."""

from __future__ import annotations

from typing import Callable

from .errors import IntegrationError

__all__ = ["adaptive_simpson"]


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tolerance: float,
    max_evals: int = 1_000_000,
) -> tuple[float, int]:
    """Integrate f on [a, b] to the requested absolute tolerance.

    Classic adaptive Simpson with the 1/15 Richardson error estimate,
    implemented with an explicit interval stack.  Returns (value,
    evaluation count); raises IntegrationError when the budget runs out
    before all subintervals converge.
    """
    if abs_tolerance <= 0:
        raise ValueError(f"abs_tolerance must be positive, got {abs_tolerance}")
    if a == b:
        return 0.0, 0
    if a > b:
        value, evals = adaptive_simpson(f, b, a, abs_tolerance, max_evals)
        return -value, evals

    evals = 0

    def call(x: float) -> float:
        nonlocal evals
        evals += 1
        if evals > max_evals:
            raise IntegrationError(
                f"quadrature exceeded {max_evals} evaluations before converging"
            )
        return f(x)

    def simpson(fa: float, fm: float, fb: float, width: float) -> float:
        return width / 6.0 * (fa + 4.0 * fm + fb)

    m = 0.5 * (a + b)
    fa, fm, fb = call(a), call(m), call(b)
    total = 0.0
    # stack entries: (a, m, b, fa, fm, fb, whole-interval Simpson, tolerance)
    stack = [(a, m, b, fa, fm, fb, simpson(fa, fm, fb, b - a), abs_tolerance)]
    while stack:
        xa, xm, xb, ya, ym, yb, whole, tol = stack.pop()
        lm = 0.5 * (xa + xm)
        rm = 0.5 * (xm + xb)
        ylm, yrm = call(lm), call(rm)
        left = simpson(ya, ylm, ym, xm - xa)
        right = simpson(ym, yrm, yb, xb - xm)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
        else:
            stack.append((xa, lm, xm, ya, ylm, ym, left, tol / 2.0))
            stack.append((xm, rm, xb, ym, yrm, yb, right, tol / 2.0))
    return total, evals
