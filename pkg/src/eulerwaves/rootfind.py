"""Shared 1D root-location helpers: sign-change scans and bisection."""

from __future__ import annotations

import numpy as np

__all__ = ["scan_brackets", "bisect_root", "newton_polish"]


def scan_brackets(f, lo: float, hi: float, n: int):
    """Sample f on a uniform grid and return sign-change brackets in order.

    Non-finite samples are skipped (useful near coordinate singularities of
    dispersion functions).
    """
    xs = np.linspace(lo, hi, n)
    brackets = []
    x_prev = None
    f_prev = None
    for x in xs:
        val = f(x)
        if not np.isfinite(val):
            x_prev, f_prev = None, None
            continue
        if f_prev is not None and np.sign(val) != np.sign(f_prev):
            brackets.append((x_prev, x))
        x_prev, f_prev = x, val
    return brackets


def bisect_root(f, a: float, b: float, xtol: float = 1e-13,
                maxiter: int = 200) -> float:
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise ValueError("bisect_root: no sign change on the bracket")
    for _ in range(maxiter):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0 or (b - a) < xtol * max(1.0, abs(mid)):
            return mid
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return 0.5 * (a + b)


def newton_polish(f, df, x0: float, steps: int = 3) -> float:
    """A few guarded Newton iterations after bisection."""
    x = x0
    for _ in range(steps):
        d = df(x)
        if d == 0.0 or not np.isfinite(d):
            break
        x_new = x - f(x) / d
        if not np.isfinite(x_new) or abs(x_new - x) > 1.0:
            break
        x = x_new
    return x
