"""Adaptive Simpson quadrature with an explicit evaluation budget.

All integrals in this package go through :func:`adaptive_simpson`.  The
integrand must be vectorized (ndarray in, ndarray out); the routine keeps a
work list of panels, splits every non-converged panel once per pass, and
accounts for each point evaluation against a hard budget.  Running out of
budget raises, it never truncates silently.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

DEFAULT_TOL = 1e-10
DEFAULT_BUDGET = 10**6


class QuadratureBudgetError(RuntimeError):
    """Raised when the evaluation budget is exhausted before convergence."""


class NonFiniteIntegrandError(ValueError):
    """Raised when the integrand returns NaN or infinity on a probe point."""


def _check_finite(values: np.ndarray, points: np.ndarray, context: str) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        where = points[bad][:4]
        raise NonFiniteIntegrandError(
            f"{context}: non-finite integrand value(s) at t={where.tolist()}"
        )


def adaptive_simpson(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    tol: float = DEFAULT_TOL,
    rtol: float = 1e-12,
    budget: int = DEFAULT_BUDGET,
    initial_panels: int = 64,
    max_passes: int = 64,
    context: str = "quadrature",
) -> float:
    """Integrate ``g`` over ``[a, b]`` to absolute tolerance ``tol``.

    ``rtol`` is a relative floor so that integrands of huge magnitude stop
    refining at machine-level accuracy instead of chasing an unreachable
    absolute target.  ``initial_panels`` sets the uniform starting
    subdivision; callers integrating oscillatory functions should scale it
    with the expected number of oscillations so that the error estimate is
    trustworthy.
    """
    if b < a:
        raise ValueError(f"inverted interval [{a}, {b}]")
    if b == a:
        return 0.0
    panels = max(int(initial_panels), 1)
    xs = np.linspace(a, b, 2 * panels + 1)
    fx = np.asarray(g(xs), dtype=float)
    _check_finite(fx, xs, context)
    evals = xs.size

    left, mid, right = xs[0:-1:2], xs[1::2], xs[2::2]
    f_l, f_m, f_r = fx[0:-1:2], fx[1::2], fx[2::2]
    estimate = (right - left) / 6.0 * (f_l + 4.0 * f_m + f_r)

    total = 0.0
    # Local acceptance threshold proportional to panel width keeps the
    # accumulated error below tol after the Richardson correction.
    scale = 15.0 * tol / (b - a)
    for _ in range(max_passes):
        mid_l = 0.5 * (left + mid)
        mid_r = 0.5 * (mid + right)
        if evals + 2 * mid_l.size > budget:
            raise QuadratureBudgetError(
                f"{context}: evaluation budget {budget} exhausted "
                f"({left.size} panels still refining)"
            )
        f_ml = np.asarray(g(mid_l), dtype=float)
        f_mr = np.asarray(g(mid_r), dtype=float)
        _check_finite(f_ml, mid_l, context)
        _check_finite(f_mr, mid_r, context)
        evals += 2 * mid_l.size

        s_left = (mid - left) / 6.0 * (f_l + 4.0 * f_ml + f_m)
        s_right = (right - mid) / 6.0 * (f_m + 4.0 * f_mr + f_r)
        err = s_left + s_right - estimate
        refined = s_left + s_right
        done = np.abs(err) <= np.maximum(
            scale * (right - left), 15.0 * rtol * np.abs(refined)
        )
        total += float(np.sum((s_left + s_right + err / 15.0)[done]))
        if done.all():
            return total

        keep = ~done
        left = np.concatenate([left[keep], mid[keep]])
        right = np.concatenate([mid[keep], right[keep]])
        mid = np.concatenate([mid_l[keep], mid_r[keep]])
        f_l = np.concatenate([f_l[keep], f_m[keep]])
        f_r = np.concatenate([f_m[keep], f_r[keep]])
        f_m = np.concatenate([f_ml[keep], f_mr[keep]])
        estimate = np.concatenate([s_left[keep], s_right[keep]])
    raise QuadratureBudgetError(f"{context}: refinement depth {max_passes} exceeded")
