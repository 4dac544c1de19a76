"""Sharp direct estimates: tail norms bounded by averaged moduli.

The central quantity is the windowed infimum over integer dilations k >= n
of the weighted shape integral

    I(n) = min_k  integral_0^tau shape(k t / n)^p dmu(t).

When that infimum equals the undilated integral, the direct estimate

    E_n(f)  <=  (mass / I(n))^(1/p) * tail_sup(psi, n) * averaged modulus

is attained (up to the stated tolerances) by an explicit two-harmonic
extremal, and the attained ratio is the sharp constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .averaging import (
    WeightMeasure,
    averaged_modulus,
    averaged_pow_modulus,
)
from .psi import PsiSequence, psi_derivative, tail_sup_info
from .quadrature import DEFAULT_BUDGET, DEFAULT_TOL, adaptive_simpson
from .smoothness import ModulusCurve, ModulusGrid, ShapeFunction
from .spectral import SpectralFunction, as_exponent, best_approximation

#: Relative slack for deciding the integer argmin and ties toward smaller k.
ARGMIN_REL_TOL = 1e-9
#: Relative tolerance of the sharpness (equivalence) condition.
EQUIV_REL_TOL = 1e-7


class SharpnessNotCertifiedError(RuntimeError):
    """A sharp-constant precondition failed; only the inequality holds."""


def default_k_max(n: int) -> int:
    return 64 * n + 1024


def shape_mass(
    shape: ShapeFunction,
    p,
    mu: WeightMeasure,
    *,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """integral_0^tau shape(t)^p dmu(t)."""
    p = as_exponent(p)
    total = 0.0
    if mu.density is not None:
        total += adaptive_simpson(
            lambda t: np.asarray(shape.eval(t), dtype=float) ** p
            * np.asarray(mu.density(t), dtype=float),
            0.0,
            mu.tau,
            tol=tol,
            budget=budget,
            context="shape mass",
        )
    for loc, m in mu.atoms:
        total += m * float(np.asarray(shape.eval(np.array([loc])), dtype=float)[0]) ** p
    return total


def _dilated_shape_integral(
    shape: ShapeFunction, p: float, mu: WeightMeasure, theta: float,
    tol: float, budget: int,
) -> float:
    """integral_0^tau shape(theta * t)^p dmu(t) with oscillation-aware panels."""
    total = 0.0
    if mu.density is not None:
        periods = theta * mu.tau / math.pi
        panels = max(64, int(2 * periods) + 1)
        total += adaptive_simpson(
            lambda t: np.asarray(shape.eval(theta * np.asarray(t, float)), dtype=float) ** p
            * np.asarray(mu.density(t), dtype=float),
            0.0,
            mu.tau,
            tol=tol,
            budget=budget,
            initial_panels=panels,
            context=f"dilated shape integral (theta={theta:g})",
        )
    for loc, m in mu.atoms:
        total += m * float(np.asarray(shape.eval(np.array([theta * loc])), dtype=float)[0]) ** p
    return total


@dataclass(frozen=True)
class InfReport:
    """Windowed integer infimum of the dilated shape integral.

    ``argmin_k`` is the smallest integer attaining the window minimum within
    :data:`ARGMIN_REL_TOL`; the string ``"horizon"`` means the minimum sat on
    the window edge, in which case nothing is claimed about the true infimum.
    """

    value: float
    argmin_k: int | str
    k_max: int
    attained_at_n: bool


def inf_quantity(
    n: int,
    shape: ShapeFunction,
    p,
    mu: WeightMeasure,
    k_max: int | None = None,
    *,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> InfReport:
    """Minimum over k in [n, k_max] of the dilated shape integral."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    k_max = default_k_max(n) if k_max is None else int(k_max)
    if k_max < n:
        raise ValueError(f"k_max must be >= n, got {k_max} < {n}")
    p = as_exponent(p)
    values = np.array([
        _dilated_shape_integral(shape, p, mu, k / n, tol, budget)
        for k in range(n, k_max + 1)
    ])
    vmin = float(values.min())
    argmin = n + int(np.argmax(values <= vmin * (1.0 + ARGMIN_REL_TOL)))
    attained = argmin == n
    label: int | str = argmin
    if argmin == k_max and k_max > n:
        label = "horizon"
    return InfReport(value=vmin, argmin_k=label, k_max=k_max, attained_at_n=attained)


def closed_form_inf(lam) -> float:
    """Closed form 2^(lam+1)/(lam+1) of the dilated integral minimum.

    Valid for the 1-cos weight on [0, pi] at positive integer powers lam
    only; non-integer lam is rejected.
    """
    if isinstance(lam, float) and not lam.is_integer():
        raise ValueError(f"closed form requires integer lam, got {lam}")
    lam = int(lam)
    if lam < 1:
        raise ValueError(f"closed form requires lam >= 1, got {lam}")
    return 2.0 ** (lam + 1) / (lam + 1)


def equiv_condition_check(
    n: int,
    shape: ShapeFunction,
    p,
    mu: WeightMeasure,
    k_max: int | None = None,
    inf_report: InfReport | None = None,
) -> bool:
    """True iff the windowed infimum equals the undilated shape integral."""
    report = inf_report if inf_report is not None else inf_quantity(n, shape, p, mu, k_max)
    ref = shape_mass(shape, p, mu)
    return abs(report.value - ref) <= EQUIV_REL_TOL * abs(ref)


@dataclass(frozen=True)
class JacksonBound:
    """One evaluation of the direct estimate.

    ``bound`` uses the averaged modulus, ``bound_plain`` the plain modulus at
    the same window; the former never exceeds the latter.
    """

    lhs: float
    bound: float
    holds: bool
    bound_plain: float
    holds_plain: bool


def jackson_bound(
    f: SpectralFunction,
    psi: PsiSequence,
    shape: ShapeFunction,
    p,
    mu: WeightMeasure,
    n: int,
    k_max: int | None = None,
    grid: ModulusGrid | None = None,
    inf_report: InfReport | None = None,
) -> JacksonBound:
    """Check the direct estimate for one spectrum.

    lhs = E_n(f); bound = (mass/I(n))^(1/p) * tail_sup * averaged modulus of
    the roughened spectrum over [0, tau/n].  ``inf_report`` may be supplied
    to reuse a precomputed window minimum.
    """
    p = as_exponent(p)
    report = inf_report if inf_report is not None else inf_quantity(n, shape, p, mu, k_max)
    rough = psi_derivative(f, psi)
    lhs = best_approximation(f, p, n)
    factor = (mu.total_mass / report.value) ** (1.0 / p) * tail_sup_info(psi, n).value
    u = mu.tau / n
    curve = ModulusCurve(rough, p, shape, u, grid)
    if rough.is_zero():
        omega_avg = 0.0
        omega_plain = 0.0
    else:
        omega_avg = averaged_pow_modulus(curve, mu, u) ** (1.0 / p)
        omega_plain = curve.value(u)
    bound = factor * omega_avg
    bound_plain = factor * omega_plain
    return JacksonBound(
        lhs=lhs,
        bound=bound,
        holds=lhs <= bound + 1e-9,
        bound_plain=bound_plain,
        holds_plain=lhs <= bound_plain + 1e-9,
    )


def sharp_constant(
    shape: ShapeFunction,
    p,
    mu: WeightMeasure,
    psi: PsiSequence,
    n: int,
    k_max: int | None = None,
    inf_report: InfReport | None = None,
) -> float:
    """(mass / shape_mass)^(1/p) * tail_sup(psi, n): the unimprovable ratio.

    Requires the equivalence condition, a shape nondecreasing on the whole
    weight support, and a tail supremum attained at |k| = n; otherwise raises
    :class:`SharpnessNotCertifiedError`.
    """
    p = as_exponent(p)
    if shape.cap_point is None or shape.cap_point < mu.tau * (1.0 - 1e-12):
        raise SharpnessNotCertifiedError(
            "sharpness not certified: shape is not declared nondecreasing on "
            f"[0, {mu.tau:g}]"
        )
    info = tail_sup_info(psi, n)
    at_n = max(abs(psi(n)), abs(psi(-n)))
    if at_n < info.value * (1.0 - 1e-12):
        raise SharpnessNotCertifiedError(
            "sharpness not certified: tail supremum is not attained at |k| = n"
        )
    if not equiv_condition_check(n, shape, p, mu, k_max, inf_report):
        raise SharpnessNotCertifiedError(
            "sharpness not certified: dilated-integral infimum differs from "
            "the undilated shape integral"
        )
    return (mu.total_mass / shape_mass(shape, p, mu)) ** (1.0 / p) * info.value


def extremal_function(
    n: int, psi: PsiSequence, delta: complex = 1.0, gamma: complex = 0.0
) -> SpectralFunction:
    """Two-harmonic extremal: gamma + eps_(-n)*delta*e^(-inx) + eps_n*delta*e^(inx).

    eps is 1 on the side(s) where |psi| attains the tail supremum and 0
    elsewhere; if neither side attains it the construction is undefined.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    info = tail_sup_info(psi, n)
    if not math.isfinite(info.value):
        raise ValueError("tail supremum is not finite")
    eps_pos = abs(psi(n)) >= info.value * (1.0 - 1e-12)
    eps_neg = abs(psi(-n)) >= info.value * (1.0 - 1e-12)
    if not (eps_pos or eps_neg):
        raise ValueError(
            "extremal construction requires the tail supremum to be attained "
            f"at k = +-{n}; sup over the scanned tail is {info.value:g} but "
            f"|psi(+-{n})| = ({abs(psi(n)):g}, {abs(psi(-n)):g})"
        )
    coeffs = {0: complex(gamma)}
    if eps_neg:
        coeffs[-n] = complex(delta)
    if eps_pos:
        coeffs[n] = complex(delta)
    return SpectralFunction(coeffs)


@dataclass(frozen=True)
class SharpnessReport:
    """End-to-end attained ratio against the closed-form constant."""

    ratio: float
    constant: float
    rel_gap: float


def sharpness_certificate(
    shape: ShapeFunction,
    p,
    mu: WeightMeasure,
    psi: PsiSequence,
    n: int,
    grid: ModulusGrid | None = None,
    k_max: int | None = None,
    inf_report: InfReport | None = None,
) -> SharpnessReport:
    """Build the extremal, run the full numerical pipeline, compare.

    ratio = E_n(extremal) / averaged modulus of its roughening; the relative
    gap to :func:`sharp_constant` certifies sharpness at desk scale.
    """
    p = as_exponent(p)
    constant = sharp_constant(shape, p, mu, psi, n, k_max, inf_report)
    f_ext = extremal_function(n, psi, delta=1.0, gamma=0.0)
    lhs = best_approximation(f_ext, p, n)
    rough = psi_derivative(f_ext, psi)
    omega_avg = averaged_modulus(rough, p, shape, mu, mu.tau / n, grid)
    ratio = lhs / omega_avg
    return SharpnessReport(
        ratio=ratio, constant=constant, rel_gap=abs(ratio - constant) / constant
    )
