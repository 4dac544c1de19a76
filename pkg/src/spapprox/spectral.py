"""Sparse Fourier-coefficient representation of periodic functions.

A function is stored purely by its finitely many nonzero Fourier
coefficients; samples are an ingestion format only.  Norms, partial sums and
best approximations are all coefficient-side operations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

#: Absolute tolerance for coefficient equality and zero-pruning.
COEFF_TOL = 1e-12


class SpectrumFormatError(ValueError):
    """Malformed spectrum input (bad record, duplicate harmonic, ...)."""


class GridTooSmallError(ValueError):
    """Sample grid cannot resolve the requested band."""


@dataclass(frozen=True)
class Exponent:
    """Summability exponent p of the coefficient norm, 1 <= p < infinity."""

    p: float

    def __post_init__(self) -> None:
        if not (isinstance(self.p, (int, float)) and math.isfinite(self.p)):
            raise ValueError(f"exponent must be a finite real, got {self.p!r}")
        if self.p < 1:
            raise ValueError(f"exponent must satisfy p >= 1, got {self.p}")

    def __float__(self) -> float:
        return float(self.p)


def as_exponent(p) -> float:
    """Validate ``p`` (float or :class:`Exponent`) and return it as a float."""
    if isinstance(p, Exponent):
        return float(p)
    return float(Exponent(float(p)))


class SpectralFunction:
    """Finitely supported map harmonic index -> complex amplitude.

    Instances are immutable; amplitudes below :data:`COEFF_TOL` are pruned at
    construction, so the stored support is exactly the numerically nonzero
    one.  Equality compares coefficients entrywise within :data:`COEFF_TOL`.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        stored: dict[int, complex] = {}
        for k, c in items:
            if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
                raise SpectrumFormatError(f"harmonic index must be an integer, got {k!r}")
            c = complex(c)
            if abs(c) > COEFF_TOL:
                stored[int(k)] = c
        object.__setattr__(self, "_coeffs", stored)

    @property
    def coeffs(self) -> Mapping[int, complex]:
        return MappingProxyType(self._coeffs)

    def __getitem__(self, k: int) -> complex:
        return self._coeffs.get(k, 0j)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(sorted(self._coeffs))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    @property
    def order(self) -> int:
        """Largest |k| in the support (0 for the empty spectrum)."""
        return max((abs(k) for k in self._coeffs), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectralFunction):
            return NotImplemented
        keys = set(self._coeffs) | set(other._coeffs)
        return all(abs(self[k] - other[k]) <= COEFF_TOL for k in keys)

    __hash__ = None  # tolerance-based equality is not hashable

    def __add__(self, other: "SpectralFunction") -> "SpectralFunction":
        merged = dict(self._coeffs)
        for k, c in other._coeffs.items():
            merged[k] = merged.get(k, 0j) + c
        return SpectralFunction(merged)

    def __sub__(self, other: "SpectralFunction") -> "SpectralFunction":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "SpectralFunction":
        s = complex(scalar)
        return SpectralFunction({k: s * c for k, c in self._coeffs.items()})

    __rmul__ = __mul__

    def evaluate(self, x):
        """Evaluate sum of c_k * exp(i k x) at scalar or array ``x``."""
        x = np.asarray(x, dtype=float)
        if not self._coeffs:
            return np.zeros(x.shape, dtype=complex) if x.ndim else 0j
        ks = np.array(sorted(self._coeffs), dtype=float)
        cs = np.array([self._coeffs[int(k)] for k in ks])
        vals = np.exp(1j * np.multiply.outer(x, ks)) @ cs
        return vals if x.ndim else complex(vals)

    def __repr__(self) -> str:
        inside = ", ".join(f"{k}: {self._coeffs[k]:.6g}" for k in sorted(self._coeffs))
        return f"SpectralFunction({{{inside}}})"

    def to_json(self) -> list[dict]:
        return [
            {"k": k, "re": self._coeffs[k].real, "im": self._coeffs[k].imag}
            for k in sorted(self._coeffs)
        ]

    @classmethod
    def from_json(cls, records) -> "SpectralFunction":
        """Parse the record list format [{"k": int, "re": float, "im": float}]."""
        if isinstance(records, str):
            records = json.loads(records)
        seen: dict[int, complex] = {}
        for rec in records:
            try:
                k = rec["k"]
                c = complex(float(rec["re"]), float(rec.get("im", 0.0)))
            except (KeyError, TypeError, ValueError) as exc:
                raise SpectrumFormatError(f"bad spectrum record {rec!r}") from exc
            if not isinstance(k, int) or isinstance(k, bool):
                raise SpectrumFormatError(f"harmonic index must be an integer, got {k!r}")
            if k in seen:
                raise SpectrumFormatError(f"duplicate harmonic index k={k}")
            seen[k] = c
        return cls(seen)


def sp_norm(f: SpectralFunction, p) -> float:
    """Coefficient norm (sum over k of |c_k|^p)^(1/p); 0 for empty spectra."""
    p = as_exponent(p)
    if f.is_zero():
        return 0.0
    mags = np.abs(np.array(list(f.coeffs.values())))
    return float(np.sum(mags**p) ** (1.0 / p))


def partial_sum(f: SpectralFunction, n: int) -> SpectralFunction:
    """Keep exactly the harmonics with |k| <= n - 1."""
    if n < 1:
        raise ValueError(f"order must be a positive integer, got {n}")
    return SpectralFunction({k: c for k, c in f.coeffs.items() if abs(k) <= n - 1})


def best_approximation(f: SpectralFunction, p, n: int) -> float:
    """Distance to trigonometric polynomials of order n - 1: the tail norm over |k| >= n."""
    p = as_exponent(p)
    if n < 1:
        raise ValueError(f"order must be a positive integer, got {n}")
    tail = [abs(c) for k, c in f.coeffs.items() if abs(k) >= n]
    if not tail:
        return 0.0
    return float(np.sum(np.array(tail) ** p) ** (1.0 / p))


def fourier_from_samples(values, band: int) -> SpectralFunction:
    """Trapezoid-rule Fourier coefficients for |k| <= band.

    ``values`` are samples on the uniform grid x_j = 2*pi*j/N over [0, 2*pi).
    By periodicity the trapezoid rule collapses to the plain average
    (1/N) * sum_j v_j * exp(-i k x_j); it is exact (to roundoff) for
    trigonometric polynomials of order <= band whenever N > 2*band.
    """
    if band < 0:
        raise ValueError(f"band must be nonnegative, got {band}")
    v = np.asarray(values, dtype=complex)
    if v.ndim != 1:
        raise ValueError("samples must be a one-dimensional sequence")
    n_grid = v.size
    if n_grid < 2 * band + 1:
        raise GridTooSmallError(
            f"grid size {n_grid} < {2 * band + 1} required for band {band}"
        )
    x = 2.0 * np.pi * np.arange(n_grid) / n_grid
    ks = np.arange(-band, band + 1)
    coeffs = np.exp(-1j * np.multiply.outer(ks, x)) @ v / n_grid
    return SpectralFunction({int(k): c for k, c in zip(ks, coeffs)})
