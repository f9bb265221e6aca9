"""Bessel J0 and the two quadrature rules used throughout the package.

The Bessel evaluator is self-contained (no scipy.special) so that the
transform identities tested elsewhere do not silently compare a library
against itself.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "WeightKind",
    "QuadratureRule",
    "bessel_j0",
    "chebyshev_singular_rule",
    "periodic_trapezoid",
    "periodic_trapezoid_rule",
]

# Series/asymptotic split for J0.  Below the split the power series loses at
# most ~3e-12 to cancellation; above it the truncated Hankel expansion is
# good to ~2e-11.  Both sit well inside the 1e-10 contract on |x| <= 50.
_J0_SPLIT = 12.0
_J0_TERM_FLOOR = 1e-17

# Hankel asymptotic coefficients a_k = (-1)^k ((2k-1)!!)^2 / (k! 8^k),
# built exactly in integers and rounded once to float.
def _asymptotic_coefficients(count: int) -> list[float]:
    coefs = [1.0]
    num = 1
    for k in range(1, count):
        num *= (2 * k - 1) ** 2
        den = math.factorial(k) * 8**k
        coefs.append((-1) ** k * num / den)
    return coefs

_A = _asymptotic_coefficients(16)
# cos-phase polynomial in 1/x^2 uses a_0, a_2, ...; sin-phase uses a_1, a_3, ...
_J0_P = [(-1) ** j * _A[2 * j] for j in range(8)]
_J0_Q = [(-1) ** j * _A[2 * j + 1] for j in range(8)]


def _j0_series(x: np.ndarray) -> np.ndarray:
    z = -(x * x) / 4.0
    term = np.ones_like(x)
    total = np.ones_like(x)
    k = 0
    while True:
        k += 1
        term = term * z / (k * k)
        total = total + term
        if not term.size or np.max(np.abs(term)) < _J0_TERM_FLOOR:
            return total


def _j0_asymptotic(x: np.ndarray) -> np.ndarray:
    inv2 = 1.0 / (x * x)
    p = np.full_like(x, _J0_P[-1])
    for c in reversed(_J0_P[:-1]):
        p = p * inv2 + c
    q = np.full_like(x, _J0_Q[-1])
    for c in reversed(_J0_Q[:-1]):
        q = q * inv2 + c
    q = q / x
    chi = x - 0.25 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j0(x):
    """Bessel function of the first kind, order zero.

    Power series below ``x = 12`` with term recurrence, Hankel asymptotic
    expansion (eight cos- and eight sin-phase terms) above.  Absolute error
    is below 1e-10 for ``|x| <= 50``.  Even by construction: the argument's
    sign is dropped before evaluation.

    Accepts a scalar or an ndarray; returns a matching scalar or ndarray.
    """
    arr = np.abs(np.asarray(x, dtype=float))
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = arr <= _J0_SPLIT
    if small.any():
        out[small] = _j0_series(arr[small])
    if (~small).any():
        out[~small] = _j0_asymptotic(arr[~small])
    return float(out[0]) if scalar else out


class WeightKind(enum.Enum):
    CHEBYSHEV_SINGULAR = "chebyshev_singular"
    PERIODIC_TRAPEZOID = "periodic_trapezoid"


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for a fixed weight function on an interval.

    ``CHEBYSHEV_SINGULAR`` rules target integrals of the form
    ``int_a^b f(u) / sqrt((u - a)(b - u)) du``; applying the rule to ``f``
    means ``sum(weights * f(nodes))``.  ``PERIODIC_TRAPEZOID`` rules hold
    the uniform angular grid on [0, 2pi).  Rules are immutable value
    objects and safe to share across threads and r-sweeps.
    """

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]
    weight_kind: WeightKind = field(default=WeightKind.CHEBYSHEV_SINGULAR)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size < 1:
            raise ValueError("nodes and weights must be equal-length 1-d arrays with >= 1 entry")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        a, b = self.interval
        if self.weight_kind is WeightKind.CHEBYSHEV_SINGULAR:
            if not (np.all(nodes > a) and np.all(nodes < b)):
                raise ValueError("chebyshev nodes must lie strictly inside the interval")
        else:
            expected = np.arange(nodes.size) * (2.0 * np.pi / nodes.size)
            if not np.array_equal(nodes, expected):
                raise ValueError("periodic trapezoid nodes must be the uniform grid on [0, 2pi)")

    def __len__(self) -> int:
        return self.nodes.size

    def apply(self, f) -> float:
        """``sum(w_k * f(u_k))`` with ``f`` vectorized over the node array."""
        vals = _eval_on_nodes(f, self.nodes)
        return float(np.sum(self.weights * vals))


def _eval_on_nodes(f, nodes: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on an array of nodes, falling back to a scalar loop."""
    try:
        vals = np.asarray(f(nodes), dtype=float)
        if vals.shape == nodes.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(f(u)) for u in nodes])


def chebyshev_singular_rule(a: float, b: float, n: int) -> QuadratureRule:
    """Gauss-Chebyshev rule for the weight ``1/sqrt((u - a)(b - u))`` on (a, b).

    Nodes are ``(a+b)/2 + (b-a)/2 * cos((2k-1) pi / (2n))`` for k = 1..n and
    every weight equals ``pi/n``.  Exact for polynomials of degree < 2n
    against the weight; in particular ``f = 1`` integrates to pi for any n.
    """
    if not a < b:
        raise ValueError(f"interval must satisfy a < b, got ({a}, {b})")
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    k = np.arange(1, n + 1)
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * np.cos((2 * k - 1) * np.pi / (2 * n))
    weights = np.full(n, np.pi / n)
    return QuadratureRule(nodes, weights, (float(a), float(b)), WeightKind.CHEBYSHEV_SINGULAR)


def periodic_trapezoid_rule(n: int) -> QuadratureRule:
    """Uniform n-point rule on [0, 2pi): nodes ``2 pi j / n``, weights ``2 pi / n``."""
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    nodes = np.arange(n) * (2.0 * np.pi / n)
    weights = np.full(n, 2.0 * np.pi / n)
    return QuadratureRule(nodes, weights, (0.0, 2.0 * np.pi), WeightKind.PERIODIC_TRAPEZOID)


def periodic_trapezoid(f, n: int) -> float:
    """``(2 pi / n) * sum_j f(2 pi j / n)``.

    Spectrally accurate for smooth 2pi-periodic integrands; exact to
    rounding on trigonometric polynomials of degree < n.
    """
    return periodic_trapezoid_rule(n).apply(f)
