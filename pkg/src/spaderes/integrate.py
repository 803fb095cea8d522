"""Composite Gauss-Legendre quadrature helpers.

Two integration strategies are provided:

* ``composite_gauss_legendre`` / ``integrate_refined`` for smooth integrands
  on a finite interval (rapidly decaying tails already truncated away).
* ``integrate_oscillatory_tails`` for even-symmetric domains where the
  integrand decays only algebraically (~1/x) while oscillating with a fixed
  period.  Truncating such an integral at +-X leaves an O(1/X) tail, so the
  partial integrals are computed on a geometric ladder of panel-aligned
  half-widths and extrapolated to X -> infinity in powers of 1/X.

Integrands must accept and return numpy arrays.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NumericError


@lru_cache(maxsize=32)
def _gl_nodes(n_nodes: int):
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    return x, w


def composite_gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    n_panels: int,
    n_nodes: int = 16,
) -> float:
    """Integral of ``f`` over [a, b] with ``n_panels`` equal Gauss-Legendre panels."""
    if not b > a:
        raise ValueError(f"empty or inverted interval [{a}, {b}]")
    x, w = _gl_nodes(n_nodes)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return float(np.dot(ws, np.asarray(f(xs), dtype=float)))


def integrate_refined(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    n_panels: int = 48,
    n_nodes: int = 16,
) -> tuple[float, float]:
    """Integrate on [a, b]; return (value, error estimate from panel doubling)."""
    coarse = composite_gauss_legendre(f, a, b, n_panels, n_nodes)
    fine = composite_gauss_legendre(f, a, b, 2 * n_panels, n_nodes)
    return fine, abs(fine - coarse)


def _extrapolate_to_zero(ts: np.ndarray, values: list[float]) -> tuple[float, float]:
    """Neville polynomial extrapolation of values(t) to t = 0."""
    table = list(values)
    n = len(table)
    best = table[-1]
    prev = best
    for m in range(1, n):
        for i in range(n - m):
            table[i] = table[i + 1] + (table[i + 1] - table[i]) * ts[i + m] / (
                ts[i] - ts[i + m]
            )
        prev, best = best, table[0]
    return best, abs(best - prev)


def integrate_oscillatory_tails(
    f: Callable[[np.ndarray], np.ndarray],
    half_width: float,
    period: float,
    levels: int = 4,
    n_nodes: int = 16,
) -> tuple[float, float]:
    """Integral of ``f`` over (-inf, inf) for 1/x-decaying periodic-tail integrands.

    The partial integral over [-X, X] behaves as S(X) = S - c1/X - c2/X^2 - ...
    with coefficients that are constant when X is restricted to even multiples
    of the oscillation period, so S is recovered by polynomial extrapolation in
    1/X over the ladder X0, 2*X0, ..., 2^(levels-1)*X0.

    Returns (value, error estimate from the extrapolation table).
    """
    if levels < 2:
        raise ValueError("need at least two ladder levels to extrapolate")
    # initial half-width: smallest even multiple of the period >= half_width
    m0 = max(2, 2 * int(np.ceil(half_width / (2.0 * period))))
    widths = []
    partials = []
    total = 0.0
    prev_x = 0.0
    for level in range(levels):
        x_level = m0 * period * (2**level)
        n_new = int(round((x_level - prev_x) / period))
        if prev_x == 0.0:
            total += composite_gauss_legendre(f, -x_level, x_level, 2 * n_new, n_nodes)
        else:
            total += composite_gauss_legendre(f, prev_x, x_level, n_new, n_nodes)
            total += composite_gauss_legendre(f, -x_level, -prev_x, n_new, n_nodes)
        prev_x = x_level
        widths.append(x_level)
        partials.append(total)
    value, err = _extrapolate_to_zero(1.0 / np.asarray(widths), partials)
    return value, err


def check_converged(value: float, err: float, rel_tol: float, abs_tol: float, what: str) -> float:
    """Raise NumericError when an integral's error estimate exceeds tolerance."""
    if not np.isfinite(value) or err > max(abs_tol, rel_tol * abs(value)):
        raise NumericError(
            f"quadrature for {what} did not converge: value={value!r}, "
            f"error estimate={err:.3e}, rel_tol={rel_tol:.1e}, abs_tol={abs_tol:.1e}"
        )
    return value
