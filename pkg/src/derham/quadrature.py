"""Gauss-Legendre quadrature on [0, 1]."""

from __future__ import annotations

from functools import lru_cache

from numpy.polynomial.legendre import leggauss


@lru_cache(maxsize=None)
def gauss_rule(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Nodes and weights of the order-point Gauss rule mapped to [0, 1].

    Exact (up to rounding) for polynomials of degree <= 2*order - 1.
    """
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    nodes, weights = leggauss(order)
    return tuple((x + 1.0) / 2.0 for x in nodes), tuple(w / 2.0 for w in weights)
