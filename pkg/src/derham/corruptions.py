"""Deliberately broken elements: negative controls for the verifiers.

A verifier that cannot fail proves nothing, so the test suite (and the
CLI via ``--corrupt``) ships four corruption fixtures, each aimed at one
verifier:

* ``swap_basis`` — exchanges the first two 0-form basis functions and
  rebuilds all matrices consistently.  The element is still a valid
  element with a permuted basis, so interpolation and the commutation
  identity survive; only the structural node-matrix checks (the
  identity block) break.
* ``wrong_functional`` — replaces the first 1-form functional descriptor
  with an endpoint derivative of the wrong order, without touching the
  matrices.  The functional-pairing hypothesis fails; because the
  pairing is exactly what makes interpolation commute with d for inputs
  outside the element space, the commutation verifier necessarily fails
  with it (an entailed cascade, not an independent defect).
* ``permute_alpha`` — swaps two rows of the stored 1-form inverse
  without recomputing it.  The node matrices themselves stay pristine,
  so unisolvence and the hypothesis checks pass; interpolation uses the
  broken inverse and the commutation verifier reports residuals.
* the flat sign rule (``tensor.flat_sign``) — drops the alternating sign
  of the tensor exterior derivative.  A global sign flip or a mirrored
  bit count would cancel out of both d(d(u)) and the commutation
  identity, so the falsifiable corruption is no alternation at all: it
  breaks d after d = 0 and nothing else.
"""

from __future__ import annotations

from dataclasses import replace

from .element1d import Element1D, assemble_element
from .functionals import EndpointDerivative

CORRUPTION_NAMES = ("swap-basis", "wrong-functional", "permute-alpha",
                    "flip-theta")


def swap_basis(element: Element1D) -> Element1D:
    """Swap the first two 0-form basis functions; rebuild consistently."""
    if element.n < 2:
        raise ValueError("need at least two basis functions to swap")
    basis0 = list(element.basis0)
    basis0[0], basis0[1] = basis0[1], basis0[0]
    basis1 = [p.derivative() for p in basis0[:element.n]]
    return assemble_element(element.m, element.n,
                            element.functionals0, element.functionals1,
                            basis0, basis1)


def wrong_functional(element: Element1D) -> Element1D:
    """Replace the first 1-form functional with one of the wrong order.

    The matrices are kept, so the element's tables lie about what they
    were built from; the functional-pairing check is the verifier that
    catches the lie.
    """
    pristine = element.functionals1[0]
    if isinstance(pristine, EndpointDerivative):
        corrupted = EndpointDerivative(1, pristine.point, pristine.order + 1)
    else:
        corrupted = EndpointDerivative(1, 0, element.m + 1)
    functionals1 = (corrupted,) + element.functionals1[1:]
    return replace(element, functionals1=functionals1)


def permute_alpha(element: Element1D) -> Element1D:
    """Swap the first two rows of the stored 1-form inverse."""
    if element.n < 2:
        raise ValueError("need at least a 2x2 inverse to permute")
    alpha1 = element.alpha1.copy()
    alpha1[[0, 1]] = alpha1[[1, 0]]
    return replace(element, alpha1=alpha1)


def corrupt(element: Element1D, name: str) -> Element1D:
    """Look up a 1D corruption by CLI name (flip-theta is tensor-level)."""
    if name == "swap-basis":
        return swap_basis(element)
    if name == "wrong-functional":
        return wrong_functional(element)
    if name == "permute-alpha":
        return permute_alpha(element)
    if name == "flip-theta":
        return element
    raise ValueError(f"unknown corruption {name!r}; "
                     f"expected one of {CORRUPTION_NAMES}")
