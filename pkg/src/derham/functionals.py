"""Node functionals of the interval element.

Three variants cover every degree of freedom: endpoint derivatives of
Hermite type, moments against shifted Legendre polynomials, and the sum
of the two endpoint values.  The same descriptors apply exactly to
polynomials and, through quadrature, to smooth callback functions; they
also expand into pointwise "atoms" so products of them can act on
functions of several variables.

Family layout for the degree-n element with smoothness m (the ordering is
frozen; serialized tables record ``FUNCTIONAL_ORDER_VERSION``):

* 0-forms, indices 1..n+1: derivatives ``u'(0), u'(1), .., u^(m)(0),
  u^(m)(1)``, then moments ``int l_{i-1} u'`` for i = 1..n-2m, then
  ``u(1)+u(0)``.
* 1-forms, indices 1..n: derivatives ``v(0), v(1), .., v^(m-1)(0),
  v^(m-1)(1)``, then moments ``int l_{i-1} v`` for i = 1..n-2m.

The first moment of the 0-form family equals ``u(1)-u(0)``; it is stored
as a moment so the two families stay structurally parallel, and the
endpoint identity is checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .polycore import Polynomial, legendre
from .quadrature import gauss_rule

FUNCTIONAL_ORDER_VERSION = 1

#: (weight, node, derivative order) triple; a functional is the sum over
#: its atoms of weight * d^order u(node).  Moment atoms carry quadrature
#: weights, so they are exact only up to the quadrature error.
Atom = tuple[float, float, int]


@dataclass(frozen=True)
class EndpointDerivative:
    """d^order u evaluated at an endpoint (order 0 is the plain value)."""

    form_degree: int
    point: int
    order: int

    def __post_init__(self):
        if self.form_degree not in (0, 1):
            raise ValueError("form_degree must be 0 or 1")
        if self.point not in (0, 1):
            raise ValueError("endpoint must be 0 or 1")
        minimum = 1 if self.form_degree == 0 else 0
        if self.order < minimum:
            raise ValueError(
                f"endpoint derivative order must be >= {minimum} "
                f"for {self.form_degree}-forms")

    def apply(self, u: Polynomial) -> Fraction:
        return u.derivative_value(self.order, Fraction(self.point))

    def apply_smooth(self, u, quadrature_order: int = 0) -> float:
        return u.derivative(self.order, float(self.point))

    def atoms(self, quadrature_order: int) -> list[Atom]:
        return [(1.0, float(self.point), self.order)]

    def describe(self, var: str = "u") -> str:
        if self.order == 0:
            return f"{var}({self.point})"
        tick = "'" * self.order if self.order <= 2 else f"^({self.order})"
        return f"{var}{tick}({self.point})"

    def to_json(self) -> dict:
        return {"kind": "endpoint_derivative", "form": self.form_degree,
                "point": self.point, "order": self.order}


@dataclass(frozen=True)
class Moment:
    """Integral of l_{legendre_index} times u (or u' for 0-forms)."""

    form_degree: int
    legendre_index: int
    of_derivative: bool

    def __post_init__(self):
        if self.form_degree not in (0, 1):
            raise ValueError("form_degree must be 0 or 1")
        if self.legendre_index < 0:
            raise ValueError("legendre_index must be >= 0")
        if self.form_degree == 0 and not self.of_derivative:
            raise ValueError("0-form moments act on the derivative")
        if self.form_degree == 1 and self.of_derivative:
            raise ValueError("1-form moments act on the value")

    def apply(self, u: Polynomial) -> Fraction:
        integrand = u.derivative() if self.of_derivative else u
        return (legendre(self.legendre_index) * integrand).integral01()

    def apply_smooth(self, u, quadrature_order: int) -> float:
        nodes, weights = gauss_rule(quadrature_order)
        weight_poly = legendre(self.legendre_index)
        order = 1 if self.of_derivative else 0
        return sum(w * weight_poly(x) * u.derivative(order, x)
                   for x, w in zip(nodes, weights))

    def atoms(self, quadrature_order: int) -> list[Atom]:
        nodes, weights = gauss_rule(quadrature_order)
        weight_poly = legendre(self.legendre_index)
        order = 1 if self.of_derivative else 0
        return [(w * weight_poly(x), x, order) for x, w in zip(nodes, weights)]

    def describe(self, var: str = "u") -> str:
        if self.of_derivative:
            if self.legendre_index == 0:
                # first moment of the derivative telescopes to endpoint values
                return f"{var}(1)-{var}(0)"
            return f"int(l{self.legendre_index}*{var}')"
        if self.legendre_index == 0:
            return f"int({var})"
        return f"int(l{self.legendre_index}*{var})"

    def to_json(self) -> dict:
        return {"kind": "moment", "form": self.form_degree,
                "legendre_index": self.legendre_index,
                "of_derivative": self.of_derivative}


@dataclass(frozen=True)
class EndpointSum:
    """u(1) + u(0); only the 0-form family carries it."""

    form_degree: int = 0

    def __post_init__(self):
        if self.form_degree != 0:
            raise ValueError("endpoint sum exists for 0-forms only")

    def apply(self, u: Polynomial) -> Fraction:
        return u(Fraction(1)) + u(Fraction(0))

    def apply_smooth(self, u, quadrature_order: int = 0) -> float:
        return u.derivative(0, 1.0) + u.derivative(0, 0.0)

    def atoms(self, quadrature_order: int) -> list[Atom]:
        return [(1.0, 1.0, 0), (1.0, 0.0, 0)]

    def describe(self, var: str = "u") -> str:
        return f"{var}(1)+{var}(0)"

    def to_json(self) -> dict:
        return {"kind": "endpoint_sum", "form": 0}


NodeFunctional = Union[EndpointDerivative, Moment, EndpointSum]


def functional_from_json(data: dict) -> NodeFunctional:
    kind = data["kind"]
    if kind == "endpoint_derivative":
        return EndpointDerivative(data["form"], data["point"], data["order"])
    if kind == "moment":
        return Moment(data["form"], data["legendre_index"], data["of_derivative"])
    if kind == "endpoint_sum":
        return EndpointSum()
    raise ValueError(f"unknown functional kind {kind!r}")


def zero_form_functionals(m: int, n: int) -> list[NodeFunctional]:
    """The n+1 functionals of the 0-form element, in frozen order."""
    out: list[NodeFunctional] = []
    for i in range(m):
        out.append(EndpointDerivative(0, 0, i + 1))
        out.append(EndpointDerivative(0, 1, i + 1))
    for i in range(1, n - 2 * m + 1):
        out.append(Moment(0, i - 1, of_derivative=True))
    out.append(EndpointSum())
    return out


def one_form_functionals(m: int, n: int) -> list[NodeFunctional]:
    """The n functionals of the 1-form element, in frozen order."""
    out: list[NodeFunctional] = []
    for i in range(m):
        out.append(EndpointDerivative(1, 0, i))
        out.append(EndpointDerivative(1, 1, i))
    for i in range(1, n - 2 * m + 1):
        out.append(Moment(1, i - 1, of_derivative=False))
    return out
