"""Densities, differential operators between density spaces, and symbols.

A weight-lam density is phi(x)(dx)^lam.  An operator A in D^k_{lam,mu} maps
F_lam -> F_mu and is stored by its ordered coefficient list [a_0, ..., a_k]
for A = a_k d^k/dx^k + ... + a_0.  Vector fields act by Lie derivative on
densities and by commutator on operators; both actions are exact.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb

from . import rings
from .errors import RingMismatchError, WeightMismatchError
from .rings import CoefficientFunction, rat, format_rat


class Density:
    """phi(x)(dx)^weight over one of the two base geometries."""

    __slots__ = ("weight", "value")

    def __init__(self, weight, value: CoefficientFunction):
        object.__setattr__(self, "weight", rat(weight))
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, v):
        raise AttributeError("Density is immutable")

    @property
    def space(self):
        return self.value.space

    def __add__(self, other):
        if self.weight != other.weight:
            raise WeightMismatchError("cannot add densities of different weights")
        return Density(self.weight, self.value + other.value)

    def __sub__(self, other):
        if self.weight != other.weight:
            raise WeightMismatchError("cannot subtract densities of different weights")
        return Density(self.weight, self.value - other.value)

    def __mul__(self, scalar):
        return Density(self.weight, self.value * rat(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return Density(self.weight, -self.value)

    @property
    def is_zero(self):
        return self.value.is_zero

    def __eq__(self, other):
        return (
            isinstance(other, Density)
            and self.weight == other.weight
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.weight, self.value))

    def __repr__(self):
        return f"Density({self.weight}, {self.value!r})"


class VectorField:
    """X = X(x) d/dx, stored by its component X(x)."""

    __slots__ = ("value",)

    def __init__(self, value: CoefficientFunction):
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, v):
        raise AttributeError("VectorField is immutable")

    @property
    def space(self):
        return self.value.space

    def __repr__(self):
        return f"VectorField({self.value!r})"


class DensityOperator:
    """Differential operator in D^k_{lam,mu}: sum_i a_i(x) d^i/dx^i.

    The coefficient list is normalized so it never ends in the zero function
    unless the operator has order 0; the zero operator is order 0 with a zero
    coefficient.
    """

    __slots__ = ("lam", "mu", "coeffs", "space")

    def __init__(self, lam, mu, coeffs, space=None):
        coeffs = list(coeffs)
        sp = space
        if sp is None:
            sp = next(
                (c.space for c in coeffs if isinstance(c, (rings.PolyFn, rings.TrigFn))),
                None,
            )
        if sp is None:
            raise ValueError("cannot infer the space: pass a ring coefficient or space=")
        coeffs = [
            c if isinstance(c, (rings.PolyFn, rings.TrigFn)) else rings.constant(sp, c)
            for c in coeffs
        ] or [rings.zero(sp)]
        if any(c.space != sp for c in coeffs):
            raise RingMismatchError("coefficients live over different spaces")
        while len(coeffs) > 1 and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "lam", rat(lam))
        object.__setattr__(self, "mu", rat(mu))
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "space", sp)

    def __setattr__(self, name, v):
        raise AttributeError("DensityOperator is immutable")

    @classmethod
    def zero(cls, lam, mu, space):
        return cls(lam, mu, [rings.zero(space)])

    @classmethod
    def identity(cls, lam, space):
        return cls(lam, lam, [rings.one(space)])

    @classmethod
    def de_rham(cls, space):
        """The operator d, an element of D^1_{0,1}."""
        return cls(0, 1, [rings.zero(space), rings.one(space)])

    @classmethod
    def multiplication(cls, lam, mu, fn: CoefficientFunction):
        """Multiplication by the (mu-lam)-density fn, as an order-0 operator."""
        return cls(lam, mu, [fn])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def delta(self) -> Fraction:
        return self.mu - self.lam

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def coefficient(self, i: int) -> CoefficientFunction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else rings.zero(self.space)

    def _check_same_module(self, other):
        if (self.lam, self.mu) != (other.lam, other.mu):
            raise WeightMismatchError("operators live in different modules")
        if self.space != other.space:
            raise RingMismatchError("operators live over different spaces")

    def __add__(self, other):
        self._check_same_module(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DensityOperator(
            self.lam, self.mu,
            [self.coefficient(i) + other.coefficient(i) for i in range(n)],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DensityOperator(self.lam, self.mu, [-c for c in self.coeffs])

    def __mul__(self, scalar):
        q = rat(scalar)
        return DensityOperator(self.lam, self.mu, [c * q for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, DensityOperator)
            and (self.lam, self.mu) == (other.lam, other.mu)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.lam, self.mu, self.coeffs))

    def __repr__(self):
        return (
            f"DensityOperator(lam={self.lam}, mu={self.mu}, "
            f"coeffs={[str(c) for c in self.coeffs]})"
        )

    def to_json(self) -> str:
        return json.dumps({
            "lambda": format_rat(self.lam),
            "mu": format_rat(self.mu),
            "space": self.space,
            "coeffs": [rings.to_text(c) for c in self.coeffs],
        })

    @classmethod
    def from_json(cls, text: str) -> "DensityOperator":
        data = json.loads(text)
        coeffs = [rings.from_text(c) for c in data["coeffs"]]
        op = cls(Fraction(data["lambda"]), Fraction(data["mu"]), coeffs)
        if op.space != data["space"]:
            raise RingMismatchError("JSON space tag does not match coefficients")
        return op


class PolynomialSymbol:
    """Total symbol: entry i is paired with xi^(i - delta)."""

    __slots__ = ("delta", "coeffs")

    def __init__(self, delta, coeffs):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "delta", rat(delta))
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, v):
        raise AttributeError("PolynomialSymbol is immutable")

    @property
    def space(self):
        return self.coeffs[0].space

    def __add__(self, other):
        if self.delta != other.delta:
            raise WeightMismatchError("symbols with different delta")
        n = max(len(self.coeffs), len(other.coeffs))
        z = rings.zero(self.space)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return PolynomialSymbol(self.delta, [x + y for x, y in zip(a, b)])

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialSymbol)
            and self.delta == other.delta
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.delta, self.coeffs))

    def __repr__(self):
        return f"PolynomialSymbol(delta={self.delta}, coeffs={[str(c) for c in self.coeffs]})"


# ----------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------

def apply(A: DensityOperator, phi: Density) -> Density:
    """A(phi) = (sum_i a_i phi^(i))(dx)^mu."""
    if phi.weight != A.lam:
        raise WeightMismatchError(
            f"operator expects weight {A.lam}, density has weight {phi.weight}"
        )
    if phi.space != A.space:
        raise RingMismatchError("operator and density live over different spaces")
    out = rings.zero(A.space)
    der = phi.value
    for i, a in enumerate(A.coeffs):
        if i > 0:
            der = der.diff()
        if not a.is_zero:
            out = out + a * der
    return Density(A.mu, out)


def compose(A: DensityOperator, B: DensityOperator) -> DensityOperator:
    """A o B via the Leibniz expansion of d^i o b."""
    if B.mu != A.lam:
        raise WeightMismatchError(
            f"cannot compose: inner operator lands in weight {B.mu}, "
            f"outer expects {A.lam}"
        )
    if A.space != B.space:
        raise RingMismatchError("operators live over different spaces")
    out = [rings.zero(A.space) for _ in range(A.order + B.order + 1)]
    for i, a in enumerate(A.coeffs):
        if a.is_zero:
            continue
        for j, b in enumerate(B.coeffs):
            if b.is_zero:
                continue
            # d^i o (b d^j) = sum_t C(i,t) b^(t) d^(i-t+j)
            der = b
            for t in range(i + 1):
                if t > 0:
                    der = der.diff()
                out[i - t + j] = out[i - t + j] + (a * der) * comb(i, t)
    return DensityOperator(B.lam, A.mu, out)


def lie_derivative_density(X: VectorField, phi: Density) -> Density:
    """L_X(phi) = (X phi' + weight X' phi)(dx)^weight."""
    if X.space != phi.space:
        raise RingMismatchError("field and density live over different spaces")
    val = X.value * phi.value.diff() + phi.weight * (X.value.diff() * phi.value)
    return Density(phi.weight, val)


def lie_operator(X: VectorField, weight) -> DensityOperator:
    """The Lie derivative along X as a first-order operator in D^1_{w,w}."""
    w = rat(weight)
    return DensityOperator(w, w, [w * X.value.diff(), X.value])


def lie_derivative_operator(X: VectorField, A: DensityOperator) -> DensityOperator:
    """Commutator action: L^mu_X o A - A o L^lam_X, order <= ord(A)."""
    if X.space != A.space:
        raise RingMismatchError("field and operator live over different spaces")
    out = compose(lie_operator(X, A.mu), A) - compose(A, lie_operator(X, A.lam))
    # the top-order terms cancel exactly; re-normalization drops them
    assert out.order <= A.order, "commutator action raised the order"
    return out


def pairing(phi: Density, psi: Density) -> Fraction:
    """Invariant pairing of F_lam with F_{1-lam}: mean of the product."""
    if phi.space != rings.CIRCLE or psi.space != rings.CIRCLE:
        raise WeightMismatchError("the pairing is only defined on the circle")
    if phi.weight + psi.weight != 1:
        raise WeightMismatchError("pairing needs weights summing to 1")
    return rings.circle_mean(phi.value * psi.value)


def total_symbol(A: DensityOperator) -> PolynomialSymbol:
    """Coefficient-wise identification of an operator with its total symbol."""
    return PolynomialSymbol(A.delta, A.coeffs)


def from_symbol(P: PolynomialSymbol, lam, mu) -> DensityOperator:
    lam, mu = rat(lam), rat(mu)
    if mu - lam != P.delta:
        raise WeightMismatchError("weights do not match the symbol's delta")
    return DensityOperator(lam, mu, P.coeffs)
