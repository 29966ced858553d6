"""Exact coefficient rings on the two base geometries.

Two computable dense subrings of the smooth functions are used everywhere:
rational polynomials in x on the line, and finite trigonometric polynomials
with rational coefficients on the circle.  All arithmetic is exact; nothing
here ever truncates or rounds.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import RingMismatchError, UnsupportedFunctionalError

LINE = "line"
CIRCLE = "circle"

Rat = Fraction


def rat(value) -> Fraction:
    """Coerce ints, strings like '-3/7', and Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class PolyFn:
    """Polynomial in x with Fraction coefficients, index = monomial degree.

    Trailing zero coefficients are stripped; the zero polynomial has an empty
    coefficient tuple and degree None.
    """

    __slots__ = ("coeffs",)
    space = LINE

    def __init__(self, coeffs=()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyFn is immutable")

    @classmethod
    def zero(cls) -> "PolyFn":
        return cls(())

    @classmethod
    def constant(cls, c) -> "PolyFn":
        return cls((rat(c),))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "PolyFn":
        return cls((Fraction(0),) * degree + (rat(c),))

    @classmethod
    def x(cls) -> "PolyFn":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, degree: int) -> Fraction:
        return self.coeffs[degree] if 0 <= degree < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _coerce(other, self)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyFn(
            (self.coefficient(i) + other.coefficient(i)) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return PolyFn(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other, self))

    def __rsub__(self, other):
        return _coerce(other, self) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyFn(tuple(rat(other) * c for c in self.coeffs))
        other = _coerce(other, self)
        if self.is_zero or other.is_zero:
            return PolyFn.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyFn(out)

    __rmul__ = __mul__

    def diff(self, n: int = 1) -> "PolyFn":
        cur = self.coeffs
        for _ in range(n):
            cur = tuple(cur[i] * i for i in range(1, len(cur)))
        return PolyFn(cur)

    def __call__(self, x: float) -> float:
        out = 0.0
        for c in reversed(self.coeffs):
            out = out * x + float(c)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyFn.constant(other)
        return isinstance(other, PolyFn) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("poly", self.coeffs))

    def __repr__(self):
        return f"PolyFn({list(self.coeffs)})"

    def __str__(self):
        return to_text(self)


class TrigFn:
    """Finite trigonometric polynomial: mean + sum of cos(nx), sin(nx) terms.

    Zero entries are pruned from the frequency maps.  Products are re-expanded
    through the product-to-sum identities, so the ring is closed.
    """

    __slots__ = ("mean_coeff", "cos", "sin")
    space = CIRCLE

    def __init__(self, mean=0, cos=None, sin=None):
        object.__setattr__(self, "mean_coeff", rat(mean))
        object.__setattr__(
            self, "cos", {n: rat(c) for n, c in (cos or {}).items() if rat(c) != 0}
        )
        object.__setattr__(
            self, "sin", {n: rat(c) for n, c in (sin or {}).items() if rat(c) != 0}
        )
        if any(n < 1 for n in self.cos) or any(n < 1 for n in self.sin):
            raise ValueError("harmonic frequencies must be >= 1")

    def __setattr__(self, name, value):
        raise AttributeError("TrigFn is immutable")

    @classmethod
    def zero(cls) -> "TrigFn":
        return cls()

    @classmethod
    def constant(cls, c) -> "TrigFn":
        return cls(mean=c)

    @classmethod
    def cosine(cls, n: int, c=1) -> "TrigFn":
        return cls(cos={n: c})

    @classmethod
    def sine(cls, n: int, c=1) -> "TrigFn":
        return cls(sin={n: c})

    @property
    def is_zero(self) -> bool:
        return self.mean_coeff == 0 and not self.cos and not self.sin

    @property
    def max_frequency(self) -> int:
        return max([0, *self.cos.keys(), *self.sin.keys()])

    def __add__(self, other):
        other = _coerce(other, self)
        cos = dict(self.cos)
        sin = dict(self.sin)
        for n, c in other.cos.items():
            cos[n] = cos.get(n, Fraction(0)) + c
        for n, c in other.sin.items():
            sin[n] = sin.get(n, Fraction(0)) + c
        return TrigFn(self.mean_coeff + other.mean_coeff, cos, sin)

    __radd__ = __add__

    def __neg__(self):
        return TrigFn(
            -self.mean_coeff,
            {n: -c for n, c in self.cos.items()},
            {n: -c for n, c in self.sin.items()},
        )

    def __sub__(self, other):
        return self + (-_coerce(other, self))

    def __rsub__(self, other):
        return _coerce(other, self) - self

    def _terms(self):
        # (kind, freq, coeff) with kind 'c' or 's'; the mean is ('c', 0, m)
        yield ("c", 0, self.mean_coeff)
        for n, c in self.cos.items():
            yield ("c", n, c)
        for n, c in self.sin.items():
            yield ("s", n, c)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = rat(other)
            return TrigFn(
                q * self.mean_coeff,
                {n: q * c for n, c in self.cos.items()},
                {n: q * c for n, c in self.sin.items()},
            )
        other = _coerce(other, self)
        acc = _TrigAcc()
        half = Fraction(1, 2)
        for k1, n1, c1 in self._terms():
            if c1 == 0:
                continue
            for k2, n2, c2 in other._terms():
                if c2 == 0:
                    continue
                c = c1 * c2 * half
                # product-to-sum: indices n1+n2 and n1-n2
                if k1 == "c" and k2 == "c":
                    acc.add_cos(n1 - n2, c)
                    acc.add_cos(n1 + n2, c)
                elif k1 == "s" and k2 == "s":
                    acc.add_cos(n1 - n2, c)
                    acc.add_cos(n1 + n2, -c)
                elif k1 == "s" and k2 == "c":
                    acc.add_sin(n1 + n2, c)
                    acc.add_sin(n1 - n2, c)
                else:  # cos * sin
                    acc.add_sin(n1 + n2, c)
                    acc.add_sin(n2 - n1, c)
        return acc.build()

    __rmul__ = __mul__

    def diff(self, n: int = 1) -> "TrigFn":
        cur = self
        for _ in range(n):
            cos = {m: m * c for m, c in cur.sin.items()}
            sin = {m: -m * c for m, c in cur.cos.items()}
            cur = TrigFn(0, cos, sin)
        return cur

    @property
    def mean(self) -> Fraction:
        """The mean over one period (the raw integral divided by 2*pi)."""
        return self.mean_coeff

    def __call__(self, x: float) -> float:
        out = float(self.mean_coeff)
        for n, c in self.cos.items():
            out += float(c) * math.cos(n * x)
        for n, c in self.sin.items():
            out += float(c) * math.sin(n * x)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TrigFn.constant(other)
        return (
            isinstance(other, TrigFn)
            and self.mean_coeff == other.mean_coeff
            and self.cos == other.cos
            and self.sin == other.sin
        )

    def __hash__(self):
        return hash(
            ("trig", self.mean_coeff, tuple(sorted(self.cos.items())),
             tuple(sorted(self.sin.items())))
        )

    def __repr__(self):
        return f"TrigFn({self.mean_coeff!r}, {self.cos!r}, {self.sin!r})"

    def __str__(self):
        return to_text(self)


class _TrigAcc:
    """Accumulator normalizing signed frequencies during products."""

    def __init__(self):
        self.mean = Fraction(0)
        self.cos = {}
        self.sin = {}

    def add_cos(self, n, c):
        n = abs(n)
        if n == 0:
            self.mean += c
        else:
            self.cos[n] = self.cos.get(n, Fraction(0)) + c

    def add_sin(self, n, c):
        if n == 0:
            return
        if n < 0:
            n, c = -n, -c
        self.sin[n] = self.sin.get(n, Fraction(0)) + c

    def build(self):
        return TrigFn(self.mean, self.cos, self.sin)


CoefficientFunction = PolyFn | TrigFn


def _coerce(value, like):
    if isinstance(value, (int, Fraction)):
        return type(like).constant(value)
    if not isinstance(value, (PolyFn, TrigFn)):
        raise TypeError(f"cannot use {value!r} as a ring element")
    if value.space != like.space:
        raise RingMismatchError(
            f"cannot combine a {value.space} element with a {like.space} element"
        )
    return value


def zero(space: str) -> CoefficientFunction:
    return PolyFn.zero() if space == LINE else TrigFn.zero()


def one(space: str) -> CoefficientFunction:
    return constant(space, 1)


def constant(space: str, c) -> CoefficientFunction:
    if space == LINE:
        return PolyFn.constant(c)
    if space == CIRCLE:
        return TrigFn.constant(c)
    raise ValueError(f"unknown space {space!r}")


def ring_mul(f: CoefficientFunction, g: CoefficientFunction) -> CoefficientFunction:
    """Exact product; raises RingMismatchError on mixed spaces."""
    return f * _coerce(g, f)


def ring_diff(f: CoefficientFunction, n: int = 1) -> CoefficientFunction:
    """n-th derivative with respect to x."""
    return f.diff(n)


def circle_mean(f: CoefficientFunction) -> Fraction:
    """Mean Fourier coefficient; only defined on the circle."""
    if f.space != CIRCLE:
        raise UnsupportedFunctionalError("the mean functional needs a circle element")
    return f.mean


# ----------------------------------------------------------------------
# text serialization: `poly: c0 + c1*x + ...` / `trig: m | n:cos=c,sin=s ; ...`
# ----------------------------------------------------------------------

def to_text(f: CoefficientFunction) -> str:
    if isinstance(f, PolyFn):
        if f.is_zero:
            return "poly: 0"
        parts = []
        for i, c in enumerate(f.coeffs):
            if c == 0:
                continue
            parts.append(format_rat(c) if i == 0 else f"{format_rat(c)}*x^{i}")
        return "poly: " + " + ".join(parts)
    if isinstance(f, TrigFn):
        head = format_rat(f.mean_coeff)
        freqs = sorted(set(f.cos) | set(f.sin))
        chunks = []
        for n in freqs:
            fields = []
            if n in f.cos:
                fields.append(f"cos={format_rat(f.cos[n])}")
            if n in f.sin:
                fields.append(f"sin={format_rat(f.sin[n])}")
            chunks.append(f"{n}:" + ",".join(fields))
        return f"trig: {head}" + (" | " + " ; ".join(chunks) if chunks else "")
    raise TypeError(f"not a ring element: {f!r}")


def from_text(text: str) -> CoefficientFunction:
    text = text.strip()
    if text.startswith("poly:"):
        body = text[5:].strip()
        if body == "0":
            return PolyFn.zero()
        coeffs = {}
        for term in body.split("+"):
            term = term.strip()
            m = re.fullmatch(r"(-?\d+(?:/\d+)?)(?:\*x\^(\d+))?", term)
            if not m:
                raise ValueError(f"bad polynomial term {term!r}")
            coeffs[int(m.group(2) or 0)] = Fraction(m.group(1))
        n = max(coeffs) + 1
        return PolyFn(coeffs.get(i, Fraction(0)) for i in range(n))
    if text.startswith("trig:"):
        body = text[5:].strip()
        head, _, rest = body.partition("|")
        mean = Fraction(head.strip())
        cos, sin = {}, {}
        if rest.strip():
            for chunk in rest.split(";"):
                freq_s, _, fields = chunk.strip().partition(":")
                n = int(freq_s)
                for field in fields.split(","):
                    key, _, val = field.strip().partition("=")
                    if key == "cos":
                        cos[n] = Fraction(val)
                    elif key == "sin":
                        sin[n] = Fraction(val)
                    else:
                        raise ValueError(f"bad trig field {field!r}")
        return TrigFn(mean, cos, sin)
    raise ValueError(f"unknown ring element format: {text!r}")
