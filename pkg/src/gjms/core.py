"""Exact rational arithmetic and univariate polynomials in the eigenvalue symbol sigma.

Every quantity in this package is an arbitrary-precision rational
(``fractions.Fraction``) or a polynomial over them.  Nothing here is ever a
float: all downstream checks are decidable polynomial identities.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

RatLike = Union[Fraction, int, str]


class AlgebraError(ValueError):
    """An exact-arithmetic operation was ill-posed."""


class OrderShortfall(AlgebraError):
    """A truncated series was read (or operated on) beyond its valid order."""


class VariableMismatch(AlgebraError):
    """Two series in different formal variables were combined."""


def rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: RatLike) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    q = rat(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def binomial(e: Fraction, n: int) -> Fraction:
    """Generalized binomial coefficient C(e, n) for rational e."""
    num = Fraction(1)
    for i in range(n):
        num *= e - i
        num /= i + 1
    return num


class SigmaPoly:
    """Polynomial in sigma with exact rational coefficients, ascending order.

    Canonical form: no trailing zero coefficients.  The zero polynomial has an
    empty coefficient tuple and degree ``None``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "SigmaPoly":
        return cls()

    @classmethod
    def one(cls) -> "SigmaPoly":
        return cls((1,))

    @classmethod
    def const(cls, c: RatLike) -> "SigmaPoly":
        return cls((rat(c),))

    @classmethod
    def sigma(cls) -> "SigmaPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "SigmaPoly | RatLike") -> "SigmaPoly":
        if not isinstance(other, (SigmaPoly, Fraction, int, str)):
            return NotImplemented
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SigmaPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "SigmaPoly":
        return SigmaPoly(-c for c in self.coeffs)

    def __sub__(self, other: "SigmaPoly | RatLike") -> "SigmaPoly":
        if not isinstance(other, (SigmaPoly, Fraction, int, str)):
            return NotImplemented
        return self + (-_as_poly(other))

    def __rsub__(self, other: "SigmaPoly | RatLike") -> "SigmaPoly":
        return _as_poly(other) + (-self)

    def __mul__(self, other: "SigmaPoly | RatLike") -> "SigmaPoly":
        if not isinstance(other, SigmaPoly):
            if not isinstance(other, (Fraction, int, str)):
                return NotImplemented
            c = rat(other)
            return SigmaPoly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return SigmaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return SigmaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: RatLike) -> "SigmaPoly":
        c = rat(scalar)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return SigmaPoly(a / c for a in self.coeffs)

    def __pow__(self, n: int) -> "SigmaPoly":
        if n < 0:
            raise AlgebraError("negative polynomial power")
        out = SigmaPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, value: RatLike) -> Fraction:
        x = rat(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, str)):
            other = _as_poly(other)
        if not isinstance(other, SigmaPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_strings(self) -> list[str]:
        """Ascending coefficient array of "p/q" strings."""
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "SigmaPoly":
        return cls(rat(s) for s in items)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = rat_str(abs(c))
            else:
                mon = "sigma" if i == 1 else f"sigma^{i}"
                term = mon if abs(c) == 1 else f"{rat_str(abs(c))}*{mon}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SigmaPoly({[rat_str(c) for c in self.coeffs]})"


def _as_poly(value: "SigmaPoly | RatLike") -> SigmaPoly:
    if isinstance(value, SigmaPoly):
        return value
    return SigmaPoly.const(rat(value))
