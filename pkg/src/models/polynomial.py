"""
Dense univariate polynomials with exact coefficients, lowest degree first.
"""
from fractions import Fraction
from typing import Any, ClassVar, List, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

P = TypeVar("P", bound="_Polynomial")
Scalar = Union[int, Fraction]


def _trim(coeffs: List[Any]) -> Tuple[Any, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class _Polynomial(BaseModel):
    """Shared dense-coefficient arithmetic; subclasses fix the coefficient ring."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: Tuple[Any, ...] = ()

    ring: ClassVar[Type] = Fraction

    @field_validator("coeffs", mode="before")
    @classmethod
    def _normalize(cls, value: Any) -> Tuple[Any, ...]:
        return _trim([cls.ring(c) for c in value])

    @classmethod
    def constant(cls: Type[P], c: Scalar) -> P:
        return cls(coeffs=[c])

    @classmethod
    def monomial(cls: Type[P], degree: int, c: Scalar = 1) -> P:
        return cls(coeffs=[0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    def is_even(self) -> bool:
        return self.compose_neg() == self

    def _like(self, coeffs: List[Any]) -> "_Polynomial":
        ring = type(self)
        if ring is IntPolynomial and not all(isinstance(c, int) or c.denominator == 1 for c in coeffs):
            ring = RatPolynomial
        return ring(coeffs=coeffs)

    def _lift(self, other: Any) -> "_Polynomial":
        if isinstance(other, _Polynomial):
            return other
        return RatPolynomial.constant(other) if isinstance(other, Fraction) else IntPolynomial.constant(other)

    def add(self, other: Any) -> "_Polynomial":
        other = self._lift(other)
        size = max(len(self.coeffs), len(other.coeffs))
        coeffs = [self.coeff(k) + other.coeff(k) for k in range(size)]
        return self._join(other)(coeffs=coeffs)

    def sub(self, other: Any) -> "_Polynomial":
        return self.add(self._lift(other).scale(-1))

    def mul(self, other: Any) -> "_Polynomial":
        other = self._lift(other)
        if self.is_zero or other.is_zero:
            return self._join(other)(coeffs=[])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return self._join(other)(coeffs=out)

    def scale(self, c: Scalar) -> "_Polynomial":
        return self._like([x * c for x in self.coeffs])

    def derivative(self) -> "_Polynomial":
        return self._like([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose_neg(self) -> "_Polynomial":
        """p(-x)."""
        return self._like([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def evaluate(self, u: Any) -> Any:
        """Horner evaluation; exact for int/Fraction arguments, float otherwise."""
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * u + (c if isinstance(u, (int, Fraction)) else float(c))
        return acc

    def to_rat(self) -> "RatPolynomial":
        return RatPolynomial(coeffs=list(self.coeffs))

    def _join(self, other: "_Polynomial") -> Type["_Polynomial"]:
        if isinstance(self, IntPolynomial) and isinstance(other, IntPolynomial):
            return IntPolynomial
        return RatPolynomial

    __add__ = add
    __sub__ = sub
    __mul__ = mul

    def __radd__(self, other: Any) -> "_Polynomial":
        return self.add(other)

    def __rmul__(self, other: Any) -> "_Polynomial":
        return self.mul(other)

    def __neg__(self) -> "_Polynomial":
        return self.scale(-1)

    def __call__(self, u: Any) -> Any:
        return self.evaluate(u)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, _Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            power = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if power and c == 1:
                terms.append(power)
            elif power:
                terms.append(f"{c}*{power}")
            else:
                terms.append(str(c))
        return " + ".join(terms).replace("+ -", "- ")


class IntPolynomial(_Polynomial):
    """Integer-coefficient polynomial (Hermite family)."""

    ring: ClassVar[Type] = int

    @field_validator("coeffs", mode="before")
    @classmethod
    def _normalize(cls, value: Any) -> Tuple[Any, ...]:
        out = []
        for c in value:
            c = Fraction(c)
            if c.denominator != 1:
                raise ValueError(f"IntPolynomial coefficient {c} is not an integer")
            out.append(int(c))
        return _trim(out)

    @field_serializer("coeffs")
    def _serialize(self, coeffs: Tuple[int, ...]) -> List[str]:
        return [str(c) for c in coeffs]


class RatPolynomial(_Polynomial):
    """Rational-coefficient polynomial (moment polynomials, determinants)."""

    ring: ClassVar[Type] = Fraction

    @field_serializer("coeffs")
    def _serialize(self, coeffs: Tuple[Fraction, ...]) -> List[str]:
        return [f"{c.numerator}/{c.denominator}" for c in coeffs]
