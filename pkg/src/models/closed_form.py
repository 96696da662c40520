"""
Exact closed-form scalars q * 2^(a/2) * pi^(b/2).
"""
import math
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, field_serializer, model_validator

from utils.errors import IncompatibleBasis

Number = Union[int, Fraction]


class ClosedFormScalar(BaseModel):
    """Exact value q * sqrt(2)^a * sqrt(pi)^b.

    Canonical form keeps a in {0, 1}: even powers of sqrt(2) are folded into q.
    pi is transcendental so b stays an arbitrary integer. Zero is q=0, a=b=0.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    q: Fraction
    a: int = Field(default=0, validation_alias=AliasChoices("a", "sqrt2_exp"), serialization_alias="sqrt2_exp")
    b: int = Field(default=0, validation_alias=AliasChoices("b", "sqrtpi_exp"), serialization_alias="sqrtpi_exp")

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        q = Fraction(data.get("q", 0))
        a = int(data.pop("sqrt2_exp", data.get("a", 0)))
        b = int(data.pop("sqrtpi_exp", data.get("b", 0)))
        if q == 0:
            return {"q": Fraction(0), "a": 0, "b": 0}
        half, a = divmod(a, 2)
        q *= Fraction(2) ** half
        return {"q": q, "a": a, "b": b}

    @field_serializer("q")
    def _serialize_q(self, q: Fraction) -> str:
        return f"{q.numerator}/{q.denominator}"

    # --- constructors -------------------------------------------------

    @classmethod
    def of(cls, q: Number = 0, a: int = 0, b: int = 0) -> "ClosedFormScalar":
        return cls(q=Fraction(q), a=a, b=b)

    @classmethod
    def zero(cls) -> "ClosedFormScalar":
        return cls.of(0)

    @classmethod
    def one(cls) -> "ClosedFormScalar":
        return cls.of(1)

    @classmethod
    def sqrt2(cls) -> "ClosedFormScalar":
        return cls.of(1, a=1)

    @classmethod
    def sqrtpi(cls) -> "ClosedFormScalar":
        return cls.of(1, b=1)

    @classmethod
    def pi(cls) -> "ClosedFormScalar":
        return cls.of(1, b=2)

    @classmethod
    def coerce(cls, value: Union["ClosedFormScalar", Number]) -> "ClosedFormScalar":
        if isinstance(value, ClosedFormScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.of(value)
        raise TypeError(f"Cannot use {type(value).__name__} as a closed-form scalar")

    # --- predicates ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.q == 0

    @property
    def is_rational(self) -> bool:
        return self.a == 0 and self.b == 0

    def same_basis(self, other: "ClosedFormScalar") -> bool:
        return (self.a, self.b) == (other.a, other.b)

    # --- arithmetic ---------------------------------------------------

    def mul(self, other: Union["ClosedFormScalar", Number]) -> "ClosedFormScalar":
        other = ClosedFormScalar.coerce(other)
        return ClosedFormScalar.of(self.q * other.q, self.a + other.a, self.b + other.b)

    def add(self, other: Union["ClosedFormScalar", Number]) -> "ClosedFormScalar":
        other = ClosedFormScalar.coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if not self.same_basis(other):
            raise IncompatibleBasis(f"Cannot add {self} and {other}: different irrational parts")
        return ClosedFormScalar.of(self.q + other.q, self.a, self.b)

    def neg(self) -> "ClosedFormScalar":
        return ClosedFormScalar.of(-self.q, self.a, self.b)

    def sub(self, other: Union["ClosedFormScalar", Number]) -> "ClosedFormScalar":
        return self.add(ClosedFormScalar.coerce(other).neg())

    def inv(self) -> "ClosedFormScalar":
        if self.is_zero:
            raise ZeroDivisionError("Inverse of zero closed-form scalar")
        # 1/(q 2^(a/2)) = 2^(-a/2)/q
        return ClosedFormScalar.of(1 / self.q, -self.a, -self.b)

    def div(self, other: Union["ClosedFormScalar", Number]) -> "ClosedFormScalar":
        return self.mul(ClosedFormScalar.coerce(other).inv())

    def power(self, exponent: int) -> "ClosedFormScalar":
        if exponent < 0:
            return self.inv().power(-exponent)
        return ClosedFormScalar.of(self.q**exponent, self.a * exponent, self.b * exponent)

    __mul__ = mul
    __add__ = add
    __sub__ = sub
    __truediv__ = div
    __pow__ = power

    def __rmul__(self, other: Number) -> "ClosedFormScalar":
        return self.mul(other)

    def __radd__(self, other: Number) -> "ClosedFormScalar":
        return self.add(other)

    def __rsub__(self, other: Number) -> "ClosedFormScalar":
        return ClosedFormScalar.coerce(other).sub(self)

    def __rtruediv__(self, other: Number) -> "ClosedFormScalar":
        return ClosedFormScalar.coerce(other).div(self)

    def __neg__(self) -> "ClosedFormScalar":
        return self.neg()

    # --- conversion ---------------------------------------------------

    def to_float(self, precision: Optional[int] = None) -> float:
        """Floating-point value for reporting, optionally rounded to `precision` significant digits"""
        value = float(self.q) * math.sqrt(2) ** self.a * math.pi ** (self.b / 2)
        if precision is None or value == 0:
            return value
        digits = precision - int(math.floor(math.log10(abs(value)))) - 1
        return round(value, digits)

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "ClosedFormScalar":
        return cls.model_validate(payload)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = [] if self.q == 1 and not self.is_rational else [str(self.q)]
        if self.a:
            parts.append("√2")
        if self.b:
            parts.append("√π" if self.b == 1 else f"√π^{self.b}")
        return "·".join(parts)
