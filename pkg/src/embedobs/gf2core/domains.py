"""Coefficient domains for truncated polynomials.

Elements are plain Python ints (or ``KElement`` for the K ring); a domain
only knows how to normalize them and test for zero/units.
"""

from __future__ import annotations

from typing import Any, Protocol

from .kring import SpecialKRing


class Domain(Protocol):
    name: str
    zero: Any
    one: Any

    def coerce(self, x: Any) -> Any: ...
    def is_zero(self, x: Any) -> bool: ...
    def is_unit(self, x: Any) -> bool: ...
    def inverse(self, x: Any) -> Any: ...


class _IntDomain:
    zero = 0
    one = 1
    name = "int"

    def coerce(self, x: Any) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"expected an integer coefficient, got {x!r}")
        return x

    def is_zero(self, x: int) -> bool:
        return x == 0

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self)

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return self.name


class Integers(_IntDomain):
    name = "int"

    def is_unit(self, x: int) -> bool:
        return x in (1, -1)

    def inverse(self, x: int) -> int:
        if x not in (1, -1):
            raise ZeroDivisionError(f"{x} is not a unit in Z")
        return x


class IntegersMod(_IntDomain):
    """Z/2^f, reduced eagerly to the range [0, 2^f)."""

    def __init__(self, f: int):
        if f < 1:
            raise ValueError("exponent must be positive")
        self.f = f
        self.modulus = 1 << f
        self.name = f"int_mod_2^{f}"

    def coerce(self, x: Any) -> int:
        return super().coerce(x) % self.modulus

    def is_unit(self, x: int) -> bool:
        return x & 1 == 1

    def inverse(self, x: int) -> int:
        if not x & 1:
            raise ZeroDivisionError(f"{x} is not a unit mod {self.modulus}")
        return pow(x, -1, self.modulus)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and other.f == self.f

    def __hash__(self) -> int:
        return hash(self.name)


class GF2(IntegersMod):
    def __init__(self) -> None:
        super().__init__(1)
        self.name = "gf2"


GF2_DOMAIN = GF2()
ZZ = Integers()

__all__ = ["Domain", "GF2", "GF2_DOMAIN", "Integers", "IntegersMod", "SpecialKRing", "ZZ"]
