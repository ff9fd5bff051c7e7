"""The ring Z + (Z/2^f)mu with mu^2 = -2 mu.

This is the shape of the reduced real K-group of a real projective space,
with ``mu = H - 1`` for the Hopf line bundle ``H``.  The exponent ``f`` is
always supplied by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class KElement:
    """``free + mu_part * mu`` with ``mu_part`` reduced mod ``2**f``."""

    free: int
    mu_part: int
    f: int

    def __post_init__(self) -> None:
        if self.f < 1:
            raise ValueError("torsion exponent must be positive")
        reduced = self.mu_part % (1 << self.f)
        if reduced != self.mu_part:
            object.__setattr__(self, "mu_part", reduced)

    def _lift(self, other: object) -> "KElement":
        if isinstance(other, KElement):
            if other.f != self.f:
                raise ValueError(f"mixing torsion exponents {self.f} and {other.f}")
            return other
        if isinstance(other, int):
            return KElement(other, 0, self.f)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "KElement":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return KElement(self.free + o.free, self.mu_part + o.mu_part, self.f)

    __radd__ = __add__

    def __neg__(self) -> "KElement":
        return KElement(-self.free, -self.mu_part, self.f)

    def __sub__(self, other: object) -> "KElement":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "KElement":
        return (-self) + other

    def __mul__(self, other: object) -> "KElement":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.free, self.mu_part, o.free, o.mu_part
        # (a + b mu)(c + d mu) = ac + (ad + bc) mu + bd mu^2, mu^2 = -2 mu
        return KElement(a * c, a * d + b * c - 2 * b * d, self.f)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "KElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = KElement(1, 0, self.f)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return self.free == 0 and self.mu_part == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_unit(self) -> bool:
        return self.free in (1, -1)

    def inverse(self) -> "KElement":
        """Inverse of a unit ``+-1 + b mu``.

        Writing ``u = e(1 + c mu)`` with ``e = +-1``, the inverse of
        ``1 + c mu`` is ``1 + c' mu`` where ``c + c' - 2cc' = 0``; since
        ``1 - 2c`` is odd this is solvable mod ``2**f``.
        """
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        e = self.free
        mod = 1 << self.f
        c = (self.mu_part * e) % mod
        c_inv = (-c * pow(1 - 2 * c, -1, mod)) % mod
        return KElement(e, e * c_inv, self.f)

    def __str__(self) -> str:
        return f"{self.free}+{self.mu_part}mu"


class SpecialKRing:
    """Coefficient domain wrapper for ``KElement`` values."""

    name = "kring"

    def __init__(self, f: int):
        if f < 1:
            raise ValueError("torsion exponent must be positive")
        self.f = f
        self.zero = KElement(0, 0, f)
        self.one = KElement(1, 0, f)
        self.mu = KElement(0, 1, f)
        self.hopf = KElement(1, 1, f)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SpecialKRing) and other.f == self.f

    def __hash__(self) -> int:
        return hash(("kring", self.f))

    def __repr__(self) -> str:
        return f"SpecialKRing(f={self.f})"

    def element(self, free: int, mu_part: int = 0) -> KElement:
        return KElement(free, mu_part, self.f)

    def coerce(self, x: object) -> KElement:
        if isinstance(x, KElement):
            if x.f != self.f:
                raise ValueError(f"element has torsion exponent {x.f}, ring has {self.f}")
            return x
        if isinstance(x, int):
            return KElement(x, 0, self.f)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def is_zero(self, x: KElement) -> bool:
        return x.is_zero()

    def is_unit(self, x: KElement) -> bool:
        return x.is_unit()

    def inverse(self, x: KElement) -> KElement:
        return x.inverse()

    def mu_power(self, i: int) -> KElement:
        """``mu**i = (-2)**(i-1) mu`` for ``i >= 1``."""
        if i == 0:
            return self.one
        return KElement(0, (-2) ** (i - 1), self.f)
