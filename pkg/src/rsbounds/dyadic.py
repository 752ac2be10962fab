"""Exact dyadic rationals u / 2^k used as certification anchor points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class DyadicPoint:
    """Non-negative dyadic rational u / 2^k in canonical form (u odd or k = 0).

    The canonical k is the minimal scale making 2^k x an integer, which is
    the scale used for all scaling identities.
    """

    u: int
    k: int

    def __post_init__(self):
        if self.u < 0 or self.k < 0:
            raise ValueError("dyadic point requires u >= 0 and k >= 0")
        u, k = self.u, self.k
        while k > 0 and u % 2 == 0:
            u //= 2
            k -= 1
        object.__setattr__(self, 'u', u)
        object.__setattr__(self, 'k', k)

    @classmethod
    def from_fraction(cls, x: Fraction) -> "DyadicPoint":
        den = x.denominator
        if den & (den - 1):
            raise ValueError(f"{x} is not dyadic")
        return cls(x.numerator, den.bit_length() - 1)

    @classmethod
    def from_binary(cls, text: str) -> "DyadicPoint":
        """Parse a binary string like '1.011011', '10.' or '101'."""
        s = text.strip()
        if not s:
            raise ValueError("empty dyadic string")
        int_part, _, frac_part = s.partition('.')
        digits = (int_part + frac_part) or '0'
        if set(digits) - {'0', '1'}:
            raise ValueError(f"invalid binary dyadic string {text!r}")
        return cls(int(digits, 2), len(frac_part))

    @classmethod
    def parse(cls, text: str) -> "DyadicPoint":
        """Accept either a binary dyadic string or an exact fraction 'a/b'."""
        if '/' in text:
            return cls.from_fraction(Fraction(text))
        return cls.from_binary(text)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.u, 1 << self.k)

    def __float__(self) -> float:
        return self.u / (1 << self.k)

    def scaled_numerator(self, k: int) -> int:
        """Integer 2^k x; requires k >= self.k."""
        if k < self.k:
            raise ValueError(f"scale {k} below canonical scale {self.k}")
        return self.u << (k - self.k)

    def to_binary(self) -> str:
        ip = self.u >> self.k
        frac = self.u - (ip << self.k)
        bits = format(frac, f'0{self.k}b') if self.k else ''
        return f"{ip:b}.{bits}"

    def __str__(self) -> str:
        return f"{self.u}/2^{self.k}"
