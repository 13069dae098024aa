"""Exact integer and rational primitives shared by every engine.

Rationals are :class:`fractions.Fraction`, which keeps them reduced with a
positive denominator. Digit vectors are little-endian, so position ``j``
carries the weight ``p**j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from syzcert.errors import ParameterError


@lru_cache(maxsize=64)
def is_prime(p: int) -> bool:
    """Trial division; the primes here are desk-sized."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % f for f in range(3, math.isqrt(p) + 1, 2))


def require_prime(p: int) -> int:
    """Return ``p`` or raise if it cannot serve as a characteristic."""
    if not is_prime(p):
        raise ParameterError(f"p must be a prime, got {p}")
    return p


@dataclass(frozen=True)
class DigitVector:
    """Base-p digits of a nonnegative integer, lowest digit first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        """Reject digits out of range and trailing zeros."""
        if any(not 0 <= t < self.base for t in self.digits):
            raise ParameterError(f"Digits {self.digits} out of range for base {self.base}")
        if self.digits and self.digits[-1] == 0:
            raise ParameterError(f"Digits {self.digits} carry a trailing zero")

    def __len__(self) -> int:
        """Number of stored digits."""
        return len(self.digits)

    def at(self, j: int) -> int:
        """Digit at position ``j``, zero past the top."""
        return self.digits[j] if j < len(self.digits) else 0

    @property
    def top(self) -> int:
        """Index of the highest nonzero digit, -1 for zero."""
        return len(self.digits) - 1


def padic_digits(x: int, p: int) -> DigitVector:
    """Expand ``x`` in base ``p``.

    >>> padic_digits(19, 3).digits
    (1, 0, 2)
    """
    require_prime(p)
    if x < 0:
        raise ParameterError(f"Cannot expand negative integer {x}")
    digits = []
    while x:
        x, t = divmod(x, p)
        digits.append(t)
    return DigitVector(p, tuple(digits))


def digits_value(dv: DigitVector) -> int:
    """Reassemble the integer a digit vector encodes."""
    value = 0
    for t in reversed(dv.digits):
        value = value * dv.base + t
    return value


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside ``0 <= b <= a``."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def binom_mod_p_lucas(i: int, k: int, p: int) -> int:
    """Residue of ``binom(i, k)`` mod ``p`` as a product of digit binomials."""
    require_prime(p)
    if k < 0 or k > i:
        return 0
    residue = 1
    while k:
        i, i_j = divmod(i, p)
        k, k_j = divmod(k, p)
        if k_j > i_j:
            return 0
        residue = residue * math.comb(i_j, k_j) % p
    return residue


def is_binom_unit_mod_p(i: int, k: int, p: int) -> bool:
    """True when ``p`` does not divide ``binom(i, k)``, i.e. k's digits fit under i's."""
    if not 0 <= k <= i:
        raise ParameterError(f"Need 0 <= k <= i, got k={k}, i={i}")
    return binom_mod_p_lucas(i, k, p) != 0


@lru_cache(maxsize=None)
def dim_sym(n: int, a: int) -> int:
    """Dimension of the a-th symmetric power of an n-dimensional space."""
    if n < 1 or a < 0:
        raise ParameterError(f"dim_sym needs n >= 1 and a >= 0, got n={n}, a={a}")
    return math.comb(a + n - 1, n - 1)


@lru_cache(maxsize=None)
def h0(n: int, a: int) -> int:
    """Global sections of O(a) on projective n-space."""
    if n < 1 or a < 0:
        raise ParameterError(f"h0 needs n >= 1 and a >= 0, got n={n}, a={a}")
    return math.comb(a + n, n)


def ceil_half(d: int) -> int:
    """Smallest integer not below d/2."""
    if d < 1:
        raise ParameterError(f"ceil_half needs d >= 1, got {d}")
    return (d + 1) // 2


def format_rational(q: Fraction | int) -> str:
    """Serialize as ``num/den`` in lowest terms, integers as ``k/1``."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Read ``num/den`` or a bare integer."""
    raw = text.strip()
    num, sep, den = raw.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except ValueError:
        raise ParameterError(f"Not a rational number: {text!r}") from None
    except ZeroDivisionError:
        raise ParameterError(f"Zero denominator in {text!r}") from None
