"""Numeric invariants of the syzygy bundle and its graded blocks.

The degree of a bundle is the integer ``m`` with determinant ``O(m)``. The
syzygy bundle of degree ``d`` on projective n-space splits, as a graded
vector space, into blocks ``S^{d-i}(V_1) (x) z^i`` for twists ``i < d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from syzcert.arith import DigitVector
from syzcert.arith import digits_value
from syzcert.arith import dim_sym
from syzcert.arith import h0
from syzcert.arith import padic_digits
from syzcert.arith import require_prime
from syzcert.errors import ParameterError


@dataclass(frozen=True)
class PadicExpansion:
    """``d = d' * p**valuation`` with ``d'`` prime to ``p``."""

    p: int
    valuation: int
    core_digits: DigitVector

    @property
    def m(self) -> int:
        """Position of the top digit of the core."""
        return self.core_digits.top

    @property
    def core(self) -> int:
        """The p-free part ``d'``."""
        return digits_value(self.core_digits)

    @property
    def d(self) -> int:
        """The degree this expansion encodes."""
        return self.core * self.p**self.valuation

    @property
    def digits(self) -> tuple[int, ...]:
        """Digits of the full ``d``, valuation zeros included."""
        return (0,) * self.valuation + self.core_digits.digits


@dataclass(frozen=True)
class SyzygyBundle:
    """Rank, degree and slope of the syzygy bundle for ``(n, p, d)``."""

    n: int
    p: int
    d: int

    @property
    def rank(self) -> int:
        """``h0(n, d) - 1``."""
        return syzygy_rank(self.n, self.d)

    @property
    def degree(self) -> int:
        """Determinant is ``O(-d)``."""
        return -self.d

    @property
    def slope(self) -> Fraction:
        """``-d / rank``."""
        return syzygy_slope(self.n, self.d)


@dataclass(frozen=True)
class GradedBlock:
    """One block ``S^e(V_1) (x) z^i`` of the grading, ``e = d - i``."""

    n: int
    twist: int
    inner: int

    @property
    def rank(self) -> int:
        """Dimension of the symmetric power."""
        return dim_sym(self.n, self.inner)

    @property
    def slope(self) -> Fraction:
        """``i - e/n``."""
        return block_slope(self.n, self.inner, self.twist)

    @property
    def degree(self) -> int:
        """Always integral by the telescoping identity."""
        degree = self.slope * self.rank
        assert degree.denominator == 1  # noqa: S101
        return int(degree)


def _check_nd(n: int, d: int) -> None:
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")


def expansion(d: int, p: int) -> PadicExpansion:
    """Split off the p-valuation of ``d`` and expand the rest."""
    require_prime(p)
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")
    valuation = 0
    core = d
    while core % p == 0:
        core //= p
        valuation += 1
    return PadicExpansion(p=p, valuation=valuation, core_digits=padic_digits(core, p))


def syzygy_rank(n: int, d: int) -> int:
    """Rank of the kernel of evaluation on degree-d forms."""
    _check_nd(n, d)
    return h0(n, d) - 1


def syzygy_slope(n: int, d: int) -> Fraction:
    """Slope ``-d / rank``."""
    return Fraction(-d, syzygy_rank(n, d))


def block_slope(n: int, e: int, i: int) -> Fraction:
    """Slope of ``S^e(V_1) (x) O(i)``."""
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    return i - Fraction(e, n)


def frobenius_slope_scale(s: Fraction, t: int, p: int) -> Fraction:
    """The t-th Frobenius pullback multiplies slopes by ``p**t``."""
    if t < 0:
        raise ParameterError(f"Frobenius power must be nonnegative, got {t}")
    return Fraction(s) * p**t


def degree_decomposition(n: int, d: int) -> list[GradedBlock]:
    """Blocks for twists ``0 .. d-1``."""
    _check_nd(n, d)
    return [GradedBlock(n=n, twist=i, inner=d - i) for i in range(d)]


def sym_identity_check(n: int, a: int) -> bool:
    """``(a+1) dim S^{a+1} == n * sum_{k<=a} dim S^k``."""
    lhs = (a + 1) * dim_sym(n, a + 1)
    rhs = n * sum(dim_sym(n, k) for k in range(a + 1))
    return lhs == rhs
