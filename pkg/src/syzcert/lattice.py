"""Admissible supports of homogeneous subbundles and their slope margins.

A homogeneous subbundle ``W`` meets each block in ``W(i)``. If ``W(i)`` is
nonzero then so is every ``W(j)`` with ``j`` digitwise below ``i``, and
``W(i)`` contains the minimal SL(n)-submodule of ``S^{d-i}(V_1)``. The
crude margin turns those two facts into a box-constrained linear bound.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from syzcert.arith import dim_sym
from syzcert.arith import padic_digits
from syzcert.arith import require_prime
from syzcert.bundle_model import syzygy_rank
from syzcert.errors import EnumerationOverflow
from syzcert.errors import ParameterError


log = logging.getLogger(__name__)

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class SupportSet:
    """A downward-closed set of twists for ``(n, p, d)``."""

    n: int
    p: int
    d: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        """Keep the indices sorted, in range and closed."""
        if list(self.indices) != sorted(set(self.indices)):
            raise ParameterError(f"Support indices must be sorted and distinct: {self.indices}")
        if any(not 0 <= i < self.d for i in self.indices):
            raise ParameterError(f"Support indices must lie in [0, {self.d - 1}]")
        if not is_downward_closed(self.indices, self.p, self.d):
            raise ParameterError(f"Support {list(self.indices)} is not downward closed")

    def __len__(self) -> int:
        """Number of twists in the support."""
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        """Iterate the twists in increasing order."""
        return iter(self.indices)


@dataclass(frozen=True)
class SupportProfile:
    """Per-twist bounds ``lo_i <= dim W(i) <= hi_i`` on a support."""

    support: SupportSet
    lo: dict[int, int]
    hi: dict[int, int]


@dataclass(frozen=True)
class MarginResult:
    """The minimized margin and the vertex achieving it."""

    margin: Fraction
    choice: dict[int, str]

    @property
    def conclusive(self) -> bool:
        """Positive margin certifies the whole support."""
        return self.margin > 0


def dominance_leq(j: int, i: int, p: int) -> bool:
    """Every base-p digit of ``j`` is at most the matching digit of ``i``."""
    if i < 0 or j < 0:
        raise ParameterError(f"Dominance needs nonnegative integers, got {j}, {i}")
    while j:
        if j % p > i % p:
            return False
        i //= p
        j //= p
    return True


def lower_covers(i: int, p: int) -> list[int]:
    """Elements just below ``i``: one nonzero digit lowered by one."""
    covers = []
    weight = 1
    rest = i
    while rest:
        if rest % p:
            covers.append(i - weight)
        rest //= p
        weight *= p
    return covers


def minimal_block_dim(n: int, p: int, e: int) -> int:
    """Dimension of the smallest SL(n)-submodule of ``S^e(V_1)``."""
    return prod(dim_sym(n, t) for t in padic_digits(e, p).digits)


def is_downward_closed(indices: Iterable[int], p: int, d: int) -> bool:
    """Closed under digit dominance inside ``[0, d-1]``."""
    members = set(indices)
    return all(j in members for i in members for j in lower_covers(i, p) if j < d)


def _forces_whole_bundle(n: int, p: int, d: int) -> bool:
    return all(minimal_block_dim(n, p, d - i) == dim_sym(n, d - i) for i in range(d))


def enumerate_supports(n: int, p: int, d: int, cap: int = DEFAULT_CAP) -> list[SupportSet]:
    """All nonempty downward-closed supports, ordered by size then indices.

    The full index set is left out when every block is then forced to full
    rank, since that support only admits the bundle itself.
    """
    require_prime(p)
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")
    covers = [lower_covers(i, p) for i in range(d)]
    full = tuple(range(d)) if _forces_whole_bundle(n, p, d) else None
    found: list[tuple[int, ...]] = []

    # Increasing order is a linear extension of dominance, so each index is
    # decided after everything below it. Every nonempty ideal contains 0.
    stack: list[tuple[int, tuple[int, ...], frozenset[int]]] = [(1, (0,), frozenset((0,)))]
    while stack:
        i, chosen, members = stack.pop()
        if i == d:
            if chosen != full:
                found.append(chosen)
                if len(found) > cap:
                    raise EnumerationOverflow(cap)
            continue
        stack.append((i + 1, chosen, members))
        if all(j in members for j in covers[i]):
            stack.append((i + 1, (*chosen, i), members | {i}))

    found.sort(key=lambda s: (len(s), s))
    log.debug("Enumerated %d supports for n=%d p=%d d=%d", len(found), n, p, d)
    return [SupportSet(n=n, p=p, d=d, indices=s) for s in found]


def classify_support(support: SupportSet) -> dict[int, list[int]]:
    """Partition a support by the top digit position where ``i`` differs from ``d``."""
    target = padic_digits(support.d, support.p)
    classes: dict[int, list[int]] = {j: [] for j in range(len(target))}
    for i in support.indices:
        digits = padic_digits(i, support.p)
        j = max(k for k in range(len(target)) if digits.at(k) != target.at(k))
        classes[j].append(i)
    return classes


def class_weight(n: int, classes: dict[int, list[int]]) -> int:
    """``n |C_m| + sum_{j<m} |C_j|``, the bound when ``W(a_0)`` vanishes."""
    if not classes:
        return 0
    top = max(classes)
    return n * len(classes[top]) + sum(len(c) for j, c in classes.items() if j != top)


def profile(support: SupportSet) -> SupportProfile:
    """Minimal-block and full-rank bounds per twist."""
    n, p, d = support.n, support.p, support.d
    lo = {i: minimal_block_dim(n, p, d - i) for i in support}
    hi = {i: dim_sym(n, d - i) for i in support}
    return SupportProfile(support=support, lo=lo, hi=hi)


def margin_coefficient(n: int, d: int, i: int) -> Fraction:
    """Gap between the block bound at twist ``i`` and ``-mu(V_d)``."""
    return Fraction(d - i, n) - i - Fraction(d, syzygy_rank(n, d))


def crude_margin(support: SupportSet) -> MarginResult:
    """Minimize ``sum c_i w_i`` over the box ``lo_i <= w_i <= hi_i``.

    A linear form on a box is minimized at a vertex: full rank where the
    coefficient is negative, minimal block otherwise.
    """
    bounds = profile(support)
    margin = Fraction(0)
    choice: dict[int, str] = {}
    for i in support:
        c = margin_coefficient(support.n, support.d, i)
        if c < 0:
            choice[i] = "hi"
            margin += c * bounds.hi[i]
        else:
            choice[i] = "lo"
            margin += c * bounds.lo[i]
    return MarginResult(margin=margin, choice=choice)
