"""Case classification and per-case inequality certificates.

Every certificate is a list of exact rational comparisons. A verdict is
``stable`` only when the parameters match one of the theorem's cases and
every obligation assembled for that case holds.
"""
from __future__ import annotations

import logging
import operator
from collections.abc import Callable
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from fractions import Fraction
from math import prod

from syzcert.arith import binom
from syzcert.arith import ceil_half
from syzcert.arith import dim_sym
from syzcert.arith import h0
from syzcert.arith import padic_digits
from syzcert.arith import require_prime
from syzcert.bundle_model import PadicExpansion
from syzcert.bundle_model import degree_decomposition
from syzcert.bundle_model import expansion
from syzcert.bundle_model import syzygy_rank
from syzcert.bundle_model import syzygy_slope
from syzcert.errors import CaseNotApplicable
from syzcert.errors import HypothesisViolation
from syzcert.errors import ParameterError
from syzcert.errors import ScanLimitExceeded


log = logging.getLogger(__name__)

DEFAULT_HORIZON = 10
DEFAULT_SCAN_LIMIT = 10**5


class Case(Enum):
    """Theorem cases, in the order they are tried."""

    P2 = "P2"
    TWO_DIGIT = "TwoDigit"
    LOW_DEGREE = "LowDegree"
    SMALL_P = "SmallP"
    LARGE_P = "LargeP"
    REMARK = "RemarkCase"


class Verdict(Enum):
    """Outcome of a certificate."""

    STABLE = "stable"
    UNKNOWN = "unknown"


class Relation(Enum):
    """Comparison an obligation asserts."""

    LT = "<"
    LE = "<="
    GE = ">="
    GT = ">"

    def compare(self, lhs: Fraction, rhs: Fraction) -> bool:
        """Evaluate ``lhs rel rhs`` exactly."""
        return _COMPARATORS[self](lhs, rhs)


_COMPARATORS: dict[Relation, Callable[[Fraction, Fraction], bool]] = {
    Relation.LT: operator.lt,
    Relation.LE: operator.le,
    Relation.GE: operator.ge,
    Relation.GT: operator.gt,
}


@dataclass(frozen=True)
class StabilityVerdict:
    """``Stable(case)`` when a case matched, otherwise unknown."""

    case: Case | None

    @property
    def stable(self) -> bool:
        """A case matched."""
        return self.case is not None

    @property
    def label(self) -> str:
        """Case name or ``Unknown``."""
        return self.case.value if self.case else "Unknown"


@dataclass(frozen=True)
class Obligation:
    """One verified inequality."""

    name: str
    lhs: Fraction
    rel: Relation
    rhs: Fraction
    holds: bool
    context: int | None = None

    @classmethod
    def check(
        cls,
        name: str,
        lhs: Fraction | int,
        rel: Relation,
        rhs: Fraction | int,
        context: int | None = None,
    ) -> Obligation:
        """Build the obligation and evaluate it."""
        left, right = Fraction(lhs), Fraction(rhs)
        return cls(name, left, rel, right, rel.compare(left, right), context)


@dataclass(frozen=True)
class Certificate:
    """The obligations checked for one ``(n, p, d)`` and the verdict they support."""

    n: int
    p: int
    d: int
    expansion: PadicExpansion
    case: Case | None
    verdict: Verdict
    obligations: tuple[Obligation, ...] = ()
    notes: tuple[str, ...] = ()
    kind: str = "certificate"

    @property
    def all_hold(self) -> bool:
        """Every obligation holds."""
        return all(o.holds for o in self.obligations)

    @property
    def failed(self) -> list[Obligation]:
        """Obligations that do not hold."""
        return [o for o in self.obligations if not o.holds]


@dataclass(frozen=True)
class ThresholdQuery:
    """Inputs of the restriction-degree scan."""

    n: int
    r: int
    hn: int
    disc: Fraction
    horizon: int = DEFAULT_HORIZON
    char_p: int | None = None
    scan_limit: int = DEFAULT_SCAN_LIMIT


@dataclass(frozen=True)
class ThresholdResult:
    """Where the restriction conditions start holding for good."""

    query: ThresholdQuery
    first_pass: int
    stable_from: int
    evidence: tuple[tuple[int, bool], ...]
    classical_window: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class CurveStats:
    """Syzygy bundle of a line bundle on a curve."""

    genus: int
    deg_l: int
    rank: int
    deg_dual: int
    slope_dual: Fraction


def _check_params(n: int, p: int, d: int) -> None:
    require_prime(p)
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")


def _remark_digits_monotone(a: tuple[int, ...]) -> bool:
    m = len(a) - 1
    if m < 2:
        return True
    rising = all(a[t] <= a[t + 1] for t in range(m - 2))
    return rising and a[m - 2] < a[m - 1] and a[m - 2] <= a[m]


def case_matches(case: Case, n: int, p: int, exp: PadicExpansion) -> bool:
    """Evaluate one case's hypotheses on the core digits."""
    a = exp.core_digits.digits
    m = exp.m
    upper = a[2:]
    if case is Case.P2:
        return n == 2
    if case is Case.TWO_DIGIT:
        return sum(1 for t in a if t) <= 2
    if case is Case.LOW_DEGREE:
        return n * p >= exp.core
    if case is Case.SMALL_P:
        return p <= n and all(t >= 1 for t in upper)
    if case is Case.LARGE_P:
        return p >= n and all(t >= p - n + 1 for t in upper)
    # Case.REMARK
    return n >= m + 1 and h0(n, a[m]) >= 1 + a[m] * m * n and _remark_digits_monotone(a)


def classify(n: int, p: int, d: int) -> StabilityVerdict:
    """First matching case after stripping the p-valuation."""
    _check_params(n, p, d)
    exp = expansion(d, p)
    for case in Case:
        if case_matches(case, n, p, exp):
            log.debug("n=%d p=%d d=%d matched %s", n, p, d, case.value)
            return StabilityVerdict(case)
    return StabilityVerdict(None)


def certify_r3_obligations(n: int, p: int, d: int) -> list[Obligation]:
    """Slope-ratio bounds per degree and the top-digit dimension gap."""
    _check_params(n, p, d)
    obligations = [
        Obligation.check(
            "A", Fraction(a * dim_sym(n, a), h0(n, a) - 1), Relation.LT, n, context=a
        )
        for a in range(1, d + 1)
    ]
    exp = expansion(d, p)
    if exp.m >= 1:
        top = exp.core_digits.digits[-1] * p ** (exp.m + exp.valuation)
        obligations.append(
            Obligation.check("B", n * dim_sym(n, d - top), Relation.LT, dim_sym(n, d))
        )
    return obligations


def certify_cm1_ratio(n: int, a_max: int) -> list[Obligation]:
    """``dim S^a / rank V_a >= n / (n + a)`` for ``a = 1 .. a_max``."""
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    return [
        Obligation.check(
            "cm1",
            Fraction(dim_sym(n, a), syzygy_rank(n, a)),
            Relation.GE,
            Fraction(n, n + a),
            context=a,
        )
        for a in range(1, a_max + 1)
    ]


def certify_l8_truncations(n: int, p: int, d: int) -> Certificate:
    """Check every truncation ``W = sum_{j <= i0} blocks`` when ``d < p``.

    The degree of a truncation is taken from the direct block sum. A
    closed-form shortcut for the same sum exists in the literature but does
    not agree with it; mismatches go into the notes and are never asserted.
    """
    _check_params(n, p, d)
    if d >= p:
        raise CaseNotApplicable(f"Truncation check needs d < p, got d={d}, p={p}")
    blocks = degree_decomposition(n, d)
    mu = syzygy_slope(n, d)
    obligations: list[Obligation] = []
    notes: list[str] = []
    minus_deg = 0
    rank = 0
    for i0, block in enumerate(blocks):
        minus_deg -= block.degree
        rank += block.rank
        obligations.append(
            Obligation.check("truncation-degree", minus_deg, Relation.GE, d, context=i0)
        )
        if i0 < d - 1:
            obligations.append(
                Obligation.check(
                    "truncation-slope", Fraction(-minus_deg, rank), Relation.LT, mu, context=i0
                )
            )
        else:
            obligations.append(
                Obligation.check("truncation-full", minus_deg, Relation.LE, d, context=i0)
            )
        closed = (i0 + 1) * dim_sym(n, d - i0 - 1)
        if closed != minus_deg:
            notes.append(f"i0={i0}: direct block sum {minus_deg}, closed form {closed}")
    verdict = Verdict.STABLE if all(o.holds for o in obligations) else Verdict.UNKNOWN
    return Certificate(
        n=n,
        p=p,
        d=d,
        expansion=expansion(d, p),
        case=None,
        verdict=verdict,
        obligations=tuple(obligations),
        notes=tuple(notes),
        kind="truncations",
    )


def _core_for_bound(n: int, p: int, d: int, k: int) -> PadicExpansion:
    _check_params(n, p, d)
    exp = expansion(d, p)
    if not 1 <= k <= exp.m - 1:
        raise ParameterError(f"k must lie in [1, {exp.m - 1}] for d={d}, p={p}; got {k}")
    return exp


def _partial(a: tuple[int, ...], p: int, k: int) -> int:
    return sum(a[t] * p**t for t in range(k + 1))


def _bound_l3_core(n: int, p: int, a: tuple[int, ...], k: int) -> int:
    m = len(a) - 1
    tail = prod(h0(n, a[t]) - 1 for t in range(k + 2, m + 1))
    return _partial(a, p, k) * h0(n, a[k + 1]) * tail


def _bound_r7_core(n: int, p: int, a: tuple[int, ...], k: int) -> int:
    m = len(a) - 1
    return _partial(a, p, k) * prod(dim_sym(n, a[t]) for t in range(k + 1, m + 1))


def _r6_valid(n: int, p: int, a: tuple[int, ...], k: int) -> bool:
    m = len(a) - 1
    return p <= n and all(a[t] == 1 for t in range(k + 1, m))


def _bound_r6_core(n: int, p: int, a: tuple[int, ...], k: int) -> int:
    m = len(a) - 1
    return _partial(a, p, k) * prod(h0(n, a[t]) for t in range(k + 1, m + 1))


def bound_l3(n: int, p: int, d: int, k: int) -> int:
    """Lower bound on ``-deg W`` with one full ``h0`` factor and the rest reduced by one."""
    exp = _core_for_bound(n, p, d, k)
    return _bound_l3_core(n, p, exp.core_digits.digits, k) * p**exp.valuation


def bound_r7(n: int, p: int, d: int, k: int) -> int:
    """Lower bound on ``-deg W`` with symmetric-power factors."""
    exp = _core_for_bound(n, p, d, k)
    return _bound_r7_core(n, p, exp.core_digits.digits, k) * p**exp.valuation


def bound_r6(n: int, p: int, d: int, k: int) -> int:
    """Lower bound with all full ``h0`` factors; needs ``p <= n`` and unit middle digits."""
    exp = _core_for_bound(n, p, d, k)
    a = exp.core_digits.digits
    if not _r6_valid(n, p, a, k):
        raise CaseNotApplicable(
            f"Full h0 bound needs p <= n and digits a_{k + 1}..a_{exp.m - 1} equal to 1"
        )
    return _bound_r6_core(n, p, a, k) * p**exp.valuation


def remark_shortcuts(n: int, p: int, d: int) -> list[Obligation]:
    """Sufficient conditions for the remark case's section-count hypothesis."""
    _check_params(n, p, d)
    exp = expansion(d, p)
    m = exp.m
    a_m = exp.core_digits.digits[-1]
    needed = 1 + a_m * m * n
    shortcuts = []
    if a_m >= 4 and n >= m + 1:
        shortcuts.append(Obligation.check("remark-shortcut-top4", h0(n, a_m), Relation.GE, needed))
    if a_m >= 3 and m <= n - 2:
        shortcuts.append(Obligation.check("remark-shortcut-top3", h0(n, a_m), Relation.GE, needed))
    return shortcuts


def _first_split(a: tuple[int, ...]) -> int:
    """Least position ``t >= 1`` with a nonzero digit, where a subsheaf can first vanish."""
    return next((t for t in range(1, len(a)) if a[t]), len(a))


def _case_obligations(case: Case, n: int, p: int, exp: PadicExpansion) -> list[Obligation]:
    a = exp.core_digits.digits
    m = exp.m
    core = exp.core
    ks = range(_first_split(a), m)
    if case is Case.P2:
        return []
    obligations = certify_r3_obligations(n, p, core)
    if case is Case.TWO_DIGIT:
        return obligations
    if case is Case.SMALL_P:
        for k in ks:
            bound = _bound_l3_core(n, p, a, k)
            if _r6_valid(n, p, a, k):
                bound = max(bound, _bound_r6_core(n, p, a, k))
            obligations.append(Obligation.check("k-bound", bound, Relation.GE, core, context=k))
    elif case is Case.LARGE_P:
        obligations.append(Obligation.check("top-h0", h0(n, a[m]), Relation.GE, (p + 1) * a[m]))
        for k in ks:
            bound = _bound_l3_core(n, p, a, k)
            obligations.append(Obligation.check("k-bound", bound, Relation.GE, core, context=k))
    elif case is Case.LOW_DEGREE:
        for k in ks:
            bound = _bound_r7_core(n, p, a, k)
            obligations.append(Obligation.check("k-bound", bound, Relation.GT, core, context=k))
    else:
        obligations = [
            Obligation.check("remark-dimension", n, Relation.GE, m + 1),
            Obligation.check("remark-sections", h0(n, a[m]), Relation.GE, 1 + a[m] * m * n),
            Obligation.check(
                "remark-digits", int(_remark_digits_monotone(a)), Relation.GE, 1
            ),
        ]
    return obligations


def plane_curve_stats(d: int) -> CurveStats:
    """Plane syzygy bundle of degree ``d`` on a smooth curve of degree ``d + 1``.

    There ``V_d`` restricts to the syzygy bundle of ``O_X(d)``, of degree ``d(d + 1)``.
    """
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")
    genus = d * (d - 1) // 2
    if genus < 2:
        raise HypothesisViolation(f"A plane curve of degree {d + 1} has genus {genus} < 2")
    return curve_syzygy_stats(genus, d * (d + 1))


def certify_case(n: int, p: int, d: int) -> Certificate:
    """Classify, then verify the obligations the matched case relies on."""
    _check_params(n, p, d)
    exp = expansion(d, p)
    case = classify(n, p, d).case
    notes: list[str] = []
    obligations: list[Obligation] = []
    if exp.valuation:
        notes.append(
            f"d = {exp.core} * {p}^{exp.valuation}; obligations are checked on {exp.core}"
            f" and scale by the Frobenius factor {p ** exp.valuation}"
        )
    if case is None:
        notes.append("No case of the theorem matches these parameters")
    else:
        obligations = _case_obligations(case, n, p, exp)
    if case is Case.P2 and d >= 3:
        curve = plane_curve_stats(d)
        notes.append(
            f"On a smooth plane curve of degree {d + 1} (genus {curve.genus}) the bundle has"
            f" rank {curve.rank} and dual slope {curve.slope_dual} < 2"
        )
    if case is Case.REMARK:
        for shortcut in remark_shortcuts(n, p, d):
            notes.append(f"Shortcut {shortcut.name} applies and holds: {shortcut.holds}")
    failed = [o for o in obligations if not o.holds]
    for o in failed:
        notes.append(f"Failed obligation {o.name} (context {o.context})")
    verdict = Verdict.STABLE if case is not None and not failed else Verdict.UNKNOWN
    if verdict is Verdict.UNKNOWN:
        log.info("n=%d p=%d d=%d: verdict unknown", n, p, d)
    return Certificate(
        n=n,
        p=p,
        d=d,
        expansion=exp,
        case=case,
        verdict=verdict,
        obligations=tuple(obligations),
        notes=tuple(notes),
    )


def mu_max_bounds(n: int, d: int) -> tuple[Fraction, Fraction]:
    """Sandwich for the maximal slope of the dual syzygy bundle."""
    lower = Fraction(d, syzygy_rank(n, d))
    upper = Fraction(d, dim_sym(n, ceil_half(d)))
    return lower, upper


def mu_max_proof_check(n: int, p: int, d: int) -> list[Obligation]:
    """The top-digit inequalities behind the upper bound, on the full ``d``."""
    _check_params(n, p, d)
    digits = padic_digits(d, p)
    top = digits.top
    a_m = digits.digits[top]
    half = ceil_half(d)
    weight = p**top
    dim_sum = sum(dim_sym(n, (a_m - i) * weight) for i in range(a_m))
    return [
        Obligation.check("top-digit-weight", a_m * weight, Relation.GE, half),
        Obligation.check("top-digit-dimensions", dim_sum, Relation.GE, dim_sym(n, half)),
    ]


def restriction_ratio(n: int, d: int) -> Fraction:
    """Left side of the second restriction condition."""
    if n == 2:
        return Fraction(binom(d + n, d) - 1, d)
    return Fraction(dim_sym(n, ceil_half(d)), d)


def restriction_passes(q: ThresholdQuery, d: int) -> bool:
    """Both restriction conditions hold at degree ``d``."""
    degree_bound = Fraction(q.r - 1, q.r) * q.disc + Fraction(1, q.r * (q.r - 1) * q.hn)
    target = q.hn * max(Fraction(q.r * q.r - 1, 4), Fraction(1)) + 1
    return d > degree_bound and restriction_ratio(q.n, d) > target


def restriction_threshold(q: ThresholdQuery) -> ThresholdResult:
    """Scan degrees upward for the first pass and the start of a stable run."""
    if q.n < 2 or q.r < 2 or q.hn < 1 or q.horizon < 2:
        raise ParameterError("Threshold scan needs n >= 2, r >= 2, hn >= 1, horizon >= 2")
    cache: dict[int, bool] = {}

    def passes(x: int) -> bool:
        if x not in cache:
            cache[x] = restriction_passes(q, x)
        return cache[x]

    d = 1
    while True:
        if d + q.horizon > q.scan_limit:
            raise ScanLimitExceeded(q.scan_limit)
        window = range(d, d + q.horizon + 1)
        failing = next((x for x in window if not passes(x)), None)
        if failing is not None:
            # every window holding a failing degree fails
            d = failing + 1
            continue
        drop = next(
            (
                x
                for x in range(d, d + q.horizon - 1)
                if restriction_ratio(q.n, x + 2) < restriction_ratio(q.n, x)
            ),
            None,
        )
        if drop is None:
            break
        d = max(d + 1, drop + 3 - q.horizon)
    first_pass = next(x for x in range(1, d + 1) if passes(x))
    evidence = tuple((x, passes(x)) for x in range(1, d + q.horizon + 1))
    window_degrees: tuple[int, ...] = ()
    if q.char_p is not None:
        require_prime(q.char_p)
        window_degrees = tuple(x for x in range(1, q.char_p) if passes(x))
    log.debug("Threshold scan: first pass %d, stable from %d", first_pass, d)
    return ThresholdResult(
        query=q,
        first_pass=first_pass,
        stable_from=d,
        evidence=evidence,
        classical_window=window_degrees,
    )


def curve_syzygy_stats(g: int, deg_l: int) -> CurveStats:
    """Rank and dual slope of the syzygy bundle of a degree ``deg_l`` line bundle."""
    if g < 2:
        raise ParameterError(f"genus must be at least 2, got {g}")
    if deg_l <= 2 * g:
        raise HypothesisViolation(f"Need deg L > 2g, got deg L={deg_l}, g={g}")
    rank = deg_l - g
    slope = Fraction(deg_l, rank)
    assert slope < 2  # noqa: S101
    return CurveStats(genus=g, deg_l=deg_l, rank=rank, deg_dual=deg_l, slope_dual=slope)
