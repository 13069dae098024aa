"""Case classification and certificates."""
from fractions import Fraction

import pytest

from syzcert.arith import h0
from syzcert.arith import padic_digits
from syzcert.bundle_model import expansion
from syzcert.bundle_model import syzygy_rank
from syzcert.criteria import Case
from syzcert.criteria import Obligation
from syzcert.criteria import Relation
from syzcert.criteria import StabilityVerdict
from syzcert.criteria import Verdict
from syzcert.criteria import bound_l3
from syzcert.criteria import bound_r6
from syzcert.criteria import bound_r7
from syzcert.criteria import case_matches
from syzcert.criteria import certify_case
from syzcert.criteria import certify_cm1_ratio
from syzcert.criteria import certify_l8_truncations
from syzcert.criteria import certify_r3_obligations
from syzcert.criteria import classify
from syzcert.criteria import curve_syzygy_stats
from syzcert.criteria import mu_max_bounds
from syzcert.criteria import mu_max_proof_check
from syzcert.criteria import plane_curve_stats
from syzcert.criteria import remark_shortcuts
from syzcert.errors import CaseNotApplicable
from syzcert.errors import HypothesisViolation
from syzcert.errors import ParameterError


def by_name(obligations: list[Obligation], name: str) -> list[Obligation]:
    """Obligations with the given name, in order."""
    return [o for o in obligations if o.name == name]


def test_relation_compare() -> None:
    """Exact comparisons."""
    assert Relation.LT.compare(Fraction(1, 3), Fraction(1, 2))
    assert not Relation.LT.compare(Fraction(1, 2), Fraction(1, 2))
    assert Relation.LE.compare(Fraction(1, 2), Fraction(1, 2))
    assert Relation.GE.compare(Fraction(2), Fraction(2))
    assert not Relation.GT.compare(Fraction(2), Fraction(2))


def test_obligation_check() -> None:
    """Integers are lifted to rationals and the relation is evaluated."""
    o = Obligation.check("k-bound", 12, Relation.GE, 7, context=1)
    assert o.lhs == Fraction(12)
    assert o.holds
    assert o.context == 1


def test_case_order() -> None:
    """Iteration order is the precedence order."""
    assert [c.value for c in Case] == [
        "P2",
        "TwoDigit",
        "LowDegree",
        "SmallP",
        "LargeP",
        "RemarkCase",
    ]


@pytest.mark.parametrize(
    ("n", "p", "d", "label"),
    [
        (2, 5, 9, "P2"),
        (3, 3, 19, "TwoDigit"),
        (5, 3, 13, "LowDegree"),
        (3, 2, 7, "SmallP"),
        (3, 5, 81, "LargeP"),
        (4, 7, 162, "RemarkCase"),
        (3, 7, 449, "Unknown"),
        (4, 5, 3, "TwoDigit"),
        (3, 5, 50, "TwoDigit"),
        (3, 2, 28, "SmallP"),
    ],
)
def test_classify(n: int, p: int, d: int, label: str) -> None:
    """First matching case after stripping the valuation."""
    verdict = classify(n, p, d)
    assert verdict.label == label
    assert verdict.stable == (label != "Unknown")


def test_stability_verdict_unknown() -> None:
    """No case, not stable."""
    verdict = StabilityVerdict(None)
    assert not verdict.stable
    assert verdict.label == "Unknown"


@pytest.mark.parametrize(("n", "p", "d"), [(1, 3, 5), (3, 4, 5), (3, 3, 0)])
def test_classify_errors(n: int, p: int, d: int) -> None:
    """Parameter errors only."""
    with pytest.raises(ParameterError):
        classify(n, p, d)


def test_classify_is_sound() -> None:
    """A matched case really satisfies its conditions on the core."""
    for n in range(2, 6):
        for p in (2, 3, 5, 7):
            for d in range(1, 120):
                exp = expansion(d, p)
                case = classify(n, p, d).case
                if case is None:
                    assert not any(case_matches(c, n, p, exp) for c in Case)
                    continue
                assert case_matches(case, n, p, exp)
                a = exp.core_digits.digits
                if case is Case.TWO_DIGIT:
                    assert sum(1 for t in a if t) <= 2
                elif case is Case.LOW_DEGREE:
                    assert exp.core <= n * p
                elif case is Case.SMALL_P:
                    assert p <= n and all(t >= 1 for t in a[2:])
                elif case is Case.LARGE_P:
                    assert p >= n and all(t >= p - n + 1 for t in a[2:])


def test_r3_obligations_binary() -> None:
    """Slope ratios for every degree and the top-digit gap."""
    obligations = certify_r3_obligations(3, 2, 7)
    a_terms = by_name(obligations, "A")
    assert [o.context for o in a_terms] == list(range(1, 8))
    assert a_terms[-1].lhs == Fraction(252, 119)
    assert all(o.holds for o in obligations)
    (b,) = by_name(obligations, "B")
    assert (b.lhs, b.rhs) == (30, 36)


def test_r3_obligations_small() -> None:
    """d = 1 has no top-digit gap."""
    obligations = certify_r3_obligations(3, 5, 1)
    assert len(obligations) == 1
    assert obligations[0].lhs == 1
    a5 = by_name(certify_r3_obligations(2, 3, 5), "A")[-1]
    assert a5.lhs == Fraction(30, 20)
    assert a5.holds


def test_r3_gap_fails_on_the_plane() -> None:
    """With two variables the top-digit gap can be an equality."""
    (b,) = by_name(certify_r3_obligations(2, 2, 3), "B")
    assert (b.lhs, b.rhs) == (4, 4)
    assert not b.holds


def test_cm1_ratio() -> None:
    """Symmetric power share of the bundle."""
    obligations = certify_cm1_ratio(3, 2)
    assert [(o.lhs, o.rhs) for o in obligations] == [
        (Fraction(1), Fraction(3, 4)),
        (Fraction(6, 9), Fraction(3, 5)),
    ]
    last = certify_cm1_ratio(4, 5)[-1]
    assert (last.lhs, last.rhs) == (Fraction(56, 125), Fraction(4, 9))
    assert last.holds
    with pytest.raises(ParameterError):
        certify_cm1_ratio(1, 3)


def test_l8_truncations() -> None:
    """Direct block sums for d = 3, p = 5."""
    cert = certify_l8_truncations(3, 5, 3)
    degrees = by_name(list(cert.obligations), "truncation-degree")
    assert [o.lhs for o in degrees] == [10, 8, 3]
    assert len(by_name(list(cert.obligations), "truncation-slope")) == 2
    (full,) = by_name(list(cert.obligations), "truncation-full")
    assert full.lhs == 3
    assert cert.kind == "truncations"
    assert cert.case is None
    assert cert.verdict is Verdict.STABLE
    assert len(cert.notes) == 2


def test_l8_truncations_edges() -> None:
    """Single block and the first block on the line."""
    single = certify_l8_truncations(3, 5, 1)
    assert [o.name for o in single.obligations] == ["truncation-degree", "truncation-full"]
    assert single.obligations[0].lhs == 1
    first = certify_l8_truncations(2, 7, 4).obligations[0]
    assert first.lhs == 10
    with pytest.raises(CaseNotApplicable):
        certify_l8_truncations(3, 5, 5)


@pytest.mark.parametrize(
    ("n", "p", "d", "k", "expected"),
    [
        (5, 3, 13, 1, 24),
        (3, 5, 81, 1, 120),
        (3, 2, 7, 1, 12),
        (3, 3, 19, 1, 10),
        (3, 2, 14, 1, 24),
    ],
)
def test_bound_l3(n: int, p: int, d: int, k: int, expected: int) -> None:
    """Mixed bound, scaled by the Frobenius factor."""
    assert bound_l3(n, p, d, k) == expected


@pytest.mark.parametrize(
    ("n", "p", "d", "k", "expected"),
    [(5, 3, 13, 1, 20), (3, 2, 7, 1, 9), (3, 5, 81, 1, 60)],
)
def test_bound_r7(n: int, p: int, d: int, k: int, expected: int) -> None:
    """Symmetric power bound."""
    assert bound_r7(n, p, d, k) == expected


@pytest.mark.parametrize(
    ("n", "p", "d", "k", "expected"),
    [(3, 2, 7, 1, 12), (3, 2, 15, 1, 48), (4, 2, 7, 1, 15)],
)
def test_bound_r6(n: int, p: int, d: int, k: int, expected: int) -> None:
    """Full section bound."""
    assert bound_r6(n, p, d, k) == expected


def test_bound_errors() -> None:
    """k out of range, and the full bound outside its hypothesis."""
    with pytest.raises(ParameterError):
        bound_l3(3, 2, 7, 2)
    with pytest.raises(ParameterError):
        bound_r7(3, 2, 7, 0)
    with pytest.raises(ParameterError):
        bound_l3(3, 3, 4, 1)
    with pytest.raises(CaseNotApplicable):
        bound_r6(3, 5, 81, 1)
    with pytest.raises(CaseNotApplicable):
        bound_r6(3, 2, 11, 1)


def test_certify_small_p() -> None:
    """Golden certificate for (3, 2, 7)."""
    cert = certify_case(3, 2, 7)
    assert cert.case is Case.SMALL_P
    assert cert.verdict is Verdict.STABLE
    assert cert.all_hold
    assert len(by_name(list(cert.obligations), "A")) == 7
    (k,) = by_name(list(cert.obligations), "k-bound")
    assert (k.lhs, k.rel, k.rhs, k.context) == (12, Relation.GE, 7, 1)
    assert cert.notes == ()


def test_certify_two_digit() -> None:
    """Only the slope-ratio obligations."""
    cert = certify_case(3, 3, 19)
    assert cert.case is Case.TWO_DIGIT
    assert {o.name for o in cert.obligations} == {"A", "B"}
    (b,) = by_name(list(cert.obligations), "B")
    assert (b.lhs, b.rhs) == (9, 210)
    assert cert.verdict is Verdict.STABLE


def test_certify_large_p() -> None:
    """Top digit sections and the mixed bound."""
    cert = certify_case(3, 5, 81)
    assert cert.case is Case.LARGE_P
    (top,) = by_name(list(cert.obligations), "top-h0")
    assert (top.lhs, top.rhs) == (20, 18)
    (k,) = by_name(list(cert.obligations), "k-bound")
    assert (k.lhs, k.rhs) == (120, 81)
    assert cert.verdict is Verdict.STABLE


def test_certify_low_degree() -> None:
    """Strict symmetric power bound."""
    cert = certify_case(5, 3, 13)
    assert cert.case is Case.LOW_DEGREE
    (k,) = by_name(list(cert.obligations), "k-bound")
    assert (k.lhs, k.rel, k.rhs) == (20, Relation.GT, 13)
    assert cert.verdict is Verdict.STABLE


def test_certify_remark_case() -> None:
    """Hypotheses recorded as obligations, shortcut noted."""
    cert = certify_case(4, 7, 162)
    assert cert.case is Case.REMARK
    assert [o.name for o in cert.obligations] == [
        "remark-dimension",
        "remark-sections",
        "remark-digits",
    ]
    sections = cert.obligations[1]
    assert (sections.lhs, sections.rhs) == (35, 25)
    assert cert.verdict is Verdict.STABLE
    assert any("remark-shortcut-top3" in note for note in cert.notes)


def test_certify_plane() -> None:
    """No obligations, plane curve note from degree 3 on."""
    cert = certify_case(2, 5, 9)
    assert cert.case is Case.P2
    assert cert.obligations == ()
    assert cert.verdict is Verdict.STABLE
    assert any("degree 10 (genus 36)" in note and "rank 54" in note for note in cert.notes)
    assert certify_case(2, 5, 2).notes == ()


def test_certify_unknown() -> None:
    """No case, no obligations, unknown verdict."""
    cert = certify_case(3, 7, 449)
    assert cert.case is None
    assert cert.verdict is Verdict.UNKNOWN
    assert cert.obligations == ()
    assert "No case of the theorem matches these parameters" in cert.notes


def test_certify_valuation() -> None:
    """Obligations are checked on the core."""
    cert = certify_case(3, 2, 28)
    assert cert.expansion.valuation == 2
    assert len(by_name(list(cert.obligations), "A")) == 7
    assert cert.notes[0].startswith("d = 7 * 2^2")


def test_remark_shortcuts() -> None:
    """Shortcuts for the section-count hypothesis."""
    assert [o.name for o in remark_shortcuts(4, 7, 162)] == ["remark-shortcut-top3"]
    # 4 + 4*7 + 4*49, top digit 4 with m = 2
    both = remark_shortcuts(4, 7, 228)
    assert [o.name for o in both] == ["remark-shortcut-top4", "remark-shortcut-top3"]
    assert all(o.holds for o in both)
    assert h0(4, 4) == both[0].lhs


def test_mu_max_bounds() -> None:
    """Slope sandwich."""
    assert mu_max_bounds(3, 4) == (Fraction(2, 17), Fraction(2, 3))
    assert mu_max_bounds(3, 7) == (Fraction(7, 119), Fraction(7, 15))
    for n in range(2, 6):
        assert mu_max_bounds(n, 1) == (Fraction(1, n), Fraction(1, n))


@pytest.mark.parametrize(
    ("n", "p", "d", "values"),
    [
        (3, 2, 7, [(4, 4), (15, 15)]),
        (3, 3, 19, [(18, 10), (245, 66)]),
        (3, 5, 3, [(3, 2), (19, 6)]),
    ],
)
def test_mu_max_proof_check(n: int, p: int, d: int, values: list[tuple[int, int]]) -> None:
    """Top-digit inequalities, tight for (3, 2, 7)."""
    obligations = mu_max_proof_check(n, p, d)
    assert [(o.lhs, o.rhs) for o in obligations] == values
    assert all(o.holds for o in obligations)


def test_plane_curve_stats() -> None:
    """Genus and degree of a smooth plane curve of degree d + 1."""
    quartic = plane_curve_stats(3)
    assert (quartic.genus, quartic.deg_l, quartic.rank) == (3, 12, 9)
    assert quartic.slope_dual == Fraction(4, 3)
    quintic = plane_curve_stats(4)
    assert (quintic.genus, quintic.deg_l, quintic.rank) == (6, 20, 14)
    assert quintic.slope_dual == Fraction(10, 7)
    with pytest.raises(HypothesisViolation):
        plane_curve_stats(2)
    with pytest.raises(ParameterError):
        plane_curve_stats(0)


@pytest.mark.parametrize(
    ("g", "deg_l", "rank", "slope"),
    [(3, 7, 4, Fraction(7, 4)), (2, 5, 3, Fraction(5, 3)), (4, 9, 5, Fraction(9, 5))],
)
def test_curve_syzygy_stats(g: int, deg_l: int, rank: int, slope: Fraction) -> None:
    """Rank and dual slope below 2."""
    stats = curve_syzygy_stats(g, deg_l)
    assert stats.rank == rank
    assert stats.deg_dual == deg_l
    assert stats.slope_dual == slope


def test_curve_syzygy_stats_errors() -> None:
    """Genus below 2 and degree not above 2g."""
    with pytest.raises(ParameterError):
        curve_syzygy_stats(1, 5)
    with pytest.raises(HypothesisViolation):
        curve_syzygy_stats(2, 4)


def test_digits_of_remark_instances() -> None:
    """The remark instances have the digits the tests rely on."""
    assert padic_digits(162, 7).digits == (1, 2, 3)
    assert padic_digits(228, 7).digits == (4, 4, 4)


def test_certify_skips_bounds_below_first_split() -> None:
    """With a_1 = 0 the k-bounds start at the next nonzero digit."""
    cert = certify_case(3, 3, 38)
    assert cert.expansion.core_digits.digits == (2, 0, 1, 1)
    assert cert.case is Case.SMALL_P
    assert cert.verdict is Verdict.STABLE
    (k,) = by_name(list(cert.obligations), "k-bound")
    assert (k.context, k.lhs, k.rhs) == (2, 44, 38)
    assert cert.failed == []


@pytest.mark.parametrize(
    ("n", "p", "d"), [(3, 3, 37), (3, 3, 46), (3, 3, 64), (4, 3, 37), (5, 3, 37)]
)
def test_certify_zero_second_digit(n: int, p: int, d: int) -> None:
    """Matched cases with a zero second digit are certified."""
    cert = certify_case(n, p, d)
    assert cert.case is not None
    assert cert.verdict is Verdict.STABLE
    assert all(o.context != 1 for o in cert.obligations if o.name == "k-bound")


@pytest.mark.parametrize("d", range(3, 30))
def test_plane_curve_rank_matches_bundle(d: int) -> None:
    """The restricted bundle keeps the rank of the plane syzygy bundle."""
    assert plane_curve_stats(d).rank == syzygy_rank(2, d)
