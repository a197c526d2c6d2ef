from fractions import Fraction

import pytest

from dehnthurston.coords import DTCoords
from dehnthurston.moves import Move, Twist
from dehnthurston.presets import preset
from dehnthurston.relations import (
    SUITES,
    Slope,
    SuiteReport,
    check_braid,
    check_continuity,
    check_count_invariance,
    check_involution,
    check_order_six,
    check_twist_law,
    lipschitz_bound,
    quotient_distance,
    run_suites,
)
from dehnthurston.surface import MoveKind
from dehnthurston.utils import join, meet

PRESETS = [
    "once-punctured-torus",
    "one-holed-torus",
    "four-holed-sphere",
    "genus-two-closed",
]


@pytest.mark.parametrize(
    "name", ["once-punctured-torus", "one-holed-torus", "four-holed-sphere"]
)
def test_all_suites_pass(name):
    _, pd = preset(name)
    reports = run_suites(pd, samples=15, seed=3, bound=8)
    assert [r.suite for r in reports] == list(SUITES)
    failed = [r.__json__() for r in reports if not r.passed]
    assert not failed


@pytest.mark.slow
@pytest.mark.parametrize(
    "suite", ["twist-law", "involution", "count-invariance", "homogeneity"]
)
def test_genus_two_suites(suite):
    _, pd = preset("genus-two-closed")
    (report,) = run_suites(pd, [suite], samples=10, seed=11, bound=6)
    assert report.passed, report.counterexample


def test_braid_punctured_torus():
    _, pd = preset("once-punctured-torus")
    report = check_braid(pd, 50, 7, 20)
    assert report.passed
    assert report.checked == 50
    assert check_order_six(pd, 20, 7, 20).passed


def test_braid_skipped_without_peripheral_handle():
    _, sphere = preset("four-holed-sphere")
    assert check_braid(sphere, 5, 0, 5).skipped
    _, genus_two = preset("genus-two-closed")
    report = check_order_six(genus_two, 5, 0, 5)
    assert report.skipped
    assert report.passed
    assert report.__cli_output__ == "order-six: skipped"


def test_unknown_suite():
    _, pd = preset("once-punctured-torus")
    with pytest.raises(ValueError, match="Unknown suites"):
        run_suites(pd, ["commutator"])


def test_quotient_distance():
    _, pd = preset("once-punctured-torus")
    first = DTCoords.from_pairs(pd, [(0, 3)])
    second = DTCoords.from_pairs(pd, [(0, "5/2")])
    assert quotient_distance(first, second) == Fraction(1, 2)
    near = DTCoords.from_pairs(pd, [("1/1000", -3)])
    assert quotient_distance(first, near) == Fraction(1, 1000)


def test_lipschitz_bound():
    twist_bound = lipschitz_bound(Twist(0))
    first_bound = lipschitz_bound(Move(MoveKind.First, 0))
    second_bound = lipschitz_bound(Move(MoveKind.Second, 0))
    assert twist_bound == 2
    assert first_bound == Fraction(21, 2)
    assert lipschitz_bound(Move(MoveKind.First, 0, inverted=True)) == first_bound
    assert first_bound < second_bound
    assert isinstance(second_bound, Fraction)


def test_lipschitz_bound_merges_shared_curves():
    _, pd = preset("four-holed-sphere")
    move = Move(MoveKind.Second, 0)
    # the four roles are boundary curves, all distinct
    assert lipschitz_bound(move, pd) == lipschitz_bound(move)


def test_slope_arithmetic():
    x = Slope(Fraction(3), Fraction(1))
    y = Slope(Fraction(-1), Fraction(2))
    assert (x - 2 * y).bound == 5
    assert (x - 2 * y).value == 5
    assert abs(y).value == 1
    assert (x / 2).bound == Fraction(1, 2)
    assert join(Fraction(0), y).value == 0
    assert join(Fraction(0), y).bound == 2
    assert meet(x, y, 7) == -1
    assert x > 2 and y <= -1 and x != y
    with pytest.raises(TypeError):
        x * y


@pytest.mark.parametrize("name", PRESETS)
def test_continuity(name):
    _, pd = preset(name)
    report = check_continuity(pd, 10, 5, 10)
    assert report.passed, report.counterexample
    assert report.checked > 0


@pytest.mark.slow
@pytest.mark.parametrize("name", PRESETS)
def test_twist_law_full(name):
    _, pd = preset(name)
    report = check_twist_law(pd, 10_000, 1, 50)
    assert report.passed, report.counterexample


@pytest.mark.slow
@pytest.mark.parametrize("name", PRESETS)
def test_count_invariance_full(name):
    _, pd = preset(name)
    report = check_count_invariance(pd, 1_000, 2, 20)
    assert report.passed, report.counterexample


@pytest.mark.slow
@pytest.mark.parametrize("name", PRESETS)
def test_involution_full(name):
    _, pd = preset(name)
    report = check_involution(pd, 10_000, 3, 100)
    assert report.passed, report.counterexample


@pytest.mark.slow
def test_braid_and_order_six_full():
    _, pd = preset("once-punctured-torus")
    braid = check_braid(pd, 1_000, 4, 50)
    assert braid.passed, braid.counterexample
    assert braid.checked == 1_000
    order_six = check_order_six(pd, 1_000, 4, 50)
    assert order_six.passed, order_six.counterexample


def test_report_output():
    report = SuiteReport("braid", False, 4, counterexample={"curve": 0})
    assert report.__json__() == {
        "suite": "braid",
        "passed": False,
        "checked": 4,
        "skipped": False,
        "counterexample": {"curve": 0},
    }
    assert "FAIL" in report.__cli_output__
