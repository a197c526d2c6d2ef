from fractions import Fraction

import pytest

from dehnthurston.coords import (
    DTCoords,
    PantsWeights,
    extend,
    lambda_to_m,
    m_to_lambda,
    normalize,
    pants_weights,
    projectivize,
    restrict,
    sample,
    validate_integral,
)
from dehnthurston.exceptions import (
    CoordinateError,
    IntegralityError,
    ParityError,
    ScopeMismatchError,
    StaleCoordinatesError,
    WeightPatternError,
)
from dehnthurston.moves import move_first
from dehnthurston.presets import preset
from dehnthurston.schema import CoordinatesDocument
from dehnthurston.surface import MoveKind, Scope
from dehnthurston.utils import format_rational, parse_rational


@pytest.fixture
def torus():
    return preset("once-punctured-torus")[1]


@pytest.fixture
def holed_torus():
    return preset("one-holed-torus")[1]


@pytest.mark.parametrize(
    "value,expected",
    [
        ("3/2", Fraction(3, 2)),
        ("-4", Fraction(-4)),
        ("0.25", Fraction(1, 4)),
        (7, Fraction(7)),
        (" 10/4 ", Fraction(5, 2)),
    ],
)
def test_parse_rational(value, expected):
    assert parse_rational(value) == expected


@pytest.mark.parametrize("value", [0.5, "abc", True, "1/0", "Infinity", "NaN"])
def test_parse_rational_invalid(value):
    with pytest.raises(ValueError):
        parse_rational(value)


def test_format_rational():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-8, 2)) == "-4"


def test_normalize():
    coords = normalize([(0, -3), (2, -1), ("1/2", 0)])
    assert coords.entries == (
        (0, 3),
        (2, -1),
        (Fraction(1, 2), 0),
    )
    with pytest.raises(CoordinateError):
        normalize([(-1, 0)])


@pytest.mark.parametrize(
    "m,weights",
    [
        ((2, 2, 2), (0, 0, 0, 1, 1, 1)),
        ((4, 1, 1), (1, 0, 0, 1, 1, 0)),
        ((0, 1, 1), (0, 0, 0, 0, 0, 1)),
        ((3, 0, 0), (Fraction(3, 2), 0, 0, 0, 0, 0)),
        ((1, 1, 0), (0, 0, 0, 1, 0, 0)),
    ],
)
def test_m_to_lambda(m, weights):
    assert m_to_lambda(*m).as_tuple() == weights
    assert lambda_to_m(m_to_lambda(*m)) == m


def test_m_to_lambda_round_trip():
    for m1 in range(21):
        for m2 in range(21):
            for m3 in range(21):
                weights = m_to_lambda(m1, m2, m3)
                assert lambda_to_m(weights) == (m1, m2, m3)
                if (m1 + m2 + m3) % 2 == 0:
                    assert all(w.denominator == 1 for w in weights.as_tuple())


def test_lambda_to_m_rejects_crossing_arcs():
    with pytest.raises(WeightPatternError):
        lambda_to_m(PantsWeights(l11=1, l22=1))
    with pytest.raises(WeightPatternError):
        lambda_to_m(PantsWeights(l11=1, l23=1))
    with pytest.raises(WeightPatternError):
        lambda_to_m(PantsWeights(l12=-1))


def test_pants_weights(torus):
    coords = DTCoords.from_pairs(torus, [(3, 1)])
    (weights,) = pants_weights(torus, coords)
    assert weights.as_tuple() == (0, 0, 0, 0, 0, 3)


def test_validate_integral(holed_torus):
    coords = DTCoords.from_pairs(holed_torus, [(1, 0), (2, 5)], Scope.MF)
    assert validate_integral(coords, holed_torus).m(1) == 2

    odd = DTCoords.from_pairs(holed_torus, [(1, 0), (1, 0)], Scope.MF)
    with pytest.raises(ParityError):
        validate_integral(odd, holed_torus)

    half = DTCoords.from_pairs(holed_torus, [("1/2", 0)])
    with pytest.raises(IntegralityError):
        validate_integral(half, holed_torus)


def test_scope_mismatch(holed_torus):
    coords = DTCoords.from_pairs(holed_torus, [(1, 0)])
    assert coords.scope is Scope.MF0
    assert coords.entry(1) == (0, 0)
    broken = DTCoords(Scope.MF, coords.entries, coords.generations)
    with pytest.raises(ScopeMismatchError):
        broken.check(holed_torus)
    with pytest.raises(ScopeMismatchError):
        coords.replace({1: (2, 0)})


def test_stale_coordinates(torus):
    coords = DTCoords.from_pairs(torus, [(1, 0)])
    _, after = move_first(coords, torus, torus.site(MoveKind.First, 0))
    with pytest.raises(StaleCoordinatesError):
        coords.check(after)
    assert coords.rebased(after).check(after).generations == (1,)


def test_restrict_and_extend(holed_torus):
    coords = DTCoords.from_pairs(holed_torus, [(3, 1), (0, 0)], Scope.MF)
    small = restrict(coords, holed_torus)
    assert small.scope is Scope.MF0
    assert small.entries == ((3, 1),)
    assert extend(small, holed_torus) == coords

    loaded = DTCoords.from_pairs(holed_torus, [(3, 1), (2, 0)], Scope.MF)
    with pytest.raises(ScopeMismatchError):
        restrict(loaded, holed_torus)


def test_from_document_scope_inference(holed_torus):
    interior = CoordinatesDocument.from_json_value([{"curve": 0, "m": 2, "t": "-1"}])
    assert DTCoords.from_document(holed_torus, interior).scope is Scope.MF0

    boundary = CoordinatesDocument.from_json_value([{"curve": 1, "m": 2}])
    coords = DTCoords.from_document(holed_torus, boundary)
    assert coords.scope is Scope.MF
    assert coords.entries == ((0, 0), (2, 0))

    with pytest.raises(CoordinateError, match="Unknown curve"):
        DTCoords.from_document(
            holed_torus, CoordinatesDocument.from_json_value([{"curve": 4}])
        )


def test_document_round_trip(holed_torus):
    coords = DTCoords.from_pairs(holed_torus, [("3/2", "-1/3"), (2, 0)], Scope.MF)
    document = coords.to_document()
    assert document.coordinates[0].m == "3/2"
    assert DTCoords.from_document(holed_torus, document) == coords


def test_scaled_and_projectivize(torus):
    coords = DTCoords.from_pairs(torus, [(2, -4)])
    assert coords.scaled("1/2").entries == ((1, -2),)
    assert projectivize(coords).entries == ((Fraction(1, 2), -1),)
    with pytest.raises(CoordinateError):
        coords.scaled(0)
    with pytest.raises(CoordinateError):
        projectivize(DTCoords.zero(torus))


@pytest.mark.parametrize("name", ["one-holed-torus", "four-holed-sphere"])
@pytest.mark.parametrize("scope", [Scope.MF, Scope.MF0])
def test_sample(name, scope):
    _, pd = preset(name)
    first = sample(pd, 10, 3, scope)
    assert first == sample(pd, 10, 3, scope)
    assert first.scope is scope
    for m, t in first.entries:
        assert 0 <= m <= 10
        assert -10 <= t <= 10
    validate_integral(first, pd)


def test_sample_bound(torus):
    with pytest.raises(CoordinateError):
        sample(torus, 0, 1)
