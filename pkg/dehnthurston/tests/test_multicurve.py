import math

import pytest

from dehnthurston.coords import DTCoords, sample, validate_integral
from dehnthurston.exceptions import IntegralityError, ParityError
from dehnthurston.moves import apply_generator, generators_of
from dehnthurston.multicurve import (
    arc_components,
    build_strand_model,
    closed_components,
    component_breakdown,
    count_components,
    matching_dump,
)
from dehnthurston.presets import preset
from dehnthurston.surface import Scope


@pytest.fixture
def torus():
    return preset("once-punctured-torus")[1]


@pytest.fixture
def holed_torus():
    return preset("one-holed-torus")[1]


def _multicurve(pd, pairs, scope=Scope.MF0):
    return validate_integral(DTCoords.from_pairs(pd, pairs, scope), pd)


def test_single_band(torus):
    model = build_strand_model(torus, _multicurve(torus, [(1, 0)]))
    assert len(model.strands_of_kind("l23")) == 1
    assert model.windows == {(0, 0): 0, (0, 1): 1, (0, 2): 1}
    assert count_components(torus, _multicurve(torus, [(1, 0)])) == 1

    dump = matching_dump(model)
    assert len(dump) == 2
    assert {entry["via"] for entry in dump} == {"l23", "curve 0"}


def test_annular_copies(torus):
    multicurve = _multicurve(torus, [(0, 3)])
    model = build_strand_model(torus, multicurve)
    assert model.annular == {0: 3}
    assert model.strands == ()
    breakdown = component_breakdown(torus, multicurve)
    assert breakdown.total == 3
    assert breakdown.__json__() == {
        "components": 3,
        "closed_components": 3,
        "arc_components": 0,
        "annular_components": 3,
    }


def test_empty_multicurve(torus):
    assert count_components(torus, _multicurve(torus, [(0, 0)])) == 0


@pytest.mark.parametrize("name", ["once-punctured-torus", "one-holed-torus"])
def test_torus_counts_gcd(name):
    _, pd = preset(name)
    for m in range(31):
        for t in range(-30, 31):
            count = count_components(pd, _multicurve(pd, [(m, t)]))
            assert count == math.gcd(m, t), (m, t)


def test_boundary_arcs(holed_torus):
    multicurve = _multicurve(holed_torus, [(0, 0), (2, 0)], Scope.MF)
    assert arc_components(holed_torus, multicurve) == 1
    assert closed_components(holed_torus, multicurve) == 0

    crossing = _multicurve(holed_torus, [(1, 0), (2, 0)], Scope.MF)
    breakdown = component_breakdown(holed_torus, crossing)
    assert breakdown.arcs == 1
    assert breakdown.total == 1


def test_parity_and_integrality(holed_torus):
    with pytest.raises(ParityError):
        count_components(
            holed_torus,
            DTCoords.from_pairs(holed_torus, [(0, 0), (1, 0)], Scope.MF),
        )
    with pytest.raises(IntegralityError):
        count_components(holed_torus, DTCoords.from_pairs(holed_torus, [("1/2", 0)]))


@pytest.mark.parametrize(
    "name", ["once-punctured-torus", "one-holed-torus", "four-holed-sphere"]
)
def test_count_invariant_under_generators(name):
    _, pd = preset(name)
    for seed in range(20):
        multicurve = sample(pd, 6, seed, Scope.MF)
        before = count_components(pd, multicurve)
        for generator in generators_of(pd):
            image, after = apply_generator(generator, multicurve.coords, pd)
            assert count_components(after, image) == before, (generator.token, seed)
