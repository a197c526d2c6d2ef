import itertools
from fractions import Fraction

import pytest

from dehnthurston.coords import DTCoords, sample
from dehnthurston.exceptions import InvalidSiteError, WordError
from dehnthurston.moves import (
    FirstMoveFrame,
    MappingWord,
    Move,
    Twist,
    apply_word,
    compose,
    conjugate,
    double_move_image,
    first_move_formulas,
    generators_of,
    invert_word,
    move_first,
    move_second,
    power,
    twist,
)
from dehnthurston.presets import preset
from dehnthurston.surface import MoveKind, Scope, enumerate_move_sites


@pytest.fixture
def torus():
    return preset("once-punctured-torus")[1]


@pytest.fixture
def holed_torus():
    return preset("one-holed-torus")[1]


@pytest.fixture
def sphere():
    return preset("four-holed-sphere")[1]


def test_twist(torus):
    coords = DTCoords.from_pairs(torus, [(3, 1)])
    assert twist(coords, torus, 0, 1).entries == ((3, 4),)
    assert twist(coords, torus, 0, -1).entries == ((3, -2),)
    empty = DTCoords.from_pairs(torus, [(0, 2)])
    assert twist(empty, torus, 0, 1) == empty


def test_twist_boundary(holed_torus):
    coords = DTCoords.zero(holed_torus, Scope.MF)
    with pytest.raises(WordError):
        twist(coords, holed_torus, 1, 1)
    with pytest.raises(WordError):
        Twist(0, 2)


@pytest.mark.parametrize(
    "before,after",
    [
        ((1, 0), (0, 1)),
        ((0, 1), (1, 0)),
        ((3, 1), (1, -3)),
        ((3, 0), (0, 3)),
        ((3, -2), (2, 3)),
    ],
)
def test_first_move_punctured_torus(torus, before, after):
    coords = DTCoords.from_pairs(torus, [before])
    result, after_pd = move_first(coords, torus, torus.site(MoveKind.First, 0))
    assert result.entries == (after,)
    assert after_pd.curve(0).generation == 1


def test_first_move_formulas_on_band():
    frame = FirstMoveFrame(r=0, l11=0, l23=1, t1=0, t2=0)
    result = first_move_formulas(frame)
    assert (result.l23, result.t1) == (0, 1)

    frame = FirstMoveFrame(r=0, l11=0, l23=0, t1=1, t2=0)
    result = first_move_formulas(frame)
    assert (result.l23, result.t1) == (1, 0)


def test_second_move_worked_value(sphere):
    coords = DTCoords.from_pairs(sphere, [(0, 1)])
    site = sphere.site(MoveKind.Second, 0)
    result, after = move_second(coords, sphere, site)
    assert result.entries == ((2, -1),)

    back, _ = move_second(result, after, after.site(MoveKind.Second, 0))
    assert back.entries == ((0, 1),)


def test_wrong_site_kind(torus, sphere):
    coords = DTCoords.from_pairs(sphere, [(0, 1)])
    with pytest.raises(InvalidSiteError):
        move_first(coords, sphere, sphere.site(MoveKind.Second, 0))
    with pytest.raises(InvalidSiteError):
        MappingWord((Move(MoveKind.Second, 0),), torus)


def _grid(pd, scope, size):
    count = len(pd.scope_curves(scope))
    values = [(m, t) for m in range(size) for t in range(-size, size + 1)]
    for pairs in itertools.product(values, repeat=count):
        yield DTCoords.from_pairs(pd, pairs, scope)


def _check_double(pd, coords):
    for site in enumerate_move_sites(pd):
        move = Move(site.kind, site.curve, site.labeling)
        result, _ = apply_word(MappingWord((move, move), pd), coords)
        assert result.entries == double_move_image(coords, pd, site).entries, (
            move.token,
            coords.entries,
        )


def test_first_move_involution_punctured_torus(torus):
    for coords in _grid(torus, Scope.MF0, 8):
        _check_double(torus, coords)
        flip = Move(MoveKind.First, 0)
        result, _ = apply_word(MappingWord((flip, flip), torus), coords)
        assert result.entries == coords.entries


def test_first_move_involution_holed_torus_mf0(holed_torus):
    for coords in _grid(holed_torus, Scope.MF0, 8):
        _check_double(holed_torus, coords)


def test_second_move_involution_sphere_grid(sphere):
    for coords in _grid(sphere, Scope.MF0, 8):
        _check_double(sphere, coords)
    for ma, mb in itertools.product(range(4), repeat=2):
        if (ma + mb) % 2 == 0:
            pairs = [(2, 0), (mb, 0), (ma, 0), (mb, 1), (ma, 2)]
            _check_double(sphere, DTCoords.from_pairs(sphere, pairs, Scope.MF))


@pytest.mark.parametrize("name", ["four-holed-sphere", "genus-two-closed"])
def test_double_move_random(name):
    _, pd = preset(name)
    for seed in range(25):
        _check_double(pd, sample(pd, 100, seed, Scope.MF).coords)
        _check_double(pd, sample(pd, 100, seed, Scope.MF0).coords)


def test_double_first_move_is_half_twist(holed_torus):
    coords = DTCoords.from_pairs(holed_torus, [(1, 0), (2, 0)], Scope.MF)
    move = Move(MoveKind.First, 0)
    result, _ = apply_word(MappingWord((move, move), holed_torus), coords)
    assert result.entries == ((1, 0), (2, 1))
    site = holed_torus.site(MoveKind.First, 0)
    assert double_move_image(coords, holed_torus, site) == result.rebased(holed_torus)


def test_homogeneous(sphere):
    coords = sample(sphere, 10, 5, Scope.MF).coords
    move = Move(MoveKind.Second, 0, 1)
    image, _ = apply_word(MappingWord((move,), sphere), coords)
    scaled, _ = apply_word(MappingWord((move,), sphere), coords.scaled("2/3"))
    assert scaled.entries == image.scaled(Fraction(2, 3)).entries


def test_word_states(sphere):
    flip = Move(MoveKind.Second, 0)
    word = MappingWord((Twist(0, 1), flip, Twist(0, -1), flip), sphere)
    assert len(word.states) == 5
    assert word.is_closed
    assert word.tokens == "T+0 M2@0:0 T-0 M2@0:0"
    assert word.__json__()[1] == {
        "op": "move",
        "kind": "second",
        "curve": 0,
        "labeling": 0,
    }


def test_invert_word(torus):
    word = MappingWord((Twist(0, 1), Move(MoveKind.First, 0), Twist(0, -1)), torus)
    inverse = invert_word(word)
    assert inverse.tokens == "T+0 M1@0 T-0"
    assert inverse.base == word.final

    coords = DTCoords.from_pairs(torus, [(5, -3)])
    image, _ = apply_word(word, coords)
    back, _ = apply_word(inverse, image)
    assert back.entries == coords.entries


def test_compose_conjugate_power(torus):
    base = MappingWord((Move(MoveKind.First, 0),), torus)
    conjugated = conjugate(base, [Twist(0, -1)])
    assert conjugated.tokens == "M1@0 T-0 M1@0"
    assert compose(conjugated, [Twist(0, 1)]).tokens == "M1@0 T-0 M1@0 T+0"

    assert power(conjugated, 2).tokens == "M1@0 T-0 M1@0 M1@0 T-0 M1@0"
    assert power(conjugated, -1).tokens == "M1@0 T+0 M1@0"
    assert len(power(conjugated, 0)) == 0


def test_power_needs_closed_word():
    _, pd = preset("genus-two-closed")
    word = MappingWord((Move(MoveKind.Second, 0),), pd)
    assert not word.is_closed
    with pytest.raises(WordError):
        power(word, 2)


def test_generators_of(sphere, torus):
    assert [g.token for g in generators_of(torus)] == ["T+0", "T-0", "M1@0"]
    assert [g.token for g in generators_of(sphere)] == [
        "T+0",
        "T-0",
        "M2@0:0",
        "M2@0:1",
    ]


def test_inverse_first_move(holed_torus):
    move = Move(MoveKind.First, 0)
    assert move.inverse().token == "M1'@0"
    assert move.inverse().inverse() == move
    with pytest.raises(WordError):
        Move(MoveKind.Second, 0, inverted=True)

    coords = DTCoords.from_pairs(holed_torus, [(1, 0), (2, 0)], Scope.MF)
    word = MappingWord((move,), holed_torus)
    inverse = invert_word(word)
    assert inverse.tokens == "M1'@0"
    image, _ = apply_word(word, coords)
    back, _ = apply_word(inverse, image)
    assert back.entries == coords.entries

    # the flip is its own inverse on the punctured torus
    _, torus = preset("once-punctured-torus")
    assert invert_word(MappingWord((move,), torus)).tokens == "M1@0"


@pytest.mark.slow
@pytest.mark.parametrize(
    "name",
    [
        "once-punctured-torus",
        "one-holed-torus",
        "four-holed-sphere",
        "genus-two-closed",
    ],
)
def test_invert_word_random(name):
    _, pd = preset(name)
    words = [
        MappingWord((generator, Twist(generator.curve, 1)), pd)
        for generator in generators_of(pd)
    ]
    for seed in range(1000):
        coords = sample(pd, 50, seed, Scope.MF).coords
        for word in words:
            image, _ = apply_word(word, coords)
            back, _ = apply_word(invert_word(word), image)
            assert back.entries == coords.entries, (word.tokens, coords.entries)


def _projective(x, y):
    if x < 0 or (x == 0 and y < 0):
        return -x, -y
    return x, y


def test_torus_twists_are_linear(torus):
    """On the punctured torus the twists along the two curves of the handle act
    on ``(m, t)`` by the unipotent matrices ``[[1, 0], [1, 1]]`` and
    ``[[1, -1], [0, 1]]``, up to the sign of the vector."""
    flip = Move(MoveKind.First, 0)
    twist_a = MappingWord((Twist(0, 1),), torus)
    twist_b = MappingWord((flip, Twist(0, 1), flip), torus)
    for seed in range(100):
        coords = sample(torus, 30, seed).coords
        ((m, t),) = coords.entries
        image, _ = apply_word(twist_a, coords)
        assert image.entries == (_projective(m, m + t),)
        image, _ = apply_word(twist_b, coords)
        assert image.entries == (_projective(m - t, t),), (m, t)
