import pytest

from dehnthurston.dsl import (
    load_word,
    parse_token,
    parse_word_dsl,
    tokenize,
    word_from_json,
    word_to_json,
)
from dehnthurston.exceptions import WordError, WordParseError
from dehnthurston.moves import Move, Twist
from dehnthurston.presets import preset
from dehnthurston.surface import MoveKind


@pytest.fixture
def torus():
    return preset("once-punctured-torus")[1]


@pytest.fixture
def sphere():
    return preset("four-holed-sphere")[1]


def test_tokenize():
    assert tokenize("  T+0   M1@0") == [(3, "T+0"), (9, "M1@0")]


@pytest.mark.parametrize(
    "token,generator",
    [
        ("T+3", Twist(3, 1)),
        ("T-0", Twist(0, -1)),
        ("M1@2", Move(MoveKind.First, 2)),
        ("M1'@2", Move(MoveKind.First, 2, inverted=True)),
        ("M2@4", Move(MoveKind.Second, 4, 0)),
        ("M2@4:1", Move(MoveKind.Second, 4, 1)),
    ],
)
def test_parse_token(token, generator):
    assert parse_token(token) == generator


def test_parse_word(sphere):
    word = parse_word_dsl("T+0 M2@0:1 T-0 M2@0:1", sphere)
    assert len(word) == 4
    assert word.tokens == "T+0 M2@0:1 T-0 M2@0:1"
    assert word.is_closed


@pytest.mark.parametrize(
    "text,message",
    [
        ("T+9", "unknown curve id 9 at column 1"),
        ("T+0 X", "unknown token 'X' at column 5"),
        ("T+0  M2@0", "at column 6"),
        ("T*0", "at column 1"),
    ],
)
def test_parse_word_errors(torus, text, message):
    with pytest.raises(WordParseError, match=message):
        parse_word_dsl(text, torus)


def test_parse_word_error_column(torus):
    with pytest.raises(WordParseError) as excinfo:
        parse_word_dsl("M1@0 M1@0 T+2", torus)
    assert excinfo.value.column == 11


def test_boundary_twist():
    _, pd = preset("one-holed-torus")
    with pytest.raises(WordParseError, match="curve 1 is a boundary curve at column 1"):
        parse_word_dsl("T+1", pd)


def test_bad_labeling(sphere):
    with pytest.raises(WordParseError, match="column 5"):
        parse_word_dsl("T+0 M2@0:2", sphere)


def test_json_form(sphere):
    word = parse_word_dsl("T+0 M2@0 T-0 M2@0", sphere)
    items = word_to_json(word)
    assert items[0] == {"op": "twist", "curve": 0, "sign": 1, "labeling": 0}
    assert items[1] == {"op": "move", "curve": 0, "kind": "second", "labeling": 0}
    assert word_from_json(items, sphere).tokens == word.tokens


def test_inverse_first_move_json():
    _, holed_torus = preset("one-holed-torus")
    word = parse_word_dsl("M1@0 T+0 M1'@0", holed_torus)
    items = word_to_json(word)
    assert items[0] == {"op": "move", "curve": 0, "kind": "first", "labeling": 0}
    assert items[2] == {
        "op": "move",
        "curve": 0,
        "kind": "first",
        "labeling": 0,
        "inverse": True,
    }
    assert word_from_json(items, holed_torus).tokens == "M1@0 T+0 M1'@0"


def test_json_form_errors(sphere):
    with pytest.raises(WordParseError, match="column 2"):
        word_from_json(
            [{"op": "twist", "curve": 0, "sign": 1}, {"op": "jump", "curve": 0}],
            sphere,
        )
    with pytest.raises(WordParseError, match="unknown move kind"):
        word_from_json([{"op": "move", "curve": 0, "kind": "third"}], sphere)
    with pytest.raises(WordParseError, match="sign"):
        word_from_json([{"op": "twist", "curve": 0, "sign": 2}], sphere)
    with pytest.raises(WordParseError, match="column 1"):
        word_from_json(
            [{"op": "move", "curve": 0, "kind": "second", "inverse": True}], sphere
        )


def test_load_word(sphere):
    assert load_word("T+0", sphere).tokens == "T+0"
    assert load_word([{"op": "twist", "curve": 0, "sign": -1}], sphere).tokens == "T-0"
    assert len(load_word("", sphere)) == 0
    with pytest.raises(WordError):
        load_word(3, sphere)
