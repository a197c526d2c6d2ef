"""Text and JSON notation for mapping words.

Tokens are separated by whitespace::

    T+<id>   right twist along curve <id>
    T-<id>   left twist along curve <id>
    M1@<id>  first elementary move on curve <id>
    M1'@<id> first elementary move followed by the opposite half twist, the
             inverse of M1@<id>
    M2@<id>[:<labeling>]  second elementary move, labeling 0 (default) or 1
"""
import logging
import re
from typing import Iterable, List, Tuple

from pydantic import ValidationError

from .exceptions import InvalidSiteError, WordError, WordParseError
from .moves import Generator, MappingWord, Move, Twist
from .schema import GeneratorModel
from .surface import MoveKind, PantsDecomposition

_LOGGER = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"T(?P<sign>[+-])(?P<twist>\d+)"
    r"|M1(?P<inverted>')?@(?P<first>\d+)"
    r"|M2@(?P<second>\d+)(?::(?P<labeling>\d+))?"
)


def tokenize(text: str) -> List[Tuple[int, str]]:
    """Split *text* into ``(column, token)`` pairs, columns are 1-based."""
    return [(match.start() + 1, match.group()) for match in re.finditer(r"\S+", text)]


def parse_token(token: str, column: int = 1) -> Generator:
    match = _TOKEN.fullmatch(token)
    if match is None:
        raise WordParseError("unknown token %r" % token, column)
    if match.group("twist") is not None:
        sign = 1 if match.group("sign") == "+" else -1
        return Twist(int(match.group("twist")), sign)
    if match.group("first") is not None:
        return Move(
            MoveKind.First,
            int(match.group("first")),
            inverted=match.group("inverted") is not None,
        )
    labeling = match.group("labeling")
    return Move(
        MoveKind.Second,
        int(match.group("second")),
        0 if labeling is None else int(labeling),
    )


def parse_generators(text: str) -> List[Tuple[int, Generator]]:
    """Parse the syntax only, without checking legality on a surface."""
    return [(column, parse_token(token, column)) for column, token in tokenize(text)]


def _check_legal(
    generators: Iterable[Tuple[int, Generator]], pd: PantsDecomposition
) -> None:
    for column, generator in generators:
        if not 0 <= generator.curve < len(pd.curves):
            raise WordParseError("unknown curve id %s" % generator.curve, column)
        if isinstance(generator, Twist):
            if not pd.curve(generator.curve).is_interior:
                raise WordParseError(
                    "curve %s is a boundary curve" % generator.curve, column
                )
            continue
        try:
            site = pd.site(generator.kind, generator.curve, generator.labeling)
        except InvalidSiteError as ex:
            raise WordParseError(str(ex), column) from ex
        pd = pd.after_move(site)


def parse_word_dsl(text: str, pd: PantsDecomposition) -> MappingWord:
    """Parse *text* into a word based at *pd*.

    Errors carry the column of the offending token, sites are checked against
    the decomposition reached by the preceding tokens.
    """
    generators = parse_generators(text)
    _check_legal(generators, pd)
    word = MappingWord(tuple(g for _, g in generators), pd)
    _LOGGER.debug("Parsed %s generators from %r", len(word), text)
    return word


def format_word(word: MappingWord) -> str:
    return word.tokens


def word_to_json(word: MappingWord) -> List[dict]:
    models = []
    for generator in word.generators:
        if isinstance(generator, Twist):
            model = GeneratorModel(
                op="twist", curve=generator.curve, sign=generator.sign
            )
        else:
            model = GeneratorModel(
                op="move",
                curve=generator.curve,
                kind=generator.kind.value,
                labeling=generator.labeling,
                inverse=True if generator.inverted else None,
            )
        models.append(model.dict(exclude_none=True))
    return models


def word_from_json(items: List[dict], pd: PantsDecomposition) -> MappingWord:
    """Build a word from its JSON form, columns in errors are 1-based item
    positions."""
    generators = []
    for position, item in enumerate(items, start=1):
        try:
            model = GeneratorModel.parse_obj(item)
        except ValidationError as ex:
            raise WordParseError("invalid generator: %s" % ex, position) from ex
        if model.op == "twist":
            if model.sign not in (1, -1):
                raise WordParseError("twist sign must be 1 or -1", position)
            generators.append((position, Twist(model.curve, model.sign)))
            continue
        try:
            kind = MoveKind(model.kind)
        except ValueError as ex:
            raise WordParseError("unknown move kind %r" % model.kind, position) from ex
        try:
            move = Move(kind, model.curve, model.labeling, bool(model.inverse))
        except WordError as ex:
            raise WordParseError(str(ex), position) from ex
        generators.append((position, move))

    _check_legal(generators, pd)
    return MappingWord(tuple(g for _, g in generators), pd)


def load_word(value, pd: PantsDecomposition) -> MappingWord:
    """Accept either the token string or the JSON list form."""
    if isinstance(value, str):
        return parse_word_dsl(value, pd)
    if isinstance(value, list):
        return word_from_json(value, pd)
    raise WordError("A word is a token string or a list of generators")
