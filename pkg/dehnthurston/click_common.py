"""Click commons.

This file contains common functions for cli tools.
"""
import json
import logging
import os
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Tuple

import click
from pydantic import ValidationError

from .coords import DTCoords
from .exceptions import CoordinateError, DehnThurstonException
from .presets import PresetHelper
from .schema import CoordinatesDocument
from .surface import PantsDecomposition, load_gluing
from .utils import parse_rational

try:
    from rich import print as echo
except ImportError:
    echo = click.echo

_LOGGER = logging.getLogger(__name__)

EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_RELATION_FAILURE = 3


def error_document(ex: Exception) -> dict:
    if isinstance(ex, click.ClickException):
        message = ex.format_message()
    else:
        message = str(ex)
    return {"error": {"type": type(ex).__name__, "message": message}}


class ExceptionHandlerGroup(click.Group):
    """Add a simple group for catching the kernel exceptions.

    Kernel and usage errors exit with 1, anything unexpected with 2, both
    print a JSON error document on stderr.
    """

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.Abort):
            raise
        except (click.UsageError, DehnThurstonException) as ex:
            _LOGGER.debug("Validation failure: %s", ex, exc_info=True)
            self._fail(ctx, ex, EXIT_VALIDATION)
        except Exception as ex:
            _LOGGER.debug("Exception: %s", ex, exc_info=True)
            self._fail(ctx, ex, EXIT_RUNTIME)

    @staticmethod
    def _fail(ctx, ex: Exception, code: int):
        click.echo(json.dumps(error_document(ex), sort_keys=True), err=True)
        ctx.exit(code)


class RationalParamType(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except ValueError:
            self.fail("%s is not a valid rational" % value, param, ctx)


class JsonParamType(click.ParamType):
    """Inline JSON or the path of a JSON file."""

    name = "json"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        text = value.strip()
        if not text.startswith(("[", "{")):
            if not os.path.isfile(text):
                self.fail("%s is neither inline JSON nor a file" % value, param, ctx)
            with click.open_file(text) as fp:
                text = fp.read()
        try:
            return json.loads(text)
        except json.JSONDecodeError as ex:
            self.fail("Invalid JSON: %s" % ex, param, ctx)


def resolve_surface(value: str) -> Tuple[Optional[str], PantsDecomposition]:
    """Return ``(preset name, decomposition)`` for a preset name or a gluing
    file, the name is None for files."""
    helper = PresetHelper()
    if value not in helper.names and os.path.isfile(value):
        with click.open_file(value) as fp:
            try:
                document = json.load(fp)
            except json.JSONDecodeError as ex:
                raise click.BadParameter("Invalid JSON in %s: %s" % (value, ex))
        return None, load_gluing(document)
    return value, helper.get(value).decomposition


def resolve_coords(value: Any, pd: PantsDecomposition) -> DTCoords:
    try:
        document = CoordinatesDocument.from_json_value(value)
    except ValidationError as ex:
        raise CoordinateError("Invalid coordinates document: %s" % ex)
    return DTCoords.from_document(pd, document)


def json_output(pretty=False) -> Callable[[Any], str]:
    indent = 2 if pretty else None

    def render(result):
        return json.dumps(to_json(result), indent=indent, sort_keys=True)

    return render


def format_output(result) -> str:
    if getattr(result, "__cli_output__", None) is not None:
        return result.__cli_output__
    if isinstance(result, list):
        return "\n".join(format_output(item) for item in result)
    return str(result)


def to_json(result):
    get_json_data_func = getattr(result, "__json__", None)
    if get_json_data_func is not None:
        return get_json_data_func()
    if isinstance(result, (list, tuple)):
        return [to_json(item) for item in result]
    return result


class Result:
    """Ad hoc result with a JSON form and a text form."""

    def __init__(self, data, text: str):
        self.data = data
        self.text = text

    def __json__(self):
        return self.data

    @property
    def __cli_output__(self) -> str:
        return self.text


class GlobalContextObject:
    def __init__(self, debug: int = 0, output: str = "json"):
        self.debug = debug
        self.output = output

    @property
    def renderer(self) -> Callable[[Any], str]:
        if self.output in ("json", "json_pretty"):
            return json_output(pretty=self.output == "json_pretty")
        return format_output

    def emit(self, result, out: Optional[str] = None):
        text = self.renderer(result)
        if out is None or out == "-":
            if self.output == "default":
                echo(text)
            else:
                click.echo(text)
            return
        with click.open_file(out, "w") as fp:
            fp.write(text + "\n")

    def emit_lines(self, results: Iterable, out: Optional[str] = None):
        """One compact JSON document (or text line) per result."""
        if self.output == "default":
            lines = [format_output(r) for r in results]
        else:
            lines = [json.dumps(to_json(r), sort_keys=True) for r in results]
        with click.open_file(out or "-", "w") as fp:
            for line in lines:
                fp.write(line + "\n")
