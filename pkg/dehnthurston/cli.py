import logging
import sys
from typing import Any, Dict, Optional

import click

from .click_common import (
    EXIT_RELATION_FAILURE,
    ExceptionHandlerGroup,
    GlobalContextObject,
    JsonParamType,
    RationalParamType,
    Result,
    resolve_coords,
    resolve_surface,
)
from .const import (
    DEFAULT_BOUND,
    DEFAULT_MAX_ITER,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOL,
    ENVVAR_PREFIX,
)
from .coords import DTCoords, sample
from .dsl import load_word
from .exceptions import RecipeError
from .moves import apply_word
from .multicurve import build_strand_model, component_breakdown, matching_dump
from .pa import build_preset_recipe, estimate_dilatation, spectrum_scan
from .presets import PresetHelper
from .relations import SUITES, run_suites
from .surface import PantsDecomposition, Scope

_LOGGER = logging.getLogger(__name__)

pass_global = click.make_pass_decorator(GlobalContextObject)


def surface_option(func):
    return click.option(
        "--surface",
        required=True,
        help="Preset name or path of a gluing JSON document.",
    )(func)


def coords_option(func):
    return click.option(
        "--coords",
        type=JsonParamType(),
        default=None,
        help="Coordinates as inline JSON or a JSON file, sampled when omitted.",
    )(func)


def sampling_options(func):
    seed = click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
    bound = click.option("--bound", type=int, default=DEFAULT_BOUND, show_default=True)
    return seed(bound(func))


def out_option(func):
    return click.option(
        "--out",
        type=click.Path(dir_okay=False, writable=True),
        default=None,
        help="Write the result to a file instead of stdout.",
    )(func)


def iteration_options(func):
    func = click.option(
        "--max-iter", type=int, default=DEFAULT_MAX_ITER, show_default=True
    )(func)
    return click.option(
        "--tol", type=RationalParamType(), default=str(DEFAULT_TOL), show_default=True
    )(func)


def _coords_or_sample(
    value: Any, pd: PantsDecomposition, seed: int, bound: int
) -> DTCoords:
    if value is not None:
        return resolve_coords(value, pd)
    _LOGGER.debug("No coordinates given, sampling with seed %s bound %s", seed, bound)
    return sample(pd, bound, seed, Scope.MF).coords


@click.group(cls=ExceptionHandlerGroup)
@click.option("-d", "--debug", default=False, count=True)
@click.option(
    "-o",
    "--output",
    type=click.Choice(["default", "json", "json_pretty"]),
    default="json",
)
@click.version_option(package_name="python-dehnthurston")
@click.pass_context
def cli(ctx, debug: int, output: str):
    logging_config: Dict[str, Any] = {
        "level": logging.DEBUG if debug > 0 else logging.WARNING
    }
    try:
        from rich.console import Console
        from rich.logging import RichHandler

        rich_config = {
            "show_time": False,
            "console": Console(stderr=True),
        }
        logging_config["handlers"] = [RichHandler(**rich_config)]
        logging_config["format"] = "%(message)s"
    except ImportError:
        logging_config["stream"] = sys.stderr

    logging.basicConfig(**logging_config)  # type: ignore

    ctx.obj = GlobalContextObject(debug=debug, output=output)


@cli.command()
@surface_option
@coords_option
@click.option("--word", default="", help="Word in token notation, e.g. 'T+0 M1@0'.")
@sampling_options
@out_option
@pass_global
def act(
    obj: GlobalContextObject,
    surface: str,
    coords: Any,
    word: str,
    seed: int,
    bound: int,
    out: Optional[str],
):
    """Apply a word to coordinates."""
    _, pd = resolve_surface(surface)
    start = _coords_or_sample(coords, pd, seed, bound)
    mapping_word = load_word(word, pd)
    result, _ = apply_word(mapping_word, start)
    obj.emit(result, out)


@cli.command()
@surface_option
@coords_option
@click.option("--dump-matching", is_flag=True, help="Include the endpoint matching.")
@sampling_options
@out_option
@pass_global
def count(
    obj: GlobalContextObject,
    surface: str,
    coords: Any,
    dump_matching: bool,
    seed: int,
    bound: int,
    out: Optional[str],
):
    """Count the components of an integral multicurve."""
    _, pd = resolve_surface(surface)
    multicurve = _coords_or_sample(coords, pd, seed, bound)
    breakdown = component_breakdown(pd, multicurve)
    if not dump_matching:
        obj.emit(breakdown, out)
        return

    matching = matching_dump(build_strand_model(pd, multicurve))
    data = dict(breakdown.__json__(), matching=matching)
    text = breakdown.__cli_output__ + "\n" + "\n".join(
        "%s:%s -> %s:%s (%s)"
        % (
            m["from"]["window"],
            m["from"]["position"],
            m["to"]["window"],
            m["to"]["position"],
            m["via"],
        )
        for m in matching
    )
    obj.emit(Result(data, text), out)


@cli.command()
@surface_option
@click.option("--word", default=None, help="Word in token notation.")
@click.option(
    "--order",
    default=None,
    help="Twist order over the preset recipe pair, e.g. 'C0+ D0-'.",
)
@coords_option
@iteration_options
@out_option
@pass_global
def dilatation(
    obj: GlobalContextObject,
    surface: str,
    word: Optional[str],
    order: Optional[str],
    coords: Any,
    max_iter: int,
    tol,
    out: Optional[str],
):
    """Estimate the dilatation of a word, the preset recipe word by default."""
    name, pd = resolve_surface(surface)
    if word is not None:
        mapping_word = load_word(word, pd)
    elif name is not None:
        mapping_word, _ = build_preset_recipe(name, order)
    else:
        raise RecipeError("Surfaces read from files need an explicit --word")

    seed = None if coords is None else resolve_coords(coords, mapping_word.base)
    estimate = estimate_dilatation(mapping_word, seed, max_iter=max_iter, tol=tol)
    obj.emit(estimate, out)


@cli.command()
@click.option("--surface", required=True, help="Preset name.")
@click.option("--max-length", type=int, required=True)
@click.option("--workers", type=int, default=1, show_default=True)
@iteration_options
@out_option
@pass_global
def scan(
    obj: GlobalContextObject,
    surface: str,
    max_length: int,
    workers: int,
    max_iter: int,
    tol,
    out: Optional[str],
):
    """Scan the dilatations of recipe words, one JSON line per value."""
    entries = spectrum_scan(
        surface,
        max_length,
        tol=tol,
        max_iter=max_iter,
        workers=workers,
        progress=sys.stderr.isatty(),
    )
    obj.emit_lines(entries, out)


@cli.command("verify-relations")
@surface_option
@click.option(
    "--suite",
    "suites",
    type=click.Choice(list(SUITES)),
    multiple=True,
    help="Suite to run, repeatable; all suites when omitted.",
)
@click.option("--samples", type=int, default=DEFAULT_SAMPLES, show_default=True)
@sampling_options
@out_option
@pass_global
@click.pass_context
def verify_relations(
    ctx,
    obj: GlobalContextObject,
    surface: str,
    suites,
    samples: int,
    seed: int,
    bound: int,
    out: Optional[str],
):
    """Check the mapping class relations on sampled multicurves."""
    _, pd = resolve_surface(surface)
    reports = run_suites(pd, list(suites), samples=samples, seed=seed, bound=bound)
    obj.emit(reports, out)
    if not all(report.passed for report in reports):
        ctx.exit(EXIT_RELATION_FAILURE)


@cli.command()
@out_option
@pass_global
def presets(obj: GlobalContextObject, out: Optional[str]):
    """List the built-in surfaces."""
    helper = PresetHelper()
    obj.emit([helper.get(name) for name in helper.names], out)


def create_cli():
    return cli(auto_envvar_prefix=ENVVAR_PREFIX)


if __name__ == "__main__":
    create_cli()
