import logging
import os
from typing import Dict, List, Tuple

import attr
import yaml

from .exceptions import UnknownPresetError
from .schema import GluingDescription
from .surface import (
    PantsDecomposition,
    Scope,
    SurfaceSpec,
    build_pants_decomposition,
)

_LOGGER = logging.getLogger(__name__)


@attr.s(auto_attribs=True, frozen=True)
class PresetRecipe:
    """Filling pair shipped with a preset."""

    C: Tuple[str, ...]
    D: Tuple[str, ...]
    order: str
    certified: bool


@attr.s(auto_attribs=True, frozen=True)
class PresetInfo:
    name: str
    description: str
    spec: SurfaceSpec
    decomposition: PantsDecomposition
    recipe: PresetRecipe
    scan_cap: int

    def __json__(self):
        return {
            "name": self.name,
            "description": self.description,
            "genus": self.spec.genus,
            "boundary_count": self.spec.boundary_count,
            "puncture_count": self.spec.puncture_count,
            "curves": self.spec.curve_count,
            "interior_curves": self.spec.interior_curve_count,
            "pants": self.spec.pants_count,
            "dimension_mf": self.spec.coordinate_dimension(Scope.MF),
            "dimension_mf0": self.spec.coordinate_dimension(Scope.MF0),
            "scan_cap": self.scan_cap,
            "recipe_certified": self.recipe.certified,
        }

    @property
    def __cli_output__(self) -> str:
        return "%s: %s, %s curves, %s pants%s" % (
            self.name,
            self.spec.name,
            self.spec.curve_count,
            self.spec.pants_count,
            "" if self.recipe.certified else " (recipe unverified)",
        )


class PresetHelper:
    """Loads the preset catalog from ``presets.yaml`` once and caches it."""

    _presets: Dict[str, PresetInfo] = {}

    def __init__(self):
        if not PresetHelper._presets:
            self._parse_presets_yaml()

    def _parse_presets_yaml(self):
        with open(os.path.dirname(__file__) + "/presets.yaml") as filedata:
            presets = yaml.safe_load(filedata)
            for key, value in presets.items():
                gluing = GluingDescription.parse_obj(value)
                spec = SurfaceSpec(
                    gluing.surface.genus,
                    gluing.surface.boundary_count,
                    gluing.surface.puncture_count,
                )
                recipe = value["recipe"]
                PresetHelper._presets[key] = PresetInfo(
                    name=key,
                    description=value["description"],
                    spec=spec,
                    decomposition=build_pants_decomposition(spec, gluing),
                    recipe=PresetRecipe(
                        tuple(recipe["C"]),
                        tuple(recipe["D"]),
                        recipe["order"],
                        recipe["certified"],
                    ),
                    scan_cap=value["scan_cap"],
                )

    @property
    def names(self) -> List[str]:
        return list(self._presets.keys())

    def get(self, name: str) -> PresetInfo:
        if name not in self._presets:
            raise UnknownPresetError(
                "Unknown preset %r, available: %s" % (name, ", ".join(self.names))
            )
        return self._presets[name]


def preset(name: str) -> Tuple[SurfaceSpec, PantsDecomposition]:
    """Return the surface type and canonical decomposition of a catalog entry."""
    info = PresetHelper().get(name)
    return info.spec, info.decomposition
