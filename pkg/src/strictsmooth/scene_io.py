"""Scene-file loading: YAML documents validated against the committed schema.

A scene file names the coefficient field, the ordered variables, the
hypersurface expression and the centers.  JSON is a YAML subset, so both
serializations are accepted by the same loader.
"""

from __future__ import annotations

import json
from importlib import resources

import jsonschema
import yaml

from .errors import ParseError, SceneError
from .geometry import Center, Scene
from .parsing import parse_expression
from .scalars import QQ, PrimeField

SCENE_SCHEMA_ID = "strictsmooth-scene/1"


def _load_schema(name: str) -> dict:
    text = resources.files("strictsmooth").joinpath(f"schemas/{name}").read_text()
    return json.loads(text)


_SCENE_SCHEMA = _load_schema("scene.schema.json")
_REPORT_SCHEMA = _load_schema("report.schema.json")


def report_schema() -> dict:
    return _REPORT_SCHEMA


def scene_schema() -> dict:
    return _SCENE_SCHEMA


def scene_from_document(doc) -> Scene:
    """Build and fully validate a Scene from a parsed scene document."""
    try:
        jsonschema.validate(doc, _SCENE_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SceneError(f"scene file invalid at {path}: {exc.message}") from None

    field_doc = doc.get("field", {"kind": "rational"})
    if field_doc["kind"] == "rational":
        field = QQ
    else:
        try:
            field = PrimeField(field_doc["p"])
        except ValueError as exc:
            raise SceneError(str(exc)) from None

    names = tuple(doc["variables"])
    index = {name: i for i, name in enumerate(names)}
    try:
        f = parse_expression(doc["hypersurface"], names, field)
    except ParseError as exc:
        raise SceneError(f"hypersurface expression: {exc}") from None

    centers = []
    for entry in doc["centers"]:
        missing = [v for v in entry["vanishing"] if v not in index]
        if missing:
            raise SceneError(
                f"center {entry['name']!r} names unknown variables: {', '.join(missing)}"
            )
        centers.append(
            Center(entry["name"], tuple(index[v] for v in entry["vanishing"]))
        )

    scene = Scene(len(names), names, f, tuple(centers))
    scene.validate()
    return scene


def load_scene(path) -> Scene:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = yaml.safe_load(handle)
    except FileNotFoundError:
        raise SceneError(f"scene file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise SceneError(f"scene file is not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise SceneError("scene file must be a mapping")
    return scene_from_document(doc)


def echo_input(scene: Scene) -> dict:
    """Canonical echo of the input for reports (expression re-rendered)."""
    fld = scene.field
    if fld.characteristic:
        field_doc = {"kind": "prime", "p": fld.characteristic}
    else:
        field_doc = {"kind": "rational"}
    return {
        "field": field_doc,
        "variables": list(scene.names),
        "hypersurface": scene.f.render(scene.names),
        "centers": [
            {"name": c.name, "vanishing": [scene.names[i] for i in c.vanishing]}
            for c in scene.centers
        ],
    }
