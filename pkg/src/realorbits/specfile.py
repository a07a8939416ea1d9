"""JSON spec files describing user-defined twisted actions.

Schema::

    {"moduli": [m1, ..., mr],
     "states": {"generators": [[...], ...]} | {"predicate": "even_weight"} | {"all": true},
     "generators": [{"label": str, "perm": [1-based images], "units": [...], "twist": [...]}],
     "description": str}

Unknown fields are rejected.  ``perm[i]`` is the position coordinate ``i``
moves to.
"""

from __future__ import annotations

import json
from pathlib import Path

from .abelian import SubgroupSpec, TorsionGroup, even_weight
from .action import TwistedAction, TwistedGenerator, validate
from .errors import ParseError, ValidationFailed

TOP_FIELDS = {"moduli", "states", "generators", "description"}
GEN_FIELDS = {"label", "perm", "units", "twist"}
PREDICATES = ("even_weight",)


def _int_vector(value, field, length=None):
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError("expected a list of integers", field=field)
    if length is not None and len(value) != length:
        raise ParseError(f"expected {length} entries, got {len(value)}", field=field)
    return value


def _line_of(text: str, needle: str) -> int | None:
    for lineno, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return lineno
    return None


def parse_spec(text: str, *, check: bool = True) -> TwistedAction:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    try:
        return _from_dict(data, check=check)
    except ParseError as exc:
        if exc.line is None and exc.field is not None:
            key = exc.field.split(".")[-1].split("[")[0]
            raise ParseError(str(exc).split("] ", 1)[-1], field=exc.field, line=_line_of(text, f'"{key}"')) from None
        raise


def _from_dict(data, *, check: bool) -> TwistedAction:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    unknown = set(data) - TOP_FIELDS
    if unknown:
        raise ParseError(f"unknown field {sorted(unknown)[0]!r}", field=sorted(unknown)[0])
    for key in ("moduli", "states", "generators"):
        if key not in data:
            raise ParseError("missing required field", field=key)

    moduli = _int_vector(data["moduli"], "moduli")
    try:
        G = TorsionGroup(moduli)
    except ValueError as exc:
        raise ParseError(str(exc), field="moduli") from None
    r = G.rank

    states = data["states"]
    if not isinstance(states, dict) or len(states) != 1:
        raise ParseError("states must hold exactly one of generators/predicate/all", field="states")
    (kind, value), = states.items()
    if kind == "generators":
        if not isinstance(value, list):
            raise ParseError("expected a list of vectors", field="states.generators")
        gens = [_int_vector(v, f"states.generators[{k}]", r) for k, v in enumerate(value)]
        S = SubgroupSpec(G, gens)
    elif kind == "predicate":
        if value not in PREDICATES:
            raise ParseError(f"unknown predicate {value!r}", field="states.predicate")
        try:
            S = even_weight(G)
        except ValueError as exc:
            raise ParseError(str(exc), field="states.predicate") from None
    elif kind == "all":
        if value is not True:
            raise ParseError("'all' must be true", field="states.all")
        S = G.full()
    else:
        raise ParseError(f"unknown states kind {kind!r}", field="states")

    if not isinstance(data["generators"], list):
        raise ParseError("expected a list", field="generators")
    gens = []
    for k, g in enumerate(data["generators"]):
        where = f"generators[{k}]"
        if not isinstance(g, dict):
            raise ParseError("expected an object", field=where)
        unknown = set(g) - GEN_FIELDS
        if unknown:
            raise ParseError(f"unknown field {sorted(unknown)[0]!r}", field=f"{where}.{sorted(unknown)[0]}")
        missing = GEN_FIELDS - set(g)
        if missing:
            raise ParseError("missing required field", field=f"{where}.{sorted(missing)[0]}")
        if not isinstance(g["label"], str):
            raise ParseError("label must be a string", field=f"{where}.label")
        perm = _int_vector(g["perm"], f"{where}.perm", r)
        if sorted(perm) != list(range(1, r + 1)):
            raise ParseError(f"perm must be a permutation of 1..{r}", field=f"{where}.perm")
        units = _int_vector(g["units"], f"{where}.units", r)
        twist = _int_vector(g["twist"], f"{where}.twist", r)
        gens.append(TwistedGenerator(g["label"], tuple(x - 1 for x in perm), tuple(units), G.element(twist)))

    description = data.get("description", "")
    if not isinstance(description, str):
        raise ParseError("description must be a string", field="description")
    action = TwistedAction(G, S, gens, description)
    if check:
        report = validate(action)
        if not report.ok:
            raise ValidationFailed(report)
    return action


def load_spec(path: str | Path, *, check: bool = True) -> TwistedAction:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_spec(text, check=check)


def to_spec_dict(action: TwistedAction) -> dict:
    return {
        "moduli": list(action.ambient.moduli),
        "states": {"generators": [list(g.coords) for g in action.states.generators]},
        "generators": [g.to_json() for g in action.generators],
        "description": action.description,
    }


def dump_spec(action: TwistedAction, path: str | Path | None = None) -> str:
    text = json.dumps(to_spec_dict(action), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
