"""Instance files: parsing, axiom validation, canonical serialization, fixtures.

An instance bundles a scalar field, a group, a partial dynamical system on a
point set, and an optional twist.  The serialized form is canonical: sparse
blocks omit the identity and empty entries, twist entries equal to one are
dropped, and all keys are emitted in sorted order, so serializing a parsed
instance is deterministic and parsing it back is the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .dynamics import PartialSystem, validate_system
from .errors import ParseError, ValidationError, WorkbenchError
from .fields import field_from_json
from .groups import FiniteGroup, make_group
from .twisted import TwistedAction, lift_dynamics, validate_twisted

_ALLOWED_KEYS = {
    "name",
    "field",
    "group",
    "space",
    "domains",
    "maps",
    "supports",
    "sigmas",
    "cocycle",
}


def canonical_dumps(obj) -> str:
    """The one JSON writer used for anything a test may byte-compare."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


@dataclass
class Instance:
    """A parsed instance; construction implies structural well-formedness only."""

    name: str
    field: object
    group: FiniteGroup
    system: PartialSystem
    cocycle: dict
    field_json: dict
    group_json: dict

    def action(self) -> TwistedAction:
        """The twisted action over the instance's function ring."""
        return lift_dynamics(self.system, self.field, cocycle=self.cocycle)

    def validate(self) -> tuple:
        """(system report, twisted report or None when the system is invalid)."""
        system_report = validate_system(self.system)
        if not system_report.ok:
            return system_report, None
        return system_report, validate_twisted(self.action())

    def to_json(self) -> dict:
        e = self.group.identity
        domains = {}
        maps = {}
        for g in self.group.elements():
            if g == e:
                continue
            dom = self.system.domains[g]
            if dom:
                domains[str(g)] = sorted(dom)
                maps[str(g)] = {str(x): y for x, y in sorted(self.system.maps[g].items())}
        out = {
            "name": self.name,
            "field": self.field_json,
            "group": self.group_json,
            "space": self.system.size,
            "domains": domains,
            "maps": maps,
        }
        cocycle = {}
        for (g, h), values in sorted(self.cocycle.items()):
            entry = {
                str(x): self.field.dump_scalar(v)
                for x, v in sorted(values.items())
                if v != self.field.one
            }
            if entry:
                cocycle[f"{g},{h}"] = entry
        if cocycle:
            out["cocycle"] = cocycle
        return out


def _parse_int_key(key: str, what: str) -> int:
    try:
        return int(key)
    except ValueError as exc:
        raise ParseError(f"{what} key {key!r} is not an integer", field=what) from exc


def _parse_sparse_family(obj, what: str, order: int) -> dict[int, object]:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise ParseError(f"'{what}' must be an object", field=what)
    out = {}
    for key, value in obj.items():
        g = _parse_int_key(key, what)
        if not 0 <= g < order:
            raise ParseError(f"{what} key {g} outside the group", field=what)
        out[g] = value
    return out


def parse_instance_dict(obj, source: str = "<dict>", validate: bool = True) -> Instance:
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: instance must be a JSON object")
    unknown = set(obj) - _ALLOWED_KEYS
    if unknown:
        raise ParseError(f"{source}: unknown keys {sorted(unknown)}", field=sorted(unknown)[0])
    for required in ("field", "group", "space"):
        if required not in obj:
            raise ParseError(f"{source}: missing required key", field=required)
    scalar_field = field_from_json(obj["field"])
    group = make_group(obj["group"])
    space = obj["space"]
    if not isinstance(space, int) or isinstance(space, bool) or space < 1:
        raise ParseError(f"{source}: 'space' must be a positive integer", field="space")

    has_dynamics = "domains" in obj or "maps" in obj
    has_twisted = "supports" in obj or "sigmas" in obj
    if has_dynamics and has_twisted:
        raise ParseError(
            f"{source}: give either domains/maps or supports/sigmas, not both", field="domains"
        )
    dom_key, map_key = ("supports", "sigmas") if has_twisted else ("domains", "maps")

    raw_domains = _parse_sparse_family(obj.get(dom_key), dom_key, group.order)
    domains = {}
    for g, points in raw_domains.items():
        if not isinstance(points, list):
            raise ParseError(f"{source}: {dom_key}[{g}] must be a list", field=dom_key)
        domains[g] = points
    raw_maps = _parse_sparse_family(obj.get(map_key), map_key, group.order)
    maps = {}
    for g, mapping in raw_maps.items():
        if not isinstance(mapping, dict):
            raise ParseError(f"{source}: {map_key}[{g}] must be an object", field=map_key)
        maps[g] = {_parse_int_key(x, map_key): y for x, y in mapping.items()}

    cocycle = {}
    raw_cocycle = obj.get("cocycle")
    if raw_cocycle is not None:
        if not isinstance(raw_cocycle, dict):
            raise ParseError(f"{source}: 'cocycle' must be an object", field="cocycle")
        for pair_key, values in raw_cocycle.items():
            parts = pair_key.split(",")
            if len(parts) != 2:
                raise ParseError(
                    f"{source}: cocycle key {pair_key!r} must look like 'g,h'", field="cocycle"
                )
            g = _parse_int_key(parts[0], "cocycle")
            h = _parse_int_key(parts[1], "cocycle")
            if not (0 <= g < group.order and 0 <= h < group.order):
                raise ParseError(f"{source}: cocycle pair {pair_key!r} outside the group", field="cocycle")
            if not isinstance(values, dict):
                raise ParseError(f"{source}: cocycle[{pair_key!r}] must be an object", field="cocycle")
            entry = {}
            for x_key, scalar in values.items():
                x = _parse_int_key(x_key, "cocycle")
                entry[x] = scalar_field.parse_scalar(scalar)
            cocycle[(g, h)] = entry

    name = obj.get("name", source)
    if not isinstance(name, str):
        raise ParseError(f"{source}: 'name' must be a string", field="name")

    try:
        system = PartialSystem.build(group, space, domains, maps)
    except WorkbenchError as exc:
        raise ValidationError(f"{source}: {exc}") from exc

    instance = Instance(
        name=name,
        field=scalar_field,
        group=group,
        system=system,
        cocycle=cocycle,
        field_json=dict(obj["field"]),
        group_json=obj["group"],
    )
    if validate:
        system_report, twisted_report = instance.validate()
        if not system_report.ok:
            raise ValidationError(
                f"{source}: the partial system violates its axioms",
                failures=[f.to_json() for f in system_report.failures],
            )
        if twisted_report is not None and not twisted_report.ok:
            raise ValidationError(
                f"{source}: the twisted action violates its axioms",
                failures=[f.to_json() for f in twisted_report.failures],
            )
    return instance


def parse_instance(path, validate: bool = True) -> Instance:
    """Parse an instance file; structural errors carry the offending field."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_instance_dict(obj, source=str(path), validate=validate)


def serialize_instance(instance: Instance) -> str:
    return canonical_dumps(instance.to_json())


FIXTURE_NAMES = ("ex-a", "ex-b", "ex-c", "ex-d", "ex-e", "dyn-h", "dyn-f")


def fixture_names() -> tuple[str, ...]:
    return FIXTURE_NAMES


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise ParseError(f"unknown fixture {name!r}")
    return resources.files("pcross").joinpath("fixtures", f"{name}.json").read_text("utf-8")


def load_fixture(name: str, validate: bool = True) -> Instance:
    obj = json.loads(fixture_text(name))
    return parse_instance_dict(obj, source=name, validate=validate)
