"""Instance generators: exhaustive small-system enumeration and seeded random streams.

Random instances are built to be valid by construction: a global action is
assembled from coset translation on a random disjoint union of subgroup
quotients, an optional twist is a unit-valued coboundary (times a carry-class
representative on cyclic groups), and the result is cut down to a random
nonempty subset.  Everything is still re-validated before emission.
"""

from __future__ import annotations

import itertools
import random

from .dynamics import PartialSystem, validate_system
from .errors import CapacityError
from .fields import PrimeField, field_from_json
from .groups import FiniteGroup, group_spec_from_name, make_group
from .instances import Instance, parse_instance_dict
from .splitring import SplitRing
from .twisted import GlobalTwistedAction, restrict_global, validate_twisted

EXHAUSTIVE_SIZE_CAP = 3


def _involutions(points: tuple[int, ...]):
    """All self-inverse bijections of a point tuple."""
    if not points:
        yield {}
        return
    first, rest = points[0], points[1:]
    for sub in _involutions(rest):
        yield {first: first, **sub}
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for sub in _involutions(remaining):
            yield {first: partner, partner: first, **sub}


def _inverse_pairs(group: FiniteGroup) -> tuple[list[tuple[int, int]], list[int]]:
    """Non-identity elements split into inverse pairs and self-inverse ones."""
    pairs = []
    selfinv = []
    seen = set()
    for g in group.elements():
        if g == group.identity or g in seen:
            continue
        gi = group.inv(g)
        if gi == g:
            selfinv.append(g)
        else:
            pairs.append((g, gi))
            seen.add(gi)
    return pairs, selfinv


def enumerate_systems(group: FiniteGroup, size: int) -> list[PartialSystem]:
    """All valid partial systems on the given space, in a deterministic order.

    Candidates fix the forced relation between a map and its inverse
    element's map up front; the full axiom validation then filters.
    """
    if size > EXHAUSTIVE_SIZE_CAP:
        raise CapacityError("exhaustive system enumeration", size, EXHAUSTIVE_SIZE_CAP)
    points = list(range(size))
    pairs, selfinv = _inverse_pairs(group)

    pair_choices = []
    for (g, gi) in pairs:
        options = []
        for k in range(size + 1):
            for source in itertools.combinations(points, k):
                for target in itertools.combinations(points, k):
                    for image in itertools.permutations(target):
                        forward = dict(zip(source, image))
                        options.append((g, gi, forward))
        pair_choices.append(options)
    self_choices = []
    for g in selfinv:
        options = []
        for k in range(size + 1):
            for subset in itertools.combinations(points, k):
                for invol in _involutions(subset):
                    options.append((g, invol))
        self_choices.append(options)

    systems = []
    for pair_pick in itertools.product(*pair_choices):
        for self_pick in itertools.product(*self_choices):
            domains = {}
            maps = {}
            for (g, gi, forward) in pair_pick:
                domains[g] = frozenset(forward.values())
                domains[gi] = frozenset(forward.keys())
                maps[g] = dict(forward)
                maps[gi] = {y: x for x, y in forward.items()}
            for (g, invol) in self_pick:
                domains[g] = frozenset(invol.keys())
                maps[g] = dict(invol)
            system = PartialSystem.build(group, size, domains, maps)
            if validate_system(system).ok:
                systems.append(system)
    return systems


def _relabel_key(system: PartialSystem) -> tuple:
    """Canonical form of a system under simultaneous point relabeling."""
    best = None
    for perm in itertools.permutations(range(system.size)):
        doms = tuple(
            tuple(sorted(perm[x] for x in system.domains[g])) for g in system.group.elements()
        )
        mps = tuple(
            tuple(sorted((perm[x], perm[y]) for x, y in system.maps[g].items()))
            for g in system.group.elements()
        )
        key = (doms, mps)
        if best is None or key < best:
            best = key
    return best


def _system_instance(system: PartialSystem, field_json: dict, group_json: dict, name: str) -> Instance:
    obj = {
        "name": name,
        "field": field_json,
        "group": group_json,
        "space": system.size,
        "domains": {},
        "maps": {},
    }
    e = system.group.identity
    for g in system.group.elements():
        if g == e or not system.domains[g]:
            continue
        obj["domains"][str(g)] = sorted(system.domains[g])
        obj["maps"][str(g)] = {str(x): y for x, y in sorted(system.maps[g].items())}
    return parse_instance_dict(obj, source=name)


def exhaustive_instances(
    field_json: dict,
    group_names: list[str],
    max_size: int,
    dedupe_relabel: bool = False,
) -> list[Instance]:
    """Every valid trivial-twist instance for the listed groups and sizes."""
    out = []
    for group_name in group_names:
        group_json = group_spec_from_name(group_name)
        group = make_group(group_json)
        for size in range(1, max_size + 1):
            seen = set()
            for i, system in enumerate(enumerate_systems(group, size)):
                if dedupe_relabel:
                    key = _relabel_key(system)
                    if key in seen:
                        continue
                    seen.add(key)
                name = f"x{size}-{group_name}-{i:04d}"
                out.append(_system_instance(system, field_json, group_json, name))
    return out


def subgroups(group: FiniteGroup) -> list[frozenset[int]]:
    """All subgroups, found by closing subsets (desk-scale orders only)."""
    found = {frozenset([group.identity])}
    frontier = [frozenset([group.identity])]
    while frontier:
        base = frontier.pop()
        for g in group.elements():
            if g in base:
                continue
            closure = set(base) | {g}
            changed = True
            while changed:
                changed = False
                for a in list(closure):
                    for b in list(closure):
                        c = group.mul(a, b)
                        if c not in closure:
                            closure.add(c)
                            changed = True
            key = frozenset(closure)
            if key not in found:
                found.add(key)
                frontier.append(key)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _coset_translation(group: FiniteGroup, subgroup: frozenset[int]) -> list[tuple[int, ...]]:
    """Left translation on left cosets, one permutation row per group element."""
    cosets = []
    seen = set()
    for g in group.elements():
        coset = frozenset(group.mul(g, h) for h in subgroup)
        if coset not in seen:
            seen.add(coset)
            cosets.append(coset)
    index = {coset: i for i, coset in enumerate(cosets)}
    rows = []
    for a in group.elements():
        row = []
        for coset in cosets:
            image = frozenset(group.mul(a, x) for x in coset)
            row.append(index[image])
        rows.append(tuple(row))
    return rows


def random_global_action(
    rng: random.Random,
    group: FiniteGroup,
    size: int,
    scalar_field,
    twist_mode: str = "none",
    cyclic_carry: bool = False,
) -> GlobalTwistedAction:
    """A valid global twisted action on the requested number of points."""
    subs = subgroups(group)
    blocks: list[list[tuple[int, ...]]] = []
    remaining = size
    while remaining:
        options = [s for s in subs if group.order // len(s) <= remaining]
        chosen = rng.choice(options)
        blocks.append(_coset_translation(group, chosen))
        remaining -= group.order // len(chosen)

    betas = []
    offsets = []
    offset = 0
    for block in blocks:
        offsets.append(offset)
        offset += len(block[0])
    for g in group.elements():
        row = []
        for block, off in zip(blocks, offsets):
            row.extend(off + target for target in block[g])
        betas.append(tuple(row))

    u = {}
    f = scalar_field
    if twist_mode != "none":
        # Unit-valued coboundary: phi_g arbitrary nowhere-zero, phi_e = 1.
        nonzero = [a for a in f.elements() if a] if isinstance(f, PrimeField) else [f.one, -f.one]
        phi = {group.identity: (f.one,) * size}
        for g in group.elements():
            if g != group.identity:
                phi[g] = tuple(rng.choice(nonzero) for _ in range(size))
        inv_rows = [tuple(row.index(x) for x in range(size)) for row in betas]
        for g in group.elements():
            for h in group.elements():
                gh = group.mul(g, h)
                values = tuple(
                    f.mul(
                        f.mul(phi[g][x], phi[h][inv_rows[g][x]]),
                        f.inv(phi[gh][x]),
                    )
                    for x in range(size)
                )
                u[(g, h)] = values
        if twist_mode == "mixed" and cyclic_carry and group.order > 1:
            # Carry-class representative on a cyclic group: a constant unit on
            # the pairs whose exponents wrap around.  No-op when -1 = 1.
            c = f.neg(f.one)
            n = group.order
            for i in range(n):
                for j in range(n):
                    if i + j >= n:
                        values = u.get((i, j), (f.one,) * size)
                        u[(i, j)] = tuple(f.mul(v, c) for v in values)
    ring = SplitRing(scalar_field, size)
    return GlobalTwistedAction.build(group, ring, betas, u)


def random_instance(
    rng: random.Random,
    field_json: dict,
    group_names: list[str],
    max_size: int,
    twist_modes: tuple[str, ...] = ("none",),
    name: str = "random",
) -> Instance:
    """One valid instance: restrict a random global action to a random subset."""
    group_name = rng.choice(group_names)
    group_json = group_spec_from_name(group_name)
    group = make_group(group_json)
    scalar_field = field_from_json(field_json)
    ambient = rng.randint(1, max(1, max_size))
    mode = rng.choice(list(twist_modes))
    global_action = random_global_action(
        rng,
        group,
        ambient,
        scalar_field,
        twist_mode=mode,
        cyclic_carry=group_json.get("kind") == "cyclic",
    )
    k = rng.randint(1, ambient)
    support = rng.sample(range(ambient), k)
    action = restrict_global(global_action, support)
    report = validate_twisted(action)
    if not report.ok:
        raise AssertionError("restriction of a generated global action must validate")

    obj = {
        "name": name,
        "field": field_json,
        "group": group_json,
        "space": action.ring.size,
        "domains": {},
        "maps": {},
    }
    e = group.identity
    for g in group.elements():
        if g == e or not action.supports[g]:
            continue
        obj["domains"][str(g)] = sorted(action.supports[g])
        obj["maps"][str(g)] = {str(x): y for x, y in sorted(action.sigmas[g].items())}
    cocycle = {}
    for (g, h), values in sorted(action.cocycle.items()):
        entry = {str(x): scalar_field.dump_scalar(v) for x, v in sorted(values.items())}
        if entry:
            cocycle[f"{g},{h}"] = entry
    if cocycle:
        obj["cocycle"] = cocycle
    return parse_instance_dict(obj, source=name)


def random_stream(
    seed: int,
    count: int,
    field_json: dict,
    group_names: list[str],
    max_size: int = 3,
    twist_modes: tuple[str, ...] = ("none",),
) -> list[Instance]:
    """A deterministic stream of valid random instances."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        out.append(
            random_instance(
                rng,
                field_json,
                group_names,
                max_size,
                twist_modes=twist_modes,
                name=f"r{seed}-{i:05d}",
            )
        )
    return out
