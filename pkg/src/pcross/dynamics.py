"""Finite discrete partial dynamical systems and their analysis passes.

The topology is discrete throughout: every subset is open and closed, closure
is the identity, so "dense" means "equal to the whole space" and "empty
interior" means "empty".  That is the only Hausdorff topology a finite space
carries, and every pass below states its result in those terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CapacityError,
    DomainMismatch,
    DualRouteMismatch,
    InvalidSystem,
    MalformedMap,
    PointOutOfRange,
)
from .groups import FiniteGroup

SUBSET_ENUM_CAP = 16


@dataclass
class PartialSystem:
    """Per group element: a domain subset of X and a partial bijection onto it.

    ``maps[g]`` sends the domain of the inverse element onto ``domains[g]``;
    the identity acts as the full identity map.  Instances are treated as
    immutable after construction.
    """

    group: FiniteGroup
    size: int
    domains: tuple[frozenset[int], ...]
    maps: tuple[dict[int, int], ...]

    @classmethod
    def build(cls, group: FiniteGroup, size: int, domains=None, maps=None) -> "PartialSystem":
        """Normalize sparse per-element data; an omitted g != e gets an empty domain."""
        domains = domains or {}
        maps = maps or {}
        e = group.identity
        doms = []
        mps = []
        for g in group.elements():
            if g == e and g not in domains and g not in maps:
                doms.append(frozenset(range(size)))
                mps.append({x: x for x in range(size)})
            else:
                doms.append(frozenset(domains.get(g, ())))
                mps.append(dict(maps.get(g, {})))
        system = cls(group, size, tuple(doms), tuple(mps))
        _check_structure(system)
        return system

    def domain(self, g: int) -> frozenset[int]:
        return self.domains[g]

    def full_space(self) -> frozenset[int]:
        return frozenset(range(self.size))


def _check_structure(system: PartialSystem) -> None:
    """Shape checks that must hold before axiom validation makes sense."""
    if system.size < 1:
        raise PointOutOfRange("the space needs at least one point")
    n = system.size
    G = system.group
    if len(system.domains) != G.order or len(system.maps) != G.order:
        raise DomainMismatch("need one domain and one map per group element")
    for g in G.elements():
        for x in system.domains[g]:
            if not (isinstance(x, int) and 0 <= x < n):
                raise PointOutOfRange(f"domain of g={g} contains {x!r}, space has {n} points")
        m = system.maps[g]
        expected_keys = system.domains[G.inv(g)]
        if frozenset(m.keys()) != expected_keys:
            raise DomainMismatch(
                f"map of g={g} must be defined exactly on the domain of its inverse; "
                f"got keys {sorted(m.keys())}, expected {sorted(expected_keys)}"
            )
        values = list(m.values())
        for y in values:
            if not (isinstance(y, int) and 0 <= y < n):
                raise PointOutOfRange(f"map of g={g} hits {y!r}, space has {n} points")
        if len(set(values)) != len(values):
            raise MalformedMap(f"map of g={g} is not injective")


@dataclass
class AxiomFailure:
    axiom: str
    g: int
    s: int | None = None
    x: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "g": self.g, "s": self.s, "x": self.x, "detail": self.detail}


@dataclass
class SystemReport:
    ok: bool
    failures: list[AxiomFailure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [f.to_json() for f in self.failures],
            "notes": list(self.notes),
        }


def validate_system(system: PartialSystem) -> SystemReport:
    """Check the partial-action axioms exhaustively; list every failing witness.

    Axiom tags: "i" (identity acts fully and trivially), "ii" (domain
    compatibility of each map), "iii" (composition rule).  Openness of the
    action graph is automatic in the discrete topology and recorded as a note.
    """
    _check_structure(system)
    G = system.group
    e = G.identity
    failures: list[AxiomFailure] = []

    full = system.full_space()
    if system.domains[e] != full:
        for x in sorted(full - system.domains[e]):
            failures.append(AxiomFailure("i", e, None, x, "identity domain must be the whole space"))
    for x, y in sorted(system.maps[e].items()):
        if x != y:
            failures.append(AxiomFailure("i", e, None, x, f"identity map moves {x} to {y}"))

    for t in G.elements():
        mt = system.maps[t]
        for s in G.elements():
            lhs = {mt[x] for x in system.domains[G.inv(t)] & system.domains[s]}
            rhs = system.domains[t] & system.domains[G.mul(t, s)]
            for x in sorted(lhs.symmetric_difference(rhs)):
                side = "extra" if x in lhs else "missing"
                failures.append(
                    AxiomFailure("ii", t, s, x, f"image of the overlap is wrong ({side} point)")
                )

    for t in G.elements():
        for s in G.elements():
            ts = G.mul(t, s)
            base = system.domains[s] & system.domains[G.inv(t)]
            s_inv_map = system.maps[G.inv(s)]
            for y in sorted(base):
                x = s_inv_map[y]
                u = system.maps[s].get(x)
                if u is None:
                    failures.append(AxiomFailure("iii", t, s, x, "inner map undefined"))
                    continue
                v = system.maps[t].get(u)
                if v is None:
                    failures.append(AxiomFailure("iii", t, s, x, "outer map undefined on inner image"))
                    continue
                w = system.maps[ts].get(x)
                if w is None:
                    failures.append(AxiomFailure("iii", t, s, x, "composite element map undefined"))
                    continue
                if v != w:
                    failures.append(
                        AxiomFailure("iii", t, s, x, f"composition gives {v}, composite map gives {w}")
                    )

    notes = ["axiom iv (openness and continuity) holds vacuously: finite discrete topology"]
    return SystemReport(ok=not failures, failures=failures, notes=notes)


def partial_orbit(system: PartialSystem, x: int) -> frozenset[int]:
    """All single-step images of x under the maps whose domain contains it."""
    if not (0 <= x < system.size):
        raise PointOutOfRange(f"point {x} outside space of size {system.size}")
    out = set()
    for g in system.group.elements():
        m = system.maps[g]
        if x in m:
            out.add(m[x])
    return frozenset(out)


def is_transitive(system: PartialSystem) -> bool:
    """Some point has a dense (= full) orbit."""
    full = system.full_space()
    return any(partial_orbit(system, x) == full for x in range(system.size))


def transitivity_criterion(system: PartialSystem) -> bool:
    """Open-set meeting condition, checked on singletons.

    Singletons suffice: every nonempty open set of a discrete space contains
    one, and the condition is monotone in U and V.
    """
    for u in range(system.size):
        for v in range(system.size):
            if not any(system.maps[g].get(u) == v for g in system.group.elements()):
                return False
    return True


def fixed_set(system: PartialSystem, g: int) -> frozenset[int]:
    """Points of the domain of g's inverse that g maps to themselves."""
    return frozenset(x for x, y in system.maps[g].items() if x == y)


def is_topologically_free(system: PartialSystem) -> bool:
    """Every non-identity fixed set has empty interior; discretely, is empty."""
    e = system.group.identity
    return all(not fixed_set(system, g) for g in system.group.elements() if g != e)


def periodic_points(system: PartialSystem) -> frozenset[int]:
    e = system.group.identity
    out: set[int] = set()
    for g in system.group.elements():
        if g != e:
            out |= fixed_set(system, g)
    return frozenset(out)


def is_invariant_subset(system: PartialSystem, subset) -> bool:
    """Each map carries the subset's part of its domain exactly onto the subset's part of its range."""
    Y = frozenset(subset)
    for g in system.group.elements():
        m = system.maps[g]
        image = {m[x] for x in Y if x in m}
        if image != Y & system.domains[g]:
            return False
    return True


def invariant_subsets(system: PartialSystem, cap: int = SUBSET_ENUM_CAP) -> list[frozenset[int]]:
    """All invariant subsets, by exhaustive enumeration (2^n subsets)."""
    n = system.size
    if n > cap:
        raise CapacityError("invariant-subset enumeration (2^n subsets)", n, cap)
    out = []
    for mask in range(1 << n):
        Y = frozenset(x for x in range(n) if mask >> x & 1)
        if is_invariant_subset(system, Y):
            out.append(Y)
    return out


def _invariant_closure(system: PartialSystem, x: int) -> frozenset[int]:
    """Smallest invariant subset containing x (forward and backward saturation)."""
    inverse_maps = [{v: k for k, v in m.items()} for m in system.maps]
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for g in system.group.elements():
            img = system.maps[g].get(y)
            if img is not None and img not in seen:
                seen.add(img)
                stack.append(img)
            pre = inverse_maps[g].get(y)
            if pre is not None and pre not in seen:
                seen.add(pre)
                stack.append(pre)
    return frozenset(seen)


def is_minimal(system: PartialSystem) -> bool:
    """Every orbit is dense (= the whole space).

    Cross-checked against the invariant-subset characterization: minimality
    must coincide with "no proper nonempty invariant subset".  The two are
    computed independently and a mismatch is a fatal transcription bug.
    """
    full = system.full_space()
    by_orbits = all(partial_orbit(system, x) == full for x in range(system.size))
    by_closures = all(_invariant_closure(system, x) == full for x in range(system.size))
    if by_orbits != by_closures:
        raise DualRouteMismatch(
            f"minimality routes disagree: orbits say {by_orbits}, invariant closures say {by_closures}"
        )
    return by_orbits


@dataclass
class EnvelopingSystem:
    """Global action on the quotient of (group x space) that restricts to the partial one."""

    group: FiniteGroup
    space_size: int
    size: int
    beta: tuple[tuple[int, ...], ...]
    embed: tuple[int, ...]
    classes: tuple[int, ...]  # index (t * space_size + x) -> class id
    reps: tuple[tuple[int, int], ...]  # class id -> lexicographically least (t, x)

    def class_of(self, t: int, x: int) -> int:
        return self.classes[t * self.space_size + x]

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "beta": [list(row) for row in self.beta],
            "embed": list(self.embed),
            "reps": [list(r) for r in self.reps],
        }


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _pair_related(system: PartialSystem, t: int, x: int, s: int, y: int) -> bool:
    G = system.group
    g1 = G.mul(G.inv(t), s)
    if x not in system.domains[g1]:
        return False
    return system.maps[G.mul(G.inv(s), t)].get(x) == y


def globalize(system: PartialSystem) -> EnvelopingSystem:
    """Quotient (group x space) by the matching relation and act by left translation.

    The generating relation identifies (t, x) with (s, y) exactly when x lies
    in the domain indexed by t^-1 s and the matching map sends x to y.  For a
    valid system this is already an equivalence relation; the union-find
    closure is checked against the pairwise rule and any discrepancy reports
    the system as invalid.
    """
    report = validate_system(system)
    if not report.ok:
        raise InvalidSystem("cannot globalize an invalid system", report)
    G = system.group
    n = system.size
    total = G.order * n
    uf = _UnionFind(total)
    for t in G.elements():
        for s in G.elements():
            g1 = G.mul(G.inv(t), s)
            m = system.maps[G.mul(G.inv(s), t)]
            for x in system.domains[g1]:
                uf.union(t * n + x, s * n + m[x])

    members: dict[int, list[tuple[int, int]]] = {}
    for t in G.elements():
        for x in range(n):
            members.setdefault(uf.find(t * n + x), []).append((t, x))
    for group_members in members.values():
        for (t, x) in group_members:
            for (s, y) in group_members:
                if not _pair_related(system, t, x, s, y):
                    raise InvalidSystem(
                        f"union-find closure identified ({t},{x}) with ({s},{y}) "
                        "but the pairwise rule rejects it",
                        report,
                    )

    ordered = sorted(members.values(), key=lambda ms: min(ms))
    reps = tuple(min(ms) for ms in ordered)
    class_ids = [0] * total
    for cid, ms in enumerate(ordered):
        for (t, x) in ms:
            class_ids[t * n + x] = cid
    size = len(ordered)

    beta_rows = []
    for g in G.elements():
        row = [0] * size
        for cid, ms in enumerate(ordered):
            images = {class_ids[G.mul(g, t) * n + x] for (t, x) in ms}
            if len(images) != 1:
                raise InvalidSystem(f"translation by g={g} is not constant on a class", report)
            row[cid] = images.pop()
        beta_rows.append(tuple(row))
    beta = tuple(beta_rows)

    e = G.identity
    embed = tuple(class_ids[e * n + x] for x in range(n))

    # Postconditions of the construction.
    if len(set(embed)) != n:
        raise InvalidSystem("embedding of the space is not injective", report)
    if beta[e] != tuple(range(size)):
        raise InvalidSystem("identity does not act trivially on the quotient", report)
    for g in G.elements():
        if sorted(beta[g]) != list(range(size)):
            raise InvalidSystem(f"translation by g={g} is not a bijection of the quotient", report)
        for h in G.elements():
            gh = G.mul(g, h)
            if any(beta[g][beta[h][c]] != beta[gh][c] for c in range(size)):
                raise InvalidSystem("quotient action is not a homomorphism", report)
    for g in G.elements():
        m = system.maps[g]
        for x in system.domains[G.inv(g)]:
            if embed[m[x]] != beta[g][embed[x]]:
                raise InvalidSystem("quotient action does not extend the partial maps", report)
    if size > total:
        raise InvalidSystem("quotient has more classes than generating pairs", report)

    return EnvelopingSystem(G, n, size, beta, embed, tuple(class_ids), reps)


@dataclass
class TransferReport:
    partial_transitive: bool
    envelope_transitive: bool
    envelope_size: int
    partial_witness: int | None
    envelope_orbit_count: int

    def to_json(self) -> dict:
        return {
            "partial_transitive": self.partial_transitive,
            "envelope_transitive": self.envelope_transitive,
            "envelope_size": self.envelope_size,
            "partial_witness": self.partial_witness,
            "envelope_orbit_count": self.envelope_orbit_count,
        }


def transitivity_transfer(system: PartialSystem) -> TransferReport:
    """Transitivity must transfer to and from the enveloping action; asserts equality."""
    full = system.full_space()
    partial_witness = next(
        (x for x in range(system.size) if partial_orbit(system, x) == full), None
    )
    partial = partial_witness is not None

    env = globalize(system)
    seen: set[int] = set()
    orbit_count = 0
    for c in range(env.size):
        if c not in seen:
            orbit_count += 1
            seen |= {env.beta[g][c] for g in system.group.elements()}
    envelope = orbit_count == 1 if env.size else True

    if partial != envelope:
        raise DualRouteMismatch(
            f"transitivity transfer failed: partial={partial}, envelope={envelope}"
        )
    return TransferReport(partial, envelope, env.size, partial_witness, orbit_count)
