"""Twisted partial actions over split rings: validation, lifting, restriction.

An action carries, per group element, a support subset (its ideal), a point
bijection from the inverse element's support (its coefficient isomorphism),
and, per pair of group elements, a nowhere-zero scalar function on the
product ideal's support (its twist).  Missing twist values default to one.
All coefficient isomorphisms are induced by point bijections; over prime
fields and the rationals these are exactly the algebra isomorphisms between
the ideals, which is the scope this workbench commits to.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dynamics import PartialSystem, validate_system
from .errors import (
    CapacityError,
    DomainMismatch,
    InvalidSystem,
    MalformedBijection,
    MalformedCocycle,
    PointOutOfRange,
)
from .groups import FiniteGroup
from .splitring import RingElement, SplitRing

SUBSET_ENUM_CAP = 16


def _normalize_sigma(g, expected_keys, sigma, size) -> dict[int, int]:
    m = dict(sigma)
    if frozenset(m.keys()) != frozenset(expected_keys):
        raise MalformedBijection(
            f"bijection of g={g} must be defined exactly on the support of its inverse; "
            f"got keys {sorted(m.keys())}, expected {sorted(expected_keys)}"
        )
    values = list(m.values())
    for y in values:
        if not (isinstance(y, int) and 0 <= y < size):
            raise PointOutOfRange(f"bijection of g={g} hits {y!r}")
    if len(set(values)) != len(values):
        raise MalformedBijection(f"bijection of g={g} is not injective")
    return m


@dataclass
class TwistedAction:
    """Validated-by-construction shape; axioms are checked by validate_twisted."""

    group: FiniteGroup
    ring: SplitRing
    supports: tuple[frozenset[int], ...]
    sigmas: tuple[dict[int, int], ...]
    cocycle: dict[tuple[int, int], dict[int, object]]
    _sigma_inverses: tuple[dict[int, int], ...] = field(default=None, repr=False)

    @classmethod
    def build(cls, group: FiniteGroup, ring: SplitRing, supports=None, sigmas=None, cocycle=None):
        supports = supports or {}
        sigmas = sigmas or {}
        cocycle = cocycle or {}
        e = group.identity
        n = ring.size
        sup_list = []
        for g in group.elements():
            if g == e:
                given = frozenset(supports.get(g, range(n)))
                if given != frozenset(range(n)):
                    raise DomainMismatch("the identity's support must be the whole space")
                sup_list.append(frozenset(range(n)))
            else:
                S = frozenset(supports.get(g, ()))
                for x in S:
                    if not (isinstance(x, int) and 0 <= x < n):
                        raise PointOutOfRange(f"support of g={g} contains {x!r}")
                sup_list.append(S)
        sig_list = []
        for g in group.elements():
            expected = sup_list[group.inv(g)]
            if g == e:
                m = dict(sigmas.get(g, {x: x for x in range(n)}))
                m = _normalize_sigma(g, expected, m, n)
                if any(x != y for x, y in m.items()):
                    raise MalformedBijection("the identity's bijection must be the identity map")
            else:
                m = _normalize_sigma(g, expected, dict(sigmas.get(g, {})), n)
            sig_list.append(m)

        one = ring.field.one
        coc: dict[tuple[int, int], dict[int, object]] = {}
        for (g, h), values in cocycle.items():
            if not (0 <= g < group.order and 0 <= h < group.order):
                raise MalformedCocycle(f"twist indexed by invalid pair {(g, h)}")
            carrier = sup_list[g] & sup_list[group.mul(g, h)]
            entry = {}
            for x, value in values.items():
                if x not in carrier:
                    raise MalformedCocycle(
                        f"twist value for pair {(g, h)} at point {x} lies outside its carrier"
                    )
                if not value:
                    raise MalformedCocycle(f"twist value for pair {(g, h)} at point {x} is zero")
                if value != one:
                    entry[x] = value
            if entry:
                coc[(g, h)] = entry
        return cls(group, ring, tuple(sup_list), tuple(sig_list), coc)

    def __post_init__(self) -> None:
        if self._sigma_inverses is None:
            self._sigma_inverses = tuple({y: x for x, y in m.items()} for m in self.sigmas)

    def sigma_inv(self, g: int) -> dict[int, int]:
        return self._sigma_inverses[g]

    def w(self, g: int, h: int, x: int):
        """Twist value at a carrier point (defaults to one)."""
        entry = self.cocycle.get((g, h))
        if entry is None:
            return self.ring.field.one
        return entry.get(x, self.ring.field.one)

    def w_ext(self, g: int, h: int, x: int):
        """Twist as a function on the whole space, zero off its carrier."""
        if x in self.supports[g] and x in self.supports[self.group.mul(g, h)]:
            return self.w(g, h, x)
        return self.ring.field.zero

    def has_trivial_cocycle(self) -> bool:
        return not self.cocycle

    def dimension(self) -> int:
        return sum(len(S) for S in self.supports)

    def unit_of(self, g: int) -> RingElement:
        return self.ring.idempotent(self.supports[g])

    def underlying_system(self) -> PartialSystem:
        """The same support/bijection data read as a partial dynamical system."""
        return PartialSystem(
            self.group, self.ring.size, self.supports, tuple(dict(m) for m in self.sigmas)
        )


@dataclass
class TwistedAxiomFailure:
    axiom: str
    g: int
    h: int | None = None
    t: int | None = None
    point: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "g": self.g,
            "h": self.h,
            "t": self.t,
            "point": self.point,
            "detail": self.detail,
        }


@dataclass
class TwistedReport:
    ok: bool
    failures: list[TwistedAxiomFailure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [f.to_json() for f in self.failures],
            "notes": list(self.notes),
        }


def validate_twisted(action: TwistedAction) -> TwistedReport:
    """Exhaustively check the twisted-action axioms on the idempotent basis.

    All maps involved are linear, so checking products and the twist identity
    on point idempotents of the relevant carriers is complete.  Conjugation
    by a twist value is trivial in a commutative coefficient ring; the
    composition axiom therefore reduces to a point-level statement.
    """
    G = action.group
    failures: list[TwistedAxiomFailure] = []
    notes = [
        "idempotence and commutation of the ideals hold identically in a split ring",
    ]

    for g in G.elements():
        for h in G.elements():
            lhs = {action.sigmas[g][x] for x in action.supports[G.inv(g)] & action.supports[h]}
            rhs = action.supports[g] & action.supports[G.mul(g, h)]
            for x in sorted(lhs.symmetric_difference(rhs)):
                side = "extra" if x in lhs else "missing"
                failures.append(
                    TwistedAxiomFailure(
                        "iii", g, h, None, x, f"image of the overlap ideal is wrong ({side} point)"
                    )
                )

    for g in G.elements():
        sg = action.sigmas[g]
        for h in G.elements():
            gh = G.mul(g, h)
            sh = action.sigmas[h]
            sgh = action.sigmas[gh]
            for x in sorted(action.supports[G.inv(h)] & action.supports[G.inv(gh)]):
                u = sh[x]
                if u not in sg:
                    failures.append(
                        TwistedAxiomFailure("iv", g, h, None, x, "composite undefined at the point")
                    )
                    continue
                if sg[u] != sgh[x]:
                    failures.append(
                        TwistedAxiomFailure(
                            "iv", g, h, None, x,
                            f"composing gives {sg[u]}, the product element's map gives {sgh[x]}",
                        )
                    )

    e = G.identity
    one = action.ring.field.one
    for g in G.elements():
        for x in sorted(action.supports[g]):
            if action.w(g, e, x) != one:
                failures.append(
                    TwistedAxiomFailure("v", g, e, None, x, "twist against the identity must be one")
                )
            if action.w(e, g, x) != one:
                failures.append(
                    TwistedAxiomFailure("v", e, g, None, x, "twist against the identity must be one")
                )

    f = action.ring.field
    for g in G.elements():
        sg = action.sigmas[g]
        for h in G.elements():
            gh = G.mul(g, h)
            for t in G.elements():
                ht = G.mul(h, t)
                ght = G.mul(gh, t)
                carrier = (
                    action.supports[G.inv(g)] & action.supports[h] & action.supports[ht]
                )
                for x in sorted(carrier):
                    y = sg[x]
                    lhs = f.mul(action.w(h, t, x), action.w_ext(g, ht, y))
                    rhs = f.mul(action.w_ext(g, h, y), action.w_ext(gh, t, y))
                    if lhs != rhs:
                        failures.append(
                            TwistedAxiomFailure(
                                "vi", g, h, t, x,
                                f"twist identity fails: {lhs!r} vs {rhs!r}",
                            )
                        )

    return TwistedReport(ok=not failures, failures=failures, notes=notes)


def lift_dynamics(system: PartialSystem, scalar_field, cocycle=None) -> TwistedAction:
    """Turn a valid partial dynamical system into a twisted action on functions.

    Supports are the domains, coefficient isomorphisms are induced by the
    point maps, and the twist is trivial unless one is supplied explicitly.
    """
    report = validate_system(system)
    if not report.ok:
        raise InvalidSystem("cannot lift an invalid system", report)
    ring = SplitRing(scalar_field, system.size)
    return TwistedAction.build(
        system.group,
        ring,
        supports={g: system.domains[g] for g in system.group.elements()},
        sigmas={g: dict(system.maps[g]) for g in system.group.elements()},
        cocycle=cocycle or {},
    )


@dataclass
class GlobalTwistedAction:
    """A twisted action with full supports: total point permutations and a global twist."""

    group: FiniteGroup
    ring: SplitRing
    betas: tuple[tuple[int, ...], ...]
    u: dict[tuple[int, int], tuple]

    @classmethod
    def build(cls, group: FiniteGroup, ring: SplitRing, betas, u=None):
        n = ring.size
        perm_rows = []
        for g in group.elements():
            row = tuple(betas[g])
            if sorted(row) != list(range(n)):
                raise MalformedBijection(f"translation data of g={g} is not a permutation")
            perm_rows.append(row)
        perms = tuple(perm_rows)
        e = group.identity
        if perms[e] != tuple(range(n)):
            raise MalformedBijection("the identity must act as the identity permutation")
        for g in group.elements():
            for h in group.elements():
                gh = group.mul(g, h)
                if any(perms[g][perms[h][x]] != perms[gh][x] for x in range(n)):
                    raise InvalidSystem(f"permutations do not compose as the group does at ({g},{h})")

        f = ring.field
        ones = (f.one,) * n
        cocycle: dict[tuple[int, int], tuple] = {}
        if u:
            for (g, h), values in u.items():
                vals = tuple(values)
                if len(vals) != n:
                    raise MalformedCocycle(f"global twist for pair {(g, h)} has the wrong length")
                if any(not v for v in vals):
                    raise MalformedCocycle(f"global twist for pair {(g, h)} has a zero value")
                if vals != ones:
                    cocycle[(g, h)] = vals

        def val(g, h, x):
            entry = cocycle.get((g, h))
            return entry[x] if entry is not None else f.one

        for g in group.elements():
            for x in range(n):
                if val(g, e, x) != f.one or val(e, g, x) != f.one:
                    raise MalformedCocycle("global twist against the identity must be one")
        inv_perms = [tuple(row.index(x) for x in range(n)) for row in perms]
        for g in group.elements():
            for h in group.elements():
                gh = group.mul(g, h)
                for t in group.elements():
                    ht = group.mul(h, t)
                    for x in range(n):
                        lhs = f.mul(val(g, h, x), val(gh, t, x))
                        rhs = f.mul(val(h, t, inv_perms[g][x]), val(g, ht, x))
                        if lhs != rhs:
                            raise MalformedCocycle(
                                f"global twist identity fails at ({g},{h},{t}) point {x}"
                            )
        return cls(group, ring, perms, cocycle)

    def beta_image(self, g: int, subset) -> frozenset[int]:
        row = self.betas[g]
        return frozenset(row[x] for x in subset)


def restriction_embedding(support) -> dict[int, int]:
    """Point map from the restricted action's indices back to the ambient points."""
    return {i: x for i, x in enumerate(sorted(frozenset(support)))}


def restrict_global(action: GlobalTwistedAction, support) -> TwistedAction:
    """Cut a global twisted action down to the ideal on a point subset.

    The restricted supports are the overlaps of the subset with its
    translates, the bijections are the permutations restricted, and the twist
    is the global twist restricted to each carrier.  The subset's points are
    reindexed 0..|S|-1 in ambient order (see restriction_embedding).  The
    result is re-validated in full; the construction guarantees it passes.
    """
    S = frozenset(support)
    for x in S:
        if not (isinstance(x, int) and 0 <= x < action.ring.size):
            raise PointOutOfRange(f"restriction support contains {x!r}")
    if not S:
        raise PointOutOfRange("restriction support must be nonempty")
    G = action.group
    to_ambient = restriction_embedding(S)
    to_local = {x: i for i, x in to_ambient.items()}
    ring = SplitRing(action.ring.field, len(S))
    supports = {
        g: frozenset(to_local[x] for x in S & action.beta_image(g, S)) for g in G.elements()
    }
    sigmas = {}
    for g in G.elements():
        row = action.betas[g]
        sigmas[g] = {i: to_local[row[to_ambient[i]]] for i in supports[G.inv(g)]}
    cocycle = {}
    f = ring.field
    for g in G.elements():
        for h in G.elements():
            carrier = supports[g] & supports[G.mul(g, h)]
            entry = action.u.get((g, h))
            if entry is None:
                continue
            values = {i: entry[to_ambient[i]] for i in carrier if entry[to_ambient[i]] != f.one}
            if values:
                cocycle[(g, h)] = values
    restricted = TwistedAction.build(G, ring, supports, sigmas, cocycle)
    report = validate_twisted(restricted)
    if not report.ok:
        raise InvalidSystem("restriction of a global action failed validation", report)
    return restricted


@dataclass
class EnvelopeCondition:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class EnvelopeReport:
    ok: bool
    conditions: list[EnvelopeCondition]

    def to_json(self) -> dict:
        return {"ok": self.ok, "conditions": [c.to_json() for c in self.conditions]}


def verify_ring_envelope(
    action: TwistedAction, global_action: GlobalTwistedAction, embed
) -> EnvelopeReport:
    """Check the five enveloping conditions for a candidate global model.

    ``embed`` injects the partial action's points into the global action's
    points.  Report-style: every condition is evaluated and given a witness
    rather than raising.
    """
    conditions: list[EnvelopeCondition] = []
    phi = dict(embed)
    G = action.group
    n = action.ring.size
    N = global_action.ring.size

    injective = len(set(phi.values())) == len(phi)
    total = frozenset(phi.keys()) == frozenset(range(n)) and all(
        isinstance(v, int) and 0 <= v < N for v in phi.values()
    )
    structural_ok = injective and total and action.ring.field == global_action.ring.field
    conditions.append(
        EnvelopeCondition(
            "embedding-is-an-ideal-inclusion",
            structural_ok,
            "" if structural_ok else "embedding is not an injective total point map over the same field",
        )
    )
    if not structural_ok:
        return EnvelopeReport(False, conditions)

    image = frozenset(phi.values())
    covered = set()
    for g in G.elements():
        covered |= global_action.beta_image(g, image)
    ok2 = covered == frozenset(range(N))
    conditions.append(
        EnvelopeCondition(
            "translates-of-the-image-cover",
            ok2,
            "" if ok2 else f"uncovered points {sorted(frozenset(range(N)) - covered)}",
        )
    )

    ok3 = True
    detail3 = ""
    for g in G.elements():
        lhs = frozenset(phi[x] for x in action.supports[g])
        rhs = image & global_action.beta_image(g, image)
        if lhs != rhs:
            ok3 = False
            detail3 = f"support of g={g} maps to {sorted(lhs)}, overlap is {sorted(rhs)}"
            break
    conditions.append(EnvelopeCondition("supports-are-the-overlaps", ok3, detail3))

    ok4 = True
    detail4 = ""
    for g in G.elements():
        row = global_action.betas[g]
        for x in sorted(action.supports[G.inv(g)]):
            if phi[action.sigmas[g][x]] != row[phi[x]]:
                ok4 = False
                detail4 = f"maps disagree at g={g}, point {x}"
                break
        if not ok4:
            break
    conditions.append(EnvelopeCondition("partial-maps-are-restrictions", ok4, detail4))

    ok5 = True
    detail5 = ""
    f = action.ring.field
    for g in G.elements():
        for h in G.elements():
            carrier = action.supports[g] & action.supports[G.mul(g, h)]
            entry = global_action.u.get((g, h))
            for x in sorted(carrier):
                big = entry[phi[x]] if entry is not None else f.one
                if action.w(g, h, x) != big:
                    ok5 = False
                    detail5 = f"twists disagree at pair ({g},{h}), point {x}"
                    break
            if not ok5:
                break
        if not ok5:
            break
    conditions.append(EnvelopeCondition("twists-are-restrictions", ok5, detail5))

    return EnvelopeReport(all(c.ok for c in conditions), conditions)


def is_symmetric(action: TwistedAction) -> bool:
    """Carriers match under swapping and the twist values agree on them."""
    G = action.group
    for g in G.elements():
        for h in G.elements():
            lhs_carrier = action.supports[g] & action.supports[G.mul(g, h)]
            rhs_carrier = action.supports[h] & action.supports[G.mul(h, g)]
            if lhs_carrier != rhs_carrier:
                return False
            for x in lhs_carrier:
                if action.w(g, h, x) != action.w(h, g, x):
                    return False
    return True


def invariants_subring(action: TwistedAction) -> list[RingElement]:
    """Canonical basis of the fixed subring: indicators of point classes linked by the maps."""
    n = action.ring.size
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in action.group.elements():
        for x, y in action.sigmas[g].items():
            ra, rb = find(x), find(y)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    components: dict[int, set[int]] = {}
    for x in range(n):
        components.setdefault(find(x), set()).add(x)
    return [
        action.ring.idempotent(points)
        for _, points in sorted(components.items())
    ]


def is_invariant_ideal(action: TwistedAction, support) -> bool:
    """Each map sends the ideal's part of its source support into the ideal."""
    S = support.support if hasattr(support, "support") else frozenset(support)
    G = action.group
    for g in G.elements():
        m = action.sigmas[g]
        for x in S & action.supports[G.inv(g)]:
            y = m[x]
            if y not in S or y not in action.supports[g]:
                return False
    return True


def alpha_invariant_ideals(action: TwistedAction, cap: int = SUBSET_ENUM_CAP) -> list[frozenset[int]]:
    """All invariant ideal supports, by exhaustive enumeration."""
    n = action.ring.size
    if n > cap:
        raise CapacityError("invariant-ideal enumeration (2^n subsets)", n, cap)
    out = []
    for mask in range(1 << n):
        S = frozenset(x for x in range(n) if mask >> x & 1)
        if is_invariant_ideal(action, S):
            out.append(S)
    return out


def is_alpha_simple(action: TwistedAction, cap: int = SUBSET_ENUM_CAP) -> bool:
    """Only the zero ideal and the whole ring are invariant."""
    return len(alpha_invariant_ideals(action, cap=cap)) == 2
