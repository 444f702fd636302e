"""Split coefficient rings K^X: pointwise arithmetic, ideals as point subsets.

Every ideal of a finite product of fields is cut out by a subset of the
points, so ideals are handled as supports and the idempotent calculus is
literal set algebra.  Ring isomorphisms between such ideals are induced by
point bijections; that is exactly the class of coefficient isomorphisms this
workbench admits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainMismatch, NotAUnit, NotBijective, PointOutOfRange, SizeMismatch


@dataclass(frozen=True)
class SplitRing:
    """The ring of scalar functions on a finite point set."""

    field: object
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise PointOutOfRange("a split ring needs at least one point")

    def element(self, coeffs) -> "RingElement":
        coeffs = tuple(coeffs)
        if len(coeffs) != self.size:
            raise SizeMismatch(f"expected {self.size} coefficients, got {len(coeffs)}")
        return RingElement(self, coeffs)

    def zero(self) -> "RingElement":
        return RingElement(self, (self.field.zero,) * self.size)

    def one(self) -> "RingElement":
        return RingElement(self, (self.field.one,) * self.size)

    def idempotent(self, support) -> "RingElement":
        S = frozenset(support)
        f = self.field
        return RingElement(
            self, tuple(f.one if x in S else f.zero for x in range(self.size))
        )

    def point_idempotent(self, x: int) -> "RingElement":
        if not 0 <= x < self.size:
            raise PointOutOfRange(f"point {x} outside ring on {self.size} points")
        return self.idempotent((x,))

    def ideal(self, support) -> "IdealHandle":
        S = frozenset(support)
        for x in S:
            if not (isinstance(x, int) and 0 <= x < self.size):
                raise PointOutOfRange(f"ideal support contains {x!r}")
        return IdealHandle(self, S)

    def full_support(self) -> frozenset[int]:
        return frozenset(range(self.size))


@dataclass(frozen=True)
class RingElement:
    """A scalar function on the points, stored as a dense coefficient tuple."""

    ring: SplitRing
    coeffs: tuple

    def _check_same_ring(self, other: "RingElement") -> None:
        if self.ring != other.ring:
            raise SizeMismatch("elements live in different rings")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check_same_ring(other)
        f = self.ring.field
        return RingElement(self.ring, tuple(f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check_same_ring(other)
        f = self.ring.field
        return RingElement(self.ring, tuple(f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RingElement":
        f = self.ring.field
        return RingElement(self.ring, tuple(f.neg(a) for a in self.coeffs))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check_same_ring(other)
        f = self.ring.field
        return RingElement(self.ring, tuple(f.mul(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "RingElement":
        f = self.ring.field
        return RingElement(self.ring, tuple(f.mul(c, a) for a in self.coeffs))

    def support(self) -> frozenset[int]:
        return frozenset(x for x, a in enumerate(self.coeffs) if a)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __getitem__(self, x: int):
        return self.coeffs[x]


@dataclass(frozen=True)
class IdealHandle:
    """The ideal of elements supported inside a point subset."""

    ring: SplitRing
    support: frozenset[int]

    def unit(self) -> RingElement:
        """The idempotent generator, which is the identity of the ideal."""
        return self.ring.idempotent(self.support)

    def contains(self, a: RingElement) -> bool:
        return a.support() <= self.support

    def is_zero(self) -> bool:
        return not self.support

    def is_full(self) -> bool:
        return self.support == self.ring.full_support()


def annihilator(a: RingElement) -> IdealHandle:
    """Everything that multiplies a to zero: the ideal on the complement of its support."""
    return IdealHandle(a.ring, a.ring.full_support() - a.support())


def is_unit(a: RingElement, within: IdealHandle | None = None) -> bool:
    """Unit of the whole ring, or of the given ideal (nonzero exactly on its support)."""
    if within is None:
        return a.support() == a.ring.full_support()
    return within.contains(a) and a.support() == within.support


def invert(a: RingElement, within: IdealHandle | None = None) -> RingElement:
    """Inverse inside the stated carrier; zero off an ideal's support."""
    if not is_unit(a, within):
        carrier = "the ring" if within is None else f"the ideal on {sorted(within.support)}"
        raise NotAUnit(f"element with support {sorted(a.support())} is not a unit of {carrier}")
    f = a.ring.field
    return RingElement(a.ring, tuple(f.inv(c) if c else f.zero for c in a.coeffs))


@dataclass(frozen=True)
class PointIso:
    """Isomorphism between two ideals induced by a point bijection.

    Acts by relabeling: the image takes at a target point the value the
    argument took at its preimage, and vanishes off the target support.  An
    optional twist multiplies the image by a unit of the target ideal; the
    untwisted map is the one that is multiplicative and unital.
    """

    ring: SplitRing
    source: frozenset[int]
    target: frozenset[int]
    mapping: tuple[tuple[int, int], ...]  # sorted (source point, target point) pairs
    twist: RingElement | None = None

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def inverse_dict(self) -> dict[int, int]:
        return {y: x for x, y in self.mapping}

    def apply(self, a: RingElement) -> RingElement:
        if a.ring != self.ring:
            raise SizeMismatch("element lives in a different ring")
        if not a.support() <= self.source:
            raise DomainMismatch(
                f"element supported on {sorted(a.support())} is outside the source ideal"
            )
        f = self.ring.field
        out = [f.zero] * self.ring.size
        for x, y in self.mapping:
            out[y] = a.coeffs[x]
        result = RingElement(self.ring, tuple(out))
        if self.twist is not None:
            result = result * self.twist
        return result

    def compose(self, other: "PointIso") -> "PointIso":
        """self after other; the inner target must be the outer source."""
        if other.ring != self.ring or other.target != self.source:
            raise NotBijective("composition needs the inner target to equal the outer source")
        inner = other.as_dict()
        outer = self.as_dict()
        mapping = tuple(sorted((x, outer[y]) for x, y in inner.items()))
        twist = self.twist
        if other.twist is not None:
            moved = self._apply_untwisted(other.twist)
            twist = moved if twist is None else twist * moved
        return PointIso(self.ring, other.source, self.target, mapping, twist)

    def _apply_untwisted(self, a: RingElement) -> RingElement:
        f = self.ring.field
        out = [f.zero] * self.ring.size
        for x, y in self.mapping:
            out[y] = a.coeffs[x]
        return RingElement(self.ring, tuple(out))

    def inverse(self) -> "PointIso":
        if self.twist is not None:
            raise NotBijective("only untwisted point isomorphisms are inverted directly")
        mapping = tuple(sorted((y, x) for x, y in self.mapping))
        return PointIso(self.ring, self.target, self.source, mapping, None)


def induced_iso(ring: SplitRing, mapping, twist: RingElement | None = None) -> PointIso:
    """Build the ideal isomorphism induced by a point bijection (optionally twisted)."""
    pairs = dict(mapping)
    source = frozenset(pairs.keys())
    values = list(pairs.values())
    target = frozenset(values)
    if len(target) != len(values):
        raise NotBijective("point map is not injective")
    for x in source | target:
        if not (isinstance(x, int) and 0 <= x < ring.size):
            raise PointOutOfRange(f"point {x!r} outside ring on {ring.size} points")
    if twist is not None and not is_unit(twist, IdealHandle(ring, target)):
        raise NotAUnit("twist must be a unit of the target ideal")
    return PointIso(ring, source, target, tuple(sorted(pairs.items())), twist)
