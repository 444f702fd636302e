"""Exact scalar fields: prime fields F_p and arbitrary-precision rationals.

Both field classes share one informal protocol: ``zero``/``one`` constants,
``add/sub/mul/neg/inv/div`` operations, ``size`` (``None`` when infinite),
``elements()`` enumeration (finite case only) and scalar JSON round-tripping
via ``parse_scalar``/``dump_scalar``.  Scalars are plain ``int`` in [0, p)
for F_p and ``fractions.Fraction`` for the rationals, so falsiness coincides
with being zero in both cases.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CapacityError, ParseError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Integers modulo a prime p."""

    kind = "fp"

    def __init__(self, p: int) -> None:
        if not _is_prime(p):
            raise ValueError(f"field modulus must be prime, got {p!r}")
        self.p = p
        self.zero = 0
        self.one = 1

    @property
    def size(self) -> int:
        return self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        return range(self.p)

    def parse_scalar(self, obj) -> int:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise ParseError(f"F_{self.p} scalar must be an integer, got {obj!r}")
        return obj % self.p

    def dump_scalar(self, a: int) -> int:
        return a % self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("fp", self.p))

    def __repr__(self) -> str:
        return f"F{self.p}"

    def to_json(self) -> dict:
        return {"kind": "fp", "p": self.p}


class RationalField:
    """Exact rational numbers."""

    kind = "rational"

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @property
    def size(self) -> None:
        return None

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def elements(self):
        raise CapacityError("rational scalar enumeration", "infinitely many", "finite")

    def parse_scalar(self, obj) -> Fraction:
        if isinstance(obj, bool):
            raise ParseError(f"rational scalar must be an integer or 'a/b' string, got {obj!r}")
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            try:
                return Fraction(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational scalar {obj!r}: {exc}") from exc
        raise ParseError(f"rational scalar must be an integer or 'a/b' string, got {obj!r}")

    def dump_scalar(self, a: Fraction) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational")

    def __repr__(self) -> str:
        return "Q"

    def to_json(self) -> dict:
        return {"kind": "rational"}


def field_from_json(obj) -> PrimeField | RationalField:
    """Build a field from its JSON descriptor."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("field descriptor must be an object with a 'kind'", field="field")
    kind = obj["kind"]
    if kind == "fp":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError("prime field needs an integer 'p'", field="field.p")
        try:
            return PrimeField(p)
        except ValueError as exc:
            raise ParseError(str(exc), field="field.p") from exc
    if kind == "rational":
        return RationalField()
    raise ParseError(f"unknown field kind {kind!r}", field="field.kind")


def field_from_name(name: str) -> PrimeField | RationalField:
    """Parse compact CLI field names such as ``f3``, ``fp5``, ``rational``."""
    s = name.strip().lower()
    if s in ("q", "rational", "rationals"):
        return RationalField()
    for prefix in ("fp", "f"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return PrimeField(int(s[len(prefix):]))
    raise ParseError(f"unknown field name {name!r}", field="field")
