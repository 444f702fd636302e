"""Simplicity decisions: structural routes cross-checked by a brute-force ideal oracle.

The oracle enumerates the full vector space of a structure-constant algebra
over a prime field and checks that every nonzero element generates the whole
algebra as a two-sided ideal.  Enumerating only basis elements would not be
sound, so the cap guards the full enumeration and anything beyond it is
either sampled (flagged as partial) or refused.  Scalar multiples generate
the same ideal, so enumeration is over vectors whose leading coordinate is
one; the first failing vector in that order is the reported witness,
independent of any evaluation schedule.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .crossed import (
    CPElement,
    centralizer_of_R,
    center,
    cp_to_vector,
    from_subalgebra_coords,
    identity_element,
    is_maximal_commutative,
    structure_algebra,
    subalgebra_structure,
    subspace_basis_vectors,
    vector_to_cp,
    StructureAlgebra,
)
from .dynamics import PartialSystem, is_minimal
from .errors import (
    CapacityError,
    DualRouteMismatch,
    OracleDisagreement,
    WorkbenchError,
)
from .fields import PrimeField, RationalField
from .linalg import SpanTracker, kernel_basis
from .twisted import TwistedAction, alpha_invariant_ideals, is_alpha_simple, lift_dynamics

DEFAULT_ORACLE_CAP = 2 ** 20
DEFAULT_SAMPLE_SIZE = 256


def ideal_closure(algebra: StructureAlgebra, vector) -> list[tuple]:
    """Canonical basis of the smallest two-sided ideal containing the vector.

    Fixpoint of left and right multiplication by the basis; converges after
    one round when the algebra is unital but is iterated regardless.
    """
    d = algebra.dim
    tracker = SpanTracker(algebra.field, d)
    if not tracker.add(vector):
        return []
    frontier = [list(vector)]
    while frontier and tracker.rank < d:
        fresh = []
        for v in frontier:
            for i in range(d):
                left = algebra.mul_basis_left(i, v)
                if tracker.add(left):
                    fresh.append(left)
                    if tracker.rank == d:
                        break
                right = algebra.mul_basis_right(v, i)
                if tracker.add(right):
                    fresh.append(right)
                    if tracker.rank == d:
                        break
            if tracker.rank == d:
                break
        frontier = fresh
    return tracker.basis()


def _normalized_vectors(p: int, d: int):
    """All nonzero vectors with leading coordinate one, in canonical order."""
    for lead in range(d):
        tail_len = d - lead - 1
        tail = [0] * tail_len
        while True:
            yield tuple([0] * lead + [1] + tail)
            i = tail_len - 1
            while i >= 0:
                tail[i] += 1
                if tail[i] < p:
                    break
                tail[i] = 0
                i -= 1
            if i < 0:
                break


def _normalized_count(p: int, d: int) -> int:
    return (p ** d - 1) // (p - 1)


@dataclass
class OracleResult:
    simple: bool
    witness: tuple | None
    exhaustive: bool
    checked: int

    def to_json(self, field) -> dict:
        return {
            "simple": self.simple,
            "witness": list(field.dump_scalar(a) for a in self.witness) if self.witness else None,
            "exhaustive": self.exhaustive,
            "checked": self.checked,
        }


def is_simple_oracle(
    algebra: StructureAlgebra,
    cap: int = DEFAULT_ORACLE_CAP,
    strict: bool = False,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = 0,
) -> OracleResult:
    """Every nonzero element must generate everything; first failure is the witness.

    Needs an enumerable scalar field.  When the space exceeds the cap, strict
    mode refuses; otherwise basis elements plus a seeded sample are checked
    and the verdict is flagged as non-exhaustive.
    """
    f = algebra.field
    if not isinstance(f, PrimeField):
        raise CapacityError("simplicity oracle enumeration", "an infinite field", "a prime field")
    d = algebra.dim
    if d == 0:
        return OracleResult(True, None, True, 0)
    total = f.p ** d
    if total <= cap:
        checked = 0
        for z in _normalized_vectors(f.p, d):
            checked += 1
            if len(ideal_closure(algebra, z)) < d:
                return OracleResult(False, z, True, checked)
        return OracleResult(True, None, True, checked)
    if strict:
        raise CapacityError("simplicity oracle enumeration (p^d elements)", total, cap)
    rng = random.Random(seed)
    candidates = []
    for i in range(d):
        candidates.append(tuple(f.one if j == i else f.zero for j in range(d)))
    if algebra.identity is not None:
        candidates.append(tuple(algebra.identity))
    for _ in range(sample_size):
        vec = tuple(rng.randrange(f.p) for _ in range(d))
        if any(vec):
            candidates.append(vec)
    checked = 0
    for z in candidates:
        checked += 1
        if len(ideal_closure(algebra, z)) < d:
            return OracleResult(False, z, False, checked)
    return OracleResult(True, None, False, checked)


def enumerate_ideals(algebra: StructureAlgebra, cap: int = DEFAULT_ORACLE_CAP) -> list[tuple]:
    """All nonzero two-sided ideals, as canonical bases.

    Every ideal is the join of the principal ideals of its own elements, so
    the join-closure of all principal ideals is the full ideal lattice.
    """
    f = algebra.field
    if not isinstance(f, PrimeField):
        raise CapacityError("ideal enumeration", "an infinite field", "a prime field")
    d = algebra.dim
    total = f.p ** d
    if total > cap:
        raise CapacityError("ideal enumeration (p^d elements)", total, cap)
    principal: dict[tuple, list[tuple]] = {}
    for z in _normalized_vectors(f.p, d):
        basis = ideal_closure(algebra, z)
        principal.setdefault(tuple(basis), basis)
    ideals = dict(principal)
    worklist = list(principal.values())
    while worklist:
        current = worklist.pop()
        for other in list(ideals.values()):
            tracker = SpanTracker(f, d)
            for row in current:
                tracker.add(row)
            grew = False
            for row in other:
                grew = tracker.add(row) or grew
            if grew:
                joined = tracker.basis()
                key = tuple(joined)
                if key not in ideals:
                    ideals[key] = joined
                    worklist.append(joined)
    return sorted(ideals.values(), key=lambda b: (len(b), b))


def _min_poly_coeffs(sub: StructureAlgebra, vec) -> list:
    """Monic minimal polynomial coefficients (constant first) of an element."""
    f = sub.field
    d = sub.dim
    powers = [list(sub.identity)] if sub.identity is not None else None
    if powers is None:
        raise WorkbenchError("minimal polynomial needs a unital algebra")
    tracker = SpanTracker(f, d)
    tracker.add(powers[0])
    current = list(powers[0])
    while True:
        current = sub.mul(current, list(vec))
        if tracker.contains(current):
            break
        tracker.add(current)
        powers.append(list(current))
    # current = sum c_i * powers[i]: solve the linear system
    from .linalg import solve as _solve

    rows = [[powers[i][coord] for i in range(len(powers))] for coord in range(d)]
    combo = _solve(rows, current, f)
    if combo is None:
        raise WorkbenchError("power dependence solve failed")
    coeffs = [f.neg(c) for c in combo]  # x^m - sum c_i x^i = 0
    coeffs.append(f.one)
    return coeffs


def _eval_poly(sub: StructureAlgebra, coeffs, vec) -> list:
    """Evaluate a polynomial (constant first) at an algebra element."""
    f = sub.field
    out = [f.zero] * sub.dim
    power = list(sub.identity)
    for c in coeffs:
        if c:
            for i in range(sub.dim):
                if power[i]:
                    out[i] = f.add(out[i], f.mul(c, power[i]))
        power = sub.mul(power, list(vec))
    return out


def _rational_field_check(sub: StructureAlgebra, seed: int, attempts: int = 60):
    """Field test over the rationals: trace-form radical, then a splitting search."""
    import sympy

    f = sub.field
    k = sub.dim
    if sub.identity is None:
        return False, None
    # Multiplication matrices: column m of M_i is b_i * b_m.
    mult = []
    for i in range(k):
        cols = []
        for m in range(k):
            unit = [f.zero] * k
            unit[m] = f.one
            cols.append(sub.mul_basis_left(i, unit))
        mult.append(cols)

    def trace_of_product(i: int, j: int):
        # trace of multiplication by b_i * b_j
        total = f.zero
        prod_ij = sub.sc[i][j]
        for m in range(k):
            for idx, c in prod_ij:
                col = mult[idx][m]
                total = f.add(total, f.mul(c, col[m]))
        return total

    gram = [[trace_of_product(i, j) for j in range(k)] for i in range(k)]
    radical = kernel_basis(gram, k, f)
    if radical:
        witness = list(radical[0])
        return False, witness

    x = sympy.Symbol("x")
    rng = random.Random(seed)
    candidates = []
    for i in range(k):
        unit = [f.zero] * k
        unit[i] = f.one
        candidates.append(unit)
    for a in range(k):
        for b in range(a + 1, k):
            vec = [f.zero] * k
            vec[a] = f.one
            vec[b] = f.one
            candidates.append(vec)
    for _ in range(attempts):
        candidates.append([f.parse_scalar(rng.randint(-4, 4)) for _ in range(k)])

    for vec in candidates:
        if not any(vec):
            continue
        coeffs = _min_poly_coeffs(sub, vec)
        poly = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x
        )
        factors = poly.factor_list()[1]
        if len(factors) == 1 and factors[0][1] == 1:
            if factors[0][0].degree() == k:
                return True, None
            continue
        if any(mult_ > 1 for _, mult_ in factors):
            # radical said reduced; a repeated factor would contradict it
            raise DualRouteMismatch("reduced algebra produced a non-squarefree minimal polynomial")
        first = factors[0][0]
        rest = poly.quo(first)
        u, v, gcd = sympy.gcdex(first, rest)
        if gcd.degree() != 0:
            continue
        scale = sympy.Rational(1) / gcd.LC()
        vg = (v * rest * scale).rem(poly)
        idem_coeffs = [f.parse_scalar(str(c)) for c in reversed(vg.all_coeffs())]
        idem = _eval_poly(sub, idem_coeffs, vec)
        square = sub.mul(idem, idem)
        if square != idem or not any(idem) or idem == list(sub.identity):
            raise DualRouteMismatch("splitting produced a non-idempotent")
        return False, idem
    raise CapacityError("rational field-ness splitting search", f"{attempts} attempts", attempts)


def is_field(
    algebra: StructureAlgebra,
    basis_elements,
    cap: int = DEFAULT_ORACLE_CAP,
    seed: int = 0,
) -> tuple[bool, list | None]:
    """Decide whether a commutative subalgebra is a field; witness disproves.

    The input is given by spanning elements inside a structure-constant
    algebra.  A commutative finite-dimensional algebra is a field exactly
    when it has an identity, no nonzero nilpotents, and no idempotents other
    than zero and one.  Over a prime field this is decided by enumeration
    within the cap; over the rationals by the trace-form radical plus a
    splitting search.  The witness, if any, is returned in the ambient
    algebra's coordinates.
    """
    vectors = [
        cp_to_vector(algebra, el) if isinstance(el, CPElement) else list(el)
        for el in basis_elements
    ]
    sub, rows = subalgebra_structure(algebra, vectors)
    k = sub.dim
    f = sub.field
    for i in range(k):
        for j in range(i + 1, k):
            if sub.sc[i][j] != sub.sc[j][i]:
                raise WorkbenchError("field test requires a commutative subalgebra")
    if k == 0:
        return False, None
    if sub.identity is None:
        return False, None

    def ambient(vec):
        return from_subalgebra_coords(rows, vec, f, algebra.dim)

    if isinstance(f, PrimeField):
        total = f.p ** k
        if total > cap:
            raise CapacityError("field-ness enumeration (p^k elements)", total, cap)
        identity = list(sub.identity)
        # Idempotency is not scale-invariant, so this enumerates every
        # nonzero vector rather than projective representatives.
        for z in itertools.product(range(f.p), repeat=k):
            if not any(z):
                continue
            vec = list(z)
            if sub.mul(vec, vec) == vec and vec != identity:
                return False, ambient(vec)
            power = vec
            for _ in range(k):
                power = sub.mul(power, vec)
                if not any(power):
                    return False, ambient(vec)
        return True, None
    if isinstance(f, RationalField):
        ok, witness = _rational_field_check(sub, seed)
        return ok, ambient(witness) if witness is not None else None
    raise CapacityError("field-ness test", f"unsupported field {f!r}", "fp or rational")


@dataclass
class SimplicityVerdict:
    simple: bool
    route: str
    witness: CPElement | None = None
    oracle_agreement: bool | None = None

    def to_json(self) -> dict:
        return {
            "simple": self.simple,
            "route": self.route,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "oracle_agreement": self.oracle_agreement,
        }


def _verify_witness(algebra: StructureAlgebra, vector) -> None:
    closure = ideal_closure(algebra, vector)
    if not closure or len(closure) >= algebra.dim:
        raise DualRouteMismatch(
            "a non-simplicity witness failed re-verification: "
            f"its ideal has dimension {len(closure)} of {algebra.dim}"
        )


def _alpha_witness(action: TwistedAction, subset_cap: int) -> CPElement:
    """A proper invariant ideal's idempotent, placed at the identity."""
    ideals = alpha_invariant_ideals(action, cap=subset_cap)
    proper = next(S for S in ideals if S and S != frozenset(range(action.ring.size)))
    return CPElement.monomial(action, action.group.identity, action.ring.idempotent(proper))


def decide_simplicity(
    action: TwistedAction,
    oracle: str = "auto",
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    subset_cap: int = 16,
    seed: int = 0,
) -> SimplicityVerdict:
    """Pick the first applicable decision route, then cross-check with the oracle.

    Routes, in order: maximal commutativity of the coefficients; abelian
    group with the center tested for field-ness; a centralizer certified
    simple by the oracle; the oracle alone.  Whenever the full oracle is
    affordable it also runs and must agree; disagreement is fatal.  The
    witness of a negative verdict is re-verified to generate a proper ideal.
    """
    if oracle not in ("auto", "force", "off"):
        raise WorkbenchError(f"unknown oracle mode {oracle!r}")
    algebra = structure_algebra(action)
    f = algebra.field
    alpha = is_alpha_simple(action, cap=subset_cap)
    verdict: SimplicityVerdict | None = None

    if is_maximal_commutative(action):
        witness = None if alpha else _alpha_witness(action, subset_cap)
        verdict = SimplicityVerdict(alpha, "maximal-commutative", witness)
    if verdict is None and action.group.is_abelian:
        try:
            field_ok, field_witness = is_field(algebra, center(action), cap=oracle_cap, seed=seed)
            if not field_ok and field_witness is not None:
                witness = vector_to_cp(action, algebra, field_witness)
            elif not alpha:
                witness = _alpha_witness(action, subset_cap)
            else:
                witness = None
            verdict = SimplicityVerdict(alpha and field_ok, "center-field", witness)
        except CapacityError:
            verdict = None
    if verdict is None and isinstance(f, PrimeField):
        try:
            sub, _rows = subalgebra_structure(
                algebra, subspace_basis_vectors(algebra, centralizer_of_R(action))
            )
            inner = is_simple_oracle(sub, cap=oracle_cap, strict=True, seed=seed)
            if inner.simple and inner.exhaustive:
                witness = None if alpha else _alpha_witness(action, subset_cap)
                verdict = SimplicityVerdict(alpha, "centralizer-simple", witness)
        except CapacityError:
            verdict = None

    oracle_result: OracleResult | None = None
    if oracle != "off" and isinstance(f, PrimeField):
        affordable = f.p ** algebra.dim <= oracle_cap
        if oracle == "force" or affordable:
            oracle_result = is_simple_oracle(algebra, cap=oracle_cap, strict=True, seed=seed)

    if verdict is None:
        if oracle_result is None:
            raise CapacityError(
                "simplicity decision",
                "no structural route applies and the oracle is unavailable or over cap",
                oracle_cap,
            )
        witness = (
            vector_to_cp(action, algebra, oracle_result.witness)
            if oracle_result.witness is not None
            else None
        )
        verdict = SimplicityVerdict(oracle_result.simple, "oracle", witness, True)
    elif oracle_result is not None:
        if oracle_result.simple != verdict.simple:
            raise OracleDisagreement(
                f"route {verdict.route!r} says simple={verdict.simple} "
                f"but the oracle says simple={oracle_result.simple}"
            )
        verdict.oracle_agreement = True

    if verdict.witness is not None:
        if verdict.simple:
            raise DualRouteMismatch("a simplicity verdict carries a witness but is positive")
        _verify_witness(algebra, cp_to_vector(algebra, verdict.witness))
    return verdict


@dataclass
class EquivalenceReport:
    """Minimality, maximal commutativity with invariant-ideal simplicity, and simplicity.

    The three conditions agree for well-behaved infinite systems; at finite
    scale only some implications survive.  The surviving ones are asserted
    (a violation is a bug); the one that genuinely needs an infinite space is
    reported as holding or as a finite-space gap, never as a failure.
    """

    minimal: bool
    maximal_commutative: bool
    alpha_simple: bool
    simple: bool
    route: str
    implications: dict[str, str]

    def to_json(self) -> dict:
        return {
            "minimal": self.minimal,
            "maximal_commutative": self.maximal_commutative,
            "alpha_simple": self.alpha_simple,
            "condition_ii": self.maximal_commutative and self.alpha_simple,
            "simple": self.simple,
            "route": self.route,
            "implications": dict(sorted(self.implications.items())),
        }


def equivalence_report(
    system: PartialSystem,
    scalar_field,
    oracle: str = "auto",
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    subset_cap: int = 16,
) -> EquivalenceReport:
    """Evaluate the three-way equivalence on a lifted system and check directions."""
    action = lift_dynamics(system, scalar_field)
    minimal = is_minimal(system)
    max_comm = is_maximal_commutative(action)
    alpha = is_alpha_simple(action, cap=subset_cap)
    verdict = decide_simplicity(action, oracle=oracle, oracle_cap=oracle_cap, subset_cap=subset_cap)
    simple = verdict.simple

    implications: dict[str, str] = {}
    if max_comm and alpha and not simple:
        raise DualRouteMismatch("maximal commutativity with invariant-ideal simplicity must imply simplicity")
    implications["max_commutative_and_alpha_simple_implies_simple"] = "holds"
    if simple and not alpha:
        raise DualRouteMismatch("simplicity must imply invariant-ideal simplicity")
    implications["simple_implies_alpha_simple"] = "holds"
    if simple and not minimal:
        raise DualRouteMismatch("simplicity must imply minimality")
    implications["simple_implies_minimal"] = "holds"
    implications["minimal_implies_max_commutative"] = (
        "holds" if (not minimal or max_comm) else "finite-space-gap"
    )
    return EquivalenceReport(minimal, max_comm, alpha, simple, verdict.route, implications)
