"""The crossed-product algebra of a twisted action: arithmetic and commutation structure.

Elements are finitely supported maps from group elements to coefficients in
the matching ideals.  The canonical linear basis consists of the point
idempotents times the group symbols, ordered by (group element, point); all
subspaces (centralizer, center, commutant) are reported by their reduced
echelon basis in that coordinate order, which makes every cross-route
comparison in this module an exact equality of canonical bases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CocycleNotTrivial,
    CoefficientOutsideIdeal,
    DualRouteMismatch,
    SizeMismatch,
    WorkbenchError,
)
from .linalg import SpanTracker, kernel_basis, solve
from .splitring import RingElement
from .twisted import TwistedAction, is_symmetric


class CPElement:
    """Element of the crossed product: group element -> coefficient tuple."""

    __slots__ = ("action", "coeffs")

    def __init__(self, action: TwistedAction, coeffs: dict[int, tuple]) -> None:
        self.action = action
        pruned: dict[int, tuple] = {}
        n = action.ring.size
        for g, vec in coeffs.items():
            vec = tuple(vec)
            if len(vec) != n:
                raise SizeMismatch(f"coefficient of g={g} has length {len(vec)}, expected {n}")
            if not any(vec):
                continue
            outside = [x for x, a in enumerate(vec) if a and x not in action.supports[g]]
            if outside:
                raise CoefficientOutsideIdeal(
                    f"coefficient of g={g} is supported at {outside} outside its ideal"
                )
            pruned[g] = vec
        self.coeffs = pruned

    @classmethod
    def monomial(cls, action: TwistedAction, g: int, coefficient) -> "CPElement":
        vec = coefficient.coeffs if isinstance(coefficient, RingElement) else tuple(coefficient)
        return cls(action, {g: vec})

    def coefficient(self, g: int) -> tuple:
        n = self.action.ring.size
        return self.coeffs.get(g, (self.action.ring.field.zero,) * n)

    def group_support(self) -> frozenset[int]:
        return frozenset(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "CPElement") -> "CPElement":
        self._check(other)
        f = self.action.ring.field
        out = dict(self.coeffs)
        for g, vec in other.coeffs.items():
            if g in out:
                out[g] = tuple(f.add(a, b) for a, b in zip(out[g], vec))
            else:
                out[g] = vec
        return CPElement(self.action, out)

    def __neg__(self) -> "CPElement":
        f = self.action.ring.field
        return CPElement(
            self.action, {g: tuple(f.neg(a) for a in vec) for g, vec in self.coeffs.items()}
        )

    def __sub__(self, other: "CPElement") -> "CPElement":
        return self + (-other)

    def __mul__(self, other: "CPElement") -> "CPElement":
        return cp_mul(self.action, self, other)

    def scale(self, c) -> "CPElement":
        f = self.action.ring.field
        return CPElement(
            self.action, {g: tuple(f.mul(c, a) for a in vec) for g, vec in self.coeffs.items()}
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, CPElement) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "CPElement(0)"
        parts = [f"{vec}*d{g}" for g, vec in sorted(self.coeffs.items())]
        return "CPElement(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        f = self.action.ring.field
        return {
            str(g): [f.dump_scalar(a) for a in vec] for g, vec in sorted(self.coeffs.items())
        }

    def _check(self, other: "CPElement") -> None:
        if other.action is not self.action and other.action != self.action:
            raise SizeMismatch("elements belong to different crossed products")


def cp_mul(action: TwistedAction, u: CPElement, v: CPElement) -> CPElement:
    """Bilinear extension of the one-block product rule.

    A block indexed by g times a block indexed by h lands in the block of
    their product; at a point of the target carrier the value is the left
    coefficient there, times the right coefficient pulled back through g's
    bijection, times the twist.
    """
    G = action.group
    f = action.ring.field
    n = action.ring.size
    out: dict[int, list] = {}
    for g, ag in u.coeffs.items():
        sig_inv = action.sigma_inv(g)
        for h, bh in v.coeffs.items():
            gh = G.mul(g, h)
            carrier = action.supports[g] & action.supports[gh]
            if not carrier:
                continue
            acc = out.setdefault(gh, [f.zero] * n)
            for y in carrier:
                a = ag[y]
                if not a:
                    continue
                b = bh[sig_inv[y]]
                if not b:
                    continue
                acc[y] = f.add(acc[y], f.mul(f.mul(a, b), action.w(g, h, y)))
    return CPElement(action, {g: tuple(vec) for g, vec in out.items()})


def identity_element(action: TwistedAction) -> CPElement:
    return CPElement.monomial(action, action.group.identity, action.ring.one())


def basis_labels(action: TwistedAction) -> list[tuple[int, int]]:
    """Canonical basis order: group element ascending, then point ascending."""
    return [(g, x) for g in action.group.elements() for x in sorted(action.supports[g])]


def project_E(action: TwistedAction, u: CPElement) -> RingElement:
    """The coefficient at the identity, as a ring element."""
    return action.ring.element(u.coefficient(action.group.identity))


def op_T(action: TwistedAction, u: CPElement, g: int) -> CPElement:
    """Right multiplication by the g-th support idempotent times the g symbol."""
    return cp_mul(action, u, CPElement.monomial(action, g, action.unit_of(g)))


def op_K(action: TwistedAction, u: CPElement, r) -> CPElement:
    """Commutator with a coefficient: r*u - u*r, r placed at the identity."""
    vec = r.coeffs if isinstance(r, RingElement) else tuple(r)
    re = CPElement.monomial(action, action.group.identity, vec)
    return cp_mul(action, re, u) - cp_mul(action, u, re)


@dataclass
class StructureAlgebra:
    """Structure-constant presentation used by the brute-force oracles.

    ``sc[i][j]`` is the product of basis elements i and j as a sparse tuple of
    (index, scalar) terms.  ``labels`` keeps whatever the basis means to the
    caller; for a crossed product they are (group element, point) pairs.
    """

    field: object
    labels: tuple
    sc: tuple
    identity: tuple | None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def zero_vector(self) -> list:
        return [self.field.zero] * self.dim

    def mul(self, u, v) -> list:
        f = self.field
        out = [f.zero] * self.dim
        sc = self.sc
        for i, a in enumerate(u):
            if not a:
                continue
            row = sc[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in row[j]:
                    out[k] = f.add(out[k], f.mul(f.mul(a, b), c))
        return out

    def mul_basis_left(self, i: int, v) -> list:
        f = self.field
        out = [f.zero] * self.dim
        row = self.sc[i]
        for j, b in enumerate(v):
            if not b:
                continue
            for k, c in row[j]:
                out[k] = f.add(out[k], f.mul(b, c))
        return out

    def mul_basis_right(self, v, j: int) -> list:
        f = self.field
        out = [f.zero] * self.dim
        sc = self.sc
        for i, a in enumerate(v):
            if not a:
                continue
            for k, c in sc[i][j]:
                out[k] = f.add(out[k], f.mul(a, c))
        return out

    def to_json(self) -> dict:
        f = self.field
        entries = []
        for i in range(self.dim):
            for j in range(self.dim):
                terms = self.sc[i][j]
                if terms:
                    entries.append([i, j, [[k, f.dump_scalar(c)] for k, c in terms]])
        labels = [list(l) if isinstance(l, tuple) else l for l in self.labels]
        return {"dim": self.dim, "labels": labels, "sc": entries}


def structure_algebra(action: TwistedAction) -> StructureAlgebra:
    """Expand the crossed product over its canonical monomial basis."""
    G = action.group
    f = action.ring.field
    labels = tuple(basis_labels(action))
    index = {lab: i for i, lab in enumerate(labels)}
    rows = []
    for (g, x) in labels:
        sig_inv_g = action.sigma_inv(g)
        row = []
        for (h, y) in labels:
            gh = G.mul(g, h)
            if x in action.supports[gh] and sig_inv_g[x] == y:
                row.append(((index[(gh, x)], action.w(g, h, x)),))
            else:
                row.append(())
        rows.append(tuple(row))
    e = G.identity
    identity = [f.zero] * len(labels)
    for x in sorted(action.supports[e]):
        identity[index[(e, x)]] = f.one
    return StructureAlgebra(f, labels, tuple(rows), tuple(identity))


def cp_to_vector(algebra: StructureAlgebra, element: CPElement) -> list:
    out = algebra.zero_vector()
    for i, (g, x) in enumerate(algebra.labels):
        vec = element.coeffs.get(g)
        if vec is not None:
            out[i] = vec[x]
    return out


def vector_to_cp(action: TwistedAction, algebra: StructureAlgebra, vector) -> CPElement:
    f = action.ring.field
    n = action.ring.size
    coeffs: dict[int, list] = {}
    for value, (g, x) in zip(vector, algebra.labels):
        if value:
            coeffs.setdefault(g, [f.zero] * n)[x] = value
    return CPElement(action, {g: tuple(vec) for g, vec in coeffs.items()})


@dataclass
class AssociativityReport:
    ok: bool
    checked: int
    witness: tuple | None = None
    detail: str = ""

    def to_json(self) -> dict:
        witness = [list(w) for w in self.witness] if self.witness else None
        return {"ok": self.ok, "checked": self.checked, "witness": witness, "detail": self.detail}


def verify_associativity(action: TwistedAction) -> AssociativityReport:
    """Compare both bracketings on all basis triples; first counterexample wins.

    Monomial basis products have at most one term, so each triple costs a
    constant number of table lookups and the whole check is cubic in the
    dimension.
    """
    S = structure_algebra(action)
    if any(len(terms) > 1 for row in S.sc for terms in row):
        raise WorkbenchError("monomial basis products must have at most one term")
    mul = S.field.mul
    sc = S.sc
    d = S.dim
    checked = 0
    for i in range(d):
        row_i = sc[i]
        for j in range(d):
            t_ij = row_i[j]
            row_j = sc[j]
            if t_ij:
                m, c = t_ij[0]
                row_m = sc[m]
            for k in range(d):
                checked += 1
                if t_ij:
                    t = row_m[k]
                    lhs = ((t[0][0], mul(c, t[0][1])),) if t else ()
                else:
                    lhs = ()
                t_jk = row_j[k]
                if t_jk:
                    m2, c2 = t_jk[0]
                    t2 = row_i[m2]
                    rhs = ((t2[0][0], mul(c2, t2[0][1])),) if t2 else ()
                else:
                    rhs = ()
                if lhs != rhs:
                    return AssociativityReport(
                        False,
                        checked,
                        (S.labels[i], S.labels[j], S.labels[k]),
                        f"products differ: {lhs!r} vs {rhs!r}",
                    )
    return AssociativityReport(True, checked)


def _canonical_subspace(vectors, field, width) -> list[tuple]:
    tracker = SpanTracker(field, width)
    for v in vectors:
        tracker.add(v)
    return tracker.basis()


def centralizer_of_R(action: TwistedAction) -> list[CPElement]:
    """Everything commuting with all coefficients, by a per-block linear solve.

    For each group element the commutation condition against every point
    idempotent is linear in that block's coefficients; the kernels are
    assembled in canonical basis order.
    """
    G = action.group
    f = action.ring.field
    out: list[CPElement] = []
    n = action.ring.size
    for g in G.elements():
        pts = sorted(action.supports[g])
        if not pts:
            continue
        sig_inv = action.sigma_inv(g)
        rows = []
        # One scalar equation per (test idempotent z, point y): the block's
        # value at y is annihilated unless the pullback of y equals y.
        for z in range(n):
            for col, y in enumerate(pts):
                coeff = f.zero
                if sig_inv[y] == z:
                    coeff = f.add(coeff, f.one)
                if y == z:
                    coeff = f.sub(coeff, f.one)
                if coeff:
                    row = [f.zero] * len(pts)
                    row[col] = coeff
                    rows.append(row)
        solutions = kernel_basis(rows, len(pts), f)
        for sol in solutions:
            vec = [f.zero] * n
            for value, y in zip(sol, pts):
                vec[y] = value
            out.append(CPElement(action, {g: tuple(vec)}))
    return out


def is_maximal_commutative(action: TwistedAction) -> bool:
    """The coefficient ring equals its own centralizer."""
    return len(centralizer_of_R(action)) == action.ring.size


def _center_by_conditions(action: TwistedAction, algebra: StructureAlgebra) -> list[tuple]:
    """Center via the two displayed linear condition families."""
    G = action.group
    f = action.ring.field
    labels = algebra.labels
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    rows = []

    # Commutation against every coefficient idempotent, blockwise.
    for s in G.elements():
        sig_inv = action.sigma_inv(s)
        for y in sorted(action.supports[s]):
            for z in range(action.ring.size):
                coeff = f.zero
                if sig_inv[y] == z:
                    coeff = f.add(coeff, f.one)
                if y == z:
                    coeff = f.sub(coeff, f.one)
                if coeff:
                    row = [f.zero] * d
                    row[index[(s, y)]] = coeff
                    rows.append(row)

    # Commutation against every support idempotent times its group symbol.
    for s in G.elements():
        sig_s = action.sigmas[s]
        sig_inv_s = action.sigma_inv(s)
        for t in G.elements():
            a = G.mul(t, G.inv(s))
            b = G.mul(G.inv(s), t)
            for y in range(action.ring.size):
                row = [f.zero] * d
                nonzero = False
                la = (a, y)
                if la in index:
                    c = action.w_ext(a, s, y)
                    if c:
                        row[index[la]] = f.add(row[index[la]], c)
                        nonzero = True
                if y in sig_inv_s:  # y in the support of s
                    x = sig_inv_s[y]
                    lb = (b, x)
                    if lb in index:
                        c = action.w_ext(s, b, y)
                        if c:
                            row[index[lb]] = f.sub(row[index[lb]], c)
                            nonzero = True
                if nonzero and any(row):
                    rows.append(row)

    return kernel_basis(rows, d, f)


def _center_by_brute_force(algebra: StructureAlgebra) -> list[tuple]:
    """Center as the kernel of commutation against every basis element."""
    f = algebra.field
    d = algebra.dim
    rows = []
    for i in range(d):
        # row set: for unknown z, (z*b_i - b_i*z)_k = sum_j z_j (sc[j][i]_k - sc[i][j]_k)
        contrib: list[dict[int, object]] = [dict() for _ in range(d)]  # k -> {j: coeff}
        for j in range(d):
            for k, c in algebra.sc[j][i]:
                contrib[k][j] = f.add(contrib[k].get(j, f.zero), c)
            for k, c in algebra.sc[i][j]:
                contrib[k][j] = f.sub(contrib[k].get(j, f.zero), c)
        for k in range(d):
            if contrib[k]:
                row = [f.zero] * d
                for j, c in contrib[k].items():
                    row[j] = c
                if any(row):
                    rows.append(row)
    return kernel_basis(rows, d, f)


def center(action: TwistedAction) -> list[CPElement]:
    """Center of the crossed product, computed twice and compared exactly.

    The condition-family route and the brute-force commutation route must
    produce the same canonical subspace; a discrepancy is a fatal
    transcription bug, not a warning.
    """
    algebra = structure_algebra(action)
    f = algebra.field
    d = algebra.dim
    by_conditions = _canonical_subspace(_center_by_conditions(action, algebra), f, d)
    by_brute_force = _canonical_subspace(_center_by_brute_force(algebra), f, d)
    if by_conditions != by_brute_force:
        raise DualRouteMismatch(
            "center routes disagree: "
            f"conditions give dim {len(by_conditions)}, brute force gives dim {len(by_brute_force)}"
        )
    return [vector_to_cp(action, algebra, v) for v in by_conditions]


def _sigma_is_identity(action: TwistedAction, g: int) -> bool:
    G = action.group
    if action.supports[g] != action.supports[G.inv(g)]:
        return False
    return all(x == y for x, y in action.sigmas[g].items())


def is_commutative(action: TwistedAction) -> bool:
    """Pairwise commutation of the basis, cross-checked against the characterization.

    The characterization: commutative coefficients (automatic in a split
    ring), abelian group, symmetric twist, and every coefficient isomorphism
    the identity on its ideal.  Both routes must agree.
    """
    algebra = structure_algebra(action)
    direct = True
    d = algebra.dim
    for i in range(d):
        for j in range(i + 1, d):
            if algebra.sc[i][j] != algebra.sc[j][i]:
                direct = False
                break
        if not direct:
            break
    characterized = (
        action.group.is_abelian
        and is_symmetric(action)
        and all(_sigma_is_identity(action, g) for g in action.group.elements())
    )
    if direct != characterized:
        raise DualRouteMismatch(
            f"commutativity routes disagree: direct={direct}, characterization={characterized}"
        )
    return direct


def sep_per(action: TwistedAction, g: int) -> tuple[frozenset[int], frozenset[int]]:
    """Partition of g's support: points its inverse map moves vs. fixes.

    In a finite discrete space the point idempotents separate any two
    distinct points, so "some function separates" means "the points differ".
    """
    moved = set()
    fixed = set()
    back = action.sigmas[action.group.inv(g)]
    for x in action.supports[g]:
        if back[x] == x:
            fixed.add(x)
        else:
            moved.add(x)
    return frozenset(moved), frozenset(fixed)


def commutant_CX(action: TwistedAction) -> list[CPElement]:
    """Commutant of the function algebra, by the separation-set route.

    Only defined for trivially twisted (lifted) actions.  The basis consists
    of the point monomials whose point the inverse map fixes; this is an
    independent route to the same subspace as centralizer_of_R and the two
    are compared by the callers, never merged here.
    """
    if not action.has_trivial_cocycle():
        raise CocycleNotTrivial("the commutant route needs a trivially twisted action")
    out = []
    for g in action.group.elements():
        _, per = sep_per(action, g)
        for x in sorted(per):
            out.append(CPElement.monomial(action, g, action.ring.point_idempotent(x)))
    return out


def subspace_basis_vectors(algebra: StructureAlgebra, elements) -> list[tuple]:
    """Canonical vector basis of the span of the given crossed-product elements."""
    return _canonical_subspace(
        [cp_to_vector(algebra, el) for el in elements], algebra.field, algebra.dim
    )


def subalgebra_structure(algebra: StructureAlgebra, vectors, label_prefix="b") -> tuple:
    """Structure constants of a multiplicatively closed subspace, in its own coordinates.

    Returns (sub_algebra, basis_rows); raises if the span is not closed under
    multiplication.  Coordinates refer to the canonical echelon basis rows.
    """
    f = algebra.field
    d = algebra.dim
    rows = _canonical_subspace(vectors, f, d)
    k = len(rows)
    pivots = []
    for r in rows:
        pivots.append(next(i for i, a in enumerate(r) if a))

    def coords(vec) -> list:
        v = list(vec)
        out = [f.zero] * k
        for idx, (p, row) in enumerate(zip(pivots, rows)):
            c = v[p]
            if c:
                out[idx] = c
                for i in range(d):
                    if row[i]:
                        v[i] = f.sub(v[i], f.mul(c, row[i]))
        if any(v):
            raise WorkbenchError("subspace is not multiplicatively closed")
        return out

    sc_rows = []
    for i in range(k):
        row = []
        for j in range(k):
            prod = algebra.mul(rows[i], rows[j])
            cij = coords(prod)
            row.append(tuple((m, c) for m, c in enumerate(cij) if c))
        sc_rows.append(tuple(row))
    identity = None
    if algebra.identity is not None:
        try:
            identity = tuple(coords(algebra.identity))
        except WorkbenchError:
            identity = None
    if identity is None:
        identity = _solve_identity(f, k, sc_rows)
    sub = StructureAlgebra(
        f, tuple(f"{label_prefix}{i}" for i in range(k)), tuple(sc_rows), identity
    )
    return sub, rows


def from_subalgebra_coords(basis_rows, coeffs, field, width: int) -> list:
    """Expand subalgebra coordinates back into ambient coordinates."""
    out = [field.zero] * width
    for c, row in zip(coeffs, basis_rows):
        if c:
            for i in range(width):
                if row[i]:
                    out[i] = field.add(out[i], field.mul(c, row[i]))
    return out


def _solve_identity(f, k: int, sc_rows) -> tuple | None:
    """Find a two-sided identity by linear algebra, if one exists."""
    rows = []
    rhs = []
    for j in range(k):  # e * b_j = b_j
        for m in range(k):
            row = [f.zero] * k
            for i in range(k):
                for idx, c in sc_rows[i][j]:
                    if idx == m:
                        row[i] = f.add(row[i], c)
            rows.append(row)
            rhs.append(f.one if m == j else f.zero)
    sol = solve(rows, rhs, f)
    if sol is None:
        return None
    # verify two-sided
    for j in range(k):
        left = [f.zero] * k
        right = [f.zero] * k
        for i in range(k):
            if sol[i]:
                for m, c in sc_rows[i][j]:
                    left[m] = f.add(left[m], f.mul(sol[i], c))
                for m, c in sc_rows[j][i]:
                    right[m] = f.add(right[m], f.mul(sol[i], c))
        expected = [f.one if m == j else f.zero for m in range(k)]
        if left != expected or right != expected:
            return None
    return tuple(sol)
