"""Full analysis pipeline over an instance, producing a deterministic report.

The report is a pure function of the instance and the cap configuration.
Internal cross-checks (two routes for the center, for commutativity, for the
commutant, and route-versus-oracle for simplicity) raise instead of
reporting, so an emitted report is always internally consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dynamics as dyn
from .crossed import (
    centralizer_of_R,
    center,
    commutant_CX,
    is_commutative,
    is_maximal_commutative,
    structure_algebra,
    subspace_basis_vectors,
    verify_associativity,
)
from .errors import CapacityError, DualRouteMismatch
from .instances import Instance
from .simplicity import (
    DEFAULT_ORACLE_CAP,
    decide_simplicity,
    equivalence_report,
)
from .twisted import (
    alpha_invariant_ideals,
    invariants_subring,
    is_alpha_simple,
    is_symmetric,
)


@dataclass
class AnalysisReport:
    payload: dict

    def to_json(self) -> dict:
        return self.payload


def _dynamics_block(instance: Instance, subset_cap: int) -> dict:
    system = instance.system
    n = system.size
    orbits = [sorted(dyn.partial_orbit(system, x)) for x in range(n)]
    transfer = dyn.transitivity_transfer(system)
    env = dyn.globalize(system)
    e = system.group.identity
    fixed = {
        str(g): sorted(dyn.fixed_set(system, g))
        for g in system.group.elements()
        if g != e
    }
    block = {
        "orbits": orbits,
        "transitive": dyn.is_transitive(system),
        "transitivity_criterion": dyn.transitivity_criterion(system),
        "minimal": dyn.is_minimal(system),
        "topologically_free": dyn.is_topologically_free(system),
        "periodic_points": sorted(dyn.periodic_points(system)),
        "fixed_sets": fixed,
        "enveloping": {
            "size": env.size,
            "beta": [list(row) for row in env.beta],
            "embed": list(env.embed),
            "transfer_agrees": transfer.partial_transitive == transfer.envelope_transitive,
        },
    }
    try:
        block["invariant_subsets"] = [
            sorted(S) for S in dyn.invariant_subsets(system, cap=subset_cap)
        ]
    except CapacityError:
        block["invariant_subsets"] = None
    if transfer.partial_transitive != transfer.envelope_transitive:
        raise DualRouteMismatch("transitivity transfer disagreement escaped its check")
    return block


def analyze(
    instance: Instance,
    oracle: str = "auto",
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    subset_cap: int = 16,
    seed: int = 0,
) -> AnalysisReport:
    """Validate, analyze the dynamics, build the algebra, decide simplicity."""
    system_report, twisted_report = instance.validate()
    payload: dict = {
        "name": instance.name,
        "field": instance.field_json,
        "group": instance.group_json,
        "validation": {
            "system": system_report.to_json(),
            "twisted": twisted_report.to_json() if twisted_report is not None else None,
        },
    }
    if not system_report.ok or twisted_report is None or not twisted_report.ok:
        payload["dynamics"] = None
        payload["algebra"] = None
        payload["simplicity"] = None
        payload["equivalences"] = None
        return AnalysisReport(payload)

    payload["dynamics"] = _dynamics_block(instance, subset_cap)

    action = instance.action()
    algebra = structure_algebra(action)
    assoc = verify_associativity(action)
    if not assoc.ok:
        raise DualRouteMismatch(f"a validated action must be associative: {assoc.detail}")
    centralizer = centralizer_of_R(action)
    center_basis = center(action)
    commutative = is_commutative(action)
    trivial_twist = action.has_trivial_cocycle()

    algebra_block = {
        "points": action.ring.size,
        "dimension": algebra.dim,
        "support_sizes": {
            str(g): len(action.supports[g]) for g in action.group.elements()
        },
        "associative_checked": assoc.checked,
        "commutative": commutative,
        "centralizer_dim": len(centralizer),
        "center_dim": len(center_basis),
        "center_basis": [el.to_json() for el in center_basis],
        "maximal_commutative": is_maximal_commutative(action),
        "alpha_simple": is_alpha_simple(action, cap=subset_cap),
        "symmetric_cocycle": is_symmetric(action),
        "invariants_dim": len(invariants_subring(action)),
        "invariant_ideal_count": len(alpha_invariant_ideals(action, cap=subset_cap)),
    }
    if trivial_twist:
        commutant = commutant_CX(action)
        matches = subspace_basis_vectors(algebra, commutant) == subspace_basis_vectors(
            algebra, centralizer
        )
        if not matches:
            raise DualRouteMismatch("commutant route disagrees with the centralizer route")
        algebra_block["commutant_dim"] = len(commutant)
        algebra_block["commutant_matches_centralizer"] = True
    else:
        algebra_block["commutant_dim"] = None
        algebra_block["commutant_matches_centralizer"] = None
    payload["algebra"] = algebra_block

    verdict = decide_simplicity(
        action, oracle=oracle, oracle_cap=oracle_cap, subset_cap=subset_cap, seed=seed
    )
    payload["simplicity"] = verdict.to_json()

    if trivial_twist:
        eq = equivalence_report(
            instance.system,
            instance.field,
            oracle=oracle,
            oracle_cap=oracle_cap,
            subset_cap=subset_cap,
        )
        payload["equivalences"] = eq.to_json()
    else:
        payload["equivalences"] = None
    return AnalysisReport(payload)


def render_text(report: AnalysisReport) -> str:
    """Human-oriented flat rendering; the JSON form is the canonical one."""
    p = report.payload
    lines = [f"instance: {p['name']}"]
    validation = p["validation"]
    system_ok = validation["system"]["ok"]
    twisted_ok = validation["twisted"]["ok"] if validation["twisted"] else False
    lines.append(f"valid: system={system_ok} twisted={twisted_ok}")
    if not (system_ok and twisted_ok):
        source = validation["system"] if not system_ok else validation["twisted"]
        for failure in source["failures"]:
            lines.append(f"  failure: {failure}")
        return "\n".join(lines) + "\n"
    d = p["dynamics"]
    lines.append(
        "dynamics: transitive={transitive} minimal={minimal} topologically_free={topologically_free}".format(
            **d
        )
    )
    lines.append(f"  orbits: {d['orbits']}")
    lines.append(f"  periodic points: {d['periodic_points']}")
    lines.append(f"  enveloping size: {d['enveloping']['size']}")
    a = p["algebra"]
    lines.append(
        f"algebra: dim={a['dimension']} commutative={a['commutative']} "
        f"centralizer={a['centralizer_dim']} center={a['center_dim']}"
    )
    lines.append(
        f"  maximal_commutative={a['maximal_commutative']} alpha_simple={a['alpha_simple']} "
        f"symmetric={a['symmetric_cocycle']} invariants_dim={a['invariants_dim']}"
    )
    s = p["simplicity"]
    lines.append(f"simplicity: simple={s['simple']} route={s['route']}")
    if s["witness"] is not None:
        lines.append(f"  witness: {s['witness']}")
    if s["oracle_agreement"] is not None:
        lines.append(f"  oracle agreement: {s['oracle_agreement']}")
    if p["equivalences"] is not None:
        e = p["equivalences"]
        lines.append(
            f"equivalences: minimal={e['minimal']} condition_ii={e['condition_ii']} simple={e['simple']}"
        )
        for key, value in sorted(e["implications"].items()):
            lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"
