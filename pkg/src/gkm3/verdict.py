"""The combined realizability verdict for a labelled 3-valent graph.

The report walks the decision ladder:

  invalid                   the abstract-graph axioms or effectivity fail
  not-gkm                   no compatible connection exists
  not-realizable            rational Poincare duality fails
  rational-gkm-realizable   duality holds over Q
  integer-gkm-realizable    additionally the integral classes are free
  rigid-class               additionally every isotropy is connected
                            (primitive weights, unit pair determinants)

Orientability and the glued surface are reported alongside but do not gate
the ladder.  All numeric content is exact.
"""

from __future__ import annotations

from . import cohomology
from .connection import available_connections, loop_holonomy
from .graph import GkmGraph, connected_isotropy_check, validate
from .orientation import is_orientable
from .surface import classify_surface

__all__ = ["SCHEMA", "realizability_report"]

SCHEMA = "gkm3.verdict/1"


def _identity(mat) -> bool:
    n = mat.shape[0]
    return all(
        mat[i, j] == (1 if i == j else 0) for i in range(n) for j in range(n)
    )


def realizability_report(
    g: GkmGraph,
    degree_cap: int = cohomology.DEFAULT_DEGREE_CAP,
    connection_index: int = 0,
) -> dict:
    """Full JSON-serializable report; see the module docstring for the tiers.

    connection_index selects which compatible connection drives the
    connection-dependent sections (orientability, surface, holonomy); a
    file-supplied connection is always index 0.
    """
    report: dict = {
        "schema": SCHEMA,
        "name": g.name,
        "options": {"degree_cap": degree_cap, "connection_index": connection_index},
        "warnings": list(g.warnings),
        "findings": [],
    }

    validity = validate(g)
    report["validity"] = {
        "ok": validity.ok,
        "failures": [dict(f) for f in validity.failures],
    }
    if not validity.ok:
        report.update(
            connections=None, orientability=None, betti=None,
            poincare_duality=None, z_freeness=None, connected_isotropy=None,
            surface=None, tier="invalid",
        )
        return report

    conns, explicit = available_connections(g)
    report["connections"] = {"count": len(conns), "explicit": explicit}

    betti = cohomology.betti_numbers(g, degree_cap)
    report["betti"] = list(betti.betti)
    if not betti.stabilized:
        report["warnings"].append(
            "betti numbers did not stabilize below the degree cap"
        )
    pd = cohomology.poincare_duality(g, degree_cap)
    report["poincare_duality"] = {
        "ok": pd.ok,
        "pairing_rank": pd.pairing_rank,
        "reasons": list(pd.reasons),
    }
    freeness = cohomology.z_freeness(g, degree_cap)
    report["z_freeness"] = {
        "status": freeness.status,
        "witness": freeness.witness,
    }
    isotropy = connected_isotropy_check(g)
    report["connected_isotropy"] = isotropy

    if not conns:
        report.update(orientability=None, surface=None, tier="not-gkm")
        if pd.ok:
            report["findings"].append(
                "poincare duality holds but no compatible connection exists"
            )
        return report

    if not 0 <= connection_index < len(conns):
        raise IndexError(
            f"connection index {connection_index} out of range ({len(conns)})"
        )
    primary = conns[connection_index]
    orient_all = [is_orientable(g, c).orientable for c in conns]
    orient = is_orientable(g, primary)
    report["orientability"] = {
        "orientable": orient.orientable,
        "eta": {str(k): v for k, v in sorted(orient.eta.items())},
        "potential": dict(orient.potential) if orient.potential else None,
        "violating_cycle": (
            list(orient.violating_cycle)
            if orient.violating_cycle is not None
            else None
        ),
        "consistent_across_connections": len(set(orient_all)) == 1,
    }
    if len(set(orient_all)) != 1:
        report["warnings"].append(
            "orientability differs between compatible connections"
        )

    surf = classify_surface(g, primary)
    report["surface"] = {
        "closed": surf.closed,
        "euler_characteristic": surf.euler_characteristic,
        "orientable": surf.orientable,
        "genus": surf.genus,
        "crosscaps": surf.crosscaps,
        "name": surf.name,
        "face_lengths": list(surf.face_lengths),
    }
    holonomy_trivial = all(
        _identity(loop_holonomy(g, primary, p)) for p in surf.faces
    )
    report["connections"]["loop_holonomy_trivial"] = holonomy_trivial
    if orient.orientable and not holonomy_trivial:
        report["findings"].append(
            "internal inconsistency: orientable but nontrivial loop holonomy"
        )

    if pd.ok and not orient.orientable:
        report["findings"].append(
            "internal inconsistency: poincare duality holds for a "
            "nonorientable connection"
        )
        raise RuntimeError(
            "poincare duality certified for a nonorientable connection; "
            "this combination should be impossible"
        )

    if not pd.ok:
        tier = "not-realizable"
    elif freeness.status != "certified":
        tier = "rational-gkm-realizable"
    elif not isotropy["ok"]:
        tier = "integer-gkm-realizable"
        report["warnings"].append(
            "disconnected isotropy: the integral realization need not be "
            "unique up to equivalence"
        )
    else:
        tier = "rigid-class"
    report["tier"] = tier
    return report
