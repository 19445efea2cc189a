"""Command-line front end.

Subcommands: validate, connections, orientability, cohomology, freeness,
surface, verdict, corpus.  Exit codes: 0 on success, 1 on a negative
verdict when --strict is given, 2 on input errors.  JSON output is
bit-exact (sorted keys, two-space indent); text output is a pure rendering
of the same data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple

from . import cohomology, verdict
from .connection import available_connections
from .graph import (
    DirectedEdge,
    GkmGraph,
    GraphSemanticError,
    GraphSyntaxError,
    parse_graph,
    validate,
)
from .orientation import is_orientable
from .surface import classify_surface

CORPUS_ENV = "GKM3_CORPUS"


class InputError(Exception):
    """User-input problem; reported on stderr with exit code 2."""


def _load(path: str) -> GkmGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_graph(text)
    except (GraphSyntaxError, GraphSemanticError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _pick_connection(g: GkmGraph, index: int):
    conns, _ = available_connections(g)
    if not conns:
        raise InputError("graph admits no compatible connection")
    if index < 0 or index >= len(conns):
        raise InputError(
            f"--connection {index} out of range (found {len(conns)})"
        )
    return conns[index]


def _dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _render_text(data, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(data)}")
    return lines


def _scalar(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def _emit(data, fmt: str) -> None:
    if fmt == "json":
        print(_dumps(data))
    else:
        print("\n".join(_render_text(data)))


# ---------------------------------------------------------------------------
# Subcommand implementations: each returns (payload, negative)
# ---------------------------------------------------------------------------

def _cmd_validate(args) -> Tuple[dict, bool]:
    g = _load(args.file)
    rep = validate(g)
    payload = {
        "name": g.name,
        "ok": rep.ok,
        "failures": [dict(f) for f in rep.failures],
        "warnings": list(g.warnings),
    }
    return payload, not rep.ok


def _cmd_connections(args) -> Tuple[dict, bool]:
    g = _load(args.file)
    rep = validate(g)
    if not rep.ok:
        raise InputError("graph is invalid; run `validate` for details")
    conns, explicit = available_connections(g)
    payload = {
        "name": g.name,
        "count": len(conns),
        "explicit": explicit,
        "connections": [
            {
                str(eid): {
                    "forward": {
                        str(a): b
                        for a, b in c.as_dict(DirectedEdge(eid, True)).items()
                    }
                }
                for eid in range(len(g.edges))
            }
            for c in conns
        ],
    }
    return payload, len(conns) == 0


def _cmd_orientability(args) -> Tuple[dict, bool]:
    g = _load(args.file)
    rep = validate(g)
    if not rep.ok:
        raise InputError("graph is invalid; run `validate` for details")
    conn = _pick_connection(g, args.connection)
    res = is_orientable(g, conn)
    payload = {
        "name": g.name,
        "connection": args.connection,
        "orientable": res.orientable,
        "eta": {str(k): v for k, v in sorted(res.eta.items())},
        "potential": dict(res.potential) if res.potential else None,
        "violating_cycle": (
            list(res.violating_cycle) if res.violating_cycle is not None else None
        ),
    }
    return payload, not res.orientable


def _cmd_cohomology(args) -> Tuple[dict, bool]:
    g = _load(args.file)
    rep = validate(g)
    if not rep.ok:
        raise InputError("graph is invalid; run `validate` for details")
    table = []
    betti = cohomology.betti_numbers(g, args.degree_cap)
    for d, b in enumerate(betti.betti):
        entry = {"degree": 2 * d, "betti": int(b)}
        if args.ring in ("q", "both"):
            entry["dim_q"] = int(cohomology.ht_basis_q(g, d).shape[0])
        if args.ring in ("z", "both"):
            entry["rank_z"] = int(cohomology.ht_basis_z(g, d).shape[0])
        table.append(entry)
    payload = {
        "name": g.name,
        "degree_cap": args.degree_cap,
        "ring": args.ring,
        "stabilized": betti.stabilized,
        "total_rank": betti.total,
        "table": table,
    }
    return payload, False


def _cmd_freeness(args) -> Tuple[dict, bool]:
    g = _load(args.file)
    rep = validate(g)
    if not rep.ok:
        raise InputError("graph is invalid; run `validate` for details")
    res = cohomology.z_freeness(g, args.degree_cap)
    payload = {
        "name": g.name,
        "degree_cap": args.degree_cap,
        "status": res.status,
        "checked_degrees": list(res.checked_degrees),
        "witness": res.witness,
    }
    return payload, res.status != "certified"


def _cmd_surface(args) -> Tuple[dict, bool]:
    g = _load(args.file)
    rep = validate(g)
    if not rep.ok:
        raise InputError("graph is invalid; run `validate` for details")
    conn = _pick_connection(g, args.connection)
    s = classify_surface(g, conn)
    payload = {
        "name": g.name,
        "connection": args.connection,
        "closed": s.closed,
        "cells": {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "faces": len(s.faces),
        },
        "face_lengths": list(s.face_lengths),
        "euler_characteristic": s.euler_characteristic,
        "orientable": s.orientable,
        "genus": s.genus,
        "crosscaps": s.crosscaps,
        "classification": s.name,
    }
    if args.emit_complex:
        payload["complex"] = {
            "polygons": [
                [
                    {"edge": step.edge_id, "forward": step.forward}
                    for step in path.steps
                ]
                for path in s.faces
            ]
        }
    return payload, not s.closed


def _cmd_verdict(args) -> Tuple[dict, bool]:
    g = _load(args.file)
    try:
        report = verdict.realizability_report(
            g, args.degree_cap, connection_index=args.connection
        )
    except IndexError as exc:
        raise InputError(str(exc)) from exc
    negative = report["tier"] in ("invalid", "not-gkm", "not-realizable")
    return report, negative


def _corpus_root(args) -> Path:
    if getattr(args, "root", None):
        return Path(args.root)
    env = os.environ.get(CORPUS_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("gkm3") / "corpus"))


def _diff_path(a, b, path: str = "$") -> Optional[str]:
    """First diverging field path between two JSON values, or None."""
    if type(a) is not type(b):
        return path
    if isinstance(a, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                return f"{path}.{k}"
            p = _diff_path(a[k], b[k], f"{path}.{k}")
            if p:
                return p
        return None
    if isinstance(a, list):
        if len(a) != len(b):
            return f"{path}.length"
        for i, (x, y) in enumerate(zip(a, b)):
            p = _diff_path(x, y, f"{path}[{i}]")
            if p:
                return p
        return None
    return None if a == b else path


def _cmd_corpus(args) -> Tuple[dict, bool]:
    root = _corpus_root(args)
    if not root.is_dir():
        raise InputError(f"corpus root {root} is not a directory")
    graph_files = sorted(
        p for p in root.glob("*.json") if not p.name.endswith(".golden.json")
    )
    if not graph_files:
        return {"root": str(root), "entries": [], "ok": False,
                "error": "no entries"}, True
    entries = []
    ok = True
    for gf in graph_files:
        golden_path = gf.with_name(gf.stem + ".golden.json")
        entry = {"name": gf.stem, "file": str(gf)}
        try:
            g = _load(str(gf))
            report = verdict.realizability_report(g)
            if not golden_path.exists():
                entry.update(status="fail", error="missing golden file")
                ok = False
            else:
                golden = json.loads(golden_path.read_text())
                diverging = _diff_path(json.loads(_dumps(report)), golden)
                if diverging is None:
                    entry["status"] = "pass"
                else:
                    entry.update(status="fail", first_diverging_field=diverging)
                    ok = False
        except (InputError, GraphSyntaxError, GraphSemanticError) as exc:
            entry.update(status="fail", error=str(exc))
            ok = False
        entries.append(entry)
    return {"root": str(root), "entries": entries, "ok": ok}, not ok


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkm3",
        description="Exact realizability checks for 3-valent rank-2 GKM graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file=True, connection=False, degree_cap=False):
        if file:
            p.add_argument("file", help="graph JSON file")
        if connection:
            p.add_argument("--connection", type=int, default=0,
                           help="index of the compatible connection (default 0)")
        if degree_cap:
            p.add_argument("--degree-cap", type=int,
                           default=cohomology.DEFAULT_DEGREE_CAP,
                           help="maximum cohomological degree (even, default 20)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--strict", action="store_true",
                       help="exit 1 on a negative verdict")

    common(sub.add_parser("validate", help="check the abstract-graph axioms"))
    common(sub.add_parser("connections", help="enumerate compatible connections"))
    common(sub.add_parser("orientability", help="decide orientability"),
           connection=True)
    coh = sub.add_parser("cohomology", help="dimension/rank table")
    coh.add_argument("--ring", choices=("q", "z", "both"), default="both")
    common(coh, degree_cap=True)
    common(sub.add_parser("freeness", help="integral freeness certificate"),
           degree_cap=True)
    surf = sub.add_parser("surface", help="classify the glued surface")
    surf.add_argument("--emit-complex", action="store_true",
                      help="include the polygon-gluing presentation")
    common(surf, connection=True)
    common(sub.add_parser("verdict", help="full realizability report"),
           connection=True, degree_cap=True)
    corpus = sub.add_parser("corpus", help="check bundled corpus against goldens")
    corpus.add_argument("--root", help="corpus directory (overrides bundled)")
    common(corpus, file=False)
    return parser


_COMMANDS = {
    "validate": _cmd_validate,
    "connections": _cmd_connections,
    "orientability": _cmd_orientability,
    "cohomology": _cmd_cohomology,
    "freeness": _cmd_freeness,
    "surface": _cmd_surface,
    "verdict": _cmd_verdict,
    "corpus": _cmd_corpus,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "degree_cap", 0) % 2:
        print("error: --degree-cap must be even", file=sys.stderr)
        return 2
    try:
        payload, negative = _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.format)
    return 1 if (negative and args.strict) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
