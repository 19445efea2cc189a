"""Data model, parsing and axiom-level validation of rank-2 labelled graphs.

A graph file is a JSON object with fields `vertices` (list of strings),
`edges` (list of `{from, to, weight: [a, b]}` objects), an optional
`connection` block (see :mod:`gkm3.connection`) and an optional `name`.
Edge identity is positional: the stable id of an edge is its index in the
input list, so parallel edges are distinguishable.  Weight lifts are
canonicalized at parse time so that the first nonzero coordinate is
positive; all lift-dependent outputs elsewhere are relative to this
canonical lift.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping, Optional, Sequence, Tuple

__all__ = [
    "Weight",
    "Edge",
    "DirectedEdge",
    "GkmGraph",
    "ValidationReport",
    "GraphSyntaxError",
    "GraphSemanticError",
    "parse_graph",
    "serialize_graph",
    "validate",
    "connected_isotropy_check",
]


class GraphSyntaxError(ValueError):
    """Raised when a graph file is not well-formed (position-reported)."""


class GraphSemanticError(ValueError):
    """Raised for well-formed input with invalid content (zero weight etc.)."""


@dataclass(frozen=True)
class Weight:
    """A character of the 2-torus: a sign lift in Z^2 of a class in Z^2/±1."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise GraphSemanticError("zero weight is not allowed")

    @staticmethod
    def canonical(a: int, b: int) -> "Weight":
        """The lift whose first nonzero coordinate is positive."""
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return Weight(a, b)

    @property
    def vector(self) -> Tuple[int, int]:
        return (self.a, self.b)

    def negated(self) -> "Weight":
        return Weight(-self.a, -self.b)

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b) == 1

    def content(self) -> int:
        return math.gcd(self.a, self.b)


def det2(w1: Weight, w2: Weight) -> int:
    return w1.a * w2.b - w1.b * w2.a


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    weight: Weight


@dataclass(frozen=True)
class DirectedEdge:
    """An edge with a direction flag; forward means stored u -> stored v."""

    edge_id: int
    forward: bool = True

    def reversed(self) -> "DirectedEdge":
        return DirectedEdge(self.edge_id, not self.forward)


@dataclass(frozen=True)
class GkmGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    name: Optional[str] = None
    connection_block: Optional[Mapping[str, Any]] = None
    warnings: Tuple[str, ...] = ()

    @cached_property
    def vertex_index(self) -> Mapping[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def incident(self) -> Mapping[str, Tuple[int, ...]]:
        """Incident edge ids per vertex, in input edge order."""
        inc = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            inc[e.u].append(i)
            if e.v != e.u:
                inc[e.v].append(i)
        return {v: tuple(ids) for v, ids in inc.items()}

    @property
    def valence(self) -> int:
        if not self.vertices:
            return 0
        return len(self.incident[self.vertices[0]])

    def source(self, e: DirectedEdge) -> str:
        edge = self.edges[e.edge_id]
        return edge.u if e.forward else edge.v

    def target(self, e: DirectedEdge) -> str:
        edge = self.edges[e.edge_id]
        return edge.v if e.forward else edge.u

    def directed(self, edge_id: int, source: str) -> DirectedEdge:
        edge = self.edges[edge_id]
        if source == edge.u:
            return DirectedEdge(edge_id, True)
        if source == edge.v:
            return DirectedEdge(edge_id, False)
        raise ValueError(f"vertex {source!r} is not an endpoint of edge {edge_id}")

    def with_weights(self, weights: Sequence[Weight]) -> "GkmGraph":
        """Copy with replaced weight lifts (used for lift-invariance checks)."""
        edges = tuple(Edge(e.u, e.v, w) for e, w in zip(self.edges, weights))
        return GkmGraph(self.vertices, edges, self.name, self.connection_block)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: Tuple[Mapping[str, Any], ...] = field(default_factory=tuple)


_KNOWN_FIELDS = {"vertices", "edges", "weight", "from", "to", "connection", "name"}


def parse_graph(text: str) -> GkmGraph:
    """Parses a graph file, canonicalizing weight lifts.

    Raises GraphSyntaxError for malformed JSON (with position) and
    GraphSemanticError for unknown vertices, zero weights and the like.
    Unknown fields are recorded as warnings on the returned graph.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise GraphSyntaxError("top-level value must be an object")

    warnings = [f"unknown field {k!r}" for k in data if k not in _KNOWN_FIELDS]
    vertices = data.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphSemanticError("'vertices' must be a list of strings")
    if len(set(vertices)) != len(vertices):
        raise GraphSemanticError("duplicate vertex names")
    vset = set(vertices)

    raw_edges = data.get("edges")
    if not isinstance(raw_edges, list):
        raise GraphSemanticError("'edges' must be a list")
    edges = []
    for i, rec in enumerate(raw_edges):
        if not isinstance(rec, dict):
            raise GraphSemanticError(f"edge {i}: must be an object")
        warnings += [
            f"edge {i}: unknown field {k!r}" for k in rec if k not in _KNOWN_FIELDS
        ]
        u, v, w = rec.get("from"), rec.get("to"), rec.get("weight")
        if u not in vset:
            raise GraphSemanticError(f"edge {i}: unknown vertex name {u!r}")
        if v not in vset:
            raise GraphSemanticError(f"edge {i}: unknown vertex name {v!r}")
        if (
            not isinstance(w, list)
            or len(w) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in w)
        ):
            raise GraphSemanticError(f"edge {i}: weight must be a pair of integers")
        if w == [0, 0]:
            raise GraphSemanticError(f"edge {i}: zero weight")
        edges.append(Edge(u, v, Weight.canonical(w[0], w[1])))

    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise GraphSemanticError("'name' must be a string")
    conn = data.get("connection")
    if conn is not None and not isinstance(conn, dict):
        raise GraphSemanticError("'connection' must be an object")

    return GkmGraph(tuple(vertices), tuple(edges), name, conn, tuple(warnings))


def serialize_graph(g: GkmGraph) -> str:
    data: dict = {
        "vertices": list(g.vertices),
        "edges": [
            {"from": e.u, "to": e.v, "weight": [e.weight.a, e.weight.b]}
            for e in g.edges
        ],
    }
    if g.name is not None:
        data["name"] = g.name
    if g.connection_block is not None:
        data["connection"] = g.connection_block
    return json.dumps(data, indent=2)


def _components(g: GkmGraph) -> list:
    seen: set = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            v = stack.pop()
            for eid in g.incident[v]:
                e = g.edges[eid]
                w = e.v if e.u == v else e.u
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def validate(g: GkmGraph) -> ValidationReport:
    """Checks the abstract-graph axioms and effectivity.

    Covered: constant valence, loop-freeness, connectivity, pairwise linear
    independence of the weights at every vertex, and effectivity (the
    incident weights at every vertex generate the full lattice Z^2, i.e.
    both elementary divisors of the 2xn weight matrix are 1).
    """
    from . import linalg

    failures = []
    if not g.vertices:
        return ValidationReport(False, ({"kind": "disconnected", "components": []},))

    for i, e in enumerate(g.edges):
        if e.u == e.v:
            failures.append({"kind": "loop", "edge": i})

    n = g.valence
    for v in g.vertices:
        if len(g.incident[v]) != n:
            failures.append(
                {"kind": "valence", "vertex": v, "found": len(g.incident[v]),
                 "expected": n}
            )

    comps = _components(g)
    if len(comps) > 1:
        failures.append(
            {"kind": "disconnected", "components": [sorted(c) for c in comps]}
        )

    for v in g.vertices:
        ids = g.incident[v]
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                if det2(g.edges[ids[x]].weight, g.edges[ids[y]].weight) == 0:
                    failures.append(
                        {"kind": "dependence-at-vertex", "vertex": v,
                         "edges": [ids[x], ids[y]]}
                    )
        cols = [g.edges[i].weight.vector for i in ids]
        if cols:
            divisors = linalg.elementary_divisors(
                linalg.zmat([[c[0] for c in cols], [c[1] for c in cols]])
            )
            if divisors != [1, 1]:
                failures.append(
                    {"kind": "ineffective", "vertex": v,
                     "elementary_divisors": divisors}
                )
    return ValidationReport(not failures, tuple(failures))


def connected_isotropy_check(g: GkmGraph) -> dict:
    """Primitivity of every weight and unit pair determinants at every vertex.

    ok is True iff every weight is primitive and, for every vertex and every
    pair of incident edges, the two weights form a Z-basis (|det| = 1).
    """
    failing = []
    for i, e in enumerate(g.edges):
        if not e.weight.is_primitive():
            failing.append({"kind": "imprimitive", "edge": i,
                            "content": e.weight.content()})
    for v in g.vertices:
        ids = g.incident[v]
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                d = det2(g.edges[ids[x]].weight, g.edges[ids[y]].weight)
                if abs(d) != 1:
                    failing.append(
                        {"kind": "pair", "vertex": v,
                         "edges": [ids[x], ids[y]], "det": d}
                    )
    return {"ok": not failing, "failing_pairs": failing}
