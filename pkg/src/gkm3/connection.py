"""Compatible connections: enumeration, transition calculus and paths.

A connection assigns to every directed edge e: v -> w a bijection of the
incident edge sets E_v -> E_w fixing e, with reversal acting by inversion.
Compatibility means every transported label satisfies, over the canonical
sign lifts, weight(f') = eps * weight(f) + k * weight(e) with eps = ±1 and
k an integer.  The coefficient solver uses exact determinant formulas

    eps = det(w(f'), w(e)) / det(w(f), w(e))
    k   = det(w(f),  w(f')) / det(w(f), w(e))

and then filters for eps in {±1} and integral k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .graph import DirectedEdge, GkmGraph, GraphSemanticError, Weight, det2

__all__ = [
    "Connection",
    "TransitionData",
    "ConnectionPath",
    "transport_coefficients",
    "enumerate_connections",
    "connection_from_block",
    "available_connections",
    "transition",
    "connection_paths",
    "loop_holonomy",
]


def transport_coefficients(
    wf: Weight, wfp: Weight, we: Weight
) -> Optional[Tuple[int, int]]:
    """Solves weight(f') = eps*weight(f) + k*weight(e); None if not compatible.

    The pair (wf, we) is assumed linearly independent (a validated graph
    guarantees this for distinct incident edges).
    """
    den = det2(wf, we)
    if den == 0:
        raise ValueError("weights of f and e are linearly dependent")
    eps = Fraction(det2(wfp, we), den)
    k = Fraction(det2(wf, wfp), den)
    if eps not in (1, -1) or k.denominator != 1:
        return None
    return int(eps), int(k)


@dataclass(frozen=True)
class Connection:
    """For each directed edge, the incident-edge bijection, by stable ids.

    maps[(edge_id, forward)] is a tuple of pairs (source incident edge id,
    target incident edge id); the two directions are mutually inverse.
    """

    maps: Mapping[Tuple[int, bool], Tuple[Tuple[int, int], ...]]

    def apply(self, e: DirectedEdge, f: int) -> int:
        for a, b in self.maps[(e.edge_id, e.forward)]:
            if a == f:
                return b
        raise KeyError(f"edge {f} is not incident to the source of {e}")

    def as_dict(self, e: DirectedEdge) -> Dict[int, int]:
        return dict(self.maps[(e.edge_id, e.forward)])

    @staticmethod
    def from_forward_maps(
        g: GkmGraph, forward: Mapping[int, Mapping[int, int]]
    ) -> "Connection":
        maps = {}
        for eid, fmap in forward.items():
            items = tuple(sorted(fmap.items()))
            maps[(eid, True)] = items
            maps[(eid, False)] = tuple(sorted((b, a) for a, b in items))
        return Connection(maps)


def _compatible_bijections(g: GkmGraph, eid: int) -> List[Dict[int, int]]:
    """All compatible E_u -> E_v bijections for the forward direction of eid."""
    e = g.edges[eid]
    we = e.weight
    src = [f for f in g.incident[e.u] if f != eid]
    tgt = [f for f in g.incident[e.v] if f != eid]
    allowed = {
        f: [
            fp
            for fp in tgt
            if transport_coefficients(g.edges[f].weight, g.edges[fp].weight, we)
            is not None
        ]
        for f in src
    }
    out = []
    for perm in itertools.permutations(tgt):
        if all(fp in allowed[f] for f, fp in zip(src, perm)):
            m = dict(zip(src, perm))
            m[eid] = eid
            out.append(m)
    return out


def enumerate_connections(g: GkmGraph) -> List[Connection]:
    """All compatible connections of g, in a deterministic order.

    Per-edge choices are independent, so the result is the cartesian product
    of the per-edge compatible bijections (one direction per edge; the
    reverse direction is determined by inversion).  An empty list is the
    verdict that g is not a GKM graph.
    """
    per_edge = [_compatible_bijections(g, eid) for eid in range(len(g.edges))]
    if any(not options for options in per_edge):
        return []
    out = []
    for choice in itertools.product(*per_edge):
        out.append(
            Connection.from_forward_maps(g, {eid: m for eid, m in enumerate(choice)})
        )
    return out


def connection_from_block(g: GkmGraph, block: Mapping) -> Connection:
    """Builds and checks a connection from a graph file `connection` block.

    The block maps stringified edge ids to {"forward": {src id: tgt id},
    "backward": {...}} where backward is optional and checked as the
    inverse.  Compatibility is validated on load.
    """
    forward: Dict[int, Dict[int, int]] = {}
    for key, entry in block.items():
        try:
            eid = int(key)
        except ValueError:
            raise GraphSemanticError(f"connection: bad edge id {key!r}")
        if eid < 0 or eid >= len(g.edges):
            raise GraphSemanticError(f"connection: edge id {eid} out of range")
        fmap = {int(a): int(b) for a, b in entry.get("forward", {}).items()}
        forward[eid] = fmap
    if set(forward) != set(range(len(g.edges))):
        raise GraphSemanticError("connection: every edge needs a forward map")

    for eid, fmap in forward.items():
        e = g.edges[eid]
        src, tgt = g.incident[e.u], g.incident[e.v]
        if sorted(fmap) != sorted(src) or sorted(fmap.values()) != sorted(tgt):
            raise GraphSemanticError(
                f"connection: edge {eid} map is not a bijection E_u -> E_v"
            )
        if fmap[eid] != eid:
            raise GraphSemanticError(f"connection: edge {eid} must be fixed")
        for f, fp in fmap.items():
            if f == eid:
                continue
            if (
                transport_coefficients(
                    g.edges[f].weight, g.edges[fp].weight, e.weight
                )
                is None
            ):
                raise GraphSemanticError(
                    f"connection: edge {eid} transports {f} -> {fp} incompatibly"
                )
        back = block[str(eid)].get("backward")
        if back is not None:
            if {int(a): int(b) for a, b in back.items()} != {
                b: a for a, b in fmap.items()
            }:
                raise GraphSemanticError(
                    f"connection: edge {eid} backward map is not the inverse"
                )
    conn = Connection.from_forward_maps(g, forward)
    return conn


def available_connections(g: GkmGraph) -> Tuple[List[Connection], bool]:
    """(connections, explicit) with a file-supplied connection first."""
    enumerated = enumerate_connections(g)
    if g.connection_block is None:
        return enumerated, False
    explicit = connection_from_block(g, g.connection_block)
    rest = [c for c in enumerated if c.maps != explicit.maps]
    return [explicit] + rest, True


@dataclass(frozen=True)
class TransitionData:
    """Bookkeeping for one directed edge e: v -> w.

    sigma is the edge-order transport permutation relative to the stored
    incidence orders (sigma[i] = j means the i-th edge at v is carried to
    the j-th edge at w, 0-based).  eps[i], k[i] are the transport
    coefficients, with eps = 1, k = 0 at the index of e itself.  phi is the
    assembled GL(n, Z) matrix carrying the stacked weight rows at v to the
    sigma-permuted weight rows at w.
    """

    edge: DirectedEdge
    sigma: Tuple[int, ...]
    eps: Tuple[int, ...]
    k: Tuple[int, ...]
    phi: Tuple[Tuple[int, ...], ...]

    @property
    def det_phi(self) -> int:
        return _det3(self.phi)

    @property
    def sign_sigma(self) -> int:
        return _perm_sign(self.sigma)


def _perm_sign(sigma: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det3(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [[m[i][c] for c in range(n) if c != j] for i in range(1, n)]
        total += (-1) ** j * m[0][j] * _det3(minor)
    return total


class ConnectionInconsistency(RuntimeError):
    """A validated connection produced inconsistent transition data."""


def transition(g: GkmGraph, conn: Connection, e: DirectedEdge) -> TransitionData:
    """Transition data of a directed edge under a compatible connection.

    The matrix entries follow the bookkeeping recipe: column j /= m carries
    eps_j in row sigma(j); column m carries 1 in row sigma(m) and the
    integers k in the remaining rows.  The weight-transport identity and
    det phi = ±1 are asserted.
    """
    v, w = g.source(e), g.target(e)
    src_ids, tgt_ids = g.incident[v], g.incident[w]
    n = len(src_ids)
    m = src_ids.index(e.edge_id)
    we = g.edges[e.edge_id].weight

    sigma, eps, k = [0] * n, [0] * n, [0] * n
    for i, f in enumerate(src_ids):
        fp = conn.apply(e, f)
        sigma[i] = tgt_ids.index(fp)
        if f == e.edge_id:
            eps[i], k[i] = 1, 0
            continue
        coeffs = transport_coefficients(g.edges[f].weight, g.edges[fp].weight, we)
        if coeffs is None:
            raise ConnectionInconsistency(
                f"incompatible transport along edge {e.edge_id}"
            )
        eps[i], k[i] = coeffs

    phi = [[0] * n for _ in range(n)]
    for j in range(n):
        phi[sigma[j]][j] = eps[j]
    for i in range(n):
        if i != sigma[m]:
            phi[i][m] = k[sigma.index(i)]

    # Weight-transport identity: phi @ (rows of weights at v) matches the
    # sigma-permuted rows of weights at w.
    for i in range(n):
        row = [
            sum(phi[i][j] * g.edges[src_ids[j]].weight.vector[c] for j in range(n))
            for c in range(2)
        ]
        if tuple(row) != g.edges[tgt_ids[i]].weight.vector:
            raise ConnectionInconsistency(
                f"weight transport identity fails along edge {e.edge_id}"
            )
    data = TransitionData(
        e, tuple(sigma), tuple(eps), tuple(k), tuple(tuple(r) for r in phi)
    )
    if data.det_phi not in (1, -1):
        raise ConnectionInconsistency(f"det phi = {data.det_phi} along {e.edge_id}")
    return data


@dataclass(frozen=True)
class ConnectionPath:
    """A cyclic sequence e_1, ..., e_n with e_{i+1} = transport of e_{i-1}.

    steps[i] is the directed edge e_{i+1} leaving its source vertex; the
    stored representative is the canonical one (lexicographically least over
    all rotations of both orientations).
    """

    steps: Tuple[DirectedEdge, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(s.edge_id for s in self.steps)

    def reversed_steps(self) -> Tuple[DirectedEdge, ...]:
        return tuple(s.reversed() for s in reversed(self.steps))

    @staticmethod
    def canonical(steps: Sequence[DirectedEdge]) -> "ConnectionPath":
        def rotations(seq):
            return [tuple(seq[i:]) + tuple(seq[:i]) for i in range(len(seq))]

        rev = tuple(s.reversed() for s in reversed(steps))
        key = lambda seq: [(s.edge_id, s.forward) for s in seq]
        best = min(rotations(steps) + rotations(rev), key=key)
        return ConnectionPath(best)


def connection_paths(g: GkmGraph, conn: Connection) -> List[ConnectionPath]:
    """All connection paths, deduplicated up to starting point and orientation.

    Iterates e_{i+1} = transport of e_{i-1} along e_i from every seed state
    (predecessor edge, directed edge) until the seed recurs.  For a 3-valent
    graph the path lengths sum to 2|E|.
    """
    if g.valence != 3:
        raise ValueError("connection paths are defined for 3-valent graphs")
    seen: set = set()
    out: Dict[Tuple, ConnectionPath] = {}
    for v in g.vertices:
        for prev in g.incident[v]:
            for cur in g.incident[v]:
                if cur == prev:
                    continue
                seed = (prev, g.directed(cur, v))
                if seed in seen:
                    continue
                steps = []
                state = seed
                while True:
                    p, d = state
                    seen.add(state)
                    steps.append(d)
                    nxt = conn.apply(d, p)
                    state = (d.edge_id, g.directed(nxt, g.target(d)))
                    if state == seed:
                        break
                path = ConnectionPath.canonical(steps)
                out.setdefault(tuple((s.edge_id, s.forward) for s in path.steps), path)
    paths = sorted(out.values(), key=lambda p: [(s.edge_id, s.forward) for s in p.steps])
    total = sum(len(p) for p in paths)
    if total != 2 * len(g.edges):
        raise ConnectionInconsistency(
            f"path lengths sum to {total}, expected {2 * len(g.edges)}"
        )
    return paths


def loop_holonomy(
    g: GkmGraph, conn: Connection, path: ConnectionPath
) -> np.ndarray:
    """Ordered product of the transition matrices around a connection path.

    Transition matrices are expressed in the stored incidence orders, so
    consecutive factors compose directly; the result maps the incident-edge
    coordinates at the starting vertex to themselves.
    """
    n = g.valence
    acc = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)],
                   dtype=object)
    for step in path.steps:
        phi = np.array(transition(g, conn, step).phi, dtype=object)
        acc = phi @ acc
    return acc
