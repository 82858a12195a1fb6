"""h-vertex-cut / h-edge-cut predicates and the canonical cut certificates.

A set ``S`` of vertices (``F`` of edges) is an h-cut of a connected graph
``G`` when ``G - S`` (``G - F``) has at least two nonempty components and
every remaining vertex keeps at least ``h`` neighbours.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Iterable

from .topology import NotAnEdge, Topology, TopologyParams, build_eh, iso_swap_map

VERTEX_CUT = "vertex-cut"
EDGE_CUT = "edge-cut"
PROVENANCES = ("canonical", "solver", "user")


def formula_value(s: int, h: int) -> int:
    """2^h (s + 1 - h)."""
    return (1 << h) * (s + 1 - h)


def _check_range(params: TopologyParams, h: int):
    if params.s > params.t:
        raise ValueError(f"canonical certificates need s <= t (got s={params.s}, t={params.t})")
    if not 0 <= h <= params.s:
        raise ValueError(f"h must satisfy 0 <= h <= s (got h={h}, s={params.s})")


def _norm_edge(e) -> tuple[int, int]:
    u, v = e
    return (u, v) if u < v else (v, u)


@dataclasses.dataclass(frozen=True)
class CutCertificate:
    kind: str
    h: int
    members: tuple
    provenance: str
    topology: str
    bits: int
    params: TopologyParams | None = None

    def __post_init__(self):
        if self.kind not in (VERTEX_CUT, EDGE_CUT):
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.kind == EDGE_CUT:
            members = tuple(sorted({_norm_edge(e) for e in self.members}))
        else:
            members = tuple(sorted(set(self.members)))
        if len(members) != len(self.members):
            raise ValueError("certificate members are not distinct")
        object.__setattr__(self, "members", members)

    @property
    def claimed_size(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def label(self, v: int) -> str:
        return format(v, f"0{self.bits}b")

    def to_record(self) -> dict:
        if self.kind == VERTEX_CUT:
            members = [self.label(v) for v in self.members]
        else:
            members = [[self.label(u), self.label(v)] for u, v in self.members]
        params = None
        if self.params is not None:
            params = {"s": self.params.s, "t": self.params.t}
        return {
            "kind": self.kind,
            "h": self.h,
            "topology": self.topology,
            "params": params,
            "members": members,
            "size": self.claimed_size,
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def from_record(cls, record: dict) -> CutCertificate:
        params = record.get("params")
        params = TopologyParams(params["s"], params["t"]) if params else None
        if record["kind"] == VERTEX_CUT:
            members = [int(m, 2) for m in record["members"]]
            bits = len(record["members"][0]) if record["members"] else (params.bits if params else 1)
        else:
            members = [(int(a, 2), int(b, 2)) for a, b in record["members"]]
            bits = len(record["members"][0][0]) if record["members"] else (params.bits if params else 1)
        cert = cls(record["kind"], record["h"], tuple(members), record["provenance"],
                   record["topology"], bits, params)
        if cert.claimed_size != record["size"]:
            raise ValueError(f"record size {record['size']} != member count {cert.claimed_size}")
        return cert

    @classmethod
    def for_graph(cls, g: Topology, kind: str, h: int, members: Iterable, provenance: str):
        return cls(kind, h, tuple(members), provenance, g.name, g.bits, g.params)


def canonical_core(params: TopologyParams, h: int) -> list[int]:
    """The 2^h vertices whose rightmost s+t+1-h bits are zero; they induce a Q_h."""
    _check_range(params, h)
    shift = params.bits - h
    return [x << shift for x in range(1 << h)]


def neighbourhood(g: Topology, core: Iterable[int]) -> list[int]:
    core = set(core)
    return sorted({w for v in core for w in g.adjacency[v]} - core)


def boundary_edges(g: Topology, side: Iterable[int]) -> list[tuple[int, int]]:
    side = set(side)
    return sorted(_norm_edge((v, w)) for v in side for w in g.adjacency[v] if w not in side)


def _canonical_graph(params: TopologyParams, g: Topology | None) -> Topology:
    if g is None:
        return build_eh(params)
    if g.params != params:
        raise ValueError(f"topology {g.name} does not match EH({params.s},{params.t})")
    return g


def canonical_vertex_cut(params: TopologyParams, h: int, g: Topology | None = None) -> CutCertificate:
    """S = N(X) for the canonical core X."""
    core = canonical_core(params, h)
    g = _canonical_graph(params, g)
    return CutCertificate.for_graph(g, VERTEX_CUT, h, neighbourhood(g, core), "canonical")


def canonical_edge_cut(params: TopologyParams, h: int, g: Topology | None = None) -> CutCertificate:
    """F = all edges between the canonical core X and S = N(X)."""
    core = canonical_core(params, h)
    g = _canonical_graph(params, g)
    return CutCertificate.for_graph(g, EDGE_CUT, h, boundary_edges(g, core), "canonical")


def hypercube_core(n: int, h: int) -> list[int]:
    """Subcube ``*^h 0^(n-h)`` of Q_n."""
    if not 0 <= h <= n:
        raise ValueError(f"h must satisfy 0 <= h <= n (got h={h}, n={n})")
    return [x << (n - h) for x in range(1 << h)]


def canonical_certificate(g: Topology, h: int, kind: str) -> CutCertificate | None:
    """Best known explicit h-cut for a built-in topology, or None.

    EH(s, t) with s > t is handled by carrying the EH(t, s) certificate
    across the block-swap isomorphism.
    """
    if g.kind in ("EH", "DC"):
        p = g.params
        if p.s <= p.t:
            if not 0 <= h <= p.s:
                return None
            core = canonical_core(p, h)
        else:
            q = p.swapped()
            if not 0 <= h <= q.s:
                return None
            core = [iso_swap_map(q, v) for v in canonical_core(q, h)]
    elif g.kind == "Qn":
        if not 0 <= h < g.order:
            return None
        core = hypercube_core(g.order, h)
    else:
        return None
    if kind == VERTEX_CUT:
        members = neighbourhood(g, core)
    else:
        members = boundary_edges(g, core)
    return CutCertificate.for_graph(g, kind, h, members, "canonical")


@dataclasses.dataclass(frozen=True)
class ResidualProfile:
    num_components: int
    component_sizes: tuple[int, ...]
    min_degree: int | None  # None for the empty graph


def _is_edge_collection(removed) -> bool:
    for item in removed:
        return not isinstance(item, int)
    return False


def residual_profile(g: Topology, removed: Iterable = ()) -> ResidualProfile:
    """Components and minimum degree of ``g`` minus a vertex set or an edge set."""
    removed = list(removed)
    n = g.num_vertices
    alive = [True] * n
    cut_edges: set[tuple[int, int]] = set()
    if _is_edge_collection(removed):
        for e in removed:
            u, v = _norm_edge(e)
            if not g.has_edge(u, v):
                raise NotAnEdge(f"({u}, {v}) is not an edge of {g.name}")
            cut_edges.add((u, v))
    else:
        for v in removed:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} not in {g.name}")
            alive[v] = False

    def live_nbrs(u):
        for w in g.adjacency[u]:
            if alive[w] and not (cut_edges and _norm_edge((u, w)) in cut_edges):
                yield w

    min_deg = None
    seen = [False] * n
    comps = []  # (size, smallest id)
    for root in range(n):
        if not alive[root] or seen[root]:
            continue
        seen[root] = True
        stack = [root]
        size = 0
        while stack:
            u = stack.pop()
            size += 1
            deg = 0
            for w in live_nbrs(u):
                deg += 1
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
            if min_deg is None or deg < min_deg:
                min_deg = deg
        comps.append((size, root))
    comps.sort(key=lambda c: (-c[0], c[1]))
    return ResidualProfile(len(comps), tuple(c[0] for c in comps), min_deg)


def is_h_vertex_cut(g: Topology, S: Iterable[int], h: int) -> bool:
    prof = residual_profile(g, [int(v) for v in S])
    return prof.num_components >= 2 and prof.min_degree >= h


def is_h_edge_cut(g: Topology, F: Iterable[tuple[int, int]], h: int) -> bool:
    prof = residual_profile(g, [tuple(e) for e in F])
    return prof.num_components >= 2 and prof.min_degree >= h


def check_certificate(g: Topology, cert: CutCertificate) -> bool:
    if cert.kind == VERTEX_CUT:
        return is_h_vertex_cut(g, cert.members, cert.h)
    return is_h_edge_cut(g, cert.members, cert.h)
