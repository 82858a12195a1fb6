"""Exact classical and h-restricted connectivity at desk scale.

Classical kappa and lambda come from unit-capacity max-flow (Menger).
The restricted versions are searched exhaustively below an explicit upper
bound, normally the canonical certificate of size 2^h (s + 1 - h):

* kappa^(h): vertex subsets are enumerated by ascending size, then
  lexicographically, and tested directly.  There is no fragment reduction
  for vertex cuts, because the degree condition can force a minimum h-cut
  to be a strict superset of some N(X).
* lambda^(h): a minimal h-edge-cut is always the full boundary of one side
  X, with both X and V - X connected and both induced sides of minimum
  degree >= h.  So it suffices to grow connected fragments X (|X| <= n/2)
  vertex by vertex, branching include/exclude on a frontier vertex; edges
  from X to excluded vertices can never leave the boundary, which gives an
  exact branch-and-bound on boundary size.

Both searches are partitioned into independent pieces (first element of
the subset, root of the fragment) whose results are reduced in a fixed
order, so reports do not depend on the worker count.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import math
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from . import cuts
from .cuts import EDGE_CUT, VERTEX_CUT, CutCertificate
from .topology import Topology, TopologyParams, build_eh

VERIFIED_EQUAL = "verified-equal"
UPPER_BOUND_ONLY = "upper-bound-only"
MISMATCH = "mismatch"
NO_CUT = "no-cut"  # no h-cut of size <= the search cap exists
EXACT = "exact"  # resolved, but no closed form to compare against

KAPPA_H = "kappa_h"
LAMBDA_H = "lambda_h"


@dataclasses.dataclass(frozen=True)
class SolveBudget:
    max_subset_size: int = 7
    max_candidates: int = 500_000_000
    workers: int = 1
    time_limit: float = 600.0

    def __post_init__(self):
        for name in ("max_subset_size", "max_candidates", "workers", "time_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"budget field {name} must be positive")

    def to_record(self) -> dict:
        return {
            "max_subset_size": self.max_subset_size,
            "max_candidates": self.max_candidates,
            "time_limit": self.time_limit,
        }


DEFAULT_BUDGET = SolveBudget()


@dataclasses.dataclass(frozen=True)
class ConnectivityReport:
    topology: str
    params: dict
    h: int
    quantity: str
    formula_value: int | None
    found_value: int | None
    upper_bound: int | None
    certificate: CutCertificate | None
    status: str

    def to_record(self) -> dict:
        return {
            "topology": self.topology,
            "params": self.params,
            "h": self.h,
            "quantity": self.quantity,
            "formula_value": self.formula_value,
            "found_value": "unresolved" if self.found_value is None else self.found_value,
            "upper_bound": self.upper_bound,
            "status": self.status,
            "certificate": None if self.certificate is None else self.certificate.to_record(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))


class OracleInfeasible(RuntimeError):
    pass


def graph_params(g: Topology) -> dict:
    if g.kind == "Qn":
        return {"n": g.order}
    if g.kind == "DC":
        return {"n": g.order}
    if g.params is not None:
        return {"s": g.params.s, "t": g.params.t}
    return {"vertices": g.num_vertices}


def expected_value(g: Topology, h: int, quantity: str) -> int | None:
    """Closed-form kappa^(h) / lambda^(h) where one is known, else None."""
    if g.kind in ("EH", "DC"):
        lo = min(g.params.s, g.params.t)
        return cuts.formula_value(lo, h) if 0 <= h <= lo else None
    if g.kind == "Qn":
        n = g.order
        top = n - 2 if quantity == KAPPA_H else n - 1
        return (1 << h) * (n - h) if 0 <= h <= top else None
    return None


# -- classical connectivity -------------------------------------------------


def _is_connected(g: Topology) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.num_vertices


def _residual_reach(cap: csr_array, flow, source: int) -> np.ndarray:
    residual = csr_array(cap - flow)
    residual.data = np.where(residual.data > 0, 1, 0).astype(np.int32)
    residual.eliminate_zeros()
    order = breadth_first_order(residual, source, directed=True, return_predecessors=False)
    reach = np.zeros(cap.shape[0], dtype=bool)
    reach[order] = True
    return reach


def _split_network(g: Topology) -> csr_array:
    """Vertex-split network: in(v)=2v -> out(v)=2v+1 with capacity 1."""
    n = g.num_vertices
    big = n
    rows, cols, caps = [], [], []
    for v in range(n):
        rows.append(2 * v)
        cols.append(2 * v + 1)
        caps.append(1)
        for w in g.adjacency[v]:
            rows.append(2 * v + 1)
            cols.append(2 * w)
            caps.append(big)
    return csr_array(
        (np.array(caps, dtype=np.int32), (np.array(rows), np.array(cols))), shape=(2 * n, 2 * n)
    )


def _edge_network(g: Topology) -> csr_array:
    n = g.num_vertices
    rows = [v for v in range(n) for _ in g.adjacency[v]]
    cols = [w for v in range(n) for w in g.adjacency[v]]
    return csr_array(
        (np.ones(len(rows), dtype=np.int32), (np.array(rows), np.array(cols))), shape=(n, n)
    )


def vertex_connectivity(g: Topology) -> tuple[int, CutCertificate | None]:
    """kappa(g) and a minimum separating vertex set.

    Source/sink pairs follow Esfahanian-Hakimi: a minimum-degree vertex v
    against every non-neighbour, plus every non-adjacent pair of neighbours
    of v.  The certificate is the source-side min cut of the first pair (in
    that fixed order) attaining the minimum.  A complete graph has no
    vertex cut: returns (n - 1, None).
    """
    n = g.num_vertices
    if n < 2:
        raise ValueError("vertex connectivity needs at least 2 vertices")
    if not _is_connected(g):
        return 0, CutCertificate.for_graph(g, VERTEX_CUT, 0, (), "solver")
    v = min(range(n), key=lambda x: (g.degree(x), x))
    nbrs = g.adjacency[v]
    nbr_set = set(nbrs)
    pairs = [(v, w) for w in range(n) if w != v and w not in nbr_set]
    pairs += [(x, y) for x, y in itertools.combinations(nbrs, 2) if not g.has_edge(x, y)]
    if not pairs:
        return n - 1, None

    net = _split_network(g)
    best = None
    for a, b in pairs:
        res = maximum_flow(net, 2 * a + 1, 2 * b)
        if best is None or res.flow_value < best[0]:
            best = (res.flow_value, a, res)
    value, a, res = best
    reach = _residual_reach(net, res.flow, 2 * a + 1)
    members = [u for u in range(n) if reach[2 * u] and not reach[2 * u + 1]]
    cert = CutCertificate.for_graph(g, VERTEX_CUT, 0, members, "solver")
    if len(cert) != value:
        raise AssertionError(f"min-cut extraction gave {len(cert)} vertices for flow {value}")
    return int(value), cert


def edge_connectivity(g: Topology) -> tuple[int, CutCertificate]:
    """lambda(g) via max-flow from vertex 0 to every other vertex."""
    n = g.num_vertices
    if n < 2:
        raise ValueError("edge connectivity needs at least 2 vertices")
    if not _is_connected(g):
        return 0, CutCertificate.for_graph(g, EDGE_CUT, 0, (), "solver")
    net = _edge_network(g)
    best = None
    for b in range(1, n):
        res = maximum_flow(net, 0, b)
        if best is None or res.flow_value < best[0]:
            best = (res.flow_value, res)
    value, res = best
    reach = _residual_reach(net, res.flow, 0)
    side = [u for u in range(n) if reach[u]]
    cert = CutCertificate.for_graph(g, EDGE_CUT, 0, cuts.boundary_edges(g, side), "solver")
    if len(cert) != value:
        raise AssertionError(f"min-cut extraction gave {len(cert)} edges for flow {value}")
    return int(value), cert


# -- shared search context ----------------------------------------------------

_CTX: dict = {}


def _init_ctx(adj: list[int], h: int, deadline: float, node_cap: int, bound: int | None):
    _CTX.clear()
    _CTX.update(adj=adj, h=h, deadline=deadline, node_cap=node_cap, bound=bound,
                deg=[m.bit_count() for m in adj], n=len(adj))


def _masks(g: Topology) -> list[int]:
    return [sum(1 << w for w in nbrs) for nbrs in g.adjacency]


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _run_chunks(fn, chunks: list, g: Topology, h: int, deadline: float, node_cap: int,
                bound: int | None, workers: int) -> list:
    """Evaluate ``fn`` on every chunk, results in chunk order."""
    adj = _masks(g)
    if workers <= 1 or len(chunks) <= 1:
        _init_ctx(adj, h, deadline, node_cap, bound)
        return [fn(c) for c in chunks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx, initializer=_init_ctx,
                             initargs=(adj, h, deadline, node_cap, bound)) as pool:
        return list(pool.map(fn, chunks))


def _split(items: list, parts: int) -> list[list]:
    if not items:
        return []
    parts = max(1, min(parts, len(items)))
    size = math.ceil(len(items) / parts)
    return [items[i:i + size] for i in range(0, len(items), size)]


class _Timeout(Exception):
    pass


class _NodeCap(Exception):
    pass


# -- kappa^(h): bounded subset enumeration -------------------------------------


def _vertex_cut_ok(S: int) -> bool:
    adj, h, full = _CTX["adj"], _CTX["h"], (1 << _CTX["n"]) - 1
    R = full & ~S
    if not R:
        return False
    if h:
        touched = 0
        for v in _bits(S):
            touched |= adj[v]
        for u in _bits(touched & R):
            if (adj[u] & R).bit_count() < h:
                return False
    reach = frontier = R & -R
    while frontier:
        nxt = 0
        for u in _bits(frontier):
            nxt |= adj[u]
        frontier = nxt & R & ~reach
        reach |= frontier
    return reach != R


def _kappa_chunk(task) -> tuple[tuple[int, ...] | None, bool]:
    """First (lexicographic) h-vertex-cut of size k whose least element is in ``firsts``."""
    k, firsts = task
    n, deadline = _CTX["n"], _CTX["deadline"]
    count = 0
    for i in firsts:
        rest = range(i + 1, n)
        for combo in itertools.combinations(rest, k - 1):
            count += 1
            if not count & 0x3FF and time.monotonic() > deadline:
                return None, True
            S = 1 << i
            for v in combo:
                S |= 1 << v
            if _vertex_cut_ok(S):
                return (i, *combo), False
    return None, False


def _projected_subsets(n: int, top: int) -> int:
    return sum(math.comb(n, k) for k in range(top + 1))


def _valid_hint(g: Topology, hint: CutCertificate | None, h: int, kind: str) -> CutCertificate | None:
    if hint is None or hint.kind != kind or hint.h < h:
        return None
    return hint if cuts.check_certificate(g, dataclasses.replace(hint, h=h)) else None


def _report(g, h, quantity, found, bound_cert, status=None):
    formula = expected_value(g, h, quantity)
    upper = None if bound_cert is None else len(bound_cert)
    if status is None:
        if found is None:
            status = NO_CUT
        elif formula is None:
            status = EXACT
        else:
            status = VERIFIED_EQUAL if found == formula else MISMATCH
    if status == VERIFIED_EQUAL and not cuts.check_certificate(g, bound_cert):
        status = MISMATCH
    return ConnectivityReport(g.name, graph_params(g), h, quantity, formula, found, upper,
                              bound_cert, status)


def kappa_h_exact(g: Topology, h: int, budget: SolveBudget = DEFAULT_BUDGET,
                  upper_hint: CutCertificate | None = None) -> ConnectivityReport:
    if h < 0:
        raise ValueError(f"h must be >= 0 (got {h})")
    if h == 0:
        value, cert = vertex_connectivity(g)
        if cert is None:
            return _report(g, 0, KAPPA_H, None, None)
        return _report(g, 0, KAPPA_H, value, cert)

    cert = cuts.canonical_certificate(g, h, VERTEX_CUT)
    if cert is not None and not cuts.check_certificate(g, cert):
        cert = None
    hint = _valid_hint(g, upper_hint, h, VERTEX_CUT)
    if hint is not None and (cert is None or len(hint) < len(cert)):
        cert = dataclasses.replace(hint, h=h)

    n = g.num_vertices
    top = len(cert) - 1 if cert is not None else budget.max_subset_size
    truncated = top > budget.max_subset_size
    top = min(top, budget.max_subset_size, n)
    if _projected_subsets(n, top) > budget.max_candidates:
        return _report(g, h, KAPPA_H, None, cert, UPPER_BOUND_ONLY)

    deadline = time.monotonic() + budget.time_limit
    for k in range(0, top + 1):
        if k == 0:
            _init_ctx(_masks(g), h, deadline, budget.max_candidates, None)
            hit = () if _vertex_cut_ok(0) else None
            timed_out = False
        else:
            firsts = list(range(n - k + 1))
            chunks = [(k, part) for part in _split(firsts, budget.workers * 4)]
            results = _run_chunks(_kappa_chunk, chunks, g, h, deadline, budget.max_candidates,
                                  None, budget.workers)
            hit, timed_out = None, False
            for found, out in results:
                if out:
                    timed_out = True
                    break
                if found is not None:
                    hit = found
                    break
        if timed_out:
            return _report(g, h, KAPPA_H, None, cert, UPPER_BOUND_ONLY)
        if hit is not None:
            found_cert = CutCertificate.for_graph(g, VERTEX_CUT, h, hit, "solver")
            return _report(g, h, KAPPA_H, k, found_cert)
    if truncated:
        return _report(g, h, KAPPA_H, None, cert, UPPER_BOUND_ONLY)
    if cert is None:
        return _report(g, h, KAPPA_H, None, None)
    return _report(g, h, KAPPA_H, len(cert), cert)


# -- lambda^(h): fragment branch-and-bound ----------------------------------


def _fragment_root(r: int):
    """Smallest boundary over connected X with min(X) = r, |X| <= n/2.

    Returns (value, edges) for the best fragment beating the bound (ties
    at the best value resolved to the lexicographically smallest edge
    list), or (None, None); plus a flag set when the node cap or the
    deadline cut the search short.
    """
    adj, h, n = _CTX["adj"], _CTX["h"], _CTX["n"]
    deg, deadline, node_cap = _CTX["deg"], _CTX["deadline"], _CTX["node_cap"]
    bound = _CTX["bound"]
    half = n // 2
    full = (1 << n) - 1
    state = {"best": None, "edges": None, "nodes": 0}

    def admissible(cost):
        if state["best"] is not None:
            return cost <= state["best"]
        return bound is None or cost < bound

    def excluded_ok(z, X):
        return deg[z] - (adj[z] & X).bit_count() >= h

    def leaf(X, cost):
        for x in _bits(X):
            if (adj[x] & X).bit_count() < h:
                return
        outside = 0
        for x in _bits(X):
            outside |= adj[x]
        outside &= ~X
        for w in _bits(outside):
            if not excluded_ok(w, X):
                return
        edges = tuple(sorted(
            (min(x, w), max(x, w)) for x in _bits(X) for w in _bits(adj[x] & ~X)
        ))
        if state["best"] is None or cost < state["best"] or edges < state["edges"]:
            state["best"], state["edges"] = cost, edges

    def grow(X, Z, NX, cost, size):
        # explicit stack: fragments can reach n/2 vertices, far past the recursion limit
        stack = [(False, X, Z, NX, cost, size, 0)]
        while stack:
            deferred, X, Z, NX, cost, size, v = stack.pop()
            if deferred:
                # exclude v, checked only after the include subtree has run
                bv = 1 << v
                ncost = cost + (adj[v] & X).bit_count()
                Z2 = Z | bv
                if (admissible(ncost) and excluded_ok(v, X)
                        and all((adj[x] & ~Z2).bit_count() >= h for x in _bits(adj[v] & X))):
                    stack.append((False, X, Z2, NX, ncost, size, 0))
                continue
            state["nodes"] += 1
            if state["nodes"] > node_cap:
                raise _NodeCap
            if not state["nodes"] & 0xFFF and time.monotonic() > deadline:
                raise _Timeout
            cand = NX & ~X & ~Z
            if not cand:
                leaf(X, cost)
                continue
            # branch on the frontier vertex most tied to X: excluding it costs most
            v = max(_bits(cand), key=lambda u: ((adj[u] & X).bit_count(), -u))
            stack.append((True, X, Z, NX, cost, size, v))
            if size < half:
                ncost = cost + (adj[v] & Z).bit_count()
                X2 = X | (1 << v)
                if (admissible(ncost) and (adj[v] & ~Z).bit_count() >= h
                        and all(excluded_ok(z, X2) for z in _bits(adj[v] & Z))):
                    stack.append((False, X2, Z, NX | adj[v], ncost, size + 1, 0))

    X = 1 << r
    Z = (1 << r) - 1
    cost = (adj[r] & Z).bit_count()
    try:
        if (admissible(cost) and (adj[r] & ~Z & full).bit_count() >= h
                and all(excluded_ok(z, X) for z in _bits(adj[r] & Z))):
            grow(X, Z, adj[r], cost, 1)
    except (_Timeout, _NodeCap):
        return state["best"], state["edges"], True
    return state["best"], state["edges"], False


def _fragment_chunk(roots: list[int]) -> list:
    return [_fragment_root(r) for r in roots]


def _projected_fragments(n: int, bound: int) -> int:
    return n * math.comb(n // 2 + bound - 1, bound - 1)


def lambda_h_exact(g: Topology, h: int, budget: SolveBudget = DEFAULT_BUDGET,
                   upper_hint: CutCertificate | None = None) -> ConnectivityReport:
    if h < 0:
        raise ValueError(f"h must be >= 0 (got {h})")
    if h == 0:
        value, cert = edge_connectivity(g)
        return _report(g, 0, LAMBDA_H, value, cert)

    cert = cuts.canonical_certificate(g, h, EDGE_CUT)
    if cert is not None and not cuts.check_certificate(g, cert):
        cert = None
    hint = _valid_hint(g, upper_hint, h, EDGE_CUT)
    if hint is not None and (cert is None or len(hint) < len(cert)):
        cert = dataclasses.replace(hint, h=h)

    if g.min_degree() < h:
        # every vertex survives an edge removal, so the degree condition already fails
        return _report(g, h, LAMBDA_H, None, None)

    n = g.num_vertices
    bound = len(cert) if cert is not None else budget.max_subset_size + 1
    if bound > 0 and _projected_fragments(n, bound) > budget.max_candidates:
        return _report(g, h, LAMBDA_H, None, cert, UPPER_BOUND_ONLY)

    deadline = time.monotonic() + budget.time_limit
    chunks = _split(list(range(n)), budget.workers * 4)
    results = [r for part in _run_chunks(_fragment_chunk, chunks, g, h, deadline,
                                         budget.max_candidates, bound, budget.workers)
               for r in part]
    truncated = any(flag for _, _, flag in results)
    found = [(value, edges) for value, edges, _ in results if value is not None]
    best = min(found) if found else None
    if best is not None:
        found_cert = CutCertificate.for_graph(g, EDGE_CUT, h, best[1], "solver")
        if truncated:
            return _report(g, h, LAMBDA_H, None, found_cert, UPPER_BOUND_ONLY)
        return _report(g, h, LAMBDA_H, best[0], found_cert)
    if truncated:
        return _report(g, h, LAMBDA_H, None, cert, UPPER_BOUND_ONLY)
    if cert is None:
        return _report(g, h, LAMBDA_H, None, None)
    return _report(g, h, LAMBDA_H, len(cert), cert)


# -- table and oracle ---------------------------------------------------------


def verify_theorem_table(max_total: int, budget: SolveBudget = DEFAULT_BUDGET) -> list[ConnectivityReport]:
    """kappa^(h) and lambda^(h) reports for every EH(s,t), s <= t, s+t <= max_total, h <= s.

    Order: (s, t, h) ascending, kappa before lambda.
    """
    if max_total < 2:
        raise ValueError(f"max_total must be >= 2 (got {max_total})")
    reports = []
    for s in range(1, max_total):
        for t in range(s, max_total - s + 1):
            g = build_eh(TopologyParams(s, t))
            for h in range(s + 1):
                reports.append(kappa_h_exact(g, h, budget))
                reports.append(lambda_h_exact(g, h, budget))
    return reports


ORACLE_MAX_CANDIDATES = 300_000


def brute_force_oracle(g: Topology, h: int, kind: str, size_cap: int,
                       max_candidates: int = ORACLE_MAX_CANDIDATES) -> int | None:
    """Minimum h-cut size by plain subset enumeration, or None if none <= size_cap.

    ``kind`` is "vertex" or "edge".  Uses only the reference predicates in
    :mod:`ehconn.cuts`; nothing is pruned.
    """
    if kind == "vertex":
        universe = list(range(g.num_vertices))
        test = cuts.is_h_vertex_cut
    elif kind == "edge":
        universe = list(g.edges())
        test = cuts.is_h_edge_cut
    else:
        raise ValueError(f"kind must be 'vertex' or 'edge', got {kind!r}")
    size_cap = min(size_cap, len(universe))
    projected = _projected_subsets(len(universe), size_cap)
    if projected > max_candidates:
        raise OracleInfeasible(
            f"{g.name}: {projected} {kind} subsets up to size {size_cap} exceed {max_candidates}"
        )
    for k in range(size_cap + 1):
        for subset in itertools.combinations(universe, k):
            if test(g, subset, h):
                return k
    return None
