"""Bit-exact construction of exchanged hypercubes, hypercubes and dual-cubes.

A vertex of EH(s, t) is the binary string ``u_{s+t} ... u_1 u_0``, stored as
an integer whose bit ``r`` is ``u_r``.  Bit 0 is the last bit, bits ``1..t``
form the t-block and bits ``t+1..t+s`` form the s-block, so an r-dimensional
edge flips machine bit ``r``.
"""

from __future__ import annotations

import dataclasses
from typing import Callable, Iterator, Sequence

MAX_BITS = 24


class TopologyError(ValueError):
    """Invalid construction parameters."""


class InstanceTooLarge(TopologyError):
    def __init__(self, bits: int, guard: int = MAX_BITS):
        super().__init__(
            f"instance needs {bits} address bits, exceeding the word-size guard MAX_BITS={guard}"
        )
        self.bits = bits
        self.guard = guard


class NotAnEdge(ValueError):
    pass


class UnsupportedDecomposition(TopologyError):
    pass


class IsomorphismError(ValueError):
    pass


def hamming_distance(x: str | int, y: str | int) -> int:
    """Number of positions in which two equal-length bit strings differ.

    Integers are compared bitwise with no length check.
    """
    if isinstance(x, int) and isinstance(y, int):
        return (x ^ y).bit_count()
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return sum(a != b for a, b in zip(x, y))


@dataclasses.dataclass(frozen=True)
class TopologyParams:
    s: int
    t: int

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 1:
            raise TopologyError(f"s must be ≥ 1 (got {self.s})")
        if not isinstance(self.t, int) or self.t < 1:
            raise TopologyError(f"t must be ≥ 1 (got {self.t})")

    @property
    def bits(self) -> int:
        return self.s + self.t + 1

    @property
    def num_vertices(self) -> int:
        return 1 << self.bits

    @property
    def num_edges(self) -> int:
        return (1 << (self.s + self.t - 1)) * (self.s + self.t + 2)

    def swapped(self) -> TopologyParams:
        return TopologyParams(self.t, self.s)


def vertex_from_string(label: str) -> int:
    """Parse ``u_{s+t} ... u_1 u_0`` (most significant first)."""
    if not label or set(label) - {"0", "1"}:
        raise ValueError(f"not a binary string: {label!r}")
    return int(label, 2)


def vertex_to_string(v: int, bits: int) -> str:
    if v < 0 or v >> bits:
        raise ValueError(f"vertex {v} does not fit in {bits} bits")
    return format(v, f"0{bits}b")


def t_block(v: int, params: TopologyParams) -> int:
    """The t-block ``u[t:1]`` as an integer."""
    return (v >> 1) & ((1 << params.t) - 1)


def s_block(v: int, params: TopologyParams) -> int:
    """The s-block ``u[s+t:t+1]`` as an integer."""
    return v >> (params.t + 1)


@dataclasses.dataclass(frozen=True)
class EdgeKind:
    variant: str  # "E1", "E2" or "E3"
    r: int  # differing bit; 0 for E1

    def __str__(self):
        return self.variant if self.variant == "E1" else f"{self.variant}({self.r})"


@dataclasses.dataclass(frozen=True, eq=False)
class Topology:
    """Immutable undirected simple graph on vertices ``0 .. n-1``.

    ``adjacency[v]`` is the ascending tuple of neighbours of ``v``.
    """

    kind: str  # "EH", "Qn", "DC" or "generic"
    adjacency: tuple[tuple[int, ...], ...]
    params: TopologyParams | None = None
    order: int | None = None  # n for Qn and DC

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def bits(self) -> int:
        if self.params is not None:
            return self.params.bits
        return max(1, (self.num_vertices - 1).bit_length())

    @property
    def name(self) -> str:
        if self.kind == "EH":
            return f"EH({self.params.s},{self.params.t})"
        if self.kind == "DC":
            return f"DC({self.order})"
        if self.kind == "Qn":
            return f"Q_{self.order}"
        return f"G[{self.num_vertices}]"

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def min_degree(self) -> int:
        return min(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
            return False
        a = self.adjacency[u]
        # adjacency lists are short; linear scan beats bisect here
        return v in a

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in ascending order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def label(self, v: int) -> str:
        return vertex_to_string(v, self.bits)

    def same_graph(self, other: Topology) -> bool:
        return self.adjacency == other.adjacency

    def __eq__(self, other):
        if not isinstance(other, Topology):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.params == other.params
            and self.order == other.order
            and self.adjacency == other.adjacency
        )

    def __hash__(self):
        return hash((self.kind, self.params, self.order, self.num_vertices))

    def __repr__(self):
        return f"<Topology {self.name}: {self.num_vertices} vertices, {self.num_edges} edges>"

    @classmethod
    def from_edges(cls, num_vertices: int, edges, kind: str = "generic", **kw) -> Topology:
        adj: list[set[int]] = [set() for _ in range(num_vertices)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        return cls(kind=kind, adjacency=tuple(tuple(sorted(a)) for a in adj), **kw)


def _check_guard(bits: int, guard: int):
    if bits > guard:
        raise InstanceTooLarge(bits, guard)


def eh_neighbors(v: int, params: TopologyParams) -> list[int]:
    """Neighbours of ``v`` in EH(s, t) straight from the edge rule, ascending."""
    out = [v ^ 1]
    if v & 1:
        dims = range(1, params.t + 1)
    else:
        dims = range(params.t + 1, params.s + params.t + 1)
    out.extend(v ^ (1 << r) for r in dims)
    out.sort()
    return out


def build_eh(params: TopologyParams | tuple[int, int], guard: int = MAX_BITS) -> Topology:
    if not isinstance(params, TopologyParams):
        params = TopologyParams(*params)
    _check_guard(params.bits, guard)
    adjacency = tuple(tuple(eh_neighbors(v, params)) for v in range(params.num_vertices))
    return Topology(kind="EH", adjacency=adjacency, params=params)


def build_qn(n: int, guard: int = MAX_BITS) -> Topology:
    if not isinstance(n, int) or n < 1:
        raise TopologyError(f"n must be ≥ 1 (got {n})")
    _check_guard(n, guard)
    adjacency = tuple(
        tuple(sorted(v ^ (1 << r) for r in range(n))) for v in range(1 << n)
    )
    return Topology(kind="Qn", adjacency=adjacency, order=n)


def build_dc(n: int, guard: int = MAX_BITS) -> Topology:
    """Dual-cube DC(n), realised as EH(n, n) with identity labels."""
    if not isinstance(n, int) or n < 1:
        raise TopologyError(f"n must be ≥ 1 (got {n})")
    _check_guard(2 * n + 1, guard)
    eh = build_eh(TopologyParams(n, n), guard=guard)
    return Topology(kind="DC", adjacency=eh.adjacency, params=eh.params, order=n)


def edge_kind(g: Topology, u: int, v: int) -> EdgeKind:
    if g.params is None or g.kind not in ("EH", "DC"):
        raise TypeError(f"edge classification needs an exchanged hypercube, got {g.name}")
    if not g.has_edge(u, v):
        raise NotAnEdge(f"({g.label(u) if 0 <= u < g.num_vertices else u}, "
                        f"{g.label(v) if 0 <= v < g.num_vertices else v}) is not an edge of {g.name}")
    diff = u ^ v
    r = diff.bit_length() - 1
    if r == 0:
        return EdgeKind("E1", 0)
    if r <= g.params.t:
        return EdgeKind("E2", r)
    return EdgeKind("E3", r)


@dataclasses.dataclass(frozen=True)
class Half:
    """One side of a decomposition along dimension ``r``.

    ``to_parent[i]`` is the vertex of the parent graph that half-vertex ``i``
    came from.
    """

    bit: int
    topology: Topology
    to_parent: tuple[int, ...]


def delete_bit(v: int, r: int) -> int:
    low = v & ((1 << r) - 1)
    return ((v >> (r + 1)) << r) | low


def insert_bit(v: int, r: int, value: int) -> int:
    low = v & ((1 << r) - 1)
    return ((v >> r) << (r + 1)) | (value << r) | low


def decompose(g: Topology, r: int) -> tuple[Half, Half, list[tuple[int, int]]]:
    """Split EH(s, t) along dimension ``r`` into the two halves H^r_0, H^r_1.

    Each half is relabelled by deleting bit ``r`` and is a copy of
    EH(s, t-1) (r in the t-block) or EH(s-1, t) (r in the s-block).
    The returned cross edges are ``(u, v)`` with ``u`` in half 0.
    """
    if g.params is None or g.kind not in ("EH", "DC"):
        raise TypeError(f"decompose needs an exchanged hypercube, got {g.name}")
    s, t = g.params.s, g.params.t
    if not 1 <= r <= s + t:
        raise UnsupportedDecomposition(f"dimension r={r} outside 1..{s + t}")
    if r <= t:
        if t < 2:
            raise UnsupportedDecomposition(f"r={r} lies in the t-block but t={t} < 2")
        sub = TopologyParams(s, t - 1)
    else:
        if s < 2:
            raise UnsupportedDecomposition(f"r={r} lies in the s-block but s={s} < 2")
        sub = TopologyParams(s - 1, t)

    mask = 1 << r
    halves = []
    for bit in (0, 1):
        to_parent = tuple(insert_bit(i, r, bit) for i in range(1 << (g.bits - 1)))
        edges = [
            (delete_bit(u, r), delete_bit(v, r))
            for u, v in g.edges()
            if (u & mask) == (v & mask) == (bit << r)
        ]
        half = Topology.from_edges(len(to_parent), edges, kind="EH", params=sub)
        halves.append(Half(bit, half, to_parent))
    cross = sorted(
        (min(u, v, key=lambda x: x & mask), max(u, v, key=lambda x: x & mask))
        for u, v in g.edges()
        if (u ^ v) == mask
    )
    return halves[0], halves[1], cross


def iso_swap_map(params: TopologyParams, u: int) -> int:
    """Map V(s, t) -> V(t, s): exchange the s- and t-blocks and flip the last bit."""
    if not 0 <= u < params.num_vertices:
        raise ValueError(f"vertex {u} not in V({params.s},{params.t})")
    last = (u & 1) ^ 1
    return (t_block(u, params) << (params.s + 1)) | (s_block(u, params) << 1) | last


def verify_isomorphism(
    g: Topology, h: Topology, mapping: Callable[[int], int] | Sequence[int]
) -> bool:
    """True iff ``mapping`` is an isomorphism from ``g`` onto ``h``."""
    n = g.num_vertices
    if n != h.num_vertices:
        raise IsomorphismError(f"vertex counts differ: {n} != {h.num_vertices}")
    image = [mapping(v) for v in range(n)] if callable(mapping) else list(mapping)
    if len(image) != n:
        raise IsomorphismError("mapping is not total")
    if sorted(image) != list(range(n)):
        raise IsomorphismError("mapping is not a bijection onto the target vertices")
    if g.num_edges != h.num_edges:
        return False
    # With a bijection and equal edge counts, edge preservation in one direction suffices.
    return all(h.has_edge(image[u], image[v]) for u, v in g.edges())


def is_bipartite(g: Topology) -> bool:
    """BFS 2-colouring."""
    colour = [-1] * g.num_vertices
    for root in range(g.num_vertices):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = [root]
        for u in queue:
            for v in g.adjacency[u]:
                if colour[v] < 0:
                    colour[v] = colour[u] ^ 1
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return False
    return True
