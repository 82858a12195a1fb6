"""Edge-list and DOT export, and edge-list parsing for round trips."""

from __future__ import annotations

from .topology import Topology, edge_kind


def _edge_tag(g: Topology, u: int, v: int) -> str:
    if g.kind in ("EH", "DC"):
        return edge_kind(g, u, v).variant
    # hypercube edges are tagged by the flipped dimension
    return f"D{(u ^ v).bit_length() - 1}"


def to_edgelist(g: Topology) -> str:
    """One ``u v kind`` line per edge, decimal ids, ``u < v``, sorted by ``(u, v)``."""
    return "".join(f"{u} {v} {_edge_tag(g, u, v)}\n" for u, v in g.edges())


def parse_edgelist(text: str, num_vertices: int | None = None) -> Topology:
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ValueError(f"line {lineno}: expected 'u v [kind]', got {line!r}")
        edges.append((int(fields[0]), int(fields[1])))
    if num_vertices is None:
        num_vertices = 1 + max((max(e) for e in edges), default=-1)
    return Topology.from_edges(num_vertices, edges)


def to_dot(g: Topology) -> str:
    gid = g.name.replace("(", "_").replace(",", "_").replace(")", "").replace("[", "_").replace("]", "")
    lines = [f"graph {gid} {{"]
    for v in range(g.num_vertices):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    for u, v in g.edges():
        lines.append(f'  {u} -- {v} [kind="{_edge_tag(g, u, v)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
