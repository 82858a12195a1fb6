"""Exchanged hypercubes EH(s, t): construction, canonical h-cuts and exact restricted connectivity."""

__version__ = "0.1.0"

from .topology import (  # noqa: E402
    MAX_BITS,
    EdgeKind,
    Topology,
    TopologyParams,
    build_dc,
    build_eh,
    build_qn,
    decompose,
    edge_kind,
    hamming_distance,
    iso_swap_map,
    verify_isomorphism,
)
from .cuts import (  # noqa: E402
    CutCertificate,
    canonical_core,
    canonical_edge_cut,
    canonical_vertex_cut,
    is_h_edge_cut,
    is_h_vertex_cut,
    residual_profile,
)
from .solver import (  # noqa: E402
    ConnectivityReport,
    SolveBudget,
    brute_force_oracle,
    edge_connectivity,
    kappa_h_exact,
    lambda_h_exact,
    verify_theorem_table,
    vertex_connectivity,
)
