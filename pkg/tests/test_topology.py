import itertools

import pytest

from ehconn.topology import (
    EdgeKind,
    InstanceTooLarge,
    IsomorphismError,
    NotAnEdge,
    Topology,
    TopologyError,
    TopologyParams,
    UnsupportedDecomposition,
    build_dc,
    build_eh,
    build_qn,
    decompose,
    delete_bit,
    edge_kind,
    hamming_distance,
    insert_bit,
    is_bipartite,
    iso_swap_map,
    verify_isomorphism,
    vertex_from_string,
    vertex_to_string,
)


def v(label):
    return vertex_from_string(label)


class TestHamming:
    def test_single_bit(self):
        assert hamming_distance("101", "001") == 1

    def test_identity(self):
        assert hamming_distance("110010", "110010") == 0

    def test_complement(self):
        assert hamming_distance("0000", "1111") == 4

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            hamming_distance("01", "011")

    def test_ints(self):
        assert hamming_distance(0b1010, 0b0110) == 2


class TestParams:
    @pytest.mark.parametrize("s,t", [(0, 1), (1, 0), (-2, 3)])
    def test_rejects_nonpositive(self, s, t):
        with pytest.raises(TopologyError, match="must be ≥ 1"):
            TopologyParams(s, t)

    def test_derived_sizes(self):
        p = TopologyParams(2, 3)
        assert p.bits == 6
        assert p.num_vertices == 64
        assert p.num_edges == 112


class TestVertexId:
    def test_round_trip(self):
        for x in range(1 << 6):
            assert vertex_from_string(vertex_to_string(x, 6)) == x

    def test_layout(self):
        # u_4 u_3 | u_2 u_1 | u_0 for s = t = 2
        p = TopologyParams(2, 2)
        from ehconn.topology import s_block, t_block

        x = v("10" "01" "1")
        assert x & 1 == 1
        assert t_block(x, p) == 0b01
        assert s_block(x, p) == 0b10


class TestBuildEH:
    def test_eh11_size(self):
        g = build_eh(TopologyParams(1, 1))
        assert g.num_vertices == 8
        assert g.num_edges == 8

    def test_eh12_edges(self):
        assert build_eh((1, 2)).num_edges == 20

    @pytest.mark.parametrize("s,t", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 2)])
    def test_matches_definition(self, s, t, oracle_edges):
        g = build_eh(TopologyParams(s, t))
        expected = oracle_edges(s, t)
        got = {frozenset((g.label(a), g.label(b))): edge_kind(g, a, b).variant for a, b in g.edges()}
        assert got == expected

    def test_eh22_degrees(self):
        g = build_eh((2, 2))
        assert all(g.degree(x) == 3 for x in range(g.num_vertices))

    def test_adjacency_sorted(self):
        g = build_eh((2, 3))
        assert all(list(a) == sorted(a) for a in g.adjacency)

    def test_guard(self):
        with pytest.raises(InstanceTooLarge, match="MAX_BITS"):
            build_eh((12, 12))
        with pytest.raises(InstanceTooLarge):
            build_eh((2, 2), guard=4)

    def test_deterministic(self):
        assert build_eh((2, 3)) == build_eh((2, 3))


class TestBuildQn:
    def test_q1(self):
        g = build_qn(1)
        assert g.num_vertices == 2 and list(g.edges()) == [(0, 1)]

    def test_q3(self):
        g = build_qn(3)
        assert g.num_vertices == 8 and g.num_edges == 12
        assert all(g.degree(x) == 3 for x in range(8))

    def test_hamming_edges(self):
        g = build_qn(4)
        for a, b in itertools.combinations(range(16), 2):
            assert g.has_edge(a, b) == (hamming_distance(a, b) == 1)

    @pytest.mark.parametrize("n", [0, -1])
    def test_invalid(self, n):
        with pytest.raises(TopologyError):
            build_qn(n)


class TestBuildDC:
    def test_dc1_is_eh11(self):
        g = build_dc(1)
        assert g.num_vertices == 8 and g.num_edges == 8
        assert g.same_graph(build_eh((1, 1)))

    def test_dc2_size(self):
        assert build_dc(2).num_vertices == 32

    def test_guard(self):
        with pytest.raises(InstanceTooLarge):
            build_dc(12)


class TestEdgeKind:
    def setup_method(self):
        self.g = build_eh((1, 1))

    def test_e1(self):
        assert edge_kind(self.g, v("000"), v("001")) == EdgeKind("E1", 0)

    def test_e2(self):
        assert edge_kind(self.g, v("001"), v("011")) == EdgeKind("E2", 1)

    def test_e3(self):
        assert edge_kind(self.g, v("000"), v("100")) == EdgeKind("E3", 2)

    def test_not_an_edge(self):
        with pytest.raises(NotAnEdge):
            edge_kind(self.g, v("000"), v("010"))

    def test_partition_counts(self):
        g = build_eh((2, 3))
        kinds = [edge_kind(g, a, b).variant for a, b in g.edges()]
        assert kinds.count("E1") == 2 ** 5
        assert kinds.count("E2") == 3 * 2 ** 4
        assert kinds.count("E3") == 2 * 2 ** 4


class TestDecompose:
    def test_eh12_r1(self):
        g = build_eh((1, 2))
        h0, h1, cross = decompose(g, 1)
        target = build_eh((1, 1))
        assert h0.topology == target and h1.topology == target
        assert len(cross) == 4

    def test_eh22_r4(self):
        g = build_eh((2, 2))
        h0, h1, cross = decompose(g, 4)
        assert h0.topology == build_eh((1, 2)) == h1.topology
        ends = [x for e in cross for x in e]
        assert len(ends) == len(set(ends)) == 2 * len(cross) == 16

    def test_halves_are_induced_subgraphs(self):
        g = build_eh((2, 3))
        for r in range(1, 6):
            for half in decompose(g, r)[:2]:
                assert all((x >> r) & 1 == half.bit for x in half.to_parent)
                for a, b in itertools.combinations(range(half.topology.num_vertices), 2):
                    assert half.topology.has_edge(a, b) == g.has_edge(half.to_parent[a], half.to_parent[b])

    def test_cross_edges_orientation(self):
        g = build_eh((2, 2))
        _, _, cross = decompose(g, 2)
        assert all(not a >> 2 & 1 and b >> 2 & 1 and g.has_edge(a, b) for a, b in cross)

    @pytest.mark.parametrize("st,r", [((1, 1), 1), ((1, 1), 2), ((2, 1), 1), ((1, 2), 3)])
    def test_degenerate(self, st, r):
        with pytest.raises(UnsupportedDecomposition):
            decompose(build_eh(st), r)

    @pytest.mark.parametrize("r", [0, 5])
    def test_out_of_range(self, r):
        with pytest.raises(UnsupportedDecomposition, match="outside"):
            decompose(build_eh((2, 2)), r)

    def test_bit_helpers(self):
        for x in range(64):
            for r in range(6):
                assert insert_bit(delete_bit(x, r), r, (x >> r) & 1) == x


class TestIsoSwap:
    def test_zero(self):
        p = TopologyParams(1, 2)
        assert iso_swap_map(p, 0) == v("0001")

    def test_example_value(self):
        # s-block "1", t-block "01", last bit 0  ->  t-block "01", s-block "1", last bit 1
        assert iso_swap_map(TopologyParams(1, 2), v("1010")) == v("0111")

    def test_involution(self):
        for s, t in [(1, 2), (2, 3), (3, 1)]:
            p = TopologyParams(s, t)
            for x in range(p.num_vertices):
                assert iso_swap_map(p.swapped(), iso_swap_map(p, x)) == x

    def test_edge_images(self, oracle_edges):
        # every E2 edge of EH(1,2) lands on an E3 edge of EH(2,1) and vice versa; E1 stays E1
        p = TopologyParams(1, 2)
        src = oracle_edges(1, 2)
        dst = oracle_edges(2, 1)
        assert len(src) == 20
        swap = {"E1": "E1", "E2": "E3", "E3": "E2"}
        for pair, kind in src.items():
            a, b = (format(iso_swap_map(p, int(x, 2)), "04b") for x in pair)
            assert dst[frozenset((a, b))] == swap[kind]

    def test_verified(self):
        p = TopologyParams(1, 2)
        assert verify_isomorphism(build_eh(p), build_eh(p.swapped()), lambda x: iso_swap_map(p, x))


class TestVerifyIsomorphism:
    def test_identity(self):
        g = build_eh((2, 2))
        assert verify_isomorphism(g, g, range(g.num_vertices))

    def test_rejects_broken_map(self):
        g = build_eh((1, 1))
        # 000 is adjacent to 001 but not to 011; swapping the images of 001 and 011 breaks adjacency
        image = list(range(8))
        image[v("001")], image[v("011")] = image[v("011")], image[v("001")]
        assert not verify_isomorphism(g, g, image)

    def test_size_mismatch(self):
        with pytest.raises(IsomorphismError, match="vertex counts"):
            verify_isomorphism(build_eh((1, 1)), build_eh((1, 2)), range(8))

    def test_not_bijective(self):
        g = build_eh((1, 1))
        with pytest.raises(IsomorphismError, match="bijection"):
            verify_isomorphism(g, g, [0] * 8)

    def test_not_total(self):
        g = build_eh((1, 1))
        with pytest.raises(IsomorphismError, match="total"):
            verify_isomorphism(g, g, [0, 1, 2])


class TestBipartite:
    def test_eh(self):
        assert is_bipartite(build_eh((2, 3)))

    def test_parity_colouring(self):
        g = build_eh((3, 2))
        assert all(bin(a).count("1") % 2 != bin(b).count("1") % 2 for a, b in g.edges())

    def test_odd_cycle(self):
        tri = Topology.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert not is_bipartite(tri)
