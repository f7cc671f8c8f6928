"""Searches against frozen answers, validators, and brute-force oracles."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from thetakit.detectors import (
    CapExceeded,
    ConstellationWitness,
    Embedding,
    ThetaWitness,
    WallLineReport,
    clique_number,
    constellation_witness_violation,
    embedding_violation,
    excludes_wall_line_graphs,
    find_biclique,
    find_constellation,
    find_induced,
    find_prism,
    find_theta,
    is_constricted,
    is_embedding,
    is_theta_witness,
    max_path_fan,
    three_in_a_tree,
    theta_witness_violation,
)
from thetakit.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    line_graph,
    path_graph,
    petersen,
    prism_graph,
    random_graph,
    theta_graph,
    wall,
)
from thetakit.graphs import Graph, build_graph, mask_of


def seeded_hosts(count, max_n=8, start=0):
    for i in range(count):
        n = 4 + (i % (max_n - 3))
        p = (0.15, 0.3, 0.5, 0.7, 0.85)[i % 5]
        yield random_graph(n, p, seed=start + i)


class TestFindInduced:
    def test_path_in_cycle_is_least(self):
        emb = find_induced(cycle_graph(5), path_graph(3))
        assert emb is not None and emb.phi == (0, 1, 2)
        assert is_embedding(cycle_graph(5), emb)

    def test_square_in_clique_none(self):
        assert find_induced(complete_graph(4), cycle_graph(4)) is None

    def test_pentagon_in_petersen(self):
        emb = find_induced(petersen(), cycle_graph(5))
        assert emb is not None and emb.phi == (0, 1, 2, 3, 4)

    def test_empty_pattern(self):
        emb = find_induced(cycle_graph(4), build_graph(0, []))
        assert emb is not None and emb.phi == ()

    def test_pattern_larger_than_host(self):
        assert find_induced(path_graph(3), path_graph(4)) is None

    def test_cap(self):
        with pytest.raises(CapExceeded):
            find_induced(petersen(), path_graph(3), cap=5)

    def test_violation_messages(self):
        host = cycle_graph(5)
        short = Embedding(path_graph(3), (0, 1))
        assert "cover" in embedding_violation(host, short)
        dup = Embedding(path_graph(3), (0, 1, 1))
        assert "injective" in embedding_violation(host, dup)
        out = Embedding(path_graph(3), (0, 1, 7))
        assert "range" in embedding_violation(host, out)
        chord = Embedding(path_graph(3), (0, 1, 4))
        assert "not reproduced" in embedding_violation(host, chord)

    def test_agrees_with_permutation_order(self):
        patterns = [path_graph(3), cycle_graph(3), cycle_graph(4),
                    build_graph(4, [(0, 1), (0, 2), (0, 3)])]
        for i, host in enumerate(seeded_hosts(60, max_n=6, start=900)):
            pat = patterns[i % len(patterns)]
            got = find_induced(host, pat)
            want = oracles.least_induced_embedding(host, pat)
            assert (None if got is None else got.phi) == want


class TestTheta:
    def test_biclique_two_three(self):
        g = complete_bipartite(2, 3)
        w = find_theta(g)
        assert w == ThetaWitness(0, 1, ((0, 2, 1), (0, 3, 1), (0, 4, 1)))
        assert is_theta_witness(g, w)

    def test_none_cases(self):
        assert find_theta(complete_graph(5)) is None
        assert find_theta(cycle_graph(9)) is None
        dumbbell = build_graph(
            7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 6), (6, 3)]
        )
        assert find_theta(dumbbell) is None

    def test_theta_graphs_all_found(self):
        for l1 in range(2, 5):
            for l2 in range(l1, 5):
                for l3 in range(l2, 5):
                    g = theta_graph(l1, l2, l3)
                    w = find_theta(g)
                    assert w is not None and is_theta_witness(g, w)

    def test_petersen_contains_theta(self):
        w = find_theta(petersen())
        assert w is not None and is_theta_witness(petersen(), w)

    def test_validator_rejects_tampering(self):
        g = complete_bipartite(2, 3)
        assert "three paths" in theta_witness_violation(
            g, ThetaWitness(0, 1, ((0, 2, 1), (0, 3, 1)))
        )
        k4 = complete_graph(4)
        assert theta_witness_violation(
            k4, ThetaWitness(0, 1, ((0, 2, 1), (0, 3, 1), (0, 2, 1)))
        ) is not None
        # Interiors must avoid each other: subdivide nothing, reuse C6 arcs.
        c6 = cycle_graph(6)
        w = ThetaWitness(0, 3, ((0, 1, 2, 3), (0, 5, 4, 3), (0, 1, 2, 3)))
        assert theta_witness_violation(c6, w) is not None

    def test_oracle_agreement_seeded(self):
        hits = 0
        for g in seeded_hosts(300, max_n=8, start=0):
            got = find_theta(g)
            want = oracles.contains_theta(g)
            assert (got is not None) == want
            if got is not None:
                assert is_theta_witness(g, got)
                hits += 1
        assert 0 < hits < 300

    def test_cap(self):
        with pytest.raises(CapExceeded):
            find_theta(petersen(), cap=9)

    def test_deterministic(self):
        g = random_graph(8, 0.5, seed=77)
        assert find_theta(g) == find_theta(random_graph(8, 0.5, seed=77))


class TestPrism:
    def test_triangular_prism(self):
        g = prism_graph(2, 2, 2)
        emb = find_prism(g)
        assert emb is not None and is_embedding(g, emb)
        assert emb.pattern.n == 6

    def test_none_cases(self):
        assert find_prism(cycle_graph(6)) is None
        assert find_prism(petersen()) is None
        assert find_prism(complete_graph(5)) is None

    def test_line_graphs_of_thetas(self):
        for l1 in range(2, 4):
            for l2 in range(l1, 4):
                for l3 in range(l2, 4):
                    h = line_graph(theta_graph(l1, l2, l3))
                    emb = find_prism(h)
                    assert emb is not None and is_embedding(h, emb)

    def test_wall_line_graph(self):
        h = line_graph(wall(3))
        emb = find_prism(h)
        assert emb is not None and is_embedding(h, emb)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            find_prism(line_graph(wall(4)), cap=32)


class TestClique:
    def test_frozen(self):
        assert clique_number(complete_graph(4)) == (4, (0, 1, 2, 3))
        assert clique_number(petersen()) == (2, (0, 1))
        assert clique_number(cycle_graph(5)) == (2, (0, 1))
        assert clique_number(complete_bipartite(3, 3)) == (2, (0, 3))
        assert clique_number(build_graph(0, [])) == (0, ())
        assert clique_number(build_graph(3, [])) == (1, (0,))

    def test_oracle_agreement_seeded(self):
        for g in seeded_hosts(200, max_n=8, start=10_000):
            size, wit = clique_number(g)
            assert size == oracles.max_clique_mask(g).bit_count()
            assert mask_of(wit).bit_count() == size
            assert all(g.has_edge(a, b) for a, b in itertools.combinations(wit, 2))


class TestBiclique:
    def test_found_cases(self):
        g = complete_bipartite(3, 3)
        emb = find_biclique(g, 3)
        assert emb is not None and is_embedding(g, emb)
        emb2 = find_biclique(complete_bipartite(2, 3), 2)
        assert emb2 is not None and is_embedding(complete_bipartite(2, 3), emb2)

    def test_none_cases(self):
        assert find_biclique(theta_graph(3, 3, 3), 3) is None
        assert find_biclique(cycle_graph(6), 2) is None

    def test_bad_side(self):
        with pytest.raises(ValueError):
            find_biclique(cycle_graph(4), 0)

    def test_oracle_agreement_seeded(self):
        for i, g in enumerate(seeded_hosts(150, max_n=8, start=20_000)):
            s = 1 + i % 3
            got = find_biclique(g, s)
            assert (got is not None) == oracles.has_induced_biclique(g, s)
            if got is not None:
                assert is_embedding(g, got)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            find_biclique(petersen(), 2, cap=9)


class TestConstellation:
    def test_biclique_witness(self):
        g = complete_bipartite(2, 3)
        w = find_constellation(g, 2, 3)
        assert w == ConstellationWitness((0, 1), ((2,), (3,), (4,)))
        assert constellation_witness_violation(g, w, 2, 3) is None

    def test_single_center_single_path(self):
        g = cycle_graph(5)
        w = find_constellation(g, 1, 1)
        assert w is not None and constellation_witness_violation(g, w, 1, 1) is None

    def test_none_cases(self):
        assert find_constellation(complete_graph(4), 2, 1) is None
        assert find_constellation(path_graph(2), 1, 2) is None

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            find_constellation(cycle_graph(4), 0, 1)
        with pytest.raises(ValueError):
            find_constellation(cycle_graph(4), 1, 0)

    def test_validator_rejects_tampering(self):
        g = complete_bipartite(2, 3)
        assert "centers" in constellation_witness_violation(
            g, ConstellationWitness((0, 2), ((3,), (4,))), 2, 2
        )
        assert constellation_witness_violation(
            g, ConstellationWitness((0, 1), ((2,), (3,))), 2, 3
        ) is not None
        k4 = complete_graph(4)
        assert constellation_witness_violation(
            k4, ConstellationWitness((0,), ((1, 2),)), 1, 1
        ) is None
        assert "anticomplete" in constellation_witness_violation(
            k4, ConstellationWitness((0,), ((1,), (2,))), 1, 2
        )

    def test_longer_paths(self):
        # A center seeing both ends of a 4-vertex path.
        g = build_graph(5, [(1, 2), (2, 3), (3, 4), (0, 1), (0, 4)])
        w = find_constellation(g, 1, 1)
        assert w is not None and constellation_witness_violation(g, w, 1, 1) is None

    def test_cap(self):
        with pytest.raises(CapExceeded):
            find_constellation(random_graph(25, 0.5, seed=1), 1, 1)


class TestThreeInATree:
    @staticmethod
    def check_tree(g, verts, z):
        m = mask_of(verts)
        assert len(set(verts)) == len(verts)
        assert sum((g.adj[v] & m).bit_count() for v in verts) // 2 == len(verts) - 1
        assert len([v for v in z if m >> v & 1]) >= 3
        assert oracles.induces_tree(g, m)

    def test_path(self):
        g = path_graph(5)
        t = three_in_a_tree(g, (0, 2, 4))
        assert t == (0, 1, 2, 3, 4)
        self.check_tree(g, t, (0, 2, 4))

    def test_star(self):
        g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        t = three_in_a_tree(g, (1, 2, 3))
        assert t == (0, 1, 2, 3)
        self.check_tree(g, t, (1, 2, 3))

    def test_net_is_constricted(self):
        net = build_graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
        assert three_in_a_tree(net, (3, 4, 5)) is None
        assert is_constricted(net, (3, 4, 5))

    def test_biclique_side(self):
        g = complete_bipartite(3, 3)
        t = three_in_a_tree(g, (0, 1, 2))
        assert t is not None
        self.check_tree(g, t, (0, 1, 2))

    def test_bad_sets(self):
        with pytest.raises(ValueError):
            three_in_a_tree(path_graph(4), (0, 2))
        with pytest.raises(ValueError):
            three_in_a_tree(path_graph(4), (0, 1, 3))

    def test_oracle_agreement_seeded(self):
        checked = 0
        for g in seeded_hosts(250, max_n=8, start=30_000):
            z = next(
                (
                    trip
                    for trip in itertools.combinations(range(g.n), 3)
                    if not any(g.has_edge(a, b) for a, b in itertools.combinations(trip, 2))
                ),
                None,
            )
            if z is None:
                continue
            got = three_in_a_tree(g, z)
            assert (got is not None) == oracles.has_tree_with_three(g, z)
            if got is not None:
                self.check_tree(g, got, z)
            checked += 1
        assert checked > 100

    def test_cap(self):
        with pytest.raises(CapExceeded):
            three_in_a_tree(path_graph(5), (0, 2, 4), cap=4)


class TestWallLineExclusion:
    def test_triangle_free_host(self):
        rep = excludes_wall_line_graphs(petersen(), 3)
        assert rep.excluded and not rep.partial and rep.patterns_tried == 0
        assert "triangle-free" in rep.reason

    def test_hexagon_hosts_dodge_triangle_shortcut(self):
        # wall(2) is a 6-cycle, so its subdivision line graphs are cycles
        # and triangle-freeness of the host proves nothing.
        rep = excludes_wall_line_graphs(petersen(), 2)
        assert not rep.excluded
        assert rep.embedding is not None and is_embedding(petersen(), rep.embedding)

    def test_contains_itself(self):
        h = line_graph(wall(3))
        rep = excludes_wall_line_graphs(h, 3)
        assert not rep.excluded and not rep.partial
        assert rep.embedding is not None and is_embedding(h, rep.embedding)

    def test_small_host_r1(self):
        rep = excludes_wall_line_graphs(cycle_graph(5), 1)
        assert rep.excluded and not rep.partial and rep.patterns_tried == 0

    def test_long_cycle_r1(self):
        rep = excludes_wall_line_graphs(cycle_graph(7), 1)
        assert not rep.excluded
        assert rep.embedding is not None and is_embedding(cycle_graph(7), rep.embedding)

    def test_clique_host_exhausts_budget(self):
        rep = excludes_wall_line_graphs(complete_graph(20), 2, pattern_budget=1)
        assert rep.excluded and rep.partial and rep.patterns_tried == 1

    def test_small_triangle_host(self):
        rep = excludes_wall_line_graphs(complete_graph(4), 2)
        assert rep.excluded and not rep.partial

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            excludes_wall_line_graphs(cycle_graph(4), 0)
        with pytest.raises(CapExceeded):
            excludes_wall_line_graphs(line_graph(wall(4)), 3)


class TestMaxPathFan:
    def test_star(self):
        g = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        assert max_path_fan(g, 0, (1, 2, 3, 4)) == 4

    def test_path_middle(self):
        assert max_path_fan(path_graph(5), 2, (0, 4)) == 2

    def test_shared_cut_vertex(self):
        # Both targets sit behind vertex 1, so only one path fits.
        assert max_path_fan(path_graph(4), 0, (1, 3)) == 1

    def test_biclique(self):
        g = complete_bipartite(2, 3)
        assert max_path_fan(g, 0, (2, 3, 4)) == 3
        assert max_path_fan(g, 0, (1,)) == 1
        assert max_path_fan(g, 2, (3, 4)) == 2

    def test_unreachable_and_empty(self):
        g = build_graph(4, [(0, 1)])
        assert max_path_fan(g, 0, (2, 3)) == 0
        assert max_path_fan(g, 0, ()) == 0

    def test_hub_in_targets(self):
        with pytest.raises(ValueError):
            max_path_fan(path_graph(3), 1, (1, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 7), st.sampled_from((0.2, 0.4, 0.6)))
def test_witnesses_always_valid(seed, n, p):
    g = random_graph(n, p, seed=seed)
    w = find_theta(g)
    if w is not None:
        assert theta_witness_violation(g, w) is None
    emb = find_biclique(g, 2)
    if emb is not None:
        assert embedding_violation(g, emb) is None
    cw = find_constellation(g, 1, 2)
    if cw is not None:
        assert constellation_witness_violation(g, cw, 1, 2) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 7))
def test_theta_matches_oracle(seed, n):
    g = random_graph(n, 0.45, seed=seed)
    assert (find_theta(g) is not None) == oracles.contains_theta(g)
