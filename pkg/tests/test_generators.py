import re

import numpy as np
import pytest

from mimsolve.decomposition import interval_decomposition, mimw_of_dec
from mimsolve.generators import (CONSTRUCTIONS, PartitionedGraph, gen_clique_gadget, gen_core,
                                 gen_d_dom_gadget, gen_domset_gadget, gen_random_interval,
                                 gen_total_dom_gadget, generate, pad_partition, random_source,
                                 write_metadata)
from mimsolve.graph import Graph
from mimsolve.oracle import brute_sigma_rho


def _role_index(roles, pattern):
    rx = re.compile(pattern)
    return {tuple(int(x) for x in m.groups()): v for v, r in enumerate(roles) if (m := rx.fullmatch(r))}


def check_crossing_law(graph, roles):
    """z[i,h] ~ r[i,j,s,t] iff h != s, z[j,h] ~ r iff h != t, and no other Z-R edges."""
    Z = _role_index(roles, r"z\[(\d+),(\d+)\]")
    R = _role_index(roles, r"r\[(\d+),(\d+),(\d+),(\d+)\]")
    for (i, j, s, t), x in R.items():
        for (a, h), z in Z.items():
            want = (a == i and h != s) or (a == j and h != t)
            if graph.has_edge(x, z) != want:
                return False
    return True


def test_pad_partition_modes():
    pg = PartitionedGraph(Graph(3, [(0, 2)]), ((0, 1), (2,)))
    same = PartitionedGraph(Graph(4, [(0, 2)]), ((0, 1), (2, 3)))
    assert pad_partition(same, "clique") is same
    cl = pad_partition(pg, "clique")
    assert cl.graph.n == 4 and cl.graph.edges == ((0, 2),)
    is_ = pad_partition(pg, "is")
    assert set(is_.graph.neighbors[3]) == {0, 1}
    with pytest.raises(ValueError):
        pad_partition(pg, "other")


def test_core_examples():
    pg = PartitionedGraph(Graph(4, [(0, 2)]), ((0, 1), (2, 3)))
    g, roles = gen_core(pg)
    assert g.n == 5
    r = roles.index("r[1,2,1,1]")
    zs = {roles[v] for v in g.neighbors[r] if roles[v].startswith("z")}
    assert zs == {"z[1,2]", "z[2,2]"}
    assert check_crossing_law(g, roles)
    empty = PartitionedGraph(Graph(4, []), ((0, 1), (2, 3)))
    g, roles = gen_core(empty)
    assert g.edges == ((0, 1), (2, 3))


def test_clique_gadget_sizes():
    rng = np.random.default_rng(1)
    inst = gen_clique_gadget(random_source(3, 2, 0.5, rng), 1)
    B = [v for v, r in enumerate(inst.roles) if r.startswith("b")]
    assert len(B) == 6 and inst.target == 12
    inst = gen_clique_gadget(random_source(3, 2, 0.5, rng), 2)
    assert len([r for r in inst.roles if r.startswith("b")]) == 18
    b1 = inst.roles.index("b1[1,1]")
    assert {inst.roles[v] for v in inst.graph.neighbors[b1]} == {"b2[1,1]", "z[1,1]", "z[1,2]"}
    with pytest.raises(ValueError):
        gen_clique_gadget(random_source(2, 2, 0.5, rng), 1)


def test_domset_gadget_shape():
    rng = np.random.default_rng(2)
    inst = gen_domset_gadget(random_source(2, 2, 0.5, rng))
    for i in (1, 2):
        b = inst.roles.index(f"b[{i}]")
        assert len(inst.graph.neighbors[b]) == 2
    assert inst.target == 2


def test_total_dom_gadget_shape():
    rng = np.random.default_rng(3)
    inst = gen_total_dom_gadget(random_source(3, 2, 0.5, rng))
    for i in (1, 2, 3):
        c = inst.roles.index(f"c[{i}]")
        assert [inst.roles[v] for v in inst.graph.neighbors[c]] == [f"b[{i}]"]
    assert inst.target == 6


def test_d_dom_gadget_shape():
    rng = np.random.default_rng(4)
    for d in (2, 3):
        inst = gen_d_dom_gadget(random_source(3, 2, 0.7, rng), d)
        roles, g = inst.roles, inst.graph
        c1 = {v for v, r in enumerate(roles) if r.startswith("c1[")}
        for v, r in enumerate(roles):
            if r.startswith("r["):
                assert len(c1 & set(g.neighbors[v])) == d - 1
        for i in (1, 2, 3):
            last = roles.index(f"c1[{i},{d}]")
            assert {roles[u] for u in g.neighbors[last]} == {f"c2[{i},{h}]" for h in range(1, d + 1)}
        assert inst.target == 3 * (d + 1)
    with pytest.raises(ValueError):
        gen_d_dom_gadget(random_source(2, 2, 0.5, rng), 1)


def test_crossing_law_on_every_construction():
    rng = np.random.default_rng(5)
    for c in CONSTRUCTIONS:
        for _ in range(10):
            pg = random_source(3, 3, rng.random(), rng, [int(rng.integers(1, 4)) for _ in range(3)])
            inst = generate(c, pg, 2, certify=False)
            assert check_crossing_law(inst.graph, inst.roles)


def test_clique_yes_instance():
    tri = PartitionedGraph(Graph(3, [(0, 1), (1, 2), (0, 2)]), ((0,), (1,), (2,)))
    inst = generate("clique-gadget", tri, 1)
    assert inst.expected
    assert brute_sigma_rho(inst.graph, inst.query()).max_value >= inst.target


def test_domset_examples():
    yes = PartitionedGraph(Graph(4, [(0, 2)]), ((0, 1), (2, 3)))
    inst = generate("domset-gadget", yes)
    assert inst.expected and brute_sigma_rho(inst.graph, inst.query()).min_value == 2
    no = PartitionedGraph(Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)]), ((0, 1), (2, 3)))
    inst = generate("domset-gadget", no)
    assert not inst.expected and brute_sigma_rho(inst.graph, inst.query()).min_value > 2


@pytest.mark.parametrize("construction", ["total-dom-gadget", "d-dom-gadget"])
def test_yes_and_no_sources(construction):
    yes = PartitionedGraph(Graph(4, [(0, 2)]), ((0, 1), (2, 3)))
    no = PartitionedGraph(Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)]), ((0, 1), (2, 3)))
    for pg, want in ((yes, True), (no, False)):
        inst = generate(construction, pg, 2)
        assert inst.expected == want
        assert (inst.target in brute_sigma_rho(inst.graph, inst.query()).feasible_sizes) == want


def test_metadata_lines():
    rng = np.random.default_rng(6)
    inst = generate("clique-gadget", random_source(3, 2, 0.5, rng), 1)
    text = write_metadata(inst)
    assert text.startswith("construction clique-gadget\ntarget 12\nexpected ")
    assert sum(1 for ln in text.splitlines() if ln.startswith("role ")) == inst.graph.n


def test_random_interval():
    g, iv = gen_random_interval(1, 0)
    assert g.n == 1 and g.m == 0
    g, iv = gen_random_interval(12, 7)
    ends = sorted(x for pair in iv for x in pair)
    assert ends == list(range(1, 25))
    assert gen_random_interval(12, 7) == (g, iv)
    assert mimw_of_dec(g, interval_decomposition(g, iv)).mimw <= 1


def test_disjoint_intervals_give_empty_graph():
    from mimsolve.decomposition import interval_graph
    assert interval_graph([(1, 2), (3, 4), (5, 6)]).m == 0
