from collections import Counter

import pytest
from hypothesis import given, settings

from fbpersist import (
    Permutation,
    backward_filtration,
    descending_schedule,
    intermediate_complexes,
    permute_filtration,
    sigma_forward_filtration,
    sublevel_steps,
    tau_backward_filtration,
    validate_filtration,
    validate_graph,
    vertex_to_full,
)
from fbpersist.core import NotAPermutation, NotVertexBased
from fbpersist.filtration import groups_from_filtration, shift_to_positive

from helpers import cumulative, sublevel_chain
from strategies import filtration_with_permutation, vertex_filtrations

TWO_TRIANGLES_EDGES = [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (4, 7), (6, 7)]
TWO_TRIANGLES_VALUES = [1, 3, 2, 3, 4, 1, 2, 2]


def ic_groups(ics, order=None):
    order = range(len(ics)) if order is None else order
    return [(ics[i].vertices, ics[i].edges) for i in order]


def betti1(graph, vertices, edges):
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    loops = 0
    for e in edges:
        a, b = find(graph.edges[e][0]), find(graph.edges[e][1])
        if a == b:
            loops += 1
        else:
            parent[a] = b
    return loops


# sublevel steps


def test_constant_filtration_single_step():
    g = validate_graph(3, [(0, 1), (1, 2)])
    steps = sublevel_steps(g, vertex_to_full(g, [4, 4, 4]))
    assert steps.subgraphs == ((frozenset({0, 1, 2}), frozenset({0, 1})),)


def test_path_sublevel_steps():
    g = validate_graph(3, [(0, 1), (1, 2)])
    steps = sublevel_steps(g, vertex_to_full(g, [1, 1, 2]))
    assert steps.subgraphs[0] == (frozenset({0, 1}), frozenset({0}))
    assert steps.subgraphs[1] == (frozenset({0, 1, 2}), frozenset({0, 1}))


def test_two_triangles_vertex_counts():
    g = validate_graph(8, TWO_TRIANGLES_EDGES)
    steps = sublevel_steps(g, vertex_to_full(g, TWO_TRIANGLES_VALUES))
    assert [len(v) for v, _ in steps.subgraphs] == [2, 5, 7, 8]


# intermediate complexes


def test_constant_filtration_single_ic():
    g = validate_graph(3, [(0, 1), (1, 2), (2, 0)])
    (ic,) = intermediate_complexes(g, vertex_to_full(g, [2, 2, 2]))
    assert ic.vertices == frozenset({0, 1, 2})
    assert ic.edges == frozenset({0, 1, 2})


def test_path_star_red_ic_has_closure():
    g = validate_graph(4, [(0, 1), (1, 2), (2, 3)])
    ics = intermediate_complexes(g, vertex_to_full(g, [2, 1, 1, 2]))
    assert ics[1].vertices == frozenset({0, 1, 2, 3})
    assert ics[1].edges == frozenset({0, 2})


def test_bigon_square_top_ic_cyclic_only_in_g():
    G = validate_graph(6, [(0, 3), (0, 3), (1, 2), (4, 5)])
    H = validate_graph(6, [(0, 1), (0, 3), (1, 4), (3, 4)])
    heights = [3, 3, 3, 0, 0, 0]
    top_G = intermediate_complexes(G, vertex_to_full(G, heights))[-1]
    top_H = intermediate_complexes(H, vertex_to_full(H, heights))[-1]
    assert betti1(G, top_G.vertices, top_G.edges) == 1
    assert betti1(H, top_H.vertices, top_H.edges) == 0


@given(vertex_filtrations())
@settings(max_examples=100, deadline=None)
def test_ic_edges_partition(gf):
    g, f = gf
    ics = intermediate_complexes(g, f)
    counts = Counter(e for ic in ics for e in ic.edges)
    assert set(counts) == set(range(g.n_edges))
    assert all(c == 1 for c in counts.values())
    assert set().union(*(ic.vertices for ic in ics)) == set(range(g.n_vertices))


# backward filtration


def test_backward_isolated_vertex():
    g = validate_graph(1, [])
    fb = backward_filtration(g, vertex_to_full(g, [5]))
    assert fb.vertex_values == (-5,)


def test_backward_path_example():
    g = validate_graph(2, [(0, 1)])
    fb = backward_filtration(g, vertex_to_full(g, [1, 2]))
    assert fb.vertex_values == (-2, -2)
    assert fb.edge_values == (-2,)


def test_backward_needs_vertex_based():
    g = validate_graph(2, [(0, 1)])
    with pytest.raises(NotVertexBased):
        backward_filtration(g, validate_filtration(g, [1, 1], [2]))


def test_two_triangles_backward_reverses_ics():
    g = validate_graph(8, TWO_TRIANGLES_EDGES)
    f = vertex_to_full(g, TWO_TRIANGLES_VALUES)
    ics = intermediate_complexes(g, f)
    fb = backward_filtration(g, f)
    assert sublevel_chain(g, fb) == cumulative(ic_groups(ics, [3, 2, 1, 0]))


@given(vertex_filtrations())
@settings(max_examples=200, deadline=None)
def test_ic_reversal(gf):
    # compared as cumulative contraction sequences: reversing can merge levels
    g, f = gf
    ics = intermediate_complexes(g, f)
    fb = backward_filtration(g, f)
    assert sublevel_chain(g, fb) == cumulative(ic_groups(ics, reversed(range(len(ics)))))
    for e, (u, v) in enumerate(g.edges):
        assert fb.edge_values[e] >= max(fb.vertex_values[u], fb.vertex_values[v])


# tau / sigma


def test_tau_reverse_is_backward(rng):
    from helpers import random_filtration, random_graph

    for _ in range(50):
        g = random_graph(rng)
        f = random_filtration(rng, g)
        re = Permutation.reverse(len(f.levels))
        assert tau_backward_filtration(g, f, re.inverse()) == backward_filtration(g, f)


def test_tau_identity_two_levels():
    g = validate_graph(3, [(0, 1), (1, 2)])
    f = vertex_to_full(g, [1, 1, 2])
    ft = tau_backward_filtration(g, f, Permutation.identity(2))
    ics = intermediate_complexes(g, f)
    assert sublevel_chain(g, ft) == cumulative(ic_groups(ics, [0, 1]))


def test_tau_three_levels():
    g = validate_graph(4, [(0, 1), (1, 2), (2, 3)])
    f = vertex_to_full(g, [1, 2, 3, 3])
    tau = Permutation((1, 0, 2))
    ft = tau_backward_filtration(g, f, tau.inverse())
    ics = intermediate_complexes(g, f)
    assert sublevel_chain(g, ft) == cumulative(ic_groups(ics, [1, 0, 2]))


def test_tau_wrong_size():
    g = validate_graph(2, [(0, 1)])
    with pytest.raises(NotAPermutation):
        tau_backward_filtration(g, vertex_to_full(g, [1, 2]), Permutation.identity(3))


@given(filtration_with_permutation())
@settings(max_examples=200, deadline=None)
def test_tau_realization(data):
    g, f, perm = data
    tau = Permutation(perm)
    ft = tau_backward_filtration(g, f, tau.inverse())
    ics = intermediate_complexes(g, f)
    assert sublevel_chain(g, ft) == cumulative(ic_groups(ics, [tau(k) for k in range(len(tau))]))


@given(filtration_with_permutation())
@settings(max_examples=100, deadline=None)
def test_sigma_forward_realization(data):
    g, f, perm = data
    sigma = Permutation(perm)
    fs = sigma_forward_filtration(g, f, sigma)
    ics = intermediate_complexes(g, f)
    assert sublevel_chain(g, fs) == cumulative(ic_groups(ics, [sigma(k) for k in range(len(sigma))]))
    assert set(fs.levels) <= set(f.levels)


def test_sigma_identity_returns_f(rng):
    from helpers import random_filtration, random_graph

    for _ in range(30):
        g = random_graph(rng)
        f = random_filtration(rng, g)
        assert sigma_forward_filtration(g, f, Permutation.identity(len(f.levels))) == f


# permute


def test_permute_identity_and_swap():
    g = validate_graph(2, [(0, 1)])
    f = vertex_to_full(g, [1, 2])
    same = permute_filtration(f, Permutation.identity(2))
    assert same.vertex_values == f.vertex_values and same.edge_values == f.edge_values
    swapped = permute_filtration(f, Permutation((1, 0)))
    assert swapped.vertex_values == (2, 1)
    assert swapped.edge_values == (1,)
    assert swapped.ordering_only


def test_permute_preserves_level_histogram():
    g = validate_graph(8, TWO_TRIANGLES_EDGES)
    f = vertex_to_full(g, [1, 3, 2, 3, 3, 1, 2, 2])
    p = permute_filtration(f, Permutation((2, 0, 1)))
    before = Counter(f.vertex_values + f.edge_values)
    after = Counter(p.vertex_values + p.edge_values)
    assert sorted(before.values()) == sorted(after.values())
    assert set(after) == set(before)


# descending schedule


def test_descending_constant():
    g = validate_graph(3, [(0, 1), (1, 2)])
    (grp,) = descending_schedule(g, vertex_to_full(g, [1, 1, 1]))
    assert grp.vertices == frozenset({0, 1, 2}) and grp.edges == frozenset({0, 1})


def test_descending_path():
    # upper-star groups: each edge goes with the lower of its endpoints
    g = validate_graph(3, [(0, 1), (1, 2)])
    groups = descending_schedule(g, vertex_to_full(g, [1, 2, 3]))
    assert [(set(x.vertices), set(x.edges)) for x in groups] == [
        ({2}, set()),
        ({1, 2}, {1}),
        ({0, 1}, {0}),
    ]


@given(vertex_filtrations())
@settings(max_examples=100, deadline=None)
def test_descending_prefixes_are_superlevel_subgraphs(gf):
    g, f = gf
    groups = descending_schedule(g, f)
    chain = cumulative([(x.vertices, x.edges) for x in groups])
    expected = []
    for a in reversed(f.levels):
        vs = frozenset(v for v in range(g.n_vertices) if f.vertex_values[v] >= a)
        es = frozenset(e for e, (u, w) in enumerate(g.edges) if u in vs and w in vs)
        if not expected or expected[-1] != (vs, es):
            expected.append((vs, es))
    assert chain == expected


def test_groups_hold_only_new_cells():
    g = validate_graph(3, [(0, 1), (1, 2)])
    groups = groups_from_filtration(g, vertex_to_full(g, [1, 2, 3]))
    assert [(grp.vertices, grp.edges) for grp in groups] == [((0,), ()), ((1,), (0,)), ((2,), (1,))]


def test_shift_to_positive():
    assert shift_to_positive([1, 2]) is None
    assert shift_to_positive([-3, 2]) == 4
    assert shift_to_positive([0]) == 1
