"""Random instance generators shared by the tests."""

from fbpersist import Permutation, validate_filtration, validate_graph, vertex_to_full


def random_graph(rng, max_n=12, max_m=20):
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    return validate_graph(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(m)])


def random_filtration(rng, graph, lo=0, hi=9, vertex_based=True):
    vv = [rng.randint(lo, hi) for _ in range(graph.n_vertices)]
    if vertex_based:
        return vertex_to_full(graph, vv)
    ev = [max(vv[u], vv[v]) + rng.choice((0, 0, 1, 2)) for u, v in graph.edges]
    return validate_filtration(graph, vv, ev)


def random_permutation(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return Permutation(tuple(p))


def random_instance(rng, max_n=12, max_m=20):
    """Graph, vertex-based f, arbitrary g, and two permutations of f's levels."""
    graph = random_graph(rng, max_n, max_m)
    f = random_filtration(rng, graph)
    g = random_filtration(rng, graph, -3, 9, vertex_based=rng.random() < 0.5)
    n = len(f.levels)
    return graph, f, g, random_permutation(rng, n), random_permutation(rng, n)


def cumulative(groups):
    """Running unions of (vertices, edges) groups, skipping groups that add nothing."""
    seen_v, seen_e, out = set(), set(), []
    for vs, es in groups:
        if set(vs) <= seen_v and set(es) <= seen_e:
            continue
        seen_v |= set(vs)
        seen_e |= set(es)
        out.append((frozenset(seen_v), frozenset(seen_e)))
    return out


def sublevel_chain(graph, f):
    from fbpersist import sublevel_steps

    return [(frozenset(v), frozenset(e)) for v, e in sublevel_steps(graph, f).subgraphs]
