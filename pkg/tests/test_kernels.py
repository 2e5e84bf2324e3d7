import pytest

from fbpersist import _kernels, fb_persistence, fg_persistence, forward_inclusion

from helpers import random_filtration, random_graph, random_instance

compiled = pytest.mark.skipif("compiled" not in _kernels.BACKENDS, reason="extension not built")


def test_pure_always_available():
    assert "pure" in _kernels.BACKENDS
    with _kernels.use("pure"):
        assert _kernels.backend() == "pure"


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")


@compiled
def test_compiled_is_default():
    assert _kernels.backend() == "compiled"


@compiled
def test_union_find_and_paths_agree(rng):
    pure, comp = _kernels.BACKENDS["pure"], _kernels.BACKENDS["compiled"]
    for _ in range(50):
        n = rng.randint(1, 30)
        eu = [rng.randrange(n) for _ in range(40)]
        ev = [rng.randrange(n) for _ in range(40)]
        rank = list(range(n))
        rng.shuffle(rank)
        assert pure.forward_union_find(n, rank, eu, ev) == comp.forward_union_find(n, rank, eu, ev)
        tu = [rng.randrange(v) for v in range(1, n)]
        tv = list(range(1, n))
        qu = [rng.randrange(n) for _ in range(10)]
        qv = [rng.randrange(n) for _ in range(10)]
        assert pure.tree_paths(n, tu, tv, qu, qv) == comp.tree_paths(n, tu, tv, qu, qv)


@compiled
def test_gf2_reduce_agrees_past_word_size(rng):
    pure, comp = _kernels.BACKENDS["pure"], _kernels.BACKENDS["compiled"]
    for _ in range(30):
        ptr, rows = [0], []
        for _ in range(rng.randint(1, 40)):
            rows += rng.sample(range(200), rng.randint(1, 6))
            ptr.append(len(rows))
        assert pure.gf2_reduce(200, ptr, rows) == comp.gf2_reduce(200, ptr, rows)


@compiled
def test_diagrams_identical_across_backends(rng):
    for _ in range(40):
        g, f, h, _, _ = random_instance(rng, max_n=20, max_m=40)
        out = {}
        for name in ("pure", "compiled"):
            with _kernels.use(name):
                fwd = forward_inclusion(g, f)
                out[name] = (fwd.pd0, fwd.pd1, fb_persistence(g, f).pairs, fg_persistence(g, f, h).pairs)
        assert out["pure"] == out["compiled"]


@compiled
def test_contract_pass_rejects_bad_order():
    comp = _kernels.BACKENDS["compiled"]
    pure = _kernels.BACKENDS["pure"]
    for k in (pure, comp):
        with pytest.raises(ValueError):
            k.contract_pass(2, [0, 0], [0, 0], [1], [0], [1], [0], [1], [-1])


def test_forward_result_stable_under_pure(rng):
    g = random_graph(rng)
    f = random_filtration(rng, g)
    with _kernels.use("pure"):
        a = forward_inclusion(g, f)
    b = forward_inclusion(g, f)
    assert (a.pd0, a.pd1) == (b.pd0, b.pd1)
