"""Pure-Python hot loops. The compiled module mirrors these signatures exactly."""

from __future__ import annotations

from collections import deque
from typing import Sequence

# event codes returned by contract_pass
SEED, COMPONENT_DEATH, SUPERNODE_BIRTH, FORWARD_DEATH, SUPERNODE_DEATH = 0, 1, 2, 3, 4


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def forward_union_find(
    n: int, vertex_rank: Sequence[int], eu: Sequence[int], ev: Sequence[int]
) -> tuple[list[int], list[int]]:
    """Elder-rule union-find over edges given in processing order.

    Returns ``killed`` (per edge: the birth vertex of the component that dies,
    or -1 for a cycle-creating edge) and ``comp`` (per vertex: the birth
    vertex of its final component).
    """
    parent = list(range(n))
    size = [1] * n
    birth = list(range(n))  # root -> oldest vertex of its component
    killed = [-1] * len(eu)
    for k in range(len(eu)):
        ru = _find(parent, eu[k])
        rv = _find(parent, ev[k])
        if ru == rv:
            continue
        bu, bv = birth[ru], birth[rv]
        if vertex_rank[bu] < vertex_rank[bv]:
            killed[k], keep = bv, bu
        else:
            killed[k], keep = bu, bv
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        birth[ru] = keep
    comp = [birth[_find(parent, v)] for v in range(n)]
    return killed, comp


def tree_paths(
    n: int, tu: Sequence[int], tv: Sequence[int], qu: Sequence[int], qv: Sequence[int]
) -> tuple[list[int], list[int]]:
    """Paths in a forest between query endpoint pairs (same tree assumed).

    Returns CSR arrays: the path of query q is ``idx[ptr[q]:ptr[q+1]]``, a
    list of positions into the forest edge list.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k in range(len(tu)):
        adj[tu[k]].append((tv[k], k))
        adj[tv[k]].append((tu[k], k))
    parent = [-1] * n
    pedge = [-1] * n
    depth = [-1] * n
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, k in adj[x]:
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    pedge[y] = k
                    queue.append(y)
    ptr = [0]
    idx: list[int] = []
    for q in range(len(qu)):
        a, b = qu[q], qv[q]
        while depth[a] > depth[b]:
            idx.append(pedge[a])
            a = parent[a]
        while depth[b] > depth[a]:
            idx.append(pedge[b])
            b = parent[b]
        while a != b:
            idx.append(pedge[a])
            idx.append(pedge[b])
            a, b = parent[a], parent[b]
        ptr.append(len(idx))
    return ptr, idx


def gf2_reduce(n_rows: int, ptr: Sequence[int], rows: Sequence[int]) -> list[int]:
    """Left-to-right F2 column reduction; returns the pivot (max row) of each
    reduced column, or -1 when the column reduces to zero."""
    owner: dict[int, int] = {}
    reduced: list[int] = []
    lows = []
    for c in range(len(ptr) - 1):
        col = 0
        for r in rows[ptr[c] : ptr[c + 1]]:
            col ^= 1 << r
        while col:
            low = col.bit_length() - 1
            j = owner.get(low)
            if j is None:
                break
            col ^= reduced[j]
        reduced.append(col)
        if col:
            low = col.bit_length() - 1
            owner[low] = c
            lows.append(low)
        else:
            lows.append(-1)
    return lows


def contract_pass(
    n: int,
    comp: Sequence[int],
    vertex_step: Sequence[int],
    kinds: Sequence[int],
    ids: Sequence[int],
    steps: Sequence[int],
    eu: Sequence[int],
    ev: Sequence[int],
    low_col: Sequence[int],
) -> tuple[list[int], list[int]]:
    """Stream the contraction order after a complete forward pass.

    ``kinds[k]`` is 0 for a vertex and 1 for an edge, ``ids[k]`` its id and
    ``steps[k]`` its contraction step. ``comp`` and ``vertex_step`` come from
    the forward pass; ``low_col[e]`` is the forward column whose reduced pivot
    is edge ``e`` (rows ordered by contraction), or -1.

    A supernode cycle dies when an edge joins two pieces of the contracted
    edge graph; the one that dies is the younger piece's, dated by the step its
    first vertex entered the supernode.
    """
    in_s = [False] * n  # indexed by forward component (its birth vertex)
    entered = [False] * n
    cpar = list(range(n))
    entry = [0] * n
    s_bar = -1  # birth vertex of the bar that the supernode region carries
    etype = [0] * len(kinds)
    evalue = [-1] * len(kinds)
    for k in range(len(kinds)):
        x = ids[k]
        if kinds[k] == 0:
            if entered[x]:
                raise ValueError(f"vertex {x} contracted twice")
            entered[x] = True
            entry[x] = steps[k]
            c = comp[x]
            if s_bar < 0:
                etype[k] = SEED
                in_s[c] = True
                s_bar = c
            elif in_s[c]:
                etype[k] = SUPERNODE_BIRTH
            else:
                in_s[c] = True
                etype[k] = COMPONENT_DEATH
                if vertex_step[c] < vertex_step[s_bar]:
                    evalue[k] = s_bar
                    s_bar = c
                else:
                    evalue[k] = c
        else:
            u, w = eu[x], ev[x]
            if not (entered[u] and entered[w]):
                raise ValueError(f"edge {x} contracted before an endpoint")
            ru = _find(cpar, u)
            rw = _find(cpar, w)
            col = low_col[x]
            if col >= 0:
                if ru != rw:
                    raise ValueError("forward kill without a contracted path")
                etype[k] = FORWARD_DEATH
                evalue[k] = col
            else:
                if ru == rw:
                    raise ValueError("contracted path without a forward kill")
                etype[k] = SUPERNODE_DEATH
                if entry[ru] < entry[rw]:
                    evalue[k] = entry[rw]
                    cpar[rw] = ru
                else:
                    evalue[k] = entry[ru]
                    cpar[ru] = rw
    return etype, evalue
