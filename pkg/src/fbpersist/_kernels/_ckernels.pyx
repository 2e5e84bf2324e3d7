# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Same signatures and results as the pure module."""

from libc.stdlib cimport free, malloc

SEED, COMPONENT_DEATH, SUPERNODE_BIRTH, FORWARD_DEATH, SUPERNODE_DEATH = 0, 1, 2, 3, 4


cdef int* _ints(Py_ssize_t n) except NULL:
    cdef int* p = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    if p == NULL:
        raise MemoryError()
    return p


cdef inline int _find(int* parent, int x) noexcept nogil:
    cdef int root = x
    cdef int nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def forward_union_find(int n, vertex_rank, eu, ev):
    cdef Py_ssize_t m = len(eu)
    cdef int* parent = _ints(n)
    cdef int* size = _ints(n)
    cdef int* birth = _ints(n)
    cdef int* rank = _ints(n)
    cdef int* a = _ints(m)
    cdef int* b = _ints(m)
    cdef int* kill = _ints(m)
    cdef Py_ssize_t k
    cdef int i, ru, rv, bu, bv, keep, tmp
    try:
        for i in range(n):
            parent[i] = i
            size[i] = 1
            birth[i] = i
            rank[i] = vertex_rank[i]
        for k in range(m):
            a[k] = eu[k]
            b[k] = ev[k]
        with nogil:
            for k in range(m):
                kill[k] = -1
                ru = _find(parent, a[k])
                rv = _find(parent, b[k])
                if ru == rv:
                    continue
                bu = birth[ru]
                bv = birth[rv]
                if rank[bu] < rank[bv]:
                    kill[k] = bv
                    keep = bu
                else:
                    kill[k] = bu
                    keep = bv
                if size[ru] < size[rv]:
                    tmp = ru
                    ru = rv
                    rv = tmp
                parent[rv] = ru
                size[ru] += size[rv]
                birth[ru] = keep
        killed = [kill[k] for k in range(m)]
        comp = [birth[_find(parent, i)] for i in range(n)]
        return killed, comp
    finally:
        free(parent); free(size); free(birth); free(rank)
        free(a); free(b); free(kill)


def tree_paths(int n, tu, tv, qu, qv):
    cdef Py_ssize_t m = len(tu)
    cdef Py_ssize_t nq = len(qu)
    cdef int* deg = _ints(n + 1)
    cdef int* nbr = _ints(2 * m)
    cdef int* nedge = _ints(2 * m)
    cdef int* parent = _ints(n)
    cdef int* pedge = _ints(n)
    cdef int* depth = _ints(n)
    cdef int* queue = _ints(n)
    cdef int* fill = _ints(n)
    cdef Py_ssize_t k
    cdef int i, x, y, root, head, tail, j, p, q, u, v
    ptr = [0]
    idx = []
    try:
        for i in range(n + 1):
            deg[i] = 0
        for k in range(m):
            deg[<int>tu[k] + 1] += 1
            deg[<int>tv[k] + 1] += 1
        for i in range(n):
            deg[i + 1] += deg[i]
            fill[i] = deg[i]
        for k in range(m):
            u = tu[k]
            v = tv[k]
            nbr[fill[u]] = v
            nedge[fill[u]] = <int>k
            fill[u] += 1
            nbr[fill[v]] = u
            nedge[fill[v]] = <int>k
            fill[v] += 1
        with nogil:
            for i in range(n):
                parent[i] = -1
                pedge[i] = -1
                depth[i] = -1
            for root in range(n):
                if depth[root] >= 0:
                    continue
                depth[root] = 0
                head = 0
                tail = 0
                queue[tail] = root
                tail += 1
                while head < tail:
                    x = queue[head]
                    head += 1
                    for j in range(deg[x], deg[x + 1]):
                        y = nbr[j]
                        if depth[y] < 0:
                            depth[y] = depth[x] + 1
                            parent[y] = x
                            pedge[y] = nedge[j]
                            queue[tail] = y
                            tail += 1
        for k in range(nq):
            p = qu[k]
            q = qv[k]
            while depth[p] > depth[q]:
                idx.append(pedge[p])
                p = parent[p]
            while depth[q] > depth[p]:
                idx.append(pedge[q])
                q = parent[q]
            while p != q:
                idx.append(pedge[p])
                idx.append(pedge[q])
                p = parent[p]
                q = parent[q]
            ptr.append(len(idx))
        return ptr, idx
    finally:
        free(deg); free(nbr); free(nedge); free(parent)
        free(pedge); free(depth); free(queue); free(fill)


def gf2_reduce(int n_rows, ptr, rows):
    # Python ints are the bitset; xor on them already runs in C
    cdef dict owner = {}
    cdef list reduced = []
    cdef list lows = []
    cdef Py_ssize_t c, r, ncols = len(ptr) - 1
    cdef object col, j
    cdef long low
    for c in range(ncols):
        col = 0
        for r in range(ptr[c], ptr[c + 1]):
            col ^= 1 << rows[r]
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


def contract_pass(int n, comp, vertex_step, kinds, ids, steps, eu, ev, low_col):
    cdef Py_ssize_t total = len(kinds)
    cdef Py_ssize_t m = len(eu)
    cdef Py_ssize_t k
    cdef int* cmp = _ints(n)
    cdef int* vstep = _ints(n)
    cdef int* cpar = _ints(n)
    cdef int* entry = _ints(n)
    cdef char* in_s = <char*>malloc(n + 1)
    cdef char* entered = <char*>malloc(n + 1)
    cdef int* a = _ints(m)
    cdef int* b = _ints(m)
    cdef int* lc = _ints(m)
    cdef int i, x, c, u, w, ru, rw, col, s_bar = -1
    cdef list etype = [0] * total
    cdef list evalue = [-1] * total
    try:
        if in_s == NULL or entered == NULL:
            raise MemoryError()
        for i in range(n):
            cmp[i] = comp[i]
            vstep[i] = vertex_step[i]
            cpar[i] = i
            entry[i] = 0
            in_s[i] = 0
            entered[i] = 0
        for k in range(m):
            a[k] = eu[k]
            b[k] = ev[k]
            lc[k] = low_col[k]
        for k in range(total):
            x = ids[k]
            if kinds[k] == 0:
                if entered[x]:
                    raise ValueError(f"vertex {x} contracted twice")
                entered[x] = 1
                entry[x] = steps[k]
                c = cmp[x]
                if s_bar < 0:
                    etype[k] = SEED
                    in_s[c] = 1
                    s_bar = c
                elif in_s[c]:
                    etype[k] = SUPERNODE_BIRTH
                else:
                    in_s[c] = 1
                    etype[k] = COMPONENT_DEATH
                    if vstep[c] < vstep[s_bar]:
                        evalue[k] = s_bar
                        s_bar = c
                    else:
                        evalue[k] = c
            else:
                u = a[x]
                w = b[x]
                if not (entered[u] and entered[w]):
                    raise ValueError(f"edge {x} contracted before an endpoint")
                ru = _find(cpar, u)
                rw = _find(cpar, w)
                col = lc[x]
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
    finally:
        free(cmp); free(vstep); free(cpar); free(entry)
        free(in_s); free(entered); free(a); free(b); free(lc)
