"""Compiled inner loops over CSR adjacency (``indptr``, ``indices``).

Everything here is single-threaded and order-deterministic; callers decide
how to split work across threads.
"""
import numpy as np
from numba import njit

UNREACHABLE = -1


@njit(cache=True, nogil=True)
def bfs_into(indptr, indices, src, dist, queue):
    dist[:] = UNREACHABLE
    dist[src] = 0
    queue[0] = src
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if dist[w] == UNREACHABLE:
                dist[w] = dv
                queue[tail] = w
                tail += 1
    return tail


@njit(cache=True, nogil=True)
def all_pairs_into(indptr, indices, sources, out):
    """Row ``r`` of ``out`` receives BFS distances from ``sources[r]``."""
    n = indptr.shape[0] - 1
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for r in range(sources.shape[0]):
        bfs_into(indptr, indices, sources[r], dist, queue)
        for j in range(n):
            out[r, j] = dist[j]


@njit(cache=True, nogil=True)
def component_labels(indptr, indices):
    n = indptr.shape[0] - 1
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    cid = 0
    for s in range(n):
        if labels[s] != -1:
            continue
        labels[s] = cid
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            v = queue[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if labels[w] == -1:
                    labels[w] = cid
                    queue[tail] = w
                    tail += 1
        cid += 1
    return labels


@njit(cache=True, nogil=True)
def triangles_per_node(indptr, indices):
    n = indptr.shape[0] - 1
    tri = np.zeros(n, dtype=np.int64)
    mark = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        for p in range(indptr[i], indptr[i + 1]):
            mark[indices[p]] = i
        t = 0
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            for q in range(indptr[j], indptr[j + 1]):
                if mark[indices[q]] == i:
                    t += 1
        tri[i] = t // 2
    return tri


@njit(cache=True, nogil=True)
def edge_betweenness(indptr, indices, edge_ids, m):
    """Shortest-path dependency accumulation from every source, in index order.

    Each unordered pair is visited from both ends, hence the final halving.
    """
    n = indptr.shape[0] - 1
    eb = np.zeros(m, dtype=np.float64)
    dist = np.empty(n, dtype=np.int64)
    sigma = np.empty(n, dtype=np.float64)
    delta = np.empty(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            v = order[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        for k in range(tail - 1, 0, -1):
            w = order[k]
            coeff = (1.0 + delta[w]) / sigma[w]
            for p in range(indptr[w], indptr[w + 1]):
                v = indices[p]
                if dist[v] == dist[w] - 1:
                    c = sigma[v] * coeff
                    eb[edge_ids[p]] += c
                    delta[v] += c
    return eb / 2.0


@njit(cache=True, nogil=True)
def box_cover_counts(dist, radius, perms):
    """Random sequential ball covering, one run per row of ``perms``.

    Walking a uniform random permutation and skipping covered nodes draws
    each new center uniformly from the currently uncovered set.
    """
    reps, n = perms.shape
    counts = np.zeros(reps, dtype=np.int64)
    covered = np.zeros(n, dtype=np.bool_)
    for r in range(reps):
        covered[:] = False
        boxes = 0
        remaining = n
        for t in range(n):
            i = perms[r, t]
            if covered[i]:
                continue
            boxes += 1
            row = dist[i]
            for j in range(n):
                if not covered[j] and row[j] >= 0 and row[j] <= radius:
                    covered[j] = True
                    remaining -= 1
            if remaining == 0:
                break
        counts[r] = boxes
    return counts


@njit(cache=True, nogil=True)
def _ci_value(indptr, indices, alive, deg, i, radius, stamp, dist, queue, token):
    if deg[i] <= 1:
        return 0
    stamp[i] = token
    dist[i] = 0
    queue[0] = i
    head, tail = 0, 1
    frontier = 0
    while head < tail:
        v = queue[head]
        head += 1
        if dist[v] == radius:
            frontier += deg[v] - 1
            continue
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if alive[w] and stamp[w] != token:
                stamp[w] = token
                dist[w] = dist[v] + 1
                queue[tail] = w
                tail += 1
    return (deg[i] - 1) * frontier


@njit(cache=True, nogil=True)
def adaptive_removal_order(indptr, indices, strategy, radius, localized, max_removals):
    """Greedy one-at-a-time removal with scores refreshed after every step.

    strategy 0: current degree. strategy 1: collective influence at ``radius``.
    Ties go to higher current degree, then lower index.
    """
    n = indptr.shape[0] - 1
    alive = np.ones(n, dtype=np.bool_)
    deg = np.empty(n, dtype=np.int64)
    for i in range(n):
        deg[i] = indptr[i + 1] - indptr[i]
    score = np.zeros(n, dtype=np.int64)
    stamp = np.zeros(n, dtype=np.int64)
    dist = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    touched = np.empty(n, dtype=np.int64)
    token = 0
    if strategy == 1:
        for i in range(n):
            token += 1
            score[i] = _ci_value(indptr, indices, alive, deg, i, radius, stamp, dist, queue, token)
    order = np.empty(min(n, max_removals), dtype=np.int64)
    for step in range(order.shape[0]):
        best = -1
        for i in range(n):
            if not alive[i]:
                continue
            if best < 0:
                best = i
                continue
            if strategy == 1:
                if score[i] > score[best] or (score[i] == score[best] and deg[i] > deg[best]):
                    best = i
            elif deg[i] > deg[best]:
                best = i
        order[step] = best
        if strategy == 1 and localized:
            # nodes within radius+1 of the removed node, measured before removal
            token += 1
            stamp[best] = token
            dist[best] = 0
            queue[0] = best
            head, tail = 0, 1
            while head < tail:
                v = queue[head]
                head += 1
                if dist[v] == radius + 1:
                    continue
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if alive[w] and stamp[w] != token:
                        stamp[w] = token
                        dist[w] = dist[v] + 1
                        queue[tail] = w
                        tail += 1
            n_touched = tail
            touched[:n_touched] = queue[:n_touched]
        alive[best] = False
        for p in range(indptr[best], indptr[best + 1]):
            w = indices[p]
            if alive[w]:
                deg[w] -= 1
        deg[best] = 0
        if strategy == 1:
            if localized:
                for k in range(1, n_touched):
                    i = touched[k]
                    token += 1
                    score[i] = _ci_value(indptr, indices, alive, deg, i, radius, stamp, dist, queue, token)
            else:
                for i in range(n):
                    if alive[i]:
                        token += 1
                        score[i] = _ci_value(indptr, indices, alive, deg, i, radius, stamp, dist, queue, token)
            score[best] = 0
    return order


@njit(cache=True, nogil=True)
def giant_sizes_reverse(indptr, indices, order):
    """Largest component size after each prefix of ``order`` is removed.

    Entry k is the giant size once the first k nodes are gone; nodes absent
    from ``order`` are present throughout. Computed by re-adding nodes in
    reverse with a union-find.
    """
    n = indptr.shape[0] - 1
    k_total = order.shape[0]
    present = np.ones(n, dtype=np.bool_)
    for k in range(k_total):
        present[order[k]] = False
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    giant = 0

    for v in range(n):
        if present[v]:
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if w < v and present[w]:
                    a = v
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    b = w
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        if size[a] < size[b]:
                            a, b = b, a
                        parent[b] = a
                        size[a] += size[b]
    for v in range(n):
        if present[v]:
            a = v
            while parent[a] != a:
                a = parent[a]
            if size[a] > giant:
                giant = size[a]

    out = np.zeros(k_total + 1, dtype=np.int64)
    out[k_total] = giant
    for k in range(k_total - 1, -1, -1):
        v = order[k]
        present[v] = True
        if giant < 1:
            giant = 1
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if present[w]:
                a = v
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                b = w
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    if size[a] < size[b]:
                        a, b = b, a
                    parent[b] = a
                    size[a] += size[b]
                    if size[a] > giant:
                        giant = size[a]
        out[k] = giant
    return out


@njit(cache=True, nogil=True)
def _has_edge(indptr, nbr, x, y):
    if indptr[x + 1] - indptr[x] > indptr[y + 1] - indptr[y]:
        x, y = y, x
    for p in range(indptr[x], indptr[x + 1]):
        if nbr[p] == y:
            return True
    return False


@njit(cache=True, nogil=True)
def _replace(indptr, nbr, x, old, new):
    for p in range(indptr[x], indptr[x + 1]):
        if nbr[p] == old:
            nbr[p] = new
            return


@njit(cache=True, nogil=True)
def double_edge_swap(edges, indptr, indices, target, max_attempts, seed):
    """In-place degree-preserving rewiring; returns (successes, attempts).

    Degrees never change, so each node keeps a fixed-width neighbour row that
    is edited in place.
    """
    np.random.seed(seed)
    m = edges.shape[0]
    nbr = indices.copy()
    done = 0
    attempts = 0
    while done < target and attempts < max_attempts:
        attempts += 1
        e1 = np.random.randint(0, m)
        e2 = np.random.randint(0, m - 1)
        if e2 >= e1:
            e2 += 1
        a, b = edges[e1, 0], edges[e1, 1]
        c, d = edges[e2, 0], edges[e2, 1]
        if np.random.random() < 0.5:
            c, d = d, c
        if a == d or c == b:
            continue
        if _has_edge(indptr, nbr, a, d) or _has_edge(indptr, nbr, c, b):
            continue
        _replace(indptr, nbr, a, b, d)
        _replace(indptr, nbr, b, a, c)
        _replace(indptr, nbr, c, d, b)
        _replace(indptr, nbr, d, c, a)
        edges[e1, 0], edges[e1, 1] = min(a, d), max(a, d)
        edges[e2, 0], edges[e2, 1] = min(c, b), max(c, b)
        done += 1
    return done, attempts


@njit(cache=True, nogil=True)
def wilson_tree(indptr, indices, root, seed):
    """Parent array of a uniform spanning tree via loop-erased random walks."""
    np.random.seed(seed)
    n = indptr.shape[0] - 1
    in_tree = np.zeros(n, dtype=np.bool_)
    nxt = np.full(n, -1, dtype=np.int64)
    in_tree[root] = True
    for start in range(n):
        u = start
        while not in_tree[u]:
            deg = indptr[u + 1] - indptr[u]
            nxt[u] = indices[indptr[u] + np.random.randint(0, deg)]
            u = nxt[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = nxt[u]
    return nxt
