"""
Compiled orbit kernel over a dense encoding of the tuple space.

A tuple over ``k`` allowed elements is encoded as a base-``k`` integer of its
free entries (most significant first).  In projective mode the last entry is
implied by the product condition and is not encoded, so codes and entry
sequences sort the same way.  The kernel scans codes in increasing order and
runs a breadth-first search from each unvisited valid code; the seed is
therefore the smallest code of its orbit.

Only forward braid moves are applied: each move permutes a finite set, so its
inverse is one of its positive powers and forward closure already reaches the
whole orbit.
"""

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

DENSE_LIMIT = 2 * 10**8


def _kernel(table, inv, allowed, pos, r, projective, conj_maps, max_orbit):
    k = allowed.shape[0]
    m = r - 1 if projective else r
    N = 1
    for _ in range(m):
        N *= k
    w = np.empty(m, np.int64)
    acc = 1
    for i in range(m - 1, -1, -1):
        w[i] = acc
        acc *= k
    fwd = np.empty((k, k), np.int64)
    for a in range(k):
        A = allowed[a]
        for b in range(k):
            fwd[a, b] = pos[table[table[A, allowed[b]], inv[A]]]
    visited = np.zeros(N, np.uint8)
    queue = np.empty(N, np.int64)
    d = np.empty(r, np.int64)
    nconj = conj_maps.shape[0]
    seeds = []
    counts = []
    overflow = False
    for s in range(N):
        if visited[s]:
            continue
        if projective:
            c = s
            for i in range(m - 1, -1, -1):
                d[i] = c % k
                c //= k
            p = 0
            for i in range(m):
                p = table[p, allowed[d[i]]]
            if pos[inv[p]] < 0:
                visited[s] = 1
                continue
        visited[s] = 1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            code = queue[head]
            head += 1
            c = code
            for i in range(m - 1, -1, -1):
                d[i] = c % k
                c //= k
            if projective:
                p = 0
                for i in range(m):
                    p = table[p, allowed[d[i]]]
                d[m] = pos[inv[p]]
            for i in range(r - 1):
                a = d[i]
                b = d[i + 1]
                na = fwd[a, b]
                if i + 1 < m:
                    nxt = code + (na - a) * w[i] + (a - b) * w[i + 1]
                else:
                    nxt = code + (na - a) * w[i]
                if visited[nxt] == 0:
                    visited[nxt] = 1
                    queue[tail] = nxt
                    tail += 1
            for j in range(nconj):
                nxt = 0
                for i in range(m):
                    nxt += conj_maps[j, d[i]] * w[i]
                if visited[nxt] == 0:
                    visited[nxt] = 1
                    queue[tail] = nxt
                    tail += 1
            if tail > max_orbit:
                overflow = True
                break
        if overflow:
            break
        seeds.append(s)
        counts.append(tail)
    return np.array(seeds, dtype=np.int64), np.array(counts, dtype=np.int64), overflow


if HAVE_NUMBA:
    _kernel_jit = numba.njit(cache=True)(_kernel)
else:  # pragma: no cover
    _kernel_jit = None


def run_dense(G, r, candidates, projective, conj_generators=(), max_orbit=2**62):
    """Orbits of the braid action (plus conjugation by ``conj_generators``).

    Returns ``(seeds, counts, overflow)`` where each seed is the entry tuple
    (group indices) of an orbit's minimal member and ``counts`` the number of
    raw tuples in that orbit.
    """
    table = G.table
    inv = np.asarray(G.inv, dtype=np.int64)
    allowed = np.asarray(candidates, dtype=np.int64)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[allowed] = np.arange(len(allowed))
    cmaps = np.empty((len(conj_generators), len(allowed)), dtype=np.int64)
    for j, g in enumerate(conj_generators):
        cm = G.conj_map(g)
        cmaps[j] = pos[np.asarray(cm, dtype=np.int64)[allowed]]
    if (cmaps < 0).any():
        raise ValueError("candidate set is not closed under the conjugators")
    fn = _kernel_jit if _kernel_jit is not None else _kernel
    seeds, counts, overflow = fn(
        table.astype(np.int64), inv, allowed, pos, r, projective, cmaps, max_orbit
    )
    m = r - 1 if projective else r
    k = len(allowed)
    out = []
    for code in seeds.tolist():
        digits = []
        c = code
        for _ in range(m):
            digits.append(c % k)
            c //= k
        entries = [int(allowed[x]) for x in reversed(digits)]
        if projective:
            entries.append(G.inv[G.product(entries)])
        out.append(tuple(entries))
    return out, counts.tolist(), bool(overflow)


def dense_size(k, r, projective):
    m = r - 1 if projective else r
    return k ** max(m, 0)
