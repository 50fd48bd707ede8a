"""
Brute-force reference computations.

Nothing here shares code paths with the enumerator or the orbit engines: the
tuple space is produced by ``itertools.product`` over the permitted elements, braid
moves are evaluated by composing :class:`~nbl.perm.Perm` objects, and
canonical forms are minima over explicit conjugate lists.  The results serve
as expected values in tests.
"""

import itertools

import numpy as np

from .nielsen import DEGREE, GALOIS, MARKED, PROJECTIVE


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            if y < x:
                x, y = y, x
            self.parent[y] = x

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return list(out.values())


def _perm_product(perms, degree):
    images = list(range(degree))
    for p in perms:
        images = [p[x] for x in images]
    return tuple(images)


def _generated(perms, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for p in perms:
                y = tuple(p[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _transitive(perms, degree):
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in perms:
            if p[x] not in seen:
                seen.add(p[x])
                stack.append(p[x])
    return len(seen) == degree


def _conjugation_rows(G, spec):
    """``rows[k][x]`` = index of ``g x g^-1`` for the k-th conjugator g, by Perm arithmetic."""
    conj = spec.conjugators(G)
    if conj is None:
        return None
    els = G.elements
    rows = []
    for g in conj:
        P = els[g]
        Pi = P.inverse()
        rows.append(tuple(G.index[P * x * Pi] for x in els))
    return rows


def naive_tuples(G, r, spec):
    """Raw tuples (before canonicalization) satisfying ``spec``, by filtering all r-fold products."""
    els = G.elements
    deg = G.degree
    ident = tuple(range(deg))
    T = G.class_table
    allowed = set(spec.allowed_classes(G))
    profile = spec.profile.as_dict() if spec.profile is not None else None
    target = None
    if spec.cover == GALOIS:
        ids = spec.target_group(G)
        target = frozenset(els[i] for i in ids)
    # only nontrivial elements of permitted classes can occur
    pool = [i for i in range(G.order) if els[i] != ident and T.class_of[i] in allowed]
    cover_seen = {}
    out = []
    for tup in itertools.product(pool, repeat=r):
        perms = [els[i] for i in tup]
        if spec.base == PROJECTIVE and _perm_product(perms, deg) != ident:
            continue
        classes = [T.class_of[i] for i in tup]
        if profile is not None:
            counts = {}
            for c in classes:
                counts[c] = counts.get(c, 0) + 1
            if counts != profile:
                continue
        if target is not None or spec.cover == DEGREE:
            key = frozenset(tup)
            ok = cover_seen.get(key)
            if ok is None:
                if target is not None:
                    ok = _generated(perms, deg) == target
                else:
                    ok = _transitive(perms, deg)
                cover_seen[key] = ok
            if not ok:
                continue
        out.append(tup)
    return out


def _naive_canonical(tup, conj_rows):
    if conj_rows is None:
        return tup
    return min(tuple(row[x] for x in tup) for row in conj_rows)


def naive_nielsen(G, r, spec):
    """Sorted canonical tuples of the Nielsen set, by brute force."""
    conj = _conjugation_rows(G, spec)
    return sorted({_naive_canonical(t, conj) for t in naive_tuples(G, r, spec)})


def naive_partition(G, r, spec):
    """Orbit partition by union-find over all tuples and all single braid moves.

    Returns a set of frozensets of canonical tuples.
    """
    tuples = naive_tuples(G, r, spec)
    els = G.elements
    idx = G.index
    pair_cache = {}

    def moves(a, b):
        res = pair_cache.get((a, b))
        if res is None:
            A, B = els[a], els[b]
            fwd = (idx[A * B * A.inverse()], a)
            bwd = (b, idx[B.inverse() * A * B])
            res = pair_cache[(a, b)] = (fwd, bwd)
        return res

    uf = UnionFind(tuples)
    for t in tuples:
        for i in range(r - 1):
            for pair in moves(t[i], t[i + 1]):
                uf.union(t, t[:i] + pair + t[i + 2 :])
    conj = _conjugation_rows(G, spec)
    if conj is not None:
        for t in tuples:
            for row in conj:
                uf.union(t, tuple(row[x] for x in t))
    out = set()
    for block in uf.groups():
        out.add(frozenset(_naive_canonical(t, conj) for t in block))
    return out


def naive_component_count(G, r, spec):
    return len(naive_partition(G, r, spec))


def labelprop_component_count(G, r, spec, chunk=1 << 22):
    """Component count by min-label propagation over the full encoded tuple space.

    Meant for spaces too large for :func:`naive_partition` (marked mode only).
    Tuples are encoded as base-k integers over the first ``r-1`` entries
    (projective) or all ``r`` entries (affine); every code's label is lowered
    to the minimum over its forward and inverse braid neighbours, then labels
    are compressed by pointer jumping, until nothing changes.  Components
    failing the cover condition are discarded by testing one member each.
    """
    if spec.equivalence != MARKED:
        raise ValueError("label propagation oracle handles marked equivalence only")
    T = G.class_table
    allowed_classes = set(spec.allowed_classes(G))
    cand = [x for x in range(1, G.order) if T.class_of[x] in allowed_classes]
    target = spec.target_group(G)
    if target is not None:
        cand = [x for x in cand if x in target]
    k = len(cand)
    projective = spec.base == PROJECTIVE
    m = r - 1 if projective else r
    if r < 2 or k == 0:
        return naive_component_count(G, r, spec)
    N = k**m
    els = G.elements
    pos = {x: i for i, x in enumerate(cand)}
    # pair tables from Perm arithmetic, indexed by local positions
    fwd = np.full((k, k), -1, dtype=np.int64)
    bwd = np.full((k, k), -1, dtype=np.int64)
    for a, x in enumerate(cand):
        for b, y in enumerate(cand):
            X, Y = els[x], els[y]
            fwd[a, b] = pos[G.index[X * Y * X.inverse()]]
            bwd[a, b] = pos[G.index[Y.inverse() * X * Y]]
    weights = [k ** (m - 1 - i) for i in range(m)]
    codes = np.arange(N, dtype=np.int64)
    digits = np.empty((r, N), dtype=np.int16)
    for i in range(m):
        digits[i] = (codes // weights[i]) % k
    valid = np.ones(N, dtype=bool)
    if projective:
        # prefix products through a dense product table on the candidate set
        table = np.asarray([[G.index[els[a] * els[b]] for b in range(G.order)] for a in range(G.order)])
        cand_arr = np.asarray(cand)
        prod = np.zeros(N, dtype=np.int64)
        for i in range(m):
            prod = table[prod, cand_arr[digits[i]]]
        inv = np.asarray([G.index[p.inverse()] for p in els])
        lookup = np.full(G.order, -1, dtype=np.int64)
        lookup[cand_arr] = np.arange(k)
        last = lookup[inv[prod]]
        valid = last >= 0
        digits[m] = np.where(valid, last, 0)
        del prod, last
    labels = np.where(valid, codes, N).astype(np.int64)
    labels = np.append(labels, N)  # sentinel slot for invalid codes
    del codes

    def neighbour_codes(lo, hi, i, table_):
        a = digits[i, lo:hi].astype(np.int64)
        b = digits[i + 1, lo:hi].astype(np.int64)
        base = np.arange(lo, hi, dtype=np.int64)
        if table_ is fwd:
            na, nb = fwd[a, b], a
        else:
            na, nb = b, bwd[a, b]
        out = base + (na - a) * weights[i]
        if i + 1 < m:
            out += (nb - b) * weights[i + 1]
        return out

    changed = True
    while changed:
        changed = False
        for lo in range(0, N, chunk):
            hi = min(N, lo + chunk)
            cur = labels[lo:hi]
            ok = valid[lo:hi]
            for i in range(r - 1):
                for tab in (fwd, bwd):
                    nxt = neighbour_codes(lo, hi, i, tab)
                    nxt = np.where(ok, nxt, N)
                    cand_labels = labels[nxt]
                    lower = cand_labels < cur
                    if lower.any():
                        cur[lower] = cand_labels[lower]
                        changed = True
            labels[lo:hi] = cur
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped
    roots = np.unique(labels[:N][valid])
    count = 0
    for code in roots.tolist():
        entries = [cand[int(digits[i, code])] for i in range(r)]
        perms = [els[x] for x in entries]
        if target is not None and _generated(perms, G.degree) != frozenset(els[i] for i in target):
            continue
        if spec.cover == DEGREE and not _transitive(perms, G.degree):
            continue
        count += 1
    return count


__all__ = [
    "UnionFind",
    "naive_tuples",
    "naive_nielsen",
    "naive_partition",
    "naive_component_count",
    "labelprop_component_count",
]
