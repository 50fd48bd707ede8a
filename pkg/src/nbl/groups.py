"""
Finite permutation groups with cached element sets.

Every group keeps its elements sorted lexicographically by image tuple, so an
element's index doubles as its rank in that order: index 0 is the identity,
and comparing tuples of indices compares entry sequences lexicographically.
All tie-breaking in the package relies on this.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm

import numpy as np

from .errors import CapExceeded, ForeignElementError, GroupSpecError
from .perm import Perm, parse_cycles

DEFAULT_ORDER_CAP = 20000
SUBGROUP_CAP = 2000
# full multiplication tables are materialized up to this order
TABLE_LIMIT = 2048


def _sort_key_dtype(degree):
    # big-endian so that raw bytes order == lexicographic order of images
    return np.uint8 if degree <= 256 else np.dtype(">u2")


class PermGroup:
    """A finite group of permutations of ``{0, ..., degree-1}``.

    Build one with :func:`parse_group_spec`, or directly from generators.
    Subgroups produced by :func:`subgroup_generated` carry ``parent`` and
    ``parent_ids`` (their elements as indices of the parent group).
    """

    def __init__(self, degree, generators, name=None, cap=DEFAULT_ORDER_CAP):
        if degree < 1:
            raise GroupSpecError("degree must be positive")
        gens = []
        for g in generators:
            g = Perm(g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise GroupSpecError(f"{g!r} is not a permutation of degree {degree}")
            gens.append(g)
        ident = Perm.identity(degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise CapExceeded(f"group {name or ''}".strip(), len(seen), cap)
            frontier = nxt
        self._setup(degree, sorted(seen), gens, name)

    @classmethod
    def _from_sorted(cls, degree, elements, generators, name, parent=None, parent_ids=None):
        self = cls.__new__(cls)
        self._setup(degree, elements, list(generators), name)
        self.parent = parent
        self.parent_ids = parent_ids
        return self

    def _setup(self, degree, elements, generators, name):
        self.degree = degree
        self.elements = tuple(elements)
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.generators = [Perm(g) for g in generators]
        self.name = name or "<group>"
        self.parent = None
        self.parent_ids = None
        self.class_id = None
        self._rows = None
        self._cols = {}
        self._subgroups = {}
        arr = np.array(self.elements, dtype=np.int64).reshape(len(self.elements), degree)
        self._E = arr
        self._keys = self._void(arr)
        self._inv = None

    # -- basic accessors -------------------------------------------------

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return 0

    def __repr__(self):
        return f"<PermGroup {self.name} order={self.order} degree={self.degree}>"

    def _void(self, arr):
        a = np.ascontiguousarray(arr.astype(_sort_key_dtype(self.degree)))
        return a.view(np.dtype((np.void, a.dtype.itemsize * self.degree))).ravel()

    def _lookup_rows(self, arr):
        keys = self._void(arr)
        pos = np.searchsorted(self._keys, keys)
        return pos

    def lookup(self, perm):
        """Index of ``perm`` (a :class:`Perm`, image sequence or cycle string)."""
        if isinstance(perm, str):
            perm = Perm(parse_cycles(perm, self.degree))
        try:
            return self.index[Perm(perm)]
        except KeyError:
            raise ForeignElementError(f"{Perm(perm)} is not an element of {self.name}") from None

    def __contains__(self, perm):
        return Perm(perm) in self.index

    def perm(self, i):
        return self.elements[i]

    def cycle_string(self, i):
        return self.elements[i].cycle_string()

    @cached_property
    def gen_ids(self):
        return [self.index[g] for g in self.generators]

    # -- arithmetic on indices -------------------------------------------

    @property
    def inv(self):
        """List mapping each element index to the index of its inverse."""
        if self._inv is None:
            inv_arr = np.argsort(self._E, axis=1)
            self._inv = self._lookup_rows(inv_arr).tolist()
        return self._inv

    @property
    def has_table(self):
        return self.order <= TABLE_LIMIT

    @cached_property
    def table(self):
        """Full multiplication table ``table[a, b] = index(a * b)`` as int32."""
        if not self.has_table:
            raise CapExceeded("multiplication table", self.order, TABLE_LIMIT)
        n = self.order
        out = np.empty((n, n), dtype=np.int32)
        E = self._E
        for a in range(n):
            # row a: for each b, images of a*b are b[a[x]]
            out[a] = self._lookup_rows(E[:, E[a]])
        return out

    @property
    def rows(self):
        """``rows[a][b]`` is the index of ``a * b``; computed lazily above the table limit."""
        if self._rows is None:
            self._rows = self.table.tolist() if self.has_table else _RowCache(self)
        return self._rows

    def col(self, g):
        """List ``[x * g for x in range(order)]``."""
        c = self._cols.get(g)
        if c is None:
            c = self._lookup_rows(self._E[g][self._E]).tolist()
            self._cols[g] = c
        return c

    def mul(self, a, b):
        return self.rows[a][b]

    def conj(self, a, b):
        """Index of ``a^b = b a b^-1``."""
        return self.mul(self.mul(b, a), self.inv[b])

    def power(self, a, m):
        if m < 0:
            a, m = self.inv[a], -m
        result = 0
        base = a
        while m:
            if m & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            m >>= 1
        return result

    def product(self, ids):
        out = 0
        for x in ids:
            out = self.mul(out, x)
        return out

    def element_order(self, a):
        return self.elements[a].order()

    @cached_property
    def exponent(self):
        out = 1
        for p in self.elements:
            out = lcm(out, p.order())
        return out

    def conj_map(self, g):
        """List ``[x^g for x in range(order)]``."""
        e = self._E
        gi = self.elements[g].inverse()
        # x^g = g x g^-1 ; images: point p -> g^-1(x(g(p))) under left-to-right
        arr = np.asarray(gi, dtype=np.int64)[e[:, np.asarray(self.elements[g], dtype=np.int64)]]
        return self._lookup_rows(arr).tolist()

    # -- closures ----------------------------------------------------------

    def closure(self, ids):
        """Frozenset of indices of the subgroup generated by ``ids``."""
        gens = sorted(set(ids) - {0})
        if not gens:
            return frozenset((0,))
        if self.has_table:
            rows = self.rows
            seen = {0}
            frontier = [0]
            while frontier:
                nxt = []
                for x in frontier:
                    rx = rows[x]
                    for g in gens:
                        y = rx[g]
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            return frozenset(seen)
        colmaps = [self.col(g) for g in gens]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for c in colmaps:
                    y = c[x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def subgroup(self, ids, generators=None):
        """The subgroup with element index set ``ids`` (must be closed)."""
        ids = frozenset(ids)
        sub = self._subgroups.get(ids)
        if sub is None:
            sorted_ids = sorted(ids)
            if generators is None:
                generators = _small_generating_set(self, sorted_ids)
            sub = PermGroup._from_sorted(
                self.degree,
                [self.elements[i] for i in sorted_ids],
                [self.elements[g] for g in generators],
                f"<{', '.join(self.cycle_string(g) for g in generators) or '()'}>",
                parent=self,
                parent_ids=ids,
            )
            sub._to_parent = sorted_ids
            self._subgroups[ids] = sub
        return sub

    def to_parent(self, i):
        return self._to_parent[i]

    @cached_property
    def from_parent(self):
        return {p: i for i, p in enumerate(self._to_parent)}

    def is_transitive_on_points(self, ids):
        """Whether the permutations ``ids`` generate a transitive action."""
        n = self.degree
        if n == 1:
            return True
        seen = {0}
        stack = [0]
        perms = [self.elements[i] for i in set(ids)]
        while stack:
            x = stack.pop()
            for p in perms:
                y = p[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == n

    # -- derived structure -----------------------------------------------

    @cached_property
    def class_table(self):
        return conjugacy_classes(self)

    def centralizer(self, ids):
        ids = list(ids)
        return frozenset(
            g for g in range(self.order) if all(self.conj(x, g) == x for x in ids)
        )

    def normalizer(self, sub_ids):
        sub_ids = frozenset(sub_ids)
        gens = _small_generating_set(self, sorted(sub_ids))
        return frozenset(
            g for g in range(self.order) if all(self.conj(x, g) in sub_ids for x in gens)
        )


class _RowCache:
    def __init__(self, G):
        self._G = G
        self._rows = {}

    def __getitem__(self, a):
        row = self._rows.get(a)
        if row is None:
            E = self._G._E
            row = self._G._lookup_rows(E[:, E[a]]).tolist()
            self._rows[a] = row
        return row


def _small_generating_set(G, ids):
    """Greedy generating set for the closed set ``ids``, smallest indices first."""
    target = len(ids)
    gens = []
    current = frozenset((0,))
    for x in ids:
        if len(current) == target:
            break
        if x not in current:
            gens.append(x)
            current = G.closure(gens)
    return gens


# -- group DSL --------------------------------------------------------------

_NAMED = re.compile(r"^([SADC])(\d+)$")
_GDIH = re.compile(r"^GDih\(([\d,\s]+)\)$")
_PERM = re.compile(r"^perm\((\d+)\s*;(.*)\)$", re.S)


def _split_top_level(s):
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GroupSpecError(f"unbalanced parentheses in {s!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise GroupSpecError(f"unbalanced parentheses in {s!r}")
    parts.append("".join(cur))
    return parts


def _cycle(points, n):
    images = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return Perm(images)


def _named(letter, n):
    if n < 1:
        raise GroupSpecError(f"{letter}{n}: n must be positive")
    if letter == "S":
        if n == 1:
            return 1, []
        return n, [_cycle(list(range(n)), n), _cycle([0, 1], n)]
    if letter == "A":
        return n, [_cycle([0, 1, k], n) for k in range(2, n)]
    if letter == "C":
        return n, ([_cycle(list(range(n)), n)] if n > 1 else [])
    if letter == "D":
        if n < 3:
            raise GroupSpecError(f"D{n}: dihedral groups need n >= 3 points")
        refl = Perm([(-i) % n for i in range(n)])
        return n, [_cycle(list(range(n)), n), refl]
    raise GroupSpecError(f"unknown family {letter}")


def _gdih(moduli):
    # regular action on A = C_n1 x ... x C_nk, points in mixed-radix lex order
    import itertools

    pts = list(itertools.product(*[range(m) for m in moduli]))
    where = {p: i for i, p in enumerate(pts)}
    gens = []
    for j, m in enumerate(moduli):
        if m == 1:
            continue
        shift = []
        for p in pts:
            q = list(p)
            q[j] = (q[j] + 1) % m
            shift.append(where[tuple(q)])
        gens.append(Perm(shift))
    gens.append(Perm(where[tuple((-x) % m for x, m in zip(p, moduli))] for p in pts))
    return len(pts), gens


def parse_group_spec(spec, cap=DEFAULT_ORDER_CAP):
    """Build a group from the DSL.

    Accepted forms: ``S<n>``, ``A<n>``, ``D<n>`` (order 2n on n points),
    ``C<n>``, ``GDih(n1,...,nk)`` and ``perm(<degree>; <cycles>, ...)``.

    >>> parse_group_spec("perm(4; (1 2 3), (1 2)(3 4))").order
    12
    """
    text = spec.strip()
    compact = re.sub(r"\s+", "", text)
    m = _NAMED.match(compact)
    if m:
        degree, gens = _named(m.group(1), int(m.group(2)))
        return PermGroup(degree, gens, name=compact, cap=cap)
    m = _GDIH.match(compact)
    if m:
        try:
            moduli = [int(x) for x in m.group(1).split(",") if x]
        except ValueError:
            raise GroupSpecError(f"bad GDih moduli in {spec!r}") from None
        if not moduli or any(x < 1 for x in moduli):
            raise GroupSpecError(f"bad GDih moduli in {spec!r}")
        degree, gens = _gdih(moduli)
        return PermGroup(degree, gens, name=compact, cap=cap)
    m = _PERM.match(text.replace("\n", " ")) or _PERM.match(compact)
    if m:
        degree = int(m.group(1))
        if degree < 1:
            raise GroupSpecError("perm(...) degree must be positive")
        body = m.group(2).strip()
        gens = []
        for part in _split_top_level(body) if body else []:
            part = part.strip()
            if not part:
                raise GroupSpecError(f"empty generator in {spec!r}")
            if re.fullmatch(r"\(\s*\)", part):
                gens.append(Perm.identity(degree))
                continue
            gens.append(Perm(parse_cycles(part, degree)))
        name = f"perm({degree}; {', '.join(g.cycle_string() for g in gens)})"
        return PermGroup(degree, gens, name=name, cap=cap)
    raise GroupSpecError(f"unrecognized group spec {spec!r}")


# -- conjugacy classes -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClassTable:
    """Conjugacy classes ordered by (lexicographically minimal) representative."""

    group: PermGroup
    reps: tuple
    members: tuple
    class_of: tuple

    def __len__(self):
        return len(self.reps)

    def size(self, c):
        return len(self.members[c])

    def rep_perm(self, c):
        return self.group.elements[self.reps[c]]

    def rep_string(self, c):
        return self.group.cycle_string(self.reps[c])

    def find(self, ref):
        """Class id of an element given as index, Perm or cycle string."""
        if isinstance(ref, int):
            return self.class_of[ref]
        return self.class_of[self.group.lookup(ref)]

    def nontrivial(self):
        return [c for c in range(len(self.reps)) if self.reps[c] != 0]


def conjugacy_classes(G):
    """Partition ``G`` into conjugacy classes (use ``G.class_table`` for the cached copy)."""
    n = G.order
    gens = G.gen_ids
    maps = [G.conj_map(g) for g in gens]
    class_of = [-1] * n
    classes = []
    for x in range(n):
        if class_of[x] != -1:
            continue
        cid = len(classes)
        orbit = [x]
        class_of[x] = cid
        k = 0
        while k < len(orbit):
            y = orbit[k]
            k += 1
            for m in maps:
                z = m[y]
                if class_of[z] == -1:
                    class_of[z] = cid
                    orbit.append(z)
        classes.append(tuple(sorted(orbit)))
    # x scans in index order, so classes are already ordered by minimal member
    reps = tuple(c[0] for c in classes)
    return ClassTable(G, reps, tuple(classes), tuple(class_of))


def class_power(T, c, m):
    """Class id containing ``rep(c)^m``; checks a second member lands in the same class."""
    G = T.group
    target = T.class_of[G.power(T.reps[c], m)]
    if len(T.members[c]) > 1:
        other = T.members[c][1]
        if T.class_of[G.power(other, m)] != target:
            raise RuntimeError("class powering is not well defined; class table corrupt")
    return target


# -- subgroups ---------------------------------------------------------------


def subgroup_generated(G, gens):
    """Subgroup of ``G`` generated by ``gens`` (Perms, cycle strings or indices)."""
    ids = []
    for g in gens:
        if isinstance(g, int):
            if not 0 <= g < G.order:
                raise ForeignElementError(f"index {g} out of range for {G.name}")
            ids.append(g)
        else:
            ids.append(G.lookup(g))
    closed = G.closure(ids)
    gen_ids = sorted(set(ids) - {0})
    return G.subgroup(closed, generators=_small_generating_set(G, sorted(closed)) if gen_ids else [])


class SubgroupLattice:
    """Conjugacy classes of subgroups of a group.

    ``reps[k]`` is the representative of class ``k`` (a subgroup carrying
    ``class_id = k``); ``class_of`` maps every subgroup's element-index set to
    its class id.  Classes are ordered by order, then by the sorted index tuple
    of the lexicographically smallest conjugate, which is also the one chosen
    as representative.
    """

    def __init__(self, G, reps, class_of):
        self.group = G
        self.reps = reps
        self.class_of = class_of

    def __len__(self):
        return len(self.reps)

    def class_id(self, ids):
        return self.class_of[frozenset(ids)]


def _conjugates(G, ids, maps):
    seen = {ids}
    frontier = [ids]
    while frontier:
        nxt = []
        for s in frontier:
            for m in maps:
                t = frozenset(m[x] for x in s)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def subgroup_lattice(G, cap=SUBGROUP_CAP):
    """All subgroups of ``G`` up to conjugacy, by cyclic extension."""
    cached = getattr(G, "_lattice", None)
    if cached is not None:
        return cached
    if G.order > cap:
        raise CapExceeded(f"subgroup enumeration for {G.name}", G.order, cap)
    maps = [G.conj_map(g) for g in G.gen_ids]
    cyclic_gens = {}
    for x in range(1, G.order):
        cyc = G.closure([x])
        cyclic_gens.setdefault(cyc, x)
    extenders = sorted(cyclic_gens.values())

    found = {}  # frozenset -> provisional class number
    classes = []  # list of sets of conjugates
    gens_of = []

    def register(ids, gens):
        if ids in found:
            return False
        conj = _conjugates(G, ids, maps)
        k = len(classes)
        for s in conj:
            found[s] = k
        classes.append(conj)
        gens_of.append(gens)
        return True

    trivial = frozenset((0,))
    register(trivial, [])
    queue = [0]
    while queue:
        k = queue.pop()
        # extend the member whose generators are known
        base = G.closure(gens_of[k])
        for g in extenders:
            if g in base:
                continue
            gens = gens_of[k] + [g]
            ids = G.closure(gens)
            if register(ids, gens):
                queue.append(len(classes) - 1)

    order = []
    for k, conj in enumerate(classes):
        canon = min(tuple(sorted(s)) for s in conj)
        order.append((len(canon), canon, k))
    order.sort()
    renum = {}
    reps = []
    for new_id, (_, canon, k) in enumerate(order):
        renum[k] = new_id
        sub = G.subgroup(frozenset(canon))
        sub.class_id = new_id
        reps.append(sub)
    class_of = {s: renum[k] for s, k in found.items()}
    lat = SubgroupLattice(G, reps, class_of)
    G._lattice = lat
    return lat


def subgroups_up_to_conjugacy(G, cap=SUBGROUP_CAP):
    """One representative per conjugacy class of subgroups, each with ``class_id`` set."""
    return list(subgroup_lattice(G, cap).reps)


def subgroup_class_id(G, ids, cap=SUBGROUP_CAP):
    """Subgroup-conjugacy-class id of the subgroup with element set ``ids``, or None above the cap."""
    if G.order > cap:
        return None
    return subgroup_lattice(G, cap).class_id(ids)


def units_mod(n):
    """Residues ``1 <= m <= n`` prime to ``n`` (``[1]`` for n = 1)."""
    if n <= 1:
        return [1]
    return [m for m in range(1, n) if gcd(m, n) == 1]
