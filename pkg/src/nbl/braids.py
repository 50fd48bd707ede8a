"""
Braid action on Nielsen tuples and its orbits (the components).

``Q_i`` replaces ``(g_i, g_{i+1})`` by ``(g_i g_{i+1} g_i^-1, g_i)``; its
inverse replaces it by ``(g_{i+1}, g_{i+1}^-1 g_i g_{i+1})``.  Orbits are
computed on canonical tuples, so in unmarked mode an orbit is a class of
tuples up to braids and simultaneous conjugation.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import _dense
from .budget import Budget
from .errors import BudgetExceeded, PreconditionError
from .groups import subgroup_class_id
from .nielsen import (
    MARKED,
    PROJECTIVE,
    Canonicalizer,
    EnumerationSpec,
    ICIProfile,
    NielsenTuple,
    enumerate_nielsen,
)

FORWARD = "forward"
INVERSE = "inverse"

# below this many raw states the Python engine is used even when "auto"
DENSE_THRESHOLD = 50_000


def apply_braid(t, i, direction=FORWARD):
    """Apply ``Q_i`` (1-based ``i``) or its inverse to ``t``."""
    r = len(t.entries)
    if not 1 <= i <= r - 1:
        raise PreconditionError(f"braid index {i} outside 1..{r - 1}")
    G = t.group
    e = t.entries
    a, b = e[i - 1], e[i]
    if direction == FORWARD:
        pair = (G.mul(G.mul(a, b), G.inv[a]), a)
    elif direction == INVERSE:
        pair = (b, G.mul(G.mul(G.inv[b], a), b))
    else:
        raise PreconditionError(f"unknown direction {direction!r}")
    return NielsenTuple(G, e[: i - 1] + pair + e[i + 1 :])


def _neighbours(state, rows, inv):
    out = []
    for i in range(len(state) - 1):
        a = state[i]
        b = state[i + 1]
        head = state[:i]
        tail = state[i + 2 :]
        out.append(head + (rows[rows[a][b]][inv[a]], a) + tail)
        out.append(head + (b, rows[rows[inv[b]][a]][b]) + tail)
    return out


@dataclass(frozen=True, eq=False)
class Component:
    """A braid orbit, identified by its lexicographically minimal canonical tuple."""

    rep: NielsenTuple
    orbit_size: int
    group_ids: frozenset
    group_id: int | None
    ici: ICIProfile
    spec: EnumerationSpec
    lifting: object = field(default=None, compare=False)

    @property
    def r(self):
        return len(self.rep.entries)

    @property
    def group(self):
        return self.rep.group

    @property
    def group_order(self):
        return len(self.group_ids)

    def _key(self):
        return (id(self.rep.group), self.spec.base, self.spec.equivalence, self.rep.entries)

    def __eq__(self, other):
        return isinstance(other, Component) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return (self.r, self.rep.entries) < (other.r, other.rep.entries)

    def __repr__(self):
        return (
            f"Component(r={self.r}, rep={self.rep.cycle_strings()}, "
            f"orbit_size={self.orbit_size}, group_order={self.group_order})"
        )

    def with_lifting(self, value):
        from dataclasses import replace

        return replace(self, lifting=value)


def _make_component(G, rep_entries, size, spec):
    gids = G.closure(rep_entries)
    T = G.class_table
    return Component(
        rep=NielsenTuple(G, tuple(rep_entries)),
        orbit_size=size,
        group_ids=gids,
        group_id=subgroup_class_id(G, gids),
        ici=ICIProfile.from_classes(T.class_of[x] for x in rep_entries),
        spec=spec,
    )


def orbit_members(G, start, canon, budget=None, threads=1, check=False):
    """Set of canonical entry tuples in the braid orbit of ``start`` (already canonical).

    With ``threads > 1`` the search runs level by level and each frontier is
    expanded in parallel; merged results are sorted, so the set produced is
    independent of the thread count.
    """
    budget = budget or Budget()
    rows = G.rows
    inv = G.inv
    class_of = G.class_table.class_of
    ident = canon.trivial
    visited = {start}
    if check:
        ici0 = sorted(class_of[x] for x in start)
        grp0 = G.closure(start)
        grp_cache = {frozenset(start): grp0}

    def verify(s):
        if sorted(class_of[x] for x in s) != ici0:
            raise AssertionError(f"inertia profile changed along the orbit at {s}")
        key = frozenset(s)
        g = grp_cache.get(key)
        if g is None:
            g = grp_cache[key] = G.closure(key)
        if (g != grp0) if ident else (len(g) != len(grp0)):
            raise AssertionError(f"generated group changed along the orbit at {s}")

    def expand(batch):
        out = []
        for s in batch:
            for n in _neighbours(s, rows, inv):
                out.append(n if ident else canon(n))
        return out

    if threads <= 1:
        queue = [start]
        k = 0
        while k < len(queue):
            s = queue[k]
            k += 1
            for n in _neighbours(s, rows, inv):
                if not ident:
                    n = canon(n)
                if n not in visited:
                    visited.add(n)
                    queue.append(n)
                    if check:
                        verify(n)
            if len(visited) > budget.max_orbit:
                raise BudgetExceeded("orbit", budget.max_orbit, len(visited))
            if k & 0x3FF == 0:
                budget.check_time("orbit", len(visited))
        return visited

    frontier = [start]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while frontier:
            size = max(1, (len(frontier) + threads - 1) // threads)
            chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
            found = set()
            for part in pool.map(expand, chunks):
                found.update(part)
            frontier = sorted(found - visited)
            visited.update(frontier)
            if check:
                for n in frontier:
                    verify(n)
            if len(visited) > budget.max_orbit:
                raise BudgetExceeded("orbit", budget.max_orbit, len(visited))
            budget.check_time("orbit", len(visited))
    return visited


def _spec_canonicalizer(G, spec):
    return Canonicalizer(G, spec.conjugators(G))


def orbit_of(t, spec, budget=None, threads=1, check=True):
    """The component containing ``t`` (which must satisfy ``spec``)."""
    G = t.group
    if not spec.admits(G, t.entries):
        raise PreconditionError(f"{t} does not satisfy the enumeration spec")
    canon = _spec_canonicalizer(G, spec)
    start = canon(t.entries)
    members = orbit_members(G, start, canon, budget, threads, check)
    return _make_component(G, min(members), len(members), spec)


class OrbitIndex:
    """Memoized map from tuples to their components for one ``(group, spec)``.

    Every orbit explored is remembered in full, so repeated membership queries
    (as in concatenation sweeps) cost one dictionary lookup.
    """

    def __init__(self, G, spec, budget=None, check=False):
        self.group = G
        self.spec = spec
        self.budget = budget or Budget()
        self.check = check
        self._canon = _spec_canonicalizer(G, spec)
        self._where = {}

    def canonical(self, entries):
        return self._canon(tuple(entries))

    def component(self, t):
        entries = t.entries if isinstance(t, NielsenTuple) else tuple(t)
        key = self._canon(entries)
        comp = self._where.get(key)
        if comp is None:
            members = orbit_members(self.group, key, self._canon, self.budget, check=self.check)
            comp = _make_component(self.group, min(members), len(members), self.spec)
            for s in members:
                self._where[s] = comp
        return comp

    def members(self, comp):
        return sorted(s for s, c in self._where.items() if c == comp)


def _engine_choice(G, r, spec, engine):
    if engine not in ("auto", "python", "dense"):
        raise PreconditionError(f"unknown engine {engine!r}")
    if engine == "python":
        return "python"
    eligible = _dense.HAVE_NUMBA and G.has_table and r >= 2
    size = _dense.dense_size(len(spec.candidates(G)), r, spec.base == PROJECTIVE)
    if engine == "dense":
        if not eligible or size > _dense.DENSE_LIMIT:
            raise PreconditionError("dense engine not applicable to this instance")
        return "dense"
    if eligible and DENSE_THRESHOLD < size <= _dense.DENSE_LIMIT:
        return "dense"
    return "python"


def decompose_components(G, r, spec, budget=None, engine="auto", threads=1, check=False):
    """All components of the Nielsen set ``(G, r, spec)``, sorted by canonical representative."""
    budget = budget or Budget()
    spec.validate(G)
    if _engine_choice(G, r, spec, engine) == "dense":
        return _decompose_dense(G, r, spec, budget)
    canon = _spec_canonicalizer(G, spec)
    seen = set()
    comps = []
    try:
        for t in enumerate_nielsen(G, r, spec, budget):
            if t.entries in seen:
                continue
            members = orbit_members(G, t.entries, canon, budget, threads, check)
            seen |= members
            comps.append(_make_component(G, min(members), len(members), spec))
    except BudgetExceeded as exc:
        raise BudgetExceeded(exc.phase, exc.limit, comps) from None
    total = len(seen)
    if sum(c.orbit_size for c in comps) != total:
        raise AssertionError("components do not partition the Nielsen set")
    comps.sort()
    return comps


def _decompose_dense(G, r, spec, budget):
    cand = spec.candidates(G)
    projective = spec.base == PROJECTIVE
    size = _dense.dense_size(len(cand), r, projective)
    if size > budget.max_tuples:
        raise BudgetExceeded("enumeration", budget.max_tuples, [])
    conj = spec.conjugators(G)
    conj_gens = ()
    if conj is not None and len(conj) > 1:
        conj_gens = G.subgroup(frozenset(conj)).generators
        conj_gens = [G.index[g] for g in conj_gens]
    seeds, counts, overflow = _dense.run_dense(
        G, r, cand, projective, conj_gens, budget.max_orbit
    )
    if overflow:
        raise BudgetExceeded("orbit", budget.max_orbit, [])
    comps = []
    cover_cache = {}
    for entries, n in zip(seeds, counts):
        if not spec.admits(G, entries, cover_cache):
            continue
        if conj is not None and len(conj) > 1:
            # every tuple of the orbit has a conjugation class of the same size
            cent = sum(1 for g in conj if all(G.conj(x, g) == x for x in set(entries)))
            n = n * cent // len(conj)
        comps.append(_make_component(G, entries, n, spec))
    comps.sort()
    return comps


@dataclass
class CountSeries:
    """Component counts over a range of ``r``; periods are observations, not proofs."""

    group: str
    spec: EnumerationSpec
    points: dict
    detected_period: tuple | None = None
    truncated_at: int | None = None

    @property
    def period_label(self):
        if self.detected_period is None:
            return "no period observed within range"
        u, onset = self.detected_period
        return f"period {u} from r={onset} (observed within range)"

    def to_csv(self):
        lines = ["r,count"]
        lines += [f"{r},{n}" for r, n in sorted(self.points.items())]
        return "\n".join(lines) + "\n"


def detect_period(points):
    """Smallest ``(u, onset)`` with ``count(r+u) == count(r)`` for all recorded ``r >= onset``.

    ``points`` maps r to count.  A candidate needs at least ``2u`` recorded
    points at or beyond the onset.  Returns None if nothing qualifies.
    """
    rs = sorted(points)
    for u in range(1, len(rs) // 2 + 1):
        for idx, onset in enumerate(rs):
            if len(rs) - idx < 2 * u:
                break
            if all(points[r + u] == points[r] for r in rs[idx:] if r + u in points):
                return (u, onset)
    return None


def count_series(G, spec, r_range, budget_factory=Budget, engine="auto", threads=1):
    """Component counts for each ``r`` in ``r_range``.

    A budget overrun at some ``r`` truncates the series there and records it in
    ``truncated_at`` instead of raising.
    """
    points = {}
    truncated = None
    for r in r_range:
        try:
            comps = decompose_components(G, r, spec, budget_factory(), engine, threads)
        except BudgetExceeded:
            truncated = r
            break
        points[r] = len(comps)
    return CountSeries(G.name, spec, points, detect_period(points), truncated)


def inner_by_braids_failures(G, r, spec=None, budget=None):
    """Pairs ``(t, g)`` of connected projective marked tuples whose conjugate ``t^g`` leaves the orbit of ``t``."""
    from .nielsen import GALOIS

    spec = spec or EnumerationSpec(base=PROJECTIVE, equivalence=MARKED, cover=GALOIS)
    failures = []
    index = OrbitIndex(G, spec, budget)
    for t in enumerate_nielsen(G, r, spec, budget):
        comp = index.component(t)
        for g in range(G.order):
            if index.component(t.conjugate(g)) != comp:
                failures.append((t, g))
    return failures
