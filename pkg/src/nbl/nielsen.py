"""
Nielsen tuples: enumeration, canonical forms and inertia profiles.

A tuple is stored as a tuple of element indices of its ambient group.  The
base mode decides whether the entries must multiply to the identity
(``projective``, covers of the projective line) or not (``affine``).
"""

from collections import Counter
from dataclasses import dataclass

from .budget import Budget
from .errors import BudgetExceeded, PreconditionError
from .groups import PermGroup

PROJECTIVE = "projective"
AFFINE = "affine"
MARKED = "marked"
UNMARKED = "unmarked"
ANY = "any"
GALOIS = "galois"
DEGREE = "degree"


@dataclass(frozen=True)
class ICIProfile:
    """Multiset of conjugacy-class ids, stored as sorted ``(class_id, count)`` pairs."""

    counts: tuple = ()

    @classmethod
    def from_classes(cls, class_ids):
        return cls(tuple(sorted(Counter(class_ids).items())))

    @classmethod
    def from_dict(cls, mapping):
        items = [(int(k), int(v)) for k, v in mapping.items()]
        if any(v <= 0 for _, v in items):
            raise ValueError("profile multiplicities must be positive")
        return cls(tuple(sorted(items)))

    def as_dict(self):
        return dict(self.counts)

    @property
    def total(self):
        return sum(v for _, v in self.counts)

    def classes(self):
        return [c for c, _ in self.counts]

    def __add__(self, other):
        merged = Counter(dict(self.counts))
        merged.update(dict(other.counts))
        return ICIProfile(tuple(sorted(merged.items())))

    def to_json(self, table):
        return {table.rep_string(c): n for c, n in self.counts}


@dataclass(frozen=True, eq=False)
class NielsenTuple:
    """An ordered tuple of element indices of ``group``."""

    group: PermGroup
    entries: tuple

    def __eq__(self, other):
        return (
            isinstance(other, NielsenTuple)
            and self.group is other.group
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((id(self.group), self.entries))

    def __lt__(self, other):
        return self.entries < other.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"NielsenTuple({self.cycle_strings()})"

    @property
    def r(self):
        return len(self.entries)

    def product(self):
        return self.group.product(self.entries)

    def perms(self):
        return [self.group.elements[i] for i in self.entries]

    def cycle_strings(self):
        return [self.group.cycle_string(i) for i in self.entries]

    def generated(self):
        """Element-index set of the subgroup generated by the entries."""
        return self.group.closure(self.entries)

    def conjugate(self, g):
        """Entrywise ``a^g = g a g^-1``."""
        G = self.group
        return NielsenTuple(G, tuple(G.conj(x, g) for x in self.entries))

    def concat(self, other):
        if other.group is not self.group:
            raise PreconditionError("cannot concatenate tuples over different groups")
        return NielsenTuple(self.group, self.entries + other.entries)


def nielsen_tuple(G, items):
    """Build a tuple from cycle strings, Perms or indices; rejects identity entries."""
    ids = []
    for it in items:
        i = it if isinstance(it, int) else G.lookup(it)
        if i == 0:
            raise PreconditionError("Nielsen tuple entries must be nontrivial")
        ids.append(i)
    return NielsenTuple(G, tuple(ids))


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate.

    ``cover`` is ``any``, ``galois`` (entries generate exactly ``subgroup``,
    the ambient group when ``subgroup`` is None) or ``degree`` (entries act
    transitively on the points).  At most one of ``classes`` (allowed class
    ids) and ``profile`` (exact class multiplicities) may be given; with
    neither, every nontrivial class is allowed.
    """

    base: str = PROJECTIVE
    equivalence: str = MARKED
    cover: str = ANY
    subgroup: frozenset | None = None
    classes: frozenset | None = None
    profile: ICIProfile | None = None

    def __post_init__(self):
        if self.base not in (PROJECTIVE, AFFINE):
            raise PreconditionError(f"unknown base mode {self.base!r}")
        if self.equivalence not in (MARKED, UNMARKED):
            raise PreconditionError(f"unknown equivalence {self.equivalence!r}")
        if self.cover not in (ANY, GALOIS, DEGREE):
            raise PreconditionError(f"unknown cover mode {self.cover!r}")
        if self.classes is not None and self.profile is not None:
            raise PreconditionError("give either classes or profile, not both")
        if self.subgroup is not None and self.cover != GALOIS:
            raise PreconditionError("subgroup is only meaningful for galois covers")
        if self.classes is not None:
            object.__setattr__(self, "classes", frozenset(self.classes))
        if self.subgroup is not None:
            object.__setattr__(self, "subgroup", frozenset(self.subgroup))

    def replace(self, **kw):
        from dataclasses import replace

        return replace(self, **kw)

    def validate(self, G):
        T = G.class_table
        ids = self.allowed_classes(G)
        for c in ids:
            if not 0 <= c < len(T):
                raise PreconditionError(f"class id {c} out of range")
            if c == 0:
                raise PreconditionError("the identity class cannot be an entry class")
        if self.subgroup is not None and not self.subgroup <= frozenset(range(G.order)):
            raise PreconditionError("required subgroup is not inside the group")

    def allowed_classes(self, G):
        if self.profile is not None:
            return sorted(self.profile.as_dict())
        if self.classes is not None:
            return sorted(self.classes)
        return G.class_table.nontrivial()

    def target_group(self, G):
        if self.cover != GALOIS:
            return None
        return self.subgroup if self.subgroup is not None else frozenset(range(G.order))

    def candidates(self, G):
        """Sorted element indices an entry may take."""
        T = G.class_table
        out = []
        for c in self.allowed_classes(G):
            out.extend(T.members[c])
        target = self.target_group(G)
        if target is not None:
            out = [x for x in out if x in target]
        return sorted(out)

    def conjugators(self, G):
        """Elements acting by conjugation in unmarked mode (None when marked)."""
        if self.equivalence == MARKED:
            return None
        if self.cover == GALOIS and self.subgroup is not None and len(self.subgroup) < G.order:
            return tuple(sorted(G.normalizer(self.subgroup)))
        return tuple(range(G.order))

    def admits(self, G, entries, _cache=None):
        """Full membership test for a raw entry sequence (no canonical-form check)."""
        if any(x == 0 for x in entries):
            return False
        if self.base == PROJECTIVE and G.product(entries) != 0:
            return False
        T = G.class_table
        if self.profile is not None:
            if ICIProfile.from_classes(T.class_of[x] for x in entries) != self.profile:
                return False
        else:
            allowed = set(self.allowed_classes(G))
            if any(T.class_of[x] not in allowed for x in entries):
                return False
        return self.cover_ok(G, entries, _cache)

    def cover_ok(self, G, entries, cache=None):
        if self.cover == ANY:
            return True
        key = frozenset(entries)
        if cache is not None and key in cache:
            return cache[key]
        if self.cover == GALOIS:
            ok = G.closure(key) == self.target_group(G)
        else:
            ok = G.is_transitive_on_points(key)
        if cache is not None:
            cache[key] = ok
        return ok

    def key(self):
        """Hashable, JSON-friendly description."""
        return {
            "base": self.base,
            "equivalence": self.equivalence,
            "cover": self.cover,
            "subgroup": sorted(self.subgroup) if self.subgroup is not None else None,
            "classes": sorted(self.classes) if self.classes is not None else None,
            "profile": [list(p) for p in self.profile.counts] if self.profile else None,
        }


class Canonicalizer:
    """Lexicographically minimal conjugate of a tuple under a set of conjugators.

    The minimum is found entry by entry: the conjugators sending the first
    entry to its smallest conjugate form a coset of its centralizer, and that
    candidate list is narrowed by each following entry.
    """

    def __init__(self, G, conjugators):
        self.group = G
        self.conjugators = tuple(conjugators) if conjugators is not None else None
        self._first = {}

    @property
    def trivial(self):
        return self.conjugators is None or len(self.conjugators) <= 1

    def _first_info(self, x):
        info = self._first.get(x)
        if info is None:
            conj = self.group.conj
            vals = [(conj(x, g), g) for g in self.conjugators]
            m = min(v for v, _ in vals)
            info = (m, tuple(g for v, g in vals if v == m))
            self._first[x] = info
        return info

    def __call__(self, entries):
        if self.trivial or not entries:
            return entries
        conj = self.group.conj
        m0, cands = self._first_info(entries[0])
        out = [m0]
        for k in range(1, len(entries)):
            x = entries[k]
            if len(cands) == 1:
                g = cands[0]
                out.extend(conj(y, g) for y in entries[k:])
                break
            vals = [conj(x, g) for g in cands]
            m = min(vals)
            cands = tuple(g for v, g in zip(vals, cands) if v == m)
            out.append(m)
        return tuple(out)


def canonicalize(t, equivalence, conjugators=None):
    """Canonical representative of ``t``.

    Marked: ``t`` itself.  Unmarked: the lexicographically minimal entrywise
    conjugate ``t^g`` over ``g`` in ``conjugators`` (default: the whole group).
    """
    if equivalence == MARKED:
        return t
    if equivalence != UNMARKED:
        raise PreconditionError(f"unknown equivalence {equivalence!r}")
    G = t.group
    conj = conjugators if conjugators is not None else range(G.order)
    return NielsenTuple(G, Canonicalizer(G, conj)(t.entries))


def ici(t, refine=None):
    """Inertia profile of ``t`` over the ambient classes, or over ``refine``'s own classes."""
    G = t.group
    if refine is None:
        return ICIProfile.from_classes(G.class_table.class_of[x] for x in t.entries)
    H = refine
    if H is not G and H.parent is not G:
        raise PreconditionError("refining subgroup must be a subgroup of the tuple's group")
    if H is G:
        return ici(t)
    TH = H.class_table
    out = []
    for x in t.entries:
        if x not in H.parent_ids:
            raise PreconditionError(f"entry {G.cycle_string(x)} lies outside the subgroup")
        out.append(TH.class_of[H.from_parent[x]])
    return ICIProfile.from_classes(out)


def enumerate_nielsen(G, r, spec, budget=None):
    """Yield every tuple satisfying ``spec`` once, in lexicographic order.

    Unmarked enumeration yields only canonical representatives.  Raises
    :class:`BudgetExceeded` (``partial`` = number already yielded) when the
    tuple or time budget runs out.
    """
    if r < 0:
        raise PreconditionError("r must be non-negative")
    spec.validate(G)
    budget = budget or Budget()
    projective = spec.base == PROJECTIVE
    cand = spec.candidates(G)
    T = G.class_table
    class_of = T.class_of
    canon = Canonicalizer(G, spec.conjugators(G))
    cover_cache = {}
    rows = G.rows if G.has_table else None
    mul = G.mul
    inv = G.inv
    cand_set = set(cand)
    profile = spec.profile.as_dict() if spec.profile is not None else None
    if profile is not None and sum(profile.values()) != r:
        return
    emitted = 0

    def accept(entries):
        if not spec.cover_ok(G, entries, cover_cache):
            return False
        if not canon.trivial and canon(entries) != entries:
            return False
        return True

    def emit():
        nonlocal emitted
        emitted += 1
        if emitted > budget.max_tuples:
            raise BudgetExceeded("enumeration", budget.max_tuples, emitted - 1)
        if emitted & 0xFFF == 0:
            budget.check_time("enumeration", emitted - 1)

    if r == 0:
        if accept(()):
            emit()
            yield NielsenTuple(G, ())
        return

    prefix = [0] * r

    def rec(depth, prod, remaining):
        last_free = r - 1 if projective else r
        if depth == last_free:
            if projective:
                x = inv[prod]
                if x not in cand_set:
                    return
                if remaining is not None:
                    c = class_of[x]
                    if remaining.get(c, 0) != 1:
                        return
                prefix[depth] = x
            entries = tuple(prefix)
            if accept(entries):
                emit()
                yield NielsenTuple(G, entries)
            return
        for x in cand:
            if remaining is not None:
                c = class_of[x]
                left = remaining.get(c, 0)
                if left == 0:
                    continue
                remaining[c] = left - 1
            prefix[depth] = x
            nprod = rows[prod][x] if rows is not None else mul(prod, x)
            yield from rec(depth + 1, nprod, remaining)
            if remaining is not None:
                remaining[c] = left

    yield from rec(0, 0, dict(profile) if profile is not None else None)
