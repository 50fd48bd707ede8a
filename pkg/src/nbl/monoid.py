"""
Concatenation of components, its commutation law, twisted concatenations,
splitting numbers and component counts of connected subgroup covers.

Concatenation is computed inside a :class:`ComponentMonoid`, which fixes the
ambient group, base mode and equivalence and memoizes every orbit it visits.
Components produced elsewhere (with cover or class restrictions) are first
re-identified in the unrestricted Nielsen set of the same modes, so results
of different queries compare directly.
"""

import random
from dataclasses import dataclass, field

from .braids import OrbitIndex, decompose_components
from .budget import Budget
from .errors import ForeignElementError, PreconditionError
from .groups import PermGroup, subgroup_class_id, subgroup_lattice
from .nielsen import (
    ANY,
    GALOIS,
    MARKED,
    PROJECTIVE,
    UNMARKED,
    EnumerationSpec,
    ICIProfile,
    NielsenTuple,
)
from .serialize import component_id


class ComponentMonoid:
    """Components of all Nielsen sets of ``G`` in one base mode and equivalence."""

    def __init__(self, G, base=PROJECTIVE, equivalence=MARKED, budget=None):
        self.group = G
        self.spec = EnumerationSpec(base=base, equivalence=equivalence, cover=ANY)
        self.budget = budget or Budget()
        self.index = OrbitIndex(G, self.spec, self.budget)

    @classmethod
    def for_component(cls, comp, budget=None):
        return cls(comp.group, comp.spec.base, comp.spec.equivalence, budget)

    @property
    def base(self):
        return self.spec.base

    @property
    def equivalence(self):
        return self.spec.equivalence

    def unit(self):
        return self.index.component(())

    def component(self, t):
        """Component of a tuple (NielsenTuple, entry indices or cycle strings)."""
        if isinstance(t, NielsenTuple):
            if t.group is not self.group:
                raise PreconditionError("tuple belongs to a different group")
            entries = t.entries
        else:
            entries = tuple(x if isinstance(x, int) else self.group.lookup(x) for x in t)
        if not self.spec.admits(self.group, entries):
            raise PreconditionError("tuple is not a Nielsen tuple of this base mode")
        return self.index.component(entries)

    def adopt(self, comp):
        """Re-identify ``comp`` inside this monoid (checks modes and group)."""
        if comp.group is not self.group:
            raise PreconditionError("component belongs to a different group")
        if comp.spec.base != self.base or comp.spec.equivalence != self.equivalence:
            raise PreconditionError(
                f"mixed modes: {comp.spec.base}/{comp.spec.equivalence} component "
                f"used with a {self.base}/{self.equivalence} monoid"
            )
        if comp.spec == self.spec:
            return comp
        return self.index.component(comp.rep.entries)

    def members(self, comp):
        """Canonical tuples of the orbit of ``comp``."""
        comp = self.adopt(comp)
        self.index.component(comp.rep.entries)
        return self.index.members(comp)

    # -- operations --------------------------------------------------------

    def _check_unmarked(self, *comps):
        if self.equivalence != UNMARKED:
            return
        for c in comps:
            if c.r > 0 and c.group_order != self.group.order:
                raise PreconditionError(
                    "unmarked concatenation needs connected components with the full group; "
                    f"got a component generating a subgroup of order {c.group_order}"
                )

    def concat(self, x, y, samples=0, rng=None):
        """Component of (representative of ``x``) followed by (representative of ``y``).

        With ``samples > 0`` that many random pairs of orbit members (randomly
        conjugated in unmarked mode) are concatenated as well and must land in
        the same component.
        """
        x, y = self.adopt(x), self.adopt(y)
        self._check_unmarked(x, y)
        out = self.index.component(x.rep.entries + y.rep.entries)
        if samples:
            rng = rng or random.Random(0)
            xs, ys = self.members(x), self.members(y)
            G = self.group
            for _ in range(samples):
                a, b = rng.choice(xs), rng.choice(ys)
                if self.equivalence == UNMARKED:
                    ga, gb = rng.randrange(G.order), rng.randrange(G.order)
                    a = tuple(G.conj(e, ga) for e in a)
                    b = tuple(G.conj(e, gb) for e in b)
                if self.index.component(a + b) != out:
                    raise AssertionError(
                        f"concatenation depends on representatives: {a} + {b} leaves {out}"
                    )
        return out

    def conjugate(self, y, gamma):
        """Component of the entrywise conjugate ``rep(y)^gamma``."""
        y = self.adopt(y)
        g = self._element(gamma)
        return self.index.component(y.rep.conjugate(g).entries)

    def _element(self, gamma):
        G = self.group
        if isinstance(gamma, int):
            if not 0 <= gamma < G.order:
                raise ForeignElementError(f"index {gamma} out of range for {G.name}")
            return gamma
        return G.lookup(gamma)

    def commutation_check(self, x, y):
        """Compare ``x·y`` with ``y^(prod x)·x``."""
        x, y = self.adopt(x), self.adopt(y)
        lhs = self.concat(x, y)
        px = x.rep.product()
        rhs = self.concat(self.conjugate(y, px), x)
        return CommutationReport(component_id(lhs), component_id(rhs), lhs == rhs)

    def twist_set(self, x, y):
        """All ``x^γ · y^δ`` with ``γ, δ`` in ``L = <H, K>`` and ``<H^γ, K^δ> = L``."""
        if self.equivalence != MARKED:
            raise PreconditionError("twisted concatenation is defined for marked components")
        x, y = self.adopt(x), self.adopt(y)
        G = self.group
        H = G.closure(x.rep.entries)
        K = G.closure(y.rep.entries)
        L = G.closure(H | K)
        hk = len(H) * len(K) // len(H & K)
        found = {}
        pairs = 0
        conj_sets = {}

        def conj_set(S, g):
            key = (S, g)
            out = conj_sets.get(key)
            if out is None:
                out = conj_sets[key] = frozenset(G.conj(s, g) for s in S)
            return out

        base = self.concat(x, y)
        for gamma in sorted(L):
            Hg = conj_set(H, gamma)
            xg = x.rep.conjugate(gamma).entries
            for delta in sorted(L):
                Kd = conj_set(K, delta)
                if G.closure(Hg | Kd) != L:
                    continue
                pairs += 1
                c = self.index.component(xg + y.rep.conjugate(delta).entries)
                found.setdefault(c, (gamma, delta))
        comps = sorted(found)
        return TwistReport(
            components=[component_id(c) for c in comps],
            witnesses={component_id(c): found[c] for c in comps},
            hk_holds=hk == len(L),
            singleton=comps == [base],
            pairs_checked=pairs,
            product_id=component_id(base),
        )


@dataclass(frozen=True)
class CommutationReport:
    lhs: str
    rhs: str
    holds: bool


@dataclass(frozen=True)
class TwistReport:
    components: list
    witnesses: dict
    hk_holds: bool
    singleton: bool
    pairs_checked: int
    product_id: str

    @property
    def size(self):
        return len(self.components)


def concat(x, y, monoid=None, samples=0):
    monoid = monoid or ComponentMonoid.for_component(x)
    return monoid.concat(x, y, samples=samples)


def conjugate_component(y, gamma, monoid=None):
    monoid = monoid or ComponentMonoid.for_component(y)
    return monoid.conjugate(y, gamma)


def commutation_check(x, y, monoid=None):
    monoid = monoid or ComponentMonoid.for_component(x)
    return monoid.commutation_check(x, y)


def hm_twist_set(x, y, monoid=None):
    monoid = monoid or ComponentMonoid.for_component(x)
    return monoid.twist_set(x, y)


# -- splitting numbers -------------------------------------------------------


def _subgroup_ids(G, H):
    if isinstance(H, PermGroup):
        if H is G:
            return frozenset(range(G.order))
        if H.parent is not G:
            raise PreconditionError("subgroup does not belong to this group")
        return frozenset(H.parent_ids)
    ids = frozenset(H)
    if G.closure(ids) != ids:
        raise PreconditionError("element set is not a subgroup")
    return ids


def _h_classes(G, H_ids, members):
    """Partition ``members`` (a subset of H) into H-conjugacy classes."""
    gens = G.subgroup(H_ids).generators if len(H_ids) > 1 else []
    gen_ids = [G.index[g] for g in gens]
    left = set(members)
    out = []
    while left:
        x = min(left)
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in gen_ids:
                z = G.conj(y, g)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        left -= orbit
        out.append(tuple(sorted(orbit)))
    return out


@dataclass(frozen=True)
class SplittingDatum:
    """Splitting number of ``H`` along the classes ``class_set``.

    ``breakdown`` maps each ambient class meeting H to its H-classes (sorted
    element-index tuples).
    """

    subgroup_id: int | None
    class_set: tuple
    omega: int
    breakdown: dict = field(default_factory=dict)

    def to_json(self, G):
        T = G.class_table
        return {
            "subgroup_id": self.subgroup_id,
            "classes": [T.rep_string(c) for c in self.class_set],
            "omega": self.omega,
            "breakdown": {
                T.rep_string(c): [[G.cycle_string(x) for x in hc] for hc in parts]
                for c, parts in sorted(self.breakdown.items())
            },
        }


def splitting_number(G, H, c):
    """``sum over C in c meeting H of (number of H-classes in C ∩ H) - 1``."""
    ids = _subgroup_ids(G, H)
    T = G.class_table
    classes = tuple(sorted(set(c)))
    breakdown = {}
    omega = 0
    for C in classes:
        inter = [x for x in T.members[C] if x in ids]
        if not inter:
            continue
        parts = _h_classes(G, ids, inter)
        breakdown[C] = parts
        omega += len(parts) - 1
    return SplittingDatum(subgroup_class_id(G, ids), classes, omega, breakdown)


@dataclass(frozen=True)
class NonSplitReport:
    holds: bool
    witness: PermGroup | None = None
    datum: SplittingDatum | None = None


def is_nonsplitting(G, c):
    """Whether every subgroup meeting a class of ``c`` meets it in a single H-class."""
    if isinstance(c, int):
        c = [c]
    for H in subgroup_lattice(G).reps:
        ids = _subgroup_ids(G, H)
        datum = splitting_number(G, ids, c)
        if any(len(parts) > 1 for parts in datum.breakdown.values()):
            return NonSplitReport(False, H, datum)
    return NonSplitReport(True)


# -- counts of connected subgroup covers --------------------------------------


def _xi_map(c, xi):
    if isinstance(xi, dict):
        if set(xi) != set(c):
            raise PreconditionError("multiplicity map must cover exactly the chosen classes")
        out = dict(xi)
    else:
        out = {C: xi for C in c}
    for C, v in out.items():
        if not isinstance(v, int) or v <= 0:
            raise PreconditionError(f"multiplicity for class {C} must be a positive integer, got {v}")
    return out


def hf_components(G, H, c, xi, r, strict_per_class=False, budget=None, engine="auto"):
    """Marked components of projective tuples generating ``H`` with the prescribed class counts.

    Collective reading (default): each ambient class ``C`` of ``c`` occurs
    ``r * xi[C]`` times in total.  Strict reading: each H-class inside
    ``C ∩ H`` occurs ``r * xi[C]`` times, and orbits are computed inside H.
    """
    if r < 0:
        raise PreconditionError("r must be non-negative")
    c = sorted(set(c))
    if not c:
        raise PreconditionError("at least one class is required")
    xi = _xi_map(c, xi)
    ids = _subgroup_ids(G, H)
    budget = budget or Budget()
    if not strict_per_class:
        profile = ICIProfile.from_dict({C: r * xi[C] for C in c}) if r > 0 else None
        if profile is None:
            return []
        spec = EnumerationSpec(
            base=PROJECTIVE, equivalence=MARKED, cover=GALOIS, subgroup=ids, profile=profile
        )
        return decompose_components(G, profile.total, spec, budget, engine)
    Hs = G if len(ids) == G.order else G.subgroup(ids)
    TH = Hs.class_table
    datum = splitting_number(G, ids, c)
    if r == 0 or len(datum.breakdown) < len(c):
        return []
    counts = {}
    for C, parts in datum.breakdown.items():
        for part in parts:
            local = part[0] if Hs is G else Hs.from_parent[part[0]]
            counts[TH.class_of[local]] = r * xi[C]
    profile = ICIProfile.from_dict(counts)
    spec = EnumerationSpec(base=PROJECTIVE, equivalence=MARKED, cover=GALOIS, profile=profile)
    return decompose_components(Hs, profile.total, spec, budget, engine)


def hf_count(G, H, c, xi, r, strict_per_class=False, budget=None, engine="auto"):
    return len(hf_components(G, H, c, xi, r, strict_per_class, budget, engine))


__all__ = [
    "ComponentMonoid",
    "CommutationReport",
    "TwistReport",
    "concat",
    "conjugate_component",
    "commutation_check",
    "hm_twist_set",
    "SplittingDatum",
    "splitting_number",
    "NonSplitReport",
    "is_nonsplitting",
    "hf_components",
    "hf_count",
]
