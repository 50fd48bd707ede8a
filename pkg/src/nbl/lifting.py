"""
Lifting invariants in a finite central extension, and separation probes.

An extension is a permutation group ``cover`` with a surjection onto the base
group whose kernel is central.  For each class ``C`` of the scope set a lift
``rho~`` of its representative ``rho`` is fixed; an element ``g = rho^x`` of
``C`` then lifts to ``x~ rho~ x~^-1``.  That lift is independent of the
choices of ``x`` and ``x~`` exactly when every lift of every element
centralizing ``rho`` commutes with ``rho~`` (admissibility), which is checked
on load.  The invariant of a tuple is the product of its entries' lifts.
"""

import json
from dataclasses import dataclass
from math import gcd
from importlib import resources

from .braids import decompose_components
from .budget import Budget
from .errors import ExtensionError, ForeignElementError, GroupSpecError, PreconditionError
from .groups import PermGroup, class_power, parse_group_spec, units_mod
from .nielsen import ICIProfile
from .perm import Perm, parse_cycles

BUILTIN = {"binary-tetrahedral": "binary_tetrahedral.json"}


@dataclass(frozen=True, eq=False)
class CentralExtension:
    """A validated central extension ``cover -> base`` with class-consistent lifts.

    ``projection[i]`` is the base index of cover element ``i``; ``lifts``
    maps every base element of the scope classes to its cover lift;
    ``class_lifts`` maps each scope class id to the lift of its representative.
    """

    cover: PermGroup
    base: PermGroup
    projection: tuple
    classes: tuple
    class_lifts: dict
    lifts: dict
    kernel: frozenset

    def lift(self, g):
        try:
            return self.lifts[g]
        except KeyError:
            raise PreconditionError(
                f"entry {self.base.cycle_string(g)} lies outside the scope classes"
            ) from None

    def preimages(self, g):
        return [x for x, p in enumerate(self.projection) if p == g]

    def to_json(self):
        T = self.base.class_table
        return {
            "cover_order": self.cover.order,
            "base_order": self.base.order,
            "kernel_order": len(self.kernel),
            "classes": [T.rep_string(c) for c in self.classes],
            "lifts": [
                [T.rep_string(c), self.cover.cycle_string(self.class_lifts[c])]
                for c in self.classes
            ],
        }


@dataclass(frozen=True)
class LiftValue:
    """Lifting invariant of a tuple: a cover element and the tuple length."""

    extension: CentralExtension
    element: int
    degree: int

    def cycle_string(self):
        return self.extension.cover.cycle_string(self.element)

    @property
    def is_central(self):
        cov = self.extension.cover
        return all(cov.mul(self.element, g) == cov.mul(g, self.element) for g in cov.gen_ids)

    def __repr__(self):
        return f"LiftValue({self.cycle_string()}, r={self.degree})"


def _perm(text, degree):
    return Perm(parse_cycles(text, degree))


def _projection_table(cover, base, gen_images):
    """Extend a generator assignment along a spanning tree of the Cayley graph."""
    image = [None] * cover.order
    image[0] = 0
    gens = list(gen_images.items())
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in gens:
                y = cover.mul(x, s)
                v = base.mul(image[x], t)
                if image[y] is None:
                    image[y] = v
                    nxt.append(y)
        frontier = nxt
    return image


def load_central_extension(base, cover_spec, projection, classes, lifts=None):
    """Validate and build a :class:`CentralExtension`.

    ``cover_spec`` is a group spec string or a PermGroup; ``projection`` a
    list of ``(cover generator, base image)`` pairs in cycle notation (the
    pairs must generate the cover); ``classes`` representatives of the scope
    classes; ``lifts`` optional ``(class representative, lift)`` pairs, the
    default being the lexicographically smallest preimage.
    """
    cover = cover_spec if isinstance(cover_spec, PermGroup) else parse_group_spec(cover_spec)
    gen_images = {}
    for src, dst in projection:
        s = cover.lookup(_perm(src, cover.degree)) if isinstance(src, str) else src
        t = base.lookup(_perm(dst, base.degree)) if isinstance(dst, str) else dst
        if s in gen_images and gen_images[s] != t:
            raise ExtensionError("not-homomorphism", "a generator is given two images")
        gen_images[s] = t
    if cover.closure(gen_images) != frozenset(range(cover.order)):
        raise ExtensionError(
            "not-homomorphism", "the listed cover elements do not generate the cover group"
        )
    image = _projection_table(cover, base, gen_images)
    for x in range(cover.order):
        for s, t in gen_images.items():
            y = cover.mul(x, s)
            if image[y] != base.mul(image[x], t):
                raise ExtensionError(
                    "not-homomorphism",
                    "the generator assignment does not extend multiplicatively",
                    {"element": cover.cycle_string(x), "generator": cover.cycle_string(s)},
                )
    if set(image) != set(range(base.order)):
        missing = min(set(range(base.order)) - set(image))
        raise ExtensionError(
            "not-surjective",
            f"{len(set(image))} of {base.order} base elements are hit",
            {"missing": base.cycle_string(missing)},
        )
    kernel = frozenset(x for x in range(cover.order) if image[x] == 0)
    for k in sorted(kernel):
        for g in range(cover.order):
            if cover.mul(k, g) != cover.mul(g, k):
                raise ExtensionError(
                    "kernel-not-central",
                    "a kernel element does not commute with the cover",
                    {"kernel_element": cover.cycle_string(k), "element": cover.cycle_string(g)},
                )
    T = base.class_table
    class_ids = []
    for ref in classes:
        c = T.find(ref)
        if c == 0:
            raise PreconditionError("the identity class cannot be a scope class")
        if c not in class_ids:
            class_ids.append(c)
    class_ids.sort()
    pre = {}
    for x in range(cover.order):
        pre.setdefault(image[x], []).append(x)
    chosen = {}
    for ref, lift in lifts or ():
        c = T.find(ref)
        if c not in class_ids:
            raise PreconditionError(f"lift given for class {ref} outside the scope set")
        if base.lookup(_perm(ref, base.degree)) != T.reps[c]:
            raise PreconditionError(f"{ref} is not the representative {T.rep_string(c)} of its class")
        lift_id = cover.lookup(_perm(lift, cover.degree)) if isinstance(lift, str) else lift
        if image[lift_id] != T.reps[c]:
            raise ExtensionError(
                "not-homomorphism",
                f"{cover.cycle_string(lift_id)} does not project to {T.rep_string(c)}",
            )
        chosen[c] = lift_id
    for c in class_ids:
        chosen.setdefault(c, min(pre[T.reps[c]]))

    lift_of = {}
    for c in class_ids:
        rho = T.reps[c]
        rho_t = chosen[c]
        for z in base.centralizer([rho]):
            for zt in pre[z]:
                if cover.conj(rho_t, zt) != rho_t:
                    raise ExtensionError(
                        "not-c-admissible",
                        f"a lift of an element centralizing {T.rep_string(c)} "
                        "does not commute with its chosen lift",
                        {
                            "class": T.rep_string(c),
                            "lift": cover.cycle_string(rho_t),
                            "centralizer_element": base.cycle_string(z),
                            "centralizer_lift": cover.cycle_string(zt),
                        },
                    )
        # class-consistent lifts, checked over every conjugator and every lift of it
        for x in range(cover.order):
            g = base.conj(rho, image[x])
            val = cover.conj(rho_t, x)
            prev = lift_of.setdefault(g, val)
            if prev != val:
                raise AssertionError("class-consistent lift is not well defined")
    return CentralExtension(
        cover=cover,
        base=base,
        projection=tuple(image),
        classes=tuple(class_ids),
        class_lifts=dict(chosen),
        lifts=lift_of,
        kernel=kernel,
    )


def extension_from_json(base, data):
    """Build an extension from the JSON layout ``{cover, projection, classes, lifts?, base?}``."""
    if isinstance(data, str):
        data = json.loads(data)
    if "base" in data:
        declared = parse_group_spec(data["base"])
        if declared.degree != base.degree or set(declared.elements) != set(base.elements):
            raise PreconditionError(
                f"extension is over {data['base']}, not over {base.name}"
            )
    try:
        return load_central_extension(
            base, data["cover"], data["projection"], data["classes"], data.get("lifts")
        )
    except KeyError as exc:
        raise GroupSpecError(f"extension file lacks the key {exc}") from None


def load_extension_file(base, path):
    with open(path) as fh:
        return extension_from_json(base, json.load(fh))


def builtin_extension_data(name="binary-tetrahedral"):
    try:
        fname = BUILTIN[name]
    except KeyError:
        raise PreconditionError(f"no built-in extension named {name!r}") from None
    return json.loads(resources.files("nbl").joinpath("data", fname).read_text())


def binary_tetrahedral(base=None, lifts=None):
    """The order-24 cover of A4 (SL(2,3) on the nonzero vectors of the plane over F_3)."""
    data = builtin_extension_data()
    if base is None:
        base = parse_group_spec(data["base"])
    if lifts is not None:
        data = dict(data, lifts=lifts)
    return extension_from_json(base, data)


def identity_extension(G, classes=None):
    """``G`` over itself; lifts are the elements themselves."""
    T = G.class_table
    classes = classes if classes is not None else [T.rep_string(c) for c in T.nontrivial()]
    gens = [(g.cycle_string(), g.cycle_string()) for g in G.generators]
    return load_central_extension(G, G, gens, classes)


def lifting_invariant(t, E):
    """Product, left to right, of the class-consistent lifts of the entries of ``t``."""
    if t.group is not E.base:
        raise PreconditionError("tuple and extension have different base groups")
    cov = E.cover
    acc = 0
    for x in t.entries:
        acc = cov.mul(acc, E.lift(x))
    return LiftValue(E, acc, len(t.entries))


# -- separation probe ----------------------------------------------------------


@dataclass
class CPFVReport:
    """Components grouped by (generated group, inertia profile, lift value) for each r."""

    rows: list
    collisions: dict
    threshold: int | None
    separated: bool

    def to_json(self):
        return {
            "rows": self.rows,
            "collisions": {str(r): n for r, n in sorted(self.collisions.items())},
            "threshold": self.threshold,
            "separated": self.separated,
        }


def cpfv_probe(G, E, spec, r_range, budget_factory=Budget, engine="auto"):
    """Collision table of the lifting invariant over components.

    ``spec`` restricts the Nielsen sets (its class set defaults to the
    extension's scope).  ``threshold`` is the least ``M`` such that every
    triple whose profile has all multiplicities at least ``M`` holds a single
    component; it is None when only a vacuous ``M`` works within range.
    """
    if E.base is not G:
        raise PreconditionError("extension is over a different group")
    if spec.classes is None and spec.profile is None:
        spec = spec.replace(classes=frozenset(E.classes))
    T = G.class_table
    rows = []
    collisions = {}
    colliding_mins = []
    max_mult = 0
    for r in r_range:
        comps = decompose_components(G, r, spec, budget_factory(), engine)
        groups = {}
        for comp in comps:
            value = lifting_invariant(comp.rep, E)
            gkey = comp.group_id if comp.group_id is not None else tuple(sorted(comp.group_ids))
            key = (gkey, comp.ici.counts, value.element)
            groups.setdefault(key, []).append(comp)
        n_coll = 0
        for (gkey, counts, elem), members in sorted(groups.items(), key=lambda kv: repr(kv[0])):
            mult = min(v for _, v in counts) if counts else 0
            max_mult = max(max_mult, mult)
            if len(members) > 1:
                n_coll += 1
                colliding_mins.append(mult)
            rows.append(
                {
                    "r": r,
                    "group": gkey if isinstance(gkey, int) else list(gkey),
                    "ici": {T.rep_string(c): n for c, n in counts},
                    "lift": E.cover.cycle_string(elem),
                    "components": len(members),
                }
            )
        collisions[r] = n_coll
    if not colliding_mins:
        threshold = 1
    else:
        threshold = max(colliding_mins) + 1
        if threshold > max_mult:
            threshold = None
    return CPFVReport(rows, collisions, threshold, not colliding_mins)


# -- rationality -----------------------------------------------------------------


@dataclass(frozen=True)
class RationalityReport:
    holds: bool
    m: int | None = None
    moved_class: int | None = None


def is_globally_rational(G, profile):
    """Whether raising every class to each power prime to ``|G|`` fixes the profile.

    ``profile`` is an :class:`~nbl.nielsen.ICIProfile` or a ``{class: count}``
    mapping.  On failure the report carries the first such ``m`` (reduced
    modulo the exponent) and a class whose multiplicity it changes.
    """
    if not isinstance(profile, ICIProfile):
        profile = ICIProfile.from_dict(profile) if profile else ICIProfile()
    T = G.class_table
    counts = profile.as_dict()
    for c in counts:
        if not 0 <= c < len(T):
            raise ForeignElementError(f"class id {c} out of range for {G.name}")
    for m in units_mod(G.exponent):
        if gcd(m, G.order) != 1:
            continue
        moved = {}
        for c, n in counts.items():
            d = class_power(T, c, m)
            moved[d] = moved.get(d, 0) + n
        if moved != counts:
            bad = min(c for c in set(counts) | set(moved) if counts.get(c) != moved.get(c))
            return RationalityReport(False, m, bad)
    return RationalityReport(True)


__all__ = [
    "CentralExtension",
    "LiftValue",
    "load_central_extension",
    "extension_from_json",
    "load_extension_file",
    "builtin_extension_data",
    "binary_tetrahedral",
    "identity_extension",
    "lifting_invariant",
    "CPFVReport",
    "cpfv_probe",
    "RationalityReport",
    "is_globally_rational",
]
