"""
End-to-end checks comparing the library against brute force and known facts.

Each suite returns a :class:`SuiteResult`; ``passed`` is true exactly when no
failure was recorded.  Suites are deterministic (seeded sampling only).
"""

import random
import time
from dataclasses import dataclass, field

from .braids import (
    FORWARD,
    INVERSE,
    OrbitIndex,
    apply_braid,
    count_series,
    decompose_components,
    inner_by_braids_failures,
    orbit_members,
)
from .budget import Budget
from .errors import ExtensionError
from .groups import parse_group_spec
from .lifting import (
    binary_tetrahedral,
    cpfv_probe,
    identity_extension,
    is_globally_rational,
    lifting_invariant,
    load_central_extension,
)
from .monoid import ComponentMonoid, hf_count, is_nonsplitting, splitting_number
from .nielsen import (
    AFFINE,
    ANY,
    DEGREE,
    GALOIS,
    MARKED,
    PROJECTIVE,
    UNMARKED,
    Canonicalizer,
    EnumerationSpec,
    ICIProfile,
    NielsenTuple,
    enumerate_nielsen,
)
from .oracles import labelprop_component_count, naive_component_count, naive_partition


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def fail(self, what):
        self.failures.append(what)

    def to_json(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": [str(f) for f in self.failures[:50]],
            "failure_count": len(self.failures),
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }


def _timed(fn):
    def wrapper(*args, **kw):
        t0 = time.perf_counter()
        res = fn(*args, **kw)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _group(G):
    return parse_group_spec(G) if isinstance(G, str) else G


def _class_id(G, ref):
    if isinstance(ref, int):
        return ref
    if ref == "trans":
        return G.class_table.find("(1 2)")
    return G.class_table.find(ref)


# -- braid group relations -----------------------------------------------------


@_timed
def braid_relations(groups=("S3", "A4", "D5"), r=5, samples=3400, seed=0):
    """Artin relations, far commutation and invertibility on random tuples."""
    res = SuiteResult("braid-relations")
    rng = random.Random(seed)
    for G in groups:
        G = _group(G)
        for _ in range(samples):
            t = NielsenTuple(G, tuple(rng.randrange(1, G.order) for _ in range(r)))
            for i in range(1, r):
                back = apply_braid(apply_braid(t, i), i, INVERSE)
                forth = apply_braid(apply_braid(t, i, INVERSE), i)
                res.checks += 2
                if back != t or forth != t:
                    res.fail(("inverse", G.name, t.entries, i))
            for i in range(1, r - 1):
                lhs = apply_braid(apply_braid(apply_braid(t, i), i + 1), i)
                rhs = apply_braid(apply_braid(apply_braid(t, i + 1), i), i + 1)
                res.checks += 1
                if lhs != rhs:
                    res.fail(("braid", G.name, t.entries, i))
            for i in range(1, r):
                for j in range(i + 2, r):
                    res.checks += 1
                    if apply_braid(apply_braid(t, i), j) != apply_braid(apply_braid(t, j), i):
                        res.fail(("far", G.name, t.entries, i, j))
    res.details["tuples"] = samples * len(groups)
    return res


# -- orbit partition against union-find ---------------------------------------


def component_partition(G, r, spec, engine="python"):
    """Partition of the canonical Nielsen set into components (as frozensets)."""
    comps = decompose_components(G, r, spec, Budget(), engine=engine)
    canon = Canonicalizer(G, spec.conjugators(G))
    out = set()
    for c in comps:
        out.add(frozenset(orbit_members(G, c.rep.entries, canon)))
    return out, comps


def default_oracle_matrix(groups=("S3", "C4", "A4", "D5"), r_max=5, limit=10**5):
    """Configurations whose brute-force tuple space stays below ``limit``."""
    out = []
    for name in groups:
        G = parse_group_spec(name)
        k = G.order - 1
        for base in (PROJECTIVE, AFFINE):
            for equiv in (MARKED, UNMARKED):
                for cover in (ANY, GALOIS, DEGREE):
                    for r in range(0, r_max + 1):
                        if k**r > limit:
                            break
                        out.append((name, r, EnumerationSpec(base, equiv, cover)))
    return out


@_timed
def orbit_oracle(configs=None):
    """Canonical-form BFS partitions equal naive union-find partitions."""
    res = SuiteResult("orbit-oracle")
    configs = configs if configs is not None else default_oracle_matrix()
    groups = {}
    tuples = 0
    for name, r, spec in configs:
        G = groups.setdefault(name, parse_group_spec(name))
        got, comps = component_partition(G, r, spec)
        want = naive_partition(G, r, spec)
        res.checks += 1
        tuples += sum(len(b) for b in want)
        if got != want:
            res.fail((name, r, spec.key()))
        if spec.equivalence == MARKED and r >= 2:
            dense = decompose_components(G, r, spec, Budget(), engine="dense")
            res.checks += 1
            if [(c.rep.entries, c.orbit_size) for c in dense] != [
                (c.rep.entries, c.orbit_size) for c in comps
            ]:
                res.fail(("dense", name, r, spec.key()))
    res.details["configurations"] = len(configs)
    res.details["tuples"] = tuples
    return res


# -- classical connectivity ------------------------------------------------------


@_timed
def clebsch(cases=((3, 4), (3, 6), (4, 6), (5, 6))):
    """Transitive tuples of transpositions in S_d form a single component."""
    res = SuiteResult("clebsch")
    for d, r in cases:
        G = parse_group_spec(f"S{d}")
        trans = _class_id(G, "trans")
        for equiv in (MARKED, UNMARKED):
            spec = EnumerationSpec(PROJECTIVE, equiv, DEGREE, classes=[trans])
            n = len(decompose_components(G, r, spec, Budget(max_tuples=10**8)))
            res.checks += 1
            res.details[f"S{d} r={r} {equiv}"] = n
            if n != 1:
                res.fail((d, r, equiv, n))
    return res


@_timed
def first_entry(group="S3", cls="trans", r=8, g="(1 2)"):
    """Every generating affine orbit meets a tuple ``(g, ...)`` whose tail generates G."""
    res = SuiteResult("first-entry")
    G = _group(group)
    c = _class_id(G, cls)
    gi = G.lookup(g)
    full = frozenset(range(G.order))
    spec = EnumerationSpec(AFFINE, MARKED, GALOIS, classes=[c])
    canon = Canonicalizer(G, None)
    seen = set()
    orbits = 0
    for t in enumerate_nielsen(G, r, spec):
        if t.entries in seen:
            continue
        members = orbit_members(G, t.entries, canon)
        seen |= members
        orbits += 1
        res.checks += 1
        if not any(m[0] == gi and G.closure(m[1:]) == full for m in members):
            res.fail(min(members))
    res.details.update(orbits=orbits, tuples=len(seen))
    return res


# -- stabilization --------------------------------------------------------------


def oracle_count(G, r, spec, naive_limit=2 * 10**4):
    """Brute-force component count: union-find when small, label propagation otherwise."""
    k = len([x for x in range(1, G.order) if G.class_table.class_of[x] in spec.allowed_classes(G)])
    if k**r <= naive_limit or spec.equivalence != MARKED:
        return naive_component_count(G, r, spec)
    return labelprop_component_count(G, r, spec)


@_timed
def stabilization(cases=(("D5", "(2 5)(3 4)"), ("S3", "trans")), r_range=range(4, 13), oracle=True):
    """Connected component counts over a range of r, with period detection and oracle counts."""
    res = SuiteResult("stabilization")
    for name, cls in cases:
        G = parse_group_spec(name)
        c = _class_id(G, cls)
        ns = is_nonsplitting(G, [c])
        res.checks += 1
        res.details[f"{name} nonsplit"] = ns.holds
        if not ns.holds:
            res.fail((name, "class splits in a subgroup"))
        spec = EnumerationSpec(PROJECTIVE, MARKED, GALOIS, classes=[c])
        series = count_series(
            G, spec, r_range, budget_factory=lambda: Budget(max_tuples=10**9, max_orbit=10**9)
        )
        res.details[f"{name} counts"] = series.points
        res.details[f"{name} period"] = series.period_label
        res.checks += 1
        if series.detected_period is None or series.truncated_at is not None:
            res.fail((name, "no period detected"))
        if oracle:
            for r, n in series.points.items():
                res.checks += 1
                want = oracle_count(G, r, spec)
                if want != n:
                    res.fail((name, r, n, want))
    return res


# -- inner automorphisms by braids ---------------------------------------------


@_timed
def inner_braids(cases=(("S3", 6), ("A4", 4))):
    """For connected marked tuples, every conjugate lies in the braid orbit."""
    res = SuiteResult("inner-braids")
    for name, r_max in cases:
        G = parse_group_spec(name)
        for r in range(0, r_max + 1):
            fails = inner_by_braids_failures(G, r)
            res.checks += 1
            res.details[f"{name} r={r}"] = len(fails)
            for f in fails:
                res.fail((name, f[0].entries, f[1]))
    return res


# -- monoid laws ----------------------------------------------------------------


def _all_components(M, r_max):
    G = M.group
    out = []
    for r in range(0, r_max + 1):
        out.extend(decompose_components(G, r, M.spec))
    return out


@_timed
def monoid(group="S3", affine_max=2, projective_max=4, assoc_max=2, samples=2):
    """Unit, associativity, commutation and invariant additivity of concatenation."""
    res = SuiteResult("monoid")
    G = _group(group)
    for base, r_max in ((AFFINE, affine_max), (PROJECTIVE, projective_max)):
        M = ComponentMonoid(G, base, MARKED)
        comps = _all_components(M, r_max)
        unit = M.unit()
        for x in comps:
            res.checks += 2
            if M.concat(unit, x) != x or M.concat(x, unit) != x:
                res.fail((base, "unit", x.rep.entries))
        for x in comps:
            for y in comps:
                xy = M.concat(x, y, samples=samples)
                rep = M.commutation_check(x, y)
                res.checks += 4
                if not rep.holds:
                    res.fail((base, "commutation", x.rep.entries, y.rep.entries))
                if xy.r != x.r + y.r:
                    res.fail((base, "degree", x.rep.entries, y.rep.entries))
                if xy.ici != x.ici + y.ici:
                    res.fail((base, "ici", x.rep.entries, y.rep.entries))
                if xy.group_ids != G.closure(x.group_ids | y.group_ids):
                    res.fail((base, "group", x.rep.entries, y.rep.entries))
        small = [c for c in comps if c.r <= assoc_max]
        for x in small:
            for y in small:
                xy = M.concat(x, y)
                for z in small:
                    res.checks += 1
                    if M.concat(xy, z) != M.concat(x, M.concat(y, z)):
                        res.fail((base, "assoc", x.rep.entries, y.rep.entries, z.rep.entries))
        res.details[f"{base} components"] = len(comps)
    return res


@_timed
def twist(group="S3", r_max=4):
    """Twisted concatenation sets are singletons whenever <H,K> = HK."""
    res = SuiteResult("twist")
    G = _group(group)
    M = ComponentMonoid(G, PROJECTIVE, MARKED)
    comps = _all_components(M, r_max)
    hk_pairs = 0
    sizes = {}
    for x in comps:
        for y in comps:
            rep = M.twist_set(x, y)
            sizes[rep.size] = sizes.get(rep.size, 0) + 1
            if rep.hk_holds:
                hk_pairs += 1
                res.checks += 1
                if not rep.singleton:
                    res.fail((x.rep.cycle_strings(), y.rep.cycle_strings(), rep.size))
    if G.order == 6 and G.degree == 3:
        x = M.component(["(1 2 3)", "(1 3 2)"])
        y = M.component(["(1 2)", "(1 2)"])
        rep = M.twist_set(x, y)
        res.checks += 1
        res.details["A3 x C2 twist set size"] = rep.size
        if not (rep.hk_holds and rep.singleton):
            res.fail(("A3 x C2", rep))
    res.details.update(components=len(comps), hk_pairs=hk_pairs, set_sizes=sizes)
    return res


# -- splitting and counts -------------------------------------------------------


def a3_closed_form(r):
    """Multisets of ``a`` copies of (1 2 3) and ``r-a`` of (1 3 2) with product 1."""
    return sum(1 for a in range(r + 1) if (a - (r - a)) % 3 == 0)


@_timed
def hf(r_range=range(2, 13)):
    """Counts of connected A3- and C2-covers in S3 against closed forms."""
    res = SuiteResult("hf")
    G = parse_group_spec("S3")
    three = G.class_table.find("(1 2 3)")
    two = G.class_table.find("(1 2)")
    A3 = G.closure([G.lookup("(1 2 3)")])
    C2 = G.closure([G.lookup("(1 2)")])
    omega_a3 = splitting_number(G, A3, [three]).omega
    omega_c2 = splitting_number(G, C2, [two]).omega
    res.checks += 2
    if omega_a3 != 1 or omega_c2 != 0:
        res.fail(("omega", omega_a3, omega_c2))
    a3, c2, c2_odd = {}, {}, {}
    for r in r_range:
        a3[r] = hf_count(G, A3, [three], 1, r)
        c2[r] = hf_count(G, C2, [two], 2, r)
        c2_odd[r] = hf_count(G, C2, [two], 1, r)
        res.checks += 3
        if a3[r] != a3_closed_form(r):
            res.fail(("A3", r, a3[r], a3_closed_form(r)))
        if c2[r] != 1:
            res.fail(("C2 xi=2", r, c2[r]))
        if c2_odd[r] != (1 if r % 2 == 0 else 0):
            res.fail(("C2 xi=1", r, c2_odd[r]))
    res.details.update(a3=a3, c2_xi2=c2, c2_xi1=c2_odd)
    return res


# -- lifting invariants ----------------------------------------------------------


def quaternion_over_klein():
    """Q8 (regular action) over the Klein four group, lifting both classes to order-4 elements."""
    V4 = parse_group_spec("perm(4; (1 2)(3 4), (1 3)(2 4))")
    i, j = "(1 2 5 6)(3 8 7 4)", "(1 3 5 7)(2 4 6 8)"
    return V4, dict(
        cover_spec=f"perm(8; {i}, {j})",
        projection=[(i, "(1 2)(3 4)"), (j, "(1 3)(2 4)")],
        classes=["(1 2)(3 4)", "(1 3)(2 4)"],
        lifts=[("(1 2)(3 4)", i), ("(1 3)(2 4)", j)],
    )


@_timed
def lifting(r_range=range(4, 7), max_orbit=10**4):
    """Braid invariance, multiplicativity, centrality and separation in the A4 cover."""
    res = SuiteResult("lifting")
    A4 = parse_group_spec("A4")
    E = binary_tetrahedral(A4)
    cov = E.cover
    spec = EnumerationSpec(PROJECTIVE, MARKED, ANY, classes=frozenset(E.classes))
    canon = Canonicalizer(A4, None)
    values = {}
    for r in r_range:
        for comp in decompose_components(A4, r, spec):
            if comp.orbit_size > max_orbit:
                continue
            v0 = lifting_invariant(comp.rep, E)
            values[(r, comp.rep.entries)] = v0.element
            res.checks += 2
            if E.projection[v0.element] != 0 or not v0.is_central:
                res.fail(("central", comp.rep.entries))
            for m in orbit_members(A4, comp.rep.entries, canon):
                t = NielsenTuple(A4, m)
                if lifting_invariant(t, E).element != v0.element:
                    res.fail(("orbit", comp.rep.entries, m))
                for i in range(1, r):
                    for d in (FORWARD, INVERSE):
                        res.checks += 1
                        if lifting_invariant(apply_braid(t, i, d), E).element != v0.element:
                            res.fail(("braid", m, i, d))
    # multiplicativity on concatenated representatives, affine tuples included
    rng = random.Random(1)
    pool = [x for x in range(A4.order) if A4.class_table.class_of[x] in E.classes]
    for _ in range(500):
        a = NielsenTuple(A4, tuple(rng.choice(pool) for _ in range(rng.randrange(0, 5))))
        b = NielsenTuple(A4, tuple(rng.choice(pool) for _ in range(rng.randrange(0, 5))))
        res.checks += 1
        lhs = lifting_invariant(a.concat(b), E).element
        rhs = cov.mul(lifting_invariant(a, E).element, lifting_invariant(b, E).element)
        if lhs != rhs:
            res.fail(("multiplicative", a.entries, b.entries))
    # other lift choices scale each profile's values by one central constant
    alt = binary_tetrahedral(
        A4,
        lifts=[
            [A4.class_table.rep_string(c), cov.cycle_string(_other_lift(E, c))] for c in E.classes
        ],
    )
    ratios = {}
    for (r, entries), v in values.items():
        t = NielsenTuple(A4, entries)
        w = lifting_invariant(t, alt).element
        key = ICIProfile.from_classes(A4.class_table.class_of[x] for x in entries)
        ratio = cov.mul(w, cov.inv[v])
        res.checks += 1
        if ratios.setdefault(key, ratio) != ratio:
            res.fail(("lift choice", entries))
    probe = cpfv_probe(A4, E, EnumerationSpec(PROJECTIVE, MARKED, GALOIS), r_range)
    res.checks += 1
    res.details["cpfv collisions"] = probe.collisions
    if not probe.separated:
        res.fail(("cpfv", probe.collisions))
    # trivial extension gives trivial values on projective tuples
    S3 = parse_group_spec("S3")
    I = identity_extension(S3)
    for t in enumerate_nielsen(S3, 4, EnumerationSpec()):
        res.checks += 1
        if lifting_invariant(t, I).element != 0:
            res.fail(("identity extension", t.entries))
    V4, kw = quaternion_over_klein()
    res.checks += 1
    try:
        load_central_extension(V4, **kw)
        res.fail("Q8 over V4 accepted")
    except ExtensionError as exc:
        res.details["Q8 rejection"] = exc.invariant
        if exc.invariant != "not-c-admissible":
            res.fail(("Q8", exc.invariant))
    res.details["tuples"] = len(values)
    return res


def _other_lift(E, c):
    rho = E.base.class_table.reps[c]
    return max(E.preimages(rho))


# -- rationality ----------------------------------------------------------------------


@_timed
def rationality(samples=200, seed=0):
    """Worked examples plus closure of rational profiles under sums."""
    res = SuiteResult("rationality")
    S3 = parse_group_spec("S3")
    C3 = parse_group_spec("C3")
    three = S3.class_table.find("(1 2 3)")
    sigma = C3.class_table.find("(1 2 3)")
    cases = [
        (S3, {three: 2}, True, None),
        (C3, {sigma: 2}, False, 2),
        (S3, {}, True, None),
        (C3, {}, True, None),
    ]
    for G, prof, want, m in cases:
        rep = is_globally_rational(G, prof)
        res.checks += 1
        if rep.holds != want or (m is not None and rep.m != m):
            res.fail((G.name, prof, rep))
    rng = random.Random(seed)
    for name in ("S3", "C3", "C5", "A4", "D5"):
        G = parse_group_spec(name)
        nt = G.class_table.nontrivial()
        for _ in range(samples // 5):
            p = ICIProfile.from_dict({c: rng.randrange(1, 3) for c in rng.sample(nt, rng.randrange(0, len(nt) + 1))})
            q = ICIProfile.from_dict({c: rng.randrange(1, 3) for c in rng.sample(nt, rng.randrange(0, len(nt) + 1))})
            if is_globally_rational(G, p).holds and is_globally_rational(G, q).holds:
                res.checks += 1
                if not is_globally_rational(G, p + q).holds:
                    res.fail((name, p, q))
    return res


SUITES = {
    "braid-relations": braid_relations,
    "orbit-oracle": orbit_oracle,
    "clebsch": clebsch,
    "first-entry": first_entry,
    "stabilization": stabilization,
    "inner-braids": inner_braids,
    "monoid": monoid,
    "twist": twist,
    "hf": hf,
    "lifting": lifting,
    "rationality": rationality,
}


def run_suite(name, **kw):
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(**kw)


__all__ = ["SuiteResult", "SUITES", "run_suite", "component_partition", "default_oracle_matrix", "quaternion_over_klein"]
