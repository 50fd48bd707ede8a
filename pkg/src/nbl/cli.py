"""
Command-line interface: ``nbl <command> ...``.

Results go to stdout (or ``--out``) as JSON, except ``series`` which writes
CSV.  Successful results are cached under ``$NBL_CACHE`` (default
``.nbl-cache``) keyed by a digest of the resolved request, so two spellings
of the same group or class give the same cache entry.  Exit status: 0 on
success, 1 on bad input, 2 when a budget ran out (partial output is still
written and marked as such).
"""

import argparse
import json
import os
import re
import sys
import tempfile
from pathlib import Path

from .braids import count_series, decompose_components
from .budget import Budget
from .errors import BudgetExceeded, NblError
from .groups import _split_top_level, parse_group_spec, subgroup_generated, subgroup_lattice
from .lifting import (
    builtin_extension_data,
    cpfv_probe,
    extension_from_json,
    is_globally_rational,
    lifting_invariant,
)
from .monoid import ComponentMonoid, hf_count, splitting_number
from .nielsen import EnumerationSpec, ICIProfile, enumerate_nielsen, nielsen_tuple
from .serialize import (
    canonical_json,
    class_records,
    component_id,
    component_to_json,
    digest,
    group_digest,
    lift_to_json,
    subgroup_records,
)
from .verify import SUITES

BASES = {"p1": "projective", "a1": "affine", "projective": "projective", "affine": "affine"}
DEFAULT_TIMEOUT = 300.0


class InputError(NblError):
    pass


# -- argument helpers ---------------------------------------------------------------


def _split_list(values):
    out = []
    for v in values or ():
        out.extend(p.strip() for p in _split_top_level(v) if p.strip())
    return out


def resolve_classes(G, refs):
    """Class ids from cycle-string representatives or the aliases ``trans`` and ``all``."""
    T = G.class_table
    refs = _split_list(refs)
    if not refs or refs == ["all"]:
        return None
    ids = set()
    for ref in refs:
        if ref == "all":
            return None
        if ref == "trans":
            if G.degree < 2:
                raise InputError("no transpositions in a group of degree 1")
            ref = "(1 2)"
        c = T.find(ref)
        if c == 0:
            raise InputError("the identity class cannot be used")
        ids.add(c)
    return frozenset(ids)


def parse_range(text):
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.|-|:)\s*(\d+)\s*", text)
    if not m:
        raise InputError(f"expected a range like 4..12, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if hi < lo:
        raise InputError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_profile(G, text):
    """``"(1 2 3):2, (1 2):1"`` to an ICIProfile (empty string gives the empty profile)."""
    T = G.class_table
    counts = {}
    for part in _split_list([text]) if text.strip() else []:
        if ":" not in part:
            raise InputError(f"profile entries look like '(1 2 3):2', got {part!r}")
        ref, n = part.rsplit(":", 1)
        c = T.find(ref.strip())
        counts[c] = counts.get(c, 0) + int(n)
    return ICIProfile.from_dict(counts)


def _subgroup_ids(G, text):
    if text is None:
        return None
    gens = _split_list([text])
    return frozenset(subgroup_generated(G, gens).parent_ids) if gens else frozenset((0,))


def build_spec(G, args):
    sub = _subgroup_ids(G, getattr(args, "subgroup", None))
    spec = EnumerationSpec(
        base=BASES[args.base],
        equivalence=args.equiv,
        cover=args.cover,
        subgroup=sub if args.cover == "galois" else None,
        classes=resolve_classes(G, args.classes),
    )
    if sub is not None and args.cover != "galois":
        raise InputError("--subgroup applies to --cover galois")
    spec.validate(G)
    return spec


def make_budget(args):
    return Budget(
        max_tuples=args.max_tuples,
        max_orbit=args.max_orbit,
        timeout_secs=args.timeout_secs if args.timeout_secs and args.timeout_secs > 0 else None,
    )


def load_extension(G, ref):
    if ref in (None, "binary-tetrahedral"):
        data = builtin_extension_data()
    else:
        try:
            with open(ref) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read extension file: {exc}") from None
    return extension_from_json(G, data), data


# -- commands -----------------------------------------------------------------------


def _group_header(G):
    return {"group": G.name, "order": G.order, "degree": G.degree}


def cmd_classes(G, args):
    return json_out({**_group_header(G), "classes": class_records(G)})


def cmd_subgroups(G, args):
    lat = subgroup_lattice(G)
    return json_out({**_group_header(G), "subgroups": subgroup_records(G, lat)})


def cmd_nielsen(G, args):
    spec = build_spec(G, args)
    tuples = []
    try:
        for t in enumerate_nielsen(G, args.r, spec, make_budget(args)):
            tuples.append(t.cycle_strings())
    except BudgetExceeded as exc:
        raise Partial(exc, {**_group_header(G), "r": args.r, "count": len(tuples), "tuples": tuples})
    return json_out({**_group_header(G), "r": args.r, "count": len(tuples), "tuples": tuples})


def _components_payload(G, r, spec, comps):
    return {
        **_group_header(G),
        "spec": spec.key(),
        "r": r,
        "count": len(comps),
        "components": [component_to_json(c) for c in comps],
    }


def cmd_components(G, args):
    spec = build_spec(G, args)
    try:
        comps = decompose_components(G, args.r, spec, make_budget(args), args.engine, args.threads)
    except BudgetExceeded as exc:
        partial = exc.partial if isinstance(exc.partial, list) else []
        raise Partial(exc, _components_payload(G, args.r, spec, partial))
    return json_out(_components_payload(G, args.r, spec, comps))


def cmd_series(G, args):
    spec = build_spec(G, args)
    rr = parse_range(args.r_range)
    budget = make_budget(args)
    series = count_series(G, spec, rr, lambda: budget, args.engine, args.threads)
    text = series.to_csv()
    print(f"# {series.period_label}", file=sys.stderr)
    if series.truncated_at is not None:
        raise Partial(BudgetExceeded("series", f"r={series.truncated_at}"), text)
    return text


def _load_components(G, paths):
    """Map component id to (base, equivalence, canonical rep) from earlier ``components`` outputs."""
    found = {}
    for path in paths or ():
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read components file {path}: {exc}") from None
        other = parse_group_spec(data["group"])
        if group_digest(other) != group_digest(G):
            raise InputError(f"{path} was computed for {data['group']}, not {G.name}")
        spec = data["spec"]
        for c in data["components"]:
            found[c["id"]] = (spec["base"], spec["equivalence"], c["canonical_rep"])
    return found


def _pick(found, ident):
    if ident == "unit":
        return None
    try:
        base, equiv, rep = found[ident]
    except KeyError:
        raise InputError(f"unknown component id {ident}; pass the file listing it with --from") from None
    return base, equiv, rep


def _monoid_inputs(G, args):
    found = _load_components(G, args.from_files)
    picks = [_pick(found, i) for i in args.ids]
    modes = {(p[0], p[1]) for p in picks if p is not None}
    if len(modes) > 1:
        raise InputError("mixed modes: components come from different base/equivalence settings")
    base, equiv = modes.pop() if modes else (BASES[args.base], args.equiv)
    M = ComponentMonoid(G, base, equiv, make_budget(args))
    comps = [M.unit() if p is None else M.component(p[2]) for p in picks]
    return M, comps


def cmd_concat(G, args):
    if len(args.ids) != 2:
        raise InputError("concat takes exactly two component ids")
    M, (x, y) = _monoid_inputs(G, args)
    xy = M.concat(x, y, samples=args.samples)
    comm = M.commutation_check(x, y)
    return json_out(
        {
            **_group_header(G),
            "inputs": [component_id(x), component_id(y)],
            "product": component_to_json(xy),
            "commutation": {"lhs": comm.lhs, "rhs": comm.rhs, "holds": comm.holds},
        }
    )


def cmd_twist(G, args):
    if len(args.ids) != 2:
        raise InputError("twist takes exactly two component ids")
    M, (x, y) = _monoid_inputs(G, args)
    rep = M.twist_set(x, y)
    return json_out(
        {
            **_group_header(G),
            "inputs": [component_id(x), component_id(y)],
            "product": rep.product_id,
            "twist_set": rep.components,
            "witnesses": {
                k: [G.cycle_string(a), G.cycle_string(b)] for k, (a, b) in rep.witnesses.items()
            },
            "hk_holds": rep.hk_holds,
            "singleton": rep.singleton,
            "pairs_checked": rep.pairs_checked,
        }
    )


def _classes_required(G, args):
    cls = resolve_classes(G, args.classes)
    if cls is None:
        cls = frozenset(G.class_table.nontrivial())
    return sorted(cls)


def cmd_splitting(G, args):
    H = _subgroup_ids(G, args.subgroup) or frozenset(range(G.order))
    c = _classes_required(G, args)
    return json_out({**_group_header(G), **splitting_number(G, H, c).to_json(G)})


def cmd_hf(G, args):
    H = _subgroup_ids(G, args.subgroup) or frozenset(range(G.order))
    c = _classes_required(G, args)
    if args.xi <= 0:
        raise InputError("--xi must be a positive integer")
    try:
        n = hf_count(G, H, c, args.xi, args.r, args.hf_strict_per_class, make_budget(args), args.engine)
    except BudgetExceeded as exc:
        raise Partial(exc, {**_group_header(G), "r": args.r, "count": None})
    return json_out(
        {
            **_group_header(G),
            "subgroup_order": len(H),
            "classes": [G.class_table.rep_string(x) for x in c],
            "xi": args.xi,
            "r": args.r,
            "reading": "per-class" if args.hf_strict_per_class else "collective",
            "count": n,
        }
    )


def cmd_lift(G, args):
    E, data = load_extension(G, args.extension)
    if args.tuple:
        t = nielsen_tuple(G, _split_list([args.tuple]))
        v = lifting_invariant(t, E)
        return json_out(
            {
                **_group_header(G),
                "extension": E.to_json(),
                "tuple": t.cycle_strings(),
                "lifting": lift_to_json(v),
                "central": v.is_central,
            }
        )
    spec = build_spec(G, args)
    if spec.classes is None:
        spec = spec.replace(classes=frozenset(E.classes))
    comps = decompose_components(G, args.r, spec, make_budget(args), args.engine, args.threads)
    comps = [c.with_lifting(lifting_invariant(c.rep, E)) for c in comps]
    return json_out({**_components_payload(G, args.r, spec, comps), "extension": E.to_json()})


def cmd_cpfv(G, args):
    E, data = load_extension(G, args.extension)
    spec = build_spec(G, args)
    rr = parse_range(args.r_range)
    budget = make_budget(args)
    rep = cpfv_probe(G, E, spec, rr, lambda: budget, args.engine)
    return json_out({**_group_header(G), "extension": E.to_json(), **rep.to_json()})


def cmd_rational(G, args):
    prof = parse_profile(G, args.profile)
    rep = is_globally_rational(G, prof)
    T = G.class_table
    return json_out(
        {
            **_group_header(G),
            "profile": prof.to_json(T),
            "rational": rep.holds,
            "witness_m": rep.m,
            "moved_class": T.rep_string(rep.moved_class) if rep.moved_class is not None else None,
        }
    )


def cmd_verify(args):
    kw = {}
    name = args.suite
    g = args.group
    if name == "braid-relations" and g:
        kw = {"groups": (g,)}
        if args.r is not None:
            kw["r"] = max(args.r, 3)
    elif name == "inner-braids" and g:
        kw = {"cases": ((g, args.r if args.r is not None else 4),)}
    elif name == "orbit-oracle" and g:
        from .verify import default_oracle_matrix

        kw = {"configs": default_oracle_matrix((g,), r_max=args.r if args.r is not None else 4)}
    elif name in ("monoid", "twist") and g:
        kw = {"group": g}
    elif name == "stabilization" and g:
        cls = _split_list(args.classes) or ["trans"]
        kw = {"cases": ((g, cls[0]),)}
        if args.r_range:
            kw["r_range"] = parse_range(args.r_range)
    elif name == "first-entry" and g:
        kw = {"group": g}
        if args.r is not None:
            kw["r"] = args.r
    res = SUITES[name](**kw)
    return json_out(res.to_json()), (0 if res.passed else 1)


COMMANDS = {
    "classes": cmd_classes,
    "subgroups": cmd_subgroups,
    "nielsen": cmd_nielsen,
    "components": cmd_components,
    "series": cmd_series,
    "concat": cmd_concat,
    "twist": cmd_twist,
    "splitting": cmd_splitting,
    "hf": cmd_hf,
    "lift": cmd_lift,
    "rational": cmd_rational,
    "cpfv": cmd_cpfv,
}


class Partial(Exception):
    def __init__(self, exc, payload):
        super().__init__(str(exc))
        self.exc = exc
        self.payload = payload


def json_out(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- cache ----------------------------------------------------------------------------


def cache_root():
    return Path(os.environ.get("NBL_CACHE", ".nbl-cache"))


def cache_path(request_digest, root=None):
    root = Path(root) if root is not None else cache_root()
    return root / request_digest[:2] / f"{request_digest}.json"


def cache_read(request_digest):
    p = cache_path(request_digest)
    try:
        with open(p) as fh:
            entry = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if entry.get("digest") != request_digest:
        return None
    return entry.get("output")


def cache_write(request_digest, request, output):
    p = cache_path(request_digest)
    p.parent.mkdir(parents=True, exist_ok=True)
    entry = {"digest": request_digest, "request": request, "output": output}
    fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(canonical_json(entry))
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- parser ----------------------------------------------------------------------------


def _add_budget(p):
    p.add_argument("--max-tuples", type=int, default=10**7)
    p.add_argument("--max-orbit", type=int, default=10**7)
    p.add_argument("--timeout-secs", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--engine", choices=("auto", "python", "dense"), default="auto")


def _add_spec(p, r=True, default_cover="any"):
    if r:
        p.add_argument("--r", type=int, required=True)
    p.add_argument("--classes", action="append", help="class representative, 'trans' or 'all'")
    p.add_argument("--base", choices=sorted(BASES), default="p1")
    p.add_argument("--equiv", choices=("marked", "unmarked"), default="marked")
    p.add_argument("--cover", choices=("any", "galois", "degree"), default=default_cover)
    p.add_argument("--subgroup", help="generators of the required group for --cover galois")


def build_parser():
    ap = argparse.ArgumentParser(prog="nbl", description="Braid orbits on Nielsen tuples.")
    ap.add_argument("--out", help="write the result here instead of stdout")
    ap.add_argument("--no-cache", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def group_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("group", help="S3, A4, D5, C4, GDih(3,3), perm(4; (1 2 3), (1 2)(3 4)) ...")
        p.add_argument("--out", dest="out_sub")
        p.add_argument("--no-cache", dest="no_cache_sub", action="store_true")
        return p

    group_cmd("classes", "conjugacy classes")
    group_cmd("subgroups", "subgroups up to conjugacy")
    p = group_cmd("nielsen", "list Nielsen tuples")
    _add_spec(p)
    _add_budget(p)
    p = group_cmd("components", "braid orbits")
    _add_spec(p)
    _add_budget(p)
    p = group_cmd("series", "component counts over a range of r (CSV)")
    _add_spec(p, r=False)
    p.add_argument("--r-range", required=True, help="e.g. 4..12")
    _add_budget(p)
    for name in ("concat", "twist"):
        p = group_cmd(name, f"{name} two components by id ('unit' for the empty one)")
        p.add_argument("ids", nargs="+")
        p.add_argument("--from", dest="from_files", action="append", help="components JSON file")
        p.add_argument("--base", choices=sorted(BASES), default="p1")
        p.add_argument("--equiv", choices=("marked", "unmarked"), default="marked")
        p.add_argument("--samples", type=int, default=0)
        _add_budget(p)
    p = group_cmd("splitting", "splitting number of a subgroup along classes")
    p.add_argument("--subgroup", help="generators, e.g. '(1 2 3)'")
    p.add_argument("--classes", action="append")
    p = group_cmd("hf", "components of connected subgroup covers with prescribed class counts")
    p.add_argument("--subgroup")
    p.add_argument("--classes", action="append")
    p.add_argument("--xi", type=int, default=1)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--hf-strict-per-class", action="store_true")
    _add_budget(p)
    p = group_cmd("lift", "lifting invariant of a tuple, or of every component at --r")
    p.add_argument("--extension", default="binary-tetrahedral", help="JSON file or 'binary-tetrahedral'")
    p.add_argument("--tuple", help="comma-separated entries")
    p.add_argument("--r", type=int)
    _add_spec(p, r=False)
    _add_budget(p)
    p = group_cmd("rational", "global rationality of an inertia profile")
    p.add_argument("--profile", default="", help="e.g. '(1 2 3):2, (1 2):1'")
    p = group_cmd("cpfv", "separation of components by lifting invariant")
    p.add_argument("--extension", default="binary-tetrahedral")
    p.add_argument("--r-range", required=True)
    _add_spec(p, r=False, default_cover="galois")
    _add_budget(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--group")
    p.add_argument("--r", type=int)
    p.add_argument("--r-range")
    p.add_argument("--classes", action="append")
    p.add_argument("--out", dest="out_sub")
    p.add_argument("--no-cache", dest="no_cache_sub", action="store_true")
    return ap


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    args = build_parser().parse_args(argv)
    out = getattr(args, "out_sub", None) or args.out
    no_cache = args.no_cache or getattr(args, "no_cache_sub", False)
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
            _emit(text, out)
            return code
        if args.command == "lift" and args.tuple is None and args.r is None:
            raise InputError("lift needs --tuple or --r")
        G = parse_group_spec(args.group)
        request = request_descriptor(G, args)
        req_digest = digest(request) if request is not None else None
        if req_digest is not None and not no_cache:
            cached = cache_read(req_digest)
            if cached is not None:
                _emit(cached, out)
                return 0
        text = COMMANDS[args.command](G, args)
        if req_digest is not None and not no_cache:
            cache_write(req_digest, request, text)
        _emit(text, out)
        return 0
    except Partial as p:
        payload = p.payload
        if isinstance(payload, dict):
            payload = json_out({**payload, "partial": True, "budget": str(p.exc)})
        _emit(payload, out)
        print(f"nbl: partial result, {p.exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"nbl: {exc}", file=sys.stderr)
        return 2
    except (NblError, ValueError, KeyError, OSError) as exc:
        print(f"nbl: error: {exc}", file=sys.stderr)
        return 1


def request_descriptor(G, args):
    """Resolved request (group by element-set digest, classes by id) used as the cache key.

    Returns None when the request should not be cached.
    """
    probe = {"command": args.command, "group": group_digest(G), "degree": G.degree}
    cmd = args.command
    if cmd in ("nielsen", "components"):
        spec = build_spec(G, args)
        probe.update(spec=spec.key(), r=args.r)
    elif cmd == "series":
        spec = build_spec(G, args)
        rr = parse_range(args.r_range)
        probe.update(spec=spec.key(), r_range=[rr.start, rr.stop - 1])
    elif cmd in ("concat", "twist"):
        if len(args.ids) != 2:
            raise InputError(f"{cmd} takes exactly two component ids")
        M, (x, y) = _monoid_inputs(G, args)
        probe.update(base=M.base, equivalence=M.equivalence, reps=[x.rep.entries, y.rep.entries])
        if args.samples:
            return None
    elif cmd in ("splitting", "hf"):
        H = _subgroup_ids(G, args.subgroup) or frozenset(range(G.order))
        c = _classes_required(G, args)
        probe.update(subgroup=sorted(H), classes=c)
        if cmd == "hf":
            probe.update(xi=args.xi, r=args.r, strict=args.hf_strict_per_class)
    elif cmd == "lift":
        E, data = load_extension(G, args.extension)
        probe.update(extension=digest(data))
        if args.tuple:
            probe.update(tuple=list(nielsen_tuple(G, _split_list([args.tuple])).entries))
        else:
            spec = build_spec(G, args)
            if spec.classes is None:
                spec = spec.replace(classes=frozenset(E.classes))
            probe.update(spec=spec.key(), r=args.r)
    elif cmd == "cpfv":
        _, data = load_extension(G, args.extension)
        spec = build_spec(G, args)
        rr = parse_range(args.r_range)
        probe.update(extension=digest(data), spec=spec.key(), r_range=[rr.start, rr.stop - 1])
    elif cmd == "rational":
        prof = parse_profile(G, args.profile)
        probe.update(profile=[list(p) for p in prof.counts])
    return json.loads(canonical_json(probe))


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
