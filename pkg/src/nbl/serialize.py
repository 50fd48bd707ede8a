"""
JSON forms of library objects and content-addressed identifiers.

Component ids hash the group's element set together with the base mode,
equivalence and canonical representative, so the same orbit gets the same id
whichever generators were used to describe the group.
"""

import hashlib
import json

import numpy as np

ID_HEX = 16


def canonical_json(obj):
    """Compact JSON with sorted keys; equal objects give equal strings."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj):
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def group_digest(G):
    cached = getattr(G, "_digest", None)
    if cached is None:
        h = hashlib.sha256()
        h.update(str(G.degree).encode())
        h.update(np.asarray(G.elements, dtype="<i4").tobytes())
        cached = G._digest = h.hexdigest()
    return cached


def component_id(comp):
    key = {
        "group": group_digest(comp.group),
        "base": comp.spec.base,
        "equivalence": comp.spec.equivalence,
        "rep": comp.rep.cycle_strings(),
    }
    return "c" + digest(key)[:ID_HEX]


def lift_to_json(value):
    if value is None:
        return None
    return {"element": value.cycle_string(), "degree": value.degree}


def component_to_json(comp):
    T = comp.group.class_table
    return {
        "id": component_id(comp),
        "r": comp.r,
        "orbit_size": comp.orbit_size,
        "canonical_rep": comp.rep.cycle_strings(),
        "group_order": comp.group_order,
        "group_class_id": comp.group_id,
        "ici": comp.ici.to_json(T),
        "lifting": lift_to_json(comp.lifting),
    }


def class_records(G):
    T = G.class_table
    out = []
    for c in range(len(T)):
        rep = T.reps[c]
        out.append(
            {
                "id": c,
                "representative": T.rep_string(c),
                "size": T.size(c),
                "order": G.element_order(rep),
            }
        )
    return out


def subgroup_records(G, lattice):
    out = []
    for sub in lattice.reps:
        out.append(
            {
                "id": sub.class_id,
                "order": sub.order,
                "generators": [g.cycle_string() for g in sub.generators],
            }
        )
    return out
