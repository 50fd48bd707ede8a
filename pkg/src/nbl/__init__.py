"""Braid orbits on Nielsen tuples of finite permutation groups."""

from .braids import (
    Component,
    CountSeries,
    OrbitIndex,
    apply_braid,
    count_series,
    decompose_components,
    detect_period,
    inner_by_braids_failures,
    orbit_of,
)
from .budget import Budget
from .errors import (
    BudgetExceeded,
    CapExceeded,
    ExtensionError,
    ForeignElementError,
    GroupSpecError,
    NblError,
    PreconditionError,
)
from .groups import (
    ClassTable,
    PermGroup,
    class_power,
    conjugacy_classes,
    parse_group_spec,
    subgroup_generated,
    subgroup_lattice,
    subgroups_up_to_conjugacy,
)
from .lifting import (
    CentralExtension,
    LiftValue,
    binary_tetrahedral,
    cpfv_probe,
    identity_extension,
    is_globally_rational,
    lifting_invariant,
    load_central_extension,
)
from .monoid import (
    ComponentMonoid,
    commutation_check,
    concat,
    conjugate_component,
    hf_count,
    hm_twist_set,
    is_nonsplitting,
    splitting_number,
)
from .nielsen import (
    EnumerationSpec,
    ICIProfile,
    NielsenTuple,
    canonicalize,
    enumerate_nielsen,
    ici,
    nielsen_tuple,
)
from .perm import Perm, conjugate, parse_cycles

__version__ = "0.1.0"
