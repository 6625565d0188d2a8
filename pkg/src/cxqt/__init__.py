"""Exact engine counting conjugacy classes with no eigenvalue -1 in
finite reflection groups, with closed-form oracles and explicit models."""

from .closedforms import (
    PartitionTable,
    build_partition_table,
    dihedral_classes,
    p_all,
    p_even_evens,
    p_odd,
    q_closed,
    q_dihedral,
)
from .counting import (
    QReport,
    e_grade,
    q_bruteforce,
    q_closed_report,
    report_from_group,
    verify_multiplicativity,
)
from .engine import (
    Budget,
    BudgetError,
    CacheChecksumError,
    CacheClosureError,
    CacheError,
    CacheVersionError,
    ConjugacyClass,
    FiniteGroup,
    GroupElement,
    cache_load,
    cache_store,
    conjugacy_classes,
    generate,
)
from .exact import GOLDEN, ONE, SQRT5, ZERO, ExactMatrix, ExactPoly, Scalar
from .hmodels import (
    Quaternion,
    h3_charpoly_table,
    h3_generators,
    h4_no_minus_one_criterion,
    icosian_units,
    lift_rotation,
    lx_plus_xr_matrix,
    map_lr,
    map_star,
    observed_general_det,
    random_unit_quaternions,
    star_minus_one_witness,
    verify_det_identity,
)
from .roots import (
    RootSystem,
    build_root_system,
    close_under_reflections,
    direct_sum,
    reflection_in,
    reflection_matrix,
    system_from_json,
    system_to_json,
    validate_root_system,
    verify_root_system,
)

__version__ = "0.1.0"
