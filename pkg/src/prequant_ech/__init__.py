"""Combinatorial embedded contact homology of prequantization bundles over surfaces."""
from .errors import *  # noqa: F401,F403
from .topology import Bundle, HomologyGroups, gamma_class_count, homology_of_total_space
from .orbits import (
    CriticalOrbitSet,
    MorseData,
    OrbitKind,
    OrbitSet,
    action,
    degree,
    enumerate_critical_generators,
    enumerate_generators,
    homology_class,
    parse_orbit_set,
)
from .grading import (
    IndexBreakdown,
    TrivializationOffset,
    base_point,
    bullet_grading,
    cz_fiber,
    cz_general,
    cz_I_total,
    ech_index,
    fredholm_index,
    grading,
    grading_main_theorem,
    index_parity,
    index_with_offsets,
    relative_chern,
    relative_self_intersection,
)

__version__ = "0.1.0"
