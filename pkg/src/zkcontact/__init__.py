"""Exact computations for Z_k-equivariant contact homology of prequantized balls."""

from .assembler import (
    BlockLayout,
    ClosedFormPrediction,
    GradingParams,
    TheoremReport,
    assign_degrees,
    build_complex,
    predict_closed_form,
    verify_against_theorems,
)
from .complexes import (
    EquivariantModule,
    Free,
    GradedRComplex,
    HomologyTable,
    Trivial,
    equivariant_homology,
    homology,
    morse_block,
    validate_complex,
)
from .errors import *  # noqa: F401,F403
from .groupring import GroupRingElement, PrimeModulus, element, gr_is_unit, gr_mul, norm_element, t_minus_one
from .ladder import Direction, LadderRow, LadderSpec, propagate_units, random_commuting_ladder, validate_commutativity
from .profiles import (
    OrbitFamilyRecord,
    OrbitKind,
    PLProfile,
    StandardFamilyParams,
    build_standard_profile,
    compare_profiles_ambient,
    compute_eta,
    extract_orbits,
    family_monotonicity_check,
    filter_window,
)
from .squeeze import Certificate, RoomReport, certify_nonsqueezing, cover_radius, find_prime_scale, fN_image, room_report

__version__ = "0.1.0"
