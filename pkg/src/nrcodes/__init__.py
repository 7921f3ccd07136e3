"""Construction and verification workbench for the Nordstrom-Robinson codes."""

__version__ = "0.1.0"

from .codes import (
    Code,
    code_predicates,
    coset_decomposition,
    golay24,
    nordstrom_robinson,
    puncture,
    punctured_nr,
    project,
    read_code,
    reed_muller_subcode,
    translate,
    write_code,
)
from .hamming import krawtchouk, sphere, weight, distance, covers
from .spectrum import (
    completely_regular_check,
    design_arithmetic,
    design_check,
    distance_distribution,
    distance_partition,
    feasible_distributions,
    lambda_upper_bound,
    macwilliams_transform,
)
from .symmetry import (
    AutElement,
    PermGroup,
    assemble_aut_generators,
    coordinate_invariant_partition,
    enumerate_perm_automorphisms,
    find_equivalence,
    group_order,
    orbits_on_sphere,
    project_automorphism,
    translation_kernel,
    verify_complete_transitivity,
    vertex_orbits,
)

__all__ = [name for name in dir() if not name.startswith("_")]
