"""Exact graded exterior calculus for multisymplectic BRST constructions."""

from .brst import (
    build_brst_charge,
    build_brst_vector_field,
    check_nilpotency,
    koszul_homology,
    reduction_generator_actions,
)
from .calculus import (
    VectorField,
    base_coord,
    d,
    hook,
    hook_partial,
    lie_bracket,
    partial,
    right_partial,
    vol,
    vol_minus,
    vol_minus2,
    wedge,
)
from .field_eqs import derive_hamilton_equations, derive_lda_equations
from .kernel import (
    BACKEND,
    Expr,
    Factor,
    Gen,
    Role,
    StructureConstants,
    check_structure_constants,
    const,
    dvar,
    gen,
    random_structure_constants,
)
from .phase_space import (
    CapExceeded,
    FieldFamily,
    NotHamiltonian,
    PhaseSpace,
    TheorySpec,
    bracket,
    build_phase_space,
    pairing,
    solve_structural,
)
from .printing import pretty, pretty_vf, serialize

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CapExceeded", "Expr", "Factor", "FieldFamily", "Gen", "NotHamiltonian",
    "PhaseSpace", "Role", "StructureConstants", "TheorySpec", "VectorField", "base_coord",
    "bracket", "build_brst_charge", "build_brst_vector_field", "build_phase_space",
    "check_nilpotency", "check_structure_constants", "const", "d", "derive_hamilton_equations",
    "derive_lda_equations", "dvar", "gen", "hook", "hook_partial", "koszul_homology",
    "lie_bracket", "pairing", "partial", "pretty", "pretty_vf", "random_structure_constants",
    "reduction_generator_actions", "right_partial", "serialize", "solve_structural", "vol",
    "vol_minus", "vol_minus2", "wedge",
]
