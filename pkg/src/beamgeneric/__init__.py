"""Structure-preserving simulation of damped Timoshenko and Bresse beams.

The package casts ten beam models as metriplectic systems z_t = L dE + M dS
on a periodic mimetic grid, verifies the bracket axioms (antisymmetry,
symmetry, positive semidefiniteness, degeneracy, a numerical Jacobi check)
to roundoff, and integrates the dynamics with diagnostics for energy
conservation, entropy production and decay rates.
"""

from .catalog import (
    ALL_MODEL_IDS,
    ModelId,
    ModelSpec,
    build_model,
    default_initial_state,
)
from .engine import (
    DiagnosticsRecord,
    IntegratorConfig,
    TestFunctional,
    VerificationReport,
    compile_rhs,
    decay_rate,
    direct_rhs,
    generic_rhs,
    integrate,
    jacobi_check,
    jacobi_residual,
    poisson_bracket,
    random_cotangent,
    random_state,
    random_test_functional,
    stable_dt,
    step_rk4,
    transform_check,
    uniform_scaling,
    verify_brackets,
)
from .errors import DivergenceError, DomainError, PositivityError
from .functionals import (
    ModelParams,
    energy,
    entropy,
    fd_gradient,
    grad_energy,
    grad_entropy,
    mechanical_energy,
)
from .grid import Grid
from .operators import (
    Block,
    BlockOperator,
    DissipativeRow,
    FactoredDissipator,
    apply_L,
    apply_M,
    dissipator_blocks,
    factored_M,
)
from .state import (
    FIELD_NAMES,
    CotangentVector,
    State,
    StateLayout,
    get_field,
    get_reservoir,
    mixed_inner,
    pack,
    set_field,
    set_reservoir,
    unpack,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_MODEL_IDS",
    "Block",
    "BlockOperator",
    "CotangentVector",
    "DiagnosticsRecord",
    "DissipativeRow",
    "DivergenceError",
    "DomainError",
    "FIELD_NAMES",
    "FactoredDissipator",
    "Grid",
    "IntegratorConfig",
    "ModelId",
    "ModelParams",
    "ModelSpec",
    "PositivityError",
    "State",
    "StateLayout",
    "TestFunctional",
    "VerificationReport",
    "apply_L",
    "apply_M",
    "build_model",
    "compile_rhs",
    "decay_rate",
    "default_initial_state",
    "direct_rhs",
    "dissipator_blocks",
    "energy",
    "entropy",
    "factored_M",
    "fd_gradient",
    "generic_rhs",
    "get_field",
    "get_reservoir",
    "grad_energy",
    "grad_entropy",
    "integrate",
    "jacobi_check",
    "jacobi_residual",
    "mechanical_energy",
    "mixed_inner",
    "pack",
    "poisson_bracket",
    "random_cotangent",
    "random_state",
    "random_test_functional",
    "set_field",
    "set_reservoir",
    "stable_dt",
    "step_rk4",
    "transform_check",
    "uniform_scaling",
    "unpack",
    "verify_brackets",
]
