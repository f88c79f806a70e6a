"""Exact PBW normal ordering and Whittaker-vector solvers over the Schrodinger Lie algebra."""

__version__ = "0.1.0"

from ._straighten import BACKEND
from .algebra import (
    AlgebraError,
    LieAlgebraSpec,
    builtin_algebra,
    load_algebra,
    parse_rational,
    rational_str,
)
from .pbw import (
    UEAElement,
    commutator,
    grading_of,
    multiply,
    normal_order,
    special_element,
)
from .localization import phi_image
from .modules import (
    DegreeBudgetError,
    InconsistencyError,
    ModuleParameterError,
    ModuleVector,
    build_module,
    filtration_check,
    iso_invariants,
    simplicity_probe,
    submodule_saturation,
    tensor_certification,
    whittaker_vectors,
)

__all__ = [
    "AlgebraError",
    "BACKEND",
    "DegreeBudgetError",
    "InconsistencyError",
    "LieAlgebraSpec",
    "ModuleParameterError",
    "ModuleVector",
    "UEAElement",
    "build_module",
    "builtin_algebra",
    "commutator",
    "filtration_check",
    "grading_of",
    "iso_invariants",
    "load_algebra",
    "multiply",
    "normal_order",
    "parse_rational",
    "phi_image",
    "rational_str",
    "simplicity_probe",
    "special_element",
    "submodule_saturation",
    "tensor_certification",
    "whittaker_vectors",
    "__version__",
]
