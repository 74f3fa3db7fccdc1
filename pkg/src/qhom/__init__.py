"""Exact chain-level homological algebra for finite-dimensional algebras.

Builds Hochschild, cyclic, dihedral, Chevalley-Eilenberg, and Leibniz
complexes over Q from structure constants, constructs the chain maps induced
by coalgebra measurings, and verifies the expected commutative diagrams,
idempotent decompositions, and product compatibilities in exact rational
arithmetic.
"""

from .algebra import (
    Algebra,
    Coalgebra,
    Measuring,
    algebra_map_measuring,
    derivation_coalgebra,
    derivation_measuring,
    identity_measuring,
    matrix_algebra,
    matrix_measuring,
    trivial_coalgebra,
)
from .errors import (
    CompositionNotZero,
    NotAChainMapOnClasses,
    NotALeibnizAlgebra,
    NotALieMeasuring,
    NotCocommutative,
    NotCommutative,
    NotInvolutive,
    ParseError,
    QhomError,
    RelationNotPreserved,
    TruncationTooLarge,
    ValidationError,
    VerificationFailure,
)
from .linalg import (
    QMat,
    QuotientSpace,
    Subquotient,
    homology,
    induced_on_homology,
    induced_on_quotient,
)
from .suites import SUITE_IDS, CheckRecord, run_suite
from .workspace import (
    Caps,
    Task,
    WorkspaceSpec,
    default_workspace,
    dumps_workspace,
    load_workspace,
    loads_workspace,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Coalgebra",
    "Measuring",
    "QMat",
    "QuotientSpace",
    "Subquotient",
    "algebra_map_measuring",
    "derivation_coalgebra",
    "derivation_measuring",
    "homology",
    "identity_measuring",
    "induced_on_homology",
    "induced_on_quotient",
    "matrix_algebra",
    "matrix_measuring",
    "trivial_coalgebra",
    "QhomError",
    "ParseError",
    "ValidationError",
    "VerificationFailure",
    "CompositionNotZero",
    "NotAChainMapOnClasses",
    "RelationNotPreserved",
    "NotCommutative",
    "NotCocommutative",
    "NotInvolutive",
    "NotALieMeasuring",
    "NotALeibnizAlgebra",
    "TruncationTooLarge",
    "SUITE_IDS",
    "CheckRecord",
    "run_suite",
    "Caps",
    "Task",
    "WorkspaceSpec",
    "default_workspace",
    "dumps_workspace",
    "load_workspace",
    "loads_workspace",
    "__version__",
]
