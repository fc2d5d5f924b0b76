"""Boundary interpolation in the disk algebra with measured certificates.

Given complex data on a finite set of unit-circle points, the pipeline
builds a function analytic on the open disk and continuous up to the
boundary that matches the data up to an explicit truncation bound while its
boundary modulus stays within a user budget of the data's sup norm. All
bound claims are measured on declared grids and audited independently.
"""

from .circle import (
    Angle,
    Arc,
    BoundaryData,
    Cluster,
    Clustering,
    FiniteBoundarySet,
    angular_distance,
    cluster_by_oscillation,
    normalize_angle,
    representative_of,
)
from .errors import (
    CertificationError,
    DomainError,
    NoContractionError,
    SingularityError,
)
from .fatou import (
    FatouFunction,
    OffArcSup,
    boundary_imag,
    boundary_modulus,
    build_fatou,
    choose_power,
    eval_fatou,
    sup_off_arc,
)
from .interpolate import (
    BoundsCertificate,
    EtaSchedule,
    Interpolant,
    StageApproximant,
    StagePin,
    eval_interpolant,
    eval_stage,
    iterative_interpolant,
    make_schedule,
    pin_stages,
    residual_bound_after,
    single_stage,
)
from .verify import (
    CheckResult,
    VerificationReport,
    check_boundary_sup,
    check_cauchy_identity,
    check_max_modulus,
    check_peak_values,
    verify_interpolant,
)

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "Arc",
    "BoundaryData",
    "BoundsCertificate",
    "CertificationError",
    "CheckResult",
    "Cluster",
    "Clustering",
    "DomainError",
    "EtaSchedule",
    "FatouFunction",
    "FiniteBoundarySet",
    "Interpolant",
    "NoContractionError",
    "OffArcSup",
    "SingularityError",
    "StageApproximant",
    "StagePin",
    "VerificationReport",
    "angular_distance",
    "boundary_imag",
    "boundary_modulus",
    "build_fatou",
    "check_boundary_sup",
    "check_cauchy_identity",
    "check_max_modulus",
    "check_peak_values",
    "choose_power",
    "cluster_by_oscillation",
    "eval_fatou",
    "eval_interpolant",
    "eval_stage",
    "iterative_interpolant",
    "make_schedule",
    "normalize_angle",
    "pin_stages",
    "representative_of",
    "residual_bound_after",
    "single_stage",
    "sup_off_arc",
    "verify_interpolant",
]
