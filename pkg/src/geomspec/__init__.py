"""Exact spectral-geometry toolkit for compact locally homogeneous 3-manifolds.

Three capabilities, all driven by rational arithmetic wherever the underlying
identities are polynomial:

- curvature and heat invariants from Lie-algebra structure constants or Ricci
  eigenvalues, with a brute-force tensor-contraction oracle cross-checking
  every closed form (:mod:`geomspec.tensors`, :mod:`geomspec.invariants`,
  :mod:`geomspec.milnor`);
- decision procedures enumerating the eigenvalue classes compatible with a
  given set of heat invariants (:mod:`geomspec.audibility`);
- exact Laplace spectra, volumes and heat traces of the compact quotients of
  a round 2-sphere times a line (:mod:`geomspec.spectra`).
"""

__version__ = "0.1.0"

from .audibility import (  # noqa: F401
    AdmissibilityResult,
    CubicSpec,
    PartnerReport,
    RegionScanReport,
    SL2RWindow,
    admissible_nu,
    classify_isospectral_partners,
    mixing_value,
    nu_from_elementary,
    p3_candidates,
    polysign_f,
    polysign_region_check,
    sl2r_region_check,
)
from .errors import (  # noqa: F401
    AmbiguousGeometryError,
    GeomspecError,
    NotRealizableError,
    RankOverflowError,
    RegimeError,
    ShapeError,
    UnsupportedMultiplicityError,
    UsageError,
)
from .invariants import (  # noqa: F401
    BInvariants,
    CurvatureInvariants,
    ElementarySymmetric,
    HeatInvariants,
    Regime,
    b_invariants,
    closed_form_invariants,
    derivative_invariants_closed,
    elementary_symmetric,
    heat_invariants,
    regime_for,
)
from .milnor import (  # noqa: F401
    GroupTag,
    MilnorData,
    RicciEigenvalues,
    group_from_lambda,
    group_from_ricci,
    lambda_from_ricci,
    mu_from_lambda,
    ricci_from_lambda,
    sectional_from_ricci,
)
from .spectra import (  # noqa: F401
    QuotientSpec,
    SpectrumPrefix,
    distinctness_report,
    eigenvalue_F,
    eigenvalue_set,
    fundamental_tone,
    quotient_volume,
    truncated_heat_trace,
)
from .tensors import (  # noqa: F401
    ConnectionCoefficients,
    FrameTensor,
    contract,
    covariant_derivative,
    curvature_tensor_oracle,
    frame_connection,
    oracle_derivative_invariants,
    oracle_scalar_invariants,
)
