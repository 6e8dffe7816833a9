"""oscint: exact Newton-polyhedral analysis of oscillatory integrals.

Core pipeline: parse -> Newton polyhedra -> pair invariants -> toric fan /
resolution charts -> candidate zeta poles -> theorem-audited verdict on the
oscillation index, with a numeric quadrature-and-fit harness to verify the
verdicts at desk scale.
"""

__version__ = "0.1.0"

from .fan import Cone, Fan, PullbackData, common_refinement, normal_fan, pullback, resolution_fan, simplicialize, unimodularize
from .numeric import (
    AmplitudeExpr,
    AsymptoticFit,
    CutoffConfig,
    ZetaFit,
    evaluate_oscillatory,
    evaluate_zeta,
    fit_asymptotics,
    fit_pole,
    parse_amplitude,
    quintic_edge_coefficients,
    verify_numeric,
)
from .pair import (
    NondegeneracyReport,
    PairAnalysis,
    SignCertificate,
    analyze_pair,
    distance_to_unit,
    essential_set,
    gamma_phi_f,
    monomial_distance,
    newton_distance,
    newton_multiplicity,
    nondegeneracy_check,
    order_bound,
    principal_on_essential,
    sign_certificate,
)
from .poly import Polynomial, parse_polynomial, taylor_support
from .polyhedron import (
    Face,
    Facet,
    NewtonPolyhedron,
    build_newton_polyhedron,
    polyhedron_of,
    restrict_to_face,
)
from .zeta import (
    MellinCoefficient,
    PoleCandidate,
    VerdictReport,
    beta_of_monomial,
    candidate_poles_general,
    candidate_poles_monomial,
    mellin_transfer,
    one_dim_reference,
    oscillation_verdict,
    symmetry_check,
)
