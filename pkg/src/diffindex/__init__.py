"""Difference index, order and membership certificates for difference systems over Q."""

from .diffpoly import DiffPolynomial, DiffSystem, DiffVariable, Monomial, partial, system_metadata, transform
from .groebner import (
    GroebnerBasis,
    MonomialOrder,
    ProlongedIdeal,
    buchberger,
    elimination_ideal,
    ideal_equal,
    is_member,
    krull_dimension,
    normal_form,
)
from .index import (
    AnalysisError,
    IndexReport,
    MuProfile,
    analyze,
    mu_sequence,
    omega_by_constraints,
    order_of_ideal,
    quasi_regularity_check,
    regularity_report,
    trdeg_prolongation,
)
from .jacobi import jacobi_bound, jacobi_number
from .membership import MembershipCertificate, NotMember, certify, coarse_order_bound, order_bound
from .parser import ParseError, parse_polynomial, parse_system, parse_system_file
from .pseudo_jacobian import PseudoJacobian, ZeroDivisorError, build, rank_mod

__version__ = "0.1.0"
