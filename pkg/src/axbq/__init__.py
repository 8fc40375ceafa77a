"""Exact computations in the ax+b-semigroup C*-algebras Q_N and Q_Z."""
from .algebra import (GaussianRational, Letter, Monomial, NormalFormElement, normal_form,
                      parse_element, parse_word, word_adjoint)
from .errors import (
    AxbqError,
    DomainError,
    ExtensionAmbiguous,
    InsufficientPrecision,
    InsufficientStages,
    InvalidIndex,
    KTheoryError,
    NotPrime,
    ParseError,
    UncertifiedColimit,
)
from .oracle import AffineCongruenceMap, WindowModel, compose, generator_map, monomial_map, oracle_equal
from .profinite import (AxbElement, CylinderSet, FiniteAdele, ProfiniteInteger, axb_act,
                        bc_character_covariance, cylinder_intersect, cylinder_measure, mul_n)
from .trace import (GaugeDegree, expectation_E, expectation_F, expectation_G, gauge_degree,
                    kms_check, lambda_i, trace_tau)

__version__ = "0.1.0"
