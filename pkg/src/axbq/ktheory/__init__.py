"""Integer linear algebra, abelian groups, direct systems and crossed-product K-theory."""
from .groups import (AbGroup, Certificate, DivisibilityQuery, GroupHom, IndAbGroup, RankQuery,
                     TorsionQuery, cokernel, colimit_query, image_group, kernel)
from .intmat import integer_kernel, invariant_factors, smith_normal_form, solve_integer
from .laurent import LaurentMatrix, LaurentPoly, shift_embedding_check, shift_matrix
from .pv import (IndEndo, PVResult, identify_colimit, bunce_deddens_k0, bunce_deddens_k1, dihedral_k0_matrix,
                 fprime_k0, iterate_bn, pv_step, round_robin_primes)
from .scenarios import SCENARIOS, load_expected, run_scenario

__all__ = [
    "AbGroup", "Certificate", "DivisibilityQuery", "GroupHom", "IndAbGroup", "RankQuery",
    "TorsionQuery", "cokernel", "colimit_query", "image_group", "kernel",
    "integer_kernel", "invariant_factors", "smith_normal_form", "solve_integer",
    "LaurentMatrix", "LaurentPoly", "shift_embedding_check", "shift_matrix",
    "IndEndo", "PVResult", "identify_colimit", "bunce_deddens_k0", "bunce_deddens_k1", "dihedral_k0_matrix",
    "fprime_k0", "iterate_bn", "pv_step", "round_robin_primes",
    "SCENARIOS", "load_expected", "run_scenario",
]
