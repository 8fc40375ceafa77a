"""Gauge expectations, the canonical trace and the KMS condition.

The circle actions scale monomials by characters, so averaging over the
circle keeps exactly the monomials of weight zero.  Nothing is integrated
numerically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .algebra import Monomial, NormalFormElement
from .errors import DomainError
from .profinite import CylinderSet, cylinder_measure

__all__ = [
    "GaugeDegree",
    "gauge_degree",
    "expectation_E",
    "expectation_F",
    "expectation_G",
    "trace_tau",
    "lambda_i",
    "kms_sides",
    "kms_check",
]


@dataclass(frozen=True)
class GaugeDegree:
    u_degree: int
    s_multidegree: tuple[tuple[int, int], ...]
    flip_parity: int

    @property
    def alpha_trivial(self) -> bool:
        return not self.s_multidegree


def gauge_degree(mono: Monomial) -> GaugeDegree:
    """Weights of a monomial: beta-weight i + j, alpha-weight v_p(n) - v_p(m) at each p.

    Only the alpha-multidegree and the flip parity are multiplicative in
    general; the u-degree is additive on the alpha-fixed part (n = m).
    """
    vn, vm = factorint(mono.n), factorint(mono.m)
    multi = tuple(sorted((p, vn.get(p, 0) - vm.get(p, 0))
                         for p in set(vn) | set(vm) if vn.get(p, 0) != vm.get(p, 0)))
    return GaugeDegree(mono.i + mono.j, multi, mono.eps)


def expectation_E(x: NormalFormElement) -> NormalFormElement:
    """Average over the torus acting on the s_p: keep monomials with n = m."""
    return NormalFormElement({m: c for m, c in x.items() if m.n == m.m}, _canonical=True)


def expectation_F(x: NormalFormElement) -> NormalFormElement:
    """Average over the circle acting on u: keep translation-free terms.

    Flip terms are dropped as well; on Q_Z this is the expectation for the
    Z/2 action composed with the circle average.
    """
    bad = [m for m, _ in x.items() if m.n != m.m]
    if bad:
        raise DomainError(f"expectation_F needs n = m in every monomial, got {bad[0]}")
    return NormalFormElement({m: c for m, c in x.items() if m.eps == 0 and m.i + m.j == 0},
                             _canonical=True)


def expectation_G(x: NormalFormElement) -> NormalFormElement:
    return expectation_F(expectation_E(x))


def trace_tau(x: NormalFormElement):
    """tau = tau_0 o E; on the diagonal part u^i e_n u^-i has trace 1/n."""
    total = Fraction(0)
    for mono, c in expectation_G(x).items():
        total = total + c * cylinder_measure(CylinderSet(mono.n, mono.i))
    return total


def lambda_i(y: NormalFormElement) -> NormalFormElement:
    """Analytic continuation of lambda_t(s_n) = n^{it} s_n to t = i.

    u^i s_n s_m* u^j picks up (n/m)^{-1} = m/n.
    """
    return NormalFormElement({m: c * Fraction(m.m, m.n) for m, c in y.items()}, _canonical=True)


def kms_sides(x: NormalFormElement, y: NormalFormElement):
    """Return (tau(x lambda_i(y)), tau(y x))."""
    return trace_tau(x * lambda_i(y)), trace_tau(y * x)


def kms_check(x: NormalFormElement, y: NormalFormElement) -> bool:
    left, right = kms_sides(x, y)
    return left == right
