"""Crossed products by Z via the six-term exact sequence, on direct systems.

For an automorphism acting on K_0 and K_1 by alpha_0 and alpha_1,

    K_0(A x Z) = coker(1 - alpha_0) + ker(1 - alpha_1)
    K_1(A x Z) = coker(1 - alpha_1) + ker(1 - alpha_0)

whenever the kernels are free, so that the extensions split.  K-groups of the
building blocks are direct systems of finitely generated groups; filtered
colimits are exact, so kernels and cokernels are taken stage by stage and the
resulting systems are identified from finitely many stages.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count, islice
from typing import Callable, Iterator, Sequence

from sympy import isprime, prime

from ..errors import ExtensionAmbiguous, KTheoryError, NotPrime, UncertifiedColimit
from .groups import AbGroup, GroupHom, IndAbGroup, cokernel, kernel
from .intmat import Matrix, identity, matmul, solve_integer, transpose

__all__ = [
    "IndEndo",
    "PVResult",
    "pv_step",
    "identify_colimit",
    "round_robin_primes",
    "bunce_deddens_k0",
    "bunce_deddens_k1",
    "fprime_k0",
    "dihedral_k0_matrix",
    "iterate_bn",
]

DEFAULT_STAGES = 6


@dataclass
class IndEndo:
    """Stagewise endomorphism of a direct system, commuting with the connecting maps."""

    system: IndAbGroup
    at: Callable[[int, AbGroup], Matrix]
    label: str = ""

    @classmethod
    def scalar(cls, system: IndAbGroup, k: int, label: str = "") -> IndEndo:
        return cls(system, lambda i, g: [[k if a == b else 0 for b in range(g.ngens)]
                                         for a in range(g.ngens)], label or f"x{k}")

    @classmethod
    def identity(cls, system: IndAbGroup) -> IndEndo:
        return cls.scalar(system, 1, "id")

    def hom(self, i: int) -> GroupHom:
        g = self.system.stage(i)
        return GroupHom(g, g, self.at(i, g))

    def commutes(self, i: int) -> bool:
        c = self.system.connecting(i)
        return c.compose(self.hom(i)).matrix == self.hom(i + 1).compose(c).matrix


def _one_minus(endo: IndEndo, i: int) -> GroupHom:
    return GroupHom.identity(endo.system.stage(i)) - endo.hom(i)


def _coker_system(endo: IndEndo, stages: int) -> IndAbGroup:
    G = endo.system
    if G.constant:
        return IndAbGroup.constant_system(cokernel(_one_minus(endo, 0))[0])
    groups = [cokernel(_one_minus(endo, i))[0] for i in range(stages)]
    # generators of the cokernel are those of G_i, so the connecting map is unchanged
    return IndAbGroup(groups, [G.connecting(i).rows for i in range(stages - 1)])


def _ker_system(endo: IndEndo, stages: int) -> IndAbGroup:
    G = endo.system
    if G.constant:
        return IndAbGroup.constant_system(kernel(_one_minus(endo, 0))[0])
    ks = [kernel(_one_minus(endo, i)) for i in range(stages)]
    maps = []
    for i in range(stages - 1):
        (ki, inc_i), (kj, inc_j) = ks[i], ks[i + 1]
        phi = G.connecting(i)
        cols = []
        for c in range(ki.ngens):
            x = [row[c] for row in inc_i]
            y = phi(x)
            sol = solve_integer(inc_j, y) if kj.ngens else ([] if not any(y) else None)
            if sol is None:
                raise KTheoryError("connecting map does not preserve kernels; endomorphism not compatible")
            cols.append(sol)
        maps.append(transpose(cols, kj.ngens) if cols else [[] for _ in range(kj.ngens)])
    return IndAbGroup([k for k, _ in ks], maps)


def identify_colimit(system: IndAbGroup, stages: int) -> tuple[AbGroup, dict]:
    """Identify the colimit with a stage group when the connecting maps are isomorphisms.

    Raises UncertifiedColimit otherwise.
    """
    if system.constant:
        g = system.stage(0)
        return g, {"stages": 1, "rule": "constant system", "group": g.summary()}
    system.ensure(stages)
    g = system.stage(0)
    witnesses = []
    for i in range(stages - 1):
        h = system.connecting(i)
        if not h.is_isomorphism():
            raise UncertifiedColimit(
                f"connecting map {i} -> {i + 1} is not an isomorphism; colimit not finitely certified")
        witnesses.append({"stage": i, "isomorphism": True})
    return g, {"stages": stages, "rule": "connecting maps are isomorphisms",
               "group": g.summary(), "witnesses": witnesses}


@dataclass
class PVResult:
    K0: AbGroup
    K1: AbGroup
    certificate: dict = field(default_factory=dict)

    def ranks(self) -> tuple[int, int]:
        return self.K0.rank, self.K1.rank

    def summary(self) -> dict:
        return {"K0": self.K0.summary(), "K1": self.K1.summary()}


def _as_system(x) -> IndAbGroup:
    if isinstance(x, AbGroup):
        return IndAbGroup.constant_system(x)
    return x


def _as_endo(system: IndAbGroup, a) -> IndEndo:
    if isinstance(a, IndEndo):
        return a
    if isinstance(a, GroupHom):
        m = a.rows
        return IndEndo(system, lambda i, g: m)
    if isinstance(a, int):
        return IndEndo.scalar(system, a)
    raise TypeError("alpha must be an IndEndo, a GroupHom or an integer scalar")


def pv_step(K0, alpha0, K1, alpha1, stages: int = DEFAULT_STAGES) -> PVResult:
    """K-theory of the crossed product by Z from K_*(A) and the induced maps.

    K0/K1 are AbGroups (constant systems) or IndAbGroups; alpha0/alpha1 are
    IndEndo, GroupHom or integer scalars.
    """
    K0, K1 = _as_system(K0), _as_system(K1)
    a0, a1 = _as_endo(K0, alpha0), _as_endo(K1, alpha1)
    for endo in (a0, a1):
        if not endo.system.constant:
            endo.system.ensure(stages)
            if not all(endo.commutes(i) for i in range(stages - 1)):
                raise KTheoryError("induced map does not commute with the connecting maps")
    parts = {}
    for name, endo in (("0", a0), ("1", a1)):
        cok, cok_cert = identify_colimit(_coker_system(endo, stages), stages)
        ker, ker_cert = identify_colimit(_ker_system(endo, stages), stages)
        if not ker.is_free():
            raise ExtensionAmbiguous(
                f"ker(1 - alpha_{name}) = {ker} has torsion; the extension is not determined")
        parts[name] = (cok, ker, cok_cert, ker_cert)
    cok0, ker0, c0, k0 = parts["0"]
    cok1, ker1, c1, k1 = parts["1"]
    res = PVResult(cok0.direct_sum(ker1), cok1.direct_sum(ker0))
    res.certificate = {
        "stages": stages,
        "K0": {"coker(1-alpha_0)": c0, "ker(1-alpha_1)": k1},
        "K1": {"coker(1-alpha_1)": c1, "ker(1-alpha_0)": k0},
    }
    return res


# --- systems built from the known induced maps -----------------------------------

def round_robin_primes() -> Iterator[int]:
    """2 | 2 3 | 2 3 5 | ...: every prime recurs infinitely often."""
    for k in count(1):
        for i in range(1, k + 1):
            yield prime(i)


def _multiplier_system(multipliers, name: str, first: Sequence[int] | None = None) -> IndAbGroup:
    it = iter(multipliers) if multipliers is not None else round_robin_primes()
    labels: list[int] = []

    def rule(i, g):
        a = next(it, None)
        if a is None:
            raise KTheoryError(f"{name}: multiplier list exhausted")
        labels.append(a)
        return g, [[a]]

    G = IndAbGroup([AbGroup.free(1)], rule=rule, name=name)
    G.labels = labels
    return G


def bunce_deddens_k0(multipliers: Sequence[int] | None = None) -> IndAbGroup:
    """K_0 of the fixed-point algebra: Z with multiplication maps, colimit Q.

    Default multipliers are the round-robin primes; pass a list (e.g. [2..7]
    repeated) to use another order.
    """
    return _multiplier_system(multipliers, "bd-K0")


def bunce_deddens_k1() -> IndAbGroup:
    return IndAbGroup.constant_system(AbGroup.free(1), name="bd-K1")


def dihedral_k0_matrix(p: int, ordering: str = "standard") -> Matrix:
    """Map on K_0 = Z^3 when e_n is refined to e_pn, in the order ([1], [(uf)+], [f+]).

    ``ordering="listed"`` reverses the order to ([f+], [(uf)+], [1]).
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        m = [[2, 1, 0], [0, 0, 1], [0, 0, 1]]
    else:
        h = (p - 1) // 2
        m = [[p, h, h], [0, 1, 0], [0, 0, 1]]
    if ordering == "listed":
        return [row[::-1] for row in m[::-1]]
    if ordering != "standard":
        raise ValueError("ordering must be 'standard' or 'listed'")
    return m


def fprime_k0(primes: Sequence[int] | None = None, ordering: str = "standard") -> IndAbGroup:
    """K_0 of the Z/2 crossed product of the fixed-point algebra: Z^3 with dihedral maps."""
    it = iter(primes) if primes is not None else round_robin_primes()
    labels: list[int] = []

    def rule(i, g):
        p = next(it, None)
        if p is None:
            raise KTheoryError("fprime: prime list exhausted")
        labels.append(p)
        return g, dihedral_k0_matrix(p, ordering)

    G = IndAbGroup([AbGroup.free(3)], rule=rule, name=f"fprime-K0[{ordering}]")
    G.labels = labels
    return G


def iterate_bn(n: int, mode: str = "N", stages: int = DEFAULT_STAGES) -> list[PVResult]:
    """K-groups of B_1, ..., B_n (mode N) or B'_1, ..., B'_n (mode Z).

    The first step uses the induced maps alpha_0 = x2 on the rational part and
    the identity elsewhere; every later step acts as the identity.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if mode == "N":
        K0 = bunce_deddens_k0()
        res = pv_step(K0, IndEndo.scalar(K0, 2), bunce_deddens_k1(), 1, stages)
    elif mode == "Z":
        # rational part (Z with x primes) plus a constant Z; alpha = x2 on the first summand
        def rule(i, g, _it=round_robin_primes()):
            return g, [[next(_it), 0], [0, 1]]
        K0 = IndAbGroup([AbGroup.free(2)], rule=rule, name="fprime-K0-model")
        a0 = IndEndo(K0, lambda i, g: [[2, 0], [0, 1]], "x2 + id")
        res = pv_step(K0, a0, AbGroup.zero(), 1, stages)
    else:
        raise ValueError("mode must be 'N' or 'Z'")
    out = [res]
    for _ in range(n - 1):
        prev = out[-1]
        nxt = pv_step(prev.K0, 1, prev.K1, 1, stages)
        out.append(PVResult(nxt.K0, nxt.K1, nxt.certificate))
    return out
