"""Verification suites over the relations of Q_N and Q_Z.

Each suite checks whole families of identities by normal-form equality and
reports one :class:`CaseResult` per family, carrying either the number of
instances checked or the first counterexample.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Iterable

import numpy as np

from .algebra import Letter, Monomial, NormalFormElement, normal_form
from .oracle import random_word, window_trace, word_agrees_with_normal_form, word_map, monomial_map
from .profinite import CylinderSet, cylinder_intersect, cylinder_measure
from .report import FAIL, PASS, CaseResult, SuiteReport
from .trace import trace_tau

__all__ = [
    "CaseResult",
    "SuiteReport",
    "u_pow",
    "s",
    "S",
    "e",
    "e_translate",
    "defining_relations_suite",
    "partition_sum",
    "partition_of_unity_check",
    "projection_product_check",
    "lemma_comm_suite",
    "lemma_b_display_check",
    "monomial_trace",
    "monomial_kms",
    "trace_kms_suite",
    "oracle_equivalence_suite",
]

def _family(report: SuiteReport, name: str, instances: Iterable[tuple[str, bool]]):
    """Run a family of checks, stopping at the first counterexample."""
    count = 0
    for label, ok in instances:
        count += 1
        if not ok:
            report.cases.append(CaseResult(report.suite, name, FAIL,
                                           {"counterexample": label, "checked": count}))
            return
    report.cases.append(CaseResult(report.suite, name, PASS, {"checked": count}))


# --- building blocks ---------------------------------------------------------

def u_pow(a: int) -> NormalFormElement:
    return NormalFormElement.monomial(Monomial(a, 1, 1, 0, 0))


def s(n: int) -> NormalFormElement:
    return NormalFormElement.monomial(Monomial(0, n, 1, 0, 0))


def S(n: int) -> NormalFormElement:
    return NormalFormElement.monomial(Monomial(0, 1, n, 0, 0))


def e(n: int) -> NormalFormElement:
    return s(n) * S(n)


def e_translate(n: int, k: int) -> NormalFormElement:
    """u^k e_n u^-k, the projection onto the class k mod n."""
    return u_pow(k) * e(n) * u_pow(-k)


_F = NormalFormElement.monomial(Monomial(0, 1, 1, 0, 1))


def _word(*letters: Letter, mode: str = "N") -> NormalFormElement:
    return normal_form(list(letters), mode)


# --- defining relations ------------------------------------------------------

def partition_sum(n: int) -> NormalFormElement:
    return NormalFormElement.sum_of(e_translate(n, k) for k in range(n))


def partition_of_unity_check(n: int) -> bool:
    """sum_{k<n} u^k e_n u^-k == 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return partition_sum(n).is_one()


def projection_product_check(n1: int, n2: int) -> bool:
    """(u^a e_n1 u^-a)(u^b e_n2 u^-b) is the projection of the CRT intersection, for all a, b."""
    for a in range(n1):
        for b in range(n2):
            prod = e_translate(n1, a) * e_translate(n2, b)
            cyl = cylinder_intersect(CylinderSet(n1, a), CylinderSet(n2, b))
            want = NormalFormElement.zero() if cyl is None else e_translate(cyl.modulus, cyl.residue)
            if prod != want or trace_tau(prod) != cylinder_measure(cyl):
                return False
    return True


def defining_relations_suite(bound: int, mode: str = "N") -> SuiteReport:
    """Generator relations for all indices up to `bound`, plus the flip relations in Z mode."""
    if bound < 1:
        raise ValueError("bound must be positive")
    rep = SuiteReport("relations")
    one = NormalFormElement.one()
    _family(rep, "s_n s_m = s_nm",
            ((f"n={n}, m={m}", _word(Letter("s", n), Letter("s", m)) == s(n * m))
             for n in range(1, bound + 1) for m in range(1, bound + 1)))
    _family(rep, "s_n u = u^n s_n",
            ((f"n={n}", _word(Letter("s", n), Letter("u", 1)) == u_pow(n) * s(n))
             for n in range(1, bound + 1)))
    _family(rep, "s_n* s_n = 1",
            ((f"n={n}", _word(Letter("S", n), Letter("s", n)) == one) for n in range(1, bound + 1)))
    _family(rep, "u* u = u u* = 1",
            [("u", _word(Letter("u", -1), Letter("u", 1)) == one
              and _word(Letter("u", 1), Letter("u", -1)) == one)])
    _family(rep, "partition of unity",
            ((f"n={n}", partition_of_unity_check(n)) for n in range(1, bound + 1)))
    if mode == "Z":
        f = Letter("f", 1)
        _family(rep, "f^2 = 1", [("f", _word(f, f, mode="Z") == one)])
        _family(rep, "f* = f", [("f", _F.adjoint() == _F)])
        _family(rep, "f u f = u^-1",
                ((f"a={a}", _word(f, Letter("u", a), f, mode="Z") == u_pow(-a))
                 for a in range(-bound, bound + 1)))
        _family(rep, "f s_n = s_n f",
                ((f"n={n}", _word(f, Letter("s", n), mode="Z") == _word(Letter("s", n), f, mode="Z"))
                 for n in range(1, bound + 1)))
    return rep


# --- commutation lemma --------------------------------------------------------

def lemma_comm_suite(bound: int, c_pairs: str = "all") -> SuiteReport:
    """Translates of e_nm tile e_n, coprime projection/isometry identities, and s_n* s_m = s_m s_n*.

    `c_pairs` selects the pairs tested for s_n* s_m = s_m s_n*: ``"all"`` or
    ``"coprime"``.  The identity only holds for coprime n, m (n = m = 2 gives
    1 on the left and e_2 on the right).
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    if c_pairs not in ("all", "coprime"):
        raise ValueError("c_pairs must be 'all' or 'coprime'")
    rep = SuiteReport("comm")
    rng = range(1, bound + 1)

    def tiling(n, m):
        return NormalFormElement.sum_of(e_translate(n * m, i * n) for i in range(m)) == e(n)

    _family(rep, "(a) e_n = sum u^in e_nm u^-in",
            ((f"n={n}, m={m}", tiling(n, m)) for n in rng for m in rng))
    coprime = [(p, q) for p in rng for q in rng if gcd(p, q) == 1]

    def part_b(p, q):
        lhs = e(p) * s(q)
        return lhs == e(p * q) * s(q) == s(q) * e(p) and e(p) * e(q) == e(p * q) == e(q) * e(p)

    _family(rep, "(b) e_p s_q = e_pq s_q = s_q e_p, e_p e_q = e_pq",
            ((f"p={p}, q={q}", part_b(p, q)) for p, q in coprime))
    pairs = coprime if c_pairs == "coprime" else [(n, m) for n in rng for m in rng]
    _family(rep, f"(c) s_n* s_m = s_m s_n* [{c_pairs} pairs]",
            ((f"n={n}, m={m}: {S(n) * s(m)} vs {s(m) * S(n)}", S(n) * s(m) == s(m) * S(n))
             for n, m in pairs))
    return rep


def lemma_b_display_check(p: int, q: int) -> bool:
    """The variant e_p s_q = e_pq s_p; false for every coprime p, q > 1."""
    return e(p) * s(q) == e(p * q) * s(p)


# --- trace and KMS -----------------------------------------------------------

def monomial_trace(mono: Monomial | None) -> Fraction:
    if mono is None or mono.n != mono.m or mono.eps or mono.i + mono.j:
        return Fraction(0)
    return Fraction(1, mono.n)


def monomial_kms(x: Monomial, y: Monomial) -> bool:
    """tau(x lambda_i(y)) == tau(y x) for single monomials."""
    return Fraction(y.m, y.n) * monomial_trace(x.times(y)) == monomial_trace(y.times(x))


def trace_kms_suite(bound: int, window: int = 10 ** 5, kms_bound: int | None = None,
                    window_bound: int = 100) -> SuiteReport:
    """tau(e_n) = 1/n, KMS on generator monomial pairs, window density of e_n."""
    rep = SuiteReport("trace")
    _family(rep, "tau(e_n) = 1/n",
            ((f"n={n}", trace_tau(e(n)) == Fraction(1, n)) for n in range(1, bound + 1)))
    kb = bound if kms_bound is None else kms_bound

    def kms_pairs():
        # x = u^a s_n and y = s_m* u^b, in both orders
        xs = [Monomial(a, n, 1, 0, 0) for n in range(1, kb + 1) for a in range(-kb, kb + 1)]
        ys = [Monomial.make(0, 1, m, b) for m in range(1, kb + 1) for b in range(-kb, kb + 1)]
        for x in xs:
            for y in ys:
                yield f"x={x}, y={y}", monomial_kms(x, y) and monomial_kms(y, x)

    _family(rep, "KMS tau(x lambda_i(y)) = tau(yx)", kms_pairs())
    wb = min(bound, window_bound)
    _family(rep, f"window trace W={window}",
            ((f"n={n}", abs(window_trace(e(n), window) - Fraction(1, n)) < Fraction(1, 1000))
             for n in range(1, wb + 1)))
    return rep


# --- oracle ---------------------------------------------------------------------

def oracle_equivalence_suite(count: int, seed: int = 0, modes: Iterable[str] = ("N", "Z"),
                             bound: int = 1000, max_len: int = 12, max_index: int = 10) -> SuiteReport:
    """Random words: normal form versus composition of letter maps on |k| <= bound."""
    rep = SuiteReport("oracle")
    ks = np.arange(-bound, bound + 1, dtype=np.int64)
    for mode in modes:
        rng = random.Random(f"{seed}:{mode}")

        def cases():
            for _ in range(count):
                w = random_word(rng, mode, max_len, max_index)
                nf = normal_form(w, mode)
                ok = word_agrees_with_normal_form(w, nf, ks)
                if ok and not nf.is_zero():
                    (mono, _), = nf.items()
                    ok = word_map(w) == monomial_map(mono)
                yield " ".join(map(str, w)) or "1", ok

        _family(rep, f"words mode {mode}", cases())
    return rep
