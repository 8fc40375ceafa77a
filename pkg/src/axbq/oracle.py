"""The canonical representation on l^2(Z) as exact partial affine maps.

Every generator sends basis vectors to basis vectors (or to zero), so a word
acts on xi_k through a partial map of the form

    k = residue + modulus*t  |->  offset + sign*scale*t

defined on a single congruence class.  Composition needs only a linear
congruence solve, which makes this an independent check on the symbolic
rewriting in :mod:`axbq.algebra`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .algebra import Letter, Monomial, NormalFormElement
from .errors import InvalidIndex
from .profinite import CylinderSet, window_count

__all__ = [
    "AffineCongruenceMap",
    "IDENTITY",
    "generator_map",
    "compose",
    "monomial_map",
    "word_map",
    "evaluate",
    "oracle_equal",
    "word_agrees_with_normal_form",
    "random_word",
    "window_trace",
    "WindowModel",
    "OUTSIDE",
    "hat",
    "mapping_torus_covariance",
]

_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class AffineCongruenceMap:
    """Partial map k -> offset + sign*scale*(k - residue)/modulus on k = residue mod modulus."""

    modulus: int
    residue: int
    scale: int
    offset: int
    sign: int = 1

    def __post_init__(self):
        if self.modulus < 1 or self.scale < 1:
            raise ValueError("modulus and scale must be positive")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must lie in [0, modulus)")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def defined_at(self, k: int) -> bool:
        return (k - self.residue) % self.modulus == 0

    def __call__(self, k: int) -> int | None:
        t, r = divmod(k - self.residue, self.modulus)
        if r:
            return None
        return self.offset + self.sign * self.scale * t

    def apply(self, ks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized evaluation: (mask of defined inputs, images of those inputs)."""
        ks = np.asarray(ks)
        big = max(abs(int(ks.min())), abs(int(ks.max()))) if ks.size else 0
        if ks.dtype != object and abs(self.offset) + self.scale * (big + self.modulus) < _INT64_SAFE:
            d = ks - self.residue
            mask = d % self.modulus == 0
            return mask, self.offset + self.sign * self.scale * (d[mask] // self.modulus)
        vals = [self(int(k)) for k in ks]
        mask = np.array([v is not None for v in vals], dtype=bool)
        return mask, np.array([v for v in vals if v is not None], dtype=object)

    @property
    def domain(self) -> CylinderSet:
        return CylinderSet(self.modulus, self.residue)

    def __str__(self):
        s = "-" if self.sign < 0 else ""
        return (f"k = {self.residue} mod {self.modulus}: "
                f"k -> {self.offset} + {s}{self.scale}*(k - {self.residue})/{self.modulus}")


IDENTITY = AffineCongruenceMap(1, 0, 1, 0, 1)


def generator_map(letter: Letter | str) -> AffineCongruenceMap:
    if isinstance(letter, str):
        letter = {"u": Letter("u", 1), "U": Letter("u", -1), "f": Letter("f", 1)}.get(letter) \
            or Letter(letter[0], int(letter[1:]))
    kind, x = letter
    if kind == "u":
        return AffineCongruenceMap(1, 0, 1, x, 1)
    if kind == "f":
        return AffineCongruenceMap(1, 0, 1, 0, -1)
    if kind in ("s", "S"):
        if x < 1:
            raise InvalidIndex(f"invalid index {x} for {kind}")
        return AffineCongruenceMap(1, 0, x, 0, 1) if kind == "s" else AffineCongruenceMap(x, 0, 1, 0, 1)
    raise InvalidIndex(f"unknown letter {letter!r}")


def compose(a: AffineCongruenceMap | None, b: AffineCongruenceMap | None) -> AffineCongruenceMap | None:
    """The map a after b, or None (the empty map) when no input survives both."""
    if a is None or b is None:
        return None
    # b sends rb + mb*t to ob + sb*t (signed scale); need ob + sb*t = ra mod ma
    sb = b.sign * b.scale
    g = gcd(b.scale, a.modulus)
    rhs = a.residue - b.offset
    if rhs % g:
        return None
    mg = a.modulus // g
    t0 = ((rhs // g) * pow(sb // g, -1, mg)) % mg if mg > 1 else 0
    M = b.modulus * mg
    start = b.residue + b.modulus * t0
    R = start % M
    d = (start - R) // M
    base = a.offset + a.sign * a.scale * ((b.offset + sb * t0 - a.residue) // a.modulus)
    step = a.sign * b.sign * a.scale * (b.scale // g)
    # inputs are R + M*s with t = t0 + mg*(s + d)
    return AffineCongruenceMap(M, R, abs(step), base + step * d, 1 if step > 0 else -1)


def monomial_map(mono: Monomial) -> AffineCongruenceMap:
    """Direct formula: k -> n*(sign*k + j)/m + i on sign*k + j = 0 mod m."""
    i, n, m, j, eps = mono
    sigma = -1 if eps else 1
    r = (-sigma * j) % m
    c = (sigma * r + j) // m
    return AffineCongruenceMap(m, r, n, n * c + i, sigma)


def word_map(letters: Sequence[Letter]) -> AffineCongruenceMap | None:
    """Composition of the letter maps (the rightmost letter acts first)."""
    acc: AffineCongruenceMap | None = IDENTITY
    for letter in letters:
        acc = compose(acc, generator_map(letter))
        if acc is None:
            return None
    return acc


def evaluate(x: NormalFormElement, ks: Iterable[int]) -> dict[tuple[int, int], object]:
    """Matrix entries {(input k, output l): coefficient} of x on the given inputs."""
    ks = np.asarray(list(ks), dtype=np.int64)
    out: dict[tuple[int, int], object] = {}
    for mono, c in x.items():
        mask, images = monomial_map(mono).apply(ks)
        for key in zip(ks[mask].tolist(), images.tolist()):
            if key in out:
                v = out[key] + c
                if v == 0:
                    del out[key]
                else:
                    out[key] = v
            else:
                out[key] = c
    return out


def oracle_equal(x: NormalFormElement, y: NormalFormElement, bound: int) -> bool:
    """Compare x and y as operators on xi_k for every |k| <= bound."""
    if bound < 1:
        raise ValueError("bound must be positive")
    ks = range(-bound, bound + 1)
    return evaluate(x, ks) == evaluate(y, ks)


def word_agrees_with_normal_form(letters: Sequence[Letter], nf: NormalFormElement,
                                 ks: np.ndarray) -> bool:
    """Check a word against a single-monomial (or zero) normal form on the inputs ks."""
    wm = word_map(letters)
    if nf.is_zero():
        return wm is None or not wm.apply(ks)[0].any()
    if len(nf) != 1:
        return False
    (mono, c), = nf.items()
    if c != 1:
        return False
    mm = monomial_map(mono)
    if wm is None:
        return not mm.apply(ks)[0].any()
    m1, v1 = wm.apply(ks)
    m2, v2 = mm.apply(ks)
    return bool(np.array_equal(m1, m2) and np.array_equal(v1, v2))


def random_word(rng: random.Random, mode: str = "N", max_len: int = 12,
                max_index: int = 10) -> list[Letter]:
    kinds = ["u", "s", "S"] + (["f"] if mode == "Z" else [])
    out = []
    for _ in range(rng.randint(0, max_len)):
        kind = rng.choice(kinds)
        if kind == "u":
            out.append(Letter("u", rng.choice([-1, 1]) * rng.randint(1, max_index)))
        elif kind == "f":
            out.append(Letter("f", 1))
        else:
            out.append(Letter(kind, rng.randint(1, max_index)))
    return out


def _fixed_count(mp: AffineCongruenceMap, half_width: int) -> int:
    """Number of k in [-W, W] with mp(k) = k."""
    # k = r + m*t is fixed iff offset + sign*scale*t = r + m*t
    slope = mp.sign * mp.scale - mp.modulus
    gap = mp.residue - mp.offset
    if slope == 0:
        return window_count(mp.domain, half_width) if gap == 0 else 0
    if gap % slope:
        return 0
    k = mp.residue + mp.modulus * (gap // slope)
    return int(-half_width <= k <= half_width)


def window_trace(x: NormalFormElement, half_width: int) -> Fraction:
    """Average diagonal coefficient of x over the basis vectors xi_k, |k| <= W."""
    if half_width < 1:
        raise ValueError("window half-width must be positive")
    total = 0
    for mono, c in x.items():
        hits = _fixed_count(monomial_map(mono), half_width)
        if hits:
            total = total + c * hits
    return total / Fraction(2 * half_width + 1) if total else Fraction(0)


class _Outside:
    def __repr__(self):
        return "OUTSIDE"


OUTSIDE = _Outside()


@dataclass(frozen=True)
class WindowModel:
    """Basis vectors xi_k for |k| <= half_width, with clipped evaluation."""

    half_width: int

    def __post_init__(self):
        if self.half_width < 1:
            raise ValueError("window half-width must be positive")

    def indices(self) -> range:
        return range(-self.half_width, self.half_width + 1)

    def contains(self, k: int) -> bool:
        return -self.half_width <= k <= self.half_width

    def apply_word(self, letters: Sequence[Letter], k: int):
        """Image index of xi_k, None if the word kills it, OUTSIDE if the orbit leaves the window."""
        if not self.contains(k):
            return OUTSIDE
        for letter in reversed(letters):
            k = generator_map(letter)(k)
            if k is None:
                return None
            if not self.contains(k):
                return OUTSIDE
        return k

    def apply(self, x: NormalFormElement, k: int):
        """{output index: coefficient} for x xi_k, or OUTSIDE if any output leaves the window."""
        out: dict[int, object] = {}
        for mono, c in x.items():
            l = monomial_map(mono)(k)
            if l is None:
                continue
            if not self.contains(l):
                return OUTSIDE
            v = out.get(l, 0) + c
            if v == 0:
                out.pop(l, None)
            else:
                out[l] = v
        return out


def hat(center=0, radius=1) -> Callable[[Fraction], Fraction]:
    """Piecewise linear bump of height 1 supported on (center - radius, center + radius)."""
    center, radius = Fraction(center), Fraction(radius)

    def f(t) -> Fraction:
        d = abs(Fraction(t) - center)
        return 1 - d / radius if d < radius else Fraction(0)

    return f


def _torus_matrix(sample: Mapping[int, Callable], t: Fraction, half_width: int) -> np.ndarray:
    size = 2 * half_width + 1
    F = np.full((size, size), Fraction(0), dtype=object)
    for n, fn in sample.items():
        for k in range(-half_width, half_width + 1):
            l = k + n
            if -half_width <= l <= half_width:
                F[k + half_width, l + half_width] = Fraction(fn(t - k))
    return F


def mapping_torus_covariance(sample: Mapping[int, Callable], grid: Iterable,
                             half_width: int = 8) -> bool:
    """Check F(t+1) = U F(t) U* on the window interior, where F(t)_{k,k+n} = f_n(t - k)."""
    size = 2 * half_width + 1
    U = np.zeros((size, size), dtype=object)
    for a in range(size - 1):
        U[a + 1, a] = 1
    for t in grid:
        t = Fraction(t)
        lhs = _torus_matrix(sample, t + 1, half_width)
        rhs = U.dot(_torus_matrix(sample, t, half_width)).dot(U.T)
        # row/column -W is cut off by the truncated shift
        if not np.array_equal(lhs[1:, 1:], rhs[1:, 1:]):
            return False
    return True
