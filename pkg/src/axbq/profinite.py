"""Finite-precision arithmetic on the profinite integers and the finite adeles.

A profinite integer is stored as a residue tower: for finitely many primes p
we know the value modulo p**k_p; every other prime is unconstrained.  A finite
adele is a profinite integer plus a rational shift in [0, 1), which is the
canonical representative of the adele modulo the maximal compact subring.

The ax+b group over Q acts by x -> a*x + b.  Multiplying by p gains one
p-adic digit, dividing by p spends one; spending digits that are not tracked
raises :class:`InsufficientPrecision` instead of silently losing information.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from sympy import factorint, isprime
from sympy.ntheory.modular import solve_congruence

from .errors import InsufficientPrecision, ParseError

__all__ = [
    "ProfiniteInteger",
    "FiniteAdele",
    "AxbElement",
    "CylinderSet",
    "cylinder_intersect",
    "cylinder_measure",
    "mul_n",
    "axb_act",
    "bc_character",
    "bc_character_covariance",
    "window_count",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class ProfiniteInteger:
    """An element of Z-hat known modulo p**k_p at finitely many primes p."""

    __slots__ = ("_tower",)

    def __init__(self, levels: Mapping[int, int] | None = None,
                 residues: Mapping[int, int] | None = None):
        levels = dict(levels or {})
        residues = dict(residues or {})
        if set(levels) != set(residues):
            raise ValueError("levels and residues must track the same primes")
        tower = []
        for p in sorted(levels):
            k = levels[p]
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            if k < 1:
                raise ValueError(f"precision at {p} must be >= 1, got {k}")
            r = residues[p]
            if not 0 <= r < p**k:
                raise ValueError(f"residue {r} out of range for {p}^{k}")
            tower.append((p, k, r))
        self._tower = tuple(tower)

    @classmethod
    def _from_tower(cls, tower: Iterable[tuple[int, int, int]]) -> ProfiniteInteger:
        obj = cls.__new__(cls)
        obj._tower = tuple(sorted((p, k, r % p**k) for p, k, r in tower if k > 0))
        return obj

    @classmethod
    def from_int(cls, value: int, levels: Mapping[int, int]) -> ProfiniteInteger:
        """Embed an ordinary integer, tracked at the given precisions."""
        return cls(levels, {p: value % p**k for p, k in levels.items()})

    @classmethod
    def unconstrained(cls) -> ProfiniteInteger:
        return cls()

    @property
    def levels(self) -> dict[int, int]:
        return {p: k for p, k, _ in self._tower}

    @property
    def residues(self) -> dict[int, int]:
        return {p: r for p, _, r in self._tower}

    @property
    def tower(self) -> tuple[tuple[int, int, int], ...]:
        return self._tower

    def precision(self, p: int) -> int:
        for q, k, _ in self._tower:
            if q == p:
                return k
        return 0

    def residue(self, p: int) -> int | None:
        for q, _, r in self._tower:
            if q == p:
                return r
        return None

    def __eq__(self, other):
        if not isinstance(other, ProfiniteInteger):
            return NotImplemented
        return self._tower == other._tower

    def __hash__(self):
        return hash(self._tower)

    def __repr__(self):
        body = ", ".join(f"{p}^{k}: {r}" for p, k, r in self._tower)
        return f"ProfiniteInteger([{body}])"

    def agrees(self, other: ProfiniteInteger) -> bool:
        """True iff the two towers agree modulo every commonly tracked prime power."""
        mine = {p: (k, r) for p, k, r in self._tower}
        for p, k, r in other._tower:
            if p in mine:
                k0, r0 = mine[p]
                m = p ** min(k, k0)
                if (r - r0) % m:
                    return False
        return True

    def contains(self, n: int) -> bool:
        return all((n - r) % p**k == 0 for p, k, r in self._tower)

    def _combine(self, other: ProfiniteInteger, op) -> ProfiniteInteger:
        theirs = {p: (k, r) for p, k, r in other._tower}
        out = []
        for p, k, r in self._tower:
            if p in theirs:
                k2, r2 = theirs[p]
                kk = min(k, k2)
                out.append((p, kk, op(r, r2)))
        return ProfiniteInteger._from_tower(out)

    def __add__(self, other):
        if isinstance(other, int):
            return ProfiniteInteger._from_tower((p, k, r + other) for p, k, r in self._tower)
        if isinstance(other, ProfiniteInteger):
            return self._combine(other, lambda a, b: a + b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ProfiniteInteger._from_tower((p, k, -r) for p, k, r in self._tower)

    def __sub__(self, other):
        if isinstance(other, (int, ProfiniteInteger)):
            return self + (-other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return self.mul_int(other)
        if isinstance(other, ProfiniteInteger):
            return self._combine(other, lambda a, b: a * b)
        return NotImplemented

    __rmul__ = __mul__

    def mul_int(self, n: int) -> ProfiniteInteger:
        """Multiply by a nonzero integer; precision at p grows by v_p(n).

        Primes dividing n that are untracked become tracked with residue 0,
        since n*x is divisible by p**v_p(n) whatever x is.
        """
        if n == 0:
            raise ValueError("multiplication by 0 is not invertible on the adeles")
        vals = factorint(abs(n))
        out = []
        for p, k, r in self._tower:
            kk = k + vals.get(p, 0)
            out.append((p, kk, n * r))
        tracked = {p for p, _, _ in self._tower}
        for p, v in vals.items():
            if p not in tracked:
                out.append((p, v, 0))
        return ProfiniteInteger._from_tower(out)

    def div_prime(self, p: int) -> tuple[ProfiniteInteger, int]:
        """Write self = r0 + p*q with 0 <= r0 < p and return (q, r0).

        Spends one p-adic digit.  At the other tracked primes p is a unit, so
        q is obtained by multiplying with p^-1.
        """
        k = self.precision(p)
        if k == 0:
            raise InsufficientPrecision(f"cannot divide by {p}: prime {p} is not tracked")
        r0 = self.residue(p) % p
        out = []
        for q, kq, r in self._tower:
            if q == p:
                if kq > 1:
                    out.append((p, kq - 1, (r - r0) // p))
            else:
                mod = q**kq
                out.append((q, kq, (r - r0) * pow(p, -1, mod)))
        return ProfiniteInteger._from_tower(out), r0

    def to_cylinder(self) -> CylinderSet:
        """The set of all profinite integers compatible with this tower."""
        if not self._tower:
            return CylinderSet(1, 0)
        res = solve_congruence(*[(r, p**k) for p, k, r in self._tower])
        return CylinderSet(res[1], res[0])


def mul_n(n: int, x: ProfiniteInteger) -> ProfiniteInteger:
    """Multiplication by a positive integer n on Z-hat."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return x.mul_int(n)


class FiniteAdele:
    """integral_part + shift, with shift a rational in [0, 1)."""

    __slots__ = ("_integral", "_shift")

    def __init__(self, integral_part: ProfiniteInteger | None = None, shift=0):
        z = integral_part if integral_part is not None else ProfiniteInteger()
        s = _as_fraction(shift)
        whole = s.numerator // s.denominator
        if whole:
            z = z + whole
            s = s - whole
        self._integral = z
        self._shift = s

    @classmethod
    def from_rational(cls, q, levels: Mapping[int, int]) -> FiniteAdele:
        """The diagonal embedding of a rational number, tracked at `levels`."""
        q = _as_fraction(q)
        whole = q.numerator // q.denominator
        return cls(ProfiniteInteger.from_int(whole, levels), q - whole)

    @property
    def integral_part(self) -> ProfiniteInteger:
        return self._integral

    @property
    def shift(self) -> Fraction:
        return self._shift

    def is_integral(self) -> bool:
        """Membership in the maximal compact subring prod_p Z_p."""
        return self._shift == 0

    def characteristic(self) -> int:
        """Value of the indicator function of prod_p Z_p at this adele."""
        return 1 if self.is_integral() else 0

    def agrees(self, other: FiniteAdele) -> bool:
        return self._shift == other._shift and self._integral.agrees(other._integral)

    def __eq__(self, other):
        if not isinstance(other, FiniteAdele):
            return NotImplemented
        return self._shift == other._shift and self._integral == other._integral

    def __hash__(self):
        return hash((self._shift, self._integral))

    def __repr__(self):
        return f"FiniteAdele({self})"

    def __str__(self):
        body = ", ".join(f"{p}^{k}: {r}" for p, k, r in self._integral.tower)
        return f"{self._shift} + [{body}]"

    _PATTERN = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*\+\s*\[(.*)\]\s*$")
    _ENTRY = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*:\s*(\d+)\s*$")

    @classmethod
    def parse(cls, text: str) -> FiniteAdele:
        """Parse ``shift + [p^k: r, ...]``, e.g. ``1/3 + [2^3: 5, 3^2: 7]``."""
        m = cls._PATTERN.match(text)
        if not m:
            raise ParseError(f"not an adele: {text!r}")
        try:
            shift = Fraction(m.group(1))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad shift in {text!r}") from exc
        levels, residues = {}, {}
        body = m.group(2).strip()
        if body:
            for entry in body.split(","):
                em = cls._ENTRY.match(entry)
                if not em:
                    raise ParseError(f"bad tower entry {entry!r}")
                p, k, r = (int(g) for g in em.groups())
                if p in levels:
                    raise ParseError(f"prime {p} listed twice")
                levels[p] = k
                residues[p] = r
        try:
            z = ProfiniteInteger(levels, residues)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        return cls(z, shift)


@dataclass(frozen=True)
class AxbElement:
    """The affine map x -> a*x + b with a in Q^x and b in Q."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))
        if self.a == 0:
            raise ValueError("a must be nonzero")

    @classmethod
    def positive(cls, a, b=0) -> AxbElement:
        g = cls(a, b)
        if g.a < 0:
            raise ValueError("P_Q^+ requires a > 0")
        return g

    @classmethod
    def identity(cls) -> AxbElement:
        return cls(Fraction(1), Fraction(0))

    @property
    def is_positive(self) -> bool:
        return self.a > 0

    def __mul__(self, other: AxbElement) -> AxbElement:
        if not isinstance(other, AxbElement):
            return NotImplemented
        return AxbElement(self.a * other.a, self.a * other.b + self.b)

    def inverse(self) -> AxbElement:
        return AxbElement(1 / self.a, -self.b / self.a)

    def __call__(self, x):
        if isinstance(x, FiniteAdele):
            return axb_act(self, x)
        return self.a * _as_fraction(x) + self.b


def axb_act(g: AxbElement, x: FiniteAdele) -> FiniteAdele:
    """Apply x -> a*x + b to a finite adele."""
    num, den = g.a.numerator, g.a.denominator
    z = x.integral_part.mul_int(num)
    s = x.shift * num
    for p, v in sorted(factorint(den).items()):
        for _ in range(v):
            z, r0 = z.div_prime(p)
            s = (s + r0) / p
    return FiniteAdele(z, s + g.b)


@dataclass(frozen=True)
class CylinderSet:
    """{x in Z-hat : x = residue mod modulus}; Haar measure 1/modulus."""

    modulus: int
    residue: int = 0

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def contains(self, n: int) -> bool:
        return (n - self.residue) % self.modulus == 0

    def image_under_mul(self, n: int) -> CylinderSet:
        return CylinderSet(n * self.modulus, n * self.residue)

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


def cylinder_intersect(c1: CylinderSet | None, c2: CylinderSet | None) -> CylinderSet | None:
    """CRT intersection; ``None`` stands for the empty set."""
    if c1 is None or c2 is None:
        return None
    g = gcd(c1.modulus, c2.modulus)
    if (c1.residue - c2.residue) % g:
        return None
    r, m = solve_congruence((c1.residue, c1.modulus), (c2.residue, c2.modulus))
    return CylinderSet(int(m), int(r))


def cylinder_measure(c: CylinderSet | None) -> Fraction:
    if c is None:
        return Fraction(0)
    return Fraction(1, c.modulus)


def window_count(c: CylinderSet, half_width: int) -> int:
    """Number of integers k with |k| <= half_width lying in the cylinder."""
    n, r = c.modulus, c.residue
    return (half_width - r) // n - (-half_width - 1 - r) // n


def bc_character(gamma) -> tuple[int, tuple[int, ...]]:
    """e_gamma on Z/b as exponents of zeta_b: x -> a*x mod b, for gamma = a/b mod 1.

    Returns ``(b, exponents)`` with ``exponents[x]`` the power of zeta_b.
    """
    g = _as_fraction(gamma)
    g = g - (g.numerator // g.denominator)
    a, b = g.numerator, g.denominator
    return b, tuple((a * x) % b for x in range(b))


def bc_character_covariance(gamma, bound: int) -> bool:
    """Check e_gamma(x + 1) = zeta_b**a * e_gamma(x) for every residue x mod b."""
    g = _as_fraction(gamma)
    g = g - (g.numerator // g.denominator)
    a, b = g.numerator, g.denominator
    if b > bound:
        raise ValueError(f"denominator {b} exceeds bound {bound}")
    _, exps = bc_character(g)
    return all(exps[(x + 1) % b] == (exps[x] + a) % b for x in range(b))
