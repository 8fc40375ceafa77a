"""Symbolic *-algebra for Q_N and Q_Z.

Every word in u, u*, s_n, s_n*, f reduces to zero or to a single canonical
monomial ``u^i s_n s_m* u^j f^eps`` with ``0 <= j < m``.  The reduction uses
only the defining relations:

* ``s_n s_m = s_nm`` and ``s_n u^a = u^(na) s_n`` (and their adjoints),
* ``s_g* u^c s_g = u^(c/g)`` when g | c and ``= 0`` otherwise (the
  translates of e_g are orthogonal),
* ``s_m* s_p = s_p s_m*`` for coprime m, p,
* ``f^2 = 1``, ``f u = u^-1 f``, ``f s_n = s_n f``.

Canonical monomials are not linearly independent: e.g. ``e_2 + u^-1 e_2 u = 1``.
Elements are therefore normalized per affine class.  Monomials sharing the
same underlying affine function k -> q*k + b differ only in their congruence
domains, so their combination is a periodic coefficient function; the normal
form expands that function at its minimal period, one monomial per residue.
Two elements are equal in the algebra iff their normal forms are equal.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, NamedTuple, Sequence

from sympy import primefactors

from .errors import InvalidIndex, ParseError

__all__ = [
    "GaussianRational",
    "Letter",
    "Monomial",
    "NormalFormElement",
    "MODES",
    "parse_word",
    "parse_element",
    "normal_form",
    "word_adjoint",
]

MODES = ("N", "Z")


@dataclass(frozen=True)
class GaussianRational:
    """re + im*i with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        return self * GaussianRational(o.re / d, -o.im / d)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def _coeff(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    if isinstance(c, GaussianRational):
        return c.re if c.im == 0 else c
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Letter(NamedTuple):
    """One generator letter.  For ``u`` the index is the (possibly negative) power."""

    kind: str  # "u", "s", "S" (adjoint of s), "f"
    index: int = 1

    def adjoint(self) -> Letter:
        if self.kind == "u":
            return Letter("u", -self.index)
        if self.kind == "s":
            return Letter("S", self.index)
        if self.kind == "S":
            return Letter("s", self.index)
        return self

    def __str__(self):
        if self.kind == "u":
            return "u" if self.index == 1 else ("U" if self.index == -1 else f"u^{self.index}")
        if self.kind == "f":
            return "f"
        return f"{self.kind}{self.index}"


class Monomial(NamedTuple):
    """``u^i s_n s_m* u^j f^eps`` with ``0 <= j < m``."""

    i: int
    n: int
    m: int
    j: int
    eps: int = 0

    @classmethod
    def make(cls, i: int, n: int, m: int, j: int, eps: int = 0) -> Monomial:
        """Build a monomial, pushing the multiple of m in j to the left."""
        if n < 1 or m < 1:
            raise InvalidIndex("s-indices must be positive")
        q, r = divmod(j, m)
        return cls(i + n * q, n, m, r, eps & 1)

    @classmethod
    def one(cls) -> Monomial:
        return cls(0, 1, 1, 0, 0)

    @classmethod
    def from_letter(cls, letter: Letter) -> Monomial:
        k, x = letter
        if k == "u":
            return cls(x, 1, 1, 0, 0)
        if k == "s":
            return cls(0, x, 1, 0, 0)
        if k == "S":
            return cls(0, 1, x, 0, 0)
        if k == "f":
            return cls(0, 1, 1, 0, 1)
        raise InvalidIndex(f"unknown letter {letter!r}")

    def times(self, other: Monomial) -> Monomial | None:
        """Product self*other, or None when it vanishes."""
        i1, n1, m1, j1, e1 = self
        i2, n2, m2, j2, e2 = other
        if e1:
            # f u^a = u^-a f, f commutes with s_n and s_n*
            i2, j2 = -i2, -j2
        c = j1 + i2
        # middle factor s_m1* u^c s_n2
        g = gcd(m1, n2)
        if c % g:
            return None
        mp, pp, cp = m1 // g, n2 // g, c // g
        b, r = divmod(cp, mp)
        # s_mp* u^r s_pp with gcd(mp, pp) = 1: u^r s_pp = u^(r - pp t) s_pp u^t
        t = (r * pow(pp, -1, mp)) % mp if mp > 1 else 0
        w = (r - pp * t) // mp
        N = n1 * pp
        M = mp * m2
        q, R = divmod(m2 * t + j2, M)
        return Monomial(i1 + n1 * (b + w) + N * q, N, M, R, e1 ^ e2)

    def adjoint(self) -> Monomial:
        i, n, m, j, e = self
        sigma = -1 if e else 1
        return Monomial.make(-sigma * j, m, n, -sigma * i, e)

    def letters(self) -> tuple[Letter, ...]:
        """Spell the monomial as a word (identity letters omitted)."""
        i, n, m, j, e = self
        out = []
        if i:
            out.append(Letter("u", i))
        if n != 1:
            out.append(Letter("s", n))
        if m != 1:
            out.append(Letter("S", m))
        if j:
            out.append(Letter("u", j))
        if e:
            out.append(Letter("f", 1))
        return tuple(out)

    @property
    def sign(self) -> int:
        return -1 if self.eps else 1

    @property
    def slope(self) -> Fraction:
        return Fraction(self.sign * self.n, self.m)

    @property
    def domain_residue(self) -> int:
        """k is in the domain iff k = domain_residue mod m."""
        return (-self.sign * self.j) % self.m

    def affine_class(self) -> tuple[int, Fraction, Fraction]:
        """Key of the affine function k -> sign*(n/m)*k + (n*j/m + i)."""
        return (self.eps, Fraction(self.n, self.m), Fraction(self.n * self.j, self.m) + self.i)

    def __str__(self):
        return f"u^{self.i} s_{self.n} S_{self.m} u^{self.j} f^{self.eps}"


_ONE = Monomial.one()


def _piece(key, modulus: int, r: int) -> Monomial:
    """Canonical monomial of the affine class `key` restricted to k = r mod modulus."""
    eps, q, b = key
    sigma = -1 if eps else 1
    N = q * modulus
    assert N.denominator == 1
    J = (-sigma * r) % modulus
    I = b - q * J
    assert I.denominator == 1
    return Monomial(int(I), int(N), modulus, J, eps)


def _minimal_period(g: Mapping[int, object], L: int) -> int:
    P = L
    for p in primefactors(L):
        while P % p == 0:
            d = P // p
            if all(g.get((r + d) % L) == c for r, c in g.items()):
                P = d
            else:
                break
    return P


def _canonicalize(terms: Iterable[tuple[Monomial, object]]) -> dict[Monomial, object]:
    classes: dict[tuple, dict[Monomial, object]] = {}
    for mono, c in terms:
        bucket = classes.setdefault(mono.affine_class(), {})
        bucket[mono] = bucket.get(mono, 0) + c
    out: dict[Monomial, object] = {}
    for key, bucket in classes.items():
        bucket = {m: c for m, c in bucket.items() if c != 0}
        if len(bucket) <= 1:
            out.update(bucket)
            continue
        L = lcm(*(m.m for m in bucket))
        g: dict[int, object] = {}
        for mono, c in bucket.items():
            r0 = mono.domain_residue
            for t in range(L // mono.m):
                r = r0 + t * mono.m
                g[r] = g.get(r, 0) + c
        g = {r: c for r, c in g.items() if c != 0}
        if not g:
            continue
        P = _minimal_period(g, L)
        for r, c in g.items():
            if r < P:
                out[_piece(key, P, r)] = c
    return out


class NormalFormElement:
    """A finite combination of canonical monomials in normal form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = (),
                 *, _canonical: bool = False):
        items = terms.items() if isinstance(terms, Mapping) else terms
        items = [(m, _coeff(c)) for m, c in items]
        if _canonical:
            self._terms = {m: c for m, c in items if c != 0}
        else:
            self._terms = _canonicalize(items)
        self._hash = None

    @classmethod
    def zero(cls) -> NormalFormElement:
        return cls((), _canonical=True)

    @classmethod
    def one(cls) -> NormalFormElement:
        return cls({_ONE: Fraction(1)}, _canonical=True)

    @classmethod
    def scalar(cls, c) -> NormalFormElement:
        return cls({_ONE: c}, _canonical=True)

    @classmethod
    def monomial(cls, mono: Monomial | None, coeff=1) -> NormalFormElement:
        if mono is None:
            return cls.zero()
        return cls({mono: coeff}, _canonical=True)

    @classmethod
    def sum_of(cls, elements: Iterable[NormalFormElement]) -> NormalFormElement:
        """Sum with a single normalization pass."""
        return cls([item for x in elements for item in x._terms.items()])

    @property
    def terms(self) -> dict[Monomial, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {_ONE: 1}

    def uses_flip(self) -> bool:
        return any(m.eps for m in self._terms)

    def _combine(self, other, sign):
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + sign * c
        return NormalFormElement(acc.items())

    @staticmethod
    def _lift(x):
        if isinstance(x, NormalFormElement):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)) and not isinstance(x, bool):
            return NormalFormElement.scalar(x)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, -1)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o._combine(self, -1)

    def __neg__(self):
        return NormalFormElement({m: -c for m, c in self._terms.items()}, _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            c = _coeff(other)
            return NormalFormElement({m: c * v for m, v in self._terms.items()}, _canonical=True)
        if not isinstance(other, NormalFormElement):
            return NotImplemented
        products: dict[Monomial, object] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1.times(m2)
                if m is not None:
                    products[m] = products.get(m, 0) + c1 * c2
        keys = {}
        for m in products:
            k = m.affine_class()
            if k in keys:
                break
            keys[k] = m
        else:
            return NormalFormElement(products.items(), _canonical=True)
        return NormalFormElement(products.items())

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined for general elements")
        out = NormalFormElement.one()
        for _ in range(k):
            out = out * self
        return out

    def adjoint(self) -> NormalFormElement:
        # adjoint maps each affine class bijectively onto one class and keeps
        # residues distinct, so the normal form is preserved
        return NormalFormElement({m.adjoint(): c.conjugate() for m, c in self._terms.items()},
                                 _canonical=True)

    @property
    def star(self) -> NormalFormElement:
        return self.adjoint()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"NormalFormElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms):
            c = self._terms[m]
            parts.append(f"{c}*{m}")
        return " + ".join(parts)


# --- words and parsing -------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<letter>[sS]-?\d+|[uUf])(?:\^(?P<pow>-?\d+))?"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<op>[+\-*])"
    r")"
)


def _letters_for(token: str, power: int, mode: str) -> list[Letter]:
    if token == "u":
        return [Letter("u", power)]
    if token == "U":
        return [Letter("u", -power)]
    if token == "f":
        if mode != "Z":
            raise InvalidIndex("the flip f exists only in Q_Z mode")
        return [Letter("f", 1)] * (power % 2)
    kind, n = token[0], int(token[1:])
    if n == 0:
        raise InvalidIndex("s_0 is not a generator")
    if power < 0:
        raise ParseError(f"negative power of {token} is not defined")
    out = []
    if n < 0:
        if mode != "Z":
            raise InvalidIndex(f"s_{n} is only allowed in Q_Z mode")
        out.append(Letter("f", 1))
        n = -n
    out.extend([Letter(kind, n)] * power)
    return out


def _tokenize(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        yield m


def _check_mode(mode: str):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def parse_word(text: str, mode: str = "N") -> list[Letter]:
    """Parse a word such as ``"s2 u^3 S3 U f"``; ``"1"`` is the empty word."""
    _check_mode(mode)
    letters: list[Letter] = []
    for m in _tokenize(text):
        if m.group("letter"):
            power = int(m.group("pow")) if m.group("pow") else 1
            letters.extend(_letters_for(m.group("letter"), power, mode))
        elif m.group("num") == "1":
            continue
        else:
            raise ParseError(f"unexpected {m.group(0).strip()!r} in word {text!r}")
    return letters


def parse_element(text: str, mode: str = "N") -> NormalFormElement:
    """Parse ``coeff*word +- coeff*word ...`` into normal form."""
    _check_mode(mode)
    total: dict[Monomial, Fraction] = {}
    sign, coeff, letters = 1, None, []
    prev = "start"

    def flush():
        c = sign * (coeff if coeff is not None else Fraction(1))
        mono = _reduce_letters(letters)
        if mono is not None:
            total[mono] = total.get(mono, 0) + c

    for m in _tokenize(text):
        op = m.group("op")
        if op in ("+", "-"):
            if prev in ("coeff", "letter"):
                flush()
                coeff, letters = None, []
            elif prev != "start":
                raise ParseError(f"misplaced {op!r} in {text!r}")
            sign = 1 if op == "+" else -1
            prev = "op"
        elif op == "*":
            if prev != "coeff":
                raise ParseError(f"'*' must follow a coefficient in {text!r}")
            prev = "star"
        elif m.group("num"):
            if prev not in ("start", "op"):
                raise ParseError(f"misplaced number {m.group('num')} in {text!r}")
            try:
                coeff = Fraction(m.group("num"))
            except ZeroDivisionError as exc:
                raise ParseError("zero denominator") from exc
            prev = "coeff"
        else:
            power = int(m.group("pow")) if m.group("pow") else 1
            letters.extend(_letters_for(m.group("letter"), power, mode))
            prev = "letter"
    if prev not in ("coeff", "letter"):
        raise ParseError(f"incomplete expression {text!r}")
    flush()
    return NormalFormElement(total.items())


def _reduce_letters(letters: Sequence[Letter]) -> Monomial | None:
    acc = _ONE
    for letter in letters:
        acc = acc.times(Monomial.from_letter(letter))
        if acc is None:
            return None
    return acc


def _validate(letters: Sequence[Letter], mode: str):
    for letter in letters:
        if letter.kind == "f" and mode != "Z":
            raise InvalidIndex("the flip f exists only in Q_Z mode")
        if letter.kind in "sS" and letter.index < 1:
            raise InvalidIndex(f"invalid index {letter.index} for {letter.kind}")


def normal_form(word: str | Sequence[Letter], mode: str = "N",
                rng: random.Random | None = None) -> NormalFormElement:
    """Reduce a word to its canonical form.

    With `rng` the adjacent factors are multiplied in a random order instead of
    left to right; the result must not depend on the order.
    """
    _check_mode(mode)
    letters = parse_word(word, mode) if isinstance(word, str) else list(word)
    _validate(letters, mode)
    if rng is None:
        return NormalFormElement.monomial(_reduce_letters(letters))
    factors = [Monomial.from_letter(x) for x in letters] or [_ONE]
    while len(factors) > 1:
        k = rng.randrange(len(factors) - 1)
        prod = factors[k].times(factors[k + 1])
        if prod is None:
            return NormalFormElement.zero()
        factors[k:k + 2] = [prod]
    return NormalFormElement.monomial(factors[0])


def word_adjoint(letters: Sequence[Letter]) -> list[Letter]:
    return [x.adjoint() for x in reversed(letters)]
