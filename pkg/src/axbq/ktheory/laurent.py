"""Integer Laurent polynomials in z and sparse square matrices over them."""
from __future__ import annotations

from typing import Mapping

__all__ = ["LaurentPoly", "LaurentMatrix", "shift_matrix", "shift_embedding_check"]


class LaurentPoly:
    """sum c_k z^k with finitely many nonzero integer c_k (k may be negative)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def z(cls, k: int = 1) -> LaurentPoly:
        return cls({k: 1})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def degree_range(self) -> tuple[int, int]:
        return min(self._c), max(self._c)

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = c.get(k, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c: dict[int, int] = {}
        for a, x in self._c.items():
            for b, y in o._c.items():
                c[a + b] = c.get(a + b, 0) + x * y
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> LaurentPoly:
        """z -> z^-1 (complex conjugation on the circle for real coefficients)."""
        return LaurentPoly({-k: v for k, v in self._c.items()})

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient of an exact division; ValueError if other does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = dict(self._c)
        lo_d, hi_d = other.degree_range()
        lead = other._c[hi_d]
        q: dict[int, int] = {}
        lo_n = min(rem)
        while rem:
            hi = max(rem)
            if hi - hi_d < lo_n - lo_d:
                break
            c, r = divmod(rem[hi], lead)
            if r:
                raise ValueError("inexact Laurent division")
            k = hi - hi_d
            q[k] = c
            for e, v in other._c.items():
                rem[k + e] = rem.get(k + e, 0) - c * v
                if rem[k + e] == 0:
                    del rem[k + e]
        if rem:
            raise ValueError("inexact Laurent division")
        return LaurentPoly(q)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for k in sorted(self._c):
            v = self._c[k]
            if k == 0:
                terms.append(str(v))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                terms.append(mon if v == 1 else ("-" + mon if v == -1 else f"{v}*{mon}"))
        return " + ".join(terms).replace("+ -", "- ")


_ZERO = LaurentPoly()


class LaurentMatrix:
    """Sparse k x k matrix with LaurentPoly entries, keyed by (row, col)."""

    __slots__ = ("size", "_e")

    def __init__(self, size: int, entries: Mapping[tuple[int, int], LaurentPoly | int] | None = None):
        self.size = size
        self._e: dict[tuple[int, int], LaurentPoly] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < size and 0 <= c < size):
                raise IndexError("entry outside the matrix")
            v = v if isinstance(v, LaurentPoly) else LaurentPoly.const(v)
            if not v.is_zero():
                self._e[(r, c)] = v

    @classmethod
    def identity(cls, size: int) -> LaurentMatrix:
        return cls(size, {(i, i): 1 for i in range(size)})

    @classmethod
    def scalar(cls, size: int, p: LaurentPoly) -> LaurentMatrix:
        return cls(size, {(i, i): p for i in range(size)})

    def __getitem__(self, rc: tuple[int, int]) -> LaurentPoly:
        return self._e.get(rc, _ZERO)

    def entries(self) -> dict[tuple[int, int], LaurentPoly]:
        return dict(self._e)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        e = dict(self._e)
        for k, v in other._e.items():
            e[k] = e.get(k, _ZERO) + v
        return LaurentMatrix(self.size, e)

    def __mul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.size != other.size:
            raise ValueError("size mismatch")
        by_row: dict[int, list[tuple[int, LaurentPoly]]] = {}
        for (r, c), v in other._e.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], LaurentPoly] = {}
        for (r, k), a in self._e.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), _ZERO) + a * b
        return LaurentMatrix(self.size, out)

    def __pow__(self, n: int) -> LaurentMatrix:
        out, base = LaurentMatrix.identity(self.size), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def adjoint(self) -> LaurentMatrix:
        return LaurentMatrix(self.size, {(c, r): v.bar() for (r, c), v in self._e.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.size == other.size and self._e == other._e

    def __hash__(self):
        return hash((self.size, frozenset(self._e.items())))

    def is_unitary(self) -> bool:
        one = LaurentMatrix.identity(self.size)
        return self * self.adjoint() == one and self.adjoint() * self == one

    def _monomial_permutation(self):
        """The permutation if every row and column holds exactly one entry, else None."""
        if len(self._e) != self.size:
            return None
        perm = [-1] * self.size
        for r, c in self._e:
            if perm[r] != -1:
                return None
            perm[r] = c
        if sorted(perm) != list(range(self.size)):
            return None
        return perm

    def det(self) -> LaurentPoly:
        perm = self._monomial_permutation()
        if perm is not None:
            sign, seen = 1, [False] * self.size
            for i in range(self.size):
                if not seen[i]:
                    j, length = i, 0
                    while not seen[j]:
                        seen[j] = True
                        j = perm[j]
                        length += 1
                    if length % 2 == 0:
                        sign = -sign
            out = LaurentPoly.const(sign)
            for (r, c), v in self._e.items():
                out = out * v
            return out
        return self._bareiss()

    def _bareiss(self) -> LaurentPoly:
        n = self.size
        if n == 0:
            return LaurentPoly.const(1)
        A = [[self[(i, j)] for j in range(n)] for i in range(n)]
        sign, prev = 1, LaurentPoly.const(1)
        for k in range(n - 1):
            if A[k][k].is_zero():
                for i in range(k + 1, n):
                    if not A[i][k].is_zero():
                        A[k], A[i] = A[i], A[k]
                        sign = -sign
                        break
                else:
                    return LaurentPoly()
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
            prev = A[k][k]
        return A[-1][-1] * sign

    def __repr__(self):
        return f"LaurentMatrix({self.size}, {{{', '.join(f'{k}: {v}' for k, v in sorted(self._e.items()))}}})"


def shift_matrix(k: int) -> LaurentMatrix:
    """Ones on the subdiagonal and z in the top-right corner."""
    if k < 1:
        raise ValueError("k must be positive")
    e = {(i + 1, i): LaurentPoly.const(1) for i in range(k - 1)}
    e[(0, k - 1)] = e.get((0, k - 1), _ZERO) + LaurentPoly.z()
    return LaurentMatrix(k, e)


def shift_embedding_check(k: int) -> bool:
    """V unitary and V^k = z * identity."""
    v = shift_matrix(k)
    return v.is_unitary() and v ** k == LaurentMatrix.scalar(k, LaurentPoly.z())
