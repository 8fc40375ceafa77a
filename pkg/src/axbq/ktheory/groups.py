"""Finitely generated abelian groups, homomorphisms and direct systems.

A group is presented as Z^g modulo the row span of a relation matrix.  Maps
use the column convention: column j of the matrix is the image of source
generator j, written in the target generators.

Colimits of direct systems are never materialized.  Queries look at finitely
many stages and return a :class:`Certificate` recording what was seen.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Sequence

from ..errors import InsufficientStages, KTheoryError
from .intmat import (Matrix, identity, integer_kernel, lattice_basis, matmul, matvec,
                     smith_normal_form, solve_integer, transpose)

__all__ = [
    "AbGroup",
    "GroupHom",
    "kernel",
    "cokernel",
    "image_group",
    "IndAbGroup",
    "RankQuery",
    "TorsionQuery",
    "DivisibilityQuery",
    "Certificate",
    "colimit_query",
]


class AbGroup:
    """Z^ngens / <relations>, compared by rank and torsion invariants."""

    __slots__ = ("ngens", "relations", "_inv")

    def __init__(self, ngens: int, relations: Iterable[Sequence[int]] = ()):
        self.ngens = ngens
        self.relations: Matrix = [list(map(int, r)) for r in relations if any(r)]
        if any(len(r) != ngens for r in self.relations):
            raise ValueError("relation length does not match the number of generators")
        self._inv = None

    @classmethod
    def free(cls, r: int) -> AbGroup:
        return cls(r)

    @classmethod
    def zero(cls) -> AbGroup:
        return cls(0)

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int] = ()) -> AbGroup:
        t = [d for d in torsion if d != 1]
        n = len(t) + rank
        return cls(n, [[d if j == i else 0 for j in range(n)] for i, d in enumerate(t)])

    def _invariants(self):
        if self._inv is None:
            if not self.relations:
                self._inv = (self.ngens, ())
            else:
                D, _, _ = smith_normal_form(self.relations)
                diag = [D[i][i] for i in range(min(len(D), self.ngens))]
                nz = [d for d in diag if d]
                self._inv = (self.ngens - len(nz), tuple(d for d in nz if d > 1))
        return self._inv

    @property
    def rank(self) -> int:
        return self._invariants()[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self._invariants()[1]

    def is_free(self) -> bool:
        return not self.torsion

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def direct_sum(self, other: AbGroup) -> AbGroup:
        a, b = self.ngens, other.ngens
        rels = [r + [0] * b for r in self.relations] + [[0] * a + r for r in other.relations]
        return AbGroup(a + b, rels)

    def contains_relation(self, v: Sequence[int]) -> bool:
        """Whether v is zero in the group."""
        if not any(v):
            return True
        if not self.relations:
            return False
        return solve_integer(transpose(self.relations), v) is not None

    def __eq__(self, other):
        if not isinstance(other, AbGroup):
            return NotImplemented
        return self._invariants() == other._invariants()

    def __hash__(self):
        return hash(self._invariants())

    def __repr__(self):
        return f"AbGroup({self})"

    def __str__(self):
        r, t = self._invariants()
        parts = ([f"Z^{r}" if r > 1 else "Z"] if r else []) + [f"Z/{d}" for d in t]
        return " + ".join(parts) or "0"

    def summary(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class GroupHom:
    source: AbGroup
    target: AbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, source: AbGroup, target: AbGroup, matrix: Sequence[Sequence[int]]):
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(mat) != target.ngens or any(len(row) != source.ngens for row in mat):
            raise ValueError("matrix shape does not match generator counts")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(cls, g: AbGroup) -> GroupHom:
        return cls(g, g, identity(g.ngens))

    @classmethod
    def scalar(cls, g: AbGroup, k: int) -> GroupHom:
        return cls(g, g, [[k if i == j else 0 for j in range(g.ngens)] for i in range(g.ngens)])

    @property
    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def __call__(self, v: Sequence[int]) -> list[int]:
        return matvec(self.matrix, v)

    def is_well_defined(self) -> bool:
        return all(self.target.contains_relation(self(r)) for r in self.source.relations)

    def compose(self, inner: GroupHom) -> GroupHom:
        """self after inner."""
        return GroupHom(inner.source, self.target, matmul(self.rows, inner.rows))

    def __sub__(self, other: GroupHom) -> GroupHom:
        return GroupHom(self.source, self.target,
                        [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)])

    def is_isomorphism(self) -> bool:
        return cokernel(self)[0].is_zero() and kernel(self)[0].is_zero()


def cokernel(h: GroupHom) -> tuple[AbGroup, Matrix]:
    """(target / image, projection matrix on generators)."""
    rels = h.target.relations + transpose(h.rows, h.source.ngens)
    if h.source.ngens == 0:
        rels = h.target.relations
    return AbGroup(h.target.ngens, rels), identity(h.target.ngens)


def kernel(h: GroupHom) -> tuple[AbGroup, Matrix]:
    """(kernel, inclusion matrix whose columns are the kernel generators)."""
    a = h.source.ngens
    if a == 0:
        return AbGroup.zero(), []
    # x with h(x) in the relation lattice of the target: solve [M | -R^T] (x, y) = 0
    rt = transpose(h.target.relations) if h.target.relations else [[] for _ in range(h.target.ngens)]
    big = [list(mrow) + [-x for x in rrow] for mrow, rrow in zip(h.matrix, rt)]
    if h.target.ngens == 0:
        ker = identity(a)
    else:
        ker = [v[:a] for v in integer_kernel(big, a + len(h.target.relations))]
    basis = lattice_basis(ker, a)
    if not basis:
        return AbGroup.zero(), [[] for _ in range(a)]
    incl = transpose(basis)
    rels = []
    for r in h.source.relations:
        c = solve_integer(incl, r)
        if c is None:
            raise KTheoryError("source relation not in the kernel; map is not well defined")
        rels.append(c)
    return AbGroup(len(basis), rels), incl


def image_group(h: GroupHom) -> AbGroup:
    """Image of h as a subgroup of a free target."""
    if h.target.relations:
        raise KTheoryError("image_group expects a free target")
    cols = transpose(h.rows, h.source.ngens) if h.source.ngens else []
    return AbGroup(len(lattice_basis(cols, h.target.ngens)))


# --- direct systems -----------------------------------------------------------

Rule = Callable[[int, AbGroup], tuple[AbGroup, Matrix]]


class IndAbGroup:
    """G_0 -> G_1 -> ... with finitely many materialized stages and an optional rule.

    ``maps[i]`` is the matrix of G_i -> G_{i+1}.  ``rule(i, G_i)`` returns
    ``(G_{i+1}, matrix)``.  A constant system repeats one group with identity maps.
    """

    def __init__(self, groups: Sequence[AbGroup], maps: Sequence[Sequence[Sequence[int]]] = (),
                 rule: Rule | None = None, name: str = "", constant: bool = False):
        if len(maps) != len(groups) - 1:
            raise ValueError("need exactly one map between consecutive stages")
        self.groups = list(groups)
        self.maps = [[list(r) for r in m] for m in maps]
        self.rule = rule
        self.name = name
        self.constant = constant
        self.labels: list[object] = []

    @classmethod
    def constant_system(cls, g: AbGroup, name: str = "") -> IndAbGroup:
        return cls([g], rule=lambda i, h: (h, identity(h.ngens)), name=name, constant=True)

    @property
    def materialized(self) -> int:
        return len(self.groups)

    def ensure(self, stages: int):
        """Materialize stages 0 .. stages-1."""
        while len(self.groups) < stages:
            if self.rule is None:
                raise InsufficientStages(
                    f"{self.name or 'system'} has {len(self.groups)} stages, {stages} requested")
            g, m = self.rule(len(self.groups) - 1, self.groups[-1])
            self.groups.append(g)
            self.maps.append([list(r) for r in m])

    def stage(self, i: int) -> AbGroup:
        self.ensure(i + 1)
        return self.groups[i]

    def connecting(self, i: int) -> GroupHom:
        self.ensure(i + 2)
        return GroupHom(self.groups[i], self.groups[i + 1], self.maps[i])

    def composite(self, i: int, j: int) -> GroupHom:
        """G_i -> G_j for i <= j."""
        self.ensure(j + 1)
        h = GroupHom.identity(self.groups[i])
        for k in range(i, j):
            h = self.connecting(k).compose(h)
        return h

    def __repr__(self):
        return f"IndAbGroup({self.name!r}, materialized={self.materialized})"


@dataclass(frozen=True)
class RankQuery:
    """Rank of the image of G_start in G_s for s = start .. stages-1."""

    stages: int
    start: int = 0


@dataclass(frozen=True)
class TorsionQuery:
    """Torsion of every stage group and of the stage images, up to `stages`."""

    stages: int
    start: int = 0


@dataclass(frozen=True)
class DivisibilityQuery:
    """Is the class of `element` (in G_start) divisible by each d, within `stages` stages?"""

    element: tuple[int, ...]
    divisors: tuple[int, ...]
    stages: int
    start: int = 0


@dataclass
class Certificate:
    query: str
    stages: int
    answer: object
    witnesses: list[dict] = field(default_factory=list)

    def summary(self) -> dict:
        return {"query": self.query, "stages": self.stages, "answer": self.answer,
                "witnesses": self.witnesses}


def _rank_cert(G: IndAbGroup, q: RankQuery) -> Certificate:
    G.ensure(q.stages)
    ranks = []
    h = GroupHom.identity(G.stage(q.start))
    for s in range(q.start, q.stages):
        if s > q.start:
            h = G.connecting(s - 1).compose(h)
        tgt = G.stage(s)
        if tgt.relations:
            # rank of the image is rank of the source minus rank of the kernel
            r = h.source.rank - kernel(h)[0].rank
        else:
            r = image_group(h).rank
        ranks.append({"stage": s, "rank": r})
    stable = ranks[-1]["rank"]
    since = q.start
    for w in ranks:
        if w["rank"] != stable:
            since = w["stage"] + 1
    return Certificate("rank", q.stages, {"rank": stable, "stable_since": since}, ranks)


def _torsion_cert(G: IndAbGroup, q: TorsionQuery) -> Certificate:
    G.ensure(q.stages)
    out = []
    for s in range(q.start, q.stages):
        g = G.stage(s)
        # a subgroup of a free stage is free; otherwise the image torsion is not computed
        out.append({"stage": s, "stage_torsion": list(g.torsion),
                    "image_torsion": [] if not g.relations else None})
    free = all(not w["stage_torsion"] for w in out)
    return Certificate("torsion", q.stages, {"torsion_free": free}, out)


def _divisibility_cert(G: IndAbGroup, q: DivisibilityQuery) -> Certificate:
    pending = {d for d in q.divisors if d > 0}
    found: dict[int, dict] = {}
    v = list(q.element)
    g0 = G.stage(q.start)
    if len(v) != g0.ngens:
        raise ValueError("element has the wrong length for the start stage")
    s = q.start
    scalar = g0.ngens == 1 and not g0.relations
    # scalar fast path: rem[d] is what is still missing from d
    rem = {d: d // gcd(d, v[0]) for d in pending} if scalar else {}
    while True:
        g = G.stage(s)
        for d in sorted(pending):
            if scalar:
                ok = rem[d] == 1
                pre = None
            elif not g.relations:
                ok = all(x % d == 0 for x in v)
                pre = [x // d for x in v] if ok else None
            else:
                # d*y = v modulo relations
                cols = [[d if i == j else 0 for j in range(g.ngens)] + [r[i] for r in g.relations]
                        for i in range(g.ngens)]
                sol = solve_integer(cols, v)
                ok = sol is not None
                pre = sol[:g.ngens] if ok else None
            if ok:
                w = {"divisor": d, "stage": s}
                if pre is not None:
                    w["preimage"] = pre
                found[d] = w
        pending -= set(found)
        if not pending or s + 1 >= q.stages:
            break
        if s + 1 >= G.materialized and G.rule is None:
            raise InsufficientStages(f"divisibility needs up to {q.stages} stages")
        m = G.connecting(s).matrix
        if scalar and len(m) == 1 and len(m[0]) == 1 and not G.stage(s + 1).relations:
            a = m[0][0]
            for d in pending:
                rem[d] //= gcd(rem[d], a)
            v = None
        else:
            if scalar:
                raise KTheoryError("scalar fast path needs rank-one free stages throughout")
            v = matvec(m, v)
        s += 1
    witnesses = [found[d] for d in sorted(found)]
    answer = {"divisible": sorted(found), "not_divisible_within_stages": sorted(pending)}
    return Certificate("divisibility", s + 1, answer, witnesses)


def colimit_query(G: IndAbGroup, query) -> Certificate:
    if isinstance(query, RankQuery):
        return _rank_cert(G, query)
    if isinstance(query, TorsionQuery):
        return _torsion_cert(G, query)
    if isinstance(query, DivisibilityQuery):
        return _divisibility_cert(G, query)
    raise TypeError(f"unknown query {query!r}")
