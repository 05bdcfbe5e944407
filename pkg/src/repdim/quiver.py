"""Finite acyclic quivers and the integer invariants of their path algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

DYNKIN = "dynkin"
EUCLIDEAN = "euclidean"
WILD = "wild"


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        vs = set(self.vertices)
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name} references an unknown vertex")
        if not self.vertices:
            raise QuiverError("quiver has no vertices")
        self._check_acyclic()
        self._check_connected()

    @classmethod
    def from_edges(cls, vertices: Sequence, edges: Sequence[tuple]) -> "Quiver":
        """Build from ``(name, source, target)`` triples."""
        return cls(tuple(vertices), tuple(Arrow(str(n), str(s), str(t)) for n, s, t in edges))

    def _check_acyclic(self):
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        queue.append(a.target)
        if seen != len(self.vertices):
            raise QuiverError("quiver has an oriented cycle")

    def _check_connected(self):
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        stack, seen = [self.vertices[0]], {self.vertices[0]}
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise QuiverError("quiver is not connected")

    # -- combinatorics ---------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    @cached_property
    def sink_first_order(self) -> tuple[str, ...]:
        """Vertices ordered so every arrow points to an earlier vertex."""
        order: list[str] = []
        remaining = list(self.vertices)
        while remaining:
            for v in remaining:
                if all(a.target in order for a in self.arrows if a.source == v):
                    order.append(v)
                    remaining.remove(v)
                    break
        return tuple(order)

    @property
    def source_first_order(self) -> tuple[str, ...]:
        return tuple(reversed(self.sink_first_order))

    @cached_property
    def _paths(self) -> dict[tuple[str, str], tuple[tuple[str, ...], ...]]:
        # paths as tuples of arrow names in order of traversal; trivial path = ()
        out: dict[tuple[str, str], list[tuple[str, ...]]] = {
            (v, w): [] for v in self.vertices for w in self.vertices
        }
        for v in self.vertices:
            out[(v, v)].append(())
        for v in self.sink_first_order:
            for a in self.arrows:
                if a.source != v:
                    continue
                for w in self.vertices:
                    for p in out[(a.target, w)]:
                        out[(v, w)].append((a.name,) + p)
        return {k: tuple(sorted(ps, key=lambda p: (len(p), p))) for k, ps in out.items()}

    def paths(self, v: str, w: str) -> tuple[tuple[str, ...], ...]:
        """All paths from ``v`` to ``w``, each a tuple of arrow names."""
        return self._paths[(v, w)]

    # -- integer invariants ---------------------------------------------
    @cached_property
    def euler_matrix(self) -> np.ndarray:
        E = np.eye(self.n, dtype=np.int64)
        for a in self.arrows:
            E[self.index(a.source), self.index(a.target)] -= 1
        return E

    @cached_property
    def coxeter_matrix(self) -> np.ndarray:
        E = _to_fraction(self.euler_matrix)
        C = -_frac_inverse(E) @ E.T
        return np.array([[int(x) for x in row] for row in C], dtype=np.int64)

    @cached_property
    def cartan_data(self) -> "CartanData":
        kind = gabriel_type(self)
        delta = null_root(self) if kind == EUCLIDEAN else None
        return CartanData(self.euler_matrix, self.coxeter_matrix, kind, delta)


@dataclass(frozen=True)
class CartanData:
    euler: np.ndarray
    coxeter: np.ndarray
    kind: str
    null_root: tuple[int, ...] | None


def _to_fraction(A) -> np.ndarray:
    return np.array([[Fraction(int(x)) for x in row] for row in A], dtype=object)


def _frac_inverse(A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    M = np.concatenate([A.copy(), _to_fraction(np.eye(n, dtype=int))], axis=1)
    for c in range(n):
        r = next(i for i in range(c, n) if M[i, c] != 0)
        M[[c, r]] = M[[r, c]]
        M[c] = M[c] / M[c, c]
        for i in range(n):
            if i != c and M[i, c] != 0:
                M[i] = M[i] - M[i, c] * M[c]
    return M[:, n:]


def _vec(q: Quiver, x) -> np.ndarray:
    if isinstance(x, dict):
        x = [x.get(v, 0) for v in q.vertices]
    v = np.asarray(list(x), dtype=np.int64)
    if v.shape != (q.n,):
        raise QuiverError(f"dimension vector of length {len(v)} for a quiver with {q.n} vertices")
    return v


def euler_form(q: Quiver, x, y) -> int:
    """``<x, y> = sum_v x_v y_v - sum_{a: v->w} x_v y_w``."""
    return int(_vec(q, x) @ q.euler_matrix @ _vec(q, y))


def symmetric_form(q: Quiver) -> np.ndarray:
    return q.euler_matrix + q.euler_matrix.T


def _psd_rank(S: np.ndarray) -> tuple[bool, int]:
    """Exact positive-semidefiniteness test by symmetric pivoting; returns (psd, rank)."""
    A = _to_fraction(S)
    n = A.shape[0]
    active = list(range(n))
    r = 0
    while active:
        diag = [(A[i, i], i) for i in active]
        if any(d < 0 for d, _ in diag):
            return False, r
        pos = [i for d, i in diag if d > 0]
        if not pos:
            if any(A[i, j] != 0 for i in active for j in active):
                return False, r
            break
        k = pos[0]
        active.remove(k)
        for i in active:
            for j in active:
                A[i, j] -= A[i, k] * A[k, j] / A[k, k]
        r += 1
    return True, r


def gabriel_type(q: Quiver) -> str:
    psd, r = _psd_rank(symmetric_form(q))
    if psd and r == q.n:
        return DYNKIN
    if psd and r == q.n - 1:
        return EUCLIDEAN
    return WILD


def null_root(q: Quiver) -> tuple[int, ...]:
    """Positive primitive generator of the radical of the symmetrized Euler form."""
    if gabriel_type(q) != EUCLIDEAN:
        raise QuiverError("null root is only defined for euclidean quivers")
    from math import gcd, lcm

    from .xfield import Field, kernel_basis

    K = kernel_basis(Field.rational(), _to_fraction(symmetric_form(q)))
    v = K[:, 0]
    den = lcm(*[Fraction(x).denominator for x in v])
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if ints[0] < 0 or any(x < 0 for x in ints):
        ints = [-x for x in ints]
    return tuple(ints)


def defect(q: Quiver, x) -> int:
    """``<delta, x>``; negative on preprojective, zero on regular, positive on preinjective."""
    if gabriel_type(q) != EUCLIDEAN:
        raise QuiverError("defect requires a euclidean quiver")
    return euler_form(q, null_root(q), x)


def coxeter_transform(q: Quiver, x, power: int = 1) -> tuple[int, ...]:
    v = _vec(q, x)
    if power >= 0:
        C = q.coxeter_matrix
    else:
        inv = _frac_inverse(_to_fraction(q.coxeter_matrix))
        C = np.array([[int(a) for a in row] for row in inv], dtype=np.int64)
    for _ in range(abs(power)):
        v = C @ v
    return tuple(int(a) for a in v)


KRONECKER = Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
A2 = Quiver.from_edges(["1", "2"], [("a", "1", "2")])
