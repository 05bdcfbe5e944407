"""Shared machinery for the two module categories in play.

Both H-modules (quiver representations) and Lambda-modules (triples) are
stored as a tuple of finite-dimensional vector spaces ("blocks") with some
structure maps.  A morphism is one matrix per block.  Everything in this
module only needs the block dimensions plus three hooks provided by the
concrete class:

* ``hom_basis(other)``   basis of the morphism space,
* ``_sub(bases)``        the subobject carried by invariant block subspaces,
* ``_quot(Q, L)``        the quotient given block projections and sections,

and the class method ``_direct_sum(objs)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .xfield import (
    Field,
    image_basis,
    kernel_basis,
    left_inverse,
    quotient_map,
    rank,
    solve_right,
)


class CategoryError(ValueError):
    pass


class LinearObject:
    """Mixin for block-structured module objects."""

    field: Field

    @property
    def block_dims(self) -> tuple[int, ...]:
        raise NotImplementedError

    @property
    def total_dim(self) -> int:
        return sum(self.block_dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def hom_basis(self, other) -> list["Morphism"]:
        return list(_cached_hom(self, other))

    def _hom_basis(self, other) -> list["Morphism"]:
        raise NotImplementedError

    def _sub(self, bases: Sequence[np.ndarray]):
        raise NotImplementedError

    def _quot(self, Q: Sequence[np.ndarray], L: Sequence[np.ndarray]):
        raise NotImplementedError

    @classmethod
    def _direct_sum(cls, objs):
        raise NotImplementedError

    def _check_morphism(self, other, blocks) -> bool:
        raise NotImplementedError


@lru_cache(maxsize=8192)
def _cached_hom(X, Y) -> tuple["Morphism", ...]:
    if X.field != Y.field:
        raise CategoryError("objects live over different fields")
    return tuple(X._hom_basis(Y))


class Morphism:
    """A family of block matrices ``src -> tgt``; ``g @ f`` is composition ``g o f``."""

    __slots__ = ("src", "tgt", "blocks")

    def __init__(self, src, tgt, blocks, check: bool = False):
        self.src = src
        self.tgt = tgt
        self.blocks = tuple(blocks)
        if len(self.blocks) != len(src.block_dims):
            raise CategoryError("wrong number of blocks")
        for b, (s, t) in enumerate(zip(src.block_dims, tgt.block_dims)):
            if self.blocks[b].shape != (t, s):
                raise CategoryError(f"block {b} has shape {self.blocks[b].shape}, expected {(t, s)}")
        if check and not self.is_valid():
            raise CategoryError("matrices do not define a morphism")

    @property
    def field(self) -> Field:
        return self.src.field

    def is_valid(self) -> bool:
        return self.src._check_morphism(self.tgt, self.blocks)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.tgt is not self.src and other.tgt.block_dims != self.src.block_dims:
            raise CategoryError("composition of incompatible morphisms")
        F = self.field
        return Morphism(other.src, self.tgt, [F.matmul(a, b) for a, b in zip(self.blocks, other.blocks)])

    def __add__(self, other: "Morphism") -> "Morphism":
        F = self.field
        return Morphism(self.src, self.tgt, [F.add(a, b) for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "Morphism") -> "Morphism":
        F = self.field
        return Morphism(self.src, self.tgt, [F.sub(a, b) for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c) -> "Morphism":
        F = self.field
        return Morphism(self.src, self.tgt, [F.scale(c, a) for a in self.blocks])

    def flat(self) -> np.ndarray:
        F = self.field
        parts = [b.reshape(-1) for b in self.blocks if b.size]
        if not parts:
            return F.zeros(0, 1)[:, 0]
        return np.concatenate(parts)

    def is_zero(self) -> bool:
        return all(not np.any(b != 0) for b in self.blocks)

    def is_mono(self) -> bool:
        F = self.field
        return all(rank(F, b) == b.shape[1] for b in self.blocks)

    def is_epi(self) -> bool:
        F = self.field
        return all(rank(F, b) == b.shape[0] for b in self.blocks)

    def is_iso(self) -> bool:
        return self.src.block_dims == self.tgt.block_dims and self.is_mono()

    def inverse(self) -> "Morphism":
        from .xfield import inverse

        F = self.field
        return Morphism(self.tgt, self.src, [inverse(F, b) for b in self.blocks])

    def __repr__(self):
        return f"Morphism({self.src.block_dims} -> {self.tgt.block_dims})"


# ---------------------------------------------------------------------------
# linear systems for morphism spaces


class IntertwinerSystem:
    """Collects linear conditions on the unknown block matrices of a morphism.

    Unknown block ``b`` is a ``tgt_dims[b] x src_dims[b]`` matrix stored
    row-major.  ``add(eq, b, C)`` adds ``C @ vec(phi_b)`` to equation ``eq``.
    """

    def __init__(self, F: Field, src_dims: Sequence[int], tgt_dims: Sequence[int]):
        self.F = F
        self.src_dims = tuple(src_dims)
        self.tgt_dims = tuple(tgt_dims)
        self.offsets = np.cumsum([0] + [s * t for s, t in zip(src_dims, tgt_dims)])
        self.n = int(self.offsets[-1])
        self.eqs: dict = {}

    def add(self, eq, b: int, C: np.ndarray):
        F = self.F
        if eq not in self.eqs:
            self.eqs[eq] = F.zeros(C.shape[0], self.n)
        lo, hi = self.offsets[b], self.offsets[b + 1]
        if hi > lo and C.shape[0]:
            self.eqs[eq][:, lo:hi] = F.add(self.eqs[eq][:, lo:hi], C)

    def add_lr(self, eq, b: int, L: np.ndarray, R: np.ndarray, sign: int = 1):
        """Add ``sign * L @ phi_b @ R`` (row-major vectorised) to equation ``eq``."""
        F = self.F
        C = F.kron(L, R.T)
        if sign != 1:
            C = F.scale(sign, C)
        self.add(eq, b, C)

    def solve(self, src, tgt) -> list[Morphism]:
        F = self.F
        if self.n == 0:
            return []
        rows = [m for m in self.eqs.values() if m.shape[0]]
        A = np.concatenate(rows, axis=0) if rows else F.zeros(0, self.n)
        K = kernel_basis(F, A)
        out = []
        for j in range(K.shape[1]):
            blocks = []
            for b, (s, t) in enumerate(zip(self.src_dims, self.tgt_dims)):
                blocks.append(K[self.offsets[b]:self.offsets[b + 1], j].reshape(t, s))
            out.append(Morphism(src, tgt, blocks))
        return out


# ---------------------------------------------------------------------------
# generic constructions


def identity(X) -> Morphism:
    F = X.field
    return Morphism(X, X, [F.eye(d) for d in X.block_dims])


def zero_morphism(X, Y) -> Morphism:
    F = X.field
    return Morphism(X, Y, [F.zeros(t, s) for s, t in zip(X.block_dims, Y.block_dims)])


def combination(basis: Sequence[Morphism], coeffs, src=None, tgt=None) -> Morphism:
    if not basis:
        return zero_morphism(src, tgt)
    F = basis[0].field
    out = zero_morphism(basis[0].src, basis[0].tgt)
    blocks = [b.copy() for b in out.blocks]
    for c, m in zip(coeffs, basis):
        c = F.element(c)
        if c == 0:
            continue
        for i, blk in enumerate(m.blocks):
            blocks[i] = F.add(blocks[i], F.reduce(c * blk))
    return Morphism(out.src, out.tgt, blocks)


def flat_matrix(morphisms: Sequence[Morphism], F: Field, length: int) -> np.ndarray:
    if not morphisms:
        return F.zeros(length, 0)
    return np.stack([m.flat() for m in morphisms], axis=1)


def coordinates(f: Morphism, basis: Sequence[Morphism]) -> np.ndarray | None:
    """Coefficients of ``f`` in ``basis`` or None when ``f`` is outside the span."""
    F = f.field
    n = f.flat().shape[0]
    A = flat_matrix(basis, F, n)
    x = solve_right(F, A, f.flat().reshape(-1, 1))
    return None if x is None else x[:, 0]


def subobject(X, bases: Sequence[np.ndarray]) -> Morphism:
    """Inclusion of the subobject spanned blockwise by the columns of ``bases``."""
    F = X.field
    bases = [F.array(b) if b.size else F.zeros(d, b.shape[1] if b.ndim == 2 else 0)
             for b, d in zip(bases, X.block_dims)]
    S = X._sub(bases)
    return Morphism(S, X, bases)


def quotient(X, bases: Sequence[np.ndarray]) -> Morphism:
    """Projection onto ``X / sub`` for the invariant block subspaces ``bases``."""
    F = X.field
    QL = [quotient_map(F, b) for b in bases]
    Q = [q for q, _ in QL]
    L = [l for _, l in QL]
    C = X._quot(Q, L)
    return Morphism(X, C, Q)


def kernel(f: Morphism) -> Morphism:
    F = f.field
    return subobject(f.src, [kernel_basis(F, b) for b in f.blocks])


def image(f: Morphism) -> tuple[Morphism, Morphism]:
    """``(incl: Im f -> tgt, corestriction: src -> Im f)``."""
    F = f.field
    incl = subobject(f.tgt, [image_basis(F, b) for b in f.blocks])
    core = [F.matmul(left_inverse(F, ib), b) for ib, b in zip(incl.blocks, f.blocks)]
    return incl, Morphism(f.src, incl.src, core)


def cokernel(f: Morphism) -> Morphism:
    F = f.field
    return quotient(f.tgt, [image_basis(F, b) for b in f.blocks])


def direct_sum(objs: Sequence) -> tuple[object, list[Morphism], list[Morphism]]:
    """``(S, inclusions, projections)`` for a nonempty list of objects."""
    if not objs:
        raise CategoryError("direct sum of an empty list needs a template; use direct_sum_like")
    cls = type(objs[0])
    S = cls._direct_sum(list(objs))
    F = S.field
    incls, projs = [], []
    offsets = [0] * len(S.block_dims)
    for X in objs:
        ib, pb = [], []
        for b, (d, D) in enumerate(zip(X.block_dims, S.block_dims)):
            inc = F.zeros(D, d)
            for i in range(d):
                inc[offsets[b] + i, i] = F.element(1)
            ib.append(inc)
            pb.append(inc.T.copy())
            offsets[b] += d
        incls.append(Morphism(X, S, ib))
        projs.append(Morphism(S, X, pb))
    return S, incls, projs


def row_map(targets_tgt, maps: Sequence[Morphism], S_src=None, projs_src=None) -> Morphism:
    """``(f_1 ... f_k): X_1 + ... + X_k -> Y`` from maps ``f_i: X_i -> Y``."""
    if S_src is None:
        S_src, _, projs_src = direct_sum([m.src for m in maps])
    F = targets_tgt.field
    blocks = [F.zeros(t, s) for s, t in zip(S_src.block_dims, targets_tgt.block_dims)]
    for m, p in zip(maps, projs_src):
        for b in range(len(blocks)):
            blocks[b] = F.add(blocks[b], F.matmul(m.blocks[b], p.blocks[b]))
    return Morphism(S_src, targets_tgt, blocks)


def column_map(source, maps: Sequence[Morphism], S_tgt=None, incls_tgt=None) -> Morphism:
    """``(f_1, ..., f_k)^T: X -> Y_1 + ... + Y_k`` from maps ``f_i: X -> Y_i``."""
    if S_tgt is None:
        S_tgt, incls_tgt, _ = direct_sum([m.tgt for m in maps])
    F = source.field
    blocks = [F.zeros(t, s) for s, t in zip(source.block_dims, S_tgt.block_dims)]
    for m, i in zip(maps, incls_tgt):
        for b in range(len(blocks)):
            blocks[b] = F.add(blocks[b], F.matmul(i.blocks[b], m.blocks[b]))
    return Morphism(source, S_tgt, blocks)


def factor_through(g: Morphism, h: Morphism) -> Morphism | None:
    """Some ``f`` with ``g o f = h`` (``g: Y -> Z``, ``h: X -> Z``), or None."""
    F = g.field
    basis = h.src.hom_basis(g.src)
    if not basis:
        return zero_morphism(h.src, g.src) if h.is_zero() else None
    comp = [g @ b for b in basis]
    c = coordinates(h, comp)
    if c is None:
        return None
    return combination(basis, c)


def cofactor_through(g: Morphism, h: Morphism) -> Morphism | None:
    """Some ``f`` with ``f o g = h`` (``g: X -> Y``, ``h: X -> Z``), or None."""
    basis = g.tgt.hom_basis(h.tgt)
    if not basis:
        return zero_morphism(g.tgt, h.tgt) if h.is_zero() else None
    comp = [b @ g for b in basis]
    c = coordinates(h, comp)
    if c is None:
        return None
    return combination(basis, c)


def restrict_to_sub(f: Morphism, incl: Morphism) -> Morphism:
    """Corestrict ``f: X -> Y`` through a mono ``incl: S -> Y`` containing its image."""
    F = f.field
    blocks = []
    for fb, ib in zip(f.blocks, incl.blocks):
        x = solve_right(F, ib, fb)
        if x is None:
            raise CategoryError("image not contained in the subobject")
        blocks.append(x)
    return Morphism(f.src, incl.src, blocks)
