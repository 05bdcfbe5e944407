"""Krull-Schmidt machinery for block-structured module objects.

Works for any :class:`~repdim.category.LinearObject`, so the same code
decomposes H-modules and Lambda-module triples.

Splitting uses Fitting decompositions: an endomorphism ``phi`` whose
characteristic polynomial has several irreducible factors ``g`` splits the
object into the generalized eigen-submodules ``ker g(phi)^N``.  The
resulting inclusion/projection pairs give the orthogonal idempotents
directly.  Local split endomorphism rings are recognised by writing every
basis endomorphism as ``scalar + nilpotent``: over ``F_p`` the scalar is
read off from ``phi^(p^e)`` with ``p^e >= dim``, since the nilpotent part
dies under that Frobenius power.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from .category import (
    CategoryError,
    Morphism,
    coordinates,
    direct_sum,
    identity,
    row_map,
    subobject,
    zero_morphism,
)
from .xfield import Field, image_basis, inverse, kernel_basis, mat_power, rank, solve_right

SPLIT_ATTEMPTS = 80


class NonSplitField(ArithmeticError):
    """An indecomposable summand has ``End/rad`` bigger than the ground field."""

    def __init__(self, module, message: str | None = None):
        self.module = module
        super().__init__(
            message
            or f"endomorphism ring of a summand with block dims {module.block_dims} "
            "is not split over the ground field; retry with a larger prime"
        )


# ---------------------------------------------------------------------------
# small helpers on morphisms viewed as block-diagonal matrices


def _is_nilpotent(f: Morphism) -> bool:
    F = f.field
    for b in f.blocks:
        n = b.shape[0]
        if n and np.any(mat_power(F, b, n) != 0):
            return False
    return True


def _scalar_part(f: Morphism):
    """The scalar ``c`` with ``f - c`` nilpotent, or None if there is none in the field."""
    F = f.field
    n = max(f.src.block_dims, default=0)
    total = f.src.total_dim
    if total == 0:
        return None
    if F.p is None:
        tr = sum((Fraction(np.trace(b)) for b in f.blocks if b.size), Fraction(0))
        c = tr / total
    else:
        e = 1
        while e < n:
            e *= F.p
        c = None
        for b in f.blocks:
            if not b.size:
                continue
            P = mat_power(F, b, e)
            d = P[0, 0]
            if not F.is_zero(F.sub(P, F.scale(d, F.eye(b.shape[0])))):
                return None
            if c is None:
                c = d
            elif c != d:
                return None
    shifted = f - identity(f.src).scale(c)
    return c if _is_nilpotent(shifted) else None


@dataclass
class EndRing:
    """Endomorphism ring with its multiplication table and radical."""

    module: object
    basis: list[Morphism]
    table: np.ndarray  # table[i, j] = coordinates of basis[i] o basis[j]
    radical: list[Morphism]
    local_scalars: list | None = None  # scalar parts of the basis when the ring is local split

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: Morphism) -> np.ndarray:
        c = coordinates(f, self.basis)
        if c is None:
            raise CategoryError("not an endomorphism of this module")
        return c

    def scalar(self, f: Morphism):
        """Residue of ``f`` in ``End/rad = K`` (local split rings only)."""
        if self.local_scalars is None:
            raise CategoryError("scalar part only exists for local split rings")
        F = f.field
        c = self.coordinates(f)
        return F.element(sum(int(x) * int(s) for x, s in zip(c, self.local_scalars))) \
            if F.p is not None else sum((x * s for x, s in zip(c, self.local_scalars)), Fraction(0))


def _span(morphisms: Sequence[Morphism], F: Field, length: int) -> np.ndarray:
    if not morphisms:
        return F.zeros(length, 0)
    return image_basis(F, np.stack([m.flat() for m in morphisms], axis=1))


def _local_data(X) -> tuple[list, list[Morphism]] | None:
    """``(scalars, radical basis)`` when ``End(X)`` is local with residue field K."""
    F = X.field
    basis = X.hom_basis(X)
    scalars = []
    nil = []
    for b in basis:
        c = _scalar_part(b)
        if c is None:
            return None
        scalars.append(c)
        nil.append(b - identity(X).scale(c))
    length = X.total_dim and sum(d * d for d in X.block_dims)
    J = _span(nil, F, length)
    if J.shape[1] != len(basis) - 1:
        return None
    # J must be a nilpotent ideal: J*J inside J and powers reach zero
    jm = [m for m in _columns_to_morphisms(J, X)]
    power = jm
    for _ in range(len(basis) + 1):
        prods = [a @ b for a in jm for b in power]
        P = _span(prods, F, length)
        if P.shape[1] and solve_right(F, J, P) is None:
            return None
        if P.shape[1] == 0:
            return scalars, jm
        power = _columns_to_morphisms(P, X)
    return None


def _columns_to_morphisms(A: np.ndarray, X) -> list[Morphism]:
    out = []
    dims = X.block_dims
    for j in range(A.shape[1]):
        col = A[:, j]
        blocks, off = [], 0
        for d in dims:
            blocks.append(col[off:off + d * d].reshape(d, d))
            off += d * d
        out.append(Morphism(X, X, blocks))
    return out


def is_indecomposable_split(X) -> bool:
    """True iff ``End(X)`` is local with ``End/rad`` equal to the ground field."""
    if X.total_dim == 0:
        raise CategoryError("the zero module is not indecomposable")
    return _cached_local(X) is not None


@lru_cache(maxsize=8192)
def _cached_local(X):
    return _local_data(X)


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class Summand:
    """An indecomposable summand with its split inclusion and projection."""

    module: object
    incl: Morphism
    proj: Morphism

    @property
    def idempotent(self) -> Morphism:
        return self.incl @ self.proj


@dataclass
class Decomposition:
    """``X = sum of summands``; ``classes`` groups summand indices by isomorphism type."""

    module: object
    summands: list[Summand]
    classes: list[list[int]] = field(default_factory=list)

    def grouped(self) -> list[tuple[object, int, list[Summand]]]:
        """``(representative, multiplicity, summands)`` per isomorphism class."""
        return [(self.summands[c[0]].module, len(c), [self.summands[i] for i in c]) for c in self.classes]

    @property
    def idempotents(self) -> list[Morphism]:
        return [s.idempotent for s in self.summands]


def _char_factors(F: Field, phi: Morphism):
    """Distinct irreducible factors of the characteristic polynomial of ``phi``."""
    x = sympy.Symbol("x")
    dom = sympy.GF(F.p) if F.p is not None else sympy.QQ
    total = None
    for b in phi.blocks:
        if not b.size:
            continue
        rows = [[dom(int(v)) if F.p is not None else dom(Fraction(v).numerator, Fraction(v).denominator)
                 for v in row] for row in b.tolist()]
        coeffs = DomainMatrix(rows, b.shape, dom).charpoly()
        poly = sympy.Poly([dom.to_sympy(c) for c in coeffs], x, modulus=F.p) if F.p is not None \
            else sympy.Poly([dom.to_sympy(c) for c in coeffs], x, domain=sympy.QQ)
        total = poly if total is None else total * poly
    if total is None:
        return []
    return [g for g, _ in total.factor_list()[1]]


def _poly_eval(F: Field, g, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    out = F.zeros(n, n)
    for c in g.all_coeffs():
        c = F.element(int(c) % F.p) if F.p is not None else F.element(Fraction(str(c)))
        out = F.add(F.matmul(out, A), F.scale(c, F.eye(n)))
    return out


def _fitting_split(X, phi: Morphism) -> list[Morphism] | None:
    """Inclusions of the primary components of ``phi`` if there are at least two."""
    F = X.field
    factors = _char_factors(F, phi)
    if len(factors) < 2:
        return None
    incls = []
    for g in factors:
        bases = []
        for b in phi.blocks:
            n = b.shape[0]
            if n == 0:
                bases.append(F.zeros(0, 0))
                continue
            G = mat_power(F, _poly_eval(F, g, b), n)
            bases.append(kernel_basis(F, G))
        if sum(bb.shape[1] for bb in bases) == 0:
            continue
        incls.append(subobject(X, bases))
    if len(incls) < 2:
        return None
    return incls


def _projections(X, incls: list[Morphism]) -> list[Morphism]:
    """Projections for an internal direct sum given by inclusions spanning ``X``."""
    F = X.field
    projs_blocks = [[] for _ in incls]
    for b, d in enumerate(X.block_dims):
        B = np.concatenate([i.blocks[b] for i in incls], axis=1) if d else F.zeros(0, 0)
        Binv = inverse(F, B) if d else F.zeros(0, 0)
        off = 0
        for k, inc in enumerate(incls):
            w = inc.blocks[b].shape[1]
            projs_blocks[k].append(Binv[off:off + w, :] if d else F.zeros(0, 0))
            off += w
    return [Morphism(X, inc.src, pb) for inc, pb in zip(incls, projs_blocks)]


def _split_pieces(X, rng: np.random.Generator) -> list[Summand]:
    """Indecomposable pieces of ``X`` with inclusions/projections relative to ``X``."""
    if X.total_dim == 0:
        return []
    if is_indecomposable_split(X):
        return [Summand(X, identity(X), identity(X))]
    F = X.field
    basis = X.hom_basis(X)
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if len(candidates) > 2 * len(basis) + 10:
                break
            candidates.append(basis[i] + basis[j])
    tries = 0
    while True:
        if candidates:
            phi = candidates.pop(0)
        else:
            tries += 1
            if tries > SPLIT_ATTEMPTS:
                raise NonSplitField(X)
            coeffs = F.random_matrix(rng, 1, len(basis))[0]
            phi = _combine(basis, coeffs, X)
        incls = _fitting_split(X, phi)
        if incls is None:
            continue
        projs = _projections(X, incls)
        out: list[Summand] = []
        for inc, pr in zip(incls, projs):
            for piece in _split_pieces(inc.src, rng):
                out.append(Summand(piece.module, inc @ piece.incl, piece.proj @ pr))
        return out


def _combine(basis, coeffs, X) -> Morphism:
    F = X.field
    out = Morphism(X, X, [F.zeros(d, d) for d in X.block_dims])
    for c, m in zip(coeffs, basis):
        if c != 0:
            out = out + m.scale(c)
    return out


def is_isomorphic_indec(U, V) -> bool:
    """Isomorphism test for split indecomposables: some ``g o f`` is invertible."""
    if U.block_dims != V.block_dims:
        return False
    H1 = U.hom_basis(V)
    if not H1:
        return False
    H2 = V.hom_basis(U)
    for f in H1:
        if f.is_iso():
            return True
    for f in H1:
        for g in H2:
            if (g @ f).is_iso():
                return True
    return False


def find_isomorphism(U, V) -> Morphism | None:
    """An isomorphism ``U -> V`` between split indecomposables, or None."""
    if U.block_dims != V.block_dims:
        return None
    H1 = U.hom_basis(V)
    for f in H1:
        if f.is_iso():
            return f
    for i, f in enumerate(H1):
        for g in H1[i + 1:]:
            s = f + g
            if s.is_iso():
                return s
    H2 = V.hom_basis(U)
    for f in H1:
        for g in H2:
            if (g @ f).is_iso():
                # g o f invertible makes f a split mono between equal-dimensional objects
                return f
    return None


def decompose(X, seed: int = 0) -> Decomposition:
    """Krull-Schmidt decomposition of ``X`` into split indecomposables.

    Raises :class:`NonSplitField` when some summand has a non-split
    endomorphism ring.
    """
    rng = np.random.default_rng(seed)
    pieces = _split_pieces(X, rng)
    classes: list[list[int]] = []
    for i, s in enumerate(pieces):
        for c in classes:
            if is_isomorphic_indec(pieces[c[0]].module, s.module):
                c.append(i)
                break
        else:
            classes.append([i])
    return Decomposition(X, pieces, classes)


def is_isomorphic(X, Y) -> bool:
    """Isomorphism test via Krull-Schmidt."""
    if X.block_dims != Y.block_dims:
        return False
    if X.total_dim == 0:
        return True
    dx, dy = decompose(X), decompose(Y)
    gx = [(m, n) for m, n, _ in dx.grouped()]
    gy = [(m, n) for m, n, _ in dy.grouped()]
    if len(gx) != len(gy):
        return False
    used = [False] * len(gy)
    for m, n in gx:
        for k, (m2, n2) in enumerate(gy):
            if not used[k] and n == n2 and is_isomorphic_indec(m, m2):
                used[k] = True
                break
        else:
            return False
    return True


def index_in(U, reps: Sequence) -> int | None:
    """Position of the first entry of ``reps`` isomorphic to the indecomposable ``U``."""
    for k, R in enumerate(reps):
        if is_isomorphic_indec(U, R):
            return k
    return None


def in_add(X, reps: Sequence) -> bool:
    """Whether every indecomposable summand of ``X`` is isomorphic to one of ``reps``."""
    if X.total_dim == 0:
        return True
    return all(index_in(s.module, reps) is not None for s in decompose(X).summands)


# ---------------------------------------------------------------------------
# endomorphism rings and radicals


def end_ring(X) -> EndRing:
    F = X.field
    basis = X.hom_basis(X)
    d = len(basis)
    table = np.empty((d, d), dtype=object)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            table[i, j] = coordinates(a @ b, basis)
    local = _cached_local(X) if X.total_dim else None
    if local is not None:
        scalars, rad = local
        return EndRing(X, basis, table, rad, scalars)
    rad = hom_radical(X, X)
    return EndRing(X, basis, table, rad, None)


def hom_radical(X, Y) -> list[Morphism]:
    """Basis of ``rad(X, Y)``: morphisms with no isomorphism between summands."""
    F = X.field
    basis = X.hom_basis(Y)
    if not basis:
        return []
    dx, dy = decompose(X), decompose(Y)
    functionals = []
    for sa in dx.summands:
        for sb in dy.summands:
            theta = find_isomorphism(sb.module, sa.module)
            if theta is None:
                continue
            er = _cached_local(sa.module)
            if er is None:
                raise NonSplitField(sa.module)
            scalars, _ = er
            ebasis = sa.module.hom_basis(sa.module)
            row = []
            for phi in basis:
                comp = theta @ (sb.proj @ phi @ sa.incl)
                c = coordinates(comp, ebasis)
                row.append(sum((x * s for x, s in zip(c, scalars)), F.element(0)))
            functionals.append(row)
    if not functionals:
        return list(basis)
    A = F.array(functionals)
    K = kernel_basis(F, A)
    out = []
    for j in range(K.shape[1]):
        out.append(_combine(basis, K[:, j], X) if X is Y else _combine_hom(basis, K[:, j]))
    return out


def _combine_hom(basis, coeffs) -> Morphism:
    out = zero_morphism(basis[0].src, basis[0].tgt)
    for c, m in zip(coeffs, basis):
        if c != 0:
            out = out + m.scale(c)
    return out


def in_radical(f: Morphism) -> bool:
    rad = hom_radical(f.src, f.tgt)
    F = f.field
    if f.is_zero():
        return True
    return coordinates(f, rad) is not None


# ---------------------------------------------------------------------------
# minimalisation


@dataclass
class DecomposedMap:
    """A morphism whose domain (or codomain) is an explicit sum of indecomposables.

    ``labels`` tag each summand (e.g. the index of the add(N) generator it is a copy of).
    """

    map: Morphism
    summands: list
    incls: list[Morphism]
    projs: list[Morphism]
    labels: list

    @property
    def obj(self):
        return self.map.src


def _assemble_domain(summands, labels, comps, target):
    if not summands:
        from .category import zero_morphism as _zm

        Z = target.__class__.zero_like(target)
        return DecomposedMap(_zm(Z, target), [], [], [], [])
    S, incls, projs = direct_sum(summands)
    f = row_map(target, comps, S, projs)
    return DecomposedMap(f, list(summands), incls, projs, list(labels))


def right_minimalize(dm: DecomposedMap) -> DecomposedMap:
    """Strip domain summands whose component factors through the other components."""
    comps = [dm.map @ i for i in dm.incls]
    summands = list(dm.summands)
    labels = list(dm.labels)
    target = dm.map.tgt
    changed = True
    while changed:
        changed = False
        for k in range(len(summands) - 1, -1, -1):
            if comps[k].is_zero():
                del comps[k], summands[k], labels[k]
                changed = True
                continue
            others = [c for i, c in enumerate(comps) if i != k]
            if not others:
                continue
            if _factors_through_row(comps[k], others):
                del comps[k], summands[k], labels[k]
                changed = True
    return _assemble_domain(summands, labels, comps, target)


def _factors_through_row(h: Morphism, maps: list[Morphism]) -> bool:
    F = h.field
    cols = []
    for m in maps:
        for b in h.src.hom_basis(m.src):
            cols.append((m @ b).flat())
    if not cols:
        return h.is_zero()
    A = np.stack(cols, axis=1)
    return solve_right(F, A, h.flat().reshape(-1, 1)) is not None


def _factors_through_col(h: Morphism, maps: list[Morphism]) -> bool:
    F = h.field
    cols = []
    for m in maps:
        for b in m.tgt.hom_basis(h.tgt):
            cols.append((b @ m).flat())
    if not cols:
        return h.is_zero()
    A = np.stack(cols, axis=1)
    return solve_right(F, A, h.flat().reshape(-1, 1)) is not None


def left_minimalize(dm: DecomposedMap) -> DecomposedMap:
    """Dual of :func:`right_minimalize` for a map into an explicit sum."""
    from .category import column_map

    comps = [p @ dm.map for p in dm.projs]
    summands = list(dm.summands)
    labels = list(dm.labels)
    source = dm.map.src
    changed = True
    while changed:
        changed = False
        for k in range(len(summands) - 1, -1, -1):
            if comps[k].is_zero():
                del comps[k], summands[k], labels[k]
                changed = True
                continue
            others = [c for i, c in enumerate(comps) if i != k]
            if not others:
                continue
            if _factors_through_col(comps[k], others):
                del comps[k], summands[k], labels[k]
                changed = True
    if not summands:
        Z = source.__class__.zero_like(source)
        return DecomposedMap(zero_morphism(source, Z), [], [], [], [])
    S, incls, projs = direct_sum(summands)
    f = column_map(source, comps, S, incls)
    return DecomposedMap(f, summands, incls, projs, labels)


def is_right_minimal(f: Morphism) -> bool:
    """Every ``g`` with ``f o g = f`` is an automorphism: ``{n : f o n = 0}`` lies in rad End."""
    A = f.src
    if A.total_dim == 0:
        return True
    basis = A.hom_basis(A)
    F = f.field
    comp = [f @ b for b in basis]
    K = kernel_basis(F, np.stack([c.flat() for c in comp], axis=1)) if comp and comp[0].flat().size \
        else F.eye(len(basis))
    rad = hom_radical(A, A)
    for j in range(K.shape[1]):
        n = _combine(basis, K[:, j], A)
        if not n.is_zero() and coordinates(n, rad) is None:
            return False
    return True


def is_left_minimal(f: Morphism) -> bool:
    A = f.tgt
    if A.total_dim == 0:
        return True
    basis = A.hom_basis(A)
    F = f.field
    comp = [b @ f for b in basis]
    K = kernel_basis(F, np.stack([c.flat() for c in comp], axis=1)) if comp and comp[0].flat().size \
        else F.eye(len(basis))
    rad = hom_radical(A, A)
    for j in range(K.shape[1]):
        n = _combine(basis, K[:, j], A)
        if not n.is_zero() and coordinates(n, rad) is None:
            return False
    return True
