"""The category H-mod of representations of an acyclic quiver.

Covers morphism spaces, Ext^1, projective presentations and covers,
duality, the Auslander-Reiten translate (through the Nakayama functor),
injective envelopes, and catalogs of indecomposables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import krull
from .category import (
    CategoryError,
    IntertwinerSystem,
    LinearObject,
    Morphism,
    cokernel,
    coordinates,
    direct_sum,
    factor_through,
    identity,
    kernel,
    restrict_to_sub,
    row_map,
    zero_morphism,
)
from .quiver import DYNKIN, EUCLIDEAN, WILD, Quiver, coxeter_transform, defect, gabriel_type, null_root
from .xfield import DEFAULT_FIELD, Field, complement_basis, image_basis, solve_right

PROJECTIVE = "projective"
INJECTIVE = "injective"
PREPROJECTIVE = "preprojective"
REGULAR = "regular"
PREINJECTIVE = "preinjective"

BRUTE_FORCE_LIMIT = 20000


class Representation(LinearObject):
    """A representation: one vector space per vertex and one matrix per arrow.

    The matrix of an arrow ``a: v -> w`` has shape ``dim[w] x dim[v]``.
    """

    def __init__(self, quiver: Quiver, dim, matrices: Mapping | None = None,
                 field: Field = DEFAULT_FIELD, label: str | None = None):
        self.quiver = quiver
        self.field = field
        self.label = label
        if isinstance(dim, Mapping):
            dim = [int(dim.get(v, 0)) for v in quiver.vertices]
        self.dim = tuple(int(d) for d in dim)
        if len(self.dim) != quiver.n or any(d < 0 for d in self.dim):
            raise CategoryError(f"bad dimension vector {self.dim}")
        matrices = dict(matrices or {})
        mats = {}
        for a in quiver.arrows:
            rows, cols = self.dim_at(a.target), self.dim_at(a.source)
            if a.name in matrices:
                m = field.array(matrices[a.name]) if np.size(matrices[a.name]) else field.zeros(rows, cols)
                m = m.reshape(rows, cols) if m.size == rows * cols else m
            else:
                m = field.zeros(rows, cols)
            if m.shape != (rows, cols):
                raise CategoryError(f"arrow {a.name}: matrix shape {m.shape}, expected {(rows, cols)}")
            mats[a.name] = m
        unknown = set(matrices) - {a.name for a in quiver.arrows}
        if unknown:
            raise CategoryError(f"matrices for unknown arrows {sorted(unknown)}")
        self.mats = mats

    def dim_at(self, v: str) -> int:
        return self.dim[self.quiver.index(v)]

    @property
    def block_dims(self) -> tuple[int, ...]:
        return self.dim

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"<Rep{tag} dim={self.dim}>"

    def relabel(self, label: str) -> "Representation":
        self.label = label
        return self

    @classmethod
    def zero_like(cls, X: "Representation") -> "Representation":
        return cls(X.quiver, [0] * X.quiver.n, field=X.field)

    # -- hooks for category.py ----------------------------------------------
    def _hom_basis(self, other: "Representation") -> list[Morphism]:
        if self.quiver != other.quiver:
            raise CategoryError("representations of different quivers")
        F = self.field
        q = self.quiver
        sys = IntertwinerSystem(F, self.dim, other.dim)
        for a in q.arrows:
            v, w = q.index(a.source), q.index(a.target)
            sys.add_lr(a.name, w, F.eye(other.dim[w]), self.mats[a.name])
            sys.add_lr(a.name, v, other.mats[a.name], F.eye(self.dim[v]), sign=-1)
        return sys.solve(self, other)

    def _check_morphism(self, other, blocks) -> bool:
        F = self.field
        q = self.quiver
        for a in q.arrows:
            v, w = q.index(a.source), q.index(a.target)
            lhs = F.matmul(blocks[w], self.mats[a.name])
            rhs = F.matmul(other.mats[a.name], blocks[v])
            if np.any(lhs != rhs):
                return False
        return True

    def _sub(self, bases):
        F = self.field
        q = self.quiver
        mats = {}
        for a in q.arrows:
            v, w = q.index(a.source), q.index(a.target)
            img = F.matmul(self.mats[a.name], bases[v])
            x = solve_right(F, bases[w], img)
            if x is None:
                raise CategoryError("subspaces are not invariant")
            mats[a.name] = x
        return Representation(q, [b.shape[1] for b in bases], mats, F)

    def _quot(self, Q, L):
        F = self.field
        q = self.quiver
        mats = {}
        for a in q.arrows:
            v, w = q.index(a.source), q.index(a.target)
            mats[a.name] = F.matmul(F.matmul(Q[w], self.mats[a.name]), L[v])
        return Representation(q, [x.shape[0] for x in Q], mats, F)

    @classmethod
    def _direct_sum(cls, objs):
        X0 = objs[0]
        F = X0.field
        q = X0.quiver
        dim = [sum(X.dim[i] for X in objs) for i in range(q.n)]
        mats = {}
        for a in q.arrows:
            rows, cols = dim[q.index(a.target)], dim[q.index(a.source)]
            m = F.zeros(rows, cols)
            r = c = 0
            for X in objs:
                blk = X.mats[a.name]
                m[r:r + blk.shape[0], c:c + blk.shape[1]] = blk
                r += blk.shape[0]
                c += blk.shape[1]
            mats[a.name] = m
        return cls(q, dim, mats, F)

    # -- serialisation ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": {v: d for v, d in zip(self.quiver.vertices, self.dim)},
            "matrices": {a.name: [[_entry_json(x) for x in row] for row in self.mats[a.name].tolist()]
                         for a in self.quiver.arrows},
        }

    @classmethod
    def from_json(cls, quiver: Quiver, data: Mapping, field: Field = DEFAULT_FIELD,
                  label: str | None = None) -> "Representation":
        dim = data.get("dim", {})
        if isinstance(dim, Mapping):
            unknown = set(dim) - set(quiver.vertices)
            if unknown:
                raise CategoryError(f"dimension given for unknown vertices {sorted(unknown)}")
        return cls(quiver, dim, data.get("matrices", {}), field, label)


def _entry_json(x):
    from fractions import Fraction

    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def path_matrix(X: Representation, path: Sequence[str], start: str) -> np.ndarray:
    """Matrix of a path (tuple of arrow names, traversal order) acting from vertex ``start``."""
    F = X.field
    m = F.eye(X.dim_at(start))
    for name in path:
        m = F.matmul(X.mats[name], m)
    return m


# ---------------------------------------------------------------------------
# projectives, injectives, simples, duality


@lru_cache(maxsize=None)
def projective_at(q: Quiver, v: str, F: Field = DEFAULT_FIELD) -> Representation:
    """``P(v)``: at ``w`` the span of paths ``v -> w``."""
    dims = [len(q.paths(v, w)) for w in q.vertices]
    mats = {}
    for a in q.arrows:
        src_paths = q.paths(v, a.source)
        tgt_paths = q.paths(v, a.target)
        m = F.zeros(len(tgt_paths), len(src_paths))
        for j, p in enumerate(src_paths):
            m[tgt_paths.index(p + (a.name,)), j] = F.element(1)
        mats[a.name] = m
    return Representation(q, dims, mats, F, label=f"P({v})")


@lru_cache(maxsize=None)
def injective_at(q: Quiver, v: str, F: Field = DEFAULT_FIELD) -> Representation:
    """``I(v) = D P_op(v)``: at ``w`` the dual of the span of paths ``w -> v``."""
    I = dual_D(projective_at(q.opposite(), v, F))
    I.label = f"I({v})"
    return I


@lru_cache(maxsize=None)
def simple_at(q: Quiver, v: str, F: Field = DEFAULT_FIELD) -> Representation:
    return Representation(q, [1 if w == v else 0 for w in q.vertices], {}, F, label=f"S({v})")


def dual_D(X: Representation) -> Representation:
    """Vector-space dual: a representation of the opposite quiver."""
    qo = X.quiver.opposite()
    mats = {a.name: X.mats[a.name].T.copy() for a in X.quiver.arrows}
    label = f"D{X.label}" if X.label else None
    return Representation(qo, X.dim, mats, X.field, label)


def dual_morphism(f: Morphism, DX=None, DY=None) -> Morphism:
    """``D f: D Y -> D X``."""
    DX = DX if DX is not None else dual_D(f.src)
    DY = DY if DY is not None else dual_D(f.tgt)
    return Morphism(DY, DX, [b.T.copy() for b in f.blocks])


def hom_basis(X: Representation, Y: Representation) -> list[Morphism]:
    return X.hom_basis(Y)


def is_projective(X: Representation) -> bool:
    pres = proj_presentation(X)
    return pres.p1.src.total_dim == 0


def is_injective(X: Representation) -> bool:
    return is_projective(dual_D(X))


# ---------------------------------------------------------------------------
# projective covers and presentations


@dataclass
class ProjectiveCover:
    """``cover: P -> X`` with ``P`` the explicit sum of ``P(v)`` for ``v`` in ``vertices``."""

    cover: Morphism
    vertices: list[str]
    incls: list[Morphism]
    projs: list[Morphism]

    @property
    def P(self) -> Representation:
        return self.cover.src


def radical_subspaces(X: Representation) -> list[np.ndarray]:
    F = X.field
    q = X.quiver
    out = []
    for w in q.vertices:
        cols = [X.mats[a.name] for a in q.arrows if a.target == w]
        A = np.concatenate(cols, axis=1) if cols else F.zeros(X.dim_at(w), 0)
        out.append(image_basis(F, A))
    return out


def top_multiplicities(X: Representation) -> dict[str, int]:
    rad = radical_subspaces(X)
    return {v: X.dim_at(v) - rad[i].shape[1] for i, v in enumerate(X.quiver.vertices)}


def _map_from_projective(X: Representation, v: str, x: np.ndarray) -> Morphism:
    """The morphism ``P(v) -> X`` sending the trivial path to ``x``."""
    q = X.quiver
    F = X.field
    P = projective_at(q, v, F)
    blocks = []
    for w in q.vertices:
        cols = [F.matmul(path_matrix(X, p, v), x.reshape(-1, 1)) for p in q.paths(v, w)]
        blocks.append(np.concatenate(cols, axis=1) if cols else F.zeros(X.dim_at(w), 0))
    return Morphism(P, X, blocks)


def projective_cover(X: Representation) -> ProjectiveCover:
    """Projective cover built from a basis of ``top X = X / rad X``."""
    F = X.field
    q = X.quiver
    rad = radical_subspaces(X)
    maps, verts = [], []
    for i, v in enumerate(q.vertices):
        C = complement_basis(F, rad[i]) if X.dim[i] else F.zeros(0, 0)
        for j in range(C.shape[1]):
            maps.append(_map_from_projective(X, v, C[:, j]))
            verts.append(v)
    if not maps:
        Z = Representation.zero_like(X)
        return ProjectiveCover(zero_morphism(Z, X), [], [], [])
    P, incls, projs = direct_sum([m.src for m in maps])
    return ProjectiveCover(row_map(X, maps, P, projs), verts, incls, projs)


@dataclass
class Presentation:
    """Minimal projective presentation ``0 -> P1 --p1--> P0 --p0--> X -> 0``."""

    p1: Morphism
    p0: Morphism
    cover0: ProjectiveCover
    cover1: ProjectiveCover


def proj_presentation(X: Representation) -> Presentation:
    c0 = projective_cover(X)
    k = kernel(c0.cover)
    c1 = projective_cover(k.src)
    if not c1.cover.is_iso():
        raise CategoryError("kernel of a projective cover is not projective; quiver algebra not hereditary?")
    return Presentation(k @ c1.cover, c0.cover, c0, c1)


def syzygy(X: Representation) -> Morphism:
    """Inclusion ``Omega^1 X -> P0`` of the kernel of the projective cover."""
    return kernel(projective_cover(X).cover)


# ---------------------------------------------------------------------------
# Ext^1


def ext1_dim(X: Representation, Y: Representation) -> int:
    """``dim coker(Hom(P0, Y) -> Hom(P1, Y))`` from a minimal projective presentation."""
    from .xfield import rank

    F = X.field
    pres = proj_presentation(X)
    H1 = pres.p1.src.hom_basis(Y)
    if not H1:
        return 0
    H0 = pres.p0.src.hom_basis(Y)
    cols = []
    for g in H0:
        c = coordinates(g @ pres.p1, H1)
        cols.append(c)
    if not cols:
        return len(H1)
    return len(H1) - rank(F, np.stack(cols, axis=1))


# ---------------------------------------------------------------------------
# Nakayama functor and AR translate


@lru_cache(maxsize=None)
def _arrow_map(q: Quiver, name: str, F: Field) -> Morphism:
    """``P(w) -> P(v)`` for ``a: v -> w``, sending the trivial path at ``w`` to ``a``."""
    a = q.arrow(name)
    Pv = projective_at(q, a.source, F)
    x = F.zeros(Pv.dim_at(a.target), 1)
    x[q.paths(a.source, a.target).index((name,)), 0] = F.element(1)
    return _map_from_projective(Pv, a.target, x[:, 0])


def nakayama(X: Representation) -> Representation:
    """``nu X = D Hom_H(X, H)``."""
    q = X.quiver
    F = X.field
    bases = {u: X.hom_basis(projective_at(q, u, F)) for u in q.vertices}
    dims = [len(bases[u]) for u in q.vertices]
    mats = {}
    for a in q.arrows:
        rho = _arrow_map(q, a.name, F)
        cols = [coordinates(rho @ g, bases[a.source]) for g in bases[a.target]]
        A = np.stack(cols, axis=1) if cols else F.zeros(len(bases[a.source]), 0)
        if not cols:
            A = F.zeros(len(bases[a.source]), 0)
        mats[a.name] = A.T.copy()
    return Representation(q, dims, mats, F)


def nakayama_morphism(f: Morphism, nuX: Representation, nuY: Representation) -> Morphism:
    """``nu f: nu X -> nu Y``."""
    q = f.src.quiver
    F = f.field
    blocks = []
    for u in q.vertices:
        P = projective_at(q, u, F)
        BX = f.src.hom_basis(P)
        BY = f.tgt.hom_basis(P)
        cols = [coordinates(g @ f, BX) for g in BY]
        C = np.stack(cols, axis=1) if cols else F.zeros(len(BX), 0)
        blocks.append(C.T.copy())
    return Morphism(nuX, nuY, blocks)


@dataclass
class TauData:
    """``tau X`` with the presentation and kernel inclusion used to build it."""

    tau: Representation
    incl: Morphism  # tau X -> nu P1
    pres: Presentation
    nu_p1: Morphism


def _tau_data(X: Representation) -> TauData | None:
    pres = proj_presentation(X)
    if pres.p1.src.total_dim == 0:
        return None
    nuP1 = nakayama(pres.p1.src)
    nuP0 = nakayama(pres.p0.src)
    nu_p1 = nakayama_morphism(pres.p1, nuP1, nuP0)
    incl = kernel(nu_p1)
    return TauData(incl.src, incl, pres, nu_p1)


def ar_translate(X: Representation, check: bool = True):
    """``tau X`` for indecomposable ``X``; the string ``"projective"`` if ``X`` is projective."""
    if check and not krull.is_indecomposable_split(X):
        raise CategoryError("ar_translate expects an indecomposable module")
    data = _tau_data(X)
    if data is None:
        return PROJECTIVE
    return data.tau


def ar_translate_inverse(X: Representation, check: bool = True):
    """``tau^- X = D tau_op D X``; the string ``"injective"`` if ``X`` is injective."""
    if check and not krull.is_indecomposable_split(X):
        raise CategoryError("ar_translate_inverse expects an indecomposable module")
    data = _tau_data(dual_D(X))
    if data is None:
        return INJECTIVE
    return dual_D(data.tau)


def tau_morphism(f: Morphism) -> Morphism:
    """``tau f: tau X -> tau Y`` via lifts of ``f`` to projective presentations."""
    dX, dY = _tau_data(f.src), _tau_data(f.tgt)
    if dX is None:
        raise CategoryError("source is projective")
    if dY is None:
        raise CategoryError("target is projective")
    f0 = factor_through(dY.pres.p0, f @ dX.pres.p0)
    f1 = factor_through(dY.pres.p1, f0 @ dX.pres.p1)
    if f0 is None or f1 is None:
        raise CategoryError("failed to lift to projective presentations")
    nf1 = nakayama_morphism(f1, dX.nu_p1.src, dY.nu_p1.src)
    return restrict_to_sub(nf1 @ dX.incl, dY.incl)


# ---------------------------------------------------------------------------
# injective envelopes


@dataclass
class InjectiveEnvelope:
    """``X -> E(X)`` with ``E(X)`` the explicit sum of ``I(v)`` for ``v`` in ``vertices``."""

    embedding: Morphism
    vertices: list[str]
    cosyzygy: Morphism  # E(X) -> Omega^{-1} X

    @property
    def E(self) -> Representation:
        return self.embedding.tgt


def injective_envelope(X: Representation) -> InjectiveEnvelope:
    """``E(X) = D(projective cover of D X)``."""
    q = X.quiver
    F = X.field
    DX = dual_D(X)
    pc = projective_cover(DX)
    if not pc.vertices:
        Z = Representation.zero_like(X)
        emb = zero_morphism(X, Z)
        return InjectiveEnvelope(emb, [], cokernel(emb))
    summands = [injective_at(q, v, F) for v in pc.vertices]
    E, _, _ = direct_sum(summands)
    emb = Morphism(X, E, [b.T.copy() for b in pc.cover.blocks])
    return InjectiveEnvelope(emb, list(pc.vertices), cokernel(emb))


# ---------------------------------------------------------------------------
# catalogs of indecomposables


@dataclass
class CatalogEntry:
    module: Representation
    provenance: str  # knitted | supplied | brute
    region: str | None = None
    orbit: str = ""


@dataclass
class IndecCatalog:
    quiver: Quiver
    field: Field
    entries: list[CatalogEntry]
    complete: bool
    bound: int
    kind: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def modules(self) -> list[Representation]:
        return [e.module for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def find(self, X: Representation) -> int | None:
        return krull.index_in(X, self.modules)


def classify_region(q: Quiver, X: Representation) -> str:
    d = defect(q, X.dim)
    if d < 0:
        return PREPROJECTIVE
    if d > 0:
        return PREINJECTIVE
    return REGULAR


def _knit(q: Quiver, F: Field, start, step, order, bound: int | None, sign: str):
    """Iterate ``step`` from each ``start(v)``; returns (modules, orbit labels, complete)."""
    out, labels = [], []
    current = {v: start(v) for v in order}
    k = 0
    idx = 0
    complete = True
    while any(m is not None for m in current.values()):
        for v in order:
            X = current[v]
            if X is None:
                continue
            if bound is not None and idx > bound:
                return out, labels, False
            out.append(X)
            base = "P" if sign == "-" else "I"
            labels.append(f"{base}({v})" if k == 0 else f"tau^{sign}{k} {base}({v})")
            idx += 1
            nxt = step(X)
            current[v] = None if isinstance(nxt, str) else nxt
        k += 1
    return out, labels, complete


def brute_force_indecomposables(q: Quiver, dim: Sequence[int], F: Field,
                                limit: int = BRUTE_FORCE_LIMIT) -> list[Representation]:
    """All isoclasses of split indecomposables of dimension ``dim`` by exhaustive search."""
    if F.p is None:
        raise CategoryError("brute force enumeration needs a finite field")
    shapes = []
    for a in q.arrows:
        shapes.append((a.name, dim[q.index(a.target)], dim[q.index(a.source)]))
    n_entries = sum(r * c for _, r, c in shapes)
    if F.p ** n_entries > limit:
        raise CategoryError(f"{F.p}^{n_entries} candidates exceed the brute-force limit {limit}")
    found: list[Representation] = []
    for values in itertools.product(range(F.p), repeat=n_entries):
        mats, off = {}, 0
        for name, r, c in shapes:
            mats[name] = np.array(values[off:off + r * c], dtype=np.int64).reshape(r, c)
            off += r * c
        X = Representation(q, dim, mats, F)
        if not krull.is_indecomposable_split(X):
            continue
        if krull.index_in(X, found) is None:
            found.append(X)
    return found


def _kronecker_label(X: Representation) -> str:
    vals = [int(X.mats[a.name][0, 0]) for a in X.quiver.arrows]
    return "R(" + ":".join(str(v) for v in vals) + ")"


def catalog(q: Quiver, strategy: str = "auto", bound: int = 3, field: Field = DEFAULT_FIELD,
            regulars: Sequence[Representation] = ()) -> IndecCatalog:
    """Indecomposables of ``q`` up to a knitting bound.

    dynkin: the whole preprojective component (complete, bound ignored);
    euclidean: the first ``bound + 1`` preprojectives and preinjectives of
    the knitting sequence plus dimension-``delta`` regulars (brute force
    when small enough) and any supplied regulars; wild: supplied modules.
    The knitting sequence lists ``tau^-k P(v)`` for ``k = 0, 1, ...`` with
    vertices sink-first inside each ``k``.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    F = field
    kind = gabriel_type(q)
    entries: list[CatalogEntry] = []
    notes: list[str] = []
    complete = True

    def add(X, prov, region, orbit):
        if krull.index_in(X, [e.module for e in entries]) is None:
            X.label = X.label or orbit
            entries.append(CatalogEntry(X, prov, region, orbit))

    if strategy == "supplied":
        kind_eff = "supplied"
    else:
        kind_eff = kind

    if kind_eff == DYNKIN:
        mods, labels, _ = _knit(q, F, lambda v: projective_at(q, v, F),
                                lambda X: ar_translate_inverse(X, check=False),
                                q.sink_first_order, None, "-")
        for X, lab in zip(mods, labels):
            add(X, "knitted", PREPROJECTIVE, lab)
    elif kind_eff == EUCLIDEAN:
        pre, plabels, _ = _knit(q, F, lambda v: projective_at(q, v, F),
                                lambda X: ar_translate_inverse(X, check=False),
                                q.sink_first_order, bound, "-")
        for X, lab in zip(pre, plabels):
            add(X, "knitted", PREPROJECTIVE, lab)
        inj, ilabels, _ = _knit(q, F, lambda v: injective_at(q, v, F),
                                lambda X: ar_translate(X, check=False),
                                q.source_first_order, bound, "")
        for X, lab in zip(inj, ilabels):
            add(X, "knitted", PREINJECTIVE, lab)
        complete = False
        delta = null_root(q)
        try:
            regs = brute_force_indecomposables(q, delta, F)
            is_kronecker = q.n == 2 and all(a.source == q.arrows[0].source for a in q.arrows)
            for X in regs:
                lab = _kronecker_label(X) if is_kronecker else f"R{len(entries)}"
                add(X, "brute", REGULAR, lab)
        except CategoryError as exc:
            notes.append(f"regulars of dimension {delta} not enumerated: {exc}")
        for i, X in enumerate(regulars):
            add(X, "supplied", classify_region(q, X), X.label or f"supplied{i}")
    else:
        complete = False
        for i, X in enumerate(regulars):
            add(X, "supplied", None, X.label or f"supplied{i}")
        if not regulars:
            notes.append("wild quiver: no modules supplied, catalog is empty")
    return IndecCatalog(q, F, entries, complete and kind_eff == DYNKIN, bound, kind, notes)


def tau_monomorphism_check(Z: Representation, regulars: Sequence[Representation]) -> bool | None:
    """Whether ``tau`` of the embedding ``Z -> R^m`` into copies of the regulars is again mono.

    ``R^m`` is the left add(R)-approximation of ``Z``; None when it is not a
    monomorphism (``Z`` does not embed) or ``Z`` is projective.
    """
    from .approx import left_add_approximation

    if is_projective(Z):
        return None
    u = left_add_approximation(list(regulars), Z).map
    if not u.is_mono() or u.tgt.total_dim == 0:
        return None
    return tau_morphism(u).is_mono()
