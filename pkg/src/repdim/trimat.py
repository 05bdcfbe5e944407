"""Modules over the triangular algebra ``Lambda = [B 0; M H]`` with ``B = K^r``.

A Lambda-module is a triple ``(V, X, f)``: a B-module ``V = V_1 + ... + V_r``,
an H-module ``X`` and an H-linear map ``f: M (x)_B V -> X``.  Since
``M (x)_B V = sum_i M_i (x) V_i``, the map ``f`` is stored per factor ``i`` as
a list of ``dim V_i`` morphisms ``M_i -> X`` (the images of the basis
vectors of ``V_i``).  Nothing here ever builds Lambda as a bound quiver
algebra; all computations stay in triple form.

Blocks of a triple are ``V_1, ..., V_r`` followed by the vertex spaces of
``X``, so the generic machinery of :mod:`repdim.category` and
:mod:`repdim.krull` applies unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import krull
from .category import (
    CategoryError,
    IntertwinerSystem,
    LinearObject,
    Morphism,
    cokernel,
    column_map,
    coordinates,
    direct_sum,
    identity,
    subobject,
    zero_morphism,
)
from .reps import Representation, injective_at, injective_envelope, projective_at
from .xfield import complement_basis, kernel_basis, solve_right


@dataclass(eq=False)
class Lambda:
    """``H``, the bimodule ``M = M_1 + ... + M_r`` and ``B = K^r``."""

    quiver: object
    field: object
    parts: tuple  # the M_i
    degenerate: bool = False  # M = 0, so Lambda = B x H

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def M(self) -> Representation:
        return direct_sum(list(self.parts))[0]


def build_lambda(M: Representation | None = None, parts: Sequence[Representation] | None = None) -> Lambda:
    """Descriptor for ``[K^r 0; M H]``.

    ``parts`` fixes the decomposition ``M = sum M_i``; by default ``M`` is a
    single factor.  A decomposition whose sum is not isomorphic to ``M`` is
    rejected.
    """
    if parts is None:
        if M is None:
            raise ValueError("need M or its parts")
        parts = [M]
    parts = tuple(parts)
    if not parts:
        raise ValueError("at least one factor of B is required")
    q, F = parts[0].quiver, parts[0].field
    if any(P.quiver != q or P.field != F for P in parts):
        raise ValueError("parts live over different quivers or fields")
    if M is not None:
        S = direct_sum(list(parts))[0]
        if not krull.is_isomorphic(S, M):
            raise ValueError("decomposition is inconsistent with M")
    degenerate = all(P.total_dim == 0 for P in parts)
    return Lambda(q, F, parts, degenerate)


class TriModule(LinearObject):
    """A Lambda-module ``(V, X, f)``."""

    def __init__(self, lam: Lambda, V: Sequence[int], X: Representation,
                 f: Sequence[Sequence[Morphism]] | None = None, label: str | None = None):
        self.lam = lam
        self.field = lam.field
        self.V = tuple(int(v) for v in V)
        self.X = X
        self.label = label
        if len(self.V) != lam.r:
            raise CategoryError(f"V has {len(self.V)} factors, B has {lam.r}")
        if f is None:
            f = [[zero_morphism(Mi, X) for _ in range(v)] for Mi, v in zip(lam.parts, self.V)]
        self.f = tuple(tuple(fi) for fi in f)
        for Mi, v, fi in zip(lam.parts, self.V, self.f):
            if len(fi) != v:
                raise CategoryError("f needs one morphism per basis vector of V_i")
            for m in fi:
                if m.src.block_dims != Mi.block_dims or m.tgt.block_dims != X.block_dims:
                    raise CategoryError("f component has the wrong source or target")

    @property
    def block_dims(self) -> tuple[int, ...]:
        return self.V + self.X.dim

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"<Tri{tag} V={self.V} X={self.X.dim}>"

    @classmethod
    def zero_like(cls, T: "TriModule") -> "TriModule":
        return cls(T.lam, [0] * T.lam.r, Representation.zero_like(T.X))

    def _hom_basis(self, other: "TriModule") -> list[Morphism]:
        F = self.field
        lam = self.lam
        r = lam.r
        q = lam.quiver
        sys = IntertwinerSystem(F, self.block_dims, other.block_dims)
        for i, Mi in enumerate(lam.parts):
            Vi, Wi = self.V[i], other.V[i]
            for k in range(Vi):
                for u, d in enumerate(Mi.dim):
                    if d == 0:
                        continue
                    eq = (i, k, u)
                    # beta_u o f_{i,k,u}
                    sys.add_lr(eq, r + u, F.eye(other.X.dim[u]), self.f[i][k].blocks[u])
                    # - sum_l alpha_i[l, k] f'_{i,l,u}
                    C = F.zeros(other.X.dim[u] * d, Wi * Vi)
                    for l in range(Wi):
                        C[:, l * Vi + k] = F.neg(other.f[i][l].blocks[u].reshape(-1))
                    sys.add(eq, i, C)
        for a in q.arrows:
            v, w = q.index(a.source), q.index(a.target)
            sys.add_lr(("arrow", a.name), r + w, F.eye(other.X.dim[w]), self.X.mats[a.name])
            sys.add_lr(("arrow", a.name), r + v, other.X.mats[a.name], F.eye(self.X.dim[v]), sign=-1)
        return sys.solve(self, other)

    def _check_morphism(self, other, blocks) -> bool:
        F = self.field
        r = self.lam.r
        beta = Morphism(self.X, other.X, blocks[r:])
        if not beta.is_valid():
            return False
        for i in range(r):
            alpha = blocks[i]
            for k in range(self.V[i]):
                lhs = beta @ self.f[i][k]
                rhs = _combine(other.f[i], alpha[:, k], self.lam.parts[i], other.X)
                if any(np.any(a != b) for a, b in zip(lhs.blocks, rhs.blocks)):
                    return False
        return True

    def _sub(self, bases):
        F = self.field
        r = self.lam.r
        Xincl = subobject(self.X, list(bases[r:]))
        Xs = Xincl.src
        f = []
        for i, Mi in enumerate(self.lam.parts):
            fi = []
            for k in range(bases[i].shape[1]):
                g = _combine(self.f[i], bases[i][:, k], Mi, self.X)
                blocks = []
                for gb, ib in zip(g.blocks, Xincl.blocks):
                    x = solve_right(F, ib, gb)
                    if x is None:
                        raise CategoryError("subspaces are not invariant")
                    blocks.append(x)
                fi.append(Morphism(Mi, Xs, blocks))
            f.append(fi)
        return TriModule(self.lam, [b.shape[1] for b in bases[:r]], Xs, f)

    def _quot(self, Q, L):
        r = self.lam.r
        Xq = self.X._quot(list(Q[r:]), list(L[r:]))
        qX = Morphism(self.X, Xq, list(Q[r:]))
        f = []
        for i, Mi in enumerate(self.lam.parts):
            f.append([qX @ _combine(self.f[i], L[i][:, k], Mi, self.X) for k in range(L[i].shape[1])])
        return TriModule(self.lam, [x.shape[0] for x in Q[:r]], Xq, f)

    @classmethod
    def _direct_sum(cls, objs):
        lam = objs[0].lam
        S, incls, _ = direct_sum([T.X for T in objs])
        f = []
        for i in range(lam.r):
            f.append([inc @ g for T, inc in zip(objs, incls) for g in T.f[i]])
        return cls(lam, [sum(T.V[i] for T in objs) for i in range(lam.r)], S, f)

    def to_json(self) -> dict:
        return {
            "V": list(self.V),
            "X": self.X.to_json(),
            "f": {str(i): [_morphism_json(g) for g in fi] for i, fi in enumerate(self.f)},
        }

    @classmethod
    def from_json(cls, lam: Lambda, data) -> "TriModule":
        X = Representation.from_json(lam.quiver, data["X"], lam.field)
        f = []
        for i, Mi in enumerate(lam.parts):
            raw = data.get("f", {}).get(str(i), [])
            f.append([Morphism(Mi, X, [lam.field.array(b).reshape(t, s) for b, s, t in
                                       zip(g, Mi.dim, X.dim)], check=True) for g in raw])
        return cls(lam, data["V"], X, f)


def _morphism_json(g: Morphism) -> list:
    return [[[int(x) if not hasattr(x, "numerator") or x.denominator == 1 else str(x) for x in row]
             for row in b.tolist()] for b in g.blocks]


def _combine(maps: Sequence[Morphism], coeffs, src, tgt) -> Morphism:
    F = src.field
    out = zero_morphism(src, tgt)
    for c, m in zip(coeffs, maps):
        if c != 0:
            out = out + m.scale(c)
    return out


def alpha_beta(phi: Morphism) -> tuple[list[np.ndarray], Morphism]:
    """Split a triple morphism into its B-part and its H-part."""
    r = phi.src.lam.r
    return list(phi.blocks[:r]), Morphism(phi.src.X, phi.tgt.X, phi.blocks[r:])


def lift_h_morphism(lam: Lambda, beta: Morphism, src: TriModule | None = None,
                    tgt: TriModule | None = None) -> Morphism:
    """``(0, beta): (0, X) -> (0, Y)``."""
    F = lam.field
    src = src or zero_triple(lam, beta.src)
    tgt = tgt or zero_triple(lam, beta.tgt)
    return Morphism(src, tgt, [F.zeros(0, 0)] * lam.r + list(beta.blocks))


# ---------------------------------------------------------------------------
# standard triples


def _label(X) -> str:
    return getattr(X, "label", None) or f"dim{tuple(X.block_dims)}"


def _kpow(n: int) -> str:
    return "0" if n == 0 else ("K" if n == 1 else f"K^{n}")


def _tri_label(V, X) -> str:
    v = "+".join(_kpow(n) for n in V) if len(V) > 1 else _kpow(V[0])
    return f"({v},{_label(X) if X.total_dim else '0'})"


def zero_triple(lam: Lambda, X: Representation) -> TriModule:
    """``(0, X)``: H-mod sits fully inside Lambda-mod."""
    return TriModule(lam, [0] * lam.r, X, label=_tri_label([0] * lam.r, X))


def evaluation_triple(lam: Lambda, X: Representation) -> TriModule:
    """``(Hom(M, X), X, evaluation)``."""
    f = [list(Mi.hom_basis(X)) for Mi in lam.parts]
    V = [len(fi) for fi in f]
    return TriModule(lam, V, X, f, label=_tri_label(V, X))


def simple_b(lam: Lambda, i: int) -> TriModule:
    """``(K e_i, 0)``."""
    V = [0] * lam.r
    V[i] = 1
    X = Representation.zero_like(lam.parts[0])
    return TriModule(lam, V, X, label=_tri_label(V, X))


def projective_b(lam: Lambda, i: int) -> TriModule:
    """``(K p_i, M_i, id)``."""
    V = [0] * lam.r
    V[i] = 1
    Mi = lam.parts[i]
    f = [[] for _ in range(lam.r)]
    f[i] = [identity(Mi)]
    return TriModule(lam, V, Mi, f, label=_tri_label(V, Mi))


def lambda_projectives(lam: Lambda) -> list[TriModule]:
    q, F = lam.quiver, lam.field
    out = [zero_triple(lam, projective_at(q, v, F)) for v in q.vertices]
    out += [projective_b(lam, i) for i in range(lam.r)]
    return out


def lambda_injectives(lam: Lambda) -> list[TriModule]:
    q, F = lam.quiver, lam.field
    out = [simple_b(lam, i) for i in range(lam.r)]
    out += [evaluation_triple(lam, injective_at(q, v, F)) for v in q.vertices]
    return out


# ---------------------------------------------------------------------------
# the f^t splitting


@dataclass
class TransposeSplit:
    """``T = (Ker f^t, 0) + (C, X, f|C)`` with split inclusions and projections."""

    kernel_part: TriModule
    image_part: TriModule
    incls: tuple[Morphism, Morphism]
    projs: tuple[Morphism, Morphism]


def transpose_matrix(T: TriModule, i: int) -> np.ndarray:
    """``f_i^t: V_i -> Hom(M_i, X)`` in the cached Hom basis."""
    F = T.field
    Mi = T.lam.parts[i]
    basis = Mi.hom_basis(T.X)
    cols = []
    for g in T.f[i]:
        c = coordinates(g, basis)
        cols.append(c)
    if not cols:
        return F.zeros(len(basis), 0)
    return np.stack(cols, axis=1) if basis else F.zeros(0, len(cols))


def transpose_split(T: TriModule) -> TransposeSplit:
    F = T.field
    r = T.lam.r
    kers, comps = [], []
    for i in range(r):
        K = kernel_basis(F, transpose_matrix(T, i)) if T.V[i] else F.zeros(0, 0)
        kers.append(K)
        comps.append(complement_basis(F, K) if T.V[i] else F.zeros(0, 0))
    zeroX = [F.zeros(d, 0) for d in T.X.dim]
    fullX = [F.eye(d) for d in T.X.dim]
    inc_k = subobject(T, kers + zeroX)
    inc_i = subobject(T, comps + fullX)
    projs = krull._projections(T, [inc_k, inc_i])
    kp, ip = inc_k.src, inc_i.src
    kp.label = _tri_label(kp.V, kp.X)
    ip.label = _tri_label(ip.V, ip.X)
    return TransposeSplit(kp, ip, (inc_k, inc_i), (projs[0], projs[1]))


def is_normal(T: TriModule) -> bool:
    """``f^t`` injective, i.e. no summand of the form ``(W, 0)``."""
    return all(kernel_basis(T.field, transpose_matrix(T, i)).shape[1] == 0
               for i in range(T.lam.r) if T.V[i])


# ---------------------------------------------------------------------------
# injective envelopes and resolutions


@dataclass
class TriEnvelope:
    embedding: Morphism  # T -> (W, 0) + (Hom(M, E(X)), E(X))
    W: tuple[int, ...]
    E: Representation
    cosyzygy: Morphism  # envelope -> Omega^{-1} T


def tri_injective_envelope(T: TriModule) -> TriEnvelope:
    """Componentwise envelope: ``(Ker f^t, 0)`` is injective already, and a normal
    triple ``(V, X, f)`` embeds into ``(Hom(M, E(X)), E(X))`` via ``(e o f^t, e)``."""
    lam = T.lam
    F = T.field
    sp = transpose_split(T)
    N = sp.image_part
    env = injective_envelope(N.X)
    e = env.embedding
    if env.vertices:
        env.E.label = "+".join(f"I({v})" + (f"^{env.vertices.count(v)}" if env.vertices.count(v) > 1 else "")
                               for v in dict.fromkeys(env.vertices))
    J = evaluation_triple(lam, env.E)
    alpha = []
    for i, Mi in enumerate(lam.parts):
        basis = Mi.hom_basis(env.E)
        cols = [coordinates(e @ g, basis) for g in N.f[i]]
        alpha.append(np.stack(cols, axis=1) if cols and basis else F.zeros(len(basis), len(cols)))
    psi = Morphism(N, J, alpha + list(e.blocks))
    Wmod = sp.kernel_part
    target_parts = [P for P in (Wmod, J) if P.total_dim]
    maps = [m for m, P in ((sp.projs[0], Wmod), (psi @ sp.projs[1], J)) if P.total_dim]
    if not target_parts:
        Z = TriModule.zero_like(T)
        emb = zero_morphism(T, Z)
    else:
        S, incls, _ = direct_sum(target_parts)
        S.label = "+".join(_tri_label(P.V, P.X) for P in target_parts)
        emb = column_map(T, maps, S, incls)
    return TriEnvelope(emb, Wmod.V, env.E, cokernel(emb))


def is_tri_injective(T: TriModule) -> bool:
    if T.total_dim == 0:
        return True
    env = tri_injective_envelope(T)
    return env.embedding.is_iso()


@dataclass
class TriResolution:
    """``0 -> T -> I_0 -> I_1 -> ...``; ``maps[0]`` is the envelope ``T -> I_0``."""

    module: TriModule
    terms: list[TriModule]
    maps: list[Morphism]
    W: list[tuple[int, ...]]  # (W, 0) part of each term
    exact: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1 if self.terms else 0


def tri_injective_resolution(T: TriModule, max_length: int = 6) -> TriResolution:
    terms, maps, Ws = [], [], []
    cur = T
    prev_coker = None
    exact = True
    for _ in range(max_length + 1):
        if cur.total_dim == 0:
            break
        env = tri_injective_envelope(cur)
        exact &= env.embedding.is_mono()
        I = env.embedding.tgt
        d = env.embedding if prev_coker is None else env.embedding @ prev_coker
        terms.append(I)
        maps.append(d)
        Ws.append(env.W)
        prev_coker = env.cosyzygy
        cur = env.cosyzygy.tgt
    else:
        exact = False
    # consecutive maps compose to zero
    for a, b in zip(maps, maps[1:]):
        exact &= (b @ a).is_zero()
    return TriResolution(T, terms, maps, Ws, exact)


# ---------------------------------------------------------------------------
# the generator of Lambda-mod


@dataclass
class GHat:
    summands: list[TriModule]
    sources: list[str]
    generator_cogenerator: bool


def build_ghat(G_summands: Sequence[Representation], lam: Lambda) -> GHat:
    """Indecomposable summands of ``(0, G) + (B, M) + D Lambda``, deduplicated."""
    out: list[TriModule] = []
    src: list[str] = []

    def add(T, tag):
        for s in krull.decompose(T).summands if not _known_indec(T) else [T]:
            m = s if isinstance(s, TriModule) else s.module
            if krull.index_in(m, out) is None:
                if not m.label:
                    m.label = _tri_label(m.V, m.X)
                out.append(m)
                src.append(tag)

    for Gk in G_summands:
        add(zero_triple(lam, Gk), "(0,G)")
    for i in range(lam.r):
        add(projective_b(lam, i), "(B,M)")
    for J in lambda_injectives(lam):
        if J.total_dim:
            add(J, "DLambda")
    needed = lambda_projectives(lam) + lambda_injectives(lam)
    gc = all(krull.index_in(P, out) is not None for P in needed if P.total_dim)
    return GHat(out, src, gc)


def _known_indec(T: TriModule) -> bool:
    return T.total_dim > 0 and krull.is_indecomposable_split(T)
