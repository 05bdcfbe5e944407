"""Auslander generators of H-mod containing a rigid module M.

``S = Sub(M) cap Ker Ext^1(M, -)`` is computed over a catalog of
indecomposables and cross-checked against the kernels of minimal right
add(M)-approximations.  The generator is ``G = H + V + M + DH`` where ``V``
collects the members of ``S`` outside add(M); every test module then gets
an explicit right add(G)-approximation whose kernel is checked to lie in
add(G).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import krull
from .approx import generators, is_in_sub, right_add_approximation
from .category import Morphism, cokernel, direct_sum, factor_through, kernel, row_map
from .reps import (
    IndecCatalog,
    Representation,
    ext1_dim,
    injective_at,
    projective_at,
    projective_cover,
)


class NotRigid(ValueError):
    """``Ext^1(M, M) != 0``."""


def _label(X) -> str:
    return getattr(X, "label", None) or f"dim{tuple(X.block_dims)}"


def same_multiset(A: Sequence, B: Sequence) -> bool:
    """Equal multisets of indecomposables up to isomorphism."""
    if len(A) != len(B):
        return False
    used = [False] * len(B)
    for U in A:
        for k, W in enumerate(B):
            if not used[k] and krull.is_isomorphic_indec(U, W):
                used[k] = True
                break
        else:
            return False
    return True


def summand_modules(X) -> list:
    if X.total_dim == 0:
        return []
    return [s.module for s in krull.decompose(X).summands]


@dataclass
class SubextSet:
    members: list  # S
    new: list  # V: members outside add(M)
    relative: bool  # computed relative to an incomplete catalog
    reconstructed: list  # from kernels of minimal right add(M)-approximations
    lemma_1_to_2: list[bool]  # each V member recovered as Ker of the approximation of Coker(u)
    consistent: bool
    n_vertices: int
    rigid_sum: bool  # Ext^1(M + V, M + V) = 0

    @property
    def size_bound_ok(self) -> bool:
        return len(self.members) <= self.n_vertices


def check_rigid(M) -> None:
    if ext1_dim(M, M) != 0:
        raise NotRigid(f"Ext^1(M, M) has dimension {ext1_dim(M, M)}")


def subext_set(M: Representation, cat: IndecCatalog) -> SubextSet:
    """Indecomposables in ``Sub(M) cap Ker Ext^1(M, -)`` relative to ``cat``."""
    check_rigid(M)
    mgens = generators(M)
    members: list = list(mgens)
    for U in cat.modules:
        if krull.index_in(U, members) is not None:
            continue
        if ext1_dim(M, U) == 0 and is_in_sub(M, U):
            members.append(U)
    new = [U for U in members if krull.index_in(U, mgens) is None]

    # 1 => 2: U = Ker of the minimal right approximation of Coker(minimal left approximation of U)
    from .approx import left_add_approximation

    recovered = []
    for U in new:
        u = left_add_approximation(M, U)
        c = cokernel(u.map)
        p = right_add_approximation(M, c.tgt)
        ks = summand_modules(kernel(p.map).src)
        recovered.append(any(krull.is_isomorphic_indec(U, W) for W in ks))

    # 2 => 1: summands of M and of kernels of minimal right add(M)-approximations
    recon: list = list(mgens)
    for X in cat.modules:
        p = right_add_approximation(M, X)
        for W in summand_modules(kernel(p.map).src):
            if krull.index_in(W, recon) is None:
                recon.append(W)
    consistent = len(recon) == len(members) and all(krull.index_in(W, members) is not None for W in recon)
    MV = direct_sum(list(mgens) + list(new))[0] if mgens or new else M
    rigid_sum = ext1_dim(MV, MV) == 0
    return SubextSet(members, new, not cat.complete, recon, recovered, consistent, M.quiver.n, rigid_sum)


@dataclass
class Generator:
    """``G = H + V + M + DH`` as a list of pairwise non-isomorphic indecomposables."""

    summands: list
    tags: list[str]
    M_gens: list
    V: list
    subext: SubextSet

    @property
    def module(self):
        return direct_sum(self.summands)[0]

    def index(self, U) -> int | None:
        return krull.index_in(U, self.summands)


def build_generator(M: Representation, cat: IndecCatalog) -> Generator:
    q = M.quiver
    F = M.field
    S = subext_set(M, cat)
    summands, tags = [], []

    def add(U, tag):
        k = krull.index_in(U, summands)
        if k is None:
            summands.append(U)
            tags.append(tag)
        elif tag not in tags[k].split("+"):
            tags[k] += "+" + tag

    for v in q.vertices:
        add(projective_at(q, v, F), "H")
    for U in S.new:
        add(U, "V")
    mg = generators(M)
    for U in mg:
        add(U, "M")
    for v in q.vertices:
        add(injective_at(q, v, F), "DH")
    # use the labelled copies already in the list
    canon = [summands[krull.index_in(U, summands)] for U in mg]
    return Generator(summands, tags, canon, list(S.new), S)


@dataclass
class ResolutionRecord:
    """One right add(G)-approximation ``(g p t): V' + M' + Q -> X`` and its checks."""

    module: object
    label: str
    trivial: bool
    domain_labels: list[str] = field(default_factory=list)
    kernel_summands: list[str] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    failure: str = ""
    map: Morphism | None = None
    kernel_incl: Morphism | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and not self.failure

    def to_json(self) -> dict:
        return {
            "module": self.label,
            "dim": list(self.module.block_dims),
            "trivial": self.trivial,
            "domain": self.domain_labels,
            "kernel": self.kernel_summands,
            "checks": {k: bool(v) for k, v in sorted(self.checks.items())},
            "pass": self.passed,
            "failure": self.failure,
        }


def _lift_components(q_map: Morphism, comps: list[Morphism]) -> list[Morphism]:
    out = []
    for a in comps:
        g = factor_through(q_map, a)
        if g is None:
            raise ArithmeticError("lift through a surjection failed")
        out.append(g)
    return out


def add_g_resolution(gen: Generator, X) -> ResolutionRecord:
    """Right add(G)-approximation of ``X`` with kernel in add(G), following the construction
    through the trace ``T = tr_M(X)``, an add(V)-approximation of ``X/T`` lifted to ``X``,
    and a projective cover of what is still missing."""
    label = _label(X)
    k = gen.index(X)
    if k is not None:
        rec = ResolutionRecord(X, label, True, [_label(gen.summands[k])], [])
        rec.checks = {"kernel_in_addG": True, "approximation": True, "surjective": True}
        return rec
    rec = ResolutionRecord(X, label, False)
    M_gens, V_gens = gen.M_gens, gen.V

    p = right_add_approximation(M_gens, X)
    q_map = cokernel(p.map)  # X -> X/T
    XT = q_map.tgt
    rec.checks["hom_M_to_X_mod_T_zero"] = all(not U.hom_basis(XT) for U in M_gens)

    a = right_add_approximation(V_gens, XT) if V_gens else None
    a_comps = [a.map @ i for i in a.incls] if a is not None else []
    g_comps = _lift_components(q_map, a_comps)
    p_comps = [p.map @ i for i in p.incls]

    gp_summands = (list(a.summands) if a is not None else []) + list(p.summands)
    gp_labels = [_label(V_gens[l]) for l in (a.labels if a is not None else [])] + \
        [_label(M_gens[l]) for l in p.labels]
    gp_comps = g_comps + p_comps

    if gp_summands:
        D, _, projs = direct_sum(gp_summands)
        gp = row_map(X, gp_comps, D, projs)
        coker = cokernel(gp)
        ker_gp = summand_modules(kernel(gp).src)
    else:
        from .category import identity

        coker = identity(X)
        ker_gp = []
    pc = projective_cover(coker.tgt)
    t_comps = _lift_components(coker, [pc.cover @ i for i in pc.incls])
    omega = summand_modules(kernel(pc.cover).src)

    summands = gp_summands + [i.src for i in pc.incls]
    labels = gp_labels + [_label(i.src) for i in pc.incls]
    comps = gp_comps + t_comps
    Dfull, _, projs = direct_sum(summands)
    full = row_map(X, comps, Dfull, projs)
    kincl = kernel(full)
    ker_summands = summand_modules(kincl.src)

    rec.map = full
    rec.kernel_incl = kincl
    rec.domain_labels = labels
    idx = [gen.index(W) for W in ker_summands]
    rec.kernel_summands = [_label(gen.summands[i]) if i is not None else f"?{tuple(W.block_dims)}"
                           for i, W in zip(idx, ker_summands)]
    rec.checks["surjective"] = full.is_epi()
    rec.checks["kernel_in_addG"] = all(i is not None for i in idx)
    rec.checks["kernel_identity"] = same_multiset(ker_summands, ker_gp + omega)
    mv = list(M_gens) + [U for U in V_gens if krull.index_in(U, M_gens) is None]
    rec.checks["ker_gp_in_addMV"] = all(krull.index_in(W, mv) is not None for W in ker_gp)
    if a is not None:
        ker_qg = summand_modules(kernel(a.map).src)
        rec.checks["ker_qg_in_addMV"] = all(krull.index_in(W, mv) is not None for W in ker_qg)
    rec.checks["omega_projective"] = all(
        any(krull.is_isomorphic_indec(W, projective_at(X.quiver, v, X.field)) for v in X.quiver.vertices)
        for W in omega)

    bad = _non_factoring(gen.summands, comps, X)
    rec.checks["approximation"] = bad is None
    if bad is not None:
        rec.failure = f"morphism from {_label(bad)} does not factor through the approximation"
    if not rec.checks["kernel_in_addG"]:
        rec.failure = (rec.failure + "; " if rec.failure else "") + "kernel has a summand outside add(G)"
    return rec


def _non_factoring(gens: Sequence, comps: list[Morphism], X):
    for G in gens:
        for h in G.hom_basis(X):
            if not krull._factors_through_row(h, comps):
                return G
    return None


@dataclass
class GeneratorCertificate:
    summands: list[str]
    records: list[ResolutionRecord]
    relative_to_catalog: bool
    catalog_bound: int

    @property
    def vacuous(self) -> bool:
        return not self.records

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> dict:
        return {
            "summands": self.summands,
            "relative_to_catalog": self.relative_to_catalog,
            "catalog_bound": self.catalog_bound,
            "vacuous": self.vacuous,
            "pass": self.passed,
            "records": [r.to_json() for r in self.records],
        }


def verify_generator(gen: Generator, cat: IndecCatalog) -> GeneratorCertificate:
    records = [add_g_resolution(gen, X) for X in cat.modules]
    return GeneratorCertificate([_label(U) for U in gen.summands], records, not cat.complete, cat.bound)
