"""Approximations by add(N), traces, and Sub/Fac membership.

Approximations are built universal-then-minimal: the evaluation map from
``sum_i N_i (x) Hom(N_i, X)`` is formed first and then passed to
:func:`repdim.krull.right_minimalize`.  The functions are generic over the
module category, so they serve Lambda-modules as well as H-modules.
"""

from __future__ import annotations

from typing import Sequence

from . import krull
from .category import Morphism, cokernel, image
from .krull import DecomposedMap

AddDecomposedMap = DecomposedMap


def generators(N) -> list:
    """Pairwise non-isomorphic indecomposable summands of ``N`` (a module or a list)."""
    if isinstance(N, (list, tuple)):
        out = []
        for X in N:
            for U in generators(X):
                if krull.index_in(U, out) is None:
                    out.append(U)
        return out
    if N.total_dim == 0:
        return []
    return [m for m, _, _ in krull.decompose(N).grouped()]


def right_add_approximation(N, X, minimal: bool = True) -> DecomposedMap:
    """Minimal right add(N)-approximation ``N' -> X``; labels index the generators of ``N``."""
    gens = generators(N)
    summands, labels, comps = [], [], []
    for i, G in enumerate(gens):
        for h in G.hom_basis(X):
            summands.append(G)
            labels.append(i)
            comps.append(h)
    universal = krull._assemble_domain(summands, labels, comps, X)
    return krull.right_minimalize(universal) if minimal else universal


def left_add_approximation(N, U, minimal: bool = True) -> DecomposedMap:
    """Minimal left add(N)-approximation ``U -> N'``."""
    from .category import column_map, direct_sum, zero_morphism

    gens = generators(N)
    summands, labels, comps = [], [], []
    for i, G in enumerate(gens):
        for h in U.hom_basis(G):
            summands.append(G)
            labels.append(i)
            comps.append(h)
    if not summands:
        Z = U.__class__.zero_like(U)
        return DecomposedMap(zero_morphism(U, Z), [], [], [], [])
    S, incls, projs = direct_sum(summands)
    universal = DecomposedMap(column_map(U, comps, S, incls), summands, incls, projs, labels)
    return krull.left_minimalize(universal) if minimal else universal


def is_right_approximation(f: Morphism, N) -> bool:
    """Every morphism from a summand of ``N`` to ``f.tgt`` factors through ``f``."""
    comps = [f]
    for G in generators(N):
        for h in G.hom_basis(f.tgt):
            if not krull._factors_through_row(h, comps):
                return False
    return True


def is_left_approximation(f: Morphism, N) -> bool:
    for G in generators(N):
        for h in f.src.hom_basis(G):
            if not krull._factors_through_col(h, [f]):
                return False
    return True


def trace_submodule(M, X) -> tuple[object, Morphism]:
    """``tr_M(X)``: the image of the right add(M)-approximation, with its inclusion."""
    approx = right_add_approximation(M, X)
    incl, _ = image(approx.map)
    return incl.src, incl


def is_in_sub(M, U) -> bool:
    if U.total_dim == 0:
        return True
    return left_add_approximation(M, U).map.is_mono()


def is_in_fac(M, X) -> bool:
    T, _ = trace_submodule(M, X)
    return T.block_dims == X.block_dims


def rigidity_check(U) -> bool:
    from .reps import ext1_dim

    if U.total_dim == 0:
        return True
    return ext1_dim(U, U) == 0


def quotient_by_trace(M, X) -> Morphism:
    """The projection ``X -> X / tr_M(X)``."""
    approx = right_add_approximation(M, X)
    return cokernel(approx.map)


def approximation_kernel(approx: DecomposedMap):
    from .category import kernel

    return kernel(approx.map)
