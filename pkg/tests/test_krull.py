import numpy as np
import pytest

from conftest import F5, conjugate, regular
from repdim import krull
from repdim.category import CategoryError, direct_sum, identity
from repdim.quiver import A2, KRONECKER
from repdim.reps import Representation, projective_at, simple_at
from repdim.xfield import Field


def P(v, q=A2):
    return projective_at(q, v, F5)


def test_end_rings():
    e = krull.end_ring(simple_at(A2, "1", F5))
    assert e.dim == 1 and not e.radical
    S = direct_sum([P("1"), P("2")])[0]
    e = krull.end_ring(S)
    assert e.dim == 3 and len(e.radical) == 1
    S2 = direct_sum([P("1"), P("1")])[0]
    e = krull.end_ring(S2)
    assert e.dim == 4 and len(e.radical) == 0


def test_decompose_examples():
    d = krull.decompose(P("1"))
    assert [(m.dim, n) for m, n, _ in d.grouped()] == [((1, 1), 1)]
    d = krull.decompose(direct_sum([P("1"), P("1")])[0])
    assert [(m.dim, n) for m, n, _ in d.grouped()] == [((1, 1), 2)]
    rng = np.random.default_rng(3)
    X = conjugate(direct_sum([P("1"), P("2")])[0], rng)
    assert sorted(s.module.dim for s in krull.decompose(X).summands) == [(0, 1), (1, 1)]


def test_idempotents_are_orthogonal():
    X = direct_sum([P("1", KRONECKER), P("2", KRONECKER), regular(1, 2)])[0]
    d = krull.decompose(X)
    es = d.idempotents
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert all(np.array_equal(a, b) for a, b in zip(total.blocks, identity(X).blocks))
    for i, a in enumerate(es):
        assert all(np.array_equal(x, y) for x, y in zip((a @ a).blocks, a.blocks))
        for j, b in enumerate(es):
            if i != j:
                assert (a @ b).is_zero()
    dims = np.sum([s.module.dim for s in d.summands], axis=0)
    assert tuple(dims) == X.dim


def test_indecomposable_split():
    assert krull.is_indecomposable_split(P("1"))
    assert not krull.is_indecomposable_split(direct_sum([P("1"), P("2")])[0])
    assert krull.is_indecomposable_split(regular(1, 1))
    with pytest.raises(CategoryError):
        krull.is_indecomposable_split(Representation.zero_like(P("1")))


def test_splitness_suite(kron_cat, a2_cat):
    for X in kron_cat.modules + a2_cat.modules:
        assert krull.is_indecomposable_split(X)


def test_non_split_guard():
    F2 = Field(2)
    # x^2 + x + 1 has no root in F_2
    X = Representation(KRONECKER, [2, 2], {"a": [[1, 0], [0, 1]], "b": [[0, 1], [1, 1]]}, F2)
    with pytest.raises(krull.NonSplitField):
        krull.decompose(X)


def test_right_minimalize():
    I1 = simple_at(A2, "1", F5)
    p = P("1").hom_basis(I1)[0]
    S, incls, projs = direct_sum([P("1"), P("1")])
    from repdim.category import row_map

    f = row_map(I1, [p, p.scale(2)], S, projs)
    dm = krull.DecomposedMap(f, [P("1"), P("1")], incls, projs, [0, 0])
    m = krull.right_minimalize(dm)
    assert len(m.summands) == 1 and m.map.src.dim == (1, 1)
    assert krull.is_right_minimal(m.map)
    # zero component gets stripped
    Z = P("2")
    S, incls, projs = direct_sum([P("1"), Z])
    from repdim.category import zero_morphism

    f = row_map(I1, [p, zero_morphism(Z, I1)], S, projs)
    m = krull.right_minimalize(krull.DecomposedMap(f, [P("1"), Z], incls, projs, [0, 1]))
    assert [s.dim for s in m.summands] == [(1, 1)]
    # already minimal stays
    m2 = krull.right_minimalize(m)
    assert len(m2.summands) == 1


def test_hom_radical():
    I1 = simple_at(A2, "1", F5)
    assert len(krull.hom_radical(P("2"), P("1"))) == 1
    assert krull.hom_radical(P("1"), P("1")) == []
    R = regular(1, 1)
    assert len(krull.hom_radical(P("1", KRONECKER), R)) == len(P("1", KRONECKER).hom_basis(R))
    assert krull.in_radical(P("2").hom_basis(P("1"))[0])
    assert not krull.in_radical(identity(I1))


@pytest.mark.parametrize("seed", range(10))
def test_conjugation_invariance(seed):
    X = direct_sum([P("1", KRONECKER), P("2", KRONECKER), regular(1, 3)])[0]
    Y = conjugate(X, np.random.default_rng(seed))
    assert sorted(s.module.dim for s in krull.decompose(Y).summands) == [(0, 1), (1, 1), (1, 2)]
