import numpy as np
import pytest

from conftest import F5, regular
from repdim import krull, trimat
from repdim.category import direct_sum, identity
from repdim.quiver import A2, KRONECKER
from repdim.reps import injective_at, projective_at


@pytest.fixture(scope="module")
def lam():
    return trimat.build_lambda(projective_at(KRONECKER, "1", F5))


def test_lambda_shape(lam):
    assert lam.r == 1 and lam.M.dim == (1, 2) and not lam.degenerate


def test_standard_triples(lam):
    assert [T.block_dims for T in trimat.lambda_projectives(lam)] == [(0, 1, 2), (0, 0, 1), (1, 1, 2)]
    assert [T.block_dims for T in trimat.lambda_injectives(lam)] == [(1, 0, 0), (1, 1, 0), (2, 2, 1)]
    for T in trimat.lambda_injectives(lam):
        assert trimat.is_tri_injective(T)
    assert not trimat.is_tri_injective(trimat.projective_b(lam, 0))


def test_hom_dims(lam):
    Kp = trimat.projective_b(lam, 0)
    S = trimat.simple_b(lam, 0)
    assert len(Kp.hom_basis(S)) == 1
    assert len(S.hom_basis(Kp)) == 0
    R = regular(1, 2)
    ev = trimat.evaluation_triple(lam, R)
    assert ev.V == (1,) or list(ev.V) == [1]
    assert len(Kp.hom_basis(ev)) == 1


def test_full_embedding(lam, kron_cat):
    # X -> (0, X) is fully faithful
    mods = kron_cat.modules[:6]
    for X in mods:
        for Y in mods:
            assert len(X.hom_basis(Y)) == len(trimat.zero_triple(lam, X).hom_basis(trimat.zero_triple(lam, Y)))


def test_transpose_split(lam):
    X = projective_at(KRONECKER, "1", F5)
    ev = trimat.evaluation_triple(lam, X)
    T = direct_sum([ev, trimat.simple_b(lam, 0)])[0]
    sp = trimat.transpose_split(T)
    assert sp.kernel_part.block_dims == (1, 0, 0)
    assert sp.image_part.block_dims == ev.block_dims
    assert trimat.is_normal(sp.image_part) and not trimat.is_normal(T)
    total = sp.incls[0] @ sp.projs[0] + sp.incls[1] @ sp.projs[1]
    assert all(np.array_equal(a, b) for a, b in zip(total.blocks, identity(T).blocks))
    for k in range(2):
        assert (sp.projs[k] @ sp.incls[1 - k]).is_zero()


def test_resolution_of_kp(lam):
    res = trimat.tri_injective_resolution(trimat.projective_b(lam, 0))
    assert [T.block_dims for T in res.terms] == [(4, 4, 2), (3, 3, 0)]
    assert res.W == [(0,), (0,)] and res.exact and res.length == 1
    assert all(trimat.is_tri_injective(T) for T in res.terms)


def test_ghat(lam, kron_cat):
    from repdim.auslander import build_generator

    gen = build_generator(lam.M, kron_cat)
    gh = trimat.build_ghat(gen.summands, lam)
    assert len(gh.summands) == 8 and gh.generator_cogenerator
    for T in gh.summands:
        assert krull.is_indecomposable_split(T)


def test_json_round_trip(lam):
    T = trimat.evaluation_triple(lam, regular(1, 3))
    U = trimat.TriModule.from_json(lam, T.to_json())
    assert U.block_dims == T.block_dims and krull.is_isomorphic_indec(T, U)


def test_parts_must_match():
    P1 = projective_at(A2, "1", F5)
    with pytest.raises(ValueError):
        trimat.build_lambda(P1, [injective_at(A2, "1", F5)])
    lam = trimat.build_lambda(direct_sum([P1, P1])[0], [P1, P1])
    assert lam.r == 2
