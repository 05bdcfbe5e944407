from conftest import F5, regular
from repdim import approx, krull
from repdim.category import direct_sum, kernel
from repdim.quiver import A2, KRONECKER
from repdim.reps import dual_D, injective_at, projective_at, simple_at


def P(v, q=A2):
    return projective_at(q, v, F5)


def test_right_approximation_a2():
    I1 = injective_at(A2, "1", F5)
    N = direct_sum([P("1"), P("2")])[0]
    a = approx.right_add_approximation(N, I1)
    assert [s.dim for s in a.summands] == [(1, 1)]
    assert a.map.is_epi() and approx.is_right_approximation(a.map, N)
    K = approx.approximation_kernel(a)
    assert K.src.dim == (0, 1)
    assert krull.is_right_minimal(a.map)


def test_left_approximation_kronecker():
    R = regular(1, 2)
    a = approx.left_add_approximation([R], P("2", KRONECKER))
    assert approx.is_left_approximation(a.map, [R])
    assert a.map.src.dim == (0, 1)
    # Hom(P2, R) is one-dimensional
    assert [s.dim for s in a.summands] == [(1, 1)]


def test_zero_hom_gives_zero_map():
    a = approx.right_add_approximation([P("2")], simple_at(A2, "1", F5))
    assert a.map.src.total_dim == 0 and not a.summands


def test_trace():
    T, incl = approx.trace_submodule(P("2"), P("1"))
    assert T.dim == (0, 1) and incl.is_mono()
    T, _ = approx.trace_submodule(P("1", KRONECKER), regular(1, 1))
    assert T.dim == (1, 1)
    q = approx.quotient_by_trace(P("2"), P("1"))
    assert q.tgt.dim == (1, 0)


def test_sub_and_fac():
    assert approx.is_in_sub(P("1"), P("2"))
    assert not approx.is_in_sub(P("2"), P("1"))
    assert not approx.is_in_sub(P("1"), simple_at(A2, "1", F5))
    assert approx.is_in_fac(P("1"), simple_at(A2, "1", F5))
    assert approx.is_in_sub(P("1", KRONECKER), P("2", KRONECKER))
    assert not approx.is_in_sub(P("1", KRONECKER), regular(1, 1))


def test_rigidity():
    assert approx.rigidity_check(P("1", KRONECKER))
    assert not approx.rigidity_check(regular(1, 3))
    assert approx.rigidity_check(injective_at(A2, "1", F5))


def test_generators_dedup():
    gens = approx.generators(direct_sum([P("1"), P("1"), P("2")])[0])
    assert sorted(g.dim for g in gens) == [(0, 1), (1, 1)]


def test_left_right_duality(kron_cat):
    # D turns minimal left add(N)-approximations into minimal right add(DN)-approximations
    N = [P("1", KRONECKER), P("2", KRONECKER)]
    DN = [dual_D(X) for X in N]
    for U in kron_cat.modules[:8]:
        left = approx.left_add_approximation(N, U)
        right = approx.right_add_approximation(DN, dual_D(U))
        assert left.map.tgt.total_dim == right.map.src.total_dim
        assert sorted(dual_D(s).dim for s in left.summands) == sorted(s.dim for s in right.summands)


def test_kernel_of_right_approximation_in_sub(kron_cat):
    M = P("1", KRONECKER)
    for X in kron_cat.modules:
        a = approx.right_add_approximation(M, X)
        K = kernel(a.map).src
        if K.total_dim:
            assert approx.is_in_sub(M, K)
