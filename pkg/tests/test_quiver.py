import pytest

from repdim.quiver import (
    A2, DYNKIN, EUCLIDEAN, KRONECKER, WILD, Quiver, QuiverError, coxeter_transform, defect, euler_form,
    gabriel_type, null_root,
)


def test_euler_examples():
    assert euler_form(A2, (1, 1), (0, 1)) == 0
    assert euler_form(KRONECKER, (1, 2), (1, 2)) == 1
    assert euler_form(KRONECKER, (3, 1), (0, 0)) == 0


def test_gabriel_types():
    assert gabriel_type(A2) == DYNKIN
    assert gabriel_type(KRONECKER) == EUCLIDEAN
    assert null_root(KRONECKER) == (1, 1)
    k3 = Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")])
    assert gabriel_type(k3) == WILD


def test_d4_tilde_and_orientation():
    star = [("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0"), ("d", "4", "0")]
    q = Quiver.from_edges(["0", "1", "2", "3", "4"], star)
    assert gabriel_type(q) == EUCLIDEAN
    assert null_root(q) == (2, 1, 1, 1, 1)
    flipped = Quiver.from_edges(["0", "1", "2", "3", "4"], [("a", "0", "1"), ("b", "2", "0"),
                                                          ("c", "0", "3"), ("d", "4", "0")])
    assert gabriel_type(flipped) == EUCLIDEAN
    a3 = Quiver.from_edges(["1", "2", "3"], [("a", "1", "2"), ("b", "3", "2")])
    assert gabriel_type(a3) == DYNKIN


def test_defect_signs():
    assert defect(KRONECKER, (0, 1)) == -1
    assert defect(KRONECKER, (1, 1)) == 0
    assert defect(KRONECKER, (1, 0)) == 1


def test_coxeter_examples():
    assert coxeter_transform(KRONECKER, (4, 7), 0) == (4, 7)
    assert coxeter_transform(A2, (1, 0), 1) == (0, 1)
    assert coxeter_transform(KRONECKER, (0, 1), -1) == (2, 3)
    assert coxeter_transform(KRONECKER, (2, 3), 1) == (0, 1)


@pytest.mark.parametrize("x", [(0, 1), (1, 2), (1, 1), (3, 2), (5, 1)])
def test_defect_coxeter_invariant(x):
    assert defect(KRONECKER, coxeter_transform(KRONECKER, x, 1)) == defect(KRONECKER, x)


def test_validation():
    with pytest.raises(QuiverError):
        Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(QuiverError):
        Quiver.from_edges(["1", "2", "3"], [("a", "1", "2")])
    with pytest.raises(QuiverError):
        Quiver.from_edges(["1", "2"], [("a", "1", "2"), ("a", "1", "2")])
