import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmodelcheck.complexla import random_unitary
from qmodelcheck.errors import ContractError
from qmodelcheck.subspace import (Subspace, apply, commutes, complement, contains, equal, full,
                                  join, leq, meet, projector, ray, span_of, zero)


def ket(i, d=2):
    v = np.zeros(d, dtype=complex)
    v[i] = 1
    return v


e0, e1 = ket(0), ket(1)
plus = (e0 + e1) / np.sqrt(2)
Xg = np.array([[0, 1], [1, 0]], dtype=complex)


def random_subspace(rng, d, k):
    return span_of([rng.normal(size=d) + 1j * rng.normal(size=d) for _ in range(k)], dim=d)


def test_full_and_zero():
    assert full(2).rank == 2 and full(1).rank == 1
    assert zero(3).rank == 0
    v = np.array([0.5, 0.5j, -0.5, 0.5])
    assert contains(full(4), v)
    with pytest.raises(ContractError):
        Subspace(0)


def test_span_of_examples():
    assert span_of([e0 + e1]).rank == 1
    assert span_of([e0, e1, e0 + e1]).rank == 2
    assert span_of([], dim=3).rank == 0


def test_contains_examples():
    assert contains(ray(e0), e0)
    assert not contains(ray(e0), e1)
    assert contains(span_of([e0, e1]), plus)


def test_contains_relative_threshold():
    # an unnormalized member stays a member
    assert contains(ray(e0), 1e6 * e0)
    assert not contains(ray(e0), e0 + 1e-6 * e1)


def test_contains_dimension_mismatch():
    with pytest.raises(ContractError):
        contains(ray(e0), np.ones(3))


def test_leq_examples():
    assert leq(zero(2), ray(e0))
    assert leq(ray(e0), span_of([e0, e1]))
    assert not leq(ray(plus), ray(e0))


def test_join_examples():
    X = ray(e0)
    assert equal(join(X, zero(2)), X)
    assert join(ray(e0), ray(e1)).rank == 2
    J = join(ray(e0), ray(plus))
    assert J.rank == 2 and equal(J, full(2))


def test_complement_examples(rng):
    assert complement(full(3)).rank == 0
    assert equal(complement(ray(e0)), ray(e1))
    assert equal(complement(zero(2)), full(2))
    for _ in range(20):
        d = int(rng.integers(1, 7))
        X = random_subspace(rng, d, int(rng.integers(0, d + 1)))
        C = complement(X)
        assert X.rank + C.rank == d
        if X.rank and C.rank:
            assert np.max(np.abs(X.vectors.conj() @ C.vectors.T)) < 1e-9
        assert equal(complement(C), X)


def test_meet_examples():
    d = 3
    A = span_of([ket(0, d), ket(1, d)])
    B = span_of([ket(1, d), ket(2, d)])
    M = meet(A, B)
    assert equal(M, ray(ket(1, d)))
    assert equal(meet(A, full(3)), A)
    assert meet(A, complement(A)).rank == 0


def test_de_morgan_random(rng):
    for _ in range(30):
        d = int(rng.integers(2, 6))
        X = random_subspace(rng, d, int(rng.integers(0, d + 1)))
        Y = random_subspace(rng, d, int(rng.integers(0, d + 1)))
        M = meet(X, Y)
        other = complement(join(complement(X), complement(Y)))
        assert leq(M, other) and leq(other, M)
        assert leq(M, X) and leq(M, Y)


def test_meet_of_generic_subspaces_by_dimension(rng):
    # two generic 3-planes in C^4 meet in a 2-plane
    X = random_subspace(rng, 4, 3)
    Y = random_subspace(rng, 4, 3)
    assert meet(X, Y).rank == 2


def test_projector_examples():
    assert np.allclose(projector(zero(2)), 0)
    assert np.allclose(projector(full(3)), np.eye(3))
    assert np.allclose(projector(ray(plus)), 0.5 * np.ones((2, 2)))


def test_projector_idempotent_selfadjoint(rng):
    X = random_subspace(rng, 5, 2)
    P = projector(X)
    assert np.allclose(P @ P, P, atol=1e-9)
    assert np.allclose(P, P.conj().T, atol=1e-9)
    v = X.vectors.T @ (rng.normal(size=2) + 0j)
    assert np.allclose(P @ v, v, atol=1e-8)


def test_commutes_examples(rng):
    X = random_subspace(rng, 4, 2)
    assert commutes(X, full(4))
    assert commutes(X, complement(X))
    assert not commutes(ray(e0), ray(plus))


def test_apply_examples(rng):
    X = random_subspace(rng, 4, 2)
    assert equal(apply(np.eye(4), X), X)
    assert equal(apply(Xg, ray(e0)), ray(e1))
    U = random_unitary(4, rng)
    assert apply(U, X).rank == X.rank
    with pytest.raises(ContractError):
        apply(np.diag([1, 2, 1, 1]), X)


def test_distributivity_on_common_decomposition(rng):
    for _ in range(20):
        d = 6
        W = random_unitary(d, rng)
        pick = lambda: Subspace(d, W[:, [c for c in range(d) if rng.random() < 0.5]].T)
        X, Y, Z = pick(), pick(), pick()
        lhs = meet(X, join(Y, Z))
        rhs = join(meet(X, Y), meet(X, Z))
        assert equal(lhs, rhs)


@st.composite
def subspaces(draw):
    d = draw(st.integers(1, 5))
    k = draw(st.integers(0, d))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return random_subspace(rng, d, k)


@settings(max_examples=60, deadline=None)
@given(subspaces())
def test_order_axioms(X):
    assert leq(X, X)
    assert leq(zero(X.dim), X)
    assert leq(X, full(X.dim))
    assert X.gram_error() < 1e-9


@settings(max_examples=60, deadline=None)
@given(subspaces(), st.integers(0, 2**32 - 1))
def test_join_meet_bounds(X, seed):
    rng = np.random.default_rng(seed)
    Y = random_subspace(rng, X.dim, int(rng.integers(0, X.dim + 1)))
    J, M = join(X, Y), meet(X, Y)
    assert leq(X, J) and leq(Y, J)
    assert leq(M, X) and leq(M, Y)
    # modular rank identity
    assert J.rank + M.rank == X.rank + Y.rank
