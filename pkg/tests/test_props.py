import numpy as np
import pytest

from qmodelcheck.complexla import random_unitary
from qmodelcheck.errors import ContractError
from qmodelcheck.props import (PropositionSet, label, label_meet, lattice_from_blocks, meet_of,
                               satisfies, subspace_satisfies)
from qmodelcheck.subspace import Subspace, contains, equal, full, ray, span_of, zero


def ket(i, d=3):
    v = np.zeros(d, dtype=complex)
    v[i] = 1
    return v


psi = (ket(0) + ket(1)) / np.sqrt(2)


def orthogonal_to_zero():
    # members all orthogonal to |0>
    return PropositionSet({"Y1": ray(ket(1)), "Y2": ray(ket(2)), "Y12": span_of([ket(1), ket(2)])})


def containing_two():
    return PropositionSet({
        "T": ray(ket(2)),
        "psiT": span_of([psi, ket(2)]),
        "0T": span_of([ket(0), ket(2)]),
        "H": full(3),
    })


def test_label_empty_when_state_in_no_member():
    ap = orthogonal_to_zero()
    assert label(ap, psi) == frozenset()
    assert equal(label_meet(ap, psi), full(3))


def test_empty_label_satisfies_only_full_space():
    ap = orthogonal_to_zero()
    assert satisfies(ap, psi, full(3))
    for X in (zero(3), ray(psi), span_of([ket(0), ket(1)]), span_of([psi, ket(2)])):
        assert not satisfies(ap, psi, X)


def test_label_all_names_and_nested():
    ap = PropositionSet({"a": ray(ket(0, 2)), "b": full(2)})
    assert label(ap, ket(0, 2)) == {"a", "b"}
    assert label(ap, ket(1, 2)) == {"b"}


def test_meet_of_members_containing_two():
    ap = containing_two()
    assert label(ap, psi) == {"psiT", "H"}
    assert equal(label_meet(ap, psi), span_of([psi, ket(2)]))


def test_satisfaction_needs_psi_and_two():
    ap = containing_two()
    assert satisfies(ap, psi, span_of([psi, ket(2)]))
    assert satisfies(ap, psi, full(3))
    assert not satisfies(ap, psi, ray(psi))
    assert not satisfies(ap, psi, span_of([ket(0), ket(1)]))


def test_single_label_meet_is_that_member():
    ap = PropositionSet({"a": span_of([ket(0), ket(1)])})
    assert equal(label_meet(ap, psi), ap["a"])


def test_meet_of_empty_is_full():
    assert equal(meet_of(orthogonal_to_zero(), []), full(3))


def test_label_meet_contains_state(rng):
    ap = lattice_from_blocks([ray(ket(0)), span_of([ket(1), ket(2)])], 3)
    for _ in range(20):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        v /= np.linalg.norm(v)
        if label(ap, v):
            assert contains(label_meet(ap, v), v)


def test_flags_detect_noncommuting_and_nonclosed():
    e0, e1 = ket(0, 2), ket(1, 2)
    bad = PropositionSet({"a": ray(e0), "b": ray((e0 + e1) / np.sqrt(2))})
    assert not bad.commuting and bad.max_commutator > 0.1
    assert not bad.join_closed and bad.join_failures == [("a", "b")]
    with pytest.raises(ContractError):
        bad.require_lattice()
    with pytest.raises(ContractError):
        subspace_satisfies(bad, ray(e0), full(2))


def test_lattice_from_blocks_flags():
    ap = lattice_from_blocks([ray(ket(0)), ray(ket(1)), ray(ket(2))], 3)
    assert len(ap) == 7 and ap.commuting and ap.join_closed
    assert "P0_2" in ap.names


def test_subspace_satisfies_examples():
    ap = lattice_from_blocks([ray(ket(0)), ray(ket(1)), ray(ket(2))], 3)
    assert subspace_satisfies(ap, zero(3), zero(3))
    Y = span_of([ket(0), ket(1)])
    assert subspace_satisfies(ap, Y, Y)
    assert not subspace_satisfies(ap, Y, ray(ket(0)))


def _block_ap(rng, d):
    W = random_unitary(d, rng)
    cuts = sorted(rng.choice(range(1, d), size=int(rng.integers(0, d)), replace=False).tolist())
    bounds = [0] + cuts + [d]
    blocks = [Subspace(d, W[:, a:b].T) for a, b in zip(bounds, bounds[1:])]
    return W, lattice_from_blocks(blocks, d)


def test_basis_decides_every_vector(rng):
    # random superpositions of a subspace's basis agree with the basis verdict
    checked = 0
    for _ in range(40):
        d = int(rng.integers(2, 6))
        W, ap = _block_ap(rng, d)
        cols = [c for c in range(d) if rng.random() < 0.5] or [0]
        Y = Subspace(d, W[:, cols].T)
        X = Subspace(d, W[:, [c for c in range(d) if rng.random() < 0.6]].T) \
            if rng.random() < 0.5 else Y
        verdict = subspace_satisfies(ap, Y, X)
        for _ in range(25):
            c = rng.normal(size=len(cols)) + 1j * rng.normal(size=len(cols))
            v = Y.vectors.T @ c
            v /= np.linalg.norm(v)
            if verdict:
                assert satisfies(ap, v, X)
            checked += 1
        if not verdict:
            # a generic superposition fails too
            c = rng.normal(size=len(cols)) + 1j * rng.normal(size=len(cols))
            assert not satisfies(ap, Y.vectors.T @ c / np.linalg.norm(c), X)
    assert checked == 1000


def test_dimension_checks():
    ap = containing_two()
    with pytest.raises(ContractError):
        label(ap, np.ones(2))
    with pytest.raises(ContractError):
        satisfies(ap, psi, full(2))
