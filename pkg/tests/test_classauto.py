from itertools import product as iproduct

import pytest

from modelgen import random_codeterministic, random_recognizer
from qmodelcheck.classauto import (BUECHI, FINITE, ClassicalAutomaton, accepts_word, all_letters,
                                   buechi_accepts_lasso, extract_profile, fmt_letter, letter,
                                   validate)
from qmodelcheck.errors import ContractError, ModelError

A, B = letter({"A"}), letter({"B"})


def ends_in_a():
    # q1 means "last letter was A"; each letter permutes {q0, q1}
    t = [("q0", A, "q1"), ("q1", A, "q0"), ("q0", B, "q0"), ("q1", B, "q1")]
    return ClassicalAutomaton(["q0", "q1"], t, ["q0"], ["q1"])


def test_all_letters_and_format():
    assert all_letters(["a", "b"]) == [frozenset(), {"a"}, {"b"}, {"a", "b"}]
    assert fmt_letter(letter({"b", "a"})) == "{a,b}"


def test_validate_flags():
    single = ClassicalAutomaton(["q"], [("q", A, "q"), ("q", B, "q")], ["q"], [])
    assert validate(single) == {"deterministic": True, "co_deterministic": True, "reversible": True}
    fwd = ClassicalAutomaton(["q", "r", "s"], [("q", A, "r"), ("q", A, "s")], ["q"], [])
    assert validate(fwd)["reversible"] is False and validate(fwd)["co_deterministic"] is True
    bwd = ClassicalAutomaton(["q", "r", "s"], [("r", A, "q"), ("s", A, "q")], ["r"], [])
    f = validate(bwd)
    assert f["reversible"] is False and f["deterministic"] is True
    assert f["co_deterministic"] is False


def test_unknown_states_rejected():
    with pytest.raises(ModelError):
        ClassicalAutomaton(["q"], [("q", A, "z")], ["q"], [])
    with pytest.raises(ModelError):
        ClassicalAutomaton(["q"], [], ["x"], [])
    with pytest.raises(ModelError):
        ClassicalAutomaton(["q", "q"], [], ["q"], [])


def test_accepts_word_examples():
    M = ends_in_a()
    assert accepts_word(M, []) is False
    one = ClassicalAutomaton(["s", "f"], [("s", A, "f")], ["s"], ["f"])
    assert accepts_word(one, [A])
    # two letters permuting states: acceptance means an odd number of A's
    assert accepts_word(M, [A, B]) is True
    assert accepts_word(M, [B, A]) is True
    assert accepts_word(M, [A, A]) is False


def test_accepts_word_partial_run():
    M = ClassicalAutomaton(["s", "f"], [("s", A, "f")], ["s"], ["f"])
    assert accepts_word(M, [B, A]) is False


def test_buechi_lasso_examples():
    loop_in_f = ClassicalAutomaton(["f"], [("f", A, "f")], ["f"], ["f"], BUECHI)
    assert buechi_accepts_lasso(loop_in_f, [], [A])
    unreachable = ClassicalAutomaton(["s", "f"], [("s", A, "s"), ("f", A, "f")], ["s"], ["f"], BUECHI)
    assert not buechi_accepts_lasso(unreachable, [A], [A])
    # F is on the A-cycle only
    t = [("q0", A, "q1"), ("q1", A, "q0"), ("q0", B, "q0"), ("q1", B, "q1")]
    M = ClassicalAutomaton(["q0", "q1"], t, ["q0"], ["q1"], BUECHI)
    assert buechi_accepts_lasso(M, [], [A])
    assert not buechi_accepts_lasso(M, [], [B])
    with pytest.raises(ContractError):
        buechi_accepts_lasso(M, [], [])
    with pytest.raises(ContractError):
        accepts_word(M, [A])


def _unrolled_hits(M, stem, loop):
    # simulate stem + (2|Q|+1) loops; some final state must recur at the same
    # loop position. A final state can first appear late in the run's period,
    # so |Q|+1 loops are not always enough.
    current = set(M.initials)
    for a in stem:
        current = M.step_set(current, a)
    seen_final = {(q, 0): 1 for q in current & set(M.finals)}
    for k in range((2 * len(M.states) + 1) * len(loop)):
        current = M.step_set(current, loop[k % len(loop)])
        for q in current & set(M.finals):
            key = (q, (k + 1) % len(loop))
            seen_final[key] = seen_final.get(key, 0) + 1
    return any(c >= 2 for c in seen_final.values())


def test_lasso_agrees_with_unrolling(rng):
    letters = [A, B]
    for _ in range(300):
        M = random_recognizer(rng, letters, mode=BUECHI)
        loop = [letters[i] for i in rng.integers(0, 2, int(rng.integers(1, 4)))]
        stem = [letters[i] for i in rng.integers(0, 2, int(rng.integers(0, 3)))]
        assert buechi_accepts_lasso(M, stem, loop) == _unrolled_hits(M, stem, loop)


def test_profile_reversible_uses_unique_successor():
    M = ClassicalAutomaton(["a", "b", "c"], [("a", A, "b")], ["a"], ["c"])
    p = extract_profile(M)
    assert p.delta[("a", A)] == "b"
    perm = p.permutation(A)
    assert perm["a"] == "b" and sorted(perm.values()) == ["a", "b", "c"]
    # kappa pairs the remaining states in declaration order
    assert perm["b"] == "a" and perm["c"] == "c"


def test_profile_prefers_final_successor():
    M = ClassicalAutomaton(["q", "q1", "q2"], [("q", A, "q1"), ("q", A, "q2")], ["q"], ["q2"])
    assert extract_profile(M).delta[("q", A)] == "q2"


def test_profile_rejects_backward_clash():
    M = ClassicalAutomaton(["q", "r"], [("q", A, "r"), ("r", A, "r")], ["q"], [])
    with pytest.raises(ContractError):
        extract_profile(M)


def test_profile_bijective_on_random_codeterministic(rng):
    letters = all_letters(["a", "b"])
    for _ in range(200):
        M = random_codeterministic(rng, letters)
        p = extract_profile(M)
        for a in letters:
            perm = p.permutation(a)
            assert sorted(perm.values()) == sorted(M.states)
            for (q, b), q2 in p.delta.items():
                if b == a:
                    assert q2 in M.succ(q, a)
                    if set(M.succ(q, a)) & set(M.finals):
                        assert q2 in M.finals


def _subset_accepts(M, word):
    current = set(M.initials)
    for a in word:
        current = {q2 for q in current for q2 in M.succ(q, a)}
    return bool(current & set(M.finals))


def _permutation_run_accepts(M, word):
    # a reversible automaton's run is unique; extending it by kappa must not
    # change acceptance as long as the real run is still alive
    p = extract_profile(M)
    q = M.initials[0]
    for a in word:
        if not M.succ(q, a):
            return False
        q = p.next_state(q, a)
    return q in M.finals


def test_acceptance_differential(rng):
    letters = [A, B]
    for _ in range(100):
        M = random_recognizer(rng, letters, mode=FINITE)
        for n in range(5):
            for w in iproduct(letters, repeat=n):
                assert accepts_word(M, w) == _subset_accepts(M, w) == _permutation_run_accepts(M, w)
