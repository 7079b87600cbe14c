import numpy as np
import pytest

from ybrace.brace import (
    Brace,
    BraceAction,
    InvalidBrace,
    semidirect,
    trivial_brace,
    wreath,
)
from ybrace.solution import trivial_solution


def test_trivial_brace_is_a_brace():
    B = trivial_brace([2, 3])
    assert B.m == 6
    assert B.is_trivial()
    assert B.socle() == frozenset(range(6))
    assert B.associated_solution() == trivial_solution(6)


def test_invalid_tables_rejected():
    mul = np.array([[0, 1], [1, 0]])
    bad_add = np.array([[1, 0], [0, 1]])
    with pytest.raises(InvalidBrace):
        Brace(mul, bad_add)
    with pytest.raises(InvalidBrace):
        Brace(np.array([[0, 0], [1, 1]]), mul)


def test_sylow_and_hall_parts():
    B = trivial_brace([2, 3])
    assert sorted(B.sylow_additive(2)) == [0, 1]
    assert sorted(B.sylow_additive(3)) == [0, 2, 4]
    assert B.hall_additive([2, 3]) == frozenset(range(6))
    assert B.hall_additive([5]) == frozenset({0})


def test_additive_orders():
    B = trivial_brace([2, 3])
    assert sorted(B.additive_orders().tolist()) == [1, 2, 3, 3, 6, 6]


def test_quotient_by_sylow():
    B = trivial_brace([2, 3])
    Q, proj = B.quotient(B.sylow_additive(2))
    assert Q.m == 3
    assert proj[B.zero] == Q.zero


def test_wreath_product_structure():
    # base (Z/2)^3 extended by a cyclic rotation of the three coordinates
    Q = trivial_brace([3])
    W = wreath(2, Q, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert W.m == 24
    assert len(W.socle()) == 8
    assert sorted(W.additive_orders().tolist()).count(2) == 7
    S = W.associated_solution()
    assert S.perm_group().order == 3


def test_semidirect_embeds_factors():
    I = trivial_brace([2, 2])
    L = trivial_brace([2])
    swap = (0, 2, 1, 3)  # exchange the two coordinates of (Z/2)^2
    act = BraceAction(L, I, ((0, 1, 2, 3), swap))
    B = semidirect(I, L, act)
    assert B.m == 8
    # lambda of the L-generator swaps the I-coordinates
    assert B.lmb(1, 1 * L.m) == 2 * L.m


def test_action_must_be_homomorphism():
    I = trivial_brace([3])
    L = trivial_brace([2])
    shift = (1, 2, 0)  # order 3: not an involution, so not a C2-action
    with pytest.raises(ValueError):
        BraceAction(L, I, ((0, 1, 2), shift))


def test_left_ideal_and_ideal_predicates():
    Q = trivial_brace([3])
    W = wreath(2, Q, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    soc = W.socle()
    assert W.is_ideal(soc)
    assert W.is_left_ideal(W.sylow_additive(2))
    assert not W.is_left_ideal({0, 1})  # not additively closed in general


def test_fingerprint_fields():
    fp = trivial_brace([2, 2]).fingerprint()
    assert fp["order"] == 4
    assert fp["socle_size"] == 4
    assert fp["additive_order_profile"] == [(1, 1), (2, 3)]
