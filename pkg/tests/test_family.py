import pytest

from ybrace.family import (
    base_solution,
    construct,
    expected_group_order,
    extend,
    fiber_blocks,
    is_prime,
    verify_family,
)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_base_solution_properties():
    for p in (2, 3, 5):
        S = base_solution(p)
        assert S.n == p
        assert S.is_indecomposable()
        assert S.mp_level() == 1
        assert S.perm_group().order == p
    with pytest.raises(ValueError):
        base_solution(4)


def test_construct_input_checks():
    with pytest.raises(ValueError):
        construct([])
    with pytest.raises(ValueError):
        construct([2, 2])
    with pytest.raises(ValueError):
        construct([2, 9])


def test_expected_group_order():
    assert expected_group_order([3]) == 3
    assert expected_group_order([2, 3]) == 2 * 3**2
    assert expected_group_order([3, 2]) == 3 * 2**3
    assert expected_group_order([2, 5]) == 2 * 5**2
    assert expected_group_order([2, 3, 5]) == 2 * 3**2 * 5**6


def test_fam23_invariants(fam23):
    S = fam23
    assert S.n == 6
    assert S.validate() == []
    assert S.is_indecomposable()
    assert S.mp_level() == 2
    assert S.perm_group().order == 18
    assert S.retract_tower_sizes() == [6, 2, 1]


def test_retract_recovers_inner_solution(fam23):
    ret, _ = fam23.retract()
    assert ret.is_isomorphic(base_solution(2)) is not None


def test_prime_order_matters():
    A = construct([2, 3])
    B = construct([3, 2])
    assert A.n == B.n == 6
    assert A.perm_group().order == 18
    assert B.perm_group().order == 24
    assert A.is_isomorphic(B) is None


def test_fiber_blocks_are_retract_classes(fam23):
    bs = fiber_blocks(fam23, 2)
    assert bs.partition == ((0, 2, 4), (1, 3, 5))
    ret, hom = fam23.retract()
    for blk in bs.partition:
        assert len({hom.mapping[y] for y in blk}) == 1


def test_extend_rejects_nonprime(fam23):
    with pytest.raises(ValueError):
        extend(fam23, 6)


def test_verify_family_small():
    for primes in ([2, 3], [3, 2], [2, 5]):
        r = verify_family(primes)
        assert r["ok"], r
        assert r["mp_level"] == 2
        top = r["levels"][-1]
        assert top["retract_is_previous"]
        assert top["kernel_elementary_abelian"]


def test_verify_family_cap():
    with pytest.raises(ValueError):
        verify_family([2, 3, 5], cap=1000)
