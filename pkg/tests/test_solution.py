import pytest

from ybrace.perm import Permutation
from ybrace.solution import (
    InvalidSolution,
    Solution,
    SolutionHom,
    trivial_solution,
)


def flip():
    return Solution([Permutation([1, 0])] * 2)


def cyclic(p):
    return Solution([Permutation([(b + 1) % p for b in range(p)])] * p)


def test_trivial_and_flip_validate():
    assert trivial_solution(4).validate() == []
    assert flip().validate() == []


def test_invalid_solution_reports_violations():
    with pytest.raises(InvalidSolution) as exc:
        Solution([Permutation([1, 0]), Permutation([0, 1])])
    names = {type(v).__name__ for v in exc.value.violations}
    assert "YBEFail" in names or "NonBijectiveGamma" in names


def test_r_involutive():
    S = cyclic(5)
    for x in range(5):
        for y in range(5):
            assert S.r(*S.r(x, y)) == (x, y)


def test_gamma_formula():
    S = cyclic(3)
    for y in range(3):
        g = S.gamma(y)
        for x in range(3):
            assert g(x) == S.sigma[S.sigma[x](y)].inverse()(x)


def test_perm_group_of_cyclic():
    for p in (2, 3, 5):
        G = cyclic(p).perm_group()
        assert G.order == p


def test_indecomposability():
    assert cyclic(3).is_indecomposable()
    assert not trivial_solution(3).is_indecomposable()
    assert flip().is_indecomposable()


def test_retract_and_level():
    S = cyclic(3)
    ret, hom = S.retract()
    assert ret.n == 1
    assert hom.is_bijective() is False
    assert S.mp_level() == 1
    assert trivial_solution(1).mp_level() == 0
    assert trivial_solution(5).mp_level() == 1
    assert S.retract_tower_sizes() == [3, 1]


def test_congruences_of_flip():
    cs = flip().congruences()
    assert len(cs) == 2
    assert any(c.is_discrete() for c in cs)
    assert any(c.is_total() for c in cs)
    assert flip().is_simple()


def test_quotient_is_hom():
    S = cyclic(3)
    total = [c for c in S.congruences() if c.is_total()][0]
    q, hom = S.quotient(total)
    assert q.n == 1
    assert isinstance(hom, SolutionHom)


def test_hom_law_enforced():
    S = cyclic(3)
    with pytest.raises(ValueError):
        SolutionHom(S, trivial_solution(3), (0, 1, 2))


def test_isomorphism_detects_relabeling():
    S = cyclic(3)
    # relabel points by the cycle (0 1 2)
    pi = Permutation([1, 2, 0])
    relabeled = Solution(
        [pi * S.sigma[pi.inverse()(x)] * pi.inverse() for x in range(3)]
    )
    f = S.is_isomorphic(relabeled)
    assert f is not None
    assert relabeled.is_isomorphic(trivial_solution(3)) is None


def test_simple_check_cap():
    with pytest.raises(ValueError):
        trivial_solution(13).congruences()
