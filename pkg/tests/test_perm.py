import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybrace.perm import (
    BlockSystem,
    ClosureCapExceeded,
    PermGroup,
    Permutation,
    compose,
    factorize,
    prime_divisors,
)


def s3():
    return PermGroup.close([Permutation([1, 0, 2]), Permutation([0, 2, 1])])


def test_permutation_basics():
    p = Permutation([1, 2, 0])
    assert p(0) == 1 and p.degree == 3
    assert p.order() == 3
    assert p.cycle_type() == (3,)
    assert (p * p.inverse()).is_identity()
    assert compose(p, p).images == (2, 0, 1)
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_composition_convention():
    # (p o q)(x) = p(q(x))
    p = Permutation([1, 0, 2])
    q = Permutation([0, 2, 1])
    assert (p * q).images == tuple(p(q(x)) for x in range(3))


@given(st.permutations(list(range(6))))
@settings(max_examples=50, deadline=None)
def test_inverse_roundtrip(images):
    p = Permutation(images)
    assert (p * p.inverse()).is_identity()
    assert p.inverse().inverse() == p


def test_closure_s3():
    G = s3()
    assert G.order == 6
    assert G.is_transitive()
    els = G.elements()
    assert len(els) == 6 and els[0].is_identity()
    # lexicographic public order
    assert [e.images for e in els] == sorted(e.images for e in els)


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        PermGroup.close([Permutation([1, 0, 2]), Permutation([0, 2, 1])], cap=4)


def test_index_and_compose_indices():
    G = s3()
    for i in range(6):
        for j in range(6):
            assert G.perm(G.compose_indices(i, j)) == G.perm(i) * G.perm(j)
        assert (G.perm(G.inverse_index(i)) * G.perm(i)).is_identity()


def test_orders():
    G = s3()
    assert sorted(G.orders().tolist()) == [1, 2, 2, 2, 3, 3]


def test_words_multiply_back():
    G = s3()
    for i in range(G.order):
        w = G.word(i)
        p = Permutation.identity(3)
        for letter in w:
            p = p * G.generators[letter]
        assert p == G.perm(i)


def test_subgroup_and_normality():
    G = s3()
    rot = G.index(Permutation([1, 2, 0]))
    A3 = G.subgroup_closure([rot])
    assert len(A3) == 3
    assert G.is_subgroup(A3)
    assert G.is_normal(A3)
    flip = G.index(Permutation([1, 0, 2]))
    C2 = G.subgroup_closure([flip])
    assert len(C2) == 2 and not G.is_normal(C2)
    assert G.normal_closure([flip]) == frozenset(range(6))


def test_minimal_normal_subgroup():
    G = s3()
    N = G.minimal_normal_subgroup()
    assert len(N) == 3
    assert G._is_elementary_abelian(N, 3)


def test_blocks_and_kernel():
    # C2 x C2 acting on 4 points: blocks from the subgroup generated by (01)(23)
    a = Permutation([1, 0, 3, 2])
    b = Permutation([2, 3, 0, 1])
    G = PermGroup.close([a, b])
    H = G.subgroup_closure([G.index(a)])
    bs = G.orbits_as_blocks(H)
    assert bs.partition == ((0, 1), (2, 3))
    K = G.kernel_of_block_action(bs)
    assert K == H
    act = G.block_action(bs)
    assert act.shape == (4, 2)


def test_p_elements_closed():
    G = s3()
    assert G.p_elements_closed(2) is None
    P3 = G.p_elements_closed(3)
    assert P3 is not None and len(P3) == 3
    with pytest.raises(ValueError):
        G.p_elements_closed(5)


def test_arithmetic_helpers():
    assert prime_divisors(60) == (2, 3, 5)
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert prime_divisors(1) == ()
