import numpy as np
import pytest

from ybrace.brace import Brace
from ybrace.family import base_solution, construct
from ybrace.gbrace import (
    GBrace,
    TheoremViolation,
    diagonal_table,
    factor_word,
    hnf,
    lattice_contains,
    lambda_of_vector,
    squarefree_chain,
    verify_abelian_sylow_retractability,
    verify_additive_lambda_sums,
    verify_chain_matches_sylow_products,
    verify_lambda_on_generators,
    verify_multipermutation_property,
    verify_sylow_decomposition,
    word_to_vector,
)
from ybrace.perm import Permutation
from ybrace.solution import Solution


def flip():
    return Solution([Permutation([1, 0])] * 2)


# -- vectors and lattices ----------------------------------------------------


def test_diagonal_table():
    S = base_solution(3)
    d = diagonal_table(S)
    for z in range(3):
        x = int(d[z])
        assert S.sigma[x].inverse()(x) == z


def test_lambda_of_vector_base_cases():
    S = base_solution(3)
    assert lambda_of_vector(S, [0, 0, 0]).is_identity()
    assert lambda_of_vector(S, [1, 0, 0]) == S.sigma[0]
    assert lambda_of_vector(S, [0, -1, 0]) == S.sigma[1].inverse()


def test_pivot_order_independence(fam23):
    S = fam23
    n = S.n
    eye = np.eye(n, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            v = eye[x] + eye[y]
            lam = lambda_of_vector(S, v)
            assert lam == S.sigma[x] * S.sigma[int(S.sinv[x, y])]
            assert lam == S.sigma[y] * S.sigma[int(S.sinv[y, x])]


def test_word_vector_roundtrip(gb23):
    GB = gb23
    for i in range(GB.G.order):
        w = factor_word(GB.G, i)
        v = word_to_vector(GB.S, w, GB.gen_points)
        assert lambda_of_vector(GB.S, v) == GB.G.perm(i)


def test_word_to_vector_inverse_letters():
    S = base_solution(3)
    # the word sigma_0 o sigma_0^-1 must reduce to the zero class
    v = word_to_vector(S, [0, ~0])
    assert lambda_of_vector(S, v).is_identity()


def test_hnf_and_membership():
    rows = [[3, 0], [1, 1]]
    H = hnf(rows, 2)
    assert H[0, 0] > 0 and H[1, 1] > 0 and H[1, 0] == 0
    index = int(H[0, 0] * H[1, 1])
    assert index == 3  # the lattice spanned by (3,0),(1,1) has index 3
    assert lattice_contains(H, np.array([[1, 1], [3, 0], [2, 2], [4, 1]])).all()
    assert not lattice_contains(H, np.array([[1, 0], [0, 1]])).any()


# -- the brace on the permutation group -------------------------------------


def test_flip_brace_is_trivial_z2():
    GB = GBrace(flip())
    assert GB.G.order == 2
    assert GB.add(1, 1) == 0
    assert GB.socle() == frozenset({0, 1})


def test_rep_vectors_verified(gb23):
    GB = gb23
    rows = GB._reduce(GB.rep)
    assert np.array_equal(rows, GB.G.arr)


def test_add_neg_compose(gb23):
    GB = gb23
    for i in [0, 1, 5, 11, 17]:
        assert GB.add(i, 0) == i
        assert GB.add(i, GB.neg(i)) == 0
        for j in [0, 3, 7]:
            # a o b = a + lambda_a(b)
            assert GB.compose(i, j) == GB.add(i, GB.lambda_g(i, j))
            assert GB.add(i, j) == GB.add(j, i)


def test_addition_well_defined(gb23):
    GB = gb23
    rng = np.random.default_rng(7)
    basis = GB.lattice
    for _ in range(50):
        i, j = rng.integers(0, GB.G.order, 2)
        coeffs = rng.integers(-2, 3, basis.shape[0])
        alt = GB.rep[i] + coeffs @ basis  # another representative of i
        assert GB.lam_index(alt) == i
        assert GB.lam_index(alt + GB.rep[j]) == GB.add(int(i), int(j))


def test_socle_is_lambda_kernel(gb23):
    GB = gb23
    soc = GB.socle()
    assert len(soc) == 9
    for g in sorted(soc):
        assert all(GB.lambda_g(g, j) == j for j in range(0, 18, 5))
    out = next(i for i in range(18) if i not in soc)
    assert any(GB.lambda_g(out, j) != j for j in range(18))


def test_sylow_sizes(gb23):
    assert len(gb23.sylow_additive(2)) == 2
    assert len(gb23.sylow_additive(3)) == 9
    assert gb23.hall_additive({2, 3}) == frozenset(range(18))


def test_dense_brace_roundtrip(gb23):
    B = gb23.to_dense_brace()
    assert isinstance(B, Brace)
    assert B.m == 18
    assert len(B.socle()) == 9
    assert sorted(len(B.sylow_additive(p)) for p in (2, 3)) == [2, 9]


def test_quotient_by_socle(gb23):
    B, label = gb23.quotient(gb23.socle())
    assert B.m == 2
    assert B.is_trivial()
    assert len(set(label.tolist())) == 2


def test_subgroup_product_certificate(gb23):
    GB = gb23
    P2, P3 = GB.sylow_additive(2), GB.sylow_additive(3)
    assert GB.subgroup_product(P2, P3) == frozenset(range(18))
    assert GB.subgroup_product(P3, frozenset({0})) == P3


# -- chains and verifiers ----------------------------------------------------


def test_chain_prime_degree():
    chain = squarefree_chain(base_solution(5))
    assert chain.primes == (5,)
    assert len(chain.K[0]) == 5
    assert chain.ok


def test_chain_fam23(fam23, gb23):
    syl = {p: gb23.sylow_additive(p) for p in (2, 3)}
    chain = squarefree_chain(fam23, sylows=syl)
    assert chain.primes == (3, 2)
    assert [len(k) for k in chain.K] == [9, 18]
    assert [b.num_blocks for b in chain.blocks] == [2, 1]
    assert chain.ok


def test_chain_rejects_bad_input():
    from ybrace.solution import trivial_solution

    with pytest.raises(ValueError):
        squarefree_chain(trivial_solution(4))  # 4 is not square-free
    with pytest.raises(ValueError):
        squarefree_chain(trivial_solution(6))  # decomposable


def test_sylow_decomposition_fam23(gb23):
    r = verify_sylow_decomposition(gb23)
    assert r["ok"]
    assert r["socle_primes"] == [3]
    assert r["sigma_order"] == [3, 2]
    assert r["sylow_trivial_brace"] == {2: True, 3: True}


def test_chain_matches_products_fam23(fam23, gb23):
    syl = {p: gb23.sylow_additive(p) for p in (2, 3)}
    chain = squarefree_chain(fam23, sylows=syl)
    r = verify_chain_matches_sylow_products(gb23, chain)
    assert r["ok"]
    # exhaustive at this size: every (g, h) pair of each level is covered
    assert r["lambda_pairs_checked"] == 9 * 18 + 18 * 2


def test_multipermutation_property(fam23):
    r = verify_multipermutation_property(fam23)
    assert r["ok"]
    assert r["mp_level"] == 2
    assert r["not_simple_method"] == "congruence search"


def test_abelian_sylow_retractability(fam23):
    r = verify_abelian_sylow_retractability(fam23)
    assert r["ok"] and r["triggered"]


def test_lambda_on_generators(gb23):
    r = verify_lambda_on_generators(gb23)
    assert r["ok"]
    assert r["pairs_checked"] == 18 * 6


def test_additive_lambda_sums():
    r = verify_additive_lambda_sums(base_solution(3), kmax=3)
    assert r["ok"]
    assert r["tuples_checked"] == 3 + 9 + 27


def test_brace_axioms_exhaustive_on_dense(gb23):
    # Brace.from_tables re-validates all axioms over all 18^3 triples
    B = gb23.to_dense_brace()
    assert B.validate() == []
