import random

import pytest
from hypothesis import given, settings, strategies as st

from semik.abelian import (FgAbelianGroup, GradedKPair, IntMatrix, ZERO_GROUP, cokernel, direct_sum,
                           direct_sum_pairs, hermite_normal_form, is_isomorphic, smith_normal_form)

from oracles import determinantal_divisors, frac_det, frac_inverse, group_order_by_enumeration


def matrices(max_dim=8, lo=-50, hi=50):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def _is_diagonal_chain(s):
    k = min(s.rows, s.cols)
    for i in range(s.rows):
        for j in range(s.cols):
            if i != j and s[i, j]:
                return False
    d = [s[i, i] for i in range(k)]
    if any(x < 0 for x in d):
        return False
    nonzero = [x for x in d if x]
    if d[:len(nonzero)] != nonzero:
        return False
    return all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_reproduces_and_is_unimodular(rows):
    m = IntMatrix.from_rows(rows)
    s, u, v = smith_normal_form(m)
    assert u @ m @ v == s
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    assert _is_diagonal_chain(s)


@settings(max_examples=80, deadline=None)
@given(matrices(max_dim=4, lo=-9, hi=9))
def test_smith_diagonal_matches_determinantal_divisors(rows):
    s, _, _ = smith_normal_form(IntMatrix.from_rows(rows))
    diag = [s[i, i] for i in range(min(s.rows, s.cols)) if s[i, i]]
    assert diag == determinantal_divisors(rows)


def test_smith_worked_example():
    m = IntMatrix.from_rows([[2, 4], [6, 8]])
    s, u, v = smith_normal_form(m)
    assert s.to_rows() == [[2, 0], [0, 4]]
    assert u @ m @ v == s
    # d1 is the gcd of the entries and d1 d2 = |det|
    assert s[0, 0] == 2 and s[0, 0] * s[1, 1] == abs(frac_det([[2, 4], [6, 8]]))


def test_smith_trivial_inputs():
    s, u, v = smith_normal_form(IntMatrix.identity(3))
    assert s == IntMatrix.identity(3)
    z = IntMatrix.zeros(2, 3)
    s, u, v = smith_normal_form(z)
    assert s == z and u @ z @ v == s


def test_smith_is_deterministic():
    m = IntMatrix.from_rows([[6, 4, 2], [3, 9, 12], [0, 5, 7]])
    assert smith_normal_form(m) == smith_normal_form(m)


@pytest.mark.parametrize("rows, rank, factors", [
    ([[2, 0], [0, 3]], 0, (6,)),
    ([[0, 0, 0], [0, 0, 0]], 2, ()),
    ([[3]], 0, (3,)),
])
def test_cokernel_examples(rows, rank, factors):
    g = cokernel(IntMatrix.from_rows(rows))
    assert (g.free_rank, g.invariant_factors) == (rank, factors)


def test_cokernel_diag23_against_element_orders():
    exponent, size = group_order_by_enumeration([2, 3])
    # cyclic exactly when some element has order equal to the group size
    assert exponent == size == 6
    assert cokernel(IntMatrix.diag([2, 3])).invariant_factors == (6,)


def _random_unimodular(rng, n):
    m = IntMatrix.identity(n)
    for _ in range(6):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        e = IntMatrix.identity(n).to_rows()
        e[i][j] = rng.randint(-3, 3)
        m = m @ IntMatrix.from_rows(e)
    return m


@settings(max_examples=60, deadline=None)
@given(matrices(max_dim=5, lo=-20, hi=20), st.integers(0, 10 ** 6))
def test_cokernel_invariant_under_unimodular_change(rows, seed):
    rng = random.Random(seed)
    m = IntMatrix.from_rows(rows)
    a, b = _random_unimodular(rng, m.rows), _random_unimodular(rng, m.cols)
    assert cokernel(a @ m @ b) == cokernel(m)


def groups():
    return st.builds(lambda r, orders: FgAbelianGroup.from_orders(r, orders),
                     st.integers(0, 3), st.lists(st.integers(0, 30), max_size=4))


@given(groups(), groups(), groups())
def test_direct_sum_commutative_and_associative(a, b, c):
    assert is_isomorphic(direct_sum(a, b), direct_sum(b, a))
    assert is_isomorphic(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c)))
    assert direct_sum(a, ZERO_GROUP) == a


def test_direct_sum_examples():
    g = direct_sum(FgAbelianGroup.free(1), FgAbelianGroup(0, (2,)))
    assert (g.free_rank, g.invariant_factors) == (1, (2,))
    assert direct_sum(FgAbelianGroup(0, (2,)), FgAbelianGroup(0, (3,))) == FgAbelianGroup(0, (6,))


def test_isomorphism_examples():
    assert is_isomorphic(FgAbelianGroup(0, (2, 4)), FgAbelianGroup(0, (2, 4)))
    assert is_isomorphic(FgAbelianGroup(0, (6,)), FgAbelianGroup.from_orders(0, [2, 3]))
    assert not is_isomorphic(FgAbelianGroup.free(1), FgAbelianGroup(0, (2,)))


def test_group_rejects_bad_chain():
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 2))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (1,))


def test_direct_sum_pairs_folds_degreewise():
    z = FgAbelianGroup.free(1)
    total = direct_sum_pairs([GradedKPair(z, z), GradedKPair(z, ZERO_GROUP)])
    assert total == GradedKPair(FgAbelianGroup.free(2), z)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=2, max_size=2), min_size=2, max_size=2),
       st.integers(0, 10 ** 6))
def test_hermite_form_is_canonical_for_right_ideals(rows, seed):
    m = IntMatrix.from_rows(rows)
    if m.det() == 0:
        return
    h = hermite_normal_form(m)
    assert h[0, 1] == 0 and h[0, 0] > 0 and h[1, 1] > 0 and 0 <= h[1, 0] < h[1, 1]
    # h generates the same right ideal as m: m^{-1} h and h^{-1} m are integral
    for a, b in ((rows, h.to_rows()), (h.to_rows(), rows)):
        inv = frac_inverse(a)
        prod = [[sum(inv[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        assert all(x.denominator == 1 for r in prod for x in r)
    w = _random_unimodular(random.Random(seed), 2)
    assert hermite_normal_form(m @ w) == h


def test_inverse_over_z():
    m = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert m @ m.inverse_over_z() == IntMatrix.identity(2)
    assert IntMatrix.from_rows([[2]]).inverse_over_z() is None
