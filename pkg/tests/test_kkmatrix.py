import random

import pytest
from hypothesis import given, settings, strategies as st

from semik.abelian import IntMatrix
from semik.kkmatrix import (ActionMismatch, EquivariantMatrix, PermAction, check_equivariance, compose,
                            decompose_pos_neg, from_transition, is_invertible, random_action,
                            random_equivariant)
from semik.lattice import AtomUniverse, ProjectionFamily, reduced_and_transition
from semik.profinite import cantor_basis

from oracles import frac_det, matmul

SWAP = PermAction(2, ((1, 0),))


def M(rows):
    return IntMatrix.from_rows(rows)


def test_equivariance_examples():
    triv = PermAction.trivial(2)
    assert check_equivariance(IntMatrix.identity(2), triv, triv)
    assert not check_equivariance(M([[1, 0], [0, 2]]), SWAP, SWAP)
    assert check_equivariance(M([[3, 5], [5, 3]]), SWAP, SWAP)
    with pytest.raises(ActionMismatch):
        EquivariantMatrix(M([[1, 0], [0, 2]]), SWAP, SWAP)
    with pytest.raises(ActionMismatch):
        check_equivariance(IntMatrix.identity(2), PermAction.trivial(2, 2), triv)


def test_decomposition_examples():
    plus, minus = decompose_pos_neg(EquivariantMatrix(M([[1, -1]]), PermAction.trivial(2), PermAction.trivial(1)))
    assert plus.gamma.to_rows() == [[1, 0]] and minus.gamma.to_rows() == [[0, 1]]
    pos = EquivariantMatrix(M([[2, 1], [1, 2]]), SWAP, SWAP)
    plus, minus = decompose_pos_neg(pos)
    assert plus == pos and minus.gamma.is_zero()
    signed = EquivariantMatrix(M([[2, -3], [-3, 2]]), SWAP, SWAP)
    for part in decompose_pos_neg(signed):
        assert check_equivariance(part.gamma, SWAP, SWAP)


def test_composition_order_is_application_first():
    triv = PermAction.trivial(2)
    gamma = EquivariantMatrix(M([[1, 1], [0, 1]]), triv, triv)
    lam = EquivariantMatrix(M([[1, -1], [0, 1]]), triv, triv)
    assert compose(gamma, lam).gamma == IntMatrix.identity(2)
    # non-commuting pair pins the convention: result is second @ first
    a = EquivariantMatrix(M([[1, 2], [0, 1]]), triv, triv)
    b = EquivariantMatrix(M([[1, 0], [3, 1]]), triv, triv)
    assert compose(a, b).gamma.to_rows() == matmul([[1, 0], [3, 1]], [[1, 2], [0, 1]])
    assert compose(a, EquivariantMatrix.identity(triv)) == a


def test_composition_rejects_mismatched_actions():
    a = EquivariantMatrix(IntMatrix.identity(2), SWAP, SWAP)
    b = EquivariantMatrix(IntMatrix.identity(2), PermAction.trivial(2), PermAction.trivial(2))
    with pytest.raises(ActionMismatch):
        compose(a, b)


def _triple(rng):
    gens = rng.randint(1, 2)
    acts = [random_action(rng, rng.randint(1, 6), gens) for _ in range(4)]
    return [random_equivariant(rng, acts[i], acts[i + 1]) for i in range(3)]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_composition_is_associative_and_equivariant(seed):
    a, b, c = _triple(random.Random(seed))
    left, right = compose(compose(a, b), c), compose(a, compose(b, c))
    assert left == right
    assert left.gamma.to_rows() == matmul(matmul(c.gamma.to_rows(), b.gamma.to_rows()), a.gamma.to_rows())
    assert check_equivariance(left.gamma, a.source, c.target)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_decompositions_differ_by_a_common_term(seed):
    rng = random.Random(seed)
    act = random_action(rng, rng.randint(1, 5), 1)
    g = random_equivariant(rng, act, act)
    extra = random_equivariant(rng, act, act, 0, 3)
    plus, minus = decompose_pos_neg(g)
    # a second nonnegative decomposition: add the same nonnegative term to both parts
    plus2, minus2 = plus.gamma + extra.gamma, minus.gamma + extra.gamma
    assert plus2 - minus2 == g.gamma
    assert plus.gamma + minus2 == minus.gamma + plus2


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_invertibility_matches_determinant(seed):
    rng = random.Random(seed)
    act = random_action(rng, rng.randint(1, 5), rng.randint(1, 2))
    m = random_equivariant(rng, act, act, -1, 1)
    inv = is_invertible(m)
    assert inv.invertible == (abs(frac_det(m.gamma.to_rows())) == 1)
    assert inv.invertible == is_invertible(compose(m, EquivariantMatrix.identity(act))).invertible
    if inv.invertible:
        n = act.degree
        assert inv.inverse.gamma @ m.gamma == IntMatrix.identity(n) == m.gamma @ inv.inverse.gamma
        assert check_equivariance(inv.inverse.gamma, act, act)


def test_invertibility_examples():
    triv1 = PermAction.trivial(1)
    assert not is_invertible(EquivariantMatrix(M([[2]]), triv1, triv1)).invertible
    perm = SWAP.matrix(0)
    res = is_invertible(EquivariantMatrix(perm, SWAP, SWAP))
    assert res.invertible and res.inverse.gamma == perm.transpose()
    rect = EquivariantMatrix(M([[1, 0]]), PermAction.trivial(2), triv1)
    assert not is_invertible(rect).invertible


def test_bridge_for_chain_family():
    fam = ProjectionFamily.from_sets([["a"], ["a", "b"], ["a", "b", "c"]])
    bridge = from_transition(reduced_and_transition(fam), PermAction.trivial(3))
    assert bridge.gamma.to_rows() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    res = is_invertible(bridge)
    assert res.invertible and res.inverse.gamma.to_rows() == [[1, -1, 0], [0, 1, -1], [0, 0, 1]]


def test_bridge_for_cantor_window_two_with_swap():
    cb = cantor_basis(2)
    fam = ProjectionFamily(AtomUniverse(4), cb.members)
    # swapping coordinates 0 and 1 exchanges V_{0} and V_{1}
    index = {f: i for i, f in enumerate(cb.coords)}
    perm = tuple(index[frozenset({1 - n for n in f})] for f in cb.coords)
    bridge = from_transition(reduced_and_transition(fam), PermAction(4, (perm,)))
    assert is_invertible(bridge).invertible


def test_bridge_rejects_non_symmetry():
    fam = ProjectionFamily.from_sets([["a"], ["a", "b"]])
    with pytest.raises(ActionMismatch):
        from_transition(reduced_and_transition(fam), PermAction(2, ((1, 0),)))


def test_bridge_for_singleton():
    fam = ProjectionFamily.from_sets([["x"]])
    assert from_transition(reduced_and_transition(fam), PermAction.trivial(1)).gamma.to_rows() == [[1]]


def test_json_round_trip():
    m = EquivariantMatrix(M([[3, 5], [5, 3]]), SWAP, SWAP)
    assert EquivariantMatrix.from_json(m.to_json()) == m
    with pytest.raises(ValueError):
        PermAction(2, ((0, 0),))
