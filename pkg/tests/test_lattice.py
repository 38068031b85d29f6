import random

import pytest
from hypothesis import given, settings, strategies as st

from semik.abelian import IntMatrix
from semik.lattice import (AtomUniverse, PrincipalRule, ProjectionFamily, incidence_rank,
                           intersection_closure, is_independent, join, linear_independence_check,
                           random_closed_family, reduced_and_transition)

from oracles import is_union_of_others, rank_q


def _atoms(fam, b):
    return frozenset(a for a in range(fam.universe.atom_count) if b >> a & 1)


def closed_families(max_atoms=12, max_seeds=5):
    def build(atoms, seeds):
        members = intersection_closure([s & ((1 << atoms) - 1) for s in seeds])
        return ProjectionFamily(AtomUniverse(atoms), tuple(members)) if members else None
    return st.integers(1, max_atoms).flatmap(
        lambda n: st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=max_seeds)
        .map(lambda seeds: build(n, seeds)))


def test_chain_example():
    fam = ProjectionFamily.from_sets([["a"], ["a", "b"], ["a", "b", "c"]])
    td = reduced_and_transition(fam)
    assert td.gamma.to_rows() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    assert td.gamma_inverse.to_rows() == [[1, -1, 0], [0, 1, -1], [0, 0, 1]]
    # e' = {a}, {b}, {c}: one atom each
    assert [bin(r).count("1") for r in td.reduced] == [1, 1, 1]
    assert td.gamma @ td.gamma_inverse == IntMatrix.identity(3)


def test_singleton_and_antichain():
    single = ProjectionFamily.from_sets([["x", "y"]])
    td = reduced_and_transition(single)
    assert td.gamma.to_rows() == [[1]] and td.reduced == single.members
    td = reduced_and_transition(ProjectionFamily.from_sets([["a"], ["b"], ["c"]]))
    assert td.gamma == IntMatrix.identity(3)


def test_transition_needs_closed_family():
    fam = ProjectionFamily.from_sets([["a", "b"], ["b", "c"]])
    assert not fam.closed_flag
    with pytest.raises(ValueError):
        reduced_and_transition(fam)


def test_atoms_of_nats_chain():
    # N, 1+N, 2+N cut at the points 0, 1, 2 (2 stands for [2, inf))
    fam = ProjectionFamily.from_sets([[0, 1, 2], [1, 2], [2]])
    assert fam.universe.atom_count == 3
    assert sorted(bin(m).count("1") for m in fam.members) == [1, 2, 3]


@settings(max_examples=200, deadline=None)
@given(closed_families())
def test_transition_is_unipotent_and_reconstructs(fam):
    td = reduced_and_transition(fam)
    n = len(fam)
    nil = IntMatrix.identity(n) - td.gamma
    assert (nil ** n).is_zero()
    assert td.gamma @ td.gamma_inverse == IntMatrix.identity(n)
    for j in range(n):
        parts = [td.reduced[i] for i in range(n) if td.gamma[i, j]]
        union = 0
        for p in parts:
            assert union & p == 0
            union |= p
        assert union == fam.members[td.order[j]]


@settings(max_examples=200, deadline=None)
@given(closed_families(max_atoms=8, max_seeds=4))
def test_independence_three_ways(fam):
    sets = [_atoms(fam, m) for m in fam.members]
    by_reduced = is_independent(fam).verdict
    by_rank = linear_independence_check(fam)
    assert by_reduced == by_rank
    assert incidence_rank(fam) == rank_q([[m >> a & 1 for a in range(fam.universe.atom_count)]
                                          for m in fam.members])
    if len(fam) <= 6:
        assert by_reduced == (not any(is_union_of_others(sets, i) for i in range(len(sets))))


def test_random_closed_families_cover_both_verdicts():
    rng = random.Random(7)
    verdicts = {is_independent(random_closed_family(rng)).verdict for _ in range(100)}
    assert verdicts == {True, False}


def test_dependent_witness():
    fam = ProjectionFamily.from_sets([["a"], ["b"], ["a", "b"]], names=["e1", "e2", "e3"])
    v = is_independent(fam)
    assert not v.verdict
    assert v.witness["member"] == "e3"
    assert sorted(v.witness["equals_union_of"]) == ["e1", "e2"]
    assert incidence_rank(fam) == 2 and not linear_independence_check(fam)


def test_chain_rank_and_empty_family():
    chain = ProjectionFamily.from_sets([["a"], ["a", "b"], ["a", "b", "c"]])
    assert incidence_rank(chain) == 3 and is_independent(chain).verdict
    empty = ProjectionFamily(AtomUniverse(1), ())
    assert is_independent(empty).verdict and incidence_rank(empty) == 0


def test_principal_rule_is_independent():
    v = is_independent(PrincipalRule(5))
    assert v.verdict and v.rule == "principal"


def test_join_examples():
    fam = ProjectionFamily(AtomUniverse(4), (0b0011, 0b1100, 0b0001, 0b0110))
    assert join(fam, [0, 1]) == 0b1111
    assert join(fam, [2, 0]) == 0b0011
    assert join(fam, [0, 1, 3]) == 0b1111


@given(st.lists(st.integers(1, 255), min_size=1, max_size=5))
def test_join_is_union(members):
    fam = ProjectionFamily(AtomUniverse(8), tuple(members))
    u = 0
    for m in members:
        u |= m
    assert join(fam, range(len(members))) == u


def test_members_must_be_nonempty():
    with pytest.raises(ValueError):
        ProjectionFamily(AtomUniverse(2), (0,))
