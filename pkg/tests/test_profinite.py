import random

import pytest
from hypothesis import given, settings, strategies as st

from semik.profinite import (ProjectiveSystem, ProjectiveSystemError, cantor_basis, check_condition_c,
                             compatible_labeling, generated_ring, random_system, regular_basis,
                             shift_pattern, verify_regular)


def _independent_by_contained_union(members):
    # X is a union of other members iff it is the union of all members strictly inside it
    for i, x in enumerate(members):
        inside = 0
        for j, y in enumerate(members):
            if j != i and y & ~x == 0 and y != x:
                inside |= y
        if inside == x:
            return False
    return len(set(members)) == len(members)


def _closed(members):
    present = set(members)
    return all((a & b) == 0 or (a & b) in present for a in members for b in members)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 6), st.integers(1, 8))
def test_regular_basis_properties(seed, depth, max_size):
    system = random_system(random.Random(seed), depth, max_size)
    lab = compatible_labeling(system)
    assert check_condition_c(system, lab)
    basis = regular_basis(system, lab)
    report = verify_regular(basis.members, basis.space_size)
    assert report.regular
    # brute-force routes for the three properties
    assert _closed(basis.members)
    assert _independent_by_contained_union(list(basis.members))
    assert generated_ring(basis.members, basis.space_size) == set(range(1, 1 << basis.space_size))
    for a, b in basis.dedup:
        assert basis.all_sets[a] == basis.all_sets[b]


def test_two_block_example():
    system = ProjectiveSystem((2, 3), ((0, 0, 1),))
    lab = compatible_labeling(system)
    assert lab.psi[1] == (0, 1, 2) and lab.cuts[0][1] == 2
    basis = regular_basis(system, lab)
    assert set(basis.all_sets) == {(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)}
    assert basis.all_sets[(1, 1)] == basis.all_sets[(2, 2)]
    assert ((1, 1), (2, 2)) in basis.dedup


def test_labeling_reorders_interleaved_fibers():
    # points 0 and 2 lie over a, point 1 over b: the labeling puts 0, 2 first
    system = ProjectiveSystem((2, 3), ((0, 1, 0),))
    lab = compatible_labeling(system)
    assert lab.psi[1] == (0, 2, 1)
    assert check_condition_c(system, lab)


def test_constant_and_depth_one_systems():
    const = ProjectiveSystem((1, 1, 1), ((0,), (0,)))
    lab = compatible_labeling(const)
    assert lab.psi == ((0,), (0,), (0,))
    basis = regular_basis(ProjectiveSystem((4,), ()))
    assert list(basis.members) == [0b1, 0b11, 0b111, 0b1111]


def test_binary_towers():
    system = ProjectiveSystem((2, 4), ((0, 0, 1, 1),))
    basis = regular_basis(system)
    assert len(basis.all_sets) == 6
    assert verify_regular(basis.members, 4).regular
    tree = ProjectiveSystem((2, 4, 8), ((0, 0, 1, 1), (0, 0, 1, 1, 2, 2, 3, 3)))
    lab = compatible_labeling(tree)
    assert check_condition_c(tree, lab)
    assert lab.cuts == ((0, 2, 4), (0, 2, 4, 6, 8))


def test_verify_regular_negative_cases():
    # {a,b}, {b,c} without {b}: not intersection-closed
    assert not verify_regular([0b011, 0b110], 3).intersection_closed
    report = verify_regular([0b01, 0b10, 0b11], 2)
    assert report.generates and not report.independent
    with pytest.raises(ValueError):
        verify_regular([0], 1)


@pytest.mark.parametrize("doc", [
    {"levels": []},
    {"levels": [2, 3], "maps": []},
    {"levels": [2, 3], "maps": [[0, 0, 0]]},
    {"levels": [2, 3], "maps": [[0, 1, 5]]},
    {"levels": [0]},
])
def test_bad_systems_rejected(doc):
    with pytest.raises(ProjectiveSystemError):
        ProjectiveSystem.from_json(doc)


def test_system_json_round_trip():
    s = ProjectiveSystem((2, 4), ((0, 1, 1, 0),))
    assert ProjectiveSystem.from_json(s.to_json()) == s


def test_cantor_basis_small_windows():
    one = cantor_basis(1)
    assert len(one.members) == 2 and one.member_of([]) == 0b11
    two = cantor_basis(2)
    assert len(two.members) == 4
    assert _independent_by_contained_union(list(two.members))
    three = cantor_basis(3)
    assert three.shift[(1, frozenset({0}))] == frozenset({1})


@pytest.mark.parametrize("window", [2, 3, 4, 5])
def test_cantor_basis_shift_equivariance(window):
    cb = cantor_basis(window)
    for (g, f), moved in cb.shift.items():
        src, dst = cb.member_of(f), cb.member_of(moved)
        for a in range(1 << window):
            b = shift_pattern(a, g, window)
            if b is not None:
                assert (src >> a & 1) == (dst >> b & 1)
