"""Finite families of commuting projections, encoded as atom bitsets.

A projection is the set of atoms it covers; bit ``a`` of a member is set when
atom ``a`` lies under it.  Joins, reduced projections e' and the 0/1
transition matrix are all exact bit operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Sequence

from .abelian import IntMatrix


@dataclass(frozen=True)
class AtomUniverse:
    atom_count: int
    labels: tuple[Hashable, ...] | None = None

    def __post_init__(self):
        if self.atom_count < 1:
            raise ValueError("an atom universe needs at least one atom")
        if self.labels is not None and len(self.labels) != self.atom_count:
            raise ValueError("one label per atom")


def _is_closed(members: Sequence[int]) -> bool:
    present = set(members)
    return all((a & b) == 0 or (a & b) in present for a, b in combinations(members, 2))


@dataclass(frozen=True)
class ProjectionFamily:
    universe: AtomUniverse
    members: tuple[int, ...]
    names: tuple[Hashable, ...] | None = None
    closed_flag: bool = field(init=False)

    def __post_init__(self):
        full = (1 << self.universe.atom_count) - 1
        for b in self.members:
            if b == 0:
                raise ValueError("projection family members must be nonempty")
            if b & ~full:
                raise ValueError("member uses atoms outside the universe")
        if self.names is not None and len(self.names) != len(self.members):
            raise ValueError("one name per member")
        object.__setattr__(self, "closed_flag", _is_closed(self.members))

    @classmethod
    def from_sets(cls, sets: Sequence[Sequence[Hashable]], names=None) -> "ProjectionFamily":
        """Build a family from explicit finite sets; atoms are their Venn regions."""
        points = sorted({x for s in sets for x in s}, key=repr)
        signatures: dict[int, list] = {}
        for x in points:
            sig = sum(1 << i for i, s in enumerate(sets) if x in s)
            signatures.setdefault(sig, []).append(x)
        return cls.from_signatures(list(signatures), len(sets),
                                   labels=[tuple(v) for v in signatures.values()], names=names)

    @classmethod
    def from_signatures(cls, signatures: Sequence[int], n_members: int,
                        labels=None, names=None) -> "ProjectionFamily":
        """Atoms given by membership signatures (bit i = inside member i)."""
        sigs = [s for s in signatures if s]
        if labels is not None:
            labels = [lab for s, lab in zip(signatures, labels) if s]
        members = []
        for i in range(n_members):
            members.append(sum(1 << a for a, s in enumerate(sigs) if s >> i & 1))
        universe = AtomUniverse(max(len(sigs), 1), tuple(labels) if labels is not None and sigs else None)
        return cls(universe, tuple(members), tuple(names) if names is not None else None)

    def __len__(self) -> int:
        return len(self.members)

    def name(self, i: int):
        return self.names[i] if self.names is not None else i


def popcount(b: int) -> int:
    return bin(b).count("1")


def _indicator(b: int, n: int) -> list[int]:
    return [b >> a & 1 for a in range(n)]


def join(family: ProjectionFamily, subset: Sequence[int]) -> int:
    """Smallest projection above the chosen members.

    Computed as the bitset union, and cross-checked against the signed
    inclusion-exclusion sum of products of the chosen projections.
    """
    subset = list(subset)
    if not subset:
        raise ValueError("join of an empty subset")
    n = family.universe.atom_count
    union = 0
    for i in subset:
        union |= family.members[i]
    signed = [0] * n
    for size in range(1, len(subset) + 1):
        sign = 1 if size % 2 else -1
        for combo in combinations(subset, size):
            prod = -1
            for i in combo:
                prod &= family.members[i]
            for a in range(n):
                signed[a] += sign * (prod >> a & 1)
    if signed != _indicator(union, n):
        raise AssertionError("inclusion-exclusion disagrees with bitset union")
    return union


@dataclass(frozen=True)
class TransitionData:
    order: tuple[int, ...]
    gamma: IntMatrix
    gamma_inverse: IntMatrix
    reduced: tuple[int, ...]

    def position(self, member: int) -> int:
        return self.order.index(member)


def topological_order(family: ProjectionFamily, tiebreak=None) -> list[int]:
    # Smaller sets first keeps Gamma upper triangular (gamma_ij = 1 iff e_i <= e_j).
    key = tiebreak or (lambda i: i)
    return sorted(range(len(family)), key=lambda i: (popcount(family.members[i]), key(i)))


def reduced_projections(family: ProjectionFamily) -> list[int]:
    ms = family.members
    out = []
    for i, e in enumerate(ms):
        below = 0
        for j, f in enumerate(ms):
            if j != i and f & ~e == 0 and f != e:
                below |= f
        out.append(e & ~below)
    return out


def reduced_and_transition(family: ProjectionFamily, tiebreak=None) -> TransitionData:
    if not family.closed_flag:
        raise ValueError("transition matrix needs an intersection-closed family")
    if len(set(family.members)) != len(family.members):
        raise ValueError("family members must be distinct")
    order = topological_order(family, tiebreak)
    ms = [family.members[i] for i in order]
    n = len(ms)
    gamma = IntMatrix.from_rows(
        [[1 if ms[i] & ~ms[j] == 0 else 0 for j in range(n)] for i in range(n)], n
    )
    nil = IntMatrix.identity(n) - gamma
    inverse, power = IntMatrix.identity(n), IntMatrix.identity(n)
    for _ in range(n):
        power = power @ nil
        inverse = inverse + power
    if gamma @ inverse != IntMatrix.identity(n) or inverse @ gamma != IntMatrix.identity(n):
        raise AssertionError("Neumann series failed to invert the transition matrix")
    reduced = reduced_projections(family)
    return TransitionData(tuple(order), gamma, inverse, tuple(reduced[i] for i in order))


@dataclass(frozen=True)
class IndependenceVerdict:
    verdict: bool
    rule: str  # "reduced-projections" or "principal"
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"independent": self.verdict, "rule": self.rule}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class PrincipalRule:
    """Marker for families whose members are all principal ideals pP.

    Such a family is independent outright: if pP is a union of q_i P then p
    lies in some q_i P, which forces pP = q_i P.
    """

    def __init__(self, count: int = 0, note: str = ""):
        self.count = count
        self.note = note


def is_independent(family: ProjectionFamily | PrincipalRule) -> IndependenceVerdict:
    if isinstance(family, PrincipalRule):
        return IndependenceVerdict(True, "principal")
    ms = family.members
    reduced = reduced_projections(family)
    for i, r in enumerate(reduced):
        if r == 0:
            below = [j for j, f in enumerate(ms) if f != ms[i] and f & ~ms[i] == 0]
            if not below:
                # An empty reduced projection with nothing below would be the
                # empty set, which the family excludes.
                raise AssertionError("empty member in projection family")
            witness = {
                "member": _label(family, i),
                "equals_union_of": [_label(family, j) for j in below],
                "equation": f"e[{_label(family, i)}] = "
                            + " v ".join(f"e[{_label(family, j)}]" for j in below),
            }
            return IndependenceVerdict(False, "reduced-projections", witness)
    # Duplicate members make the family dependent as well (X = X' with X' != X as index).
    seen: dict[int, int] = {}
    for i, e in enumerate(ms):
        if e in seen:
            j = seen[e]
            witness = {
                "member": _label(family, i),
                "equals_union_of": [_label(family, j)],
                "equation": f"e[{_label(family, i)}] = e[{_label(family, j)}]",
            }
            return IndependenceVerdict(False, "reduced-projections", witness)
        seen[e] = i
    return IndependenceVerdict(True, "reduced-projections")


def _label(family: ProjectionFamily, i: int):
    name = family.name(i)
    return name if isinstance(name, (int, str)) else str(name)


def rank_over_q(rows: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def incidence_rank(family: ProjectionFamily) -> int:
    n = family.universe.atom_count
    return rank_over_q([_indicator(b, n) for b in family.members])


def linear_independence_check(family: ProjectionFamily) -> bool:
    """Members linearly independent as indicator vectors over Q."""
    if not family.closed_flag:
        raise ValueError("linear criterion needs an intersection-closed family")
    return incidence_rank(family) == len(family)


def intersection_closure(members: Sequence[int]) -> list[int]:
    """Close a list of nonempty bitsets under pairwise intersection (up to 0)."""
    out = list(dict.fromkeys(m for m in members if m))
    seen = set(out)
    i = 0
    while i < len(out):
        for j in range(i):
            x = out[i] & out[j]
            if x and x not in seen:
                seen.add(x)
                out.append(x)
        i += 1
    return out


def random_closed_family(rng, max_members: int = 12, max_atoms: int = 20) -> ProjectionFamily:
    """A random intersection-closed family; about a third contain a union member."""
    while True:
        atoms = rng.randint(1, max_atoms)
        full = (1 << atoms) - 1
        seeds = []
        for _ in range(rng.randint(1, min(6, max_members))):
            density = rng.random()
            b = sum(1 << a for a in range(atoms) if rng.random() < density) or 1 << rng.randrange(atoms)
            seeds.append(b & full)
        if len(seeds) >= 2 and rng.random() < 0.35:
            x, y = rng.sample(seeds, 2)
            seeds.append(x | y)
        members = intersection_closure(seeds)
        if len(members) <= max_members:
            return ProjectionFamily(AtomUniverse(atoms), tuple(members))
