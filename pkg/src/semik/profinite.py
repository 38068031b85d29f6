"""Regular bases for projective limits of finite sets.

A projective system F_1 <- F_2 <- ... <- F_d is given by level sizes and, for
each n < d, the map F_{n+1} -> F_n as a list of images (0-based).  A
compatible labeling orders each level so that every fiber over the l-th
element of F_n is a consecutive block of F_{n+1}; the sets
V_{n,l} = (first l elements of F_n) pulled back to F_d then form a chain of
initial segments, which is a regular basis.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .lattice import ProjectionFamily, AtomUniverse, is_independent, popcount


class ProjectiveSystemError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectiveSystem:
    levels: tuple[int, ...]
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.levels:
            raise ProjectiveSystemError("a projective system needs depth >= 1")
        if any(k < 1 for k in self.levels):
            raise ProjectiveSystemError("level sizes must be positive")
        if len(self.maps) != len(self.levels) - 1:
            raise ProjectiveSystemError("need one map per consecutive pair of levels")
        for n, phi in enumerate(self.maps):
            if len(phi) != self.levels[n + 1]:
                raise ProjectiveSystemError(f"map {n} must list an image for each of {self.levels[n + 1]} points")
            if any(not 0 <= x < self.levels[n] for x in phi):
                raise ProjectiveSystemError(f"map {n} has images outside level {n}")
            if set(phi) != set(range(self.levels[n])):
                raise ProjectiveSystemError(f"map {n} is not surjective")

    @classmethod
    def from_json(cls, doc) -> "ProjectiveSystem":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(tuple(int(k) for k in doc["levels"]),
                   tuple(tuple(int(x) for x in m) for m in doc.get("maps", [])))

    def to_json(self) -> dict:
        return {"levels": list(self.levels), "maps": [list(m) for m in self.maps]}

    @property
    def depth(self) -> int:
        return len(self.levels)

    def project(self, x: int, src: int, dst: int) -> int:
        """Image of point x of level src in level dst <= src."""
        for n in range(src - 1, dst - 1, -1):
            x = self.maps[n][x]
        return x


@dataclass(frozen=True)
class Labeling:
    psi: tuple[tuple[int, ...], ...]   # psi[n][i] = point of level n at position i
    cuts: tuple[tuple[int, ...], ...]  # cuts[n] = (m_0, ..., m_{k_n}) for n < depth - 1

    def position(self, n: int, x: int) -> int:
        return self.psi[n].index(x)


def compatible_labeling(system: ProjectiveSystem) -> Labeling:
    psi = [tuple(range(system.levels[0]))]
    cuts = []
    for n, phi in enumerate(system.maps):
        order, m = [], [0]
        for x in psi[n]:
            order += [y for y in range(len(phi)) if phi[y] == x]
            m.append(len(order))
        psi.append(tuple(order))
        cuts.append(tuple(m))
    return Labeling(tuple(psi), tuple(cuts))


def check_condition_c(system: ProjectiveSystem, lab: Labeling) -> bool:
    for n, phi in enumerate(system.maps):
        m = lab.cuts[n]
        if m[0] != 0 or m[-1] != system.levels[n + 1] or list(m) != sorted(m):
            return False
        for l in range(1, system.levels[n] + 1):
            block = lab.psi[n + 1][m[l - 1]:m[l]]
            if any(phi[y] != lab.psi[n][l - 1] for y in block):
                return False
            if m[l] != sum(1 for y in range(len(phi)) if phi[y] in lab.psi[n][:l]):
                return False
    return True


@dataclass(frozen=True)
class BasisFamily:
    space_size: int
    members: tuple[int, ...]                 # bitsets over the points of the deepest level
    labels: tuple[tuple[int, int], ...]      # (n, l) of the first occurrence, 1-based
    dedup: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    all_sets: dict

    def to_json(self) -> dict:
        return {
            "space_size": self.space_size,
            "members": [{"n": n, "l": l, "points": _points(b)} for (n, l), b in zip(self.labels, self.members)],
            "identified": [[list(a), list(b)] for a, b in self.dedup],
        }


def _points(b: int) -> list[int]:
    return [i for i in range(b.bit_length()) if b >> i & 1]


def regular_basis(system: ProjectiveSystem, labeling: Labeling | None = None) -> BasisFamily:
    lab = labeling or compatible_labeling(system)
    d = system.depth
    kd = system.levels[-1]
    sets: dict[tuple[int, int], int] = {}
    for n in range(d):
        rank = {x: i for i, x in enumerate(lab.psi[n])}
        for l in range(1, system.levels[n] + 1):
            sets[(n + 1, l)] = sum(1 << y for y in range(kd)
                                   if rank[system.project(y, d - 1, n)] < l)
    dedup = []
    for n in range(d - 1):
        m = lab.cuts[n]
        for l in range(1, system.levels[n] + 1):
            a, b = (n + 1, l), (n + 2, m[l])
            if sets[a] != sets[b]:
                raise AssertionError(f"V{a} != V{b}")
            dedup.append((a, b))
    members, labels, seen = [], [], set()
    for key in sorted(sets):
        if sets[key] not in seen:
            seen.add(sets[key])
            members.append(sets[key])
            labels.append(key)
    return BasisFamily(kd, tuple(members), tuple(labels), tuple(dedup), sets)


@dataclass(frozen=True)
class RegularReport:
    intersection_closed: bool
    independent: bool
    generates: bool

    @property
    def regular(self) -> bool:
        return self.intersection_closed and self.independent and self.generates

    def to_json(self) -> dict:
        return {"intersection_closed": self.intersection_closed,
                "independent": self.independent, "generates": self.generates}


def verify_regular(members, space_size: int) -> RegularReport:
    """Exact check of the three defining properties on bitsets over a finite space."""
    members = [m for m in members]
    if any(m == 0 for m in members):
        raise ValueError("basis members must be nonempty")
    present = set(members)
    closed = all((a & b) == 0 or (a & b) in present for a, b in itertools.combinations(members, 2))
    if members:
        fam = ProjectionFamily(AtomUniverse(space_size), tuple(members))
        independent = is_independent(fam).verdict
    else:
        independent = True
    full = (1 << space_size) - 1
    union = 0
    for m in members:
        union |= m
    signatures = {tuple(m >> x & 1 for m in members) for x in range(space_size)}
    generates = union == full and len(signatures) == space_size
    return RegularReport(closed, independent, generates)


def generated_ring(members, space_size: int) -> set[int]:
    """Brute-force closure under intersection, union and difference (small spaces only)."""
    out = set(members)
    frontier = list(out)
    while frontier:
        new = []
        for a in frontier:
            for b in list(out):
                for c in (a & b, a | b, a & ~b, b & ~a):
                    if c not in out:
                        out.add(c)
                        new.append(c)
        frontier = new
    out.discard(0)
    return out


def random_system(rng, depth: int, max_size: int) -> ProjectiveSystem:
    """Random surjective tower with nondecreasing level sizes."""
    levels = [rng.randint(1, max_size)]
    for _ in range(depth - 1):
        levels.append(rng.randint(levels[-1], max_size))
    maps = []
    for n in range(depth - 1):
        k, k2 = levels[n], levels[n + 1]
        phi = list(range(k)) + [rng.randrange(k) for _ in range(k2 - k)]
        rng.shuffle(phi)
        maps.append(tuple(phi))
    return ProjectiveSystem(tuple(levels), tuple(maps))


@dataclass(frozen=True)
class CantorBasis:
    window: int
    coords: tuple[frozenset, ...]      # the F's, sorted by size then elements
    members: tuple[int, ...]           # V_F as bitsets over the 2^window sign patterns
    shift: dict                        # (g, F) -> F + g when F + g stays in the window

    def member_of(self, f) -> int:
        return self.members[self.coords.index(frozenset(f))]


def cantor_basis(window: int) -> CantorBasis:
    """V_F for F inside {0..window-1}; atom a is the pattern with z_n = 1 iff bit n of a is set."""
    if window < 1:
        raise ValueError("window must be >= 1")
    coords = []
    for r in range(window + 1):
        coords += [frozenset(c) for c in itertools.combinations(range(window), r)]
    members = []
    for f in coords:
        mask = sum(1 << n for n in f)
        members.append(sum(1 << a for a in range(1 << window) if a & mask == mask))
    shift = {}
    for g in range(-(window - 1), window):
        for f in coords:
            moved = frozenset(n + g for n in f)
            if all(0 <= n < window for n in moved):
                shift[(g, f)] = moved
    return CantorBasis(window, tuple(coords), tuple(members), shift)


def shift_pattern(a: int, g: int, window: int) -> int | None:
    """(g.z)_n = z_{n-g} on a window pattern, or None if a +1 leaves the window."""
    moved = 0
    for n in range(window):
        if a >> n & 1:
            if not 0 <= n + g < window:
                return None
            moved |= 1 << (n + g)
    return moved


__all__ = ["ProjectiveSystem", "Labeling", "BasisFamily", "RegularReport", "CantorBasis",
           "compatible_labeling", "check_condition_c", "regular_basis", "verify_regular",
           "generated_ring", "random_system", "cantor_basis", "shift_pattern", "popcount"]
