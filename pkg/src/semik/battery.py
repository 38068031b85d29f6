"""Verification battery behind ``semik verify``.

Each check recomputes a headline equality from scratch and compares it with
a brute-force route.  ``scale`` shrinks the random corpora for quick runs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .abelian import FgAbelianGroup, GradedKPair, IntMatrix, pairs_isomorphic
from .formula import DEFAULT_SEED, HypothesisRefused, compare_formulas, run_pipeline
from .ideals import make_spec, preset_spec
from .ideals.matrix import in_principal, principal_preimage
from .kkmatrix import (ActionMismatch, PermAction, compose, from_transition,
                       is_invertible, random_action, random_equivariant)
from .lattice import (AtomUniverse, ProjectionFamily, is_independent, linear_independence_check,
                      random_closed_family, reduced_and_transition)
from .orbits import orbit_decompose
from .ideals import CantorShift
from .profinite import random_system, regular_basis, verify_regular


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "passed": self.passed, **self.detail}


def _scaled(n: int, scale: float) -> int:
    return max(1, int(n * scale))


def union_by_enumeration(members, i) -> bool:
    """Is member i a union of some nonempty subset of the other members?"""
    others = [m for j, m in enumerate(members) if j != i]
    for r in range(1, len(others) + 1):
        for combo in itertools.combinations(others, r):
            u = 0
            for m in combo:
                u |= m
            if u == members[i]:
                return True
    return False


def check_transitions(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CheckResult:
    rng = random.Random(seed)
    count = _scaled(200, scale)
    bad = 0
    for _ in range(count):
        fam = random_closed_family(rng)
        td = reduced_and_transition(fam)
        n = len(fam)
        eye = IntMatrix.identity(n)
        nil = eye - td.gamma
        ok = all(td.gamma[i, i] == 1 for i in range(n))
        ok = ok and all(td.gamma[i, j] == 0 for i in range(n) for j in range(i))
        ok = ok and (nil ** n).is_zero()
        ok = ok and td.gamma @ td.gamma_inverse == eye
        # e_j is the disjoint union of the reduced e'_i with gamma_ij = 1
        for j in range(n):
            parts = [td.reduced[i] for i in range(n) if td.gamma[i, j]]
            union = 0
            for p in parts:
                ok = ok and union & p == 0
                union |= p
            ok = ok and union == fam.members[td.order[j]]
        bad += not ok
    return CheckResult("transition-matrix", bad == 0, {"families": count, "failures": bad})


def check_independence(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CheckResult:
    rng = random.Random(seed)
    count = _scaled(200, scale)
    disagreements, brute_checked = 0, 0
    for _ in range(count):
        fam = random_closed_family(rng)
        reduced_rule = is_independent(fam).verdict
        linear = linear_independence_check(fam)
        verdicts = {reduced_rule, linear}
        if len(fam) <= 6:
            brute_checked += 1
            verdicts.add(not any(union_by_enumeration(fam.members, i) for i in range(len(fam))))
        disagreements += len(verdicts) > 1
    return CheckResult("independence-equivalence", disagreements == 0,
                       {"families": count, "brute_force_families": brute_checked,
                        "disagreements": disagreements})


def _random_nonsingular(rng, lo, hi):
    while True:
        m = IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(2)] for _ in range(2)])
        if m.det() != 0:
            return m


def check_matrix_quotient(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CheckResult:
    rng = random.Random(seed)
    pairs, samples = _scaled(300, scale), _scaled(1000, scale)
    bad = 0
    for _ in range(pairs):
        p, q = _random_nonsingular(rng, -5, 5), _random_nonsingular(rng, -5, 5)
        r = principal_preimage(q, p)
        for _ in range(samples):
            y = _random_nonsingular(rng, -12, 12)
            bad += in_principal(r, y) != in_principal(p, q @ y)
    return CheckResult("matrix-smith-quotient", bad == 0,
                       {"pairs": pairs, "samples_per_pair": samples, "counterexamples": bad})


def check_regular_basis(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CheckResult:
    rng = random.Random(seed)
    count = _scaled(100, scale)
    bad = 0
    for _ in range(count):
        system = random_system(rng, rng.randint(1, 5), 6)
        basis = regular_basis(system)
        bad += not verify_regular(basis.members, basis.space_size).regular
    return CheckResult("regular-basis", bad == 0, {"systems": count, "failures": bad})


Z = FgAbelianGroup.free(1)
ZERO = FgAbelianGroup.free(0)


def check_nats(seed: int = DEFAULT_SEED) -> CheckResult:
    f = run_pipeline(preset_spec("nats"), seed=seed)
    ok = (len(f.terms) == 1 and f.terms[0].stabilizer.tag == "Trivial"
          and pairs_isomorphic(f.total, GradedKPair(Z, ZERO)) and not f.symbolic)
    return CheckResult("nats-pipeline", ok, {"orbits": len(f.terms)})


def check_semidirect_sides(seed: int = DEFAULT_SEED) -> CheckResult:
    details, ok = {}, True
    for m in (1, 2, 3):
        spec = make_spec("SemidirectHN", {"m": m})
        left = run_pipeline(spec.with_side("left"), seed=seed)
        right = run_pipeline(spec.with_side("right"), seed=seed)
        this = compare_formulas(left, right).equal
        for f in (left, right):
            this = this and len(f.terms) == 1 and f.terms[0].stabilizer.tag == "FreeAbelian"
            this = this and pairs_isomorphic(f.total, GradedKPair(Z, Z)) and not f.symbolic
        details[f"x{m}"] = this
        ok = ok and this
    return CheckResult("semidirect-left-right", ok, details)


def cantor_orbits_brute(window: int) -> int:
    """Nonempty subsets of {0..window-1} modulo translation."""
    shapes = set()
    for r in range(1, window + 1):
        for f in itertools.combinations(range(window), r):
            shapes.add(tuple(x - f[0] for x in f))
    return len(shapes)


def check_cantor(seed: int = DEFAULT_SEED, windows=range(2, 11)) -> CheckResult:
    bad = []
    for w in windows:
        spec = make_spec("CantorShift", {"window": w})
        dec = orbit_decompose(CantorShift(spec), w)
        finite = [t for t in dec.terms if t.rep.payload]
        f = run_pipeline(spec, w, seed=seed)
        expect = GradedKPair(FgAbelianGroup.free(1 + 2 ** (w - 1)), Z)
        ok = (len(finite) == 2 ** (w - 1) == cantor_orbits_brute(w) and f.partial
              and pairs_isomorphic(f.total, expect))
        if not ok:
            bad.append(w)
    return CheckResult("cantor-orbits", not bad, {"windows": list(windows), "failed_windows": bad})


def check_axb(seed: int = DEFAULT_SEED) -> CheckResult:
    spec = preset_spec("axb-int")
    left = run_pipeline(spec.with_side("left"), seed=seed)
    right = run_pipeline(spec.with_side("right"), seed=seed)
    ok = compare_formulas(left, right).equal
    for f in (left, right):
        ok = ok and len(f.terms) == 1 and f.terms[0].stabilizer.tag == "InfiniteDihedral"
        ok = ok and len(f.symbolic) == 1
    return CheckResult("axb-int", ok, {})


def doubled_family(fam: ProjectionFamily) -> tuple[ProjectionFamily, PermAction]:
    """Two disjoint copies of a family, with the action swapping the copies."""
    n = fam.universe.atom_count
    members = list(fam.members) + [m << n for m in fam.members]
    k = len(fam)
    swap = tuple(list(range(k, 2 * k)) + list(range(k)))
    return ProjectionFamily(AtomUniverse(2 * n), tuple(members)), PermAction(2 * k, (swap,))


def check_kk(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CheckResult:
    rng = random.Random(seed)
    count = _scaled(200, scale)
    bad = {"composition": 0, "invertibility": 0, "bridge": 0}
    for _ in range(count):
        gens = rng.randint(1, 2)
        a, b, c = (random_action(rng, rng.randint(1, 6), gens) for _ in range(3))
        first = random_equivariant(rng, a, b)
        second = random_equivariant(rng, b, c)
        try:
            prod = compose(first, second)
            bad["composition"] += prod.gamma != second.gamma @ first.gamma
        except ActionMismatch:
            bad["composition"] += 1
        square = random_equivariant(rng, a, a, -1, 1)
        inv = is_invertible(square)
        if inv.invertible != (abs(square.gamma.det()) == 1):
            bad["invertibility"] += 1
        fam, action = doubled_family(random_closed_family(rng, max_members=6, max_atoms=10))
        bridge = from_transition(reduced_and_transition(fam), action)
        bad["bridge"] += not is_invertible(bridge).invertible
    return CheckResult("kk-matrix", not any(bad.values()), {"pairs": count, **bad})


def check_refusal(seed: int = DEFAULT_SEED) -> CheckResult:
    spec = make_spec("FiniteSets", {"sets": [["a"], ["b"], ["a", "b"]]})
    try:
        run_pipeline(spec, seed=seed)
    except HypothesisRefused as exc:
        ok = exc.name == "independence" and "equation" in exc.witness
        return CheckResult("refusal", ok, {"witness": exc.witness})
    return CheckResult("refusal", False, {"witness": None})


def run_battery(seed: int = DEFAULT_SEED, scale: float = 1.0) -> list[CheckResult]:
    return [
        check_transitions(seed, scale),
        check_independence(seed, scale),
        check_matrix_quotient(seed, scale),
        check_regular_basis(seed, scale),
        check_nats(seed),
        check_semidirect_sides(seed),
        check_cantor(seed),
        check_axb(seed),
        check_kk(seed, scale),
        check_refusal(seed),
    ]
