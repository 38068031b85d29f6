"""Turn a finite set of constructible ideals into a ProjectionFamily.

Atoms are the nonempty Venn regions of the ideals.  Each family supplies a
finite set of elements meeting every nonempty region, so collecting the
membership signatures of those elements gives the regions exactly.
"""

from __future__ import annotations

import json

from .ideals import Family, FiniteSets, Ideal
from .lattice import PrincipalRule, ProjectionFamily


def ideal_name(family, x: Ideal) -> str:
    return json.dumps(family.ideal_to_json(x), sort_keys=True, separators=(",", ":"))


def from_ideal_family(family: Family, ideals, names=None) -> ProjectionFamily | PrincipalRule:
    ideals = sorted(dict.fromkeys(x for x in ideals if not x.is_empty), key=family.sort_key)
    if not family.has_region_oracle:
        return PrincipalRule(len(ideals), f"{family.tag}: every member is principal")
    signatures = set()
    for s in family.region_witnesses(ideals):
        signatures.add(sum(1 << i for i, x in enumerate(ideals) if family.member(s, x)))
    if names is None:
        names = [ideal_name(family, x) for x in ideals]
    return ProjectionFamily.from_signatures(sorted(signatures), len(ideals), names=names)


def from_finite_sets(family: FiniteSets) -> ProjectionFamily:
    return ProjectionFamily.from_sets(family.sets, names=family.names)
