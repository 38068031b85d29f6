"""Command-line front end: ``semik <subcommand> ...``.

Exit status: 0 success, 2 bad input, 3 a formula hypothesis was refused,
1 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .abelian import IntMatrix, cokernel, smith_normal_form
from .battery import run_battery
from .formula import (DEFAULT_SEED, HypothesisRefused, KTable, bc_assumption, equal_k_left_right,
                      independence_check, run_pipeline)
from .ideals import (PRESETS, CantorShift, FamilyError, FiniteSets, constructible_closure,
                     make_family, make_spec, preset_spec, spec_from_json)
from .kkmatrix import ActionMismatch, EquivariantMatrix, compose, decompose_pos_neg, is_invertible
from .lattice import ProjectionFamily, linear_independence_check, reduced_and_transition
from .orbits import orbit_decompose, stabilizer_of
from .profinite import (ProjectiveSystem, ProjectiveSystemError, check_condition_c, compatible_labeling,
                        regular_basis, verify_regular)
from .projections import from_finite_sets


class InputError(Exception):
    pass


def _load_json(text: str | None, path: str | None, what: str):
    try:
        if path:
            with open(path) as fh:
                return json.load(fh)
        if text is None:
            raise InputError(f"missing {what}")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {what}: {exc}") from exc


def _spec(args):
    if args.sets:
        sets = _load_json(args.sets, None, "--sets")
        spec = make_spec("FiniteSets", {"sets": sets})
    elif args.family_json or args.family_file:
        spec = spec_from_json(_load_json(args.family_json, args.family_file, "family JSON"))
    else:
        spec = preset_spec(args.family or "nats")
    if args.side:
        spec = spec.with_side(args.side)
    return spec


def _add_family_args(p):
    g = p.add_argument_group("family")
    g.add_argument("--family", help=f"preset name: {', '.join(PRESETS)}")
    g.add_argument("--family-json", help='inline JSON {"family": ..., "params": {...}, "side": ...}')
    g.add_argument("--family-file", help="path to a family JSON file")
    g.add_argument("--sets", help='explicit finite family, e.g. [["a"],["b"],["a","b"]]')
    g.add_argument("--side", choices=["left", "right"])
    p.add_argument("--window", type=int, help="enumeration window for the Cantor shift")


# -- subcommands ---------------------------------------------------------------------

def cmd_ideals(args):
    spec = _spec(args)
    fam = make_family(spec)
    if isinstance(fam, FiniteSets):
        return {"family": spec.to_json(), "ideals": [fam.ideal_to_json(i) for i in range(len(fam.sets))]}
    if isinstance(fam, CantorShift):
        ideals, cert = fam.window_family(), "Window"
    else:
        ideals, cert = constructible_closure(fam, fam.default_generators(), args.budget)
    ideals = sorted(ideals, key=fam.sort_key)
    toeplitz = fam.toeplitz_verdict(random.Random(args.seed), args.samples)
    return {
        "family": spec.to_json(),
        "generators": [fam.element_to_json(p) for p in fam.default_generators()],
        "certificate": cert,
        "budget": args.budget,
        "count": len(ideals),
        "ideals": [fam.ideal_to_json(x) for x in ideals],
        "all_principal": fam.all_principal,
        "toeplitz": toeplitz.to_json(),
        "assumptions": [bc_assumption(args.bc_asserted).to_json()],
    }


def cmd_independence(args):
    spec = _spec(args)
    fam = make_family(spec)
    check = independence_check(fam, args.window)
    out = {"family": spec.to_json(), "status": check.status, **check.verdict.to_json(), **check.detail,
           "assumptions": [bc_assumption(args.bc_asserted).to_json()]}
    proj = None
    if isinstance(fam, FiniteSets):
        proj = from_finite_sets(fam)
    if isinstance(proj, ProjectionFamily) and proj.closed_flag:
        td = reduced_and_transition(proj)
        out["linear_rank_criterion"] = linear_independence_check(proj)
        out["transition"] = {"order": [proj.name(i) for i in td.order], "gamma": td.gamma.to_rows(),
                             "gamma_inverse": td.gamma_inverse.to_rows()}
    return out


def cmd_basis(args):
    if args.system or args.system_file:
        try:
            system = ProjectiveSystem.from_json(_load_json(args.system, args.system_file, "system"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad projective system: {exc}") from exc
    else:
        raise InputError("basis needs --system or --system-file")
    lab = compatible_labeling(system)
    if not check_condition_c(system, lab):
        raise AssertionError("labeling violates the compatibility condition")
    basis = regular_basis(system, lab)
    report = verify_regular(basis.members, basis.space_size)
    if not report.regular:
        raise AssertionError("built basis is not regular")
    return {"system": system.to_json(), "labeling": [list(p) for p in lab.psi],
            "basis": basis.to_json(), "checks": report.to_json(), "regular": report.regular,
            "assumptions": [bc_assumption(args.bc_asserted).to_json()]}


def cmd_orbits(args):
    spec = _spec(args)
    fam = make_family(spec)
    dec = orbit_decompose(fam, args.window)
    orbits = []
    for t in dec.terms:
        item = {"rep": t.rep_json, "stabilizer": t.stabilizer.to_json(), "note": t.note}
        if not isinstance(fam, FiniteSets):
            rep = stabilizer_of(fam, t.rep, args.samples, args.seed)
            item["stabilizer_report"] = rep.to_json(fam)
        orbits.append(item)
    return {"family": spec.to_json(), "completeness": dec.completeness, "window": dec.window,
            "proof": dec.proof, "orbits": orbits, "partial": not dec.complete,
            "assumptions": [bc_assumption(args.bc_asserted).to_json()]}


def _table(args):
    if not args.k_table:
        return None
    try:
        return KTable.from_json(_load_json(None, args.k_table, "K-table"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad K-table: {exc}") from exc


def cmd_formula(args):
    return run_pipeline(_spec(args), args.window, _table(args), args.bc_asserted, args.seed,
                        args.samples, args.coefficients).to_json()


def cmd_compare(args):
    res = equal_k_left_right(_spec(args), args.window, table=_table(args), bc_asserted=args.bc_asserted,
                             seed=args.seed, samples=args.samples)
    return {"left": res["left"].to_json(), "right": res["right"].to_json(),
            "comparison": res["comparison"].to_json(),
            "verdict": "equal" if res["comparison"].equal else "different"}


def cmd_kkmat(args):
    doc = _load_json(args.input, args.input_file, "kk input")
    try:
        first = EquivariantMatrix.from_json(doc["first"] if "first" in doc else doc)
        second = EquivariantMatrix.from_json(doc["second"]) if "second" in doc else None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad equivariant matrix: {exc}") from exc
    plus, minus = decompose_pos_neg(first)
    out = {"matrix": first.to_json(), "equivariant": True,
           "decomposition": {"plus": plus.gamma.to_rows(), "minus": minus.gamma.to_rows()},
           "invertibility": is_invertible(first).to_json(),
           "assumptions": [bc_assumption(args.bc_asserted).to_json()]}
    if second is not None:
        out["composition"] = compose(first, second).to_json()
    return out


def cmd_snf(args):
    rows = _load_json(args.matrix, None, "matrix")
    try:
        m = IntMatrix.from_rows(rows, len(rows[0]) if rows else 0)
    except (TypeError, ValueError, IndexError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc
    s, u, v = smith_normal_form(m)
    if u @ m @ v != s:
        raise AssertionError("Smith form transforms do not reproduce the diagonal")
    return {"matrix": m.to_rows(), "smith": s.to_rows(), "u": u.to_rows(), "v": v.to_rows(),
            "diagonal": [s[i, i] for i in range(min(s.rows, s.cols))],
            "cokernel": cokernel(m).to_json(),
            "assumptions": [bc_assumption(args.bc_asserted).to_json()]}


def cmd_verify(args):
    results = run_battery(args.seed, args.scale)
    return {"seed": args.seed, "scale": args.scale, "checks": [r.to_json() for r in results],
            "passed": all(r.passed for r in results),
            "assumptions": [bc_assumption(args.bc_asserted).to_json()]}


# -- text rendering --------------------------------------------------------------------

def _render_text(name, out) -> str:
    if name == "verify":
        return "\n".join(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}" for c in out["checks"])
    if name == "formula":
        lines = [f"family {out['family']['family']} side={out['side']}"]
        for a in out["assumptions"]:
            lines.append(f"  assumption {a['name']}: {a['status']}")
        for o in out["orbits"]:
            k = o.get("k")
            val = f"k0={_grp(k['k0'])} k1={_grp(k['k1'])}" if k else o["symbolic"]
            lines.append(f"  orbit stabilizer={o['stabilizer']['tag']}: {val}")
        lines.append(f"total: K0={_grp(out['total']['k0'])} K1={_grp(out['total']['k1'])}"
                     + (" (partial)" if out["partial"] else ""))
        for s in out["symbolic_remainder"]:
            lines.append(f"  + {s}")
        return "\n".join(lines)
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in out.items())


def _grp(g) -> str:
    parts = ([f"Z^{g['rank']}"] if g["rank"] > 1 else ["Z"] if g["rank"] else [])
    parts += [f"Z/{d}" for d in g["factors"]]
    return " + ".join(parts) or "0"


COMMANDS = {
    "ideals": cmd_ideals, "independence": cmd_independence, "basis": cmd_basis,
    "orbits": cmd_orbits, "formula": cmd_formula, "compare-lr": cmd_compare,
    "kkmat": cmd_kkmat, "snf": cmd_snf, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semik", description="K-theory of semigroup C*-algebras, exactly.")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=200, help="sample count for witnessed checks")
    common.add_argument("--output", choices=["json", "text"], default="json")
    common.add_argument("--bc-asserted", action="store_true",
                        help="record the Baum-Connes assumption as user-asserted")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideals", parents=[common], help="constructible ideals of a family")
    _add_family_args(p)
    p.add_argument("--budget", type=int, default=300)
    p = sub.add_parser("independence", parents=[common], help="independence verdict with witness")
    _add_family_args(p)
    p = sub.add_parser("basis", parents=[common], help="regular basis of a projective system")
    p.add_argument("--system", help='inline JSON {"levels": [...], "maps": [[...], ...]}')
    p.add_argument("--system-file")
    p = sub.add_parser("orbits", parents=[common], help="orbits and stabilizers")
    _add_family_args(p)
    for name in ("formula", "compare-lr"):
        p = sub.add_parser(name, parents=[common], help="K-theory formula" if name == "formula"
                           else "compare left and right formulas")
        _add_family_args(p)
        p.add_argument("--k-table", help="JSON file of extra K-table entries")
        if name == "formula":
            p.add_argument("--coefficients", default="C")
    p = sub.add_parser("kkmat", parents=[common], help="equivariant integer matrices")
    p.add_argument("--input", help='JSON {"first": {...}, "second": {...}} or a single matrix')
    p.add_argument("--input-file")
    p = sub.add_parser("snf", parents=[common], help="Smith normal form with transforms")
    p.add_argument("matrix", help="JSON rows, e.g. [[2,4],[6,8]]")
    p = sub.add_parser("verify", parents=[common], help="run the verification battery")
    p.add_argument("--scale", type=float, default=1.0, help="shrink the random corpora (0 < scale <= 1)")
    return ap


def _emit(out, fmt, name, stream):
    if fmt == "json":
        stream.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        stream.write(_render_text(name, out) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "window", None) is not None and args.window < 0:
        print("error: --window must be nonnegative", file=sys.stderr)
        return 2
    if args.seed < 0:
        print("error: --seed must be nonnegative", file=sys.stderr)
        return 2
    try:
        out = COMMANDS[args.command](args)
    except HypothesisRefused as exc:
        report = {"refused": exc.name, "message": str(exc), "witness": exc.witness,
                  "assumptions": [{"name": exc.name, "status": "fails", "witness": exc.witness},
                                  bc_assumption(args.bc_asserted).to_json()]}
        _emit(report, "json", "refused", sys.stdout)
        print(f"refused: {exc}; {exc.witness.get('equation', '')}", file=sys.stderr)
        return 3
    except (InputError, FamilyError, ProjectiveSystemError, ActionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    _emit(out, args.output, args.command, sys.stdout)
    if args.command == "verify" and not out["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
