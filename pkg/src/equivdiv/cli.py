"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget
exceeded.  Errors print one line ``error:<code>: <message>`` on stderr.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .abelian import FinAbGroup
from .cohomology import DEFAULT_BUDGET, cohomology_group, h2_units, schur_multiplier
from .errors import EquivDivError, InputError
from .groupspec import parse_group_spec, realize
from .modules import degree_zero_module, divisor_module, fixed_points, regular_module, trivial_module
from .obstruction import (
    RamificationDatum,
    check_char,
    h1_div0,
    h1_div0_bar_check,
    obstruction_report,
    pic0_coker_order,
    scenario_from_json,
    load_json,
)
from .toric import (
    Fan,
    TCycle,
    cone_orbits,
    divisor_class_group,
    invariant_divisor_in_class,
    invariant_representative,
    toric_automorphisms,
    validate_fan,
)
from .verify import default_corpus, run_verify

SCHEMA = 1


class UsageError(InputError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _abelian(A):
    """Ascending invariant factors; free part only when present."""
    if A.free_rank:
        return {"invariants": list(A.invariants), "free_rank": A.free_rank}
    return list(A.invariants)


def _char_arg(text):
    try:
        return check_char(int(text))
    except ValueError:
        raise UsageError(f"--char must be 0 or a prime, got {text!r}") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="equivdiv", description="Invariant divisor obstructions for finite group actions.")
    p.add_argument("--version", action="version", version=f"equivdiv {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("schur", parents=[common], help="Schur multiplier H_2(G, Z)")
    s.add_argument("--group", required=True)

    s = sub.add_parser("h2-units", parents=[common], help="H^2(G, F^x) for F of given characteristic")
    s.add_argument("--group", required=True)
    s.add_argument("--char", type=_char_arg, default=0)

    for name, text in (("h1", "H^1(G, M) from the bar complex"), ("fixed", "fixed lattice M^G")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--group")
        s.add_argument("--ramification")
        s.add_argument("--module", choices=("trivial", "regular", "div", "div0"))

    s = sub.add_parser("obstruction", parents=[common], help="full obstruction report")
    s.add_argument("--group")
    s.add_argument("--char", type=_char_arg)
    s.add_argument("--ramification", required=True)

    s = sub.add_parser("pic0", parents=[common], help="order of coker(Div_0^G -> Pic_0^G) for a declared |C|")
    s.add_argument("--group")
    s.add_argument("--char", type=_char_arg)
    s.add_argument("--ramification")
    s.add_argument("--c", type=int, dest="c")

    s = sub.add_parser("toric", parents=[common], help="fan checks, orbits and invariant cycles")
    s.add_argument("--fan", required=True)
    s.add_argument("--aut")
    s.add_argument("--cycle")

    s = sub.add_parser("verify", parents=[common], help="run the corpus cross-checks")
    s.add_argument("--corpus")
    return p


def _find_file(name, subdir):
    path = Path(name)
    if path.exists():
        return path
    shipped = default_corpus() / subdir / name
    if shipped.exists():
        return shipped
    raise InputError(f"file {name} not found")


def _scenario(args):
    """Group, char and datum from --group/--char/--ramification."""
    if args.ramification:
        obj = load_json(_find_file(args.ramification, "scenarios"))
        if args.group:
            if "group" in obj and str(parse_group_spec(obj["group"])) != str(parse_group_spec(args.group)):
                raise InputError(f"--group {args.group} does not match the ramification file ({obj['group']})")
            obj = dict(obj, group=args.group)
        elif "group" not in obj:
            raise InputError("no --group given and the ramification file names none")
        obj.setdefault("orbits", [])
        char = getattr(args, "char", None)
        if char is not None:
            obj = dict(obj, char=char)
        sc = scenario_from_json(obj, name=Path(args.ramification).stem)
        return sc.group, sc.group_spec, sc.char, sc.ram, sc.declared_c
    if not args.group:
        raise UsageError("--group is required")
    char = getattr(args, "char", None) or 0
    return realize(args.group), args.group, char, None, None


def _module(G, ram, choice):
    if choice is None:
        choice = "div0" if ram is not None else "trivial"
    if choice == "trivial":
        return trivial_module(G), choice
    if choice == "regular":
        return regular_module(G), choice
    if ram is None:
        ram = RamificationDatum([])
    ram.resolve(G)
    M = divisor_module(G, ram)
    return (degree_zero_module(M) if choice == "div0" else M), choice


def cmd_schur(args):
    G = realize(args.group)
    A = schur_multiplier(G, args.budget)
    return {"schema": SCHEMA, "group": args.group, "schur": _abelian(A)}, f"H_2({args.group}, Z) = {A}"


def cmd_h2_units(args):
    G = realize(args.group)
    A = h2_units(G, args.char, args.budget)
    out = {"schema": SCHEMA, "group": args.group, "char": args.char, "h2_units": _abelian(A)}
    return out, f"H^2({args.group}, F^x), char {args.char}: {A}"


def cmd_h1(args):
    G, spec, char, ram, _ = _scenario(args)
    M, which = _module(G, ram, args.module)
    A = cohomology_group(G, M, 1, budget=args.budget)
    out = {"schema": SCHEMA, "group": spec, "module": which, "rank": M.rank, "h1": _abelian(A)}
    lines = [f"H^1({spec}, {which}) = {A}  (module rank {M.rank})"]
    if ram is not None and which == "div0":
        out["b_formula"] = _abelian(h1_div0(G, ram))
        out["degree_check"] = _abelian(h1_div0_bar_check(G, ram, args.budget))
        lines.append(f"formula Z/b = {h1_div0(G, ram)}, degree check {h1_div0_bar_check(G, ram, args.budget)}")
    return out, "\n".join(lines)


def cmd_fixed(args):
    G, spec, char, ram, _ = _scenario(args)
    if args.module is None:
        args.module = "div" if ram is not None else "trivial"
    M, which = _module(G, ram, args.module)
    F = fixed_points(M)
    out = {"schema": SCHEMA, "group": spec, "module": which, "rank": M.rank, "fixed_rank": F.rank, "basis": F.basis}
    lines = [f"fixed lattice of {which} (rank {M.rank}) over {spec}: rank {F.rank}"]
    lines += ["  " + " ".join(str(x) for x in v) for v in F.basis]
    return out, "\n".join(lines)


def cmd_obstruction(args):
    G, spec, char, ram, declared = _scenario(args)
    rep = obstruction_report(G, char, ram, declared, args.budget, name=spec)
    out = {"schema": SCHEMA}
    for k, v in rep.to_json().items():
        out[k] = v["invariants"] if isinstance(v, dict) and "invariants" in v and len(v) == 1 else v
    lines = [
        f"group {spec}, characteristic {char}",
        f"H^2(G, F^x) = pic coker = {rep.h2_units}",
        f"b = {rep.b}, H^1(G, Div_0) = {rep.h1_div0}",
        f"admissible |C|: {rep.c_divisors}",
        f"possible |coker(Div_0^G -> Pic_0^G)|: {rep.pic0_coker_order_range}",
    ]
    if declared is not None:
        lines.append(f"declared |C| = {declared}: |coker(Div_0^G -> Pic_0^G)| = {rep.pic0_coker_order}")
    return out, "\n".join(lines)


def cmd_pic0(args):
    G, spec, char, ram, declared = _scenario(args)
    c = args.c if args.c is not None else declared
    if c is None:
        raise UsageError("give --c or a ramification file with declared_c")
    order = pic0_coker_order(G, char, c, ram, args.budget)
    out = {"schema": SCHEMA, "group": spec, "char": char, "c": c, "pic0_coker_order": order}
    return out, f"|coker(Div_0^G -> Pic_0^G)| = {order} for |C| = {c}"


def cmd_toric(args):
    fan = Fan.from_json(load_json(_find_file(args.fan, "fans")))
    rep = validate_fan(fan, seed=args.seed)
    out = {"schema": SCHEMA, "fan": rep.to_json()}
    lines = [f"fan of rank {fan.rank} with {len(fan.rays)} rays: " + ("valid" if rep.valid else "invalid")]
    lines += [f"  {v}" for v in rep.violations]
    if not rep.valid:
        return out, "\n".join(lines)
    try:
        cg = divisor_class_group(fan)
        out["class_group"] = _abelian(cg.group)
        lines.append(f"class group {cg.group}")
    except EquivDivError as exc:
        out["class_group"] = None
        lines.append(f"class group unavailable: {exc}")
    aut = None
    if args.aut:
        obj = load_json(_find_file(args.aut, "fans"))
        aut = toric_automorphisms(fan, obj["matrices"] if isinstance(obj, dict) else obj)
        orbits = {str(k): [list(o) for o in cone_orbits(aut, k)] for k in range(1, fan.rank + 1)}
        out["aut_order"] = aut.order
        out["cone_orbits"] = orbits
        lines.append(f"symmetry group of order {aut.order}")
        for k, o in orbits.items():
            lines.append(f"  {k}-cone orbits: {o}")
    if args.cycle:
        if aut is None:
            raise UsageError("--cycle needs --aut")
        Z = TCycle.from_json(load_json(Path(args.cycle)), fan)
        R = invariant_representative(aut, Z)
        out["representative"] = R.to_json()
        lines.append(f"invariant representative {list(R.coeffs)} (certified)")
        if Z.dim == 1:
            sol = invariant_divisor_in_class(fan, aut, Z)
            if sol.feasible:
                out["divisor_in_class"] = {"coeffs": list(sol.divisor.coeffs), "character": sol.character}
                lines.append(f"invariant divisor in class: {list(sol.divisor.coeffs)} via u = {sol.character}")
            else:
                out["divisor_in_class"] = {"infeasible": list(sol.certificate)}
                lines.append(f"no orbit-constant divisor in the class: {sol.certificate}")
    return out, "\n".join(lines)


def cmd_verify(args):
    results = run_verify(args.corpus)
    out = {"schema": SCHEMA, "checks": [r.to_json() for r in results]}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name} ({r.passed} checks)")
        lines += [f"    {f}" for f in r.failures]
    ok = all(r.ok for r in results)
    out["status"] = "pass" if ok else "fail"
    return out, "\n".join(lines), 0 if ok else 1


COMMANDS = {
    "schur": cmd_schur,
    "h2-units": cmd_h2_units,
    "h1": cmd_h1,
    "fixed": cmd_fixed,
    "obstruction": cmd_obstruction,
    "pic0": cmd_pic0,
    "toric": cmd_toric,
    "verify": cmd_verify,
}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.command](args)
        status = 0
        if len(result) == 3:
            out, text, status = result
        else:
            out, text = result
        if args.format == "json":
            stdout.write(json.dumps(out, separators=(",", ":")) + "\n")
        else:
            stdout.write(text + "\n")
        return status
    except EquivDivError as exc:
        msg = " ".join(str(exc).split())
        stderr.write(f"error:{exc.code}: {msg}\n")
        return exc.exit_status


def main():
    sys.exit(run())
