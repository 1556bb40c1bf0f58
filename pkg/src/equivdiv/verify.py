"""Cross-checks run over a corpus directory.

Layout::

    groups.txt          one group spec per line ('#' comments)
    scenarios/*.json    ramification scenarios
    chains/*.json       go-down chains {"X": file, "Y": file, "N": "perm:..."}
    fans/NAME.json      fans, with optional NAME_aut.json symmetry matrices
"""

import itertools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .cohomology import cohomology_group, schur_multiplier, schur_multiplier_abelian
from .errors import CorpusMissing, EquivDivError
from .groups import all_sylow_cyclic
from .groupspec import realize
from .modules import induced_module
from .obstruction import (
    b_invariant,
    c_constraints,
    godown_check,
    h1_div0_bar_check,
    h2_units,
    load_json,
    load_scenario,
    pic0_coker_order,
)
from .oracle import brute_force_h2
from .toric import (
    Fan,
    TCycle,
    cone_orbits,
    invariant_representative,
    toric_automorphisms,
    validate_fan,
)


def default_corpus():
    return Path(str(resources.files("equivdiv") / "corpus"))


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, cond, what):
        if cond:
            self.passed += 1
        else:
            self.failures.append(what)

    def to_json(self):
        return {"name": self.name, "status": "pass" if self.ok else "fail", "passed": self.passed, "failures": self.failures}


class Corpus:
    def __init__(self, root):
        self.root = Path(root)
        if not self.root.is_dir():
            raise CorpusMissing(f"corpus directory {self.root} not found")
        self.group_specs = []
        gfile = self.root / "groups.txt"
        if gfile.exists():
            for line in gfile.read_text().splitlines():
                line = line.split("#", 1)[0].strip()
                if line:
                    self.group_specs.append(line)
        self.scenario_files = sorted((self.root / "scenarios").glob("*.json"))
        self.chain_files = sorted((self.root / "chains").glob("*.json"))
        self.fan_files = sorted(p for p in (self.root / "fans").glob("*.json") if not p.stem.endswith("_aut"))
        if not (self.group_specs or self.scenario_files or self.chain_files or self.fan_files):
            raise CorpusMissing(f"corpus directory {self.root} is empty")
        self._groups = {}

    def group(self, spec):
        # one realization per spec so cached multipliers are shared
        if spec not in self._groups:
            self._groups[spec] = realize(spec)
        return self._groups[spec]

    def scenario(self, path):
        sc = load_scenario(path)
        sc.group = self.group(sc.group_spec)
        return sc


def check_oracles(corpus):
    res = CheckResult("oracle-equivalence")
    for spec in corpus.group_specs:
        G = corpus.group(spec)
        if G.is_abelian() and G.order <= 36:
            inv = list(G.abelian_invariants().invariants)
            res.check(schur_multiplier(G) == schur_multiplier_abelian(inv), f"{spec}: bar vs wedge^2")
        if G.order <= 8:
            for m in (2, 3, 4):
                a = cohomology_group(G, None, 2, modulus=m)
                res.check(a == brute_force_h2(G, m), f"{spec}: H^2(Z/{m}) bar vs brute force")
    return res


def check_shapiro(corpus):
    res = CheckResult("shapiro-vanishing")
    for spec in corpus.group_specs:
        G = corpus.group(spec)
        if G.order > 24:
            continue
        subs = {H.members: H for H in G.cyclic_subgroups()}
        for p in G.prime_divisors():
            P = G.sylow_subgroup(p)
            subs.setdefault(P.members, P)
        for H in subs.values():
            h1 = cohomology_group(G, induced_module(G, H), 1)
            res.check(h1.is_trivial, f"{spec}: H^1(Ind from order {H.order}) = {h1}")
    return res


def check_sylow_cyclic(corpus):
    res = CheckResult("sylow-cyclic-corollary")
    for spec in corpus.group_specs:
        G = corpus.group(spec)
        if G.order > 60 or not all_sylow_cyclic(G):
            continue
        res.check(schur_multiplier(G).is_trivial, f"{spec}: Sylow-cyclic but multiplier nontrivial")
    return res


def check_scenarios(corpus):
    results = {
        n: CheckResult(n)
        for n in ("h1-div0-formula", "declared-c-admissible", "exactness-audit", "b-divides-order")
    }
    for path in corpus.scenario_files:
        name = path.stem
        try:
            sc = corpus.scenario(path)
            G = sc.group
            sc.ram.resolve(G, sc.char)
            b = b_invariant(G, sc.ram)
            results["b-divides-order"].check(G.order % b == 0, f"{name}: b = {b}")
            bar = h1_div0_bar_check(G, sc.ram)
            results["h1-div0-formula"].check(bar.order() == b, f"{name}: bar check {bar} vs Z/{b}")
            if sc.declared_c is None:
                continue
            allowed = c_constraints(G, sc.char, sc.ram)
            ok = sc.declared_c in allowed
            results["declared-c-admissible"].check(
                ok, f"{name}: declared c = {sc.declared_c} not in {allowed} (b = {b})"
            )
            if ok:
                h2 = h2_units(G, sc.char)
                pic0 = pic0_coker_order(G, sc.char, sc.declared_c, sc.ram)
                results["exactness-audit"].check(
                    pic0 * sc.declared_c == h2.order(), f"{name}: {pic0} * {sc.declared_c} != |{h2}|"
                )
        except EquivDivError as exc:
            results["declared-c-admissible"].check(False, f"{name}: {exc.code}: {exc}")
    return list(results.values())


def check_chains(corpus):
    res = CheckResult("godown-chains")
    for path in corpus.chain_files:
        obj = load_json(path)
        try:
            X = corpus.scenario(path.parent.parent / "scenarios" / obj["X"])
            Y = corpus.scenario(path.parent.parent / "scenarios" / obj["Y"])
            res.check(godown_check(X, Y, obj["N"]), f"{path.stem}: c_Y does not divide c_X")
        except (EquivDivError, KeyError) as exc:
            res.check(False, f"{path.stem}: {exc}")
    return res


def check_fans(corpus):
    res = CheckResult("toric-fans")
    for path in corpus.fan_files:
        fan = Fan.from_json(load_json(path))
        rep = validate_fan(fan)
        res.check(rep.valid, f"{path.stem}: {[str(v) for v in rep.violations]}")
        aut_path = path.with_name(path.stem + "_aut.json")
        if not aut_path.exists():
            continue
        aut = toric_automorphisms(fan, load_json(aut_path)["matrices"])
        for k in range(1, fan.rank + 1):
            orbits = cone_orbits(aut, k)
            sizes = [len(o) for o in orbits]
            res.check(sum(sizes) == len(fan.cones_of_dim(k)), f"{path.stem}: orbits do not partition {k}-cones")
            res.check(all(aut.order % s == 0 for s in sizes), f"{path.stem}: orbit size not dividing |G|")
            # every orbit-constant 0/1 pattern must certify
            for bits in itertools.product((0, 1), repeat=min(len(orbits), 6)):
                coeffs = [0] * len(fan.cones_of_dim(k))
                for o, bit in zip(orbits, bits):
                    for i in o:
                        coeffs[i] = bit
                Z = TCycle(k, tuple(coeffs))
                res.check(aut.is_invariant(invariant_representative(aut, Z)), f"{path.stem}: certificate")
    return res


def run_verify(root=None):
    corpus = Corpus(root or default_corpus())
    results = [check_oracles(corpus), check_shapiro(corpus), check_sylow_cyclic(corpus)]
    results += check_scenarios(corpus)
    results += [check_chains(corpus), check_fans(corpus)]
    return results
