"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion."""

import random
import time

from sympy import divisors

from equivdiv.abelian import FinAbGroup
from equivdiv.cohomology import cohomology_group, h2_units, schur_multiplier, schur_multiplier_abelian
from equivdiv.groups import all_sylow_cyclic
from equivdiv.groupspec import realize
from equivdiv.obstruction import (
    OrbitRecord,
    RamificationDatum,
    b_invariant,
    c_constraints,
    datum_from_orders,
    godown_check,
    h1_div0_bar_check,
    load_json,
    load_scenario,
    pic0_coker_order,
    pic_coker,
)
from equivdiv.oracle import brute_force_h2
from equivdiv.toric import (
    P1P1_SYMMETRIES,
    P2_SYMMETRIES,
    TCycle,
    class_is_invariant,
    invariant_divisor_in_class,
    invariant_representative,
    p1_times_p1,
    projective_plane,
    toric_automorphisms,
)
from equivdiv.verify import Corpus, check_shapiro, default_corpus

SMALL_GROUPS = ["C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C2xC4", "EA(2,3)", "D4", "Q8"]


def report(capsys, n, failures, detail=""):
    line = f"[criterion {n}] {'PASS' if not failures else 'FAIL'} {detail}"
    if failures:
        line += " | " + "; ".join(str(f) for f in failures[:5])
    with capsys.disabled():
        print("\n" + line)
    assert not failures, line


def abelian_chains(limit):
    """Invariant-factor chains d1 | d2 | ... with product <= limit."""
    out = [[]]

    def extend(chain, prod):
        last = chain[-1] if chain else 1
        for d in range(2, limit // prod + 1):
            if d % last == 0:
                new = chain + [d]
                out.append(new)
                extend(new, prod * d)

    extend([], 1)
    return out


def test_criterion_1_schur_regression(capsys):
    fails = []
    t0 = time.time()
    A5 = realize("A5")
    if schur_multiplier(A5) != FinAbGroup.cyclic(2):
        fails.append("schur(A5)")
    if not h2_units(A5, 2).is_trivial:
        fails.append("h2_units(A5, 2)")
    if schur_multiplier(realize("V4")) != FinAbGroup.cyclic(2):
        fails.append("schur(V4)")
    for n in range(1, 13):
        if not schur_multiplier(realize(f"C{n}")).is_trivial:
            fails.append(f"schur(C{n})")
    for r in (2, 3, 4):
        k = r * (r - 1) // 2
        if schur_multiplier(realize(f"EA(2,{r})")) != FinAbGroup([2] * k):
            fails.append(f"schur(EA(2,{r}))")
    elapsed = time.time() - t0
    if elapsed > 600:
        fails.append(f"runtime {elapsed:.0f}s")
    report(capsys, 1, fails, f"Schur multiplier regression ({elapsed:.1f}s)")


def test_criterion_2_sylow_cyclic(capsys):
    fails = []
    checked = 0
    groups = [realize(s) for s in ("S3", "D5", "C12")]
    Q = realize("Q8xC3")
    groups += [H.as_group() for H in Q.find_subgroups(lambda H: True)]
    for G in groups:
        if not all_sylow_cyclic(G):
            continue
        checked += 1
        for char in (0, 2, 3):
            if not pic_coker(G, char).is_trivial:
                fails.append(f"order {G.order} char {char}")
    report(capsys, 2, fails, f"Sylow-cyclic groups have trivial pic_coker ({checked} groups)")


def test_criterion_3_abelian_oracle(capsys):
    fails = []
    t0 = time.time()
    chains = abelian_chains(36)
    for chain in chains:
        spec = "x".join(f"C{d}" for d in chain) or "C1"
        if schur_multiplier(realize(spec)) != schur_multiplier_abelian(chain or [1]):
            fails.append(spec)
    elapsed = time.time() - t0
    if elapsed > 300:
        fails.append(f"runtime {elapsed:.0f}s")
    report(capsys, 3, fails, f"bar multiplier equals wedge-square on {len(chains)} abelian groups ({elapsed:.1f}s)")


def test_criterion_4_brute_force(capsys):
    fails = []
    for spec in SMALL_GROUPS:
        G = realize(spec)
        for m in (2, 3, 4):
            if cohomology_group(G, None, 2, modulus=m) != brute_force_h2(G, m):
                fails.append(f"{spec} m={m}")
    report(capsys, 4, fails, f"bar H^2(G, Z/m) equals brute force on {len(SMALL_GROUPS)} groups, m in 2..4")


def test_criterion_5_shapiro(capsys):
    res = check_shapiro(Corpus(default_corpus()))
    report(capsys, 5, res.failures, f"induced-module H^1 vanishes ({res.passed} subgroup cases)")


def test_criterion_6_degree_obstruction(capsys):
    fails = []
    A5 = realize("A5")
    cases = [("A5 {1,2,3,5}", A5, datum_from_orders([1, 2, 3, 5]), 0, 2)]
    cases.append(("A5 char 2", A5, RamificationDatum([OrbitRecord("A4", False), OrbitRecord("C5", True)]), 2, 1))
    for r in (2, 3, 4):
        G = realize(f"EA(2,{r})")
        cases.append((f"EA(2,{r}) free", G, RamificationDatum([]), 0, 2**r))
        cases.append((f"EA(2,{r}) fixed", G, datum_from_orders([2]), 3, 2 ** (r - 1)))
    for name, G, ram, char, want in cases:
        ram.resolve(G, char)
        b = b_invariant(G, ram)
        if b != want:
            fails.append(f"{name}: b = {b}, want {want}")
        bar = h1_div0_bar_check(G, ram)
        if bar != FinAbGroup.cyclic(b):
            fails.append(f"{name}: bar check {bar}")
    report(capsys, 6, fails, f"b values and bar check ({len(cases)} data)")


def test_criterion_7_klein(capsys):
    fails = []
    scen = default_corpus() / "scenarios"
    E, Y, X = (load_scenario(scen / f) for f in ("klein_e.json", "klein_y.json", "agl_x.json"))
    for sc, want in ((E, 1), (Y, 2)):
        got = pic0_coker_order(sc.group, sc.char, sc.declared_c, sc.ram)
        if got != want:
            fails.append(f"{sc.name}: {got}, want {want}")
    chain = load_json(default_corpus() / "chains" / "agl_godown.json")
    if not godown_check(X, Y, chain["N"]):
        fails.append("godown chain")
    report(capsys, 7, fails, "Klein fixtures and go-down chain")


def _toric_samples(fan, aut, rng, count=100, spread=5):
    samples = []
    while len(samples) < count:
        D = TCycle(1, tuple(rng.randint(-spread, spread) for _ in fan.rays))
        if class_is_invariant(fan, aut, D):
            samples.append(D)
    return samples


def test_criterion_8_toric(capsys):
    fails = []
    t0 = time.time()
    rng = random.Random(0)
    counts = {}
    for name, fan, mats in (("P2", projective_plane(), P2_SYMMETRIES), ("P1xP1", p1_times_p1(), P1P1_SYMMETRIES)):
        aut = toric_automorphisms(fan, mats)
        bad = 0
        for D in _toric_samples(fan, aut, rng):
            sol = invariant_divisor_in_class(fan, aut, D)
            if not sol.feasible:
                bad += 1
                if bad == 1:
                    fails.append(f"{name}: D = {list(D.coeffs)} has no orbit-constant divisor, {sol.certificate}")
                continue
            R = invariant_representative(aut, sol.divisor)
            if R != sol.divisor or any(aut.act(g, R) != R for g in range(aut.order)):
                fails.append(f"{name}: certificate fails for {list(D.coeffs)}")
        counts[name] = bad
    elapsed = time.time() - t0
    if elapsed > 60:
        fails.append(f"runtime {elapsed:.0f}s")
    infeasible = ", ".join(f"{k}: {v}/100 infeasible" for k, v in counts.items())
    report(capsys, 8, fails, f"invariant divisor in every invariant class ({infeasible}; {elapsed:.1f}s)")


def test_criterion_9_exactness(capsys):
    fails = []
    corpus = Corpus(default_corpus())
    audited = 0
    for path in corpus.scenario_files:
        sc = corpus.scenario(path)
        if sc.declared_c is None:
            continue
        allowed = c_constraints(sc.group, sc.char, sc.ram)
        if sc.declared_c not in allowed:
            fails.append(f"{sc.name}: declared {sc.declared_c} filtered out of {allowed}")
            continue
        h2 = h2_units(sc.group, sc.char)
        pic0 = pic0_coker_order(sc.group, sc.char, sc.declared_c, sc.ram)
        if pic0 * sc.declared_c != h2.order():
            fails.append(f"{sc.name}: {pic0} * {sc.declared_c} != {h2.order()}")
        audited += 1
        if sc.declared_c not in divisors(b_invariant(sc.group, sc.ram)):
            fails.append(f"{sc.name}: declared c does not divide b")
    report(capsys, 9, fails, f"exactness audit over {audited} scenarios")
