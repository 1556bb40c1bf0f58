"""Degree obstructions for a finite group acting on a curve.

Inputs are purely group theoretic: the group, the characteristic of the
ground field and one record per ramified orbit giving its inertia group.
Invariant divisors have degrees in ``B = bZ`` with ``b`` the gcd of the
orbit sizes ``[G:I]``; invariant classes have degrees in some ``A`` with
``A/B`` cyclic and a quotient of ``H^2(G, F^x)``.  The value ``|A/B|``
depends on the curve, so it only ever enters as a declared number.
"""

import json
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from pathlib import Path

from sympy import divisors, isprime

from .abelian import FinAbGroup
from .cohomology import DEFAULT_BUDGET, _check_budget, cohomology_group, h2_units
from .errors import (
    InadmissibleC,
    InertiaNotSubgroup,
    InputError,
    NotFree,
    NotNormal,
    TameInertiaNotCyclic,
)
from .groups import Subgroup
from .groupspec import parse_group_spec, realize
from .modules import degree_zero_module, divisor_module, fixed_points


def check_char(char):
    char = int(char)
    if char != 0 and not isprime(char):
        raise InputError(f"characteristic must be 0 or a prime, got {char}")
    return char


@dataclass
class OrbitRecord:
    """One ramified orbit (or ``multiplicity`` orbits with the same inertia).

    ``inertia`` is a Subgroup, an order, a group-spec string naming the
    isomorphism type, or ``perm:`` generators naming actual elements.
    ``cyclic`` is the cyclic-assumed flag; ``None`` means infer it.
    """

    inertia: object
    cyclic: bool = None
    multiplicity: int = 1

    def order(self, group):
        if isinstance(self.inertia, Subgroup):
            return self.inertia.order
        if isinstance(self.inertia, int):
            return self.inertia
        return self.subgroup(group).order

    def subgroup(self, group):
        cached = getattr(self, "_resolved", None)
        if cached is not None and cached.parent is group:
            return cached
        H = _resolve_inertia(group, self.inertia, self.cyclic)
        self._resolved = H
        return H

    def to_json(self):
        if isinstance(self.inertia, Subgroup):
            label = self.inertia.order
        else:
            label = self.inertia
        out = {"inertia": label, "cyclic": self.cyclic}
        if self.multiplicity != 1:
            out["multiplicity"] = self.multiplicity
        return out


def _resolve_inertia(G, inertia, cyclic):
    if isinstance(inertia, Subgroup):
        if inertia.parent is not G or not inertia.is_valid():
            raise InertiaNotSubgroup("inertia record is not a subgroup of G")
        return inertia
    if isinstance(inertia, int):
        n = inertia
        if n < 1 or G.order % n:
            raise InertiaNotSubgroup(f"inertia order {n} does not divide |G| = {G.order}")
        if cyclic is not False:
            for g in range(G.order):
                if int(G.element_orders[g]) == n:
                    return G.subgroup([g])
            if cyclic:
                raise InertiaNotSubgroup(f"G has no cyclic subgroup of order {n}")
        found = G.find_subgroups(lambda H: H.order == n)
        if not found:
            raise InertiaNotSubgroup(f"no subgroup of order {n} found in G")
        return found[0]
    text = str(inertia).strip()
    if text.startswith("perm:"):
        spec = parse_group_spec(text)
        ids = [G.element_id(c) for c in spec.generators]
        return G.subgroup(ids)
    target = realize(text)
    if G.order % target.order:
        raise InertiaNotSubgroup(f"{text} has order {target.order}, not dividing |G| = {G.order}")
    inv = target.abelian_invariants()
    exp = target.exponent()
    is_cyc = target.whole().is_cyclic()

    def matches(H):
        if H.order != target.order or H.is_cyclic() != is_cyc:
            return False
        K = H.as_group()
        return K.exponent() == exp and K.abelian_invariants() == inv

    found = G.find_subgroups(matches)
    if not found:
        raise InertiaNotSubgroup(f"no subgroup of type {text} found in G")
    return found[0]


@dataclass
class RamificationDatum:
    records: list = field(default_factory=list)
    has_generic_orbit: bool = True

    def resolve(self, group, char=0):
        """Validate every record against ``group``; returns the subgroups."""
        char = check_char(char)
        subs = []
        for rec in self.records:
            if rec.multiplicity < 1:
                raise InputError("orbit multiplicity must be positive")
            H = rec.subgroup(group)
            tame = char == 0 or H.order % char != 0
            if rec.cyclic and not H.is_cyclic():
                raise InertiaNotSubgroup("record flagged cyclic names a non-cyclic subgroup")
            if tame and (rec.cyclic is False or not H.is_cyclic()):
                raise TameInertiaNotCyclic(
                    f"inertia of order {H.order} is tame in characteristic {char} but not cyclic"
                )
            subs.append(H)
        return subs

    def to_json(self):
        out = {"orbits": [r.to_json() for r in self.records]}
        if not self.has_generic_orbit:
            out["generic_orbit"] = False
        return out


def datum_from_orders(orders, cyclic=True, generic=True):
    return RamificationDatum([OrbitRecord(int(n), cyclic) for n in orders], generic)


def pic_coker(group, char=0, budget=DEFAULT_BUDGET):
    """Cokernel of ``Div(X)^G -> Pic(X)^G``; depends only on the group."""
    return h2_units(group, check_char(char), budget)


def b_invariant(group, ram):
    """gcd of the orbit sizes ``[G:I]``, with ``|G|`` for the generic orbit."""
    sizes = [group.order // rec.order(group) for rec in ram.records]
    for rec, size in zip(ram.records, sizes):
        n = rec.order(group)
        if n < 1 or group.order % n:
            raise InertiaNotSubgroup(f"inertia order {n} does not divide |G| = {group.order}")
    if ram.has_generic_orbit:
        sizes.append(group.order)
    if not sizes:
        raise InputError("ramification datum has no orbits at all")
    return reduce(gcd, sizes)


def h1_div0(group, ram):
    return FinAbGroup.cyclic(b_invariant(group, ram))


def _model_budget(M, budget):
    _check_budget(M.rank * M.rank, budget)


def h1_div0_bar_check(group, ram, budget=DEFAULT_BUDGET):
    """``Z / deg(Div^G)`` computed on the finite divisor model.

    The fixed lattice of the permutation model is found by integer kernel
    computation and the degree map sums coordinates.
    """
    M = divisor_module(group, ram)
    _model_budget(M, budget)
    fixed = fixed_points(M)
    degs = [sum(v) for v in fixed.basis]
    return FinAbGroup.cyclic(reduce(gcd, degs, 0))


def h1_div0_cohomology(group, ram, budget=DEFAULT_BUDGET):
    """``H^1(G, Div_0)`` of the finite model straight from the bar complex."""
    M = divisor_module(group, ram)
    return cohomology_group(group, degree_zero_module(M), 1, budget=budget)


def c_constraints(group, char, ram, budget=DEFAULT_BUDGET):
    """Orders ``c`` that ``|A/B|`` may take for this datum."""
    char = check_char(char)
    subs = ram.resolve(group, char)
    if any(H.order == group.order for H in subs):
        return [1]
    b = b_invariant(group, ram)
    h2 = h2_units(group, char, budget)
    return [c for c in divisors(b) if h2.has_cyclic_quotient(c)]


def pic0_coker_order(group, char, c, ram=None, budget=DEFAULT_BUDGET):
    """Order of ``coker(Div_0^G -> Pic_0^G)`` forced by exactness: ``|H^2| / c``."""
    char = check_char(char)
    h2 = h2_units(group, char, budget)
    if ram is not None:
        allowed = c_constraints(group, char, ram, budget)
    else:
        allowed = [d for d in divisors(h2.exponent()) if h2.has_cyclic_quotient(d)]
    if c not in allowed:
        raise InadmissibleC(f"c = {c} is not admissible; allowed values {allowed}")
    return h2.order() // c


@dataclass
class ObstructionReport:
    group: str
    char: int
    h2_units: FinAbGroup
    b: int
    h1_div0: FinAbGroup
    c_divisors: list
    pic_coker: FinAbGroup
    pic0_coker_order_range: list
    declared_c: int = None
    pic0_coker_order: int = None

    def to_json(self):
        out = {
            "group": self.group,
            "char": self.char,
            "h2_units": self.h2_units.to_json(),
            "b": self.b,
            "h1_div0": self.h1_div0.to_json(),
            "c_divisors": list(self.c_divisors),
            "pic_coker": self.pic_coker.to_json(),
            "pic0_coker_order_range": list(self.pic0_coker_order_range),
        }
        if self.declared_c is not None:
            out["declared_c"] = self.declared_c
            out["pic0_coker_order"] = self.pic0_coker_order
        return out


def obstruction_report(group, char, ram, declared_c=None, budget=DEFAULT_BUDGET, name=None):
    char = check_char(char)
    ram.resolve(group, char)
    h2 = h2_units(group, char, budget)
    cs = c_constraints(group, char, ram, budget)
    b = b_invariant(group, ram)
    pic0 = None
    if declared_c is not None:
        pic0 = pic0_coker_order(group, char, declared_c, ram, budget)
    return ObstructionReport(
        group=name or group.name or f"order {group.order}",
        char=char,
        h2_units=h2,
        b=b,
        h1_div0=FinAbGroup.cyclic(b),
        c_divisors=cs,
        pic_coker=h2,
        pic0_coker_order_range=sorted({h2.order() // c for c in cs}),
        declared_c=declared_c,
        pic0_coker_order=pic0,
    )


# -- scenario fixtures ---------------------------------------------------------


@dataclass
class Scenario:
    name: str
    group_spec: str
    group: object
    char: int
    ram: RamificationDatum
    declared_c: int = None
    provenance: str = ""


def _record_from_json(obj):
    if isinstance(obj, (int, str)):
        obj = {"inertia": obj}
    inertia = obj["inertia"]
    if isinstance(inertia, str) and inertia.strip().isdigit():
        inertia = int(inertia)
    return OrbitRecord(inertia, obj.get("cyclic"), int(obj.get("multiplicity", 1)))


def scenario_from_json(obj, name="scenario"):
    for key in ("group", "orbits"):
        if key not in obj:
            raise InputError(f"scenario {name} lacks '{key}'")
    spec = obj["group"]
    group = realize(spec)
    ram = RamificationDatum(
        [_record_from_json(o) for o in obj["orbits"]],
        bool(obj.get("generic_orbit", True)),
    )
    dc = obj.get("declared_c")
    return Scenario(
        name=obj.get("name", name),
        group_spec=spec,
        group=group,
        char=check_char(obj.get("char", 0)),
        ram=ram,
        declared_c=None if dc is None else int(dc),
        provenance=obj.get("provenance", ""),
    )


def load_json(path):
    path = Path(path)
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def load_scenario(path):
    path = Path(path)
    return scenario_from_json(load_json(path), name=path.stem)


def godown_check(X, Y, N):
    """``c_Y | c_X`` for ``Y = X/N`` with ``N`` normal and acting freely.

    ``X`` and ``Y`` are Scenarios with declared values; ``N`` is a Subgroup
    of ``X.group`` (or ``perm:`` generators of one).
    """
    G = X.group
    if not isinstance(N, Subgroup):
        N = _resolve_inertia(G, N, None)
    if N.parent is not G:
        raise InputError("N must be a subgroup of the group acting on X")
    if not N.is_normal():
        raise NotNormal("N is not normal in G")
    for H in X.ram.resolve(G, X.char):
        if H.intersection(N).order > 1:
            raise NotFree("N meets an inertia group nontrivially")
    Q = G.whole().quotient_group(N)
    Yg = Y.group
    if Q.order != Yg.order or Q.abelian_invariants() != Yg.abelian_invariants():
        raise InputError(f"G/N has order {Q.order}, which does not match the group acting on Y")
    if X.declared_c is None or Y.declared_c is None:
        raise InputError("godown check needs declared c on both scenarios")
    return X.declared_c % Y.declared_c == 0
