"""Fans, their finite symmetry groups and invariant torus-invariant cycles.

A cone is a sorted tuple of ray indices; its orbit closure ``V(sigma)``
has codimension ``dim sigma``.  A cycle of codimension ``r`` is therefore a
vector of coefficients on the ``r``-dimensional cones.  Lattice matrices
act on column vectors, so ``mul[a, b]`` corresponds to ``A_a @ A_b``.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .abelian import FinAbGroup
from .errors import (
    ClassNotInvariant,
    DimensionMismatch,
    FanError,
    NotFanPreserving,
    NotOrbitConstant,
    RaysDoNotSpan,
)
from .groups import DEFAULT_CAP, FiniteGroup
from .smith import dense_snf, smith_normal_form, solve_integer


@dataclass
class Fan:
    rank: int
    rays: list
    cones: list  # every cone of dimension >= 1, rays included as singletons
    polytopal: bool = True  # asserted by the user, never checked

    def __post_init__(self):
        self.rays = [tuple(int(x) for x in v) for v in self.rays]
        self.cones = sorted({tuple(sorted(int(i) for i in c)) for c in self.cones}, key=lambda c: (len(c), c))

    @classmethod
    def from_maximal(cls, rank, rays, maximal, **kw):
        """Fan whose cones are all nonempty faces of the given simplicial cones."""
        cones = set()
        for c in maximal:
            c = tuple(sorted(c))
            for k in range(1, len(c) + 1):
                cones.update(itertools.combinations(c, k))
        return cls(rank, rays, sorted(cones), **kw)

    @classmethod
    def from_json(cls, obj):
        try:
            rank = int(obj["rank"])
            rays = obj["rays"]
        except (KeyError, TypeError, ValueError):
            raise FanError("fan file needs 'rank' and 'rays'") from None
        if "maximal_cones" in obj:
            return cls.from_maximal(rank, rays, obj["maximal_cones"], polytopal=obj.get("polytopal", True))
        return cls(rank, rays, obj.get("cones", []), polytopal=obj.get("polytopal", True))

    def to_json(self):
        return {"rank": self.rank, "rays": [list(v) for v in self.rays], "cones": [list(c) for c in self.cones]}

    def cones_of_dim(self, k):
        return [c for c in self.cones if len(c) == k]

    def maximal_cones(self):
        cs = set(self.cones)
        return [c for c in self.cones if not any(set(c) < set(d) for d in cs)]

    def ray_matrix(self):
        return np.array(self.rays, dtype=np.int64).reshape(len(self.rays), self.rank)


@dataclass
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class FanReport:
    violations: list = field(default_factory=list)
    complete: bool = None
    completeness: str = "exact"  # or "sampled"
    smooth: bool = None
    polytopal: str = "asserted"

    @property
    def valid(self):
        return not self.violations

    def kinds(self):
        return [v.kind for v in self.violations]

    def to_json(self):
        return {
            "valid": self.valid,
            "complete": self.complete,
            "completeness": self.completeness,
            "smooth": self.smooth,
            "polytopal": self.polytopal,
            "violations": [{"kind": v.kind, "detail": v.detail} for v in self.violations],
        }


def validate_fan(fan, samples=1000, seed=0):
    """Structured check of primitivity, face closure, smoothness and completeness."""
    rep = FanReport()
    bad = rep.violations
    n = fan.rank
    nr = len(fan.rays)
    for i, v in enumerate(fan.rays):
        if len(v) != n:
            bad.append(Violation("WrongLength", f"ray {i} has {len(v)} entries, lattice rank {n}"))
            continue
        g = math.gcd(*v) if v else 0
        if g != 1:
            bad.append(Violation("NotPrimitive", f"ray {i} = {list(v)} has content {g}"))
    if len(set(fan.rays)) != nr:
        bad.append(Violation("DuplicateRay", "two rays coincide"))
    cones = set(fan.cones)
    for c in fan.cones:
        if any(i < 0 or i >= nr for i in c):
            bad.append(Violation("BadRayIndex", f"cone {list(c)} refers to a missing ray"))
            return rep
    for i in range(nr):
        if (i,) not in cones:
            bad.append(Violation("FaceClosureViolation", f"ray {i} is not listed as a cone"))
    for c in fan.cones:
        # missing rays were reported above
        for k in range(2, len(c)):
            for face in itertools.combinations(c, k):
                if face not in cones:
                    bad.append(Violation("FaceClosureViolation", f"face {list(face)} of cone {list(c)} missing"))
    if bad:
        return rep
    smooth = True
    for c in fan.cones:
        if len(c) > n:
            smooth = False
            bad.append(Violation("NotSimplicial", f"cone {list(c)} has more than {n} rays"))
            continue
        res = dense_snf([list(fan.rays[i]) for i in c], shape=(len(c), n))
        if res.rank < len(c) or any(d != 1 for d in res.diagonal):
            smooth = False
            bad.append(Violation("NotSmooth", f"cone {list(c)} is not part of a lattice basis"))
    rep.smooth = smooth
    if not smooth:
        return rep
    if n <= 2:
        rep.complete, detail = _complete_low_rank(fan)
        rep.completeness = "exact"
    else:
        rep.complete, detail = _complete_sampled(fan, samples, seed)
        rep.completeness = "sampled"
    if not rep.complete:
        bad.append(Violation("Incomplete", detail))
    return rep


def _complete_low_rank(fan):
    n = fan.rank
    if n == 0:
        return True, ""
    if n == 1:
        ok = set(fan.rays) == {(1,), (-1,)}
        return ok, "" if ok else "a complete fan in rank 1 has rays +1 and -1"
    nr = len(fan.rays)
    if nr < 3:
        return False, "fewer than three rays cannot cover the plane"
    order = sorted(range(nr), key=lambda i: math.atan2(fan.rays[i][1], fan.rays[i][0]))
    cones = set(fan.cones)
    for a, b in zip(order, order[1:] + order[:1]):
        u, v = fan.rays[a], fan.rays[b]
        cross = u[0] * v[1] - u[1] * v[0]
        if cross <= 0:
            return False, f"gap of at least half a turn between rays {a} and {b}"
        if tuple(sorted((a, b))) not in cones:
            return False, f"rays {a} and {b} are adjacent but span no cone"
    return True, ""


def _complete_sampled(fan, samples, seed):
    rng = np.random.default_rng(seed)
    n = fan.rank
    full = [c for c in fan.cones if len(c) == n]
    inverses = []
    for c in full:
        B = np.array([fan.rays[i] for i in c], dtype=float).T
        inverses.append(np.linalg.inv(B))
    for _ in range(samples):
        x = rng.normal(size=n)
        if not any((Binv @ x >= -1e-12).all() for Binv in inverses):
            return False, f"direction {np.round(x, 4).tolist()} lies in no cone"
    return True, ""


# -- automorphisms ---------------------------------------------------------------


def _as_matrix(m, n):
    A = np.array(m, dtype=np.int64)
    if A.shape != (n, n):
        raise FanError(f"automorphism must be a {n}x{n} integer matrix")
    return tuple(tuple(int(x) for x in row) for row in A)


def _matmul(a, b):
    return tuple(tuple(int(x) for x in row) for row in (np.array(a) @ np.array(b)))


class ToricAutGroup:
    """A finite group of lattice automorphisms preserving a fan."""

    def __init__(self, fan, group, matrices, ray_perm, cone_perm):
        self.fan = fan
        self.group = group
        self.matrices = matrices  # element id -> tuple matrix
        self.ray_perm = ray_perm  # element id -> tuple of ray images
        self.cone_perm = cone_perm  # element id -> dict cone -> cone

    @property
    def order(self):
        return self.group.order

    def generators(self):
        return list(self.group.gens)

    def act(self, g, cycle):
        """``g . Z``: the coefficient of ``sigma`` moves to ``g sigma``."""
        cones = self.fan.cones_of_dim(cycle.dim)
        pos = {c: i for i, c in enumerate(cones)}
        out = [0] * len(cones)
        for i, c in enumerate(cones):
            out[pos[self.cone_perm[g][c]]] = cycle.coeffs[i]
        return TCycle(cycle.dim, tuple(out))

    def is_invariant(self, cycle):
        return all(self.act(g, cycle) == cycle for g in self.generators())


def toric_automorphisms(fan, matrices, cap=DEFAULT_CAP):
    n = fan.rank
    gens = []
    for m in matrices:
        A = _as_matrix(m, n)
        det = round(np.linalg.det(np.array(A, dtype=float))) if n else 1
        if abs(det) != 1:
            raise FanError(f"matrix {list(map(list, A))} is not unimodular")
        gens.append(A)
    # a generator that moves a ray off the fan has no business in the closure
    for A in gens:
        _fan_action(fan, A)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    G = FiniteGroup.from_generators(gens, _matmul, ident, cap=cap, name="aut")
    ray_perm, cone_perm = [], []
    for A in G.labels:
        img, cp = _fan_action(fan, A)
        ray_perm.append(img)
        cone_perm.append(cp)
    return ToricAutGroup(fan, G, list(G.labels), ray_perm, cone_perm)


def _fan_action(fan, A):
    """Ray permutation and cone map of the matrix ``A``; NotFanPreserving otherwise."""
    rays = {v: i for i, v in enumerate(fan.rays)}
    cones = set(fan.cones)
    M = np.array(A, dtype=np.int64).reshape(fan.rank, fan.rank)
    img = []
    for v in fan.rays:
        w = tuple(int(x) for x in M @ np.array(v, dtype=np.int64))
        if w not in rays:
            raise NotFanPreserving([list(r) for r in A])
        img.append(rays[w])
    cp = {}
    for c in fan.cones:
        d = tuple(sorted(img[i] for i in c))
        if d not in cones:
            raise NotFanPreserving([list(r) for r in A])
        cp[c] = d
    return tuple(img), cp


def cone_orbits(aut, dim):
    """Orbits of the ``dim``-dimensional cones, as tuples of positions in ``cones_of_dim``."""
    cones = aut.fan.cones_of_dim(dim)
    pos = {c: i for i, c in enumerate(cones)}
    seen = set()
    orbits = []
    for i, c in enumerate(cones):
        if i in seen:
            continue
        orb = sorted({pos[aut.cone_perm[g][c]] for g in range(aut.order)})
        seen.update(orb)
        orbits.append(tuple(orb))
    return orbits


# -- cycles -----------------------------------------------------------------------


@dataclass(frozen=True)
class TCycle:
    """Integer combination of orbit closures ``V(sigma)`` over the ``dim``-cones."""

    dim: int
    coeffs: tuple

    @property
    def codim(self):
        return self.dim

    @classmethod
    def from_json(cls, obj, fan):
        dim = int(obj["dim"])
        k = len(fan.cones_of_dim(dim))
        raw = obj.get("coeffs", {})
        if isinstance(raw, dict):
            coeffs = [0] * k
            for key, v in raw.items():
                idx = int(key)
                if not 0 <= idx < k:
                    raise DimensionMismatch(f"cone index {idx} out of range for dimension {dim}")
                coeffs[idx] = int(v)
        else:
            coeffs = [int(v) for v in raw]
        return cls(dim, tuple(coeffs))

    def to_json(self):
        return {"dim": self.dim, "coeffs": list(self.coeffs)}


def _check_cycle(fan, cycle):
    k = len(fan.cones_of_dim(cycle.dim))
    if len(cycle.coeffs) != k:
        raise DimensionMismatch(f"{len(cycle.coeffs)} coefficients for {k} cones of dimension {cycle.dim}")


def invariant_representative(aut, cycle):
    """Orbit-constant version of ``cycle``, certified ``g Z = Z`` for all generators."""
    _check_cycle(aut.fan, cycle)
    coeffs = list(cycle.coeffs)
    for orb in cone_orbits(aut, cycle.dim):
        vals = [coeffs[i] for i in orb]
        if len(set(vals)) == 1:
            continue
        total = sum(vals)
        if total % len(orb):
            raise NotOrbitConstant(list(orb), vals)
        for i in orb:
            coeffs[i] = total // len(orb)
    out = TCycle(cycle.dim, tuple(coeffs))
    if not aut.is_invariant(out):  # pragma: no cover - orbit constancy implies this
        raise ArithmeticError("orbit-constant cycle failed the invariance certificate")
    return out


@dataclass
class ClassGroup:
    group: FinAbGroup
    relations: list  # rows <u, v_rho>: the (#rays) x n matrix


def divisor_class_group(fan):
    """Cokernel of ``M -> Z^rays``, ``u -> (<u, v_rho>)``."""
    P = [list(v) for v in fan.rays]
    res = smith_normal_form(P) if P else None
    if res is None or res.rank < fan.rank:
        raise RaysDoNotSpan("the rays do not span the lattice rationally")
    return ClassGroup(res.cokernel(), P)


@dataclass
class DivisorSolution:
    divisor: TCycle = None
    character: list = None
    certificate: tuple = None

    @property
    def feasible(self):
        return self.divisor is not None


def _principal_member(P, vec):
    return solve_integer(P, list(vec)).feasible


def invariant_divisor_in_class(fan, aut, D):
    """Find ``D' = D + div(chi^u)`` with orbit-constant coefficients.

    Solves ``(P_i - P_j) u = D_j - D_i`` for ``i, j`` in one ray orbit over
    the integers.  When no ``u`` exists the Smith-form certificate of the
    failure is returned instead of a divisor.
    """
    if D.dim != 1:
        raise DimensionMismatch("invariant_divisor_in_class needs a codimension-1 cycle")
    _check_cycle(fan, D)
    P = [list(v) for v in fan.rays]
    for g in aut.generators():
        gD = aut.act(g, D)
        diff = [a - b for a, b in zip(gD.coeffs, D.coeffs)]
        if not _principal_member(P, diff):
            raise ClassNotInvariant(f"g.D - D is not principal for generator {g}")
    A, rhs = [], []
    for orb in cone_orbits(aut, 1):
        i0 = orb[0]
        for j in orb[1:]:
            A.append([P[j][k] - P[i0][k] for k in range(fan.rank)])
            rhs.append(D.coeffs[i0] - D.coeffs[j])
    if not A:
        return DivisorSolution(D, [0] * fan.rank)
    sol = solve_integer(A, rhs)
    if not sol.feasible:
        return DivisorSolution(certificate=sol.certificate)
    u = sol.x
    coeffs = tuple(D.coeffs[i] + sum(P[i][k] * u[k] for k in range(fan.rank)) for i in range(len(P)))
    out = TCycle(1, coeffs)
    if not aut.is_invariant(out):  # pragma: no cover
        raise ArithmeticError("solution failed the invariance certificate")
    return DivisorSolution(out, list(u))


def class_is_invariant(fan, aut, D):
    P = [list(v) for v in fan.rays]
    for g in aut.generators():
        gD = aut.act(g, D)
        if not _principal_member(P, [a - b for a, b in zip(gD.coeffs, D.coeffs)]):
            return False
    return True


def class_of(fan, D):
    """Image of ``D`` in the Smith coordinates of the class group (torsion reduced)."""
    P = [list(v) for v in fan.rays]
    res = dense_snf(P, certificates=True, shape=(len(P), fan.rank))
    y = [sum(res.U[i][k] * D.coeffs[k] for k in range(len(P))) for i in range(len(P))]
    out = []
    for i in range(len(P)):
        if i < res.rank:
            d = res.diagonal[i]
            if d > 1:
                out.append(y[i] % d)
        else:
            out.append(y[i])
    return tuple(out)


# -- standard fans ----------------------------------------------------------------


def projective_plane():
    return Fan.from_maximal(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])


def p1_times_p1():
    return Fan.from_maximal(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def projective_line():
    return Fan.from_maximal(1, [(1,), (-1,)], [(0,), (1,)])


P2_SYMMETRIES = [[[0, -1], [1, -1]], [[0, 1], [1, 0]]]
P1P1_SYMMETRIES = [[[0, -1], [1, 0]], [[0, 1], [1, 0]]]
P1_SYMMETRIES = [[[-1]]]
