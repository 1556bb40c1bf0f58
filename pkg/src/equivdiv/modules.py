"""Z[G]-modules that are free abelian of finite rank.

A module stores one integer matrix per group generator; matrices for the
other elements are composed along the BFS tree of the group and cached.
The action is a left action on column vectors:
``action(g) @ action(h) == action(g*h)``.
"""

import random

import numpy as np

from .abelian import FinAbGroup
from .errors import InertiaNotSubgroup, InvalidModule
from .groups import Subgroup, cosets
from .smith import kernel_basis, smith_normal_form


class ZGModule:
    def __init__(self, group, rank, generator_action, name=None):
        self.group = group
        self.rank = int(rank)
        self.name = name
        gens = {}
        for s, mat in generator_action.items():
            mat = np.asarray(mat, dtype=np.int64).reshape(self.rank, self.rank)
            gens[int(s)] = mat
        missing = set(group.gens) - set(gens)
        if missing:
            raise InvalidModule(f"no action given for generators {sorted(missing)}")
        self._gen_action = gens
        self._cache = None

    def __repr__(self):
        return f"<ZGModule {self.name or ''} rank {self.rank} over {self.group!r}>"

    @property
    def matrices(self):
        """Array of shape (|G|, rank, rank); entry ``g`` is the action of ``g``."""
        if self._cache is None:
            G = self.group
            mats = np.zeros((G.order, self.rank, self.rank), dtype=np.int64)
            mats[0] = np.eye(self.rank, dtype=np.int64)
            parent = G.bfs_parent
            # insertion order of the BFS tree fills parents first
            for x in parent:
                if x == 0:
                    continue
                h, s = parent[x]
                # action(h*s) = action(h) @ action(s)
                mats[x] = mats[h] @ self._gen_action[s]
            self._cache = mats
        return self._cache

    def action(self, g):
        return self.matrices[int(g)]

    def is_homomorphism(self, samples=100, seed=0, exhaustive_limit=24):
        """Check ``action(g) action(h) == action(gh)`` and unimodularity."""
        G = self.group
        mats = self.matrices
        for s, m in self._gen_action.items():
            if not np.array_equal(mats[s], m):
                return False
        for g in range(G.order):
            d = round(np.linalg.det(mats[g])) if self.rank else 1
            if abs(d) != 1:
                return False
        if G.order <= exhaustive_limit:
            pairs = [(g, h) for g in range(G.order) for h in range(G.order)]
        else:
            rng = random.Random(seed)
            pairs = [(rng.randrange(G.order), rng.randrange(G.order)) for _ in range(samples)]
        for g, h in pairs:
            if not np.array_equal(mats[g] @ mats[h], mats[int(G.mul[g, h])]):
                return False
        return True

    def fixed_points(self):
        return fixed_points(self)


def trivial_module(group, rank=1):
    eye = np.eye(rank, dtype=np.int64)
    return ZGModule(group, rank, {s: eye for s in group.gens}, name="Z" if rank == 1 else f"Z^{rank}")


def induced_module(group, H):
    """``Ind_H^G Z``: permutation module on the right cosets ``H x``.

    ``g`` sends the basis vector of ``H x`` to that of ``H x g^-1``.
    """
    if not isinstance(H, Subgroup) or H.parent is not group or not H.is_valid():
        raise InertiaNotSubgroup("induced_module needs a subgroup of the same group")
    cos = cosets(group, H)
    which = np.empty(group.order, dtype=np.int64)
    for i, c in enumerate(cos):
        which[list(c)] = i
    k = len(cos)
    action = {}
    for s in group.gens:
        sinv = int(group.inv[s])
        mat = np.zeros((k, k), dtype=np.int64)
        for i, c in enumerate(cos):
            j = int(which[group.mul[c[0], sinv]])
            mat[j, i] = 1
        action[s] = mat
    M = ZGModule(group, k, action, name=f"Ind[{H.order}]")
    M.cosets = cos
    return M


def regular_module(group):
    return induced_module(group, group.trivial_subgroup())


def direct_sum(M, N):
    if M.group is not N.group:
        raise InvalidModule("direct sum needs modules over the same group")
    r = M.rank + N.rank
    action = {}
    for s in M.group.gens:
        mat = np.zeros((r, r), dtype=np.int64)
        mat[: M.rank, : M.rank] = M.action(s)
        mat[M.rank :, M.rank :] = N.action(s)
        action[s] = mat
    return ZGModule(M.group, r, action, name=f"({M.name}+{N.name})")


def zero_module(group):
    return ZGModule(group, 0, {s: np.zeros((0, 0), dtype=np.int64) for s in group.gens}, name="0")


class FixedLattice:
    """The sublattice ``M^G`` with a saturated basis (rows of ``basis``)."""

    def __init__(self, rank, basis):
        self.rank = rank
        self.basis = basis

    def group(self):
        return FinAbGroup((), self.rank)


def fixed_points(M):
    """Saturated basis of ``M^G``: integer kernel of the stacked ``action(s) - I``."""
    if M.rank == 0:
        return FixedLattice(0, [])
    eye = np.eye(M.rank, dtype=np.int64)
    stacked = [row for s in M.group.gens for row in (M.action(s) - eye).tolist()]
    basis = kernel_basis(stacked, ncols=M.rank) if stacked else kernel_basis([], ncols=M.rank)
    basis = _hermite_rows(basis)
    return FixedLattice(len(basis), basis)


def _hermite_rows(vectors):
    """Reduce a lattice basis to a row-echelon basis with positive pivots (same lattice)."""
    rows = [list(v) for v in vectors]
    out = []
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for j in range(ncols):
                    r[j] -= q * p[j]
            nz = [r for r in nz if r[col]]
        p = nz[0]
        if p[col] < 0:
            p[:] = [-x for x in p]
        for r in out:
            q = r[col] // p[col]
            if q:
                for j in range(ncols):
                    r[j] -= q * p[j]
        out.append(p)
        rows = [r for r in rows if r is not p and any(r)]
        col += 1
    return out


def saturation_index(basis):
    """Product of the invariant factors of a basis matrix; 1 iff saturated."""
    if not basis:
        return 1
    d = smith_normal_form(basis).diagonal
    out = 1
    for x in d:
        out *= x
    return out


def divisor_module(group, ram):
    """Finite G-stable model of Div(X): one induced module per orbit record.

    Includes a free orbit when ``ram.has_generic_orbit``; a record with
    multiplicity ``k`` contributes ``k`` orbits.
    """
    subs = []
    for rec in ram.records:
        H = rec.subgroup(group)
        subs += [H] * rec.multiplicity
    if ram.has_generic_orbit:
        subs.append(group.trivial_subgroup())
    M = zero_module(group)
    blocks = []
    for H in subs:
        I = induced_module(group, H)
        blocks.append(I.rank)
        M = direct_sum(M, I) if M.rank else I
    M.orbit_sizes = blocks
    return M


def degree_zero_module(M):
    """Kernel of the degree map on a permutation module, in the basis ``e_0 - e_i``.

    ``g(e_0 - e_i) = e_a - e_b = (e_0 - e_b) - (e_0 - e_a)``.
    """
    r = M.rank
    if r < 1:
        raise InvalidModule("degree-zero part of the zero module")
    action = {}
    for s in M.group.gens:
        P = M.action(s)
        img = [int(np.nonzero(P[:, i])[0][0]) for i in range(r)]
        mat = np.zeros((r - 1, r - 1), dtype=np.int64)
        a = img[0]
        for i in range(1, r):
            b = img[i]
            if b:
                mat[b - 1, i - 1] += 1
            if a:
                mat[a - 1, i - 1] -= 1
        action[s] = mat
    return ZGModule(M.group, r - 1, action, name=f"{M.name}_0")
