"""Group cohomology in low degrees from the normalized bar resolution.

Cochains of degree ``n`` are functions on ``n``-tuples of non-identity
elements, so ``C^n`` has rank ``rank(M) * (|G| - 1)^n``.  The coboundary is

    (df)(g1..g_{n+1}) = g1 f(g2..g_{n+1})
                        + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
                        + (-1)^{n+1} f(g1..g_n)

with terms containing the identity dropped.

For ``n >= 1`` the group ``H^n(G, M)`` is killed by ``|G|``, so it equals
the torsion of ``coker d^{n-1}`` (any torsion class of the cokernel is a
cocycle because ``C^{n+1}`` is torsion free).

The Schur multiplier is computed as integer homology ``H_2(G, Z)``, the
torsion of the cokernel of ``d_3`` on normalized 3-chains.  Since ``Q/Z``
is divisible, ``H^2(G, Q/Z) = Hom(H_2(G, Z), Q/Z)`` which is isomorphic to
``H_2(G, Z)``; over an algebraically closed field of characteristic 0 this
is ``H^2(G, F^x)``, and in characteristic ``p`` one keeps the ``p'``-part.
"""

from math import gcd

import numpy as np
from scipy import sparse
from sympy import factorint

from .abelian import FinAbGroup
from .errors import BudgetExceeded, InvalidChain
from .modules import fixed_points, trivial_module
from .smith import local_smith_valuations, smith_normal_form

DEFAULT_BUDGET = 5_000_000


def _check_budget(size, budget):
    if budget is not None and size > budget:
        raise BudgetExceeded(size, budget)


def _tuples(N, n):
    """All ``n``-tuples over ``1..N-1`` in lexicographic order, shape (K, n)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(1, N)] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _tuple_index(T, N):
    """Index of each row of ``T`` among normalized tuples, -1 if it contains 0."""
    n = T.shape[1]
    idx = np.zeros(T.shape[0], dtype=np.int64)
    bad = np.zeros(T.shape[0], dtype=bool)
    for c in range(n):
        idx = idx * (N - 1) + (T[:, c] - 1)
        bad |= T[:, c] == 0
    idx[bad] = -1
    return idx


class BarComplex:
    """Normalized cochain complex ``C^*(G, M)`` up to degree 3."""

    def __init__(self, group, module=None, budget=DEFAULT_BUDGET):
        self.group = group
        self.module = module if module is not None else trivial_module(group)
        self.budget = budget
        self._d = {}

    def cochain_rank(self, n):
        return self.module.rank * (self.group.order - 1) ** n

    def coboundary(self, n):
        """Sparse integer matrix of ``d^n: C^n -> C^{n+1}`` (rows index ``C^{n+1}``)."""
        if n in self._d:
            return self._d[n]
        _check_budget(self.cochain_rank(n + 1), self.budget)
        G, M = self.group, self.module
        N, r = G.order, M.rank
        T = _tuples(N, n + 1)
        K = T.shape[0]
        rows_out, cols_out, vals_out = [], [], []
        comps = np.arange(r)
        row_base = np.arange(K) * r

        def add_identity_term(src_tuples, sign):
            idx = _tuple_index(src_tuples, N)
            ok = idx >= 0
            rb = row_base[ok][:, None] + comps[None, :]
            cb = idx[ok][:, None] * r + comps[None, :]
            rows_out.append(rb.ravel())
            cols_out.append(cb.ravel())
            vals_out.append(np.full(rb.size, sign, dtype=np.int64))

        if K and r:
            # g1 . f(g2..g_{n+1})
            src = _tuple_index(T[:, 1:], N) if n else np.zeros(K, dtype=np.int64)
            mats = M.matrices
            for g in range(1, N):
                sel = np.nonzero(T[:, 0] == g)[0]
                if not sel.size:
                    continue
                ii, jj = np.nonzero(mats[g])
                vv = mats[g][ii, jj]
                rb = (row_base[sel][:, None] + ii[None, :]).ravel()
                cb = (src[sel][:, None] * r + jj[None, :]).ravel()
                rows_out.append(rb)
                cols_out.append(cb)
                vals_out.append(np.tile(vv, sel.size))
            for i in range(1, n + 1):
                merged = np.concatenate(
                    [T[:, : i - 1], G.mul[T[:, i - 1], T[:, i]][:, None], T[:, i + 1 :]], axis=1
                )
                add_identity_term(merged, (-1) ** i)
            add_identity_term(T[:, :n], (-1) ** (n + 1))
        shape = (K * r, self.cochain_rank(n))
        if rows_out:
            D = sparse.coo_matrix(
                (np.concatenate(vals_out), (np.concatenate(rows_out), np.concatenate(cols_out))),
                shape=shape,
            ).tocsr()
            D.sum_duplicates()
            D.eliminate_zeros()
        else:
            D = sparse.csr_matrix(shape, dtype=np.int64)
        self._d[n] = D
        return D

    def check_d_squared(self, n):
        """``d^{n+1} d^n == 0``."""
        prod = self.coboundary(n + 1) @ self.coboundary(n)
        prod.eliminate_zeros()
        return prod.nnz == 0


def _torsion_of_coker(D):
    if D.shape[0] == 0 or D.shape[1] == 0:
        return FinAbGroup()
    return smith_normal_form(D).cokernel_torsion()


def _tensor_mod(A, m):
    """``A (x) Z/m`` for a FinAbGroup ``A``."""
    orders = [gcd(d, m) for d in A.invariants] + [m] * A.free_rank
    return FinAbGroup.from_orders(orders)


def _tor_mod(A, m):
    return FinAbGroup.from_orders([gcd(d, m) for d in A.invariants])


def cohomology_group(group, module=None, n=1, modulus=None, budget=DEFAULT_BUDGET):
    """``H^n(G, M)`` for ``n`` in 0, 1, 2 as a FinAbGroup.

    With ``modulus=m`` the coefficients are ``M / mM`` and the answer comes
    from the universal coefficient sequence
    ``H^n(M/m) = H^n(M) (x) Z/m  +  Tor(H^{n+1}(M), Z/m)``.
    """
    if n not in (0, 1, 2):
        raise ValueError("only degrees 0, 1, 2 are supported")
    bar = BarComplex(group, module, budget)
    M = bar.module
    need = n + 1 if modulus is None else n + 2
    _check_budget(M.rank * (group.order - 1) ** need if group.order > 1 else M.rank, budget)
    integral = _integral_cohomology(bar, n)
    if modulus is None:
        return integral
    nxt = _integral_cohomology(bar, n + 1)
    return _tensor_mod(integral, modulus).direct_sum(_tor_mod(nxt, modulus))


def _integral_cohomology(bar, n):
    if n == 0:
        return FinAbGroup((), fixed_points(bar.module).rank)
    if bar.group.order == 1:
        return FinAbGroup()
    return _torsion_of_coker(bar.coboundary(n - 1))


# -- Schur multiplier ---------------------------------------------------------


def _generator_ids(G):
    seen = []
    for s in G.gens:
        if s != 0 and s not in seen:
            seen.append(s)
    return seen


def reduced_relations(G):
    """Blocks of the cokernel presentation of ``d_3`` after unit-pivot reduction.

    For each non-generator ``x`` with BFS parent ``x = h s`` the boundary of
    ``[g|h|s]`` is ``[h|s] - [gh|s] + [g|x] - [g|h]``, a relation with
    coefficient 1 on ``[g|x]``.  Ordered by word length these relations are
    unitriangular, so every 2-chain is congruent to a combination of the
    ``[g|s]`` with ``s`` a generator.  ``E[g, x]`` is that combination.
    Yields, for each ``g``, the images of all boundaries ``d[g|h|k]``.
    """
    N = G.order
    S = _generator_ids(G)
    sidx = {s: i for i, s in enumerate(S)}
    width = (N - 1) * len(S)
    E = np.zeros((N, N, width), dtype=np.int32)
    for g in range(1, N):
        for s in S:
            E[g, s, (g - 1) * len(S) + sidx[s]] = 1
    gs = np.arange(1, N)
    for x, par in G.bfs_parent.items():
        if par is None or x in sidx:
            continue
        h, s = par
        E[gs, x] = E[gs, h] + E[G.mul[gs, h], s] - E[h, s][None, :]
    H = np.arange(1, N)
    HK = G.mul[np.ix_(H, H)]
    base = E[np.ix_(H, H)]
    for g in range(1, N):
        block = base - E[G.mul[g, H]][:, H] + E[g][HK] - E[g, H][:, None, :]
        yield block.reshape(-1, width)


def _local_echelon(A, p, k):
    """Row-echelon generating set of the row span of ``A`` over ``Z/p^k``."""
    mod = p**k
    A = np.mod(A.astype(np.int64), mod)
    A = A[A.any(axis=1)]
    out = []
    for j in range(A.shape[1] if A.ndim == 2 else 0):
        if not A.shape[0]:
            break
        col = A[:, j]
        nzi = np.nonzero(col)[0]
        if not nzi.size:
            continue
        vals = np.zeros(nzi.size, dtype=np.int64)
        c = col[nzi].copy()
        for _ in range(k):
            div = c % p == 0
            vals += div
            c = np.where(div, c // p, c)
        pos = int(np.argmin(vals))
        i = int(nzi[pos])
        v = int(vals[pos])
        unit = int(A[i, j]) // p**v
        prow = (A[i] * pow(unit, -1, mod)) % mod
        f = A[:, j] // p**v
        A = (A - np.outer(f, prow)) % mod
        A = np.delete(A, i, axis=0)
        out.append(prow)
        if v:
            extra = (prow * p ** (k - v)) % mod
            if extra.any():
                A = np.vstack([A, extra])
        A = A[A.any(axis=1)]
    if not out:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return np.array(out)


def schur_multiplier(group, budget=DEFAULT_BUDGET):
    """``H_2(G, Z)`` from the normalized bar complex.

    The torsion is read off prime by prime over ``Z/p^k`` with
    ``k = v_p(|G|) + 1``: ``H_2`` is killed by ``|G|``, so no invariant
    factor reaches valuation ``k`` and the local Smith form is exact.
    """
    N = group.order
    if N == 1:
        return FinAbGroup()
    _check_budget((N - 1) ** 3, budget)
    cached = getattr(group, "_schur", None)
    if cached is not None:
        return cached
    S = _generator_ids(group)
    expected_rank = (N - 1) * (len(S) - 1)
    primes = factorint(N)
    states = {p: None for p in primes}
    for block in reduced_relations(group):
        block = np.unique(block, axis=0)
        for p, e in primes.items():
            prev = states[p]
            stacked = block if prev is None else np.vstack([prev, block])
            states[p] = _local_echelon(stacked, p, e + 1)
    orders = []
    for p, e in primes.items():
        vals = local_smith_valuations(states[p], p, e + 1)
        if len(vals) != expected_rank:
            raise ArithmeticError(
                f"local rank {len(vals)} at p={p} differs from rational rank {expected_rank}"
            )
        orders += [p**v for v in vals if v]
    # groups are immutable, so the answer can live on the object
    group._schur = FinAbGroup.from_orders(orders)
    return group._schur


def schur_multiplier_dense(group, budget=DEFAULT_BUDGET):
    """Same group via the generic sparse Smith form of the full ``d_3`` (small groups)."""
    if group.order == 1:
        return FinAbGroup()
    bar = BarComplex(group, trivial_module(group), budget)
    # d^2 of the trivial module has the boundaries of [g|h|k] as rows
    return _torsion_of_coker(bar.coboundary(2))


def h2_units(group, char=0, budget=DEFAULT_BUDGET):
    """``H^2(G, F^x)`` for ``F`` algebraically closed of characteristic ``char``."""
    mult = schur_multiplier(group, budget)
    if char:
        return mult.strip_prime(char)
    return mult


def schur_multiplier_abelian(factors):
    """Closed form ``wedge^2`` of ``Z/d_1 + ... + Z/d_k``: ``sum_{i<j} Z/d_i``."""
    factors = [int(d) for d in factors]
    for d in factors:
        if d < 1:
            raise InvalidChain(f"invariant factor {d} must be positive")
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise InvalidChain(f"{a} does not divide {b}")
    k = len(factors)
    orders = []
    for i, d in enumerate(factors):
        orders += [d] * (k - 1 - i)
    return FinAbGroup.from_orders(orders)
