"""Exact integer linear algebra: Smith normal form, kernels, integer solving.

Three engines live here:

* a dense Smith form over Python integers that can return the unimodular
  certificates ``U, V`` with ``U @ A @ V == D``;
* a sparse eliminator that repeatedly pivots on ``+-1`` entries (column
  with fewest entries first, shortest row within it) and hands the
  leftover block to the dense routine;
* a numpy Smith form over the local ring ``Z/p^k`` for matrices whose
  cokernel torsion is known to be killed by a given integer.
"""

import heapq
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .abelian import FinAbGroup

DENSE_CUTOFF = 2000


@dataclass
class SNFResult:
    diagonal: tuple
    shape: tuple
    U: list = field(default=None, repr=False)
    V: list = field(default=None, repr=False)

    @property
    def rank(self):
        return len(self.diagonal)

    def cokernel(self):
        """``Z^rows / image`` as a FinAbGroup."""
        return FinAbGroup.from_orders(
            [d for d in self.diagonal if d > 1], self.shape[0] - self.rank
        )

    def cokernel_torsion(self):
        return FinAbGroup.from_orders([d for d in self.diagonal if d > 1])


def _as_dense(A):
    if sparse.issparse(A):
        A = A.toarray()
    if isinstance(A, np.ndarray):
        return [[int(x) for x in row] for row in A], A.shape
    rows = [[int(x) for x in row] for row in A]
    ncols = len(rows[0]) if rows else 0
    return rows, (len(rows), ncols)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def dense_snf(A, certificates=False, shape=None):
    """Smith normal form of a dense integer matrix (list of rows).

    Returns an SNFResult whose diagonal lists the nonzero invariant factors
    in divisibility order.  With ``certificates`` the unimodular ``U`` and
    ``V`` satisfy ``U A V = diag``.
    """
    D, shp = _as_dense(A)
    if shape is not None:
        shp = shape
    m, n = shp
    U = _identity(m) if certificates else None
    V = _identity(n) if certificates else None

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        rd, rs = D[dst], D[src]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            ud, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
                    if D[i][t]:
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            piv = D[t][t]
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        diag.append(D[t][t])
        t += 1
    return SNFResult(tuple(diag), (m, n), U, V)


def _sparse_rows(A):
    """Rows of ``A`` as dicts of nonzero Python-int entries, plus the shape."""
    if isinstance(A, SparseRows):
        return [dict(r) for r in A.rows], A.shape
    if sparse.issparse(A):
        A = A.tocsr()
        rows = []
        for i in range(A.shape[0]):
            lo, hi = A.indptr[i], A.indptr[i + 1]
            rows.append(
                {int(j): int(v) for j, v in zip(A.indices[lo:hi], A.data[lo:hi]) if v}
            )
        return rows, A.shape
    D, shp = _as_dense(A)
    return [{j: v for j, v in enumerate(r) if v} for r in D], shp


@dataclass
class SparseRows:
    shape: tuple
    rows: list


def smith_normal_form(A, certificates=False):
    """Smith normal form of an integer matrix (dense, list of rows, or scipy sparse).

    Certificates are only produced by the dense engine; without them sparse
    input goes through unit-pivot elimination first.
    """
    if certificates:
        return dense_snf(A, certificates=True)
    rows, shape = _sparse_rows(A)
    return SNFResult(_sparse_diagonal(rows, shape), tuple(shape))


def _sparse_diagonal(rows, shape):
    m, n = shape
    col_rows = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    heap = [(len(s), j) for j, s in col_rows.items()]
    heapq.heapify(heap)
    units = 0
    dead_rows = set()
    while heap:
        cnt, c = heapq.heappop(heap)
        rset = col_rows.get(c)
        if not rset:
            continue
        if cnt != len(rset):
            heapq.heappush(heap, (len(rset), c))
            continue
        best = None
        for i in rset:
            v = rows[i][c]
            if v == 1 or v == -1:
                if best is None or len(rows[i]) < len(rows[best]):
                    best = i
        if best is None:
            continue
        prow = rows[best]
        u = prow[c]
        touched = set()
        for i in list(rset):
            if i == best:
                continue
            r = rows[i]
            f = r[c] * u
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        col_rows.setdefault(j, set()).add(i)
                    r[j] = nv
                else:
                    if j in r:
                        del r[j]
                        col_rows[j].discard(i)
                touched.add(j)
        for j in prow:
            col_rows[j].discard(best)
            touched.add(j)
        rows[best] = {}
        dead_rows.add(best)
        del col_rows[c]
        touched.discard(c)
        units += 1
        for j in touched:
            s = col_rows.get(j)
            if s:
                heapq.heappush(heap, (len(s), j))
    rest = [r for r in rows if r]
    if not rest:
        return (1,) * units
    cols = sorted({j for r in rest for j in r})
    cidx = {j: k for k, j in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for j, v in r.items():
            dense[i][cidx[j]] = v
    tail = dense_snf(dense, shape=(len(rest), len(cols))).diagonal
    return (1,) * units + tuple(tail)


def rank(A):
    return smith_normal_form(A).rank


def kernel_basis(A, ncols=None):
    """Saturated basis of the integer kernel ``{x : A x = 0}`` (list of column vectors)."""
    D, shp = _as_dense(A)
    if ncols is not None:
        shp = (len(D), ncols)
    if shp[0] == 0:
        return _identity(shp[1])
    res = dense_snf(D, certificates=True, shape=shp)
    r = res.rank
    n = shp[1]
    return [[res.V[i][j] for i in range(n)] for j in range(r, n)]


@dataclass
class IntegerSolution:
    """Outcome of solving ``A x = b`` over the integers.

    When infeasible, ``certificate`` names the SNF coordinate that fails:
    ``("nonzero", i, value)`` means ``(U b)_i != 0`` beyond the rank;
    ``("divisibility", i, value, d)`` means ``d`` does not divide ``(U b)_i``.
    Either way ``y = U b`` cannot be hit by ``D y``.
    """

    x: list = None
    certificate: tuple = None

    @property
    def feasible(self):
        return self.x is not None


def solve_integer(A, b):
    D, (m, n) = _as_dense(A)
    if m == 0:
        return IntegerSolution(x=[0] * n)
    res = dense_snf(D, certificates=True, shape=(m, n))
    Ub = [sum(res.U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i, d in enumerate(res.diagonal):
        if Ub[i] % d:
            return IntegerSolution(certificate=("divisibility", i, Ub[i], d))
        y[i] = Ub[i] // d
    for i in range(res.rank, m):
        if Ub[i]:
            return IntegerSolution(certificate=("nonzero", i, Ub[i]))
    x = [sum(res.V[i][k] * y[k] for k in range(n)) for i in range(n)]
    return IntegerSolution(x=x)


def check_certificate(A, result):
    """True iff ``U A V`` equals the diagonal matrix of ``result`` exactly."""
    D, (m, n) = _as_dense(A)
    U, V = result.U, result.V
    UA = [[sum(U[i][k] * D[k][j] for k in range(m) if U[i][k]) for j in range(n)] for i in range(m)]
    UAV = [[sum(UA[i][k] * V[k][j] for k in range(n) if UA[i][k]) for j in range(n)] for i in range(m)]
    for i in range(m):
        for j in range(n):
            want = result.diagonal[i] if (i == j and i < result.rank) else 0
            if UAV[i][j] != want:
                return False
    return True


def local_smith_valuations(A, p, k):
    """Valuations of the invariant factors of ``A`` over ``Z/p^k``.

    Only invariant factors of valuation below ``k`` are visible; every such
    factor is reported, in nondecreasing order.  ``A`` is a numpy integer
    array; rows are the generators of the lattice.
    """
    mod = p**k
    A = np.mod(np.asarray(A, dtype=np.int64), mod)
    A = A[A.any(axis=1)]
    vals = []
    shift = 0
    while A.shape[0] and A.shape[1] and k > 0:
        units = (A % p) != 0
        if not units.any():
            A = A // p
            k -= 1
            shift += 1
            mod = p**k
            if k == 0:
                break
            A = np.mod(A, mod)
            A = A[A.any(axis=1)]
            continue
        i, j = divmod(int(np.argmax(units)), A.shape[1])
        u = pow(int(A[i, j]), -1, mod)
        prow = (A[i] * u) % mod
        col = A[:, j].copy()
        A = (A - np.outer(col, prow)) % mod
        A = np.delete(np.delete(A, i, axis=0), j, axis=1)
        A = A[A.any(axis=1)]
        vals.append(shift)
    return vals
