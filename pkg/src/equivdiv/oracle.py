"""Independent dense oracle for ``H^2(G, Z/m)`` with trivial action.

Nothing here touches the bar-complex or Smith-form code used elsewhere.
Normalized cochains are written out from the multiplication table and
the quotient ``Z^2 / B^2`` is computed over each ``Z/p^e`` dividing ``m``
with plain Python integer elimination.
"""

from sympy import factorint

from .abelian import FinAbGroup
from .errors import GroupTooLarge

ORACLE_LIMIT = 12


def _cochain_maps(mul, N):
    """Dense delta1: C^1 -> C^2 and delta2: C^2 -> C^3 as lists of rows."""
    nz = range(1, N)
    one = {g: i for i, g in enumerate(nz)}
    two = {}
    for g in nz:
        for h in nz:
            two[(g, h)] = len(two)

    def c1(g):
        return one.get(g)

    def c2(g, h):
        return two.get((g, h))

    # (d beta)(g, h) = beta(h) - beta(gh) + beta(g)
    d1 = [[0] * len(one) for _ in two]
    for (g, h), row in two.items():
        for col, sign in ((c1(h), 1), (c1(mul[g][h]), -1), (c1(g), 1)):
            if col is not None:
                d1[row][col] += sign
    # (d beta)(g, h, k) = beta(h, k) - beta(gh, k) + beta(g, hk) - beta(g, h)
    d2 = []
    for g in nz:
        for h in nz:
            for k in nz:
                row = [0] * len(two)
                for key, sign in (
                    ((h, k), 1),
                    ((mul[g][h], k), -1),
                    ((g, mul[h][k]), 1),
                    ((g, h), -1),
                ):
                    col = c2(*key)
                    if col is not None:
                        row[col] += sign
                d2.append(row)
    return d1, d2


def _val(x, p, e):
    x %= p**e
    if x == 0:
        return e
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _local_diagonalize(A, p, e, ncols):
    """Diagonalize ``A`` over ``Z/p^e``; returns valuations and ``Qinv``.

    Column operations are tracked as ``Q`` with ``A Q`` diagonal up to row
    operations; ``Qinv`` is returned so coordinates ``y = Qinv x`` can be
    formed.  Valuations are listed per column, ``e`` meaning a zero column.
    """
    q = p**e
    A = [[x % q for x in row] for row in A]
    m = len(A)
    Qinv = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    vals = [e] * ncols
    t = 0
    while t < min(m, ncols):
        best = None
        for i in range(t, m):
            for j in range(t, ncols):
                if A[i][j]:
                    v = _val(A[i][j], p, e)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        # column swap in Q is a row swap in Qinv
        Qinv[t], Qinv[j] = Qinv[j], Qinv[t]
        unit = (A[t][t] // p**v) % q
        uinv = pow(unit, -1, q)
        # scale row t so the pivot is exactly p^v (row op, Q untouched)
        A[t] = [(x * uinv) % q for x in A[t]]
        piv = A[t][t]
        for i2 in range(m):
            if i2 != t and A[i2][t]:
                f = A[i2][t] // piv
                A[i2] = [(a - f * b) % q for a, b in zip(A[i2], A[t])]
        for j2 in range(t + 1, ncols):
            if A[t][j2]:
                f = A[t][j2] // piv
                # col j2 -= f col t ; Qinv: row t += f row j2
                for row in A:
                    row[j2] = (row[j2] - f * row[t]) % q
                Qinv[t] = [(a + f * b) % q for a, b in zip(Qinv[t], Qinv[j2])]
        vals[t] = v
        t += 1
    return vals, Qinv


def _local_cokernel(M, nrows, p, e):
    """``(Z/p^e)^nrows / colspan(M)`` as a list of orders."""
    cols = [list(c) for c in zip(*M)] if M and M[0] else []
    # the transpose has the same invariant factors; unpivoted slots are free
    vals, _ = _local_diagonalize(cols, p, e, nrows) if cols else ([e] * nrows, None)
    return [p**v for v in vals if v > 0]


def _local_h2(mul, N, p, e):
    q = p**e
    d1, d2 = _cochain_maps(mul, N)
    n2 = (N - 1) ** 2
    vals, Qinv = _local_diagonalize(d2, p, e, n2)
    # Z^2 in y-coordinates is sum of p^{e - v_i} R, i.e. generator t_i with
    # y_i = p^{e - v_i} t_i and t_i of order p^{v_i}
    gens = [i for i in range(n2) if vals[i] > 0]
    # images of delta1 columns
    ncol1 = N - 1
    T = []
    for i in gens:
        row = []
        scale = p ** (e - vals[i])
        for c in range(ncol1):
            y = sum(Qinv[i][k] * d1[k][c] for k in range(n2)) % q
            assert y % scale == 0
            row.append((y // scale) % q)
        T.append(row)
    # relations: columns of T plus p^{v_i} on each generator
    rel = [r + [p ** vals[i] if j == k else 0 for k in range(len(gens))] for j, (i, r) in enumerate(zip(gens, T))]
    return _local_cokernel(rel, len(gens), p, e)


def brute_force_h2(group, m):
    """``H^2(G, Z/m)`` for trivial action by dense elimination (``|G| <= 12``)."""
    N = group.order
    if N > ORACLE_LIMIT:
        raise GroupTooLarge(f"oracle limited to |G| <= {ORACLE_LIMIT}, got {N}")
    if m < 1:
        raise ValueError("modulus must be positive")
    if N == 1 or m == 1:
        return FinAbGroup()
    mul = [[int(x) for x in row] for row in group.mul]
    orders = []
    for p, e in factorint(m).items():
        orders += _local_h2(mul, N, p, e)
    return FinAbGroup.from_orders(orders)
