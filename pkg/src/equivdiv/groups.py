"""Finite groups as dense multiplication tables.

Elements are integer ids ``0..n-1`` with 0 the identity, numbered in the
order a breadth-first search over generator words first reaches them
(generators tried in the order given).  The product ``mul[a, b]`` is
"``a`` then ``b``" when elements are permutations acting on the right.
"""

import re
from collections import deque
from functools import cached_property
from math import gcd

import numpy as np
from sympy import factorint

from .errors import ClosureExceedsCap, InvalidPermutation, NotASubgroup

DEFAULT_CAP = 256


def parse_cycles(text, degree=None):
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``.

    Returns the permutation as a 0-based tuple of images, ``perm[i]`` being
    the image of ``i``.
    """
    text = text.strip()
    if text in ("", "()"):
        return tuple(range(degree or 0))
    if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\)\s*)+", text):
        raise InvalidPermutation(f"malformed cycle notation {text!r}")
    cycles = [[int(t) for t in c.split()] for c in re.findall(r"\(([^)]*)\)", text)]
    seen = set()
    for cyc in cycles:
        for pt in cyc:
            if pt < 1:
                raise InvalidPermutation(f"point {pt} is not positive")
            if pt in seen:
                raise InvalidPermutation(f"point {pt} repeated in {text!r}")
            seen.add(pt)
    m = max(seen)
    if degree is not None:
        if m > degree:
            raise InvalidPermutation(f"point {m} exceeds degree {degree}")
        m = degree
    perm = list(range(m))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def cycle_string(perm):
    """1-based cycle notation of a 0-based image tuple; identity is ``()``."""
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


def _compose(p, q):
    return tuple(q[i] for i in p)


def _pad(perm, degree):
    return tuple(perm) + tuple(range(len(perm), degree))


def _check_perm(perm):
    if sorted(perm) != list(range(len(perm))):
        raise InvalidPermutation(f"{perm} is not a bijection")


class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``labels`` optionally holds the concrete elements (permutation tuples or
    matrices) in id order.
    """

    def __init__(self, mul, gens, labels=None, degree=None, name=None):
        self.mul = np.asarray(mul, dtype=np.int64)
        self.order = self.mul.shape[0]
        self.gens = tuple(int(g) for g in gens)
        self.labels = labels
        self.degree = degree
        self.name = name
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        self.inv = inv

    def __repr__(self):
        return f"<FiniteGroup {self.name or '?'} order {self.order}>"

    def __len__(self):
        return self.order

    @classmethod
    def from_generators(cls, gens, multiply, identity, cap=DEFAULT_CAP, **kw):
        """Close ``gens`` under ``multiply`` by breadth-first search."""
        gens = list(gens)
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = multiply(x, g)
                if y not in index:
                    if len(elements) >= cap:
                        raise ClosureExceedsCap(cap)
                    index[y] = len(elements)
                    elements.append(y)
                    queue.append(y)
        n = len(elements)
        mul = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            mul[i] = [index[multiply(a, b)] for b in elements]
        gen_ids = [index[g] for g in gens]
        return cls(mul, gen_ids, labels=elements, **kw)

    @classmethod
    def from_permutations(cls, gens, cap=DEFAULT_CAP, degree=None, name=None):
        """Group generated by permutations (image tuples or cycle strings)."""
        perms = []
        for g in gens:
            if isinstance(g, str):
                g = parse_cycles(g)
            g = tuple(int(x) for x in g)
            _check_perm(g)
            perms.append(g)
        m = max([len(p) for p in perms] + [degree or 0])
        perms = [_pad(p, m) for p in perms]
        return cls.from_generators(
            perms, _compose, tuple(range(m)), cap=cap, degree=m, name=name
        )

    # -- structure ---------------------------------------------------------

    def identity(self):
        return 0

    @cached_property
    def bfs_parent(self):
        """``parent[x] = (h, s)`` with ``x = h*s``, ``s`` a generator id, ``h`` reached earlier."""
        parent = {0: None}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in self.gens:
                y = int(self.mul[x, s])
                if y not in parent:
                    parent[y] = (x, s)
                    queue.append(y)
        if len(parent) != self.order:
            raise NotASubgroup("generators do not generate the group")
        return parent

    @cached_property
    def element_orders(self):
        orders = np.ones(self.order, dtype=np.int64)
        for g in range(1, self.order):
            x, k = g, 1
            while x != 0:
                x = int(self.mul[x, g])
                k += 1
            orders[g] = k
        return orders

    def element_order(self, g):
        return int(self.element_orders[g])

    def power(self, g, k):
        x = 0
        for _ in range(k % self.element_order(g)):
            x = int(self.mul[x, g])
        return x

    def exponent(self):
        e = 1
        for o in self.element_orders:
            e = e * int(o) // gcd(e, int(o))
        return e

    def is_abelian(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    def check_axioms(self):
        """Exhaustive check of associativity, identity and inverses."""
        n = self.order
        m = self.mul
        ids = np.arange(n)
        if not (np.array_equal(m[0], ids) and np.array_equal(m[:, 0], ids)):
            return False
        if not np.all(m[ids, self.inv] == 0):
            return False
        left = m[m, :]  # left[a, b, c] = (ab)c
        right = m[:, m]  # right[a, b, c] = a(bc)
        if not np.array_equal(left, right):
            return False
        return len(self.closure(self.gens)) == n

    def closure(self, ids):
        """Sorted member ids of the subgroup generated by ``ids``."""
        members = {0}
        frontier = [0]
        ids = [int(i) for i in ids]
        while frontier:
            nxt = []
            for x in frontier:
                for s in ids:
                    y = int(self.mul[x, s])
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(members))

    def subgroup(self, gen_ids):
        return Subgroup(self, self.closure(gen_ids), gens=tuple(int(g) for g in gen_ids))

    def whole(self):
        return Subgroup(self, tuple(range(self.order)), gens=self.gens)

    def trivial_subgroup(self):
        return Subgroup(self, (0,), gens=())

    def subgroup_from_members(self, members):
        members = tuple(sorted(set(int(m) for m in members)))
        if 0 not in members:
            raise NotASubgroup("subset does not contain the identity")
        mset = set(members)
        for a in members:
            if int(self.inv[a]) not in mset:
                raise NotASubgroup("subset is not closed under inverses")
            for b in members:
                if int(self.mul[a, b]) not in mset:
                    raise NotASubgroup("subset is not closed under multiplication")
        return Subgroup(self, members)

    def element_id(self, label):
        """Id of a concrete element (permutation tuple or cycle string)."""
        if self.labels is None:
            raise KeyError("group has no element labels")
        if isinstance(label, str):
            label = _pad(parse_cycles(label), self.degree)
        if self.degree is not None and len(label) < self.degree:
            label = _pad(label, self.degree)
        try:
            return self.labels.index(tuple(label))
        except ValueError:
            raise NotASubgroup(f"{cycle_string(label)} is not an element of the group") from None

    def cyclic_subgroups(self):
        seen = set()
        out = []
        for g in range(self.order):
            members = self.closure([g])
            if members not in seen:
                seen.add(members)
                out.append(Subgroup(self, members, gens=(g,)))
        return out

    def find_subgroups(self, predicate=None, pair_budget=20000):
        """Cyclic subgroups plus closures of pairs of cyclic generators.

        Not a full subgroup lattice: every subgroup with at most two
        generators is found when the pair budget allows.
        """
        found = {}
        cyc = self.cyclic_subgroups()
        for H in cyc:
            found.setdefault(H.members, H)
        reps = [H.gens[0] for H in cyc if H.gens]
        tried = 0
        for i, a in enumerate(reps):
            for b in reps[i + 1 :]:
                tried += 1
                if tried > pair_budget:
                    break
                members = self.closure([a, b])
                if members not in found:
                    found[members] = Subgroup(self, members, gens=(a, b))
        subs = sorted(found.values(), key=lambda H: (H.order, H.members))
        if predicate is not None:
            subs = [H for H in subs if predicate(H)]
        return subs

    def prime_divisors(self):
        return sorted(factorint(self.order))

    def sylow_subgroup(self, p):
        return sylow_subgroup(self, p)

    def all_sylow_cyclic(self):
        return all_sylow_cyclic(self)

    def abelian_invariants(self):
        """Invariant factors of the abelianization (only used as an isomorphism heuristic)."""
        comm = set()
        for a in range(self.order):
            for b in range(self.order):
                ab = int(self.mul[a, b])
                ba = int(self.mul[b, a])
                comm.add(int(self.mul[ab, self.inv[ba]]))
        derived = self.closure(comm)
        if len(derived) == 1:
            return _abelian_invariants_of_abelian(self)
        Q = self.whole().quotient_group(self.subgroup_from_members(derived))
        return _abelian_invariants_of_abelian(Q)


def _abelian_invariants_of_abelian(G):
    from .abelian import FinAbGroup

    # p-rank counts: |G[p^i]| determines the p-primary partition
    orders = []
    for p, e in factorint(G.order).items():
        counts = [1]
        i = 1
        while counts[-1] < p**e:
            counts.append(int(np.sum(np.array([_divides_power(o, p, i) for o in G.element_orders]))))
            i += 1
        # number of cyclic factors of order >= p^i is log_p(counts[i]/counts[i-1])
        ge = []
        for i in range(1, len(counts)):
            r = 0
            q = counts[i] // counts[i - 1]
            while q > 1:
                q //= p
                r += 1
            ge.append(r)
        ge.append(0)
        for i in range(len(ge) - 1):
            orders += [p ** (i + 1)] * (ge[i] - ge[i + 1])
    return FinAbGroup.from_orders(orders)


def _divides_power(o, p, i):
    return (p**i) % int(o) == 0


class Subgroup:
    """A subgroup of ``parent`` stored as its sorted member ids."""

    def __init__(self, parent, members, gens=None):
        self.parent = parent
        self.members = tuple(members)
        self._set = frozenset(self.members)
        self.gens = gens

    def __repr__(self):
        return f"<Subgroup order {self.order} of {self.parent!r}>"

    def __contains__(self, g):
        return int(g) in self._set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    @property
    def order(self):
        return len(self.members)

    def index(self):
        return self.parent.order // self.order

    def is_valid(self):
        G = self.parent
        if 0 not in self._set or G.order % self.order:
            return False
        for a in self.members:
            if int(G.inv[a]) not in self._set:
                return False
            for b in self.members:
                if int(G.mul[a, b]) not in self._set:
                    return False
        return True

    def is_cyclic(self):
        orders = self.parent.element_orders
        return any(int(orders[g]) == self.order for g in self.members)

    def is_normal(self):
        G = self.parent
        for g in G.gens:
            gi = int(G.inv[g])
            for h in self.members:
                if int(G.mul[G.mul[gi, h], g]) not in self._set:
                    return False
        return True

    def intersection(self, other):
        return Subgroup(self.parent, tuple(sorted(self._set & other._set)))

    def generators(self):
        if self.gens is not None:
            return list(self.gens)
        gens = []
        current = {0}
        for g in self.members:
            if g not in current:
                gens.append(g)
                current = set(self.parent.closure(gens))
        self.gens = tuple(gens)
        return gens

    def right_cosets(self):
        return cosets(self.parent, self)

    def as_group(self, name=None):
        """This subgroup as a standalone FiniteGroup with BFS-renumbered ids."""
        G = self.parent
        gens = self.generators()
        order = [0]
        index = {0: 0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = int(G.mul[x, s])
                if y not in index:
                    index[y] = len(order)
                    order.append(y)
                    queue.append(y)
        ids = np.array(order)
        lookup = np.full(G.order, -1, dtype=np.int64)
        lookup[ids] = np.arange(len(ids))
        mul = lookup[G.mul[np.ix_(ids, ids)]]
        labels = [G.labels[i] for i in order] if G.labels is not None else None
        H = FiniteGroup(mul, [index[s] for s in gens], labels=labels, degree=G.degree, name=name)
        H.embedding = ids
        return H

    def quotient_group(self, N):
        """Quotient of this subgroup (must be the whole parent) by a normal subgroup."""
        G = self.parent
        cos = cosets(G, N)
        which = np.empty(G.order, dtype=np.int64)
        for i, c in enumerate(cos):
            which[list(c)] = i
        reps = [c[0] for c in cos]
        k = len(cos)
        mul = np.empty((k, k), dtype=np.int64)
        for i, a in enumerate(reps):
            mul[i] = which[G.mul[a, reps]]
        gens = sorted({int(which[g]) for g in G.gens} - {0}) or []
        Q = FiniteGroup(mul, gens)
        # renumber so that ids follow BFS order
        if k > 1:
            Q = Q.whole().as_group()
        return Q


def cosets(G, H):
    """Right cosets ``H g`` as sorted id tuples, ordered by their minimal id."""
    assigned = np.full(G.order, -1, dtype=np.int64)
    out = []
    members = np.array(H.members, dtype=np.int64)
    for g in range(G.order):
        if assigned[g] >= 0:
            continue
        coset = tuple(sorted(int(x) for x in G.mul[members, g]))
        assigned[list(coset)] = len(out)
        out.append(coset)
    return out


def sylow_subgroup(G, p):
    """One Sylow ``p``-subgroup, grown one factor of ``p`` at a time inside normalizers."""
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    P = G.trivial_subgroup()
    while P.order < target:
        grown = None
        for x in range(G.order):
            if x in P:
                continue
            xp = G.power(x, p)
            if xp not in P:
                continue
            xi = int(G.inv[x])
            if all(int(G.mul[G.mul[xi, h], x]) in P for h in P.generators() or [0]):
                grown = x
                break
        if grown is None:  # pragma: no cover - Sylow theory guarantees growth
            raise RuntimeError("failed to grow p-subgroup")
        P = G.subgroup(P.generators() + [grown])
    return P


def all_sylow_cyclic(G):
    return all(sylow_subgroup(G, p).is_cyclic() for p in G.prime_divisors())
