"""Finitely generated abelian groups in invariant-factor form."""

from dataclasses import dataclass
from math import gcd, prod

from sympy import factorint

from .errors import InvalidChain


def _prime_power_parts(n):
    return [p**e for p, e in factorint(n).items()]


@dataclass(frozen=True)
class FinAbGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k``, every ``d_i >= 2``."""

    invariants: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants)
        object.__setattr__(self, "invariants", inv)
        if self.free_rank < 0:
            raise InvalidChain("free rank must be nonnegative")
        for d in inv:
            if d < 2:
                raise InvalidChain(f"invariant factor {d} must be at least 2")
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise InvalidChain(f"{a} does not divide {b}")

    @classmethod
    def from_orders(cls, orders, free_rank=0):
        """Normalize an arbitrary direct sum of cyclic groups.

        ``orders`` lists cyclic orders in any order; 1 is dropped and 0 stands
        for a copy of Z.
        """
        by_prime = {}
        for d in orders:
            d = abs(int(d))
            if d == 0:
                free_rank += 1
                continue
            for q in _prime_power_parts(d):
                p = min(factorint(q))
                by_prime.setdefault(p, []).append(q)
        k = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * k
        for qs in by_prime.values():
            qs.sort(reverse=True)
            for i, q in enumerate(qs):
                factors[k - 1 - i] *= q
        return cls(tuple(factors), free_rank)

    @classmethod
    def trivial(cls):
        return cls()

    @classmethod
    def cyclic(cls, n):
        if n == 0:
            return cls((), 1)
        return cls.from_orders([n])

    def __iter__(self):
        return iter(self.invariants)

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def is_trivial(self):
        return not self.invariants and self.free_rank == 0

    @property
    def is_cyclic(self):
        return len(self.invariants) + self.free_rank <= 1

    def order(self):
        if self.free_rank:
            raise ValueError("infinite group has no finite order")
        return prod(self.invariants)

    def exponent(self):
        if self.free_rank:
            return 0
        return self.invariants[-1] if self.invariants else 1

    def elementary_divisors(self):
        return sorted(q for d in self.invariants for q in _prime_power_parts(d))

    def p_part(self, p):
        return FinAbGroup.from_orders([p ** _valuation(d, p) for d in self.invariants])

    def strip_prime(self, p):
        """Remove every ``p``-primary component (keep the ``p'``-part); free part kept."""
        return FinAbGroup.from_orders(
            [d // p ** _valuation(d, p) for d in self.invariants], self.free_rank
        )

    def has_cyclic_quotient(self, c):
        """True iff Z/c is a quotient of this group."""
        if c < 1:
            return False
        if self.free_rank:
            return True
        return self.exponent() % c == 0

    def direct_sum(self, other):
        return FinAbGroup.from_orders(
            list(self.invariants) + list(other.invariants), self.free_rank + other.free_rank
        )

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariants]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        out = {"invariants": list(self.invariants)}
        if self.free_rank:
            out["free_rank"] = self.free_rank
        return out


def _valuation(n, p):
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def lcm(a, b):
    return a * b // gcd(a, b)
