"""Group-spec grammar.

::

    name := ("C" | "D" | "S" | "A") digits | "Q8" | "V4" | "EA(" p "," r ")"
    expr := name ("x" name)* | "perm:" cycles ("," cycles)*

Cycle notation is 1-based, e.g. ``perm:(1 2 3 4 5),(1 2 3)``.  Direct
products are realized on disjoint point sets.
"""

import re
from dataclasses import dataclass

from sympy import isprime

from .errors import ParseError, UnsupportedFamily
from .groups import DEFAULT_CAP, FiniteGroup, cycle_string, parse_cycles


@dataclass(frozen=True)
class Named:
    family: str  # one of C, D, S, A, Q, V
    n: int

    def __str__(self):
        return f"{self.family}{self.n}"


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int
    r: int

    def __str__(self):
        return f"EA({self.p},{self.r})"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self):
        return "x".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Perm:
    generators: tuple  # canonical cycle strings

    def __str__(self):
        return "perm:" + ",".join(self.generators)


_NAME = re.compile(r"([A-Z]+)(\d*)")


def parse_group_spec(text):
    """Parse ``text`` into a spec tree; raises ParseError / UnsupportedFamily."""
    if not isinstance(text, str):
        raise ParseError("group spec must be a string")
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if not stripped:
        raise ParseError("empty group spec", 0, text)
    if stripped.startswith("perm:"):
        return _parse_perm(stripped[5:], offset + 5, text)
    factors = []
    pos = 0
    while True:
        node, pos = _parse_name(stripped, pos, offset, text)
        factors.append(node)
        if pos == len(stripped):
            break
        if stripped[pos] != "x":
            raise ParseError(f"expected 'x' or end, found {stripped[pos]!r}", offset + pos, text)
        pos += 1
        if pos == len(stripped):
            raise ParseError("dangling 'x'", offset + pos, text)
    if len(factors) == 1:
        return factors[0]
    return Product(tuple(factors))


def _parse_name(s, pos, offset, text):
    if s.startswith("EA(", pos):
        m = re.compile(r"EA\(\s*(\d+)\s*,\s*(\d+)\s*\)").match(s, pos)
        if not m:
            raise ParseError("malformed EA(p,r)", offset + pos, text)
        p, r = int(m.group(1)), int(m.group(2))
        if not isprime(p):
            raise UnsupportedFamily(f"EA({p},{r}): {p} is not prime")
        if r < 1:
            raise ParseError("EA rank must be positive", offset + pos, text)
        return ElementaryAbelian(p, r), m.end()
    m = _NAME.match(s, pos)
    if not m or not m.group(1):
        found = s[pos] if pos < len(s) else "end"
        raise ParseError(f"expected a group name, found {found!r}", offset + pos, text)
    letters, digits = m.group(1), m.group(2)
    # 'x' is lowercase so the uppercase run never swallows a separator
    if not digits:
        raise ParseError(f"missing order after {letters!r}", offset + m.end(), text)
    n = int(digits)
    if letters in ("C", "D", "S", "A"):
        if n < 1:
            raise ParseError(f"{letters}{digits}: order must be positive", offset + pos, text)
        return Named(letters, n), m.end()
    if letters == "Q" and n == 8:
        return Named("Q", 8), m.end()
    if letters == "V" and n == 4:
        return Named("V", 4), m.end()
    raise UnsupportedFamily(f"unsupported group family {letters}{digits}")


def _parse_perm(body, offset, text):
    body = body.strip()
    if not body:
        return Perm(())
    gens = []
    pos = 0
    for chunk in body.split(","):
        chunk_s = chunk.strip()
        if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\)\s*)+|\(\s*\)", chunk_s):
            raise ParseError(f"malformed cycles {chunk_s!r}", offset + pos, text)
        gens.append(cycle_string(parse_cycles(chunk_s)))
        pos += len(chunk) + 1
    return Perm(tuple(gens))


def print_group_spec(spec):
    return str(spec)


# -- realization ------------------------------------------------------------


def _cyclic(n):
    if n == 1:
        return []
    return [tuple(list(range(1, n)) + [0])]


def _dihedral(n):
    # D_n has order 2n
    if n == 1:
        return [(1, 0)]
    if n == 2:
        return [(1, 0, 2, 3), (0, 1, 3, 2)]
    rot = tuple(list(range(1, n)) + [0])
    ref = tuple((-i) % n for i in range(n))
    return [rot, ref]


def _symmetric(n):
    if n == 1:
        return []
    if n == 2:
        return [(1, 0)]
    return [tuple(list(range(1, n)) + [0]), tuple([1, 0] + list(range(2, n)))]


def _alternating(n):
    if n < 3:
        return []
    three = tuple([1, 2, 0] + list(range(3, n)))
    if n == 3:
        return [three]
    # A_n = <(1 2 3), (1 2 ... n)> for n odd, <(1 2 3), (2 3 ... n)> for n even
    if n % 2:
        long = tuple(list(range(1, n)) + [0])
    else:
        long = tuple([0] + list(range(2, n)) + [1])
    return [three, long]


def _quaternion():
    return [parse_cycles("(1 2 3 4)(5 6 7 8)"), parse_cycles("(1 5 3 7)(2 8 4 6)")]


def _elementary_abelian(p, r):
    gens = []
    for i in range(r):
        perm = list(range(p * r))
        for j in range(p):
            perm[i * p + j] = i * p + (j + 1) % p
        gens.append(tuple(perm))
    return gens


def _generators(node):
    if isinstance(node, ElementaryAbelian):
        return _elementary_abelian(node.p, node.r), node.p * node.r
    fam, n = node.family, node.n
    if fam == "C":
        return _cyclic(n), n
    if fam == "D":
        return _dihedral(n), {1: 2, 2: 4}.get(n, n)
    if fam == "S":
        return _symmetric(n), n
    if fam == "A":
        return _alternating(n), n
    if fam == "Q":
        return _quaternion(), 8
    if fam == "V":
        return [(1, 0, 2, 3), (0, 1, 3, 2)], 4
    raise UnsupportedFamily(str(node))  # pragma: no cover


def _shift(perm, offset, total):
    out = list(range(total))
    for i, x in enumerate(perm):
        out[offset + i] = offset + x
    return tuple(out)


def realize(spec, cap=DEFAULT_CAP):
    """Permutation group for a parsed spec (or spec string)."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    name = str(spec)
    if isinstance(spec, Perm):
        return FiniteGroup.from_permutations(list(spec.generators), cap=cap, name=name)
    factors = spec.factors if isinstance(spec, Product) else (spec,)
    parts = [_generators(f) for f in factors]
    total = sum(deg for _, deg in parts)
    gens = []
    offset = 0
    for fgens, deg in parts:
        gens += [_shift(g, offset, total) for g in fgens]
        offset += deg
    return FiniteGroup.from_permutations(gens, cap=cap, degree=total, name=name)
