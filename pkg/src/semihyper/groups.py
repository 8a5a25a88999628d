"""Finite groups stored as Cayley tables.

``CayleyTable.table[a][b]`` is the 0-based index of ``g_a * g_b``.  Public
functions that take an element index (``left_regular`` and friends) use
1-based indices to match the JSON format.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cube import Measure
from .errors import (
    IndexOutOfRange,
    LengthMismatch,
    NotAssociative,
    NotLatinSquare,
    OrderMismatch,
    UnknownGroup,
    UnsupportedOrder,
)


@dataclass(frozen=True)
class CayleyTable:
    """A validated group table.  Construction fails unless it is a group."""

    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0:
            raise NotLatinSquare("table", 0, "empty table")
        full = set(range(n))
        for a, row in enumerate(t):
            if len(row) != n:
                raise NotLatinSquare("row", a + 1, f"has length {len(row)}")
            if set(row) != full:
                raise NotLatinSquare("row", a + 1, f"{[x + 1 for x in row]}")
        for b in range(n):
            col = {t[a][b] for a in range(n)}
            if col != full:
                raise NotLatinSquare("column", b + 1)
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise NotAssociative(a + 1, b + 1, c + 1)
        # an associative Latin square has a two-sided identity
        e = next(a for a in range(n) if t[a][a] == a)
        inv = tuple(t[a].index(e) for a in range(n))
        object.__setattr__(self, "_identity", e)
        object.__setattr__(self, "_inverses", inv)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        """0-based index of the identity."""
        return self._identity

    @property
    def identity_index(self) -> int:
        return self._identity + 1

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def product(self) -> list[list[int]]:
        """1-based product table, as written to JSON."""
        return [[x + 1 for x in row] for row in self.table]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self._identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def relabel(self, perm: Sequence[int]) -> "CayleyTable":
        """Table of the same group with element ``a`` renamed ``perm[a]``."""
        n = self.order
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = perm[self.table[a][b]]
        return CayleyTable(tuple(map(tuple, new)), self.name)


def validate_cayley(product: Sequence[Sequence[int]]) -> CayleyTable:
    """Validate a 1-based product table and return the group."""
    n = len(product)
    rows = []
    for a, row in enumerate(product):
        for x in row:
            if not isinstance(x, int) or not 1 <= x <= n:
                raise NotLatinSquare("row", a + 1, f"entry {x!r} outside 1..{n}")
        rows.append(tuple(x - 1 for x in row))
    return CayleyTable(tuple(rows))


@dataclass(frozen=True)
class PermutationMatrix:
    """0/1 matrix with one 1 per row and column.

    ``images[j] = k`` means the 1 of column ``j`` sits in row ``k``.
    """

    images: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(
            tuple(int(self.images[j] == k) for j in range(n)) for k in range(n)
        )

    def __matmul__(self, other: "PermutationMatrix") -> "PermutationMatrix":
        return PermutationMatrix(tuple(self.images[x] for x in other.images))

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence]) -> "PermutationMatrix":
        n = len(entries)
        images = []
        for j in range(n):
            col = [entries[k][j] for k in range(n)]
            ones = [k for k, x in enumerate(col) if x == 1]
            if len(ones) != 1 or any(x not in (0, 1) for x in col):
                raise ValueError(f"column {j + 1} is not a unit vector")
            images.append(ones[0])
        if len(set(images)) != n:
            raise ValueError("not a permutation matrix")
        return cls(tuple(images))


def _check_element(g: CayleyTable, i: int) -> None:
    if not 1 <= i <= g.order:
        raise IndexOutOfRange(f"element index {i} outside 1..{g.order}")


def left_regular(g: CayleyTable, i: int) -> PermutationMatrix:
    """G_i with entry (k, j) = 1 iff g_i g_j = g_k."""
    _check_element(g, i)
    return PermutationMatrix(g.table[i - 1])


def right_regular(g: CayleyTable, i: int) -> PermutationMatrix:
    """H_i with entry (k, j) = 1 iff g_j g_i = g_k."""
    _check_element(g, i)
    return PermutationMatrix(tuple(g.table[j][i - 1] for j in range(g.order)))


# catalog


def cyclic(n: int) -> CayleyTable:
    return CayleyTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"Z{n}")


def direct_product(g: CayleyTable, h: CayleyTable) -> CayleyTable:
    """Elements (a, b) indexed as ``a * |h| + b``."""
    m = h.order
    n = g.order * m
    t = [[0] * n for _ in range(n)]
    for x in range(n):
        a1, b1 = divmod(x, m)
        for y in range(n):
            a2, b2 = divmod(y, m)
            t[x][y] = g.table[a1][a2] * m + h.table[b1][b2]
    name = f"{g.name}x{h.name}" if g.name and h.name else ""
    return CayleyTable(tuple(map(tuple, t)), name)


def symmetric3() -> CayleyTable:
    """S_3 on permutations of (0, 1, 2) in lexicographic order; (s t)(x) = s(t(x))."""
    perms = list(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    t = tuple(
        tuple(index[tuple(s[t_[x]] for x in range(3))] for t_ in perms) for s in perms
    )
    return CayleyTable(t, "S3")


def dihedral(m: int) -> CayleyTable:
    """Dihedral group of order 2m; r^a s^b stored at index ``b * m + a``."""
    n = 2 * m
    t = [[0] * n for _ in range(n)]
    for x in range(n):
        b1, a1 = divmod(x, m)
        for y in range(n):
            b2, a2 = divmod(y, m)
            a = (a1 + (a2 if b1 == 0 else -a2)) % m
            t[x][y] = ((b1 + b2) % 2) * m + a
    return CayleyTable(tuple(map(tuple, t)), f"D{m}")


# unit quaternion products: (unit, unit) -> (sign, unit), units 0=1, 1=i, 2=j, 3=k
_QUAT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion() -> CayleyTable:
    """Q_8 ordered 1, -1, i, -i, j, -j, k, -k."""
    elems = [(s, u) for u in range(4) for s in (1, -1)]
    index = {e: k for k, e in enumerate(elems)}
    t = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = _QUAT[(u1, u2)]
            row.append(index[(s1 * s2 * s, u)])
        t.append(tuple(row))
    return CayleyTable(tuple(t), "Q8")


CATALOG_NAMES = {
    1: ("Z1",),
    2: ("Z2",),
    3: ("Z3",),
    4: ("Z4", "Z2xZ2"),
    5: ("Z5",),
    6: ("Z6", "S3"),
    7: ("Z7",),
    8: ("Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"),
}

_PRODUCT_NAME = re.compile(r"^Z\d+(xZ\d+)*$")


def named(name: str) -> CayleyTable:
    """Group by catalog name.  Any direct product of cyclic groups ("Z2xZ3") is accepted."""
    if name == "S3":
        return symmetric3()
    if name == "D4":
        return dihedral(4)
    if name == "Q8":
        return quaternion()
    if _PRODUCT_NAME.match(name):
        factors = [int(f[1:]) for f in name.split("x")]
        if any(f < 1 for f in factors):
            raise UnknownGroup(f"bad cyclic factor in {name!r}")
        g = cyclic(factors[0])
        for f in factors[1:]:
            g = direct_product(g, cyclic(f))
        return CayleyTable(g.table, name)
    raise UnknownGroup(f"unknown group name {name!r}")


def catalog(order: int) -> list[CayleyTable]:
    """One representative per isomorphism class of the given order (1..8)."""
    if order not in CATALOG_NAMES:
        raise UnsupportedOrder(f"catalog covers orders 1..8, got {order}")
    return [named(nm) for nm in CATALOG_NAMES[order]]


def full_catalog() -> list[CayleyTable]:
    return [g for order in CATALOG_NAMES for g in catalog(order)]


# isomorphism


@dataclass(frozen=True)
class GroupIsomorphism:
    """``mapping[a]`` (0-based) is the image of element ``a``; None when not isomorphic."""

    mapping: tuple[int, ...] | None

    def __bool__(self):
        return self.mapping is not None


def generators(g: CayleyTable) -> list[int]:
    """A small generating set, chosen greedily by decreasing element order."""
    n = g.order
    span = {g.identity}
    gens = []
    for x in sorted(range(n), key=lambda a: (-g.element_order(a), a)):
        if x in span:
            continue
        gens.append(x)
        span = _closure(g, span | {x})
        if len(span) == n:
            break
    return gens


def _closure(g: CayleyTable, elems: Iterable[int]) -> set[int]:
    out = set(elems)
    frontier = list(out)
    while frontier:
        a = frontier.pop()
        for b in list(out):
            for c in (g.table[a][b], g.table[b][a]):
                if c not in out:
                    out.add(c)
                    frontier.append(c)
    return out


def _extend(g: CayleyTable, h: CayleyTable, gens, images) -> list[int] | None:
    phi = [-1] * g.order
    phi[g.identity] = h.identity
    queue = [g.identity]
    while queue:
        x = queue.pop()
        for s, hs in zip(gens, images):
            y = g.table[x][s]
            img = h.table[phi[x]][hs]
            if phi[y] == -1:
                phi[y] = img
                queue.append(y)
            elif phi[y] != img:
                return None
    return phi


def is_homomorphism(g: CayleyTable, h: CayleyTable, phi: Sequence[int]) -> bool:
    n = g.order
    return all(
        phi[g.table[a][b]] == h.table[phi[a]][phi[b]] for a in range(n) for b in range(n)
    )


def is_isomorphic(g: CayleyTable, h: CayleyTable) -> GroupIsomorphism:
    """Pruned search: generators of ``g`` are sent to elements of equal order in ``h``."""
    if g.order != h.order:
        raise OrderMismatch(f"orders differ: {g.order} vs {h.order}")
    n = g.order
    gord = sorted(g.element_order(a) for a in range(n))
    hord = sorted(h.element_order(a) for a in range(n))
    if gord != hord:
        return GroupIsomorphism(None)
    gens = generators(g)
    choices = [[b for b in range(n) if h.element_order(b) == g.element_order(s)] for s in gens]
    for images in itertools.product(*choices):
        phi = _extend(g, h, gens, images)
        if phi is None or -1 in phi or len(set(phi)) != n:
            continue
        if is_homomorphism(g, h, phi):
            return GroupIsomorphism(tuple(phi))
    return GroupIsomorphism(None)


# subgroups and the degeneracy predicate


def is_subgroup(g: CayleyTable, subset: Iterable[int]) -> bool:
    s = set(subset)
    if not s:
        return False
    return all(g.table[a][b] in s for a in s for b in s)


def subgroups(g: CayleyTable) -> list[frozenset[int]]:
    """All subgroups (0-based element sets), by brute force over subsets containing e."""
    n = g.order
    others = [a for a in range(n) if a != g.identity]
    out = []
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            s = frozenset((g.identity,) + combo)
            if is_subgroup(g, s):
                out.append(s)
    return out


def uniform_on(n: int, subset: Iterable[int]) -> Measure:
    s = set(subset)
    w = Fraction(1, len(s))
    return Measure(tuple(w if a in s else Fraction(0) for a in range(n)))


def is_uniform_on_subgroup(g: CayleyTable, m: Measure) -> bool:
    """True iff ``m`` is constant on its support and the support is a subgroup."""
    if len(m) != g.order:
        raise LengthMismatch(f"measure length {len(m)} != group order {g.order}")
    supp = m.support
    if len({m[a] for a in supp}) != 1:
        return False
    return is_subgroup(g, supp)
