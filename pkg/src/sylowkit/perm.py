"""Permutations and fully enumerated permutation groups.

Composition convention: ``compose(p, q)`` applies ``p`` first, then ``q``,
so ``compose(p, q).images[i] == q.images[p.images[i]]``.

A :class:`Group` stores every element in a canonical order (breadth-first
from the identity by word length in the generators, each layer sorted by
image array), together with a Cayley table once one is requested.
"""

from __future__ import annotations

import math
import re
from collections import deque
from collections.abc import Iterable, Sequence

import numpy as np

DEFAULT_MAX_DEGREE = 32
DEFAULT_MAX_ORDER = 100_000


class GroupTooLarge(ValueError):
    pass


class Permutation:
    """An immutable bijection of ``{0, ..., degree-1}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {list(images)}")
        if not images:
            raise ValueError("degree must be positive")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < degree:
                    raise ValueError(f"bad cycle {tuple(cyc)} on {degree} points")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, degree: int, text: str) -> Permutation:
        """Parse cycle notation such as ``"(0 1)(2 3 4)"``; ``"()"`` is the identity."""
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if pts:
                cycles.append(pts)
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    if p.degree != q.degree:
        raise ValueError("incompatible degrees")
    qi = q.images
    return Permutation(qi[i] for i in p.images)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(inv)


def element_order(p: Permutation) -> int:
    return math.lcm(1, *(len(c) for c in p.cycles()))


class Group:
    """A finite permutation group with every element enumerated.

    ``elements[0]`` is the identity.  Derived data (Cayley table, subgroup
    lattice, Sylow subgroups, ...) is memoized in ``cache`` by the modules
    that compute it; the element list itself never changes.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: list[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.order = len(self.elements)
        self.cache: dict = {}
        self._array = None
        self._table = None
        self._inv = None

    def __repr__(self):
        return f"<Group degree={self.degree} order={self.order}>"

    def __len__(self):
        return self.order

    def __contains__(self, p: Permutation) -> bool:
        return is_member(self, p)

    @property
    def array(self) -> np.ndarray:
        """Image arrays of all elements, shape ``(order, degree)``."""
        if self._array is None:
            arr = np.array([g.images for g in self.elements], dtype=np.int32)
            arr.setflags(write=False)
            self._array = arr
        return self._array

    @property
    def table(self) -> np.ndarray:
        """Cayley table: ``table[i, j]`` is the index of ``compose(elements[i], elements[j])``."""
        if self._table is None:
            self._table = _cayley_table(self)
        return self._table

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            tab = self.table
            inv = np.empty(self.order, dtype=np.int32)
            rows, cols = np.nonzero(tab == 0)
            inv[rows] = cols
            inv.setflags(write=False)
            self._inv = inv
        return self._inv

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])


def _row_keys(arr: np.ndarray) -> np.ndarray:
    # one sortable opaque key per image array (degree <= 255)
    rows = np.ascontiguousarray(arr.astype(np.uint8))
    return rows.view(np.dtype((np.void, rows.shape[1]))).ravel()


def _cayley_table(G: Group) -> np.ndarray:
    arr = G.array
    n = arr.shape[0]
    keys = _row_keys(arr)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    tab = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        # row j of prod is compose(e_i, e_j): k -> e_j[e_i[k]]
        prod = arr[:, arr[i]]
        tab[i] = order[np.searchsorted(sorted_keys, _row_keys(prod))]
    tab.setflags(write=False)
    return tab


def generate_group(generators: Sequence[Permutation], degree: int,
                   max_order: int = DEFAULT_MAX_ORDER,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> Group:
    """Enumerate the group generated by ``generators`` in canonical order."""
    if degree < 1:
        raise ValueError("degree must be positive")
    if degree > max_degree:
        raise GroupTooLarge(f"degree {degree} exceeds cap {max_degree}")
    gens = []
    for g in generators:
        if g.degree != degree:
            raise ValueError("incompatible degrees")
        gens.append(g)
    ident = Permutation.identity(degree)
    gen_imgs = [g.images for g in gens]
    seen = {ident.images}
    order = [ident.images]
    layer = [ident.images]
    while layer:
        fresh = set()
        for x in layer:
            for g in gen_imgs:
                y = tuple(g[i] for i in x)
                if y not in seen and y not in fresh:
                    fresh.add(y)
        seen |= fresh
        layer = sorted(fresh)
        order.extend(layer)
        if len(order) > max_order:
            raise GroupTooLarge("group too large for exhaustive mode")
    return Group(degree, gens, [Permutation(x) for x in order])


def is_member(G: Group, p: Permutation) -> bool:
    if p.degree != G.degree:
        raise ValueError("incompatible degrees")
    return p in G.index


def stabilizer_chain_order(generators: Sequence[Permutation], degree: int) -> int:
    """Group order as the product of basic orbit lengths of a stabilizer chain.

    Deterministic Schreier-Sims, independent of :func:`generate_group`; kept
    as a cross-check oracle only.
    """
    ident = tuple(range(degree))

    def mult(a, b):  # a first, then b
        return tuple(b[i] for i in a)

    def inv(a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    base: list[int] = []
    gens: list[list[tuple]] = []

    def transversal(level):
        pool = [s for lv in gens[level:] for s in lv]
        b = base[level]
        tr = {b: ident}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            for s in pool:
                y = s[x]
                if y not in tr:
                    tr[y] = mult(tr[x], s)
                    queue.append(y)
        return tr, pool

    def sift(g, start, trans):
        for level in range(start, len(base)):
            y = g[base[level]]
            if y not in trans[level]:
                return g, level
            g = mult(g, inv(trans[level][y]))
        return g, len(base)

    def insert(g, level):
        if level == len(base):
            base.append(next(i for i in range(degree) if g[i] != i))
            gens.append([])
        gens[level].append(g)

    pending = [g.images for g in generators if g.images != ident]
    if not pending:
        return 1
    insert(pending[0], 0)
    gens[0] = pending

    while True:
        trans = [transversal(i)[0] for i in range(len(base))]
        changed = False
        for level in reversed(range(len(base))):
            tr, pool = transversal(level)
            for x, u in tr.items():
                for s in pool:
                    w = mult(mult(u, s), inv(tr[s[x]]))
                    h, lv = sift(w, level + 1, trans)
                    if h != ident:
                        insert(h, lv)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
        if not changed:
            return math.prod(len(t) for t in trans)
