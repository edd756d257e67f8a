"""Subgroups as bitsets over a parent group, and the subgroup lattice.

Bit ``i`` of ``Subgroup.bits`` is set when ``parent.elements[i]`` is a
member.  All structural operators work on element indices through the
parent's Cayley table.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .perm import Group, Permutation, element_order

DEFAULT_MAX_LATTICE = 2000


class LatticeTooLarge(ValueError):
    pass


def bits_of(indices: Iterable[int], n: int) -> int:
    mask = np.zeros(n, dtype=bool)
    mask[np.fromiter(indices, dtype=np.int64)] = True
    return _mask_to_bits(mask)


def _mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def indices_of(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:n])


class Subgroup:
    """A subgroup of ``parent`` stored as a membership bitset.

    Equality and hashing use the parent's identity and the bitset, so two
    subgroups are equal exactly when they have the same members.
    """

    __slots__ = ("parent", "bits", "order", "_gens", "_idx", "_key")

    def __init__(self, parent: Group, bits: int, gens: tuple[int, ...] | None = None):
        self.parent = parent
        self.bits = bits
        self.order = bits.bit_count()
        self._gens = gens
        self._idx = None
        self._key = None

    @property
    def idx(self) -> np.ndarray:
        if self._idx is None:
            idx = indices_of(self.bits, self.parent.order)
            idx.setflags(write=False)
            self._idx = idx
        return self._idx

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.idx] = True
        return m

    @property
    def gens(self) -> tuple[int, ...]:
        """A small generating set (element indices), computed on demand."""
        if self._gens is None:
            self._gens = _greedy_gens(self)
        return self._gens

    @property
    def sort_key(self):
        if self._key is None:
            self._key = (self.order, tuple(int(i) for i in self.idx))
        return self._key

    def elements(self) -> list[Permutation]:
        return [self.parent.elements[i] for i in self.idx]

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __le__(self, other: Subgroup) -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.bits != other.bits

    def __and__(self, other: Subgroup) -> Subgroup:
        # intersection of subgroups is a subgroup
        return Subgroup(self.parent, self.bits & other.bits)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.parent), self.bits))

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent.order}>"

    def describe(self) -> str:
        if self.order <= 8:
            return "<" + ", ".join(str(g) for g in self.elements()) + ">"
        return "<" + ", ".join(str(self.parent.elements[i]) for i in self.gens) + f"> order {self.order}"


def whole(G: Group) -> Subgroup:
    if "whole" not in G.cache:
        G.cache["whole"] = Subgroup(G, (1 << G.order) - 1)
    return G.cache["whole"]


def trivial(G: Group) -> Subgroup:
    return Subgroup(G, 1, ())


def _extend(G: Group, H: Subgroup, new: Iterable[int]) -> Subgroup:
    """Closure of ``H`` together with the elements ``new`` (coset enumeration)."""
    tab = G.table
    mask = H.mask
    new = [int(x) for x in new if not mask[x]]
    if not new:
        return H
    gens = list(H.gens) + new
    base = H.idx
    reps = [0]
    i = 0
    while i < len(reps):
        r = reps[i]
        for s in gens:
            e = tab[r, s]
            if not mask[e]:
                mask[tab[base, e]] = True
                reps.append(e)
        i += 1
    return Subgroup(G, _mask_to_bits(mask), tuple(gens))


def subgroup_generated(G: Group, elements: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the given element indices."""
    H = trivial(G)
    for x in elements:
        x = int(x)
        if not H.bits >> x & 1:
            H = _extend(G, H, [x])
    return H


def subgroup_from_perms(G: Group, perms: Iterable[Permutation]) -> Subgroup:
    return subgroup_generated(G, [G.index[p] for p in perms])


def _greedy_gens(H: Subgroup) -> tuple[int, ...]:
    G = H.parent
    K = Subgroup(G, 1, ())
    for x in H.idx:
        if not K.bits >> int(x) & 1:
            K = _extend(G, K, [int(x)])
    return K.gens


def cyclic_subgroup(G: Group, x: int) -> Subgroup:
    tab = G.table
    seen = [0]
    y = x
    while y != 0:
        seen.append(int(y))
        y = tab[y, x]
    return Subgroup(G, bits_of(seen, G.order), (x,) if x else ())


def all_subgroups(G: Group, max_lattice: int = DEFAULT_MAX_LATTICE) -> list[Subgroup]:
    """Every subgroup of ``G`` exactly once, sorted by (order, member indices).

    Every subgroup is generated by its elements of prime-power order, so
    starting from the prime-power cyclic subgroups and joining with them
    until nothing new appears reaches the whole lattice.
    """
    if "lattice" in G.cache:
        return G.cache["lattice"]
    if G.order > max_lattice:
        raise LatticeTooLarge("lattice too large")
    cyclic_by_bits: dict[int, Subgroup] = {}
    for x in range(1, G.order):
        o = element_order(G.elements[x])
        if _is_prime_power(o):
            C = cyclic_subgroup(G, x)
            cyclic_by_bits.setdefault(C.bits, C)
    cyclics = sorted(cyclic_by_bits.values(), key=lambda s: s.sort_key)
    found: dict[int, Subgroup] = {1: trivial(G)}
    for C in cyclics:
        found.setdefault(C.bits, C)
    queue = list(cyclics)
    while queue:
        nxt = []
        for H in queue:
            for C in cyclics:
                if C.bits & ~H.bits == 0:
                    continue
                J = _extend(G, H, C.gens)
                if J.bits not in found:
                    found[J.bits] = J
                    nxt.append(J)
        queue = nxt
    result = sorted(found.values(), key=lambda s: s.sort_key)
    G.cache["lattice"] = result
    return result


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    while n % p == 0:
        n //= p
    return n == 1


def subgroups_within(G: Group, K: Subgroup) -> list[Subgroup]:
    """Subgroups of ``K``, in lattice order."""
    if K.bits == whole(G).bits:
        return all_subgroups(G)
    key = ("within", K.bits)
    if key not in G.cache:
        notk = ~K.bits
        G.cache[key] = [H for H in all_subgroups(G) if H.bits & notk == 0]
    return G.cache[key]


def conjugate_bits(G: Group, H: Subgroup, x: int) -> int:
    """Bitset of ``x^-1 H x``."""
    tab = G.table
    conj = tab[tab[G.inv[x], H.idx], x]
    return bits_of(conj, G.order)


def _normalizes(G: Group, x: int, H: Subgroup, hmask: np.ndarray) -> bool:
    tab = G.table
    return bool(hmask[tab[tab[G.inv[x], H.idx], x]].all())


def is_normal_in(G: Group, H: Subgroup, K: Subgroup) -> bool:
    """True when ``H <= K`` and ``K`` normalizes ``H``."""
    if not H <= K:
        return False
    hmask = H.mask
    return all(_normalizes(G, k, H, hmask) for k in K.gens)


def is_normal(G: Group, H: Subgroup) -> bool:
    return is_normal_in(G, H, whole(G))


def normal_subgroups_of(G: Group, K: Subgroup) -> list[Subgroup]:
    key = ("normal_of", K.bits)
    if key not in G.cache:
        G.cache[key] = [H for H in subgroups_within(G, K) if is_normal_in(G, H, K)]
    return G.cache[key]


def normal_subgroups(G: Group) -> list[Subgroup]:
    return normal_subgroups_of(G, whole(G))


def normalizer(G: Group, H: Subgroup, within: Subgroup | None = None) -> Subgroup:
    tab = G.table
    xs = np.arange(G.order) if within is None else within.idx
    conj = tab[tab[G.inv[xs][:, None], H.idx[None, :]], xs[:, None]]
    ok = H.mask[conj].all(axis=1)
    return Subgroup(G, bits_of(xs[ok], G.order))


def normal_closure(G: Group, H: Subgroup, K: Subgroup) -> Subgroup:
    """Smallest normal subgroup of ``K`` containing ``H`` (``H <= K``)."""
    tab = G.table
    gens = np.asarray(H.gens, dtype=np.int64)
    if gens.size == 0:
        return trivial(G)
    ks = K.idx
    conj = tab[tab[G.inv[ks][:, None], gens[None, :]], ks[:, None]]
    return subgroup_generated(G, np.unique(conj))


def is_subnormal(G: Group, H: Subgroup) -> bool:
    K = whole(G)
    while True:
        if K == H:
            return True
        nxt = normal_closure(G, H, K)
        if nxt == K:
            return False
        K = nxt


def derived_subgroup(G: Group, H: Subgroup) -> Subgroup:
    tab, inv = G.table, G.inv
    h = H.idx
    # [x, y] = x^-1 y^-1 x y
    left = tab[inv[h][:, None], inv[h][None, :]]
    comm = tab[tab[left, h[:, None]], h[None, :]]
    return subgroup_generated(G, np.unique(comm))


def maximal_subgroups(G: Group, H: Subgroup) -> list[Subgroup]:
    proper = [K for K in subgroups_within(G, H) if K.bits != H.bits]
    return [K for K in proper
            if not any(K < L for L in proper if L.order > K.order)]


def frattini_subgroup(G: Group, H: Subgroup) -> Subgroup:
    if H.order == 1:
        return H
    bits = H.bits
    for M in maximal_subgroups(G, H):
        bits &= M.bits
    return Subgroup(G, bits)


def minimal_normal_subgroups(G: Group) -> list[Subgroup]:
    nontrivial = [N for N in normal_subgroups(G) if N.order > 1]
    return [N for N in nontrivial
            if not any(M < N for M in nontrivial if M.order < N.order)]


def product_bits(G: Group, H: Subgroup, K: Subgroup) -> int:
    """Bitset of the product set ``H K``."""
    prod = G.table[H.idx[:, None], K.idx[None, :]]
    return bits_of(prod.ravel(), G.order)


def join(G: Group, H: Subgroup, K: Subgroup) -> Subgroup:
    return _extend(G, H, K.gens)
