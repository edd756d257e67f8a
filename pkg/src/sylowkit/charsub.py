"""Sylow subgroups, p'-cores, p-residuals and (p-)nilpotency.

Every operator takes an optional ``within`` subgroup; when given, the
computation is carried out in that subgroup regarded as a group in its own
right (its subgroups are read off the parent's lattice).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import (
    Subgroup, conjugate_bits, is_normal_in, normal_subgroups_of,
    subgroup_generated, subgroups_within, trivial, whole,
)
from .perm import Group, element_order


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes, or its complement when ``complement`` is set."""

    primes: frozenset[int]
    complement: bool = False

    def __post_init__(self):
        bad = [q for q in self.primes if not is_prime(q)]
        if bad:
            raise ValueError(f"not prime: {bad}")

    @classmethod
    def of(cls, *primes: int) -> PrimeSet:
        return cls(frozenset(primes))

    @classmethod
    def prime_prime(cls, p: int) -> PrimeSet:
        """The set p' of all primes other than ``p``."""
        return cls(frozenset([p]), complement=True)

    def __contains__(self, q: int) -> bool:
        return (q in self.primes) != self.complement

    def covers(self, n: int) -> bool:
        """True when every prime divisor of ``n`` lies in the set."""
        return all(q in self for q in prime_factors(n))

    def __str__(self):
        body = "{" + ",".join(map(str, sorted(self.primes))) + "}"
        return body + "'" if self.complement else body


def element_orders(G: Group) -> np.ndarray:
    if "orders" not in G.cache:
        G.cache["orders"] = np.array([element_order(g) for g in G.elements], dtype=np.int64)
    return G.cache["orders"]


def _ambient(G: Group, within: Subgroup | None) -> Subgroup:
    return whole(G) if within is None else within


def sylow_subgroups(G: Group, p: int, within: Subgroup | None = None) -> list[Subgroup]:
    K = _ambient(G, within)
    key = ("sylow", p, K.bits)
    if key not in G.cache:
        target = p_part(K.order, p)
        if target == 1:
            found = [trivial(G)]
        else:
            found = [H for H in subgroups_within(G, K) if H.order == target]
            conj = {conjugate_bits(G, found[0], int(x)) for x in K.idx}
            assert conj == {H.bits for H in found}, "Sylow subgroups not all conjugate"
        G.cache[key] = found
    return G.cache[key]


def o_pi(G: Group, pi: PrimeSet, within: Subgroup | None = None) -> Subgroup:
    """Largest normal pi-subgroup (the join of all normal pi-subgroups)."""
    K = _ambient(G, within)
    candidates = [N for N in normal_subgroups_of(G, K) if pi.covers(N.order)]
    best = max(candidates, key=lambda N: N.order)
    assert all(N <= best for N in candidates), "normal pi-subgroups have no largest member"
    return best


def o_upper_p(G: Group, p: int, within: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by all elements of order prime to ``p``."""
    K = _ambient(G, within)
    key = ("o_upper", p, K.bits)
    if key not in G.cache:
        orders = element_orders(G)[K.idx]
        G.cache[key] = subgroup_generated(G, K.idx[orders % p != 0])
    return G.cache[key]


def is_p_nilpotent(G: Group, p: int, within: Subgroup | None = None) -> bool:
    K = _ambient(G, within)
    core = o_pi(G, PrimeSet.prime_prime(p), within=K)
    return core.order == K.order // p_part(K.order, p)


def is_nilpotent(G: Group, within: Subgroup | None = None) -> bool:
    K = _ambient(G, within)
    for p in prime_factors(K.order):
        syl = sylow_subgroups(G, p, within=K)
        if len(syl) != 1:
            return False
        assert is_normal_in(G, syl[0], K)
    return True


def group_primes(G: Group) -> list[int]:
    return prime_factors(G.order)


def smallest_prime(G: Group) -> int | None:
    ps = prime_factors(G.order)
    return ps[0] if ps else None


def is_abelian(G: Group, H: Subgroup | None = None) -> bool:
    H = _ambient(G, H)
    tab = G.table
    g = np.asarray(H.gens, dtype=np.int64)
    return bool((tab[g[:, None], g[None, :]] == tab[g[None, :], g[:, None]]).all())
