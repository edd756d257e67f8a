"""p-sylowizers, S-permutability and complete sets of Sylow subgroups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .charsub import is_p_power, p_part, prime_factors, sylow_subgroups
from .lattice import Subgroup, product_bits, subgroups_within, whole
from .perm import Group

DEFAULT_MAX_COMPLETE_SETS = 10_000


class NotAPSubgroup(ValueError):
    pass


class TooManyCompleteSets(ValueError):
    pass


def p_sylowizers(G: Group, R: Subgroup, p: int, within: Subgroup | None = None) -> list[Subgroup]:
    """Subgroups maximal among those containing ``R`` as a Sylow p-subgroup.

    With ``within`` the search is restricted to subgroups of that subgroup.
    Returned in lattice order.
    """
    if not is_p_power(R.order, p):
        raise NotAPSubgroup("R is not a p-subgroup")
    K = whole(G) if within is None else within
    key = ("sylowizers", R.bits, p, K.bits)
    if key in G.cache:
        return G.cache[key]
    if not R <= K:
        raise ValueError("R is not contained in the ambient subgroup")
    cands = [S for S in subgroups_within(G, K)
             if S.bits & R.bits == R.bits and p_part(S.order, p) == R.order]
    out = [S for S in cands
           if not any(S < T for T in cands if T.order > S.order)]
    G.cache[key] = out
    return out


def permutes(G: Group, H: Subgroup, K: Subgroup) -> bool:
    """True when ``HK = KH`` as sets of elements."""
    if H <= K or K <= H:
        return True
    a, b = (H.bits, K.bits) if H.bits < K.bits else (K.bits, H.bits)
    key = ("permutes", a, b)
    cached = G.cache.get(key)
    if cached is None:
        cached = product_bits(G, H, K) == product_bits(G, K, H)
        G.cache[key] = cached
    return cached


def product_is_subgroup(G: Group, H: Subgroup, K: Subgroup) -> bool:
    """True when the product set ``HK`` is closed under multiplication."""
    tab = G.table
    prod = np.unique(tab[H.idx[:, None], K.idx[None, :]])
    mask = np.zeros(G.order, dtype=bool)
    mask[prod] = True
    return bool(mask[tab[prod[:, None], prod[None, :]]].all())


def is_s_permutable(G: Group, H: Subgroup, within: Subgroup | None = None) -> bool:
    """True when ``H`` permutes with every Sylow subgroup (all conjugates, all primes)."""
    K = whole(G) if within is None else within
    for p in prime_factors(K.order):
        for P in sylow_subgroups(G, p, within=K):
            if not permutes(G, H, P):
                return False
    return True


@dataclass(frozen=True, eq=False)
class CompleteSylowSet:
    """One Sylow p-subgroup per prime divisor of ``|parent|``.

    ``label`` records the position of each member in its Sylow list, e.g.
    ``"2:0,3:1"``, so a set can be named in reports and rebuilt.
    """

    parent: Group
    members: dict[int, Subgroup]
    label: str

    def __getitem__(self, p: int) -> Subgroup:
        return self.members[p]

    def __iter__(self):
        return iter(self.members.values())


def _make_set(G: Group, choice: dict[int, int], within: Subgroup | None = None) -> CompleteSylowSet:
    members = {p: sylow_subgroups(G, p, within=within)[i] for p, i in choice.items()}
    label = ",".join(f"{p}:{i}" for p, i in sorted(choice.items()))
    return CompleteSylowSet(G, members, label)


def canonical_complete_set(G: Group) -> CompleteSylowSet:
    return _make_set(G, {p: 0 for p in prime_factors(G.order)})


def complete_set_from_label(G: Group, label: str) -> CompleteSylowSet:
    choice = {}
    for part in filter(None, label.split(",")):
        p, i = part.split(":")
        choice[int(p)] = int(i)
    if sorted(choice) != prime_factors(G.order):
        raise ValueError(f"complete set {label!r} does not cover the primes of |G|")
    return _make_set(G, choice)


def all_complete_sets(G: Group, max_sets: int = DEFAULT_MAX_COMPLETE_SETS) -> list[CompleteSylowSet]:
    primes = prime_factors(G.order)
    counts = [len(sylow_subgroups(G, p)) for p in primes]
    total = 1
    for c in counts:
        total *= c
    if total > max_sets:
        raise TooManyCompleteSets(f"{total} complete sets exceed cap {max_sets}")
    return [_make_set(G, dict(zip(primes, pick)))
            for pick in itertools.product(*(range(c) for c in counts))]


def is_z_permutable(G: Group, H: Subgroup, Z: CompleteSylowSet) -> bool:
    return all(permutes(G, H, P) for P in Z)


def product_subgroup(G: Group, H: Subgroup, K: Subgroup) -> Subgroup:
    """``HK`` as a subgroup; caller guarantees the product set is closed."""
    return Subgroup(G, product_bits(G, H, K))


def restrict_complete_set(G: Group, Z: CompleteSylowSet, N: Subgroup) -> dict[int, Subgroup]:
    """``{P & N}`` for the members of ``Z``, keyed by prime, dropping trivial ones."""
    out = {}
    for p, P in Z.members.items():
        I = P & N
        if I.order > 1:
            out[p] = I
    return out
