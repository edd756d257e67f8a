"""Quotient groups realized as permutation groups on cosets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import Subgroup, bits_of, is_normal
from .perm import Group, Permutation, generate_group


class NotNormal(ValueError):
    pass


@dataclass(eq=False)
class QuotientMap:
    """The natural map from ``source`` onto ``source / kernel``.

    ``image`` acts on the cosets, numbered by their smallest member index;
    ``forward[i]`` is the image index of ``source.elements[i]`` and
    ``coset_of[i]`` the coset number of that element.
    """

    source: Group
    kernel: Subgroup
    image: Group
    forward: np.ndarray
    coset_of: np.ndarray
    coset_reps: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.coset_reps)


def quotient(G: Group, N: Subgroup) -> QuotientMap:
    key = ("quotient", N.bits)
    if key in G.cache:
        return G.cache[key]
    if not is_normal(G, N):
        raise NotNormal("kernel not normal")
    tab = G.table
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset_of[x] < 0:
            coset_of[tab[x, N.idx]] = len(reps)
            reps.append(x)
    reps_arr = np.array(reps, dtype=np.int64)
    # column x: coset c -> coset of (rep_c * x)
    action = coset_of[tab[reps_arr[:, None], np.arange(G.order)[None, :]]]
    deg = len(reps)
    gens = [Permutation(action[:, G.index[g]]) for g in G.generators]
    # degree = index, which may exceed the user-facing degree cap
    image = generate_group(gens, deg, max_order=G.order, max_degree=max(deg, 1))
    lookup = image.index
    forward = np.array([lookup[Permutation(action[:, x])] for x in range(G.order)], dtype=np.int64)
    forward.setflags(write=False)
    q = QuotientMap(G, N, image, forward, coset_of, tuple(reps))
    G.cache[key] = q
    return q


def project_subgroup(q: QuotientMap, H: Subgroup) -> Subgroup:
    """The image ``HN/N`` of ``H`` in the quotient."""
    return Subgroup(q.image, bits_of(q.forward[H.idx], q.image.order))


def preimage_subgroup(q: QuotientMap, K: Subgroup) -> Subgroup:
    mask = K.mask[q.forward]
    return Subgroup(q.source, bits_of(np.flatnonzero(mask), q.source.order))
