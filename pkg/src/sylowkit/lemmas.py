"""Exhaustive property suites for the supporting lemmas L21-L27.

Each lemma is split into an instance generator, which walks the lattice and
yields every instantiation of the lemma's quantifiers whose premises hold,
and a check returning None or the reason the conclusion fails.  Instances
are dicts of named subgroups (plus a complete-set label or a clause tag), so
a counterexample can be serialized as index lists and replayed with
:func:`recheck_lemma`.

All S-permutability tests go through ``syl.is_s_permutable`` so a test can
swap the predicate out.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

from . import sylowizer as syl
from .charsub import is_p_power, o_upper_p, p_part, prime_factors
from .lattice import (
    Subgroup, all_subgroups, bits_of, is_subnormal, join, normal_subgroups,
    normalizer, product_bits, subgroups_within,
)
from .perm import Group
from .quotient import preimage_subgroup, project_subgroup, quotient


class Lemma(str, Enum):
    L21 = "L21"
    L22 = "L22"
    L23 = "L23"
    L24 = "L24"
    L25 = "L25"
    L26 = "L26"
    L27 = "L27"


# lemmas whose statement has no prime parameter
PRIME_FREE = {Lemma.L23, Lemma.L24}


@dataclass
class PropertyReport:
    lemma: Lemma
    group_name: str
    p: int | None
    passed: bool
    checked: int
    counterexample: dict | None = None
    reason: str | None = None
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma.value,
            "group": self.group_name,
            "p": self.p,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "reason": self.reason,
        }


def instance_to_json(inst: dict) -> dict:
    return {k: ([int(i) for i in v.idx] if isinstance(v, Subgroup) else v)
            for k, v in inst.items()}


def instance_from_json(G: Group, data: dict) -> dict:
    return {k: (Subgroup(G, bits_of(v, G.order)) if isinstance(v, list) else v)
            for k, v in data.items()}


def p_subgroups(G: Group, p: int, within: Subgroup | None = None) -> list[Subgroup]:
    subs = all_subgroups(G) if within is None else subgroups_within(G, within)
    return [H for H in subs if is_p_power(H.order, p)]


def _complete_sets(G: Group, max_sets: int):
    return syl.all_complete_sets(G, max_sets)


def _z(G: Group, label: str) -> syl.CompleteSylowSet:
    return syl.complete_set_from_label(G, label)


# L21: an S-permutable sylowizer S of R contains O^p, equals R O^p and is unique

def _inst_l21(G, p, **_):
    for R in p_subgroups(G, p):
        for S in syl.p_sylowizers(G, R, p):
            if syl.is_s_permutable(G, S):
                yield {"R": R, "S": S}


def _check_l21(G, p, inst):
    R, S = inst["R"], inst["S"]
    op = o_upper_p(G, p)
    if not op <= S:
        return "O^p(G) not contained in the S-permutable sylowizer"
    if product_bits(G, R, op) != S.bits:
        return "sylowizer differs from R O^p(G)"
    if len(syl.p_sylowizers(G, R, p)) != 1:
        return "S-permutable sylowizer is not unique"
    return None


# L22: with R Sylow in RN, sylowizers of R correspond to those of RN/N

def _inst_l22(G, p, **_):
    for N in normal_subgroups(G):
        for R in p_subgroups(G, p):
            if p_part(join(G, R, N).order, p) == R.order:
                yield {"N": N, "R": R}


def _check_l22(G, p, inst):
    N, R = inst["N"], inst["R"]
    q = quotient(G, N)
    up = {preimage_subgroup(q, T).bits
          for T in syl.p_sylowizers(q.image, project_subgroup(q, R), p)}
    here = {S.bits for S in syl.p_sylowizers(G, R, p)}
    if up != here:
        return "sylowizers of R differ from preimages of sylowizers of RN/N"
    return None


# L23: intersections, products, images and subnormality of S-permutable H

def _inst_l23(G, p=None, **_):
    subs = all_subgroups(G)
    normals = normal_subgroups(G)
    for H in subs:
        if not syl.is_s_permutable(G, H):
            continue
        for K in subs:
            yield {"part": "1", "H": H, "K": K}
        for N in normals:
            yield {"part": "2", "H": H, "N": N}
        yield {"part": "3", "H": H}


def _check_l23(G, p, inst):
    H, part = inst["H"], inst["part"]
    if part == "1":
        K = inst["K"]
        if not syl.is_s_permutable(G, H & K, within=K):
            return "H & K not S-permutable in K"
    elif part == "2":
        N = inst["N"]
        if not syl.is_s_permutable(G, join(G, H, N)):
            return "HN not S-permutable"
        if not syl.is_s_permutable(G, H & N):
            return "H & N not S-permutable"
        q = quotient(G, N)
        if not syl.is_s_permutable(q.image, project_subgroup(q, H)):
            return "HN/N not S-permutable in G/N"
    elif not is_subnormal(G, H):
        return "S-permutable subgroup not subnormal"
    return None


# L24: Z & N and ZN/N are complete sets; Z-permutability passes to N and G/N

def _inst_l24(G, p=None, max_sets=syl.DEFAULT_MAX_COMPLETE_SETS, **_):
    subs = all_subgroups(G)
    for Z in _complete_sets(G, max_sets):
        for N in normal_subgroups(G):
            yield {"part": "1", "Z": Z.label, "N": N}
            for U in subs:
                if syl.is_z_permutable(G, U, Z):
                    yield {"part": "2", "Z": Z.label, "N": N, "U": U}


def _check_l24(G, p, inst):
    Z, N = _z(G, inst["Z"]), inst["N"]
    q = quotient(G, N)
    if inst["part"] == "1":
        for r in prime_factors(N.order):
            if (Z[r] & N).order != p_part(N.order, r):
                return f"Z & N has no Sylow {r}-subgroup of N"
        for r in prime_factors(q.image.order):
            if project_subgroup(q, Z[r]).order != p_part(q.image.order, r):
                return f"ZN/N has no Sylow {r}-subgroup of G/N"
        return None
    U = inst["U"]
    img = project_subgroup(q, U)
    for P in Z:
        if not syl.permutes(q.image, img, project_subgroup(q, P)):
            return "UN/N not ZN/N-permutable"
    if U <= N:
        for P in Z:
            if not syl.permutes(G, U, P & N):
                return "U not (Z & N)-permutable"
    return None


# L25: Z-permutable sylowizers of H survive passing to G/N

def _inst_l25(G, p, max_sets=syl.DEFAULT_MAX_COMPLETE_SETS, **_):
    zs = _complete_sets(G, max_sets)
    normals = normal_subgroups(G)
    for H in p_subgroups(G, p):
        sylz = syl.p_sylowizers(G, H, p)
        for Z in zs:
            if not all(syl.is_z_permutable(G, S, Z) for S in sylz):
                continue
            for N in normals:
                # N must be a p'-group or lie inside H
                if N.order % p or N <= H:
                    yield {"H": H, "Z": Z.label, "N": N}


def _check_l25(G, p, inst):
    H, Z, N = inst["H"], _z(G, inst["Z"]), inst["N"]
    q = quotient(G, N)
    zimg = [project_subgroup(q, P) for P in Z]
    for T in syl.p_sylowizers(q.image, project_subgroup(q, H), p):
        if not all(syl.permutes(q.image, T, P) for P in zimg):
            return "sylowizer of HN/N not ZN/N-permutable"
    return None


# L26: a sylowizer T of H in K is S & K for a sylowizer S of H in G

def _inst_l26(G, p, **_):
    for K in all_subgroups(G):
        for H in p_subgroups(G, p, within=K):
            for T in syl.p_sylowizers(G, H, p, within=K):
                yield {"K": K, "H": H, "T": T}


def _check_l26(G, p, inst):
    K, H, T = inst["K"], inst["H"], inst["T"]
    if not any((S & K) == T for S in syl.p_sylowizers(G, H, p)):
        return "no sylowizer S of H in G with S & K = T"
    return None


# L27: O^p(G) normalizes every S-permutable p-subgroup

def _inst_l27(G, p, **_):
    for H in p_subgroups(G, p):
        if syl.is_s_permutable(G, H):
            yield {"H": H}


def _check_l27(G, p, inst):
    if not o_upper_p(G, p) <= normalizer(G, inst["H"]):
        return "O^p(G) does not normalize the S-permutable p-subgroup"
    return None


_SUITES = {
    Lemma.L21: (_inst_l21, _check_l21),
    Lemma.L22: (_inst_l22, _check_l22),
    Lemma.L23: (_inst_l23, _check_l23),
    Lemma.L24: (_inst_l24, _check_l24),
    Lemma.L25: (_inst_l25, _check_l25),
    Lemma.L26: (_inst_l26, _check_l26),
    Lemma.L27: (_inst_l27, _check_l27),
}


def verify_lemma(lemma_id, G: Group, p: int | None = None, group_name: str = "",
                 max_sets: int = syl.DEFAULT_MAX_COMPLETE_SETS) -> PropertyReport:
    """Check every instance of a lemma on ``G``; stops at the first failure."""
    lemma = Lemma(lemma_id)
    if lemma in PRIME_FREE:
        p = None
    elif p is None or G.order % p:
        raise ValueError(f"p={p} does not divide |G|={G.order}")
    t0 = time.perf_counter()
    gen, check = _SUITES[lemma]
    n = 0
    for inst in gen(G, p, max_sets=max_sets):
        n += 1
        why = check(G, p, inst)
        if why:
            return PropertyReport(lemma, group_name, p, False, n, instance_to_json(inst),
                                  why, time.perf_counter() - t0)
    return PropertyReport(lemma, group_name, p, True, n, elapsed=time.perf_counter() - t0)


def recheck_lemma(lemma_id, G: Group, p: int | None, counterexample: dict) -> str | None:
    """Replay one serialized instance; returns the failure reason or None."""
    lemma = Lemma(lemma_id)
    _, check = _SUITES[lemma]
    return check(G, p, instance_from_json(G, counterexample))


def lemma_runs(G: Group, lemmas=tuple(Lemma)) -> list[tuple[Lemma, int | None]]:
    """The (lemma, p) pairs to run on ``G``: prime-free lemmas once, others per prime."""
    out = []
    for lem in map(Lemma, lemmas):
        if lem in PRIME_FREE:
            out.append((lem, None))
        else:
            out += [(lem, p) for p in prime_factors(G.order)]
    return out
