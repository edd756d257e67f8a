"""Decision procedures for the sylowizer-based p-nilpotency criteria.

Each ``hypothesis_*`` function decides whether a group satisfies one
criterion's hypothesis and returns ``(holds, witnesses)``; witnesses record
every failing (subgroup, sylowizer) pair so a report can be replayed.
:func:`check_equivalence` pairs a hypothesis with the ground truth
(:func:`~sylowkit.charsub.is_p_nilpotent`, or nilpotency for ``C39``).

Criterion ids:

====== =============================================================
T31    normal subgroups of a Sylow of fixed order d, S & O^p S-permutable
C32    as T31 with S & O^p normal in O^p
C33    as T31 over a normal subgroup N with p-nilpotent quotient
T34    odd p; Sylow normalizer p-nilpotent plus the T31 condition
C35    as T34 with S & O^p normal in O^p
T36    Sylow normalizer p-nilpotent; some P between derived and
       Frattini subgroup of the Sylow has a good sylowizer
T37    index-p chain in the Sylow whose sylowizers are Z-permutable
C38    as T37 with S-permutability
C39    C38 for every prime, compared against nilpotency
C310   C38 chain inside a Sylow of a normal N with p-nilpotent quotient
====== =============================================================
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from enum import Enum

from . import sylowizer as syl
from .charsub import (
    is_abelian, is_nilpotent, is_p_nilpotent, o_upper_p, p_part, prime_factors,
    sylow_subgroups,
)
from .lattice import (
    Subgroup, derived_subgroup, frattini_subgroup, is_normal, is_normal_in,
    normal_subgroups_of, normalizer, subgroups_within, whole,
)
from .perm import Group
from .quotient import quotient


class Theorem(str, Enum):
    T31 = "T31"
    C32 = "C32"
    C33 = "C33"
    T34 = "T34"
    C35 = "C35"
    T36 = "T36"
    T37 = "T37"
    C38 = "C38"
    C39 = "C39"
    C310 = "C310"


class Mode(str, Enum):
    S_PERMUTABLE = "s_permutable"
    NORMAL_IN_OP = "normal_in_op"


# criteria whose sylowizer condition is selectable; the others fix it
MODE_THEOREMS = {Theorem.T31, Theorem.C33, Theorem.T34, Theorem.T36}
FIXED_MODE = {Theorem.C32: Mode.NORMAL_IN_OP, Theorem.C35: Mode.NORMAL_IN_OP}
CHAIN_THEOREMS = {Theorem.T37, Theorem.C38, Theorem.C39, Theorem.C310}


class CriterionError(ValueError):
    """Parameters violate a criterion's preconditions."""


@dataclass(frozen=True)
class Witness:
    subgroup: Subgroup
    sylowizer: Subgroup | None
    reason: str
    p: int | None = None  # set by the chain criteria, where C39 mixes primes

    def to_json(self) -> dict:
        out = {
            "subgroup": [int(i) for i in self.subgroup.idx],
            "sylowizer": None if self.sylowizer is None else [int(i) for i in self.sylowizer.idx],
            "reason": self.reason,
        }
        if self.p is not None:
            out["p"] = self.p
        return out

    def summary(self) -> str:
        s = f"{self.reason}: H order {self.subgroup.order}"
        if self.sylowizer is not None:
            s += f", S order {self.sylowizer.order}"
        return s


@dataclass(frozen=True)
class CriterionParams:
    theorem_id: Theorem
    p: int | None
    d: int | None = None
    mode: Mode = Mode.S_PERMUTABLE
    complete_set: str | None = None
    normal_N: Subgroup | None = None
    chain_start: int = 1

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem_id.value,
            "p": self.p,
            "d": self.d,
            "mode": self.mode.value,
            "complete_set": self.complete_set,
            "normal_N": None if self.normal_N is None else [int(i) for i in self.normal_N.idx],
        }
        if self.theorem_id in CHAIN_THEOREMS:
            out["chain_start"] = self.chain_start
        return out


@dataclass
class CriterionReport:
    group_name: str
    params: CriterionParams
    hypothesis_holds: bool
    conclusion_holds: bool
    witnesses: list[Witness] = field(default_factory=list)
    chain: list[Subgroup] | None = None
    elapsed: float = 0.0

    @property
    def equivalent(self) -> bool:
        return self.hypothesis_holds == self.conclusion_holds


@dataclass
class Chain:
    steps: list[Subgroup]

    def __post_init__(self):
        assert self.steps and self.steps[0].order == 1
        for a, b in zip(self.steps, self.steps[1:]):
            assert a < b and b.order % a.order == 0


def canonical_sylow(G: Group, p: int, within: Subgroup | None = None) -> Subgroup:
    return sylow_subgroups(G, p, within=within)[0]


def admissible_d(order_gp: int, p: int) -> list[int]:
    """Divisors d of ``order_gp`` (a power of p) with ``1 <= d < order_gp``."""
    out, d = [], 1
    while d < order_gp:
        out.append(d)
        d *= p
    return out


def _check_d(d: int, order_gp: int, p: int) -> None:
    if d is None or d < 1 or d >= order_gp or order_gp % d or p_part(d, p) != d:
        raise CriterionError(f"d={d} must divide {order_gp} with 1 <= d < {order_gp}")


def sylowizer_failure(G: Group, S: Subgroup, p: int, mode: Mode) -> str | None:
    """Why ``S & O^p(G)`` fails the mode condition, or None when it holds."""
    op = o_upper_p(G, p)
    T = S & op
    if mode is Mode.S_PERMUTABLE:
        if not syl.is_s_permutable(G, T):
            return "S & O^p(G) not S-permutable"
    elif not is_normal_in(G, T, op):
        return "S & O^p(G) not normal in O^p(G)"
    return None


def _quantified_normals(G: Group, P: Subgroup, p: int, d: int, order4: bool) -> list[Subgroup]:
    orders = {d}
    if order4 and d == p == 2 and not is_abelian(G, P):
        orders.add(4)
    return [H for H in normal_subgroups_of(G, P) if H.order in orders]


def _sylowizer_condition(G: Group, Hs: list[Subgroup], p: int, mode: Mode) -> list[Witness]:
    witnesses = []
    for H in Hs:
        for S in syl.p_sylowizers(G, H, p):
            why = sylowizer_failure(G, S, p, mode)
            if why:
                witnesses.append(Witness(H, S, why))
    return witnesses


def hypothesis_t31(G: Group, p: int, d: int, mode: Mode = Mode.S_PERMUTABLE,
                   gp: Subgroup | None = None):
    primes = prime_factors(G.order)
    if not primes or p != primes[0]:
        raise CriterionError(f"p={p} is not the smallest prime divisor of |G|={G.order}")
    gp = canonical_sylow(G, p) if gp is None else gp
    _check_d(d, gp.order, p)
    Hs = _quantified_normals(G, gp, p, d, order4=True)
    w = _sylowizer_condition(G, Hs, p, mode)
    return not w, w


def _normalizer_witness(G: Group, gp: Subgroup, p: int) -> Witness | None:
    NG = normalizer(G, gp)
    if is_p_nilpotent(G, p, within=NG):
        return None
    return Witness(NG, None, "normalizer of the Sylow p-subgroup not p-nilpotent")


def hypothesis_t34(G: Group, p: int, d: int, mode: Mode = Mode.S_PERMUTABLE,
                   gp: Subgroup | None = None):
    if p % 2 == 0:
        raise CriterionError("criterion requires odd p")
    if G.order % p:
        raise CriterionError(f"p={p} does not divide |G|={G.order}")
    gp = canonical_sylow(G, p) if gp is None else gp
    _check_d(d, gp.order, p)
    w = []
    nw = _normalizer_witness(G, gp, p)
    if nw:
        w.append(nw)
    Hs = _quantified_normals(G, gp, p, d, order4=False)
    w += _sylowizer_condition(G, Hs, p, mode)
    return not w, w


def hypothesis_t36(G: Group, p: int, mode: Mode = Mode.S_PERMUTABLE,
                   gp: Subgroup | None = None):
    if G.order % p:
        raise CriterionError(f"p={p} does not divide |G|={G.order}")
    gp = canonical_sylow(G, p) if gp is None else gp
    nw = _normalizer_witness(G, gp, p)
    if nw:
        return False, [nw]
    low, high = derived_subgroup(G, gp), frattini_subgroup(G, gp)
    w = []
    for P in subgroups_within(G, high):
        if not low <= P:
            continue
        for S in syl.p_sylowizers(G, P, p):
            why = sylowizer_failure(G, S, p, mode)
            if why is None:
                return True, []
            w.append(Witness(P, S, why))
    return False, w


def _chain_search(G: Group, top: Subgroup, p: int, good,
                  chain_start: int = 1) -> tuple[Chain | None, list[Witness]]:
    """Depth-first search for ``1 = P_0 < ... < P_n = top`` with index-p steps.

    ``good(P)`` returns None when every sylowizer of P passes, else a list of
    witnesses; it is required of ``P_i`` for ``i >= chain_start``.  Verdicts
    are memoized per subgroup since they do not depend on the chain prefix.
    """
    if chain_start not in (0, 1):
        raise CriterionError("chain_start must be 0 or 1")
    subs = subgroups_within(G, top)
    children: dict[int, list[Subgroup]] = {}
    by_order: dict[int, list[Subgroup]] = {}
    for S in subs:
        by_order.setdefault(S.order, []).append(S)
    verdict: dict[int, list[Witness] | None] = {}
    dead: set[int] = set()
    frontier: dict[int, list[Witness]] = {}

    def ok(P):
        if P.bits not in verdict:
            verdict[P.bits] = good(P)
        return verdict[P.bits] is None

    def ups(P):
        if P.bits not in children:
            children[P.bits] = [Q for Q in by_order.get(P.order * p, []) if P < Q]
        return children[P.bits]

    def dfs(P, path):
        if P == top:
            return path
        for Q in ups(P):
            if Q.bits in dead:
                continue
            if not ok(Q):
                dead.add(Q.bits)
                frontier.setdefault(Q.order, []).extend(verdict[Q.bits])
                continue
            found = dfs(Q, path + [Q])
            if found:
                return found
            dead.add(Q.bits)
        return None

    start = subs[0]
    assert start.order == 1
    if chain_start == 0 and not ok(start):
        return None, verdict[start.bits]
    path = dfs(start, [start])
    if path:
        return Chain(path), []
    if not frontier:
        return None, []
    deepest = max(frontier)
    return None, frontier[deepest]


def _sylowizers_pass(G: Group, p: int, predicate, label: str):
    def good(P):
        bad = [Witness(P, S, label, p) for S in syl.p_sylowizers(G, P, p) if not predicate(S)]
        return bad or None
    return good


def hypothesis_t37(G: Group, p: int, Z: syl.CompleteSylowSet | None = None,
                   s_permutable: bool = False, chain_start: int = 1):
    """Chain criterion; with ``s_permutable`` the C38 variant.

    With ``chain_start=1`` the sylowizers of ``P_1, ..., P_n`` are tested.
    That condition is vacuous at ``P_n`` (its only sylowizer is G), so e.g.
    S3 at p=3 satisfies it without being 3-nilpotent; ``chain_start=0``
    also tests the sylowizers of the trivial subgroup.
    """
    if G.order % p:
        raise CriterionError(f"p={p} does not divide |G|={G.order}")
    if s_permutable:
        top = canonical_sylow(G, p) if Z is None else Z[p]
        good = _sylowizers_pass(G, p, lambda S: syl.is_s_permutable(G, S),
                                "sylowizer not S-permutable")
    else:
        Z = syl.canonical_complete_set(G) if Z is None else Z
        top = Z[p]
        good = _sylowizers_pass(G, p, lambda S: syl.is_z_permutable(G, S, Z),
                                "sylowizer not Z-permutable")
    chain, w = _chain_search(G, top, p, good, chain_start)
    return chain is not None, (chain if chain is not None else w)


def hypothesis_c39(G: Group, chain_start: int = 1):
    witnesses = []
    for p in prime_factors(G.order):
        holds, res = hypothesis_t37(G, p, s_permutable=True, chain_start=chain_start)
        if not holds:
            witnesses += res
    return not witnesses, witnesses


def hypothesis_with_normal(G: Group, N: Subgroup, p: int, d: int | None, variant: Theorem,
                           mode: Mode = Mode.S_PERMUTABLE, chain_start: int = 1):
    if not is_normal(G, N):
        raise CriterionError("N is not normal in G")
    if N.order % p:
        raise CriterionError(f"p={p} does not divide |N|={N.order}")
    np_ = canonical_sylow(G, p, within=N)
    w = []
    q = quotient(G, N)
    if not is_p_nilpotent(q.image, p):
        w.append(Witness(N, None, "G/N not p-nilpotent"))
    if variant is Theorem.C33:
        primes = prime_factors(G.order)
        if p != primes[0]:
            raise CriterionError(f"p={p} is not the smallest prime divisor of |G|={G.order}")
        _check_d(d, np_.order, p)
        Hs = _quantified_normals(G, np_, p, d, order4=True)
        w += _sylowizer_condition(G, Hs, p, mode)
        return not w, w
    if variant is Theorem.C310:
        good = _sylowizers_pass(G, p, lambda S: syl.is_s_permutable(G, S),
                                "sylowizer not S-permutable")
        chain, cw = _chain_search(G, np_, p, good, chain_start)
        if chain is None:
            w += cw or [Witness(np_, None, "no admissible chain")]
        return not w, w
    raise CriterionError(f"variant {variant} does not take a normal subgroup")


def check_equivalence(G: Group, params: CriterionParams, group_name: str = "") -> CriterionReport:
    t0 = time.perf_counter()
    th, p, d = params.theorem_id, params.p, params.d
    mode = FIXED_MODE.get(th, params.mode)
    chain = None
    if th in (Theorem.T31, Theorem.C32):
        holds, w = hypothesis_t31(G, p, d, mode)
    elif th in (Theorem.T34, Theorem.C35):
        holds, w = hypothesis_t34(G, p, d, mode)
    elif th is Theorem.T36:
        holds, w = hypothesis_t36(G, p, mode)
    elif th in (Theorem.T37, Theorem.C38):
        if th is Theorem.T37:
            Z = (syl.canonical_complete_set(G) if params.complete_set is None
                 else syl.complete_set_from_label(G, params.complete_set))
            holds, res = hypothesis_t37(G, p, Z, chain_start=params.chain_start)
        else:
            holds, res = hypothesis_t37(G, p, s_permutable=True, chain_start=params.chain_start)
        if holds:
            chain, w = res.steps, []
        else:
            w = res
    elif th is Theorem.C39:
        holds, w = hypothesis_c39(G, params.chain_start)
    elif th in (Theorem.C33, Theorem.C310):
        if params.normal_N is None:
            raise CriterionError(f"{th.value} needs a normal subgroup N")
        holds, w = hypothesis_with_normal(G, params.normal_N, p, d, th, mode, params.chain_start)
    else:
        raise CriterionError(f"unknown criterion {th}")
    conclusion = is_nilpotent(G) if th is Theorem.C39 else is_p_nilpotent(G, p)
    if params.mode is not mode:
        params = replace(params, mode=mode)
    return CriterionReport(group_name, params, holds, conclusion, w, chain,
                           time.perf_counter() - t0)


def recheck_witness(G: Group, params: CriterionParams, w: Witness) -> bool:
    """Re-derive a witness from scratch; True when it still records a failure."""
    p = params.p if w.p is None else w.p
    mode = FIXED_MODE.get(params.theorem_id, params.mode)
    if w.sylowizer is None:
        if w.reason.startswith("normalizer"):
            return not is_p_nilpotent(G, p, within=w.subgroup)
        if w.reason.startswith("G/N"):
            return not is_p_nilpotent(quotient(G, w.subgroup).image, p)
        return True
    if w.sylowizer not in syl.p_sylowizers(G, w.subgroup, p):
        return False
    th = params.theorem_id
    if th in (Theorem.T37,):
        Z = (syl.canonical_complete_set(G) if params.complete_set is None
             else syl.complete_set_from_label(G, params.complete_set))
        return not syl.is_z_permutable(G, w.sylowizer, Z)
    if th in (Theorem.C38, Theorem.C39, Theorem.C310):
        return not syl.is_s_permutable(G, w.sylowizer)
    return sylowizer_failure(G, w.sylowizer, p, mode) is not None


def admissible_params(G: Group, theorems, modes=None, complete_sets: str = "canonical",
                      max_complete_sets: int = syl.DEFAULT_MAX_COMPLETE_SETS,
                      primes=None) -> list[CriterionParams]:
    """Every admissible parameter tuple for the given criteria on ``G``.

    ``modes`` applies to the criteria with a selectable condition (default:
    S-permutable only); ``primes`` optionally filters p.
    """
    modes = list(modes or [Mode.S_PERMUTABLE])
    gprimes = prime_factors(G.order)
    keep = (lambda q: True) if primes is None else (lambda q: q in primes)
    out: list[CriterionParams] = []
    for th in theorems:
        th = Theorem(th)
        ms = modes if th in MODE_THEOREMS else [FIXED_MODE.get(th, Mode.S_PERMUTABLE)]
        if th in (Theorem.T31, Theorem.C32):
            if gprimes and keep(gprimes[0]):
                p = gprimes[0]
                for m in ms:
                    for d in admissible_d(p_part(G.order, p), p):
                        out.append(CriterionParams(th, p, d, m))
        elif th in (Theorem.T34, Theorem.C35):
            for p in gprimes:
                if p % 2 and keep(p):
                    for m in ms:
                        for d in admissible_d(p_part(G.order, p), p):
                            out.append(CriterionParams(th, p, d, m))
        elif th is Theorem.T36:
            out += [CriterionParams(th, p, None, m) for p in gprimes if keep(p) for m in ms]
        elif th is Theorem.T37:
            if complete_sets == "all":
                zs = [Z.label for Z in syl.all_complete_sets(G, max_complete_sets)]
            else:
                zs = [syl.canonical_complete_set(G).label]
            out += [CriterionParams(th, p, None, Mode.S_PERMUTABLE, z)
                    for p in gprimes if keep(p) for z in zs]
        elif th is Theorem.C38:
            out += [CriterionParams(th, p) for p in gprimes if keep(p)]
        elif th is Theorem.C39:
            if gprimes and primes is None:
                out.append(CriterionParams(th, None))
        elif th is Theorem.C33:
            if gprimes and keep(gprimes[0]):
                p = gprimes[0]
                for N in normal_subgroups_of(G, whole(G)):
                    if N.order % p:
                        continue
                    for m in ms:
                        for d in admissible_d(p_part(N.order, p), p):
                            out.append(CriterionParams(th, p, d, m, normal_N=N))
        elif th is Theorem.C310:
            for N in normal_subgroups_of(G, whole(G)):
                for p in prime_factors(N.order):
                    if keep(p):
                        out.append(CriterionParams(th, p, normal_N=N))
    return out
