import pytest

from sylowkit import sylowizer as syl
from sylowkit.catalog import builtin, direct_product
from sylowkit.charsub import is_nilpotent, is_p_nilpotent, prime_factors, sylow_subgroups
from sylowkit.criteria import (
    CHAIN_THEOREMS, Chain, CriterionError, CriterionParams, Mode, Theorem, Witness,
    _quantified_normals, admissible_params, check_equivalence, hypothesis_t31,
    hypothesis_t34, hypothesis_t36, hypothesis_t37, hypothesis_with_normal, recheck_witness,
)
from sylowkit.lattice import is_normal, subgroup_from_perms, trivial, whole
from sylowkit.perm import Permutation

P = Permutation.parse
NON_CHAIN = [Theorem.T31, Theorem.C32, Theorem.C33, Theorem.T34, Theorem.C35, Theorem.T36]


def test_t31_examples(groups):
    S3, A4 = groups["S3"], groups["A4"]
    assert hypothesis_t31(S3, 2, 1) == (True, [])
    holds, w = hypothesis_t31(A4, 2, 2)
    assert not holds
    assert {x.subgroup.order for x in w} == {2}
    assert all(x.sylowizer == x.subgroup for x in w)
    C2 = w[0].subgroup
    assert not syl.product_is_subgroup(A4, C2, sylow_subgroups(A4, 3)[0])
    for name in ("C12", "E8", "E9"):
        G = groups[name]
        p = prime_factors(G.order)[0]
        for d in (1, p):
            assert hypothesis_t31(G, p, d)[0]


def test_t31_errors(groups):
    with pytest.raises(CriterionError):
        hypothesis_t31(groups["S3"], 3, 1)
    with pytest.raises(CriterionError):
        hypothesis_t31(groups["A4"], 2, 4)
    with pytest.raises(CriterionError):
        hypothesis_t31(groups["A4"], 2, 3)


def test_order4_clause(groups):
    D8, E8 = groups["D8"], groups["E8"]
    gp = whole(D8)
    assert {H.order for H in _quantified_normals(D8, gp, 2, 2, order4=True)} == {2, 4}
    assert {H.order for H in _quantified_normals(D8, gp, 2, 2, order4=False)} == {2}
    assert {H.order for H in _quantified_normals(E8, whole(E8), 2, 2, order4=True)} == {2}


def test_t34_examples(groups):
    assert hypothesis_t34(groups["F21"], 3, 1)[0]
    holds, w = hypothesis_t34(groups["S3"], 3, 1)
    assert not holds and w[0].reason.startswith("normalizer")
    assert hypothesis_t34(groups["C15"], 3, 1)[0]
    with pytest.raises(CriterionError, match="odd p"):
        hypothesis_t34(groups["S3"], 2, 1)


def test_t36_examples(groups):
    holds, w = hypothesis_t36(groups["SL(2,3)"], 2)
    assert not holds and w[0].subgroup == whole(groups["SL(2,3)"])
    assert hypothesis_t36(groups["S3"], 2)[0]
    assert hypothesis_t36(groups["Q16"], 2)[0]
    with pytest.raises(CriterionError):
        hypothesis_t36(groups["S3"], 5)


def test_t37_examples(groups):
    S3 = groups["S3"]
    holds, chain = hypothesis_t37(S3, 2, syl.canonical_complete_set(S3))
    assert holds and [H.order for H in chain.steps] == [1, 2]
    A4 = groups["A4"]
    for Z in syl.all_complete_sets(A4):
        holds, w = hypothesis_t37(A4, 2, Z)
        assert not holds
        assert {x.subgroup.order for x in w} == {2} and len(w) == 3
    C12 = groups["C12"]
    for p in (2, 3):
        assert hypothesis_t37(C12, p)[0]
    with pytest.raises(CriterionError):
        hypothesis_t37(S3, 5)


def test_chain_shape(corpus):
    for spec, G in corpus:
        if G.order > 100:
            continue
        for p in prime_factors(G.order):
            for Z in syl.all_complete_sets(G):
                holds, res = hypothesis_t37(G, p, Z)
                if holds:
                    steps = res.steps
                    assert steps[0].order == 1 and steps[-1] == Z[p]
                    for a, b in zip(steps, steps[1:]):
                        assert a < b and b.order == p * a.order


def test_chain_rejects_bad_steps(groups):
    S3 = groups["S3"]
    with pytest.raises(AssertionError):
        Chain([whole(S3)])


def test_with_normal_examples(groups):
    A4 = groups["A4"]
    full = hypothesis_with_normal(A4, whole(A4), 2, 2, Theorem.C33)
    assert full[0] == hypothesis_t31(A4, 2, 2)[0]
    spec = direct_product(builtin("symmetric", 3), builtin("cyclic", 2))
    G = spec.build()
    N = subgroup_from_perms(G, [P(5, "(0 1)"), P(5, "(0 1 2)")])
    assert N.order == 6 and is_normal(G, N)
    rep = check_equivalence(G, CriterionParams(Theorem.C33, 2, 1, normal_N=N))
    assert rep.equivalent and rep.conclusion_holds
    with pytest.raises(CriterionError):
        hypothesis_with_normal(G, trivial(G), 2, 1, Theorem.C33)
    with pytest.raises(CriterionError):
        hypothesis_with_normal(G, subgroup_from_perms(G, [P(5, "(0 1)")]), 2, 1, Theorem.C33)


def test_check_equivalence_examples(groups):
    rep = check_equivalence(groups["A4"], CriterionParams(Theorem.T31, 2, 2))
    assert (rep.hypothesis_holds, rep.conclusion_holds, rep.equivalent) == (False, False, True)
    rep = check_equivalence(groups["C6"], CriterionParams(Theorem.T37, 2))
    assert rep.hypothesis_holds and rep.conclusion_holds and rep.chain
    rep = check_equivalence(groups["F21"], CriterionParams(Theorem.T34, 3, 1))
    assert rep.hypothesis_holds and rep.conclusion_holds
    rep = check_equivalence(groups["S3"], CriterionParams(Theorem.C32, 2, 1))
    assert rep.params.mode is Mode.NORMAL_IN_OP
    with pytest.raises(CriterionError):
        check_equivalence(groups["S3"], CriterionParams(Theorem.C33, 2, 1))


def test_admissible_params(groups):
    A4 = groups["A4"]
    ps = admissible_params(A4, [Theorem.T31])
    assert [(x.p, x.d) for x in ps] == [(2, 1), (2, 2)]
    ps = admissible_params(A4, [Theorem.T31], modes=list(Mode))
    assert len(ps) == 4
    assert [x.p for x in admissible_params(A4, [Theorem.C39])] == [None]
    assert len(admissible_params(A4, [Theorem.T37], complete_sets="all")) == 2 * 4
    assert admissible_params(groups["E8"], [Theorem.T34]) == []


def test_non_chain_criteria_equivalent(corpus):
    for spec, G in corpus:
        for prm in admissible_params(G, NON_CHAIN, modes=list(Mode)):
            rep = check_equivalence(G, prm, spec.name)
            assert rep.equivalent, (spec.name, prm.to_json())
            if not rep.hypothesis_holds:
                assert rep.witnesses


def test_conjugation_invariance(corpus):
    """The canonical Sylow choice does not matter: sweep every Sylow p-subgroup."""
    for spec, G in corpus:
        if G.order > 60:
            continue
        primes = prime_factors(G.order)
        for p in primes:
            sylows = sylow_subgroups(G, p)
            if len(sylows) == 1:
                continue
            d_values = [d for d in (1, p, p * p) if d < sylows[0].order]
            for d in d_values:
                if p == primes[0]:
                    assert len({hypothesis_t31(G, p, d, gp=S)[0] for S in sylows}) == 1
                if p % 2:
                    assert len({hypothesis_t34(G, p, d, gp=S)[0] for S in sylows}) == 1
            assert len({hypothesis_t36(G, p, gp=S)[0] for S in sylows}) == 1


def test_witnesses_replay(corpus):
    for spec, G in corpus:
        if G.order > 100:
            continue
        for prm in admissible_params(G, list(Theorem), modes=list(Mode)):
            rep = check_equivalence(G, prm, spec.name)
            for w in rep.witnesses:
                assert recheck_witness(G, rep.params, w), (spec.name, prm.to_json(), w.reason)


def test_tampered_witness_does_not_replay(groups):
    S3 = groups["S3"]
    prm = CriterionParams(Theorem.T31, 2, 1)
    fake = Witness(trivial(S3), syl.p_sylowizers(S3, trivial(S3), 2)[0], "made up")
    assert not recheck_witness(S3, prm, fake)


def test_literal_chain_reading_is_vacuous_at_the_top(groups):
    # sylowizers of P_1..P_n only: when |G_p| = p the sole condition is on G itself
    S3 = groups["S3"]
    rep = check_equivalence(S3, CriterionParams(Theorem.C38, 3))
    assert rep.hypothesis_holds and not rep.conclusion_holds
    rep = check_equivalence(S3, CriterionParams(Theorem.C38, 3, chain_start=0))
    assert not rep.hypothesis_holds and rep.equivalent
    assert rep.witnesses[0].subgroup.order == 1


def test_chain_criteria_with_start_zero(corpus):
    """With P_0 included every chain tuple is equivalent (all complete sets, order <= 100)."""
    for spec, G in corpus:
        policy = "all" if G.order <= 100 else "canonical"
        for prm in admissible_params(G, sorted(CHAIN_THEOREMS), complete_sets=policy):
            prm = CriterionParams(prm.theorem_id, prm.p, prm.d, prm.mode, prm.complete_set,
                                  prm.normal_N, chain_start=0)
            rep = check_equivalence(G, prm, spec.name)
            assert rep.equivalent, (spec.name, prm.to_json())
            if prm.theorem_id is Theorem.C39:
                assert rep.conclusion_holds == is_nilpotent(G)
            for w in rep.witnesses:
                assert recheck_witness(G, rep.params, w)


def test_conclusion_is_ground_truth(groups):
    G = groups["S4xC2"]
    for prm in admissible_params(G, [Theorem.T36, Theorem.C39]):
        rep = check_equivalence(G, prm)
        expect = is_nilpotent(G) if prm.p is None else is_p_nilpotent(G, prm.p)
        assert rep.conclusion_holds == expect
