import pytest

from sylowkit.charsub import (
    PrimeSet, is_nilpotent, is_p_nilpotent, o_pi, o_upper_p, p_part, prime_factors,
    sylow_subgroups,
)
from sylowkit.lattice import is_normal, normal_subgroups, subgroup_from_perms, trivial, whole
from sylowkit.perm import Permutation

P = Permutation.parse


def test_arithmetic():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []
    assert p_part(360, 2) == 8 and p_part(360, 7) == 1


def test_primeset():
    pi = PrimeSet.prime_prime(2)
    assert 3 in pi and 2 not in pi
    assert pi.covers(15) and not pi.covers(6)
    assert str(pi) == "{2}'"
    with pytest.raises(ValueError):
        PrimeSet.of(4)


def test_sylow_examples(groups):
    assert sylow_subgroups(groups["C15"], 2) == [trivial(groups["C15"])]
    s3 = sylow_subgroups(groups["S3"], 2)
    assert len(s3) == 3 and all(H.order == 2 for H in s3)
    a4 = sylow_subgroups(groups["A4"], 2)
    assert len(a4) == 1 and a4[0].order == 4


def test_sylow_counts(corpus):
    for spec, G in corpus:
        for p in prime_factors(G.order):
            syl = sylow_subgroups(G, p)
            assert len(syl) % p == 1, (spec.name, p)
            assert G.order % len(syl) == 0
            assert all(H.order == p_part(G.order, p) for H in syl)


def test_o_pi_examples(groups):
    S3 = groups["S3"]
    A3 = subgroup_from_perms(S3, [P(3, "(0 1 2)")])
    assert o_pi(S3, PrimeSet.prime_prime(2)) == A3
    assert o_pi(S3, PrimeSet.prime_prime(3)) == trivial(S3)
    Q16 = groups["Q16"]
    assert o_pi(Q16, PrimeSet.of(2)) == whole(Q16)


def test_o_pi_is_join_of_normal_pi_subgroups(corpus):
    for spec, G in corpus:
        for p in prime_factors(G.order):
            pi = PrimeSet.prime_prime(p)
            core = o_pi(G, pi)
            for N in normal_subgroups(G):
                if pi.covers(N.order):
                    assert N <= core


def test_o_upper_examples(groups):
    assert o_upper_p(groups["D16"], 2).order == 1
    S3 = groups["S3"]
    assert o_upper_p(S3, 2) == subgroup_from_perms(S3, [P(3, "(0 1 2)")])
    assert o_upper_p(S3, 3) == whole(S3)


def test_o_upper_normal_with_p_power_index(corpus):
    for spec, G in corpus:
        for p in prime_factors(G.order):
            op = o_upper_p(G, p)
            assert is_normal(G, op)
            idx = G.order // op.order
            assert p_part(idx, p) == idx


def test_p_nilpotent_examples(groups):
    for p in (2, 3):
        assert is_p_nilpotent(groups["C12"], p)
    assert is_p_nilpotent(groups["S3"], 2)
    assert not is_p_nilpotent(groups["A4"], 2)
    assert not is_p_nilpotent(groups["SL(2,3)"], 2)


def test_nilpotent_examples(groups):
    assert is_nilpotent(groups["D16"])
    assert is_nilpotent(groups["Q8"])
    assert not is_nilpotent(groups["S3"])


def test_nilpotent_iff_p_nilpotent_everywhere(corpus):
    for spec, G in corpus:
        primes = prime_factors(G.order)
        assert is_nilpotent(G) == all(is_p_nilpotent(G, p) for p in primes), spec.name
        for p in primes:
            if is_p_nilpotent(G, p):
                core = o_pi(G, PrimeSet.prime_prime(p))
                assert core.order * p_part(G.order, p) == G.order
