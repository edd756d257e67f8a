"""Acceptance criteria 1-9, one test each.

Every test prints a ``[PASS]``/``[FAIL]`` line (also collected into the
terminal summary by conftest).  Criterion 4 is expected to fail: the
literal chain condition is vacuous at the top of the chain, see
``test_criteria.py::test_literal_chain_reading_is_vacuous_at_the_top``.
"""

import json
import time

from conftest import ACCEPTANCE_LINES

from sylowkit import cli
from sylowkit import sylowizer as syl
from sylowkit.catalog import resolve
from sylowkit.charsub import is_nilpotent, prime_factors, sylow_subgroups
from sylowkit.criteria import Mode, Theorem, admissible_params, check_equivalence
from sylowkit.charsub import o_upper_p
from sylowkit.lattice import all_subgroups, normal_subgroups, subgroup_from_perms, trivial, whole
from sylowkit.lemmas import lemma_runs, recheck_lemma, verify_lemma
from sylowkit.perm import Permutation, stabilizer_chain_order
from sylowkit.quotient import quotient

from test_lattice import subset_closure_oracle


def report(k: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _matrix(corpus, theorems, policy=lambda G: "canonical"):
    bad, n = [], 0
    for spec, G in corpus:
        for prm in admissible_params(G, theorems, modes=list(Mode), complete_sets=policy(G)):
            rep = check_equivalence(G, prm, spec.name)
            n += 1
            if not rep.equivalent:
                bad.append((spec.name, prm))
    return n, bad


def _fmt_bad(bad):
    return ", ".join(f"{g} {p.theorem_id.value} p={p.p}" for g, p in bad[:4])


def test_criterion_1_t31_c32_matrix(corpus):
    t0 = time.perf_counter()
    n, bad = _matrix(corpus, [Theorem.T31, Theorem.C32])
    secs = time.perf_counter() - t0
    ok = not bad and n >= 200 and secs < 300
    report(1, ok, f"T31/C32 on {len(corpus)} groups: {n} tuples, {len(bad)} inequivalent, "
                  f"{secs:.1f}s")
    assert ok, _fmt_bad(bad)


def test_criterion_2_t34_c35(corpus):
    n, bad = _matrix(corpus, [Theorem.T34, Theorem.C35])
    ok = not bad and n > 0
    report(2, ok, f"T34/C35: {n} tuples with odd p, {len(bad)} inequivalent")
    assert ok, _fmt_bad(bad)


def test_criterion_3_t36(corpus, groups):
    n, bad = _matrix(corpus, [Theorem.T36])
    anchors = {("A4", 2): False, ("S4", 2): False, ("SL(2,3)", 2): False,
               ("S3", 2): True, ("F21", 3): True, ("F21", 7): False}
    got = {}
    for (name, p), want in anchors.items():
        rep = check_equivalence(groups[name], admissible_params(groups[name], [Theorem.T36],
                                                                primes={p})[0])
        got[(name, p)] = (rep.hypothesis_holds, rep.conclusion_holds)
    anchors_ok = all(got[k] == (v, v) for k, v in anchors.items())
    ok = not bad and anchors_ok
    report(3, ok, f"T36: {n} tuples, {len(bad)} inequivalent; anchors "
                  + ", ".join(f"{g}/p={p}:{h}" for (g, p), (h, _) in got.items()))
    assert ok, (_fmt_bad(bad), got)


def test_criterion_4_chain_criteria(corpus):
    chain = [Theorem.T37, Theorem.C38, Theorem.C39, Theorem.C310]
    n_can, bad_can = _matrix(corpus, chain)
    small = [(s, G) for s, G in corpus if G.order <= 100]
    n_all, bad_all = _matrix(small, [Theorem.T37], policy=lambda G: "all")
    c39 = [(s.name, check_equivalence(G, admissible_params(G, [Theorem.C39])[0]))
           for s, G in corpus]
    c39_match = sum(r.hypothesis_holds == is_nilpotent(G) for (_, r), (_, G) in zip(c39, corpus))
    ok = not bad_can and not bad_all and c39_match == len(corpus)
    report(4, ok, f"chain criteria: canonical {len(bad_can)}/{n_can} inequivalent, "
                  f"all complete sets (order <= 100) {len(bad_all)}/{n_all} inequivalent; "
                  f"C39 hypothesis = is_nilpotent on {c39_match}/{len(corpus)} groups; "
                  f"e.g. {_fmt_bad(bad_can)}")
    assert ok, _fmt_bad(bad_can + bad_all)


def test_criterion_5_lemma_suites(corpus):
    n, fails, nq = 0, [], 0
    for spec, G in corpus:
        if G.order > 100:
            continue
        targets = [(spec.name, G)]
        for N in normal_subgroups(G):
            if 1 < N.order < G.order:
                targets.append((f"{spec.name}/N{N.order}", quotient(G, N).image))
                nq += 1
        for name, H in targets:
            for lem, p in lemma_runs(H):
                rep = verify_lemma(lem, H, p, name)
                n += rep.checked
                if not rep.passed:
                    fails.append((name, lem.value, p, rep.reason))
    ok = not fails
    report(5, ok, f"L21-L27: {n} instances on groups of order <= 100 and {nq} quotients, "
                  f"{len(fails)} counterexamples")
    assert ok, fails[:3]


def test_criterion_6_oracles(corpus, groups):
    mism = [s.name for s, G in corpus if stabilizer_chain_order(G.generators, G.degree) != G.order]
    counts = {n: (len(all_subgroups(groups[n])), len(subset_closure_oracle(groups[n])))
              for n in ("S3", "A4", "D8", "Q8")}
    counts_ok = counts == {"S3": (6, 6), "A4": (10, 10), "D8": (10, 10), "Q8": (6, 6)}
    sylow_bad = [(s.name, p) for s, G in corpus for p in prime_factors(G.order)
                 if len(sylow_subgroups(G, p)) % p != 1]
    ok = not mism and counts_ok and not sylow_bad
    report(6, ok, f"stabilizer-chain order mismatches {len(mism)}; lattice counts {counts}; "
                  f"Sylow counts not 1 mod p: {len(sylow_bad)}")
    assert ok


def test_criterion_7_spot_anchors(groups):
    S3, A4 = groups["S3"], groups["A4"]
    A3 = subgroup_from_perms(S3, [Permutation.parse(3, "(0 1 2)")])
    t = subgroup_from_perms(S3, [Permutation.parse(3, "(0 1)")])
    c2s = [H for H in all_subgroups(A4) if H.order == 2]
    checks = {
        "sylowizers(S3, 1, 2) = {A3}": syl.p_sylowizers(S3, trivial(S3), 2) == [A3],
        "sylowizers(S3, <(0 1)>, 2) = {S3}": syl.p_sylowizers(S3, t, 2) == [whole(S3)],
        "sylowizers(A4, C2, 2) = {C2}": all(syl.p_sylowizers(A4, C, 2) == [C] for C in c2s),
        "O^2(S3) = A3": o_upper_p(S3, 2) == A3,
        "O^3(S3) = S3": o_upper_p(S3, 3) == whole(S3),
        "A4 C2 not S-permutable": not any(syl.is_s_permutable(A4, C) for C in c2s),
    }
    ok = all(checks.values())
    report(7, ok, "; ".join(f"{k}: {'ok' if v else 'WRONG'}" for k, v in checks.items()))
    assert ok


def test_criterion_8_determinism(tmp_path, capsys):
    outs = []
    for jobs in ("1", "8"):
        path = tmp_path / f"report{jobs}.json"
        cli.main(["verify", "--format", "json", "--jobs", jobs, "--output", str(path)])
        outs.append(path.read_bytes())
    capsys.readouterr()
    ok = outs[0] == outs[1] and len(json.loads(outs[0])["records"]) > 0
    report(8, ok, f"verify --jobs 1 vs --jobs 8: {len(outs[0])} bytes, identical: {outs[0] == outs[1]}")
    assert ok


def test_criterion_9_fault_injection(monkeypatch, capsys):
    monkeypatch.setattr(syl, "is_s_permutable", lambda *a, **k: True)
    code = cli.main(["lemmas", "--group", "S3", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    fails = [r for r in doc["records"] if not r["passed"]]
    G = resolve("S3").build()
    replay = [recheck_lemma(r["lemma"], G, r["p"], r["counterexample"]) == r["reason"] for r in fails]
    l27 = any(r["lemma"] == "L27" for r in fails)
    ok = code == 1 and l27 and all(replay)
    report(9, ok, f"corrupted S-permutability: exit {code}, failing lemmas "
                  f"{sorted({r['lemma'] for r in fails})}, witnesses replay: {all(replay)}")
    assert ok
