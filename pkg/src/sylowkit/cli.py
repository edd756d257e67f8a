"""Command-line front end.

    sylowkit analyze A4 --p 2
    sylowkit verify [--catalog FILE] [--group NAME ...] [--theorem T31,C32] ...
    sylowkit lemmas [--catalog FILE] [--lemma L21,L27] [--quotients] ...
    sylowkit catalog [--output FILE]

Exit codes: 0 when every check is equivalent and every lemma instance
passes, 1 when some check or lemma fails (the report is still written),
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from . import sylowizer as syl
from .catalog import CatalogError, GroupSpec, default_corpus, load_specs, resolve, save_specs
from .charsub import (
    PrimeSet, is_abelian, is_p_nilpotent, is_prime, o_pi, o_upper_p, prime_factors,
    sylow_subgroups,
)
from .criteria import (
    CHAIN_THEOREMS, CriterionError, Mode, Theorem, admissible_params, canonical_sylow,
    check_equivalence, sylowizer_failure,
)
from .lattice import (
    DEFAULT_MAX_LATTICE, LatticeTooLarge, all_subgroups, normal_subgroups, normal_subgroups_of,
    whole,
)
from .lemmas import Lemma, lemma_runs, verify_lemma
from .perm import DEFAULT_MAX_ORDER, Group, GroupTooLarge
from .quotient import quotient

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CSV_COLUMNS = ["group", "theorem", "p", "d", "mode", "complete_set_id", "hypothesis",
               "conclusion", "equivalent", "witness", "millis"]
LEMMA_COLUMNS = ["group", "lemma", "p", "passed", "checked", "reason", "counterexample", "millis"]

_MODES = {"s": [Mode.S_PERMUTABLE], "n": [Mode.NORMAL_IN_OP],
          "both": [Mode.S_PERMUTABLE, Mode.NORMAL_IN_OP]}


@dataclass(frozen=True)
class RunConfig:
    theorems: tuple[Theorem, ...] = tuple(Theorem)
    lemmas: tuple[Lemma, ...] = tuple(Lemma)
    primes: frozenset[int] | None = None
    d: int | None = None
    modes: tuple[Mode, ...] = (Mode.S_PERMUTABLE,)
    complete_sets: str = "canonical"
    chain_start: int = 1
    max_order: int = DEFAULT_MAX_ORDER
    max_lattice: int = DEFAULT_MAX_LATTICE
    max_complete_sets: int = syl.DEFAULT_MAX_COMPLETE_SETS
    quotients: bool = False
    timings: bool = False

    def __post_init__(self):
        for cap in (self.max_order, self.max_lattice, self.max_complete_sets):
            if cap < 1:
                raise ValueError("caps must be positive")


def _build(spec: GroupSpec, cfg: RunConfig) -> Group:
    """Build the group and its lattice under the configured caps."""
    G = spec.build(max_order=cfg.max_order)
    all_subgroups(G, cfg.max_lattice)
    return G


def _millis(cfg: RunConfig, seconds: float):
    return round(seconds * 1000, 3) if cfg.timings else None


# --- verify -----------------------------------------------------------------

def _record(rep, cfg: RunConfig) -> dict:
    return {
        "group": rep.group_name,
        **rep.params.to_json(),
        "hypothesis": rep.hypothesis_holds,
        "conclusion": rep.conclusion_holds,
        "equivalent": rep.equivalent,
        "witnesses": [w.to_json() for w in rep.witnesses],
        "witness_summary": [w.summary() for w in rep.witnesses],
        "chain": None if rep.chain is None else [[int(i) for i in P.idx] for P in rep.chain],
        "millis": _millis(cfg, rep.elapsed),
    }


def verify_group(task) -> tuple[str, list[dict], str | None]:
    """Run every admissible check on one group; returns (name, records, skip reason)."""
    spec, cfg = task
    try:
        G = _build(spec, cfg)
        params = admissible_params(G, cfg.theorems, cfg.modes, cfg.complete_sets,
                                   cfg.max_complete_sets, cfg.primes)
    except (GroupTooLarge, LatticeTooLarge, syl.TooManyCompleteSets) as exc:
        return spec.name, [], str(exc)
    records = []
    for prm in params:
        if cfg.d is not None and prm.d != cfg.d:
            continue
        if prm.theorem_id in CHAIN_THEOREMS:
            prm = replace(prm, chain_start=cfg.chain_start)
        records.append(_record(check_equivalence(G, prm, spec.name), cfg))
    return spec.name, records, None


def lemma_group(task) -> tuple[str, list[dict], str | None]:
    spec, cfg = task
    try:
        G = _build(spec, cfg)
        targets = [(spec.name, G)]
        if cfg.quotients:
            for N in normal_subgroups(G):
                if 1 < N.order < G.order:
                    idx = " ".join(str(int(i)) for i in N.idx)
                    targets.append((f"{spec.name}/[{idx}]", quotient(G, N).image))
        records = []
        for name, H in targets:
            all_subgroups(H, cfg.max_lattice)
            for lem, p in lemma_runs(H, cfg.lemmas):
                if p is not None and cfg.primes is not None and p not in cfg.primes:
                    continue
                rep = verify_lemma(lem, H, p, name, cfg.max_complete_sets)
                records.append({**rep.to_json(), "millis": _millis(cfg, rep.elapsed)})
    except (GroupTooLarge, LatticeTooLarge, syl.TooManyCompleteSets) as exc:
        return spec.name, [], str(exc)
    return spec.name, records, None


def _run(worker, specs: list[GroupSpec], cfg: RunConfig, jobs: int):
    tasks = [(s, cfg) for s in specs]
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps submission order, so output does not depend on scheduling
        return list(pool.map(worker, tasks, chunksize=1))


# --- report writers ---------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _verify_rows(records: list[dict]) -> list[list[str]]:
    rows = []
    for r in records:
        cs = r["complete_set"] or ""
        if r["normal_N"] is not None:
            cs = "N=" + " ".join(map(str, r["normal_N"]))
        w = r["witness_summary"]
        wit = "" if not w else w[0] + (f" (+{len(w) - 1} more)" if len(w) > 1 else "")
        rows.append([r["group"], r["theorem"], _cell(r["p"]), _cell(r["d"]), r["mode"], cs,
                     _cell(r["hypothesis"]), _cell(r["conclusion"]), _cell(r["equivalent"]),
                     wit, _cell(r["millis"])])
    return rows


def _lemma_rows(records: list[dict]) -> list[list[str]]:
    return [[r["group"], r["lemma"], _cell(r["p"]), _cell(r["passed"]), str(r["checked"]),
             _cell(r["reason"]),
             "" if r["counterexample"] is None else json.dumps(r["counterexample"], sort_keys=True),
             _cell(r["millis"])]
            for r in records]


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _table(columns, rows) -> str:
    if not rows:
        return "  ".join(columns) + "\n"
    widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def render(kind: str, fmt: str, records: list[dict], skipped: list[dict], summary: dict) -> str:
    if fmt == "json":
        doc = {"format": f"sylowkit-{kind}-report", "version": 1, "summary": summary,
               "skipped": skipped, "records": records}
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if kind == "verify":
        columns, rows = CSV_COLUMNS, _verify_rows(records)
    else:
        columns, rows = LEMMA_COLUMNS, _lemma_rows(records)
    return _csv(columns, rows) if fmt == "csv" else _table(columns, rows)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- argument handling ------------------------------------------------------

def _ids(enum, text: str | None):
    if not text:
        return tuple(enum)
    try:
        return tuple(enum(t.strip().upper()) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise CriterionError(str(exc)) from None


def _primes(text: str | None):
    if not text:
        return None
    ps = frozenset(int(t) for t in text.split(","))
    bad = sorted(q for q in ps if not is_prime(q))
    if bad:
        raise CriterionError(f"not prime: {bad}")
    return ps


def _specs(args) -> list[GroupSpec]:
    catalog = load_specs(args.catalog, verify=True) if args.catalog else None
    if args.group:
        return [resolve(name, catalog) for name in args.group]
    return catalog if catalog is not None else default_corpus()


def _config(args, **kw) -> RunConfig:
    return RunConfig(primes=_primes(args.p), max_order=args.max_order,
                     max_lattice=args.max_lattice, max_complete_sets=args.max_complete_sets,
                     timings=args.timings, **kw)


def _summarize(kind, results, fail_key, stream) -> tuple[list[dict], list[dict], dict]:
    records, skipped = [], []
    for name, recs, why in results:
        if why is not None:
            skipped.append({"group": name, "reason": why})
        records += recs
    failures = sum(1 for r in records if not r[fail_key])
    summary = {"checks": len(records), "failures": failures, "skipped": len(skipped)}
    noun = "inequivalences" if kind == "verify" else "lemma failures"
    print(f"{len(records)} checks, {failures} {noun}", file=stream)
    for s in skipped:
        print(f"skipped {s['group']}: {s['reason']}", file=stream)
    return records, skipped, summary


def cmd_verify(args) -> int:
    cfg = _config(args, theorems=_ids(Theorem, args.theorem), d=args.d,
                  modes=tuple(_MODES[args.mode]), complete_sets=args.complete_sets,
                  chain_start=args.chain_start)
    results = _run(verify_group, _specs(args), cfg, args.jobs)
    records, skipped, summary = _summarize("verify", results, "equivalent", sys.stderr)
    _emit(render("verify", args.format, records, skipped, summary), args.output)
    return EXIT_FAIL if summary["failures"] else EXIT_OK


def cmd_lemmas(args) -> int:
    cfg = _config(args, lemmas=_ids(Lemma, args.lemma), quotients=args.quotients)
    specs = _specs(args)
    if args.max_group_order:
        specs = [s for s in specs if s.build(max_order=cfg.max_order).order <= args.max_group_order]
    results = _run(lemma_group, specs, cfg, args.jobs)
    records, skipped, summary = _summarize("lemmas", results, "passed", sys.stderr)
    _emit(render("lemmas", args.format, records, skipped, summary), args.output)
    return EXIT_FAIL if summary["failures"] else EXIT_OK


def _perm_note(G: Group, S, p: int) -> str:
    notes = ["S-permutable" if syl.is_s_permutable(G, S) else "not S-permutable"]
    if sylowizer_failure(G, S, p, Mode.S_PERMUTABLE) is None:
        notes.append("S & O^p S-permutable")
    else:
        notes.append("S & O^p not S-permutable")
    if sylowizer_failure(G, S, p, Mode.NORMAL_IN_OP) is None:
        notes.append("S & O^p normal in O^p")
    else:
        notes.append("S & O^p not normal in O^p")
    return "; ".join(notes)


def _shape(G: Group, H) -> str:
    if H.order == 1:
        return "trivial"
    if H == whole(G):
        return "whole group"
    return "abelian" if is_abelian(G, H) else "non-abelian"


def analyze_text(spec: GroupSpec, G: Group, p: int) -> str:
    out = [f"group {spec.name}: order {G.order}, degree {G.degree}"]
    primes = prime_factors(G.order)
    for q in primes:
        syls = sylow_subgroups(G, q)
        out.append(f"Sylow {q}: {len(syls)} subgroup(s) of order {syls[0].order}")
    core = o_pi(G, PrimeSet.prime_prime(p))
    op = o_upper_p(G, p)
    out.append(f"O_{p}'(G): order {core.order} ({_shape(G, core)})")
    out.append(f"O^{p}(G): order {op.order} ({_shape(G, op)})")
    verdict = f"{p}-nilpotent" if is_p_nilpotent(G, p) else f"not {p}-nilpotent"
    out.append(f"verdict: {verdict}")
    if G.order % p:
        out.append(f"{p} does not divide |G|; no sylowizers to list")
        return "\n".join(out) + "\n"
    gp = canonical_sylow(G, p)
    out.append(f"sylowizers of the normal subgroups of G_{p} = {gp.describe()}:")
    by_order: dict[int, list] = {}
    for H in normal_subgroups_of(G, gp):
        by_order.setdefault(H.order, []).append(H)
    for order in sorted(by_order):
        out.append(f"  |H| = {order}:")
        for H in by_order[order]:
            for S in syl.p_sylowizers(G, H, p):
                out.append(f"    H {H.describe()} -> S {S.describe()}: {_perm_note(G, S, p)}")
    return "\n".join(out) + "\n"


def cmd_analyze(args) -> int:
    catalog = load_specs(args.catalog, verify=True) if args.catalog else None
    spec = resolve(args.name, catalog)
    G = spec.build(max_order=args.max_order)
    all_subgroups(G, args.max_lattice)
    p = args.p
    if p is None:
        p = prime_factors(G.order)[0] if G.order > 1 else 2
    if not is_prime(p):
        raise CriterionError(f"not prime: {p}")
    _emit(analyze_text(spec, G, p), args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    specs = default_corpus()
    if args.output:
        save_specs(specs, args.output)
    else:
        for s in specs:
            print(f"{s.name}\tdegree {s.degree}\t{','.join(s.tags)}")
    return EXIT_OK


def _common(sp, jobs=True):
    sp.add_argument("--catalog", help="JSON catalog file (default: built-in corpus)")
    sp.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    sp.add_argument("--max-lattice", type=int, default=DEFAULT_MAX_LATTICE)
    sp.add_argument("--output", "-o", help="write the report here instead of stdout")
    if jobs:
        sp.add_argument("--group", action="append", help="restrict to this group (repeatable)")
        sp.add_argument("--p", help="comma-separated primes to check")
        sp.add_argument("--max-complete-sets", type=int, default=syl.DEFAULT_MAX_COMPLETE_SETS)
        sp.add_argument("--format", choices=["json", "csv", "table"], default="table")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--timings", action="store_true",
                        help="fill in the millis column (makes output run-dependent)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sylowkit",
                                 description="Sylowizer-based p-nilpotency checks on permutation groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="describe one group at one prime")
    a.add_argument("name")
    a.add_argument("--p", type=int)
    _common(a, jobs=False)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run the criterion equivalence matrix")
    _common(v)
    v.add_argument("--theorem", help="comma-separated ids, e.g. T31,C32 (default: all)")
    v.add_argument("--d", type=int, help="only this value of d")
    v.add_argument("--mode", choices=["s", "n", "both"], default="s",
                   help="sylowizer condition for T31/C33/T34/T36 (C32/C35 always use n)")
    v.add_argument("--complete-sets", choices=["canonical", "all"], default="canonical")
    v.add_argument("--chain-start", type=int, choices=[0, 1], default=1,
                   help="first chain index whose sylowizers are tested")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("lemmas", help="run the lemma property suites")
    _common(m)
    m.add_argument("--lemma", help="comma-separated ids, e.g. L21,L27 (default: all)")
    m.add_argument("--quotients", action="store_true",
                   help="also run on G/N for every proper nontrivial normal N")
    m.add_argument("--max-group-order", type=int,
                   help="skip catalog groups above this order")
    m.set_defaults(func=cmd_lemmas)

    c = sub.add_parser("catalog", help="list or export the built-in corpus")
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CatalogError, CriterionError, GroupTooLarge, LatticeTooLarge,
            syl.TooManyCompleteSets, OSError, ValueError) as exc:
        print(f"sylowkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
