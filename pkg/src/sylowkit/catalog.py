"""Built-in group families, catalog files and the default verification corpus.

Catalog file format (JSON)::

    {
      "format": "sylowkit-catalog",
      "version": 1,
      "groups": [
        {"name": "S3", "degree": 3,
         "generators": [[1, 0, 2], [1, 2, 0]],
         "tags": ["2-nilpotent"]}
      ]
    }

Generators are 0-based image arrays.  Recognized tags are checked when a
file is loaded with ``verify=True``: ``abelian``, ``nilpotent``,
``p-group``, ``<p>-nilpotent`` and ``non-<p>-nilpotent``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .perm import DEFAULT_MAX_DEGREE, Group, Permutation, generate_group

FORMAT = "sylowkit-catalog"
VERSION = 1


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    name: str
    degree: int
    generators: tuple[tuple[int, ...], ...]
    tags: tuple[str, ...] = field(default=())

    def build(self, max_order: int | None = None) -> Group:
        kw = {} if max_order is None else {"max_order": max_order}
        return generate_group([Permutation(g) for g in self.generators], self.degree, **kw)

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree,
                "generators": [list(g) for g in self.generators],
                "tags": list(self.tags)}


def _spec(name, degree, gens, tags=()) -> GroupSpec:
    return GroupSpec(name, degree, tuple(tuple(g) for g in gens), tuple(tags))


def _cycle(n, pts):
    img = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        img[a] = b
    return img


def _regular(elements, mult, gens):
    """Right regular representation of an abstract group given by ``mult``."""
    pos = {e: i for i, e in enumerate(elements)}
    return [[pos[mult(e, g)] for e in elements] for g in gens]


def _metacyclic(m, r, s):
    """Regular representation of ``<a, b | a^m, b a b^-1 = a^r, b^2 = a^s>``."""
    elements = [(i, j) for j in (0, 1) for i in range(m)]

    def mult(x, y):
        i, j = x
        k, l = y
        e = i + k * pow(r, j, m)
        if j + l == 2:
            return ((e + s) % m, 0)
        return (e % m, j + l)

    return _regular(elements, mult, [(1, 0), (0, 1)])


def cyclic(n: int) -> GroupSpec:
    if n < 1:
        raise CatalogError("cyclic needs n >= 1")
    gens = [_cycle(n, list(range(n)))] if n > 1 else []
    return _spec(f"C{n}", n, gens, ["abelian"])


def dihedral(n: int) -> GroupSpec:
    """Symmetries of the regular n-gon, order 2n."""
    if n < 3:
        raise CatalogError("dihedral needs n >= 3")
    return _spec(f"D{2 * n}", n, [_cycle(n, list(range(n))), [(-i) % n for i in range(n)]])


def symmetric(n: int) -> GroupSpec:
    if not 1 <= n <= 6:
        raise CatalogError("symmetric needs 1 <= n <= 6")
    if n == 1:
        return _spec("S1", 1, [])
    tags = ["non-2-nilpotent"] if n >= 4 else []
    return _spec(f"S{n}", n, [_cycle(n, [0, 1]), _cycle(n, list(range(n)))], tags)


def alternating(n: int) -> GroupSpec:
    if not 1 <= n <= 6:
        raise CatalogError("alternating needs 1 <= n <= 6")
    tags = ["non-2-nilpotent"] if n >= 4 else []
    return _spec(f"A{n}", n, [_cycle(n, [0, 1, k]) for k in range(2, n)], tags)


def quaternion(k: int) -> GroupSpec:
    """Generalized quaternion group of order 2^k."""
    if not 3 <= k <= 5:
        raise CatalogError("quaternion needs 3 <= k <= 5")
    m = 2 ** (k - 1)
    return _spec(f"Q{2 ** k}", 2 ** k, _metacyclic(m, m - 1, m // 2), ["nilpotent", "p-group"])


def elementary_abelian(p: int, k: int) -> GroupSpec:
    if p < 2 or any(p % q == 0 for q in range(2, p)) or k < 1:
        raise CatalogError("elementary_abelian needs a prime p and k >= 1")
    deg = p * k
    gens = [_cycle(deg, list(range(i * p, (i + 1) * p))) for i in range(k)]
    return _spec(f"E{p ** k}", deg, gens, ["abelian", "p-group"])


def sl23() -> GroupSpec:
    """SL(2,3) acting on the 8 nonzero vectors of GF(3)^2."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(m):
        return [pos[((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)]
                for a, b in vecs]

    return _spec("SL(2,3)", 8, [act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))], ["non-2-nilpotent"])


def frobenius21() -> GroupSpec:
    """C7 x| C3 acting on GF(7): x -> x + 1 and x -> 2x."""
    return _spec("F21", 7, [[(x + 1) % 7 for x in range(7)], [(2 * x) % 7 for x in range(7)]],
                 ["3-nilpotent", "non-7-nilpotent"])


def modular16() -> GroupSpec:
    return _spec("M16", 16, _metacyclic(8, 5, 0), ["nilpotent", "p-group"])


def semidihedral16() -> GroupSpec:
    return _spec("SD16", 16, _metacyclic(8, 3, 0), ["nilpotent", "p-group"])


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "quaternion": quaternion,
    "elementary_abelian": elementary_abelian,
    "sl23": sl23,
    "frobenius21": frobenius21,
    "modular16": modular16,
    "semidihedral16": semidihedral16,
}


def builtin(family: str, *params: int) -> GroupSpec:
    try:
        make = FAMILIES[family]
    except KeyError:
        raise CatalogError(f"unknown family {family!r}") from None
    try:
        return make(*params)
    except TypeError as exc:
        raise CatalogError(f"bad parameters for {family}: {params}") from exc


def expected_order(family: str, *params: int) -> int:
    """Order predicted by the family's formula."""
    formulas = {
        "cyclic": lambda n: n,
        "dihedral": lambda n: 2 * n,
        "symmetric": math.factorial,
        "alternating": lambda n: max(1, math.factorial(n) // 2),
        "quaternion": lambda k: 2 ** k,
        "elementary_abelian": lambda p, k: p ** k,
        "sl23": lambda: 24,
        "frobenius21": lambda: 21,
        "modular16": lambda: 16,
        "semidihedral16": lambda: 16,
    }
    return formulas[family](*params)


def direct_product(a: GroupSpec, b: GroupSpec, max_degree: int = DEFAULT_MAX_DEGREE) -> GroupSpec:
    deg = a.degree + b.degree
    if deg > max_degree:
        raise CatalogError(f"combined degree {deg} exceeds cap {max_degree}")
    shift = a.degree
    gens = [list(g) + list(range(shift, deg)) for g in a.generators]
    gens += [list(range(shift)) + [x + shift for x in g] for g in b.generators]
    tags = sorted(set(a.tags) & set(b.tags) & {"abelian", "nilpotent"})
    return _spec(f"{a.name}x{b.name}", deg, gens, tags)


# (family, params) for the builtin part of the default corpus
_CORPUS_BUILTINS = [
    ("cyclic", 2), ("cyclic", 3), ("cyclic", 4), ("cyclic", 5), ("cyclic", 6),
    ("cyclic", 7), ("cyclic", 8), ("cyclic", 9), ("cyclic", 12), ("cyclic", 15),
    ("dihedral", 3), ("dihedral", 4), ("dihedral", 5), ("dihedral", 6),
    ("dihedral", 7), ("dihedral", 8), ("dihedral", 9), ("dihedral", 10),
    ("symmetric", 3), ("symmetric", 4), ("symmetric", 5),
    ("alternating", 4), ("alternating", 5),
    ("quaternion", 3), ("quaternion", 4),
    ("elementary_abelian", 2, 2), ("elementary_abelian", 2, 3),
    ("elementary_abelian", 3, 2), ("elementary_abelian", 3, 3),
    ("sl23",), ("frobenius21",), ("modular16",), ("semidihedral16",),
]

_CORPUS_PRODUCTS = [
    (("symmetric", 3), ("cyclic", 2)),
    (("symmetric", 3), ("cyclic", 3)),
    (("symmetric", 3), ("cyclic", 5)),
    (("symmetric", 3), ("symmetric", 3)),
    (("alternating", 4), ("cyclic", 2)),
    (("alternating", 4), ("cyclic", 3)),
    (("alternating", 4), ("symmetric", 3)),
    (("symmetric", 4), ("cyclic", 2)),
    (("symmetric", 4), ("symmetric", 3)),
    (("frobenius21",), ("cyclic", 2)),
    (("frobenius21",), ("cyclic", 3)),
    (("frobenius21",), ("symmetric", 3)),
    (("quaternion", 3), ("cyclic", 3)),
    (("quaternion", 3), ("symmetric", 3)),
    (("dihedral", 4), ("cyclic", 3)),
    (("dihedral", 4), ("symmetric", 3)),
    (("sl23",), ("cyclic", 2)),
    (("dihedral", 5), ("cyclic", 3)),
]


def default_corpus() -> list[GroupSpec]:
    specs = [builtin(f, *p) for f, *p in _CORPUS_BUILTINS]
    for (fa, *pa), (fb, *pb) in _CORPUS_PRODUCTS:
        specs.append(direct_product(builtin(fa, *pa), builtin(fb, *pb)))
    return specs


def save_specs(specs: list[GroupSpec], path) -> None:
    doc = {"format": FORMAT, "version": VERSION, "groups": [s.to_json() for s in specs]}
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_specs(path, verify: bool = False) -> list[GroupSpec]:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return parse_catalog(doc, source=str(path), verify=verify)


def parse_catalog(doc, source: str = "<catalog>", verify: bool = False) -> list[GroupSpec]:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise CatalogError(f"{source}: missing header field 'format': {FORMAT!r}")
    if doc.get("version") != VERSION:
        raise CatalogError(f"{source}: unsupported version {doc.get('version')!r}")
    groups = doc.get("groups")
    if not isinstance(groups, list):
        raise CatalogError(f"{source}: field 'groups' must be a list")
    specs = []
    seen = set()
    for k, rec in enumerate(groups):
        where = f"{source}: groups[{k}]"
        if not isinstance(rec, dict):
            raise CatalogError(f"{where}: record must be an object")
        for fld, typ in (("name", str), ("degree", int), ("generators", list)):
            if not isinstance(rec.get(fld), typ) or isinstance(rec.get(fld), bool):
                raise CatalogError(f"{where}: field '{fld}' missing or not {typ.__name__}")
        name, degree = rec["name"], rec["degree"]
        if name in seen:
            raise CatalogError(f"{where}: duplicate name {name!r}")
        seen.add(name)
        if degree < 1:
            raise CatalogError(f"{where}: field 'degree' must be positive")
        gens = []
        for j, g in enumerate(rec["generators"]):
            if not isinstance(g, list) or not all(isinstance(x, int) for x in g):
                raise CatalogError(f"{where}: generator {j} must be a list of integers")
            if len(g) != degree:
                raise CatalogError(f"{where}: generator {j} has length {len(g)}, expected {degree}")
            if sorted(g) != list(range(degree)):
                raise CatalogError(f"{where}: generator {j} not a bijection")
            gens.append(tuple(g))
        tags = rec.get("tags", [])
        if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
            raise CatalogError(f"{where}: field 'tags' must be a list of strings")
        spec = GroupSpec(name, degree, tuple(gens), tuple(tags))
        if verify:
            check_tags(spec)
        specs.append(spec)
    return specs


_TAG_RE = re.compile(r"^(non-)?(\d+)-nilpotent$")


def check_tags(spec: GroupSpec, G: Group | None = None) -> None:
    """Raise :class:`CatalogError` when a recognized tag is false for the group."""
    from .charsub import is_abelian, is_nilpotent, is_p_nilpotent, prime_factors

    if not spec.tags:
        return
    G = spec.build() if G is None else G
    for tag in spec.tags:
        m = _TAG_RE.match(tag)
        if m:
            ok = is_p_nilpotent(G, int(m.group(2))) != bool(m.group(1))
        elif tag == "abelian":
            ok = is_abelian(G)
        elif tag == "nilpotent":
            ok = is_nilpotent(G)
        elif tag == "p-group":
            ok = len(prime_factors(G.order)) <= 1
        else:
            continue
        if not ok:
            raise CatalogError(f"{spec.name}: tag {tag!r} does not hold")


def resolve(name: str, specs: list[GroupSpec] | None = None) -> GroupSpec:
    """Find a group by catalog name, falling back to the default corpus."""
    for s in (specs or []) + default_corpus():
        if s.name == name:
            return s
    extra = {"A6": alternating(6), "S6": symmetric(6), "Q32": quaternion(5)}
    if name in extra:
        return extra[name]
    raise CatalogError(f"unknown group {name!r}")
