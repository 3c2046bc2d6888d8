"""Test corpus of nilpotent groups with cyclic commutator subgroup.

Every family is written as a normal form plus a multiplication rule; the
group itself is then realized by the right regular permutation action of
its named generators and closed with :func:`generate_group`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Hashable, Sequence

from .errors import ContractViolation, ParseError
from .group_core import (
    FiniteGroup,
    commutator_subgroup,
    generate_group,
    group_from_table,
    is_cyclic,
    is_nilpotent,
    prime_factors,
)


@dataclass
class CatalogEntry:
    name: str
    group: FiniteGroup
    generators: dict[str, int]
    suggested_generating_sets: list[list[str]]
    expected: dict = field(default_factory=dict)
    description: str = ""

    def elements_of(self, names: Sequence[str]) -> list[int]:
        return [self.generators[n] for n in names]


def _realize(elements: Sequence[Hashable], mul: Callable, gens: dict[str, Hashable], name: str) -> tuple[FiniteGroup, dict[str, int]]:
    index = {x: i for i, x in enumerate(elements)}
    perms = [[index[mul(x, g)] for x in elements] for g in gens.values()]
    G = generate_group(perms, points=len(elements), names=list(gens), name=name)
    named = {n: G.generators[i] for i, n in enumerate(gens)}
    return G, named


# ---------------------------------------------------------------------------
# families


def cyclic(n: int) -> tuple[FiniteGroup, dict[str, int]]:
    if n < 1:
        raise ContractViolation("cyclic order must be positive")
    return _realize(range(n), lambda x, y: (x + y) % n, {"g": 1 % n}, f"C{n}")


def symmetric3() -> tuple[FiniteGroup, dict[str, int]]:
    """S3, used only as a non-nilpotent counterexample."""
    G = generate_group([(1, 0, 2), (1, 2, 0)], names=["t", "c"], name="S3")
    return G, {"t": G.generators[0], "c": G.generators[1]}


def dihedral_2power(n: int) -> tuple[FiniteGroup, dict[str, int]]:
    """Dihedral group of order ``2n`` (symmetries of an n-gon), n a power of 2.

    Normal form ``r^i s^f``; ``s r s = r^-1``.
    """
    if n < 2 or n & (n - 1):
        raise ContractViolation("dihedral_2power needs n a power of 2, n >= 2")

    def mul(x, y):
        (i1, f1), (i2, f2) = x, y
        return ((i1 + (-i2 if f1 else i2)) % n, f1 ^ f2)

    elems = [(i, f) for f in range(2) for i in range(n)]
    return _realize(elems, mul, {"r": (1, 0), "s": (0, 1)}, f"D{n}")


def generalized_quaternion(order: int) -> tuple[FiniteGroup, dict[str, int]]:
    """``Q_{2^k} = <x, y | x^(2n), y^2 = x^n, y^-1 x y = x^-1>`` with 4n = order."""
    if order < 8 or order & (order - 1):
        raise ContractViolation("generalized_quaternion needs order a power of 2, >= 8")
    n2 = order // 2
    n = n2 // 2

    def mul(x, y):
        (i1, f1), (i2, f2) = x, y
        i = i1 + (-i2 if f1 else i2)
        if f1 and f2:
            return ((i + n) % n2, 0)
        return (i % n2, f1 ^ f2)

    elems = [(i, f) for f in range(2) for i in range(n2)]
    return _realize(elems, mul, {"i": (1, 0), "j": (0, 1)}, f"Q{order}")


def heisenberg_mod_p(p: int) -> tuple[FiniteGroup, dict[str, int]]:
    """Upper unitriangular 3x3 matrices over Z/p: ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``."""
    if p < 2 or prime_factors(p) != [p]:
        raise ContractViolation("heisenberg_mod_p needs a prime")

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    elems = list(itertools.product(range(p), repeat=3))
    return _realize(elems, mul, {"x": (1, 0, 0), "y": (0, 1, 0)}, f"Heis{p}")


def modular_maximal_cyclic(order: int, p: int = 2) -> tuple[FiniteGroup, dict[str, int]]:
    """``M_{p^k} = <x, y | x^(p^(k-1)), y^p, y x y^-1 = x^(1+p^(k-2))>``."""
    k = 0
    q = order
    while q % p == 0:
        q //= p
        k += 1
    if q != 1 or k < (4 if p == 2 else 3):
        raise ContractViolation("modular_maximal_cyclic needs p^k with k >= 4 (p = 2) or k >= 3")
    nx = p ** (k - 1)
    u = 1 + p ** (k - 2)

    def mul(x, y):
        (i1, f1), (i2, f2) = x, y
        return ((i1 + i2 * pow(u, f1, nx)) % nx, (f1 + f2) % p)

    elems = [(i, f) for f in range(p) for i in range(nx)]
    return _realize(elems, mul, {"x": (1, 0), "y": (0, 1)}, f"M{order}")


def extraspecial(p: int, kind: str = "+", rank: int = 1) -> tuple[FiniteGroup, dict[str, int]]:
    """Extraspecial group of order ``p^(1+2*rank)``.

    Elements are ``(v, c)`` with ``v`` in ``F_p^(2 rank)``, multiplied by a
    bilinear cocycle ``beta``.  For p = 2, ``kind`` picks the type of the
    quadratic form ``beta(v, v)``; for odd p, ``"+"`` is exponent p and
    ``"-"`` is the exponent-p^2 group (rank 1 only).
    """
    if kind not in "+-" or len(kind) != 1 or rank < 1:
        raise ContractViolation("extraspecial needs kind '+' or '-' and rank >= 1")
    if p != 2 and kind == "-":
        if rank != 1:
            raise ContractViolation("odd extraspecial of exponent p^2 only for rank 1")
        return modular_maximal_cyclic(p ** 3, p)
    dim = 2 * rank

    def beta(v, w):
        total = sum(v[2 * i] * w[2 * i + 1] for i in range(rank))
        if p == 2 and kind == "-":
            total += v[dim - 2] * w[dim - 2] + v[dim - 1] * w[dim - 1]
        return total % p

    def mul(x, y):
        (v, c), (w, d) = x, y
        return (tuple((a + b) % p for a, b in zip(v, w)), (c + d + beta(v, w)) % p)

    elems = [(v, c) for v in itertools.product(range(p), repeat=dim) for c in range(p)]
    gens = {}
    for i in range(rank):
        for letter, pos in (("a", 2 * i), ("b", 2 * i + 1)):
            v = tuple(1 if j == pos else 0 for j in range(dim))
            gens[f"{letter}{i + 1}"] = (v, 0)
    return _realize(elems, mul, gens, f"{p}^(1+{dim}){kind}")


def direct_product(A: tuple[FiniteGroup, dict[str, int]], B: tuple[FiniteGroup, dict[str, int]]) -> tuple[FiniteGroup, dict[str, int]]:
    """Direct product; generator names are kept (suffixed on collision)."""
    GA, na = A
    GB, nb = B
    elems = [(a, b) for a in range(GA.order) for b in range(GB.order)]

    def mul(x, y):
        return (GA.mult[x[0]][y[0]], GB.mult[x[1]][y[1]])

    gens = {n: (g, 0) for n, g in na.items()}
    for n, g in nb.items():
        key = n
        while key in gens:
            key += "'"
        gens[key] = (0, g)
    return _realize(elems, mul, gens, f"{GA.name}x{GB.name}")


# ---------------------------------------------------------------------------
# named corpus


def _with_names(pair, extra: dict[str, list[str]]):
    """Add derived named elements given as words in existing generator names."""
    G, named = pair
    for name, word in extra.items():
        named[name] = G.product(named[w] for w in word)
    return G, named


def _builtin_specs():
    C = cyclic
    return {
        "C12": (lambda: C(12), [["g"]]),
        "C2xC6": (lambda: direct_product(C(2), C(6)), [["g", "g'"]]),
        "C4xC6": (lambda: direct_product(C(4), C(6)), [["g", "g'"]]),
        "D4": (lambda: _with_names(dihedral_2power(4), {"rs": ["r", "s"]}), [["r", "s"], ["r", "s", "rs"]]),
        "Q8": (lambda: _with_names(generalized_quaternion(8), {"k": ["i", "j"]}), [["i", "j"], ["i", "j", "k"]]),
        "D8": (lambda: dihedral_2power(8), [["r", "s"]]),
        "Q16": (lambda: generalized_quaternion(16), [["i", "j"]]),
        "M16": (lambda: modular_maximal_cyclic(16), [["x", "y"]]),
        "D16": (lambda: dihedral_2power(16), [["r", "s"]]),
        "D4xC2": (lambda: _with_names(direct_product(dihedral_2power(4), C(2)), {"rsg": ["r", "s", "g"]}),
                  [["r", "s", "g"], ["r", "s", "rsg"]]),
        "D4xC3": (lambda: _with_names(direct_product(dihedral_2power(4), C(3)), {"rg": ["r", "g"]}),
                  [["r", "s", "g"], ["rg", "s"]]),
        "Q8xC3": (lambda: direct_product(generalized_quaternion(8), C(3)), [["i", "j", "g"]]),
        "Q8xC5": (lambda: _with_names(direct_product(generalized_quaternion(8), C(5)), {"ig": ["i", "g"]}),
                  [["i", "j", "g"], ["ig", "j"]]),
        "D8xC3": (lambda: direct_product(dihedral_2power(8), C(3)), [["r", "s", "g"]]),
        "M16xC3": (lambda: _with_names(direct_product(modular_maximal_cyclic(16), C(3)), {"xg": ["x", "g"]}),
                   [["x", "y", "g"], ["xg", "y"]]),
        "ES32+": (lambda: _with_names(extraspecial(2, "+", 2), {"c": ["a1", "b1", "a2"], "d": ["a1", "b1", "b2"]}),
                  [["a1", "b1", "a2", "b2"], ["a1", "b1", "c", "d"]]),
        "ES32-": (lambda: extraspecial(2, "-", 2), [["a1", "b1", "a2", "b2"]]),
        "ES32+xC3": (lambda: direct_product(extraspecial(2, "+", 2), C(3)), [["a1", "b1", "a2", "b2", "g"]]),
        "Heis3": (lambda: heisenberg_mod_p(3), [["x", "y"]]),
        "M27": (lambda: modular_maximal_cyclic(27, 3), [["x", "y"]]),
        "Heis3xC3": (lambda: direct_product(heisenberg_mod_p(3), C(3)), [["x", "y", "g"]]),
        "M81": (lambda: modular_maximal_cyclic(81, 3), [["x", "y"]]),
        "Heis3xC2": (lambda: _with_names(direct_product(heisenberg_mod_p(3), C(2)), {"xg": ["x", "g"], "yg": ["y", "g"]}),
                     [["x", "y", "g"], ["xg", "yg"]]),
        "Heis3xC4": (lambda: _with_names(direct_product(heisenberg_mod_p(3), C(4)), {"xg": ["x", "g"]}),
                     [["x", "y", "g"], ["xg", "y"]]),
        "Heis3xC2xC2": (lambda: _with_names(direct_product(direct_product(heisenberg_mod_p(3), C(2)), C(2)),
                                            {"xg": ["x", "g"], "yg": ["y", "g"]}),
                        [["x", "y", "g", "g'"], ["xg", "yg", "g'"]]),
        "Heis3xC5": (lambda: _with_names(direct_product(heisenberg_mod_p(3), C(5)), {"xg": ["x", "g"]}),
                     [["xg", "y"], ["x", "y", "g"]]),
        "Heis5": (lambda: heisenberg_mod_p(5), [["x", "y"]]),
        "Heis3xD4": (lambda: direct_product(heisenberg_mod_p(3), dihedral_2power(4)), [["x", "y", "r", "s"]]),
        "Heis3xQ8": (lambda: _with_names(direct_product(heisenberg_mod_p(3), generalized_quaternion(8)),
                                         {"xi": ["x", "i"], "yj": ["y", "j"]}),
                     [["x", "y", "i", "j"], ["xi", "yj"]]),
        "Q8xC3xC3xC3": (lambda: _with_names(
            direct_product(direct_product(direct_product(generalized_quaternion(8), C(3)), C(3)), C(3)),
            {"u": ["i", "g"], "v": ["j", "g'"], "w": ["i", "j", "g''"]}), [["u", "v", "w"]]),
    }


def builtin_names() -> list[str]:
    return list(_builtin_specs())


def build(name: str) -> CatalogEntry:
    specs = _builtin_specs()
    if name == "S3":
        G, named = symmetric3()
        return CatalogEntry("S3", G, named, [["t", "c"]], {"nilpotent": False, "commutator_cyclic": True, "commutator_order": 3})
    if name not in specs:
        raise KeyError(f"unknown catalog group {name!r}; known: {', '.join(specs)}")
    ctor, gensets = specs[name]
    G, named = ctor()
    G.name = name
    entry = CatalogEntry(name, G, named, gensets)
    entry.expected = recompute_properties(G)
    return entry


def catalog() -> list[CatalogEntry]:
    return [build(n) for n in builtin_names()]


# ---------------------------------------------------------------------------
# properties and validation


def recompute_properties(G: FiniteGroup) -> dict:
    D = commutator_subgroup(G)
    return {
        "nilpotent": is_nilpotent(G),
        "commutator_cyclic": is_cyclic(D)[0],
        "commutator_order": D.order,
    }


@dataclass
class ValidationReport:
    name: str
    ok: bool
    recomputed: dict
    mismatches: list[str]

    def __str__(self):
        status = "ok" if self.ok else "MISMATCH " + "; ".join(self.mismatches)
        return f"{self.name}: {status}"


def validate_entry(entry: CatalogEntry) -> ValidationReport:
    got = recompute_properties(entry.group)
    mismatches = [f"{k}: expected {v!r}, recomputed {got[k]!r}" for k, v in entry.expected.items() if k in got and got[k] != v]
    for gens in entry.suggested_generating_sets:
        missing = [g for g in gens if g not in entry.generators]
        if missing:
            mismatches.append(f"unknown generator names {missing}")
    return ValidationReport(entry.name, not mismatches, got, mismatches)


def group_from_json(data: dict, name: str = "") -> CatalogEntry:
    """Parse the ingestion format (permutation or table form)."""
    try:
        if "generators" in data:
            points = int(data["points"])
            perms = [list(map(int, p)) for p in data["generators"]]
            names = list(data.get("names") or [f"s{i}" for i in range(len(perms))])
            if len(names) != len(perms):
                raise ParseError("names and generators differ in length")
            for p in perms:
                if len(p) != points or sorted(p) != list(range(points)):
                    raise ParseError(f"generator {p} is not a bijection on {points} points")
            G = generate_group(perms, points=points, names=names, name=name)
            named = {n: G.generators[i] for i, n in enumerate(names)}
        elif "table" in data:
            labels = data.get("labels")
            G = group_from_table(data["table"], data.get("inverse"), labels=labels, name=name)
            named = {lab: i for i, lab in enumerate(G.labels)}
        else:
            raise ParseError("group file needs 'generators' or 'table'")
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, ContractViolation) as exc:
        raise ParseError(f"cannot parse group: {exc}") from exc
    gensets = [list(s) for s in data.get("generating_sets", [])]
    if not gensets and "generators" in data:
        gensets = [list(named)]
    entry = CatalogEntry(name or data.get("name", ""), G, named, gensets)
    entry.expected = dict(data.get("expected") or recompute_properties(G))
    entry.description = data.get("description", "")
    return entry


def load_group(path) -> CatalogEntry:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return group_from_json(data, name=data.get("name", path.stem))


def ingested_files() -> list[Path]:
    root = resources.files("hamcayley") / "data" / "groups"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json"))


def resolve(name_or_path: str) -> CatalogEntry:
    """Catalog name, bundled file stem, or path to a JSON group file."""
    known = {n.lower(): n for n in list(_builtin_specs()) + ["S3"]}
    if name_or_path.lower() in known:
        return build(known[name_or_path.lower()])
    for p in ingested_files():
        if p.stem == name_or_path:
            return load_group(p)
    return load_group(name_or_path)
