"""Finite groups as full multiplication tables.

Elements are integer ids; id 0 is always the identity.  Permutations
compose left to right: ``(p * q)[x] == q[p[x]]``, so a word read left to
right is applied in the same order.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, ResourceError

DEFAULT_MAX_ORDER = 100_000


def max_order_bound() -> int:
    """Group-size bound, overridable with ``HAMCAYLEY_MAX_ORDER``."""
    raw = os.environ.get("HAMCAYLEY_MAX_ORDER")
    return int(raw) if raw else DEFAULT_MAX_ORDER


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``mult[a][b]`` is the id of ``a*b``; ``inv[a]`` the id of ``a**-1``.
    ``generators`` is a (not necessarily minimal) generating tuple of ids
    and ``labels`` gives a printable name per element.
    """

    def __init__(self, mult, inv=None, labels=None, generators=None, name=""):
        table = np.asarray(mult, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ContractViolation("multiplication table must be square")
        if n == 0:
            raise ContractViolation("a group has at least one element")
        if not (np.array_equal(table[0], np.arange(n)) and np.array_equal(table[:, 0], np.arange(n))):
            raise ContractViolation("id 0 must be the two-sided identity")
        if inv is None:
            rows, cols = np.nonzero(table == 0)
            inv_arr = np.empty(n, dtype=np.int64)
            inv_arr[rows] = cols
        else:
            inv_arr = np.asarray(inv, dtype=np.int64)
        if not np.all(table[np.arange(n), inv_arr] == 0):
            raise ContractViolation("inverse table is not the inverse under mult")
        self.table = table
        self.mult: list[list[int]] = table.tolist()
        self.inv: list[int] = inv_arr.tolist()
        self.order = n
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        self.name = name
        self._generators = tuple(generators) if generators is not None else None

    def __repr__(self):
        return f"FiniteGroup(name={self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def identity(self) -> int:
        return 0

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = greedy_generators(self)
        return self._generators

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def product(self, elements: Iterable[int]) -> int:
        g = 0
        mult = self.mult
        for x in elements:
            g = mult[g][x]
        return g

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        result, base = 0, a
        while k:
            if k & 1:
                result = self.mult[result][base]
            base = self.mult[base][base]
            k >>= 1
        return result

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        inv, mult = self.inv, self.mult
        return mult[mult[mult[inv[a]][inv[b]]][a]][b]

    def conjugate(self, a: int, g: int) -> int:
        """``g^-1 a g``."""
        return self.mult[self.mult[self.inv[g]][a]][g]

    @cached_property
    def element_orders(self) -> list[int]:
        orders = [0] * self.order
        for g in range(self.order):
            if orders[g]:
                continue
            k, x = 1, g
            while x != 0:
                x = self.mult[x][g]
                k += 1
            orders[g] = k
        return orders

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def check_associative(self, samples: int | None = None, seed: int = 0) -> bool:
        """Exhaustive check, or ``samples`` random triples when given."""
        t = self.table
        if samples is None:
            # [a, b, c] -> (a*b)*c  versus  a*(b*c)
            return bool(np.array_equal(t[t], t[:, t]))
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, self.order, size=(3, samples))
        return bool(np.array_equal(t[t[a, b], c], t[a, t[b, c]]))

    def element(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None


def greedy_generators(G: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    current = frozenset([0])
    for g in range(G.order):
        if g not in current:
            gens.append(g)
            current = _closure(G, gens)
            if len(current) == G.order:
                break
    return tuple(gens)


# ---------------------------------------------------------------------------
# construction


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(q[x] for x in p)


def generate_group(generators: Sequence[Sequence[int]], points: int | None = None,
                   max_order: int | None = None, names: Sequence[str] | None = None,
                   name: str = "") -> FiniteGroup:
    """Close a list of permutations under composition.

    Elements are numbered breadth-first by word length, ties broken by
    generator index; ``group.generators[i]`` is the id of ``generators[i]``.
    """
    bound = max_order_bound() if max_order is None else max_order
    perms = [tuple(int(x) for x in p) for p in generators]
    if points is None:
        points = len(perms[0]) if perms else 0
    for p in perms:
        if len(p) != points or sorted(p) != list(range(points)):
            raise ContractViolation(f"not a permutation of {points} points: {list(p)}")
    identity = tuple(range(points))
    index = {identity: 0}
    elements = [identity]
    labels = ["e"]
    parent = [(-1, -1)]
    gen_names = list(names) if names is not None else [f"s{i}" for i in range(len(perms))]
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for j, p in enumerate(perms):
            y = _compose(elements[x], p)
            if y not in index:
                if len(elements) >= bound:
                    raise ResourceError(f"group order exceeds bound {bound}")
                index[y] = len(elements)
                elements.append(y)
                parent.append((x, j))
                labels.append(gen_names[j] if x == 0 else f"{labels[x]}*{gen_names[j]}")
                queue.append(index[y])
    n = len(elements)
    # right multiplication by each generator, then the full table column by column
    rmul = np.array([[index[_compose(e, p)] for e in elements] for p in perms], dtype=np.int64).reshape(len(perms), n)
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for y in range(1, n):
        x, j = parent[y]
        table[:, y] = rmul[j][table[:, x]]
    gen_ids = tuple(index[p] for p in perms)
    G = FiniteGroup(table, labels=labels, generators=gen_ids, name=name)
    G.permutations = elements
    return G


def group_from_table(table, inverse=None, labels=None, name="") -> FiniteGroup:
    """Build a group from a raw table, relabelling so the identity gets id 0."""
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    if t.ndim != 2 or t.shape != (n, n) or t.min() < 0 or t.max() >= n:
        raise ContractViolation("table must be an n x n array of ids in range")
    ident = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
    if not ident:
        raise ContractViolation("table has no identity element")
    e = ident[0]
    perm = np.arange(n)
    perm[0], perm[e] = e, 0          # perm[new] = old
    old_to_new = np.argsort(perm)
    new = old_to_new[t[np.ix_(perm, perm)]]
    inv = None
    if inverse is not None:
        inv = old_to_new[np.asarray(inverse, dtype=np.int64)[perm]]
    new_labels = [labels[i] for i in perm] if labels is not None else None
    return FiniteGroup(new, inv, labels=new_labels, name=name)


# ---------------------------------------------------------------------------
# subgroups


def _closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in set(gens) if g != 0]
    members = {0}
    queue = deque([0])
    mult = G.mult
    while queue:
        x = queue.popleft()
        row = mult[x]
        for g in gens:
            y = row[g]
            if y not in members:
                members.add(y)
                queue.append(y)
    return frozenset(members)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g) -> bool:
        return g in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={sorted(self.members)[:8]}{'...' if self.order > 8 else ''})"

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conjugate(k, g) in self.members for g in G.generators for k in self.members)

    def index(self) -> int:
        return self.parent.order // self.order


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, _closure(G, gens))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(range(G.order)))


def trivial(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset([0]))


def intersection(H: Subgroup, K: Subgroup) -> Subgroup:
    return Subgroup(H.parent, H.members & K.members)


def join(*subgroups: Subgroup, elements: Iterable[int] = ()) -> Subgroup:
    G = subgroups[0].parent
    gens: set[int] = set(elements)
    for H in subgroups:
        gens |= H.members
    return subgroup_generated(G, gens)


def normal_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    members = set(_closure(G, gens))
    while True:
        extra = {G.conjugate(k, g) for k in members for g in G.generators} - members
        if not extra:
            return Subgroup(G, frozenset(members))
        members = set(_closure(G, members | extra))


def commutator(G: FiniteGroup, s: int, t: int) -> int:
    return G.commutator(s, t)


def commutator_of(H: Subgroup, K: Subgroup) -> Subgroup:
    """``[H, K]`` for K normal (or H normal) in the parent group."""
    G = H.parent
    hs = subgroup_generators(H)
    ks = subgroup_generators(K)
    return normal_closure(G, (G.commutator(h, k) for h in hs for k in ks))


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    gens = G.generators
    return normal_closure(G, (G.commutator(s, t) for s in gens for t in gens))


def subgroup_generators(H: Subgroup) -> tuple[int, ...]:
    G = H.parent
    gens: list[int] = []
    current = frozenset([0])
    for g in sorted(H.members):
        if g not in current:
            gens.append(g)
            current = _closure(G, gens)
            if len(current) == H.order:
                break
    return tuple(gens)


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    series = [whole(G)]
    full = whole(G)
    while True:
        nxt = commutator_of(series[-1], full)
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)
        if nxt.is_trivial():
            return series


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1].is_trivial()


def center(G: FiniteGroup) -> Subgroup:
    gens = G.generators
    return Subgroup(G, frozenset(z for z in range(G.order) if all(G.mult[z][g] == G.mult[g][z] for g in gens)))


def is_cyclic(H: Subgroup) -> tuple[bool, int | None]:
    """Return ``(True, generator)`` or ``(False, None)``."""
    G = H.parent
    for g in sorted(H.members):
        if G.element_order(g) == H.order:
            return True, g
    return False, None


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


# ---------------------------------------------------------------------------
# cyclic-subgroup arithmetic


def _radical(n: int) -> int:
    r, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            r *= p
            while m % p == 0:
                m //= p
        p += 1
    return r * m if m > 1 else r


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_square_free(n: int) -> bool:
    return _radical(n) == n


def _cyclic_generator(N: Subgroup) -> int:
    ok, gen = is_cyclic(N)
    if not ok:
        raise ContractViolation("subgroup is not cyclic")
    return gen


def subgroup_of_order(N: Subgroup, d: int) -> Subgroup:
    """The unique subgroup of order ``d`` in a cyclic subgroup."""
    if N.order % d:
        raise ContractViolation(f"{d} does not divide |N| = {N.order}")
    gen = _cyclic_generator(N)
    return subgroup_generated(N.parent, [N.parent.power(gen, N.order // d)])


def frattini_of_cyclic(N: Subgroup) -> Subgroup:
    """Intersection of the maximal subgroups: the subgroup of index rad(|N|)."""
    _cyclic_generator(N)
    return subgroup_of_order(N, N.order // _radical(N.order))


def complement_in_cyclic(N: Subgroup, K: Subgroup) -> Subgroup:
    """The unique ``K_perp`` with ``N = K x K_perp`` (|N| square-free)."""
    if not is_square_free(N.order):
        raise ContractViolation(f"|N| = {N.order} is not square-free")
    if not K <= N:
        raise ContractViolation("K is not contained in N")
    return subgroup_of_order(N, N.order // K.order)


def squares(H: Subgroup) -> Subgroup:
    """``H^2`` for an abelian subgroup."""
    G = H.parent
    return subgroup_generated(G, (G.mult[h][h] for h in H.members))


def generates_subgroup_containing(G: FiniteGroup, elements: Iterable[int], K: Subgroup) -> bool:
    return K.members <= subgroup_generated(G, elements).members


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientMap:
    source: FiniteGroup = field(repr=False)
    kernel: Subgroup = field(repr=False)
    target: FiniteGroup = field(repr=False)
    image: tuple[int, ...] = field(repr=False)

    def __call__(self, g: int) -> int:
        return self.image[g]

    def coset(self, v: int) -> list[int]:
        return [g for g, w in enumerate(self.image) if w == v]

    def representative(self, v: int) -> int:
        return self._reps[v]

    @cached_property
    def _reps(self) -> list[int]:
        reps = [-1] * self.target.order
        for g, v in enumerate(self.image):
            if reps[v] < 0:
                reps[v] = g
        return reps


def quotient(G: FiniteGroup, K: Subgroup) -> QuotientMap:
    """Natural map ``G -> G/K``; cosets numbered by their least member."""
    if not K.is_normal():
        raise ContractViolation("kernel is not a normal subgroup")
    image = [-1] * G.order
    reps: list[int] = []
    kmembers = sorted(K.members)
    for g in range(G.order):
        if image[g] < 0:
            c = len(reps)
            reps.append(g)
            for k in kmembers:
                image[G.mult[g][k]] = c
    m = len(reps)
    table = [[image[G.mult[a][b]] for b in reps] for a in reps]
    labels = [G.labels[r] if K.order == 1 else f"{G.labels[r]}N" for r in reps]
    gens = sorted({image[g] for g in G.generators} - {0})
    target = FiniteGroup(table, labels=labels, generators=gens or None, name=f"{G.name}/K" if G.name else "")
    return QuotientMap(G, K, target, tuple(image))


def identity_quotient(G: FiniteGroup) -> QuotientMap:
    return QuotientMap(G, trivial(G), G, tuple(range(G.order)))


def index(H: Subgroup, K: Subgroup) -> int:
    if not K <= H:
        raise ContractViolation("not a subgroup")
    return H.order // K.order


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
