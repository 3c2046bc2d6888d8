from __future__ import annotations

import random
from functools import lru_cache

import pytest

from hamcayley import catalog as cat
from hamcayley.builder import snake_cycle
from hamcayley.cayley import Letter, edges, reverse, rotate_start, translate
from hamcayley.group_core import FiniteGroup, center, commutator_subgroup, quotient, subgroup_generated


@lru_cache(maxsize=None)
def all_entries() -> tuple[cat.CatalogEntry, ...]:
    return tuple(cat.catalog()) + tuple(cat.load_group(p) for p in cat.ingested_files())


def random_generating_set(G: FiniteGroup, rng: random.Random, max_size: int = 4) -> list[int]:
    """Random non-identity elements, grown until they generate G."""
    pool = list(range(1, G.order))
    S = rng.sample(pool, min(rng.randint(1, max_size), len(pool)))
    while subgroup_generated(G, S).order < G.order:
        extra = rng.choice(pool)
        if extra not in S:
            S.append(extra)
    return S


def label_names(G: FiniteGroup, S: list[int]) -> list[str]:
    return [G.labels[s] for s in S]


@pytest.fixture(scope="session")
def entries() -> tuple[cat.CatalogEntry, ...]:
    return all_entries()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261015)


def word_product(G: FiniteGroup, S: list[int], w) -> int:
    """Product of the letters of ``w`` in G, computed straight from the table."""
    g = 0
    for x in w:
        g = G.mult[g][S[x.gen] if x.sign > 0 else G.inv[S[x.gen]]]
    return g


def central_commutator_entries() -> list[cat.CatalogEntry]:
    out = []
    for e in all_entries():
        D = commutator_subgroup(e.group)
        if D.order > 1 and D.members <= center(e.group).members:
            out.append(e)
    return out


def connected_sum_instance(entry: cat.CatalogEntry, rng: random.Random, tries: int = 50):
    """Random ``(c1, c2, g, s, a)`` valid for a connected sum over ``G/G'``, or None."""
    G = entry.group
    q = quotient(G, commutator_subgroup(G))
    T = q.target
    for _ in range(tries):
        S = random_generating_set(G, rng)
        S = [s for s in S if q(s) != 0]
        if len(S) < 2:
            continue
        ai = rng.randrange(len(S))
        others = [j for j in range(len(S)) if j != ai]
        H = subgroup_generated(T, [q(S[j]) for j in others])
        abar = q(S[ai])
        if abar in H.members:
            continue
        rng.shuffle(others)
        c1 = snake_cycle(q, S, others)
        c1 = rotate_start(translate(c1, rng.choice(sorted(H.members))), rng.randrange(len(c1.word)))
        rng.shuffle(others)
        other = snake_cycle(q, S, others)
        pool = [reverse(c1), reverse(other), other]
        c2 = translate(rng.choice(pool), T.mult[abar][rng.choice(sorted(H.members))])
        partner = set(edges(c2))
        a = Letter(ai, rng.choice((1, -1)))
        astep = c1.step(a)
        hits = [(g, s) for g, s in edges(c1)
                if (T.mult[T.mult[g][c1.step(s)]][astep], s.inverse()) in partner]
        if hits:
            g, s = rng.choice(hits)
            return G, S, c1, c2, g, s, a
    return None
