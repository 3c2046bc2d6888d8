"""Merging cycles on parallel cosets by connected sums."""

from __future__ import annotations

from typing import Sequence

from ..cayley import Letter, OrientedCycle, connected_sum, covers, edges, reverse, run, translate
from ..errors import ContractViolation, InvariantFailure
from ..group_core import QuotientMap, subgroup_generated


def _layer_partner(acc: OrientedCycle, layer: OrientedCycle, a: Letter, allowed_tails: set[int], labels: set[int]):
    """First edge ``g(s)`` of ``acc`` with tail in ``allowed_tails`` whose partner ``(g s a)(s^-1)`` is in ``layer``."""
    T = acc.quotient.target
    abar = acc.step(a)
    partner = set(edges(layer))
    for g, s in edges(acc):
        if g not in allowed_tails or s.gen not in labels:
            continue
        gsa = T.mult[T.mult[g][acc.step(s)]][abar]
        if (gsa, s.inverse()) in partner:
            return g, s
    return None


def snake_cycle(quotient: QuotientMap, gens: Sequence[int], indices: Sequence[int]) -> OrientedCycle:
    """A hamiltonian cycle on ``<images of gens[indices]>`` in an abelian target.

    Built generator by generator: the previous cycle is copied onto each
    coset of the next generator with alternating orientation, and the
    copies are merged one after another by connected sums.
    """
    T = quotient.target
    if not T.is_abelian():
        raise ContractViolation("snake_cycle needs an abelian quotient")
    gens = tuple(gens)
    img = [quotient.image[g] for g in gens]
    first = indices[0]
    n1 = T.element_order(img[first])
    # an involution is walked out and back so both labels occur
    w = run(first, 1) + run(first, -1) if n1 == 2 else run(first, n1)
    cyc = OrientedCycle(quotient, gens, 0, w)
    done = [first]
    for idx in indices[1:]:
        H = subgroup_generated(T, (img[j] for j in done))
        a = Letter(idx, 1)
        abar = img[idx]
        m = subgroup_generated(T, (img[j] for j in done + [idx])).order // H.order
        if m == 1:
            continue
        acc = cyc
        layer_prev = set(H.members)
        step = 0
        for j in range(1, m):
            step = T.mult[step][abar]
            base = cyc if j % 2 == 0 else reverse(cyc)
            layer = translate(base, step)
            hit = _layer_partner(acc, layer, a, layer_prev, set(done))
            if hit is None:
                raise InvariantFailure("no gluing edge between consecutive layers")
            acc = connected_sum(acc, layer, hit[0], hit[1], a)
            layer_prev = {T.mult[step][h] for h in H.members}
        cyc = acc
        done.append(idx)
    return cyc


def glue_family(cycles: Sequence[OrientedCycle], stars: Sequence[Letter], a_index: int,
                level_members: frozenset | set) -> OrientedCycle:
    """Glue ``a C_1 # a^2 g_2 C_2 # ... # a^m g_m C_m`` along the letters ``stars``.

    Each ``C_i`` is a cycle on the subgroup ``level_members`` covering the
    generators below ``a_index``, which names the new generator.  With a
    central kernel the voltage of the result is the product of the
    voltages times ``prod [a, s_i*]``.
    """
    m = len(cycles)
    if len(stars) != m - 1:
        raise ContractViolation(f"need {m - 1} gluing letters, got {len(stars)}")
    if m == 0:
        raise ContractViolation("nothing to glue")
    q = cycles[0].quotient
    T = q.target
    gens = cycles[0].gens
    a = Letter(a_index, 1)
    abar = q.image[gens[a_index]]
    for i, c in enumerate(cycles):
        if c.quotient is not q or c.gens != gens:
            raise ContractViolation("cycles live in different Cayley graphs")
        if not covers(c.word, range(a_index)):
            raise ContractViolation(f"cycle {i + 1} does not cover the lower generators")
    acc = translate(cycles[0], abar)
    layer = {T.mult[abar][v] for v in level_members}
    power = abar
    if m == 1:
        return acc
    hit = _find(acc, stars[0], layer)
    if hit is None:
        raise ContractViolation(f"first cycle lacks an edge labelled {stars[0]}")
    for i in range(1, m):
        s = stars[i - 1]
        sbar = q.image[gens[s.gen]] if s.sign > 0 else T.inv[q.image[gens[s.gen]]]
        power = T.mult[power][abar]
        target_vertex = T.mult[T.mult[hit][sbar]][abar]
        c = cycles[i]
        found = _find(c, s.inverse(), None)
        if found is None:
            raise ContractViolation(f"cycle {i + 1} lacks an edge labelled {s.inverse()}")
        # translate so that edge y(s^-1) lands on target_vertex
        shift = T.mult[target_vertex][T.inv[found]]
        placed = translate(c, shift)
        acc = connected_sum(acc, placed, hit, s, a)
        if i < m - 1:
            layer = {T.mult[power][v] for v in level_members}
            hit = _find(acc, stars[i], layer)
            if hit is None:
                raise ContractViolation(f"layer {i + 1} lacks an edge labelled {stars[i]}")
    return acc


def _find(cycle: OrientedCycle, label: Letter, tails) -> int | None:
    for v, x in edges(cycle):
        if x == label and (tails is None or v in tails):
            return v
    return None
