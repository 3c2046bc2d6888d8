"""Arithmetic in cyclic groups of square-free order used to steer the constructions."""

from __future__ import annotations

from collections import deque
from typing import Sequence

from ..errors import CaseError, ContractViolation
from ..group_core import FiniteGroup, Subgroup, is_square_free, subgroup_generated

Signed = tuple[int, int]   # (0-based index into T, sign)


def discrete_log(G: FiniteGroup, gamma: int, x: int) -> int:
    """Least ``h >= 0`` with ``gamma**h == x``."""
    y, h = 0, 0
    order = G.element_order(gamma)
    while h < order:
        if y == x:
            return h
        y = G.mult[y][gamma]
        h += 1
    raise ContractViolation("x is not a power of gamma")


def gcd_consecutive_index(G: FiniteGroup, gamma: int, x: int, a: int) -> int:
    """An ``i`` in ``[1, (a-1)//2]`` with ``<gamma^(-2i) x>`` containing ``<gamma>^2``.

    ``gamma`` generates a cyclic group containing ``x``; needs ``a >= max(|gamma|, 5)``.
    """
    n = G.element_order(gamma)
    if a < max(n, 5):
        raise ContractViolation(f"a = {a} is below max(|N|, 5) = {max(n, 5)}")
    if n == 1:
        return 1
    h = discrete_log(G, gamma, x)
    if h == 0:
        h = n
    r = 1 if (h - 1) % 2 == 0 else 2
    return r if h in (1, 2) else (h - r) // 2


def adjacency_ok(seq: Sequence[Signed]) -> bool:
    """Equal consecutive indices must carry equal signs."""
    return all(not (p[0] == q[0] and p[1] != q[1]) for p, q in zip(seq, seq[1:]))


def sequence_value(G: FiniteGroup, T: Sequence[int], h: int, seq: Sequence[Signed]) -> int:
    v = h
    for j, e in seq:
        v = G.mult[v][T[j] if e == 1 else G.inv[T[j]]]
    return v


def _generates(G: FiniteGroup, y: int, K: Subgroup) -> bool:
    return K.members <= subgroup_generated(G, [y]).members


def _squares(N: Subgroup) -> Subgroup:
    G = N.parent
    return subgroup_generated(G, (G.mult[y][y] for y in N.members))


def contains_n2_sequence(N: Subgroup, T: Sequence[int], h: int, m: int, strict: bool = True) -> tuple[list[Signed], bool]:
    """Choose ``(j_i, sign_i)_{i=1}^{m-1}`` obeying the adjacency rule with ``<h prod gamma_i^*>`` containing ``N^2``.

    Returns the sequence and whether it reaches all of ``N`` (guaranteed when
    ``|N|`` is odd or T is not inside a single coset of ``N^2``).  With
    ``strict=False`` the bound ``m >= |N|`` is not enforced; a ``CaseError``
    is raised if no valid sequence of that length exists.
    """
    G = N.parent
    k = len(T)
    if strict:
        if k < 2:
            raise ContractViolation("need at least two elements in T")
        if m < N.order:
            raise ContractViolation(f"m = {m} is below |N| = {N.order}")
        if not is_square_free(N.order):
            raise ContractViolation("|N| is not square-free")
        if subgroup_generated(G, T).members != N.members:
            raise ContractViolation("T does not generate N")
    length = m - 1
    if N.order == 1:
        return [(0, 1)] * length, True
    N2 = _squares(N)
    for goal, full in ((N, True), (N2, False)):
        if N.order > 3:
            seq = _walk_then_collect(G, T, h, length, goal)
        else:
            seq = None
        if seq is None:
            seq = _exact_search(G, T, h, length, goal)
        if seq is not None:
            return seq, full
    raise CaseError("no adjacency-valid sequence reaches N^2")


def _walk_then_collect(G, T, h, length, goal) -> list[Signed] | None:
    """Shortest walk from e of the right parity to some t with ``<h t>`` containing ``goal``,
    padded with ``gamma_1 gamma_1^-1`` pairs, then reordered to respect adjacency."""
    letters = [(j, e) for j in range(len(T)) for e in (1, -1)]
    elem = {(j, e): (T[j] if e == 1 else G.inv[T[j]]) for j, e in letters}
    want = length % 2
    start = (0, 0)
    prev = {start: None}
    queue = deque([start])
    found = None
    while queue:
        state = queue.popleft()
        t, par = state
        if par == want and _generates(G, G.mult[h][t], goal):
            found = state
            break
        for lt in letters:
            nxt = (G.mult[t][elem[lt]], par ^ 1)
            if nxt not in prev:
                prev[nxt] = (state, lt)
                queue.append(nxt)
    if found is None:
        return None
    walk: list[Signed] = []
    state = found
    while prev[state] is not None:
        state, lt = prev[state]
        walk.append(lt)
    walk.reverse()
    if len(walk) > length:
        return None
    pad = (length - len(walk)) // 2
    counts_pos = [0] * len(T)
    counts_neg = [0] * len(T)
    for j, e in walk:
        (counts_pos if e == 1 else counts_neg)[j] += 1
    counts_pos[0] += pad
    counts_neg[0] += pad
    return _arrange(counts_pos, counts_neg)


def _arrange(pos: list[int], neg: list[int]) -> list[Signed] | None:
    """Lay out ``gamma_j^{pos_j}`` blocks then ``gamma_j^{-neg_j}`` blocks so no letter meets its inverse."""
    P = [j for j, c in enumerate(pos) if c]
    Q = [j for j, c in enumerate(neg) if c]

    def blocks(order_p, order_q):
        out: list[Signed] = []
        for j in order_p:
            out += [(j, 1)] * pos[j]
        for j in order_q:
            out += [(j, -1)] * neg[j]
        return out

    if not P or not Q:
        return blocks(P, Q)
    if len(P) >= 2 and P[-1] == Q[0]:
        P = P[1:] + P[:1]
    elif len(Q) >= 2 and P[-1] == Q[0]:
        Q = Q[1:] + Q[:1]
    if P[-1] != Q[0]:
        return blocks(P, Q)
    # a single index on both sides: gamma^mp gamma^-np = gamma^(mp-1) delta gamma^-(np-1) delta^-1
    p = P[0]
    other = 1 if p == 0 else 0
    mp, np_ = pos[p], neg[p]
    if other >= len(pos):
        return None
    if np_ >= mp and np_ >= 2:
        return [(p, 1)] * (mp - 1) + [(other, 1)] + [(p, -1)] * (np_ - 1) + [(other, -1)]
    if mp >= 2:
        return [(p, -1)] * (np_ - 1) + [(other, -1)] + [(p, 1)] * (mp - 1) + [(other, 1)]
    return None


def _exact_search(G, T, h, length, goal) -> list[Signed] | None:
    """Layered search over ``(value, last letter)`` for a valid sequence of exactly ``length``."""
    letters = [(j, e) for j in range(len(T)) for e in (1, -1)]
    elem = {(j, e): (T[j] if e == 1 else G.inv[T[j]]) for j, e in letters}
    layer = {(h, None): None}
    history = [layer]
    for _ in range(length):
        nxt = {}
        for (val, last) in layer:
            for lt in letters:
                if last is not None and lt[0] == last[0] and lt[1] != last[1]:
                    continue
                key = (G.mult[val][elem[lt]], lt)
                if key not in nxt:
                    nxt[key] = (val, last)
        layer = nxt
        history.append(layer)
    for key in sorted(layer, key=lambda s: (s[0], s[1] or (-1, 0))):
        if _generates(G, key[0], goal):
            seq = []
            state = key
            for depth in range(length, 0, -1):
                seq.append(state[1])
                state = history[depth][state]
            seq.reverse()
            return seq
    return None
