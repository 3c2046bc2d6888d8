"""Independent verification and brute-force search.

Nothing here uses :mod:`hamcayley.cayley`; the verifier re-walks the
multiplication table on its own so it can disagree with the builder.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ContractViolation, ResourceError
from .group_core import FiniteGroup, QuotientMap, Subgroup


@dataclass
class VerifyReport:
    hamiltonian: bool
    closed: bool
    length: int
    order: int
    first_repeat: tuple[int, str] | None = None   # (position, vertex label)
    unvisited: int = 0
    covered: list[int] = field(default_factory=list)
    voltage: int | None = None
    reason: str = ""

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        out = {
            "hamiltonian": self.hamiltonian,
            "closed": self.closed,
            "length": self.length,
            "order": self.order,
            "reason": self.reason,
        }
        if self.first_repeat is not None:
            out["first_repeat"] = {"position": self.first_repeat[0], "vertex": self.first_repeat[1]}
        out["covered"] = [names[i] for i in self.covered] if names else list(self.covered)
        if self.voltage is not None:
            out["voltage"] = self.voltage
        return out


def verify_cycle(G: FiniteGroup, S: Sequence[int], word: Sequence, quotient: QuotientMap | None = None) -> VerifyReport:
    """Re-trace ``word`` (pairs ``(gen index, sign)``) in ``Cay(G; S)`` or, with ``quotient``, in ``Cay(G/N; S)``.

    Never raises on a bad word; the report says what went wrong.
    """
    letters = [(int(x[0]), int(x[1])) for x in word]
    if quotient is None:
        order = G.order
        project = None
    else:
        order = quotient.target.order
        project = quotient.image
    n = len(letters)
    report = VerifyReport(False, False, n, order)
    if any(not 0 <= j < len(S) or e not in (1, -1) for j, e in letters):
        report.reason = "letter references an unknown generator or bad sign"
        return report
    signed = set(letters)
    report.covered = sorted(j for j in range(len(S)) if (j, 1) in signed and (j, -1) in signed)
    g = 0
    seen = {0: 0}
    product = 0
    for pos, (j, e) in enumerate(letters, start=1):
        s = S[j] if e == 1 else G.inv[S[j]]
        g = G.mult[g][s]
        product = g
        v = g if project is None else project[g]
        if pos < n and v in seen and report.first_repeat is None:
            label = G.labels[g] if project is None else quotient.target.labels[v]
            report.first_repeat = (pos, label)
        seen.setdefault(v, pos)
    end = g if project is None else project[g]
    report.closed = end == 0
    if project is not None:
        report.voltage = product
    report.unvisited = order - len(seen)
    if n != order:
        report.reason = f"length {n} != order {order}"
    elif not report.closed:
        report.reason = "walk does not return to its start"
    elif report.first_repeat is not None:
        pos, label = report.first_repeat
        report.reason = f"vertex {label} repeated at step {pos}"
    elif report.unvisited:
        report.reason = f"{report.unvisited} vertices unvisited"
    else:
        report.hamiltonian = True
        report.reason = "hamiltonian cycle"
    return report


# ---------------------------------------------------------------------------
# backtracking search


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 20_000_000
    time_limit: float = 60.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.time_limit <= 0:
            raise ContractViolation("search budget must be positive")


@dataclass
class SearchResult:
    status: str                 # "found" | "none" | "budget"
    word: tuple[tuple[int, int], ...] | None
    nodes: int
    elapsed: float


def _neighbours(mult: list, inv: list, order: int, S: Sequence[int]) -> list[list[tuple[int, int, int]]]:
    """Per vertex: ``(neighbour, gen index, sign)`` in fixed generator order, duplicates dropped."""
    letters = []
    for j, s in enumerate(S):
        letters.append((j, 1, s))
        letters.append((j, -1, inv[s]))
    out = []
    for v in range(order):
        row, seen = [], set()
        for j, e, s in letters:
            u = mult[v][s]
            if u != v and u not in seen:
                seen.add(u)
                row.append((u, j, e))
        out.append(row)
    return out


def exhaustive_hamiltonian_search(G: FiniteGroup, S: Sequence[int], budget: SearchBudget | None = None) -> SearchResult:
    """Depth-first search for a hamiltonian cycle through the identity.

    Branches are tried in generator order (s0, s0^-1, s1, ...), so the first
    cycle found is reproducible.  A branch is cut when some unvisited vertex
    is left with fewer than two usable neighbours.
    """
    nbrs = _neighbours(G.mult, G.inv, G.order, S)
    return _dfs(G.order, nbrs, lambda letters: True, budget or SearchBudget())


def voltage_search(G: FiniteGroup, S: Sequence[int], quotient: QuotientMap, budget: SearchBudget | None = None) -> SearchResult:
    """Search ``Cay(G/N; S)`` for a hamiltonian cycle whose voltage generates the kernel N.

    The returned word lifts to a hamiltonian cycle of ``Cay(G; S)`` by
    repeating it ``|N|`` times.  Status ``none`` means no quotient cycle has
    a generating voltage.
    """
    T = quotient.target
    images = [quotient.image[s] for s in S]
    nbrs = _neighbours(T.mult, T.inv, T.order, images)
    n_order = quotient.kernel.order
    orders = G.element_orders

    def accept(letters) -> bool:
        g = 0
        for j, e in letters:
            g = G.mult[g][S[j] if e == 1 else G.inv[S[j]]]
        return orders[g] == n_order

    return _dfs(T.order, nbrs, accept, budget or SearchBudget())


def _dfs(n: int, nbrs, accept, budget: SearchBudget) -> SearchResult:
    start = time.monotonic()
    if n == 1:
        return SearchResult("found", (), 0, 0.0) if accept(()) else SearchResult("none", None, 0, 0.0)
    adj = [set(u for u, _, _ in row) for row in nbrs]
    if n == 2:
        for u, j, e in nbrs[0]:
            for w, j2, e2 in nbrs[u]:
                if w == 0 and accept(((j, e), (j2, e2))):
                    return SearchResult("found", ((j, e), (j2, e2)), 1, time.monotonic() - start)
        return SearchResult("none", None, 0, time.monotonic() - start)
    visited = [False] * n
    visited[0] = True
    free = [len(row) for row in nbrs]    # unvisited neighbours of each vertex
    for u in adj[0]:
        free[u] -= 1
    path = [0]
    letters: list[tuple[int, int]] = []
    stack = [0]                          # next branch index per path position
    nodes = 0

    def viable(head: int) -> bool:
        # every unvisited vertex needs two usable neighbours: unvisited ones, the head, or the start
        for w in adj[path[-2]] if len(path) > 1 else ():
            if not visited[w]:
                avail = free[w] + (head in adj[w]) + (0 in adj[w])
                if avail < 2:
                    return False
        return True

    while stack:
        v = path[-1]
        i = stack[-1]
        row = nbrs[v]
        if len(path) == n and i == 0:
            for u, j, e in row:
                if u == 0:
                    word = tuple(letters) + ((j, e),)
                    if accept(word):
                        return SearchResult("found", word, nodes, time.monotonic() - start)
            i = len(row)
        if i >= len(row):
            stack.pop()
            path.pop()
            if letters:
                letters.pop()
            visited[v] = False
            for w in adj[v]:
                free[w] += 1
            continue
        stack[-1] = i + 1
        u, j, e = row[i]
        if visited[u]:
            continue
        nodes += 1
        if nodes >= budget.max_nodes or (nodes & 0xFFF == 0 and time.monotonic() - start > budget.time_limit):
            return SearchResult("budget", None, nodes, time.monotonic() - start)
        visited[u] = True
        for w in adj[u]:
            free[w] -= 1
        path.append(u)
        letters.append((j, e))
        stack.append(0)
        if len(path) < n and (not viable(u) or not any(not visited[w] for w in adj[0])):
            stack[-1] = len(nbrs[u])     # force backtrack on next iteration
    return SearchResult("none", None, nodes, time.monotonic() - start)


# ---------------------------------------------------------------------------
# enumeration oracle for gluing sequences


@dataclass
class SequenceEnumeration:
    total: int
    products: dict[int, tuple[int, tuple[tuple[int, int], ...]]]   # h * product -> (count, witness)


def enumerate_valid_sequences(N: Subgroup, T: Sequence[int], h: int, m: int,
                              max_order: int = 30, max_m: int = 12) -> SequenceEnumeration:
    """All sequences ``(j_i, sign_i)_{i=1}^{m-1}`` where equal consecutive indices carry equal signs.

    Exhaustive dynamic programme over ``(product, last letter)``; returns the
    exact count of valid sequences and, per reachable value of
    ``h * prod gamma_i^*``, how many sequences reach it plus one witness.
    """
    if N.order > max_order or m > max_m:
        raise ResourceError(f"enumeration bound exceeded (|N| <= {max_order}, m <= {max_m})")
    G = N.parent
    k = len(T)
    letters = [(j, e) for j in range(k) for e in (1, -1)]
    elem = {(j, e): (T[j] if e == 1 else G.inv[T[j]]) for j, e in letters}
    # state: (value, last letter) -> (count, witness)
    states: dict[tuple[int, tuple[int, int] | None], tuple[int, tuple]] = {(h, None): (1, ())}
    for _ in range(m - 1):
        nxt: dict = {}
        for (val, last), (cnt, wit) in states.items():
            for lt in letters:
                if last is not None and lt[0] == last[0] and lt[1] != last[1]:
                    continue
                key = (G.mult[val][elem[lt]], lt)
                if key in nxt:
                    nxt[key] = (nxt[key][0] + cnt, nxt[key][1])
                else:
                    nxt[key] = (cnt, wit + (lt,))
        states = nxt
    products: dict[int, tuple[int, tuple]] = {}
    total = 0
    for (val, _), (cnt, wit) in sorted(states.items(), key=lambda kv: (kv[0][0], kv[0][1] or (-1, 0))):
        total += cnt
        if val in products:
            products[val] = (products[val][0] + cnt, products[val][1])
        else:
            products[val] = (cnt, wit)
    return SequenceEnumeration(total, products)
