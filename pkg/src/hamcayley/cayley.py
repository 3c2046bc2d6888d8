"""Walks and oriented cycles in Cayley graphs of quotient groups.

A walk lives in ``Cay(G/N; S)``: vertices are elements of the quotient
target, and a letter ``(i, +1)`` steps from ``v`` to ``v * image(S[i])``.
Its voltage is the product of the actual source elements, which lies in
``N`` whenever the walk closes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple, Sequence

from .errors import ContractViolation, InvariantFailure
from .group_core import FiniteGroup, QuotientMap, center, identity_quotient


class Letter(NamedTuple):
    gen: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    def __str__(self):
        return f"s{self.gen}" + ("" if self.sign > 0 else "^-1")


Word = tuple[Letter, ...]


def word(*parts) -> Word:
    """Build a word from ``(gen, exponent)`` pairs; exponent 0 contributes nothing."""
    out: list[Letter] = []
    for gen, exp in parts:
        if exp < 0:
            raise ContractViolation("use a signed generator, not a negative run length")
        out.extend(Letter(gen, 1) for _ in range(exp))
    return tuple(out)


def run(gen: int, exponent: int) -> Word:
    """``s_gen ** exponent`` spelled out as letters."""
    sign = 1 if exponent >= 0 else -1
    return tuple(Letter(gen, sign) for _ in range(abs(exponent)))


def inverse_word(w: Sequence[Letter]) -> Word:
    return tuple(x.inverse() for x in reversed(w))


def relabel(w: Iterable[Letter], mapping: Sequence[int], flips: Sequence[int] | None = None) -> Word:
    """Rename generator indices through ``mapping`` and multiply signs by ``flips``."""
    if flips is None:
        return tuple(Letter(mapping[x.gen], x.sign) for x in w)
    return tuple(Letter(mapping[x.gen], x.sign * flips[x.gen]) for x in w)


@dataclass(frozen=True)
class OrientedCycle:
    quotient: QuotientMap = field(repr=False)
    gens: tuple[int, ...]
    base: int
    word: Word

    def __len__(self):
        return len(self.word)

    def step(self, letter: Letter) -> int:
        """Image in the target of the source element a letter stands for."""
        return letter_image(self.quotient, self.gens, letter)


def letter_element(G: FiniteGroup, gens: Sequence[int], letter: Letter) -> int:
    g = gens[letter.gen]
    return g if letter.sign > 0 else G.inv[g]


def letter_image(q: QuotientMap, gens: Sequence[int], letter: Letter) -> int:
    return q.image[letter_element(q.source, gens, letter)]


def trace(quotient: QuotientMap, gens: Sequence[int], base: int, w: Sequence[Letter]) -> list[int]:
    T = quotient.target
    steps = {}
    v = base
    out = [v]
    for x in w:
        s = steps.get(x)
        if s is None:
            s = steps[x] = letter_image(quotient, gens, x)
        v = T.mult[v][s]
        out.append(v)
    return out


def trace_cycle(cycle: OrientedCycle) -> list[int]:
    return trace(cycle.quotient, cycle.gens, cycle.base, cycle.word)


def is_hamiltonian_cycle(cycle: OrientedCycle, within: Iterable[int] | None = None) -> bool:
    """True iff the walk closes and visits each vertex of ``within`` (default: the whole target) once."""
    verts = trace_cycle(cycle)
    target = set(range(cycle.quotient.target.order)) if within is None else set(within)
    if len(cycle.word) != len(target) or verts[0] != verts[-1]:
        return False
    inner = verts[:-1]
    return len(set(inner)) == len(inner) and set(inner) == target


def voltage(cycle: OrientedCycle, check: bool = True) -> int:
    """Product in the source group of the letters, in order."""
    q = cycle.quotient
    G = q.source
    g = G.product(letter_element(G, cycle.gens, x) for x in cycle.word)
    if check and q.image[g] != 0:
        raise InvariantFailure("voltage is not in the kernel; the walk does not close")
    return g


def covers(w: Sequence[Letter], subset: Iterable[int]) -> bool:
    """Each generator in ``subset`` occurs with sign +1 and (at another position) with sign -1."""
    seen = {(x.gen, x.sign) for x in w}
    return all((i, 1) in seen and (i, -1) in seen for i in subset)


def translate(cycle: OrientedCycle, g: int) -> OrientedCycle:
    """Left-translate by the target element ``g``."""
    return replace(cycle, base=cycle.quotient.target.mult[g][cycle.base])


def rotate_start(cycle: OrientedCycle, r: int) -> OrientedCycle:
    """Start the same cycle ``r`` letters later; voltage is preserved when N is central."""
    q = cycle.quotient
    Z = center(q.source)
    if not q.kernel.members <= Z.members:
        raise ContractViolation("rotate_start needs the kernel to be central")
    n = len(cycle.word)
    if n == 0:
        return cycle
    r %= n
    verts = trace_cycle(cycle)
    return replace(cycle, base=verts[r], word=cycle.word[r:] + cycle.word[:r])


def reverse(cycle: OrientedCycle) -> OrientedCycle:
    """Traverse the same cycle backwards (from the same base)."""
    return replace(cycle, word=inverse_word(cycle.word))


def edges(cycle: OrientedCycle) -> list[tuple[int, Letter]]:
    """Oriented edges ``(tail vertex, letter)`` in traversal order."""
    verts = trace_cycle(cycle)
    return list(zip(verts[:-1], cycle.word))


def find_labeled_edge(cycle: OrientedCycle, label: Letter, excluding: Iterable[tuple[int, Letter]] = ()) -> tuple[int, int] | None:
    """First ``(vertex, position)`` of an oriented edge with this label, skipping ``excluding``."""
    skip = set(excluding)
    for pos, (v, x) in enumerate(edges(cycle)):
        if x == label and (v, x) not in skip:
            return v, pos
    return None


def connected_sum(c1: OrientedCycle, c2: OrientedCycle, g: int, s: Letter, a: Letter) -> OrientedCycle:
    """Merge two disjoint cycles by swapping the edges ``g(s)``, ``(g s a)(s^-1)`` for ``g(a)``, ``(g s a)(a^-1)``.

    ``g`` is a vertex of the quotient target.  The result starts at ``g s a``
    and spells ``(a^-1, rest of c1, a, rest of c2)``.
    """
    q = c1.quotient
    if c2.quotient is not q or c1.gens != c2.gens:
        raise ContractViolation("cycles live in different Cayley graphs")
    T = q.target
    sbar = c1.step(s)
    abar = c1.step(a)
    gs = T.mult[g][sbar]
    gsa = T.mult[gs][abar]
    ga = T.mult[g][abar]
    if T.mult[gsa][T.inv[sbar]] != ga:
        raise ContractViolation("connected sum needs s and a to commute in the quotient")
    v1 = trace_cycle(c1)
    v2 = trace_cycle(c2)
    if set(v1) & set(v2):
        raise ContractViolation("cycles are not disjoint")
    p1 = _edge_position(v1, c1.word, g, s)
    p2 = _edge_position(v2, c2.word, gsa, s.inverse())
    if p1 is None:
        raise ContractViolation(f"first cycle lacks the oriented edge {T.labels[g]}({s})")
    if p2 is None:
        raise ContractViolation(f"second cycle lacks the oriented edge {T.labels[gsa]}({s.inverse()})")
    n1, n2 = len(c1.word), len(c2.word)
    # c1 read from g*s: its last letter is the removed s; c2 read from g*a: last letter is the removed s^-1
    w1 = c1.word[p1 + 1:] + c1.word[:p1]
    w2 = c2.word[p2 + 1:] + c2.word[:p2]
    assert len(w1) == n1 - 1 and len(w2) == n2 - 1
    return OrientedCycle(q, c1.gens, gsa, (a.inverse(),) + w1 + (a,) + w2)


def _edge_position(verts: list[int], w: Sequence[Letter], v: int, label: Letter) -> int | None:
    for i, x in enumerate(w):
        if verts[i] == v and x == label:
            return i
    return None


def cycle_in_group(G: FiniteGroup, gens: Sequence[int], w: Sequence[Letter], base: int = 0) -> OrientedCycle:
    """A walk in ``Cay(G; S)`` itself (trivial kernel)."""
    return OrientedCycle(identity_quotient(G), tuple(gens), base, tuple(w))


# ---------------------------------------------------------------------------
# serialization and export


def word_to_json(w: Sequence[Letter], names: Sequence[str]) -> list[dict]:
    return [{"gen": names[x.gen], "sign": x.sign} for x in w]


def word_from_json(items: Iterable[dict], names: Sequence[str]) -> Word:
    lookup = {n: i for i, n in enumerate(names)}
    out = []
    for item in items:
        if item["gen"] not in lookup:
            raise KeyError(f"unknown generator {item['gen']!r}")
        if item["sign"] not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {item['sign']!r}")
        out.append(Letter(lookup[item["gen"]], int(item["sign"])))
    return tuple(out)


def dumps_word(w: Sequence[Letter], names: Sequence[str]) -> str:
    return json.dumps(word_to_json(w, names))


def to_dot(quotient: QuotientMap, gens: Sequence[int], names: Sequence[str], w: Sequence[Letter] = (), base: int = 0) -> str:
    """DOT graph of ``Cay(target; S)`` with the walk's edges black and the rest gray."""
    T = quotient.target
    imgs = [quotient.image[g] for g in gens]
    on_cycle: set[frozenset] = set()
    verts = trace(quotient, gens, base, w)
    for u, v in zip(verts, verts[1:]):
        on_cycle.add(frozenset((u, v)))
    lines = ["graph cayley {", "  node [shape=circle];"]
    for v in range(T.order):
        lines.append(f'  v{v} [label="{T.labels[v]}"];')
    drawn: set[tuple] = set()
    for v in range(T.order):
        for i, s in enumerate(imgs):
            u = T.mult[v][s]
            key = (min(u, v), max(u, v), i)
            if u == v or key in drawn:
                continue
            drawn.add(key)
            color = "black" if frozenset((u, v)) in on_cycle else "gray"
            width = ', penwidth=2' if color == "black" else ""
            lines.append(f'  v{v} -- v{u} [label="{names[i]}", color={color}{width}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
