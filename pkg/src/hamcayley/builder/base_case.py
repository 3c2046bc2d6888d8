"""Explicit cycles on two generators and the level-2 certificate."""

from __future__ import annotations

from dataclasses import dataclass

from ..cayley import Letter, OrientedCycle, Word, covers, is_hamiltonian_cycle, relabel, run, voltage
from ..errors import CaseError
from .arithmetic import gcd_consecutive_index
from .certificate import AlphaCertificate, make_certificate
from .context import ProofContext, squares_order
from .gluing import snake_cycle

A, B = 0, 1     # local letters: a and b


@dataclass(frozen=True)
class BaseCaseParams:
    """``a``/``b`` are context letters (index, sign); ``n = |a-bar|``, ``m = |G_2-bar : <a-bar>|``,
    and ``b-bar^m = a-bar^r`` with ``0 < r <= n``."""

    a: Letter
    b: Letter
    n: int
    m: int
    r: int

    def to_context(self, w: Word) -> Word:
        return relabel(w, (self.a.gen, self.b.gen), (self.a.sign, self.b.sign))


def _element(ctx: ProofContext, x: Letter) -> int:
    s = ctx.S[x.gen]
    return s if x.sign > 0 else ctx.G.inv[s]


def params_for(ctx: ProofContext, a: Letter, b: Letter) -> BaseCaseParams:
    T = ctx.target
    abar = ctx.bar(_element(ctx, a))
    bbar = ctx.bar(_element(ctx, b))
    n = T.element_order(abar)
    m = ctx.Gbar(2).order // n
    bm = T.power(bbar, m)
    y = 0
    for r in range(1, n + 1):
        y = T.mult[y][abar]
        if y == bm:
            return BaseCaseParams(a, b, n, m, r)
    raise CaseError("b-bar^m is not a power of a-bar")


def arranged_params(ctx: ProofContext) -> BaseCaseParams:
    """Swap and invert the first two generators so that ``n`` is even or ``m`` odd,
    ``n != 3`` and ``r >= n/2``."""
    for a, b in ((Letter(0), Letter(1)), (Letter(1), Letter(0))):
        p = params_for(ctx, a, b)
        if (p.n % 2 == 0 or p.m % 2 == 1) and p.n != 3:
            if 2 * p.r < p.n:
                p = params_for(ctx, a.inverse(), b)
            return p
    raise CaseError("excluded configuration: both generators have order 3 modulo N")


def two_gen_params(ctx: ProofContext) -> BaseCaseParams:
    for a, b in ((Letter(0), Letter(1)), (Letter(1), Letter(0))):
        p = params_for(ctx, a, b)
        if p.n % 2 == 0:
            return p
    raise CaseError("|G_2-bar| is odd")


def two_gen_word(n: int, m: int) -> Word:
    w = run(B, m - 1)
    for _ in range((n - 2) // 2):
        w += run(A, 1) + run(B, -(m - 2)) + run(A, 1) + run(B, m - 2)
    return w + run(A, 1) + run(B, -(m - 1)) + run(A, -(n - 1))


def two_gen_even_cycle(ctx: ProofContext, params: BaseCaseParams | None = None) -> OrientedCycle:
    """Hamiltonian cycle on ``G_2-bar`` whose voltage is ``[a, b]`` (needs ``n`` even)."""
    p = params or two_gen_params(ctx)
    if p.n % 2:
        raise CaseError("two_gen_even_cycle needs |a-bar| even")
    w = p.to_context(two_gen_word(p.n, p.m))
    # with N not central the voltage depends on the start vertex; read from one giving [a, b]
    G = ctx.G
    target = G.commutator(_element(ctx, p.a), _element(ctx, p.b))
    v = voltage(OrientedCycle(ctx.quotient, ctx.S, 0, w), check=False)
    prefix = 0
    for r, x in enumerate(w):
        if G.mult[G.mult[G.inv[prefix]][v]][prefix] == target:
            w = w[r:] + w[:r]
            break
        prefix = G.mult[prefix][_element(ctx, x)]
    return OrientedCycle(ctx.quotient, ctx.S, 0, w)


def m3_r3_words() -> tuple[Word, Word]:
    """The two cycles for ``m = r = 3``, ``n = 6``."""
    w1 = (run(B, -1) + run(A, -2) + run(B, -4) + run(A, -2) + run(B, -1) + run(A, 3)
          + run(B, 2) + run(A, 1) + run(B, -2))
    w2 = (run(B, -1) + run(A, -2) + run(B, -1) + run(A, 1) + run(B, -1) + run(A, -1)
          + run(B, -2) + run(A, -1) + run(B, -1) + run(A, 2) + run(B, 2) + run(A, 1) + run(B, -2))
    return w1, w2


def m3_index_set(n: int, r: int) -> tuple[int, int]:
    return (0, 1) if r != n else (1, 2)


def m3_family_word(n: int, r: int, i: int) -> Word:
    return (run(A, i) + run(B, -1) + run(A, -(n - r + i - 1)) + run(B, -1) + run(A, n - 4)
            + run(B, -1) + run(A, -(n - i - 4)) + run(B, -1) + run(A, r - i - 3)
            + run(B, -2) + run(A, 1) + run(B, 2) + run(A, 1) + run(B, -2))


def _x_block(n: int, m: int) -> Word:
    if n % 2:
        w = run(B, -(m - 2)) + run(A, 1) + run(B, m - 3) + run(A, n - 3) + run(B, -1)
        for _ in range((m - 3) // 2):
            w += run(A, -(n - 4)) + run(B, -1) + run(A, n - 4) + run(B, -1)
        return w
    w = run(B, -1)
    for _ in range(n // 2 - 1):
        w += run(B, -(m - 3)) + run(A, 1) + run(B, m - 3) + run(A, 1)
    return w + run(B, -(m - 2))


def general_family_word(n: int, m: int, r: int, i: int) -> Word:
    """``C_i`` for ``m != 3``, ``1 <= i <= (n-1)//2``."""
    return (run(A, i) + run(B, -1) + run(A, -(n + i - r - 1)) + _x_block(n, m)
            + run(A, -(n - i - 2)) + run(B, -1) + run(A, r - i - 1) + run(B, -(m - 1)))


def _valid(ctx: ProofContext, c: OrientedCycle) -> bool:
    return is_hamiltonian_cycle(c, ctx.Gbar(2).members) and covers(c.word, (0, 1))


def any_covering_cycle(ctx: ProofContext) -> OrientedCycle:
    """A covering hamiltonian cycle on ``G_2-bar``: the first general-family member when it
    applies, otherwise a snake."""
    try:
        p = arranged_params(ctx)
        if p.m != 3 and p.n >= 5 and p.m >= 5:
            c = OrientedCycle(ctx.quotient, ctx.S, 0, p.to_context(general_family_word(p.n, p.m, p.r, 1)))
            if _valid(ctx, c):
                return c
    except CaseError:
        pass
    c = snake_cycle(ctx.quotient, ctx.S, (0, 1))
    if not _valid(ctx, c):
        raise CaseError("snake cycle on two generators does not cover both")
    return c


def base_case_alpha2(ctx: ProofContext) -> AlphaCertificate:
    """Level-2 certificate with ``epsilon = 2`` (``1`` when ``|G_2'|`` is odd)."""
    G = ctx.G
    d2 = ctx.Gprime(2).order
    eps = 1 if d2 % 2 else 2
    if squares_order(d2) == 1:
        c = any_covering_cycle(ctx)
        return make_certificate(ctx, 2, eps, lambda x: c)
    p = arranged_params(ctx)
    cyc = lambda w: OrientedCycle(ctx.quotient, ctx.S, 0, p.to_context(w))
    if p.m == 3:
        if d2 != 3:
            raise CaseError(f"m = 3 but |G_2'| = {d2}")
        if p.r == 3:
            if p.n != 6:
                raise CaseError(f"m = r = 3 needs |a-bar| = 6, got {p.n}")
            cands = [cyc(w) for w in m3_r3_words()]
        else:
            cands = [cyc(m3_family_word(p.n, p.r, i)) for i in m3_index_set(p.n, p.r)]
        volts = [voltage(c) for c in cands]

        def provider(x: int) -> OrientedCycle:
            for c, v in zip(cands, volts):
                if G.element_order(G.mult[x][v]) % 3 == 0:
                    return c
            return cands[0]

        return make_certificate(ctx, 2, eps, provider)
    gamma = G.commutator(_element(ctx, p.a), _element(ctx, p.b))
    if G.element_order(gamma) != d2:
        raise CaseError("[a, b] does not generate G_2'")
    members: dict[int, OrientedCycle] = {}

    def member(i: int) -> OrientedCycle:
        if i not in members:
            members[i] = cyc(general_family_word(p.n, p.m, p.r, i))
        return members[i]

    h0 = G.mult[voltage(member(1))][G.power(gamma, 2)]
    arith = ctx.arith

    def provider(x: int) -> OrientedCycle:
        xp = arith.project(G.mult[h0][x], d2)
        return member(gcd_consecutive_index(G, gamma, xp, p.n))

    return make_certificate(ctx, 2, eps, provider)
