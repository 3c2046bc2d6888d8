"""Raising certificates one generator at a time, and the bridge from level 2 to level 3."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from ..cayley import Letter, OrientedCycle, voltage
from ..errors import CaseError, InvariantFailure
from .arithmetic import contains_n2_sequence
from .base_case import base_case_alpha2, two_gen_even_cycle
from .certificate import AlphaCertificate, make_certificate
from .context import ProofContext, odd_part, primes_of
from .gluing import glue_family


def _prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def _comm_orders_even(ctx: ProofContext, k: int) -> bool:
    G = ctx.G
    return all(G.element_order(ctx.comm(i, j)) % 2 == 0 for i, j in itertools.combinations(range(1, k + 1), 2))


def _star_letters(seq) -> list[Letter]:
    return [Letter(j, e) for j, e in seq]


def _comm_product(ctx: ProofContext, a: int, stars: list[Letter]) -> int:
    G = ctx.G
    out = 0
    for s in stars:
        el = ctx.S[s.gen] if s.sign > 0 else G.inv[ctx.S[s.gen]]
        out = G.mult[out][G.commutator(a, el)]
    return out


def _new_primes_subgroup(ctx: ProofContext, upper: int, lower: int):
    """Order of the subgroup of N built from primes of ``upper`` not dividing ``lower``."""
    return _prod(p for p in primes_of(upper) if lower % p)


def induction_step(ctx: ProofContext, cert: AlphaCertificate) -> AlphaCertificate:
    """From level ``k`` to ``k + 1`` keeping ``epsilon`` (and the plus condition when ``epsilon = 2``)."""
    G = ctx.G
    k = cert.k
    if k >= ctx.ell:
        raise CaseError("already at the top level")
    eps = cert.epsilon
    m = ctx.m(k + 1)
    a = ctx.S[k]
    low = ctx.Gprime(k).order
    high = ctx.Gprime(k + 1).order
    if (high // low) % 2 == 0:
        raise CaseError(f"|G_{k + 1}' / G_{k}'| is even")
    if eps == 2 and not _comm_orders_even(ctx, k + 1):
        raise CaseError("epsilon = 2 step needs every commutator of S_{k+1} to have even order")
    arith = ctx.arith
    dq = _new_primes_subgroup(ctx, high, low)
    NQ = arith.subgroup(dq)
    T = [arith.project(G.commutator(a, ctx.S[j]), dq) for j in range(k)]
    hk = cert.h
    hk_m = G.power(hk, m)
    hk_m1 = G.power(hk, m - 1)
    level = ctx.Gbar(k).members

    def provider(x: int) -> OrientedCycle:
        target = arith.project(G.mult[x][hk_m], dq)
        seq, _ = contains_n2_sequence(NQ, T, target, m)
        stars = _star_letters(seq)
        P = _comm_product(ctx, a, stars)
        xp = G.mult[G.mult[x][hk_m1]][P]
        pi = cert.deliver(xp)
        return glue_family([pi] + [cert.canonical] * (m - 1), stars, k, level)

    new = make_certificate(ctx, k + 1, eps, provider, require_plus=(eps == 2))
    _check_h_formula(ctx, new, G.mult[hk_m][G.power(G.commutator(a, ctx.S[0]), m - 1)])
    return new


def _check_h_formula(ctx: ProofContext, cert: AlphaCertificate, expected: int) -> None:
    G = ctx.G
    diff = G.mult[cert.h][G.inv[expected]]
    if cert.target_order % G.element_order(diff):
        raise InvariantFailure(f"level {cert.k}: canonical voltage is not in the predicted coset",
                               {"h": G.labels[cert.h], "expected": G.labels[expected]})


def bridge_ell3(ctx: ProofContext, base: AlphaCertificate | None = None) -> AlphaCertificate:
    """Level-3 certificate when ``|G'|`` is even: ``epsilon = 1`` if ``|[s3, s2]|`` is odd,
    otherwise ``epsilon = 2`` with the plus condition.

    Expects ``|[s3, s1]|`` even; the odd case further expects ``|[s3, s2]|`` odd and
    the even case expects every commutator of S to have even order.
    """
    G = ctx.G
    if ctx.ell < 3:
        raise CaseError("bridge needs at least three generators")
    if G.element_order(ctx.comm(3, 1)) % 2:
        raise CaseError("|[s3, s1]| is odd")
    odd_case = G.element_order(ctx.comm(3, 2)) % 2 == 1
    if not odd_case and not _comm_orders_even(ctx, ctx.ell):
        raise CaseError("neither the odd nor the even configuration applies")
    base = base or base_case_alpha2(ctx)
    m = ctx.m(3)
    a = ctx.S[2]
    h2 = base.h
    C_prime = two_gen_even_cycle(ctx)
    use_prime = not odd_case and m % 2 == 1
    h_prime = voltage(C_prime) if use_prime else h2
    d2 = ctx.Gprime(2).order
    d3 = ctx.Gprime(3).order
    if odd_case:
        dq = _prod(p for p in primes_of(d3) if p == 2 or d2 % p)
    else:
        dq = _new_primes_subgroup(ctx, odd_part(d3), odd_part(d2))
    arith = ctx.arith
    NQ = arith.subgroup(dq)
    T = [arith.project(G.commutator(a, ctx.S[j]), dq) for j in range(2)]
    pre = G.mult[G.power(h2, m - 1)][h_prime]
    mid = G.mult[G.power(h2, m - 2)][h_prime]
    level = ctx.Gbar(2).members
    last = C_prime if use_prime else None

    def provider(x: int) -> OrientedCycle:
        seq, full = contains_n2_sequence(NQ, T, arith.project(G.mult[x][pre], dq), m, strict=False)
        if odd_case and not full and dq > 1:
            raise CaseError("no gluing sequence reaches the 2-part")
        stars = _star_letters(seq)
        P = _comm_product(ctx, a, stars)
        xp = G.mult[G.mult[x][mid]][P]
        pi = base.deliver(xp)
        rest = [base.canonical] * (m - 2) + [last or base.canonical]
        return glue_family([pi] + rest, stars, 2, level)

    eps = 1 if odd_case else 2
    cert = make_certificate(ctx, 3, eps, provider, require_plus=not odd_case)
    expected = G.mult[G.mult[G.power(h2, m - 1)][h_prime]][G.power(G.commutator(a, ctx.S[0]), m - 1)]
    if not odd_case:
        _check_h_formula(ctx, cert, expected)
    return cert


def spiral_odd(ctx: ProofContext) -> list[AlphaCertificate]:
    """``|G'|`` odd: base case then ``epsilon = 1`` steps up to the top level."""
    chain = [base_case_alpha2(ctx)]
    while chain[-1].k < ctx.ell:
        chain.append(induction_step(ctx, chain[-1]))
    return chain


def spiral_even(ctx: ProofContext) -> list[AlphaCertificate]:
    base = base_case_alpha2(ctx)
    chain = [base, bridge_ell3(ctx, base)]
    while chain[-1].k < ctx.ell:
        chain.append(induction_step(ctx, chain[-1]))
    return chain


@dataclass(frozen=True)
class Arrangement:
    ctx: ProofContext
    tag: str      # "odd_commutator", "even_odd_case", "even_even_case"


def _excluded_pair(ctx: ProofContext) -> bool:
    return (ctx.Gprime(2).order == 3 and ctx.m(2) == 3
            and ctx.bar_order(1) == 3 and ctx.bar_order(2) == 3)


def candidate_arrangements(ctx: ProofContext) -> Iterator[Arrangement]:
    """Permutations of S (lexicographic) satisfying the active case, best case first."""
    G = ctx.G
    ell = ctx.ell
    perms = list(itertools.permutations(range(ell)))
    flips = (1,) * ell
    even = G.element_order(ctx.arith.gen) % 2 == 0
    if not even:
        for p in perms:
            c = ctx.rearranged(p, flips)
            if not _excluded_pair(c):
                yield Arrangement(c, "odd_commutator")
        return
    all_even = _comm_orders_even(ctx, ell)
    for p in perms:
        c = ctx.rearranged(p, flips)
        o31 = G.element_order(c.comm(3, 1))
        o32 = G.element_order(c.comm(3, 2))
        if o31 % 2 == 0 and o32 % 2 == 1:
            yield Arrangement(c, "even_odd_case")
    if all_even:
        for p in perms:
            c = ctx.rearranged(p, flips)
            if G.element_order(c.comm(3, 1)) % 2 == 0:
                yield Arrangement(c, "even_even_case")


def arrange_generators(ctx: ProofContext) -> Arrangement:
    """First arrangement for the active case, or tag ``excluded_3_case`` if none exists."""
    for arr in candidate_arrangements(ctx):
        return arr
    return Arrangement(ctx, "excluded_3_case")


def certify_top(ctx: ProofContext) -> tuple[list[AlphaCertificate], Arrangement]:
    """Try arrangements in order until the whole certificate chain goes through.

    Returns the chain of certificates (lowest level first) and the arrangement used.
    """
    last: Exception | None = None
    for arr in candidate_arrangements(ctx):
        try:
            if arr.tag == "odd_commutator":
                return spiral_odd(arr.ctx), arr
            return spiral_even(arr.ctx), arr
        except CaseError as exc:
            last = exc
    raise CaseError(f"excluded_3_case: no arrangement completes the construction ({last})")


def extract_generating_cycle(cert: AlphaCertificate) -> OrientedCycle:
    """The ``x = e`` cycle at the top level; its voltage generates N."""
    ctx = cert.ctx
    c = cert.canonical
    g = voltage(c)
    if ctx.G.element_order(g) != ctx.N.order:
        raise InvariantFailure("extracted voltage does not generate N",
                               {"voltage": ctx.G.labels[g], "N_order": ctx.N.order, "level": cert.k})
    return c
