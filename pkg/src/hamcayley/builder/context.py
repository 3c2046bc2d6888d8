"""The fixed data of the construction: G, N, the ordered generators and their levels."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from ..errors import ContractViolation, HypothesisViolation
from ..group_core import (
    FiniteGroup,
    QuotientMap,
    Subgroup,
    center,
    frattini_of_cyclic,
    is_cyclic,
    is_square_free,
    prime_factors,
    quotient,
    subgroup_generated,
    subgroup_generators,
)


def minimal_generating_subset(G: FiniteGroup, S: Sequence[int]) -> list[int]:
    """Greedy removal in input order; returns positions into ``S`` that still generate.

    The identity and repeated elements are dropped first.
    """
    if subgroup_generated(G, S).order != G.order:
        raise HypothesisViolation("disconnected Cayley graph: S does not generate G")
    keep = []
    seen = set()
    for i, s in enumerate(S):
        if s != 0 and s not in seen:
            keep.append(i)
            seen.add(s)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if subgroup_generated(G, (S[j] for j in trial)).order == G.order:
            keep = trial
        else:
            i += 1
    return keep


class CyclicArith:
    """Exponent arithmetic in a cyclic subgroup N of square-free order."""

    def __init__(self, N: Subgroup):
        ok, gen = is_cyclic(N)
        if not ok:
            raise ContractViolation("N is not cyclic")
        self.N = N
        self.G = N.parent
        self.gen = gen
        self.order = N.order
        self.log = {}
        x = 0
        for k in range(self.order):
            self.log[x] = k
            x = self.G.mult[x][gen]

    def exp(self, k: int) -> int:
        return self.G.power(self.gen, k % self.order)

    def element_order(self, y: int) -> int:
        return self.G.element_order(y)

    def subgroup(self, d: int) -> Subgroup:
        return subgroup_generated(self.G, [self.exp(self.order // d)])

    def project(self, y: int, d: int) -> int:
        """Component of ``y`` in the order-``d`` factor of ``N = K x K_perp``."""
        if d == 1:
            return 0
        rest = self.order // d
        # CRT: e == 0 mod rest, e == 1 mod d
        e = rest * pow(rest, -1, d) % self.order
        return self.G.power(y, e)

    def contains(self, elements: Sequence[int], d: int) -> bool:
        """Does ``<elements>`` contain the order-``d`` subgroup?"""
        return math.lcm(1, *(self.element_order(y) for y in elements)) % d == 0


def squares_order(d: int) -> int:
    """``|K^2|`` for cyclic K of order d."""
    return d // 2 if d % 2 == 0 else d


@dataclass(frozen=True)
class ProofContext:
    """G, a cyclic normal N containing G', and an ordered generating sequence.

    ``origin[i] = (j, sign)`` records that ``S[i]`` is ``user_S[j] ** sign``,
    so words can be mapped back after the generators are rearranged.
    """

    G: FiniteGroup = field(repr=False)
    N: Subgroup = field(repr=False)
    S: tuple[int, ...]
    quotient: QuotientMap = field(repr=False)
    origin: tuple[tuple[int, int], ...] = ()

    @classmethod
    def create(cls, G: FiniteGroup, N: Subgroup, S: Sequence[int], origin=None, check: bool = True) -> "ProofContext":
        S = tuple(S)
        q = quotient(G, N)
        ctx = cls(G, N, S, q, tuple(origin) if origin is not None else tuple((i, 1) for i in range(len(S))))
        if check:
            ctx.validate()
        return ctx

    def validate(self) -> None:
        if not is_cyclic(self.N)[0]:
            raise HypothesisViolation("N is not cyclic")
        from ..group_core import commutator_subgroup
        if not commutator_subgroup(self.G).members <= self.N.members:
            raise HypothesisViolation("N does not contain G'")
        if self.ell < 1:
            raise ContractViolation("empty generating sequence")
        images = [self.bar(s) for s in self.S]
        T = self.quotient.target
        if subgroup_generated(T, images).order != T.order:
            raise HypothesisViolation("S-bar does not generate G/N")
        for i in range(self.ell):
            rest = images[:i] + images[i + 1:]
            if subgroup_generated(T, rest).order == T.order:
                raise HypothesisViolation("S-bar is not a minimal generating set of G/N")

    @property
    def ell(self) -> int:
        return len(self.S)

    @property
    def target(self) -> FiniteGroup:
        return self.quotient.target

    def bar(self, g: int) -> int:
        return self.quotient.image[g]

    def bar_order(self, i: int) -> int:
        """``|sigma_i-bar|`` for 1-based ``i``."""
        return self.target.element_order(self.bar(self.S[i - 1]))

    @cached_property
    def central(self) -> bool:
        return self.N.members <= center(self.G).members

    @cached_property
    def _levels(self) -> list[Subgroup]:
        T = self.target
        return [subgroup_generated(T, [self.bar(s) for s in self.S[:k]]) for k in range(self.ell + 1)]

    def Gbar(self, k: int) -> Subgroup:
        """``G_k-bar = <S_k-bar>`` inside G/N."""
        return self._levels[k]

    def m(self, k: int) -> int:
        return self._levels[k].order // self._levels[k - 1].order

    @cached_property
    def _n_gens(self) -> tuple[int, ...]:
        return subgroup_generators(self.N)

    def Gprime(self, k: int) -> Subgroup:
        """Commutator subgroup of ``G_k = <S_k> N``."""
        gens = list(self.S[:k]) + list(self._n_gens)
        G = self.G
        return subgroup_generated(G, (G.commutator(x, y) for x, y in itertools.combinations(gens, 2)))

    def comm(self, i: int, j: int) -> int:
        """``[sigma_i, sigma_j]`` for 1-based indices."""
        return self.G.commutator(self.S[i - 1], self.S[j - 1])

    @cached_property
    def arith(self) -> CyclicArith:
        return CyclicArith(self.N)

    def rearranged(self, perm: Sequence[int], flips: Sequence[int]) -> "ProofContext":
        """New context with ``S'[i] = S[perm[i]] ** flips[i]``."""
        G = self.G
        S = tuple(self.S[p] if f == 1 else G.inv[self.S[p]] for p, f in zip(perm, flips))
        origin = tuple((self.origin[p][0], self.origin[p][1] * f) for p, f in zip(perm, flips))
        return ProofContext(G, self.N, S, self.quotient, origin)


@dataclass(frozen=True)
class FrattiniReduction:
    """``G -> G/Phi(N)``; a cycle whose voltage generates N/Phi(N) also generates N upstairs."""

    original: ProofContext
    reduced: ProofContext
    phi: Subgroup
    projection: QuotientMap


def frattini_reduce(ctx: ProofContext) -> FrattiniReduction:
    phi = frattini_of_cyclic(ctx.N)
    proj = quotient(ctx.G, phi)
    H = proj.target
    N_red = subgroup_generated(H, (proj.image[n] for n in ctx.N.members))
    S_red = tuple(proj.image[s] for s in ctx.S)
    reduced = ProofContext(H, N_red, S_red, quotient(H, N_red), ctx.origin)
    if not is_square_free(N_red.order):
        raise ContractViolation("Frattini quotient of N is not square-free")
    return FrattiniReduction(ctx, reduced, phi, proj)


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def primes_of(n: int) -> set[int]:
    return set(prime_factors(n)) if n > 1 else set()
