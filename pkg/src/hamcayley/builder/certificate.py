"""Level-k certificates: a provider of covering hamiltonian cycles with controlled voltage."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ..cayley import OrientedCycle, covers, is_hamiltonian_cycle, voltage
from ..errors import InvariantFailure
from ..group_core import Subgroup
from .context import ProofContext, squares_order

Provider = Callable[[int], OrientedCycle]


@dataclass(eq=False)
class AlphaCertificate:
    """For each ``x`` in N, ``deliver(x)`` returns a hamiltonian cycle on ``G_k-bar``
    covering ``S_k^{+-1}`` whose voltage ``gamma`` lies in ``(G_k')^eps h`` and
    satisfies ``<x gamma>`` containing ``(G_k')^eps``.

    ``h`` is the voltage of ``canonical`` (the cycle delivered for ``x = e``).
    """

    ctx: ProofContext = field(repr=False)
    k: int
    epsilon: int
    plus: bool
    h: int
    provider: Provider = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def commutator(self) -> Subgroup:
        return self.ctx.Gprime(self.k)

    @property
    def target_order(self) -> int:
        """``|(G_k')^eps|``."""
        d = self.commutator.order
        return d if self.epsilon == 1 else squares_order(d)

    @property
    def canonical(self) -> OrientedCycle:
        return self.deliver(0)

    def deliver(self, x: int) -> OrientedCycle:
        if x not in self._cache:
            c = self.provider(x)
            self.check(c, x)
            self._cache[x] = c
        return self._cache[x]

    def check(self, c: OrientedCycle, x: int) -> None:
        ctx = self.ctx
        G = ctx.G
        d = self.target_order
        trace = {"level": self.k, "epsilon": self.epsilon, "x": G.labels[x], "word_length": len(c.word)}
        if not is_hamiltonian_cycle(c, ctx.Gbar(self.k).members):
            raise InvariantFailure(f"level {self.k}: delivered walk is not a hamiltonian cycle", trace)
        if not covers(c.word, range(self.k)):
            raise InvariantFailure(f"level {self.k}: delivered cycle does not cover S_{self.k}", trace)
        g = voltage(c)
        trace["voltage"] = G.labels[g]
        if d % G.element_order(G.mult[g][G.inv[self.h]]) != 0:
            raise InvariantFailure(f"level {self.k}: voltage outside the certified coset", trace)
        if G.element_order(G.mult[x][g]) % d != 0:
            raise InvariantFailure(f"level {self.k}: <x * voltage> misses the required subgroup", trace)


def make_certificate(ctx: ProofContext, k: int, epsilon: int, provider: Provider, require_plus: bool = False) -> AlphaCertificate:
    """Pin ``h`` to the voltage of ``provider(e)`` and check the delivery at ``x = e``."""
    c0 = provider(0)
    h = voltage(c0)
    cert = AlphaCertificate(ctx, k, epsilon, False, h, provider)
    cert.check(c0, 0)
    cert._cache[0] = c0
    if require_plus:
        G = ctx.G
        d = cert.commutator.order
        if math.lcm(G.element_order(h), squares_order(d)) % d != 0:
            raise InvariantFailure(f"level {k}: <h, (G_k')^2> does not contain G_k'",
                                   {"h": G.labels[h], "commutator_order": d})
        cert.plus = True
    return cert

