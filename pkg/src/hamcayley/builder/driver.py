"""End-to-end construction of a verified hamiltonian cycle in ``Cay(G; S)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..cayley import Letter, OrientedCycle, Word, is_hamiltonian_cycle, run, voltage
from ..errors import BudgetExhausted, CaseError, ContractViolation, HypothesisViolation, InvariantFailure
from ..group_core import (
    FiniteGroup,
    Subgroup,
    commutator_subgroup,
    identity_quotient,
    is_cyclic,
    is_nilpotent,
    quotient,
    prime_factors,
)
from ..oracle import SearchBudget, VerifyReport, exhaustive_hamiltonian_search, verify_cycle, voltage_search
from .base_case import base_case_alpha2, two_gen_even_cycle
from .context import ProofContext, frattini_reduce, minimal_generating_subset
from .gluing import snake_cycle
from .induction import certify_top, extract_generating_cycle

PATHS = ("main_proof", "ell2_path", "abelian", "cycle_graph", "fallback_search")


@dataclass
class HamiltonianResult:
    word: Word                      # letters index the caller's S
    path_taken: str
    certificate_chain: list[dict] = field(default_factory=list)
    verified: bool = False
    report: VerifyReport | None = None
    subset: tuple[int, ...] = ()    # positions of S actually used


def abelian_cycle(G: FiniteGroup, S: Sequence[int]) -> Word:
    """Hamiltonian cycle in ``Cay(G; S)`` for abelian G; letters index ``S``."""
    if not G.is_abelian():
        raise ContractViolation("abelian_cycle needs an abelian group")
    if G.order == 1:
        return ()
    if G.order == 2:
        return run(0, 1) + run(0, -1)
    return snake_cycle(identity_quotient(G), S, list(range(len(S)))).word


def fgl_lift(cycle: OrientedCycle, N: Subgroup | None = None) -> Word:
    """Repeat the word ``|N|`` times; needs the voltage to generate N."""
    N = N if N is not None else cycle.quotient.kernel
    G = cycle.quotient.source
    g = voltage(cycle)
    if G.element_order(g) != N.order:
        raise ContractViolation(f"voltage has order {G.element_order(g)}, not |N| = {N.order}")
    return tuple(cycle.word) * N.order


def _is_power_of_3(n: int) -> bool:
    return n > 1 and set(prime_factors(n)) == {3}


def _cert_record(cert) -> dict:
    G = cert.ctx.G
    return {"level": cert.k, "epsilon": cert.epsilon, "plus": cert.plus, "h": G.labels[cert.h],
            "commutator_order": cert.commutator.order}


def check_hypotheses(G: FiniteGroup, S: Sequence[int]) -> Subgroup:
    """Raise unless G is nilpotent with cyclic commutator subgroup; return G'."""
    if any(not 0 <= s < G.order for s in S):
        raise HypothesisViolation("generator id outside the group")
    if not is_nilpotent(G):
        raise HypothesisViolation("group is not nilpotent")
    D = commutator_subgroup(G)
    if not is_cyclic(D)[0]:
        raise HypothesisViolation("commutator subgroup is not cyclic")
    return D


def build_hamiltonian_cycle(G: FiniteGroup, S: Sequence[int], budget: SearchBudget | None = None) -> HamiltonianResult:
    """Dispatch to the construction that applies, then verify independently."""
    S = list(S)
    D = check_hypotheses(G, S)
    keep = minimal_generating_subset(G, S)
    Sp = [S[i] for i in keep]
    ell = len(Sp)
    chain: list[dict] = []

    def to_user(w: Word) -> Word:
        return tuple(Letter(keep[x.gen], x.sign) for x in w)

    if D.order == 1:
        path, w = "abelian", abelian_cycle(G, Sp)
    elif ell == 1:
        path, w = "cycle_graph", run(0, G.order)
    elif _is_power_of_3(G.order):
        path, w = "fallback_search", _search(G, Sp, budget)
    else:
        ctx = ProofContext.create(G, D, Sp)
        try:
            if ell == 2:
                path, w = "ell2_path", _two_generator(ctx, chain)
            else:
                path, w = "main_proof", _main(ctx, chain)
        except CaseError as exc:
            chain.append({"excluded": str(exc)})
            path, w = "fallback_search", _search(G, Sp, budget)
    word = to_user(w)
    report = verify_cycle(G, S, word)
    if not report.hamiltonian:
        raise InvariantFailure(f"constructed word failed verification: {report.reason}",
                               {"path": path, "chain": chain, "report": report.to_json()})
    return HamiltonianResult(word, path, chain, True, report, tuple(keep))


def _search(G: FiniteGroup, S: Sequence[int], budget: SearchBudget | None) -> Word:
    """Search ``G/G'`` for a cycle with generating voltage and lift it; search G directly if that fails."""
    D = commutator_subgroup(G)
    if D.order > 1:
        res = voltage_search(G, S, quotient(G, D), budget)
        if res.status == "found":
            return tuple(Letter(j, e) for j, e in res.word) * D.order
    res = exhaustive_hamiltonian_search(G, S, budget)
    if res.status == "budget":
        raise BudgetExhausted(f"search budget exhausted after {res.nodes} nodes")
    if res.status != "found":
        raise InvariantFailure("exhaustive search found no hamiltonian cycle", {"nodes": res.nodes})
    return tuple(Letter(j, e) for j, e in res.word)


def _lift_from(ctx: ProofContext, cyc: OrientedCycle, origin) -> Word:
    """Map a cycle over an arranged (possibly reduced) context back onto ``ctx`` and lift it."""
    w = tuple(Letter(origin[x.gen][0], x.sign * origin[x.gen][1]) for x in cyc.word)
    up = OrientedCycle(ctx.quotient, ctx.S, 0, w)
    if not is_hamiltonian_cycle(up):
        raise InvariantFailure("cycle is not hamiltonian after mapping back to G/N")
    g = voltage(up)
    if ctx.G.element_order(g) != ctx.N.order:
        raise InvariantFailure("voltage does not generate N after undoing the Frattini reduction",
                               {"voltage": ctx.G.labels[g], "N_order": ctx.N.order})
    return fgl_lift(up, ctx.N)


def _two_generator(ctx: ProofContext, chain: list[dict]) -> Word:
    if ctx.target.order % 2 == 0:
        c = two_gen_even_cycle(ctx)
        chain.append({"level": 2, "construction": "two_gen", "voltage": ctx.G.labels[voltage(c)]})
        return fgl_lift(c, ctx.N)
    red = frattini_reduce(ctx)
    cert = base_case_alpha2(red.reduced)
    chain.append({"frattini": [ctx.N.order, red.reduced.N.order]} | _cert_record(cert))
    c = extract_generating_cycle(cert)
    return _lift_from(ctx, c, red.reduced.origin)


def _main(ctx: ProofContext, chain: list[dict]) -> Word:
    red = frattini_reduce(ctx)
    certs, arr = certify_top(red.reduced)
    chain.append({"frattini": [ctx.N.order, red.reduced.N.order], "arrangement": arr.tag,
                  "order": [o for o, _ in arr.ctx.origin]})
    chain.extend(_cert_record(c) for c in certs)
    c = extract_generating_cycle(certs[-1])
    return _lift_from(ctx, c, arr.ctx.origin)
