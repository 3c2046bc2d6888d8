"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import io
import json
import random
import time
from contextlib import redirect_stdout
from functools import lru_cache

from conftest import all_entries, central_commutator_entries, connected_sum_instance, random_generating_set, word_product
from hamcayley import catalog as cat
from hamcayley.builder import (
    ProofContext,
    arranged_params,
    build_hamiltonian_cycle,
    contains_n2_sequence,
    fgl_lift,
    m3_r3_words,
    general_family_word,
    minimal_generating_subset,
    snake_cycle,
    two_gen_even_cycle,
)
from hamcayley.builder import driver, induction
from hamcayley.builder.arithmetic import adjacency_ok, sequence_value
from hamcayley.builder.base_case import two_gen_params
from hamcayley.builder.context import squares_order
from hamcayley.cayley import Letter, OrientedCycle, connected_sum, cycle_in_group, is_hamiltonian_cycle, voltage
from hamcayley.cli import main
from hamcayley.errors import CaseError
from hamcayley.group_core import commutator_subgroup, is_square_free, prime_factors, quotient, subgroup_generated
from hamcayley.oracle import enumerate_valid_sequences, verify_cycle, voltage_search

RANDOM_SETS = 20
SEED = 4242


def report(capsys, n: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[acceptance] criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@lru_cache(maxsize=None)
def instances() -> tuple[tuple[cat.CatalogEntry, tuple[str, ...], tuple[str, ...]], ...]:
    """``(entry, CLI source args, generator names)`` for suggested plus random generating sets."""
    sources = [(e, ("--catalog", e.name)) for e in cat.catalog()]
    sources += [(cat.load_group(p), ("--group", str(p))) for p in cat.ingested_files()]
    rng = random.Random(SEED)
    out = []
    for e, src in sources:
        G = e.group
        sets = [tuple(s) for s in e.suggested_generating_sets]
        for _ in range(RANDOM_SETS):
            sets.append(tuple(G.labels[g] for g in random_generating_set(G, rng)))
        out.extend((e, src, names) for names in sets)
    return tuple(out)


def ids_of(entry: cat.CatalogEntry, names) -> list[int]:
    return [entry.generators[n] if n in entry.generators else entry.group.labels.index(n) for n in names]


# 1 -------------------------------------------------------------------------


def test_criterion_1_catalog_coverage(capsys):
    t0 = time.perf_counter()
    failures = []
    paths: dict[str, int] = {}
    for e, src, names in instances():
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(["build", *src, "--gens", ",".join(names)])
        data = json.loads(buf.getvalue()) if code == 0 else {}
        if code != 0 or data.get("verified") is not True or data.get("order") != e.group.order:
            failures.append((e.name, names, code))
        else:
            paths[data["path"]] = paths.get(data["path"], 0) + 1
    elapsed = time.perf_counter() - t0
    groups = {e.name for e, _, _ in instances()}
    required = {"D4", "Q8", "D16", "M16", "ES32+", "Heis3", "Heis3xC2", "D4xC3", "Q8xC5"}
    ok = not failures and elapsed < 600 and required <= groups and len(cat.ingested_files()) == 5
    report(capsys, 1, ok, f"{len(instances())} builds over {len(groups)} groups in {elapsed:.1f}s, "
                          f"paths {dict(sorted(paths.items()))}, failures {failures[:3]}")
    assert ok


# 2 -------------------------------------------------------------------------


def test_criterion_2_m3_r3_voltages(capsys):
    e = cat.build("Heis3xC2")
    G = e.group
    ctx = ProofContext.create(G, commutator_subgroup(G), e.elements_of(["xg", "yg"]))
    p = arranged_params(ctx)
    a = ctx.S[p.a.gen] if p.a.sign > 0 else G.inv[ctx.S[p.a.gen]]
    b = ctx.S[p.b.gen] if p.b.sign > 0 else G.inv[ctx.S[p.b.gen]]
    gamma = G.commutator(a, b)
    expected = [G.mult[G.power(b, -6)][gamma], G.mult[G.power(b, -6)][G.power(gamma, 2)]]
    got, ham = [], []
    for w in m3_r3_words():
        c = OrientedCycle(ctx.quotient, ctx.S, 0, p.to_context(w))
        ham.append(is_hamiltonian_cycle(c) and verify_cycle(G, ctx.S, c.word, ctx.quotient).hamiltonian)
        got.append(word_product(G, list(ctx.S), c.word))
    ok = (p.n, p.m, p.r) == (6, 3, 3) and all(ham) and got == expected
    report(capsys, 2, ok, f"(n,m,r)=({p.n},{p.m},{p.r}), hamiltonian {ham}, "
                          f"voltages {[G.labels[g] for g in got]} vs {[G.labels[g] for g in expected]}")
    assert ok


# 3 -------------------------------------------------------------------------


def test_criterion_3_two_gen_identity(capsys):
    checked, bad = 0, []
    seen = set()
    for e, _, names in instances():
        G = e.group
        D = commutator_subgroup(G)
        S = ids_of(e, names)
        Sp = [S[i] for i in minimal_generating_subset(G, S)]
        if D.order == 1 or len(Sp) != 2 or (e.name, tuple(Sp)) in seen:
            continue
        seen.add((e.name, tuple(Sp)))
        ctx = ProofContext.create(G, D, Sp)
        if ctx.target.order % 2:
            continue
        p = two_gen_params(ctx)
        c = two_gen_even_cycle(ctx, p)
        s1 = ctx.S[p.a.gen] if p.a.sign > 0 else G.inv[ctx.S[p.a.gen]]
        s2 = ctx.S[p.b.gen] if p.b.sign > 0 else G.inv[ctx.S[p.b.gen]]
        checked += 1
        rep = verify_cycle(G, Sp, c.word, ctx.quotient)
        if not (rep.hamiltonian and word_product(G, Sp, c.word) == G.commutator(s1, s2)):
            bad.append((e.name, names))
    ok = checked > 0 and not bad
    report(capsys, 3, ok, f"{checked} two-generator instances, mismatches {bad[:3]}")
    assert ok


# 4 -------------------------------------------------------------------------


def test_criterion_4_connected_sum_law(capsys):
    rng = random.Random(SEED)
    pool = central_commutator_entries()
    done, bad, i = 0, 0, 0
    while done < 100:
        inst = connected_sum_instance(pool[i % len(pool)], rng)
        i += 1
        if inst is None:
            continue
        G, S, c1, c2, g, s, a = inst
        joined = connected_sum(c1, c2, g, s, a)
        ael = S[a.gen] if a.sign > 0 else G.inv[S[a.gen]]
        sel = S[s.gen] if s.sign > 0 else G.inv[S[s.gen]]
        expected = G.mult[G.mult[word_product(G, S, c1.word)][word_product(G, S, c2.word)]][G.commutator(ael, sel)]
        done += 1
        if word_product(G, S, joined.word) != expected:
            bad += 1
    ok = bad == 0
    report(capsys, 4, ok, f"{done - bad}/{done} connected sums satisfy the voltage law")
    assert ok


# 5 -------------------------------------------------------------------------


def test_criterion_5_family_voltage_step(capsys, monkeypatch):
    exercised: list[ProofContext] = []
    real = induction.base_case_alpha2

    def spy(ctx):
        exercised.append(ctx)
        return real(ctx)

    monkeypatch.setattr(induction, "base_case_alpha2", spy)
    monkeypatch.setattr(driver, "base_case_alpha2", spy)
    for e, _, names in instances():
        try:
            build_hamiltonian_cycle(e.group, ids_of(e, names))
        except CaseError:
            pass
    families, steps, bad = 0, 0, []
    seen = set()
    for ctx in exercised:
        if squares_order(ctx.Gprime(2).order) == 1:
            continue
        try:
            p = arranged_params(ctx)
        except CaseError:
            continue
        key = (ctx.G.name, ctx.S[:2], p)
        if p.m == 3 or key in seen:
            continue
        seen.add(key)
        G = ctx.G
        S = list(ctx.S)
        a = S[p.a.gen] if p.a.sign > 0 else G.inv[S[p.a.gen]]
        b = S[p.b.gen] if p.b.sign > 0 else G.inv[S[p.b.gen]]
        step = G.power(G.commutator(a, b), -2)
        volts = [word_product(G, S, p.to_context(general_family_word(p.n, p.m, p.r, i)))
                 for i in range(1, (p.n - 1) // 2 + 1)]
        families += 1
        for v, w in zip(volts, volts[1:]):
            steps += 1
            if w != G.mult[v][step]:
                bad.append((G.name, p))
    ok = families > 0 and steps > 0 and not bad
    report(capsys, 5, ok, f"{families} exercised m!=3 families, {steps} consecutive pairs, mismatches {bad[:2]}")
    assert ok


# 6 -------------------------------------------------------------------------


def _contains(G, y, K) -> bool:
    return K.members <= subgroup_generated(G, [y]).members


def test_criterion_6_contains_n2_oracle(capsys):
    rng = random.Random(SEED)
    total, bad = 0, []
    orders = [n for n in range(1, 31) if is_square_free(n)]
    for n in orders:
        G, _ = cat.cyclic(n)
        N = subgroup_generated(G, [0] if n == 1 else [1])
        N2 = subgroup_generated(G, [G.mult[y][y] for y in range(n)])
        for k in (2, 3):
            for _ in range(10):
                T = [rng.randrange(n) for _ in range(k)]
                while subgroup_generated(G, T).order != n:
                    T = [rng.randrange(n) for _ in range(k)]
                h = rng.randrange(n)
                m = rng.randint(2, 12)
                enum = enumerate_valid_sequences(N, T, h, m)
                reach_full = any(_contains(G, v, N) for v in enum.products)
                reach_sq = any(_contains(G, v, N2) for v in enum.products)
                total += 1
                try:
                    seq, full = contains_n2_sequence(N, T, h, m, strict=m >= n)
                except CaseError:
                    if reach_sq:
                        bad.append((n, T, h, m, "missed"))
                    continue
                y = sequence_value(G, T, h, seq)
                good = (len(seq) == m - 1 and adjacency_ok(seq) and y in enum.products
                        and _contains(G, y, N if full else N2) and full == reach_full)
                if not good:
                    bad.append((n, T, h, m))
    ok = not bad
    report(capsys, 6, ok, f"{total - len(bad)}/{total} instances over |N| in {orders}")
    assert ok


# 7 -------------------------------------------------------------------------


def test_criterion_7_fgl_lifts(capsys):
    rng = random.Random(SEED)
    pool = [e for e in cat.catalog() if commutator_subgroup(e.group).order > 1]
    lifted, bad, tries = 0, [], 0
    while lifted < 50 and tries < 5000:
        tries += 1
        e = pool[tries % len(pool)]
        G = e.group
        D = commutator_subgroup(G)
        q = quotient(G, D)
        S = [s for s in random_generating_set(G, rng) if q(s) != 0]
        if tries % 2:
            idx = list(range(len(S)))
            rng.shuffle(idx)
            c = snake_cycle(q, S, idx)
        else:
            res = voltage_search(G, S, q)
            if res.status != "found":
                continue
            c = OrientedCycle(q, tuple(S), 0, tuple(Letter(j, s) for j, s in res.word))
        if not is_hamiltonian_cycle(c) or G.element_order(voltage(c)) != D.order:
            continue
        w = fgl_lift(c)
        lifted += 1
        if not verify_cycle(G, S, w).hamiltonian:
            bad.append(e.name)
    ok = lifted == 50 and not bad
    report(capsys, 7, ok, f"{lifted - len(bad)}/{lifted} lifted words hamiltonian ({tries} draws)")
    assert ok


# 8 -------------------------------------------------------------------------


def test_criterion_8_three_groups_fallback(capsys):
    entries = [e for e in all_entries() if set(prime_factors(e.group.order)) == {3}]
    rows, ok = [], True
    for e in entries:
        t0 = time.perf_counter()
        res = build_hamiltonian_cycle(e.group, e.elements_of(e.suggested_generating_sets[0]))
        dt = time.perf_counter() - t0
        good = res.path_taken == "fallback_search" and res.verified and dt < 60
        ok &= good
        rows.append(f"{e.name}({e.group.order}) {dt:.2f}s {'ok' if good else 'FAIL'}")
    ok &= {e.group.order for e in entries} >= {27, 81}
    report(capsys, 8, ok, ", ".join(rows))
    assert ok


# 9 -------------------------------------------------------------------------


def _random_words(G, S, base_word, rng, count):
    k = len(S)
    n = G.order
    for i in range(count):
        mode = i % 4
        if mode == 0:
            yield tuple(Letter(rng.randrange(k), rng.choice((1, -1))) for _ in range(n + rng.choice((-1, 0, 0, 1))))
        elif mode == 1:
            r = rng.randrange(n)
            yield base_word[r:] + base_word[:r]
        elif mode == 2:
            w = list(base_word)
            j = rng.randrange(n)
            w[j] = Letter(rng.randrange(k), rng.choice((1, -1)))
            yield tuple(w)
        else:
            w = list(base_word)
            j, l = rng.randrange(n), rng.randrange(n)
            w[j], w[l] = w[l], w[j]
            yield tuple(w)


def test_criterion_9_dual_verifier_agreement(capsys):
    rng = random.Random(SEED)
    total, disagree, positives = 0, [], 0
    groups = 0
    for e in all_entries():
        G = e.group
        S = e.elements_of(e.suggested_generating_sets[0])
        base = build_hamiltonian_cycle(G, S).word
        groups += 1
        for w in _random_words(G, S, base, rng, 1000):
            a = verify_cycle(G, S, w).hamiltonian
            b = is_hamiltonian_cycle(cycle_in_group(G, S, w))
            total += 1
            positives += a
            if a != b:
                disagree.append((e.name, len(w)))
    ok = not disagree and total == 1000 * groups
    report(capsys, 9, ok, f"{total} words over {groups} groups, {positives} hamiltonian, disagreements {len(disagree)}")
    assert ok
