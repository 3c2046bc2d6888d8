from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import central_commutator_entries, connected_sum_instance, word_product
from hamcayley import catalog as cat
from hamcayley.cayley import (
    Letter,
    OrientedCycle,
    connected_sum,
    covers,
    cycle_in_group,
    is_hamiltonian_cycle,
    relabel,
    reverse,
    rotate_start,
    run,
    to_dot,
    trace_cycle,
    translate,
    voltage,
    word_from_json,
    word_to_json,
)
from hamcayley.errors import ContractViolation
from hamcayley.group_core import commutator_subgroup, identity_quotient, quotient
from hamcayley.oracle import verify_cycle

CENTRAL = central_commutator_entries()


def d4():
    e = cat.build("D4")
    return e.group, e.elements_of(["r", "s"])


def test_square_cycle_in_d4():
    G, S = d4()
    w = run(0, 3) + run(1, 1) + run(0, 3) + run(1, -1)
    c = cycle_in_group(G, S, w)
    assert is_hamiltonian_cycle(c)
    assert trace_cycle(c)[0] == trace_cycle(c)[-1] == 0
    assert covers(w, [1])
    assert not covers(w, [0])


def test_words_are_never_reduced():
    w = run(0, 1) + run(0, -1)
    assert len(w) == 2
    assert w[0].inverse() == w[1]


def test_voltage_of_quotient_cycle_lies_in_kernel():
    e = cat.build("Heis3xC2")
    G = e.group
    S = e.elements_of(["x", "y", "g"])
    q = quotient(G, commutator_subgroup(G))
    w = run(0, 3) + run(1, 3) + run(0, -3) + run(1, -3)
    c = OrientedCycle(q, tuple(S), 0, w)
    assert voltage(c, check=False) in q.kernel.members
    assert voltage(c, check=False) == word_product(G, S, w)


def test_relabel_maps_letters():
    w = (Letter(0, 1), Letter(1, -1))
    assert relabel(w, (2, 0), (-1, 1)) == (Letter(2, -1), Letter(0, -1))


def test_json_roundtrip_and_errors():
    w = (Letter(0, 1), Letter(1, -1))
    data = word_to_json(w, ["r", "s"])
    assert data == [{"gen": "r", "sign": 1}, {"gen": "s", "sign": -1}]
    assert word_from_json(data, ["r", "s"]) == w
    with pytest.raises(KeyError):
        word_from_json([{"gen": "z", "sign": 1}], ["r", "s"])
    with pytest.raises(ValueError):
        word_from_json([{"gen": "r", "sign": 2}], ["r", "s"])


def test_dot_colours_cycle_edges():
    G, S = d4()
    w = run(0, 3) + run(1, 1) + run(0, 3) + run(1, -1)
    dot = to_dot(identity_quotient(G), S, ["r", "s"], w)
    assert dot.startswith("graph cayley {")
    assert dot.count("color=black") == 8
    assert dot.count("color=gray") > 0


def test_connected_sum_rejects_overlap():
    G, S = d4()
    w = run(0, 3) + run(1, 1) + run(0, 3) + run(1, -1)
    c = cycle_in_group(G, S, w)
    with pytest.raises(ContractViolation):
        connected_sum(c, c, 0, Letter(0, 1), Letter(1, 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.sampled_from(range(len(CENTRAL))))
def test_connected_sum_voltage_law(seed, idx):
    inst = connected_sum_instance(CENTRAL[idx], random.Random(seed))
    if inst is None:
        return
    G, S, c1, c2, g, s, a = inst
    joined = connected_sum(c1, c2, g, s, a)
    assert is_hamiltonian_cycle(joined, set(trace_cycle(c1)) | set(trace_cycle(c2)))
    ael = S[a.gen] if a.sign > 0 else G.inv[S[a.gen]]
    sel = S[s.gen] if s.sign > 0 else G.inv[S[s.gen]]
    expected = G.product([word_product(G, S, c1.word), word_product(G, S, c2.word), G.commutator(ael, sel)])
    assert word_product(G, S, joined.word) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.sampled_from(range(len(CENTRAL))))
def test_rotation_translation_reversal_keep_hamiltonicity(seed, idx):
    inst = connected_sum_instance(CENTRAL[idx], random.Random(seed))
    if inst is None:
        return
    G, S, c1, *_ = inst
    rng = random.Random(seed)
    v = voltage(c1)
    r = rotate_start(c1, rng.randrange(len(c1.word)))
    assert is_hamiltonian_cycle(r, set(trace_cycle(c1)))
    assert voltage(r) == v
    assert voltage(reverse(c1)) == G.inv[v]
    T = c1.quotient.target
    t = rng.randrange(T.order)
    moved = translate(c1, t)
    assert is_hamiltonian_cycle(moved, {T.mult[t][x] for x in trace_cycle(c1)})
    assert voltage(moved) == v


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["D4", "Q8", "Heis3", "D4xC3"]), st.data())
def test_two_verifiers_agree(name, data):
    e = cat.build(name)
    G = e.group
    S = e.elements_of(e.suggested_generating_sets[0])
    letter = st.builds(Letter, st.integers(0, len(S) - 1), st.sampled_from((1, -1)))
    w = tuple(data.draw(st.lists(letter, min_size=G.order - 1, max_size=G.order + 1)))
    assert verify_cycle(G, S, w).hamiltonian == is_hamiltonian_cycle(cycle_in_group(G, S, w))
