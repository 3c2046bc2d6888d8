from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamcayley import catalog as cat
from hamcayley.errors import ContractViolation, ResourceError
from hamcayley.group_core import (
    FiniteGroup,
    center,
    commutator_subgroup,
    frattini_of_cyclic,
    generate_group,
    group_from_table,
    is_cyclic,
    is_nilpotent,
    is_square_free,
    lower_central_series,
    prime_factors,
    quotient,
    subgroup_generated,
    subgroup_of_order,
)

SMALL = ["D4", "Q8", "D8", "M16", "Heis3", "D4xC3", "Q8xC3", "Heis3xC2"]


@pytest.mark.parametrize("name", SMALL)
def test_tables_are_associative(name):
    assert cat.build(name).group.check_associative()


@pytest.mark.parametrize("name", SMALL)
def test_identity_and_inverses(name):
    G = cat.build(name).group
    for g in range(G.order):
        assert G.mult[0][g] == g == G.mult[g][0]
        assert G.mult[g][G.inv[g]] == 0 == G.mult[G.inv[g]][g]


@pytest.mark.parametrize(("name", "order", "dprime"), [
    ("D4", 8, 2), ("Q8", 8, 2), ("D16", 32, 8), ("M16", 16, 2), ("ES32+", 32, 2),
    ("Heis3", 27, 3), ("Heis3xC2", 54, 3), ("D4xC3", 24, 2), ("Q8xC5", 40, 2),
])
def test_known_orders(name, order, dprime):
    G = cat.build(name).group
    assert G.order == order
    D = commutator_subgroup(G)
    assert D.order == dprime
    assert is_cyclic(D)[0]
    assert is_nilpotent(G)


def test_s3_is_not_nilpotent():
    G = cat.build("S3").group
    assert not is_nilpotent(G)
    assert commutator_subgroup(G).order == 3


def test_permutations_compose_left_to_right():
    # a = (0 1), b = (1 2) on three points; a*b applies a first
    G = generate_group([[1, 0, 2], [0, 2, 1]])
    a, b = G.generators
    ab = G.permutations[G.mult[a][b]]
    assert ab == (2, 0, 1)


def test_commutator_convention():
    G = cat.build("D4").group
    for a in range(G.order):
        for b in range(G.order):
            expected = G.product([G.inv[a], G.inv[b], a, b])
            assert G.commutator(a, b) == expected


def test_center_of_heisenberg_is_commutator():
    G = cat.build("Heis3").group
    assert center(G).members == commutator_subgroup(G).members


def test_lower_central_series_terminates():
    series = lower_central_series(cat.build("D16").group)
    assert series[-1].order == 1
    assert [H.order for H in series] == sorted((H.order for H in series), reverse=True)


def test_quotient_is_homomorphism():
    G = cat.build("Heis3xC2").group
    q = quotient(G, commutator_subgroup(G))
    assert q.target.order == 18
    T = q.target
    for a in range(0, G.order, 5):
        for b in range(G.order):
            assert q(G.mult[a][b]) == T.mult[q(a)][q(b)]


def test_quotient_rejects_non_normal():
    G = cat.build("D4").group
    s = cat.build("D4").generators["s"]
    with pytest.raises(ContractViolation):
        quotient(G, subgroup_generated(G, [s]))


def test_table_relabels_identity():
    # Z/3 with the identity stored at position 2
    t = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = group_from_table(t, labels=["u", "v", "e"])
    assert G.labels[0] == "e"
    assert G.check_associative()


def test_bad_table_rejected():
    with pytest.raises(ContractViolation):
        FiniteGroup([[0, 1], [0, 1]])


def test_order_bound_from_environment(monkeypatch):
    monkeypatch.setenv("HAMCAYLEY_MAX_ORDER", "10")
    with pytest.raises(ResourceError):
        cat.build("D16")


def test_frattini_of_cyclic_is_square_free_quotient():
    G, _ = cat.cyclic(36)
    N = subgroup_generated(G, [1])
    Phi = frattini_of_cyclic(N)
    assert N.order // Phi.order == 6
    assert subgroup_of_order(N, 4).order == 4


@given(st.integers(min_value=1, max_value=5000))
def test_prime_factors_multiply_back(n):
    ps = prime_factors(n)
    assert all(n % p == 0 for p in ps)
    rad = 1
    for p in ps:
        rad *= p
    assert is_square_free(n) == (rad == n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_associativity_on_random_triples(name, data):
    G = cat.build(name).group
    el = st.integers(min_value=0, max_value=G.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert G.mult[G.mult[a][b]][c] == G.mult[a][G.mult[b][c]]
