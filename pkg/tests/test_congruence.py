import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from latforge.congruence import (
    Congruence,
    all_congruences,
    brute_force_congruences,
    congruence_join,
    is_congruence,
    is_simple,
    nontrivial_congruence,
    princ_set,
    princ_signatures,
    principal_congruence,
    unit_congruence,
    zero_congruence,
)
from latforge.order import OrderError, as_lattice, chain, from_covers, order_isomorphism
from latforge.rigid_family import enumerate_lattices


def test_n5_con_b_c(N5):
    theta = principal_congruence(N5, "b", "c")
    assert theta.signature() == (("0",), ("1",), ("a",), ("b", "c"))
    assert theta.to_json() == {"blocks": [["0"], ["a"], ["b", "c"], ["1"]]}


def test_n5_con_a_1_collapses_more(N5):
    theta = principal_congruence(N5, "a", "1")
    assert theta.collapses("0", "b") and theta.collapses("0", "c")


def test_is_congruence_examples(N5, M3):
    assert is_congruence(N5, [["0"], ["a"], ["b", "c"], ["1"]])
    assert not is_congruence(N5, [["0", "a"], ["b"], ["c"], ["1"]])
    assert is_congruence(M3, [["0"], ["a"], ["b"], ["c"], ["1"]])
    assert not is_congruence(M3, [["0", "a"], ["b"], ["c"], ["1"]])


def test_simplicity_examples(M3, N5):
    assert is_simple(M3)
    assert not is_simple(N5)
    assert is_simple(as_lattice(chain(2)))
    assert nontrivial_congruence(M3) is None
    w = nontrivial_congruence(N5)
    assert is_congruence(N5, w.blocks) and not w.is_unit() and not w.is_zero()


def test_simplicity_needs_two_elements():
    with pytest.raises(OrderError):
        is_simple(as_lattice(from_covers(["z"], [])))


def test_princ_of_simple_lattice_is_two_chain(M3):
    ps = princ_set(M3)
    assert len(ps) == 2
    assert order_isomorphism(ps.order, chain(2)) is not None


def test_princ_of_three_chain():
    ps = princ_set(as_lattice(chain(3)))
    assert len(ps) == 4
    assert ps.witnesses == [("c0", "c0"), ("c0", "c1"), ("c1", "c2"), ("c0", "c2")]
    # zero below both, both below unit, the middle two incomparable
    P = ps.order
    assert P.elements[P.bottom] == "con(c0,c0)" and P.elements[P.top] == "con(c0,c2)"
    assert not P.leq("con(c0,c1)", "con(c1,c2)") and not P.leq("con(c1,c2)", "con(c0,c1)")


def test_princ_json_has_witnesses():
    data = princ_set(as_lattice(chain(3))).to_json()
    assert data["witnesses"]["con(c0,c1)"] == ["c0", "c1"]
    assert len(data["elements"]) == 4


@pytest.mark.parametrize("n", range(2, 7))
def test_all_congruences_match_partition_filter(n):
    for L in enumerate_lattices(n):
        ours = sorted(c.signature() for c in all_congruences(L))
        ref = sorted(oracles.partition_sig(p, L.elements) for p in oracles.all_congruences(L))
        assert ours == ref


def test_brute_force_helper_matches_oracle(N5):
    assert len(brute_force_congruences(N5)) == len(oracles.all_congruences(N5)) == 5


@pytest.mark.parametrize("n", range(3, 7))
def test_princ_members_match_partition_filter(n):
    for L in enumerate_lattices(n):
        congs = oracles.all_congruences(L)
        ref = {oracles.principal(L, congs, i, j) for i in range(L.n) for j in range(L.n)}
        ours = {m.signature() for m in princ_set(L).members}
        assert ours == ref


def test_princ_signatures_agree_with_closure():
    for L in enumerate_lattices(6):
        for (a, b), sig in princ_signatures(L).items():
            assert sig == principal_congruence(L, a, b).signature()


def test_join_and_order(N5):
    x = principal_congruence(N5, "b", "c")
    y = principal_congruence(N5, "0", "a")
    z = congruence_join(x, y)
    assert x <= z and y <= z and is_congruence(N5, z.blocks)
    assert zero_congruence(N5) <= x <= unit_congruence(N5)
    assert not (y <= x)


def test_congruence_from_blocks_requires_cover(N5):
    with pytest.raises(OrderError):
        Congruence.from_blocks(N5, [["0", "a"]])


def _lattices_up_to(n):
    out = []
    for k in range(2, n + 1):
        out.extend(enumerate_lattices(k))
    return out


LATS6 = _lattices_up_to(6)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(LATS6), st.data())
def test_principal_congruence_properties(L, data):
    a = data.draw(st.integers(0, L.n - 1))
    b = data.draw(st.integers(0, L.n - 1))
    x, y = L.elements[a], L.elements[b]
    theta = principal_congruence(L, x, y)
    assert theta.collapses(x, y)
    assert is_congruence(L, theta.blocks)
    # con(a, b) = con(a ∧ b, a ∨ b)
    assert theta == principal_congruence(L, L.elements[L.meet[a][b]], L.elements[L.join[a][b]])


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(LATS6), st.data())
def test_monotonicity(L, data):
    chain_pts = sorted(data.draw(st.lists(st.integers(0, L.n - 1), min_size=4, max_size=4)))
    # turn four indices into a <= a' <= b' <= b via meets and joins
    a = L.bottom
    for i in chain_pts:
        a = L.meet[a][i]
    p, q = chain_pts[1], chain_pts[2]
    a1 = L.join[a][L.meet[p][q]]
    b1 = L.join[a1][q]
    b = L.join[b1][chain_pts[3]]
    e = L.elements
    assert principal_congruence(L, e[a1], e[b1]) <= principal_congruence(L, e[a], e[b])
