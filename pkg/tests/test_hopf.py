"""Constructors, the axiom checker, duals, and the file loader."""

import itertools
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ographinv.hopf import (
    HopfMonoid,
    antipode_power,
    check_axioms,
    dual_hopf,
    load_structure_constants,
    make_exterior,
    make_group_algebra,
    make_uq_borel,
)
from ographinv.scalars import zeta
from ographinv.tensors import GradedTensor


def cyclic(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def sym3():
    perms = list(itertools.permutations(range(3)))

    def comp(p, q):
        return tuple(p[q[i]] for i in range(3))

    return [[perms.index(comp(p, q)) for q in perms] for p in perms]


def test_group_algebra_axioms():
    for table in (cyclic(2), cyclic(5), sym3()):
        assert check_axioms(make_group_algebra(table)).ok


def test_group_table_rejects_non_group():
    with pytest.raises(ValueError, match="associative"):
        make_group_algebra([[1, 0], [0, 0]])
    with pytest.raises(ValueError, match="inverse"):
        make_group_algebra([[0, 1], [1, 1]])
    with pytest.raises(ValueError, match="identity"):
        make_group_algebra([[0, 0], [0, 0]])
    with pytest.raises(ValueError, match="table"):
        make_group_algebra([[0, 1], [1]])


def test_group_antipode_is_inversion():
    H = make_group_algebra(cyclic(5))
    # g -> g^-1, so S sends basis element i to 5 - i mod 5
    for i in range(5):
        assert H.S.matrix_entry((i, (5 - i) % 5)) == 1


@given(st.integers(min_value=2, max_value=8))
@settings(max_examples=7, deadline=None)
def test_cyclic_group_axioms(n):
    assert check_axioms(make_group_algebra(cyclic(n))).ok


def test_uq_borel_axioms():
    assert check_axioms(make_uq_borel(2)).ok
    assert check_axioms(make_uq_borel(3)).ok


def test_uq_relations():
    n = 3
    H = make_uq_borel(n)
    q = zeta(n)
    E, K = n, 1  # basis index of E^a K^b is a*n + b
    # KE = qEK and E^n = 0
    assert H.M.matrix_entry((K, E, E + K)) == q
    assert H.M.matrix_entry((E, K, E + K)) == 1
    for k in range(n * n):
        assert H.M.entry((E, 2 * n, k)) == 0  # E * E^2
    # Delta(EK) = EK (x) K + K^2 (x) EK
    assert H.delta.matrix_entry((E + K, E + K, K)) == 1
    assert H.delta.matrix_entry((E + K, 2, E + K)) == 1
    # S(K) = K^(n-1), S(E) = -q^(n-1) E K^(n-1)
    assert H.S.matrix_entry((K, n - 1)) == 1
    assert H.S.matrix_entry((E, E + n - 1)) == -(q ** (n - 1))


def test_uq_antipode_square_conjugates_by_k():
    H = make_uq_borel(3)
    q = zeta(3)
    S2 = antipode_power(H, 2)
    assert S2.matrix_entry((3, 3)) == q ** -1
    S0 = antipode_power(H, 0)
    for i in range(9):
        for j in range(9):
            assert S0.matrix_entry((i, j)) == (1 if i == j else 0)
    assert antipode_power(H, -1) == H.S_inv


def test_exterior_axioms():
    assert check_axioms(make_exterior(1)).ok
    assert check_axioms(make_exterior(2)).ok


def test_exterior_relations():
    H = make_exterior(2)
    # generators square to zero and anticommute
    for k in range(4):
        assert H.M.entry((1, 1, k)) == 0
        assert H.M.entry((2, 2, k)) == 0
    assert H.M.matrix_entry((1, 2, 3)) == 1
    assert H.M.matrix_entry((2, 1, 3)) == -1
    # S negates generators and fixes the top element
    assert H.S.matrix_entry((1, 1)) == -1
    assert H.S.matrix_entry((3, 3)) == 1
    assert H.space.parity == (0, 1, 1, 0)


def test_exterior_without_koszul_fails_bialgebra():
    rep = check_axioms(make_exterior(2, koszul=False))
    assert not rep.ok
    assert "bialgebra compatibility" in [name for name, _, _ in rep.failures]


def test_corrupted_product_reports_associativity_with_witness():
    H = make_group_algebra(cyclic(2))
    bad = {(0, 0, 0): Fraction(1), (0, 1, 0): Fraction(1),
           (1, 0, 1): Fraction(1), (1, 1, 0): Fraction(1)}
    M = GradedTensor.from_map([H.space, H.space], [H.space], bad)
    broken = HopfMonoid(H.space, M, H.unit, H.delta, H.eps, H.S, H.S_inv)
    rep = check_axioms(broken)
    names = [name for name, _, _ in rep.failures]
    assert "associativity" in names
    witness = next(w for name, _, w in rep.failures if name == "associativity")
    assert witness is not None and len(witness) == 4


def test_dual_of_group_algebra():
    H = make_group_algebra(cyclic(3))
    D = dual_hopf(H)
    assert check_axioms(D).ok
    # dual basis elements are orthogonal idempotents
    assert D.M.matrix_entry((0, 0, 0)) == 1
    assert D.M.entry((0, 1, 0)) == 0
    DD = dual_hopf(D)
    for a, b in [(H.M, DD.M), (H.unit, DD.unit), (H.delta, DD.delta),
                 (H.eps, DD.eps), (H.S, DD.S), (H.S_inv, DD.S_inv)]:
        assert a == b


def test_dual_passes_axioms():
    assert check_axioms(dual_hopf(make_uq_borel(3))).ok
    assert check_axioms(dual_hopf(make_exterior(2))).ok


def test_double_dual_of_exterior_is_identity():
    H = make_exterior(2)
    DD = dual_hopf(dual_hopf(H))
    assert DD.M == H.M and DD.delta == H.delta and DD.S == H.S


def test_load_round_trip():
    text = resources.files("ographinv").joinpath("data/kz2.hopf").read_text()
    H = load_structure_constants(text)
    G = make_group_algebra(cyclic(2))
    for a, b in [(H.M, G.M), (H.unit, G.unit), (H.delta, G.delta),
                 (H.eps, G.eps), (H.S, G.S), (H.S_inv, G.S_inv)]:
        assert a == b


def test_load_solves_missing_antipode():
    text = resources.files("ographinv").joinpath("data/kz2.hopf").read_text()
    stripped = "\n".join(
        line for line in text.splitlines() if not line.startswith("S ")
    )
    H = load_structure_constants(stripped)
    assert H.S.matrix_entry((0, 0)) == 1
    assert H.S.matrix_entry((1, 1)) == 1
    assert H.S.matrix_entry((0, 1)) == 0


def test_load_solves_graded_antipode():
    text = """
hopf dim=2 field=rational
parity=01
M 0 0 -> 0 : 1
M 0 1 -> 1 : 1
M 1 0 -> 1 : 1
unit -> 0 : 1
D 0 -> 0 0 : 1
D 1 -> 1 0 : 1
D 1 -> 0 1 : 1
eps 0 : 1
"""
    H = load_structure_constants(text)
    assert H.S.matrix_entry((1, 1)) == -1
    assert check_axioms(H).ok


def test_load_names_broken_identity():
    text = """
hopf dim=2 field=rational
M 0 0 -> 0 : 1
M 0 1 -> 1 : 1
M 1 0 -> 1 : 1
M 1 1 -> 0 : 1
unit -> 0 : 1
D 0 -> 0 0 : 1
D 1 -> 1 1 : 1
D 1 -> 0 0 : 1
eps 0 : 1
eps 1 : 1
S 0 -> 0 : 1
S 1 -> 1 : 1
"""
    with pytest.raises(ValueError, match="coassociativity"):
        load_structure_constants(text)


def test_load_rejects_garbage():
    with pytest.raises(ValueError, match="header"):
        load_structure_constants("M 0 0 -> 0 : 1")
    with pytest.raises(ValueError, match="unrecognized"):
        load_structure_constants("hopf dim=2 field=rational\nQ 0 : 1")
    with pytest.raises(ValueError, match="out of range"):
        load_structure_constants("hopf dim=2 field=rational\nM 0 2 -> 0 : 1")


def test_cyclotomic_entries_parse():
    text = """
hopf dim=1 field=zeta(3)
M 0 0 -> 0 : 1
unit -> 0 : 1
D 0 -> 0 0 : 1
eps 0 : 1
S 0 -> 0 : 1
"""
    H = load_structure_constants(text)
    assert H.field == "zeta(3)"
    assert check_axioms(H).ok
