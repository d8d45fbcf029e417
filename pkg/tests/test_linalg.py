from fractions import Fraction

from ographinv.linalg import EchelonBasis, invert, kernel, rank, rref, solve
from ographinv.scalars import is_zero, zeta

F = Fraction


def test_rref_identifies_pivots():
    rows, pivots = rref([[F(0), F(2)], [F(1), F(3)]])
    assert pivots == [0, 1]
    assert rows[0] == [F(1), F(0)]
    assert rows[1] == [F(0), F(1)]


def test_rank_of_singular_matrix():
    m = [[F(1), F(2)], [F(2), F(4)]]
    assert rank(m) == 1


def test_kernel_spans_null_space():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    basis = kernel(m)
    assert len(basis) == 2
    for v in basis:
        for row in m:
            assert is_zero(sum(r * x for r, x in zip(row, v)))


def test_kernel_of_full_rank_is_empty():
    assert kernel([[F(1), F(0)], [F(0), F(1)]]) == []


def test_solve_finds_solution():
    m = [[F(2), F(1)], [F(1), F(-1)]]
    b = [F(5), F(1)]
    x = solve(m, b)
    assert x == [F(2), F(1)]


def test_solve_reports_inconsistency():
    m = [[F(1), F(1)], [F(2), F(2)]]
    assert solve(m, [F(1), F(3)]) is None


def test_invert_round_trips():
    z = zeta(3)
    m = [[1 + z, F(1)], [F(0), z]]
    inv = invert(m)
    n = len(m)
    prod = [
        [sum(m[i][k] * inv[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            assert prod[i][j] == (F(1) if i == j else F(0))


def test_invert_singular_returns_none():
    assert invert([[F(1), F(2)], [F(2), F(4)]]) is None


def test_cyclotomic_linear_system():
    z = zeta(5)
    # x + z*y = z^2, x - y = 0  =>  x = y = z^2/(1+z)
    m = [[F(1), z], [F(1), F(-1)]]
    b = [z * z, F(0)]
    x = solve(m, b)
    assert x is not None
    want = z * z / (1 + z)
    assert x[0] == want and x[1] == want


def test_echelon_basis_rank_and_membership():
    eb = EchelonBasis(3)
    assert eb.add([F(1), F(2), F(0)])
    assert eb.add([F(0), F(1), F(1)])
    assert not eb.add([F(1), F(3), F(1)])  # dependent on the first two
    assert eb.rank == 2
    assert eb.contains([F(2), F(5), F(1)])
    assert not eb.contains([F(0), F(0), F(1)])
