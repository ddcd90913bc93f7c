from fractions import Fraction

from graphstar.exactsolve import solve_exact

F = Fraction


def test_unique_solution():
    sol = solve_exact([[F(2), F(1)], [F(1), F(-1)]], [F(5), F(-1)])
    assert sol.status == "unique"
    assert sol.particular == [F(4, 3), F(7, 3)]


def test_exactness_with_awkward_fractions():
    rows = [[F(1, 3), F(1, 7)], [F(2, 5), F(3, 11)]]
    rhs = [F(1), F(2)]
    sol = solve_exact(rows, rhs)
    x, y = sol.particular
    for row, b in zip(rows, rhs):
        assert row[0] * x + row[1] * y == b


def test_affine_solution_space():
    sol = solve_exact([[F(1), F(1), F(0)]], [F(3)])
    assert sol.status == "affine"
    assert sol.dimension == 2
    x = sol.particular
    assert x[0] + x[1] == 3


def test_infeasible():
    sol = solve_exact([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)])
    assert sol.status == "infeasible"


def test_zero_columns_system():
    sol = solve_exact([[]], [F(0)])
    assert sol.status == "unique" and sol.particular == []
    sol = solve_exact([[]], [F(1)])
    assert sol.status == "infeasible"


def test_redundant_rows_remain_unique():
    sol = solve_exact([[F(1), F(2)], [F(2), F(4)], [F(0), F(1)]],
                      [F(5), F(10), F(2)])
    assert sol.status == "unique"
    assert sol.particular == [F(1), F(2)]
