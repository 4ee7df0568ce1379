from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinberg_gz.algebra import (
    Dual,
    Mat,
    bareiss_det,
    brute_force_minor_sums,
    charpoly,
    det,
    eps_part,
    identity,
    leading_block,
    mat_from_json,
    mat_mul,
    mat_to_json,
    new_tag,
    parse_rational,
    principal_minor_sums,
    rank,
    triangular_inverse,
    unit,
)

from strategies import lower_borel, rationals, square


def test_mat_mul_identity_and_units():
    m = Mat([[1, 2], [3, 4]])
    assert mat_mul(identity(2), m) == m
    assert mat_mul(m, identity(2)) == m
    # E_12 E_21 = E_11
    assert unit(2, 0, 1) @ unit(2, 1, 0) == unit(2, 0, 0)


def test_mat_mul_size_mismatch():
    with pytest.raises(ValueError):
        mat_mul(identity(2), identity(3))


def test_non_square_rejected():
    with pytest.raises(ValueError):
        Mat([[1, 2], [3]])


@given(square(), square(n=None))
def test_mat_mul_associative(a, b):
    n = a.n
    c = Mat([[Fraction(i - j, 2) for j in range(n)] for i in range(n)])
    b = Mat([[b[i % b.n, j % b.n] for j in range(n)] for i in range(n)])
    assert (a @ b) @ c == a @ (b @ c)


def test_det_examples():
    assert det(Mat([[1, 2], [3, 4]])) == -2
    assert det(identity(5)) == 1
    assert det(Mat([[1, 2], [2, 4]])) == 0


def test_det_matches_oracle(oracles):
    for case in oracles["charpoly"]:
        m = Mat(case["matrix"])
        assert str(det(m)) == case["det"]
        assert [str(v) for v in principal_minor_sums(m)] == case["minor_sums"]


@given(square(max_n=5))
def test_bareiss_matches_berkowitz(m):
    # det over duals goes through Berkowitz; a zero-slope dual isolates that path
    tag = new_tag()
    dm = m.map(lambda v: Dual(v, Fraction(0), tag))
    assert det(dm).value == bareiss_det(m)


@given(square(max_n=5), square(max_n=5))
def test_det_multiplicative(a, b):
    b = Mat([[b[i % b.n, j % b.n] for j in range(a.n)] for i in range(a.n)])
    assert det(a @ b) == det(a) * det(b)


@given(square(max_n=5))
def test_minor_sums_vs_brute_force(m):
    assert principal_minor_sums(m) == brute_force_minor_sums(m)


@given(square(max_n=4))
def test_charpoly_cayley_hamilton(m):
    # charpoly lists det(tI - M) from t^n down; evaluate it at M
    n = m.n
    acc = Mat([[0] * n for _ in range(n)])
    power = identity(n)
    for c in reversed(charpoly(m)):
        acc = acc + power.scale(c)
        power = power @ m
    assert acc == Mat([[0] * n for _ in range(n)])


def test_minor_sums_trivial_cases():
    assert principal_minor_sums(identity(3)) == (3, 3, 1)
    assert principal_minor_sums(Mat([[7]])) == (7,)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_leading_block(i):
    m = Mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    b = leading_block(m, i)
    assert b.n == i
    assert all(b[r, c] == m[r, c] for r in range(i) for c in range(i))


@pytest.mark.parametrize("i", [0, 4])
def test_leading_block_out_of_range(i):
    with pytest.raises(ValueError):
        leading_block(identity(3), i)


@given(lower_borel())
def test_triangular_inverse_lower(a):
    assert a @ triangular_inverse(a) == identity(a.n)


@given(lower_borel())
def test_triangular_inverse_upper(a):
    u = a.T
    assert triangular_inverse(u) @ u == identity(a.n)


def test_triangular_inverse_errors():
    with pytest.raises(ZeroDivisionError):
        triangular_inverse(Mat([[1, 0], [2, 0]]))
    with pytest.raises(ValueError):
        triangular_inverse(Mat([[1, 2], [3, 4]]))
    with pytest.raises(ZeroDivisionError):
        triangular_inverse(Mat([[1e-13, 0.0], [0.0, 1.0]]), min_pivot=1e-12)


# --- dual numbers ---------------------------------------------------------------


@pytest.mark.parametrize(
    "fn, dfn",
    [
        (lambda x: x * x, lambda x: 2 * x),
        (lambda x: x * x * x - 3 * x, lambda x: 3 * x * x - 3),
        (lambda x: 1 / x, lambda x: -1 / (x * x)),
        (lambda x: (x + 1) / (x - 2), lambda x: -3 / ((x - 2) ** 2)),
        (lambda x: x**4, lambda x: 4 * x**3),
    ],
)
@given(x=rationals.filter(lambda v: v not in (0, 2)))
def test_dual_derivatives(fn, dfn, x):
    tag = new_tag()
    assert eps_part(fn(Dual(x, Fraction(1), tag)), tag) == dfn(x)


@pytest.mark.parametrize("a, b", [(1, 2), (-3, 0), (2, 2), (0, -1)])
def test_dual_vs_central_difference_on_quadratics(a, b):
    # central differences are exact on polynomials of degree <= 2
    def f(x, y):
        return 3 * x * x - 2 * x * y + y * y - x + 5

    h = Fraction(1, 7)
    tag = new_tag()
    dx = eps_part(f(Dual(Fraction(a), Fraction(1), tag), Fraction(b)), tag)
    assert dx == (f(a + h, b) - f(a - h, b)) / (2 * h)


def test_nested_duals_give_mixed_partial():
    outer, inner = new_tag(), new_tag()
    x = Dual(Dual(Fraction(2), Fraction(1), inner), Fraction(0), outer)
    y = Dual(Fraction(3), Fraction(1), outer)
    f = x * x * y * y  # d2/dxdy = 4xy = 24
    assert eps_part(eps_part(f, outer), inner) == 24


def test_dual_division_by_zero_value():
    tag = new_tag()
    with pytest.raises(ZeroDivisionError):
        Fraction(1) / Dual(Fraction(0), Fraction(1), tag)


def test_dual_unhashable():
    with pytest.raises(TypeError):
        hash(Dual(Fraction(1), Fraction(1), new_tag()))


# --- rank and JSON ----------------------------------------------------------------


def test_rank_examples():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rank([]) == 0


@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), (" 4/6 ", Fraction(2, 3)), (5, Fraction(5))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "abc", "1.5", "", None, True, 1.5])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(square(max_n=4))
def test_json_round_trip(m):
    assert mat_from_json(mat_to_json(m)) == m


@pytest.mark.parametrize(
    "obj",
    [
        {"n": 2, "entries": [["1", "2"], ["3"]]},
        {"n": 3, "entries": [["1", "2"], ["3", "4"]]},
        {"entries": "nope"},
        [["1"]],
    ],
)
def test_json_rejects(obj):
    with pytest.raises(ValueError):
        mat_from_json(obj)


def test_all_index_sets_count():
    assert sum(1 for r in range(1, 5) for _ in itertools.combinations(range(4), r)) == 15
