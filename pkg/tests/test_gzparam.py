from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given

from steinberg_gz.algebra import Mat, det, identity
from steinberg_gz.gzparam import (
    CharTriangle,
    StructuredA,
    all_chains,
    brute_minor,
    check_chain,
    check_entry_dependence,
    entry_dependence,
    indu_minor,
    ones_upper,
    pi_inverse,
    pi_map,
    predicted_slope,
    random_lower_borel,
    random_structured,
    simultaneous_quotient,
    structured_pi,
    structured_pi_inverse,
)

from strategies import lower_borel

A2 = Mat([[2, 0], [3, 5]])


def test_ones_upper():
    assert ones_upper(1).tolist() == [[1]]
    assert ones_upper(2).tolist() == [[1, 1], [0, 1]]
    assert det(ones_upper(6)) == 1
    with pytest.raises(ValueError):
        ones_upper(0)


@pytest.mark.parametrize("idx, value", [([2], 8), ([1, 2], 10), ([1], 2)])
def test_indu_examples(idx, value):
    assert indu_minor(A2, idx) == value == brute_minor(A2, idx)


@pytest.mark.parametrize("idx", [[2, 1], [1, 1], [], [0], [3]])
def test_indu_rejects_bad_index_lists(idx):
    with pytest.raises(ValueError):
        indu_minor(A2, idx)


@given(lower_borel(max_n=6))
def test_indu_matches_brute_force(a):
    n = a.n
    for r in range(1, n + 1):
        for idx in itertools.combinations(range(1, n + 1), r):
            assert indu_minor(a, idx) == brute_minor(a, idx)


def test_pi_map_example():
    assert pi_map(A2).values == {(1, 1): 2, (2, 1): 10, (2, 2): 10}


def test_pi_map_matches_oracle(oracles):
    for case in oracles["pi"]:
        c = pi_map(Mat(case["matrix"]))
        assert c.to_json()["values"] == case["values"]


@pytest.mark.parametrize("n", range(1, 6))
def test_pi_map_identity_is_binomial(n):
    c = pi_map(identity(n))
    assert all(c[i, h] == comb(i, h) for i in range(1, n + 1) for h in range(1, i + 1))
    assert pi_inverse(c) == identity(n)


@given(lower_borel(max_n=6))
def test_top_coefficient_is_diagonal_product(a):
    c = pi_map(a)
    prod = Fraction(1)
    for i in range(1, a.n + 1):
        prod *= a[i - 1, i - 1]
        assert c[i, i] == prod


def test_pi_inverse_example():
    c = CharTriangle(2, {(1, 1): Fraction(2), (2, 1): Fraction(10), (2, 2): Fraction(10)})
    assert pi_inverse(c) == A2


@given(lower_borel(max_n=6))
def test_pi_round_trips(a):
    c = pi_map(a)
    assert pi_inverse(c) == a
    assert pi_map(pi_inverse(c)).values == c.values


def test_pi_inverse_requires_all_levels():
    c = CharTriangle(3, {(3, 1): Fraction(1), (3, 2): Fraction(1), (3, 3): Fraction(1)})
    with pytest.raises(ValueError):
        pi_inverse(c)


def test_char_triangle_rejects_zero_determinant_datum():
    with pytest.raises(ValueError):
        CharTriangle(2, {(1, 1): Fraction(0), (2, 1): Fraction(1), (2, 2): Fraction(1)})


def test_char_triangle_json_round_trip():
    c = pi_map(Mat([[1, 0, 0], [-2, 3, 0], [4, Fraction(1, 2), -1]]))
    assert CharTriangle.from_json(c.to_json()) == c


@pytest.mark.parametrize(
    "obj",
    [
        {"values": {}},
        {"n": 2, "values": {"1;1": "2"}},
        {"n": 2, "values": {"3,1": "2"}},
        {"n": 1, "values": {"1,1": "1/0"}},
        {"n": 2, "values": {"1,1": "1", "2,2": "1"}},
    ],
)
def test_char_triangle_json_rejects(obj):
    with pytest.raises(ValueError):
        CharTriangle.from_json(obj)


def test_lower_borel_validation():
    with pytest.raises(ValueError):
        pi_map(Mat([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        pi_map(Mat([[1, 0], [1, 0]]))


# --- entry dependence -----------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_entry_dependence_exhaustive(n):
    rng = random.Random(n)
    for _ in range(3):
        assert check_entry_dependence(random_lower_borel(n, rng)) == []


def test_entry_dependence_slope_value():
    a = Mat([[2, 0, 0], [1, 3, 0], [4, -1, 5]])
    # (h, k) = (3, 1) has depth 3 - 3 + 1 = 1: P_1 slope is prod_{t>3} = 1
    assert entry_dependence(a, 3, 1, 1)["slope"] == 1 == predicted_slope(a, 3, 1)
    # (h, k) = (2, 2): depth 3 - 2 + 2 = 3, slope a11 * a33 = 10
    assert entry_dependence(a, 2, 2, 3) == {"slope": 10, "curvature": 0}
    assert predicted_slope(a, 2, 2) == 10


def test_entry_dependence_index_checks():
    with pytest.raises(ValueError):
        entry_dependence(A2, 1, 2, 1)


def test_predicted_slope_only_at_exact_depth():
    # above the threshold the entry still matters, with a different slope
    a = Mat([[2, 0, 0], [1, 3, 0], [4, -1, 5]])
    dep = entry_dependence(a, 1, 1, 2)  # depth 3 > r = 2
    assert dep["slope"] == 7
    assert predicted_slope(a, 1, 1) == 15


# --- simultaneous quotient and chains ---------------------------------------------


@given(lower_borel(max_n=6))
def test_quotient_on_ones_is_pi(a):
    assert simultaneous_quotient(a, ones_upper(a.n)) == pi_map(a)


@pytest.mark.parametrize("n", range(1, 5))
def test_quotient_identity_pair(n):
    c = simultaneous_quotient(identity(n), identity(n))
    assert all(c[i, h] == comb(i, h) for i in range(1, n + 1) for h in range(1, i + 1))


def test_quotient_with_identity_is_elementary_symmetric():
    a = Mat([[2, 0, 0], [1, 3, 0], [4, -1, 5]])
    c = simultaneous_quotient(a, identity(3))
    assert (c[3, 1], c[3, 2], c[3, 3]) == (10, 2 * 3 + 2 * 5 + 3 * 5, 30)


def test_quotient_shape_checks():
    with pytest.raises(ValueError):
        simultaneous_quotient(A2, Mat([[1, 0], [1, 1]]))
    with pytest.raises(ValueError):
        simultaneous_quotient(A2, Mat([[2, 1], [0, 1]]))
    with pytest.raises(ValueError):
        simultaneous_quotient(A2, identity(3))


@pytest.mark.parametrize("chain", [(0, 2), (2, 1, 3), (1, 2), ()])
def test_check_chain_rejects(chain):
    with pytest.raises(ValueError):
        check_chain(chain, 3)


def test_all_chains_count():
    assert len(list(all_chains(5))) == 2**4


def test_structured_shape_enforced():
    with pytest.raises(ValueError):
        StructuredA((2,), Mat([[1, 0], [1, 1]]).map(lambda v: v) @ Mat([[2, 0], [0, 1]]))
    ok = StructuredA.from_rows((1, 3), {1: [2], 3: [1, 2, 3]})
    assert ok.matrix.tolist() == [[2, 0, 0], [0, 1, 0], [1, 2, 3]]


def test_full_chain_degenerates_to_pi():
    rng = random.Random(3)
    a = random_lower_borel(4, rng)
    s = StructuredA((1, 2, 3, 4), a)
    assert structured_pi(s) == pi_map(a)
    assert structured_pi_inverse(pi_map(a), (1, 2, 3, 4)).matrix == pi_inverse(pi_map(a))


def test_single_level_chain():
    s = StructuredA.from_rows((3,), {3: [1, -2, 4]})
    c = structured_pi(s)
    assert c.levels == (3,)
    assert structured_pi_inverse(c, (3,)) == s


@pytest.mark.parametrize("n", range(1, 7))
def test_structured_round_trip_all_chains(n):
    rng = random.Random(100 + n)
    for chain in all_chains(n):
        s = random_structured(chain, rng)
        assert structured_pi_inverse(structured_pi(s), chain) == s


def test_structured_inverse_level_mismatch():
    s = StructuredA.from_rows((1, 3), {1: [2], 3: [1, 2, 3]})
    with pytest.raises(ValueError):
        structured_pi_inverse(structured_pi(s), (2, 3))
