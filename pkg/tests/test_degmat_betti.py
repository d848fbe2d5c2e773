from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from submax.betti import (
    canonical_table,
    degree_and_genus,
    dim_w_formula,
    epsilon,
    eta,
    gulliksen_negard_table,
    hilbert_burch_table,
    hilbert_function,
    hilbert_polynomial,
    ideal_square_table,
    normal_module_table,
)
from submax.degmat import (
    DegreeMatrix,
    det_degree,
    example_matrix,
    hb_twists,
    is_nonempty,
    theorem_hypotheses,
)


def test_degree_matrix_validation():
    with pytest.raises(ValueError):
        DegreeMatrix((0, 0), (1,))
    with pytest.raises(ValueError):
        DegreeMatrix((1, 0), (1, 1))
    with pytest.raises(ValueError):
        DegreeMatrix.from_json({"a": [1, 1], "b": [0, 0], "x": 1})
    dm = DegreeMatrix.from_json('{"a": [1, 1, 3], "b": [0, 0, 0]}')
    assert dm.n == 5 and dm.t == 3 and det_degree(dm) == 5
    assert DegreeMatrix.from_json(dm.to_json()) == dm


def test_nonempty_and_twists():
    assert not is_nonempty(DegreeMatrix((0, 0, 0), (0, 1, 2)))
    dm = example_matrix(1, 5)
    assert is_nonempty(dm)
    assert hb_twists(dm) == ((3, 3, 3, 3), (4, 4, 4))


def test_hypotheses_for_examples():
    h = theorem_hypotheses(DegreeMatrix((0, 0, 0, 0), (1, 1, 1, 3)))
    assert h.theorem_applies
    assert not theorem_hypotheses(DegreeMatrix((0, 0, 0), (1, 1, 2))).at_condition


def test_hilbert_burch_and_canonical():
    dm = example_matrix(2, 4)
    assert hilbert_burch_table(dm).terms == ((0,), (2, 2, 2), (3, 3))
    assert canonical_table(dm).terms == ((3, 3), (4, 4, 4), (6,))
    # the normal-module presentation has t(t-1) generators and t^2 + (t-1)^2 - 1 relations
    assert normal_module_table(dm).ranks() == (6, 12, 6)


def test_square_table_alternating_rank():
    dm = example_matrix(1, 6)
    # I_B^2 has rank one as a module
    assert ideal_square_table(dm).alternating_rank() == 1


def test_koszul_when_t_is_two():
    dm = DegreeMatrix((0, 0), (1, 1))
    assert gulliksen_negard_table(dm).ranks() == (1, 4, 6, 4, 1)


def test_gn_rejects_non_minimal():
    with pytest.raises(ValueError):
        gulliksen_negard_table(DegreeMatrix((0, 1, 1), (1, 2, 3)))


def test_hilbert_function_vs_polynomial():
    dm = example_matrix(1, 6)
    gn = gulliksen_negard_table(dm)
    hp = hilbert_polynomial(gn)
    for v in range(15, 25):
        assert hilbert_function(gn, v) == hp(v)
    assert degree_and_genus(hp) == (6 * 36 - 28 * 6 + 36, 1 + (6 * 36 - 28 * 6 + 36) * 3)


def test_eta_is_conormal_dimension():
    dm = example_matrix(2, 3)
    # (I_B/I_B^2)_2 = span of the three quadric minors
    assert eta(dm, 2) == 3
    assert eta(dm, 1) == 0


def test_epsilon_examples():
    assert epsilon(example_matrix(1, 4)) == 68
    assert epsilon(example_matrix(1, 5)) == 113
    assert epsilon(example_matrix(2, 3)) == 39
    assert epsilon(example_matrix(2, 4)) == 68


def test_dimw_worked_value():
    assert dim_w_formula(DegreeMatrix((0, 0, 0, 0), (1, 1, 1, 3)))[0] == 198


def test_dimw_rejects_t2():
    with pytest.raises(ValueError):
        dim_w_formula(DegreeMatrix((0, 0), (1, 1)))


@st.composite
def admissible(draw):
    t = draw(st.integers(2, 5))
    b = sorted(draw(st.lists(st.integers(0, 3), min_size=t, max_size=t)))
    gaps = draw(st.lists(st.integers(1, 4), min_size=t, max_size=t))
    a = sorted(b[i] + gaps[i] for i in range(t))
    dm = DegreeMatrix(tuple(b), tuple(a))
    if not is_nonempty(dm) or set(a) & set(b):
        return None
    return dm


@settings(max_examples=200, deadline=None)
@given(admissible())
def test_gn_self_duality(dm):
    if dm is None:
        return
    try:
        table = gulliksen_negard_table(dm)
    except ValueError:
        return
    s = det_degree(dm)
    for k in range(5):
        assert Counter(table.terms[4 - k]) == Counter(2 * s - d for d in table.terms[k])
    assert table.alternating_rank() == 0


@settings(max_examples=50, deadline=None)
@given(admissible(), st.integers(0, 12))
def test_hb_hilbert_function_nonnegative(dm, v):
    if dm is None:
        return
    hb = hilbert_burch_table(dm)
    assert 0 <= hilbert_function(hb, v) <= comb(v + 5, 5)


def test_epsilon_equals_formula_under_hypotheses():
    import itertools

    checked = 0
    for t in (3, 4):
        for b in itertools.combinations_with_replacement(range(3), t):
            for a in itertools.combinations_with_replacement(range(7), t):
                dm = DegreeMatrix(b, a)
                if is_nonempty(dm) and theorem_hypotheses(dm).theorem_applies:
                    assert epsilon(dm) == dim_w_formula(dm)[0], dm
                    checked += 1
    assert checked > 50


def test_example_1_cubic_from_s_4():
    for s in range(4, 13):
        assert dim_w_formula(example_matrix(1, s))[0] == 2 * s**3 - 10 * s**2 + 13 * s + 48
    for s in (4, 5):
        assert epsilon(example_matrix(1, s)) == 2 * s**3 - 10 * s**2 + 13 * s + 48


def test_eta_nonnegative():
    for ex, s in ((1, 5), (2, 4), (3, 6)):
        assert all(eta(example_matrix(ex, s), v) >= 0 for v in range(0, 15))
