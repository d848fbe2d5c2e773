import pytest

from submax.degmat import DegreeMatrix, example_matrix
from submax.exactalg import Polynomial
from submax.matgen import (
    HomogeneousMatrix,
    adjoin_row,
    delete_row,
    determinant,
    ia_generators,
    ib_generators,
    instance,
    last_row_expansion,
    minors,
    random_general,
    signed_maximal_minors,
)


def test_reproducible_and_seeded():
    dm = example_matrix(2, 4)
    assert random_general(dm, seed=3) == random_general(dm, seed=3)
    assert random_general(dm, seed=3) != random_general(dm, seed=4)
    assert instance(dm, seed=3) is instance(dm, seed=3)


def test_json_roundtrip():
    A = instance(example_matrix(3, 5))
    assert HomogeneousMatrix.from_json(A.to_json()) == A


def test_entry_degrees_checked():
    dm = DegreeMatrix((0, 0), (1, 2))
    x = Polynomial.variable(6, 32003, 0)
    with pytest.raises(ValueError):
        HomogeneousMatrix(dm, ((x, x), (x, x)), dm.a)


def test_rows_are_syzygies_of_minors():
    A = instance(example_matrix(1, 5))
    N = delete_row(A)
    m = signed_maximal_minors(N)
    for row in N.entries:
        total = Polynomial.zero(A.n_vars, A.p)
        for f, mi in zip(row, m):
            total = total + f * mi
        assert total.is_zero()


@pytest.mark.parametrize("example,s", [(1, 5), (2, 4), (3, 6)])
def test_last_row_expansion(example, s):
    A = instance(example_matrix(example, s))
    assert last_row_expansion(A) == determinant(A)
    assert determinant(A).is_homogeneous(s)


def test_adjoin_row_inverts_delete():
    A = instance(example_matrix(2, 3))
    assert adjoin_row(delete_row(A), A.entries[-1]) == A


def test_generator_counts_and_degrees():
    dm = example_matrix(3, 5)
    A = instance(dm)
    assert len(ia_generators(A)) == 9
    assert sorted(d for _, d in ib_generators(delete_row(A))) == [3, 3, 3]
    assert len(minors(A, 1)) == 9
