import pytest

from submax.betti import hilbert_burch_table
from submax.degmat import example_matrix
from submax.exactalg import Polynomial
from submax.matgen import delete_row, ia_generators, ib_generators, instance
from submax.oracle import (
    DegenerateInstance,
    containment_check,
    general_instance,
    genericity_certificate,
    hilbert_function_check,
    ideal_piece_dim,
)


def test_ideal_piece_dim_monomial_ideal():
    x = [Polynomial.variable(3, 32003, i) for i in range(3)]
    gens = [(x[0] * x[1], 2), (x[2], 1)]
    assert ideal_piece_dim(gens, 1) == 1
    assert ideal_piece_dim(gens, 2) == 4
    assert ideal_piece_dim(gens, -1) == 0


def test_certificate_on_example():
    A = instance(example_matrix(2, 4))
    rep = genericity_certificate(A)
    assert rep.ok
    assert rep.to_json()["window"] == [0, 7]


def test_degenerate_matrix_detected():
    dm = example_matrix(2, 4)
    A = instance(dm)
    N = delete_row(A)
    # repeating a minor in place of the third one loses a generator
    bad = [ib_generators(N)[0], ib_generators(N)[0], ib_generators(N)[1]]
    check = hilbert_function_check(bad, hilbert_burch_table(dm), range(0, 6), "quotient")
    assert not check.agree and check.first_mismatch == 2


def test_containment():
    A = instance(example_matrix(3, 5))
    assert containment_check(ib_generators(delete_row(A)), ia_generators(A), 8)
    assert not containment_check(ia_generators(A), ib_generators(delete_row(A)), 8)


def test_general_instance_resamples(monkeypatch):
    import submax.oracle as oracle

    calls = []
    real = oracle.genericity_certificate

    def flaky(A, seed=0, v_max=None, with_square=True):
        calls.append(seed)
        rep = real(A, seed, v_max, with_square)
        if seed == 0:
            return oracle.GenericityReport(seed, rep.window, rep.checks, contained=False)
        return rep

    monkeypatch.setattr(oracle, "genericity_certificate", flaky)
    A, rep = general_instance(example_matrix(2, 3), seed=0)
    assert rep.seed == 1 and calls == [0, 1]


def test_general_instance_gives_up(monkeypatch):
    import submax.oracle as oracle

    monkeypatch.setattr(oracle, "genericity_certificate",
                        lambda A, seed=0, v_max=None, with_square=True:
                        oracle.GenericityReport(seed, (0, 1), (), contained=False))
    with pytest.raises(DegenerateInstance):
        general_instance(example_matrix(2, 3), retries=2)
