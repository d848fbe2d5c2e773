"""Brute-force ground truth: dimensions of ideal pieces as Macaulay-matrix ranks.

The closed-form complexes of :mod:`submax.betti` predict Hilbert functions;
this module measures them on concrete matrices.  Agreement over a window of
degrees is the genericity certificate used for random instances, and a draw
that fails it is resampled with the next seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .betti import (
    BettiTable,
    gulliksen_negard_table,
    hilbert_burch_table,
    hilbert_function,
    ideal_square_table,
)
from .degmat import DegreeMatrix, det_degree
from .exactalg import DEFAULT_PRIME, coefficient_matrix, num_monomials, rank
from .matgen import HomogeneousMatrix, delete_row, ia_generators, ib_generators, instance

DEFAULT_RETRIES = 5


class DegenerateInstance(RuntimeError):
    """No draw within the retry cap passed the genericity certificate."""


def ideal_piece_dim(gens, v: int, n_vars: int | None = None, p: int | None = None) -> int:
    """dim I_v for the ideal generated by (polynomial, degree) pairs."""
    gens = [(g, d) for g, d in gens if not g.is_zero()]
    if v < 0:
        return 0
    live = [(g, d) for g, d in gens if d <= v]
    if not live:
        return 0
    return rank(coefficient_matrix(live, v, n_vars, p))


@dataclass(frozen=True)
class HilbertCheck:
    label: str
    kind: str  # "quotient" (table resolves R/I) or "ideal" (table resolves I)
    rows: tuple  # (v, predicted, observed)

    @property
    def agree(self) -> bool:
        return all(pr == ob for _, pr, ob in self.rows)

    @property
    def first_mismatch(self):
        for v, pr, ob in self.rows:
            if pr != ob:
                return v
        return None

    def to_json(self):
        return {
            "label": self.label,
            "kind": self.kind,
            "agree": self.agree,
            "first_mismatch": self.first_mismatch,
            "degrees": [{"v": v, "predicted": pr, "observed": ob} for v, pr, ob in self.rows],
        }


def hilbert_function_check(gens, table: BettiTable, v_range, kind: str = "quotient",
                           n_vars: int | None = None, p: int | None = None) -> HilbertCheck:
    """Compare oracle dimensions with ``hilbert_function(table, v)`` over ``v_range``."""
    if kind not in ("quotient", "ideal"):
        raise ValueError("kind must be 'quotient' or 'ideal'")
    gens = list(gens)
    if n_vars is None:
        n_vars = table.n + 1
    rows = []
    for v in v_range:
        dim_i = ideal_piece_dim(gens, v, n_vars, p)
        observed = dim_i if kind == "ideal" else num_monomials(n_vars, v) - dim_i
        rows.append((v, hilbert_function(table, v), observed))
    return HilbertCheck(table.label, kind, tuple(rows))


def containment_check(sub, sup, up_to: int, n_vars: int | None = None, p: int | None = None) -> bool:
    """True iff every generator of ``sub`` of degree <= up_to lies in the ideal ``sup``.

    An ideal is contained in another exactly when its generators are, so each
    generator degree needs one rank comparison.
    """
    sub = [(g, d) for g, d in sub if not g.is_zero()]
    sup = [(g, d) for g, d in sup if not g.is_zero()]
    if not sub:
        return True
    if n_vars is None:
        n_vars, p = sub[0][0].n_vars, sub[0][0].p
    for v in sorted({d for _, d in sub if d <= up_to}):
        base = ideal_piece_dim(sup, v, n_vars, p)
        extra = [(g, d) for g, d in sub if d == v]
        if ideal_piece_dim(sup + extra, v, n_vars, p) != base:
            return False
    return True


def ib_square_generators(N: HomogeneousMatrix):
    gens = ib_generators(N)
    return [(gens[i][0] * gens[k][0], gens[i][1] + gens[k][1])
            for i in range(len(gens)) for k in range(i, len(gens))]


@dataclass(frozen=True)
class GenericityReport:
    seed: int
    window: tuple
    checks: tuple = field(default_factory=tuple)
    contained: bool = True

    @property
    def ok(self):
        return self.contained and all(c.agree for c in self.checks)

    def to_json(self):
        return {
            "seed": self.seed,
            "window": list(self.window),
            "ok": self.ok,
            "I_B_in_I_A": self.contained,
            "checks": [c.to_json() for c in self.checks],
        }


def genericity_certificate(A: HomogeneousMatrix, seed: int = 0, v_max: int | None = None,
                           with_square: bool = True) -> GenericityReport:
    """Oracle vs closed forms for I_B (HB), I_B^2 (SQ) and I_A (GN), v <= s + 3."""
    dm = A.dm
    s = det_degree(dm)
    v_max = s + 3 if v_max is None else v_max
    window = range(0, v_max + 1)
    N = delete_row(A)
    ib = ib_generators(N)
    ia = ia_generators(A)
    nv, p = A.n_vars, A.p
    checks = [hilbert_function_check(ib, hilbert_burch_table(dm), window, "quotient", nv, p)]
    if with_square:
        checks.append(hilbert_function_check(ib_square_generators(N), ideal_square_table(dm),
                                             window, "ideal", nv, p))
    checks.append(hilbert_function_check(ia, gulliksen_negard_table(dm), window, "quotient", nv, p))
    contained = containment_check(ib, ia, v_max, nv, p)
    return GenericityReport(seed, (0, v_max), tuple(checks), contained)


def general_instance(dm: DegreeMatrix, prime: int = DEFAULT_PRIME, seed: int = 0,
                     retries: int = DEFAULT_RETRIES, v_max: int | None = None,
                     with_square: bool = False):
    """A random matrix passing the genericity certificate.

    Degenerate draws are resampled with seed + 1, seed + 2, ... up to
    ``retries`` extra attempts.  ``with_square`` adds the I_B^2 check.
    Returns (matrix, report).
    """
    reports = []
    for k in range(retries + 1):
        A = instance(dm, prime, seed + k)
        rep = genericity_certificate(A, seed + k, v_max, with_square)
        if rep.ok:
            return A, rep
        reports.append(rep)
    raise DegenerateInstance(
        f"no generic draw for {dm.to_json()} in seeds {seed}..{seed + retries}; "
        f"first mismatches: {[[c.first_mismatch for c in r.checks] for r in reports]}")
