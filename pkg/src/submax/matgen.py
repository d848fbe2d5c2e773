"""Concrete homogeneous matrices over F_p and their minors."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .degmat import DegreeMatrix, hb_twists, is_nonempty
from .exactalg import DEFAULT_PRIME, Polynomial


@dataclass(frozen=True)
class HomogeneousMatrix:
    """A t x t matrix (or the (t-1) x t matrix with the last row removed).

    ``rows`` lists the row degrees actually present (a prefix of ``dm.a``
    unless a row was deleted elsewhere), ``entries[j][i]`` has degree
    ``rows[j] - dm.b[i]``.
    """

    dm: DegreeMatrix
    entries: tuple  # tuple of tuples of Polynomial
    row_degrees: tuple
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        for j, row in enumerate(self.entries):
            if len(row) != self.dm.t:
                raise ValueError("every row needs t entries")
            for i, f in enumerate(row):
                d = self.row_degrees[j] - self.dm.b[i]
                if not f.is_zero() and not f.is_homogeneous(d):
                    raise ValueError(f"entry ({j},{i}) is not homogeneous of degree {d}")
                if d <= 0 and not f.is_zero():
                    raise ValueError(f"entry ({j},{i}) must vanish (degree {d})")

    @property
    def shape(self):
        return len(self.entries), self.dm.t

    @property
    def n_vars(self):
        return self.dm.n_vars

    def __getitem__(self, ji):
        j, i = ji
        return self.entries[j][i]

    def degree(self, j, i):
        return self.row_degrees[j] - self.dm.b[i]

    def to_json(self):
        return {
            "dm": self.dm.to_json(),
            "p": self.p,
            "row_degrees": list(self.row_degrees),
            "entries": [[f.to_json() for f in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data):
        dm = DegreeMatrix.from_json(data["dm"])
        p = int(data.get("p", DEFAULT_PRIME))
        rows = tuple(tuple(Polynomial.from_json(dm.n_vars, p, f) for f in row) for row in data["entries"])
        row_degrees = tuple(data.get("row_degrees", dm.a[: len(rows)]))
        return cls(dm, rows, row_degrees, p)


def random_general(dm: DegreeMatrix, prime: int = DEFAULT_PRIME, seed: int = 0) -> HomogeneousMatrix:
    """Entries with independent uniform coefficients in every prescribed degree."""
    if not is_nonempty(dm):
        raise ValueError(f"degree matrix {dm} is empty")
    rng = random.Random(f"{dm.b}|{dm.a}|{dm.n}|{prime}|{seed}")
    rows = []
    for j in range(dm.t):
        row = []
        for i in range(dm.t):
            d = dm.entry_degree(j, i)
            if d is None:
                row.append(Polynomial.zero(dm.n_vars, prime))
            else:
                row.append(Polynomial.random_homogeneous(dm.n_vars, prime, d, rng))
        rows.append(tuple(row))
    return HomogeneousMatrix(dm, tuple(rows), dm.a, prime)


def delete_row(A: HomogeneousMatrix, j: int | None = None) -> HomogeneousMatrix:
    """Remove row ``j`` (0-based; default the last row)."""
    m = len(A.entries)
    j = m - 1 if j is None else j
    if not 0 <= j < m:
        raise IndexError(f"row {j} out of range")
    rows = A.entries[:j] + A.entries[j + 1:]
    degs = A.row_degrees[:j] + A.row_degrees[j + 1:]
    return HomogeneousMatrix(A.dm, rows, degs, A.p)


def adjoin_row(N: HomogeneousMatrix, g) -> HomogeneousMatrix:
    """Append the row ``g`` with deg g_i = a_t - b_i."""
    dm = N.dm
    if len(N.entries) != dm.t - 1:
        raise ValueError("adjoin_row expects a (t-1) x t matrix")
    g = tuple(g)
    if len(g) != dm.t:
        raise ValueError("row needs t entries")
    at = dm.a[-1]
    for i, f in enumerate(g):
        d = at - dm.b[i]
        if not f.is_zero() and not f.is_homogeneous(d):
            raise ValueError(f"g_{i} must be homogeneous of degree {d}")
    return HomogeneousMatrix(dm, N.entries + (g,), N.row_degrees + (at,), N.p)


def _det(entries, rows, cols, cache):
    """Laplace expansion along the first listed row with memoized sub-minors."""
    key = (rows, cols)
    if key in cache:
        return cache[key]
    if len(rows) == 1:
        res = entries[rows[0]][cols[0]]
    else:
        r0, rest = rows[0], rows[1:]
        res = None
        for k, c in enumerate(cols):
            f = entries[r0][c]
            if f.is_zero():
                continue
            sub = _det(entries, rest, cols[:k] + cols[k + 1:], cache)
            term = f * sub
            if k % 2:
                term = -term
            res = term if res is None else res + term
        if res is None:
            f = entries[r0][cols[0]]
            res = Polynomial.zero(f.n_vars, f.p)
    cache[key] = res
    return res


def _minor_degree(M, rows, cols):
    return sum(M.row_degrees[j] for j in rows) - sum(M.dm.b[i] for i in cols)


def minors(M: HomogeneousMatrix, k: int, with_index=False):
    """All k x k minors as (poly, degree) or (poly, degree, rows, cols)."""
    m, t = M.shape
    if k > min(m, t) or k < 1:
        raise ValueError("bad minor size")
    cache = {}
    out = []
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(t), k):
            f = _det(M.entries, rows, cols, cache)
            d = _minor_degree(M, rows, cols)
            out.append((f, d, rows, cols) if with_index else (f, d))
    return out


def determinant(A: HomogeneousMatrix) -> Polynomial:
    m, t = A.shape
    if m != t:
        raise ValueError("determinant of a non-square matrix")
    return _det(A.entries, tuple(range(m)), tuple(range(t)), {})


def signed_maximal_minors(N: HomogeneousMatrix):
    """m_i = (-1)^(t+i) det(N without column i), 1-based i.

    With this sign every row of N is a syzygy: sum_i f_ji m_i = 0, and
    det([N; g]) = sum_i g_i m_i.
    """
    m, t = N.shape
    if m != t - 1:
        raise ValueError("expected a (t-1) x t matrix")
    cache = {}
    out = []
    rows = tuple(range(m))
    for i in range(t):
        cols = tuple(c for c in range(t) if c != i)
        f = _det(N.entries, rows, cols, cache)
        if (t + i + 1) % 2:
            f = -f
        out.append(f)
    return out


def ib_generators(N: HomogeneousMatrix):
    """Generators of I_B with their degrees n1_i."""
    n1, _ = hb_twists(N.dm)
    return list(zip(signed_maximal_minors(N), n1))


def ia_generators(A: HomogeneousMatrix):
    """The t^2 submaximal minors of A with degrees s - a_j + b_i."""
    return minors(A, A.dm.t - 1)


def last_row_expansion(A: HomogeneousMatrix) -> Polynomial:
    """sum_i g_i * m_i with g the last row of A and m_i the signed minors of N."""
    N = delete_row(A)
    total = Polynomial.zero(A.n_vars, A.p)
    for g, m in zip(A.entries[-1], signed_maximal_minors(N)):
        total = total + g * m
    return total


@lru_cache(maxsize=64)
def _cached_instance(dm, prime, seed):
    return random_general(dm, prime, seed)


def instance(dm: DegreeMatrix, prime: int = DEFAULT_PRIME, seed: int = 0) -> HomogeneousMatrix:
    """Memoized :func:`random_general`."""
    return _cached_instance(dm, prime, seed)

