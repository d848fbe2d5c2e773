"""Exact arithmetic over a prime field F_p.

Multivariate polynomials are stored sparsely as ``{exponent tuple: coefficient}``
with coefficients reduced to ``0 <= c < p``.  Graded pieces of the polynomial
ring are indexed by :func:`monomial_basis`, which fixes one global graded-lex
order, so coefficient vectors are reproducible bit for bit.

Linear algebra mod p runs on float64 BLAS: residues and every intermediate
value are exact integers below 2**52, so the arithmetic never rounds.  Large
matrices use a blocked Gauss-Jordan elimination; small ones (and the test
oracle) a one-pivot-at-a-time elimination.  Both return identical reduced row
echelon forms.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

DEFAULT_PRIME = 32003
# The float64 kernels need (columns) * p**2 < 2**52; primes below 2**16 keep
# that true for every matrix with fewer than a million columns.
MAX_PRIME = 65521


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p == 2:
            raise ValueError("characteristic 2 is excluded")
        if self.p > MAX_PRIME:
            raise ValueError(f"primes above {MAX_PRIME} are not supported by the exact kernels")

    def inv(self, a: int) -> int:
        return pow(a % self.p, -1, self.p)


# ---------------------------------------------------------------------------
# monomials


@lru_cache(maxsize=None)
def monomial_basis(n_vars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree ``d`` in graded-lex (descending) order.

    ``x_0^d`` comes first.  Negative ``d`` gives the empty tuple.
    """
    if n_vars <= 0:
        raise ValueError("need at least one variable")
    if d < 0:
        return ()
    if n_vars == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        for rest in monomial_basis(n_vars - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomial_basis(n_vars, d))}


@lru_cache(maxsize=None)
def monomial_array(n_vars: int, d: int) -> np.ndarray:
    """``monomial_basis`` as an int64 array of shape (count, n_vars)."""
    return np.array(monomial_basis(n_vars, d), dtype=np.int64).reshape(-1, n_vars)


@lru_cache(maxsize=None)
def _code_table(n_vars: int, d: int):
    """Degree-d monomials encoded in base d + 1: (weights, sorted codes, positions)."""
    w = (d + 1) ** np.arange(n_vars, dtype=np.int64)
    codes = monomial_array(n_vars, d) @ w
    order = np.argsort(codes)
    return w, codes[order], order


def monomial_positions(n_vars: int, d: int, exps) -> np.ndarray:
    """Indices in ``monomial_basis(n_vars, d)`` of exponent vectors of degree d.

    ``exps`` has shape (..., n_vars); the result has shape ``exps.shape[:-1]``.
    """
    w, codes, order = _code_table(n_vars, d)
    return order[np.searchsorted(codes, np.asarray(exps, dtype=np.int64) @ w)]


def num_monomials(n_vars: int, d: int) -> int:
    return comb(d + n_vars - 1, n_vars - 1) if d >= 0 else 0


# ---------------------------------------------------------------------------
# polynomials


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial over F_p in ``n_vars`` variables.

    ``terms`` maps exponent tuples to nonzero residues.  Instances are
    immutable and hashable so they can key multiplication-matrix caches.
    """

    n_vars: int
    p: int
    terms: tuple = field(default=())  # sorted tuple of (exponent, coeff)

    @classmethod
    def from_dict(cls, n_vars, p, d):
        items = []
        for e, c in d.items():
            c %= p
            if c:
                if len(e) != n_vars:
                    raise ValueError("exponent length does not match n_vars")
                items.append((tuple(e), c))
        items.sort(reverse=True)
        return cls(n_vars, p, tuple(items))

    @classmethod
    def zero(cls, n_vars, p):
        return cls(n_vars, p, ())

    @classmethod
    def constant(cls, n_vars, p, c):
        return cls.from_dict(n_vars, p, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars, p, i):
        e = [0] * n_vars
        e[i] = 1
        return cls.from_dict(n_vars, p, {tuple(e): 1})

    @classmethod
    def random_homogeneous(cls, n_vars, p, d, rng: random.Random):
        """Uniformly random coefficients on every monomial of degree ``d``."""
        return cls.from_dict(n_vars, p, {m: rng.randrange(p) for m in monomial_basis(n_vars, d)})

    def as_dict(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {sum(e) for e, _ in self.terms}

    def is_homogeneous(self, d=None):
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def _check(self, other):
        if self.n_vars != other.n_vars or self.p != other.p:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._check(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Polynomial.from_dict(self.n_vars, self.p, d)

    def __neg__(self):
        return Polynomial(self.n_vars, self.p, tuple((e, self.p - c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Polynomial.from_dict(self.n_vars, self.p, {e: c * a for e, a in self.terms})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        d = {}
        p = self.p
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = _add_exp(e1, e2)
                d[e] = (d.get(e, 0) + c1 * c2) % p
        return Polynomial.from_dict(self.n_vars, p, d)

    __rmul__ = __mul__

    def coefficient_vector(self, d):
        """Coefficients in the ``monomial_basis(n_vars, d)`` order."""
        if not self.is_homogeneous(d) and not self.is_zero():
            raise ValueError(f"polynomial is not homogeneous of degree {d}")
        idx = monomial_index(self.n_vars, d)
        v = np.zeros(len(idx), dtype=np.int64)
        for e, c in self.terms:
            v[idx[e]] = c
        return v

    @classmethod
    def from_vector(cls, n_vars, p, d, vec, monomials=None):
        mons = monomial_basis(n_vars, d) if monomials is None else monomials
        return cls.from_dict(n_vars, p, {m: int(c) for m, c in zip(mons, vec) if int(c) % p})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    def to_json(self):
        return [[list(e), c] for e, c in self.terms]

    @classmethod
    def from_json(cls, n_vars, p, data):
        return cls.from_dict(n_vars, p, {tuple(e): c for e, c in data})


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix over F_p; entries are int64 residues in ``[0, p)``."""

    data: np.ndarray
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.int64)
        if a.ndim != 2:
            a = a.reshape(-1, 0) if a.size == 0 else np.atleast_2d(a)
        object.__setattr__(self, "data", np.mod(a, self.p))

    @classmethod
    def from_entries(cls, rows, cols, entries: dict, p=DEFAULT_PRIME):
        a = np.zeros((rows, cols), dtype=np.int64)
        for (i, j), c in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            a[i, j] = c
        return cls(a, p)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    def entries(self):
        return {(int(i), int(j)): int(self.data[i, j]) for i, j in zip(*np.nonzero(self.data))}

    def transpose(self):
        return ExactMatrix(self.data.T.copy(), self.p)

    def __matmul__(self, other):
        return ExactMatrix(matmul_mod(self.data, other.data, self.p), self.p)


def matmul_mod(a, b, p):
    """Exact ``a @ b mod p`` (int64 result) using float64 BLAS in chunks that cannot round.

    Inputs must hold residues in [0, p).
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    # every partial sum must stay below 2**52
    chunk = max(1, (2**52) // ((p - 1) ** 2) - 1)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.float64)
    for k in range(0, a.shape[1], chunk):
        out += a[:, k:k + chunk].astype(np.float64) @ b[k:k + chunk].astype(np.float64)
        reduce_inplace(out, p)
    return out.astype(np.int64)


def rref_numpy(a, p):
    """Gauss-Jordan elimination mod p, one pivot at a time.  Returns (rref, pivot columns).

    Entries are held as exact integers in float64 (p**2 < 2**52).
    """
    a = np.mod(np.array(a, dtype=np.int64), p).astype(np.float64)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r, c:] = reduce_inplace(a[r, c:] * pow(int(a[r, c]), -1, p), p)
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr, c:] = reduce_inplace(a[nzr, c:] - np.outer(col[nzr], a[r, c:]), p)
        pivots.append(c)
        r += 1
    return a[:r].astype(np.int64), pivots


_PANEL = 96


def reduce_inplace(x, p):
    """Reduce a float64 array of exact integers (|x| < 2**52) into [0, p), in place.

    Large arrays are processed in row blocks to bound temporary memory.
    """
    if x.ndim == 2 and x.size > 1 << 22 and x.shape[0] > 1:
        step = max(1, (1 << 22) // max(1, x.shape[1]))
        for i in range(0, x.shape[0], step):
            reduce_inplace(x[i:i + step], p)
        return x
    q = np.floor(x * (1.0 / p))
    q *= p
    x -= q
    x[x < 0] += p
    x[x >= p] -= p
    return x


def _small_inverse(b, p):
    r = b.shape[0]
    e, piv = rref_numpy(np.hstack([b.astype(np.int64), np.eye(r, dtype=np.int64)]), p)
    return e[:, r:].astype(np.float64)


_CHUNK_ELEMS = 1 << 23  # bound on temporaries in the trailing update


def _eliminate(a, p, reduced, width=_PANEL):
    """Blocked Gauss-Jordan on a float64 array of exact integers, in place.

    Works panel by panel: the pivots of a narrow column panel are found
    recursively (plain elimination for the narrowest panels), their rows are
    normalized by an at most panel-sized inverse, and the panel's pivot
    columns are cleared from the other rows with BLAS products.

    Entries outside the current panel and pivot rows are never reduced mod p:
    every update adds less than ``width * p**2`` in absolute value, so they
    stay exact in float64 for far more panels than any matrix here has.  On
    return only the pivot rows are guaranteed reduced into [0, p).

    Returns (pivot rows, pivot columns) in pivot order.  With ``reduced``
    false, rows that already carry a pivot are not cleared (enough for rank).
    """
    rows, cols = a.shape
    if (cols + width) * float(p) ** 2 >= 2.0 ** 52:
        raise OverflowError("matrix too wide for exact float64 elimination")
    active = np.ones(rows, dtype=bool)
    prow, pcol = [], []
    for c0 in range(0, cols, width):
        c1 = min(cols, c0 + width)
        act = np.nonzero(active)[0]
        if act.size == 0:
            break
        panel = reduce_inplace(a[act, c0:c1], p)
        if not panel.any():
            continue
        if width > 16:
            sel = sorted(_eliminate(np.ascontiguousarray(panel.T), p, False, 16)[1])
        else:
            _, sel = rref_numpy(panel.T.astype(np.int64), p)
        _, pcs = rref_numpy(panel[sel].astype(np.int64), p)
        rw = act[sel]
        cabs = [c0 + c for c in pcs]
        piv = reduce_inplace(a[rw, c0:], p)
        binv = _small_inverse(piv[:, pcs], p)
        piv = reduce_inplace(binv @ piv, p)
        a[rw, c0:] = piv
        active[rw] = False
        coef = reduce_inplace(a[:, cabs], p)
        coef[rw] = 0
        if not reduced:
            coef[~active] = 0
        step = max(64, _CHUNK_ELEMS // max(1, cols - c0))
        for i in range(0, rows, step):
            c = coef[i:i + step]
            if c.any():
                a[i:i + step, c0:] -= c @ piv
        prow.extend(rw.tolist())
        pcol.extend(cabs)
    return prow, pcol


def rref(a, p=DEFAULT_PRIME):
    """Reduced row echelon form of ``a`` mod p with zero rows dropped.

    Returns ``(E, pivots)`` where ``E`` has one row per pivot.
    """
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64), []
    if a.size < 400:
        return rref_numpy(a, p)
    work = np.mod(a, p).astype(np.float64)
    prow, pcol = _eliminate(work, p, reduced=True)
    order = np.argsort(pcol)
    e = reduce_inplace(work[np.asarray(prow, dtype=int)[order]], p).astype(np.int64)
    return e, [pcol[k] for k in order]


def rank(m, p=None, overwrite=False) -> int:
    """Exact rank mod p.

    With ``overwrite`` a float64 array holding residues in [0, p) is
    eliminated in place, saving a copy of large matrices.
    """
    if isinstance(m, ExactMatrix):
        p, a = m.p, m.data
    else:
        p = DEFAULT_PRIME if p is None else p
        a = m if (overwrite and isinstance(m, np.ndarray) and m.dtype == np.float64) \
            else np.asarray(m, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    if a.size < 400:
        return len(rref_numpy(a, p)[1])
    if a.shape[0] > a.shape[1]:
        a = a.T
    if a.dtype != np.float64 or not overwrite:
        a = np.mod(a, p).astype(np.float64)
    return len(_eliminate(a, p, reduced=False)[0])


def kernel_basis(m, p=None):
    """Basis (as rows) of the right kernel ``{x : M x = 0}``."""
    if isinstance(m, ExactMatrix):
        p, a = m.p, m.data
    else:
        a = np.asarray(m, dtype=np.int64)
        p = DEFAULT_PRIME if p is None else p
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    e, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    k = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        k[t, f] = 1
        for r, pc in enumerate(piv):
            k[t, pc] = (-e[r, f]) % p
    return k


def left_kernel_basis(a, p=DEFAULT_PRIME):
    """Basis (as rows) of ``{y : y A = 0}``."""
    return kernel_basis(np.asarray(a, dtype=np.int64).T, p)


def row_space(a, p=DEFAULT_PRIME):
    """Reduced basis of the row space (alias of :func:`rref` keeping only E)."""
    return rref(a, p)[0]


# ---------------------------------------------------------------------------
# Macaulay matrices


def coefficient_matrix(generators, target, n_vars=None, p=None) -> ExactMatrix:
    """Macaulay matrix of ``generators`` (pairs ``(poly, degree)``) in degree ``target``.

    One row per pair (generator g, monomial m of degree target - deg g),
    holding the coefficients of ``m * g`` in ``monomial_basis(n_vars, target)``.
    """
    gens = list(generators)
    if n_vars is None:
        if not gens:
            raise ValueError("n_vars required for an empty generator list")
        n_vars, p = gens[0][0].n_vars, gens[0][0].p
    p = DEFAULT_PRIME if p is None else p
    ncols = num_monomials(n_vars, target)
    blocks = []
    for g, e in gens:
        if not g.is_homogeneous(e):
            raise ValueError(f"generator is not homogeneous of degree {e}")
        mons = monomial_array(n_vars, target - e) if target >= e else np.zeros((0, n_vars), np.int64)
        block = np.zeros((len(mons), ncols), dtype=np.int64)
        if len(mons) and g.terms:
            exps = np.array([ex for ex, _ in g.terms], dtype=np.int64)
            coefs = np.array([c for _, c in g.terms], dtype=np.int64)
            cols = monomial_positions(n_vars, target, mons[:, None, :] + exps[None, :, :])
            block[np.arange(len(mons))[:, None], cols] = coefs
        blocks.append(block)
    data = np.vstack(blocks) if blocks else np.zeros((0, ncols), dtype=np.int64)
    return ExactMatrix(data, p)


def left_kernel(a, p=DEFAULT_PRIME):
    """Rows spanning ``{y : y A = 0 mod p}``.

    Row-reduces ``[A | I]``; rows whose ``A`` part vanishes record the
    dependencies among the rows of ``A``.
    """
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if cols == 0:
        return np.eye(rows, dtype=np.int64)
    if a.size < 400:
        return left_kernel_basis(a, p)
    work = np.hstack([np.mod(a, p), np.eye(rows, dtype=np.int64)]).astype(np.float64)
    prow, pcol = _eliminate(work, p, reduced=False)
    ker = [r for r, c in zip(prow, pcol) if c >= cols]
    ker += sorted(set(range(rows)) - set(prow))  # cannot happen: I has full rank
    return reduce_inplace(work[ker, cols:], p).astype(np.int64)
