"""Graded modules over R = F_p[x_0..x_n] and its quotients, degree by degree.

Everything here is linear algebra on graded pieces.  A :class:`GradedRing`
``Q = R/J`` represents ``Q_d`` by the standard monomials left over after
row-reducing the Macaulay matrix of ``J`` in degree ``d``.  A :class:`Module`
is a subquotient ``U/W`` of a free module ``F = sum Q(-e_k)``; cokernels,
ideals, quotient rings and images of matrices are all special cases.

Hom and Ext are computed from truncated free resolutions whose syzygies are
found degree by degree.  Every answer that depends on such a search carries a
``converged`` flag: no new minimal generator appeared in the last ``window``
degrees before the search stopped.
"""
from __future__ import annotations

import logging
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from .exactalg import (
    Polynomial,
    coefficient_matrix,
    left_kernel,
    matmul_mod,
    monomial_basis,
    monomial_positions,
    rank,
    reduce_inplace,
    rref,
)

log = logging.getLogger(__name__)


class NotConverged(RuntimeError):
    """A syzygy search hit its degree bound while still finding generators."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


# ---------------------------------------------------------------------------
# rings


class _ArrayCache(OrderedDict):
    """LRU mapping of numpy arrays bounded by their total size in bytes."""

    def __init__(self, budget):
        super().__init__()
        self.budget = budget
        self.nbytes = 0

    def get_array(self, key):
        val = self.get(key)
        if val is not None:
            self.move_to_end(key)
        return val

    def put(self, key, arr):
        if key in self:
            self.nbytes -= self[key].nbytes
        self[key] = arr
        self.nbytes += arr.nbytes
        while self.nbytes > self.budget and len(self) > 1:
            _, old = self.popitem(last=False)
            self.nbytes -= old.nbytes
        return arr


CACHE_BYTES = 256 * 2**20


@dataclass
class _Piece:
    monomials: tuple  # standard monomials spanning Q_d
    nf: np.ndarray | None  # dim R_d x dim Q_d normal form map; None = identity

    @property
    def dim(self):
        return len(self.monomials)


class GradedRing:
    """``R/J`` for a homogeneous ideal J given by (polynomial, degree) generators."""

    def __init__(self, n_vars, p, ideal=(), name="R", parents=()):
        self.n_vars = n_vars
        self.p = p
        self.parents = tuple(parents)  # rings of which this one is a quotient
        self.ideal = tuple((g, d) for g, d in ideal if not g.is_zero())
        self.name = name
        self._pieces = {}
        self._mult = _ArrayCache(CACHE_BYTES)

    def __repr__(self):
        return f"GradedRing({self.name}, {len(self.ideal)} generators)"

    def is_quotient_of(self, other):
        return other is self or any(q.is_quotient_of(other) for q in self.parents)

    def piece(self, d) -> _Piece:
        if d in self._pieces:
            return self._pieces[d]
        mons = monomial_basis(self.n_vars, d) if d >= 0 else ()
        gens = [(g, e) for g, e in self.ideal if e <= d]
        if not gens or not mons:
            pc = _Piece(mons, None)
        else:
            mac = coefficient_matrix(gens, d, self.n_vars, self.p).data
            e, piv = rref(mac, self.p)
            pivset = set(piv)
            std = [c for c in range(len(mons)) if c not in pivset]
            nf = np.zeros((len(mons), len(std)), dtype=np.int64)
            nf[std, np.arange(len(std))] = 1
            if piv:
                nf[piv] = (-e[:, std]) % self.p
            pc = _Piece(tuple(mons[c] for c in std), nf)
        self._pieces[d] = pc
        return pc

    def dim(self, d):
        return self.piece(d).dim if d >= 0 else 0

    def ideal_dim(self, d):
        return len(monomial_basis(self.n_vars, d)) - self.dim(d) if d >= 0 else 0

    def mult(self, f: Polynomial, w: int) -> np.ndarray:
        """Matrix of multiplication by ``f`` from Q_w to Q_{w + deg f}."""
        key = (f, w)
        hit = self._mult.get_array(key)
        if hit is not None:
            return hit
        src = self.piece(w)
        if f.is_zero() or src.dim == 0:
            e = f.degree if not f.is_zero() else 0
            out = np.zeros((src.dim, self.dim(w + e) if not f.is_zero() else 0), dtype=np.int64)
            return self._mult.put(key, out)
        e = f.degree
        tgt = self.piece(w + e)
        src_exps = np.array(src.monomials, dtype=np.int64).reshape(-1, self.n_vars)
        nrow = src.dim
        acc = np.zeros((nrow, tgt.dim), dtype=np.int64)
        rows = np.arange(nrow)
        for ex, c in f.terms:
            cols = monomial_positions(self.n_vars, w + e, src_exps + np.array(ex, dtype=np.int64))
            if tgt.nf is None:
                acc[rows, cols] += c
            else:
                acc += c * tgt.nf[cols]
            acc %= self.p
        out = acc
        return self._mult.put(key, out)

    def normal_form(self, f: Polynomial, d: int) -> np.ndarray:
        """Coordinates of ``f`` (homogeneous of degree d) in the basis of Q_d."""
        pc = self.piece(d)
        v = f.coefficient_vector(d) if not f.is_zero() else np.zeros(len(monomial_basis(self.n_vars, d)), dtype=np.int64)
        if pc.nf is None:
            return v % self.p
        return matmul_mod(v[None, :], pc.nf, self.p)[0]

    def lift(self, vec, d) -> Polynomial:
        """The polynomial supported on standard monomials with coordinates ``vec``."""
        return Polynomial.from_vector(self.n_vars, self.p, d, vec, self.piece(d).monomials)


# ---------------------------------------------------------------------------
# free-module bookkeeping


def _layout(ring, twists, w):
    """Offsets and sizes of each component of (sum Q(-e_k))_w."""
    sizes = [ring.dim(w - e) for e in twists]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int) if sizes else np.array([0])
    return offs, sizes


def _free_dim(ring, twists, w):
    return sum(ring.dim(w - e) for e in twists)


def _span_rows(ring, twists, elems, w, extra=None, dtype=np.int64):
    """Rows spanning the degree-w part of the submodule generated by ``elems``.

    Element (vec, deg) contributes vec * Q_{w-deg}; the rows of ``extra`` are
    appended.  Filling a preallocated array keeps one copy of large blocks.
    """
    offs, sizes = _layout(ring, twists, w)
    counts = [ring.dim(w - deg) for _, deg in elems]
    n_extra = 0 if extra is None else extra.shape[0]
    out = np.zeros((sum(counts) + n_extra, int(offs[-1])), dtype=dtype)
    r = 0
    for (vec, deg), nrow in zip(elems, counts):
        if not nrow:
            continue
        for k, f in enumerate(vec):
            if not f.is_zero() and sizes[k]:
                out[r:r + nrow, offs[k]:offs[k + 1]] = ring.mult(f, w - deg)
        r += nrow
    if n_extra:
        out[r:] = extra
    return out


def _ambient_mult(ring, twists, f, w):
    """Block-diagonal matrix of multiplication by f on F_w -> F_{w + deg f}."""
    offs_s, sizes_s = _layout(ring, twists, w)
    e = f.degree
    offs_t, sizes_t = _layout(ring, twists, w + e)
    out = np.zeros((int(offs_s[-1]), int(offs_t[-1])), dtype=np.int64)
    for k, tw in enumerate(twists):
        if sizes_s[k] and sizes_t[k]:
            out[offs_s[k]:offs_s[k + 1], offs_t[k]:offs_t[k + 1]] = ring.mult(f, w - tw)
    return out


def _stack(*mats, cols):
    mats = [m for m in mats if m is not None and m.shape[0]]
    if not mats:
        return np.zeros((0, cols), dtype=np.int64)
    return np.vstack(mats)


# ---------------------------------------------------------------------------
# modules


def _vec(elem):
    vec, deg = elem
    return tuple(vec), int(deg)


@dataclass(eq=False)
class Module:
    """Subquotient U/W of the free module F = sum_k Q(-twists[k]).

    ``gens`` generate U (``None`` means U = F), ``rels`` generate W.  Elements
    are pairs ``(vector of polynomials, degree)``; component k of an element
    of degree e is homogeneous of degree e - twists[k] (or zero).
    """

    ring: GradedRing
    twists: tuple
    gens: tuple | None = None
    rels: tuple = ()
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)
    _mults: _ArrayCache = field(default_factory=lambda: _ArrayCache(CACHE_BYTES), repr=False)

    def __post_init__(self):
        self.twists = tuple(int(e) for e in self.twists)
        if self.gens is not None:
            self.gens = tuple(_vec(g) for g in self.gens)
        self.rels = tuple(_vec(r) for r in self.rels)
        for vec, deg in (self.gens or ()) + self.rels:
            if len(vec) != len(self.twists):
                raise ValueError("element length does not match the ambient rank")
            for f, e in zip(vec, self.twists):
                if not f.is_zero() and not f.is_homogeneous(deg - e):
                    raise ValueError(f"inhomogeneous element: component needs degree {deg - e}")

    # -- pieces -------------------------------------------------------------

    def generator_degrees(self):
        return [d for _, d in self.gens] if self.gens is not None else list(self.twists)

    def ambient_dim(self, w):
        return _free_dim(self.ring, self.twists, w)

    def _wbasis(self, w):
        """(rref rows, pivot columns) of W_w."""
        key = ("W", w)
        if key not in self._cache:
            rows = _span_rows(self.ring, self.twists, self.rels, w)
            self._cache[key] = rref(rows, self.ring.p)
        return self._cache[key]

    def _qbasis(self, w):
        """Rows spanning a complement of W_w in U_w + W_w, reduced modulo W_w.

        Returns (rows, pivots) or None when U = F and W = 0 (identity basis).
        """
        key = ("Q", w)
        if key not in self._cache:
            p = self.ring.p
            wb, wp = self._wbasis(w)
            amb = self.ambient_dim(w)
            if self.gens is None:
                if not wp:
                    self._cache[key] = None
                    return None
                free = [c for c in range(amb) if c not in set(wp)]
                q = np.zeros((len(free), amb), dtype=np.int64)
                q[np.arange(len(free)), free] = 1
                self._cache[key] = (q, free)
            else:
                g = _span_rows(self.ring, self.twists, self.gens, w)
                self._cache[key] = rref(self._reduce(g, w), p)
        return self._cache[key]

    def _reduce(self, x, w):
        """x modulo W_w (zero in W's pivot columns)."""
        wb, wp = self._wbasis(w)
        if not wp or x.shape[0] == 0:
            return np.mod(x, self.ring.p)
        return (x - matmul_mod(np.mod(x[:, wp], self.ring.p), wb, self.ring.p)) % self.ring.p

    def coords(self, x, w):
        """Coordinates in the basis of M_w of ambient rows x lying in U_w + W_w."""
        qb = self._qbasis(w)
        if qb is None:
            return np.mod(x, self.ring.p)
        return self._reduce(x, w)[:, qb[1]]

    def mult(self, f, w):
        """Matrix of multiplication by f from M_w to M_{w + deg f} in the bases of :meth:`coords`."""
        key = (f, w)
        hit = self._mults.get_array(key)
        if hit is not None:
            return hit
        amb = _ambient_mult(self.ring, self.twists, f, w)
        qb = self._qbasis(w)
        img = amb if qb is None else matmul_mod(qb[0], amb, self.ring.p)
        return self._mults.put(key, self.coords(img, w + f.degree))

    def U(self, w):
        """Reduced basis rows of U_w + W_w in ambient coordinates."""
        qb = self._qbasis(w)
        if qb is None:
            return np.eye(self.ambient_dim(w), dtype=np.int64)
        return rref(_stack(qb[0], self._wbasis(w)[0], cols=self.ambient_dim(w)), self.ring.p)[0]

    def W(self, w):
        return self._wbasis(w)[0]

    def piece_dim(self, w):
        qb = self._qbasis(w)
        return self.ambient_dim(w) if qb is None else len(qb[1])

    def twist(self, k):
        """M(k): degrees drop by k."""
        sh = lambda el: (el[0], el[1] - k)
        return Module(self.ring, tuple(e - k for e in self.twists),
                      None if self.gens is None else tuple(sh(g) for g in self.gens),
                      tuple(sh(r) for r in self.rels), f"{self.name}({k})")

    def to_json(self):
        enc = lambda els: [{"degree": d, "vector": [f.to_json() for f in v]} for v, d in els]
        return {
            "name": self.name,
            "ring": self.ring.name,
            "twists": list(self.twists),
            "generators": None if self.gens is None else enc(self.gens),
            "relations": enc(self.rels),
        }


def piece_dim(M: Module, v: int) -> int:
    return M.piece_dim(v)


def free_module(ring, degrees, name="F"):
    return Module(ring, tuple(degrees), None, (), name)


# ---------------------------------------------------------------------------
# syzygies


@dataclass
class SyzygyResult:
    module: Module  # the kernel, as a submodule of the free module on M's generators
    converged: bool
    bound: int
    window: int
    found_degrees: list


def _min_gen_degree(M):
    degs = M.generator_degrees()
    return min(degs) if degs else 0


def syzygies(M: Module, degree_bound: int, stab_window: int = 3) -> SyzygyResult:
    """Minimal generators of ker(sum Q(-deg g_i) -> M), degree by degree up to the bound."""
    ring, p = M.ring, M.ring.p
    gdeg = M.generator_degrees()
    if not gdeg:
        return SyzygyResult(free_module(ring, ()), True, degree_bound, stab_window, [])
    if M.gens is None and not M.rels:
        return SyzygyResult(Module(ring, tuple(gdeg), (), (), f"syz({M.name})"), True,
                            degree_bound, stab_window, [])
    lo = min(gdeg)
    if degree_bound < lo:
        raise ValueError(f"degree bound {degree_bound} below the generator degree {lo}")
    images = M.gens if M.gens is not None else tuple(
        (tuple(Polynomial.constant(ring.n_vars, p, 1) if k == i else Polynomial.zero(ring.n_vars, p)
               for k in range(len(M.twists))), d)
        for i, d in enumerate(M.twists))
    src = tuple(gdeg)
    found = []
    found_degrees = []
    for d in range(lo, degree_bound + 1):
        dim_g = sum(ring.dim(d - e) for e in src)
        if dim_g == 0:
            continue
        # rank of [G_d; W_d] in the ambient free module; the matrices here
        # dominate memory, so each is built as float64 and eliminated in place
        wb = M.W(d)
        r_full = rank(_span_rows(ring, M.twists, images, d, wb, np.float64), p, overwrite=True)
        ker_dim = dim_g - (r_full - wb.shape[0])
        if ker_dim == 0:
            continue
        if found and rank(_span_rows(ring, src, found, d, dtype=np.float64), p,
                          overwrite=True) == ker_dim:
            continue
        K = left_kernel(_span_rows(ring, M.twists, images, d, wb), p)[:, :dim_g]
        if found:
            EL, pivL = rref(_span_rows(ring, src, found, d), p)
            K = (K - matmul_mod(K[:, pivL], EL, p)) % p
        new, _ = rref(K, p)
        offs, _ = _layout(ring, src, d)
        for row in new:
            vec = tuple(ring.lift(row[offs[k]:offs[k + 1]], d - e) for k, e in enumerate(src))
            found.append((vec, d))
        found_degrees.extend([d] * new.shape[0])
        log.debug("syzygies(%s): %d new in degree %d", M.name, new.shape[0], d)
    last = max(found_degrees, default=lo - 1)
    converged = last <= degree_bound - stab_window
    kernel = Module(ring, src, tuple(found), (), f"syz({M.name})")
    return SyzygyResult(kernel, converged, degree_bound, stab_window, found_degrees)


def presentation(M: Module, degree_bound: int, stab_window: int = 3):
    """(generator degrees, relations as Module of the kernel, converged)."""
    if M.gens is None:
        rel = Module(M.ring, M.twists, M.rels, (), f"rel({M.name})")
        return list(M.twists), rel, True
    res = syzygies(M, degree_bound, stab_window)
    return M.generator_degrees(), res.module, res.converged


@dataclass
class Resolution:
    degrees: list  # degrees[k] = generator degrees of F_k
    maps: list  # maps[k] = elements (vector over F_{k-1}, degree) for generators of F_k, k >= 1
    converged: bool
    spans: list


def resolve(M: Module, length: int, span: int, stab_window: int = 3) -> Resolution:
    """Truncated free resolution F_0 <- F_1 <- ... <- F_length of M.

    The syzygy search for F_{k+1} runs up to (max degree of F_k) + span.
    """
    degs0 = M.generator_degrees()
    if not degs0:
        return Resolution([[]] * (length + 1), [[]] * (length + 1), True, [])
    degrees = [list(degs0)]
    maps = [[]]
    converged = True
    if M.gens is None:
        first = Module(M.ring, M.twists, M.rels, (), f"rel({M.name})")
        bound = None
    else:
        res = syzygies(M, max(degs0) + span, stab_window)
        first = res.module
        converged &= res.converged
        bound = res.bound
    degrees.append(first.generator_degrees())
    maps.append(list(first.gens))
    spans = [bound]
    current = first
    for _ in range(2, length + 1):
        if not current.gens:
            degrees.append([])
            maps.append([])
            continue
        # kernel of F_k -> F_{k-1}: syzygies of the generators of `current`
        res = syzygies(current, max(current.generator_degrees()) + span, stab_window)
        converged &= res.converged
        spans.append(res.bound)
        nxt = res.module
        degrees.append(nxt.generator_degrees())
        maps.append(list(nxt.gens))
        current = nxt
    return Resolution(degrees, maps, converged, spans)


# ---------------------------------------------------------------------------
# Hom and Ext


def _pullback_matrix(N: Module, src_degs, tgt_degs, tgt_elems, v):
    """Hom(F_k, N)_v -> Hom(F_{k+1}, N)_v in the bases of the pieces of N.

    ``tgt_elems`` are the generators h of F_{k+1} written over F_k; the image
    of (n_g)_g on h is sum_g h_g * n_g.
    """
    rdims = [N.piece_dim(v + d) for d in src_degs]
    cdims = [N.piece_dim(v + d) for d in tgt_degs]
    roffs = np.concatenate([[0], np.cumsum(rdims)]).astype(int)
    coffs = np.concatenate([[0], np.cumsum(cdims)]).astype(int)
    out = np.zeros((int(roffs[-1]), int(coffs[-1])), dtype=np.float64)
    for hi, (vec, _) in enumerate(tgt_elems):
        if not cdims[hi]:
            continue
        for gi, c in enumerate(vec):
            if c.is_zero() or not rdims[gi]:
                continue
            out[roffs[gi]:roffs[gi + 1], coffs[hi]:coffs[hi + 1]] += N.mult(c, v + src_degs[gi])
    return reduce_inplace(out, N.ring.p), int(roffs[-1])


def _cochain_ranks(N, res: Resolution, v, upto):
    """For k = 0..upto: (dim Hom(F_k, N)_v, rank of Hom(F_k, N)_v -> Hom(F_{k+1}, N)_v)."""
    out = []
    for k in range(upto + 1):
        phi, dim_k = _pullback_matrix(N, res.degrees[k], res.degrees[k + 1], res.maps[k + 1], v)
        out.append((dim_k, rank(phi, N.ring.p, overwrite=True)))
        del phi
    return out


def hom_dim(M: Module, N: Module, v: int, degree_bound: int = 6, stab_window: int = 3) -> int:
    """dim Hom(M, N)_v for M, N over the same ring."""
    if not N.ring.is_quotient_of(M.ring):
        raise ValueError(f"{N.name} is not a module over the ring of {M.name}")
    res = resolve(M, 1, degree_bound, stab_window)
    if not res.converged:
        raise NotConverged(f"presentation of {M.name} did not stabilize")
    (dim0, r0), = _cochain_ranks(N, res, v, 0)
    return dim0 - r0


@dataclass(frozen=True)
class ExtResult:
    value: int
    converged: bool
    span: int
    window: int

    def to_json(self):
        return {"value": self.value, "converged": self.converged,
                "span": self.span, "window": self.window}


def ext_dim(M: Module, N: Module, i: int, v: int, degree_bound: int = 6, stab_window: int = 3,
            strict: bool = True, resolution: Resolution | None = None) -> ExtResult:
    """dim Ext^i(M, N)_v from a length-(i+1) truncated resolution of M.

    ``degree_bound`` is the syzygy search span above each step's top
    generator degree.  With ``strict`` a non-converged search raises
    :class:`NotConverged` carrying the partial value.
    """
    if not N.ring.is_quotient_of(M.ring):
        raise ValueError(f"{N.name} is not a module over the ring of {M.name}")
    if i < 0:
        raise ValueError("i must be non-negative")
    res = resolution or resolve(M, i + 1, degree_bound, stab_window)
    ranks = _cochain_ranks(N, res, v, i)
    dim_i, r_i = ranks[i]
    value = dim_i - r_i - (ranks[i - 1][1] if i > 0 else 0)
    out = ExtResult(value, res.converged, degree_bound, stab_window)
    if strict and not res.converged:
        raise NotConverged(f"Ext^{i}({M.name}, {N.name})_{v} not certified", out)
    return out


# ---------------------------------------------------------------------------
# the rings and modules attached to a square matrix


class SubmaxContext:
    """Rings R, B = R/I_B, A = R/I_A built from a t x t homogeneous matrix.

    ``N`` is the matrix without its last row, ``g`` the last row, ``m`` the
    signed maximal minors of ``N`` (so I_B = (m) and rows of ``N`` are
    syzygies of ``m``), ``minors`` the submaximal minors of the full matrix.
    """

    def __init__(self, A):
        from .degmat import det_degree, hb_twists
        from .matgen import delete_row, ia_generators, signed_maximal_minors

        self.matrix = A
        self.dm = A.dm
        self.p = A.p
        self.n_vars = A.n_vars
        self.t = self.dm.t
        self.s = det_degree(self.dm)
        self.n1, self.n2 = hb_twists(self.dm)
        self.N = delete_row(A)
        self.f = self.N.entries
        self.g = A.entries[-1]
        self.m = signed_maximal_minors(self.N)
        self.minors = ia_generators(A)
        self.R = GradedRing(self.n_vars, self.p, (), "R")
        self.B = GradedRing(self.n_vars, self.p, tuple(zip(self.m, self.n1)), "B", (self.R,))
        self.A = GradedRing(self.n_vars, self.p, tuple(self.minors), "A", (self.B,))
        self._modules = {}

    def zero(self):
        return Polynomial.zero(self.n_vars, self.p)

    def one(self):
        return Polynomial.constant(self.n_vars, self.p, 1)

    def unit(self, k, size, f=None):
        z = self.zero()
        return tuple((f if f is not None else self.one()) if i == k else z for i in range(size))

    def module(self, name):
        if name not in self._modules:
            self._modules[name] = std_module(name, self)
        return self._modules[name]


def _nb_relations(ctx):
    """Relations of N_B on generators E_{ji} (j < t-1 rows of N, i < t columns)."""
    t, f, n1, n2 = ctx.t, ctx.f, ctx.n1, ctx.n2
    idx = {(j, i): k for k, (j, i) in enumerate((j, i) for j in range(t - 1) for i in range(t))}
    size = len(idx)
    z = ctx.zero()
    rels = []
    for j in range(t - 1):
        for l in range(t - 1):
            vec = [z] * size
            for i in range(t):
                vec[idx[j, i]] = f[l][i]
            rels.append((tuple(vec), n2[l] - n2[j]))
    for i in range(t):
        for k in range(t):
            if i == k == t - 1:
                continue  # the sum of the diagonal relations of both kinds agrees
            vec = [z] * size
            for j in range(t - 1):
                vec[idx[j, k]] = -f[j][i]
            rels.append((tuple(vec), n1[k] - n1[i]))
    twists = tuple(n1[i] - n2[j] for j in range(t - 1) for i in range(t))
    return twists, rels, idx


def std_module(name: str, ctx: SubmaxContext) -> Module:
    """The named module; see the README for the list."""
    t, n = ctx.t, ctx.dm.n
    B, R, A = ctx.B, ctx.R, ctx.A
    hb_rows = tuple((tuple(ctx.f[j]), ctx.n2[j]) for j in range(t - 1))
    minors = tuple(((f,), d) for f, d in ctx.minors)
    if name == "B":
        return free_module(B, (0,), "B")
    if name == "A":
        return Module(B, (0,), None, minors, "A")
    if name == "A_ring":
        return free_module(A, (0,), "A")
    if name == "IB":
        return Module(R, (0,), tuple(((m,), d) for m, d in zip(ctx.m, ctx.n1)), (), "I_B")
    if name == "IB_R":
        return Module(R, ctx.n1, None, hb_rows, "I_B")
    if name == "IB2":
        gens = tuple(((ctx.m[i] * ctx.m[k],), ctx.n1[i] + ctx.n1[k]) for i in range(t) for k in range(i, t))
        return Module(R, (0,), gens, (), "I_B^2")
    if name == "conormal":
        return Module(B, ctx.n1, None, hb_rows, "I_B/I_B^2")
    if name == "KB":
        twists = tuple(n + 1 - x for x in ctx.n2)
        rels = tuple((tuple(ctx.f[j][i] for j in range(t - 1)), n + 1 - ctx.n1[i]) for i in range(t))
        return Module(B, twists, None, rels, "K_B")
    if name == "NB":
        twists, rels, _ = _nb_relations(ctx)
        return Module(B, twists, None, tuple(rels), "N_B")
    if name == "IAB":
        return Module(B, (0,), minors, (), "I_{A/B}")
    if name == "IAB_R":
        ib = tuple(((m,), d) for m, d in zip(ctx.m, ctx.n1))
        return Module(R, (0,), minors + ib, ib, "I_{A/B}")
    if name == "IAB_s":
        twists, rels, idx = _nb_relations(ctx)
        z = ctx.zero()
        for j in range(t - 1):
            vec = [z] * len(twists)
            for i in range(t):
                vec[idx[j, i]] = ctx.g[i]
            rels.append((tuple(vec), ctx.s - ctx.n2[j]))
        return Module(B, twists, None, tuple(rels), "I_{A/B}(s)")
    if name == "H1":
        return Module(B, ctx.n1, hb_rows, (), "H_1")
    if name == "IA_conormal":
        from .betti import gulliksen_negard_table

        top = max(gulliksen_negard_table(ctx.dm).terms[2])
        gens = tuple(((f,), d) for f, d in ctx.minors)
        res = syzygies(Module(R, (0,), gens, (), "I_A"), top, 0)
        return Module(A, tuple(d for _, d in ctx.minors), None, res.module.gens, "I_A/I_A^2")
    raise KeyError(f"unknown module {name!r}")
