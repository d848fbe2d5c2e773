"""Closed-form graded free complexes and the numbers read off from them.

A :class:`BettiTable` records a graded free complex as one degree multiset per
homological index: degree ``d`` in ``terms[k]`` stands for a summand R(-d).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .degmat import DegreeMatrix, det_degree, hb_twists, is_nonempty, theorem_hypotheses


def binom_trunc(x: int, n: int) -> int:
    """C(x, n) with the convention C(x, n) = 0 for x < n."""
    return comb(x, n) if x >= n else 0


def binom_poly(x, k: int):
    """The binomial polynomial x(x-1)...(x-k+1)/k!, valid for any integer x."""
    num = 1
    for i in range(k):
        num *= x - i
    return Fraction(num, factorial(k))


@dataclass(frozen=True)
class BettiTable:
    terms: tuple  # tuple of sorted tuples of degrees
    label: str
    n: int = 5

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(tuple(sorted(t)) for t in self.terms))

    def ranks(self):
        return tuple(len(t) for t in self.terms)

    def alternating_rank(self):
        return sum((-1) ** k * len(t) for k, t in enumerate(self.terms))

    def shift(self, c):
        """Table of the complex twisted by (c): every degree d becomes d - c."""
        return BettiTable(tuple(tuple(d - c for d in t) for t in self.terms), self.label, self.n)

    def tail(self):
        """Drop terms[0]: a resolution of R/I becomes a resolution of I."""
        return BettiTable(self.terms[1:], self.label, self.n)

    def multisets(self):
        return [Counter(t) for t in self.terms]

    def to_json(self):
        return {str(k): list(t) for k, t in enumerate(self.terms)}

    def to_text(self):
        parts = []
        for t in self.terms:
            c = Counter(t)
            if not c:
                parts.append("0")
                continue
            summands = []
            for d in sorted(c):
                tw = "R" if d == 0 else f"R({-d})"
                summands.append(tw + (f"^{c[d]}" if c[d] > 1 else ""))
            parts.append(" + ".join(summands))
        return " <- ".join(parts)


def _require_t(dm, low=2):
    if dm.t < low:
        raise ValueError(f"need t >= {low}")


def hilbert_burch_table(dm: DegreeMatrix) -> BettiTable:
    _require_t(dm)
    if not is_nonempty(dm):
        raise ValueError(f"degree matrix {dm} is empty")
    n1, n2 = hb_twists(dm)
    return BettiTable(((0,), n1, n2), "HB", dm.n)


def ideal_square_table(dm: DegreeMatrix) -> BettiTable:
    """Resolution S^2 F1 <- F1 (x) F2 <- wedge^2 F2 of the ideal I_B^2."""
    _require_t(dm)
    if not is_nonempty(dm):
        raise ValueError(f"degree matrix {dm} is empty")
    n1, n2 = hb_twists(dm)
    t = dm.t
    s2 = [n1[i] + n1[k] for i in range(t) for k in range(i, t)]
    mixed = [x + y for x in n1 for y in n2]
    w2 = [n2[i] + n2[j] for i in range(t - 1) for j in range(i + 1, t - 1)]
    return BettiTable((s2, mixed, w2), "SQ", dm.n)


def gulliksen_negard_table(dm: DegreeMatrix) -> BettiTable:
    _require_t(dm)
    if not is_nonempty(dm):
        raise ValueError(f"degree matrix {dm} is empty")
    if set(dm.a) & set(dm.b):
        raise ValueError("non-minimal: some a_j equals some b_i")
    s = det_degree(dm)
    a, b = dm.a, dm.b
    t1 = [s - aj + bi for aj in a for bi in b]
    t2 = Counter(s + bi - bj for bi in b for bj in b)
    t2.update(s + aj - ai for aj in a for ai in a)
    t2[s] -= 2
    t3 = [s + aj - bi for aj in a for bi in b]
    table = BettiTable(((0,), t1, list(t2.elements()), t3, (2 * s,)), "GN", dm.n)
    if any(d <= 0 for t in table.terms[1:] for d in t):
        raise ValueError(f"non-minimal Gulliksen-Negard table for {dm}")
    return table


def canonical_table(dm: DegreeMatrix) -> BettiTable:
    """Resolution of K_B (untwisted) obtained by dualizing Hilbert-Burch."""
    n1, n2 = hb_twists(dm)
    tw = dm.n + 1
    return BettiTable(([tw - x for x in n2], [tw - x for x in n1], [tw]), "KB", dm.n)


def normal_module_table(dm: DegreeMatrix) -> BettiTable:
    """The free complex F2*(x)F1 <- (F1*(x)F1 + F2*(x)F2)/R <- F1*(x)F2 presenting N_B."""
    n1, n2 = hb_twists(dm)
    t0 = [x - y for y in n2 for x in n1]
    t1 = Counter(x - y for x in n1 for y in n1)
    t1.update(x - y for x in n2 for y in n2)
    t1[0] -= 1
    t2 = [y - x for x in n1 for y in n2]
    return BettiTable((t0, list(t1.elements()), t2), "NB-pres", dm.n)


def hilbert_function(table: BettiTable, v: int) -> int:
    n = table.n
    return sum((-1) ** k * binom_trunc(v - d + n, n) for k, t in enumerate(table.terms) for d in t)


@dataclass(frozen=True)
class HilbertPolynomial:
    """Integer coordinates in the basis C(x, 0), C(x, 1), ..., C(x, n)."""

    coords: tuple

    def __call__(self, x):
        val = sum(c * binom_poly(x, k) for k, c in enumerate(self.coords))
        assert val.denominator == 1
        return int(val)

    @property
    def degree(self):
        nz = [k for k, c in enumerate(self.coords) if c]
        return max(nz) if nz else -1

    def monomial_coefficients(self):
        """Rational coefficients in the basis 1, x, x^2, ..."""
        out = [Fraction(0)] * len(self.coords)
        for k, c in enumerate(self.coords):
            # expand x(x-1)...(x-k+1)/k!
            poly = [Fraction(1)]
            for i in range(k):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for e, a in enumerate(poly):
                    nxt[e + 1] += a
                    nxt[e] -= i * a
                poly = nxt
            for e, a in enumerate(poly):
                out[e] += c * a / factorial(k)
        return out

    def to_json(self):
        return {"basis": "binomial C(x,k)", "coords": list(self.coords)}


def hilbert_polynomial(table: BettiTable) -> HilbertPolynomial:
    n = table.n

    def p(x):
        return sum((-1) ** k * binom_poly(x - d + n, n) for k, t in enumerate(table.terms) for d in t)

    vals = [p(x) for x in range(n + 1)]
    coords = []
    for k in range(n + 1):
        coords.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    assert all(c.denominator == 1 for c in coords)
    return HilbertPolynomial(tuple(int(c) for c in coords))


def degree_and_genus(p: HilbertPolynomial):
    """(d, g) from p(x) = d x + 1 - g."""
    if p.degree != 1:
        raise ValueError(f"Hilbert polynomial has degree {p.degree}, expected 1")
    return p.coords[1], 1 - p.coords[0]


def eta(dm: DegreeMatrix, v: int) -> int:
    """dim (I_B / I_B^2)_v from the Hilbert-Burch and ideal-square tables."""
    ib = hilbert_burch_table(dm).tail()
    return hilbert_function(ib, v) - hilbert_function(ideal_square_table(dm), v)


def epsilon(dm: DegreeMatrix) -> int:
    n1, n2 = hb_twists(dm)
    s = det_degree(dm)
    return eta(dm, s) + sum(eta(dm, x) for x in n2) - sum(eta(dm, x) for x in n1)


def dim_w_formula(dm: DegreeMatrix):
    """The eight-sum closed formula; returns (value, HypothesisReport)."""
    if dm.t <= 2:
        raise ValueError("the dimension formula needs t > 2")
    a, b, t, n = dm.a, dm.b, dm.t, dm.n
    s = det_degree(dm)
    at = a[-1]

    def B(x):
        return comb(x + n, n) if x >= 0 else 0

    T = range(t)
    T1 = range(t - 1)
    total = sum(B(a[j] - b[i]) for i in T for j in T)
    total -= sum(B(a[j] - a[i]) for i in T1 for j in T)
    total -= sum(B(b[i] - b[j]) for i in T for j in T)
    total += sum(B(b[i] - a[j]) for i in T for j in T1)
    total -= sum(B(at - s - b[i] - b[k] + a[j]) for j in T for i in T for k in range(i, t))
    total += sum(B(at - s - b[i] - a[k] + a[j]) for i in T for j in T for k in T1)
    total -= sum(B(at - s - a[i] - a[k] + a[j]) for i in T1 for k in range(i + 1, t - 1) for j in T)
    total += sum(B(at - s + b[i] - 2 * b[0]) for i in range(1, t))
    return total, theorem_hypotheses(dm)
