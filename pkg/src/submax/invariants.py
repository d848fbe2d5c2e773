"""Invariants assembled from Hom/Ext dimensions: delta and the estimates built on it.

Every Hom/Ext dimension is computed by :mod:`submax.gradedmod` on random
instances.  "General" is approximated by the minimum over several seeds; a
report with any non-converged constituent is marked UNCERTIFIED.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .betti import dim_w_formula, epsilon
from .degmat import DegreeMatrix, det_degree, theorem_hypotheses
from .exactalg import DEFAULT_PRIME
from .gradedmod import ExtResult, SubmaxContext, ext_dim
from .matgen import instance

DEFAULT_SPAN = 5
DEFAULT_WINDOW = 3
DEFAULT_SEEDS = 3
MODES = ("formula", "eps", "eps_plus_delta")


@dataclass(frozen=True)
class Quantity:
    """An integer with the provenance of the search that produced it."""

    name: str
    value: int
    converged: bool
    span: int
    window: int
    seeds: tuple = ()

    def to_json(self):
        return {"value": self.value, "converged": self.converged, "span": self.span,
                "window": self.window, "seeds": list(self.seeds)}


def _q(name, res: ExtResult, seeds=()):
    return Quantity(name, res.value, res.converged, res.span, res.window, tuple(seeds))


def _minimum(name, results, seeds):
    """Least value over seeds; converged only if every run converged."""
    best = min(r.value for r in results)
    return Quantity(name, best, all(r.converged for r in results),
                    results[0].span, results[0].window, tuple(seeds))


def _combine(name, value, parts):
    parts = list(parts)
    return Quantity(name, value, all(p.converged for p in parts), parts[0].span,
                    parts[0].window, parts[0].seeds)


class Computation:
    """Memoized Hom/Ext dimensions for one degree matrix over several seeds."""

    def __init__(self, dm: DegreeMatrix, prime: int = DEFAULT_PRIME, seeds=(0,),
                 span: int = DEFAULT_SPAN, window: int = DEFAULT_WINDOW, matrices=None):
        if dm.t <= 2:
            raise ValueError("invariants need t > 2")
        self.dm = dm
        self.prime = prime
        self.span = span
        self.window = window
        if matrices is not None:
            self.contexts = [SubmaxContext(A) for A in matrices]
            self.seeds = tuple(range(len(self.contexts)))
        else:
            self.seeds = tuple(seeds)
            self.contexts = [SubmaxContext(instance(dm, prime, sd)) for sd in self.seeds]
        self.s = det_degree(dm)
        self._memo = {}

    def _ext(self, key, M, N, i, v):
        if key not in self._memo:
            runs = [ext_dim(ctx.module(M), ctx.module(N), i, v, self.span, self.window, strict=False)
                    for ctx in self.contexts]
            self._memo[key] = _minimum(key, runs, self.seeds)
        return self._memo[key]

    def hom(self, M, N, v, name=None):
        return self._ext(name or f"{v}hom({M},{N})", M, N, 0, v)

    def ext(self, M, N, i, v, name=None):
        return self._ext(name or f"{v}ext{i}({M},{N})", M, N, i, v)


def delta_of(comp: Computation, target: str, v: int) -> Quantity:
    """delta(N)_v = hom_v(I_B/I_B^2, N) - ext^1_v(I_B/I_B^2, N) for N in {K_B, N_B}."""
    names = {"K_B": "KB", "KB": "KB", "N_B": "NB", "NB": "NB"}
    if target not in names:
        raise ValueError(f"target must be K_B or N_B, got {target!r}")
    N = names[target]
    h = comp.hom("conormal", N, v)
    e = comp.ext("conormal", N, 1, v)
    return _combine(f"delta({N})_{v}", h.value - e.value, [h, e])


def delta(comp: Computation):
    """(delta, delta_KB, delta_NB) with delta = delta(K_B)_{n+1-2s} - delta(N_B)_{-s}."""
    s, n = comp.s, comp.dm.n
    dk = delta_of(comp, "K_B", n + 1 - 2 * s)
    dn = delta_of(comp, "N_B", -s)
    return _combine("delta", dk.value - dn.value, [dk, dn]), dk, dn


def hom_ib_iab(comp: Computation) -> Quantity:
    """0hom_R(I_B, I_{A/B})."""
    return comp.hom("IB_R", "IAB_R", 0, "0hom(I_B,I_A/B)")


def upper_bound(comp: Computation) -> Quantity:
    """0ext^1_B(I_B/I_B^2, I_{A/B})."""
    return comp.ext("conormal", "IAB", 1, 0, "0ext1(I_B/I_B^2,I_A/B)")


def ext2_term(comp: Computation) -> Quantity:
    """sext^1_B(N_B, A), the implemented route to text^2_B(S^2(I_{A/B}(s)), K_B)."""
    return comp.ext("NB", "A_ring", 1, comp.s, f"{comp.s}ext1(N_B,A)")


def h2_RAA(comp: Computation) -> Quantity:
    """0ext^1_A(I_A/I_A^2, A), standing in for 0h^2(R, A, A)."""
    return comp.ext("IA_conormal", "A_ring", 1, 0, "0h2(R,A,A)")


@dataclass(frozen=True)
class CodimBounds:
    lower: int
    upper: int
    exact: int | None
    c: int  # c(I_{A/B}) = upper - ext2 term
    h2: int | None
    h2_source: str | None  # "computed", "override" or None

    def to_json(self):
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact,
                "c(I_A/B)": self.c, "h2": self.h2, "h2_source": self.h2_source}


def codim_bounds_from(upper: int, ext2: int, delta_value: int, h2: int | None = None,
                      h2_source: str | None = None) -> CodimBounds:
    """Assemble the bounds from their ingredients.

    lower = max(0, c, delta - ext2) with c = upper - ext2.  An exact value is
    reported only when h2 is known (exact = c + h2) or the bounds meet.
    """
    c = upper - ext2
    lower = max(0, c, delta_value - ext2)
    if h2 is not None:
        exact = c + h2
        if not lower <= exact <= upper:
            raise ArithmeticError(f"exact value {exact} outside [{lower}, {upper}]")
    elif lower == upper:
        exact = lower
    else:
        exact = None
    return CodimBounds(lower, upper, exact, c, h2, h2_source if h2 is not None else None)


def codim_bounds(comp: Computation, h2_override: int | None = None, compute_h2: bool = False):
    """(CodimBounds, constituent quantities)."""
    up = upper_bound(comp)
    e2 = ext2_term(comp)
    d, _, _ = delta(comp)
    parts = [up, e2, d]
    h2, src = None, None
    if h2_override is not None:
        h2, src = int(h2_override), "override"
    elif compute_h2:
        hq = h2_RAA(comp)
        parts.append(hq)
        h2, src = hq.value, "computed"
    return codim_bounds_from(up.value, e2.value, d.value, h2, src), parts


@dataclass(frozen=True)
class InvariantReport:
    dm: DegreeMatrix
    s: int
    mode: str
    epsilon: int
    dim_formula: int | None
    delta_KB: Quantity | None = None
    delta_NB: Quantity | None = None
    delta: Quantity | None = None
    dim_estimate: int | None = None
    hom_IB_IAB: Quantity | None = None
    upper: Quantity | None = None
    ext2_term: Quantity | None = None
    h2_RAA: Quantity | None = None
    codim: CodimBounds | None = None
    hypotheses: dict = field(default_factory=dict)
    prime: int = DEFAULT_PRIME
    seeds: tuple = ()

    @property
    def quantities(self):
        return [q for q in (self.delta_KB, self.delta_NB, self.delta, self.hom_IB_IAB,
                            self.upper, self.ext2_term, self.h2_RAA) if q is not None]

    @property
    def certified(self):
        return all(q.converged for q in self.quantities)

    @property
    def status(self):
        return "CERTIFIED" if self.certified else "UNCERTIFIED"

    def to_json(self):
        q = lambda x: None if x is None else x.to_json()
        out = {
            "schema": "invariant-report/1",
            "status": self.status,
            "degree_matrix": self.dm.to_json(),
            "s": self.s,
            "prime": self.prime,
            "seeds": list(self.seeds),
            "mode": self.mode,
            "epsilon": self.epsilon,
            "dim_formula": self.dim_formula,
            "dim_estimate": self.dim_estimate,
            "delta": q(self.delta),
            "delta_KB": q(self.delta_KB),
            "delta_NB": q(self.delta_NB),
            "hom_IB_IAB": q(self.hom_IB_IAB),
            "ext1_conormal_IAB": q(self.upper),
            "ext1_NB_A": q(self.ext2_term),
            "h2_RAA": q(self.h2_RAA),
            "codim": None if self.codim is None else self.codim.to_json(),
            "hypotheses": self.hypotheses,
        }
        return out

    def to_text(self):
        lines = [f"degree matrix b={list(self.dm.b)} a={list(self.dm.a)} n={self.dm.n}  s={self.s}",
                 f"status: {self.status}",
                 f"epsilon = {self.epsilon}"]
        if self.dim_formula is not None:
            lines.append(f"dimension formula = {self.dim_formula}")
        for q in (self.delta_KB, self.delta_NB, self.delta, self.hom_IB_IAB, self.upper,
                  self.ext2_term, self.h2_RAA):
            if q is not None:
                flag = "" if q.converged else "  (not converged)"
                lines.append(f"{q.name} = {q.value}{flag}")
        if self.dim_estimate is not None:
            lines.append(f"dim estimate ({self.mode}) = {self.dim_estimate}")
        if self.codim is not None:
            c = self.codim
            if c.exact is not None:
                lines.append(f"codim = {c.exact}  (bounds [{c.lower}, {c.upper}])")
            else:
                lines.append(f"codim in [{c.lower}, {c.upper}]  (no exact value)")
        return "\n".join(lines)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def dim_hilb_estimate(dm: DegreeMatrix, mode: str = "eps_plus_delta", comp: Computation | None = None,
                      **kw) -> InvariantReport:
    """formula: the closed dimension formula; eps: epsilon; eps_plus_delta: epsilon + delta."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if dm.t <= 2:
        raise ValueError("the dimension estimate needs t > 2")
    hyp = theorem_hypotheses(dm).to_json()
    eps = epsilon(dm)
    formula, _ = dim_w_formula(dm)
    s = det_degree(dm)
    if mode == "formula":
        return InvariantReport(dm, s, mode, eps, formula, dim_estimate=formula, hypotheses=hyp)
    if mode == "eps":
        return InvariantReport(dm, s, mode, eps, formula, dim_estimate=eps, hypotheses=hyp)
    comp = comp or Computation(dm, **kw)
    d, dk, dn = delta(comp)
    return InvariantReport(dm, s, mode, eps, formula, dk, dn, d, eps + d.value, hypotheses=hyp,
                           prime=comp.prime, seeds=comp.seeds)


def full_report(dm: DegreeMatrix, h2_override: int | None = None, compute_h2: bool = False,
                comp: Computation | None = None, **kw) -> InvariantReport:
    """epsilon + delta together with hom(I_B, I_{A/B}) and the codimension bounds."""
    comp = comp or Computation(dm, **kw)
    base = dim_hilb_estimate(dm, "eps_plus_delta", comp)
    bounds, parts = codim_bounds(comp, h2_override, compute_h2)
    up, e2 = parts[0], parts[1]
    h2q = parts[3] if len(parts) > 3 else None
    return InvariantReport(dm, base.s, base.mode, base.epsilon, base.dim_formula, base.delta_KB,
                           base.delta_NB, base.delta, base.dim_estimate, hom_ib_iab(comp), up, e2,
                           h2q, bounds, base.hypotheses, comp.prime, comp.seeds)
