"""Degree matrices (b; a) of square homogeneous matrices and their numerology."""
from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class DegreeMatrix:
    """Row degrees ``a`` and column degrees ``b``; entry (j, i) has degree a_j - b_i.

    ``n`` is the dimension of the ambient projective space, so the polynomial
    ring has ``n + 1`` variables.
    """

    b: tuple
    a: tuple
    n: int = 5

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have the same length")
        if len(self.a) < 2:
            raise ValueError("need t >= 2")
        if list(self.b) != sorted(self.b):
            raise ValueError(f"b must be non-decreasing, got {self.b}")
        if list(self.a) != sorted(self.a):
            raise ValueError(f"a must be non-decreasing, got {self.a}")
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def t(self):
        return len(self.a)

    @property
    def n_vars(self):
        return self.n + 1

    def u(self, j, i):
        """Entry degree a_j - b_i (0-based indices)."""
        return self.a[j] - self.b[i]

    def entry_degree(self, j, i):
        """Degree of entry (j, i), or None when the entry is forced to be zero."""
        d = self.u(j, i)
        return d if d > 0 else None

    def validate(self):
        return DegreeMatrix(self.b, self.a, self.n)

    def shifted(self, c):
        return DegreeMatrix(tuple(x + c for x in self.b), tuple(x + c for x in self.a), self.n)

    def to_json(self):
        return {"b": list(self.b), "a": list(self.a), "n": self.n}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        extra = set(data) - {"a", "b", "n"}
        if extra:
            raise ValueError(f"unknown keys {sorted(extra)}")
        return cls(tuple(data["b"]), tuple(data["a"]), int(data.get("n", 5)))


def example_matrix(example: int, s: int, n: int = 5) -> DegreeMatrix:
    """The three families worked out in the examples (all with b = 0)."""
    if example == 1:
        return DegreeMatrix((0, 0, 0, 0), (1, 1, 1, s - 3), n)
    if example == 2:
        return DegreeMatrix((0, 0, 0), (1, 1, s - 2), n)
    if example == 3:
        return DegreeMatrix((0, 0, 0), (1, 2, s - 3), n)
    raise ValueError(f"unknown example {example}")


def is_nonempty(dm: DegreeMatrix) -> bool:
    return all(dm.a[i - 1] - dm.b[i] > 0 for i in range(1, dm.t))


def det_degree(dm: DegreeMatrix) -> int:
    return sum(dm.a) - sum(dm.b)


def hb_twists(dm: DegreeMatrix):
    """Generator degrees n1 of I_B and relation degrees n2 (Hilbert-Burch)."""
    s = det_degree(dm)
    at = dm.a[-1]
    n1 = tuple(s + bi - at for bi in dm.b)
    n2 = tuple(s + aj - at for aj in dm.a[:-1])
    return n1, n2


@dataclass(frozen=True)
class HypothesisReport:
    nonempty: bool
    t_gt_2: bool
    depth_condition: bool
    depth_condition_intro: bool
    at_condition: bool
    ambient: bool
    positive_dim: bool

    @property
    def theorem_applies(self):
        return all((self.nonempty, self.t_gt_2, self.depth_condition,
                    self.at_condition, self.ambient, self.positive_dim))

    def to_json(self):
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["theorem_applies"] = self.theorem_applies
        return d


def theorem_hypotheses(dm: DegreeMatrix) -> HypothesisReport:
    a, b, t = dm.a, dm.b, dm.t
    # a_i >= b_{i+3} for 1 <= i <= t-3, 1-based
    depth = all(a[i] >= b[i + 3] for i in range(t - 3))
    depth_intro = depth
    if t == 3:
        depth = depth and a[0] >= b[-1]
    if t <= 3:
        depth_intro = depth_intro and a[0] >= b[-1]
    at_cond = t >= 3 and a[-1] > a[-2] + a[-3] - b[0]
    return HypothesisReport(
        nonempty=is_nonempty(dm),
        t_gt_2=t > 2,
        depth_condition=depth,
        depth_condition_intro=depth_intro,
        at_condition=at_cond,
        ambient=dm.n >= 5,
        positive_dim=dm.n - 4 >= 1,
    )
