"""Integer chain complexes and their homology."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex import SimplicialComplex, boundary_matrix
from .errors import ChainComplexError
from .smith import field_rank, invariant_factors


@dataclass(frozen=True, eq=False)
class IntegerChainComplex:
    """Free chain complex ``C_top -> ... -> C_0`` with integer boundary matrices.

    ``boundaries[d]`` maps ``C_d`` to ``C_{d-1}``; ``boundaries[0]`` has no rows.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.boundaries):
            raise ValueError("one boundary matrix per degree is required")
        for d, B in enumerate(self.boundaries):
            expected = (self.ranks[d - 1] if d else 0, self.ranks[d])
            if B.shape != expected:
                raise ValueError(f"boundary in degree {d} has shape {B.shape}, expected {expected}")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, d: int) -> np.ndarray:
        if 0 <= d <= self.top:
            return self.boundaries[d]
        if d == self.top + 1:
            return np.zeros((self.ranks[-1] if self.ranks else 0, 0), dtype=object)
        raise IndexError(d)

    def rank(self, d: int) -> int:
        return self.ranks[d] if 0 <= d <= self.top else 0

    def check(self) -> None:
        """Raise :class:`ChainComplexError` if some composite boundary is nonzero."""
        for d in range(2, self.top + 1):
            if _nonzero_product(self.boundaries[d - 1], self.boundaries[d]):
                raise ChainComplexError(f"boundary maps do not compose to zero in degree {d}", degree=d)


def _nonzero_product(A: np.ndarray, B: np.ndarray) -> bool:
    if A.size == 0 or B.size == 0:
        return False
    rows_b: dict[int, list[tuple[int, int]]] = {}
    for k, j in zip(*np.nonzero(B)):
        rows_b.setdefault(int(k), []).append((int(j), int(B[k, j])))
    for i in range(A.shape[0]):
        acc: dict[int, int] = {}
        for k in np.nonzero(A[i])[0]:
            a = int(A[i, k])
            for j, b in rows_b.get(int(k), ()):
                acc[j] = acc.get(j, 0) + a * b
        if any(acc.values()):
            return True
    return False


def chain_complex(K: SimplicialComplex) -> IntegerChainComplex:
    """Simplicial chain complex of ``K``."""
    ranks = tuple(K.count(d) for d in range(K.dim + 1))
    return IntegerChainComplex(ranks, tuple(boundary_matrix(K, d) for d in range(K.dim + 1)))


@dataclass(frozen=True)
class HomologySummary:
    """Per-degree ``(betti, torsion)`` with trailing zero degrees dropped.

    Degrees outside the stored range read as ``(0, ())``, so two summaries
    compare equal exactly when every degree agrees.
    """

    groups: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        groups = [(int(b), tuple(int(t) for t in tors)) for b, tors in self.groups]
        for b, tors in groups:
            if b < 0 or any(t < 2 for t in tors):
                raise ValueError("betti numbers must be >= 0 and torsion coefficients > 1")
            if any(b2 % a for a, b2 in zip(tors, tors[1:])):
                raise ValueError("torsion coefficients must each divide the next")
        while groups and groups[-1] == (0, ()):
            groups.pop()
        object.__setattr__(self, "groups", tuple(groups))

    @classmethod
    def from_bettis(cls, bettis: Iterable[int]) -> "HomologySummary":
        return cls(tuple((b, ()) for b in bettis))

    def __getitem__(self, d: int) -> tuple[int, tuple[int, ...]]:
        if 0 <= d < len(self.groups):
            return self.groups[d]
        return (0, ())

    def betti(self, d: int) -> int:
        return self[d][0]

    def torsion(self, d: int) -> tuple[int, ...]:
        return self[d][1]

    @property
    def bettis(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.groups)

    @property
    def length(self) -> int:
        return len(self.groups)

    def is_zero(self) -> bool:
        return not self.groups

    def to_dict(self) -> dict:
        return {"degrees": [{"betti": b, "torsion": list(t)} for b, t in self.groups]}

    @classmethod
    def from_dict(cls, data: dict) -> "HomologySummary":
        return cls(tuple((g["betti"], tuple(g["torsion"])) for g in data["degrees"]))

    def __str__(self) -> str:
        if not self.groups:
            return "(0)"
        return "(" + "; ".join(_group_str(b, t) for b, t in self.groups) + ")"

    def table(self, top: int) -> str:
        """Like ``str`` but listing every degree up to ``top``, zeros included."""
        n = max(top + 1, self.length, 1)
        return "(" + "; ".join(_group_str(*self[d]) for d in range(n)) + ")"


def _group_str(betti: int, torsion: Sequence[int]) -> str:
    parts = []
    if betti:
        parts.append("Z" if betti == 1 else f"Z^{betti}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def homology(C: IntegerChainComplex | SimplicialComplex) -> HomologySummary:
    """Integer homology from the Smith invariants of each boundary map.

    ``betti_d = rank C_d - rank d_d - rank d_{d+1}`` and the torsion of
    ``H_d`` is the set of invariant factors of ``d_{d+1}`` exceeding one.
    """
    if isinstance(C, SimplicialComplex):
        C = chain_complex(C)
    C.check()
    factors = [invariant_factors(C.boundary(d)) for d in range(C.top + 2)]
    groups = []
    for d in range(C.top + 1):
        betti = C.rank(d) - len(factors[d]) - len(factors[d + 1])
        groups.append((betti, tuple(f for f in factors[d + 1] if f > 1)))
    return HomologySummary(tuple(groups))


def homology_field(C: IntegerChainComplex | SimplicialComplex, characteristic: int = 0) -> tuple[int, ...]:
    """Homology dimensions over ``Q`` (characteristic 0) or ``GF(p)``.

    Computed by plain Gaussian elimination, independently of the Smith path.
    Trailing zero degrees are dropped.
    """
    if isinstance(C, SimplicialComplex):
        C = chain_complex(C)
    C.check()
    ranks = [field_rank(C.boundary(d), characteristic) for d in range(C.top + 2)]
    dims = [C.rank(d) - ranks[d] - ranks[d + 1] for d in range(C.top + 1)]
    while dims and dims[-1] == 0:
        dims.pop()
    return tuple(dims)


def truncate(H: HomologySummary, level) -> HomologySummary:
    """Keep degrees ``<= level`` and zero the rest; a negative level gives zero.

    ``level`` may be an integer or ``+-math.inf``.
    """
    if level == math.inf:
        return H
    if level < 0:
        return HomologySummary()
    return HomologySummary(H.groups[: int(level) + 1])


def universal_coefficient_dims(H: HomologySummary, characteristic: int) -> tuple[int, ...]:
    """Field dimensions predicted from integer homology by universal coefficients."""
    dims = []
    for d in range(H.length + 1):
        b = H.betti(d)
        if characteristic:
            b += sum(1 for t in H.torsion(d) if t % characteristic == 0)
            b += sum(1 for t in H.torsion(d - 1) if t % characteristic == 0) if d else 0
        dims.append(b)
    while dims and dims[-1] == 0:
        dims.pop()
    return tuple(dims)
