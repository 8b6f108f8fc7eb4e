"""Mayer–Vietoris checks for closed subcomplex covers.

For a cover ``X = U ∪ V`` by subcomplexes the short exact sequence

    0 -> C(U ∩ V) -> C(U) ⊕ C(V) -> C(U) + C(V) -> 0

is assembled from explicit lattice bases inside the simplicial chains of
``X``, for ordinary chains and for intersection chains with induced
perversities. Exactness of the chain-level sequence is checked over Z; the
long exact homology sequence is checked term by term over fields by
computing the ranks of all three families of maps, the connecting map
included, independently of one another.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .allowability import intersection_chain_complex
from .complex import SimplicialComplex
from .errors import ComplexError
from .homology import HomologySummary, IntegerChainComplex, homology
from .perversity import Perversity, induced
from .smith import (
    field_nullspace,
    field_rank,
    field_solve,
    hermite_rows,
    invariant_factors,
    solve_in_lattice,
)
from .stratification import StratifiedComplex, restrict

FIELDS = (0, 2, 3)


@dataclass
class Lattices:
    """A chain complex given by lattice bases (rows) in the simplex coordinates of ``X``."""

    bases: list[list[list[int]]]

    def rank(self, d: int) -> int:
        return len(self.bases[d]) if d < len(self.bases) else 0


def _embed(sub: SimplicialComplex, X: SimplicialComplex, vectors, d: int) -> list[list[int]]:
    out = []
    idx = [X.index(s) for s in sub.simplices_of_dim(d)]
    for vec in vectors:
        row = [0] * X.count(d)
        for k, x in zip(idx, vec):
            row[k] = int(x)
        out.append(row)
    return out


def _ordinary(sub: SimplicialComplex, X: SimplicialComplex) -> Lattices:
    bases = []
    for d in range(X.dim + 1):
        n = sub.count(d)
        bases.append(_embed(sub, X, [[int(i == j) for j in range(n)] for i in range(n)], d))
    return Lattices(bases)


def _intersection(Y: StratifiedComplex, X: SimplicialComplex, q: Perversity) -> Lattices:
    IC = intersection_chain_complex(Y, q)
    bases = []
    for d in range(X.dim + 1):
        gens = IC.generators(d) if d <= Y.complex.dim else []
        bases.append(_embed(Y.complex, X, gens, d))
    return Lattices(bases)


def _sum(a: Lattices, b: Lattices) -> Lattices:
    return Lattices([hermite_rows(x + y) for x, y in zip(a.bases, b.bases)])


def _boundary_image(X: SimplicialComplex, d: int, vec) -> list[int]:
    out = [0] * X.count(d - 1)
    for j, x in enumerate(vec):
        if x:
            s = X.simplices_of_dim(d)[j]
            for i in range(len(s)):
                out[X.index(s[:i] + s[i + 1:])] += (-1) ** i * x
    return out


def _coords(target: list[list[int]], vectors) -> np.ndarray:
    """Matrix whose columns are the coordinates of ``vectors`` in the Hermite basis ``target``."""
    M = np.zeros((len(target), len(vectors)), dtype=object)
    for c, v in enumerate(vectors):
        for r, y in enumerate(solve_in_lattice(target, v)):
            M[r, c] = y
    return M


def _chain_complex(lat: Lattices, X: SimplicialComplex) -> IntegerChainComplex:
    ranks = tuple(lat.rank(d) for d in range(X.dim + 1))
    bds = [np.zeros((0, ranks[0]), dtype=object)]
    for d in range(1, X.dim + 1):
        bds.append(_coords(lat.bases[d - 1], [_boundary_image(X, d, v) for v in lat.bases[d]]))
    return IntegerChainComplex(ranks, tuple(bds))


def _inclusion(small: Lattices, big: Lattices, d: int) -> np.ndarray:
    return _coords(big.bases[d], small.bases[d])


def _hstack(*blocks):
    return np.concatenate(blocks, axis=1) if blocks else None


def _block_diag(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros((A.shape[0] + B.shape[0], A.shape[1] + B.shape[1]), dtype=object)
    out[: A.shape[0], : A.shape[1]] = A
    out[A.shape[0]:, A.shape[1]:] = B
    return out


def _neg(M):
    return np.array(-M, dtype=object)


@dataclass
class ExactnessReport:
    """Mayer–Vietoris data for one family of chains (ordinary or intersection)."""

    kind: str
    homology: dict[str, HomologySummary]
    short_exact: bool
    exact: dict[int, list[bool]]
    connecting_ranks: dict[int, list[int]]
    sum_quasi_isomorphic: bool

    @property
    def long_exact(self) -> bool:
        return all(all(v) for v in self.exact.values())

    @property
    def passed(self) -> bool:
        return self.short_exact and self.long_exact

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "homology": {k: v.to_dict() for k, v in self.homology.items()},
            "short_exact": self.short_exact,
            "long_exact": {str(k): v for k, v in self.exact.items()},
            "connecting_ranks": {str(k): v for k, v in self.connecting_ranks.items()},
            "sum_quasi_isomorphic": self.sum_quasi_isomorphic,
            "passed": self.passed,
        }


@dataclass
class MayerVietorisReport:
    ordinary: ExactnessReport
    intersection: ExactnessReport | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ordinary.passed and (self.intersection is None or self.intersection.passed)

    def to_dict(self) -> dict:
        out = {"check": "mayer-vietoris", "ordinary": self.ordinary.to_dict(), "notes": self.notes,
               "passed": self.passed}
        if self.intersection is not None:
            out["intersection"] = self.intersection.to_dict()
        return out


def _homology_map_rank(P: IntegerChainComplex, Q: IntegerChainComplex, phi: np.ndarray, d: int, ch: int) -> int:
    """Rank over the field of the map induced on ``H_d`` by the chain map ``phi``."""
    Z = field_nullspace(P.boundary(d), ch)
    images = [list(phi.dot(np.array(z, dtype=object))) for z in Z]
    B = Q.boundary(d + 1)
    cols = [list(B[:, j]) for j in range(B.shape[1])]
    if not images:
        return 0
    return _span_rank(images + cols, ch) - _span_rank(cols, ch)


def _span_rank(vectors, ch: int) -> int:
    if not vectors:
        return 0
    return field_rank(np.array(vectors, dtype=object), ch)


def _connecting_rank(A, M, S, i_map, j_map, d: int, ch: int) -> int:
    """Rank of ``δ: H_d(S) -> H_{d-1}(A)`` built by lifting cycles through ``j`` and ``i``."""
    if d == 0:
        return 0
    Z = field_nullspace(S.boundary(d), ch)
    deltas = []
    for z in Z:
        y = field_solve(j_map[d], z, ch)
        dy = M.boundary(d).dot(np.array(y, dtype=object))
        a = field_solve(i_map[d - 1], list(dy), ch)
        deltas.append(a)
    B = A.boundary(d)
    cols = [list(B[:, j]) for j in range(B.shape[1])]
    if not deltas:
        return 0
    return _span_rank(deltas + cols, ch) - _span_rank(cols, ch)


def _field_dims(C: IntegerChainComplex, d: int, ch: int) -> int:
    return C.rank(d) - field_rank(C.boundary(d), ch) - field_rank(C.boundary(d + 1), ch)


def _analyse(kind: str, X: SimplicialComplex, lat_A: Lattices, lat_U: Lattices, lat_V: Lattices,
             ambient: Lattices) -> ExactnessReport:
    lat_S = _sum(lat_U, lat_V)
    A = _chain_complex(lat_A, X)
    U = _chain_complex(lat_U, X)
    V = _chain_complex(lat_V, X)
    S = _chain_complex(lat_S, X)
    W = _chain_complex(ambient, X)
    top = X.dim
    M = IntegerChainComplex(
        tuple(U.rank(d) + V.rank(d) for d in range(top + 1)),
        tuple(_block_diag(U.boundary(d), V.boundary(d)) for d in range(top + 1)))
    i_map, j_map = [], []
    short_exact = True
    for d in range(top + 1):
        iu = _inclusion(lat_A, lat_U, d)
        iv = _inclusion(lat_A, lat_V, d)
        i_d = np.concatenate([iu, _neg(iv)], axis=0)
        j_d = _hstack(_inclusion(lat_U, lat_S, d), _inclusion(lat_V, lat_S, d))
        i_map.append(i_d)
        j_map.append(j_d)
        fi = invariant_factors(i_d)
        fj = invariant_factors(j_d)
        composite_zero = not np.any(j_d.dot(i_d)) if i_d.size and j_d.size else True
        short_exact &= (
            len(fi) == A.rank(d) and all(f == 1 for f in fi)
            and len(fj) == S.rank(d) and all(f == 1 for f in fj)
            and composite_zero
            and M.rank(d) == A.rank(d) + S.rank(d)
        )
    exact: dict[int, list[bool]] = {}
    deltas: dict[int, list[int]] = {}
    for ch in FIELDS:
        rk_i = [_homology_map_rank(A, M, i_map[d], d, ch) for d in range(top + 1)]
        rk_j = [_homology_map_rank(M, S, j_map[d], d, ch) for d in range(top + 1)]
        rk_delta = [_connecting_rank(A, M, S, i_map, j_map, d, ch) if d <= top else 0
                    for d in range(top + 2)]
        flags = []
        for d in range(top + 1):
            hA, hM, hS = (_field_dims(C, d, ch) for C in (A, M, S))
            flags.append(rk_delta[d + 1] == hA - rk_i[d])   # exact at H_d(U∩V)
            flags.append(rk_i[d] == hM - rk_j[d])           # exact at H_d(U)⊕H_d(V)
            flags.append(rk_j[d] == hS - rk_delta[d])       # exact at H_d(U+V)
        exact[ch] = flags
        deltas[ch] = rk_delta
    quasi = _inclusion_is_quasi_iso(S, W, lat_S, ambient, top)
    summaries = {"intersection": homology(A), "U": homology(U), "V": homology(V), "sum": homology(S),
                 "X": homology(W)}
    return ExactnessReport(kind, summaries, short_exact, exact, deltas, quasi)


def _inclusion_is_quasi_iso(S: IntegerChainComplex, W: IntegerChainComplex, lat_S: Lattices,
                            lat_W: Lattices, top: int) -> bool:
    """The inclusion ``S ⊆ W`` is a quasi-isomorphism iff its mapping cone is acyclic over Z."""
    inc = [_inclusion(lat_S, lat_W, d) for d in range(top + 1)]
    ranks = [(S.rank(d - 1) if d else 0) + W.rank(d) for d in range(top + 2)]
    bds = []
    for d in range(top + 2):
        rows = ranks[d - 1] if d else 0
        B = np.zeros((rows, ranks[d]), dtype=object)
        if d:
            s_prev = S.rank(d - 1)
            s_prev2 = S.rank(d - 2) if d >= 2 else 0
            if d >= 2:
                B[:s_prev2, :s_prev] = _neg(S.boundary(d - 1))
            B[s_prev2:, :s_prev] = inc[d - 1]
            if d <= top:
                B[s_prev2:, s_prev:] = W.boundary(d)
        bds.append(B)
    cone = IntegerChainComplex(tuple(ranks), tuple(bds))
    return homology(cone).is_zero()


def mayer_vietoris_check(X: StratifiedComplex, U: SimplicialComplex, V: SimplicialComplex,
                         p: Perversity | None = None) -> MayerVietorisReport:
    """Mayer–Vietoris report for the cover ``X = U ∪ V``.

    With a perversity, the same analysis is repeated for intersection chains
    of ``U``, ``V`` and ``U ∩ V`` carrying the induced perversities.
    """
    K = X.complex
    U = SimplicialComplex(K.vertex_count, U.simplices)
    V = SimplicialComplex(K.vertex_count, V.simplices)
    if not (U.is_subcomplex_of(K) and V.is_subcomplex_of(K)):
        raise ComplexError("cover pieces must be subcomplexes")
    if set(U.simplices) | set(V.simplices) != set(K.simplices):
        raise ComplexError("U and V do not cover X")
    A = U.intersection(V)
    ordinary = _analyse("ordinary", K, _ordinary(A, K), _ordinary(U, K), _ordinary(V, K), _ordinary(K, K))
    report = MayerVietorisReport(ordinary)
    if p is not None:
        lats = []
        for name, piece in (("U∩V", A), ("U", U), ("V", V)):
            Y, table = restrict(X, piece)
            report.notes.extend(f"{name}: {w}" for w in Y.warnings)
            lats.append(_intersection(Y, K, induced(p, Y, table)))
        report.intersection = _analyse("intersection", K, *lats, _intersection(X, K, p))
    return report
