"""Allowable and full simplexes, the Gajer subcomplex and intersection chains.

Singular simplices are modelled by simplices of the triangulation, so the
preimage of a stratum in a simplex is a union of open faces and its
polyhedral dimension is the largest dimension of such a face.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .complex import Simplex, SimplicialComplex, faces
from .homology import IntegerChainComplex
from .perversity import Perversity, PValue, format_value
from .smith import hermite_rows, integer_kernel, solve_in_lattice
from .stratification import StratifiedComplex, Stratum


def preimage_dimension(simplex: Simplex, stratum: Stratum) -> PValue:
    """Largest dimension of a face of ``simplex`` lying in ``stratum``; ``-inf`` if none."""
    members = set(stratum.simplices)
    dims = [len(f) - 1 for f in faces(tuple(simplex)) if f in members]
    return max(dims) if dims else -math.inf


class Violation(NamedTuple):
    stratum: str
    preimage_dim: PValue
    bound: PValue


def violations(simplex: Simplex, X: StratifiedComplex, p: Perversity) -> list[Violation]:
    """Singular strata for which ``dim σ⁻¹S <= dim σ - codim S + p(S)`` fails."""
    simplex = tuple(simplex)
    dim = len(simplex) - 1
    best: dict[str, int] = {}
    for f in faces(simplex):
        s = X.stratum_of(f)
        if not s.regular:
            best[s.id] = max(best.get(s.id, -1), len(f) - 1)
    out = []
    for sid in sorted(best):
        s = X.stratum(sid)
        bound = dim - s.codim + p[sid]
        if best[sid] > bound:
            out.append(Violation(sid, best[sid], bound))
    return out


def is_allowable(simplex: Simplex, X: StratifiedComplex, p: Perversity) -> bool:
    return not violations(simplex, X, p)


@dataclass(frozen=True)
class SimplexVerdict:
    allowable: bool
    full: bool
    violations: tuple[Violation, ...]
    first_failing_face: Simplex | None


@dataclass(frozen=True, eq=False)
class AllowabilityReport:
    verdicts: dict[Simplex, SimplexVerdict]

    def allowable(self) -> list[Simplex]:
        return [s for s, v in self.verdicts.items() if v.allowable]

    def full(self) -> list[Simplex]:
        return [s for s, v in self.verdicts.items() if v.full]

    def gap(self) -> list[Simplex]:
        """Allowable simplexes with a non-allowable face."""
        return [s for s, v in self.verdicts.items() if v.allowable and not v.full]

    def to_dict(self) -> dict:
        rows = []
        for s, v in self.verdicts.items():
            row = {"simplex": list(s), "allowable": v.allowable, "full": v.full}
            if v.violations:
                row["violations"] = [
                    {"stratum": x.stratum, "preimage_dim": format_value(x.preimage_dim),
                     "bound": format_value(x.bound)} for x in v.violations]
            if v.first_failing_face is not None:
                row["first_failing_face"] = list(v.first_failing_face)
            rows.append(row)
        return {"simplices": rows, "counts": {"simplices": len(rows), "allowable": len(self.allowable()),
                                              "full": len(self.full()), "gap": len(self.gap())}}


def full_simplexes(X: StratifiedComplex, p: Perversity) -> AllowabilityReport:
    """Allowability and fullness of every simplex.

    A simplex is full when it and all its faces are allowable; for an
    allowable simplex that is not full, the report names the first failing
    face in (dimension, lexicographic) order.
    """
    viol = {s: tuple(violations(s, X, p)) for s in X.complex.simplices}
    verdicts = {}
    for s in X.complex.simplices:
        failing = next((f for f in faces(s) if viol[f]), None)
        verdicts[s] = SimplexVerdict(
            allowable=not viol[s],
            full=failing is None,
            violations=viol[s],
            first_failing_face=failing if failing != s and not viol[s] else None,
        )
    return AllowabilityReport(verdicts)


def gajer_subcomplex(X: StratifiedComplex, p: Perversity) -> SimplicialComplex:
    """Subcomplex of full simplexes."""
    report = full_simplexes(X, p)
    return SimplicialComplex(X.complex.vertex_count, tuple(report.full()))


@dataclass(frozen=True, eq=False)
class IntersectionChainComplex(IntegerChainComplex):
    """Intersection chains with their embedding in the simplicial chains.

    ``basis[d]`` has one column per generator of ``I^p C_d``, written in the
    coordinates of all d-simplices; the columns are the canonical Hermite
    basis of a saturated sublattice.
    """

    basis: tuple[np.ndarray, ...] = ()
    allowable: tuple[tuple[int, ...], ...] = ()

    def generators(self, d: int) -> list[list[int]]:
        return [list(map(int, col)) for col in self.basis[d].T]


def intersection_chain_complex(X: StratifiedComplex, p: Perversity) -> IntersectionChainComplex:
    """``I^p C_d``: chains on allowable d-simplexes whose boundary is on allowable ones."""
    K = X.complex
    top = K.dim
    allow = [
        tuple(i for i, s in enumerate(K.simplices_of_dim(d)) if is_allowable(s, X, p))
        for d in range(top + 1)
    ]
    hnf: list[list[list[int]]] = []
    for d in range(top + 1):
        cols = allow[d]
        n_d = K.count(d)
        if d == 0:
            lattice = [[int(i == j) for j in range(len(cols))] for i in range(len(cols))]
        else:
            ok = set(allow[d - 1])
            bad_rows = [i for i in range(K.count(d - 1)) if i not in ok]
            M = np.zeros((len(bad_rows), len(cols)), dtype=object)
            where = {r: k for k, r in enumerate(bad_rows)}
            for k, j in enumerate(cols):
                s = K.simplices_of_dim(d)[j]
                for i in range(len(s)):
                    r = K.index(s[:i] + s[i + 1:])
                    if r in where:
                        M[where[r], k] = (-1) ** i
            lattice = integer_kernel(M)
        # Expand to coordinates on all d-simplices.
        full = []
        for vec in lattice:
            row = [0] * n_d
            for k, j in enumerate(cols):
                row[j] = vec[k]
            full.append(row)
        hnf.append(hermite_rows(full) if full else [])
    ranks = tuple(len(h) for h in hnf)
    boundaries = []
    for d in range(top + 1):
        B = np.zeros((ranks[d - 1] if d else 0, ranks[d]), dtype=object)
        if d:
            simplices = K.simplices_of_dim(d)
            n_lower = K.count(d - 1)
            for c, gen in enumerate(hnf[d]):
                image = [0] * n_lower
                for j, x in enumerate(gen):
                    if x:
                        s = simplices[j]
                        for i in range(len(s)):
                            image[K.index(s[:i] + s[i + 1:])] += (-1) ** i * x
                coords = solve_in_lattice(hnf[d - 1], image)
                for r, y in enumerate(coords):
                    B[r, c] = y
        boundaries.append(B)
    basis = []
    for d in range(top + 1):
        E = np.zeros((K.count(d), ranks[d]), dtype=object)
        for c, gen in enumerate(hnf[d]):
            for j, x in enumerate(gen):
                E[j, c] = x
        basis.append(E)
    return IntersectionChainComplex(ranks, tuple(boundaries), tuple(basis), tuple(allow))


def contains(big: IntersectionChainComplex, small: IntersectionChainComplex, d: int) -> bool:
    """Whether ``small``'s chain group in degree ``d`` is a subgroup of ``big``'s."""
    lattice = [list(map(int, col)) for col in big.basis[d].T]
    for gen in small.generators(d):
        try:
            solve_in_lattice(lattice, gen)
        except ValueError:
            return False
    return True

