"""Filtrations by subcomplexes, their strata, and stratified constructors.

A filtration assigns each simplex the least ``i`` with the simplex in
``X^i``. Strata are the face-connected components of each level set,
identified as ``s<level>.<index>`` with indices ordered by smallest member.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple

from .complex import (
    DoubleCylinder,
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    cone,
    cylinder_cells,
    double_mapping_cylinder,
    faces,
    mapping_cylinder,
    ordered_product,
    product_vertices,
)
from .errors import ComplexError, FiltrationError


class StratificationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Filtration:
    formal_dim: int
    level: Mapping[Simplex, int]

    def __post_init__(self):
        if self.formal_dim < 0:
            raise FiltrationError("formal dimension must be non-negative")
        object.__setattr__(self, "level", dict(self.level))

    def check(self, K: SimplicialComplex) -> None:
        """Raise :class:`FiltrationError` unless every ``X^i`` is a subcomplex of ``K``."""
        for s in K.simplices:
            if s not in self.level:
                raise FiltrationError(f"simplex {list(s)} has no level", witness=(s, s))
            lv = self.level[s]
            if not 0 <= lv <= self.formal_dim:
                raise FiltrationError(
                    f"simplex {list(s)} has level {lv} outside [0, {self.formal_dim}]", witness=(s, s))
            for i in range(len(s)) if len(s) > 1 else ():
                f = s[:i] + s[i + 1:]
                if self.level[f] > lv:
                    raise FiltrationError(
                        f"face {list(f)} has level {self.level[f]} above level {lv} of {list(s)}",
                        witness=(f, s))
        extra = set(self.level) - set(K.simplices)
        if extra:
            raise FiltrationError(f"level given for {list(min(extra))}, which is not a simplex")


@dataclass(frozen=True)
class Stratum:
    id: str
    level: int
    simplices: tuple[Simplex, ...]
    codim: int
    regular: bool

    @property
    def formal_dim(self) -> int:
        return self.level

    @cached_property
    def closure(self) -> frozenset[Simplex]:
        return frozenset(f for s in self.simplices for f in faces(s))


@dataclass(frozen=True, eq=False)
class StratifiedComplex:
    complex: SimplicialComplex
    filtration: Filtration
    strata: tuple[Stratum, ...]
    below: Mapping[str, frozenset[str]]
    """``below[t]`` is the set of strata ``s != t`` with ``s ⪯ t``."""

    @property
    def formal_dim(self) -> int:
        return self.filtration.formal_dim

    def level(self, simplex: Simplex) -> int:
        return self.filtration.level[simplex]

    @cached_property
    def _by_id(self) -> dict[str, Stratum]:
        return {s.id: s for s in self.strata}

    @cached_property
    def _of_simplex(self) -> dict[Simplex, Stratum]:
        return {x: s for s in self.strata for x in s.simplices}

    def stratum(self, sid: str) -> Stratum:
        return self._by_id[sid]

    def stratum_of(self, simplex: Simplex) -> Stratum:
        return self._of_simplex[tuple(simplex)]

    @property
    def singular_strata(self) -> tuple[Stratum, ...]:
        return tuple(s for s in self.strata if not s.regular)

    @property
    def regular_strata(self) -> tuple[Stratum, ...]:
        return tuple(s for s in self.strata if s.regular)

    def precedes(self, a: str, b: str) -> bool:
        """``a ⪯ b``: stratum ``a`` lies in the closure of stratum ``b``."""
        return a == b or a in self.below[b]

    def regular_subcomplex(self) -> SimplicialComplex:
        """Simplices with no face in a singular stratum."""
        singular = {x for s in self.singular_strata for x in s.simplices}
        keep = [s for s in self.complex.simplices if not any(f in singular for f in faces(s))]
        return SimplicialComplex(self.complex.vertex_count, tuple(keep))

    @property
    def warnings(self) -> list[str]:
        return [f"maximal stratum {s.id} has codimension {s.codim}; perversities must vanish there"
                for s in self.regular_strata if s.codim > 0]

    def __eq__(self, other):
        if not isinstance(other, StratifiedComplex):
            return NotImplemented
        return (self.complex == other.complex and self.formal_dim == other.formal_dim
                and self.filtration.level == other.filtration.level)

    __hash__ = None


def compute_strata(K: SimplicialComplex, F: Filtration) -> StratifiedComplex:
    """Strata of ``F`` on ``K`` and the closure order between them."""
    F.check(K)
    parent = {s: s for s in K.simplices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in K.simplices:
        lv = F.level[s]
        if len(s) > 1:
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                if F.level[f] == lv:
                    ra, rb = find(s), find(f)
                    if ra != rb:
                        parent[ra] = rb
    groups: dict[Simplex, list[Simplex]] = {}
    for s in K.simplices:
        groups.setdefault(find(s), []).append(s)
    by_level: dict[int, list[list[Simplex]]] = {}
    for members in groups.values():
        by_level.setdefault(F.level[members[0]], []).append(sorted(members))
    raw = []
    for lv in sorted(by_level):
        for idx, members in enumerate(sorted(by_level[lv], key=lambda m: m[0])):
            raw.append((f"s{lv}.{idx}", lv, tuple(sorted(members, key=lambda x: (len(x), x)))))
    closures = {sid: frozenset(f for x in members for f in faces(x)) for sid, _, members in raw}
    below = {sid: frozenset(a for a, _, am in raw if a != sid and set(am) <= closures[sid])
             for sid, _, _ in raw}
    above = {a: {b for b in below if a in below[b]} for a, _, _ in raw}
    strata = tuple(Stratum(sid, lv, members, F.formal_dim - lv, not above[sid])
                   for sid, lv, members in raw)
    return StratifiedComplex(K, F, strata, below)


def stratify(K: SimplicialComplex, levels: Mapping[Simplex, int], formal_dim: int) -> StratifiedComplex:
    return compute_strata(K, Filtration(formal_dim, levels))


def unstratified(K: SimplicialComplex, formal_dim: int | None = None) -> StratifiedComplex:
    """One-level filtration: every simplex at the top level."""
    n = K.dim if formal_dim is None else formal_dim
    return stratify(K, {s: n for s in K.simplices}, max(n, 0))


class FrontierVerdict(NamedTuple):
    passed: bool
    pair: tuple[str, str] | None = None
    meets: Simplex | None = None
    escapes: Simplex | None = None

    def to_dict(self) -> dict:
        out = {"passed": self.passed}
        if not self.passed:
            out["pair"] = list(self.pair)
            out["meets"] = list(self.meets)
            out["escapes"] = list(self.escapes)
        return out


def check_frontier(X: StratifiedComplex) -> FrontierVerdict:
    """Frontier condition: a stratum meeting the closure of another lies inside it.

    On failure the verdict names the pair ``(S_i, S_j)``, a simplex of
    ``S_i`` inside the closure of ``S_j`` and one outside it.
    """
    for si in X.strata:
        for sj in X.strata:
            if si is sj:
                continue
            inside = [x for x in si.simplices if x in sj.closure]
            if inside and len(inside) < len(si.simplices):
                outside = next(x for x in si.simplices if x not in sj.closure)
                return FrontierVerdict(False, (si.id, sj.id), inside[0], outside)
    return FrontierVerdict(True)


def stratify_cone(X: StratifiedComplex) -> StratifiedComplex:
    """Cone with the apex at level 0 and every other simplex one level up."""
    K, a = cone(X.complex)
    levels = {(a,): 0}
    for s in X.complex.simplices:
        lv = X.level(s) + 1
        levels[s] = lv
        levels[s + (a,)] = lv
    return stratify(K, levels, X.formal_dim + 1)


def _prism_levels(f: SimplicialMap, source: StratifiedComplex, x_offset: int, y_offset: int,
                  levels: dict[Simplex, int]) -> None:
    for cell, tau in cylinder_cells(f, x_offset, y_offset):
        lv = source.level(tau) + 1
        if cell not in levels or lv < levels[cell]:
            levels[cell] = lv


def _check_target(source: StratifiedComplex, target: StratifiedComplex) -> None:
    if target.formal_dim > source.formal_dim + 1:
        raise FiltrationError(
            f"codomain formal dimension {target.formal_dim} exceeds cylinder dimension "
            f"{source.formal_dim + 1}")


def stratify_cylinder(f: SimplicialMap, source: StratifiedComplex,
                      target: StratifiedComplex) -> StratifiedComplex:
    """Mapping cylinder with strata ``S x [0,1[`` over source strata and the target's strata.

    Formal dimension is one more than the source's. A prism cell over the
    source simplex ``tau`` sits at ``level(tau) + 1``.
    """
    if f.domain != source.complex or f.codomain != target.complex:
        raise ComplexError("stratifications do not match the map")
    _check_target(source, target)
    cyl = mapping_cylinder(f)
    nx = f.domain.vertex_count
    levels: dict[Simplex, int] = {tuple(v + nx for v in s): target.level(s) for s in target.complex}
    _prism_levels(f, source, 0, nx, levels)
    return stratify(cyl.complex, levels, source.formal_dim + 1)


def stratify_double_cylinder(f: SimplicialMap, g: SimplicialMap, source: StratifiedComplex,
                             left: StratifiedComplex,
                             right: StratifiedComplex) -> tuple[StratifiedComplex, DoubleCylinder]:
    if f.domain != source.complex or g.domain != source.complex:
        raise ComplexError("stratification does not match the common domain")
    if f.codomain != left.complex or g.codomain != right.complex:
        raise ComplexError("stratifications do not match the codomains")
    _check_target(source, left)
    _check_target(source, right)
    dc = double_mapping_cylinder(f, g)
    nl, n1 = source.complex.vertex_count, left.complex.vertex_count
    levels: dict[Simplex, int] = {}
    for s in left.complex:
        levels[tuple(v + nl for v in s)] = left.level(s)
    for s in right.complex:
        levels[tuple(v + nl + n1 for v in s)] = right.level(s)
    _prism_levels(f, source, 0, nl, levels)
    _prism_levels(g, source, 0, nl + n1, levels)
    return stratify(dc.complex, levels, source.formal_dim + 1), dc


def stratify_product(X: StratifiedComplex, Y: StratifiedComplex) -> StratifiedComplex:
    """Product filtration: a cell over ``sigma x tau`` sits at ``level(sigma) + level(tau)``."""
    K = ordered_product(X.complex, Y.complex)
    table = product_vertices(X.complex, Y.complex)
    levels = {}
    for s in K.simplices:
        a = tuple(sorted({table[v][0] for v in s}))
        b = tuple(sorted({table[v][1] for v in s}))
        levels[s] = X.level(a) + Y.level(b)
    return stratify(K, levels, X.formal_dim + Y.formal_dim)


def restrict(X: StratifiedComplex, L: SimplicialComplex) -> tuple[StratifiedComplex, dict[str, str]]:
    """Induced filtration on the subcomplex ``L`` (same vertex indices).

    Returns the restricted space and a table sending each of its strata to
    the stratum of ``X`` containing it.
    """
    if not L.is_subcomplex_of(X.complex):
        raise ComplexError("restriction target is not a subcomplex")
    sub = SimplicialComplex(X.complex.vertex_count, L.simplices)
    Y = stratify(sub, {s: X.level(s) for s in sub}, X.formal_dim)
    table = {s.id: X.stratum_of(s.simplices[0]).id for s in Y.strata}
    return Y, table


def subdivide(X: StratifiedComplex) -> tuple[StratifiedComplex, dict[Simplex, Simplex]]:
    """Barycentric subdivision with each new simplex at the level of its carrier."""
    sub, carriers = barycentric_subdivision(X.complex)
    levels = {s: X.level(c) for s, c in carriers.items()}
    return stratify(sub, levels, X.formal_dim), carriers


def warn_if_irregular(X: StratifiedComplex) -> None:
    for message in X.warnings:
        warnings.warn(message, StratificationWarning, stacklevel=2)
