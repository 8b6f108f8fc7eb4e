"""Finite abstract simplicial complexes and the constructors built on them.

Simplices are strictly increasing tuples of vertex indices. The global
vertex order is the integer order; it fixes boundary signs and the
staircase triangulations used for products and mapping cylinders.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import ComplexError

Simplex = tuple[int, ...]


def faces(simplex: Simplex, proper: bool = False) -> list[Simplex]:
    """All nonempty faces of ``simplex``, ordered by dimension then lexicographically."""
    top = len(simplex) - 1 if proper else len(simplex)
    out = []
    for k in range(1, top + 1):
        out.extend(combinations(simplex, k))
    return out


def _sort_key(simplex: Simplex):
    return (len(simplex), simplex)


@dataclass(frozen=True)
class SimplicialComplex:
    """A face-closed set of simplices on the vertices ``0 .. vertex_count - 1``.

    ``simplices`` is kept sorted by dimension, then lexicographically; that
    order indexes the rows and columns of every boundary matrix.
    """

    vertex_count: int
    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ComplexError("vertex_count must be non-negative")
        ordered = tuple(sorted(set(self.simplices), key=_sort_key))
        if ordered != self.simplices:
            object.__setattr__(self, "simplices", ordered)
        present = set(ordered)
        for s in ordered:
            if not s:
                raise ComplexError("empty simplex")
            if any(b <= a for a, b in zip(s, s[1:])):
                raise ComplexError(f"simplex {list(s)} is not strictly increasing")
            if s[0] < 0 or s[-1] >= self.vertex_count:
                raise ComplexError(f"simplex {list(s)} has a vertex outside [0, {self.vertex_count})")
            if len(s) > 1:
                for i in range(len(s)):
                    f = s[:i] + s[i + 1:]
                    if f not in present:
                        raise ComplexError(f"face {list(f)} of {list(s)} is missing")

    @cached_property
    def _by_dim(self) -> tuple[tuple[Simplex, ...], ...]:
        dims: list[list[Simplex]] = [[] for _ in range(self.dim + 1)]
        for s in self.simplices:
            dims[len(s) - 1].append(s)
        return tuple(tuple(d) for d in dims)

    @cached_property
    def _index(self) -> dict[Simplex, int]:
        return {s: i for group in self._by_dim for i, s in enumerate(group)}

    @cached_property
    def _set(self) -> frozenset[Simplex]:
        return frozenset(self.simplices)

    @property
    def dim(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices_of_dim(0))

    def simplices_of_dim(self, d: int) -> tuple[Simplex, ...]:
        if 0 <= d <= self.dim:
            return self._by_dim[d]
        return ()

    def count(self, d: int) -> int:
        return len(self.simplices_of_dim(d))

    def index(self, simplex: Simplex) -> int:
        """Position of ``simplex`` among the simplices of its dimension."""
        return self._index[simplex]

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self._set

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    @cached_property
    def maximal_simplices(self) -> tuple[Simplex, ...]:
        covered: set[Simplex] = set()
        for s in self.simplices:
            if len(s) > 1:
                covered.update(s[:i] + s[i + 1:] for i in range(len(s)))
        return tuple(sorted((s for s in self.simplices if s not in covered)))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.count(d) for d in range(self.dim + 1))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._set <= other._set

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(max(self.vertex_count, other.vertex_count),
                                 tuple(self._set | other._set))

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(max(self.vertex_count, other.vertex_count),
                                 tuple(self._set & other._set))

    def star(self, vertex: int) -> "SimplicialComplex":
        """Closed star of ``vertex``."""
        tops = [s for s in self.simplices if vertex in s]
        return closure(self.vertex_count, tops)

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return False
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.simplices_of_dim(1):
            parent[find(a)] = find(b)
        return len({find(v) for v in verts}) == 1


def closure(vertex_count: int, simplices: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of already-validated, sorted simplices."""
    out: set[Simplex] = set()
    for s in simplices:
        s = tuple(s)
        if s in out:
            continue
        out.update(faces(s))
    return SimplicialComplex(vertex_count, tuple(out))


def build_complex(vertex_count: int, maximal_simplices: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of ``maximal_simplices`` on ``vertex_count`` vertices.

    >>> len(build_complex(3, [[0, 1, 2]]))
    7
    """
    if vertex_count < 0:
        raise ComplexError("vertex_count must be non-negative")
    tops = []
    for raw in maximal_simplices:
        s = tuple(int(v) for v in raw)
        if not s:
            raise ComplexError("empty simplex")
        if len(set(s)) != len(s):
            raise ComplexError(f"duplicate vertex in simplex {list(raw)}")
        for v in s:
            if not 0 <= v < vertex_count:
                raise ComplexError(f"vertex {v} out of range [0, {vertex_count})")
        tops.append(tuple(sorted(s)))
    return closure(vertex_count, tops)


EMPTY = SimplicialComplex(0, ())


def boundary_matrix(K: SimplicialComplex, d: int) -> np.ndarray:
    """Simplicial boundary ``C_d -> C_{d-1}`` as an object-dtype integer matrix.

    Rows are the (d-1)-simplices and columns the d-simplices, both in the
    complex's order; omitting the i-th vertex contributes ``(-1)**i``.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    cols = K.simplices_of_dim(d)
    rows = K.simplices_of_dim(d - 1) if d > 0 else ()
    M = np.zeros((len(rows), len(cols)), dtype=object)
    if d == 0:
        return M
    for j, s in enumerate(cols):
        for i in range(len(s)):
            M[K.index(s[:i] + s[i + 1:]), j] = (-1) ** i
    return M


def combinatorial_link(K: SimplicialComplex, v: int) -> tuple[SimplicialComplex, tuple[int, ...]]:
    """Link of vertex ``v``, densely re-indexed.

    Returns the link and a table whose entry ``i`` is the original vertex
    carried by new vertex ``i``.
    """
    if (v,) not in K:
        raise ComplexError(f"vertex {v} is not in the complex")
    link = [tuple(u for u in s if u != v) for s in K.simplices if v in s and len(s) > 1]
    table = tuple(sorted({u for s in link for u in s}))
    new = {u: i for i, u in enumerate(table)}
    return SimplicialComplex(len(table), tuple(tuple(new[u] for u in s) for s in link)), table


def cone(K: SimplicialComplex) -> tuple[SimplicialComplex, int]:
    """Cone on ``K`` with a new apex vertex ``K.vertex_count``; base indices are unchanged."""
    a = K.vertex_count
    out = list(K.simplices) + [s + (a,) for s in K.simplices] + [(a,)]
    return SimplicialComplex(a + 1, tuple(out)), a


def product_vertices(A: SimplicialComplex, B: SimplicialComplex) -> tuple[tuple[int, int], ...]:
    """Vertex table of :func:`ordered_product`: pairs in lexicographic order."""
    return tuple((a, b) for a in A.vertices for b in B.vertices)


def _staircases(sigma: Simplex, tau: Simplex):
    """Maximal chains in ``sigma x tau`` under the componentwise order."""
    p, q = len(sigma) - 1, len(tau) - 1
    for rights in combinations(range(p + q), q):
        i = j = 0
        chain = [(sigma[0], tau[0])]
        rset = set(rights)
        for step in range(p + q):
            if step in rset:
                j += 1
            else:
                i += 1
            chain.append((sigma[i], tau[j]))
        yield chain


def ordered_product(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of ``|A| x |B|``.

    Vertex ``k`` of the result is ``product_vertices(A, B)[k]``.
    """
    table = product_vertices(A, B)
    index = {pair: k for k, pair in enumerate(table)}
    tops = []
    for sigma in A.maximal_simplices:
        for tau in B.maximal_simplices:
            for chain in _staircases(sigma, tau):
                tops.append(tuple(sorted(index[pair] for pair in chain)))
    return closure(len(table), tops)


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex map ``domain -> codomain`` sending simplices onto simplices (collapses allowed)."""

    domain: SimplicialComplex
    codomain: SimplicialComplex
    vertex_images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.vertex_images)
        object.__setattr__(self, "vertex_images", images)
        if len(images) != self.domain.vertex_count:
            raise ComplexError(
                f"map gives {len(images)} vertex images for {self.domain.vertex_count} domain vertices")
        for s in self.domain.simplices:
            if self.image(s) not in self.codomain:
                raise ComplexError(f"image of simplex {list(s)} is not a simplex of the codomain")

    def image(self, simplex: Sequence[int]) -> Simplex:
        return tuple(sorted({self.vertex_images[v] for v in simplex}))

    def __call__(self, simplex):
        return self.image(simplex)


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(K, K, tuple(range(K.vertex_count)))


def collapse_map(K: SimplicialComplex) -> SimplicialMap:
    """The constant map from ``K`` onto a single point."""
    return SimplicialMap(K, point(), (0,) * K.vertex_count)


def point() -> SimplicialComplex:
    return SimplicialComplex(1, ((0,),))


class Cylinder(NamedTuple):
    complex: SimplicialComplex
    domain_embedding: tuple[int, ...]
    codomain_embedding: tuple[int, ...]


class DoubleCylinder(NamedTuple):
    complex: SimplicialComplex
    domain_embedding: tuple[int, ...]
    left_embedding: tuple[int, ...]
    right_embedding: tuple[int, ...]


def cylinder_cells(f: SimplicialMap, x_offset: int, y_offset: int):
    """Yield ``(cell, projection)`` for the prism part of the mapping cylinder of ``f``.

    Each cell is the image of a face of the staircase prism over a domain
    simplex; ``projection`` is the domain simplex the open cell lies over.
    Every prism cell of the cylinder is produced, and a cell may be produced
    several times with different projections when ``f`` collapses vertices.
    """
    img = f.vertex_images
    for tau in f.domain.simplices:
        for i in range(len(tau)):
            xs = tuple(v + x_offset for v in tau[:i + 1])
            for tail in (tau[i:], tau[i + 1:]):
                ys = sorted({img[v] + y_offset for v in tail})
                yield tuple(sorted(xs + tuple(ys))), tau


def mapping_cylinder(f: SimplicialMap) -> Cylinder:
    """Simplicial mapping cylinder of ``f``.

    Domain vertices come first (the copy ``domain x {0}``), then the
    codomain, so the domain embedding is the identity on indices.
    """
    nx = f.domain.vertex_count
    ny = f.codomain.vertex_count
    cells = {c for c, _ in cylinder_cells(f, 0, nx)}
    cells.update(tuple(v + nx for v in s) for s in f.codomain.simplices)
    K = SimplicialComplex(nx + ny, tuple(cells))
    return Cylinder(K, tuple(range(nx)), tuple(range(nx, nx + ny)))


def double_mapping_cylinder(f: SimplicialMap, g: SimplicialMap) -> DoubleCylinder:
    """Two mapping cylinders glued along their common domain copy.

    Vertices are laid out as domain, then ``f.codomain``, then ``g.codomain``.
    """
    if f.domain != g.domain:
        raise ComplexError("double mapping cylinder needs maps with the same domain")
    nl = f.domain.vertex_count
    n1 = f.codomain.vertex_count
    n2 = g.codomain.vertex_count
    cells = {c for c, _ in cylinder_cells(f, 0, nl)}
    cells.update(c for c, _ in cylinder_cells(g, 0, nl + n1))
    cells.update(tuple(v + nl for v in s) for s in f.codomain.simplices)
    cells.update(tuple(v + nl + n1 for v in s) for s in g.codomain.simplices)
    K = SimplicialComplex(nl + n1 + n2, tuple(cells))
    return DoubleCylinder(K, tuple(range(nl)), tuple(range(nl, nl + n1)),
                          tuple(range(nl + n1, nl + n1 + n2)))


def suspension(K: SimplicialComplex) -> DoubleCylinder:
    """Unreduced suspension: the double mapping cylinder of two collapses."""
    return double_mapping_cylinder(collapse_map(K), collapse_map(K))


def barycentric_subdivision(K: SimplicialComplex) -> tuple[SimplicialComplex, dict[Simplex, Simplex]]:
    """First barycentric subdivision.

    New vertex ``i`` is the barycenter of ``K.simplices[i]``. The returned
    carrier map sends each new simplex to the smallest original simplex
    containing it, which is the largest element of its flag.
    """
    pos = {s: i for i, s in enumerate(K.simplices)}
    flags = []
    for top in K.maximal_simplices:
        _saturated_flags(top, [pos[top]], pos, flags)
    sub = closure(len(K.simplices), flags)
    # Within a flag the largest simplex has the largest index.
    carriers = {c: K.simplices[c[-1]] for c in sub.simplices}
    return sub, carriers


def _saturated_flags(last: Simplex, flag: list[int], pos: Mapping[Simplex, int], out: list) -> None:
    if len(last) == 1:
        out.append(tuple(sorted(flag)))
        return
    for j in range(len(last)):
        f = last[:j] + last[j + 1:]
        _saturated_flags(f, flag + [pos[f]], pos, out)


def induced_subcomplex(K: SimplicialComplex, simplices: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of ``simplices``, checked to lie in ``K``."""
    sub = build_complex(K.vertex_count, simplices)
    if not sub.is_subcomplex_of(K):
        raise ComplexError("generators are not simplices of the ambient complex")
    return sub
