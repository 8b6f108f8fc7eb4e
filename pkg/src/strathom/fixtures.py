"""Small standard triangulations used as links and test spaces."""
from __future__ import annotations

from itertools import combinations

from .complex import SimplicialComplex, SimplicialMap, build_complex


def simplex(k: int) -> SimplicialComplex:
    return build_complex(k + 1, [range(k + 1)])


def boundary_of_simplex(k: int) -> SimplicialComplex:
    """The (k-1)-sphere as the boundary of the k-simplex."""
    return build_complex(k + 1, combinations(range(k + 1), k))


def circle() -> SimplicialComplex:
    return boundary_of_simplex(2)


def sphere() -> SimplicialComplex:
    return boundary_of_simplex(3)


def torus7() -> SimplicialComplex:
    """Möbius' 7-vertex torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return build_complex(7, tris)


def projective_plane6() -> SimplicialComplex:
    """The 6-vertex real projective plane (hemi-icosahedron)."""
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
            (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    return build_complex(6, tris)


def hexagon() -> SimplicialComplex:
    return build_complex(6, [(i, (i + 1) % 6) for i in range(6)])


def hexagon_double_cover() -> SimplicialMap:
    """The connected double cover of the triangle boundary by the hexagon."""
    return SimplicialMap(hexagon(), circle(), tuple(i % 3 for i in range(6)))
