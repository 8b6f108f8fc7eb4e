"""Regenerate the JSON fixtures in tests/fixtures.

Run ``python tests/make_fixtures.py``; ``test_io`` checks the shipped files
match what this script produces.
"""
from __future__ import annotations

from pathlib import Path

from strathom import fixtures
from strathom.complex import build_complex, closure, collapse_map, point
from strathom.io import complex_document, perversity_document, serialize
from strathom.perversity import zero_perversity
from strathom.stratification import stratify, stratify_cone, stratify_double_cylinder, unstratified

HERE = Path(__file__).parent / "fixtures"


def _levels(K, low, low_level, n):
    low = set(low.simplices)
    return stratify(K, {s: low_level if s in low else n for s in K.simplices}, n)


def _suspension():
    circle = unstratified(fixtures.circle())
    pt = unstratified(point(), 0)
    c = collapse_map(circle.complex)
    X, _ = stratify_double_cylinder(c, c, circle, pt, pt)
    return X


def documents() -> dict[str, str]:
    out = {}
    for name, K in [("circle", fixtures.circle()), ("sphere", fixtures.sphere()),
                    ("torus7", fixtures.torus7()), ("rp2", fixtures.projective_plane6())]:
        out[name] = serialize(complex_document(unstratified(K)))
    cone_circle = stratify_cone(unstratified(fixtures.circle()))
    out["cone-circle"] = serialize(complex_document(cone_circle))
    out["p0"] = serialize(perversity_document(zero_perversity(cone_circle)))

    path = build_complex(3, [[0, 1], [1, 2]])
    out["frontier-good"] = serialize(complex_document(_levels(path, closure(3, [[1]]), 0, 1)))
    whisker = build_complex(4, [[0, 1, 2], [1, 3]])
    out["bad-filtration"] = serialize(complex_document(
        _levels(whisker, closure(4, [[0, 1], [1, 3]]), 1, 2)))

    sphere = fixtures.sphere()
    for name, tops in [("hemisphere-u", [[0, 1, 2], [0, 1, 3]]), ("hemisphere-v", [[0, 2, 3], [1, 2, 3]])]:
        out[name] = serialize(complex_document(unstratified(build_complex(4, tops), sphere.dim)))

    susp = _suspension()
    out["suspension"] = serialize(complex_document(susp))
    out["suspension-p0"] = serialize(perversity_document(zero_perversity(susp)))
    K = susp.complex
    for name, apex in [("suspension-u", 3), ("suspension-v", 4)]:
        piece = closure(K.vertex_count, [s for s in K.maximal_simplices if apex in s])
        out[name] = serialize(complex_document(unstratified(piece, susp.formal_dim)))
    return out


if __name__ == "__main__":
    HERE.mkdir(exist_ok=True)
    for name, text in documents().items():
        (HERE / f"{name}.json").write_text(text, encoding="utf-8")
