import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import spaces
from strathom import fixtures
from strathom.complex import build_complex, closure
from strathom.errors import ComplexError
from strathom.io import serialize
from strathom.mayer_vietoris import FIELDS, mayer_vietoris_check
from strathom.perversity import constant, zero_perversity
from strathom.stratification import unstratified
from test_complex import complexes


def _hemispheres():
    X = unstratified(fixtures.sphere())
    return X, build_complex(4, [[0, 1, 2], [0, 1, 3]]), build_complex(4, [[0, 2, 3], [1, 2, 3]])


def test_hemispheres_connecting_map_carries_top_class():
    X, U, V = _hemispheres()
    report = mayer_vietoris_check(X, U, V)
    part = report.ordinary
    assert part.passed and part.sum_quasi_isomorphic
    # H_2(S^2) -> H_1(circle) is the only nonzero connecting map.
    for ch in FIELDS:
        assert part.connecting_ranks[ch] == [0, 0, 1, 0]
    assert str(part.homology["intersection"]) == "(Z; Z)"
    assert part.homology["X"] == part.homology["sum"]
    assert report.intersection is None


def test_trivial_cover():
    X = unstratified(fixtures.torus7())
    K = X.complex
    report = mayer_vietoris_check(X, K, K, zero_perversity(X))
    assert report.passed
    assert all(not any(r) for r in report.ordinary.connecting_ranks.values())


def test_cover_errors():
    X, U, _ = _hemispheres()
    with pytest.raises(ComplexError):
        mayer_vietoris_check(X, U, U)
    with pytest.raises(ComplexError):
        mayer_vietoris_check(X, U, build_complex(5, [[0, 4]]))


def test_suspension_cover_with_perversities():
    S = spaces.suspension_of_circle()
    K = S.complex
    U = closure(K.vertex_count, [s for s in K.maximal_simplices if 3 in s])
    V = closure(K.vertex_count, [s for s in K.maximal_simplices if 4 in s])
    for value in (-1, 0, 1, 2):
        report = mayer_vietoris_check(S, U, V, constant(S, value))
        assert report.passed and report.intersection.sum_quasi_isomorphic
        assert report.intersection.homology["X"] == report.intersection.homology["sum"]
    assert serialize(report) == serialize(mayer_vietoris_check(S, U, V, constant(S, 2)))


@settings(max_examples=25, deadline=None)
@given(complexes(max_vertices=5, max_dim=2), st.data())
def test_random_covers_are_exact(K, data):
    tops = list(K.maximal_simplices)
    left = data.draw(st.lists(st.booleans(), min_size=len(tops), max_size=len(tops)))
    U = [s for s, keep in zip(tops, left) if keep] or tops[:1]
    V = [s for s, keep in zip(tops, left) if not keep] or tops[:1]
    report = mayer_vietoris_check(unstratified(K), closure(K.vertex_count, U), closure(K.vertex_count, V))
    assert report.ordinary.short_exact and report.ordinary.long_exact
    assert report.ordinary.sum_quasi_isomorphic
