import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
import spaces
from strathom import fixtures
from strathom.complex import build_complex, closure, collapse_map, identity_map, point
from strathom.errors import FiltrationError
from strathom.stratification import (
    Filtration,
    StratificationWarning,
    check_frontier,
    compute_strata,
    restrict,
    stratify,
    stratify_cone,
    stratify_cylinder,
    stratify_product,
    subdivide,
    unstratified,
    warn_if_irregular,
)
from test_complex import complexes


def _cone_circle():
    return stratify_cone(unstratified(fixtures.circle()))


def test_cone_strata():
    X = _cone_circle()
    assert [(s.id, s.level, len(s.simplices), s.regular) for s in X.strata] == [
        ("s0.0", 0, 1, False), ("s2.0", 2, 12, True)]
    assert X.stratum("s0.0").codim == 2
    assert check_frontier(X).passed
    assert X.precedes("s0.0", "s2.0") and not X.precedes("s2.0", "s0.0")


def test_one_level_filtration_components():
    K = build_complex(6, [[0, 1], [1, 2], [3, 4, 5]])
    X = unstratified(K)
    assert len(X.strata) == 2 and all(s.regular for s in X.strata)


def test_two_wings():
    K = build_complex(5, [[0, 1, 2], [2, 3, 4]])
    X = stratify(K, {s: 0 if s == (2,) else 2 for s in K.simplices}, 2)
    assert [s.id for s in X.strata] == ["s0.0", "s2.0", "s2.1"]
    assert check_frontier(X).passed


def test_segment_frontier_passes():
    X = spaces.frontier_good()
    assert check_frontier(X).passed
    assert len(X.strata) == 3


def test_whisker_frontier_fails_with_witness():
    K = build_complex(4, [[0, 1, 2], [1, 3]])
    low = set(closure(4, [[0, 1], [1, 3]]).simplices)
    X = stratify(K, {s: 1 if s in low else 2 for s in K.simplices}, 2)
    verdict = check_frontier(X)
    assert not verdict.passed
    si, sj = (X.stratum(i) for i in verdict.pair)
    assert verdict.meets in si.simplices and verdict.meets in sj.closure
    assert verdict.escapes in si.simplices and verdict.escapes not in sj.closure


def test_filtration_errors():
    K = fixtures.simplex(1)
    with pytest.raises(FiltrationError) as info:
        compute_strata(K, Filtration(1, {(0,): 1, (1,): 0, (0, 1): 0}))
    assert info.value.witness == ((0,), (0, 1))
    with pytest.raises(FiltrationError):
        compute_strata(K, Filtration(1, {(0,): 0, (1,): 0, (0, 1): 2}))
    with pytest.raises(FiltrationError):
        Filtration(-1, {})


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=6, max_dim=2), st.data())
def test_strata_partition_and_order(K, data):
    # Random monotone filtration: a vertex level, raised to the max over faces.
    n = K.dim + 1
    vlevel = {v: data.draw(st.integers(0, n)) for v in K.vertices}
    level = {s: max(max(vlevel[v] for v in s), data.draw(st.integers(0, n))) for s in K.simplices}
    for s in K.simplices:  # make monotone
        level[s] = max([level[s]] + [level[f] for f in oracles.all_faces(s)])
    X = stratify(K, level, n)
    expected = oracles.level_strata(K.simplices, level)
    assert {frozenset(s.simplices): s.level for s in X.strata} == expected
    members = [x for s in X.strata for x in s.simplices]
    assert sorted(members) == sorted(K.simplices)
    ids = [s.id for s in X.strata]
    for a in ids:
        for b in ids:
            brute = all(x in X.stratum(b).closure for x in X.stratum(a).simplices)
            assert X.precedes(a, b) == brute
    if check_frontier(X).passed:
        for a in ids:
            for b in ids:
                if a != b and X.precedes(a, b):
                    assert not X.precedes(b, a)
                for c in ids:
                    if X.precedes(a, b) and X.precedes(b, c):
                        assert X.precedes(a, c)
    maximal = {a for a in ids if not any(a != b and X.precedes(a, b) for b in ids)}
    assert maximal == {s.id for s in X.regular_strata}


def test_double_cone_levels():
    X = stratify_cone(_cone_circle())
    assert sorted({s.level for s in X.strata}) == [0, 1, 3]
    assert check_frontier(X).passed


def test_cone_adds_one_stratum():
    for make in spaces.LINKS.values():
        base = unstratified(make())
        assert len(stratify_cone(base).strata) == len(base.strata) + 1


def test_cone_of_point():
    X = stratify_cone(unstratified(point(), 0))
    assert X.complex.maximal_simplices == ((0, 1),)
    assert [(s.level, s.regular) for s in X.strata] == [(0, False), (1, True)]


def test_cylinder_to_point_is_cone():
    base = unstratified(fixtures.circle())
    cyl = stratify_cylinder(collapse_map(base.complex), base, unstratified(point(), 0))
    assert cyl == _cone_circle()


def test_identity_cylinder_is_product_stratification():
    base = stratify_cone(unstratified(fixtures.simplex(0)))  # an edge with one singular end
    cyl = stratify_cylinder(identity_map(base.complex), base, base)
    # S x [0,1[ at level 1, plus both strata of the codomain copy, whose
    # regular part now has codimension 1 inside the cylinder.
    assert sorted((s.level, len(s.simplices)) for s in cyl.singular_strata) == [(0, 1), (1, 2), (1, 2)]
    assert check_frontier(cyl).passed


def test_cylinder_rejects_large_target():
    base = unstratified(fixtures.circle())
    with pytest.raises(FiltrationError):
        stratify_cylinder(identity_map(base.complex), base, unstratified(fixtures.circle(), 5))


def test_restrict_examples():
    X = _cone_circle()
    base = closure(4, [[0, 1], [1, 2], [0, 2]])
    Y, table = restrict(X, base)
    assert all(s.regular for s in Y.strata)
    assert set(table.values()) == {"s2.0"}
    reg, _ = restrict(X, X.regular_subcomplex())
    assert all(s.regular for s in reg.strata)
    star, table = restrict(X, closure(4, [[0, 1, 3], [0, 2, 3]]))
    assert len(star.strata) == 2 and table["s0.0"] == "s0.0"


def test_restrict_composes():
    X = spaces.stratified_spaces()["suspension-circle"]
    A = closure(5, [[0, 1, 3], [0, 2, 3], [0, 1, 4]])
    B = closure(5, [[0, 1, 3], [0, 1, 4]])
    once, _ = restrict(X, A.intersection(B))
    twice, _ = restrict(restrict(X, A)[0], B)
    assert once == twice


def test_product_levels_add():
    X = stratify_product(_cone_circle(), unstratified(fixtures.circle()))
    assert X.formal_dim == 3
    assert [s.level for s in X.singular_strata] == [1]
    assert check_frontier(X).passed


def test_subdivision_keeps_levels_of_carriers():
    X = _cone_circle()
    sub, carriers = subdivide(X)
    for s in sub.complex.simplices:
        assert sub.level(s) == X.level(carriers[s])
    assert len(sub.singular_strata) == 1


def test_irregular_warning():
    K = build_complex(3, [[0, 1], [2]])
    X = stratify(K, {s: 0 if s == (2,) else 1 for s in K.simplices}, 1)
    assert X.warnings
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        warn_if_irregular(X)
    assert any(issubclass(w.category, StratificationWarning) for w in caught)
