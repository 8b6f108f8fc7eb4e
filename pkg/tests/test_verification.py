import warnings

import pytest

import oracles
import spaces
from strathom import fixtures
from strathom.allowability import intersection_chain_complex
from strathom.complex import (
    SimplicialMap,
    build_complex,
    collapse_map,
    identity_map,
    ordered_product,
    point,
    product_vertices,
)
from strathom.errors import ComplexError
from strathom.homology import HomologySummary, homology, homology_field
from strathom.io import serialize
from strathom.perversity import INF, Perversity, constant, zero_perversity
from strathom.stratification import StratificationWarning, stratify_cone, unstratified
from strathom.verification import (
    bundle_truncation_check,
    cone_formula_check,
    double_cone,
    fullness_gap_report,
    iterated_cone_check,
    quinn_pushout_build,
    stage_homology,
    subdivision_sensitivity_report,
    trivial_bundle_build,
)


def _case(report, value):
    return next(c for c in report.cases if c.perversity == value)


def test_cone_formula_examples():
    circle = cone_formula_check(fixtures.circle(), [0])
    assert circle.passed and _case(circle, 0).computed.table(2) == "(Z; 0; 0)"
    torus = cone_formula_check(fixtures.torus7(), [0])
    assert _case(torus, 0).complement == 1
    assert _case(torus, 0).computed.table(3) == "(Z; Z^2; 0; 0)"
    rp2 = cone_formula_check(fixtures.projective_plane6(), [-1])
    assert _case(rp2, -1).complement == 2
    assert _case(rp2, -1).computed[1] == (0, (2,))
    assert rp2.passed


def test_cone_formula_disconnected_link_warns():
    two_points = build_complex(2, [[0], [1]])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = cone_formula_check(two_points, [0, 1])
    assert report.warnings
    assert any(issubclass(w.category, StratificationWarning) for w in caught)


def test_stage_homology():
    H = HomologySummary(((1, ()), (2, ()), (1, ())))
    assert stage_homology(H, 1).groups == ((1, ()), (2, ()))
    assert stage_homology(H, -1).groups == ((1, ()),)
    assert stage_homology(H, -INF).groups == ((1, ()),)
    assert stage_homology(HomologySummary(), -1).is_zero()


def test_iterated_cone_examples():
    L = fixtures.circle()
    X = double_cone(L)
    both = iterated_cone_check(L, 0, 0, X)
    assert both.passed and both.computed.groups == ((1, ()),)
    # Inner +inf: the inner apex imposes nothing, so IH is that of a cone over cone(L).
    inner_free = iterated_cone_check(L, 0, INF, X)
    base = stratify_cone(unstratified(L))
    outer = stratify_cone(unstratified(base.complex))
    assert inner_free.computed == homology(intersection_chain_complex(outer, zero_perversity(outer)))
    for inner in (-1, 0, 1):
        # Outer -inf: Dp = +inf at the outer apex, so IH is that of its link, the inner cone.
        report = iterated_cone_check(L, -INF, inner, X)
        assert report.computed == homology(intersection_chain_complex(base, constant(base, inner)))
        assert report.passed
        # Outer +inf: Dp = -inf, and the outer cone collapses to a point.
        report = iterated_cone_check(L, INF, inner, X)
        assert report.computed.groups == ((1, ()),) and report.passed


def test_quinn_pushout_cone():
    L = fixtures.circle()
    X = quinn_pushout_build(point(), L, collapse_map(L), identity_map(L))
    (S,) = X.singular_strata
    for value in range(-2, 4):
        IH = homology(intersection_chain_complex(X, Perversity(X, {S.id: value})))
        assert IH == _case(cone_formula_check(L, [value]), value).computed


def test_quinn_pushout_identity_leg():
    L = fixtures.circle()
    R = ordered_product(L, fixtures.simplex(1))
    table = product_vertices(L, fixtures.simplex(1))
    inclusion = SimplicialMap(L, R, tuple(table.index((v, 0)) for v in range(L.vertex_count)))
    X = quinn_pushout_build(L, L, identity_map(L), inclusion)
    assert homology(X.complex) == homology(R)


def test_quinn_pushout_bundle_presentation():
    B = F = fixtures.circle()
    L = ordered_product(B, F)
    lt = product_vertices(B, F)
    projection = SimplicialMap(L, B, tuple(b for b, _ in lt))
    edge = fixtures.simplex(1)
    R = ordered_product(L, edge)
    rt = product_vertices(L, edge)
    inclusion = SimplicialMap(L, R, tuple(rt.index((v, 0)) for v in range(L.vertex_count)))
    X = quinn_pushout_build(B, L, projection, inclusion)
    Y = trivial_bundle_build(B, F)
    assert homology(X.complex) == homology(Y.complex)
    (S,) = X.singular_strata
    (T,) = Y.singular_strata
    assert S.codim == T.codim
    for value in (-1, 0, 1):
        assert homology_field(intersection_chain_complex(X, Perversity(X, {S.id: value})), 0) == \
            homology_field(intersection_chain_complex(Y, Perversity(Y, {T.id: value})), 0)


def test_quinn_pushout_rejects_mismatched_legs():
    L = fixtures.circle()
    with pytest.raises(ComplexError):
        quinn_pushout_build(point(), L, collapse_map(fixtures.sphere()), identity_map(L))


def test_bundle_build_shapes():
    X = trivial_bundle_build(fixtures.circle(), fixtures.circle())
    assert X.formal_dim == 3 and X.complex.dim == 3
    (S,) = X.singular_strata
    assert S.codim == 2 and homology(X.stratum(S.id).closure and
                                      build_complex(X.complex.vertex_count, S.simplices)).groups == \
        ((1, ()), (1, ()))
    cone_only = trivial_bundle_build(point(), fixtures.circle())
    assert homology(cone_only.complex).groups == ((1, ()),)


def test_bundle_examples():
    B = F = fixtures.circle()
    assert bundle_truncation_check(B, F, 0).computed == (1, 1)  # Dp = 0
    for value in (-2, -5, -INF):  # Dp >= dim F
        assert bundle_truncation_check(B, F, value).computed == (1, 2, 1)
    for value in (1, INF):  # Dp < 0
        assert bundle_truncation_check(B, F, value).computed == (1, 1)
    sphere_base = bundle_truncation_check(point(), fixtures.sphere(), 0)
    assert sphere_base.passed
    cone_report = cone_formula_check(fixtures.sphere(), [0])
    assert sphere_base.computed == tuple(b for b, _ in cone_report.cases[0].computed.groups)
    assert bundle_truncation_check(B, point(), 0).computed == (1, 1)


def test_fullness_gap_examples():
    X = stratify_cone(unstratified(fixtures.circle()))
    report = fullness_gap_report(X, zero_perversity(X))
    assert report.comparisons == {"gajer_vs_ih": "disagree", "gajer_vs_cone_oracle": "disagree",
                                  "ih_vs_cone_oracle": "agree"}
    flat = unstratified(fixtures.torus7())
    plain = fullness_gap_report(flat, zero_perversity(flat))
    assert plain.gap == [] and set(plain.comparisons.values()) == {"agree"}
    high = fullness_gap_report(X, constant(X, 2))
    assert high.gap == [] and high.gajer_homology == high.intersection_homology
    assert high.gajer_homology.groups == ((1, ()),)


def test_subdivision_examples():
    flat = unstratified(fixtures.circle())
    assert all(not v for v in subdivision_sensitivity_report(flat, zero_perversity(flat)).changed.values())
    X = stratify_cone(unstratified(fixtures.circle()))
    for value in range(-2, 4):
        report = subdivision_sensitivity_report(X, constant(X, value))
        assert report.changed["intersection"] == [] and report.changed["ordinary"] == []


def test_reports_are_deterministic():
    X = spaces.stratified_spaces()["cone-torus7"]
    a = serialize(fullness_gap_report(X, zero_perversity(X)))
    b = serialize(fullness_gap_report(X, zero_perversity(X)))
    assert a == b
    first = serialize(cone_formula_check(fixtures.torus7(), [0, 1, INF]))
    assert first == serialize(cone_formula_check(fixtures.torus7(), [INF, 1, 0]))


def test_oracle_agreement_with_sympy():
    for make in spaces.LINKS.values():
        L = make()
        H = homology(L)
        assert H.groups == oracles.simplicial_homology(L.simplices)
