"""Homology-level checks of linkwise Postnikov localization.

Each check computes intersection homology directly from intersection
chains and compares it with an oracle built only from ordinary homology of
the link and truncation, so the two sides share no code beyond the Smith
normal form.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .allowability import full_simplexes, gajer_subcomplex, intersection_chain_complex
from .complex import (
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    combinatorial_link,
    cone,
    ordered_product,
    product_vertices,
)
from .errors import ComplexError
from .homology import HomologySummary, homology, homology_field, truncate
from .perversity import Perversity, PValue, constant, format_value
from .stratification import (
    StratificationWarning,
    StratifiedComplex,
    stratify,
    stratify_cone,
    stratify_double_cylinder,
    subdivide,
    unstratified,
)


def stage_homology(H: HomologySummary, level: PValue) -> HomologySummary:
    """Homology shadow of the Postnikov ``level``-stage of a space with homology ``H``.

    Degrees up to ``level`` are kept and higher ones dropped. Below level 0
    the stage of a nonempty space is a point, so ``Z`` survives in degree 0.
    """
    if level < 0:
        return HomologySummary(((1, ()),)) if H.betti(0) else HomologySummary()
    return truncate(H, level)


def stage_dims(dims: Sequence[int], level: PValue) -> tuple[int, ...]:
    if level < 0:
        return (1,) if dims and dims[0] else ()
    if level == math.inf:
        return tuple(dims)
    return tuple(dims[: int(level) + 1])


def _verdicts(computed: HomologySummary, expected: HomologySummary, top: int) -> list[dict]:
    out = []
    for d in range(max(top, computed.length - 1, expected.length - 1) + 1):
        out.append({"degree": d, "computed": _entry(computed[d]), "expected": _entry(expected[d]),
                    "status": "pass" if computed[d] == expected[d] else "fail"})
    return out


def _entry(group) -> dict:
    return {"betti": group[0], "torsion": list(group[1])}


@dataclass
class ConeCase:
    perversity: PValue
    complement: PValue
    computed: HomologySummary
    expected: HomologySummary
    verdicts: list[dict]

    @property
    def passed(self) -> bool:
        return all(v["status"] != "fail" for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"perversity": format_value(self.perversity), "complement": format_value(self.complement),
                "computed": self.computed.to_dict(), "expected": self.expected.to_dict(),
                "verdicts": self.verdicts, "passed": self.passed}


@dataclass
class ConeFormulaReport:
    link_homology: HomologySummary
    cases: list[ConeCase]
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_dict(self) -> dict:
        return {"check": "cone-formula", "link_homology": self.link_homology.to_dict(),
                "cases": [c.to_dict() for c in self.cases], "warnings": self.warnings,
                "passed": self.passed}


def _sweep_order(values: Iterable[PValue]) -> list[PValue]:
    return sorted(set(values))


def cone_formula_check(L: SimplicialComplex, p_values: Iterable[PValue]) -> ConeFormulaReport:
    """Compare ``I^p H(cone L)`` with the ``Dp(apex)``-stage shadow of ``H(L)``.

    ``Dp(apex) = (dim L + 1) - 2 - p(apex)``.
    """
    notes = []
    if not L.is_connected():
        notes.append("link is not connected")
        warnings.warn("cone formula checked on a disconnected link", StratificationWarning, stacklevel=2)
    base = unstratified(L)
    X = stratify_cone(base)
    (apex,) = X.singular_strata
    H_link = homology(L)
    cases = []
    for value in _sweep_order(p_values):
        p = constant(X, value)
        dp = (apex.codim - 2) - value
        computed = homology(intersection_chain_complex(X, p))
        expected = stage_homology(H_link, dp)
        cases.append(ConeCase(value, dp, computed, expected, _verdicts(computed, expected, X.complex.dim)))
    return ConeFormulaReport(H_link, cases, notes)


@dataclass
class IteratedConeReport:
    outer: PValue
    inner: PValue
    computed: HomologySummary
    expected: HomologySummary
    verdicts: list[dict]

    @property
    def passed(self) -> bool:
        return all(v["status"] != "fail" for v in self.verdicts)

    def to_dict(self) -> dict:
        return {"check": "iterated-cone", "outer": format_value(self.outer), "inner": format_value(self.inner),
                "computed": self.computed.to_dict(), "expected": self.expected.to_dict(),
                "verdicts": self.verdicts, "passed": self.passed}


def double_cone(L: SimplicialComplex) -> StratifiedComplex:
    return stratify_cone(stratify_cone(unstratified(L)))


def iterated_cone_check(L: SimplicialComplex, p_outer: PValue, p_inner: PValue,
                        X: StratifiedComplex | None = None,
                        H_link: HomologySummary | None = None) -> IteratedConeReport:
    """Depth-2 check on ``cone(cone(L))``.

    The outer apex sits at level 0 and the open segment joining it to the
    inner apex at level 1. The oracle applies the stage shadow twice: first
    with the inner complement on ``H(L)``, then with the outer complement.
    """
    X = double_cone(L) if X is None else X
    outer = next(s for s in X.singular_strata if s.level == 0)
    inner = next(s for s in X.singular_strata if s.level == 1)
    p = Perversity(X, {outer.id: p_outer, inner.id: p_inner})
    computed = homology(intersection_chain_complex(X, p))
    H_link = homology(L) if H_link is None else H_link
    dp_inner = (inner.codim - 2) - p_inner
    dp_outer = (outer.codim - 2) - p_outer
    expected = stage_homology(stage_homology(H_link, dp_inner), dp_outer)
    return IteratedConeReport(p_outer, p_inner, computed, expected,
                              _verdicts(computed, expected, X.complex.dim))


def iterated_cone_sweep(L: SimplicialComplex, p_values: Iterable[PValue]) -> list[IteratedConeReport]:
    X = double_cone(L)
    H_link = homology(L)
    values = _sweep_order(p_values)
    return [iterated_cone_check(L, a, b, X, H_link) for a in values for b in values]


def quinn_pushout_build(S: SimplicialComplex, L: SimplicialComplex, a: SimplicialMap, b: SimplicialMap,
                        right: StratifiedComplex | None = None) -> StratifiedComplex:
    """Double mapping cylinder of ``S <- L -> R`` with ``S`` as the singular stratum.

    ``L`` is a finite model of the link. ``S`` sits at level ``dim S``; the
    rest is regular at the formal dimension ``max(dim L + 1, dim R)``
    unless ``right`` supplies a stratification of ``R``.
    """
    if a.domain != L or b.domain != L:
        raise ComplexError("both legs must start at the link model")
    if a.codomain != S:
        raise ComplexError("left leg must land in S")
    R = b.codomain
    n = max(L.dim + 1, right.formal_dim if right is not None else R.dim, S.dim + 1)
    source = unstratified(L, n - 1)
    left = unstratified(S, S.dim)
    right = unstratified(R, n) if right is None else right
    X, _ = stratify_double_cylinder(a, b, source, left, right)
    return X


def trivial_bundle_build(B: SimplicialComplex, F: SimplicialComplex) -> StratifiedComplex:
    """``B x cone(F)`` with singular stratum ``B x {apex}`` at level ``dim B``."""
    cF, apex = cone(F)
    K = ordered_product(B, cF)
    table = product_vertices(B, cF)
    n = B.dim + F.dim + 1
    levels = {s: B.dim if all(table[v][1] == apex for v in s) else n for s in K.simplices}
    return stratify(K, levels, n)


def _kunneth(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass
class BundleReport:
    perversity: PValue
    complement: PValue
    computed: tuple[int, ...]
    expected: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.computed == self.expected

    def to_dict(self) -> dict:
        return {"perversity": format_value(self.perversity), "complement": format_value(self.complement),
                "computed": list(self.computed), "expected": list(self.expected), "passed": self.passed}


def bundle_truncation_check(B: SimplicialComplex, F: SimplicialComplex, value: PValue,
                            X: StratifiedComplex | None = None) -> BundleReport:
    """Rational ``I^p H(B x cone F)`` against ``H(B; Q) ⊗ stage(H(F; Q), Dp)``."""
    X = trivial_bundle_build(B, F) if X is None else X
    (S,) = X.singular_strata
    p = Perversity(X, {S.id: value})
    dp = (S.codim - 2) - value
    computed = homology_field(intersection_chain_complex(X, p), 0)
    expected = _kunneth(homology_field(B, 0), stage_dims(homology_field(F, 0), dp))
    return BundleReport(value, dp, computed, expected)


def cone_apex(X: StratifiedComplex) -> int | None:
    """The apex vertex when ``X`` is the closed star of its only singular stratum, a vertex."""
    sing = X.singular_strata
    if len(sing) != 1 or sing[0].simplices != (sing[0].simplices[0],) or len(sing[0].simplices[0]) != 1:
        return None
    v = sing[0].simplices[0][0]
    if all(v in s for s in X.complex.maximal_simplices):
        return v
    return None


@dataclass
class FullnessGapReport:
    gap: list[Simplex]
    gajer_homology: HomologySummary
    intersection_homology: HomologySummary
    cone_oracle: HomologySummary | None
    comparisons: dict[str, str]

    def to_dict(self) -> dict:
        out = {"report": "fullness-gap", "gap": [list(s) for s in self.gap],
               "gajer_homology": self.gajer_homology.to_dict(),
               "intersection_homology": self.intersection_homology.to_dict(),
               "comparisons": self.comparisons}
        if self.cone_oracle is not None:
            out["cone_oracle"] = self.cone_oracle.to_dict()
        return out


def _label(a, b) -> str:
    return "agree" if a == b else "disagree"


def fullness_gap_report(X: StratifiedComplex, p: Perversity) -> FullnessGapReport:
    """Allowable-but-not-full simplexes and how the Gajer proxy compares with IH."""
    report = full_simplexes(X, p)
    H_g = homology(gajer_subcomplex(X, p))
    IH = homology(intersection_chain_complex(X, p))
    comparisons = {"gajer_vs_ih": _label(H_g, IH)}
    oracle = None
    v = cone_apex(X)
    if v is not None:
        link, _ = combinatorial_link(X.complex, v)
        S = X.stratum_of((v,))
        oracle = stage_homology(homology(link), (S.codim - 2) - p[S.id])
        comparisons["gajer_vs_cone_oracle"] = _label(H_g, oracle)
        comparisons["ih_vs_cone_oracle"] = _label(IH, oracle)
    return FullnessGapReport(report.gap(), H_g, IH, oracle, comparisons)


@dataclass
class SubdivisionReport:
    before: dict[str, HomologySummary]
    after: dict[str, HomologySummary]

    @property
    def changed(self) -> dict[str, list[int]]:
        out = {}
        for key in self.before:
            a, b = self.before[key], self.after[key]
            out[key] = [d for d in range(max(a.length, b.length)) if a[d] != b[d]]
        return out

    def to_dict(self) -> dict:
        return {"report": "subdivision",
                "before": {k: v.to_dict() for k, v in self.before.items()},
                "after": {k: v.to_dict() for k, v in self.after.items()},
                "changed_degrees": self.changed}


def transport_perversity(p: Perversity, sub: StratifiedComplex, carriers: dict) -> Perversity:
    """Carry ``p`` to a subdivision along the carrier map."""
    values = {}
    for s in sub.singular_strata:
        values[s.id] = p[p.space.stratum_of(carriers[s.simplices[0]]).id]
    return Perversity(sub, values)


def subdivision_sensitivity_report(X: StratifiedComplex, p: Perversity) -> SubdivisionReport:
    """IH, Gajer-subcomplex homology and ordinary homology before and after one subdivision."""
    sub, carriers = subdivide(X)
    q = transport_perversity(p, sub, carriers)

    def measure(Y, r):
        return {"intersection": homology(intersection_chain_complex(Y, r)),
                "gajer": homology(gajer_subcomplex(Y, r)),
                "ordinary": homology(Y.complex)}

    return SubdivisionReport(measure(X, p), measure(sub, q))
