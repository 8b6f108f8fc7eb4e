"""Perversities: extended-integer functions on strata, zero on regular strata.

Values are Python ints or ``math.inf`` / ``-math.inf``. Arithmetic with a
finite number saturates, and the complement of ``±inf`` is ``∓inf``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Union

from .complex import SimplicialMap
from .errors import PerversityError
from .stratification import StratificationWarning, StratifiedComplex

PValue = Union[int, float]

INF = math.inf


def check_value(value) -> PValue:
    if isinstance(value, bool):
        raise PerversityError(f"invalid perversity value {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and math.isinf(value):
        return value
    raise PerversityError(f"perversity values are integers or ±inf, got {value!r}")


def format_value(value: PValue):
    if value == INF:
        return "+inf"
    if value == -INF:
        return "-inf"
    return int(value)


def parse_value(raw) -> PValue:
    if raw == "+inf":
        return INF
    if raw == "-inf":
        return -INF
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise PerversityError(f"expected an integer, '+inf' or '-inf', got {raw!r}")
    return raw


@dataclass(frozen=True, eq=False)
class Perversity:
    """A perversity on the strata of ``space``.

    Singular strata missing from ``values`` get 0. A nonzero value on a
    regular stratum is an error.
    """

    space: StratifiedComplex
    values: Mapping[str, PValue]

    def __post_init__(self):
        vals = {}
        known = {s.id for s in self.space.strata}
        for sid, v in dict(self.values).items():
            if sid not in known:
                raise PerversityError(f"unknown stratum id {sid!r}")
            vals[sid] = check_value(v)
        for s in self.space.strata:
            if s.regular:
                if vals.get(s.id, 0) != 0:
                    raise PerversityError(f"regular stratum {s.id} must have perversity 0")
                vals[s.id] = 0
            else:
                vals.setdefault(s.id, 0)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, sid: str) -> PValue:
        return self.values[sid]

    def singular_values(self) -> dict[str, PValue]:
        return {s.id: self.values[s.id] for s in self.space.singular_strata}

    def __eq__(self, other):
        if not isinstance(other, Perversity):
            return NotImplemented
        return self.space is other.space and self.values == other.values

    __hash__ = None

    def __le__(self, other: "Perversity") -> bool:
        return all(self.values[k] <= other.values[k] for k in self.values)

    def __repr__(self):
        vals = ", ".join(f"{k}={format_value(v)}" for k, v in sorted(self.singular_values().items()))
        return f"Perversity({vals})"


def constant(X: StratifiedComplex, value: PValue) -> Perversity:
    """The perversity taking ``value`` on every singular stratum."""
    return Perversity(X, {s.id: value for s in X.singular_strata})


def zero_perversity(X: StratifiedComplex) -> Perversity:
    return constant(X, 0)


def top_perversity(X: StratifiedComplex) -> Perversity:
    """``t(S) = codim S - 2`` on singular strata."""
    return Perversity(X, {s.id: s.codim - 2 for s in X.singular_strata})


def complement(p: Perversity) -> Perversity:
    """``Dp = t - p`` on singular strata."""
    return Perversity(p.space, {s.id: (s.codim - 2) - p[s.id] for s in p.space.singular_strata})


def is_classical(p: Perversity) -> bool:
    """True when ``0 <= p <= t`` on every singular stratum."""
    return all(0 <= p[s.id] <= s.codim - 2 for s in p.space.singular_strata)


def target_strata(f: SimplicialMap, source: StratifiedComplex, target: StratifiedComplex) -> dict[str, str]:
    """For a stratified map, the target stratum containing each source stratum's image."""
    if f.domain != source.complex or f.codomain != target.complex:
        raise PerversityError("stratifications do not match the map")
    out = {}
    for s in source.strata:
        images = {target.stratum_of(f.image(x)).id for x in s.simplices}
        if len(images) != 1:
            raise PerversityError(f"map is not stratified: {s.id} meets strata {sorted(images)}")
        out[s.id] = images.pop()
    return out


def pullback(f: SimplicialMap, source: StratifiedComplex, p: Perversity) -> Perversity:
    """``f*p(S) = p(S^f)`` on singular source strata.

    A regular source stratum landing in a singular stratum keeps 0, with a
    :class:`StratificationWarning`.
    """
    targets = target_strata(f, source, p.space)
    vals = {}
    for s in source.strata:
        v = p[targets[s.id]]
        if s.regular:
            if v != 0:
                warnings.warn(f"regular stratum {s.id} maps into {targets[s.id]} with perversity "
                              f"{format_value(v)}; keeping 0", StratificationWarning, stacklevel=2)
            continue
        vals[s.id] = v
    return Perversity(source, vals)


def induced(p: Perversity, sub: StratifiedComplex, table: Mapping[str, str]) -> Perversity:
    """Induced perversity on a restriction, given its stratum table from ``restrict``."""
    return Perversity(sub, {s.id: p[table[s.id]] for s in sub.singular_strata})
