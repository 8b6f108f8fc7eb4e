"""Document formats and the canonical text writer.

Three JSON-based formats share one writer: keys sorted, two-space
indentation, lists of scalars kept on one line, and a trailing newline. The
parser is strict. Malformed JSON, unknown fields and wrong types raise
:class:`ParseError`; well-formed documents that describe an invalid object
raise :class:`ValidationError`.

``strathom-complex/1``
    ``formal_dim``, ``vertex_count``, ``maximal_simplices`` and
    ``filtration``, a list of ``{"level", "generators"}``. ``X^i`` is the face
    closure of all generators at levels ``<= i``; simplices not reached by
    any generator sit at level ``formal_dim``.

``strathom-perversity/1``
    ``values`` keyed by stratum id, with integers or the literals ``"+inf"``
    and ``"-inf"``; optionally ``complex_sha256``, the hash of the canonical
    text of the complex the ids refer to.

``strathom-report/1``
    Free-form report payloads written by the CLI.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .complex import Simplex, build_complex, closure
from .errors import ComplexError, ParseError, PerversityError, ValidationError
from .perversity import Perversity, check_value, format_value, parse_value
from .stratification import StratifiedComplex, stratify

COMPLEX_FORMAT = "strathom-complex/1"
PERVERSITY_FORMAT = "strathom-perversity/1"
REPORT_FORMAT = "strathom-report/1"


# -- canonical writer ---------------------------------------------------------

def _is_scalar(x) -> bool:
    return x is None or isinstance(x, (bool, int, str))


def _write(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if _is_scalar(value):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, float):
        raise TypeError(f"floats are not serialized: {value!r}")
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        items = sorted(value.items())
        for k, (key, v) in enumerate(items):
            if not isinstance(key, str):
                raise TypeError(f"non-string key {key!r}")
            out.append(f"{pad}  {json.dumps(key, ensure_ascii=False)}: ")
            _write(v, indent + 1, out)
            out.append(",\n" if k < len(items) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if all(_is_scalar(x) for x in value):
            out.append("[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in value) + "]")
            return
        out.append("[\n")
        for k, v in enumerate(value):
            out.append(pad + "  ")
            _write(v, indent + 1, out)
            out.append(",\n" if k < len(value) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(data: Any) -> str:
    """Canonical text of a JSON-compatible value."""
    out: list[str] = []
    _write(data, 0, out)
    return "".join(out) + "\n"


def serialize(obj: Any) -> str:
    """Canonical text of a document, report or plain JSON value."""
    if hasattr(obj, "to_document"):
        obj = obj.to_document()
    elif hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    return dumps(obj)


# -- strict reader --------------------------------------------------------------

def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ParseError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _reject_constant(name):
    raise ParseError(f"non-finite number {name} is not allowed")


def loads(text: str | bytes) -> Any:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}", position=exc.start) from None
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates, parse_constant=_reject_constant,
                          parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, position=(exc.lineno, exc.colno)) from None


def _reject_float(raw):
    raise ParseError(f"non-integer number {raw} is not allowed")


def _expect_keys(obj, where: str, required: set[str], optional: set[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"{where}: missing field(s) {sorted(missing)}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{where}: expected an integer")
    return x


def _simplex(x, where: str) -> tuple[int, ...]:
    if not isinstance(x, list) or not x:
        raise ParseError(f"{where}: expected a non-empty list of vertices")
    return tuple(_int(v, where) for v in x)


def _format(obj, expected: str) -> None:
    if obj.get("format") != expected:
        raise ParseError(f"expected format {expected!r}, got {obj.get('format')!r}")


# -- complex documents ----------------------------------------------------------

@dataclass(frozen=True)
class ComplexDocument:
    formal_dim: int
    vertex_count: int
    maximal_simplices: tuple[Simplex, ...]
    filtration: tuple[tuple[int, tuple[Simplex, ...]], ...]
    notes: tuple[str, ...] = field(default=(), compare=False)

    def to_document(self) -> dict:
        return {
            "format": COMPLEX_FORMAT,
            "formal_dim": self.formal_dim,
            "vertex_count": self.vertex_count,
            "maximal_simplices": [list(s) for s in self.maximal_simplices],
            "filtration": [{"level": lv, "generators": [list(s) for s in gens]}
                           for lv, gens in self.filtration],
        }

    def to_stratified(self) -> StratifiedComplex:
        K = closure(self.vertex_count, self.maximal_simplices)
        levels = {}
        for lv, gens in self.filtration:
            for s in closure(self.vertex_count, gens).simplices:
                levels.setdefault(s, lv)
        for s in K.simplices:
            levels.setdefault(s, self.formal_dim)
        return stratify(K, levels, self.formal_dim)

    @property
    def sha256(self) -> str:
        return hashlib.sha256(serialize(self).encode("utf-8")).hexdigest()


def complex_document(X: StratifiedComplex) -> ComplexDocument:
    """Canonical document of a stratified complex.

    Each listed level carries the maximal simplices of ``X^i`` whose level
    is exactly ``i``; empty levels are omitted.
    """
    K = X.complex
    by_level: dict[int, list[Simplex]] = {}
    for s in K.simplices:
        by_level.setdefault(X.level(s), []).append(s)
    filtration = []
    for lv in sorted(by_level):
        # A simplex at level lv is maximal in X^lv iff no coface has level <= lv.
        cofaced = set()
        for s in K.simplices:
            if X.level(s) <= lv:
                for i in range(len(s)) if len(s) > 1 else ():
                    cofaced.add(s[:i] + s[i + 1:])
        gens = tuple(s for s in by_level[lv] if s not in cofaced)
        filtration.append((lv, gens))
    return ComplexDocument(X.formal_dim, K.vertex_count, K.maximal_simplices, tuple(filtration))


def parse_complex(text: str | bytes) -> ComplexDocument:
    """Parse and validate a complex document, returning its canonical form.

    Generator sets are closed under faces implicitly; when the text differs
    from the canonical form the returned document carries a note.
    """
    obj = loads(text)
    _expect_keys(obj, "complex", {"format", "formal_dim", "vertex_count", "maximal_simplices", "filtration"})
    _format(obj, COMPLEX_FORMAT)
    n = _int(obj["formal_dim"], "formal_dim")
    vc = _int(obj["vertex_count"], "vertex_count")
    if not isinstance(obj["maximal_simplices"], list):
        raise ParseError("maximal_simplices: expected a list")
    maximal = [_simplex(s, f"maximal_simplices[{i}]") for i, s in enumerate(obj["maximal_simplices"])]
    if not isinstance(obj["filtration"], list):
        raise ParseError("filtration: expected a list")
    raw_levels = []
    for i, entry in enumerate(obj["filtration"]):
        where = f"filtration[{i}]"
        _expect_keys(entry, where, {"level", "generators"})
        if not isinstance(entry["generators"], list):
            raise ParseError(f"{where}.generators: expected a list")
        gens = [_simplex(s, f"{where}.generators[{j}]") for j, s in enumerate(entry["generators"])]
        raw_levels.append((_int(entry["level"], f"{where}.level"), gens))

    if n < 0:
        raise ValidationError("formal_dim must be non-negative")
    if vc < 0:
        raise ValidationError("vertex_count must be non-negative")
    for s in maximal + [g for _, gens in raw_levels for g in gens]:
        if list(s) != sorted(set(s)):
            raise ValidationError(f"simplex {list(s)} is not strictly increasing")
    try:
        K = build_complex(vc, maximal)
    except ComplexError as exc:
        raise ValidationError(str(exc)) from None
    if K.dim > n:
        raise ValidationError(f"complex has dimension {K.dim} above formal_dim {n}")
    previous = None
    for lv, gens in raw_levels:
        if previous is not None and lv <= previous:
            raise ValidationError(f"filtration levels must be strictly increasing ({previous}, {lv})")
        if not 0 <= lv <= n:
            raise ValidationError(f"filtration level {lv} outside [0, {n}]")
        for s in gens:
            if tuple(s) not in K:
                raise ValidationError(f"generator {list(s)} at level {lv} is not a simplex of the complex")
        previous = lv
    doc = ComplexDocument(n, vc, K.maximal_simplices,
                          tuple((lv, tuple(tuple(s) for s in gens)) for lv, gens in raw_levels))
    canonical = complex_document(doc.to_stratified())
    notes = []
    if canonical.maximal_simplices != tuple(maximal):
        notes.append("maximal_simplices normalized to the sorted maximal faces")
    if canonical.filtration != doc.filtration:
        notes.append("filtration generators normalized (face closure implied)")
    return ComplexDocument(canonical.formal_dim, canonical.vertex_count, canonical.maximal_simplices,
                           canonical.filtration, tuple(notes))


def load_stratified(text: str | bytes) -> StratifiedComplex:
    return parse_complex(text).to_stratified()


# -- perversity documents -------------------------------------------------------

@dataclass(frozen=True)
class PerversityDocument:
    values: dict[str, Any]
    complex_sha256: str | None = None

    def to_document(self) -> dict:
        out = {"format": PERVERSITY_FORMAT,
               "values": {k: format_value(v) for k, v in sorted(self.values.items())}}
        if self.complex_sha256 is not None:
            out["complex_sha256"] = self.complex_sha256
        return out

    def bind(self, X: StratifiedComplex) -> Perversity:
        """The perversity on ``X``; ids and the optional hash are checked."""
        if self.complex_sha256 is not None and self.complex_sha256 != complex_document(X).sha256:
            raise ValidationError("perversity document refers to a different complex (hash mismatch)")
        try:
            return Perversity(X, self.values)
        except PerversityError as exc:
            raise ValidationError(str(exc)) from None


def perversity_document(p: Perversity, with_hash: bool = True) -> PerversityDocument:
    digest = complex_document(p.space).sha256 if with_hash else None
    return PerversityDocument(p.singular_values(), digest)


def parse_perversity(text: str | bytes) -> PerversityDocument:
    obj = loads(text)
    _expect_keys(obj, "perversity", {"format", "values"}, {"complex_sha256"})
    _format(obj, PERVERSITY_FORMAT)
    if not isinstance(obj["values"], dict):
        raise ParseError("values: expected an object")
    values = {}
    for k, raw in obj["values"].items():
        try:
            values[k] = check_value(parse_value(raw))
        except PerversityError as exc:
            raise ParseError(f"values[{k!r}]: {exc}") from None
    digest = obj.get("complex_sha256")
    if digest is not None and not isinstance(digest, str):
        raise ParseError("complex_sha256: expected a string")
    return PerversityDocument(values, digest)


# -- reports --------------------------------------------------------------------

def report_document(kind: str, payload: dict) -> dict:
    return {"format": REPORT_FORMAT, "command": kind, **payload}


def parse_report(text: str | bytes) -> dict:
    obj = loads(text)
    if not isinstance(obj, dict):
        raise ParseError("report: expected an object")
    _format(obj, REPORT_FORMAT)
    if not isinstance(obj.get("command"), str):
        raise ParseError("report: missing command")
    return obj
