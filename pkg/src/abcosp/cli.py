"""Command line front end: JSON documents in, deterministic reports out.

A document names a field and a collection of values (matrices, linear maps,
cospans, spans, complexes, simplicial maps, space cospans); a command picks
its operands from the document's ``inputs`` role table and runs one
operation. Reports serialize with sorted keys and no timing jitter, so one
input file, command, and seed always produce identical bytes. Exit status:
0 for a value or a passing check, 1 for a failing check, 2 for unusable
input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import re
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Optional

from . import abcat, brown, cospan, cw, generators
from .exactlin import Field, Matrix, matrix_to_rows

SCHEMA_VERSION = "1"
COMMANDS = (
    "canon",
    "equiv",
    "leq",
    "compose",
    "transpose",
    "tensor",
    "dagger",
    "homology",
    "mv-check",
    "extend-cospan",
    "extend-span",
    "verify",
    "oracle",
    "random-suite",
)

_RATIONAL = re.compile(r"^(-?\d+)/(\d+)$")


class ParseError(ValueError):
    """The file is not syntactically valid JSON."""


class ValidationError(ValueError):
    """The file parses but violates a schema or module invariant."""


class UnknownCommand(ValueError):
    pass


@dataclass
class Document:
    field: Field
    data: dict
    raw: bytes
    matrices: Dict[str, Matrix] = dc_field(default_factory=dict)
    linmaps: Dict[str, abcat.LinMap] = dc_field(default_factory=dict)
    cospans: Dict[str, cospan.Cospan] = dc_field(default_factory=dict)
    spans: Dict[str, cospan.Span] = dc_field(default_factory=dict)
    complexes: Dict[str, cw.SimplicialComplex] = dc_field(default_factory=dict)
    maps: Dict[str, cw.SimplicialMap] = dc_field(default_factory=dict)
    space_cospans: Dict[str, cw.SpaceCospan] = dc_field(default_factory=dict)

    @property
    def inputs(self) -> dict:
        return self.data.get("inputs", {})


def _parse_scalar(f: Field, tok, where: str):
    if isinstance(tok, bool):
        raise ValidationError(f"{where}: boolean is not a scalar")
    if isinstance(tok, int):
        if f.characteristic and not 0 <= tok < f.characteristic:
            raise ValidationError(
                f"{where}: entry {tok} outside [0, {f.characteristic})"
            )
        return f.coerce(tok)
    if isinstance(tok, str):
        if f.characteristic:
            raise ValidationError(
                f"{where}: rational token {tok!r} in a prime field"
            )
        m = _RATIONAL.match(tok)
        if not m:
            raise ValidationError(f"{where}: malformed rational {tok!r}")
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ValidationError(f"{where}: zero denominator in {tok!r}")
        fr = Fraction(num, den)
        if (fr.numerator, fr.denominator) != (num, den) or den == 1:
            raise ValidationError(f"{where}: {tok!r} is not in lowest terms")
        return fr
    raise ValidationError(f"{where}: unsupported scalar {tok!r}")


def _parse_matrix(f: Field, entry, where: str) -> Matrix:
    if isinstance(entry, dict):
        rows, cols = entry.get("rows"), entry.get("cols")
        entries = entry.get("entries")
        if not (isinstance(rows, int) and isinstance(cols, int)) or entries is None:
            raise ValidationError(f"{where}: matrix object needs rows/cols/entries")
        grid = entries
    elif isinstance(entry, list):
        grid = entry
        rows = len(grid)
        widths = {len(r) for r in grid if isinstance(r, list)}
        if len(widths) > 1:
            raise ValidationError(f"{where}: ragged matrix rows")
        if rows == 0:
            raise ValidationError(
                f"{where}: a 0-row matrix needs the object form with cols"
            )
        cols = widths.pop() if widths else 0
    else:
        raise ValidationError(f"{where}: matrix must be a row list or object")
    data = []
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != cols:
            raise ValidationError(f"{where}: row {i} is not a {cols}-entry list")
        data.append([_parse_scalar(f, x, f"{where}[{i}]") for x in row])
    if len(data) != rows:
        raise ValidationError(f"{where}: declared {rows} rows, found {len(data)}")
    return Matrix.from_rows(f, data, cols)


def _matrix_ref(doc: Document, entry, where: str) -> Matrix:
    if isinstance(entry, str):
        if entry not in doc.matrices:
            raise ValidationError(f"{where}: unknown matrix {entry!r}")
        return doc.matrices[entry]
    return _parse_matrix(doc.field, entry, where)


def _named(table: dict, kind: str, name, where: str):
    if not isinstance(name, str) or name not in table:
        raise ValidationError(f"{where}: unknown {kind} {name!r}")
    return table[name]


def parse_document(raw: bytes) -> Document:
    try:
        data = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise ParseError(f"not utf-8: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ValidationError("top level must be an object")
    version = data.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError(f"unsupported document version {version!r}")
    fentry = data.get("field")
    if not isinstance(fentry, dict) or "char" not in fentry:
        raise ValidationError("field: need an object with a 'char' key")
    try:
        f = Field(fentry["char"])
    except Exception as e:
        raise ValidationError(f"field: {e}") from e
    doc = Document(field=f, data=data, raw=raw)
    for name, entry in data.get("matrices", {}).items():
        doc.matrices[name] = _parse_matrix(f, entry, f"matrices.{name}")
    for name, entry in data.get("linmaps", {}).items():
        where = f"linmaps.{name}"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where}: need an object")
        try:
            src, dst = int(entry["src"]), int(entry["dst"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"{where}: need integer src and dst") from e
        m = _matrix_ref(doc, entry.get("matrix"), f"{where}.matrix")
        try:
            doc.linmaps[name] = abcat.LinMap(
                abcat.VecObj(f, src), abcat.VecObj(f, dst), m
            )
        except Exception as e:
            raise ValidationError(f"{where}: {e}") from e
    for name, entry in data.get("cospans", {}).items():
        where = f"cospans.{name}"
        try:
            doc.cospans[name] = cospan.Cospan(
                _named(doc.linmaps, "linmap", entry.get("f0"), where),
                _named(doc.linmaps, "linmap", entry.get("f1"), where),
            )
        except ValidationError:
            raise
        except Exception as e:
            raise ValidationError(f"{where}: {e}") from e
    for name, entry in data.get("spans", {}).items():
        where = f"spans.{name}"
        try:
            doc.spans[name] = cospan.Span(
                _named(doc.linmaps, "linmap", entry.get("g0"), where),
                _named(doc.linmaps, "linmap", entry.get("g1"), where),
            )
        except ValidationError:
            raise
        except Exception as e:
            raise ValidationError(f"{where}: {e}") from e
    for name, entry in data.get("complexes", {}).items():
        where = f"complexes.{name}"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where}: need an object")
        try:
            doc.complexes[name] = cw.closure_and_validate(
                int(entry.get("n_vertices", 0)), entry.get("maximal", [])
            )
        except Exception as e:
            raise ValidationError(f"{where}: {e}") from e
    for name, entry in data.get("maps", {}).items():
        where = f"maps.{name}"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where}: need an object")
        src = _named(doc.complexes, "complex", entry.get("src"), where)
        dst = _named(doc.complexes, "complex", entry.get("dst"), where)
        try:
            doc.maps[name] = cw.make_simplicial_map(
                src, dst, entry.get("vertices", [])
            )
        except Exception as e:
            raise ValidationError(f"{where}: {e}") from e
    for name, entry in data.get("space_cospans", {}).items():
        where = f"space_cospans.{name}"
        try:
            doc.space_cospans[name] = cw.SpaceCospan(
                _named(doc.maps, "map", entry.get("f0"), where),
                _named(doc.maps, "map", entry.get("f1"), where),
            )
        except ValidationError:
            raise
        except Exception as e:
            raise ValidationError(f"{where}: {e}") from e
    return doc


def load(path: str) -> Document:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return parse_document(raw)


def document_to_data(doc: Document) -> dict:
    """A value-faithful export of the document; parsing it back yields the
    same objects."""
    f = doc.field
    out: dict = {"version": SCHEMA_VERSION, "field": {"char": f.characteristic}}

    def mat(m: Matrix):
        if m.rows == 0 or m.cols == 0:
            return {"rows": m.rows, "cols": m.cols, "entries": matrix_to_rows(m)}
        return matrix_to_rows(m)

    if doc.matrices:
        out["matrices"] = {k: mat(v) for k, v in doc.matrices.items()}
    if doc.linmaps:
        out["linmaps"] = {
            k: {"src": v.src.dim, "dst": v.dst.dim, "matrix": mat(v.mat)}
            for k, v in doc.linmaps.items()
        }
    if doc.cospans:
        out["cospans"] = {
            k: {"f0": doc.data["cospans"][k]["f0"], "f1": doc.data["cospans"][k]["f1"]}
            for k in doc.cospans
        }
    if doc.spans:
        out["spans"] = {
            k: {"g0": doc.data["spans"][k]["g0"], "g1": doc.data["spans"][k]["g1"]}
            for k in doc.spans
        }
    if doc.complexes:
        out["complexes"] = {
            k: {
                "n_vertices": v.n_vertices,
                "maximal": [list(s) for s in generators._maximal_simplices(v)],
            }
            for k, v in doc.complexes.items()
        }
    if doc.maps:
        out["maps"] = {
            k: {
                "src": doc.data["maps"][k]["src"],
                "dst": doc.data["maps"][k]["dst"],
                "vertices": list(v.vertex_map),
            }
            for k, v in doc.maps.items()
        }
    if doc.space_cospans:
        out["space_cospans"] = {
            k: dict(doc.data["space_cospans"][k])
            for k in doc.space_cospans
        }
    for key in ("inputs", "suite", "oracle"):
        if key in doc.data:
            out[key] = doc.data[key]
    return out


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def _class_payload(cls: cospan.CanonicalClass) -> dict:
    return brown.class_payload(cls)


def _cospan_payload(c: cospan.Cospan) -> dict:
    return {
        "bulk_dim": c.bulk.dim,
        "leg0": matrix_to_rows(c.f0.mat),
        "leg1": matrix_to_rows(c.f1.mat),
        "class": _class_payload(cospan.canonical_cosp(c)),
    }


def _span_payload(s: cospan.Span) -> dict:
    return {
        "bulk_dim": s.bulk.dim,
        "leg0": matrix_to_rows(s.g0.mat),
        "leg1": matrix_to_rows(s.g1.mat),
        "class": _class_payload(cospan.canonical_span(s)),
    }


def _role(doc: Document, key: str) -> str:
    name = doc.inputs.get(key)
    if not isinstance(name, str):
        raise ValidationError(f"inputs.{key}: missing role")
    return name


def _both(doc: Document, key: str):
    """Resolve a role name as a cospan or a span, cospans first."""
    name = _role(doc, key)
    if name in doc.cospans:
        return "cospan", doc.cospans[name]
    if name in doc.spans:
        return "span", doc.spans[name]
    raise ValidationError(f"inputs.{key}: {name!r} names no cospan or span")


def _pair(doc: Document):
    k0, left = _both(doc, "left")
    k1, right = _both(doc, "right")
    if k0 != k1:
        raise ValidationError("inputs: left and right must be the same kind")
    return k0, left, right


def _need_q(flags: dict) -> int:
    q = flags.get("q")
    if q is None:
        raise ValidationError("this command needs --q")
    return q


def _brown_functor(doc: Document, flags: dict) -> brown.BrownFunctor:
    return brown.BrownFunctor(doc.field, _need_q(flags))


def _run_value(command: str, doc: Document, flags: dict):
    if command == "canon":
        kind, v = _both(doc, "left")
        cls = (
            cospan.canonical_cosp(v) if kind == "cospan" else cospan.canonical_span(v)
        )
        return "value", {"kind": kind, "class": _class_payload(cls)}, None
    if command == "equiv":
        kind, left, right = _pair(doc)
        eq = (
            cospan.equiv_cosp(left, right)
            if kind == "cospan"
            else cospan.equiv_span(left, right)
        )
        return "value", {"kind": kind, "equal": eq}, None
    if command == "leq":
        kind, left, right = _pair(doc)
        wit = (
            cospan.leq_cosp(left, right)
            if kind == "cospan"
            else cospan.leq_span(left, right)
        )
        return (
            "value",
            {
                "kind": kind,
                "holds": wit is not None,
                "witness": None if wit is None else matrix_to_rows(wit.mat),
            },
            None,
        )
    if command == "compose":
        kind, left, right = _pair(doc)
        if kind == "cospan":
            return "value", _cospan_payload(cospan.compose_cosp(left, right)), None
        return "value", _span_payload(cospan.compose_span(left, right)), None
    if command == "tensor":
        kind, left, right = _pair(doc)
        if kind == "cospan":
            return "value", _cospan_payload(cospan.tensor_cosp(left, right)), None
        return "value", _span_payload(cospan.tensor_span(left, right)), None
    if command == "transpose":
        kind, v = _both(doc, "left")
        if kind == "cospan":
            return "value", _span_payload(cospan.transpose_cosp(v)), None
        return "value", _cospan_payload(cospan.transpose_span(v)), None
    if command == "dagger":
        kind, v = _both(doc, "left")
        if kind == "cospan":
            return "value", _cospan_payload(cospan.dagger_cosp(v)), None
        return "value", _span_payload(cospan.dagger_span(v)), None
    if command == "homology":
        name = _role(doc, "complex")
        K = _named(doc.complexes, "complex", name, "inputs.complex")
        q = _need_q(flags)
        hd = cw.homology(cw.augmented_chain(K, doc.field), q)
        return (
            "value",
            {"dim": hd.space.dim, "cycles": matrix_to_rows(hd.reps)},
            None,
        )
    if command == "extend-cospan":
        lam = _named(
            doc.space_cospans, "space cospan", _role(doc, "cospan"), "inputs.cospan"
        )
        ext = brown.cospanical_extend(_brown_functor(doc, flags), lam)
        return (
            "value",
            {
                "feet": [ext.feet[0].dim, ext.feet[1].dim],
                "class": _class_payload(ext.cls),
            },
            None,
        )
    if command == "extend-span":
        lam = _named(
            doc.space_cospans, "space cospan", _role(doc, "cospan"), "inputs.cospan"
        )
        ext = brown.spanical_extend(_brown_functor(doc, flags), lam)
        return (
            "value",
            {
                "feet": [ext.feet[0].dim, ext.feet[1].dim],
                "class": _class_payload(ext.cls),
            },
            None,
        )
    raise UnknownCommand(command)


def _run_mv(doc: Document, flags: dict):
    names = doc.inputs.get("triad")
    if not (isinstance(names, list) and len(names) == 4):
        raise ValidationError("inputs.triad: need [T, K0, K1, L] names")
    T, K0, K1, L = (
        _named(doc.complexes, "complex", n, "inputs.triad") for n in names
    )
    q = _need_q(flags)
    ok = cw.mv_exactness_check(T, K0, K1, L, q, doc.field)
    if ok:
        return "pass", {"exact": True, "q": q}, None
    return "fail", {"exact": False, "q": q}, {"triad": names, "q": q}


def _run_verify(doc: Document, flags: dict):
    E = _brown_functor(doc, flags)
    lam = _named(
        doc.space_cospans, "space cospan", _role(doc, "cospan"), "inputs.cospan"
    )
    reports = [brown.verify_extension_dagger(E, lam)]
    if E.q >= 1:
        reports.append(brown.verify_transposition_compatibility(E, lam))
    then = doc.inputs.get("then")
    if then is not None:
        mu = _named(doc.space_cospans, "space cospan", then, "inputs.then")
        reports.append(brown.verify_extension_functoriality(E, lam, mu))
        reports.append(brown.verify_extension_monoidal(E, lam, mu))
    bad = [r for r in reports if not r["passed"]]
    outcome = "fail" if bad else "pass"
    return outcome, {"reports": reports}, (bad[0] if bad else None)


def _run_oracle(doc: Document, flags: dict):
    if doc.field.characteristic != 2:
        raise ValidationError("oracle: the brute-force oracle runs over GF(2)")
    params = doc.data.get("oracle", {})
    max_feet = int(params.get("max_feet", 2))
    max_bulk = int(params.get("max_bulk", 1))
    samples = int(params.get("samples", 200))
    sample_bulk = int(params.get("max_sample_bulk", 2))
    seed = flags.get("seed") or 0
    checked = 0
    for a0 in range(max_feet + 1):
        for a1 in range(max_feet + 1):
            pool = list(
                generators.enum_cospans_gf2(doc.field, a0, a1, max_bulk)
            )
            for c in pool:
                for d in pool:
                    if cospan.equiv_cosp(c, d) != generators.brute_force_upper_bound_gf2(c, d):
                        return (
                            "fail",
                            {"checked": checked},
                            {
                                "left": _cospan_payload(c),
                                "right": _cospan_payload(d),
                                "disagreement": "equiv vs upper-bound search",
                            },
                        )
                    if (cospan.leq_cosp(c, d) is not None) != generators.brute_force_leq_gf2(c, d):
                        return (
                            "fail",
                            {"checked": checked},
                            {
                                "left": _cospan_payload(c),
                                "right": _cospan_payload(d),
                                "disagreement": "leq vs mono search",
                            },
                        )
                    checked += 1
    rng = random.Random(seed)
    for _ in range(samples):
        a0, a1 = rng.randint(0, max_feet), rng.randint(0, max_feet)
        c = generators.rand_cospan(rng, doc.field, a0, a1, sample_bulk)
        d = generators.rand_cospan(rng, doc.field, a0, a1, sample_bulk)
        if cospan.equiv_cosp(c, d) != generators.brute_force_upper_bound_gf2(c, d):
            return (
                "fail",
                {"checked": checked},
                {
                    "left": _cospan_payload(c),
                    "right": _cospan_payload(d),
                    "disagreement": "equiv vs upper-bound search",
                },
            )
        checked += 1
    return "pass", {"checked": checked}, None


def _suite_fields(chars) -> list:
    out = []
    for ch in chars:
        out.append(Field(int(ch)))
    return out


def _run_random_suite(doc: Document, flags: dict):
    params = doc.data.get("suite", {})
    count = int(params.get("count", 25))
    max_feet = int(params.get("max_feet", 3))
    max_bulk = int(params.get("max_bulk", 4))
    max_vertices = int(params.get("max_vertices", 8))
    fields = _suite_fields(params.get("chars", [2, 3, 0]))
    seed = flags.get("seed") or 0
    d_cap = flags.get("d")
    counts: Dict[str, int] = {}
    for i in range(count):
        rng = random.Random(seed * 1000003 + i)
        f = fields[i % len(fields)]
        fail = _suite_instance(rng, f, max_feet, max_bulk, max_vertices, d_cap, counts)
        if fail is not None:
            return "fail", {"instances": i + 1, "checks": counts}, fail
    return "pass", {"instances": count, "checks": counts}, None


def _bump(counts: Dict[str, int], key: str) -> None:
    counts[key] = counts.get(key, 0) + 1


def _suite_instance(
    rng: random.Random,
    f: Field,
    max_feet: int,
    max_bulk: int,
    max_vertices: int,
    d_cap,
    counts: Dict[str, int],
) -> Optional[dict]:
    C = cospan
    chain = generators.rand_cospan_chain(rng, f, 3, max_feet, max_bulk)
    c1, c2, c3 = chain
    _bump(counts, "associativity")
    lhs = C.compose_cosp(C.compose_cosp(c1, c2), c3)
    rhs = C.compose_cosp(c1, C.compose_cosp(c2, c3))
    if C.canonical_cosp(lhs) != C.canonical_cosp(rhs):
        return {"check": "associativity", "char": f.characteristic}
    _bump(counts, "units")
    u = C.iota_cosp(abcat.identity(c1.foot0))
    v = C.iota_cosp(abcat.identity(c1.foot1))
    if not (
        C.equiv_cosp(C.compose_cosp(u, c1), c1)
        and C.equiv_cosp(C.compose_cosp(c1, v), c1)
    ):
        return {"check": "units", "char": f.characteristic}
    _bump(counts, "dagger")
    if C.canonical_cosp(C.dagger_cosp(C.compose_cosp(c1, c2))) != C.canonical_cosp(
        C.compose_cosp(C.dagger_cosp(c2), C.dagger_cosp(c1))
    ):
        return {"check": "dagger", "char": f.characteristic}
    _bump(counts, "interchange")
    d1, d2 = generators.rand_cospan_chain(rng, f, 2, max_feet, max_bulk)
    if C.canonical_cosp(
        C.compose_cosp(C.tensor_cosp(c1, d1), C.tensor_cosp(c2, d2))
    ) != C.canonical_cosp(
        C.tensor_cosp(C.compose_cosp(c1, c2), C.compose_cosp(d1, d2))
    ):
        return {"check": "interchange", "char": f.characteristic}
    _bump(counts, "transpose_involution")
    if not C.equiv_cosp(
        C.transpose_span(C.transpose_cosp(c1)), c1
    ):
        return {"check": "transpose_involution", "char": f.characteristic}
    _bump(counts, "transpose_compose")
    if C.canonical_span(C.transpose_cosp(C.compose_cosp(c1, c2))) != C.canonical_span(
        C.compose_span(C.transpose_cosp(c1), C.transpose_cosp(c2))
    ):
        return {"check": "transpose_compose", "char": f.characteristic}
    _bump(counts, "leq_monotone")
    a, ap = generators.rand_leq_pair(rng, f, max_feet, max_bulk)
    b, bp = generators.rand_leq_pair(rng, f, max_feet, max_bulk)
    if C.leq_cosp(a, ap) is None:
        return {"check": "leq_monotone", "char": f.characteristic}
    if C.leq_cosp(C.tensor_cosp(a, b), C.tensor_cosp(ap, bp)) is None:
        return {"check": "leq_monotone", "char": f.characteristic}
    post = generators.rand_cospan(
        rng, f, a.foot1.dim, rng.randint(0, max_feet), max_bulk
    )
    if C.leq_cosp(C.compose_cosp(a, post), C.compose_cosp(ap, post)) is None:
        return {"check": "leq_monotone", "char": f.characteristic}
    _bump(counts, "exact_square")
    sq = generators.rand_commuting_square(rng, f, max_feet)
    if abcat.is_exact_square(sq) != abcat.is_exact_at_middle(abcat.square_complex(sq)):
        return {"check": "exact_square", "char": f.characteristic}
    _bump(counts, "mv")
    T, K0, K1, L = generators.rand_triad(rng, min(max_vertices, 6))
    for q in range(3):
        if not cw.mv_exactness_check(T, K0, K1, L, q, f):
            return {"check": "mv", "char": f.characteristic, "q": q}
    lam, mu = generators.rand_composable_space_cospans(rng, min(max_vertices, 5))
    if d_cap is not None and not (
        cw.dimension_filter(lam, d_cap) and cw.dimension_filter(mu, d_cap)
    ):
        return None
    _bump(counts, "brown")
    for q in (0, 1):
        E = brown.BrownFunctor(f, q)
        rep = brown.verify_extension_functoriality(E, lam, mu)
        if not rep["passed"]:
            return {"check": "brown_functoriality", "char": f.characteristic, "q": q}
        rep = brown.verify_extension_dagger(E, lam)
        if not rep["passed"]:
            return {"check": "brown_dagger", "char": f.characteristic, "q": q}
    return None


def run(command: str, doc: Document, flags: dict) -> dict:
    start = time.monotonic()
    if command == "mv-check":
        outcome, value, ce = _run_mv(doc, flags)
    elif command == "verify":
        outcome, value, ce = _run_verify(doc, flags)
    elif command == "oracle":
        outcome, value, ce = _run_oracle(doc, flags)
    elif command == "random-suite":
        outcome, value, ce = _run_random_suite(doc, flags)
    elif command in COMMANDS:
        outcome, value, ce = _run_value(command, doc, flags)
    else:
        raise UnknownCommand(command)
    elapsed = int((time.monotonic() - start) * 1000)
    report = {
        "version": SCHEMA_VERSION,
        "command": command,
        "flags": {k: _flag_token(v) for k, v in flags.items() if v is not None},
        "inputs_digest": hashlib.sha256(doc.raw).hexdigest(),
        "outcome": outcome,
        "value": value,
        "counterexample": ce,
        "timing_ms": elapsed if os.environ.get("ABCOSP_TIMING") == "1" else 0,
    }
    return report


def _flag_token(v):
    if v == float("inf"):
        return "inf"
    return v


def _parse_d(s: str):
    if s == "inf":
        return float("inf")
    try:
        return int(s)
    except ValueError as e:
        raise ValidationError("--d takes an integer or 'inf'") from e


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="abcosp",
        description="exact cospan calculus over small fields, file in, report out",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--in", dest="infile", required=True, help="input JSON document")
    ap.add_argument("--q", type=int, default=None, help="homology degree")
    ap.add_argument("--d", type=str, default=None, help="dimension cap or 'inf'")
    ap.add_argument("--seed", type=int, default=None, help="suite seed")
    ap.add_argument("--out", type=str, default=None, help="also write report here")
    args = ap.parse_args(argv)
    try:
        doc = load(args.infile)
        flags = {
            "q": args.q,
            "d": None if args.d is None else _parse_d(args.d),
            "seed": args.seed,
        }
        report = run(args.command, doc, flags)
    except (ParseError, ValidationError, UnknownCommand) as e:
        print(f"abcosp: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as e:
        print(f"abcosp: {e}", file=sys.stderr)
        return 2
    text = dumps_report(report)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report["outcome"] in ("value", "pass") else 1


if __name__ == "__main__":
    raise SystemExit(main())
