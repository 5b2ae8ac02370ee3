"""On-disk formats: algebra files (.alg), witness files (.wit) and
deformation-family files (.defo).  All three are JSON documents with a
strict field grammar; unknown fields are rejected and serialization is
deterministic (sorted keys), so parse -> serialize -> parse is the
identity on every fixture.

Scalars are exact: either a rational string "p/q" or a Laurent map
{"t^k": "p/q"} with integer k (possibly negative).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import StructureTensor
from .cohomology import Cochain
from .deformation import DeformationFamily
from .degeneration import Witness
from .linalg import Matrix
from .rings import LAURENT, QQ, LaurentPoly, RATFUNC, RationalFunction


class ParseError(ValueError):
    """Malformed document; carries a location string for diagnostics."""

    def __init__(self, where, message):
        self.where = where
        super().__init__(f"{where}: {message}")


def _check_fields(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise ParseError(where, "expected an object")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ParseError(where, f"unknown fields {sorted(unknown)}")
    missing = set(required) - set(obj)
    if missing:
        raise ParseError(where, f"missing fields {sorted(missing)}")


def _parse_rational(s, where):
    if not isinstance(s, str):
        raise ParseError(where, f"scalar must be a string, got {type(s).__name__}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(where, f"bad rational {s!r}: {e}") from None


def _parse_laurent(obj, where) -> LaurentPoly:
    support = {}
    for key, val in obj.items():
        if not (isinstance(key, str) and key.startswith("t^")):
            raise ParseError(where, f"Laurent keys look like 't^k', got {key!r}")
        try:
            e = int(key[2:])
        except ValueError:
            raise ParseError(where, f"bad exponent in {key!r}") from None
        support[e] = _parse_rational(val, f"{where}[{key}]")
    return LaurentPoly(support)


def _parse_scalar(obj, where):
    """(value, is_laurent)."""
    if isinstance(obj, str):
        return _parse_rational(obj, where), False
    if isinstance(obj, dict):
        return _parse_laurent(obj, where), True
    raise ParseError(where, "scalar must be a rational string or a Laurent map")


def _laurent_doc(p: LaurentPoly):
    return {f"t^{e}": _rat_str(c) for e, c in sorted(p.support.items())}


def _rat_str(q: Fraction):
    return str(q)


# ---------------------------------------------------------------------------
# Algebra files
# ---------------------------------------------------------------------------

_ALGEBRA_FIELDS = ("kind", "dim", "basis", "degrees", "unit", "entries")


def algebra_from_doc(doc) -> StructureTensor:
    _check_fields(doc, _ALGEBRA_FIELDS, ("kind", "dim", "entries"), "algebra")
    kind = doc["kind"]
    if kind not in ("lie", "associative", "graded_associative"):
        raise ParseError("algebra.kind", f"unknown kind {kind!r}")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("algebra.dim", "dim must be a positive integer")
    basis = doc.get("basis")
    if basis is not None and (
        not isinstance(basis, list) or len(basis) != dim
        or not all(isinstance(b, str) for b in basis)
    ):
        raise ParseError("algebra.basis", "basis must list dim names")
    degrees = doc.get("degrees")
    if kind == "graded_associative":
        if degrees is None:
            raise ParseError("algebra.degrees", "graded algebras need degrees")
        if not isinstance(degrees, list) or len(degrees) != dim:
            raise ParseError("algebra.degrees", "degrees must list dim integers")
    elif degrees is not None:
        raise ParseError("algebra.degrees", "degrees only apply to graded kind")
    unit = doc.get("unit")
    if unit is not None:
        if kind == "lie":
            raise ParseError("algebra.unit", "lie algebras have no unit")
        if not isinstance(unit, int) or not (0 <= unit < dim):
            raise ParseError("algebra.unit", "unit must be a basis index")
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise ParseError("algebra.entries", "entries must be a list")
    sparse = {}
    saw_laurent = False
    seen = set()
    for pos, entry in enumerate(entries):
        where = f"algebra.entries[{pos}]"
        _check_fields(entry, ("i", "j", "coeffs"), ("i", "j", "coeffs"), where)
        i, j = entry["i"], entry["j"]
        for name, v in (("i", i), ("j", j)):
            if not isinstance(v, int) or not (0 <= v < dim):
                raise ParseError(f"{where}.{name}", "index out of range")
        if kind == "lie" and i >= j:
            raise ParseError(where, "lie entries must have i < j")
        if (i, j) in seen:
            raise ParseError(where, f"duplicate entry for ({i},{j})")
        seen.add((i, j))
        if not isinstance(entry["coeffs"], dict):
            raise ParseError(f"{where}.coeffs", "coeffs must be a map")
        vec = {}
        for k_str, sval in entry["coeffs"].items():
            try:
                k = int(k_str)
            except ValueError:
                raise ParseError(
                    f"{where}.coeffs", f"bad basis index {k_str!r}"
                ) from None
            if not (0 <= k < dim):
                raise ParseError(f"{where}.coeffs", f"index {k} out of range")
            val, lau = _parse_scalar(sval, f"{where}.coeffs[{k_str}]")
            saw_laurent = saw_laurent or lau
            vec[k] = val
        sparse[(i, j)] = vec
    ring = LAURENT if saw_laurent else QQ
    if saw_laurent:
        sparse = {
            key: {k: ring.coerce(v) for k, v in vec.items()}
            for key, vec in sparse.items()
        }
    n = dim
    coeffs = [[[ring.zero] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in sparse.items():
        for k, v in vec.items():
            coeffs[i][j][k] = v
            if kind == "lie":
                coeffs[j][i][k] = -v
    try:
        return StructureTensor(
            kind, dim, coeffs, ring=ring, degrees=degrees, unit_index=unit
        )
    except ValueError as e:
        raise ParseError("algebra", str(e)) from None


def algebra_to_doc(t: StructureTensor, basis=None):
    n = t.dim
    entries = []
    pairs = (
        [(i, j) for i in range(n) for j in range(i + 1, n)]
        if t.kind == "lie"
        else [(i, j) for i in range(n) for j in range(n)]
    )
    for (i, j) in pairs:
        vec = t.product(i, j)
        coeffs = {}
        for k, v in enumerate(vec):
            if isinstance(v, LaurentPoly):
                if not v.is_zero():
                    coeffs[str(k)] = _laurent_doc(v)
            elif v != 0:
                coeffs[str(k)] = _rat_str(v)
        if coeffs:
            entries.append({"i": i, "j": j, "coeffs": coeffs})
    doc = {"kind": t.kind, "dim": n, "entries": entries}
    if basis is not None:
        doc["basis"] = list(basis)
    if t.degrees is not None and t.kind == "graded_associative":
        doc["degrees"] = list(t.degrees)
    if t.unit_index is not None:
        doc["unit"] = t.unit_index
    return doc


# ---------------------------------------------------------------------------
# Witness files
# ---------------------------------------------------------------------------

def witness_from_doc(doc) -> Witness:
    _check_fields(doc, ("dim", "matrix"), ("dim", "matrix"), "witness")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("witness.dim", "dim must be a positive integer")
    m = doc["matrix"]
    if not isinstance(m, list) or len(m) != dim:
        raise ParseError("witness.matrix", f"expected {dim} rows")
    rows = []
    for i, row in enumerate(m):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"witness.matrix[{i}]", f"expected {dim} entries")
        out = []
        for j, cell in enumerate(row):
            where = f"witness.matrix[{i}][{j}]"
            _check_fields(cell, ("num", "den"), ("num",), where)
            num = _parse_laurent(cell["num"], f"{where}.num")
            den = _parse_laurent(cell.get("den", {"t^0": "1"}), f"{where}.den")
            if den.is_zero():
                raise ParseError(f"{where}.den", "zero denominator")
            out.append(RationalFunction(num, den))
        rows.append(out)
    try:
        return Witness(Matrix(RATFUNC, rows))
    except ValueError as e:
        raise ParseError("witness", str(e)) from None


def witness_to_doc(w: Witness):
    rows = []
    for i in range(w.dim):
        row = []
        for j in range(w.dim):
            f = w.matrix.rows[i][j]
            cell = {"num": _laurent_doc(f.num)}
            if f.den != LaurentPoly.constant(1):
                cell["den"] = _laurent_doc(f.den)
            row.append(cell)
        rows.append(row)
    return {"dim": w.dim, "matrix": rows}


# ---------------------------------------------------------------------------
# Deformation-family files
# ---------------------------------------------------------------------------

def deformation_from_doc(doc) -> DeformationFamily:
    _check_fields(doc, ("base", "order", "maps"), ("base", "order", "maps"), "deformation")
    base = algebra_from_doc(doc["base"])
    order = doc["order"]
    if not isinstance(order, int) or order < 1:
        raise ParseError("deformation.order", "order must be a positive integer")
    maps_doc = doc["maps"]
    if not isinstance(maps_doc, dict):
        raise ParseError("deformation.maps", "maps must be an object keyed by t-power")
    kind = "lie" if base.kind == "lie" else base.kind
    per_degree = {}
    for key, entries in maps_doc.items():
        where = f"deformation.maps[{key}]"
        try:
            dpow = int(key)
        except ValueError:
            raise ParseError(where, "keys are t-exponents") from None
        if not (1 <= dpow <= order):
            raise ParseError(where, f"exponent must lie in 1..{order}")
        if not isinstance(entries, list):
            raise ParseError(where, "expected a list of entries")
        vals = {}
        for pos, entry in enumerate(entries):
            ew = f"{where}[{pos}]"
            _check_fields(entry, ("i", "j", "coeffs"), ("i", "j", "coeffs"), ew)
            i, j = entry["i"], entry["j"]
            vec = [Fraction(0)] * base.dim
            for k_str, sval in entry["coeffs"].items():
                k = int(k_str)
                val, lau = _parse_scalar(sval, f"{ew}.coeffs[{k_str}]")
                if lau:
                    raise ParseError(
                        f"{ew}.coeffs", "deformation maps take rational scalars"
                    )
                vec[k] = val
            vals[(i, j)] = vec
        per_degree[dpow] = Cochain(kind, base.dim, 2, vals)
    zero = Cochain(kind, base.dim, 2, {})
    maps = [per_degree.get(dd, zero) for dd in range(1, order + 1)]
    try:
        return DeformationFamily(base, maps, order)
    except ValueError as e:
        raise ParseError("deformation", str(e)) from None


def deformation_to_doc(d: DeformationFamily):
    maps_doc = {}
    for idx, f in enumerate(d.maps, start=1):
        entries = []
        for key in sorted(f.values):
            vec = f.values[key]
            coeffs = {
                str(k): _rat_str(v) for k, v in enumerate(vec) if v != 0
            }
            entries.append({"i": key[0], "j": key[1], "coeffs": coeffs})
        if entries:
            maps_doc[str(idx)] = entries
    return {
        "base": algebra_to_doc(d.base),
        "order": d.order,
        "maps": maps_doc,
    }


# ---------------------------------------------------------------------------
# File IO
# ---------------------------------------------------------------------------

def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(str(path), f"cannot read: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(str(path), f"invalid JSON: {e}") from None


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_algebra(path) -> StructureTensor:
    return algebra_from_doc(_load_json(path))


def save_algebra(path, t: StructureTensor, basis=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(algebra_to_doc(t, basis)))


def load_witness(path) -> Witness:
    return witness_from_doc(_load_json(path))


def save_witness(path, w: Witness):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(witness_to_doc(w)))


def load_deformation(path) -> DeformationFamily:
    return deformation_from_doc(_load_json(path))


def save_deformation(path, d: DeformationFamily):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(deformation_to_doc(d)))
