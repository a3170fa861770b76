"""JSON algebra files.

::

    {"name": "G2",
     "basis": ["1", "xi1", "xi2", "xi1xi2"],
     "parity": [0, 1, 1, 0],
     "unit": "1",
     "products": {"xi1*xi2": {"xi1xi2": "1"}, ...},
     "bracket": {"xi1*xi1": {"1": "-1"}, ...},
     "metadata": {}}

Omitted products (and bracket values) are zero; an absent ``bracket`` key is
the zero bracket.  Coefficients are reduced rationals written ``"p"`` or
``"p/q"``.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Mapping

from .bracket import Bracket
from .exactlin import format_scalar, parse_scalar
from .superalg import SuperAlgebra

DEFAULT_ALGEBRA_CAP = 512


class AlgebraFileError(ValueError):
    """The file is not a valid algebra definition."""


def algebra_cap() -> int:
    return int(os.environ.get("KANTOR_DIM_CAP", DEFAULT_ALGEBRA_CAP))


def _table_to_json(A: SuperAlgebra, table: Mapping) -> dict:
    out = {}
    for (i, j) in sorted(table):
        row = table[(i, j)]
        out[f"{A.basis[i]}*{A.basis[j]}"] = {A.basis[k]: format_scalar(row[k]) for k in sorted(row)}
    return out


def _table_from_json(basis: list[str], data: Mapping, what: str) -> dict:
    index = {b: i for i, b in enumerate(basis)}
    table = {}
    if not isinstance(data, Mapping):
        raise AlgebraFileError(f"{what} must be an object")
    for key, row in data.items():
        parts = key.split("*")
        if len(parts) != 2:
            raise AlgebraFileError(f"{what} key {key!r} is not of the form 'a*b'")
        try:
            i, j = index[parts[0]], index[parts[1]]
        except KeyError as e:
            raise AlgebraFileError(f"{what} key {key!r} uses unknown label {e.args[0]!r}") from None
        if not isinstance(row, Mapping):
            raise AlgebraFileError(f"{what} value for {key!r} must be an object")
        clean = {}
        for label, coef in row.items():
            if label not in index:
                raise AlgebraFileError(f"{what} value for {key!r} uses unknown label {label!r}")
            try:
                clean[index[label]] = parse_scalar(str(coef))
            except ValueError as e:
                raise AlgebraFileError(f"{what} {key!r}: {e}") from None
        if (i, j) in table:
            raise AlgebraFileError(f"duplicate {what} key {key!r}")
        table[(i, j)] = clean
    return table


def to_json(A: SuperAlgebra, bracket: Bracket | None = None, metadata: Mapping | None = None) -> dict:
    doc = {"name": A.name, "basis": list(A.basis), "parity": list(A.parity)}
    if A.unit_index is not None:
        doc["unit"] = A.basis[A.unit_index]
    doc["products"] = _table_to_json(A, A.sc)
    meta = dict(A.metadata)
    if bracket is not None:
        if bracket.algebra is not A:
            raise ValueError("bracket is defined on another algebra")
        doc["bracket"] = _table_to_json(A, bracket.constants)
        if bracket.name:
            meta.setdefault("bracket_name", bracket.name)
    meta.update(metadata or {})
    doc["metadata"] = _jsonable(meta)
    return doc


def _jsonable(x):
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def dumps(A: SuperAlgebra, bracket: Bracket | None = None, metadata: Mapping | None = None) -> str:
    return json.dumps(to_json(A, bracket, metadata), indent=2, ensure_ascii=False) + "\n"


def from_json(doc: Mapping) -> tuple[SuperAlgebra, Bracket | None]:
    """Validate and build (algebra, bracket-or-None)."""
    if not isinstance(doc, Mapping):
        raise AlgebraFileError("top level must be an object")
    try:
        basis = doc["basis"]
        parity = doc["parity"]
    except KeyError as e:
        raise AlgebraFileError(f"missing key {e.args[0]!r}") from None
    if not isinstance(basis, list) or not all(isinstance(b, str) and b for b in basis):
        raise AlgebraFileError("basis must be a list of non-empty strings")
    if any("*" in b for b in basis):
        raise AlgebraFileError("basis labels may not contain '*'")
    if len(set(basis)) != len(basis):
        raise AlgebraFileError("basis labels must be distinct")
    if len(basis) > algebra_cap():
        raise AlgebraFileError(f"dimension {len(basis)} exceeds the cap {algebra_cap()}")
    if not isinstance(parity, list) or len(parity) != len(basis) or any(p not in (0, 1) for p in parity):
        raise AlgebraFileError("parity must list 0 or 1 for every basis element")
    products = _table_from_json(basis, doc.get("products", {}), "product")
    unit = doc.get("unit")
    if unit is not None and unit not in basis:
        raise AlgebraFileError(f"unit label {unit!r} is not a basis label")
    meta = doc.get("metadata", {})
    if not isinstance(meta, Mapping):
        raise AlgebraFileError("metadata must be an object")
    try:
        A = SuperAlgebra(basis, parity, products, str(doc.get("name", "")),
                         None if unit is None else basis.index(unit), meta)
    except ValueError as e:
        raise AlgebraFileError(str(e)) from None
    bracket = None
    if "bracket" in doc:
        consts = _table_from_json(basis, doc["bracket"], "bracket")
        try:
            # superskewness is a checkable property, not a load-time requirement
            bracket = Bracket(A, consts, name=str(meta.get("bracket_name", "bracket")),
                              validate=False)
        except ValueError as e:
            raise AlgebraFileError(str(e)) from None
    return A, bracket


def loads(text: str) -> tuple[SuperAlgebra, Bracket | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"invalid JSON: {e}") from None
    return from_json(doc)


def load(path: str | os.PathLike) -> tuple[SuperAlgebra, Bracket | None]:
    return loads(Path(path).read_text(encoding="utf-8"))


def content_hash(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode("utf-8")
    return "sha256:" + hashlib.sha256(text).hexdigest()
