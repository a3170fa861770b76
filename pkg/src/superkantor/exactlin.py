"""Exact rational scalars and dense linear algebra over Q.

Scalars are :class:`fractions.Fraction` values.  A subspace is stored by a
canonical basis: reduced echelon form taken from the *right*, i.e. the last
nonzero coordinate of every basis vector is 1 and no other basis vector has a
nonzero entry in that column.  This is the shape a kernel basis has when it is
read off the free variables of an RREF, so ``kernel_basis`` returns canonical
subspaces directly, and two subspaces are equal iff their bases coincide.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]

_SCALAR_RE = re.compile(r"-?\d+(/\d+)?")


def as_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"cannot use {x!r} as an exact scalar")
    return Fraction(x)


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; the input must already be in reduced form."""
    if not _SCALAR_RE.fullmatch(text):
        raise ValueError(f"malformed rational {text!r}")
    try:
        value = Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    if format_scalar(value) != text:
        raise ValueError(f"rational {text!r} is not in reduced form")
    return value


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [tuple(as_scalar(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                     for i in range(self.rows))


def _sparse_rows(rows: Iterable[Sequence]) -> list[dict[int, Fraction]]:
    out = []
    for r in rows:
        d = {j: as_scalar(x) for j, x in enumerate(r) if x}
        if d:
            out.append(d)
    return out


def rref_sparse(rows: Iterable[dict[int, Fraction]], ncols: int) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form of sparse rows ``{col: value}``.

    Returns the nonzero reduced rows (pivot entry 1) and their pivot columns,
    sorted by pivot.  Elimination is incremental so that very tall systems
    (many redundant equations) never hold more than ``rank`` rows.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {j: Fraction(v) for j, v in raw.items() if v}
        # reduce against existing pivots until stable
        while row:
            hit = next((c for c in sorted(row) if c in pivots), None)
            if hit is None:
                break
            factor = row[hit]
            for c, v in pivots[hit].items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        # back-substitute into existing pivot rows
        for q, prow in pivots.items():
            f = prow.get(p)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[p] = row
    order = sorted(pivots)
    return [pivots[p] for p in order], order


def _as_rows(m) -> tuple[list[dict[int, Fraction]], int]:
    if isinstance(m, Matrix):
        return _sparse_rows(m.to_rows()), m.cols
    raise TypeError("expected a Matrix")


def rank(m: Matrix) -> int:
    rows, ncols = _as_rows(m)
    return len(rref_sparse(rows, ncols)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim with its canonical (right-echelon) basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("dimension mismatch")
            vecs.append(v)
        return _canonical(_sparse_rows(vecs), ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(_unit(i, ambient_dim) for i in range(ambient_dim)))


def _unit(i: int, n: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def _canonical(rows: list[dict[int, Fraction]], n: int) -> Subspace:
    # echelonize with columns reversed, so pivots are last nonzero entries
    flipped = [{n - 1 - c: v for c, v in r.items()} for r in rows]
    red, _ = rref_sparse(flipped, n)
    basis = []
    for r in red:
        vec = [Fraction(0)] * n
        for c, v in r.items():
            vec[n - 1 - c] = v
        basis.append(tuple(vec))
    basis.sort(key=_last_nonzero)
    return Subspace(n, tuple(basis))


def _last_nonzero(v: Vector) -> int:
    return max(i for i, x in enumerate(v) if x)


def kernel_from_rows(rows: Iterable[dict[int, Fraction]], ncols: int) -> Subspace:
    """Null space of a sparse system given as ``{col: coeff}`` rows."""
    red, pivots = rref_sparse(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, p in zip(red, pivots):
            c = r.get(free)
            if c:
                vec[p] = -c
        basis.append(tuple(vec))
    # free-variable vectors are already in right-echelon canonical form
    return Subspace(ncols, tuple(basis))


def kernel_basis(m: Matrix) -> Subspace:
    rows, ncols = _as_rows(m)
    return kernel_from_rows(rows, ncols)


def subspace_contains(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise ValueError("dimension mismatch")
    residual = [as_scalar(x) for x in v]
    for b in s.basis:
        p = _last_nonzero(b)
        c = residual[p]
        if c:
            for i, x in enumerate(b):
                if x:
                    residual[i] -= c * x
    return not any(residual)


def subspaces_equal(s1: Subspace, s2: Subspace) -> bool:
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("dimension mismatch")
    return s1.basis == s2.basis


def is_subspace(s1: Subspace, s2: Subspace) -> bool:
    """True iff s1 is contained in s2."""
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("dimension mismatch")
    return all(subspace_contains(s2, b) for b in s1.basis)


def intersect_subspaces(s1: Subspace, s2: Subspace) -> Subspace:
    """Intersection via the kernel of [B1 | -B2]."""
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("dimension mismatch")
    n, d1, d2 = s1.ambient_dim, s1.dim, s2.dim
    if d1 == 0 or d2 == 0:
        return Subspace.zero(n)
    rows = []
    for i in range(n):
        row = {j: b[i] for j, b in enumerate(s1.basis) if b[i]}
        row.update({d1 + j: -b[i] for j, b in enumerate(s2.basis) if b[i]})
        if row:
            rows.append(row)
    ker = kernel_from_rows(rows, d1 + d2)
    vecs = []
    for coeffs in ker.basis:
        vecs.append(tuple(sum((c * b[i] for c, b in zip(coeffs[:d1], s1.basis) if c), Fraction(0))
                          for i in range(n)))
    return Subspace.span(vecs, n)
