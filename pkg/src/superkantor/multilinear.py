"""Vectorized exact evaluation of multilinear expressions on basis tuples.

An identity such as ``{{f, h} g, k} - {f, h}{g, k}`` is multilinear in its
variables, so it holds on the whole algebra iff it holds whenever every
variable is a basis vector.  :class:`Evaluator` computes the value of an
expression at *all* basis tuples at once and stores the result sparsely as a
:class:`Family`: parallel arrays of (tuple code, output basis index, value).

Values are ``int64`` while every coefficient is an integer and no partial
result can overflow; otherwise they are promoted to Python ``int`` or
``Fraction`` objects.  Either way the arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

_INT_LIMIT = 2 ** 62


# --------------------------------------------------------------------- exprs

class Expr:
    def __add__(self, other):
        return _as_sum(self).plus(_as_sum(other))

    def __sub__(self, other):
        return _as_sum(self).plus(_as_sum(other).scaled(-1))

    def __neg__(self):
        return _as_sum(self).scaled(-1)

    def __rmul__(self, c):
        return _as_sum(self).scaled(c)


@dataclass(frozen=True)
class Var(Expr):
    slot: int


@dataclass(frozen=True)
class Const(Expr):
    name: str


@dataclass(frozen=True)
class Op(Expr):
    op: str
    left: Expr
    right: Expr


# a sign is an exponent of -1 computed from the parities of the slots
SignFn = Callable[[Sequence[np.ndarray]], np.ndarray]


@dataclass(frozen=True)
class Term:
    coef: int
    expr: Expr
    sign: SignFn | None = None

    def with_sign(self, sign: SignFn) -> "Term":
        if self.sign is None:
            return Term(self.coef, self.expr, sign)
        old = self.sign
        return Term(self.coef, self.expr, lambda p: old(p) + sign(p))


@dataclass(frozen=True)
class LinComb(Expr):
    terms: tuple[Term, ...]

    def plus(self, other: "LinComb") -> "LinComb":
        return LinComb(self.terms + other.terms)

    def scaled(self, c: int) -> "LinComb":
        return LinComb(tuple(Term(t.coef * c, t.expr, t.sign) for t in self.terms))

    def signed(self, sign: SignFn) -> "LinComb":
        """Multiply every term by (-1)**sign(parities)."""
        return LinComb(tuple(t.with_sign(sign) for t in self.terms))


def _as_sum(e) -> LinComb:
    if isinstance(e, LinComb):
        return e
    if isinstance(e, Expr):
        return LinComb((Term(1, e),))
    raise TypeError(f"cannot combine {e!r}")


def op(name: str) -> Callable[[Expr, Expr], Op]:
    return lambda a, b: Op(name, a, b)


def variables(e: Expr) -> frozenset[int]:
    if isinstance(e, Var):
        return frozenset((e.slot,))
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, Op):
        return variables(e.left) | variables(e.right)
    if isinstance(e, LinComb):
        return frozenset().union(*(variables(t.expr) for t in e.terms))
    raise TypeError(e)


# -------------------------------------------------------------------- tables

class Table:
    """Sparse bilinear map on basis vectors, (i, j) -> sum_k c_ijk e_k."""

    def __init__(self, dim: int, entries: Mapping[tuple[int, int], Mapping[int, Fraction]]):
        self.dim = dim
        items = sorted((i, j, k, Fraction(c)) for (i, j), row in entries.items()
                       for k, c in row.items() if c)
        self.left = np.array([t[0] for t in items], dtype=np.int64)
        self.right = np.array([t[1] for t in items], dtype=np.int64)
        self.out = np.array([t[2] for t in items], dtype=np.int64)
        self.coef = _values([t[3] for t in items])
        counts = np.bincount(self.left, minlength=dim) if items else np.zeros(dim, np.int64)
        self.row_start = np.concatenate([[0], np.cumsum(counts)[:-1]]).astype(np.int64)
        self.row_count = counts.astype(np.int64)


def _values(xs: Sequence[Fraction]) -> np.ndarray:
    if all(x.denominator == 1 and abs(x.numerator) < 2 ** 31 for x in xs):
        return np.array([int(x) for x in xs], dtype=np.int64)
    return np.array(list(xs), dtype=object)


def _maxabs(v: np.ndarray) -> int:
    if len(v) == 0:
        return 0
    if v.dtype == object:
        return _INT_LIMIT
    return int(np.abs(v).max())


def _promote(v: np.ndarray) -> np.ndarray:
    return v if v.dtype == object else v.astype(object)


# ------------------------------------------------------------------ families

@dataclass
class Family:
    """Values of an expression at every basis tuple of its variables."""

    slots: frozenset
    code: np.ndarray
    out: np.ndarray
    val: np.ndarray

    def __len__(self):
        return len(self.code)


def _expand(counts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For each i repeated counts[i] times, return (i, offset within block)."""
    total = int(counts.sum())
    owner = np.repeat(np.arange(len(counts), dtype=np.int64), counts)
    starts = np.cumsum(counts) - counts
    offset = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
    return owner, offset


@dataclass
class Evaluator:
    """Evaluate expressions over all basis tuples of an algebra of size ``dim``.

    ``tables`` maps operation names to :class:`Table`; ``constants`` maps
    constant names to coordinate dictionaries (e.g. the unit element).
    ``domains`` optionally restricts a slot to a subset of basis indices.
    """

    dim: int
    parity: Sequence[int]
    tables: Mapping[str, Table]
    constants: Mapping[str, Mapping[int, Fraction]] = field(default_factory=dict)
    domains: Mapping[int, Sequence[int]] = field(default_factory=dict)

    def __post_init__(self):
        self._memo: dict[Expr, Family] = {}
        self._par = np.asarray(self.parity, dtype=np.int64)

    def family(self, e: Expr) -> Family:
        hit = self._memo.get(e)
        if hit is not None:
            return hit
        if isinstance(e, Var):
            idx = np.asarray(self.domains.get(e.slot, range(self.dim)), dtype=np.int64)
            fam = Family(frozenset((e.slot,)), idx * self.dim ** e.slot, idx.copy(),
                         np.ones(len(idx), dtype=np.int64))
        elif isinstance(e, Const):
            coords = {k: Fraction(v) for k, v in self.constants[e.name].items() if v}
            ks = sorted(coords)
            fam = Family(frozenset(), np.zeros(len(ks), np.int64), np.array(ks, dtype=np.int64),
                         _values([coords[k] for k in ks]))
        elif isinstance(e, Op):
            fam = self._combine(self.tables[e.op], self.family(e.left), self.family(e.right))
        elif isinstance(e, LinComb):
            fam = self.residual(e)
        else:
            raise TypeError(e)
        self._memo[e] = fam
        return fam

    def _combine(self, t: Table, a: Family, b: Family) -> Family:
        if a.slots & b.slots:
            raise ValueError("operands share a variable; expression is not multilinear")
        slots = a.slots | b.slots
        # pair every entry of a with the table rows whose left index is a.out
        ea, off = _expand(t.row_count[a.out])
        ti = t.row_start[a.out[ea]] + off
        # then with every entry of b whose out equals the table's right index
        order = np.argsort(b.out, kind="stable")
        bcount = np.bincount(b.out, minlength=self.dim) if len(b) else np.zeros(self.dim, np.int64)
        bstart = np.cumsum(bcount) - bcount
        pair, off2 = _expand(bcount[t.right[ti]])
        ea, ti = ea[pair], ti[pair]
        eb = order[bstart[t.right[ti]] + off2]
        va, vb, vt = a.val[ea], b.val[eb], t.coef[ti]
        if _maxabs(a.val) * _maxabs(b.val) * _maxabs(t.coef) >= _INT_LIMIT:
            va = _promote(va)
        val = va * vb * vt
        fam = Family(slots, a.code[ea] + b.code[eb], t.out[ti], val)
        return _aggregate(fam, self.dim)

    def slot_parities(self, fam: Family, nslots: int) -> list[np.ndarray]:
        return [self._par[(fam.code // self.dim ** s) % self.dim] for s in range(nslots)]

    def residual(self, e: Expr) -> Family:
        """Evaluate a signed linear combination of expressions, aggregated."""
        lc = _as_sum(e)
        allslots = variables(lc)
        nslots = max(allslots) + 1 if allslots else 0
        parts = []
        for term in lc.terms:
            fam = self.family(term.expr)
            if variables(term.expr) != allslots:
                raise ValueError("every term must involve the same variables")
            val = fam.val
            if term.coef != 1:
                val = val * term.coef
            if term.sign is not None:
                expo = term.sign(self.slot_parities(fam, nslots)) % 2
                val = np.where(expo == 1, -val, val) if len(val) else val
            parts.append(Family(fam.slots, fam.code, fam.out, val))
        if not parts:
            return Family(frozenset(), np.zeros(0, np.int64), np.zeros(0, np.int64),
                          np.zeros(0, np.int64))
        vals = [p.val for p in parts]
        if any(v.dtype == object for v in vals):
            vals = [_promote(v) for v in vals]
        fam = Family(frozenset(allslots), np.concatenate([p.code for p in parts]),
                     np.concatenate([p.out for p in parts]), np.concatenate(vals))
        return _aggregate(fam, self.dim)

    def decode(self, code: int, nslots: int) -> tuple[int, ...]:
        return tuple((int(code) // self.dim ** s) % self.dim for s in range(nslots))


def _aggregate(fam: Family, dim: int) -> Family:
    """Sum duplicate (code, out) entries and drop zeros."""
    if len(fam) == 0:
        return fam
    val = fam.val
    if val.dtype != object and _maxabs(val) * len(val) >= _INT_LIMIT:
        val = _promote(val)
    key = fam.code * dim + fam.out
    order = np.argsort(key, kind="stable")
    key = key[order]
    val = val[order]
    starts = np.flatnonzero(np.concatenate([[True], key[1:] != key[:-1]]))
    sums = np.add.reduceat(val, starts)
    ukey = key[starts]
    keep = sums != 0
    if val.dtype == object:
        keep = keep.astype(bool)
    ukey, sums = ukey[keep], sums[keep]
    return Family(fam.slots, ukey // dim, ukey % dim, sums)


def failing_tuples(ev: Evaluator, fam: Family, nslots: int) -> dict[tuple[int, ...], dict[int, Fraction]]:
    """Group a residual family by argument tuple (only nonzero entries exist)."""
    out: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for c, o, v in zip(fam.code.tolist(), fam.out.tolist(), fam.val.tolist()):
        out.setdefault(ev.decode(c, nslots), {})[o] = Fraction(v)
    return out


def count_failing(fam: Family) -> int:
    return len(np.unique(fam.code)) if len(fam) else 0
