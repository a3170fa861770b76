"""Finite-dimensional superalgebras given by structure constants.

A :class:`SuperAlgebra` is a basis of labelled homogeneous vectors with a
parity each, and a sparse table ``(i, j) -> {k: c}`` of structure
constants.  All structural checks iterate over basis tuples: the identities
involved are multilinear once parities are fixed, so basis tuples decide them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .exactlin import Subspace, as_scalar, kernel_from_rows, subspace_contains
from .multilinear import Evaluator, Table, Var, count_failing, failing_tuples, op

MAX_WITNESSES = 16
MIXED = "mixed"
ZERO = "zero"


class PreconditionError(ValueError):
    """A checker or construction was called outside its hypotheses."""


class SuperAlgebra:
    def __init__(self, basis: Sequence[str], parity: Sequence[int],
                 products: Mapping[tuple[int, int], Mapping[int, object]],
                 name: str = "", unit: int | None = None,
                 metadata: Mapping | None = None):
        basis = tuple(str(b) for b in basis)
        if len(set(basis)) != len(basis):
            raise ValueError("basis labels must be distinct")
        parity = tuple(int(p) for p in parity)
        if len(parity) != len(basis) or any(p not in (0, 1) for p in parity):
            raise ValueError("parity must be a 0/1 entry per basis element")
        dim = len(basis)
        sc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), row in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"product index ({i}, {j}) out of range")
            clean = {}
            for k, c in row.items():
                if not 0 <= k < dim:
                    raise ValueError(f"product target {k} out of range")
                c = as_scalar(c)
                if c:
                    if parity[k] != (parity[i] + parity[j]) % 2:
                        raise ValueError(
                            f"grading violated: {basis[i]}*{basis[j]} has a {basis[k]} component")
                    clean[k] = c
            if clean:
                sc[(i, j)] = clean
        self.name = name
        self.basis = basis
        self.parity = parity
        self.sc = MappingProxyType({key: MappingProxyType(v) for key, v in sc.items()})
        self.metadata = dict(metadata or {})
        self.unit_index = unit
        if unit is not None:
            for v in range(dim):
                if self.sc.get((unit, v), {}) != {v: 1} or self.sc.get((v, unit), {}) != {v: 1}:
                    raise ValueError(f"{basis[unit]} is not a two-sided unit")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"SuperAlgebra({self.name!r}, dim={self.dim})"

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            return label
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def product(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self.sc.get((i, j), {})

    @cached_property
    def table(self) -> Table:
        return Table(self.dim, self.sc)

    def evaluator(self, **kw) -> Evaluator:
        return Evaluator(self.dim, self.parity, {"mul": self.table}, **kw)

    @property
    def even_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 0]

    @property
    def odd_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 1]

    # element constructors
    def element(self, coords: Iterable) -> "Element":
        return Element(self, tuple(as_scalar(c) for c in coords))

    def basis_element(self, label: str | int) -> "Element":
        i = self.index(label)
        return Element(self, tuple(Fraction(int(k == i)) for k in range(self.dim)))

    def from_dict(self, coords: Mapping) -> "Element":
        v = [Fraction(0)] * self.dim
        for k, c in coords.items():
            v[self.index(k)] += as_scalar(c)
        return Element(self, tuple(v))

    def zero(self) -> "Element":
        return Element(self, (Fraction(0),) * self.dim)

    @property
    def unit(self) -> "Element | None":
        if self.unit_index is None:
            return None
        return self.basis_element(self.unit_index)

    def with_name(self, name: str) -> "SuperAlgebra":
        return SuperAlgebra(self.basis, self.parity, self.sc, name, self.unit_index, self.metadata)


@dataclass(frozen=True, eq=False)
class Element:
    algebra: SuperAlgebra
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError("coordinate vector has the wrong length")

    def _check(self, other: "Element"):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __rmul__(self, c) -> "Element":
        c = as_scalar(c)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.__rmul__(other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and other.algebra is self.algebra
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)

    def support(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coords) if c}

    def to_dict(self) -> dict[str, str]:
        from .exactlin import format_scalar
        return {self.algebra.basis[i]: format_scalar(c) for i, c in self.support().items()}

    def __repr__(self):
        terms = [f"{c}*{self.algebra.basis[i]}" for i, c in self.support().items()]
        return " + ".join(terms) if terms else "0"


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    A = a.algebra
    out = [Fraction(0)] * A.dim
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in enumerate(b.coords):
            if not y:
                continue
            for k, c in A.product(i, j).items():
                out[k] += x * y * c
    return Element(A, tuple(out))


def parity_of(e: Element) -> int | str:
    """0 or 1 for homogeneous elements, ``"zero"`` or ``"mixed"`` otherwise."""
    pars = {e.algebra.parity[i] for i in e.support()}
    if not pars:
        return ZERO
    if len(pars) == 2:
        return MIXED
    return pars.pop()


def homogeneous_parts(e: Element) -> tuple[Element, Element]:
    A = e.algebra
    even = tuple(c if A.parity[i] == 0 else Fraction(0) for i, c in enumerate(e.coords))
    odd = tuple(c if A.parity[i] == 1 else Fraction(0) for i, c in enumerate(e.coords))
    return Element(A, even), Element(A, odd)


def require_homogeneous(*elements: Element) -> list[int]:
    """Parities of the arguments; mixed elements are rejected, zero counts as even."""
    out = []
    for e in elements:
        p = parity_of(e)
        if p == MIXED:
            raise PreconditionError("element is not homogeneous; split it with homogeneous_parts")
        out.append(0 if p == ZERO else p)
    return out


# --------------------------------------------------------------- reports

@dataclass(frozen=True)
class Witness:
    identity: str
    arguments: tuple[int, ...]
    residual: Element

    def describe(self) -> dict:
        A = self.residual.algebra
        return {"identity": self.identity,
                "arguments": [A.basis[i] if i < A.dim else i for i in self.arguments],
                "residual": self.residual.to_dict()}


@dataclass
class CheckReport:
    """Outcome of a check: per-identity failure counts plus sample witnesses."""

    name: str
    failures: dict[str, int] = field(default_factory=dict)
    witnesses: list[Witness] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not any(self.failures.values())

    def __bool__(self):
        return self.verdict

    @property
    def identities(self) -> dict[str, bool]:
        return {k: v == 0 for k, v in self.failures.items()}

    def holds(self, identity: str) -> bool:
        return self.failures[identity] == 0

    def merge(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.name, {**self.failures, **other.failures},
                           self.witnesses + other.witnesses, self.notes + other.notes)

    def to_json(self) -> dict:
        return {"check": self.name, "verdict": self.verdict,
                "identities": {k: {"holds": v == 0, "failing_tuples": v}
                               for k, v in self.failures.items()},
                "witnesses": [w.describe() for w in self.witnesses],
                "truncated": {k: max(0, v - sum(w.identity == k for w in self.witnesses))
                              for k, v in self.failures.items()},
                "notes": list(self.notes)}


def run_identities(name: str, algebra: SuperAlgebra, ev: Evaluator, identities: Mapping,
                   max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """Evaluate named residual expressions and collect failing basis tuples.

    ``identities`` maps an identity name to ``(nslots, residual_expr)``;
    the identity holds iff the residual vanishes at every basis tuple.
    """
    report = CheckReport(name)
    for ident, (nslots, expr) in identities.items():
        fam = ev.residual(expr)
        report.failures[ident] = count_failing(fam)
        if report.failures[ident]:
            bad = failing_tuples(ev, fam, nslots)
            for args in sorted(bad)[:max_witnesses]:
                report.witnesses.append(Witness(ident, args, algebra.from_dict(bad[args])))
    return report


# --------------------------------------------------------------- predicates

def _tuples(A: SuperAlgebra, n: int):
    return itertools.product(range(A.dim), repeat=n)


def is_supercommutative(A: SuperAlgebra, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    x, y = Var(0), Var(1)
    mul = op("mul")
    swap = lambda p: p[0] * p[1]
    expr = mul(x, y) - (1 * mul(y, x)).signed(swap)
    return run_identities("supercommutative", A, A.evaluator(), {"supercommutativity": (2, expr)},
                          max_witnesses)


def is_associative(A: SuperAlgebra, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    x, y, z = Var(0), Var(1), Var(2)
    mul = op("mul")
    expr = mul(mul(x, y), z) - mul(x, mul(y, z))
    return run_identities("associative", A, A.evaluator(), {"associativity": (3, expr)},
                          max_witnesses)


def is_commutative(A: SuperAlgebra, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    x, y = Var(0), Var(1)
    mul = op("mul")
    return run_identities("commutative", A, A.evaluator(),
                          {"commutativity": (2, mul(x, y) - mul(y, x))}, max_witnesses)


def find_unit(A: SuperAlgebra) -> Element | None:
    """The two-sided unit, found by solving e*b_k = b_k = b_k*e as a linear system."""
    rows = []
    n = A.dim
    for k in range(n):
        for side in (0, 1):
            eqs: dict[int, dict[int, Fraction]] = {}
            for m in range(n):
                prod = A.product(m, k) if side == 0 else A.product(k, m)
                for o, c in prod.items():
                    eqs.setdefault(o, {})[m] = eqs.get(o, {}).get(m, 0) + c
            for o in range(n):
                row = {m: c for m, c in eqs.get(o, {}).items() if c}
                row[n] = Fraction(-int(o == k))  # inhomogeneous column
                rows.append({c: v for c, v in row.items() if v})
    ker = kernel_from_rows(rows, n + 1)
    sols = [v for v in ker.basis if v[n]]
    if not sols:
        return None
    # canonical basis has last coordinate 1 on exactly one vector
    assert len(sols) == 1
    e = sols[0]
    if ker.dim > 1:
        # a nonzero homogeneous solution would make the unit non-unique; impossible
        raise AssertionError("unit equations have a non-unique solution")
    return A.element(e[:n])


def left_multiplication(a: Element) -> list[list[Fraction]]:
    """Matrix (row = output coordinate) of b -> a*b."""
    A = a.algebra
    cols = [multiply(a, A.basis_element(j)).coords for j in range(A.dim)]
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


def check_subspace_ideal_invariant(A: SuperAlgebra, br, B: Subspace,
                                   max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """Is B a two-sided ideal of A with {A, B} + {B, A} contained in B?"""
    from .bracket import bracket_eval
    if B.ambient_dim != A.dim:
        raise ValueError("dimension mismatch")
    if br is not None and br.algebra is not A:
        raise ValueError("bracket lives on another algebra")
    report = CheckReport("ideal_invariant",
                         {"left_ideal": 0, "right_ideal": 0, "bracket_left": 0, "bracket_right": 0})
    for a_idx in range(A.dim):
        a = A.basis_element(a_idx)
        for b_idx, vec in enumerate(B.basis):
            b = A.element(vec)
            checks = [("left_ideal", multiply(a, b)), ("right_ideal", multiply(b, a))]
            if br is not None:
                checks += [("bracket_left", bracket_eval(br, a, b)),
                           ("bracket_right", bracket_eval(br, b, a))]
            for ident, value in checks:
                if not subspace_contains(B, value.coords):
                    report.failures[ident] += 1
                    if sum(w.identity == ident for w in report.witnesses) < max_witnesses:
                        report.witnesses.append(Witness(ident, (a_idx, b_idx), value))
    return report


# ------------------------------------------------------------ constructors

def zero_algebra(dim: int, parity: Sequence[int] | None = None, name: str = "") -> SuperAlgebra:
    parity = list(parity) if parity is not None else [0] * dim
    return SuperAlgebra([f"e{i}" for i in range(1, dim + 1)], parity, {},
                        name or f"zero{dim}")


def ground_field() -> SuperAlgebra:
    return SuperAlgebra(["1"], [0], {(0, 0): {0: 1}}, "Q", unit=0)


def truncated_polynomials(k: int, var: str = "t") -> SuperAlgebra:
    """Q[t]/(t^k) with basis 1, t, t2, ..., all even."""
    if k < 1:
        raise ValueError("k must be at least 1")
    labels = ["1"] + [var if d == 1 else f"{var}{d}" for d in range(1, k)]
    sc = {(a, b): {a + b: 1} for a in range(k) for b in range(k) if a + b < k}
    return SuperAlgebra(labels, [0] * k, sc, f"Q[{var}]/({var}^{k})", unit=0,
                        metadata={"generator": "truncpoly", "k": k})


def _poly_text(coeffs, var):
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if not c:
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}" if mag.denominator == 1 else f"({mag}){mono}")
        sign = "-" if c < 0 else "+"
        terms.append(body if not terms and c > 0 else (f"-{body}" if not terms else f"{sign} {body}"))
    return " ".join(terms)


def simple_extension(min_poly: Sequence, var: str = "t") -> SuperAlgebra:
    """Q[t]/(f) for a monic f given by coefficients [c0, c1, ..., 1] (low to high)."""
    coeffs = [as_scalar(c) for c in min_poly]
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    # reduce t^m for m < 2n-1 to the basis 1..t^(n-1)
    powers = []
    for m in range(2 * n - 1):
        if m < n:
            v = [Fraction(0)] * n
            v[m] = Fraction(1)
        else:
            prev = powers[m - 1]
            v = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            v = [x - top * c for x, c in zip(v, coeffs[:-1])]
        powers.append(v)
    labels = ["1"] + [var if d == 1 else f"{var}{d}" for d in range(1, n)]
    sc = {(a, b): {k: c for k, c in enumerate(powers[a + b]) if c}
          for a in range(n) for b in range(n)}
    return SuperAlgebra(labels, [0] * n, sc, f"Q[{var}]/({_poly_text(coeffs, var)})", unit=0,
                        metadata={"generator": "field_ext",
                                  "min_poly": [str(c) for c in coeffs]})


def matrix_algebra(n: int) -> SuperAlgebra:
    """M_n(Q) on matrix units e_ij (all even)."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    idx = {(i, j): (i - 1) * n + (j - 1) for i in range(1, n + 1) for j in range(1, n + 1)}
    labels = [f"e{i}{j}" if n < 10 else f"e{i}_{j}" for (i, j) in idx]
    sc = {(idx[i, j], idx[j2, k]): {idx[i, k]: 1}
          for (i, j) in idx for (j2, k) in idx if j == j2}
    return SuperAlgebra(labels, [0] * (n * n), sc, f"M{n}(Q)",
                        metadata={"generator": "matrix", "n": n})


def tensor_product(A: SuperAlgebra, B: SuperAlgebra, name: str = "") -> SuperAlgebra:
    """Graded tensor product: (a x b)(c x d) = (-1)^{p(b)p(c)} ac x bd."""
    labels, parity, index = [], [], {}
    for i, a in enumerate(A.basis):
        for j, b in enumerate(B.basis):
            index[i, j] = len(labels)
            labels.append(a if b == "1" else (b if a == "1" else f"{a}{b}"))
            parity.append((A.parity[i] + B.parity[j]) % 2)
    if len(set(labels)) != len(labels):
        labels = [f"{a}(x){b}" for a in A.basis for b in B.basis]
    sc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, k), ac in A.sc.items():
        for (j, l), bd in B.sc.items():
            sign = -1 if B.parity[j] * A.parity[k] else 1
            row = sc.setdefault((index[i, j], index[k, l]), {})
            for m, c1 in ac.items():
                for n_, c2 in bd.items():
                    row[index[m, n_]] = row.get(index[m, n_], 0) + sign * c1 * c2
    unit = None
    if A.unit_index is not None and B.unit_index is not None:
        unit = index[A.unit_index, B.unit_index]
    return SuperAlgebra(labels, parity, sc, name or f"{A.name}(x){B.name}", unit)
