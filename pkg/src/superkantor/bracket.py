"""Brackets on a superalgebra and the identities they may satisfy.

Every checker evaluates its identity at all basis tuples.  Basis vectors are
homogeneous, and each identity below is, at fixed parities of its arguments,
linear in every argument; so vanishing on basis tuples is equivalent to
vanishing on all homogeneous arguments.

Argument slots are named f, g, h, k with parities i, j, k, l respectively
(slot 0 = f, 1 = g, 2 = h, 3 = k).  Products of three factors are formed
left-normed, ``fhg = (f h) g``; for associative algebras this is immaterial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, Sequence

from .exactlin import Matrix, as_scalar
from .multilinear import Const, Evaluator, Table, Var, op
from .superalg import (MAX_WITNESSES, CheckReport, Element, PreconditionError, SuperAlgebra,
                       Witness, find_unit, is_associative, is_supercommutative, multiply,
                       run_identities)

DEFAULT_POOL = (-2, -1, 0, 0, 0, 1, 2)

mul = op("mul")
br = op("br")
f, g, h, k = Var(0), Var(1), Var(2), Var(3)
ONE = Const("1")


class Bracket:
    """A parity-preserving superskew bilinear map on the basis of ``algebra``."""

    def __init__(self, algebra: SuperAlgebra, constants: Mapping[tuple[int, int], Mapping[int, object]],
                 name: str = "", validate: bool = True):
        par = algebra.parity
        consts = {}
        for (a, b), row in constants.items():
            clean = {}
            for c, v in row.items():
                v = as_scalar(v)
                if not v:
                    continue
                if par[c] != (par[a] + par[b]) % 2:
                    raise ValueError(f"bracket {{{algebra.basis[a]}, {algebra.basis[b]}}} "
                                     f"has a component on {algebra.basis[c]} of the wrong parity")
                clean[c] = v
            if clean:
                consts[(a, b)] = clean
        self.algebra = algebra
        self.constants = MappingProxyType({key: MappingProxyType(v) for key, v in consts.items()})
        self.name = name
        if validate:
            rep = is_superskew(self)
            if not rep:
                w = rep.witnesses[0]
                raise ValueError(f"bracket is not superskew at {w.describe()['arguments']}")

    def value(self, a: int, b: int) -> Mapping[int, Fraction]:
        return self.constants.get((a, b), {})

    @cached_property
    def table(self) -> Table:
        return Table(self.algebra.dim, self.constants)

    def evaluator(self, **kw) -> Evaluator:
        A = self.algebra
        return Evaluator(A.dim, A.parity, {"mul": A.table, "br": self.table}, **kw)

    def is_zero(self) -> bool:
        return not self.constants

    def __repr__(self):
        return f"Bracket({self.name!r} on {self.algebra.name!r})"


def zero_bracket(algebra: SuperAlgebra) -> Bracket:
    return Bracket(algebra, {}, name="zero")


def bracket_eval(b: Bracket, x: Element, y: Element) -> Element:
    A = b.algebra
    if x.algebra is not A or y.algebra is not A:
        raise ValueError("elements do not belong to the bracket's algebra")
    out = [Fraction(0)] * A.dim
    for i, xi in x.support().items():
        for j, yj in y.support().items():
            for c, v in b.value(i, j).items():
                out[c] += xi * yj * v
    return Element(A, tuple(out))


# ---------------------------------------------------------------- operators

@dataclass(frozen=True)
class GradedOperator:
    """A homogeneous linear map; ``matrix[r, c]`` is the b_r-coordinate of phi(b_c)."""

    algebra: SuperAlgebra
    matrix: Matrix
    parity: int | None = 0          # None: not required to be homogeneous
    delta: Fraction | None = None

    def __post_init__(self):
        A = self.algebra
        if self.matrix.rows != A.dim or self.matrix.cols != A.dim:
            raise ValueError("operator matrix has the wrong shape")
        if self.parity is None:
            return
        for r in range(A.dim):
            for c in range(A.dim):
                if self.matrix[r, c] and A.parity[r] != (A.parity[c] + self.parity) % 2:
                    raise ValueError(f"operator of parity {self.parity} maps "
                                     f"{A.basis[c]} onto {A.basis[r]}")

    @classmethod
    def from_vector(cls, algebra: SuperAlgebra, vec: Sequence, parity: int | None = 0,
                    delta=None) -> "GradedOperator":
        """Build from a row-major flattening (index r * dim + c)."""
        n = algebra.dim
        return cls(algebra, Matrix(n, n, tuple(as_scalar(x) for x in vec)), parity,
                   None if delta is None else as_scalar(delta))

    @classmethod
    def from_images(cls, algebra: SuperAlgebra, images: Mapping, parity: int = 0) -> "GradedOperator":
        """Images of basis vectors (labels or indices -> Element or coordinate dict)."""
        n = algebra.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for key, img in images.items():
            c = algebra.index(key)
            e = img if isinstance(img, Element) else algebra.from_dict(img)
            for r, v in e.support().items():
                rows[r][c] = v
        return cls(algebra, Matrix.from_rows(rows, n), parity)

    @classmethod
    def identity(cls, algebra: SuperAlgebra) -> "GradedOperator":
        return cls(algebra, Matrix.identity(algebra.dim), 0)

    def vector(self) -> tuple[Fraction, ...]:
        return self.matrix.entries

    def __call__(self, e: Element) -> Element:
        if e.algebra is not self.algebra:
            raise ValueError("element belongs to another algebra")
        return Element(self.algebra, self.matrix.apply(e.coords))

    def image(self, c: int) -> Element:
        return Element(self.algebra, tuple(self.matrix[r, c] for r in range(self.algebra.dim)))

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        if other.algebra is not self.algebra or other.parity != self.parity:
            raise ValueError("operators are not compatible")
        n = self.algebra.dim
        vec = tuple(a + b for a, b in zip(self.vector(), other.vector()))
        return GradedOperator(self.algebra, Matrix(n, n, vec), self.parity)

    def is_zero(self) -> bool:
        return not any(self.matrix.entries)


def check_leibniz(D: GradedOperator, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """Super-Leibniz rule D(ab) = D(a)b + (-1)^{p(a)p(D)} a D(b) on basis pairs."""
    A = D.algebra
    report = CheckReport("leibniz", {"leibniz": 0})
    for a in range(A.dim):
        x = A.basis_element(a)
        for b in range(A.dim):
            y = A.basis_element(b)
            lhs = D(multiply(x, y))
            second = multiply(x, D(y))
            if A.parity[a] * D.parity:
                second = -second
            res = lhs - multiply(D(x), y) - second
            if res:
                report.failures["leibniz"] += 1
                if len(report.witnesses) < max_witnesses:
                    report.witnesses.append(Witness("leibniz", (a, b), res))
    return report


class LeibnizError(ValueError):
    pass


def vector_type_bracket(algebra: SuperAlgebra, D: GradedOperator, validate: bool = True) -> Bracket:
    """{a, b} = D(a)b - aD(b) for an even derivation D.

    With ``validate=False`` the formula is applied to any even linear map;
    the result is then only guaranteed to be superskew when the algebra is
    supercommutative, which the Bracket constructor still enforces.
    """
    if D.algebra is not algebra:
        raise ValueError("operator lives on another algebra")
    if D.parity != 0:
        raise ValueError("vector-type brackets need an even operator")
    if validate and not check_leibniz(D):
        raise LeibnizError("operator is not a derivation")
    n = algebra.dim
    images = [D.image(c) for c in range(n)]
    consts = {}
    for a in range(n):
        x = algebra.basis_element(a)
        for b in range(n):
            y = algebra.basis_element(b)
            v = multiply(images[a], y) - multiply(x, images[b])
            if v:
                consts[(a, b)] = v.support()
    return Bracket(algebra, consts, name="vector-type")


def bracket_D(b: Bracket) -> GradedOperator:
    """The operator a -> {a, 1}; not asserted to be a derivation."""
    A = b.algebra
    one = A.unit if A.unit is not None else find_unit(A)
    if one is None:
        raise PreconditionError("bracket_D needs a unital algebra")
    n = A.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for c in range(n):
        for r, v in bracket_eval(b, A.basis_element(c), one).support().items():
            rows[r][c] = v
    return GradedOperator(A, Matrix.from_rows(rows, n), 0)


def random_superskew_bracket(algebra: SuperAlgebra, seed: int,
                             pool: Sequence = DEFAULT_POOL) -> Bracket:
    """Seeded random bracket: draw {b_i, b_j} for i <= j, complete by superskewness."""
    rng = random.Random(seed)
    pool = [as_scalar(x) for x in pool]
    par = algebra.parity
    n = algebra.dim
    consts: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i, n):
            if i == j and par[i] == 0:
                continue  # {a, a} = 0 for even a
            row = {}
            for c in range(n):
                if par[c] == (par[i] + par[j]) % 2:
                    v = rng.choice(pool)
                    if v:
                        row[c] = v
            if not row:
                continue
            consts[(i, j)] = row
            if i != j:
                s = 1 if par[i] * par[j] else -1
                consts[(j, i)] = {c: s * v for c, v in row.items()}
    return Bracket(algebra, consts, name=f"random(seed={seed})")


def scaled_bracket(b: Bracket, c) -> Bracket:
    c = as_scalar(c)
    return Bracket(b.algebra, {key: {o: c * v for o, v in row.items()}
                               for key, row in b.constants.items()}, name=f"{c}*{b.name}")


def add_brackets(b1: Bracket, b2: Bracket) -> Bracket:
    if b1.algebra is not b2.algebra:
        raise ValueError("brackets live on different algebras")
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for b in (b1, b2):
        for key, row in b.constants.items():
            dst = out.setdefault(key, {})
            for o, v in row.items():
                dst[o] = dst.get(o, 0) + v
    return Bracket(b1.algebra, out, name=f"{b1.name}+{b2.name}")


# ------------------------------------------------------------------ parities

def _pp(a, b):
    return lambda p: p[a] * p[b]


# slot parities: p[0] = i (f), p[1] = j (g), p[2] = k (h), p[3] = l (k)
S1 = lambda p: (p[0] + p[1]) * p[3]   # (-1)^{(i+j)l}
S2 = lambda p: (p[2] + p[1]) * p[0]   # (-1)^{(k+j)i}
S3 = lambda p: (p[3] + p[1]) * p[2]   # (-1)^{(l+j)k}


def _signed(e, s):
    return (1 * e).signed(s)


# ----------------------------------------------------------------- checkers

def is_superskew(b: Bracket, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    x, y = Var(0), Var(1)
    expr = br(x, y) + _signed(br(y, x), _pp(0, 1))
    return run_identities("superskew", b.algebra, b.evaluator(), {"superskew": (2, expr)},
                          max_witnesses)


def check_poisson(b: Bracket, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """Super-Leibniz {a, bc} = {a, b}c + (-1)^{p(a)p(b)} b{a, c} and super-Jacobi."""
    a_, b_, c_ = Var(0), Var(1), Var(2)
    leibniz = br(a_, mul(b_, c_)) - mul(br(a_, b_), c_) - _signed(mul(b_, br(a_, c_)), _pp(0, 1))
    jacobi = br(a_, br(b_, c_)) - br(br(a_, b_), c_) - _signed(br(b_, br(a_, c_)), _pp(0, 1))
    return run_identities("poisson", b.algebra, b.evaluator(),
                          {"super_leibniz": (3, leibniz), "super_jacobi": (3, jacobi)},
                          max_witnesses)


UNITAL_SIGNS = ("printed", "cyclic")


def check_unital_jordan(b: Bracket, max_witnesses: int = MAX_WITNESSES,
                        signs: str = "printed") -> CheckReport:
    """The unital Jordan-bracket identities, with D(a) = {a, 1}.

    bracket_product_rule:
        {f, gh} = {f, g}h + (-1)^{ij} g{f, h} - D(f)gh
    bracket_jacobi_rule:
        {f, {g, h}} = {{f, g}, h} + (-1)^{ij}{g, {f, h}} + D(f){g, h}
                      + s D(g){h, f} + (-1)^{k(j+i)} D(h){f, g}

    ``signs="printed"`` uses s = (-1)^{ij}.  ``signs="cyclic"`` uses
    s = (-1)^{i(j+k)}, the sign obtained by moving f past {g, h}; with it the
    brackets {a, b} = D(a)b - aD(b) of even derivations satisfy the rule on
    Grassmann algebras with three or more generators, which they do not with
    the printed sign.  Requires a unital, supercommutative, associative algebra.
    """
    if signs not in UNITAL_SIGNS:
        raise ValueError(f"signs must be one of {UNITAL_SIGNS}")
    A = b.algebra
    one = A.unit if A.unit is not None else find_unit(A)
    problems = []
    if one is None:
        problems.append("algebra has no unit")
    if not is_supercommutative(A, 1):
        problems.append("algebra is not supercommutative")
    if not is_associative(A, 1):
        problems.append("algebra is not associative")
    if problems:
        raise PreconditionError("; ".join(problems))
    D = lambda x: br(x, ONE)
    ij = _pp(0, 1)
    second = ij if signs == "printed" else (lambda p: p[0] * (p[1] + p[2]))
    rule1 = (br(f, mul(g, h)) - mul(br(f, g), h) - _signed(mul(g, br(f, h)), ij)
             + mul(mul(D(f), g), h))
    rule2 = (br(f, br(g, h)) - br(br(f, g), h) - _signed(br(g, br(f, h)), ij)
             - mul(D(f), br(g, h))
             - _signed(mul(D(g), br(h, f)), second)
             - _signed(mul(D(h), br(f, g)), lambda p: p[2] * (p[1] + p[0])))
    ev = b.evaluator(constants={"1": one.support()})
    rep = run_identities("jordan_unital", A, ev, {"bracket_product_rule": (3, rule1),
                                                  "bracket_jacobi_rule": (3, rule2)},
                         max_witnesses)
    rep.notes.append(f"signs={signs}")
    return rep


def jordan_bracket_a():
    def t(a, b, c, d):
        return br(mul(br(a, b), c), d) - mul(br(a, b), br(c, d))
    return _signed(t(f, h, g, k), S1) + _signed(t(h, k, g, f), S2) + _signed(t(k, f, g, h), S3)


def jordan_bracket_b():
    lhs = mul(br(mul(h, k), g), f) - mul(mul(h, k), br(g, f))
    rhs = mul(br(mul(k, f), g), h) - mul(mul(k, f), br(g, h))
    return _signed(lhs, S2) - _signed(rhs, S3)


def jordan_bracket_c():
    lhs = br(mul(mul(f, h), g), k) - mul(mul(f, h), br(g, k))
    r1 = mul(br(mul(h, k), g), f) - br(mul(h, k), mul(g, f))
    r2 = mul(br(mul(k, f), g), h) - br(mul(k, f), mul(g, h))
    return _signed(lhs, S1) - _signed(r1, S2) - _signed(r2, S3)


def product_shift():
    lhs = br(mul(mul(f, h), g), k) - br(mul(f, h), mul(g, k))
    rhs = br(mul(mul(k, f), g), h) - br(mul(k, f), mul(g, h))
    return _signed(lhs, S1) - _signed(rhs, S3)


GENERAL_IDENTITIES = {"jordan_bracket_a": jordan_bracket_a, "jordan_bracket_b": jordan_bracket_b,
                      "jordan_bracket_c": jordan_bracket_c, "product_shift": product_shift}
JORDAN_GENERAL = ("jordan_bracket_a", "jordan_bracket_b", "jordan_bracket_c")


def check_bracket_identities(b: Bracket, names: Sequence[str],
                             max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    idents = {n: (4, GENERAL_IDENTITIES[n]()) for n in names}
    return run_identities("bracket_identities", b.algebra, b.evaluator(), idents, max_witnesses)


def check_general_jordan(b: Bracket, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """The three general Jordan-bracket identities on all basis quadruples.

    No hypotheses on the algebra; these characterize Jordan brackets on
    arbitrary associative superalgebras.
    """
    rep = check_bracket_identities(b, JORDAN_GENERAL, max_witnesses)
    rep.name = "jordan_general"
    return rep


def check_product_shift(b: Bracket, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """Shift of a product across the bracket, a companion of the general identities."""
    rep = check_bracket_identities(b, ["product_shift"], max_witnesses)
    rep.name = "product_shift"
    return rep


def commutator_bracket(algebra: SuperAlgebra) -> Bracket:
    """The supercommutator [a, b] = ab - (-1)^{p(a)p(b)} ba."""
    par = algebra.parity
    consts: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(algebra.dim):
        for b in range(algebra.dim):
            row = dict(algebra.sc.get((a, b), {}))
            s = -1 if par[a] * par[b] else 1
            for c, v in algebra.sc.get((b, a), {}).items():
                row[c] = row.get(c, 0) - s * v
            row = {c: v for c, v in row.items() if v}
            if row:
                consts[(a, b)] = row
    return Bracket(algebra, consts, name="commutator")
