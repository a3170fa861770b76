"""The (generalized) Kantor double and two independent tests of Jordan-ness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .bracket import Bracket, check_general_jordan
from .grassmann import grassmann_envelope
from .multilinear import Var, op
from .superalg import (MAX_WITNESSES, CheckReport, PreconditionError, SuperAlgebra,
                       is_associative, is_supercommutative, run_identities)

X_SUFFIX = "·x"

mul = op("mul")


class KantorDouble(SuperAlgebra):
    """J(Gamma, {,}) = Gamma + Gamma x, basis ordered (b_1..b_d, b_1x..b_dx).

    a.b = ab,  a.bx = (ab)x,  ax.b = (-1)^{p(b)} (ab)x,  ax.bx = (-1)^{p(b)} {a, b}
    with p(b) the parity of b in Gamma; b_k x has parity p(b_k) + 1.
    """

    def __init__(self, gamma: SuperAlgebra, bracket: Bracket):
        if bracket.algebra is not gamma:
            raise ValueError("bracket is defined on another algebra")
        d = gamma.dim
        par = gamma.parity
        sc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (a, b), row in gamma.sc.items():
            sc[(a, b)] = dict(row)
            sc[(a, d + b)] = {d + c: v for c, v in row.items()}
            s = -1 if par[b] else 1
            sc[(d + a, b)] = {d + c: s * v for c, v in row.items()}
        for (a, b), row in bracket.constants.items():
            s = -1 if par[b] else 1
            sc[(d + a, d + b)] = {c: s * v for c, v in row.items()}
        labels = list(gamma.basis) + [lbl + X_SUFFIX for lbl in gamma.basis]
        parity = list(par) + [(p + 1) % 2 for p in par]
        super().__init__(labels, parity, sc, f"J({gamma.name}, {bracket.name or 'br'})",
                         metadata={"derived_from": {"gamma": gamma.name,
                                                    "bracket": bracket.name}})
        self.gamma = gamma
        self.bracket = bracket

    def x(self, i: int) -> int:
        """Index of b_i x."""
        return self.gamma.dim + i

    def gamma_indices(self) -> range:
        return range(self.gamma.dim)


def kantor_double(gamma: SuperAlgebra, bracket: Bracket) -> KantorDouble:
    return KantorDouble(gamma, bracket)


def _associator(a, b, c):
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def check_jordan_superidentities(J: SuperAlgebra, max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """Supercommutativity and the linearized super-Jordan identity.

    super_jordan_linearized:
        (-1)^{(i+j)l}[f.h, g, k] + (-1)^{(k+j)i}[h.k, g, f] + (-1)^{(l+j)k}[k.f, g, h] = 0
    with parities i, j, k, l of f, g, h, k and the associator [x, y, z] = (xy)z - x(yz).
    """
    f, g, h, k = Var(0), Var(1), Var(2), Var(3)
    comm = mul(f, g) - (1 * mul(g, f)).signed(lambda p: p[0] * p[1])
    lin = ((1 * _associator(mul(f, h), g, k)).signed(lambda p: (p[0] + p[1]) * p[3])
             + (1 * _associator(mul(h, k), g, f)).signed(lambda p: (p[2] + p[1]) * p[0])
             + (1 * _associator(mul(k, f), g, h)).signed(lambda p: (p[3] + p[1]) * p[2]))
    return run_identities("jordan_superidentities", J, J.evaluator(),
                          {"supercommutativity": (2, comm), "super_jordan_linearized": (4, lin)}, max_witnesses)


def _linearized_jordan():
    # slots: x1 = 0, y = 1, x2 = 2, x3 = 3
    xs = (Var(0), Var(2), Var(3))
    y = Var(1)
    total = None
    for a, b, c in itertools.permutations(xs):
        term = mul(mul(mul(a, b), y), c) - mul(mul(a, b), mul(y, c))
        total = term if total is None else total + term
    return total


def check_jordan_algebra(E: SuperAlgebra, max_witnesses: int = MAX_WITNESSES,
                         chunk: int = 8) -> CheckReport:
    """Commutativity plus the full linearization of (x^2 y)x = x^2(yx).

    The linearized identity is sum over permutations (a, b, c) of (x1, x2, x3)
    of ((ab)y)c - (ab)(yc).  Work is split over blocks of values of y.
    """
    x, y = Var(0), Var(1)
    report = run_identities("jordan_algebra", E, E.evaluator(),
                            {"commutativity": (2, mul(x, y) - mul(y, x))}, max_witnesses)
    lin = _linearized_jordan()
    report.failures["linearized_jordan"] = 0
    for start in range(0, E.dim, chunk):
        ev = E.evaluator(domains={1: range(start, min(E.dim, start + chunk))})
        left = max(0, max_witnesses - len([w for w in report.witnesses
                                           if w.identity == "linearized_jordan"]))
        part = run_identities("", E, ev, {"linearized_jordan": (4, lin)}, left)
        report.failures["linearized_jordan"] += part.failures["linearized_jordan"]
        report.witnesses += part.witnesses
    return report


def check_jordan_via_envelope(J: SuperAlgebra, n: int = 4,
                              max_witnesses: int = MAX_WITNESSES) -> CheckReport:
    """J is Jordan iff its Grassmann envelope G_n(J) is a Jordan algebra.

    Four generators suffice for the linearized identity, which has four
    arguments (each may need its own odd generator).
    """
    E = grassmann_envelope(J, n)
    report = check_jordan_algebra(E, max_witnesses)
    report.name = "jordan_via_envelope"
    report.notes.append(f"envelope G{n}({J.name}) of dimension {E.dim}")
    return report


@dataclass
class DoubleJordanVerdict:
    lhs: bool
    rhs: bool
    supercommutative: bool
    bracket_jordan: bool
    double_report: CheckReport
    bracket_report: CheckReport

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs_double_is_jordan": self.lhs, "rhs": self.rhs,
                "gamma_supercommutative": self.supercommutative,
                "bracket_is_jordan": self.bracket_jordan, "agree": self.agree,
                "double": self.double_report.to_json(), "bracket": self.bracket_report.to_json()}


def double_jordan_verdict(gamma: SuperAlgebra, bracket: Bracket,
                        max_witnesses: int = MAX_WITNESSES) -> DoubleJordanVerdict:
    """Compare 'J(Gamma, {,}) is Jordan' with 'Gamma supercommutative and {,} Jordan'."""
    if not is_associative(gamma, 1):
        raise PreconditionError("the generalized double is only considered for associative Gamma")
    J = kantor_double(gamma, bracket)
    jrep = check_jordan_superidentities(J, max_witnesses)
    sc = is_supercommutative(gamma, max_witnesses)
    brep = check_general_jordan(bracket, max_witnesses)
    return DoubleJordanVerdict(jrep.verdict, sc.verdict and brep.verdict, sc.verdict, brep.verdict,
                            jrep, brep.merge(sc))
