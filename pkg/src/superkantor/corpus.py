"""Seeded corpus of (algebra, bracket) pairs for experiments and acceptance runs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .bracket import (Bracket, GradedOperator, add_brackets, commutator_bracket,
                      random_superskew_bracket, scaled_bracket, vector_type_bracket, zero_bracket)
from .exactlin import Matrix
from .grassmann import grassmann_algebra, grassmann_poisson_bracket
from .superalg import SuperAlgebra, matrix_algebra, tensor_product, truncated_polynomials

COEFFS = (-2, -1, 1, 2, Fraction(1, 2))


@dataclass(frozen=True)
class Sample:
    family: str
    gamma: SuperAlgebra
    bracket: Bracket
    seed: int

    @property
    def label(self) -> str:
        return f"{self.gamma.name}/{self.family}/{self.seed}"


def corpus_algebras() -> dict[str, SuperAlgebra]:
    T3 = truncated_polynomials(3)
    return {"G2": grassmann_algebra(2), "G3": grassmann_algebra(3), "T3": T3,
            "T3xG1": tensor_product(T3, grassmann_algebra(1), name="Q[t]/(t^3)xG1"),
            "M2": matrix_algebra(2)}


def random_derivation(A: SuperAlgebra, rng: random.Random) -> GradedOperator:
    """A random combination of a basis of the even derivations."""
    from .deltaderiv import derivations
    ops = derivations(A, 0).operators()
    n = A.dim
    vec = [Fraction(0)] * (n * n)
    for op in ops:
        c = rng.choice(COEFFS)
        for t, v in enumerate(op.vector()):
            vec[t] += c * v
    return GradedOperator(A, Matrix(n, n, tuple(vec)), 0)


def build_corpus(seed: int = 0, n_random: int = 32, n_vector: int = 8) -> list[Sample]:
    """Random superskew brackets on every algebra, plus structured brackets.

    Structured families: vector-type brackets of random derivations and the
    zero bracket (supercommutative algebras), scaled and perturbed Poisson
    brackets (Grassmann algebras), and commutator brackets (M2).
    """
    rng = random.Random(seed)
    out: list[Sample] = []
    poisson = {"G2": grassmann_poisson_bracket(2), "G3": grassmann_poisson_bracket(3)}
    for key, A in corpus_algebras().items():
        if key in poisson:
            # rebuild on the same algebra object the corpus uses
            P = Bracket(A, poisson[key].constants, name="poisson")
        for _ in range(n_random):
            s = rng.randrange(2 ** 32)
            out.append(Sample("random", A, random_superskew_bracket(A, s), s))
        if key == "M2":
            C = commutator_bracket(A)
            out.append(Sample("commutator", A, C, 0))
            for c in (2, -1):
                out.append(Sample("commutator", A, scaled_bracket(C, c), c))
            out.append(Sample("zero", A, zero_bracket(A), 0))
            continue
        out.append(Sample("zero", A, zero_bracket(A), 0))
        for _ in range(n_vector):
            s = rng.randrange(2 ** 32)
            D = random_derivation(A, random.Random(s))
            out.append(Sample("vector", A, vector_type_bracket(A, D), s))
        if key in poisson:
            for c in (1, -1, 2, Fraction(1, 3)):
                out.append(Sample("poisson", A, scaled_bracket(P, c), 0))
            for _ in range(4):
                s = rng.randrange(2 ** 32)
                noise = random_superskew_bracket(A, s, pool=(0,) * 12 + (1, -1))
                out.append(Sample("poisson+noise", A, add_brackets(P, noise), s))
    return out
