import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from superkantor.bracket import (Bracket, random_superskew_bracket, vector_type_bracket,
                                 zero_bracket)
from superkantor.corpus import build_corpus, random_derivation
from superkantor.grassmann import grassmann_algebra, grassmann_envelope, grassmann_poisson_bracket
from superkantor.kantor import (X_SUFFIX, check_jordan_algebra, check_jordan_superidentities,
                                check_jordan_via_envelope, double_jordan_verdict, kantor_double)
from superkantor.superalg import (PreconditionError, SuperAlgebra, ground_field, matrix_algebra,
                                  multiply, tensor_product, truncated_polynomials)


def test_double_of_ground_field():
    Q = ground_field()
    J = kantor_double(Q, zero_bracket(Q))
    assert J.basis == ("1", "1" + X_SUFFIX) and J.parity == (0, 1)
    one, x = J.basis_element(0), J.basis_element(1)
    assert multiply(one, x) == x == multiply(x, one)
    assert not multiply(x, x)
    assert check_jordan_superidentities(J)
    assert check_jordan_via_envelope(J, 4)


def test_double_multiplication_rules():
    br = random_superskew_bracket(grassmann_algebra(2), 11)
    G = br.algebra
    J = kantor_double(G, br)
    d = G.dim
    for a in range(d):
        for b in range(d):
            ab = G.product(a, b)
            assert J.product(a, b) == ab
            assert J.product(a, d + b) == {d + c: v for c, v in ab.items()}
            s = -1 if G.parity[b] else 1
            assert J.product(d + a, b) == {d + c: s * v for c, v in ab.items()}
            assert J.product(d + a, d + b) == {c: s * v for c, v in br.value(a, b).items()}
            if G.parity[a] == G.parity[b] == 0:
                assert J.product(d + a, d + b) == br.value(a, b)


@pytest.mark.parametrize("gamma", [grassmann_algebra(2), truncated_polynomials(3), matrix_algebra(2)],
                         ids=lambda g: g.name)
def test_double_grading(gamma):
    J = kantor_double(gamma, zero_bracket(gamma))
    assert J.dim == 2 * gamma.dim
    even_g = gamma.parity.count(0)
    odd_g = gamma.parity.count(1)
    assert J.parity.count(0) == even_g + odd_g == J.parity.count(1)
    assert J.basis[gamma.dim:] == tuple(b + X_SUFFIX for b in gamma.basis)
    # the construction re-validates the grading; rebuilding from the table must succeed
    SuperAlgebra(J.basis, J.parity, J.sc)


def test_superidentity_examples():
    P = grassmann_poisson_bracket(2)
    assert check_jordan_superidentities(kantor_double(P.algebra, P))
    M = matrix_algebra(2)
    rep = check_jordan_superidentities(kantor_double(M, zero_bracket(M)))
    assert not rep.holds("supercommutativity")
    assert ("e12", "e21") in {tuple(w.describe()["arguments"]) for w in rep.witnesses
                              if w.identity == "supercommutativity"}


def test_envelope_examples():
    P = grassmann_poisson_bracket(1)
    J = kantor_double(P.algebra, P)
    assert check_jordan_superidentities(J)
    assert check_jordan_via_envelope(J, 4)


def test_verdict_examples():
    P = grassmann_poisson_bracket(2)
    v = double_jordan_verdict(P.algebra, P)
    assert v.lhs and v.rhs and v.agree
    M = matrix_algebra(2)
    v = double_jordan_verdict(M, zero_bracket(M))
    assert not v.lhs and not v.rhs and v.agree
    nonassoc = SuperAlgebra(["e", "f"], [0, 0], {(0, 0): {1: 1}, (1, 1): {0: 1}})
    with pytest.raises(PreconditionError):
        double_jordan_verdict(nonassoc, zero_bracket(nonassoc))


@given(st.integers(0, 2 ** 32 - 1))
def test_gamma_embeds_in_double(seed):
    G = tensor_product(truncated_polynomials(2), grassmann_algebra(1))
    br = random_superskew_bracket(G, seed)
    J = kantor_double(G, br)
    for a, b in itertools.product(range(G.dim), repeat=2):
        assert J.product(a, b) == G.product(a, b)


# ------------------------------------------------------- independent checks

def naive_jordan_algebra_failures(E):
    """Commutativity and the linearized Jordan identity with plain loops."""
    R = oracle.Ring(E)
    comm = sum(1 for a, b in itertools.product(range(E.dim), repeat=2)
               if any(R.sub(R.m(R.e(a), R.e(b)), R.m(R.e(b), R.e(a)))))
    lin = 0
    for x1, y, x2, x3 in itertools.product(range(E.dim), repeat=4):
        total = [0] * E.dim
        for a, b, c in itertools.permutations((x1, x2, x3)):
            ab = R.m(R.e(a), R.e(b))
            term = R.sub(R.m(R.m(ab, R.e(y)), R.e(c)), R.m(ab, R.m(R.e(y), R.e(c))))
            total = R.add(total, term)
        lin += any(total)
    return comm, lin


@pytest.mark.parametrize("seed", [0, 1])
def test_envelope_checker_matches_naive(seed):
    G = grassmann_algebra(1)
    br = random_superskew_bracket(G, seed) if seed else grassmann_poisson_bracket(1)
    if seed == 0:
        G = br.algebra
    E = grassmann_envelope(kantor_double(G, br), 2)
    rep = check_jordan_algebra(E, chunk=3)
    comm, lin = naive_jordan_algebra_failures(E)
    assert rep.failures["commutativity"] == comm
    assert rep.failures["linearized_jordan"] == lin


@settings(max_examples=15)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([(-1, 0, 1), (0, 0, 0, 1)]))
def test_superidentities_match_naive(seed, pool):
    G = grassmann_algebra(1) if seed % 2 else truncated_polynomials(2)
    br = random_superskew_bracket(G, seed, pool)
    J = kantor_double(G, br)
    rep = check_jordan_superidentities(J)
    R = oracle.Ring(J)
    assert rep.failures["supercommutativity"] == oracle.count(R, 2, oracle.supercomm)
    assert rep.failures["super_jordan_linearized"] == oracle.count(R, 4, oracle.super_jordan_linearized)


def test_failing_supercommutativity_breaks_envelope_commutativity():
    samples = [s for s in build_corpus(seed=5, n_random=2, n_vector=1) if s.gamma.name.startswith("M2")]
    assert samples
    for s in samples:
        J = kantor_double(s.gamma, s.bracket)
        assert not check_jordan_superidentities(J).holds("supercommutativity")
        assert not check_jordan_via_envelope(J, 2).holds("commutativity")


def test_vector_type_double_is_jordan_both_ways():
    import random
    T = truncated_polynomials(3)
    br = vector_type_bracket(T, random_derivation(T, random.Random(1)))
    J = kantor_double(T, br)
    assert check_jordan_superidentities(J)
    assert check_jordan_via_envelope(J, 4)
