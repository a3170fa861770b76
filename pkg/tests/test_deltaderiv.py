import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from superkantor.bracket import (GradedOperator, commutator_bracket, random_superskew_bracket,
                                 vector_type_bracket, zero_bracket)
from superkantor.corpus import corpus_algebras
from superkantor.deltaderiv import (CENTROID_MEMBER, NOT_PRIME, ORDINARY, PRIME, ZERO_OP,
                                    bracket_half_derivations, centroid, classify_triviality,
                                    delta_superderivations, derivations, extend_to_double,
                                    full_space, half_derivation_experiment, intersect,
                                    is_prime_associative_smalldim, product_span_annihilator,
                                    satisfies_delta_rule, supercentroid, verify_solution_space)
from superkantor.exactlin import Subspace, is_subspace, subspace_contains, subspaces_equal
from superkantor.grassmann import grassmann_algebra, grassmann_poisson_bracket
from superkantor.kantor import kantor_double
from superkantor.superalg import (SuperAlgebra, ground_field, left_multiplication, matrix_algebra,
                                  simple_extension, tensor_product, truncated_polynomials)

HALF = F(1, 2)


def identity_vector(A):
    n = A.dim
    return [F(int(r == c)) for r in range(n) for c in range(n)]


# --------------------------------------------------------- sympy oracle

def sympy_solution_dim(A, delta, parity, product=None):
    """Dimension of the delta-rule solution space, assembled with sympy symbols."""
    n = A.dim
    table = product if product is not None else A.sc
    phi = [[sympy.Symbol(f"p{r}_{c}") if parity is None or A.parity[r] == (A.parity[c] + parity) % 2
            else sympy.Integer(0) for c in range(n)] for r in range(n)]
    unknowns = sorted({s for row in phi for s in row if isinstance(s, sympy.Symbol)}, key=str)

    def mul(x, y):
        out = [sympy.Integer(0)] * n
        for (a, b), row in table.items():
            if x[a] != 0 and y[b] != 0:
                for c, v in row.items():
                    out[c] += x[a] * y[b] * sympy.Rational(v.numerator, v.denominator)
        return out

    def apply(v):
        return [sum((phi[r][c] * v[c] for c in range(n)), sympy.Integer(0)) for r in range(n)]

    def e(i):
        return [sympy.Integer(int(i == k)) for k in range(n)]

    d = sympy.Rational(delta.numerator, delta.denominator)
    eqs = []
    for a in range(n):
        for b in range(n):
            s = -1 if parity and A.parity[a] else 1
            lhs = apply(mul(e(a), e(b)))
            rhs = [d * (x + s * y) for x, y in zip(mul(apply(e(a)), e(b)), mul(e(a), apply(e(b))))]
            eqs += [sympy.expand(l - r) for l, r in zip(lhs, rhs)]
    eqs = [q for q in eqs if q != 0]
    if not unknowns:
        return 0
    if not eqs:
        return len(unknowns)
    M, _ = sympy.linear_eq_to_matrix(eqs, unknowns)
    return len(unknowns) - M.rank()


ORACLE_CASES = [
    (grassmann_algebra(1), F(1), 0), (grassmann_algebra(2), HALF, 0), (grassmann_algebra(2), HALF, 1),
    (grassmann_algebra(2), F(2), 1), (truncated_polynomials(3), F(0), 0),
    (truncated_polynomials(3), F(-1), 0), (matrix_algebra(2), HALF, 0), (matrix_algebra(2), F(1), 0),
]


@pytest.mark.parametrize("A,delta,parity", ORACLE_CASES,
                         ids=[f"{a.name}-{d}-{p}" for a, d, p in ORACLE_CASES])
def test_solution_dimensions_match_sympy(A, delta, parity):
    assert delta_superderivations(A, delta, parity).dim == sympy_solution_dim(A, delta, parity)


def test_double_dimensions_match_sympy():
    P = grassmann_poisson_bracket(1)
    J = kantor_double(P.algebra, P)
    for delta in (HALF, F(2)):
        for p in (0, 1):
            assert delta_superderivations(J, delta, p).dim == sympy_solution_dim(J, delta, p)


# ------------------------------------------------------------- examples

def test_identity_is_a_half_derivation():
    for A in corpus_algebras().values():
        S = delta_superderivations(A, HALF, 0)
        assert subspace_contains(S.space, identity_vector(A))


def test_grassmann_one_generator_derivations():
    G = grassmann_algebra(1)
    S = delta_superderivations(G, 1, 0)
    assert S.dim == 1
    (op,) = S.operators()
    xi = G.basis_element("xi1")
    assert op(xi) == xi and not op(G.basis_element("1"))


def test_zero_delta_is_product_annihilator():
    for A in list(corpus_algebras().values()) + [grassmann_algebra(1)]:
        for p in (0, 1):
            assert subspaces_equal(delta_superderivations(A, 0, p).space,
                                   product_span_annihilator(A, p))
    # unital: every product-killing operator kills 1 * b = b
    assert delta_superderivations(truncated_polynomials(3), 0, 0).dim == 0


def test_supercentroid_examples():
    M = matrix_algebra(2)
    assert supercentroid(M, 0).dim == 1
    assert subspace_contains(supercentroid(M, 0).space, identity_vector(M))
    assert supercentroid(M, 1).dim == 0
    assert supercentroid(truncated_polynomials(3), 1).dim == 0


def test_centroid_examples():
    assert centroid(matrix_algebra(2)).dim == 1
    T = truncated_polynomials(3)
    C = centroid(T)
    assert C.dim == 3
    mults = [sum(left_multiplication(T.basis_element(i)), []) for i in range(3)]
    assert subspaces_equal(C.space, Subspace.span(mults, 9))
    assert centroid(ground_field()).dim == 1


def test_bracket_half_derivation_examples():
    G = grassmann_algebra(2)
    for p in (0, 1):
        assert subspaces_equal(bracket_half_derivations(G, zero_bracket(G), p).space,
                               full_space(G, p).space)
    M = matrix_algebra(2)
    S = bracket_half_derivations(M, commutator_bracket(M), 0)
    assert subspace_contains(S.space, identity_vector(M))
    T = truncated_polynomials(3)
    D = GradedOperator.from_images(T, {"t": {"1": 1}, "t2": {"t": 2}})
    br = vector_type_bracket(T, D, validate=False)
    S = bracket_half_derivations(T, br, 0)
    assert S.dim == sympy_solution_dim(T, HALF, 0, product=br.constants)
    assert verify_solution_space(S)


def test_intersection_examples():
    M = matrix_algebra(2)
    C = centroid(M)
    assert subspaces_equal(intersect(C, C).space, C.space)
    S = delta_superderivations(M, HALF, 0)
    assert subspaces_equal(intersect(S, full_space(M, 0)).space, S.space)
    I = intersect(C, bracket_half_derivations(M, commutator_bracket(M), 0))
    assert I.dim == 1 and verify_solution_space(I)


def test_extension_examples():
    M = matrix_algebra(2)
    J = kantor_double(M, commutator_bracket(M))
    ident = GradedOperator.identity(M)
    assert extend_to_double(J, ident).matrix == GradedOperator.identity(J).matrix
    zero = GradedOperator.from_vector(M, [0] * 16)
    assert extend_to_double(J, zero).is_zero()
    c = GradedOperator.from_vector(M, [F(3, 2) * x for x in identity_vector(M)])
    assert satisfies_delta_rule(extend_to_double(J, c), HALF)


def test_classification():
    G = grassmann_algebra(2)
    zero = GradedOperator.from_vector(G, [0] * 16, 0, HALF)
    assert classify_triviality(zero) == ZERO_OP
    ident = GradedOperator.from_vector(G, identity_vector(G), 0, HALF)
    assert classify_triviality(ident) == CENTROID_MEMBER
    for op in delta_superderivations(G, 1, 0).operators():
        assert classify_triviality(op) == ORDINARY
    with pytest.raises(ValueError):
        classify_triviality(GradedOperator.from_vector(G, identity_vector(G), 0, F(2)))


def test_primality():
    assert is_prime_associative_smalldim(matrix_algebra(2)) == PRIME
    v = is_prime_associative_smalldim(truncated_polynomials(3))
    assert v == NOT_PRIME and v.witness is not None
    assert is_prime_associative_smalldim(simple_extension([-2, 0, 1])) == PRIME
    assert is_prime_associative_smalldim(ground_field()) == PRIME
    # Q x Q is semisimple but not prime
    QQ = SuperAlgebra(["u", "v"], [0, 0], {(0, 0): {0: 1}, (1, 1): {1: 1}})
    assert is_prime_associative_smalldim(QQ) == NOT_PRIME


def test_experiment_on_matrix_algebra():
    M = matrix_algebra(2)
    rep = half_derivation_experiment(M, commutator_bracket(M), [2, -1, F(3, 2)])
    assert rep.hypothesis_met
    assert rep.vanishing_ok and rep.restriction_equal and rep.x_rule_holds
    assert rep.resubstitution_ok and rep.extension_ok
    assert rep.restriction_dim == rep.expected_dim == 1


def test_experiment_on_ground_field():
    Q = ground_field()
    rep = half_derivation_experiment(Q, zero_bracket(Q), [2, -1, F(3, 2), 5])
    assert rep.hypothesis_met and rep.consistent
    assert all(d == 0 for d in rep.dims.values())


def test_experiment_label_when_not_prime():
    T = truncated_polynomials(3)
    rep = half_derivation_experiment(T, zero_bracket(T), [2])
    assert not rep.hypothesis_met
    assert rep.to_json()["status"].startswith("hypothesis unmet")


# ------------------------------------------------------------- properties

PROPERTY_ALGEBRAS = list(corpus_algebras().values()) + [
    grassmann_algebra(1), tensor_product(truncated_polynomials(2), grassmann_algebra(1))]


@settings(max_examples=25)
@given(st.sampled_from(range(len(PROPERTY_ALGEBRAS))),
       st.sampled_from([F(0), HALF, F(1), F(2), F(-1), F(3, 2)]), st.integers(0, 1))
def test_resubstitution(which, delta, parity):
    S = delta_superderivations(PROPERTY_ALGEBRAS[which], delta, parity)
    assert verify_solution_space(S)


@pytest.mark.parametrize("A", PROPERTY_ALGEBRAS, ids=lambda A: A.name)
def test_even_supercentroid_inside_half_derivations(A):
    assert is_subspace(supercentroid(A, 0).space, delta_superderivations(A, HALF, 0).space)
    assert verify_solution_space(supercentroid(A, 0))
    assert verify_solution_space(supercentroid(A, 1))
    assert verify_solution_space(centroid(A))


@settings(max_examples=10)
@given(st.integers(0, 2 ** 32 - 1))
def test_bracket_half_derivations_resubstitute(seed):
    G = grassmann_algebra(2)
    br = random_superskew_bracket(G, seed, (0, 0, 0, 1, -1))
    for p in (0, 1):
        assert verify_solution_space(bracket_half_derivations(G, br, p))


def test_derivations_are_one_derivations():
    G = grassmann_algebra(3)
    assert subspaces_equal(derivations(G, 0).space, delta_superderivations(G, 1, 0).space)
    assert derivations(G, 0).dim == 12
