from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from superkantor.bracket import bracket_eval, check_general_jordan, check_poisson, is_superskew
from superkantor.grassmann import (DimensionCapError, grassmann_algebra, grassmann_envelope,
                                   grassmann_poisson_bracket, monomials)
from superkantor.superalg import (is_associative, is_commutative, is_supercommutative,
                                  matrix_algebra, multiply, truncated_polynomials)


def test_generator_products():
    G = grassmann_algebra(2)
    assert G.dim == 4 and G.parity == (0, 1, 1, 0)
    x1, x2, x12 = (G.basis_element(s) for s in ("xi1", "xi2", "xi1xi2"))
    assert multiply(x1, x2) == x12
    assert multiply(x2, x1) == -x12
    assert grassmann_algebra(0).dim == 1


def test_three_generators_signs():
    G = grassmann_algebra(3)
    e = G.basis_element
    assert multiply(e("xi1xi2"), e("xi3")) == e("xi1xi2xi3")
    assert multiply(e("xi2"), e("xi1xi3")) == -e("xi1xi2xi3")


@pytest.mark.parametrize("n", range(7))
def test_structure(n):
    G = grassmann_algebra(n)
    assert G.dim == 2 ** n
    assert is_associative(G, 1) and is_supercommutative(G, 1)


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("KANTOR_DIM_CAP", "8")
    with pytest.raises(DimensionCapError):
        grassmann_algebra(4)
    with pytest.raises(DimensionCapError):
        grassmann_envelope(matrix_algebra(2), 4)


def test_envelope_dimensions():
    G1 = grassmann_algebra(1)
    assert grassmann_envelope(G1, 2).dim == 4
    T = truncated_polynomials(3)
    assert grassmann_envelope(T, 0).dim == 3
    for n in range(1, 4):
        assert grassmann_envelope(T, n).dim == 2 ** (n - 1) * 3
    assert is_commutative(grassmann_envelope(grassmann_algebra(2), 2))
    assert not is_commutative(grassmann_envelope(matrix_algebra(2), 2))


def test_envelope_is_all_even():
    E = grassmann_envelope(grassmann_algebra(2), 2)
    assert set(E.parity) == {0}
    assert "xi1|xi2" in E.basis


@given(st.data())
def test_envelope_product_follows_sign_rule(data):
    A = grassmann_algebra(2)
    n = 3
    E = grassmann_envelope(A, n)
    G = grassmann_algebra(n)
    p, q = data.draw(st.integers(0, 1)), data.draw(st.integers(0, 1))
    a = data.draw(st.sampled_from([i for i in range(A.dim) if A.parity[i] == p]))
    b = data.draw(st.sampled_from([i for i in range(A.dim) if A.parity[i] == q]))
    g = data.draw(st.sampled_from([i for i in range(G.dim) if G.parity[i] == p]))
    h = data.draw(st.sampled_from([i for i in range(G.dim) if G.parity[i] == q]))
    left = multiply(E.basis_element(f"{G.basis[g]}|{A.basis[a]}"),
                    E.basis_element(f"{G.basis[h]}|{A.basis[b]}"))
    gh = multiply(G.basis_element(g), G.basis_element(h))
    ab = multiply(A.basis_element(a), A.basis_element(b))
    sign = -1 if p * q else 1
    expected = E.zero()
    for u, cu in gh.support().items():
        for v, cv in ab.support().items():
            expected = expected + (sign * cu * cv) * E.basis_element(f"{G.basis[u]}|{A.basis[v]}")
    assert left == expected


# --------------------------------------------------------------- Poisson

def test_poisson_values():
    b1 = grassmann_poisson_bracket(1)
    G = b1.algebra
    x = G.basis_element("xi1")
    assert bracket_eval(b1, x, x) == -G.basis_element("1")
    b2 = grassmann_poisson_bracket(2)
    G = b2.algebra
    one = G.basis_element("1")
    for i in range(G.dim):
        assert not bracket_eval(b2, one, G.basis_element(i))
    assert bracket_eval(b2, G.basis_element("xi1"), G.basis_element("xi1xi2")) == -G.basis_element("xi2")


def _left_derivative_via_product(G, s, i):
    """d/dxi_i of monomial s using the algebra product: xi_s = c * xi_i * xi_rest."""
    if i not in s:
        return G.zero()
    rest = tuple(x for x in s if x != i)
    lab = lambda m: "1" if not m else "".join(f"xi{x}" for x in m)
    prod = multiply(G.basis_element(f"xi{i}"), G.basis_element(lab(rest)))
    c = prod.support()[G.index(lab(s))]
    return c * G.basis_element(lab(rest))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_poisson_matches_derivative_formula(n):
    br = grassmann_poisson_bracket(n)
    G = br.algebra
    mons = monomials(n)
    for s in mons:
        for t in mons:
            total = G.zero()
            for i in range(1, n + 1):
                total = total + multiply(_left_derivative_via_product(G, s, i),
                                         _left_derivative_via_product(G, t, i))
            if len(s) % 2:
                total = -total
            assert bracket_eval(br, G.basis_element(G.basis[mons.index(s)]),
                                G.basis_element(G.basis[mons.index(t)])) == total


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_poisson_is_poisson_and_jordan(n):
    br = grassmann_poisson_bracket(n)
    assert is_superskew(br)
    assert check_poisson(br)
    assert check_general_jordan(br)
