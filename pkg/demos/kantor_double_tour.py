"""A walk through the Kantor double of a Grassmann Poisson bracket.

Run with ``python3 demos/kantor_double_tour.py``.
"""

from superkantor import (bracket_eval, check_jordan_superidentities, check_jordan_via_envelope,
                         check_poisson, grassmann_poisson_bracket,
                         is_supercommutative, kantor_double, matrix_algebra, commutator_bracket)

# the Poisson bracket on G_2, {xi_i, xi_j} = -delta_ij with the sign (-1)^{p(f)},
# where xi1, xi2 anticommute and square to zero
P = grassmann_poisson_bracket(2)
G = P.algebra
print(G.name, "basis", G.basis, "parity", G.parity)
x1, x2 = G.basis_element("xi1"), G.basis_element("xi2")
print("xi1*xi2 =", x1 * x2, "  xi2*xi1 =", x2 * x1, "  xi1*xi1 =", x1 * x1)
print("{xi1, xi1} =", bracket_eval(P, x1, x1), "  {xi1, xi2} =", bracket_eval(P, x1, x2))
print("Poisson:", check_poisson(P).verdict)

# J = G + Gx, twice the dimension, parities flipped on the x half
J = kantor_double(G, P)
print(J.name, "dim", J.dim, "parity", J.parity)
print("superidentities hold:", check_jordan_superidentities(J).verdict)
print("envelope G_4(J) is a Jordan algebra:", check_jordan_via_envelope(J, 4).verdict)

# contrast: M_2 is not supercommutative, so its double cannot be Jordan
M = matrix_algebra(2)
JM = kantor_double(M, commutator_bracket(M))
print(M.name, "supercommutative:", is_supercommutative(M).verdict)
report = check_jordan_superidentities(JM)
print("double of M2 Jordan:", report.verdict)
for w in report.witnesses[:3]:
    print("  witness", w.identity, [JM.basis[i] for i in w.arguments], "->", w.residual)
