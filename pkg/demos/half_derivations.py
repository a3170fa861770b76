"""delta-superderivations of doubles over prime even parts.

Over M_2(Q) with the commutator bracket and over the field Q(sqrt 2), the double
admits nothing for delta outside {0, 1/2, 1}, while the even 1/2-superderivations
restrict to centroid elements that are also 1/2-derivations of the bracket.
"""

from fractions import Fraction

from superkantor import (Bracket, check_general_jordan, commutator_bracket,
                         half_derivation_experiment,
                         matrix_algebra, simple_extension, truncated_polynomials, zero_bracket)

deltas = [Fraction(2), Fraction(-1), Fraction(3, 2), Fraction(5)]

M = matrix_algebra(2)
K = simple_extension([-2, 0, 1])
# {1, t} = u for u != 0 breaks the Jordan identities; only u = 0 survives
for u in (1, 2, -1):
    br = Bracket(K, {(0, 1): {0: u}, (1, 0): {0: -u}})
    print(f"{K.name}: {{1,t}} = {u} Jordan:", check_general_jordan(br).verdict)

for gamma, br in ((M, commutator_bracket(M)), (K, zero_bracket(K))):
    rep = half_derivation_experiment(gamma, br, deltas)
    print(f"\n{gamma.name} with {br.name} bracket, primality: {rep.primality}")
    for (d, p), dim in sorted(rep.dims.items()):
        print(f"  dim Delta_{d}(J)_{p} = {dim}")
    print("  restriction of even 1/2-part:", rep.restriction_dim,
          "matches centroid cap bracket 1/2-derivations:", rep.restriction_equal)
    print("  phi(ax) = phi(a)x on every solution:", rep.x_rule_holds)

# Q[t]/(t^3) is not prime (t * A * t^2 = 0), so its report is informational only
T = truncated_polynomials(3)
rep = half_derivation_experiment(T, zero_bracket(T), deltas)
print(f"\n{T.name}: {rep.to_json()['status']}")
print("  dims anyway:", sorted(rep.dims.values()))
