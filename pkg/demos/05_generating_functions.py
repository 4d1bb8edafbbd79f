# Exponential generating functions and the normally ordered exponential.
import mpmath as mp

from genbell import egf_coefficients, growth_order, matrix_element_closed, matrix_element_exp, FamilyParams

c = egf_coefficients(2, 6)
print([str(x) for x in c])
print(c.egf_values())
print(egf_coefficients(3, 6).egf_values())

# <z| exp(lam (a^dagger)^2 a) |z>, closed form checked against the Fock sum
v = matrix_element_exp(2, "0.1", 1 + 0.5j)
print(mp.nstr(v.value, 25), mp.nstr(v.error_bound, 3))

# the published inner exponent sign gives a different number
print(mp.nstr(matrix_element_closed(2, "0.1", 1 + 0.5j, printed_sign=True).value, 25))

for r, s in [(1, 1), (2, 1), (2, 2), (3, 3)]:
    print((r, s), growth_order(FamilyParams(r, s)).t)
