# Coherent states built on rho(n) = B_{r,s}(n).
import mpmath as mp

from genbell import CoherentFamily, FamilyParams, normalization, overlap, resolution_check, state_coefficients

fam = CoherentFamily(FamilyParams(2, 1))
print([mp.nstr(normalization(fam, x).value, 12) for x in (0, 1, 10, 100)])

st = state_coefficients(fam, 1 + 0.5j, 40)
print([mp.nstr(abs(a) ** 2, 6) for a in st.coefficients[:6]])
print(mp.nstr(st.norm_squared(), 20))

print(mp.nstr(overlap(fam, 1, -1).value, 12))

# resolution of unity reduces to the moment identity of the weight
rep = resolution_check(fam, 3)
print(rep.moment.exact, mp.nstr(rep.moment.relative_error, 3), rep.positive)
