# Infinite-series (Dobinski) representations and recovery of the exact integers.
import mpmath as mp

from genbell import FamilyParams, PrecisionContext, bell_hypergeometric, dobinski, dobinski_integer

ctx = PrecisionContext(precision_bits=256)
p = FamilyParams(9, 6)

for n in range(1, 5):
    v = dobinski(p, n, ctx)
    print(n, mp.nstr(v.value, 30), "+/-", mp.nstr(v.error_bound, 3), "->", dobinski_integer(p, n))

# the (r+1, r) and (2r, r) hypergeometric forms reproduce the integers
print(mp.nstr(bell_hypergeometric(FamilyParams(4, 3), 3, ctx).value, 20))
print(mp.nstr(bell_hypergeometric(FamilyParams(6, 3), 3, ctx).value, 20))

# the general (pr+p, pr) form does not: it warns and returns the printed value
import warnings

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    v = bell_hypergeometric(p, 1, ctx)
print(mp.nstr(v.value, 10), "vs exact 1;", caught[0].category.__name__)
