# Stieltjes moment positivity and large-n behaviour.
import mpmath as mp

from genbell import FamilyParams, asymptotic_b21, asymptotic_b31, bell_sequence, hankel_determinants

seq = bell_sequence(FamilyParams(3, 2), 12)
for order in range(1, 7):
    rep = hankel_determinants(seq, order)
    print(order, rep.det0, rep.det1)

# two-term expansions against the exact values
for n in (50, 100, 200, 400):
    a, b = asymptotic_b21(n), asymptotic_b31(n)
    print(n, mp.nstr(a.ratio, 8), mp.nstr(b.ratio, 8), mp.nstr(b.implied_subleading, 5))
