# Normal ordering of [(a^dagger)^r a^s]^n and the numbers it produces.
from genbell import FamilyParams, bell_number, fock_oracle, lah_number, stirling_table

# (a^dagger a)^3 = a^dagger a + 3 (a^dagger)^2 a^2 + (a^dagger)^3 a^3
print(stirling_table(FamilyParams(1, 1), 3).as_list())

# the same row from ladder operators acting on number states
p = FamilyParams(2, 1)
print(dict(stirling_table(p, 4).entries))
print(dict(fock_oracle(p, 4, 16).entries))

# (2,1) rows are Lah numbers
print([lah_number(4, k) for k in range(1, 5)])

# row sums are the generalized Bell numbers; B_{9,6} gets large quickly
for r, s in [(1, 1), (2, 1), (2, 2), (9, 6)]:
    print((r, s), [bell_number(FamilyParams(r, s), n) for n in range(6)])
