# Weight functions W(x) on the half line whose power moments are B_{r,s}(n).
import mpmath as mp

from genbell import FamilyParams, WeightSpec, eval_weight, moment_quadrature, total_mass, weight_spec

for r, s in [(2, 1), (3, 1), (4, 2), (5, 2)]:
    spec = weight_spec(r, s)
    samples = [mp.nstr(eval_weight(spec, x).value, 8) for x in (0.1, 1, 10)]
    print(spec.kind, samples)

# moments by tanh-sinh quadrature plus a bounded tail
spec = weight_spec(2, 1)
for n in range(1, 6):
    rep = moment_quadrature(spec, n)
    print(n, rep.exact, mp.nstr(rep.quadrature.value, 20), mp.nstr(rep.relative_error, 3))

# the zeroth moment is (e-1)/e, not the conventional B(0) = 1
print(mp.nstr(total_mass(spec).value, 15))

# the published W_{5,2} constants give moments about 7% high
printed = WeightSpec(FamilyParams(5, 2), "closed_52", "printed")
print(mp.nstr(moment_quadrature(printed, 1).relative_error, 4))
