"""
Continuing Z(P(V), s) past its abscissa
=======================================

Splitting the integral over line bundles at degree zero gives a formula for
2 xi(s) Z(s) that makes sense for every s. This script evaluates it left of
the pole, checks the functional equation and compares with Wan's formula.
"""
from heightzeta.arakelov import identity_bundle, make_bundle, twist
from heightzeta.errors import IllConditionedError
from heightzeta.zclass import (continued_zeta, funceq_defect, residue_extrapolated, residue_main,
                               wan_formula, wan_formula_defect)

I2 = identity_bundle(2)
for s in (3, 1.5, 0.5, -1.3, 0.7 + 14j):
    res = continued_zeta(I2, s)
    print(f"Z(P^1, {s}) = {res.value.value:.12g}  (+- {res.value.abs_error:.1e})")

# P^0 has one point of height 1, so Z is identically 1
print("Z(P^0, 0.5) =", continued_zeta(identity_bundle(1), 0.5).value.value)

# near a zeta zero the quotient is refused
try:
    continued_zeta(I2, 0.5 + 14.134725141734693j)
except IllConditionedError as exc:
    print("refused:", exc)

# the residue at s = 2, directly and from values just right of the pole
for h in (1e-2, 1e-3, 1e-4):
    print(f"h = {h:g}:  h Z(2 + h) = {h * continued_zeta(I2, 2 + h).value.value.real:.8f}")
print("extrapolated:", residue_extrapolated(I2), " formula:", residue_main(I2))

V = twist(make_bundle([[2, 1], [1, 1]]), 0.3)
for s in (0.7 + 0.3j, 1, 2.4):
    print(f"functional equation defect at s = {s}: {funceq_defect(V, s):.2e}")

for n, s in ((1, 3), (2, 4)):
    print(f"Wan n = {n}, s = {s}: {wan_formula(n, s).value:.12f}, defect {wan_formula_defect(n, s):.1e}")
