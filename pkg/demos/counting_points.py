"""
Rational points of bounded height on P^1
========================================

Points of P(V) are primitive lattice vectors up to sign, and the height is
the length of the vector. For V = Z^2 with the standard metric the count of
points with H <= B grows like (3/pi) B^2.
"""
import math

from heightzeta.arakelov import identity_bundle, make_bundle
from heightzeta.pcount import count_points, dirichlet_partials, enumerate_points
from heightzeta.zclass import continued_zeta, residue_main, tauberian_predict

I2 = identity_bundle(2)
print("points of height <= 5:", [r.coords for r in enumerate_points(I2, 5)][:8], "...")

for B in (10, 100, 1000):
    n = count_points(I2, B)
    pred = tauberian_predict(2, 1, residue_main(I2), B)
    print(f"B = {B:5d}  count = {n:8d}  (3/pi) B^2 = {pred:11.1f}  ratio = {n / pred:.5f}")

# a skew metric: same determinant, same leading constant
V = make_bundle([[2, 1], [1, 3]])
print("count for [[2,1],[1,3]] at B = 300:", count_points(V, 300),
      " predicted:", round(tauberian_predict(2, 1, residue_main(V), 300), 1))

# partial Dirichlet sums with certified tails, next to the continued function
ss = [3, 4 + 1j, 6]
for s, d in zip(ss, dirichlet_partials(I2, ss, 1000)):
    z = continued_zeta(I2, s).value
    print(f"s = {s}: partial sum {d.value:.10f} (+- {d.abs_error:.1e})   continued {z.value:.10f}")
print("residue at s = 2:", residue_main(I2), " 6/pi =", 6 / math.pi)
