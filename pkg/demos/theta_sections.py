"""
Theta section counts of lattices
================================

A positive-definite Gram matrix on Z^r is an Arakelov bundle over Q. Its
"number of sections" is the theta sum over the lattice, and Riemann-Roch
says h0(V) - h0(V^) = deg V.
"""
import math

from heightzeta.arakelov import dual, h0, identity_bundle, line_bundle, make_bundle, phi, phi_upper_bound, rr_defect, twist

V = make_bundle([[2, 1], [1, 1]])
print("degree of [[2,1],[1,1]]:", V.degree)

# twisting by a degree-t line bundle adds r t to the degree
for t in (-1.0, 0.0, 0.5, 1.0):
    W = twist(V, t)
    print(f"t = {t:+.1f}  deg = {W.degree:+.3f}  h0 = {h0(W).real:.6f}  h0(dual) = {h0(dual(W)).real:.6f}"
          f"  RR defect = {rr_defect(W):.1e}")

# h0 of O(-2) is tiny but still resolved to full relative precision
v = h0(line_bundle(-2))
print("h0(O(-2)) =", v.real, " leading term 2 exp(-pi e^4) =", 2 * math.exp(-math.pi * math.exp(4)))

# phi decays doubly exponentially as the degree goes to -infinity
O = identity_bundle(1)
for t in (0, -0.5, -1, -1.5):
    print(f"phi(O({t})) = {phi(twist(O, t)).real:.3e}   bound {phi_upper_bound(O, t):.3e}")
