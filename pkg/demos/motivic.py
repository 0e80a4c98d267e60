"""
Motivic height zeta functions on P^1
====================================

Over P^1 every bundle splits as a sum of O(a_i), so the classes of the
spaces of sections are Laurent polynomials in L. Substituting L = q gives
the number of sections over F_q, which a brute-force census confirms.
"""
from heightzeta.fqoracle import count_sections
from heightzeta.motivic import (SplittingType, funceq_defect_motivic, projective_class, rationality_witness,
                                residue_from_series, residue_specialized, sect_series, specialize,
                                value_at_critical, zetaZ_series)

print("[P^3] =", projective_class(3), "   [P^-3] =", projective_class(-3))

V = SplittingType.of(0, 1)
print("zeta(t) Z(t) for O + O(1):", zetaZ_series(V, 4))
print("Z(t):", sect_series(V, 6))

w = rationality_witness(V, 12)
print("(t-1)(t-L^-2) zeta Z is a polynomial:", w.residual_zero,
      {k: str(c) for k, c in sorted(w.polynomial.items())})
val, defect = value_at_critical(V)
print("value at t = L^-2:", val, "  defect:", defect)
print("functional equation holds:", funceq_defect_motivic(V, 12).ok)

S = sect_series(V, 8)
for q in (2, 3):
    row = [(d, specialize(S[d], q), count_sections(q, V.degrees, d)) for d in range(-2, 3)]
    print(f"q = {q}: (d, motivic, census) =", row)

for q in (2, 3, 5):
    print(f"residue at t = {q}^-2: {residue_specialized(V, q)} (from the series: {residue_from_series(V, q)})")
