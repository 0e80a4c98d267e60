"""
Counting points on Hirzebruch surfaces
======================================

On F_e with the height of O(a, b) two poles compete: s1 = 2/a from the
fibres and s2 = 2/(b - ae) from the minimal section. When b < (e+1)a the
minimal section wins and carries almost every point.
"""
from heightzeta.hirz import (HirzebruchConfig, alpha_invariant, compare_counts, count_surface,
                             minimal_section_count, predicted_poles)

for e, a, b in ((2, 2, 5), (2, 1, 4)):
    cfg = HirzebruchConfig(e, a, b)
    poles = predicted_poles(cfg)
    print(f"\nF_{e}, O({a},{b}):  s1 = {poles.s1}  s2 = {poles.s2}  sigma0 = {poles.sigma0}"
          f"  dominant = {poles.dominant}  alpha = {alpha_invariant(cfg)}")
    for B in (25, 50, 100):
        n, m = count_surface(cfg, B), minimal_section_count(cfg, B)
        print(f"  B = {B:4d}  points = {n:6d}  on the minimal section = {m:6d} ({m / n:.3f})")
    out = compare_counts(cfg, 100)
    print(f"  B = 100 observed {out['observed']}, predicted {out['predicted']:.1f}, ratio {out['ratio']:.4f}")

print("\nF_3, O(1,4) has coinciding poles:", predicted_poles(HirzebruchConfig(3, 1, 4)).coincident)
