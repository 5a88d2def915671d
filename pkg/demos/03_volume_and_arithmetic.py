"""Volume and arithmetic table for M_k, even k.

Run:  python3 demos/03_volume_and_arithmetic.py
"""
from mincusp import exactnum as X
from mincusp import geometry as G

print(f"{'k':>3} {'vol':>14} {'|closed-Ushijima|':>18} {'9k/2':>6} {'pi^2 k':>8}"
      f" {'deg':>4} {'integral':>9} {'quasi-ar.':>9}")
for k in range(2, 21, 2):
    r = G.volume_Mkk(k)
    lo, hi = G.volume_bounds(k)
    v = X.arithmetic_verdict(k)
    print(f"{k:3d} {r.volume:14.10f} {abs(r.volume - r.cross_check):18.1e} {lo:6.0f} {hi:8.2f}"
          f" {v.trace_field_degree:4d} {str(v.integral_traces):>9} {str(v.quasi_arithmetic):>9}")

print("\nresultant products (16 exactly at powers of two):")
print(" ".join(f"{k}:{X.norm_alpha_check(k).norm_over_cyclotomic}" for k in range(2, 33, 2)))
