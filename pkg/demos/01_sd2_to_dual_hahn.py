"""Walk from the planar Dunkl oscillator to the dual -1 Hahn algebra.

Builds the two parabose modes, checks the sd(2) relations, then maps
(J3, J2, R2) onto (K1, K2, P) and verifies the six quadratic relations with
the structure constants promoted to central operators.

    python3 demos/01_sd2_to_dual_hahn.py
"""

from fractions import Fraction

from dualhahn.dunkl_sd2 import build_sd2, check_sd2, identify_dual_hahn

mu1, mu2 = Fraction(1, 3), Fraction(1, 5)
r = build_sd2(mu1, mu2, cutoff=6)
print(f"space: {r.space.dimension} states, boson cutoff {r.space.cutoff}")

print(check_sd2(r).summary())

ident = identify_dual_hahn(r)
print("identification used:")
for key, text in ident.meta["identification"].items():
    print(f"  {key:6s} = {text}")
print(ident.summary())
for row in ident.results:
    if row.informational:
        print(f"  literal form {row.text!r}: residual {row.verdict.max_abs:g} (kept for reference)")
