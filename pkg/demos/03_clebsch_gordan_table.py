"""Clebsch-Gordan coefficients for a product of two osp(1|2) irreps.

Solves for the coupled vectors by a kernel search plus raising, compares with
a dense diagonalization, and prints the first rows of the table.

    python3 demos/03_clebsch_gordan_table.py [mu1] [mu2]
"""

import sys
from fractions import Fraction

from dualhahn.cg_oracle import oracle_vectors
from dualhahn.osp_cg import build_cg_tensor, cg_report, solve_cg

mu1 = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(1, 3)
mu2 = Fraction(sys.argv[2]) if len(sys.argv) > 2 else Fraction(1, 5)

t = build_cg_tensor(mu1, mu2, 1, 1, cutoff=10)
result = solve_cg(t, j_max=4)
summary = cg_report(result, oracle_vectors)
print(f"orthonormality residual {summary['orthonormality_residual']:.2e}")
print(f"eigenvalue residual     {summary['eigen_residual']:.2e}")
print(f"oracle deviation        {summary['oracle_max_deviation']:.2e}")

for fam in result.families:
    print(f"j={fam.j}: mu12={fam.mu12:.4f}, eps12={fam.eps12:+d}")

print()
print("\n".join(result.to_csv().splitlines()[:12]))
