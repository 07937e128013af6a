"""Spinorial o(4) model: commutant of o(2)+o(2) and the osp(1|2) copies.

Four bosons with four Clifford generators carry three mutually compatible
actions. The commutant of the block rotations closes onto the dual -1 Hahn
form, and each commutant generator is an osp(1|2) Casimir or Cartan element.

    python3 demos/02_commutant_and_howe.py [cutoff]
"""

import sys

from dualhahn import howe
from dualhahn.spinor_commutant import (
    build_commutant,
    build_spinor_model,
    check_commutant_closure,
    check_commutant_property,
    check_o_n,
)

cutoff = int(sys.argv[1]) if len(sys.argv) > 1 else 4
model = build_spinor_model(2, 2, cutoff)
gens = build_commutant(model)
print(f"spinor model: n={model.n}, dimension {model.space.dimension}, K2 shift {gens.shift}")

for which in ("L", "Sigma", "J"):
    print(check_o_n(model, which).summary())
print(check_commutant_property(model, gens).summary())
print(check_commutant_closure(model, gens).summary())

h = howe.build_howe(model, gens)
for check in (howe.check_osp_copies, howe.check_dictionary, howe.check_commuting_actions,
              howe.check_casimir_correspondence, howe.kappa_bridge):
    print(check(h).summary())

print("dictionary between the two sides:")
for tag, text in howe.dictionary_identities(h):
    print(f"  {tag:10s} {text}")
