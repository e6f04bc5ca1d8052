"""Cyclic edge-connectivity: cuts that separate two cycles.

Run: python3 demos/03_cyclic_connectivity.py
"""

from nzflow import cyclic_connectivity, is_cyclically_k_connected
from nzflow.catalog import flower_snark, k4, oddness4_snark, petersen

p = petersen()
print("== the Petersen graph ==")
for k in (4, 5, 6):
    chk = is_cyclically_k_connected(p, k)
    line = f"  cyclically {k}-edge-connected? {chk.connected}"
    if chk.witness is not None:
        line += f"  (witness cut of {len(chk.witness.edges)} edges around {chk.witness.side})"
    print(line)
print(f"  exact value: {cyclic_connectivity(p).value}")

print("\n== vacuous case ==")
res = cyclic_connectivity(k4())
print(f"  K4 has no two vertex-disjoint cycles: vacuous={res.vacuous}; "
      "it counts as cyclically k-connected for every k")

print("\n== snarks ==")
for name, g in [("flower J5", flower_snark(5)), ("four-block snark", oddness4_snark())]:
    res = cyclic_connectivity(g, max_work=5_000_000)
    print(f"  {name}: cyclic edge-connectivity {res.value}")
