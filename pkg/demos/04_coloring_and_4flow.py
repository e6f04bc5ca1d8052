"""Canonical 4-edge-colorings, the augmented graph and its explicit 4-flow.

Run: python3 demos/04_coloring_and_4flow.py
"""

from collections import Counter

from nzflow import (
    build_augmented,
    canonical_coloring,
    canonical_4flow,
    compute_oddness,
    flow_partition,
    is_nowhere_zero,
    switch_path,
    verify_flow,
)
from nzflow.catalog import petersen

g = petersen()
tf = compute_oddness(g).witness
print(f"2-factor circuits: {[len(c) for c in tf.circuits]} (both odd)")

c = canonical_coloring(g, tf)
print(f"color histogram: {dict(sorted(Counter(c.colors).items()))}")
print(f"vertices missing color 2: {c.missing2}")
print(f"odd path joining them (edge ids): {c.paths[0]}")

ag = build_augmented(g, c)
pair = ag.pairs[0]
print(f"\naugmented graph: {ag.graph.m - g.m} edges added between {pair.ends};")
print(f"  closure edge {pair.closure} gets color 2, its mate {pair.mate} color 4")

f = canonical_4flow(ag)
print(f"\nexplicit 4-flow values: {f.values}")
print(f"conservation violations: {verify_flow(ag.graph, f)}; nowhere-zero: {is_nowhere_zero(f)}")
for v in range(ag.graph.n):
    assert abs(2 * f.out_degree(v) - ag.graph.degree(v)) == 1
print("every vertex satisfies |2*outdeg - deg| = 1")

p = flow_partition(ag, f)
print(f"\ninduced partition  white={p.white}  black={p.black}")
p2 = flow_partition(ag, switch_path(ag, f, 0))
moved = set(p.white) ^ set(p2.white)
on_path = set()
for e in c.paths[0]:
    on_path.update(g.endpoints(e))
print(f"switching the path recolors exactly its vertices: {moved == on_path}")
