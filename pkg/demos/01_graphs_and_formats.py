"""Multigraphs, standard formats, and edge cuts.

Run: python3 demos/01_graphs_and_formats.py
"""

from nzflow import MultiGraph, basic_checks, edge_cut, pair_cut, parse_graph6, serialize_graph6
from nzflow.catalog import petersen

print("== graph6 round trips ==")
k4 = parse_graph6("C~")
print(f"'C~' decodes to K4: n={k4.n}, m={k4.m}, edges={list(k4.edges)}")
print(f"re-encoding gives {serialize_graph6(k4)!r}")

p = petersen()
rec = serialize_graph6(p)
print(f"\nthe Petersen graph encodes as {rec!r}")

print("\n== multigraphs with parallel edges ==")
mg = MultiGraph(2, [(0, 1), (0, 1), (0, 1)])
print(f"theta-like multigraph: {mg}, degree of 0 is {mg.degree(0)}")
print(f"JSON edge-list form: {mg.to_json()}")

print("\n== cuts ==")
outer = range(5)
cut = edge_cut(p, outer)
print(f"cut around the outer 5-cycle: {sorted(cut.edges)} ({len(cut.edges)} edges)")
spokes = pair_cut(p, range(5), range(5, 10))
print(f"edges between outer and inner cycles: {sorted(spokes)}")

print("\n== structural audit ==")
print(basic_checks(p))
