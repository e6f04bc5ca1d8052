"""The full 5-flow certificate pipeline, including the diagnostic mode.

Run: python3 demos/06_five_flow_pipeline.py
"""

from nzflow import five_flow_oddness4, is_nowhere_zero, verify_flow
from nzflow.catalog import flower_snark, oddness4_snark, petersen

print("== graphs of oddness at most 2: a flow always comes out ==")
for name, g in [("Petersen", petersen()), ("flower snark J7", flower_snark(7))]:
    cert = five_flow_oddness4(g, check_cyclic=False)
    ok = verify_flow(g, cert.flow) == [] and is_nowhere_zero(cert.flow)
    print(f"  {name:16s} oddness={cert.oddness} -> {cert.outcome} "
          f"(balanced partition: {cert.balanced_partition}, flow verifies: {ok})")

print("\n== an oddness-4 snark of low cyclic connectivity ==")
g = oddness4_snark()
cert = five_flow_oddness4(g)
print(f"  outcome: {cert.outcome}")
print(f"  reason:  {cert.reason}")
print(f"  cyclic connectivity check: {cert.cyclic}")
fb = cert.fallback_flow
print(f"  fallback 5-flow from the generic solver verifies: "
      f"{verify_flow(g, fb) == [] and is_nowhere_zero(fb)}")
print("\n  claim log (diagnostics for the two violated valuations):")
for ch in cert.claim_log:
    mark = "ok " if ch.passed else "FAIL"
    print(f"    [{mark}] {ch.name}: {ch.detail}")
