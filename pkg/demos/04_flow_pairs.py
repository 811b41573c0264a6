"""t-flow-pairs and the flows they induce.

A 1/2-flow-pair (a 2-flow plus a 4-flow that is at least 2 in magnitude
wherever the 2-flow vanishes) yields both a (5/2, 2)-Chebyshev flow and a
nowhere-zero 5-flow; finding such pairs on snarks is the interesting case.
"""

from nzflow import (check_support_two_factor, chnzf_from_pair, find_t_flow_pair,
                    flow_number, named_graph, nzf1d_from_pair, verify, CHEBYSHEV)

pet = named_graph("petersen")

out = find_t_flow_pair(pet, 1, 2)
pair = out.value
print("1/2-flow-pair on the Petersen graph:", "found" if pair else "none",
      f"({out.nodes} nodes)")
print("  phi2 support is a 2-factor:", check_support_two_factor(pair))
print("  phi2:", pair.phi2)
print("  phi4:", pair.phi_big)

ch = chnzf_from_pair(pair)
print(f"  derived ({ch.r}, 2)-ChNZF valid:", verify(ch).valid)
nz = nzf1d_from_pair(pair)
values = sorted({str(abs(v[0])) for v in nz.values})
print(f"  derived ({nz.r}, 1)-NZF valid:", verify(nz).valid,
      "| value magnitudes:", values)
print("  note r relation: ", nz.r, "=", "2 *", ch.r)

print()
print("The 1-pair (a 2-flow plus a 3-flow) always exists:")
out = find_t_flow_pair(pet, 1, 1)
print("  found:", out.value is not None)

print()
print("Cross-check: Phi_1(petersen) via the ladder =",
      flow_number(pet, 1, CHEBYSHEV, 2).value,
      "(the derived 5-flow above witnesses feasibility at 5)")

print()
print("On K4 (not a snark) the generic search still finds a 1/2-pair:")
out = find_t_flow_pair(named_graph("k4"), 1, 2)
print("  found:", out.value is not None,
      "| support size:", sum(1 for x in out.value.phi2 if x))
