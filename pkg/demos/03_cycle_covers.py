"""Flows built from cycle covers.

Every bridgeless graph is covered by three cycles (the 8-flow theorem in
disguise); fixed rational vectors on those cycles give a (5/2, 3)-Manhattan
flow.  A 4-OCDC gives unit Chebyshev vectors in dimension 2, a 5-OCDC unit
Manhattan vectors in dimension 3, and a cycle double cover paired with a
Hadamard matrix gives unit Manhattan vectors in dimension m-1.
"""

from nzflow import (MANHATTAN, CHEBYSHEV, find_cycle_cover, find_k_ocdc,
                    find_z2cube_flow, flow_from_3cover_q, flow_from_4ocdc,
                    flow_from_5ocdc_3d, flow_from_cdc_hadamard,
                    flow_from_cover_basis, format_cover, hadamard_sylvester,
                    named_graph, norm, verify)

pet = named_graph("petersen")
k4 = named_graph("k4")

print("Three covering cycles on the Petersen graph:")
cycles = find_z2cube_flow(pet)
print("  cycle sizes:", [len(c) for c in cycles])
fa = flow_from_3cover_q(pet, cycles)
print("  (5/2,3)-MNZF norms:", sorted({str(norm(v, MANHATTAN)) for v in fa.values}),
      "valid:", verify(fa).valid)

print()
print("Oriented cycle double covers:")
out = find_k_ocdc(k4, 4)
fa = flow_from_4ocdc(out.value)
print("  K4 4-OCDC -> (2,2)-ChNZF with unit norms:",
      all(norm(v, CHEBYSHEV) == 1 for v in fa.values))
out = find_k_ocdc(pet, 5)
fa = flow_from_5ocdc_3d(out.value)
print("  Petersen 5-OCDC -> (2,3)-MNZF with unit norms:",
      all(norm(v, MANHATTAN) == 1 for v in fa.values))
out = find_k_ocdc(pet, 4)
print("  Petersen 4-OCDC: found =", out.value is not None,
      "(exhaustive =", str(out.exhaustive) + ")",
      "- consistent with Petersen not being 3-edge-colourable")

print()
print("Hadamard construction on K4 (order-4 matrix, 5-cycle double cover):")
h4 = hadamard_sylvester(4)
for row in h4.rows:
    print("   ", " ".join("+" if x > 0 else "-" for x in row))
cdc = find_cycle_cover(k4, 5, 2).value
fa = flow_from_cdc_hadamard(cdc, h4)
print("  (2,4)-MNZF with unit norms:",
      all(norm(v, MANHATTAN) == 1 for v in fa.values))

print()
print("General m-cycle k-cover bound on K4 (7 cycles, 4-fold cover):")
cover = find_cycle_cover(k4, 7, 4).value
for n in (0, 1):
    fa = flow_from_cover_basis(cover, n)
    print(f"  n={n}: dimension {fa.dim}, window r = {fa.r}, valid:",
          verify(fa).valid)

print()
print("Covers serialize to a small text format:")
print(format_cover(cdc))
