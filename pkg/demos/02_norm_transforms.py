"""The exact linear maps between 2-D Manhattan and Chebyshev flows.

The map (x, y) -> ((x-y)/2, (x+y)/2) turns Chebyshev norms into Manhattan
norms coordinate by coordinate; its inverse (x, y) -> (x+y, y-x) goes back.
Both preserve conservation because they are linear, so the two flow numbers
coincide in two dimensions.
"""

from fractions import Fraction

from nzflow import (CHEBYSHEV, MANHATTAN, cheb_to_manh_2d, decide_chnzf,
                    decide_mnzf_2d, manh_to_cheb_2d, named_graph, norm, verify)

pet = named_graph("petersen")
cheb = decide_chnzf(pet, 5, 2, 2)
print("Chebyshev witness on the Petersen graph at r = 5/2:")
print("  edge values are multiples of 1/2, Chebyshev norms:",
      sorted({str(norm(v, CHEBYSHEV)) for v in cheb.values}))

manh = cheb_to_manh_2d(cheb)
print("After the linear map, Manhattan norms:",
      sorted({str(norm(v, MANHATTAN)) for v in manh.values}))
print("  still a valid flow:", verify(manh).valid)
print("  coordinates are multiples of 1/4 (the 2q denominator):",
      all(c.denominator in (1, 2, 4) for v in manh.values for c in v))

back = manh_to_cheb_2d(manh)
print("Round trip returns the original values:", back.values == cheb.values)

print()
print("Sample vector images:")
for vec in [(Fraction(1), Fraction(1)), (Fraction(1), Fraction(0))]:
    img = ((vec[0] - vec[1]) / 2, (vec[0] + vec[1]) / 2)
    print(f"  {tuple(map(str, vec))} -> {tuple(map(str, img))}   "
          f"(Chebyshev {norm(vec, CHEBYSHEV)} = Manhattan {norm(img, MANHATTAN)})")

print()
print("A direct Manhattan decision just reuses the Chebyshev engine:")
half = decide_mnzf_2d(named_graph("k4"), 2, 1)
print("  K4 (2,2)-MNZF witness needs half-integer coordinates:",
      sorted({str(c) for v in half.values for c in v}))
