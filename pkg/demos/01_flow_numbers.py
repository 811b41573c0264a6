"""Flow numbers of the named graphs, exactly.

Computes the 2-dimensional Chebyshev flow number of K4, the Petersen graph
and both Blanusa snarks, prints the witnesses' norm profiles, and checks
the snark lower bound 2 + 1/floor((n-2)/4) against the computed values.
"""

from nzflow import (CHEBYSHEV, flow_number, named_graph, norm,
                    snark_lower_bound, verify)


def show(name, qmax):
    g = named_graph(name)
    res = flow_number(g, 2, CHEBYSHEV, qmax)
    norms = sorted({str(norm(v, CHEBYSHEV)) for v in res.witness.values})
    print(f"{name:10s} n={g.vertex_count:>2}  Phi_2^inf = {res.value}  "
          f"({res.status}, qmax={qmax})  witness norms: {norms}")
    if g.vertex_count >= 10:
        bound = snark_lower_bound(g.vertex_count)
        mark = "attained" if res.value == bound else "not attained"
        print(f"{'':10s} snark lower bound {bound} -> {mark}")
    assert verify(res.witness).valid
    return res


print("Exact 2-D Chebyshev flow numbers")
print("=" * 60)
show("k4", qmax=1)
show("petersen", qmax=4)
show("blanusa1", qmax=4)
show("blanusa2", qmax=4)

print()
print("The 1-D case (circular flow number) for the Petersen graph:")
res = flow_number(named_graph("petersen"), 1, CHEBYSHEV, 2)
print(f"  Phi_1(petersen) = {res.value}  (the classical value 5)")

print()
print("Dimension 3 under the Chebyshev norm collapses to the minimum:")
res = flow_number(named_graph("petersen"), 3, CHEBYSHEV, 1)
print(f"  Phi_3^inf(petersen) = {res.value}")
