# Wiman type II surfaces as a free quotient of a 4g-gon colouring surface.
from geobound.colouring import E1, E2, family_colouring
from geobound.complex import analyze, quotient
from geobound.groups import orbifold_signature
from geobound.isometry import IsometryGroup, polygon_reflections, search_involutions

for g in (2, 3):
    G = IsometryGroup(family_colouring("wiman", g))
    r1, r2 = polygon_reflections(G.polytope)
    a, b = G.element(r1 * r2, 0), G.element(r2, E1)
    c = G.mul(G.power(a, 2 * g), G.mul(b, b))
    print(f"g={g}: cover has genus {G.analysis.genus}, c_g = {G.describe(c)}")
    print("  c_g has a fixed point:", G.has_fixed_point(c))

    Z = quotient(G.complex, [G.cell_map(c)])
    print("  quotient:", analyze(Z).summary())

    sig = orbifold_signature(G.complex, [G.cell_map(a), G.cell_map(G.mul(b, b))], G.analysis.orientation)
    print("  signature for <a, b^2>:", sig)

    # reversing involutions of the quotient come from elements squaring into <c_g>
    found = search_involutions(G, -1, c)
    print("  reversing free involutions mod c_g:", len(found))
