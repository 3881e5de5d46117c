# The Accola-Maclachlan surface of genus g from four right-angled (2g+2)-gons.
from geobound.colouring import E1, E2, family_colouring
from geobound.groups import am_presentation, certify_presentation, orbifold_signature
from geobound.isometry import IsometryGroup, polygon_reflections

g = 4

# edges coloured e1, e2, e1, e2, ... around the polygon
lam = family_colouring("am", g)
print(lam.describe())

G = IsometryGroup(lam)
print("surface:", G.analysis.summary())
print("coloured isometries:", len(G), "= 16g+16 =", 16 * g + 16)

# generators of the orientation-preserving part
r1, r2 = polygon_reflections(lam.polytope)
x, y = G.element(r1, E1), G.element(r2, E1)
a, b = G.mul(x, y), y
print("a =", G.describe(a))
print("b =", G.describe(b))

H = G.rotation_subgroup()
pres = am_presentation(g)
print("presentation:", pres)
print("certificate:", certify_presentation(H, [a, b], pres))

sig = orbifold_signature(G.complex, [G.cell_map(a), G.cell_map(b)], G.analysis.orientation)
print("signature of the quotient:", sig)

# a free orientation-reversing involution: the surface bounds
t = G.element(r1, E1 ^ E2)
print(G.describe(t), "fixed point:", G.has_fixed_point(t), "orientation:", G.orientation_sign(t))
