# Kulkarni surfaces, g = 3 mod 4: a colouring with a non-trivial colour action.
from geobound.colouring import E1, E3, family_colouring
from geobound.complex import analyze, isomorphic, quotient, realize
from geobound.groups import certify_presentation, kulkarni_presentation
from geobound.isometry import IsometryGroup, polygon_reflections, search_involutions
from geobound.polytope import Symmetry

g = 11
G = IsometryGroup(family_colouring("kulkarni", g))
r1, r2 = polygon_reflections(G.polytope)
print("Phi(r1) rows:", G.element(r1, 0).phi.rows())
print("Phi(r2) rows:", G.element(r2, 0).phi.rows())

d = G.element((r1 * r2) ** (g + 1), E1 ^ E3)
print("d_g =", G.describe(d), "fixed point:", G.has_fixed_point(d))

x, z = G.element(r1, E1), G.element(r2, E1)
a, b = G.mul(x, z), G.power(z, 3)
N = G.rotation_subgroup().normalizer([d])
Q = N.quotient(N.subgroup([d]))
print("N(d)/<d> certificate:", certify_presentation(Q, [Q.canonical[a], Q.canonical[b]],
                                                    kulkarni_presentation(g)))

Y = quotient(G.complex, [G.cell_map(d)])
print("quotient genus:", analyze(Y).genus)
print("bounding involutions mod d_g:", len(search_involutions(G, -1, d)))

# another free quotient gives back the alternating colouring surface
e = G.element(Symmetry.identity(G.polytope.n_facets), E1 ^ E3)
X = quotient(G.complex, [G.cell_map(e)])
print("M/<e> isomorphic to the AM surface:", isomorphic(X, realize(family_colouring("am", g))) is not None)
