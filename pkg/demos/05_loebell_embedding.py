# A genus-g surface sitting inside a closed hyperbolic 3-manifold built from R(m).
from geobound.colouring import E2, E3, family_colouring, induced_colouring, are_equivalent
from geobound.complex import analyze, quotient, realize
from geobound.isometry import has_fixed_point, loebell_half_turn, make_isometry, orientation_sign
from geobound.suite import component_over_facet, restricted_map

g = 3
L = family_colouring("loebell-wiman", g)
C = realize(L)
print("3-manifold:", analyze(C).summary())

mu = induced_colouring(L, "T")
print("colouring induced on T:", mu.describe())
print("equivalent to the 4g-gon colouring:", are_equivalent(mu, family_colouring("wiman", g)) is not None)

comps, surface = component_over_facet(C, L, "T")
print("components over T:", len(comps), "surface:", analyze(surface).summary())

# the half-turn, shifted by e2+e3, acts freely and restricts to c_g on the surface
S = make_isometry(L, loebell_half_turn(L.polytope), E2 ^ E3)
print("S fixed point:", has_fixed_point(L, S), "orientation:", orientation_sign(L, S))
print("surface / S:", analyze(quotient(surface, [restricted_map(surface, L, S)])).summary())
