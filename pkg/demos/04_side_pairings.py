# Gluing polygon copies along the side-pairing tables.
from geobound.complex import analyze
from geobound.pairings import glue, square_torus, theorem_e_table

C = glue(square_torus())
print("square torus:", analyze(C).summary())

for family, g in (("am", 3), ("wiman", 3), ("kulkarni", 7)):
    T = theorem_e_table(family, g)
    side = (3, T.copies[0])
    print(f"{family} g={g}: {len(T.copies)} copies of a {T.m}-gon, {side} ~ {T.pairs[side]}")
    print("   ", analyze(glue(T)).summary())
