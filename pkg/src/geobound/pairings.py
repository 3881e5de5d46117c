"""Surfaces glued from copies of a polygon along a side pairing.

Copies are labelled by bit tuples (``(0, 1)`` is the copy ``e2`` of
``Z2^2``) and sides of each copy are numbered ``1..m`` clockwise; side
``i`` runs from corner ``i - 1`` to corner ``i``, where corner ``k`` is the
vertex shared by sides ``k`` and ``k + 1``.

Every copy carries an orientation sign, by default ``(-1)^(number of ones)``
of its label, which is how the copies of a polygon sit in the manifold of a
colouring.  A pairing preserves orientation when the two sides are traversed
in opposite directions of the glued surface.  Between copies of opposite
sign this identifies the start of one side with the start of the other;
between copies of equal sign the start of one goes to the end of the other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .colouring import check_genus
from .complex import CellComplex, _UnionFind

Copy = tuple[int, ...]
Side = tuple[int, Copy]


class PairingError(ValueError):
    pass


@dataclass(frozen=True)
class PairingTable:
    m: int
    copies: tuple[Copy, ...]
    pairs: dict[Side, Side]
    signs: dict[Copy, int]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise PairingError("polygons need at least two sides")
        if len(set(self.copies)) != len(self.copies):
            raise PairingError("repeated copy labels")
        sides = {(i, c) for c in self.copies for i in range(1, self.m + 1)}
        if set(self.pairs) != sides:
            raise PairingError("every side of every copy must be paired exactly once")
        for x, y in self.pairs.items():
            if y not in sides:
                raise PairingError(f"side {x} is paired with unknown side {y}")
            if y == x:
                raise PairingError(f"side {x} is paired with itself")
            if self.pairs[y] != x:
                raise PairingError(f"pairing is not an involution at {x}")
        if set(self.signs) != set(self.copies) or any(s not in (1, -1) for s in self.signs.values()):
            raise PairingError("each copy needs an orientation sign +1 or -1")

    @classmethod
    def from_rule(cls, m: int, copies, rule, signs: dict | None = None) -> PairingTable:
        """Table from a partner function ``rule(i, copy) -> (j, copy)``; labels are taken mod ``m``."""
        copies = tuple(tuple(c) for c in copies)
        pairs: dict[Side, Side] = {}
        for c in copies:
            for i in range(1, m + 1):
                j, d = rule(i, c)
                target = ((j - 1) % m + 1, tuple(d))
                if pairs.get(target, (i, c)) != (i, c):
                    raise PairingError(f"side {target} is paired twice")
                pairs[(i, c)] = target
                pairs[target] = (i, c)
        return cls(m, copies, pairs, signs or default_signs(copies))

    def edges(self) -> list[tuple[Side, Side]]:
        """Each pair once, as ``(x, y)`` with ``x < y``, sorted."""
        return sorted({tuple(sorted((x, y))) for x, y in self.pairs.items()})  # type: ignore[misc]

    def to_json(self) -> dict:
        return {"m": self.m, "copies": [list(c) for c in self.copies],
                "pairs": [[[i, list(c)], [j, list(d)]] for (i, c), (j, d) in self.edges()],
                "signs": [self.signs[c] for c in self.copies]}

    @classmethod
    def from_json(cls, data: dict | str) -> PairingTable:
        if isinstance(data, str):
            data = json.loads(data)
        copies = tuple(tuple(c) for c in data["copies"])
        pairs: dict[Side, Side] = {}
        for (i, c), (j, d) in data["pairs"]:
            x, y = (i, tuple(c)), (j, tuple(d))
            if x in pairs or y in pairs:
                raise PairingError(f"side paired twice in {x} ~ {y}")
            pairs[x] = y
            pairs[y] = x
        signs = dict(zip(copies, data["signs"])) if "signs" in data else default_signs(copies)
        return cls(data["m"], copies, pairs, signs)


def default_signs(copies) -> dict[Copy, int]:
    return {tuple(c): (-1) ** sum(c) for c in copies}


def _z2(n: int) -> list[Copy]:
    return [tuple((k >> b) & 1 for b in range(n)) for k in range(1 << n)]


def _add(v: Copy, k: int) -> Copy:
    """``v + e_k``."""
    return tuple(x ^ (b == k - 1) for b, x in enumerate(v))


def theorem_e_table(family: str, g: int) -> PairingTable:
    """The side pairings presenting the three surfaces of genus ``g``."""
    if family not in ("am", "wiman", "kulkarni"):
        raise PairingError(f"no pairing table for family {family!r}")
    check_genus(family, g)
    if family == "am":
        return PairingTable.from_rule(
            2 * g + 2, _z2(2), lambda i, v: (i, _add(v, 1 if i % 2 else 2)))
    if family == "wiman":
        def rule(i: int, c: Copy) -> Side:
            # stated for copy 0; copy 1 is covered by symmetry
            if c == (1,):
                return (i, (0,)) if i % 2 else (i - 2 * g, (0,))
            return (i, (1,)) if i % 2 else (2 * g + i, (1,))
        return PairingTable.from_rule(4 * g, _z2(1), rule)

    def krule(i: int, v: Copy) -> Side:
        r = i % 4
        if r == 1:
            return i, _add(v, 1)
        if r == 2:
            return i, _add(v, 2)
        return g + 1 + i, _add(v, 1 if r == 3 else 2)
    return PairingTable.from_rule(2 * g + 2, _z2(2), krule)


def glue(table: PairingTable) -> CellComplex:
    """The 2-complex of the glued polygons.

    Vertices are classes of corners, edges are pairs of sides (directed
    like the lesser side), faces are the copies.  Boundary signs are
    relative to each copy's clockwise orientation, so the copy signs form a
    fundamental cycle.
    """
    m = table.m
    uf = _UnionFind()
    for c in table.copies:
        for k in range(1, m + 1):
            uf.add((k, c))

    def prev(k: int) -> int:
        return (k - 2) % m + 1

    same: dict[tuple[Side, Side], bool] = {}
    for x, y in table.edges():
        (i, c), (j, d) = x, y
        equal = table.signs[c] == table.signs[d]
        same[(x, y)] = equal
        if equal:
            uf.union((prev(i), c), (j, d))
            uf.union((i, c), (prev(j), d))
        else:
            uf.union((prev(i), c), (prev(j), d))
            uf.union((i, c), (j, d))
    classes: dict = {}
    for c in table.copies:
        for k in range(1, m + 1):
            classes.setdefault(uf.find((k, c)), []).append((k, c))
    vlabels = sorted(tuple(sorted(v)) for v in classes.values())
    vindex = {}
    for n, v in enumerate(vlabels):
        for corner in v:
            vindex[corner] = n
    elabels = table.edges()
    eindex = {}
    eboundary = []
    for n, (x, y) in enumerate(elabels):
        i, c = x
        eindex[x] = (n, 1)
        eindex[y] = (n, -1 if same[(x, y)] else 1)
        eboundary.append(((vindex[(i, c)], 1), (vindex[(prev(i), c)], -1)))
    fboundary = [tuple(eindex[(i, c)] for i in range(1, m + 1)) for c in table.copies]
    return CellComplex(2, [list(vlabels), list(elabels), list(table.copies)],
                       [[() for _ in vlabels], eboundary, fboundary])


def square_torus() -> PairingTable:
    """One square with opposite sides paired: sides 1, 3 and 2, 4."""
    return PairingTable.from_rule(4, [()], lambda i, c: (i + 2, c))
