"""Finite cell complexes: the manifold of a colouring and what we do with it.

A :class:`CellComplex` stores, for every dimension, a list of cell labels
and the signed boundary of each cell as ``(index, sign)`` entries into the
dimension below.  Entries keep multiplicity, so non-regular complexes (a
square glued into a torus) are representable.  Cellular maps are
:class:`CellMap` objects, one index permutation per dimension.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from . import gf2
from .colouring import Colouring, is_proper, orientability_functional

Entry = tuple[int, int]


class ComplexError(ValueError):
    pass


class NonFreeActionError(ComplexError):
    pass


@dataclass(eq=False)
class CellComplex:
    dim: int
    labels: list[list[Hashable]]
    boundary: list[list[tuple[Entry, ...]]]
    colouring: Colouring | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.labels) != self.dim + 1 or len(self.boundary) != self.dim + 1:
            raise ComplexError("labels and boundary need one list per dimension")
        for d in range(self.dim + 1):
            if len(self.labels[d]) != len(self.boundary[d]):
                raise ComplexError(f"dimension {d}: {len(self.labels[d])} labels, "
                                   f"{len(self.boundary[d])} boundaries")

    @cached_property
    def index(self) -> list[dict[Hashable, int]]:
        out = []
        for d, labs in enumerate(self.labels):
            idx = {lab: i for i, lab in enumerate(labs)}
            if len(idx) != len(labs):
                raise ComplexError(f"duplicate labels in dimension {d}")
            out.append(idx)
        return out

    def counts(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.labels)

    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.counts()))

    def cells(self) -> Iterable[tuple[int, int]]:
        for d, labs in enumerate(self.labels):
            for i in range(len(labs)):
                yield d, i

    @cached_property
    def coboundary(self) -> list[list[tuple[Entry, ...]]]:
        """``coboundary[d][i]``: ``(j, sign)`` for the (d+1)-cells ``j`` with ``i`` in their boundary."""
        cob: list[list[list[Entry]]] = [[[] for _ in labs] for labs in self.labels]
        for d in range(1, self.dim + 1):
            for j, bd in enumerate(self.boundary[d]):
                for i, s in bd:
                    cob[d - 1][i].append((j, s))
        return [[tuple(c) for c in lst] for lst in cob]

    def boundary_chain(self, d: int, i: int) -> Counter:
        """Integer boundary of a cell as a Counter ``{index: coefficient}``."""
        out: Counter = Counter()
        for j, s in self.boundary[d][i]:
            out[j] += s
        return out

    def check_chain_complex(self) -> bool:
        """Whether the boundary of every boundary vanishes over the integers."""
        for d in range(2, self.dim + 1):
            for i in range(len(self.labels[d])):
                total: Counter = Counter()
                for j, s in self.boundary[d][i]:
                    for k, t in self.boundary[d - 1][j]:
                        total[k] += s * t
                if any(total.values()):
                    return False
        return True

    def is_regular(self) -> bool:
        """Cells attach without self-identification (boundary entries are distinct)."""
        for d in range(1, self.dim + 1):
            for bd in self.boundary[d]:
                if len({j for j, _ in bd}) != len(bd):
                    return False
        return True

    def subcomplex(self, cells: Iterable[tuple[int, int]]) -> CellComplex:
        """The subcomplex spanned by ``cells`` and all their faces."""
        keep: set[tuple[int, int]] = set()
        todo = list(cells)
        while todo:
            d, i = todo.pop()
            if (d, i) in keep:
                continue
            keep.add((d, i))
            if d:
                todo.extend((d - 1, j) for j, _ in self.boundary[d][i])
        top = max(d for d, _ in keep)
        new_index: list[dict[int, int]] = [{} for _ in range(top + 1)]
        labels: list[list[Hashable]] = [[] for _ in range(top + 1)]
        boundary: list[list[tuple[Entry, ...]]] = [[] for _ in range(top + 1)]
        for d in range(top + 1):
            for i in range(len(self.labels[d])):
                if (d, i) in keep:
                    new_index[d][i] = len(labels[d])
                    labels[d].append(self.labels[d][i])
                    boundary[d].append(tuple((new_index[d - 1][j], s) for j, s in self.boundary[d][i])
                                       if d else ())
        return CellComplex(top, labels, boundary)

    def component_cells(self) -> list[list[tuple[int, int]]]:
        """Connected components as lists of ``(dim, index)`` cells."""
        uf = _UnionFind()
        for d, i in self.cells():
            uf.add((d, i))
            if d:
                for j, _ in self.boundary[d][i]:
                    uf.union((d, i), (d - 1, j))
        groups: dict = {}
        for c in self.cells():
            groups.setdefault(uf.find(c), []).append(c)
        return sorted(groups.values())

    def to_json(self, label: Callable[[int, Hashable], object] | None = None,
                orientation: Sequence[int] | None = None) -> dict:
        label = label or (lambda d, lab: str(lab))
        cells = []
        for d, labs in enumerate(self.labels):
            for i, lab in enumerate(labs):
                cell = {"id": f"{d}:{i}", "dim": d, "label": label(d, lab),
                        "boundary": [[f"{d - 1}:{j}", s] for j, s in self.boundary[d][i]]}
                if orientation is not None and d == self.dim:
                    cell["orientation"] = orientation[i]
                cells.append(cell)
        return {"dim": self.dim, "counts": list(self.counts()), "euler": self.euler(), "cells": cells}


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


# -- the manifold of a colouring -----------------------------------------------


def realize(lam: Colouring) -> CellComplex:
    """The manifold of a proper colouring as a cell complex.

    One cell per face ``f`` of the polytope and coset ``v + G_f`` of the
    isotropy subgroup; the label is ``(f, v)`` with ``v`` the lexicographically
    least coset element.  Cells inherit orientation and incidence signs from
    the polytope, so top cells are ``2^k`` copies of the polytope.
    """
    if not is_proper(lam):
        raise ComplexError("improper colouring: the quotient is an orbifold, not a manifold")
    P = lam.polytope
    k = lam.rank
    labels: list[list[Hashable]] = [[] for _ in range(P.dim + 1)]
    iso = {f: lam.isotropy(f) for f in P.faces}
    for f in P.faces:
        labels[P.face_dim(f)].extend((f, rep) for rep in iso[f].cosets())
    index = [{lab: i for i, lab in enumerate(labs)} for labs in labels]
    boundary: list[list[tuple[Entry, ...]]] = [[() for _ in labels[0]]]
    for d in range(1, P.dim + 1):
        row = []
        for f, rep in labels[d]:
            row.append(tuple((index[d - 1][(g, iso[g].coset_rep(rep))], s)
                             for g, s in P.incidence[f]))
        boundary.append(row)
    C = CellComplex(P.dim, labels, boundary, colouring=lam)
    assert len(labels[P.dim]) == 1 << k
    return C


def cell_name(lam: Colouring, label) -> str:
    f, rep = label
    return f"{lam.polytope.face_name(f)}@{''.join(map(str, gf2.to_bits(rep, lam.rank)))}"


def complex_to_json(C: CellComplex, analysis: Analysis | None = None) -> dict:
    lam = C.colouring
    label = (lambda d, lab: cell_name(lam, lab)) if lam is not None else None
    orientation = analysis.orientation if analysis is not None else None
    return C.to_json(label, orientation)


# -- analysis ----------------------------------------------------------------


@dataclass(frozen=True)
class Analysis:
    dim: int
    counts: tuple[int, ...]
    euler: int
    components: int
    closed: bool
    orientable: bool
    genus: int | None
    orientation: tuple[int, ...] | None = field(default=None, repr=False)

    def summary(self) -> dict:
        return {"dim": self.dim, "counts": list(self.counts), "euler": self.euler,
                "components": self.components, "closed": self.closed,
                "orientable": self.orientable, "genus": self.genus}


def analyze(C: CellComplex) -> Analysis:
    """Euler characteristic, connectivity, closedness, orientability and genus.

    Orientability is decided by propagating signs on top cells across
    codimension-one cells: each such cell must receive opposite
    contributions from its two sides.  ``orientation`` holds the signs of a
    fundamental class when one exists.
    """
    d = C.dim
    components = len(C.component_cells())
    incid: list[list[Entry]] = [[] for _ in C.labels[d - 1]] if d else []
    for t, bd in enumerate(C.boundary[d] if d else []):
        for j, s in bd:
            incid[j].append((t, s))
    closed = d > 0 and all(len(x) == 2 for x in incid)
    orientable = d > 0 and all(len(x) <= 2 for x in incid)
    signs: list[int | None] = [None] * len(C.labels[d])
    if orientable:
        nbrs: list[list[tuple[int, int]]] = [[] for _ in signs]
        for x in incid:
            if len(x) == 2:
                (a, sa), (b, sb) = x
                if a == b:
                    if sa == sb:
                        orientable = False
                    continue
                # need sign_a * sa + sign_b * sb == 0
                rel = -sa * sb
                nbrs[a].append((b, rel))
                nbrs[b].append((a, rel))
        for start in range(len(signs)):
            if not orientable:
                break
            if signs[start] is not None:
                continue
            signs[start] = 1
            queue = deque([start])
            while queue and orientable:
                a = queue.popleft()
                for b, rel in nbrs[a]:
                    want = signs[a] * rel
                    if signs[b] is None:
                        signs[b] = want
                        queue.append(b)
                    elif signs[b] != want:
                        orientable = False
                        break
    orientation = tuple(signs) if orientable else None  # type: ignore[arg-type]
    euler = C.euler()
    genus = None
    if d == 2 and closed and orientable and components == 1:
        genus = (2 - euler) // 2
    return Analysis(d, C.counts(), euler, components, closed, orientable, genus, orientation)


def fundamental_cycle_ok(C: CellComplex, orientation: Sequence[int]) -> bool:
    """Whether ``sum(orientation[i] * top_i)`` has zero boundary."""
    d = C.dim
    total: Counter = Counter()
    for t, bd in enumerate(C.boundary[d]):
        for j, s in bd:
            total[j] += orientation[t] * s
    return not any(total.values())


# -- cellular maps ----------------------------------------------------------------


@dataclass(frozen=True)
class CellMap:
    """A dimension-preserving map on cells, one index tuple per dimension."""

    maps: tuple[tuple[int, ...], ...]

    def __call__(self, d: int, i: int) -> int:
        return self.maps[d][i]

    def __mul__(self, other: CellMap) -> CellMap:
        return CellMap(tuple(tuple(a[j] for j in b) for a, b in zip(self.maps, other.maps)))

    def inverse(self) -> CellMap:
        out = []
        for m in self.maps:
            inv = [0] * len(m)
            for i, j in enumerate(m):
                inv[j] = i
            out.append(tuple(inv))
        return CellMap(tuple(out))

    @property
    def is_identity(self) -> bool:
        return all(all(i == j for i, j in enumerate(m)) for m in self.maps)

    def fixed_cells(self) -> list[tuple[int, int]]:
        return [(d, i) for d, m in enumerate(self.maps) for i, j in enumerate(m) if i == j]

    @classmethod
    def identity(cls, C: CellComplex) -> CellMap:
        return cls(tuple(tuple(range(n)) for n in C.counts()))

    @classmethod
    def from_label_map(cls, C: CellComplex, fn: Callable[[int, Hashable], Hashable]) -> CellMap:
        idx = C.index
        return cls(tuple(tuple(idx[d][fn(d, lab)] for lab in labs)
                         for d, labs in enumerate(C.labels)))


def is_cellular_automorphism(C: CellComplex, f: CellMap) -> bool:
    """Bijective on each dimension and preserving unsigned incidence with multiplicity."""
    for d, m in enumerate(f.maps):
        if sorted(m) != list(range(len(C.labels[d]))):
            return False
    for d in range(1, C.dim + 1):
        for i, bd in enumerate(C.boundary[d]):
            src = Counter(f(d - 1, j) for j, _ in bd)
            dst = Counter(j for j, _ in C.boundary[d][f(d, i)])
            if src != dst:
                return False
    return True


def transport_signs(C: CellComplex, f: CellMap) -> list[list[int]]:
    """Orientation signs of a cellular automorphism, cell by cell.

    ``signs[d][i]`` is +1 when ``f`` carries the orientation of cell ``i``
    to that of its image.  Vertices have sign +1 and the sign of a higher
    cell is read off a boundary cell that occurs exactly once in it.
    """
    signs = [[1] * len(C.labels[0])]
    for d in range(1, C.dim + 1):
        row = []
        for i, bd in enumerate(C.boundary[d]):
            mult = Counter(j for j, _ in bd)
            img = f(d, i)
            img_bd = C.boundary[d][img]
            img_mult = Counter(j for j, _ in img_bd)
            for j, s in bd:
                if mult[j] == 1 and img_mult[f(d - 1, j)] == 1:
                    t = next(t for k, t in img_bd if k == f(d - 1, j))
                    row.append(s * signs[d - 1][j] * t)
                    break
            else:
                raise ComplexError(f"cannot transport orientation of cell {d}:{i}")
        signs.append(row)
    return signs


def map_orientation_sign(C: CellComplex, f: CellMap, orientation: Sequence[int]) -> int:
    """+1 if ``f`` preserves the fundamental class given by ``orientation``, -1 if it reverses it."""
    d = C.dim
    eta = transport_signs(C, f)[d]
    vals = {orientation[f(d, i)] * eta[i] * orientation[i] for i in range(len(eta))}
    if len(vals) != 1:
        raise ComplexError("map neither preserves nor reverses the orientation class")
    return vals.pop()


def close_maps(gens: Sequence[CellMap], C: CellComplex) -> list[CellMap]:
    """The group generated by ``gens``, identity first, in discovery order."""
    ident = CellMap.identity(C)
    elems = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                elems.append(y)
                queue.append(y)
    return elems


# -- quotients -------------------------------------------------------------------


@dataclass
class Quotient:
    complex: CellComplex
    projection: list[tuple[int, ...]]
    group: list[CellMap]

    def descend(self, f: CellMap) -> CellMap:
        """The map induced on the quotient by a map normalizing the group."""
        proj = self.projection
        maps = []
        for d, row in enumerate(proj):
            img = [-1] * len(self.complex.labels[d])
            for i, o in enumerate(row):
                t = proj[d][f(d, i)]
                if img[o] == -1:
                    img[o] = t
                elif img[o] != t:
                    raise ComplexError("map does not normalize the group; it does not descend")
            maps.append(tuple(img))
        return CellMap(tuple(maps))


def quotient_with_projection(C: CellComplex, gens: Sequence[CellMap]) -> Quotient:
    """Quotient by a freely acting group of cellular automorphisms.

    Freeness is checked cell by cell: no non-identity element may map any
    cell to itself.  Quotient cells are orbits, represented by their least
    member, with boundary signs corrected by the orientation each group
    element induces.
    """
    group = close_maps(gens, C)
    for h in group[1:]:
        fixed = h.fixed_cells()
        if fixed:
            d, i = fixed[0]
            raise NonFreeActionError(
                f"group element #{group.index(h)} fixes cell {d}:{i} ({C.labels[d][i]!r})")
    n = len(group)
    projection: list[tuple[int, ...]] = []
    reps: list[list[int]] = []
    # which element carries the orbit representative to each cell
    carrier: list[dict[int, int]] = []
    for d, labs in enumerate(C.labels):
        row = [-1] * len(labs)
        rep_row: list[int] = []
        car: dict[int, int] = {}
        for i in range(len(labs)):
            if row[i] != -1:
                continue
            o = len(rep_row)
            rep_row.append(i)
            for k, h in enumerate(group):
                row[h(d, i)] = o
                car[h(d, i)] = k
        if len(labs) % n:
            raise NonFreeActionError(f"dimension {d}: {len(labs)} cells not divisible by |H| = {n}")
        projection.append(tuple(row))
        reps.append(rep_row)
        carrier.append(car)
    eta = [transport_signs(C, h) for h in group]
    labels = [[C.labels[d][i] for i in rep_row] for d, rep_row in enumerate(reps)]
    boundary: list[list[tuple[Entry, ...]]] = [[() for _ in reps[0]]]
    for d in range(1, C.dim + 1):
        row_b = []
        for i in reps[d]:
            entries = []
            for j, s in C.boundary[d][i]:
                k = carrier[d - 1][j]
                j0 = reps[d - 1][projection[d - 1][j]]
                entries.append((projection[d - 1][j], s * eta[k][d - 1][j0]))
            row_b.append(tuple(entries))
        boundary.append(row_b)
    Q = CellComplex(C.dim, labels, boundary)
    return Quotient(Q, projection, group)


def quotient(C: CellComplex, gens: Sequence[CellMap]) -> CellComplex:
    return quotient_with_projection(C, gens).complex


# -- barycentric subdivision -----------------------------------------------------------


def subdivide(C: CellComplex) -> CellComplex:
    """Barycentric subdivision of a regular complex.

    Cells of the result are chains ``c0 < c1 < ... < ck`` in the face poset,
    labelled by tuples of ``(dim, index)``; simplices are oriented by the
    chain order.
    """
    if not C.is_regular():
        raise ComplexError("barycentric subdivision needs a regular complex")
    below: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for d, i in C.cells():
        s: set[tuple[int, int]] = set()
        if d:
            for j, _ in C.boundary[d][i]:
                s.add((d - 1, j))
                s |= below[(d - 1, j)]
        below[(d, i)] = s
    chains_ending: dict[tuple[int, int], list[tuple]] = {}
    for c in C.cells():
        out = [(c,)]
        for x in sorted(below[c]):
            out.extend(ch + (c,) for ch in chains_ending[x])
        chains_ending[c] = out
    by_len: list[list[tuple]] = [[] for _ in range(C.dim + 1)]
    for chs in chains_ending.values():
        for ch in chs:
            by_len[len(ch) - 1].append(ch)
    labels = [sorted(chs) for chs in by_len]
    index = [{lab: i for i, lab in enumerate(labs)} for labs in labels]
    boundary: list[list[tuple[Entry, ...]]] = [[() for _ in labels[0]]]
    for k in range(1, C.dim + 1):
        boundary.append([tuple((index[k - 1][ch[:m] + ch[m + 1:]], (-1) ** m) for m in range(k + 1))
                         for ch in labels[k]])
    return CellComplex(C.dim, labels, boundary)


def lift_map(C: CellComplex, sd: CellComplex, f: CellMap) -> CellMap:
    """The automorphism of ``subdivide(C)`` induced by an automorphism of ``C``."""
    del C
    return CellMap.from_label_map(sd, lambda d, ch: tuple((e, f(e, i)) for e, i in ch))


# -- isomorphism ------------------------------------------------------------------


def isomorphic(C1: CellComplex, C2: CellComplex) -> CellMap | None:
    """An incidence-preserving bijection ``C1 -> C2``, or ``None``.

    Backtracking: the first top cell of ``C1`` is tried against every top
    cell of ``C2``; every later cell is reached from an already mapped
    neighbour and may only go to the matching neighbours of its image.
    """
    if C1.dim != C2.dim or C1.counts() != C2.counts():
        return None
    if _profile(C1) != _profile(C2):
        return None
    if not C1.counts()[C1.dim]:
        return CellMap(tuple(() for _ in C1.labels))
    nb1 = _neighbour_counts(C1)
    nb2 = _neighbour_counts(C2)
    order, parent = _visit_order(C1)
    if len(order) != sum(C1.counts()):
        # disconnected: match components separately
        return _isomorphic_by_components(C1, C2)
    fwd: dict[tuple[int, int], tuple[int, int]] = {}
    bwd: dict[tuple[int, int], tuple[int, int]] = {}

    def consistent(x: tuple[int, int], y: tuple[int, int]) -> bool:
        nx, ny = nb1[x], nb2[y]
        if len(nx) != len(ny):
            return False
        for z, cnt in nx.items():
            w = fwd.get(z)
            if w is not None and ny.get(w) != cnt:
                return False
        for w, cnt in ny.items():
            z = bwd.get(w)
            if z is not None and nx.get(z) != cnt:
                return False
        return True

    def candidates(pos: int) -> list[tuple[int, int]]:
        x = order[pos]
        if pos == 0:
            return [(x[0], j) for j in range(C2.counts()[x[0]])]
        p = parent[x]
        return [w for w in nb2[fwd[p]] if w[0] == x[0] and w not in bwd]

    n = len(order)
    stack = [iter(candidates(0))]
    pos = 0
    while stack:
        x = order[pos]
        assigned = False
        for y in stack[-1]:
            if consistent(x, y):
                fwd[x] = y
                bwd[y] = x
                assigned = True
                break
        if not assigned:
            stack.pop()
            pos -= 1
            if pos < 0:
                return None
            y = fwd.pop(order[pos])
            del bwd[y]
            continue
        if pos == n - 1:
            maps = [[0] * c for c in C1.counts()]
            for (d, i), (_, j) in fwd.items():
                maps[d][i] = j
            return CellMap(tuple(tuple(m) for m in maps))
        pos += 1
        stack.append(iter(candidates(pos)))
    return None


def _isomorphic_by_components(C1: CellComplex, C2: CellComplex) -> CellMap | None:
    comps1 = [C1.subcomplex(c) for c in C1.component_cells()]
    comps2 = [C2.subcomplex(c) for c in C2.component_cells()]
    cells1 = C1.component_cells()
    cells2 = C2.component_cells()
    if len(comps1) != len(comps2):
        return None
    maps = [[0] * c for c in C1.counts()]
    used: set[int] = set()
    for a, A in enumerate(comps1):
        for b, B in enumerate(comps2):
            if b in used or A.dim != B.dim:
                continue
            f = isomorphic(A, B)
            if f is None:
                continue
            used.add(b)
            # subcomplex keeps cells in index order per dimension
            ca = [[i for d2, i in cells1[a] if d2 == d] for d in range(A.dim + 1)]
            cb = [[i for d2, i in cells2[b] if d2 == d] for d in range(B.dim + 1)]
            for d in range(A.dim + 1):
                for k, i in enumerate(ca[d]):
                    maps[d][i] = cb[d][f(d, k)]
            break
        else:
            return None
    return CellMap(tuple(tuple(m) for m in maps))


def _profile(C: CellComplex) -> list:
    out = []
    for d in range(C.dim + 1):
        cob = C.coboundary[d]
        out.append(sorted((len(C.boundary[d][i]), len(cob[i])) for i in range(len(C.labels[d]))))
    return out


def _neighbour_counts(C: CellComplex) -> dict[tuple[int, int], dict[tuple[int, int], int]]:
    out: dict[tuple[int, int], dict[tuple[int, int], int]] = {c: {} for c in C.cells()}
    for d in range(1, C.dim + 1):
        for i, bd in enumerate(C.boundary[d]):
            for j, _ in bd:
                a, b = (d, i), (d - 1, j)
                out[a][b] = out[a].get(b, 0) + 1
                out[b][a] = out[b].get(a, 0) + 1
    return out


def _visit_order(C: CellComplex):
    start = (C.dim, 0)
    order = [start]
    parent: dict = {}
    seen = {start}
    queue = deque([start])
    cob = C.coboundary
    while queue:
        d, i = queue.popleft()
        nbrs = []
        if d:
            nbrs += [(d - 1, j) for j, _ in C.boundary[d][i]]
        if d < C.dim:
            nbrs += [(d + 1, j) for j, _ in cob[d][i]]
        for c in nbrs:
            if c not in seen:
                seen.add(c)
                parent[c] = (d, i)
                order.append(c)
                queue.append(c)
    return order, parent


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=1)


