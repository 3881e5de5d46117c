"""Combinatorial simple polytopes in dimensions 2 and 3.

A polytope is given by its facets and its vertices, each vertex being the
set of ``dim`` facets through it.  Every other face is an intersection of
facets and is represented by its facet set, as a frozenset of facet
*indices* (positions in ``Polytope.facets``); the whole polytope is the
empty set.

Besides the face lattice, the polytope carries an oriented cellular chain
complex (signed incidences between faces of consecutive dimensions).  It is
derived from the vertex list alone: the boundary cycle of every polygonal
face is recovered from the vertices and the cycles are then oriented
coherently.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

FacetId = Hashable
Face = frozenset  # frozenset[int] of facet indices


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Symmetry:
    """A permutation of facet indices preserving the face lattice.

    ``perm[i]`` is the index of the image of facet ``i``.  Composition
    ``s * t`` applies ``t`` first.
    """

    perm: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def __mul__(self, other: Symmetry) -> Symmetry:
        p = self.perm
        return Symmetry(tuple(p[j] for j in other.perm))

    def __pow__(self, n: int) -> Symmetry:
        if n < 0:
            return self.inverse() ** (-n)
        out = Symmetry.identity(len(self.perm))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> Symmetry:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Symmetry(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Symmetry:
        return cls(tuple(range(n)))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def order(self) -> int:
        k, s = 1, self
        while not s.is_identity:
            s = s * self
            k += 1
        return k

    def image(self, face: Iterable[int]) -> Face:
        return frozenset(self.perm[i] for i in face)


class Polytope:
    """A simple polytope described combinatorially."""

    def __init__(self, dim: int, facets: Sequence[FacetId], vertices: Iterable[Iterable[FacetId]]):
        if dim not in (2, 3):
            raise PolytopeError(f"dimension must be 2 or 3, got {dim}")
        self.dim = dim
        self.facets = tuple(facets)
        if len(set(self.facets)) != len(self.facets):
            raise PolytopeError("duplicate facet identifiers")
        self._index = {f: i for i, f in enumerate(self.facets)}
        verts = []
        for v in vertices:
            try:
                face = frozenset(self._index[f] for f in v)
            except KeyError as exc:
                raise PolytopeError(f"vertex {list(v)} names an unknown facet {exc}") from None
            if len(face) != dim:
                raise PolytopeError(f"vertex {list(v)} does not lie in exactly {dim} facets")
            verts.append(face)
        if len(set(verts)) != len(verts):
            raise PolytopeError("duplicate vertex")
        self.vertices = tuple(verts)
        self._validate()

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, facets={len(self.facets)}, vertices={len(self.vertices)})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Polytope) and self.dim == other.dim
                and self.facets == other.facets and set(self.vertices) == set(other.vertices))

    def __hash__(self) -> int:
        return hash((self.dim, self.facets, frozenset(self.vertices)))

    def index(self, facet: FacetId) -> int:
        return self._index[facet]

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    # -- face lattice ---------------------------------------------------------

    @cached_property
    def edges(self) -> tuple[Face, ...]:
        """1-faces as facet sets (for polygons these are the facets)."""
        if self.dim == 2:
            return tuple(frozenset([i]) for i in range(self.n_facets))
        es = {frozenset(p) for v in self.vertices for p in itertools.combinations(v, 2)}
        return tuple(sorted(es, key=sorted))

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """All faces, ordered by dimension (polytope first) then facet set."""
        out: list[Face] = [frozenset()]
        out += [frozenset([i]) for i in range(self.n_facets)]
        if self.dim == 3:
            out += list(self.edges)
        out += sorted(self.vertices, key=sorted)
        return tuple(out)

    def face_dim(self, face: Face) -> int:
        return self.dim - len(face)

    @cached_property
    def face_set(self) -> frozenset:
        return frozenset(self.faces)

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        """Facets sharing a ridge with each facet."""
        adj: list[set[int]] = [set() for _ in self.facets]
        for v in self.vertices:
            for i, j in itertools.combinations(v, 2):
                adj[i].add(j)
                adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def vertices_of_edge(self) -> dict[Face, tuple[Face, ...]]:
        out: dict[Face, list[Face]] = {}
        for v in self.vertices:
            for e in itertools.combinations(v, self.dim - 1):
                out.setdefault(frozenset(e), []).append(v)
        return {e: tuple(vs) for e, vs in out.items()}

    def _validate(self) -> None:
        counts = [0] * self.n_facets
        for v in self.vertices:
            for i in v:
                counts[i] += 1
        for i, c in enumerate(counts):
            if c < self.dim:
                raise PolytopeError(f"facet {self.facets[i]!r} lies on only {c} vertices")
        for e, vs in self.vertices_of_edge.items():
            if len(vs) != 2:
                raise PolytopeError(f"edge {sorted(e)} has {len(vs)} vertices, expected 2")
        seen = {0}
        todo = [0]
        while todo:
            i = todo.pop()
            for j in self.adjacency[i]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        if len(seen) != self.n_facets:
            raise PolytopeError("facet adjacency graph is disconnected")
        if self.dim == 3:
            v, e, f = len(self.vertices), len(self.edges), self.n_facets
            if v - e + f != 2:
                raise PolytopeError(f"Euler relation fails: {v} - {e} + {f} != 2")
        # forces the orientation to be computed, which checks that every
        # 2-face boundary is a single cycle
        self.incidence

    # -- orientation ------------------------------------------------------------

    def facet_cycle(self, i: int) -> tuple[int, ...]:
        """Neighbours of a 3-polytope facet in boundary order (outward orientation)."""
        if self.dim != 3:
            raise PolytopeError("facet cycles are defined for 3-polytopes")
        return self._oriented_cycles[i]

    @cached_property
    def boundary_cycle(self) -> tuple[int, ...]:
        """Facets of a polygon in boundary order, starting at facet 0."""
        if self.dim != 2:
            raise PolytopeError("boundary cycle is defined for polygons")
        return _cycle_from_pairs(range(self.n_facets), [tuple(v) for v in self.vertices], 0)

    @cached_property
    def _oriented_cycles(self) -> tuple[tuple[int, ...], ...]:
        cycles: list[tuple[int, ...] | None] = [None] * self.n_facets
        # unoriented cycle of neighbours of facet i: neighbours j, k are
        # consecutive when {i, j, k} is a vertex
        raw = []
        for i in range(self.n_facets):
            pairs = [tuple(v - {i}) for v in self.vertices if i in v]
            nbrs = sorted(self.adjacency[i])
            raw.append(_cycle_from_pairs(nbrs, pairs, nbrs[0]))
        cycles[0] = raw[0]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            cyc = cycles[i]
            n = len(cyc)
            for pos, j in enumerate(cyc):
                k = cyc[(pos + 1) % n]
                # vertex {i, j, k} has cyclic order (i, j, k) seen from i;
                # facet j must see (j, k, i), i.e. k followed by i
                want = _oriented(raw[j], k, i)
                if cycles[j] is None:
                    cycles[j] = want
                    queue.append(j)
                elif cycles[j] != want:
                    raise PolytopeError("boundary complex is not coherently orientable")
        return tuple(cycles)  # type: ignore[arg-type]

    @cached_property
    def incidence(self) -> dict[Face, tuple[tuple[Face, int], ...]]:
        """Signed boundary of every face of positive dimension.

        ``incidence[f]`` lists ``(g, sign)`` for the codimension-one faces
        ``g`` of ``f``.  These form a chain complex (the boundary of a
        boundary vanishes) and the top face's boundary is the fundamental
        class of the boundary sphere.
        """
        inc: dict[Face, tuple[tuple[Face, int], ...]] = {}
        whole = frozenset()
        inc[whole] = tuple((frozenset([i]), 1) for i in range(self.n_facets))
        if self.dim == 2:
            cyc = self.boundary_cycle
            n = len(cyc)
            for pos, i in enumerate(cyc):
                tail = frozenset([cyc[pos - 1], i])
                head = frozenset([i, cyc[(pos + 1) % n]])
                inc[frozenset([i])] = ((tail, -1), (head, 1))
            return inc
        # 3-polytopes: edges oriented from their lexicographically smaller
        # vertex; facets traverse their boundary cycle
        edge_dir: dict[Face, tuple[Face, Face]] = {}
        for e in self.edges:
            a, b = sorted(self.vertices_of_edge[e], key=sorted)
            edge_dir[e] = (a, b)
            inc[e] = ((a, -1), (b, 1))
        for i in range(self.n_facets):
            cyc = self._oriented_cycles[i]
            n = len(cyc)
            entries = []
            for pos, j in enumerate(cyc):
                e = frozenset([i, j])
                start = frozenset([i, cyc[pos - 1], j])
                sign = 1 if edge_dir[e][0] == start else -1
                entries.append((e, sign))
            inc[frozenset([i])] = tuple(entries)
        return inc

    def orientation_character(self, s: Symmetry) -> int:
        """+1 if ``s`` preserves the orientation of the polytope, else -1.

        Transports orientations up the face lattice: vertices map to
        vertices with sign +1 and each higher face's sign is read off one
        of its boundary faces.
        """
        sign: dict[Face, int] = {v: 1 for v in self.vertices}
        for face in sorted(self.incidence, key=len, reverse=True):
            img = s.image(face)
            g, sg = self.incidence[face][0]
            target = dict(self.incidence[img])
            sign[face] = sg * sign[g] * target[s.image(g)]
        return sign[frozenset()]

    # -- symmetries -----------------------------------------------------------

    @cached_property
    def _automorphisms(self) -> tuple[Symmetry, ...]:
        v0 = sorted(self.vertices[0])
        found = set()
        for w in self.vertices:
            for img in itertools.permutations(sorted(w)):
                s = self._extend(dict(zip(v0, img)))
                if s is not None:
                    found.add(s)
        return tuple(sorted(found, key=lambda s: s.perm))

    def _extend(self, start: dict[int, int]) -> Symmetry | None:
        # propagate a flag image across edges: from a vertex with known
        # images, the neighbouring vertex through the edge that drops facet
        # x is determined, and so is the image of its new facet
        m = dict(start)
        vset = self.face_set
        queue = deque([self.vertices[0]])
        seen = {self.vertices[0]}
        while queue:
            v = queue.popleft()
            img_v = frozenset(m[i] for i in v)
            if img_v not in vset or len(img_v) != self.dim:
                return None
            for x in v:
                e = v - {x}
                w = next(u for u in self.vertices_of_edge[e] if u != v)
                (y,) = w - e
                img_e = frozenset(m[i] for i in e)
                cands = self.vertices_of_edge.get(img_e)
                if cands is None:
                    return None
                img_w = next((u for u in cands if u != img_v), None)
                if img_w is None:
                    return None
                (img_y,) = img_w - img_e
                if y in m:
                    if m[y] != img_y:
                        return None
                else:
                    m[y] = img_y
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(m) != self.n_facets or len(set(m.values())) != self.n_facets:
            return None
        s = Symmetry(tuple(m[i] for i in range(self.n_facets)))
        if {s.image(v) for v in self.vertices} != set(self.vertices):
            return None
        return s

    def automorphisms(self) -> list[Symmetry]:
        """All face-lattice automorphisms, sorted by permutation."""
        return list(self._automorphisms)

    def is_automorphism(self, s: Symmetry) -> bool:
        return (len(s.perm) == self.n_facets and sorted(s.perm) == list(range(self.n_facets))
                and {s.image(v) for v in self.vertices} == set(self.vertices))

    def symmetry(self, mapping: dict[FacetId, FacetId]) -> Symmetry:
        """Symmetry from a facet-id mapping; raises if it is not an automorphism."""
        perm = tuple(self._index[mapping[f]] for f in self.facets)
        s = Symmetry(perm)
        if not self.is_automorphism(s):
            raise PolytopeError("mapping does not preserve the face lattice")
        return s

    def invariant_faces(self, s: Symmetry) -> list[Face]:
        """Faces mapped to themselves setwise (the polytope itself included)."""
        return [f for f in self.faces if s.image(f) == f]

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "facets": list(self.facets),
            "vertices": [[self.facets[i] for i in sorted(v)] for v in sorted(self.vertices, key=sorted)],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> Polytope:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["dim"], data["facets"], data["vertices"])

    def face_name(self, face: Face) -> str:
        if not face:
            return "P"
        return "^".join(str(self.facets[i]) for i in sorted(face))


def _cycle_from_pairs(nodes: Iterable[int], pairs: Sequence[tuple[int, int]], start: int) -> tuple[int, ...]:
    nbr: dict[int, list[int]] = {n: [] for n in nodes}
    for a, b in pairs:
        nbr[a].append(b)
        nbr[b].append(a)
    for n, ns in nbr.items():
        if len(ns) != 2:
            raise PolytopeError(f"face boundary is not a cycle near facet index {n}")
    cyc = [start, min(nbr[start])]
    while True:
        a, b = nbr[cyc[-1]]
        nxt = a if a != cyc[-2] else b
        if nxt == start:
            break
        cyc.append(nxt)
    if len(cyc) != len(nbr):
        raise PolytopeError("face boundary splits into several cycles")
    return tuple(cyc)


def _oriented(cycle: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    """``cycle`` rotated to start at its minimum, reversed if needed so that
    ``b`` follows ``a``."""
    n = len(cycle)
    pos = cycle.index(a)
    if cycle[(pos + 1) % n] != b:
        cycle = tuple(reversed(cycle))
        if cycle[(cycle.index(a) + 1) % n] != b:
            raise PolytopeError("inconsistent vertex structure")
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


# -- builders ------------------------------------------------------------------


def build_polygon(m: int) -> Polytope:
    """The right-angled ``m``-gon with edges ``1..m`` in clockwise order."""
    if m < 5:
        raise PolytopeError(f"a right-angled {m}-gon is not hyperbolic (need m >= 5)")
    return Polytope(2, range(1, m + 1), [(i, i % m + 1) for i in range(1, m + 1)])


def build_loebell(m: int) -> Polytope:
    """The Löbell polyhedron R(m).

    Facets ``T`` and ``B`` are the two ``m``-gons, ``t1..tm`` the pentagons
    around ``T`` and ``b1..bm`` those around ``B``; ``ti`` touches ``bi`` and
    ``b(i+1)`` (indices mod m).
    """
    if m < 5:
        raise PolytopeError(f"R({m}) has no right-angled hyperbolic realization (need m >= 5)")

    def t(i: int) -> str:
        return f"t{(i - 1) % m + 1}"

    def b(i: int) -> str:
        return f"b{(i - 1) % m + 1}"

    facets = ["T", "B"] + [t(i) for i in range(1, m + 1)] + [b(i) for i in range(1, m + 1)]
    vertices = []
    for i in range(1, m + 1):
        vertices += [
            ("T", t(i), t(i + 1)),
            (t(i), t(i + 1), b(i + 1)),
            (t(i), b(i), b(i + 1)),
            ("B", b(i), b(i + 1)),
        ]
    return Polytope(3, facets, vertices)
