"""Exact linear algebra over GF(2).

Vectors are plain Python ints used as bit masks: bit ``i`` holds the
coordinate of the canonical vector ``e_{i+1}``.  The ambient dimension is
carried by the caller (a colouring's rank, a matrix shape).  Matrices store
their columns, i.e. the images of ``e_1, ..., e_n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MAX_DIM = 8
MAX_GL_DIM = 4


def unit(i: int) -> int:
    """The canonical vector ``e_i`` (1-based)."""
    if not 1 <= i <= MAX_DIM:
        raise ValueError(f"unit vector index {i} out of range 1..{MAX_DIM}")
    return 1 << (i - 1)


def vec(*coords: int) -> int:
    """Build a vector from its coordinates, ``vec(1, 0, 1) == e1 + e3``."""
    if len(coords) > MAX_DIM:
        raise ValueError(f"dimension {len(coords)} exceeds {MAX_DIM}")
    v = 0
    for i, c in enumerate(coords):
        if c not in (0, 1):
            raise ValueError(f"coordinate {c!r} is not a bit")
        v |= c << i
    return v


def to_bits(v: int, dim: int) -> list[int]:
    """Coordinates of ``v``, ``e_1`` first (the JSON wire format)."""
    check_vector(v, dim)
    return [(v >> i) & 1 for i in range(dim)]


def from_bits(bits: Sequence[int]) -> int:
    return vec(*bits)


def check_vector(v: int, dim: int) -> None:
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dimension {dim} out of range 1..{MAX_DIM}")
    if not isinstance(v, int) or v < 0 or v >> dim:
        raise ValueError(f"{v!r} is not a vector of dimension {dim}")


def dot(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def weight(v: int) -> int:
    return v.bit_count()


def lex_key(v: int, dim: int) -> tuple[int, ...]:
    """Sort key comparing coordinates ``e_1`` first."""
    return tuple((v >> i) & 1 for i in range(dim))


def format_vector(v: int, dim: int) -> str:
    """Human readable form, e.g. ``e1+e3`` or ``0``."""
    terms = [f"e{i + 1}" for i in range(dim) if (v >> i) & 1]
    return "+".join(terms) if terms else "0"


# -- echelon forms ----------------------------------------------------------


def _reduce(v: int, basis: Sequence[int]) -> int:
    # basis is sorted by decreasing leading bit and fully reduced
    for b in basis:
        if v & _lead(b):
            v ^= b
    return v


def _lead(v: int) -> int:
    return 1 << (v.bit_length() - 1)


def echelon(vs: Iterable[int]) -> tuple[int, ...]:
    """Reduced echelon basis of the span of ``vs``.

    Leading bits are distinct, no basis vector contains another's leading
    bit, and the basis is sorted by decreasing leading bit.  The result is a
    canonical form: equal spans give equal tuples.
    """
    basis: list[int] = []
    for v in vs:
        v = _reduce(v, basis)
        if not v:
            continue
        lead = _lead(v)
        basis = [b ^ v if b & lead else b for b in basis]
        basis.append(v)
        basis.sort(reverse=True)
    return tuple(basis)


def rank(vs: Iterable[int]) -> int:
    return len(echelon(vs))


def independent(vs: Sequence[int]) -> bool:
    return rank(vs) == len(vs)


def span_elements(basis: Sequence[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return sorted(out)


def solve_unit_functional(colours: Sequence[int], dim: int) -> int | None:
    """A functional ``f`` with ``f . c = 1`` for every colour ``c``, if any.

    Solved as a linear system in the coordinates of ``f`` (rows are the
    colours, right-hand side all ones).  Returns the solution with every
    free coordinate set to zero, or ``None`` when the system is
    inconsistent.
    """
    for c in colours:
        check_vector(c, dim)
    # rows stored as (coefficient mask, rhs)
    pivots: dict[int, tuple[int, int]] = {}
    for c in colours:
        row, rhs = c, 1
        for bit in sorted(pivots, reverse=True):
            if row & bit:
                prow, prhs = pivots[bit]
                row ^= prow
                rhs ^= prhs
        if not row:
            if rhs:
                return None
            continue
        lead = _lead(row)
        for bit, (prow, prhs) in list(pivots.items()):
            if prow & lead:
                pivots[bit] = (prow ^ row, prhs ^ rhs)
        pivots[lead] = (row, rhs)
    f = 0
    for bit, (row, rhs) in pivots.items():
        # fully reduced: the only pivot bit in ``row`` is ``bit``
        if rhs:
            f |= bit
    return f


# -- subspaces ----------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of ``GF(2)^ambient_dim`` in reduced echelon form."""

    basis: tuple[int, ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        return _reduce(v, self.basis) == 0

    def __len__(self) -> int:
        return 1 << len(self.basis)

    def elements(self) -> list[int]:
        return span_elements(self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def coset_rep(self, v: int) -> int:
        """Lexicographically minimal element of ``v + self``."""
        return _coset_rep(v, self.basis, self.ambient_dim)

    def cosets(self) -> list[int]:
        """Canonical representatives of all cosets, in lexicographic order."""
        reps = {self.coset_rep(v) for v in range(1 << self.ambient_dim)}
        return sorted(reps, key=lambda r: lex_key(r, self.ambient_dim))


@lru_cache(maxsize=None)
def _coset_rep(v: int, basis: tuple[int, ...], dim: int) -> int:
    return min((v ^ x for x in span_elements(basis)), key=lambda w: lex_key(w, dim))


def span(vs: Iterable[int], ambient_dim: int) -> Subspace:
    vs = list(vs)
    for v in vs:
        check_vector(v, ambient_dim)
    return Subspace(echelon(vs), ambient_dim)


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace((), ambient_dim)


def member(w: int, s: Subspace) -> bool:
    check_vector(w, s.ambient_dim)
    return w in s


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    if s.ambient_dim != t.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {s.ambient_dim} != {t.ambient_dim}")
    return Subspace(echelon(s.basis + t.basis), s.ambient_dim)


def image_plus_identity(m: BitMatrix) -> Subspace:
    """Column span of ``M + I``."""
    if not m.is_square:
        raise ValueError("image_plus_identity needs a square matrix")
    return span((c ^ (1 << j) for j, c in enumerate(m.cols)), m.nrows)


# -- matrices ------------------------------------------------------------------


@dataclass(frozen=True)
class BitMatrix:
    """A linear map ``GF(2)^ncols -> GF(2)^nrows`` stored by columns."""

    cols: tuple[int, ...]
    nrows: int

    def __post_init__(self) -> None:
        for c in self.cols:
            check_vector(c, self.nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << j for j in range(n)), n)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> BitMatrix:
        """Matrix from rows as printed, acting on column vectors."""
        nrows = len(rows)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        cols = tuple(sum(rows[i][j] << i for i in range(nrows)) for j in range(ncols))
        return cls(cols, nrows)

    @classmethod
    def from_images(cls, images: Sequence[int], nrows: int) -> BitMatrix:
        return cls(tuple(images), nrows)

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def is_square(self) -> bool:
        return self.ncols == self.nrows

    def rows(self) -> list[list[int]]:
        return [[(c >> i) & 1 for c in self.cols] for i in range(self.nrows)]

    def __call__(self, v: int) -> int:
        out = 0
        j = 0
        while v:
            if v & 1:
                out ^= self.cols[j]
            v >>= 1
            j += 1
        return out

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in composition")
        return BitMatrix(tuple(self(c) for c in other.cols), self.nrows)

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in sum")
        return BitMatrix(tuple(a ^ b for a, b in zip(self.cols, other.cols)), self.nrows)

    def rank(self) -> int:
        return rank(self.cols)

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.nrows

    def is_surjective(self) -> bool:
        return self.rank() == self.nrows

    def inverse(self) -> BitMatrix:
        if not self.is_invertible():
            raise ValueError("matrix is singular")
        inv = solve_linear_map(list(zip(self.cols, (1 << j for j in range(self.ncols)))),
                               self.nrows, self.ncols)
        assert inv is not None
        return inv

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows())


def solve_linear_map(pairs: Sequence[tuple[int, int]], dim_in: int,
                     dim_out: int) -> BitMatrix | None:
    """The linear map sending each ``src`` to ``dst``, if one exists.

    The sources must span the domain, which makes the map unique.  Returns
    ``None`` when the prescribed values are inconsistent with linearity.
    """
    # echelon rows carry (source combination, image of that combination)
    rows: list[tuple[int, int]] = []
    for src, dst in pairs:
        check_vector(src, dim_in)
        check_vector(dst, dim_out)
        for s, d in rows:
            if src & _lead(s):
                src ^= s
                dst ^= d
        if not src:
            if dst:
                return None
            continue
        lead = _lead(src)
        rows = [(s ^ src, d ^ dst) if s & lead else (s, d) for s, d in rows]
        rows.append((src, dst))
    if len(rows) != dim_in:
        raise ValueError("sources do not span the domain")
    images = [0] * dim_in
    for s, d in rows:
        # fully reduced, so each row is a single unit vector
        images[s.bit_length() - 1] = d
    return BitMatrix(tuple(images), dim_out)


def enumerate_gl(dim: int) -> list[BitMatrix]:
    """All invertible ``dim x dim`` matrices, in a fixed order."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if dim > MAX_GL_DIM:
        raise ValueError(f"refusing to enumerate GL({dim}, 2): above {MAX_GL_DIM}")
    out = []
    for cols in itertools.product(range(1, 1 << dim), repeat=dim):
        if rank(cols) == dim:
            out.append(BitMatrix(cols, dim))
    return out


def gl_order(dim: int) -> int:
    n = 1
    for i in range(dim):
        n *= (1 << dim) - (1 << i)
    return n
