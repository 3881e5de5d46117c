"""Finite groups, presentations and orbifold signatures.

Group orders of presentations come from a Todd-Coxeter coset enumeration
(HLT strategy, every relator scanned at every coset).  A concrete group
``G`` with chosen generator images is certified to be the presented group
when the relators hold, the images generate ``G`` and the enumerated order
equals ``|G|``: the presented group then surjects onto ``G`` with equal
finite orders.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Generic, Hashable, Iterable, Sequence, TypeVar

from .complex import (CellComplex, CellMap, ComplexError, _UnionFind, close_maps, lift_map,
                      map_orientation_sign, subdivide)

T = TypeVar("T", bound=Hashable)

Letter = tuple[int, int]  # (generator index, +1 or -1)
Word = tuple[Letter, ...]

DEFAULT_COSET_BUDGET = 10**6


class PresentationError(ValueError):
    pass


def reduce_word(word: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def power_word(word: Word, n: int) -> Word:
    if n < 0:
        word, n = invert_word(word), -n
    return reduce_word(word * n)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        for r in self.relators:
            for g, e in r:
                if not 0 <= g < len(self.generators) or e not in (1, -1):
                    raise PresentationError(f"bad letter {(g, e)!r} in relator")

    @classmethod
    def parse(cls, text: str) -> Presentation:
        """Parse ``"a, b | a^6 = 1, b^4 = 1, (a b)^2 = 1, [a, b^2] = 1"``.

        Words are products of generators, ``1``, parenthesised words and
        commutators ``[x, y] = x^-1 y^-1 x y``; ``^n`` takes (possibly
        negative) powers and a postfix ``'`` inverts.  A relation ``u = v``
        becomes the relator ``u v^-1``.
        """
        if "|" not in text:
            raise PresentationError("expected 'generators | relations'")
        head, tail = text.split("|", 1)
        gens = tuple(g.strip() for g in head.split(",") if g.strip())
        for g in gens:
            if not re.fullmatch(r"[A-Za-z_]\w*", g):
                raise PresentationError(f"bad generator name {g!r}")
        parser = _WordParser(tail, gens)
        rels = parser.relations()
        return cls(gens, tuple(r for r in rels if r))

    def word(self, text: str) -> Word:
        return _WordParser(text, self.generators).single_word()

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            g, e = word[i]
            n = (j - i) * e
            parts.append(self.generators[g] if n == 1 else f"{self.generators[g]}^{n}")
            i = j
        return " ".join(parts)

    def __str__(self) -> str:
        rels = ", ".join(f"{self.format_word(r)} = 1" for r in self.relators)
        return f"{', '.join(self.generators)} | {rels}"


class _WordParser:
    _token = re.compile(r"\s*(?:(?P<name>[A-Za-z_]\w*)|(?P<int>-?\d+)|(?P<op>[()\[\],^'=*]))")

    def __init__(self, text: str, gens: Sequence[str]):
        self.gens = {g: i for i, g in enumerate(gens)}
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = self._token.match(text, pos)
            if not m or m.end() == pos:
                raise PresentationError(f"cannot parse near {text[pos:pos + 10]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise PresentationError(f"expected {value!r}, got {tok!r}")
        self.i += 1
        return tok

    def relations(self) -> list[Word]:
        out = []
        while self.peek() is not None:
            lhs = self.word()
            if self.peek() == ("op", "="):
                self.take("=")
                rhs = self.word()
                out.append(reduce_word(lhs + invert_word(rhs)))
            else:
                out.append(lhs)
            if self.peek() is not None:
                self.take(",")
        return out

    def single_word(self) -> Word:
        w = self.word()
        if self.peek() is not None:
            raise PresentationError(f"trailing input {self.peek()!r}")
        return w

    def word(self) -> Word:
        out: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or tok[1] in (")", "]", ",", "="):
                return reduce_word(out)
            if tok == ("op", "*"):
                self.take()
                continue
            out.extend(self.factor())

    def factor(self) -> Word:
        kind, val = self.take()
        if kind == "name":
            if val not in self.gens:
                raise PresentationError(f"unknown generator {val!r}")
            w: Word = ((self.gens[val], 1),)
        elif kind == "int" and val == "1":
            w = ()
        elif val == "(":
            w = self.word()
            self.take(")")
        elif val == "[":
            x = self.word()
            self.take(",")
            y = self.word()
            self.take("]")
            w = reduce_word(invert_word(x) + invert_word(y) + x + y)
        else:
            raise PresentationError(f"unexpected token {val!r}")
        while True:
            tok = self.peek()
            if tok == ("op", "^"):
                self.take()
                kind, val = self.take()
                if kind != "int":
                    raise PresentationError(f"exponent must be an integer, got {val!r}")
                w = power_word(w, int(val))
            elif tok == ("op", "'"):
                self.take()
                w = invert_word(w)
            else:
                return w


def am_presentation(g: int) -> Presentation:
    n = 2 * g + 2
    return Presentation.parse(f"a, b | a^{n} = 1, b^4 = 1, (a b)^2 = 1, [a, b^2] = 1")


def kulkarni_presentation(g: int) -> Presentation:
    n = 2 * g + 2
    return Presentation.parse(f"a, b | a^{n} = 1, b^4 = 1, (a b)^2 = 1, b^2 a b^2 = a^{g + 2}")


def wiman_presentation(g: int) -> Presentation:
    """The group induced on the quotient by the central involution ``a^(2g) b^2``."""
    n = 4 * g
    return Presentation.parse(f"a, b | a^{n} = 1, b^4 = 1, (a b)^2 = 1, b^2 = a^{2 * g}")


# -- Todd-Coxeter ------------------------------------------------------------------


def coset_enumerate(pres: Presentation, subgroup: Sequence[Word] = (),
                    budget: int = DEFAULT_COSET_BUDGET) -> int | None:
    """Index of the subgroup generated by ``subgroup`` (the group order by default).

    Returns ``None`` if more than ``budget`` cosets would be defined.
    """
    return _CosetTable(pres, budget).run(subgroup)


class _BudgetExceeded(Exception):
    pass


class _CosetTable:
    def __init__(self, pres: Presentation, budget: int):
        self.ngens = len(pres.generators)
        # column 2i is generator i, column 2i+1 its inverse
        self.rels = [[2 * g + (e < 0) for g, e in r] for r in pres.relators]
        self.budget = budget
        self.table: list[list[int | None]] = [[None] * (2 * self.ngens)]
        self.p = [0]

    def run(self, subgroup: Sequence[Word]) -> int | None:
        try:
            for w in subgroup:
                self.scan_and_fill(0, [2 * g + (e < 0) for g, e in w])
            alpha = 0
            while alpha < len(self.table):
                for r in self.rels:
                    if self.p[alpha] != alpha:
                        break
                    self.scan_and_fill(alpha, r)
                if self.p[alpha] == alpha:
                    for x in range(2 * self.ngens):
                        if self.p[alpha] != alpha:
                            break
                        if self.table[alpha][x] is None:
                            self.define(alpha, x)
                alpha += 1
        except _BudgetExceeded:
            return None
        return sum(1 for i, q in enumerate(self.p) if q == i)

    def define(self, alpha: int, x: int) -> None:
        if len(self.table) >= self.budget:
            raise _BudgetExceeded
        beta = len(self.table)
        self.table.append([None] * (2 * self.ngens))
        self.p.append(beta)
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        table = self.table
        r = len(word)
        f, b = alpha, alpha
        i, j = 0, r - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, k: int, l: int, queue: deque) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, alpha: int, beta: int) -> None:
        table = self.table
        queue: deque = deque()
        self.merge(alpha, beta, queue)
        while queue:
            gamma = queue.popleft()
            for x in range(2 * self.ngens):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][x ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][x] is not None:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self.merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu


# -- concrete finite groups ------------------------------------------------------------


class FiniteGroup(Generic[T]):
    """A finite group given by its elements and a multiplication."""

    def __init__(self, elements: Iterable[T], mul: Callable[[T, T], T], identity: T,
                 inv: Callable[[T], T] | None = None):
        self.elements: list[T] = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("repeated group elements")
        if identity not in self.index:
            raise ValueError("identity is not among the elements")
        self._mul = mul
        self._inv = inv
        self.identity = identity
        self._table: list[list[int]] | None = None

    @classmethod
    def generated_by(cls, gens: Sequence[T], mul: Callable[[T, T], T], identity: T,
                     inv: Callable[[T], T] | None = None, limit: int = 10**6) -> FiniteGroup[T]:
        elems = [identity]
        seen = {identity}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    if len(elems) >= limit:
                        raise ValueError(f"group exceeds {limit} elements")
                    seen.add(y)
                    elems.append(y)
                    queue.append(y)
        return cls(elems, mul, identity, inv)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.index

    def mul(self, x: T, y: T) -> T:
        return self._mul(x, y)

    def power(self, x: T, n: int) -> T:
        if n < 0:
            x, n = self.inv(x), -n
        out = self.identity
        while n:
            if n & 1:
                out = self._mul(out, x)
            x = self._mul(x, x)
            n >>= 1
        return out

    def element_order(self, x: T) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self._mul(y, x)
            k += 1
        return k

    def inv(self, x: T) -> T:
        if self._inv is not None:
            return self._inv(x)
        return self.power(x, self.element_order(x) - 1)

    def commutes(self, x: T, y: T) -> bool:
        return self._mul(x, y) == self._mul(y, x)

    def evaluate(self, word: Word, images: Sequence[T]) -> T:
        out = self.identity
        invs: dict[int, T] = {}
        for g, e in word:
            if e > 0:
                out = self._mul(out, images[g])
            else:
                if g not in invs:
                    invs[g] = self.inv(images[g])
                out = self._mul(out, invs[g])
        return out

    def subgroup(self, gens: Sequence[T]) -> FiniteGroup[T]:
        for g in gens:
            if g not in self.index:
                raise ValueError("generator outside the group")
        return FiniteGroup.generated_by(gens, self._mul, self.identity, self._inv)

    def generates(self, gens: Sequence[T]) -> bool:
        return len(self.subgroup(gens)) == len(self)

    def centralizer(self, x: T) -> FiniteGroup[T]:
        return FiniteGroup([g for g in self.elements if self.commutes(g, x)],
                           self._mul, self.identity, self._inv)

    def normalizer(self, subgroup: FiniteGroup[T] | Sequence[T]) -> FiniteGroup[T]:
        """Elements ``g`` with ``g H g^-1 = H``, tested on generators of ``H``."""
        H = subgroup if isinstance(subgroup, FiniteGroup) else self.subgroup(list(subgroup))
        gens = H.elements[1:] if len(H) <= 4 else _generating_set(H)
        keep = []
        for g in self.elements:
            gi = self.inv(g)
            if all(self._mul(self._mul(g, h), gi) in H.index for h in gens):
                keep.append(g)
        return FiniteGroup(keep, self._mul, self.identity, self._inv)

    def is_normal(self, H: FiniteGroup[T]) -> bool:
        return len(self.normalizer(H)) == len(self)

    def center(self) -> FiniteGroup[T]:
        gens = _generating_set(self)
        return FiniteGroup([x for x in self.elements if all(self.commutes(x, g) for g in gens)],
                           self._mul, self.identity, self._inv)

    def quotient(self, N: FiniteGroup[T]) -> FiniteGroup[T]:
        """``G/N`` for normal ``N``; each coset is represented by its first element in ``G``."""
        if not self.is_normal(N):
            raise ValueError("quotient by a subgroup that is not normal")
        canon: dict[T, T] = {}
        reps = []
        for x in self.elements:
            if x in canon:
                continue
            reps.append(x)
            for n in N.elements:
                canon[self._mul(x, n)] = x
        mul = self._mul

        def qmul(x: T, y: T) -> T:
            return canon[mul(x, y)]

        def qinv(x: T) -> T:
            return canon[self.inv(x)]

        Q = FiniteGroup(reps, qmul, canon[self.identity], qinv)
        Q.canonical = canon  # type: ignore[attr-defined]
        return Q

    def cayley_table(self) -> list[list[int]]:
        if self._table is None:
            idx = self.index
            self._table = [[idx[self._mul(x, y)] for y in self.elements] for x in self.elements]
        return self._table


def _generating_set(G: FiniteGroup) -> list:
    gens: list = []
    H_size = 1
    for x in G.elements[1:]:
        if H_size == len(G):
            break
        if gens and x in G.subgroup(gens).index:
            continue
        gens.append(x)
        H_size = len(G.subgroup(gens))
    return gens


# -- presentation certificates ------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    relators_hold: bool
    generates: bool
    group_order: int
    presented_order: int | None

    def __bool__(self) -> bool:
        return (self.relators_hold and self.generates
                and self.presented_order is not None and self.presented_order == self.group_order)

    def to_json(self) -> dict:
        return {"relators_hold": self.relators_hold, "generates": self.generates,
                "group_order": self.group_order, "presented_order": self.presented_order}


def certify_presentation(G: FiniteGroup, images: dict[str, object] | Sequence,
                         pres: Presentation, budget: int = DEFAULT_COSET_BUDGET) -> Certificate:
    if isinstance(images, dict):
        imgs = [images[g] for g in pres.generators]
    else:
        imgs = list(images)
    if len(imgs) != len(pres.generators):
        raise PresentationError("one image per generator is required")
    rel_ok = all(G.evaluate(r, imgs) == G.identity for r in pres.relators)
    gen_ok = G.generates(imgs)
    n = coset_enumerate(pres, budget=budget)
    return Certificate(rel_ok, gen_ok, len(G), n)


def verify_presentation(G: FiniteGroup, images, pres: Presentation,
                        budget: int = DEFAULT_COSET_BUDGET) -> bool:
    return bool(certify_presentation(G, images, pres, budget))


def find_presentation_images(G: FiniteGroup, pres: Presentation) -> tuple | None:
    """Generator images in ``G`` satisfying every relator and generating ``G``.

    Exhaustive over tuples of elements; candidates for a generator are
    first filtered by the relators that are powers of that generator alone.
    """
    table = G.cayley_table()
    n = len(G)
    e = G.index[G.identity]
    inv = [0] * n
    for i in range(n):
        inv[i] = table[i].index(e)
    cands = []
    for gi in range(len(pres.generators)):
        allowed = list(range(n))
        for r in pres.relators:
            if r and all(g == gi for g, _ in r):
                k = sum(s for _, s in r)
                allowed = [x for x in allowed if _idx_power(table, x, k, e, inv) == e]
        cands.append(allowed)

    def ev(word: Word, imgs: Sequence[int]) -> int:
        out = e
        for g, s in word:
            out = table[out][imgs[g] if s > 0 else inv[imgs[g]]]
        return out

    def rec(prefix: list[int]):
        if len(prefix) == len(cands):
            if all(ev(r, prefix) == e for r in pres.relators) and _generates_idx(table, prefix, e):
                return tuple(G.elements[i] for i in prefix)
            return None
        for x in cands[len(prefix)]:
            found = rec(prefix + [x])
            if found is not None:
                return found
        return None

    return rec([])


def _generates_idx(table, gens: Sequence[int], e: int) -> bool:
    seen = {e}
    todo = [e]
    while todo:
        x = todo.pop()
        for g in gens:
            y = table[x][g]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == len(table)


def _idx_power(table, x: int, k: int, e: int, inv) -> int:
    if k < 0:
        x, k = inv[x], -k
    out = e
    for _ in range(k):
        out = table[out][x]
    return out


# -- orbifold signatures -----------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    genus: int
    cone_orders: tuple[int, ...]

    def __str__(self) -> str:
        cones = ", ".join(map(str, self.cone_orders))
        return f"({self.genus}; {cones})" if cones else f"({self.genus}; -)"

    def orbifold_euler(self) -> Fraction:
        return 2 - 2 * self.genus - sum((1 - Fraction(1, m) for m in self.cone_orders), Fraction(0))

    def to_json(self) -> dict:
        return {"genus": self.genus, "cone_orders": list(self.cone_orders)}


def orbifold_signature(C: CellComplex, gens: Sequence[CellMap], orientation: Sequence[int],
                       subdivisions: int = 2) -> Signature:
    """Signature of the quotient of a closed oriented surface by a group of cellular maps.

    After the subdivisions every cell stabilizer fixes its cell pointwise;
    cone points are the vertex orbits with non-trivial stabilizer and the
    underlying genus comes from the Euler characteristic of the orbit
    complex.  The Riemann-Hurwitz relation is asserted in exact arithmetic.
    """
    if C.dim != 2:
        raise ComplexError("orbifold signatures are computed for surfaces")
    for k, g in enumerate(gens):
        if map_orientation_sign(C, g, orientation) != 1:
            raise ComplexError(f"generator #{k} reverses orientation")
    order = len(close_maps(gens, C))
    sd, maps = C, list(gens)
    for _ in range(subdivisions):
        nxt = subdivide(sd)
        maps = [lift_map(sd, nxt, f) for f in maps]
        sd = nxt
    orbit_counts = []
    cones: list[int] = []
    for d in range(sd.dim + 1):
        uf = _UnionFind()
        for i in range(len(sd.labels[d])):
            uf.add(i)
        for f in maps:
            for i, j in enumerate(f.maps[d]):
                uf.union(i, j)
        sizes: dict[int, int] = {}
        for i in range(len(sd.labels[d])):
            r = uf.find(i)
            sizes[r] = sizes.get(r, 0) + 1
        orbit_counts.append(len(sizes))
        for size in sizes.values():
            if order % size:
                raise ComplexError("orbit size does not divide the group order")
            stab = order // size
            if stab > 1:
                if d:
                    raise ComplexError(f"a {d}-cell has non-trivial stabilizer after subdivision")
                cones.append(stab)
    chi_q = sum((-1) ** d * n for d, n in enumerate(orbit_counts))
    if (2 - chi_q) % 2:
        raise ComplexError(f"quotient Euler characteristic {chi_q} is odd")
    sig = Signature((2 - chi_q) // 2, tuple(sorted(cones)))
    if Fraction(C.euler(), order) != sig.orbifold_euler():
        raise ComplexError(f"Riemann-Hurwitz fails for {sig} with |G| = {order}")
    return sig
