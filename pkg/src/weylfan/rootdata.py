"""Finite root systems over the rationals, possibly non-reduced (BC types).

Internal model: the ambient point space V is spanned by the simple coroots,
so a point is a tuple of rationals in coroot coordinates.  A root is stored
as its integer coefficient tuple over the basis; its pairing covector
against coroot coordinates is the corresponding row combination of the
Cartan matrix.  The fixed Weyl-invariant inner product normalises short
simple roots to squared length 2 on each irreducible component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .errors import NonRootSystem
from .linalg import Mat, Vec

Root = tuple[int, ...]  # coefficients over the simple basis


def _cartan_chain(n: int) -> list[list[int]]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = -1
            c[i + 1][i] = -1
    return c


def _catalogue_cartan(family: str, n: int) -> tuple[list[list[int]], list[int], bool]:
    """Return (cartan, squared lengths of the simple roots, non_reduced)."""
    if family == "A" and n >= 1:
        return _cartan_chain(n), [2] * n, False
    if family == "B" and n >= 2:
        c = _cartan_chain(n)
        c[n - 2][n - 1] = -2
        return c, [4] * (n - 1) + [2], False
    if family == "C" and n >= 2:
        c = _cartan_chain(n)
        c[n - 1][n - 2] = -2
        return c, [2] * (n - 1) + [4], False
    if family == "D" and n >= 3:
        c = _cartan_chain(n - 1)
        for row in c:
            row.append(0)
        c.append([0] * n)
        c[n - 1][n - 1] = 2
        c[n - 3][n - 1] = -1
        c[n - 1][n - 3] = -1
        c[n - 2][n - 1] = 0
        c[n - 1][n - 2] = 0
        return c, [2] * n, False
    if family == "G" and n == 2:
        return [[2, -1], [-3, 2]], [2, 6], False
    if family == "F" and n == 4:
        c = _cartan_chain(4)
        c[1][2] = -2
        return c, [4, 4, 2, 2], False
    if family == "BC" and n >= 1:
        if n == 1:
            return [[2]], [2], True
        c = _cartan_chain(n)
        c[n - 2][n - 1] = -2
        return c, [4] * (n - 1) + [2], True
    raise NonRootSystem(f"unknown catalogue entry {family}{n}")


def _parse_catalogue_name(name: str) -> list[tuple[str, int]]:
    factors = []
    for part in name.split("x"):
        part = part.strip()
        fam = "".join(ch for ch in part if ch.isalpha()).upper()
        num = part[len(fam):]
        if not fam or not num.isdigit():
            raise NonRootSystem(f"cannot parse root system name {part!r}")
        factors.append((fam, int(num)))
    return factors


@dataclass(frozen=True)
class RootDatum:
    """A root system with basis, Cartan matrix and invariant inner product."""

    name: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    simple_lengths: tuple[Fraction, ...]  # squared lengths of simple roots
    roots: tuple[Root, ...]
    multipliable: frozenset[Root]
    essential: bool = True
    input_rank: Optional[int] = None

    # -- basic structure ---------------------------------------------------

    @cached_property
    def simples(self) -> tuple[Root, ...]:
        return tuple(
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        )

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"a{i + 1}" for i in range(self.rank))

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(a for a in self.roots if all(c >= 0 for c in a))

    @cached_property
    def nondivisible_roots(self) -> tuple[Root, ...]:
        doubles = {tuple(2 * c for c in a) for a in self.roots}
        return tuple(a for a in self.roots if a not in doubles)

    def is_reduced(self) -> bool:
        return not self.multipliable

    # -- pairings and inner products ---------------------------------------

    @cached_property
    def gram_dual(self) -> Mat:
        """Inner products (alpha_i, alpha_j) of the simple roots."""
        return tuple(
            tuple(
                Fraction(self.cartan[i][j]) * self.simple_lengths[j] / 2
                for j in range(self.rank)
            )
            for i in range(self.rank)
        )

    @cached_property
    def gram_points(self) -> Mat:
        """Inner products of the simple coroots (the form on point space V)."""
        return tuple(
            tuple(
                2 * Fraction(self.cartan[i][j]) / self.simple_lengths[i]
                for j in range(self.rank)
            )
            for i in range(self.rank)
        )

    @cached_property
    def _covectors(self) -> dict[Root, Vec]:
        return {a: self._covector_of(a) for a in self.roots}

    def _covector_of(self, a: Root) -> Vec:
        return tuple(
            sum(Fraction(a[i]) * self.cartan[i][j] for i in range(self.rank))
            for j in range(self.rank)
        )

    def covector(self, a: Root) -> Vec:
        """The linear form <a, .> on coroot coordinates."""
        cached = self._covectors.get(a)
        return cached if cached is not None else self._covector_of(a)

    def pairing(self, a: Root, x: Vec) -> Fraction:
        return la.dot(self.covector(a), x)

    def inner(self, a: Root, b: Root) -> Fraction:
        g = self.gram_dual
        return sum(
            Fraction(a[i]) * g[i][j] * b[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if a[i] and b[j]
        ) or Fraction(0)

    def length_sq(self, a: Root) -> Fraction:
        return self.inner(a, a)

    def coroot_pairing(self, a: Root, b: Root) -> Fraction:
        """<a, b^vee> = 2(a,b)/(b,b)."""
        return 2 * self.inner(a, b) / self.length_sq(b)

    def reflect_root(self, a: Root, b: Root) -> Root:
        """s_b(a) = a - <a, b^vee> b."""
        c = self.coroot_pairing(a, b)
        if c.denominator != 1:
            raise NonRootSystem(f"non-integral Cartan pairing {c} for {a}, {b}")
        n = int(c)
        return tuple(ai - n * bi for ai, bi in zip(a, b))

    def fundamental_coweights(self) -> tuple[Vec, ...]:
        """Vectors dual to the simple roots: <alpha_i, w_j> = delta_ij."""
        inv = la.inverse(la.mat(self.cartan))
        return tuple(tuple(inv[i][j] for i in range(self.rank)) for j in range(self.rank))

    # -- Dynkin diagram ----------------------------------------------------

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] != 0

    @cached_property
    def diagram_components(self) -> tuple[frozenset[int], ...]:
        return tuple(components(self, frozenset(range(self.rank))))

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        if len(set(self.roots)) != len(self.roots):
            raise NonRootSystem("duplicate roots")
        zero = tuple(0 for _ in range(self.rank))
        if zero in self.root_set:
            raise NonRootSystem("zero is not a root")
        for a in self.roots:
            if tuple(-c for c in a) not in self.root_set:
                raise NonRootSystem(f"root set not closed under negation at {a}")
            pos = all(c >= 0 for c in a)
            neg = all(c <= 0 for c in a)
            if not (pos or neg):
                raise NonRootSystem(f"root {a} has mixed signs over the basis")
            for b in self.roots:
                if self.reflect_root(a, b) not in self.root_set:
                    raise NonRootSystem(f"reflection s_{b} does not preserve roots at {a}")
        for a in self.multipliable:
            if tuple(2 * c for c in a) not in self.root_set:
                raise NonRootSystem(f"{a} flagged multipliable but 2a is not a root")

    def __repr__(self) -> str:  # pragma: no cover
        return f"RootDatum({self.name}, rank={self.rank}, roots={len(self.roots)})"


# -- diagram subsets --------------------------------------------------------


def components(datum: RootDatum, subset: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of a subset of the basis in the Dynkin graph."""
    todo = set(subset)
    out = []
    while todo:
        seed = min(todo)
        comp = {seed}
        frontier = {seed}
        while frontier:
            nxt = {
                j
                for i in frontier
                for j in todo
                if j not in comp and datum.adjacent(i, j)
            }
            comp |= nxt
            frontier = nxt
        todo -= comp
        out.append(frozenset(comp))
    return sorted(out, key=min)


def orthogonal_complement(datum: RootDatum, subset: Iterable[int]) -> frozenset[int]:
    """Simple roots orthogonal (for the invariant form) to all of `subset`."""
    sub = set(subset)
    return frozenset(
        j
        for j in range(datum.rank)
        if all(datum.inner(datum.simples[j], datum.simples[i]) == 0 for i in sub)
    )


@dataclass(frozen=True)
class DiagramSubset:
    """A subset of the basis with its induced Dynkin-diagram structure."""

    datum: RootDatum
    indices: frozenset[int]

    def __post_init__(self) -> None:
        bad = [i for i in self.indices if not 0 <= i < self.datum.rank]
        if bad:
            raise NonRootSystem(f"subset indices out of range: {bad}")

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        return tuple(components(self.datum, self.indices))

    @cached_property
    def perp(self) -> frozenset[int]:
        return orthogonal_complement(self.datum, self.indices)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.datum.labels[i] for i in sorted(self.indices))


# -- construction -----------------------------------------------------------


def _generate_reduced_roots(cartan: Sequence[Sequence[int]]) -> set[Root]:
    n = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def reflect(a: Root, k: int) -> Root:
        pairing = sum(a[i] * cartan[i][k] for i in range(n))
        return tuple(a[j] - (pairing if j == k else 0) for j in range(n))

    roots = set(simples)
    frontier = set(simples)
    while frontier:
        new = set()
        for a in frontier:
            for k in range(n):
                b = reflect(a, k)
                if b not in roots:
                    new.add(b)
        roots |= new
        frontier = new
    roots |= {tuple(-c for c in a) for a in roots}
    return roots


def _block_diag(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[offset + i][offset + j] = v
        offset += len(b)
    return out


def _build_catalogue(name: str) -> RootDatum:
    factors = _parse_catalogue_name(name)
    cartans, lengths, flags = [], [], []
    for fam, n in factors:
        c, lens, non_reduced = _catalogue_cartan(fam, n)
        cartans.append(c)
        lengths.extend(lens)
        flags.append(non_reduced)
    cartan = _block_diag(cartans)
    rank = len(cartan)
    roots = _generate_reduced_roots(cartan)

    multipliable: set[Root] = set()
    offset = 0
    for (fam, n), c, non_reduced in zip(factors, cartans, flags):
        if non_reduced:
            # the shortest roots of the BC factor acquire doubles
            block = range(offset, offset + len(c))
            factor_roots = [a for a in roots if any(a[i] for i in block)]
            datum_stub = RootDatum(
                name=name,
                rank=rank,
                cartan=tuple(tuple(r) for r in cartan),
                simple_lengths=tuple(Fraction(x) for x in lengths),
                roots=tuple(sorted(roots)),
                multipliable=frozenset(),
            )
            min_len = min(datum_stub.length_sq(a) for a in factor_roots)
            multipliable |= {
                a for a in factor_roots if datum_stub.length_sq(a) == min_len
            }
        offset += len(c)
    roots |= {tuple(2 * c for c in a) for a in multipliable}

    datum = RootDatum(
        name=name,
        rank=rank,
        cartan=tuple(tuple(r) for r in cartan),
        simple_lengths=tuple(Fraction(x) for x in lengths),
        roots=tuple(sorted(roots)),
        multipliable=frozenset(multipliable),
    )
    datum.validate()
    return datum


def _build_explicit(raw_roots: Sequence[Sequence], basis: Sequence[int]) -> RootDatum:
    vectors = [la.vec(r) for r in raw_roots]
    if not vectors:
        raise NonRootSystem("empty root list")
    ambient = len(vectors[0])
    if any(len(v) != ambient for v in vectors):
        raise NonRootSystem("roots of mixed dimension")
    if any(la.is_zero(v) for v in vectors):
        raise NonRootSystem("zero vector in root list")
    vec_set = {v for v in vectors}
    for v in vec_set:
        if la.neg(v) not in vec_set:
            raise NonRootSystem("explicit list not closed under negation")

    basis_vecs = [vectors[i] for i in basis]
    rank = len(basis_vecs)
    if la.span_rank(basis_vecs) != rank:
        raise NonRootSystem("basis vectors are linearly dependent")

    # coefficients of each root over the basis
    bt = la.transpose(la.mat(basis_vecs))
    coeffs = {}
    for v in vec_set:
        sol = la.solve(bt, v)
        if sol is None or any(c.denominator != 1 for c in sol):
            raise NonRootSystem(f"root {v} is not an integral combination of the basis")
        if not (all(c >= 0 for c in sol) or all(c <= 0 for c in sol)):
            raise NonRootSystem(f"root {v} has mixed-sign basis coefficients")
        coeffs[v] = tuple(int(c) for c in sol)

    def sdot(u: Vec, w: Vec) -> Fraction:
        return la.dot(u, w)

    cartan = []
    for bi in basis_vecs:
        row = []
        for bj in basis_vecs:
            val = 2 * sdot(bi, bj) / sdot(bj, bj)
            if val.denominator != 1:
                raise NonRootSystem("non-integral Cartan pairing in explicit list")
            row.append(int(val))
        cartan.append(row)

    # reflection closure over the explicit vectors
    for a in vec_set:
        for b in vec_set:
            c = 2 * sdot(a, b) / sdot(b, b)
            if c.denominator != 1:
                raise NonRootSystem("non-integral pairing in explicit list")
            image = la.sub(a, la.scale(b, c))
            if image not in vec_set:
                raise NonRootSystem("explicit list not closed under reflections")

    root_coeffs = {coeffs[v] for v in vec_set}
    doubled = {a for a in root_coeffs if tuple(2 * c for c in a) in root_coeffs}

    # normalise lengths per diagram component: short simple root squared 2
    lengths = [sdot(b, b) for b in basis_vecs]
    stub = RootDatum(
        name="explicit",
        rank=rank,
        cartan=tuple(tuple(r) for r in cartan),
        simple_lengths=tuple(lengths),
        roots=tuple(sorted(root_coeffs)),
        multipliable=frozenset(),
    )
    scaled = list(lengths)
    for comp in stub.diagram_components:
        m = min(lengths[i] for i in comp)
        for i in comp:
            scaled[i] = lengths[i] * 2 / m

    datum = RootDatum(
        name="explicit",
        rank=rank,
        cartan=tuple(tuple(r) for r in cartan),
        simple_lengths=tuple(scaled),
        roots=tuple(sorted(root_coeffs)),
        multipliable=frozenset(doubled),
        essential=la.span_rank(vectors) == ambient,
        input_rank=ambient,
    )
    datum.validate()
    return datum


def build_root_datum(spec, basis: Optional[Sequence[int]] = None) -> RootDatum:
    """Build a root datum from a catalogue name or an explicit root list.

    `spec` is a name like "A2", "BC1", "A1xA1", or a list of rational
    vectors (requires `basis`, the indices of the chosen simple roots).
    """
    if isinstance(spec, str):
        return _build_catalogue(spec)
    if basis is None:
        raise NonRootSystem("explicit root lists require basis indices")
    return _build_explicit(spec, basis)


# -- Weyl group -------------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    """An element of the Weyl group, acting on points and on roots."""

    mat_points: Mat  # action on coroot coordinates
    mat_roots: Mat  # action on root coefficient vectors
    word: tuple[int, ...]

    def apply_point(self, x: Vec) -> Vec:
        return la.mat_vec(self.mat_points, x)

    def apply_root(self, a: Root) -> Root:
        img = la.mat_vec(self.mat_roots, la.vec(a))
        return tuple(int(c) for c in img)

    @property
    def length(self) -> int:
        return len(self.word)

    def __hash__(self) -> int:
        return hash(self.mat_points)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.mat_points == other.mat_points


class WeylGroup:
    """The finite reflection group of a root datum, fully enumerated."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        n = datum.rank
        cartan = datum.cartan
        gens = []
        for k in range(n):
            mp = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
            for j in range(n):
                mp[k][j] -= cartan[k][j]
            mr = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
            for j in range(n):
                mr[k][j] -= cartan[j][k]
            gens.append(
                WeylElement(
                    mat_points=tuple(tuple(r) for r in mp),
                    mat_roots=tuple(tuple(r) for r in mr),
                    word=(k,),
                )
            )
        self.generators = tuple(gens)
        ident = WeylElement(la.identity(n), la.identity(n), ())
        self.identity = ident

        seen = {ident.mat_points: ident}
        frontier = [ident]
        while frontier:
            new = []
            for w in frontier:
                for k, s in enumerate(self.generators):
                    mp = la.mat_mul(s.mat_points, w.mat_points)
                    if mp not in seen:
                        elt = WeylElement(
                            mat_points=mp,
                            mat_roots=la.mat_mul(s.mat_roots, w.mat_roots),
                            word=(k,) + w.word,
                        )
                        seen[mp] = elt
                        new.append(elt)
            frontier = new
        self.elements = tuple(
            sorted(seen.values(), key=lambda w: (w.length, w.mat_points))
        )

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        mp = la.mat_mul(u.mat_points, v.mat_points)
        return self._lookup(mp)

    def _lookup(self, mat_points: Mat) -> WeylElement:
        for w in self.elements:
            if w.mat_points == mat_points:
                return w
        raise KeyError("matrix is not a Weyl element")

    def subgroup_elements(self, gen_indices: Iterable[int]) -> list[WeylElement]:
        """The reflection subgroup generated by the given simple reflections."""
        gens = [self.generators[i] for i in gen_indices]
        seen = {self.identity.mat_points: self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                for s in gens:
                    mp = la.mat_mul(s.mat_points, w.mat_points)
                    if mp not in seen:
                        elt = WeylElement(
                            mat_points=mp,
                            mat_roots=la.mat_mul(s.mat_roots, w.mat_roots),
                            word=s.word + w.word,
                        )
                        seen[mp] = elt
                        new.append(elt)
            frontier = new
        return sorted(seen.values(), key=lambda w: (w.length, w.mat_points))


@lru_cache(maxsize=None)
def weyl_enumerate(datum: RootDatum) -> WeylGroup:
    """Enumerate the Weyl group by closing the simple reflections."""
    return WeylGroup(datum)
