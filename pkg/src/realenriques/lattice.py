"""Integral lattices, sublattices and glue groups.

Vectors are integer coordinate rows in the basis of the ambient lattice.
A ``Sublattice`` keeps its basis in Hermite normal form, so two sublattices
are equal exactly when their bases are.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exact_linalg as xl
from .errors import DegenerateLatticeError, InconsistencyError, InputError
from .finite_quadratic import FiniteQuadraticModule, mod2q, subgroup_order


@dataclass(frozen=True, eq=False)
class Lattice:
    gram: np.ndarray
    name: str | None = None

    def __post_init__(self):
        try:
            g = xl.int_matrix(self.gram)
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad Gram matrix: {exc}") from exc
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InputError("Gram matrix must be square")
        n = g.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                if g[i, j] != g[j, i]:
                    raise InputError(
                        f"Gram matrix not symmetric: entry ({i + 1},{j + 1}) = {g[i, j]} "
                        f"but ({j + 1},{i + 1}) = {g[j, i]}"
                    )
        object.__setattr__(self, "gram", g)

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.gram.shape == other.gram.shape
            and bool((self.gram == other.gram).all())
        )

    __hash__ = None

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    @cached_property
    def det(self) -> int:
        return xl.determinant(self.gram)

    @property
    def is_nondegenerate(self) -> bool:
        return self.det != 0

    @property
    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    @cached_property
    def signature(self) -> tuple[int, int, int]:
        return xl.signature_exact(self.gram)

    def is_hyperbolic(self) -> bool:
        p, m, z = self.signature
        return z == 0 and p == 1

    def pair(self, x, y):
        return np.asarray(x, dtype=object) @ self.gram @ np.asarray(y, dtype=object)

    @cached_property
    def discriminant(self) -> FiniteQuadraticModule:
        if not self.is_nondegenerate:
            raise DegenerateLatticeError(f"lattice {self.name or ''} is degenerate".replace("  ", " "))
        return FiniteQuadraticModule.from_gram(self.gram)

    def renamed(self, name) -> "Lattice":
        return Lattice(self.gram, name)


def rescale(l: Lattice, a) -> Lattice:
    a = Fraction(a)
    if a == 0:
        raise ValueError("scale factor must be nonzero")
    g = xl.rat_matrix(l.gram) * a
    if not xl.is_integral(g):
        raise ValueError(f"rescaling by {a} gives a non-integral Gram matrix")
    return Lattice(xl.to_int(g))


def direct_sum(ls) -> Lattice:
    ls = list(ls)
    n = sum(l.rank for l in ls)
    g = xl.zeros(n, n)
    k = 0
    for l in ls:
        g[k : k + l.rank, k : k + l.rank] = l.gram
        k += l.rank
    return Lattice(g)


def discriminant_form(l: Lattice) -> FiniteQuadraticModule:
    return l.discriminant


@dataclass(frozen=True, eq=False)
class Sublattice:
    ambient: Lattice
    basis: np.ndarray

    def __post_init__(self):
        b = xl.int_matrix(self.basis, shape=(0, self.ambient.rank))
        if b.shape[1] != self.ambient.rank:
            raise ValueError("basis vectors must have ambient length")
        h = xl.hermite_normal_form(b) if b.shape[0] else b
        object.__setattr__(self, "basis", h)

    def __eq__(self, other):
        return (
            isinstance(other, Sublattice)
            and self.ambient == other.ambient
            and self.basis.shape == other.basis.shape
            and bool((self.basis == other.basis).all())
        )

    __hash__ = None

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def gram(self) -> np.ndarray:
        if self.rank == 0:
            return xl.int_matrix([], shape=(0, 0))
        return self.basis @ self.ambient.gram @ self.basis.T

    @cached_property
    def lattice(self) -> Lattice:
        return Lattice(self.gram)

    @property
    def discriminant(self) -> FiniteQuadraticModule:
        return self.lattice.discriminant

    def is_primitive(self) -> bool:
        if self.rank == 0:
            return True
        return bool((xl.saturate(self.basis, self.ambient.rank) == self.basis).all())

    def contains(self, v) -> bool:
        try:
            xl.integer_coordinates(self.basis, xl.int_vector(list(v)))
        except ValueError:
            return False
        return True

    def coords(self, v) -> np.ndarray:
        """Integer coordinates of an ambient vector in this basis."""
        return xl.integer_coordinates(self.basis, xl.int_vector(list(v)))[0]

    def project_dual(self, x) -> np.ndarray:
        """S-coordinates of the orthogonal projection of ``x`` onto S (x) Q.

        For x in the ambient lattice the result lies in the dual of S.
        """
        if self.rank == 0:
            return xl.rat_matrix(xl.zeros(1, 0))[0]
        rhs = self.basis @ self.ambient.gram @ np.asarray(x, dtype=object)
        sol = xl.solve_rational(self.gram, rhs)
        if sol is None:
            raise DegenerateLatticeError("projection onto a degenerate sublattice")
        return sol

    def klass(self, x) -> tuple:
        """Class of the projection of ambient ``x`` in the discriminant group."""
        return self.discriminant.reduce(self.project_dual(x))

    def ambient_vector(self, coords) -> np.ndarray:
        """Ambient coordinates of a (possibly rational) S-coordinate vector."""
        if self.rank == 0:
            return xl.rat_matrix(xl.zeros(1, self.ambient.rank))[0]
        return np.asarray(coords, dtype=object) @ self.basis

    def saturation(self) -> "Sublattice":
        return Sublattice(self.ambient, xl.saturate(self.basis, self.ambient.rank))


def sublattice(ambient: Lattice, vectors, saturate: bool = False) -> Sublattice:
    s = Sublattice(ambient, vectors)
    return s.saturation() if saturate else s


def orthogonal_complement(s: Sublattice) -> Sublattice:
    if not s.ambient.is_nondegenerate:
        raise DegenerateLatticeError("orthogonal complement needs a nondegenerate ambient lattice")
    if s.rank == 0:
        return Sublattice(s.ambient, xl.identity(s.ambient.rank))
    return Sublattice(s.ambient, xl.kernel_basis_int(s.basis @ s.ambient.gram))


def intersection(s1: Sublattice, s2: Sublattice) -> Sublattice:
    """Intersection of two sublattices of the same ambient lattice."""
    n = s1.ambient.rank
    if s1.rank == 0 or s2.rank == 0:
        return Sublattice(s1.ambient, xl.int_matrix([], shape=(0, n)))
    # x b1 = y b2  <=> (x, -y) in the kernel of [b1; b2]^T
    stacked = np.concatenate([s1.basis, -s2.basis], axis=0)
    ker = xl.kernel_basis_int(stacked.T)
    if ker.shape[0] == 0:
        return Sublattice(s1.ambient, xl.int_matrix([], shape=(0, n)))
    return Sublattice(s1.ambient, ker[:, : s1.rank] @ s1.basis)


def restrict_to(s: Sublattice, inner: Sublattice) -> Sublattice:
    """Rewrite ``inner`` (a sublattice of s.ambient inside s) in s-coordinates."""
    if inner.rank == 0:
        return Sublattice(s.lattice, xl.int_matrix([], shape=(0, s.rank)))
    return Sublattice(s.lattice, xl.integer_coordinates(s.basis, inner.basis))


@dataclass(frozen=True, eq=False)
class GlueGroup:
    """The image of the ambient lattice in A_{S1} (+) A_{S2}."""

    summand1: Sublattice
    summand2: Sublattice
    generators: tuple
    order: int

    @property
    def module1(self) -> FiniteQuadraticModule:
        return self.summand1.discriminant

    @property
    def module2(self) -> FiniteQuadraticModule:
        return self.summand2.discriminant

    @property
    def divisors(self) -> tuple:
        return self.module1.divisors + self.module2.divisors

    def split(self, t):
        k = len(self.module1.divisors)
        return t[:k], t[k:]

    def q(self, t) -> Fraction:
        a, b = self.split(t)
        return mod2q(self.module1.q(a) + self.module2.q(b))

    def b(self, s, t) -> Fraction:
        s1, s2 = self.split(s)
        t1, t2 = self.split(t)
        from .finite_quadratic import mod1

        return mod1(self.module1.b(s1, t1) + self.module2.b(s2, t2))

    def elements(self) -> list:
        return span_elements(self.divisors, self.generators)

    def is_isotropic(self) -> bool:
        gens = self.generators
        if not (self.module1.even and self.module2.even):
            return all(self.b(g, h) == 0 for g in gens for h in gens)
        return all(self.q(g) == 0 for g in gens) and all(
            self.b(g, h) == 0 for i, g in enumerate(gens) for h in gens[i + 1 :]
        )

    def meets_factors_trivially(self) -> bool:
        """Order check equivalent to trivial intersection with each factor."""
        k = len(self.module1.divisors)
        p1 = subgroup_order(self.module1.divisors, [g[:k] for g in self.generators])
        p2 = subgroup_order(self.module2.divisors, [g[k:] for g in self.generators])
        return p1 == self.order and p2 == self.order


def glue_group(ambient: Lattice, s1: Sublattice, s2: Sublattice, check: bool = True) -> GlueGroup:
    if s1.ambient != ambient or s2.ambient != ambient:
        raise InputError("summands must live in the given ambient lattice")
    if s1.rank + s2.rank != ambient.rank:
        raise InputError("summand ranks must add up to the ambient rank")
    if s1.rank and s2.rank and any(x != 0 for x in (s1.basis @ ambient.gram @ s2.basis.T).flat):
        raise InputError("summands are not orthogonal")
    if check and not (s1.is_primitive() and s2.is_primitive()):
        raise InputError("summands must be primitive")
    gens = []
    for e in xl.identity(ambient.rank):
        t = s1.klass(e) + s2.klass(e)
        if any(t) and t not in gens:
            gens.append(t)
    m1, m2 = s1.discriminant, s2.discriminant
    order = subgroup_order(m1.divisors + m2.divisors, gens)
    out = GlueGroup(s1, s2, tuple(gens), order)
    if check:
        disc = ambient.discriminant.order
        if order * order * disc != m1.order * m2.order:
            raise InconsistencyError("glue order", f"{order}^2 * {disc} != {m1.order} * {m2.order}")
        if ambient.is_even and not out.is_isotropic():
            raise InconsistencyError("glue isotropy", "glue group is not isotropic")
        if not out.meets_factors_trivially():
            raise InconsistencyError("glue graph", "glue group meets a factor")
    return out


def span_elements(divisors, gens) -> list:
    """All elements of the subgroup of (+) Z/d_i spanned by ``gens`` (BFS)."""
    zero = tuple(0 for _ in divisors)
    seen = {zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple((a + b) % d for a, b, d in zip(x, g, divisors))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


@dataclass(frozen=True, eq=False)
class ThreeSummandGlue:
    """L/(S1 + S2 + S3) inside A_{S1} (+) A_{S2} (+) A_{S3}, listed element by element."""

    summands: tuple
    elements: frozenset

    @property
    def modules(self) -> tuple:
        return tuple(s.discriminant for s in self.summands)

    @property
    def order(self) -> int:
        return len(self.elements)

    def _cuts(self):
        k1 = len(self.modules[0].divisors)
        k2 = k1 + len(self.modules[1].divisors)
        return k1, k2

    def part(self, x, i):
        k1, k2 = self._cuts()
        return (x[:k1], x[k1:k2], x[k2:])[i]

    def pair_glue(self, i, j) -> frozenset:
        """Gamma(S_i, S_j): elements with zero component on the remaining summand."""
        (other,) = {0, 1, 2} - {i, j}
        return frozenset(x for x in self.elements if not any(self.part(x, other)))


def three_summand_glue(ambient: Lattice, s1: Sublattice, s2: Sublattice, s3: Sublattice) -> ThreeSummandGlue:
    ss = (s1, s2, s3)
    if sum(s.rank for s in ss) != ambient.rank:
        raise InputError("summand ranks must add up to the ambient rank")
    for i in range(3):
        for j in range(i + 1, 3):
            if ss[i].rank and ss[j].rank and any(x != 0 for x in (ss[i].basis @ ambient.gram @ ss[j].basis.T).flat):
                raise InputError("summands are not orthogonal")
    divisors = sum((s.discriminant.divisors for s in ss), ())
    gens = [sum((s.klass(e) for s in ss), ()) for e in xl.identity(ambient.rank)]
    return ThreeSummandGlue(ss, frozenset(span_elements(divisors, gens)))


def complement_identity(g: ThreeSummandGlue) -> tuple:
    """(perp of Gamma(S1,S2) in Gamma(L) for b_{S2}, Gamma(S2,S3) + Gamma(S1,S3)), both as sets."""
    m2 = g.modules[1]
    d = max(m2.divisors, default=1)
    bm = [[int(x * d) for x in row] for row in m2.b_matrix()]

    def b2(x, y):
        s, t = g.part(x, 1), g.part(y, 1)
        return sum(s[i] * bm[i][j] * t[j] for i in range(len(s)) for j in range(len(t))) % d

    g12 = g.pair_glue(0, 1)
    perp = frozenset(x for x in g.elements if all(b2(x, y) == 0 for y in g12))
    divisors = sum((m.divisors for m in g.modules), ())
    rhs = frozenset(span_elements(divisors, list(g.pair_glue(1, 2) | g.pair_glue(0, 2))))
    return perp, rhs
