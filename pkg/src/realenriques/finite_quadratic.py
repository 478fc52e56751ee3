"""Finite bilinear and quadratic modules coming from integral lattices.

A module is the group S*/S of a nondegenerate lattice S, presented through
the Smith form of its Gram matrix: it is a sum of cyclic groups Z/d_i with
generators g_i (dual vectors written in S-coordinates). Elements are integer
tuples ``t`` with 0 <= t_i < d_i. Form values are exact ``Fraction`` objects
reduced into [0, 1) for the bilinear form and [0, 2) for the quadratic form.

Subgroup work happens on the 2-torsion layer A^(1) = {x : 2x = 0}, which is
an F2 vector space with basis (d_i / 2) g_i over the even d_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from . import exact_linalg as xl
from .errors import DegenerateLatticeError, InconsistencyError


def mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def mod2q(x) -> Fraction:
    x = Fraction(x)
    return x - 2 * ((x.numerator // x.denominator) // 2)


@dataclass(frozen=True, eq=False)
class FiniteQuadraticModule:
    """Discriminant module of a lattice with Gram matrix ``gram``."""

    gram: np.ndarray
    divisors: tuple
    gens: np.ndarray  # k x n, row i is the dual vector g_i
    coord_rows: np.ndarray  # k x n integer, t_i = coord_rows[i] . x  mod d_i
    even: bool

    @classmethod
    def from_gram(cls, gram) -> "FiniteQuadraticModule":
        g = xl.int_matrix(gram)
        n = g.shape[0]
        if n and xl.determinant(g) == 0:
            raise DegenerateLatticeError("discriminant form of a degenerate lattice")
        even = all(g[i, i] % 2 == 0 for i in range(n))
        if n == 0:
            return cls(g, (), xl.rat_matrix([], shape=(0, 0)), xl.int_matrix([], shape=(0, 0)), True)
        d, _, v = xl.smith_normal_form(g)
        vinv = xl.integer_inverse(v)
        keep = [i for i in range(n) if d[i, i] != 1]
        divisors = tuple(int(d[i, i]) for i in keep)
        gens = xl.rat_matrix(xl.zeros(len(keep), n))
        rows = xl.zeros(len(keep), n)
        for k, i in enumerate(keep):
            gens[k] = xl.rat_matrix(v[:, i].reshape(1, -1))[0] / d[i, i]
            rows[k] = vinv[i] * d[i, i]
        return cls(g, divisors, gens, rows, even)

    # -- group structure ---------------------------------------------------

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    def is_two_elementary(self) -> bool:
        return all(d == 2 for d in self.divisors)

    def vector(self, t) -> np.ndarray:
        """Dual-vector representative of the element ``t``."""
        out = xl.rat_matrix(xl.zeros(1, self.rank))[0]
        for ti, g in zip(t, self.gens):
            if ti:
                out = out + ti * g
        return out

    def reduce(self, x) -> tuple:
        """Class of the dual vector ``x`` (S-coordinates) as a canonical tuple."""
        x = np.asarray(x, dtype=object)
        if not xl.is_integral(self.gram @ x):
            raise ValueError("vector is not in the dual lattice")
        out = []
        for d, row in zip(self.divisors, self.coord_rows):
            y = Fraction(row @ x)
            if y.denominator != 1:
                raise InconsistencyError("dual-coordinate reduction", "non-integral coordinate")
            out.append(y.numerator % d)
        return tuple(out)

    def add(self, s, t) -> tuple:
        return tuple((a + b) % d for a, b, d in zip(s, t, self.divisors))

    def zero(self) -> tuple:
        return tuple(0 for _ in self.divisors)

    def elements(self):
        return product(*(range(d) for d in self.divisors))

    # -- forms ---------------------------------------------------------------

    def b(self, s, t) -> Fraction:
        x, y = self._vec(s), self._vec(t)
        return mod1(x @ self.gram @ y)

    def q(self, t) -> Fraction:
        if not self.even:
            raise ValueError("quadratic form needs an even lattice")
        x = self._vec(t)
        return mod2q(x @ self.gram @ x)

    def _vec(self, t):
        if isinstance(t, tuple):
            return self.vector(t)
        return np.asarray(t, dtype=object)

    def b_matrix(self) -> list:
        k = len(self.divisors)
        return [[mod1(self.gens[i] @ self.gram @ self.gens[j]) for j in range(k)] for i in range(k)]

    def q_values(self) -> list:
        return [mod2q(g @ self.gram @ g) for g in self.gens]

    # -- the 2-torsion layer ------------------------------------------------

    @cached_property
    def layer_slots(self) -> tuple:
        return tuple(i for i, d in enumerate(self.divisors) if d % 2 == 0)

    @property
    def layer_dim(self) -> int:
        return len(self.layer_slots)

    def layer_element(self, coords) -> tuple:
        """Group element with the given F2 layer coordinates."""
        t = [0] * len(self.divisors)
        for c, i in zip(coords, self.layer_slots):
            if int(c) % 2:
                t[i] = self.divisors[i] // 2
        return tuple(t)

    def layer_coords(self, t) -> np.ndarray:
        """F2 coordinates of an element of A^(1); raises if 2t != 0."""
        if not isinstance(t, tuple):
            t = self.reduce(t)
        out = np.zeros(self.layer_dim, dtype=np.uint8)
        slot = {i: k for k, i in enumerate(self.layer_slots)}
        for i, (ti, d) in enumerate(zip(t, self.divisors)):
            if ti == 0:
                continue
            if i not in slot or 2 * ti != d:
                raise ValueError("element is not killed by 2")
            out[slot[i]] = 1
        return out

    def in_layer(self, t) -> bool:
        return all((2 * ti) % d == 0 for ti, d in zip(t, self.divisors))

    @cached_property
    def layer_form(self) -> np.ndarray:
        """F2 matrix of 2*b on the layer basis (b takes values in (1/2)Z/Z)."""
        k = self.layer_dim
        basis = [self.layer_element(np.eye(k, dtype=np.uint8)[i]) for i in range(k)]
        out = np.zeros((k, k), dtype=np.uint8)
        for i in range(k):
            for j in range(k):
                v = 2 * self.b(basis[i], basis[j])
                if v.denominator != 1:
                    raise InconsistencyError("layer form", "value outside (1/2)Z/Z")
                out[i, j] = v.numerator % 2
        return out

    def layer_diagonal(self) -> np.ndarray:
        """F2 vector of 2*b(e_i, e_i); x -> b(x, x) is linear on the layer."""
        return np.diag(self.layer_form).copy()

    def layer_nondegenerate(self) -> bool:
        return xl.rank_mod2(self.layer_form) == self.layer_dim

    def whole_layer(self) -> "SubgroupF2":
        return SubgroupF2(self, np.eye(self.layer_dim, dtype=np.uint8))

    def zero_subgroup(self) -> "SubgroupF2":
        return SubgroupF2(self, np.zeros((0, self.layer_dim), dtype=np.uint8))

    def layer_kernel(self) -> "SubgroupF2":
        """Kernel of b restricted to A^(1)."""
        return SubgroupF2(self, xl.nullspace_mod2(self.layer_form, self.layer_dim))

    def double_subgroup(self) -> "SubgroupF2":
        """2A, provided it sits inside the layer (true when 4A = 0)."""
        rows = []
        for i, d in enumerate(self.divisors):
            t = [0] * len(self.divisors)
            t[i] = (2 % d)
            t = tuple(t)
            if any(t):
                rows.append(self.layer_coords(t))
        return SubgroupF2(self, xl.rows_mod2(rows, self.layer_dim))


def ann2(a: FiniteQuadraticModule) -> "SubgroupF2":
    """Elements killed by 2."""
    return a.whole_layer()


@dataclass(frozen=True, eq=False)
class SubgroupF2:
    """Subgroup of the 2-torsion layer, stored as a reduced echelon basis."""

    parent: FiniteQuadraticModule
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.parent.layer_dim
        object.__setattr__(self, "basis", xl.row_space_mod2(xl.rows_mod2(self.basis, n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupF2)
            and other.parent is self.parent
            and xl.same_row_space_mod2(self.basis, other.basis, self.parent.layer_dim)
        )

    __hash__ = None

    def contains(self, coords) -> bool:
        return xl.in_span_mod2(self.basis, coords)

    def is_subgroup_of(self, other: "SubgroupF2") -> bool:
        return all(other.contains(v) for v in self.basis)

    def elements(self):
        for bits in product((0, 1), repeat=self.dim):
            v = np.zeros(self.parent.layer_dim, dtype=np.uint8)
            for bit, row in zip(bits, self.basis):
                if bit:
                    v ^= row
            yield v

    def group_elements(self):
        return [self.parent.layer_element(v) for v in self.elements()]


def _same_parent(h1: SubgroupF2, h2: SubgroupF2):
    if h1.parent is not h2.parent:
        raise ValueError("subgroups of different modules")


def subgroup_sum(h1: SubgroupF2, h2: SubgroupF2) -> SubgroupF2:
    _same_parent(h1, h2)
    return SubgroupF2(h1.parent, np.concatenate([h1.basis, h2.basis], axis=0))


def subgroup_intersection(h1: SubgroupF2, h2: SubgroupF2) -> SubgroupF2:
    _same_parent(h1, h2)
    n = h1.parent.layer_dim
    return SubgroupF2(h1.parent, xl.intersect_mod2(h1.basis, h2.basis, n))


def orthogonal_complement_in(h: SubgroupF2, require_nondegenerate: bool = True) -> SubgroupF2:
    """{x in A^(1) : b(x, h) = 0 for all h in H}."""
    a = h.parent
    if require_nondegenerate and not a.layer_nondegenerate():
        raise DegenerateLatticeError("bilinear form is degenerate on the 2-torsion layer")
    if h.dim == 0:
        return a.whole_layer()
    pairing = (h.basis.astype(np.int64) @ a.layer_form.astype(np.int64)) % 2
    return SubgroupF2(a, xl.nullspace_mod2(pairing, a.layer_dim))


def is_isotropic(h: SubgroupF2, mode: str = "bilinear") -> bool:
    a = h.parent
    m = (h.basis.astype(np.int64) @ a.layer_form.astype(np.int64) @ h.basis.T.astype(np.int64)) % 2
    if mode == "bilinear":
        return not m.any()
    if mode != "quadratic":
        raise ValueError(f"unknown mode {mode!r}")
    if not a.even:
        raise ValueError("quadratic mode needs an even lattice")
    # q(x + y) = q(x) + q(y) + 2 b(x, y); vanishing on a basis plus b = 0
    # on pairs is equivalent to vanishing on H
    if m.any():
        return False
    return all(a.q(a.layer_element(v)) == 0 for v in h.basis)


def characteristic_element(a: FiniteQuadraticModule, sub: SubgroupF2 | None = None) -> np.ndarray:
    """Layer coordinates of the characteristic element v: b(x, x) = b(x, v).

    Defined on the whole 2-torsion layer, where the form must be
    nondegenerate.
    """
    if not a.layer_nondegenerate():
        raise DegenerateLatticeError("no unique characteristic element for a degenerate form")
    if a.layer_dim == 0:
        return np.zeros(0, dtype=np.uint8)
    v = xl.solve_mod2(a.layer_form, a.layer_diagonal())
    if v is None:
        raise InconsistencyError("characteristic element", "unsolvable system")
    return v


def is_characteristic(a: FiniteQuadraticModule, coords) -> bool:
    """Does b(x, x) = b(x, v) hold for every x of the layer?"""
    coords = xl.mod2(coords).reshape(-1)
    pairing = (a.layer_form.astype(np.int64) @ coords.astype(np.int64)) % 2
    return bool((pairing == a.layer_diagonal()).all())


def subgroup_order(divisors, gens) -> int:
    """Order of the subgroup of (+) Z/d_i generated by integer tuples ``gens``."""
    k = len(divisors)
    if k == 0:
        return 1
    rows = [list(g) for g in gens]
    for i, d in enumerate(divisors):
        r = [0] * k
        r[i] = d
        rows.append(r)
    h = xl.hermite_normal_form(xl.int_matrix(rows))
    total = 1
    for d in divisors:
        total *= d
    return total // abs(xl.determinant(h))
