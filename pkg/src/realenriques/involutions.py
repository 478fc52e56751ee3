"""Involutive isometries, their eigenlattices and invariants.

An involution acts on column coordinate vectors: phi(x) = M x.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from . import exact_linalg as xl
from .errors import InconsistencyError, InputError, InvalidInvolutionError
from .lattice import Lattice, Sublattice


@dataclass(frozen=True, eq=False)
class IsometryInvolution:
    lattice: Lattice
    matrix: np.ndarray
    name: str | None = None

    def __post_init__(self):
        try:
            m = xl.int_matrix(self.matrix)
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad involution matrix: {exc}") from exc
        n = self.lattice.rank
        if m.shape != (n, n):
            raise InvalidInvolutionError(f"matrix is {m.shape[0]}x{m.shape[1]}, lattice has rank {n}")
        if not ((m @ m) == xl.identity(n)).all():
            raise InvalidInvolutionError("matrix does not square to the identity")
        if not ((m.T @ self.lattice.gram @ m) == self.lattice.gram).all():
            raise InvalidInvolutionError("matrix does not preserve the Gram matrix")
        object.__setattr__(self, "matrix", m)

    def __eq__(self, other):
        return (
            isinstance(other, IsometryInvolution)
            and self.lattice == other.lattice
            and bool((self.matrix == other.matrix).all())
        )

    __hash__ = None

    def __call__(self, x):
        return self.matrix @ np.asarray(x, dtype=object)

    def compose(self, other: "IsometryInvolution") -> "IsometryInvolution":
        """self o other; only valid when the two commute."""
        return IsometryInvolution(self.lattice, self.matrix @ other.matrix)

    def commutes_with(self, other: "IsometryInvolution") -> bool:
        return bool(((self.matrix @ other.matrix) == (other.matrix @ self.matrix)).all())

    @cached_property
    def eigenlattices(self) -> tuple[Sublattice, Sublattice]:
        return eigenlattices(self)

    @cached_property
    def invariants(self) -> "InvolutionInvariants":
        return involution_invariants(self)

    def restrict(self, s: Sublattice) -> "IsometryInvolution":
        """Action on an invariant sublattice, written in its own basis."""
        images = (self.matrix @ s.basis.T).T
        coords = xl.integer_coordinates(s.basis, images) if s.rank else xl.int_matrix([], shape=(0, 0))
        return IsometryInvolution(s.lattice, coords.T)


def eigenlattices(phi: IsometryInvolution) -> tuple[Sublattice, Sublattice]:
    n = phi.lattice.rank
    one = xl.identity(n)
    plus = Sublattice(phi.lattice, xl.kernel_basis_int(phi.matrix - one))
    minus = Sublattice(phi.lattice, xl.kernel_basis_int(phi.matrix + one))
    if plus.rank + minus.rank != n:
        raise InconsistencyError("eigenlattice ranks", f"{plus.rank} + {minus.rank} != {n}")
    if plus.rank and minus.rank and any(x != 0 for x in (plus.basis @ phi.lattice.gram @ minus.basis.T).flat):
        raise InconsistencyError("eigenlattice orthogonality")
    return plus, minus


def common_eigenlattice(phis, signs) -> Sublattice:
    """{x : phi_i(x) = sign_i * x for all i}."""
    lat = phis[0].lattice
    one = xl.identity(lat.rank)
    rows = np.concatenate([p.matrix - s * one for p, s in zip(phis, signs)], axis=0)
    return Sublattice(lat, xl.kernel_basis_int(rows))


@dataclass(frozen=True)
class InvolutionInvariants:
    r: int
    a: int
    delta: int

    def __post_init__(self):
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")
        if self.a == 0 and self.delta:
            raise ValueError("delta must vanish when a = 0")
        if self.a < 0 or self.r < 0:
            raise ValueError("negative invariant")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.a, self.delta)


def involution_invariants(phi: IsometryInvolution) -> InvolutionInvariants:
    lat = phi.lattice
    if not (lat.is_even and lat.is_unimodular):
        raise InputError("invariants need an even unimodular lattice")
    plus, _ = phi.eigenlattices
    if plus.rank == 0:
        return InvolutionInvariants(0, 0, 0)
    a = plus.discriminant
    if not a.is_two_elementary():
        raise InconsistencyError("2-elementary eigenlattice", f"divisors {a.divisors}")
    # 2b takes integer values on a 2-elementary group, so q is Z/2Z-valued
    # everywhere iff it is on generators
    delta = 0 if all(v.denominator == 1 for v in a.q_values()) else 1
    return InvolutionInvariants(plus.rank, len(a.divisors), delta)


class FixedSetKind(Enum):
    EMPTY = "empty"
    TWO_TORI = "two_tori"
    GENERIC = "generic"


@dataclass(frozen=True)
class FixedSetTopology:
    kind: FixedSetKind
    genus: int
    spheres: int
    components: int

    def euler_characteristic(self) -> int:
        if self.kind is FixedSetKind.EMPTY:
            return 0
        if self.kind is FixedSetKind.TWO_TORI:
            return 0
        return (2 - 2 * self.genus) + 2 * self.spheres

    def mod2_betti_total(self) -> int:
        """dim H*(fixed set; Z/2)."""
        if self.kind is FixedSetKind.EMPTY:
            return 0
        if self.kind is FixedSetKind.TWO_TORI:
            return 8
        return (2 + 2 * self.genus) + 2 * self.spheres

    def describe(self) -> str:
        if self.kind is FixedSetKind.EMPTY:
            return "empty"
        if self.kind is FixedSetKind.TWO_TORI:
            return "2T1"
        return f"T{self.genus}" + (f" + {self.spheres}T0" if self.spheres else "")


def fixed_set_topology(inv) -> FixedSetTopology:
    r, a, delta = inv.as_tuple() if isinstance(inv, InvolutionInvariants) else inv
    if (r - a) % 2 or (22 - r - a) % 2:
        raise ValueError(f"parity violation for invariants {(r, a, delta)}")
    if (r, a, delta) == (10, 10, 0):
        return FixedSetTopology(FixedSetKind.EMPTY, 0, 0, 0)
    if (r, a, delta) == (10, 8, 0):
        return FixedSetTopology(FixedSetKind.TWO_TORI, 1, 0, 2)
    g, k = (22 - r - a) // 2, (r - a) // 2
    if g < 0 or k < 0:
        raise ValueError(f"negative genus or sphere count for {(r, a, delta)}")
    return FixedSetTopology(FixedSetKind.GENERIC, g, k, k + 1)


def components(inv) -> int:
    return fixed_set_topology(inv).components


def characteristic_class_v(phi: IsometryInvolution) -> np.ndarray:
    """v in L/2L with x . phi(x) = x . v (mod 2) for all x.

    G M is symmetric for an involutive isometry, so x^T G M x is congruent
    mod 2 to the linear form given by its diagonal.
    """
    lat = phi.lattice
    if not lat.is_unimodular:
        raise InputError("characteristic class needs a unimodular lattice")
    gm = lat.gram @ phi.matrix
    diag = [gm[i, i] for i in range(lat.rank)]
    v = xl.solve_mod2(lat.gram, diag)
    if v is None:
        raise InconsistencyError("characteristic class", "no solution on a unimodular lattice")
    return v


def euler_char_from_r(r: int, surface: str = "K3") -> int:
    if surface == "K3":
        return 2 * r - 20
    if surface == "Enriques":
        return 2 * r - 8
    raise ValueError(f"unknown surface kind {surface!r}")


def r_from_euler(chi: int, surface: str = "K3") -> int:
    if chi % 2:
        raise ValueError("Euler characteristic must be even")
    if surface == "K3":
        return chi // 2 + 10
    if surface == "Enriques":
        return chi // 2 + 4
    raise ValueError(f"unknown surface kind {surface!r}")
