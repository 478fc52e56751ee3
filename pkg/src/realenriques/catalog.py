"""Standard lattices and explicit involutions of the K3 lattice.

Basis order of the K3 lattice: U1, U2, U3, E8a, E8b, i.e. coordinates
0-1, 2-3, 4-5, 6-13, 14-21. The Enriques involution exchanges U2 with U3
and E8a with E8b and negates U1.

Block involutions are built from one action per block:

* on U1 an involution of U;
* on U2 + U3 either the same involution a on both ("diag") or the twisted
  exchange (x, y) -> (phi y, phi x);
* on E8a + E8b likewise with an involution psi of E8.

Every such involution commutes with the Enriques involution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import exact_linalg as xl
from .errors import InvalidInvolutionError
from .involutions import IsometryInvolution
from .lattice import Lattice, direct_sum, rescale

E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def e8_gram() -> np.ndarray:
    """Negative definite E8 (negated Cartan matrix, Bourbaki labels)."""
    g = xl.zeros(8, 8)
    for i in range(8):
        g[i, i] = -2
    for i, j in E8_EDGES:
        g[i - 1, j - 1] = g[j - 1, i - 1] = 1
    return g


def hyperbolic_plane() -> Lattice:
    return Lattice([[0, 1], [1, 0]], "U")


def e8() -> Lattice:
    return Lattice(e8_gram(), "E8")


def rank_one(k: int) -> Lattice:
    return Lattice([[k]], f"<{k}>")


def named_lattices() -> dict:
    u, e = hyperbolic_plane(), e8()
    return {
        "U": u,
        "U(2)": rescale(u, 2).renamed("U(2)"),
        "E8": e,
        "E8(2)": rescale(e, 2).renamed("E8(2)"),
        "A1": rank_one(-2).renamed("A1"),
        "<2>": rank_one(2),
        "<-2>": rank_one(-2),
        "K3": k3_lattice(),
    }


@lru_cache(maxsize=None)
def _k3_gram_tuple():
    u, e = hyperbolic_plane(), e8()
    g = direct_sum([u, u, u, e, e]).gram
    return tuple(tuple(int(x) for x in row) for row in g)


def k3_lattice() -> Lattice:
    return Lattice(xl.int_matrix(_k3_gram_tuple()), "K3")


U1, U2, U3 = slice(0, 2), slice(2, 4), slice(4, 6)
E8A, E8B = slice(6, 14), slice(14, 22)


def tau_reference() -> IsometryInvolution:
    m = xl.zeros(22, 22)
    m[U1, U1] = -xl.identity(2)
    m[U2, U3] = xl.identity(2)
    m[U3, U2] = xl.identity(2)
    m[E8A, E8B] = xl.identity(8)
    m[E8B, E8A] = xl.identity(8)
    return IsometryInvolution(k3_lattice(), m, "tau")


def sigma_reference() -> IsometryInvolution:
    m = -xl.identity(22)
    m[U1, U1] = xl.int_matrix([[0, 1], [1, 0]])
    return IsometryInvolution(k3_lattice(), m, "sigma")


# ---------------------------------------------------------------------------
# involutions of U and E8

U_ACTIONS = {
    "+1": [[1, 0], [0, 1]],
    "-1": [[-1, 0], [0, -1]],
    "swap": [[0, 1], [1, 0]],
    "-swap": [[0, -1], [-1, 0]],
}


@lru_cache(maxsize=None)
def _e8_roots() -> tuple:
    """All 240 roots, as coordinate tuples, by closing simple roots under reflections."""
    g = e8_gram()
    simple = [tuple(int(i == j) for j in range(8)) for i in range(8)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            rv = np.array(r, dtype=object)
            for s in simple:
                sv = np.array(s, dtype=object)
                image = tuple(int(x) for x in rv + (rv @ g @ sv) * sv)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(seen))


def e8_roots() -> list:
    return [np.array(r, dtype=object) for r in _e8_roots()]


@lru_cache(maxsize=None)
def orthogonal_frame() -> tuple:
    """Eight mutually orthogonal roots, chosen greedily in sorted order."""
    g = e8_gram()
    frame = []
    for r in _e8_roots():
        rv = np.array(r, dtype=object)
        if all(rv @ g @ np.array(f, dtype=object) == 0 for f in frame):
            frame.append(r)
        if len(frame) == 8:
            break
    return tuple(frame)


@lru_cache(maxsize=None)
def d4_quadruple() -> tuple:
    """Four orthogonal roots whose span is not primitive (a D4-type quadruple).

    Searched among 4-subsets of the frame: the span of such a subset is
    either primitive or has index 2 in its saturation.
    """
    from itertools import combinations

    frame = orthogonal_frame()
    for quad in combinations(frame, 4):
        span = xl.int_matrix([list(r) for r in quad])
        if not (xl.saturate(span, 8) == xl.hermite_normal_form(span)).all():
            return quad
    return ()


def reflection_product(roots) -> np.ndarray:
    """Product of reflections x -> x + (x.r) r in mutually orthogonal roots."""
    g = e8_gram()
    m = xl.identity(8)
    for r in roots:
        rv = np.array(r, dtype=object).reshape(-1, 1)
        # reflection matrix acting on columns: I + r r^T G
        m = (xl.identity(8) + rv @ rv.T @ g) @ m
    return m


def e8_action(name: str) -> np.ndarray:
    """Named involution of E8: '+1', '-1', 'Rk', '-Rk' (k frame roots), 'R4d', '-R4d'."""
    sign = -1 if name.startswith("-") else 1
    core = name.lstrip("+-") or "1"
    if core == "1":
        return sign * xl.identity(8)
    if core == "R4d":
        roots = d4_quadruple()
    elif core.startswith("R") and core[1:].isdigit() and 1 <= int(core[1:]) <= 8:
        roots = orthogonal_frame()[: int(core[1:])]
    else:
        raise InvalidInvolutionError(f"unknown E8 action {name!r}")
    return sign * reflection_product(roots)


def u_action(name: str) -> np.ndarray:
    if name not in U_ACTIONS:
        raise InvalidInvolutionError(f"unknown U action {name!r}")
    return xl.int_matrix(U_ACTIONS[name])


@dataclass(frozen=True)
class BlockSpec:
    """One action per block; ``pair_*`` modes are 'diag' or 'exchange'."""

    u1: str
    u_mode: str
    u_action: str
    e8_mode: str
    e8_action: str
    u_action_b: str | None = None  # second U action for a deliberately broken 'diag'

    @property
    def name(self) -> str:
        u = f"{self.u_mode}:{self.u_action}" + (f"/{self.u_action_b}" if self.u_action_b else "")
        return f"u1={self.u1};u23={u};e8={self.e8_mode}:{self.e8_action}"

    @classmethod
    def parse(cls, text: str) -> "BlockSpec":
        fields = dict(part.split("=", 1) for part in text.split(";"))
        try:
            u_mode, u_act = fields["u23"].split(":", 1)
            e_mode, e_act = fields["e8"].split(":", 1)
            u1 = fields["u1"]
        except (KeyError, ValueError) as exc:
            raise InvalidInvolutionError(f"malformed block spec {text!r}") from exc
        u_b = None
        if "/" in u_act:
            u_act, u_b = u_act.split("/", 1)
        return cls(u1, u_mode, u_act, e_mode, e_act, u_b)


def _pair_block(mode: str, a: np.ndarray, b: np.ndarray | None = None) -> np.ndarray:
    n = a.shape[0]
    out = xl.zeros(2 * n, 2 * n)
    if mode == "diag":
        out[:n, :n] = a
        out[n:, n:] = a if b is None else b
    elif mode == "exchange":
        out[:n, n:] = a
        out[n:, :n] = a
    else:
        raise InvalidInvolutionError(f"unknown pair mode {mode!r}")
    return out


def block_sigma(spec: BlockSpec) -> IsometryInvolution:
    m = xl.zeros(22, 22)
    m[U1, U1] = u_action(spec.u1)
    ub = u_action(spec.u_action_b) if spec.u_action_b else None
    m[2:6, 2:6] = _pair_block(spec.u_mode, u_action(spec.u_action), ub)
    m[6:22, 6:22] = _pair_block(spec.e8_mode, e8_action(spec.e8_action))
    sigma = IsometryInvolution(k3_lattice(), m, spec.name)
    if not sigma.commutes_with(tau_reference()):
        raise InvalidInvolutionError(f"spec {spec.name} does not commute with the Enriques involution")
    return sigma


def block_sigma_family(specs) -> list:
    out = []
    for spec in specs:
        if isinstance(spec, str):
            spec = BlockSpec.parse(spec)
        out.append(block_sigma(spec))
    return out


E8_ACTION_NAMES = ("+1", "-1", "R1", "-R1", "R2", "-R2", "R3", "-R3", "R4", "-R4", "R4d", "-R4d",
                   "R5", "-R5", "R6", "-R6", "R7", "-R7", "R8", "-R8")


def hyperbolic_specs(e8_actions=E8_ACTION_NAMES) -> list:
    """All block specs whose sigma and tau*sigma have hyperbolic fixed lattices.

    That requires the U-pair action on the fixed lattice of tau to be -1 or
    -swap, and exactly one positive direction in the sigma-fixed part of U1
    plus the U-pair.
    """
    specs = []
    for u1 in ("+1", "swap", "-1", "-swap"):
        mode = "diag" if u1 in ("+1", "swap") else "exchange"
        for ua in ("-1", "-swap"):
            for e_mode in ("diag", "exchange"):
                for ea in e8_actions:
                    specs.append(BlockSpec(u1, mode, ua, e_mode, ea))
    return specs


DEFAULT_E8 = ("+1", "-1", "R1", "-R2", "R4", "-R4d", "R8")


def default_specs() -> list:
    """A moderate catalog: every U configuration against a spread of E8 actions."""
    return hyperbolic_specs(DEFAULT_E8)


REFERENCE_SPEC = BlockSpec("swap", "diag", "-1", "diag", "-1")
IDENTITY_SPEC = BlockSpec("+1", "diag", "+1", "diag", "+1")
MINUS_IDENTITY_SPEC = BlockSpec("-1", "diag", "-1", "diag", "-1")


def fixed_sublattice_involution(lattice: Lattice, vectors, name=None) -> IsometryInvolution:
    """+1 on the span of ``vectors``, -1 on its orthogonal complement.

    The matrix is -1 + 2P with P the orthogonal projection onto the span;
    it is an involution of the lattice only when that matrix is integral.
    """
    b = xl.int_matrix(vectors)
    g = lattice.gram
    p = b.T @ xl.rational_inverse(b @ g @ b.T) @ b @ g
    m = -xl.identity(lattice.rank) + 2 * p
    if not xl.is_integral(m):
        raise InvalidInvolutionError("reflection in this sublattice is not integral")
    return IsometryInvolution(lattice, xl.to_int(m), name)


def sigma_single_component() -> IsometryInvolution:
    """Fixes c1 + e2 - e3 and c1 + f2 - f3 (a copy of U(2)) and negates the rest.

    Together with the Enriques involution this gives one lifting of type
    (2,2,0) and the other of type (10,10,0): a real locus with one component.
    """
    v = [0] * 22
    w = [0] * 22
    v[0], v[2], v[4] = 1, 1, -1
    w[0], w[3], w[5] = 1, 1, -1
    return fixed_sublattice_involution(k3_lattice(), [v, w], "sigma")


NAMED_TRIPLES = {
    "reference": lambda: (tau_reference(), sigma_reference()),
    "single-component": lambda: (tau_reference(), sigma_single_component()),
}

NAMED_INVOLUTIONS = {
    "tau": tau_reference,
    "sigma": sigma_reference,
    "sigma-single-component": sigma_single_component,
}


def named_triple(name: str):
    """Named triple, or a block spec string such as 'u1=swap;u23=diag:-1;e8=diag:-1'."""
    if name in NAMED_TRIPLES:
        return NAMED_TRIPLES[name]()
    if "=" in name:
        return tau_reference(), block_sigma(BlockSpec.parse(name))
    raise KeyError(name)
