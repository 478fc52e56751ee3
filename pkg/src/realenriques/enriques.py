"""Analysis of a commuting pair of involutions (tau, sigma) on the K3 lattice.

tau plays the Enriques involution, sigma one lifting of a real structure;
tau*sigma is the other lifting and theta is the action of sigma on the
tau-fixed lattice. Sublattice shorthand used throughout:

    fix_both   vectors fixed by tau and sigma
    tfix_sneg  fixed by tau, negated by sigma
    tneg_sfix  negated by tau, fixed by sigma
    neg_both   negated by both

The discriminant group of the sigma-fixed lattice is the common home of the
glue subgroups ``h_plus`` and ``h_minus`` (their intersection is
``gamma_pm``). Every quantity the closed formulas produce is also computed
directly, and each comparison is recorded as a ``Check``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exact_linalg as xl
from .errors import InconsistencyError, InvalidTripleError
from .finite_quadratic import (
    FiniteQuadraticModule,
    SubgroupF2,
    characteristic_element,
    is_characteristic,
    is_isotropic,
    mod2q,
    orthogonal_complement_in,
    subgroup_intersection,
    subgroup_sum,
)
from .involutions import (
    FixedSetTopology,
    InvolutionInvariants,
    IsometryInvolution,
    characteristic_class_v,
    common_eigenlattice,
    fixed_set_topology,
    involution_invariants,
)
from .lattice import Lattice, Sublattice, orthogonal_complement, rescale

THETA_LIST = (
    (0, 0, 0), (1, 1, 1), (2, 2, 1), (3, 3, 1), (4, 2, 0), (4, 4, 1),
    (5, 3, 1), (5, 5, 1), (6, 2, 1), (6, 4, 1), (7, 1, 1), (7, 3, 1),
    (8, 0, 0), (8, 2, 0), (8, 2, 1), (9, 1, 1),
)
ENRIQUES_TAU = (10, 10, 0)


def in_theta_list(triple) -> bool:
    return tuple(triple) in THETA_LIST


@dataclass(frozen=True)
class Check:
    name: str
    lhs: object
    rhs: object
    ok: bool
    advisory: bool = False  # recorded, but never decides consistency

    def as_dict(self) -> dict:
        out = {"name": self.name, "lhs": _plain(self.lhs), "rhs": _plain(self.rhs), "ok": self.ok}
        if self.advisory:
            out["advisory"] = True
        return out


def _plain(x):
    if isinstance(x, Fraction):
        return x if x.denominator != 1 else x.numerator
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    return x


def check(name, lhs, rhs=True) -> Check:
    return Check(name, lhs, rhs, lhs == rhs)


def _enforce(checks, strict):
    if strict:
        for c in checks:
            if not c.ok and not c.advisory:
                raise InconsistencyError(c.name, f"{c.lhs!r} != {c.rhs!r}")
    return checks


# ---------------------------------------------------------------------------
# the triple


@dataclass(frozen=True, eq=False)
class EnriquesActionTriple:
    lattice: Lattice
    tau: IsometryInvolution
    sigma: IsometryInvolution
    tau_sigma: IsometryInvolution
    name: str | None = None

    def _part(self, st, ss) -> Sublattice:
        return common_eigenlattice([self.tau, self.sigma], [st, ss])

    @cached_property
    def tau_fixed(self) -> Sublattice:
        return self.tau.eigenlattices[0]

    @cached_property
    def tau_neg(self) -> Sublattice:
        return self.tau.eigenlattices[1]

    @cached_property
    def sigma_fixed(self) -> Sublattice:
        return self.sigma.eigenlattices[0]

    @cached_property
    def sigma_neg(self) -> Sublattice:
        return self.sigma.eigenlattices[1]

    @cached_property
    def fix_both(self) -> Sublattice:
        return self._part(1, 1)

    @cached_property
    def tfix_sneg(self) -> Sublattice:
        return self._part(1, -1)

    @cached_property
    def tneg_sfix(self) -> Sublattice:
        return self._part(-1, 1)

    @cached_property
    def neg_both(self) -> Sublattice:
        return self._part(-1, -1)

    @cached_property
    def sigma_invariants(self) -> InvolutionInvariants:
        return involution_invariants(self.sigma)

    @cached_property
    def tau_sigma_invariants(self) -> InvolutionInvariants:
        return involution_invariants(self.tau_sigma)

    @cached_property
    def theta(self) -> IsometryInvolution:
        """sigma on the tau-fixed lattice, rescaled by 1/2."""
        on_fixed = self.sigma.restrict(self.tau_fixed)
        return IsometryInvolution(rescale(on_fixed.lattice, Fraction(1, 2)), on_fixed.matrix, "theta")


def validate_triple(lattice: Lattice, tau: IsometryInvolution, sigma: IsometryInvolution, name=None):
    if not (lattice.is_even and lattice.is_unimodular and lattice.signature == (3, 19, 0)):
        raise InvalidTripleError("lattice must be even unimodular of signature (3,19)")
    if tau.lattice != lattice or sigma.lattice != lattice:
        raise InvalidTripleError("involutions act on a different lattice")
    if not tau.commutes_with(sigma):
        raise InvalidTripleError("involutions do not commute")
    inv_tau = involution_invariants(tau)
    if inv_tau.as_tuple() != ENRIQUES_TAU:
        raise InvalidTripleError(f"tau has invariants {inv_tau.as_tuple()}, expected {ENRIQUES_TAU}")
    half = rescale(tau.eigenlattices[0].lattice, Fraction(1, 2))
    if not (half.is_even and half.is_unimodular):
        raise InvalidTripleError("the tau-fixed lattice rescaled by 1/2 is not even unimodular")
    tau_sigma = tau.compose(sigma)
    for label, phi in (("sigma", sigma), ("tau*sigma", tau_sigma)):
        fixed = phi.eigenlattices[0]
        if fixed.rank == 0 or not fixed.lattice.is_hyperbolic():
            raise InvalidTripleError(f"the fixed lattice of {label} is not hyperbolic")
    return EnriquesActionTriple(lattice, tau, sigma, tau_sigma, name)


def theta_invariants(t: EnriquesActionTriple, strict: bool = True) -> InvolutionInvariants:
    inv = involution_invariants(t.theta)
    if strict and not in_theta_list(inv.as_tuple()):
        raise InconsistencyError("theta list membership", f"{inv.as_tuple()} is not an allowed triple")
    return inv


# ---------------------------------------------------------------------------
# glue data


@dataclass(frozen=True, eq=False)
class GlueData:
    q_sigma: FiniteQuadraticModule
    h_plus: SubgroupF2
    h_minus: SubgroupF2
    gamma_pm: SubgroupF2
    h_plus_perp_cap_h_minus: SubgroupF2
    fix_both_module: FiniteQuadraticModule
    tfix_sneg_module: FiniteQuadraticModule
    # graph of H+ in (A_q layer | A_{fix_both} layer); likewise for H-
    plus_graph: np.ndarray
    minus_graph: np.ndarray
    gamma_plus: SubgroupF2  # kernel of b on the layer of A_{fix_both}
    gamma_minus: SubgroupF2
    checks: tuple = field(default=())

    @property
    def dim_h_plus(self) -> int:
        return self.h_plus.dim

    @property
    def dim_h_minus(self) -> int:
        return self.h_minus.dim

    @property
    def dim_gamma_pm(self) -> int:
        return self.gamma_pm.dim

    @property
    def c(self) -> int:
        return self.h_plus_perp_cap_h_minus.dim

    def to_q(self, graph: np.ndarray, coords) -> np.ndarray | None:
        """Image in A_q of an element given in the right-hand factor of a graph."""
        k = self.q_sigma.layer_dim
        left, right = graph[:, :k], graph[:, k:]
        sol = xl.solve_mod2(right.T, coords) if right.shape[0] else None
        if sol is None:
            return None if xl.mod2(coords).any() else np.zeros(k, dtype=np.uint8)
        return (sol.astype(np.int64) @ left.astype(np.int64)) % 2

    def from_q(self, graph: np.ndarray, coords) -> np.ndarray | None:
        k = self.q_sigma.layer_dim
        left, right = graph[:, :k], graph[:, k:]
        if left.shape[0] == 0:
            return None if xl.mod2(coords).any() else np.zeros(right.shape[1], dtype=np.uint8)
        sol = xl.solve_mod2(left.T, coords)
        if sol is None:
            return None
        return (sol.astype(np.int64) @ right.astype(np.int64)) % 2


def _layer_rows(module: FiniteQuadraticModule, sub: Sublattice, vectors, label: str) -> np.ndarray:
    rows = []
    for x in vectors:
        t = sub.klass(x)
        try:
            rows.append(module.layer_coords(t))
        except ValueError as exc:
            raise InconsistencyError(f"{label} lies in the 2-torsion layer", str(exc)) from exc
    return np.array(rows, dtype=np.uint8).reshape(len(rows), module.layer_dim)


def _is_graph(left, right) -> bool:
    both = np.concatenate([left, right], axis=1)
    r = xl.rank_mod2(both)
    return r == xl.rank_mod2(left) == xl.rank_mod2(right)


def _glue_map(t: EnriquesActionTriple) -> np.ndarray:
    """F2 matrix of the identification A_{sigma_neg} -> A_{sigma_fixed} (acts on rows)."""
    ap, am = t.sigma_fixed.discriminant, t.sigma_neg.discriminant
    basis = xl.identity(t.lattice.rank)
    p = _layer_rows(ap, t.sigma_fixed, basis, "sigma-fixed glue")
    m = _layer_rows(am, t.sigma_neg, basis, "sigma-negated glue")
    phi = np.zeros((am.layer_dim, ap.layer_dim), dtype=np.uint8)
    for j in range(ap.layer_dim):
        col = xl.solve_mod2(m, p[:, j])
        if col is None:
            raise InconsistencyError("glue graph of sigma", "not a function")
        phi[:, j] = col
    return phi


def glue_data(t: EnriquesActionTriple, strict: bool = True) -> GlueData:
    aq = t.sigma_fixed.discriminant
    checks = [check("A_q is 2-elementary", aq.is_two_elementary())]
    a_pp, a_pm = t.fix_both.discriminant, t.tfix_sneg.discriminant

    plus_src = orthogonal_complement(t.tneg_sfix).basis
    q_plus = _layer_rows(aq, t.sigma_fixed, plus_src, "H+ in A_q")
    pp_plus = _layer_rows(a_pp, t.fix_both, plus_src, "H+ in the fixed-by-both layer")
    minus_src = orthogonal_complement(t.neg_both).basis
    q_minus = _layer_rows(aq, t.sigma_fixed, minus_src, "H- in A_q")
    pm_minus = _layer_rows(a_pm, t.tfix_sneg, minus_src, "H- in the tau-fixed sigma-negated layer")

    h_plus, h_minus = SubgroupF2(aq, q_plus), SubgroupF2(aq, q_minus)
    gamma_pm = subgroup_intersection(h_plus, h_minus)
    perp_cap = subgroup_intersection(orthogonal_complement_in(h_plus), h_minus)
    checks += [
        check("H+ is a graph", _is_graph(q_plus, pp_plus)),
        check("H- is a graph", _is_graph(q_minus, pm_minus)),
    ]

    # second route to H+: through the sigma-negated discriminant and the glue of L
    phi = _glue_map(t)
    am = t.sigma_neg.discriminant
    via_neg = _layer_rows(am, t.sigma_neg, plus_src, "H+ in the sigma-negated layer")
    routed = (via_neg.astype(np.int64) @ phi.astype(np.int64)) % 2
    checks.append(check("H+ via the sigma glue graph", SubgroupF2(aq, routed) == h_plus))

    # the quadratic forms agree along the graphs
    for qv, pv in zip(q_plus, pp_plus):
        checks.append(check("q on H+ matches the fixed-by-both form",
                            aq.q(aq.layer_element(qv)), a_pp.q(a_pp.layer_element(pv))))
    for qv, pv in zip(q_minus, pm_minus):
        checks.append(check("q on H- matches minus the tau-fixed sigma-negated form",
                            aq.q(aq.layer_element(qv)), mod2q(-a_pm.q(a_pm.layer_element(pv)))))

    plus_graph = np.concatenate([q_plus, pp_plus], axis=1)
    minus_graph = np.concatenate([q_minus, pm_minus], axis=1)
    gd = GlueData(aq, h_plus, h_minus, gamma_pm, perp_cap, a_pp, a_pm, plus_graph, minus_graph,
                  a_pp.layer_kernel(), a_pm.layer_kernel())
    checks += _gamma_checks(t, gd)
    object.__setattr__(gd, "checks", tuple(_enforce(checks, strict)))
    return gd


def _gamma_checks(t: EnriquesActionTriple, gd: GlueData) -> list:
    theta = involution_invariants(t.theta)
    a_theta = theta.a
    out = []
    # the glue of the tau-fixed lattice over its two sigma-eigenlattices
    src = t.tau_fixed.basis
    p1 = _layer_rows(gd.fix_both_module, t.fix_both, src, "first projection of the tau-fixed glue")
    p2 = _layer_rows(gd.tfix_sneg_module, t.tfix_sneg, src, "second projection of the tau-fixed glue")
    out.append(check("tau-fixed glue projections are injective", _is_graph(p1, p2)))
    for label, module, proj, kern in (
        ("plus", gd.fix_both_module, p1, gd.gamma_plus),
        ("minus", gd.tfix_sneg_module, p2, gd.gamma_minus),
    ):
        image = SubgroupF2(module, proj)
        out += [
            check(f"projection image equals layer kernel ({label})", image == kern),
            check(f"layer kernel equals 2A ({label})", module.double_subgroup() == kern),
            check(f"layer kernel has dimension a(theta) ({label})", kern.dim, a_theta),
            check(f"b(x,x) = 0 on the layer ({label})", not module.layer_diagonal().any()),
            check(f"delta(theta) = 0 iff q vanishes on the layer kernel ({label})",
                  is_isotropic(kern, "quadratic"), theta.delta == 0),
        ]
    # the kernels land on H+ cap H- inside A_q
    for label, graph, kern in (("plus", gd.plus_graph, gd.gamma_plus), ("minus", gd.minus_graph, gd.gamma_minus)):
        imgs = [gd.to_q(graph, v) for v in kern.basis]
        ok = all(i is not None for i in imgs)
        out.append(check(f"layer kernel lies in H{'+' if label == 'plus' else '-'}", ok))
        if ok:
            out.append(check(f"image of the layer kernel is H+ cap H- ({label})",
                             SubgroupF2(gd.q_sigma, xl.rows_mod2(imgs, gd.q_sigma.layer_dim)) == gd.gamma_pm))
    out += [
        check("dim (H+ cap H-) = a(theta)", gd.dim_gamma_pm, a_theta),
        check("H+ cap H- is isotropic", is_isotropic(gd.gamma_pm, "bilinear")),
        check("H+ cap H- is orthogonal to H+ + H-",
              subgroup_sum(gd.h_plus, gd.h_minus).is_subgroup_of(orthogonal_complement_in(gd.gamma_pm))),
        check("dim H+ <= r(theta)", gd.dim_h_plus <= theta.r),
        check("dim H- <= 10 - r(theta)", gd.dim_h_minus <= 10 - theta.r),
        check("a(theta) <= dim(H+ cap H-) <= c <= dim H-",
              a_theta <= gd.dim_gamma_pm <= gd.c <= gd.dim_h_minus),
        check("rank of the fixed-by-both lattice is r(theta)", t.fix_both.rank, theta.r),
        check("rank of the tau-fixed sigma-negated lattice is 10 - r(theta)", t.tfix_sneg.rank, 10 - theta.r),
    ]
    return out


# ---------------------------------------------------------------------------
# derived invariants


@dataclass(frozen=True)
class DerivedInvariants:
    alpha: int
    delta_plus: int
    delta_minus: int
    gamma: int
    v_q_sigma: tuple
    checks: tuple = ()

    @property
    def delta_pm(self) -> Fraction:
        return Fraction(self.delta_plus + self.delta_minus, 2)


def _delta_side(gd: GlueData, graph, module, sub: SubgroupF2, v) -> int:
    if not sub.contains(v):
        return 1
    pre = gd.from_q(graph, v)
    if pre is None:
        return 1
    return 0 if is_characteristic(module, pre) else 1


def derived_invariants(t: EnriquesActionTriple, gd: GlueData | None = None, strict: bool = True) -> DerivedInvariants:
    gd = gd or glue_data(t, strict)
    inv = t.sigma_invariants
    aq = gd.q_sigma
    v = characteristic_element(aq)
    alpha = inv.a - gd.dim_h_plus - gd.dim_h_minus
    d_plus = _delta_side(gd, gd.plus_graph, gd.fix_both_module, gd.h_plus, v)
    d_minus = _delta_side(gd, gd.minus_graph, gd.tfix_sneg_module, gd.h_minus, v)
    gamma = gd.dim_h_minus - gd.c
    v_lattice = characteristic_class_v(t.sigma)
    sub_rows = np.concatenate([t.fix_both.basis, t.tfix_sneg.basis], axis=0)
    v_in_sum = xl.in_span_mod2(np.concatenate([xl.mod2(sub_rows), 2 * np.eye(22, dtype=np.uint8) % 2]), v_lattice) \
        if sub_rows.shape[0] else not v_lattice.any()
    checks = [
        check("alpha in {0,1}", alpha in (0, 1)),
        check("delta from H+ equals delta from H-", d_plus, d_minus),
        check("delta vanishes iff v lies in H+ cap H-", d_plus == 0, gd.gamma_pm.contains(v)),
        check("v vanishes iff delta(sigma) = 0", not v.any(), inv.delta == 0),
        check("delta(sigma) = 0 forces both deltas to vanish", inv.delta == 0 and d_plus + d_minus > 0, False),
        check("lattice class v(sigma) in tau-fixed part mod 2L iff delta vanishes", bool(v_in_sum), d_plus == 0),
        check("0 <= gamma <= 2", 0 <= gamma <= 2),
        check("lower bound a(sigma) >= dim H+ + dim H-", inv.a >= gd.dim_h_plus + gd.dim_h_minus),
    ]
    theta = involution_invariants(t.theta)
    checks += [
        check("r(sigma) - a(sigma) >= 2 r(theta) - 2 dim H+",
              inv.r - inv.a >= 2 * theta.r - 2 * gd.dim_h_plus),
        check("r(sigma) + a(sigma) <= 2 dim H- + 2 r(theta) + 2",
              inv.r + inv.a <= 2 * gd.dim_h_minus + 2 * theta.r + 2),
    ]
    return DerivedInvariants(alpha, d_plus, d_minus, gamma, tuple(int(x) for x in v),
                             tuple(_enforce(checks, strict)))


# ---------------------------------------------------------------------------
# identities between the two liftings


def check_lifting_identities(t: EnriquesActionTriple, gd: GlueData | None = None, strict: bool = True) -> list:
    """Rank, discriminant and parity identities relating sigma and tau*sigma."""
    gd = gd or glue_data(t, strict)
    s, ts = t.sigma_invariants, t.tau_sigma_invariants
    th = involution_invariants(t.theta)
    checks = [
        Check("r(sigma) + r(tau sigma) = 12 + 2 r(theta)", s.r + ts.r, 12 + 2 * th.r, s.r + ts.r == 12 + 2 * th.r),
        Check("a(tau sigma) - a(sigma) = 10 + 2 a(theta) - 2 dim H+ - 2 c",
              ts.a - s.a, 10 + 2 * th.a - 2 * gd.dim_h_plus - 2 * gd.c,
              ts.a - s.a == 10 + 2 * th.a - 2 * gd.dim_h_plus - 2 * gd.c),
        # the mod 2 sum only follows when one lifting has delta = 0; with
        # delta = 1 on both liftings either value of delta(theta) occurs
        Check("delta(sigma) + delta(tau sigma) = delta(theta) mod 2",
              (s.delta + ts.delta) % 2, th.delta, (s.delta + ts.delta) % 2 == th.delta, advisory=True),
        Check("delta parity when some lifting has delta = 0",
              (s.delta + ts.delta) % 2 if min(s.delta, ts.delta) == 0 else th.delta, th.delta,
              min(s.delta, ts.delta) == 1 or (s.delta + ts.delta) % 2 == th.delta),
    ]
    return _enforce(checks, strict)


@dataclass(frozen=True)
class SCounts:
    s_sigma: int
    s_tau_sigma: int
    total: int
    positive: int
    checks: tuple = ()


def s_counts(t: EnriquesActionTriple, gd: GlueData | None = None, strict: bool = True) -> SCounts:
    gd = gd or glue_data(t, strict)
    s, ts = t.sigma_invariants, t.tau_sigma_invariants
    th = involution_invariants(t.theta)
    ss, sts = fixed_set_topology(s).components, fixed_set_topology(ts).components
    pos = int(ss > 0) + int(sts > 0)
    total = ss + sts
    via_ranks = pos + (s.r + ts.r) // 2 - (s.a + ts.a) // 2
    via_glue = pos + 1 + th.r - th.a - s.a + gd.dim_h_plus + gd.c
    checks = [
        Check("component sum from ranks and discriminants", total, via_ranks, total == via_ranks),
        Check("component sum from theta and glue", total, via_glue, total == via_glue),
    ]
    return SCounts(ss, sts, total, pos, tuple(_enforce(checks, strict)))


# ---------------------------------------------------------------------------
# mod 2 computations


def _restricted_mod2(phi: IsometryInvolution, sub: Sublattice) -> np.ndarray:
    return xl.mod2(phi.restrict(sub).matrix)


def _fixed_dim_mod2(m: np.ndarray) -> int:
    n = m.shape[0]
    return n - xl.rank_mod2((m.astype(np.int64) + np.eye(n, dtype=np.int64)) % 2)


def _image_mod2(outer: Sublattice, inner_rows) -> np.ndarray:
    """F2 coordinates in outer/2outer of the given ambient vectors of outer."""
    if len(inner_rows) == 0:
        return np.zeros((0, outer.rank), dtype=np.uint8)
    coords = xl.integer_coordinates(outer.basis, xl.int_matrix(inner_rows))
    return xl.row_space_mod2(coords)


@dataclass(frozen=True)
class Mod2FixedDims:
    tau_neg_direct: int
    tau_neg_formula: int
    tau_fixed_direct: int
    tau_fixed_formula: int
    checks: tuple = ()


def mod2_fixed_dims(t, gd: GlueData | None = None, strict: bool = True) -> Mod2FixedDims:
    gd = gd or glue_data(t, strict)
    th = involution_invariants(t.theta)
    s = t.sigma_invariants
    neg_m = _restricted_mod2(t.sigma, t.tau_neg)
    fix_m = _restricted_mod2(t.sigma, t.tau_fixed)
    d_neg, d_fix = _fixed_dim_mod2(neg_m), _fixed_dim_mod2(fix_m)
    f_neg = 12 - th.a - s.a + gd.dim_h_plus + gd.dim_h_minus
    f_fix = 10 - th.a
    # invariants of (L/2L) under both involutions, in all 22 coordinates
    one = np.eye(22, dtype=np.int64)
    both = np.concatenate([(xl.mod2(t.tau.matrix) + one) % 2, (xl.mod2(t.sigma.matrix) + one) % 2])
    d_full = 22 - xl.rank_mod2(both)
    img_neg = _image_mod2(t.tau_neg, list(t.tneg_sfix.basis) + list(t.neg_both.basis))
    img_fix = _image_mod2(t.tau_fixed, list(t.fix_both.basis) + list(t.tfix_sneg.basis))
    fixed_neg_space = xl.nullspace_mod2((neg_m.astype(np.int64) + np.eye(12, dtype=np.int64)) % 2)
    fixed_fix_space = xl.nullspace_mod2((fix_m.astype(np.int64) + np.eye(10, dtype=np.int64)) % 2)
    checks = [
        Check("sigma-fixed dimension on the tau-negated lattice mod 2", d_neg, f_neg, d_neg == f_neg),
        Check("sigma-fixed dimension on the tau-fixed lattice mod 2", d_fix, f_fix, d_fix == f_fix),
        Check("joint fixed space of L/2L", d_full, d_neg, d_full == d_neg),
        check("fixed space on the tau-negated part is spanned by its eigenlattices",
              xl.same_row_space_mod2(img_neg, fixed_neg_space, 12)),
        check("fixed space on the tau-fixed part is spanned by its eigenlattices",
              xl.same_row_space_mod2(img_fix, fixed_fix_space, 10)),
    ]
    return Mod2FixedDims(d_neg, f_neg, d_fix, f_fix, tuple(_enforce(checks, strict)))


@dataclass(frozen=True)
class FClass:
    """The distinguished class f in (tau-negated lattice mod 2) / (kernel of the form)."""

    coords: tuple  # F2 coordinates in the tau-negated basis
    vector: tuple  # ambient representative with 0/1 coordinates
    value: int
    other_values: tuple
    sigma_invariant: bool
    kernel_dim: int
    checks: tuple = ()


def _tau_neg_data(t: EnriquesActionTriple):
    b = t.tau_neg.basis
    gm = t.tau_neg.gram
    kernel = xl.nullspace_mod2(xl.mod2(gm))
    return b, gm, kernel


def _half_square_mod2(gm, coords) -> int:
    x = np.array([int(c) for c in coords], dtype=object)
    sq = x @ gm @ x
    return (sq // 2) % 2


def f_subgroup(t: EnriquesActionTriple, strict: bool = True) -> FClass:
    b, gm, kernel = _tau_neg_data(t)
    n = b.shape[0]
    # image of the tau-fixed lattice in the tau-negated lattice mod 2
    image = []
    for x in t.tau_fixed.basis:
        sol = xl.solve_mod2(b.T, [int(c) for c in x])
        if sol is None:
            raise InconsistencyError("tau-fixed lattice lies in tau-negated lattice + 2L")
        image.append(sol)
    image = np.array(image, dtype=np.uint8)
    checks = [
        Check("kernel of the form mod 2 has dimension 10", kernel.shape[0], 10, kernel.shape[0] == 10),
        check("kernel equals the image of the tau-fixed lattice", xl.same_row_space_mod2(kernel, image, n)),
        check("x^2/2 vanishes on the kernel", all(_half_square_mod2(gm, k) == 0 for k in kernel)),
    ]
    complement = []
    span = kernel.copy()
    for i in range(n):
        e = np.zeros(n, dtype=np.uint8)
        e[i] = 1
        if not xl.in_span_mod2(span, e):
            complement.append(e)
            span = np.concatenate([span, e.reshape(1, -1)])
        if len(complement) == 2:
            break
    g1, g2 = complement
    classes = [g1, g2, g1 ^ g2]
    values = [_half_square_mod2(gm, c) for c in classes]
    ones = [c for c, v in zip(classes, values) if v == 1]
    checks.append(Check("exactly one nonzero class with x^2/2 = 1", len(ones), 1, len(ones) == 1))
    _enforce(checks, strict)
    f = ones[0] if ones else classes[0]
    others = tuple(v for c, v in zip(classes, values) if c is not f)
    s_m = _restricted_mod2(t.sigma, t.tau_neg)
    moved = (s_m.astype(np.int64) @ f.astype(np.int64) + f) % 2
    invariant = xl.in_span_mod2(kernel, moved)
    checks.append(check("f is sigma-invariant modulo the kernel", invariant))
    vector = (f.astype(np.int64) @ np.array(b, dtype=np.int64))
    return FClass(tuple(int(x) for x in f), tuple(int(x) for x in vector), 1 if ones else 0, others,
                  bool(invariant), kernel.shape[0], tuple(_enforce(checks, strict)))


def f_on_fixed_space(t: EnriquesActionTriple, fc: FClass | None = None) -> bool:
    """Does f pair to zero (mod 2) with the sigma-fixed part of the tau-negated lattice mod 2?"""
    fc = fc or f_subgroup(t)
    _, gm, _ = _tau_neg_data(t)
    s_m = _restricted_mod2(t.sigma, t.tau_neg)
    fixed = xl.nullspace_mod2((s_m.astype(np.int64) + np.eye(s_m.shape[0], dtype=np.int64)) % 2)
    f = np.array(fc.coords, dtype=object)
    return all((f @ gm @ np.array([int(c) for c in x], dtype=object)) % 2 == 0 for x in fixed)


def predicted_f_vanishes(alpha: int, delta_pm) -> bool:
    """Expected vanishing of f on the sigma-fixed space, from alpha and delta."""
    if alpha == 0:
        return False
    return delta_pm > 0


@dataclass(frozen=True)
class BetaCase:
    case: str  # "A": alpha = 1 and delta = 0, else "B"
    beta_choices: tuple
    f_vanishes_direct: bool
    f_vanishes_predicted: bool
    invariant_dim_direct: int
    invariant_dim_expected: int
    checks: tuple = ()


def beta_case(t: EnriquesActionTriple, gd=None, di=None, sc=None, strict: bool = True) -> BetaCase:
    gd = gd or glue_data(t, strict)
    di = di or derived_invariants(t, gd, strict)
    sc = sc or s_counts(t, gd, strict)
    th = involution_invariants(t.theta)
    case = "A" if di.alpha == 1 and di.delta_pm == 0 else "B"
    if case == "A":
        choices = (0,)
    elif sc.s_sigma > 0 and sc.s_tau_sigma > 0:
        choices = (1,)
    else:
        choices = (0, 1)
    fc = f_subgroup(t, strict)
    direct = f_on_fixed_space(t, fc)
    predicted = predicted_f_vanishes(di.alpha, di.delta_pm)
    # dim of the sigma-invariants of L/2L modulo F, F = image(tau-fixed) + <f>
    lt = xl.mod2(t.tau_fixed.basis)
    f_space = xl.row_space_mod2(np.concatenate([lt, xl.mod2(np.array(fc.vector)).reshape(1, -1)]))
    moved = (xl.mod2(t.sigma.matrix).astype(np.int64) + np.eye(22, dtype=np.int64)) % 2
    rank_quot = xl.rank_mod2(np.concatenate([moved.T, f_space])) - f_space.shape[0]
    inv_dim = (22 - rank_quot) - f_space.shape[0]
    expected = 10 - th.a if case == "A" else 11 - th.a
    s = t.sigma_invariants
    via_fixed = 11 - th.a - s.a + gd.dim_h_plus + gd.dim_h_minus + int(direct)
    checks = [
        Check("F has dimension 11", f_space.shape[0], 11, f_space.shape[0] == 11),
        Check("f on the sigma-fixed space matches the (alpha, delta) prediction",
              direct, predicted, direct == predicted),
        Check("dimension of the sigma-invariants of (L/2L)/F", inv_dim, expected, inv_dim == expected),
        Check("same dimension from the fixed-space count", inv_dim, via_fixed, inv_dim == via_fixed),
    ]
    return BetaCase(case, choices, direct, predicted, inv_dim, expected, tuple(_enforce(checks, strict)))


# ---------------------------------------------------------------------------
# b(Y), Brauer dimension, component splits


def b_by_cases(r_theta, a_theta, case, beta) -> int:
    if case == "A":
        if beta != 0:
            raise ValueError("beta must be 0 when alpha = 1 and delta = 0")
        return r_theta - a_theta
    return r_theta - a_theta + 1 + beta


def b_unified(r_theta, a_theta, alpha, delta_pm, beta) -> int:
    v = r_theta - a_theta + max(Fraction(1 - alpha), Fraction(delta_pm)) + beta
    return int(v)


def b_from_components(s_sigma, s_tau_sigma, alpha, delta_pm, gamma, beta) -> int:
    pos = int(s_sigma > 0) + int(s_tau_sigma > 0)
    v = s_sigma + s_tau_sigma - pos + min(Fraction(alpha), Fraction(delta_pm)) + gamma + beta
    return int(v)


@dataclass(frozen=True)
class BValue:
    beta: int
    b: int
    checks: tuple = ()


def b_invariant(t, beta, gd=None, di=None, sc=None, bc=None, strict: bool = True) -> BValue:
    gd = gd or glue_data(t, strict)
    di = di or derived_invariants(t, gd, strict)
    sc = sc or s_counts(t, gd, strict)
    bc = bc or beta_case(t, gd, di, sc, strict)
    if beta not in bc.beta_choices and beta not in (0, 1):
        raise ValueError("beta must be 0 or 1")
    th = involution_invariants(t.theta)
    b1 = b_by_cases(th.r, th.a, bc.case, beta) if not (bc.case == "A" and beta) else None
    b2 = b_unified(th.r, th.a, di.alpha, di.delta_pm, beta)
    b3 = b_from_components(sc.s_sigma, sc.s_tau_sigma, di.alpha, di.delta_pm, di.gamma, beta)
    checks = [
        Check("b by cases equals the unified formula", b1, b2, b1 == b2),
        Check("b from the component formula equals the unified formula", b3, b2, b3 == b2),
        check("b >= 0", b2 >= 0),
    ]
    if bc.case == "B":
        checks.append(check("b >= 1 + beta when alpha = 0 or delta > 0", b2 >= 1 + beta))
    return BValue(beta, b2, tuple(_enforce(checks, strict)))


def s_nor_prediction(alpha, delta_pm, gamma, s_sigma, s_tau_sigma):
    if s_sigma == 0 or s_tau_sigma == 0:
        return None
    if alpha == 0:
        return 1 + gamma
    if delta_pm == 0:
        return gamma
    return 2 + gamma


def s_nor_predicted(t, gd=None, di=None, sc=None):
    gd = gd or glue_data(t)
    di = di or derived_invariants(t, gd)
    sc = sc or s_counts(t, gd)
    return s_nor_prediction(di.alpha, di.delta_pm, di.gamma, sc.s_sigma, sc.s_tau_sigma)


def component_splits(s_sigma: int, s_tau_sigma: int) -> list:
    """(s_nor, s_or) pairs: each lifting contributes n + 2 o components upstairs."""
    out = set()
    for o1 in range(s_sigma // 2 + 1):
        for o2 in range(s_tau_sigma // 2 + 1):
            n1, n2 = s_sigma - 2 * o1, s_tau_sigma - 2 * o2
            out.add((n1 + n2, o1 + o2))
    return sorted(out)


def admissible_splits(b, s_sigma, s_tau_sigma, predicted_s_nor) -> list:
    out = []
    both = s_sigma > 0 and s_tau_sigma > 0
    for s_nor, s_or in component_splits(s_sigma, s_tau_sigma):
        s = s_nor + s_or
        if b < 2 * s - 2:
            continue
        if both and (s_nor != predicted_s_nor or b != 2 * s - 2):
            continue
        out.append((s_nor, s_or, s))
    return out


def epsilon_choices_for(b, s, epsilon_choices=(0, 1)) -> tuple:
    return (1,) if b == 2 * s - 2 else tuple(epsilon_choices)


@dataclass(frozen=True)
class BrauerEstimate:
    b: int
    beta: int
    s_sigma: int
    s_tau_sigma: int
    empty_real_locus: bool
    splits: tuple  # (s_nor, s_or, s, epsilon choices, Brauer dimensions)
    checks: tuple = ()

    @property
    def br_dims(self) -> tuple:
        return tuple(sorted({d for sp in self.splits for d in sp[4]}))


def brauer_estimate(t, beta, epsilon_choices=(0, 1), gd=None, di=None, sc=None, bc=None, strict=True) -> BrauerEstimate:
    gd = gd or glue_data(t, strict)
    di = di or derived_invariants(t, gd, strict)
    sc = sc or s_counts(t, gd, strict)
    bc = bc or beta_case(t, gd, di, sc, strict)
    bv = b_invariant(t, beta, gd, di, sc, bc, strict)
    if sc.total == 0:
        return BrauerEstimate(bv.b, beta, 0, 0, True, (), ())
    pred = s_nor_prediction(di.alpha, di.delta_pm, di.gamma, sc.s_sigma, sc.s_tau_sigma)
    splits = []
    checks = []
    for s_nor, s_or, s in admissible_splits(bv.b, sc.s_sigma, sc.s_tau_sigma, pred):
        eps = epsilon_choices_for(bv.b, s, epsilon_choices)
        dims = tuple(bv.b + e for e in eps)
        splits.append((s_nor, s_or, s, eps, dims))
        checks += [
            check("s_nor + 2 s_or = s(sigma) + s(tau sigma)", s_nor + 2 * s_or, sc.total),
            check("b >= 2s - 2", bv.b >= 2 * s - 2),
            check("Brauer dimension >= s", all(d >= s for d in dims)),
            check("Brauer dimension >= 2s - 1", all(d >= 2 * s - 1 for d in dims)),
        ]
    return BrauerEstimate(bv.b, beta, sc.s_sigma, sc.s_tau_sigma, False, tuple(splits), tuple(_enforce(checks, strict)))


def connected_nonorientable_check(t, beta, gd=None, di=None, sc=None, bc=None, strict=True) -> list:
    """b = 0 exactly when the real locus is one non-orientable piece and r(theta) = a(theta)."""
    gd = gd or glue_data(t, strict)
    di = di or derived_invariants(t, gd, strict)
    sc = sc or s_counts(t, gd, strict)
    bc = bc or beta_case(t, gd, di, sc, strict)
    if sc.total == 0:
        return []
    th = involution_invariants(t.theta)
    b = b_invariant(t, beta, gd, di, sc, bc, strict).b
    lhs, rhs = b == 0, sc.total == 1 and th.r == th.a
    checks = [Check("b = 0 iff one non-orientable component and r(theta) = a(theta)", lhs, rhs, lhs == rhs)]
    if lhs:
        pairing = (gd.h_plus.basis.astype(np.int64) @ gd.q_sigma.layer_form.astype(np.int64)
                   @ gd.h_minus.basis.T.astype(np.int64)) % 2
        checks += [
            check("b = 0 forces alpha = 1", di.alpha, 1),
            check("b = 0 forces H+ orthogonal to H-", not pairing.any()),
            check("b = 0 forces one lifting without real points", sc.s_sigma * sc.s_tau_sigma, 0),
        ]
    return _enforce(checks, strict)


# ---------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class AnalysisReport:
    name: str | None
    sigma: tuple
    tau_sigma: tuple
    theta: tuple
    theta_in_list: bool
    topology_sigma: FixedSetTopology
    topology_tau_sigma: FixedSetTopology
    h_plus: int
    h_minus: int
    gamma_pm: int
    c: int
    gamma: int
    alpha: int
    delta_plus: int
    delta_minus: int
    v_q_sigma: tuple
    s_sigma: int
    s_tau_sigma: int
    s_total: int
    case: str
    beta_choices: tuple
    f_class: FClass
    mod2: Mod2FixedDims
    b_values: dict
    estimates: dict
    s_nor_predicted: int | None
    checks: tuple

    @property
    def consistent(self) -> bool:
        return self.theta_in_list and all(c.ok or c.advisory for c in self.checks)

    @property
    def failed(self) -> list:
        return [c for c in self.checks if not c.ok and not c.advisory]

    @property
    def advisory_failures(self) -> list:
        return [c for c in self.checks if not c.ok and c.advisory]

    @property
    def delta_pm(self) -> Fraction:
        return Fraction(self.delta_plus + self.delta_minus, 2)

    def profile_key(self) -> tuple:
        return (
            *self.theta, *self.sigma, *self.tau_sigma, self.h_plus, self.h_minus, self.c,
            self.alpha, int(self.delta_pm), self.s_sigma, self.s_tau_sigma,
        )


def analyze(t: EnriquesActionTriple, strict: bool = False) -> AnalysisReport:
    theta = theta_invariants(t, strict=False)
    gd = glue_data(t, strict)
    di = derived_invariants(t, gd, strict)
    ident = check_lifting_identities(t, gd, strict)
    sc = s_counts(t, gd, strict)
    m2 = mod2_fixed_dims(t, gd, strict)
    bc = beta_case(t, gd, di, sc, strict)
    fc = f_subgroup(t, strict)
    b_values, estimates, extra = {}, {}, []
    for beta in bc.beta_choices:
        bv = b_invariant(t, beta, gd, di, sc, bc, strict)
        b_values[beta] = bv.b
        est = brauer_estimate(t, beta, (0, 1), gd, di, sc, bc, strict)
        estimates[beta] = est
        extra += list(bv.checks) + list(est.checks)
        extra += connected_nonorientable_check(t, beta, gd, di, sc, bc, strict)
    pos = sc.positive
    mn = min(Fraction(di.alpha), di.delta_pm)
    extra.append(check("#positive - min(alpha, delta) >= 0, equality only without real points",
                       (pos - mn > 0) or (pos - mn == 0 and sc.total == 0)))
    if sc.total > 0:
        extra.append(check("some beta admits a component split",
                           any(e.splits for e in estimates.values())))
    checks = (
        [check("theta invariants lie in the allowed list", in_theta_list(theta.as_tuple()))]
        + list(gd.checks) + list(di.checks) + list(ident) + list(sc.checks)
        + list(m2.checks) + list(bc.checks) + list(fc.checks) + extra
    )
    return AnalysisReport(
        name=t.name,
        sigma=t.sigma_invariants.as_tuple(),
        tau_sigma=t.tau_sigma_invariants.as_tuple(),
        theta=theta.as_tuple(),
        theta_in_list=in_theta_list(theta.as_tuple()),
        topology_sigma=fixed_set_topology(t.sigma_invariants),
        topology_tau_sigma=fixed_set_topology(t.tau_sigma_invariants),
        h_plus=gd.dim_h_plus,
        h_minus=gd.dim_h_minus,
        gamma_pm=gd.dim_gamma_pm,
        c=gd.c,
        gamma=di.gamma,
        alpha=di.alpha,
        delta_plus=di.delta_plus,
        delta_minus=di.delta_minus,
        v_q_sigma=di.v_q_sigma,
        s_sigma=sc.s_sigma,
        s_tau_sigma=sc.s_tau_sigma,
        s_total=sc.total,
        case=bc.case,
        beta_choices=bc.beta_choices,
        f_class=fc,
        mod2=m2,
        b_values=b_values,
        estimates=estimates,
        s_nor_predicted=s_nor_prediction(di.alpha, di.delta_pm, di.gamma, sc.s_sigma, sc.s_tau_sigma),
        checks=tuple(checks),
    )
