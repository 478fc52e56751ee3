"""Exhaustive search over integer invariant profiles.

A profile is a tuple of integers (theta, sigma and tau*sigma invariants,
glue dimensions, beta, component counts, b) satisfying every necessary
condition implemented in ``enriques``. Profiles are syntactic: nothing
here certifies that a lattice triple with these invariants exists.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from fractions import Fraction

from .enriques import (
    THETA_LIST,
    AnalysisReport,
    admissible_splits,
    b_by_cases,
    b_from_components,
    b_unified,
    s_nor_prediction,
)
from .errors import InconsistencyError
from .involutions import fixed_set_topology

HEADER = "profiles are necessary-condition solutions; realizability is not certified"


@dataclass(frozen=True, order=True)
class InvariantProfile:
    r_theta: int
    a_theta: int
    delta_theta: int
    r_sigma: int
    a_sigma: int
    delta_sigma: int
    r_tausigma: int
    a_tausigma: int
    delta_tausigma: int
    h_plus: int
    h_minus: int
    c: int
    gamma: int
    alpha: int
    delta_pm: int
    beta: int
    s_sigma: int
    s_tausigma: int
    s_nor: int
    s_or: int
    s: int
    b: int

    @property
    def theta(self):
        return (self.r_theta, self.a_theta, self.delta_theta)

    @property
    def s_sum(self) -> int:
        return self.s_sigma + self.s_tausigma

    @property
    def positive(self) -> int:
        return int(self.s_sigma > 0) + int(self.s_tausigma > 0)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def base_key(self) -> tuple:
        """Everything up to (and excluding) beta: the data a lattice triple determines."""
        return astuple(self)[:15] + (self.s_sigma, self.s_tausigma)


FIELD_NAMES = tuple(f.name for f in fields(InvariantProfile))


@dataclass(frozen=True)
class EnumerationConfig:
    # positivity rule: #positive - min(alpha, delta) > 0 unless no real points
    positivity_rule: bool = True
    # require the literal mod 2 sum of deltas instead of its proven form
    literal_delta_parity: bool = False
    # gamma is at most the pairing rank allowed by the common part of H+ and H-
    pairing_rank_bound: bool = True


def _valid_triple(r, a, d) -> bool:
    if not (1 <= r <= 21 and 0 <= a <= min(r, 22 - r) and (r - a) % 2 == 0):
        return False
    return not (a == 0 and d)


def _delta_ok(ds, dts, dt, literal) -> bool:
    if literal or min(ds, dts) == 0:
        return (ds + dts) % 2 == dt
    return True


def enumerate_profiles(config: EnumerationConfig = EnumerationConfig()) -> list:
    out = set()
    for rt, at, dt in THETA_LIST:
        for hp in range(at, rt + 1):
            for hm in range(at, 10 - rt + 1):
                for c in range(at, hm + 1):
                    gamma = hm - c
                    if gamma > 2:
                        continue
                    if config.pairing_rank_bound and gamma > min(hp, hm) - at:
                        continue
                    for alpha in (0, 1):
                        a_s = hp + hm + alpha
                        a_ts = a_s + 10 + 2 * at - 2 * hp - 2 * c
                        for r_s in range(1, 22):
                            r_ts = 12 + 2 * rt - r_s
                            if r_s - a_s < 2 * rt - 2 * hp or r_s + a_s > 2 * hm + 2 * rt + 2:
                                continue
                            _profiles_for(out, config, (rt, at, dt), hp, hm, c, gamma, alpha,
                                          (r_s, a_s), (r_ts, a_ts))
    return sorted(out)


def _profiles_for(out, config, theta, hp, hm, c, gamma, alpha, sig, tsig):
    rt, at, dt = theta
    (r_s, a_s), (r_ts, a_ts) = sig, tsig
    for ds in (0, 1):
        if not _valid_triple(r_s, a_s, ds):
            continue
        for dts in (0, 1):
            if not _valid_triple(r_ts, a_ts, dts) or not _delta_ok(ds, dts, dt, config.literal_delta_parity):
                continue
            s_s = fixed_set_topology((r_s, a_s, ds)).components
            s_ts = fixed_set_topology((r_ts, a_ts, dts)).components
            pos = int(s_s > 0) + int(s_ts > 0)
            if s_s + s_ts != pos + 1 + rt - at - a_s + hp + c:
                raise InconsistencyError("component sum", f"{(theta, sig, tsig, hp, c)}")
            for dpm in (0, 1):
                if ds == 0 and dpm:
                    continue
                mn = min(alpha, dpm)
                if config.positivity_rule and not (pos > mn or pos == mn == 0):
                    continue
                case = "A" if alpha == 1 and dpm == 0 else "B"
                if case == "A":
                    betas = (0,)
                elif s_s > 0 and s_ts > 0:
                    betas = (1,)
                else:
                    betas = (0, 1)
                for beta in betas:
                    b = b_unified(rt, at, alpha, dpm, beta)
                    if b != b_by_cases(rt, at, case, beta) or b != b_from_components(
                        s_s, s_ts, alpha, dpm, gamma, beta
                    ):
                        raise InconsistencyError("b formulas", f"{(theta, sig, tsig, hp, hm, c, alpha, dpm, beta)}")
                    base = (rt, at, dt, r_s, a_s, ds, r_ts, a_ts, dts, hp, hm, c, gamma, alpha, dpm, beta, s_s, s_ts)
                    if s_s + s_ts == 0:
                        out.add(InvariantProfile(*base, 0, 0, 0, b))
                        continue
                    pred = s_nor_prediction(alpha, dpm, gamma, s_s, s_ts)
                    for s_nor, s_or, s in admissible_splits(b, s_s, s_ts, pred):
                        out.add(InvariantProfile(*base, s_nor, s_or, s, b))


def intermediate_bound(p: InvariantProfile) -> Fraction:
    """Upper bound (2 + r - a + max(1 - alpha, delta) + beta)/2 for s."""
    return Fraction(2 + p.r_theta - p.a_theta + max(1 - p.alpha, p.delta_pm) + p.beta, 2)


def s_nor_bound(p: InvariantProfile) -> int:
    return 2 - p.positive + min(p.alpha, p.delta_pm) + p.gamma + p.beta


@dataclass(frozen=True)
class BoundReport:
    max_s: int
    max_s_nor: int
    s_witnesses: tuple
    s_nor_witnesses: tuple
    intermediate_violations: tuple
    s_nor_violations: tuple
    count: int

    @property
    def ok(self) -> bool:
        return not self.intermediate_violations and not self.s_nor_violations


def bound_report(profiles=None, config: EnumerationConfig = EnumerationConfig()) -> BoundReport:
    profiles = enumerate_profiles(config) if profiles is None else profiles
    max_s = max(p.s for p in profiles)
    max_nor = max(p.s_nor for p in profiles)
    return BoundReport(
        max_s,
        max_nor,
        tuple(p for p in profiles if p.s == max_s),
        tuple(p for p in profiles if p.s_nor == max_nor),
        tuple(p for p in profiles if p.s > intermediate_bound(p)),
        tuple(p for p in profiles if p.s_sum and p.s_nor > s_nor_bound(p)),
        len(profiles),
    )


def profile_from_report(r: AnalysisReport) -> list:
    """All profiles (one per admissible beta and split) carried by an analysis."""
    out = []
    base = (*r.theta, *r.sigma, *r.tau_sigma, r.h_plus, r.h_minus, r.c, r.gamma, r.alpha, int(r.delta_pm))
    for beta, est in r.estimates.items():
        head = base + (beta, r.s_sigma, r.s_tau_sigma)
        if est.empty_real_locus:
            out.append(InvariantProfile(*head, 0, 0, 0, est.b))
        for s_nor, s_or, s, _, _ in est.splits:
            out.append(InvariantProfile(*head, s_nor, s_or, s, est.b))
    return out


@dataclass(frozen=True)
class CrossCheck:
    analyzed: int
    missing: tuple  # (triple name, profile) pairs not produced by the enumeration
    theta_realized: tuple
    theta_outside_list: tuple

    @property
    def ok(self) -> bool:
        return not self.missing and not self.theta_outside_list


def catalog_cross_check(reports, profiles=None) -> CrossCheck:
    profiles = set(enumerate_profiles() if profiles is None else profiles)
    missing, realized, outside = [], set(), set()
    for r in reports:
        realized.add(r.theta)
        if r.theta not in THETA_LIST:
            outside.add(r.theta)
        for p in profile_from_report(r):
            if p not in profiles:
                missing.append((r.name, p))
    return CrossCheck(len(reports), tuple(missing), tuple(sorted(realized)), tuple(sorted(outside)))
