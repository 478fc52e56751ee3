from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from oracles import half_square_classes

from realenriques import catalog
from realenriques import exact_linalg as xl
from realenriques.enriques import (
    THETA_LIST,
    analyze,
    b_by_cases,
    b_from_components,
    b_unified,
    check_lifting_identities,
    component_splits,
    in_theta_list,
    predicted_f_vanishes,
    validate_triple,
)
from realenriques.errors import InvalidInvolutionError, InvalidTripleError
from realenriques.involutions import IsometryInvolution


def test_reference_values(reference_report):
    r = reference_report
    assert (r.sigma, r.tau_sigma, r.theta) == ((1, 1, 1), (11, 11, 1), (0, 0, 0))
    assert (r.h_plus, r.h_minus, r.c, r.gamma, r.alpha) == (0, 0, 0, 0, 1)
    assert r.delta_pm == 1
    assert (r.s_sigma, r.s_tau_sigma) == (1, 1)
    assert r.beta_choices == (1,) and r.b_values == {1: 2}
    est = r.estimates[1]
    assert est.splits == ((2, 0, 2, (1,), (3,)),)
    assert r.consistent and not r.advisory_failures


def test_single_component_triple():
    t = validate_triple(catalog.k3_lattice(), catalog.tau_reference(), catalog.sigma_single_component())
    r = analyze(t)
    assert (r.sigma, r.tau_sigma, r.theta) == ((2, 2, 0), (10, 10, 0), (0, 0, 0))
    assert r.s_total == 1 and r.consistent
    assert 0 in r.b_values.values()
    for beta, est in r.estimates.items():
        if est.b == 0:
            assert [sp[:3] for sp in est.splits] == [(1, 0, 1)]
            assert est.br_dims == (1,)


def test_validation_errors(k3):
    tau, sigma = catalog.tau_reference(), catalog.sigma_reference()
    # conjugate sigma by the reflection in a root mixing U1 and U2
    r = np.array([1, 0, 1, -1] + [0] * 18, dtype=object).reshape(-1, 1)
    refl = xl.identity(22) + r @ r.T @ k3.gram
    bad = IsometryInvolution(k3, refl @ sigma.matrix @ refl)
    with pytest.raises(InvalidTripleError, match="involutions do not commute"):
        validate_triple(k3, tau, bad)
    with pytest.raises(InvalidTripleError, match="hyperbolic"):
        validate_triple(k3, tau, tau)
    with pytest.raises(InvalidTripleError, match="expected"):
        validate_triple(k3, sigma, tau)


def test_perturbed_sigma_rejected(k3):
    m = catalog.sigma_reference().matrix.copy()
    m[0, 2] += 1
    with pytest.raises(InvalidInvolutionError):
        IsometryInvolution(k3, m)


def test_theta_list_membership():
    assert len(THETA_LIST) == 16
    members = [(r, a, d) for r in range(11) for a in range(11) for d in (0, 1) if in_theta_list((r, a, d))]
    assert sorted(members) == sorted(THETA_LIST)


def test_b_formula_cases():
    assert b_by_cases(3, 1, "A", 0) == b_unified(3, 1, 1, 0, 0) == 2
    assert b_by_cases(3, 1, "B", 1) == b_unified(3, 1, 0, 0, 1) == 4
    assert b_unified(0, 0, 1, Fraction(1, 2), 0) == 0
    assert b_from_components(1, 1, 1, 1, 0, 1) == 2
    with pytest.raises(ValueError):
        b_by_cases(3, 1, "A", 1)


def test_component_splits():
    assert component_splits(1, 1) == [(2, 0)]
    assert component_splits(2, 0) == [(0, 1), (2, 0)]


def test_f_prediction_table():
    assert not predicted_f_vanishes(0, 0)
    assert not predicted_f_vanishes(1, 0)
    assert predicted_f_vanishes(1, Fraction(1, 2))
    assert predicted_f_vanishes(1, 1)


def test_f_class_by_enumeration(reference_triple, reference_report):
    nk, values = half_square_classes(reference_triple)
    assert nk == 2 ** 10 and len(values) == 4
    # x^2/2 is well defined on the quotient and equal to 1 on one nonzero class only
    assert all(len(v) == 1 for v in values.values())
    ones = [k for k, v in values.items() if v == {1}]
    assert len(ones) == 1
    fc = reference_report.f_class
    g = reference_triple.tau_neg.gram
    f = np.array(fc.coords, dtype=object)
    kernel = [np.array(v, dtype=object) for v in product((0, 1), repeat=12)
              if not ((np.array(v, dtype=object) @ g) % 2).any()]
    assert min(tuple(int(x) for x in (f + k) % 2) for k in kernel) == ones[0]
    assert fc.value == 1 and fc.other_values == (0, 0) and fc.sigma_invariant


# -- properties over the catalog ---------------------------------------------


def test_catalog_reports_consistent(reports):
    bad = [(r.name, [c.name for c in r.failed]) for r in reports if not r.consistent]
    assert not bad


def test_fixed_by_both_diagonal_vanishes(triples):
    for t in triples:
        a = t.fix_both.discriminant if t.fix_both.rank else None
        if a is not None:
            assert not a.layer_diagonal().any()


def test_glue_inequalities(reports):
    for r in reports:
        rt, at, dt = r.theta
        assert r.h_plus <= rt and r.h_minus <= 10 - rt
        assert at <= r.gamma_pm <= r.c <= r.h_minus
        assert r.gamma_pm == at
        assert r.h_plus + r.h_minus <= r.sigma[1] <= r.h_plus + r.h_minus + 1
        assert r.sigma[0] - r.sigma[1] >= 2 * rt - 2 * r.h_plus
        assert r.sigma[0] + r.sigma[1] <= 2 * r.h_minus + 2 * rt + 2


def test_lifting_ranks(reports):
    for r in reports:
        assert r.sigma[0] + r.tau_sigma[0] == 12 + 2 * r.theta[0]
        assert r.tau_sigma[1] - r.sigma[1] == 10 + 2 * r.theta[1] - 2 * r.h_plus - 2 * r.c


def test_delta_parity_counterexample(k3):
    """Both liftings with delta = 1 next to delta(theta) = 1: the plain mod 2 sum fails."""
    sigma = catalog.block_sigma(catalog.BlockSpec.parse("u1=swap;u23=diag:-1;e8=diag:-R1"))
    t = validate_triple(k3, catalog.tau_reference(), sigma)

    def parity(gram, m):
        gm = gram @ m
        return int(any(gm[i, i] % 2 for i in range(gm.shape[0])))

    th = t.theta
    assert parity(k3.gram, t.sigma.matrix) == t.sigma_invariants.delta == 1
    assert parity(k3.gram, t.tau_sigma.matrix) == t.tau_sigma_invariants.delta == 1
    assert parity(th.lattice.gram, th.matrix) == 1
    r = analyze(t)
    assert r.theta == (1, 1, 1) and r.consistent
    assert [c.name for c in r.advisory_failures] == ["delta(sigma) + delta(tau sigma) = delta(theta) mod 2"]


def test_delta_parity_when_one_delta_vanishes(reports):
    for r in reports:
        if min(r.sigma[2], r.tau_sigma[2]) == 0:
            assert (r.sigma[2] + r.tau_sigma[2]) % 2 == r.theta[2]


def test_positivity_rule(reports):
    for r in reports:
        pos = int(r.s_sigma > 0) + int(r.s_tau_sigma > 0)
        m = min(Fraction(r.alpha), r.delta_pm)
        assert pos - m >= 0
        assert (pos - m == 0) == (r.s_total == 0)


def test_b_formulas_agree(reports):
    for r in reports:
        for beta, b in r.b_values.items():
            assert b == b_unified(r.theta[0], r.theta[1], r.alpha, r.delta_pm, beta)
            assert b == b_from_components(r.s_sigma, r.s_tau_sigma, r.alpha, r.delta_pm, r.gamma, beta)
            if not (r.case == "A" and beta):
                assert b == b_by_cases(r.theta[0], r.theta[1], r.case, beta)


def test_estimates_respect_brauer_bounds(reports):
    for r in reports:
        for est in r.estimates.values():
            for s_nor, s_or, s, eps, dims in est.splits:
                assert est.b >= 2 * s - 2
                assert all(d >= s for d in dims)


def test_strict_mode_on_reference(reference_triple):
    ident = check_lifting_identities(reference_triple, strict=True)
    assert all(c.ok for c in ident)
