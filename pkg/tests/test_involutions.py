import pytest
from hypothesis import given
from hypothesis import strategies as st

from realenriques import catalog
from realenriques import exact_linalg as xl
from realenriques.errors import InvalidInvolutionError
from realenriques.involutions import (
    FixedSetKind,
    InvolutionInvariants,
    IsometryInvolution,
    characteristic_class_v,
    euler_char_from_r,
    fixed_set_topology,
    involution_invariants,
    r_from_euler,
)
from realenriques.lattice import Sublattice, glue_group

U = catalog.hyperbolic_plane()


def delta_oracle(phi):
    """delta = 0 iff x . phi(x) is even for every x, i.e. diag(G M) is even."""
    gm = phi.lattice.gram @ phi.matrix
    return int(any(gm[i, i] % 2 for i in range(phi.lattice.rank)))


def test_eigenlattice_examples():
    ident = IsometryInvolution(U, xl.identity(2))
    assert ident.eigenlattices[0].rank == 2 and ident.eigenlattices[1].rank == 0
    neg = IsometryInvolution(U, -xl.identity(2))
    assert neg.eigenlattices[0].rank == 0 and neg.eigenlattices[1].rank == 2
    swap = IsometryInvolution(U, xl.int_matrix([[0, 1], [1, 0]]))
    plus, minus = swap.eigenlattices
    assert plus == Sublattice(U, [[1, 1]]) and minus == Sublattice(U, [[1, -1]])
    assert plus.gram[0, 0] == 2 and minus.gram[0, 0] == -2


def test_rejects_non_involution():
    with pytest.raises(InvalidInvolutionError):
        IsometryInvolution(U, xl.int_matrix([[1, 1], [0, 1]]))
    with pytest.raises(InvalidInvolutionError):
        IsometryInvolution(U, xl.int_matrix([[1, 0], [0, -1]]))


def test_invariant_examples(k3):
    assert involution_invariants(catalog.tau_reference()).as_tuple() == (10, 10, 0)
    assert involution_invariants(catalog.sigma_reference()).as_tuple() == (1, 1, 1)
    assert involution_invariants(IsometryInvolution(k3, -xl.identity(22))).as_tuple() == (0, 0, 0)


@pytest.mark.parametrize("inv, kind, comps", [
    ((10, 10, 0), FixedSetKind.EMPTY, 0),
    ((10, 8, 0), FixedSetKind.TWO_TORI, 2),
    ((1, 1, 1), FixedSetKind.GENERIC, 1),
])
def test_topology_examples(inv, kind, comps):
    t = fixed_set_topology(inv)
    assert t.kind is kind and t.components == comps
    if inv == (1, 1, 1):
        assert t.genus == 10 and t.spheres == 0


def test_characteristic_class_examples(k3):
    assert not characteristic_class_v(IsometryInvolution(U, xl.identity(2))).any()
    assert not characteristic_class_v(IsometryInvolution(U, -xl.identity(2))).any()
    v = characteristic_class_v(catalog.sigma_reference())
    # sigma_ref fixes c1 + c2 in U1; v is that vector mod 2
    assert [int(x) for x in v] == [1, 1] + [0] * 20


def test_euler_conversions():
    assert euler_char_from_r(10) == 0
    assert r_from_euler(0, "Enriques") == 4
    assert euler_char_from_r(1) == -18 == fixed_set_topology((1, 1, 1)).euler_characteristic()


def valid_invariants():
    return [(r, a, d) for r in range(1, 21) for a in range(0, 12) for d in (0, 1)
            if (r - a) % 2 == 0 and r + a <= 22 and a <= r and not (a == 0 and d)]


@given(st.sampled_from(valid_invariants()))
def test_topology_consistency(inv):
    t = fixed_set_topology(inv)
    if t.kind is FixedSetKind.EMPTY:
        return
    assert t.euler_characteristic() == euler_char_from_r(inv[0])
    assert inv[1] == 12 - t.mod2_betti_total() // 2


def catalog_involutions(triples):
    seen = []
    for t in triples:
        seen += [t.sigma, t.tau_sigma]
    return seen


def test_catalog_involutions(triples, k3):
    for phi in catalog_involutions(triples):
        plus, minus = phi.eigenlattices
        assert plus.rank + minus.rank == 22
        assert not (plus.basis @ k3.gram @ minus.basis.T).any()
        inv = involution_invariants(phi)
        assert glue_group(k3, plus, minus).order == 2 ** inv.a
        assert inv.delta == delta_oracle(phi)
        top = fixed_set_topology(inv)
        if top.kind is FixedSetKind.EMPTY:
            assert inv.delta == 0
        else:
            assert top.euler_characteristic() == euler_char_from_r(inv.r)
            assert inv.a == 12 - top.mod2_betti_total() // 2


def test_delta_invariant_validation():
    with pytest.raises(ValueError):
        InvolutionInvariants(3, 0, 1)
