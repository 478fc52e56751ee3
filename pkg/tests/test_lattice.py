from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import (
    check_against_oracle,
    random_nondegenerate,
    three_summand_decompositions,
)

from realenriques import catalog
from realenriques import exact_linalg as xl
from realenriques.errors import DegenerateLatticeError, InputError
from realenriques.lattice import (
    Lattice,
    Sublattice,
    complement_identity,
    direct_sum,
    discriminant_form,
    glue_group,
    orthogonal_complement,
    rescale,
    three_summand_glue,
)

U = catalog.hyperbolic_plane()


def test_rescale():
    assert (rescale(U, 2).gram == xl.int_matrix([[0, 2], [2, 0]])).all()
    assert rescale(U, 1) == U
    with pytest.raises(ValueError):
        rescale(U, Fraction(1, 2))


def test_tau_fixed_half_is_even_unimodular():
    fixed = catalog.tau_reference().eigenlattices[0]
    half = rescale(fixed.lattice, Fraction(1, 2))
    assert half.is_even and half.is_unimodular and half.signature == (1, 9, 0)


def test_direct_sum():
    k3 = direct_sum([U, U, U, catalog.e8(), catalog.e8()])
    assert k3.rank == 22 and k3.signature == (3, 19, 0)
    assert direct_sum([]).rank == 0
    l = direct_sum([catalog.rank_one(2), catalog.rank_one(-2)])
    assert l.signature == (1, 1, 0) and l.det == -4


def test_non_symmetric_gram_names_entry():
    with pytest.raises(InputError, match=r"\(1,2\)"):
        Lattice(xl.int_matrix([[0, 1], [2, 0]]))


def test_degenerate_discriminant():
    with pytest.raises(DegenerateLatticeError):
        discriminant_form(Lattice(xl.int_matrix([[1, 1], [1, 1]])))


def test_discriminant_examples():
    assert discriminant_form(U).order == 1
    a = discriminant_form(catalog.rank_one(2))
    assert a.divisors == (2,) and a.q_values() == [Fraction(1, 2)]
    assert (a.gens[0] == [Fraction(1, 2)]).all()
    u2 = discriminant_form(rescale(U, 2))
    assert u2.divisors == (2, 2)
    assert u2.q_values() == [0, 0] and u2.b(u2.layer_element([1, 0]), u2.layer_element([0, 1])) == Fraction(1, 2)
    e82 = discriminant_form(rescale(catalog.e8(), 2))
    assert e82.divisors == (2,) * 8
    assert all(e82.q(t).denominator == 1 for t in e82.elements())


def test_discriminant_random_lattices():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        check_against_oracle(random_nondegenerate(rng))


@st.composite
def nondegenerate(draw):
    n = draw(st.integers(1, 4))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(-5, 5))
    if xl.determinant(xl.int_matrix(m)) == 0:
        m = [[m[i][j] + (2 * n * 6 if i == j else 0) for j in range(n)] for i in range(n)]
    return m


@given(nondegenerate())
def test_discriminant_property(rows):
    if xl.determinant(xl.int_matrix(rows)) != 0:
        check_against_oracle(rows)


def test_orthogonal_complement_examples():
    s = Sublattice(U, [[1, 0]])
    assert orthogonal_complement(s) == s
    assert orthogonal_complement(Sublattice(U, xl.identity(2))).rank == 0
    assert orthogonal_complement(Sublattice(U, [[1, 1]])) == Sublattice(U, [[1, -1]])


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_orthogonal_complement_property(rows):
    uu = direct_sum([U, U])
    if xl.rank(xl.int_matrix(rows)) < len(rows):
        return
    s = Sublattice(uu, rows)
    perp = orthogonal_complement(s)
    assert perp.rank == 4 - s.rank
    assert perp.is_primitive()
    if perp.rank:
        assert not (s.basis @ uu.gram @ perp.basis.T).any()


def test_glue_examples():
    g = glue_group(U, Sublattice(U, [[1, 1]]), Sublattice(U, [[1, -1]]))
    assert g.order == 2 and g.is_isotropic() and g.meets_factors_trivially()
    # ambient equal to the sum: nothing to glue
    assert glue_group(U, Sublattice(U, xl.identity(2)), Sublattice(U, xl.int_matrix([], shape=(0, 2)))).order == 1
    plus, minus = catalog.tau_reference().eigenlattices
    g = glue_group(catalog.k3_lattice(), plus, minus)
    assert g.order == 2 ** 10


def test_glue_preconditions():
    with pytest.raises(InputError):
        glue_group(U, Sublattice(U, [[1, 0]]), Sublattice(U, [[1, 1]]))
    with pytest.raises(InputError):
        glue_group(U, Sublattice(U, [[2, 2]]), Sublattice(U, [[1, -1]]))


@pytest.mark.parametrize("case", three_summand_decompositions(), ids=lambda c: c[0])
def test_complement_of_pair_glue(case):
    _, ambient, s1, s2, s3 = case
    g = three_summand_glue(ambient, s1, s2, s3)
    assert g.order <= 2 ** 12
    perp, rhs = complement_identity(g)
    assert perp == rhs
