from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from realenriques import exact_linalg as xl

entries = st.integers(-5, 5)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@st.composite
def symmetric(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(entries)
    return m


def leibniz_det(rows):
    """Independent determinant oracle for tiny matrices."""
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = (-1) ** inv
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


@pytest.mark.parametrize("rows, diag", [
    ([[2, 0], [0, 2]], [2, 2]),
    ([[0, 1], [1, 0]], [1, 1]),
    ([[0]], [0]),
    ([[2, 4], [6, 8]], [2, 4]),
])
def test_smith_examples(rows, diag):
    d, u, v = xl.smith_normal_form(xl.int_matrix(rows))
    assert [d[i, i] for i in range(min(d.shape))] == diag


@given(matrices())
def test_smith_transforms(rows):
    m = xl.int_matrix(rows)
    d, u, v = xl.smith_normal_form(m)
    assert (u @ m @ v == d).all()
    assert xl.determinant(u) in (1, -1) and xl.determinant(v) in (1, -1)
    k = min(d.shape)
    assert all(d[i, j] == 0 for i in range(d.shape[0]) for j in range(d.shape[1]) if i != j)
    ds = [d[i, i] for i in range(k)]
    assert all(x >= 0 for x in ds)
    for a, b in zip(ds, ds[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(rows):
    assert xl.determinant(xl.int_matrix(rows)) == leibniz_det(rows)


def test_kernel_examples():
    assert xl.kernel_basis_int(xl.identity(2)).shape[0] == 0
    k = xl.kernel_basis_int(xl.int_matrix([[1, 1]]))
    assert k.shape[0] == 1 and sorted(abs(x) for x in k[0]) == [1, 1] and sum(k[0]) == 0
    k = xl.kernel_basis_int(xl.int_matrix([[2, 2], [2, 2]]))
    assert k.shape[0] == 1 and abs(k[0, 0]) == 1 and k[0, 0] == -k[0, 1]


@given(matrices())
def test_kernel_is_saturated_basis(rows):
    m = xl.int_matrix(rows)
    k = xl.kernel_basis_int(m)
    n = m.shape[1]
    assert k.shape[0] == n - xl.rank(m)
    if k.shape[0]:
        assert not (m @ k.T).any()
        # saturated: elementary divisors of the basis are all 1
        assert xl.elementary_divisors(k) == [1] * k.shape[0]


def _same_lattice(a, b):
    return (xl.hermite_normal_form(a) == xl.hermite_normal_form(b)).all()


def test_saturate_examples():
    assert _same_lattice(xl.saturate(xl.int_matrix([[2, 0]]), 2), xl.int_matrix([[1, 0]]))
    assert _same_lattice(xl.saturate(xl.int_matrix([[1, 0]]), 2), xl.int_matrix([[1, 0]]))
    # (2,2),(0,4) has full rank, so its saturation is all of Z^2
    sat = xl.saturate(xl.int_matrix([[2, 2], [0, 4]]), 2)
    assert _same_lattice(sat, xl.identity(2))


def test_saturate_rejects_dependent():
    with pytest.raises(ValueError):
        xl.saturate(xl.int_matrix([[1, 2], [2, 4]]), 2)


@given(st.lists(st.lists(entries, min_size=4, max_size=4), min_size=1, max_size=3))
def test_saturate_idempotent(rows):
    m = xl.int_matrix(rows)
    if xl.rank(m) < m.shape[0]:
        return
    s = xl.saturate(m, 4)
    assert _same_lattice(xl.saturate(s, 4), s)
    # contains the input and is a direct summand
    xl.integer_coordinates(s, m)
    assert xl.elementary_divisors(s) == [1] * s.shape[0]


@pytest.mark.parametrize("rows, sig", [
    ([[0, 1], [1, 0]], (1, 1, 0)),
    ([[0] * 3] * 3, (0, 0, 3)),
])
def test_signature_examples(rows, sig):
    assert xl.signature_exact(xl.int_matrix(rows)) == sig


def test_signature_e8():
    from realenriques.catalog import e8_gram
    assert xl.signature_exact(e8_gram()) == (0, 8, 0)


def test_signature_rejects_non_symmetric():
    with pytest.raises(ValueError):
        xl.signature_exact(xl.int_matrix([[1, 2], [3, 4]]))


def _minor_sign_signature(rows):
    """Jacobi: sign changes in 1, D1, ..., Dn count negative eigenvalues."""
    n = len(rows)
    minors = [1] + [leibniz_det([r[:k] for r in rows[:k]]) for k in range(1, n + 1)]
    if any(m == 0 for m in minors):
        return None
    neg = sum(1 for a, b in zip(minors, minors[1:]) if (a > 0) != (b > 0))
    return (n - neg, neg, 0)


def _ldl_signature(rows):
    """Rational congruence diagonalisation with a random basis change to avoid zero pivots."""
    n = len(rows)
    g = [[Fraction(x) for x in r] for r in rows]
    pos = neg = 0
    idx = list(range(n))
    while idx:
        piv = next((i for i in idx if g[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and g[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j, which has square 2 g_ij (+ g_jj = 0)
            for k in range(n):
                g[i][k] += g[j][k]
            for k in range(n):
                g[k][i] += g[k][j]
            continue
        p = g[piv][piv]
        pos += p > 0
        neg += p < 0
        idx.remove(piv)
        for i in idx:
            f = g[i][piv] / p
            for k in range(n):
                g[i][k] -= f * g[piv][k]
            for k in range(n):
                g[k][i] -= f * g[k][piv]
    return (pos, neg, n - pos - neg)


@given(symmetric())
def test_signature_oracles(rows):
    sig = xl.signature_exact(xl.int_matrix(rows))
    assert sum(sig) == len(rows)
    assert sig[0] + sig[1] == xl.rank(xl.int_matrix(rows))
    assert sig == _ldl_signature(rows)
    jac = _minor_sign_signature(rows)
    if jac is not None:
        assert sig == jac


def test_signature_200_random():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        a = rng.integers(-5, 6, size=(n, n))
        rows = np.triu(a) + np.triu(a, 1).T
        rows = [[int(x) for x in r] for r in rows]
        sig = xl.signature_exact(xl.int_matrix(rows))
        assert sig == _ldl_signature(rows)
        jac = _minor_sign_signature(rows)
        if jac is not None:
            assert sig == jac


@pytest.mark.parametrize("a, b, x", [
    ([[1, 0], [0, 1]], [1, 0], [1, 0]),
    ([[0]], [1], None),
    ([[1, 1], [0, 1]], [0, 1], [1, 1]),
])
def test_solve_mod2_examples(a, b, x):
    sol = xl.solve_mod2(xl.int_matrix(a), b)
    if x is None:
        assert sol is None
    else:
        assert [int(v) for v in sol] == x


@given(st.integers(1, 4).flatmap(lambda c: st.tuples(
    st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=1, max_size=4),
    st.lists(st.integers(0, 1), min_size=4, max_size=4))))
def test_solve_mod2_brute_force(data):
    a, b = data
    b = b[: len(a)]
    n = len(a[0])
    sols = [x for x in product((0, 1), repeat=n)
            if all(sum(r[i] * x[i] for i in range(n)) % 2 == bi for r, bi in zip(a, b))]
    got = xl.solve_mod2(xl.int_matrix(a), b)
    if not sols:
        assert got is None
    else:
        assert tuple(int(v) for v in got) in sols


def test_rank_mod2_and_nullspace():
    m = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert xl.rank_mod2(m) == 2
    ns = xl.nullspace_mod2(m)
    assert ns.shape == (1, 3) and not ((m.astype(int) @ ns[0].astype(int)) % 2).any()
    assert xl.rows_mod2([], 5).shape == (0, 5)
