"""Exact integer, rational and GF(2) linear algebra.

Matrices are numpy arrays with ``dtype=object`` holding Python ``int`` or
``fractions.Fraction`` entries, so ``@`` and friends stay exact. Nothing in
this module uses floating point. Sizes in this package never exceed 22x22,
so the algorithms favour clarity over asymptotic speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


def int_matrix(rows, shape=None) -> np.ndarray:
    """Build an object-dtype matrix of Python ints.

    ``shape`` is only needed for empty input, where the column count cannot
    be inferred.
    """
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        for idx, x in np.ndenumerate(rows):
            out[idx] = _as_int(x)
        return out
    rows = [list(r) for r in rows]
    if not rows:
        return np.empty(shape if shape is not None else (0, 0), dtype=object)
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    out = np.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = _as_int(x)
    return out


def rat_matrix(rows, shape=None) -> np.ndarray:
    """Object-dtype matrix of ``Fraction`` entries."""
    if isinstance(rows, np.ndarray):
        out = np.empty(rows.shape, dtype=object)
        for idx, x in np.ndenumerate(rows):
            out[idx] = Fraction(x)
        return out
    rows = [list(r) for r in rows]
    if not rows:
        return np.empty(shape if shape is not None else (0, 0), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = Fraction(x)
    return out


def int_vector(xs) -> np.ndarray:
    out = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        out[i] = _as_int(x)
    return out


def _as_int(x) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        return x.numerator
    if isinstance(x, float):
        if not x.is_integer():
            raise ValueError(f"non-integral entry {x}")
    return int(x)


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    for idx in np.ndindex(out.shape):
        out[idx] = int(out[idx])
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(0)
    return out


def to_int(m: np.ndarray) -> np.ndarray:
    """Cast a rational matrix to ints; raises ``ValueError`` if not integral."""
    return int_matrix(m) if m.ndim == 2 else int_vector(list(m))


def is_integral(m: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in m.flat)


def determinant(m: np.ndarray) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_rref(m: np.ndarray):
    """Reduced row echelon form over Q; returns (rref, pivot columns)."""
    a = rat_matrix(m)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rational_rref(m)[1])


def rational_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([rat_matrix(m), rat_matrix(identity(n))], axis=1)
    red, pivots = rational_rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return red[:, n:]


def solve_rational(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Some x with a @ x = b over Q (b a vector or matrix), or None.

    Free variables are set to zero, so the answer is unique when ``a`` has
    full column rank.
    """
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    rows, cols = a.shape
    if rows == 0:
        x = rat_matrix(zeros(cols, bb.shape[1]))
        return x[:, 0] if vec else x
    aug = np.concatenate([rat_matrix(a), rat_matrix(bb)], axis=1)
    red, pivots = rational_rref(aug)
    if any(p >= cols for p in pivots):
        return None
    x = rat_matrix(zeros(cols, bb.shape[1]))
    for i, p in enumerate(pivots):
        x[p] = red[i, cols:]
    return x[:, 0] if vec else x


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def smith_normal_form(m: np.ndarray):
    """Smith normal form with transforms.

    Returns ``(d, u, v)`` with ``u @ m @ v == d``, ``u`` and ``v`` unimodular,
    ``d`` diagonal with nonnegative entries d1 | d2 | ... (zeros last).
    """
    a = int_matrix(m)
    r, c = a.shape
    u, v = identity(r), identity(c)
    for t in range(min(r, c)):
        while True:
            nz = [
                (abs(a[i, j]), i, j)
                for i in range(t, r)
                for j in range(t, c)
                if a[i, j] != 0
            ]
            if not nz:
                break
            _, pi, pj = min(nz)
            if pi != t:
                a[[t, pi]] = a[[pi, t]]
                u[[t, pi]] = u[[pi, t]]
            if pj != t:
                a[:, [t, pj]] = a[:, [pj, t]]
                v[:, [t, pj]] = v[:, [pj, t]]
            p = a[t, t]
            dirty = False
            for i in range(t + 1, r):
                q = a[i, t] // p
                if q:
                    a[i] = a[i] - q * a[t]
                    u[i] = u[i] - q * u[t]
                dirty = dirty or a[i, t] != 0
            for j in range(t + 1, c):
                q = a[t, j] // p
                if q:
                    a[:, j] = a[:, j] - q * a[:, t]
                    v[:, j] = v[:, j] - q * v[:, t]
                dirty = dirty or a[t, j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i, j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = a[t] + a[bad]
            u[t] = u[t] + u[bad]
        if a[t, t] < 0:
            a[t] = -a[t]
            u[t] = -u[t]
    return a, u, v


def elementary_divisors(m: np.ndarray) -> list[int]:
    d, _, _ = smith_normal_form(m)
    return [d[i, i] for i in range(min(d.shape))]


def hermite_normal_form(m: np.ndarray) -> np.ndarray:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    a = int_matrix(m)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # gcd-combine everything below r into row r
        for i in range(r + 1, rows):
            if a[i, c] == 0:
                continue
            x, y = a[r, c], a[i, c]
            g, s, t = _xgcd(x, y)
            row_r = s * a[r] + t * a[i]
            row_i = (x // g) * a[i] - (y // g) * a[r]
            a[r], a[i] = row_r, row_i
        if a[r, c] == 0:
            continue
        if a[r, c] < 0:
            a[r] = -a[r]
        p = a[r, c]
        for i in range(r):
            q = a[i, c] // p
            if q:
                a[i] = a[i] - q * a[r]
        r += 1
    return a[:r].copy() if r else int_matrix([], shape=(0, cols))


def _xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def integer_inverse(m: np.ndarray) -> np.ndarray:
    """Inverse of a unimodular integer matrix."""
    return to_int(rational_inverse(m))


def is_unimodular_matrix(m: np.ndarray) -> bool:
    return m.shape[0] == m.shape[1] and abs(determinant(m)) == 1


# ---------------------------------------------------------------------------
# Lattice-flavoured helpers (vectors are rows)


def kernel_basis_int(m: np.ndarray) -> np.ndarray:
    """Basis (as rows, in Hermite form) of the saturated kernel {x : m x = 0}."""
    m = int_matrix(m)
    n = m.shape[1]
    if m.shape[0] == 0:
        return identity(n)
    d, _, v = smith_normal_form(m)
    k = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    return hermite_normal_form(v[:, k:].T)


def saturate(sub_basis, ambient_rank: int) -> np.ndarray:
    """Basis of the primitive closure of the span of ``sub_basis`` (rows).

    Raises ``ValueError`` on linearly dependent input.
    """
    b = int_matrix(sub_basis, shape=(0, ambient_rank))
    k = b.shape[0]
    if k == 0:
        return int_matrix([], shape=(0, ambient_rank))
    if b.shape[1] != ambient_rank:
        raise ValueError("vector length does not match ambient rank")
    d, u, _ = smith_normal_form(b.T)
    if sum(1 for i in range(min(d.shape)) if d[i, i] != 0) != k:
        raise ValueError("dependent input vectors")
    uinv = integer_inverse(u)
    return hermite_normal_form(uinv[:, :k].T)


def integer_coordinates(basis: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Integer matrix C with C @ basis == vectors (all rows).

    Raises ``ValueError`` when some vector is outside the integer span.
    """
    coords = rational_coordinates(basis, vectors)
    if not is_integral(coords):
        raise ValueError("vector not in the integer span of the basis")
    return to_int(coords)


def rational_coordinates(basis: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Rational C with C @ basis == vectors; ``basis`` rows independent."""
    vectors = vectors.reshape(1, -1) if vectors.ndim == 1 else vectors
    if basis.shape[0] == 0:
        if any(x != 0 for x in vectors.flat):
            raise ValueError("vector not in the span of the basis")
        return rat_matrix(zeros(vectors.shape[0], 0))
    sol = solve_rational(basis.T, vectors.T)
    if sol is None:
        raise ValueError("vector not in the rational span of the basis")
    return sol.T


# ---------------------------------------------------------------------------
# Signature by symmetric congruence reduction


def signature_exact(g: np.ndarray) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric matrix, exactly.

    Congruence diagonalisation over Q: a nonzero diagonal pivot is split off
    as a 1x1 block; if the whole remaining diagonal is zero but an
    off-diagonal entry c is not, the block [[0, c], [c, 0]] is split off and
    contributes one positive and one negative square.
    """
    g = int_matrix(g)
    n = g.shape[0]
    if g.shape != (n, n) or any(g[i, j] != g[j, i] for i in range(n) for j in range(i)):
        raise ValueError("signature of a non-symmetric matrix")
    a = rat_matrix(g)
    pos = neg = 0
    while a.shape[0]:
        m = a.shape[0]
        piv = next((i for i in range(m) if a[i, i] != 0), None)
        if piv is not None:
            p = a[piv, piv]
            if p > 0:
                pos += 1
            else:
                neg += 1
            col = a[:, piv].copy()
            a = a - np.outer(col, col) / p
            keep = [i for i in range(m) if i != piv]
            a = a[np.ix_(keep, keep)]
            continue
        off = next(((i, j) for i in range(m) for j in range(i + 1, m) if a[i, j] != 0), None)
        if off is None:
            break
        i, j = off
        pos += 1
        neg += 1
        blk = a[np.ix_([i, j], [i, j])]
        inv = rational_inverse(blk)
        cols = a[:, [i, j]]
        a = a - cols @ inv @ cols.T
        keep = [k for k in range(m) if k not in (i, j)]
        a = a[np.ix_(keep, keep)]
    return pos, neg, n - pos - neg


# ---------------------------------------------------------------------------
# GF(2)


def mod2(m) -> np.ndarray:
    a = np.array(m, dtype=object)
    return np.array(a % 2, dtype=np.uint8) if a.size else np.zeros(a.shape, dtype=np.uint8)


def rref_mod2(m):
    """Reduced row echelon form over GF(2); returns (rref, pivot columns)."""
    a = mod2(m).copy()
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        for i in np.nonzero(a[:, c])[0]:
            if i != r:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod2(m) -> int:
    a = mod2(m)
    if a.size == 0:
        return 0
    return len(rref_mod2(a)[1])


def row_space_mod2(m) -> np.ndarray:
    """Canonical basis (reduced echelon rows) of the GF(2) row space."""
    a = mod2(m)
    if a.shape[0] == 0:
        return a.reshape(0, a.shape[1])
    red, piv = rref_mod2(a)
    return red[: len(piv)]


def nullspace_mod2(m, ncols: int | None = None) -> np.ndarray:
    """Basis (rows) of {x : m x = 0 over GF(2)}."""
    a = mod2(m)
    n = a.shape[1] if a.ndim == 2 and a.size else (ncols if ncols is not None else a.shape[-1])
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    red, piv = rref_mod2(a)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, p in enumerate(piv):
            out[k, p] = red[i, f]
    return out


def solve_mod2(a, b):
    """Some x with a x = b over GF(2), or None when inconsistent.

    Free variables are set to zero, so a uniquely solvable system returns
    its unique solution.
    """
    a = mod2(a)
    b = mod2(b).reshape(-1)
    rows, cols = a.shape
    if rows != b.shape[0]:
        raise ValueError("shape mismatch")
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    red, piv = rref_mod2(aug)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for i, p in enumerate(piv):
        x[p] = red[i, cols]
    return x


def in_span_mod2(basis, v) -> bool:
    basis = mod2(basis)
    if basis.shape[0] == 0:
        return not mod2(v).any()
    return solve_mod2(basis.T, v) is not None


def rows_mod2(m, n: int) -> np.ndarray:
    """``m`` mod 2 as a (k, n) array; empty input gives shape (0, n)."""
    a = mod2(m)
    return a.reshape(0, n) if a.size == 0 else a.reshape(-1, n)


def intersect_mod2(a, b, n: int) -> np.ndarray:
    """Row-space intersection of two GF(2) row bases of length n."""
    a = rows_mod2(a, n)
    b = rows_mod2(b, n)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, n), dtype=np.uint8)
    # x a = y b  <=>  [a; b]^T (x, y) = 0
    stacked = np.concatenate([a, b], axis=0)
    null = nullspace_mod2(stacked.T)
    if null.shape[0] == 0:
        return np.zeros((0, n), dtype=np.uint8)
    vecs = (null[:, : a.shape[0]].astype(np.int64) @ a.astype(np.int64)) % 2
    return row_space_mod2(vecs)


def same_row_space_mod2(a, b, n: int) -> bool:
    ra = row_space_mod2(rows_mod2(a, n))
    rb = row_space_mod2(rows_mod2(b, n))
    return ra.shape == rb.shape and bool((ra == rb).all())


def gcd_all(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, int(x))
    return g
