"""Independent reference computations used by several test modules.

None of these go through the Smith-form machinery of the package.
"""

from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np


def gauss_inverse(rows):
    """Fraction Gauss-Jordan inverse of a small nonsingular integer matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def _frac(v):
    return tuple(x - (x.numerator // x.denominator) for x in v)


def dual_cosets(rows):
    """All classes of L*/L as fractional coordinate vectors, by BFS on G^-1 columns."""
    n = len(rows)
    inv = gauss_inverse(rows)
    gens = [_frac([inv[i][j] for i in range(n)]) for j in range(n)]
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    stack = [zero]
    while stack:
        x = stack.pop()
        for g in gens:
            y = _frac([a + b for a, b in zip(x, g)])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _pair(rows, x, y):
    return sum(x[i] * rows[i][j] * y[j] for i in range(len(rows)) for j in range(len(rows)))


def _mod(x, m):
    return x - m * (x.numerator // (x.denominator * m))


def coset_value_counts(rows):
    """Multisets of q (mod 2, when even) and b (mod 1) values over L*/L."""
    els = sorted(dual_cosets(rows))
    even = all(rows[i][i] % 2 == 0 for i in range(len(rows)))
    q = Counter(_mod(_pair(rows, x, x), 2) for x in els) if even else None
    b = Counter(_mod(_pair(rows, x, y), 1) for x in els for y in els)
    return len(els), q, b


def module_value_counts(module):
    els = list(module.elements())
    q = Counter(module.q(t) for t in els) if module.even else None
    b = Counter(module.b(s, t) for s in els for t in els)
    return len(els), q, b


def random_nondegenerate(rng, max_rank=5, bound=5):
    from realenriques import exact_linalg as xl

    while True:
        n = int(rng.integers(1, max_rank + 1))
        a = rng.integers(-bound, bound + 1, size=(n, n))
        m = np.triu(a) + np.triu(a, 1).T
        rows = [[int(x) for x in r] for r in m]
        if xl.determinant(xl.int_matrix(rows)) != 0:
            return rows


def three_summand_decompositions():
    """(label, ambient, s1, s2, s3) orthogonal finite-index decompositions of unimodular lattices.

    Each has a glue group of order at most 2^12.
    """
    from realenriques import catalog
    from realenriques.enriques import validate_triple
    from realenriques.lattice import Sublattice, direct_sum, orthogonal_complement

    out = []
    for spec in ("u1=swap;u23=diag:-1;e8=diag:-R1", "u1=-swap;u23=exchange:-swap;e8=exchange:R1"):
        t = validate_triple(catalog.k3_lattice(), catalog.tau_reference(), catalog.block_sigma(
            catalog.BlockSpec.parse(spec)))
        out.append((spec, catalog.k3_lattice(), t.fix_both, t.tfix_sneg, t.tau_neg))
    e8 = catalog.e8()
    frame = [list(r) for r in catalog.orthogonal_frame()]
    for first, second in (([0], [1, 2]), ([0, 1], [2, 3]), ([0], [1, 2, 3])):
        s1 = Sublattice(e8, [frame[i] for i in first])
        s2 = Sublattice(e8, [frame[i] for i in second])
        both = Sublattice(e8, [frame[i] for i in first + second])
        out.append((f"E8 frame {first}|{second}", e8, s1, s2, orthogonal_complement(both)))
    uu = direct_sum([catalog.hyperbolic_plane(), catalog.hyperbolic_plane()])
    out.append(("U+U diagonal", uu, Sublattice(uu, [[1, 1, 0, 0]]), Sublattice(uu, [[1, -1, 0, 0], [0, 0, 1, 1]]),
                Sublattice(uu, [[0, 0, 1, -1]])))
    return out


def check_against_oracle(rows):
    """Order, q/b relations and (small cases) full value multisets against the coset oracle."""
    from realenriques import exact_linalg as xl
    from realenriques.lattice import Lattice

    lat = Lattice(xl.int_matrix(rows))
    a = lat.discriminant
    assert a.order == abs(lat.det)
    # q/b consistency on generators
    k = len(a.divisors)
    gens = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    for s in gens:
        neg = tuple((-x) % d for x, d in zip(s, a.divisors))
        if a.even:
            assert a.q(neg) == a.q(s)
        for t in gens:
            assert a.b(s, t) == a.b(t, s)
            if a.even:
                diff = a.q(a.add(s, t)) - a.q(s) - a.q(t) - 2 * a.b(s, t)
                assert diff.denominator == 1 and diff.numerator % 2 == 0
    if abs(lat.det) <= 64:
        assert coset_value_counts(rows) == module_value_counts(a)


def half_square_classes(t):
    """Brute force over the tau-negated lattice mod 2: kernel and x^2/2 on the quotient."""
    g = t.tau_neg.gram
    n = g.shape[0]
    vecs = [np.array(v, dtype=object) for v in product((0, 1), repeat=n)]
    kernel = [v for v in vecs if not ((v @ g) % 2).any()]
    values = {}
    for v in vecs:
        key = min(tuple(int(x) for x in (v + k) % 2) for k in kernel)
        values.setdefault(key, set()).add(int((v @ g @ v) // 2 % 2))
    return len(kernel), values
