"""Shared builders and independent oracles for the test suite.

The oracles here deliberately recompute results through different
algorithms than the library (minimal resolutions instead of the bar
complex, the normalized instead of the full Hochschild complex, direct
linearization of the Jacobi map), so agreement is meaningful.
"""

from fractions import Fraction

from degenalg.algebra import graded_tensor, lie_tensor
from degenalg.cohomology import hochschild_complex
from degenalg.koszul import TruncFreeComplex
from degenalg.linalg import Matrix, inverse, kernel_basis, rank
from degenalg.rings import LAURENT, QQ, RATFUNC, LaurentPoly, RationalFunction


# ---------------------------------------------------------------------------
# Random generators
# ---------------------------------------------------------------------------

def random_invertible(rng, n, spread=3):
    """Random invertible rational matrix: unipotent lower * unipotent
    upper * diagonal(+-1), so the determinant is +-1."""
    lo = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    up = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i > j:
                lo[i][j] = Fraction(rng.randint(-spread, spread))
            elif i < j:
                up[i][j] = Fraction(rng.randint(-spread, spread))
    d = [[Fraction(rng.choice((-1, 1))) if i == j else Fraction(0)
          for j in range(n)] for i in range(n)]
    return Matrix(QQ, lo) * Matrix(QQ, up) * Matrix(QQ, d)


def random_lie_cochain_entries(rng, n, spread=3):
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            vec = [Fraction(rng.randint(-spread, spread)) for _ in range(n)]
            if any(v != 0 for v in vec):
                out[(i, j)] = vec
    return out


def random_polynomial(rng, max_deg=2, spread=2):
    return LaurentPoly(
        {e: Fraction(rng.randint(-spread, spread)) for e in range(max_deg + 1)}
    )


def random_trunc_complex(rng, order, max_rank=4):
    """Three-term complex of free truncated-series modules with d.d = 0
    exactly and vanishing reduced homology in the middle, built from an
    invertible unipotent matrix S: d2 = first columns of S, d1 = last
    rows of S^(-1)."""
    a = rng.randint(1, max_rank - 1)
    b = rng.randint(1, max_rank - a)
    total = a + b
    lo = [[RationalFunction.constant(1) if i == j else RationalFunction.constant(0)
           for j in range(total)] for i in range(total)]
    up = [[RationalFunction.constant(1) if i == j else RationalFunction.constant(0)
           for j in range(total)] for i in range(total)]
    for i in range(total):
        for j in range(total):
            if i > j:
                lo[i][j] = RationalFunction(random_polynomial(rng))
            elif i < j:
                up[i][j] = RationalFunction(random_polynomial(rng))
    s = Matrix(RATFUNC, lo) * Matrix(RATFUNC, up)
    s_inv = inverse(s)
    d2 = Matrix(RATFUNC, [[s.rows[i][j] for j in range(a)] for i in range(total)])
    d1 = Matrix(RATFUNC, [[s_inv.rows[a + i][j] for j in range(total)] for i in range(b)])
    from degenalg.rings import SeriesRing

    ring = SeriesRing(order)
    to_ring = lambda m: m.map_entries(ring.coerce, ring)
    return TruncFreeComplex([b, total, a], [to_ring(d1), to_ring(d2)], order)


# ---------------------------------------------------------------------------
# Graded test algebras
# ---------------------------------------------------------------------------

def truncated_poly(n):
    """K[x]/(x^n) with |x| = 1, basis 1, x, ..., x^(n-1)."""
    prods = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                prods[(i, j)] = {i + j: 1}
    return graded_tensor(n, prods, degrees=list(range(n)), unit_index=0)


def exterior_xy():
    """Exterior algebra on two degree-1 generators; basis 1, x, y, xy."""
    return graded_tensor(
        4,
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1},
         (2, 0): {2: 1}, (0, 3): {3: 1}, (3, 0): {3: 1},
         (1, 2): {3: 1}, (2, 1): {3: -1}},
        degrees=[0, 1, 1, 2], unit_index=0,
    )


def mono_xy():
    """K<x,y>/(x^2, y^2, yx): quadratic monomial, basis 1, x, y, xy."""
    return graded_tensor(
        4,
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1},
         (2, 0): {2: 1}, (0, 3): {3: 1}, (3, 0): {3: 1}, (1, 2): {3: 1}},
        degrees=[0, 1, 1, 2], unit_index=0,
    )


def mono_x2():
    """K<x,y>/(xy, yx, y^2, x^3): monomial, basis 1, x, y, x^2."""
    return graded_tensor(
        4,
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1},
         (2, 0): {2: 1}, (0, 3): {3: 1}, (3, 0): {3: 1}, (1, 1): {3: 1}},
        degrees=[0, 1, 1, 2], unit_index=0,
    )


def triv3():
    """K<x,y>/(all four quadratic monomials): basis 1, x, y."""
    return graded_tensor(
        3,
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
         (0, 2): {2: 1}, (2, 0): {2: 1}},
        degrees=[0, 1, 1], unit_index=0,
    )


def path6():
    """K<x,y>/(y^2, yx, x^3): monomial, basis 1, x, y, x^2, xy, x^2y."""
    # products of the words 1, x, y, x^2, xy, x^2y
    prods = {(0, i): {i: 1} for i in range(6)}
    prods.update({(i, 0): {i: 1} for i in range(1, 6)})
    prods[(1, 1)] = {3: 1}   # x*x = x^2
    prods[(1, 2)] = {4: 1}   # x*y = xy
    prods[(1, 4)] = {5: 1}   # x*(xy) = x^2 y
    prods[(3, 2)] = {5: 1}   # x^2*y = x^2 y
    return graded_tensor(
        6, prods, degrees=[0, 1, 1, 2, 2, 3], unit_index=0
    )


MONOMIAL_TEST_ALGEBRAS = {
    "kx2": truncated_poly(2),
    "kx3": truncated_poly(3),
    "kx4": truncated_poly(4),
    "triv3": triv3(),
    "mono_xy": mono_xy(),
    "mono_x2": mono_x2(),
    "path6": path6(),
}


# ---------------------------------------------------------------------------
# Oracle: graded minimal resolution
# ---------------------------------------------------------------------------

def minimal_resolution_betti(t, s, d):
    """Betti numbers of the residue field by explicit minimal graded free
    resolution: iterate kernel computation and minimal-generator
    selection degree by degree.  Independent of the bar complex."""
    n = t.dim
    degs = t.degrees
    unit = t.unit_index
    c = t.coeffs

    def free_slices(shifts):
        slices = {}
        for g, sh in enumerate(shifts):
            for a in range(n):
                j = sh + degs[a]
                if j <= d:
                    slices.setdefault(j, []).append((g, a))
        return slices

    def index_of(slices):
        return {j: {key: p for p, key in enumerate(lst)} for j, lst in slices.items()}

    def mult_into(slices, idx, b, j, vec):
        """e_b * (vector in slice j) inside the same free module."""
        out_j = j + degs[b]
        out = [Fraction(0)] * len(slices.get(out_j, []))
        for p, coeff in enumerate(vec):
            if coeff == 0:
                continue
            g, a = slices[j][p]
            row = c[b][a]
            for k in range(n):
                if row[k] != 0:
                    out[idx[out_j][(g, k)]] += coeff * row[k]
        return out

    betti = {(0, 0): 1}
    shifts = [0]
    slices = free_slices(shifts)
    idx = index_of(slices)
    syz = {}
    for j, lst in slices.items():
        if j == 0:
            continue
        vecs = []
        for p in range(len(lst)):
            v = [Fraction(0)] * len(lst)
            v[p] = Fraction(1)
            vecs.append(v)
        syz[j] = vecs

    for i in range(1, s + 1):
        jz = {}
        for j in sorted(syz):
            acc = []
            for b in range(n):
                if b == unit or degs[b] == 0:
                    continue
                for z in syz.get(j - degs[b], []):
                    acc.append(mult_into(slices, idx, b, j - degs[b], z))
            jz[j] = [v for v in acc if any(x != 0 for x in v)]
        new_gens = []
        for j in sorted(syz):
            span = list(jz.get(j, []))
            cur_rank = rank(Matrix(QQ, span)) if span else 0
            base = cur_rank
            for z in syz[j]:
                trial = span + [z]
                r2 = rank(Matrix(QQ, trial))
                if r2 > cur_rank:
                    span = trial
                    cur_rank = r2
                    new_gens.append((j, z))
            if cur_rank > base:
                betti[(i, j)] = cur_rank - base
        if not new_gens:
            break
        old_slices, old_idx = slices, idx
        shifts = [j for (j, _) in new_gens]
        slices = free_slices(shifts)
        idx = index_of(slices)
        syz = {}
        for jj, lst in slices.items():
            cols = []
            for (g, a) in lst:
                jg, z = new_gens[g]
                cols.append(mult_into(old_slices, old_idx, a, jg, z))
            width = len(old_slices.get(jj, []))
            m = Matrix(QQ, [[cols[q][r] for q in range(len(cols))]
                            for r in range(width)])
            kb = kernel_basis(m)
            if kb:
                syz[jj] = kb
    return {k: v for k, v in betti.items() if k[0] <= s and k[1] <= d}


# ---------------------------------------------------------------------------
# Oracle: normalized Hochschild complex
# ---------------------------------------------------------------------------

def normalized_hochschild_h_dim(t, i):
    """H^i from the subcomplex of cochains vanishing whenever an argument
    is the unit.  Asserts that the subcomplex is genuinely closed under
    the differential before restricting."""
    cx = hochschild_complex(t, max_degree=i + 1)
    unit = t.unit_index
    sel = [
        [pos for pos, (args, m) in enumerate(cx.bases[k]) if unit not in args]
        for k in range(i + 2)
    ]

    def restrict(dmat, rows, cols):
        rows_set = set(rows)
        for cpos in cols:
            for r in range(dmat.nrows):
                if r not in rows_set and dmat.rows[r][cpos] != 0:
                    raise AssertionError("normalized subcomplex not closed")
        return Matrix(QQ, [[dmat.rows[r][cpos] for cpos in cols] for r in rows])

    d_i = restrict(cx.differentials[i], sel[i + 1], sel[i])
    ker = len(sel[i]) - rank(d_i)
    if i == 0:
        return ker
    d_prev = restrict(cx.differentials[i - 1], sel[i], sel[i - 1])
    return ker - rank(d_prev)


# ---------------------------------------------------------------------------
# Oracle: linearized Jacobi map
# ---------------------------------------------------------------------------

def jacobi_residual(coeffs, n):
    """The cyclic Jacobi sums of an arbitrary (possibly invalid)
    antisymmetric coefficient array, one vector per triple i<j<k."""
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                res = [Fraction(0)] * n
                for (a, b, cc) in ((i, j, k), (j, k, i), (k, i, j)):
                    for m in range(n):
                        inner = coeffs[b][cc][m]
                        if inner != 0:
                            for l in range(n):
                                v = coeffs[a][m][l]
                                if v != 0:
                                    res[l] += inner * v
                out[(i, j, k)] = res
    return out


def jacobi_linearization(t):
    """Matrix of the derivative of the Jacobi map at the tensor t, with
    columns indexed by antisymmetric 2-cochain basis elements (pair, m)
    and rows by (triple, component)."""
    n = t.dim
    base = [[[Fraction(x) for x in r] for r in p] for p in t.coeffs]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    triples = [(i, j, k) for i in range(n) for j in range(i + 1, n)
               for k in range(j + 1, n)]
    j0 = jacobi_residual(base, n)
    cols = []
    for (i, j) in pairs:
        for m in range(n):
            psi = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
            psi[i][j][m] = Fraction(1)
            psi[j][i][m] = Fraction(-1)
            mixed = [
                [[base[a][b][k] + psi[a][b][k] for k in range(n)]
                 for b in range(n)] for a in range(n)
            ]
            j1 = jacobi_residual(mixed, n)
            j2 = jacobi_residual(psi, n)
            col = []
            for tr in triples:
                for l in range(n):
                    col.append(j1[tr][l] - j0[tr][l] - j2[tr][l])
            cols.append(col)
    return Matrix(QQ, cols).transpose()
