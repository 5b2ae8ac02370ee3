"""Chevalley-Eilenberg and Hochschild cochain complexes built from
structure tensors, with exact cohomology dimensions and cocycle tests.

Complexes are built columnwise from the differential formulas; d.d = 0 is
verified exactly at construction.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product as iproduct

from .algebra import StructureTensor, check_identities, generated_in_degree_one
from .linalg import Matrix, rank
from .rings import QQ


class NotJacobi(ValueError):
    pass


class NotAssociative(ValueError):
    pass


class NoUnit(ValueError):
    pass


class NotGenerated(ValueError):
    pass


class Cochain:
    """Multilinear map from basis tuples to coefficient vectors.

    For lie tensors the keys are strictly increasing index tuples and the
    map is understood to be alternating; for associative tensors the keys
    are arbitrary tuples.
    """

    __slots__ = ("kind", "dim", "degree", "values")

    def __init__(self, kind, dim, degree, values):
        self.kind = kind
        self.dim = dim
        self.degree = degree
        vals = {}
        for key, vec in values.items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError("key length != degree")
            vec = [Fraction(v) if not isinstance(v, Fraction) else v for v in vec]
            if len(vec) != dim:
                raise ValueError("value length != dim")
            if kind == "lie":
                if len(set(key)) != len(key):
                    continue  # alternating: repeated arguments give zero
                sorted_key, sign = _sort_sign(key)
                vec = [sign * v for v in vec]
                key = sorted_key
            if any(v != 0 for v in vec):
                prev = vals.get(key)
                if prev is None:
                    vals[key] = vec
                else:
                    vals[key] = [a + b for a, b in zip(prev, vec)]
        self.values = {k: tuple(v) for k, v in vals.items() if any(x != 0 for x in v)}

    def is_zero(self):
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.degree == other.degree
            and self.values == other.values
        )

    def __repr__(self):
        return f"Cochain({self.kind}, deg={self.degree}, {len(self.values)} keys)"


def _sort_sign(key):
    key = list(key)
    sign = 1
    for i in range(1, len(key)):
        j = i
        while j > 0 and key[j - 1] > key[j]:
            key[j - 1], key[j] = key[j], key[j - 1]
            sign = -sign
            j -= 1
    return tuple(key), sign


def lie_two_cochain(dim, entries):
    """Alternating degree-2 cochain from {(i,j): vector-or-{k: coeff}}."""
    vals = {}
    for key, v in entries.items():
        if isinstance(v, dict):
            vec = [Fraction(0)] * dim
            for k, c in v.items():
                vec[k] = Fraction(c)
        else:
            vec = list(v)
        vals[key] = vec
    return Cochain("lie", dim, 2, vals)


def wedge_cochain(dim, pair, target, coeff=1):
    """The cochain (e_a^ wedge e_b^) (x) e_target, i.e. (a,b) -> coeff*e_t."""
    a, b = pair
    vec = [Fraction(0)] * dim
    vec[target] = Fraction(coeff)
    return Cochain("lie", dim, 2, {(a, b): vec})


class CochainComplex:
    """spaces[i] = dim C^i; differentials[i]: C^i -> C^(i+1) as a Matrix.

    d_{i+1} . d_i = 0 is verified exactly at construction.
    """

    def __init__(self, kind, dim, bases, sparse_cols, complete_top=False):
        self.kind = kind
        self.dim = dim
        self.bases = bases  # bases[i]: list of (args tuple, target index)
        self.spaces = [len(b) for b in bases]
        self.index = [
            {key: pos for pos, key in enumerate(b)} for b in bases
        ]
        self.complete_top = complete_top
        self._cols = sparse_cols  # sparse_cols[i]: list of {row: Fraction}
        for i in range(len(sparse_cols) - 1):
            _check_square_zero(sparse_cols[i], sparse_cols[i + 1], i)
        self.differentials = [
            _materialize(cols, self.spaces[i + 1])
            for i, cols in enumerate(sparse_cols)
        ]

    def h_dim(self, i):
        """dim ker d_i - rank d_{i-1}."""
        if i < 0 or i >= len(self.spaces):
            raise ValueError("degree out of range")
        if i < len(self.differentials):
            k = self.spaces[i] - rank(self.differentials[i])
        elif self.complete_top:
            k = self.spaces[i]  # the complex genuinely ends here
        else:
            raise ValueError(
                f"H^{i} needs the complex built up to degree {i + 1}"
            )
        b = rank(self.differentials[i - 1]) if i >= 1 else 0
        return k - b

    def euler_characteristic(self):
        return sum((-1) ** i * d for i, d in enumerate(self.spaces))

    def flatten(self, cochain: Cochain):
        """Coordinates of a Cochain in the degree-i basis ordering."""
        i = cochain.degree
        vec = [Fraction(0)] * self.spaces[i]
        lookup = self.index[i]
        for key, coeffs in cochain.values.items():
            for m, c in enumerate(coeffs):
                if c != 0:
                    vec[lookup[(key, m)]] = c
        return vec


def _check_square_zero(cols_lo, cols_hi, i):
    for col, vec in enumerate(cols_lo):
        acc = {}
        for r, v in vec.items():
            for rr, vv in cols_hi[r].items():
                acc[rr] = acc.get(rr, Fraction(0)) + v * vv
        if any(x != 0 for x in acc.values()):
            raise AssertionError(f"d.d != 0 at degree {i}, column {col}")


def _materialize(cols, nrows):
    rows = [[Fraction(0)] * len(cols) for _ in range(nrows)]
    for c, vec in enumerate(cols):
        for r, v in vec.items():
            rows[r][c] = v
    return Matrix(QQ, rows)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg complex
# ---------------------------------------------------------------------------

def ce_complex(t: StructureTensor, max_degree=None) -> CochainComplex:
    """Adjoint-coefficient Lie algebra cochain complex of degrees
    0..max_degree (default: the full finite complex up to dim)."""
    if t.kind != "lie":
        raise ValueError("ce_complex needs a lie tensor")
    if not check_identities(t).passed:
        raise NotJacobi("tensor fails the Jacobi identity")
    tq = t if t.ring is QQ else t.with_ring(QQ)
    n = t.dim
    top = n if max_degree is None else min(max_degree, n)
    bases = []
    for i in range(top + 1):
        bases.append(
            [(S, m) for S in combinations(range(n), i) for m in range(n)]
        )
    index = [{key: pos for pos, key in enumerate(b)} for b in bases]
    c = tq.coeffs
    sparse = []
    for i in range(top):
        cols = []
        for (S, m) in bases[i]:
            col = {}
            # sum over insertions: (-1)^pos [e_a, f(S)]
            for a in range(n):
                if a in S:
                    continue
                T = tuple(sorted(S + (a,)))
                pos = T.index(a)
                sgn = -1 if pos % 2 else 1
                for l in range(n):
                    v = c[a][m][l]
                    if v != 0:
                        r = index[i + 1][(T, l)]
                        col[r] = col.get(r, Fraction(0)) + sgn * v
            # sum over replacing one argument by a bracket
            for spos, u in enumerate(S):
                rest = S[:spos] + S[spos + 1 :]
                eps = -1 if spos % 2 else 1
                for p in range(n):
                    if p in rest:
                        continue
                    for q in range(p + 1, n):
                        if q in rest:
                            continue
                        v = c[p][q][u]
                        if v == 0:
                            continue
                        T = tuple(sorted(rest + (p, q)))
                        a_pos = T.index(p)
                        b_pos = T.index(q)
                        sgn = -1 if (a_pos + b_pos) % 2 else 1
                        r = index[i + 1][(T, m)]
                        col[r] = col.get(r, Fraction(0)) + sgn * eps * v
            cols.append(col)
        sparse.append(cols)
    return CochainComplex("lie", n, bases, sparse, complete_top=(top == n))


def lie_h_dim(t: StructureTensor, i: int) -> int:
    if i > t.dim:
        return 0
    cx = ce_complex(t, max_degree=min(t.dim, i + 1))
    return cx.h_dim(i)


# ---------------------------------------------------------------------------
# Hochschild complex
# ---------------------------------------------------------------------------

H3_DIM_CAP = 4


def hochschild_complex(t: StructureTensor, max_degree=3, allow_large=False):
    """Full (non-normalized) Hochschild cochain complex Hom(A^(x)i, A) in
    degrees 0..max_degree for a unital associative tensor."""
    if t.kind not in ("associative", "graded_associative"):
        raise ValueError("hochschild_complex needs an associative tensor")
    if t.unit_index is None:
        raise NoUnit("tensor has no declared unit")
    if not check_identities(t).passed:
        raise NotAssociative("tensor fails associativity")
    if max_degree >= 4 and t.dim > H3_DIM_CAP and not allow_large:
        raise ValueError(
            f"degree-{max_degree} complex for dim {t.dim} exceeds the "
            f"default cap (pass allow_large=True)"
        )
    tq = t if t.ring is QQ else t.with_ring(QQ)
    n = t.dim
    bases = []
    for i in range(max_degree + 1):
        bases.append(
            [(T, m) for T in iproduct(range(n), repeat=i) for m in range(n)]
        )
    index = [{key: pos for pos, key in enumerate(b)} for b in bases]
    c = tq.coeffs
    sparse = []
    for i in range(max_degree):
        cols = []
        end_sign = 1 if (i + 1) % 2 == 0 else -1
        for (S, m) in bases[i]:
            col = {}
            # a_0 * f(a_1..a_i)
            for a0 in range(n):
                T = (a0,) + S
                for l in range(n):
                    v = c[a0][m][l]
                    if v != 0:
                        r = index[i + 1][(T, l)]
                        col[r] = col.get(r, Fraction(0)) + v
            # (-1)^(j+1) f(.. a_j a_{j+1} ..)
            for j in range(i):
                sgn = 1 if (j + 1) % 2 == 0 else -1
                for p in range(n):
                    for q in range(n):
                        v = c[p][q][S[j]]
                        if v == 0:
                            continue
                        T = S[:j] + (p, q) + S[j + 1 :]
                        r = index[i + 1][(T, m)]
                        col[r] = col.get(r, Fraction(0)) + sgn * v
            # (-1)^(i+1) f(a_0..a_{i-1}) * a_i
            for b in range(n):
                T = S + (b,)
                for l in range(n):
                    v = c[m][b][l]
                    if v != 0:
                        r = index[i + 1][(T, l)]
                        col[r] = col.get(r, Fraction(0)) + end_sign * v
            cols.append(col)
        sparse.append(cols)
    return CochainComplex(t.kind, n, bases, sparse)


def hochschild_h_dim(t: StructureTensor, i: int, allow_large=False) -> int:
    cx = hochschild_complex(t, max_degree=i + 1, allow_large=allow_large)
    return cx.h_dim(i)


# ---------------------------------------------------------------------------
# Cocycle tests
# ---------------------------------------------------------------------------

def _complex_for(t, degree):
    if t.kind == "lie":
        return ce_complex(t, max_degree=min(t.dim, degree + 1))
    return hochschild_complex(t, max_degree=degree + 1)


def is_two_cocycle(f: Cochain, t: StructureTensor, cx=None) -> bool:
    if f.degree != 2:
        raise ValueError("expected a degree-2 cochain")
    cx = cx or _complex_for(t, 2)
    if 2 >= len(cx.differentials):
        return True  # no degree-3 space: d_2 is the zero map
    vec = cx.flatten(f)
    img = cx.differentials[2].apply(vec)
    return all(x == 0 for x in img)


def class_nonzero(f: Cochain, t: StructureTensor, cx=None) -> bool:
    """True when f is not a coboundary (exact rank comparison)."""
    cx = cx or _complex_for(t, 2)
    d1 = cx.differentials[1]
    vec = cx.flatten(f)
    base_rank = rank(d1)
    aug = Matrix(
        QQ,
        [list(d1.rows[i]) + [vec[i]] for i in range(d1.nrows)],
    )
    return rank(aug) > base_rank


# ---------------------------------------------------------------------------
# Graded second cohomology in internal degree zero
# ---------------------------------------------------------------------------

def graded_h2_dim(t: StructureTensor) -> int:
    """Dimension of the internal-degree-0 component of the second
    Hochschild cohomology of a graded algebra generated in degree 1."""
    if t.kind != "graded_associative":
        raise ValueError("graded_h2_dim needs a graded tensor")
    ok, faildeg = generated_in_degree_one(t)
    if not ok:
        raise NotGenerated(f"not generated in degree 1 (fails at {faildeg})")
    cx = hochschild_complex(t, max_degree=3)
    degs = t.degrees

    def internal(key):
        args, m = key
        return degs[m] - sum(degs[a] for a in args)

    sel = [
        [pos for pos, key in enumerate(cx.bases[i]) if internal(key) == 0]
        for i in range(4)
    ]
    d1 = _submatrix(cx.differentials[1], sel[2], sel[1])
    d2 = _submatrix(cx.differentials[2], sel[3], sel[2])
    return (len(sel[2]) - rank(d2)) - rank(d1)


def _submatrix(m: Matrix, row_sel, col_sel):
    return Matrix(
        m.ring, [[m.rows[i][j] for j in col_sel] for i in row_sel]
    )
