"""Structure-constant tensors for Lie, associative and graded associative
algebras, with identity checking, base change, specialization at t=0 and
basic invariants.

The tensor stores c[i][j][k]: the coefficient of basis element k in the
product (or bracket) of basis elements i and j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Singular, det, inverse, rank
from .rings import (
    LAURENT,
    QQ,
    RATFUNC,
    LaurentPoly,
    LaurentRing,
    RationalFunction,
    RationalFunctionField,
    Ring,
    SeriesRing,
    TruncSeries,
)

KINDS = ("lie", "associative", "graded_associative")


class DegreeMixing(ValueError):
    """A matrix acting on a graded tensor must preserve degrees."""


class NegativeValuation(ValueError):
    """specialize() hit entries with negative t-valuation."""

    def __init__(self, entries):
        self.entries = entries
        super().__init__(f"negative valuation at {entries}")


@dataclass
class IdentityReport:
    """Outcome of Jacobi / associativity checking; failures are data."""

    passed: bool
    violations: list  # [( (i,j,k), residual vector ), ...]

    def __bool__(self):
        return self.passed


class StructureTensor:
    __slots__ = ("kind", "dim", "ring", "coeffs", "degrees", "unit_index")

    def __init__(self, kind, dim, coeffs, ring=QQ, degrees=None, unit_index=None):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.dim = dim
        self.ring = ring
        c = [[[ring.coerce(coeffs[i][j][k]) for k in range(dim)]
              for j in range(dim)] for i in range(dim)]
        self.coeffs = tuple(tuple(tuple(r) for r in p) for p in c)
        if kind == "lie":
            for i in range(dim):
                for j in range(i, dim):
                    for k in range(dim):
                        lhs = self.coeffs[i][j][k]
                        rhs = -self.coeffs[j][i][k]
                        if not _ring_eq(ring, lhs, rhs):
                            raise ValueError(
                                f"lie tensor not antisymmetric at ({i},{j},{k})"
                            )
        if kind == "graded_associative":
            if degrees is None:
                raise ValueError("graded tensor needs degrees")
            degrees = tuple(int(d) for d in degrees)
            if len(degrees) != dim:
                raise ValueError("degrees length mismatch")
            for i in range(dim):
                for j in range(dim):
                    for k in range(dim):
                        if degrees[k] != degrees[i] + degrees[j] and not ring.is_zero_elem(
                            self.coeffs[i][j][k]
                        ):
                            raise ValueError(
                                f"entry ({i},{j},{k}) violates the grading"
                            )
        elif degrees is not None:
            degrees = tuple(int(d) for d in degrees)
        self.degrees = degrees
        if unit_index is not None:
            if kind == "lie":
                raise ValueError("lie tensors have no unit")
            u = unit_index
            for i in range(dim):
                for k in range(dim):
                    want = ring.one if k == i else ring.zero
                    if not _ring_eq(ring, self.coeffs[u][i][k], want) or not _ring_eq(
                        ring, self.coeffs[i][u][k], want
                    ):
                        raise ValueError("declared unit is not a two-sided unit")
        self.unit_index = unit_index

    def product(self, i, j):
        """Coefficient vector of e_i * e_j (resp. [e_i, e_j])."""
        return list(self.coeffs[i][j])

    def mult_vectors(self, v, w):
        """Bilinear extension of the product to coefficient vectors."""
        n = self.dim
        out = [self.ring.zero] * n
        for i in range(n):
            a = v[i]
            if self.ring.is_zero_elem(a):
                continue
            for j in range(n):
                b = w[j]
                if self.ring.is_zero_elem(b):
                    continue
                cij = self.coeffs[i][j]
                ab = a * b
                for k in range(n):
                    if not self.ring.is_zero_elem(cij[k]):
                        out[k] = out[k] + ab * cij[k]
        return out

    def with_ring(self, ring):
        return StructureTensor(
            self.kind,
            self.dim,
            [[[ring.coerce(x) for x in r] for r in p] for p in self.coeffs],
            ring=ring,
            degrees=self.degrees,
            unit_index=self.unit_index,
        )

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        if (self.kind, self.dim) != (other.kind, other.dim):
            return False
        return all(
            self.coeffs[i][j][k] == other.coeffs[i][j][k]
            for i in range(self.dim)
            for j in range(self.dim)
            for k in range(self.dim)
        )

    def __hash__(self):
        raise TypeError("StructureTensor is unhashable")

    def is_zero(self):
        return all(
            self.ring.is_zero_elem(x)
            for p in self.coeffs for r in p for x in r
        )

    def __repr__(self):
        return f"StructureTensor({self.kind}, dim={self.dim}, ring={self.ring!r})"


def _ring_eq(ring, a, b):
    return ring.coerce(a) == ring.coerce(b)


def _dense(dim, ring, sparse):
    c = [[[ring.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), vec in sparse.items():
        for k, val in vec.items():
            c[i][j][k] = ring.coerce(val)
    return c


def lie_tensor(dim, brackets, ring=QQ):
    """Build a lie StructureTensor from brackets {(i,j): {k: coeff}} given
    for i < j; the antisymmetric mirror is filled in automatically."""
    c = [[[ring.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), vec in brackets.items():
        if i == j:
            raise ValueError("diagonal brackets vanish identically")
        if i > j:
            raise ValueError("give lie brackets for i < j only")
        for k, val in vec.items():
            v = ring.coerce(val)
            c[i][j][k] = v
            c[j][i][k] = -v
    return StructureTensor("lie", dim, c, ring=ring)


def associative_tensor(dim, products, ring=QQ, unit_index=None):
    return StructureTensor(
        "associative", dim, _dense(dim, ring, products), ring=ring,
        unit_index=unit_index,
    )


def graded_tensor(dim, products, degrees, ring=QQ, unit_index=None):
    return StructureTensor(
        "graded_associative", dim, _dense(dim, ring, products), ring=ring,
        degrees=degrees, unit_index=unit_index,
    )


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------

def check_identities(t: StructureTensor) -> IdentityReport:
    """Jacobi identity (lie) or associativity (associative kinds), checked
    exactly on every triple of basis vectors."""
    n = t.dim
    c = t.coeffs
    ring = t.ring
    violations = []
    if t.kind == "lie":
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    res = [ring.zero] * n
                    for m in range(n):
                        for (a, b, mm) in ((i, j, k), (j, k, i), (k, i, j)):
                            inner = c[b][mm][m]
                            if not ring.is_zero_elem(inner):
                                row = c[a][m]
                                for l in range(n):
                                    if not ring.is_zero_elem(row[l]):
                                        res[l] = res[l] + inner * row[l]
                    if any(not ring.is_zero_elem(x) for x in res):
                        violations.append(((i, j, k), res))
    else:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    res = [ring.zero] * n
                    for m in range(n):
                        a = c[i][j][m]
                        if not ring.is_zero_elem(a):
                            row = c[m][k]
                            for l in range(n):
                                if not ring.is_zero_elem(row[l]):
                                    res[l] = res[l] + a * row[l]
                        b = c[j][k][m]
                        if not ring.is_zero_elem(b):
                            row = c[i][m]
                            for l in range(n):
                                if not ring.is_zero_elem(row[l]):
                                    res[l] = res[l] - b * row[l]
                    if any(not ring.is_zero_elem(x) for x in res):
                        violations.append(((i, j, k), res))
    return IdentityReport(passed=not violations, violations=violations)


# ---------------------------------------------------------------------------
# GL action, specialization
# ---------------------------------------------------------------------------

def _action_field(ring):
    if isinstance(ring, (RationalFunctionField, LaurentRing)):
        return RATFUNC
    if isinstance(ring, SeriesRing):
        raise TypeError("cannot act on truncated-series tensors")
    return QQ


def act(g: Matrix, t: StructureTensor) -> StructureTensor:
    """Base change: the new tensor represents the same multiplication in
    the basis g^(-1)(e_0), ..., g^(-1)(e_{n-1})."""
    n = t.dim
    if g.nrows != n or g.ncols != n:
        raise ValueError("matrix dimension mismatch")
    field = _action_field(g.ring)
    if t.kind == "graded_associative":
        for i in range(n):
            for j in range(n):
                if t.degrees[i] != t.degrees[j] and not g.ring.is_zero_elem(
                    g.rows[i][j]
                ):
                    raise DegreeMixing(f"entry ({i},{j}) mixes degrees")
    gf = g if g.ring is field else g.map_entries(field.coerce, field)
    if det(gf) == field.zero:
        raise Singular("witness matrix is singular")
    h = inverse(gf)
    tf = t if t.ring is field else t.with_ring(field)
    c = tf.coeffs
    zero = field.zero
    out = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for p in range(n):
        for q in range(n):
            cpq = c[p][q]
            if all(x == zero for x in cpq):
                continue
            # image of c[p][q] under g, computed once
            gc = [zero] * n
            for r in range(n):
                if cpq[r] != zero:
                    for k in range(n):
                        if gf.rows[k][r] != zero:
                            gc[k] = gc[k] + gf.rows[k][r] * cpq[r]
            for i in range(n):
                hpi = h.rows[p][i]
                if hpi == zero:
                    continue
                for j in range(n):
                    hqj = h.rows[q][j]
                    if hqj == zero:
                        continue
                    f = hpi * hqj
                    row = out[i][j]
                    for k in range(n):
                        if gc[k] != zero:
                            row[k] = row[k] + f * gc[k]
    return StructureTensor(
        t.kind, n, out, ring=field, degrees=t.degrees, unit_index=t.unit_index
    )


def scaling_witness(n, ring=RATFUNC):
    """t^(-1) * identity; the universal witness degenerating anything to
    the zero multiplication."""
    tm1 = RationalFunction.t_power(-1)
    return Matrix(ring, [[tm1 if i == j else 0 for j in range(n)] for i in range(n)])


def specialize(t: StructureTensor) -> StructureTensor:
    """Evaluate every coefficient at t=0; requires valuations >= 0."""
    n = t.dim
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x = t.coeffs[i][j][k]
                if isinstance(x, (LaurentPoly, RationalFunction)):
                    v = x.valuation()
                    if v is not math.inf and v < 0:
                        bad.append((i, j, k))
    if bad:
        raise NegativeValuation(bad)
    out = [[[_eval_zero(t.coeffs[i][j][k]) for k in range(n)]
            for j in range(n)] for i in range(n)]
    return StructureTensor(
        t.kind, n, out, ring=QQ, degrees=t.degrees, unit_index=t.unit_index
    )


def _eval_zero(x):
    if isinstance(x, (LaurentPoly, RationalFunction, TruncSeries)):
        return x.eval_at_zero()
    return Fraction(x)


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

def bracket_matrix(t: StructureTensor) -> Matrix:
    """n x C(n,2) matrix whose columns are the brackets [e_i, e_j], i<j."""
    if t.kind != "lie":
        raise ValueError("bracket_matrix needs a lie tensor")
    field = _action_field(t.ring)
    tf = t if t.ring is field else t.with_ring(field)
    cols = []
    for i in range(t.dim):
        for j in range(i + 1, t.dim):
            cols.append(tf.product(i, j))
    return Matrix(field, cols).transpose()


def derived_rank(t: StructureTensor) -> int:
    """Dimension of the derived algebra [g, g] (the paper-style rank)."""
    return rank(bracket_matrix(t))


def derivation_dim(t: StructureTensor) -> int:
    """Dimension of the space of derivations, as the kernel of the linear
    system D[a,b] = [Da,b] + [a,Db] over all basis pairs."""
    n = t.dim
    field = _action_field(t.ring)
    tf = t if t.ring is field else t.with_ring(field)
    c = tf.coeffs
    zero = field.zero
    pairs = (
        [(i, j) for i in range(n) for j in range(i + 1, n)]
        if t.kind == "lie"
        else [(i, j) for i in range(n) for j in range(n)]
    )
    rows = []
    # unknown D[k][l] flattened as k*n + l, D(e_l) = sum_k D[k][l] e_k
    for (i, j) in pairs:
        for l in range(n):
            row = [zero] * (n * n)
            for m in range(n):
                # D applied to the product: c_{ij}^m D[l][m]
                if c[i][j][m] != zero:
                    row[l * n + m] = row[l * n + m] + c[i][j][m]
                # [D e_i, e_j]: D[m][i] c_{mj}^l
                if c[m][j][l] != zero:
                    row[m * n + i] = row[m * n + i] - c[m][j][l]
                # [e_i, D e_j]: D[m][j] c_{im}^l
                if c[i][m][l] != zero:
                    row[m * n + j] = row[m * n + j] - c[i][m][l]
            rows.append(row)
    if not rows:
        return n * n
    m = Matrix(field, rows)
    return m.ncols - rank(m)


def orbit_dim(t: StructureTensor) -> int:
    """dim GL - dim stabilizer = n^2 - dim Der."""
    return t.dim * t.dim - derivation_dim(t)


def generated_in_degree_one(t: StructureTensor):
    """(flag, failing_degree): whether powers of the degree-1 part span
    every nonzero graded component."""
    if t.kind != "graded_associative":
        raise ValueError("needs a graded tensor")
    n = t.dim
    by_deg = {}
    for i, d in enumerate(t.degrees):
        by_deg.setdefault(d, []).append(i)
    maxdeg = max(t.degrees) if n else 0
    one_idx = by_deg.get(1, [])
    # span of A_1^d, as coefficient vectors inside A_d
    span_d = [_basis_vec(n, i) for i in one_idx]
    for d in range(2, maxdeg + 1):
        span_d = _products_span(t, span_d, one_idx)
        target = by_deg.get(d, [])
        if not target:
            continue
        have = rank(Matrix(QQ, span_d)) if span_d else 0
        if have < len(target):
            return False, d
    return True, None


def _basis_vec(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _products_span(t, vectors, one_idx):
    out = []
    for v in vectors:
        for i in one_idx:
            out.append(t.mult_vectors(v, _basis_vec(t.dim, i)))
    return out
