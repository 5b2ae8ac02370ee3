"""Graded Tor via the reduced bar complex, the N-Koszul decision with its
jump function, degeneration-transfer consistency, and the Nakayama-style
lifting check for truncated complexes of free modules over the series
ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import StructureTensor, check_identities, generated_in_degree_one
from .cohomology import NotGenerated
from .degeneration import Witness, verify_witness
from .linalg import Inconsistent, Matrix, kernel_basis, rank, solve
from .rings import QQ, SeriesRing, TruncSeries


class NotAComplex(ValueError):
    pass


class GradedAlgebra:
    """A unital graded_associative tensor with A_0 = K*unit, nonnegative
    degrees, and a verified generated-in-degree-one flag."""

    __slots__ = ("tensor", "generated", "failing_degree")

    def __init__(self, tensor: StructureTensor):
        if tensor.kind != "graded_associative":
            raise ValueError("GradedAlgebra needs a graded_associative tensor")
        if tensor.unit_index is None:
            raise ValueError("GradedAlgebra needs a declared unit")
        if not check_identities(tensor).passed:
            raise ValueError("tensor fails associativity")
        degs = tensor.degrees
        if any(d < 0 for d in degs):
            raise ValueError("degrees must be nonnegative")
        zero_deg = [i for i, d in enumerate(degs) if d == 0]
        if zero_deg != [tensor.unit_index]:
            raise ValueError("degree-0 component must be spanned by the unit")
        self.tensor = tensor if tensor.ring is QQ else tensor.with_ring(QQ)
        self.generated, self.failing_degree = generated_in_degree_one(self.tensor)


def check_generated_degree_one(t: StructureTensor):
    """True plus None, or False plus the first degree where products of
    the degree-1 part fail to span."""
    return generated_in_degree_one(t)


@dataclass
class TorTable:
    dims: dict          # (i, j) -> dimension (zero cells omitted)
    max_i: int
    max_j: int

    def dim(self, i, j):
        return self.dims.get((i, j), 0)

    def nonzero_cells(self):
        return sorted(k for k, v in self.dims.items() if v)

    def row(self, i):
        return {j: self.dims[(i, j)] for (ii, j) in self.dims if ii == i}


class _BarComplex:
    """Reduced bar complex of a graded algebra: i-chains are i-fold tensor
    powers of the augmentation ideal, graded by total internal degree."""

    def __init__(self, alg: GradedAlgebra):
        t = alg.tensor
        self.t = t
        self.j_basis = [i for i in range(t.dim) if i != t.unit_index]
        self.deg = {i: t.degrees[i] for i in self.j_basis}
        self._tuples = {}

    def tuples(self, length, degree):
        """All tuples of J-basis indices of given length and total degree."""
        key = (length, degree)
        if key in self._tuples:
            return self._tuples[key]
        if length == 0:
            out = [()] if degree == 0 else []
        elif degree < length:
            out = []
        else:
            out = []
            for i in self.j_basis:
                d = self.deg[i]
                if d <= degree:
                    for rest in self.tuples(length - 1, degree - d):
                        out.append((i,) + rest)
        self._tuples[key] = out
        return out

    def differential(self, i, j) -> Matrix:
        """d_i restricted to internal degree j: J^(x)i -> J^(x)(i-1)."""
        dom = self.tuples(i, j)
        cod = self.tuples(i - 1, j)
        cod_index = {w: p for p, w in enumerate(cod)}
        c = self.t.coeffs
        cols = []
        for w in dom:
            col = {}
            for p in range(i - 1):
                sgn = 1 if p % 2 == 0 else -1
                prod = c[w[p]][w[p + 1]]
                for k in self.j_basis:
                    v = prod[k]
                    if v != 0:
                        target = w[:p] + (k,) + w[p + 2 :]
                        r = cod_index[target]
                        col[r] = col.get(r, Fraction(0)) + sgn * v
            cols.append(col)
        rows = [[Fraction(0)] * len(dom) for _ in range(len(cod))]
        for cidx, col in enumerate(cols):
            for r, v in col.items():
                rows[r][cidx] = v
        return Matrix(QQ, rows), len(dom), len(cod)


def tor_dims(t: StructureTensor, s: int, d: int) -> TorTable:
    """Betti table dims[(i,j)] = dim Tor_{i,j}(K, K) for i <= s, j <= d,
    computed from the reduced bar complex cell by cell."""
    alg = GradedAlgebra(t)
    if not alg.generated:
        raise NotGenerated(
            f"not generated in degree 1 (fails at degree {alg.failing_degree})"
        )
    bar = _BarComplex(alg)
    dims = {}
    for i in range(s + 1):
        for j in range(d + 1):
            if i == 0:
                if j == 0:
                    dims[(0, 0)] = 1
                continue
            if j < i:
                continue
            dom = bar.tuples(i, j)
            if not dom:
                continue
            d_i, ncols, _ = bar.differential(i, j)
            k = ncols - rank(d_i)
            d_next, _, _ = bar.differential(i + 1, j)
            h = k - rank(d_next)
            if h:
                dims[(i, j)] = h
    return TorTable(dims=dims, max_i=s, max_j=d)


def jump(i: int, n: int) -> int:
    """Internal degree where Tor_i of an n-homogeneous Koszul algebra is
    allowed to live: even i -> (i/2)*n, odd i -> ((i-1)/2)*n + 1."""
    if i < 0 or n < 2:
        raise ValueError("need i >= 0 and N >= 2")
    return (i // 2) * n + (i % 2)


@dataclass
class KoszulVerdict:
    status: str          # koszul_up_to_bounds | not_koszul | bounds_insufficient
    witness_cell: tuple | None
    n: int
    max_i: int
    max_j: int

    def __str__(self):
        if self.status == "koszul_up_to_bounds":
            return f"{self.n}-Koszul up to i={self.max_i}"
        if self.status == "not_koszul":
            i, j = self.witness_cell
            return f"not Koszul: Tor_{{{i},{j}}} != 0 but jump({i})={jump(i, self.n)}"
        return f"bounds insufficient: need internal degree {jump(self.max_i, self.n)}"


def is_N_koszul(t: StructureTensor, n: int, s: int = 5, d: int | None = None) -> KoszulVerdict:
    """Decide whether every nonzero Tor cell sits at j = jump(i, N),
    within the bounds (s, d)."""
    if d is None:
        d = jump(s, n)
    if d < jump(s, n):
        return KoszulVerdict("bounds_insufficient", None, n, s, d)
    table = tor_dims(t, s, d)
    for (i, j) in table.nonzero_cells():
        if j != jump(i, n):
            return KoszulVerdict("not_koszul", (i, j), n, s, d)
    return KoszulVerdict("koszul_up_to_bounds", None, n, s, d)


@dataclass
class TransferReport:
    consistent: bool
    verdict_source: KoszulVerdict
    verdict_target: KoszulVerdict
    violation: bool

    def __str__(self):
        tag = "VIOLATION" if self.violation else "CONSISTENT"
        return (
            f"{tag}: source {self.verdict_source}; target {self.verdict_target}"
        )


def transfer_verdict(va: KoszulVerdict, vb: KoszulVerdict) -> TransferReport:
    """Compare source/target verdicts: a Koszul target with a non-Koszul
    source contradicts the transfer property."""
    violation = (
        vb.status == "koszul_up_to_bounds" and va.status == "not_koszul"
    )
    return TransferReport(
        consistent=not violation,
        verdict_source=va,
        verdict_target=vb,
        violation=violation,
    )


def koszul_transfer_check(
    a: StructureTensor, b: StructureTensor, g: Witness, n: int,
    s: int = 4, d: int | None = None,
) -> TransferReport:
    """Check the transfer property along a verified graded degeneration
    a -> b: a Koszul target with a non-Koszul source would contradict the
    transfer theorem and indicates an implementation bug."""
    res = verify_witness(a, b, g)
    if not res.accepted:
        from .degeneration import WitnessRejected

        raise WitnessRejected(res)
    return transfer_verdict(is_N_koszul(a, n, s, d), is_N_koszul(b, n, s, d))


# ---------------------------------------------------------------------------
# Lifting lemma for truncated complexes
# ---------------------------------------------------------------------------

class TruncFreeComplex:
    """P_L -> ... -> P_1 -> P_0 with free modules over the truncated
    series ring; diffs[k] is d_{k+1}: P_{k+1} -> P_k, and consecutive
    composites must vanish mod t^(order+1)."""

    def __init__(self, ranks, diffs, order):
        self.ranks = list(ranks)
        self.order = order
        ring = SeriesRing(order)
        self.ring = ring
        mats = []
        for k, m in enumerate(diffs):
            if isinstance(m, Matrix):
                if not (isinstance(m.ring, SeriesRing) and m.ring.order == order):
                    m = m.map_entries(ring.coerce, ring)
            else:
                m = Matrix(ring, m)
            if (m.nrows, m.ncols) != (self.ranks[k], self.ranks[k + 1]):
                raise ValueError(f"differential {k + 1} has the wrong shape")
            mats.append(m)
        self.diffs = mats
        for k in range(len(mats) - 1):
            comp = mats[k] * mats[k + 1]
            if not comp.is_zero():
                raise NotAComplex(
                    f"d_{k + 1} . d_{k + 2} != 0 mod t^{order + 1}"
                )

    def length(self):
        return len(self.ranks) - 1

    def d(self, k) -> Matrix | None:
        """d_k: P_k -> P_{k-1}, or None outside 1..L."""
        if 1 <= k <= self.length():
            return self.diffs[k - 1]
        return None


def _constant_matrix(m: Matrix | None, nrows, ncols):
    if m is None:
        return Matrix(QQ, [[0] * ncols for _ in range(nrows)])
    return Matrix(QQ, [[x.coeffs[0] for x in row] for row in m.rows])


@dataclass
class LiftReport:
    degree: int
    reduced_h_dim: int
    applicable: bool
    cycles: int
    lifted: bool
    per_degree: list
    note: str = ""


def lemma_lift_check(p: TruncFreeComplex, i: int) -> LiftReport:
    """When H_i(P/tP) = 0, verify that every cycle of P at homological
    degree i (coefficientwise mod t^(order+1)) is a boundary to that
    order, lifting degree by degree in t."""
    M = p.order
    r_i = p.ranks[i]
    d_i = p.d(i)
    d_next = p.d(i + 1)
    r_prev = p.ranks[i - 1] if i >= 1 else 0
    r_next = p.ranks[i + 1] if i + 1 <= p.length() else 0
    d_i_bar = _constant_matrix(d_i, r_prev, r_i)
    d_next_bar = _constant_matrix(d_next, r_i, r_next)
    ker = r_i - rank(d_i_bar) if d_i is not None else r_i
    h_red = ker - rank(d_next_bar)
    if h_red != 0:
        return LiftReport(
            degree=i, reduced_h_dim=h_red, applicable=False, cycles=0,
            lifted=False, per_degree=[],
            note="reduced homology nonzero: the lemma does not apply",
        )
    cycles = _truncated_cycles(d_i, r_i, M)
    per_degree = []
    all_ok = True
    for x in cycles:
        u = list(x)
        for k in range(M + 1):
            c_k = [s.coeffs[k] for s in u]
            if all(v == 0 for v in c_k):
                per_degree.append((k, True))
                continue
            try:
                y_k = solve(d_next_bar, c_k)
            except Inconsistent:
                per_degree.append((k, False))
                all_ok = False
                break
            per_degree.append((k, True))
            if d_next is not None:
                shift_vec = [
                    TruncSeries.constant(v, M - k).shift(k) for v in y_k
                ]
                img = d_next.apply(shift_vec)
                u = [a - b for a, b in zip(u, img)]
        else:
            if any(not s.is_zero() for s in u):
                all_ok = False
    return LiftReport(
        degree=i,
        reduced_h_dim=0,
        applicable=True,
        cycles=len(cycles),
        lifted=all_ok,
        per_degree=per_degree,
    )


def _truncated_cycles(d_i: Matrix | None, r_i, order):
    """Basis of solutions of d_i x = 0 mod t^(order+1), as vectors of
    TruncSeries; all of P_i when d_i is absent."""
    M = order
    if d_i is None:
        basis = []
        for m in range(r_i):
            for k in range(M + 1):
                vec = [
                    TruncSeries.t_power(k, M) if mm == m
                    else TruncSeries.constant(0, M)
                    for mm in range(r_i)
                ]
                basis.append(vec)
        return basis
    r_prev = d_i.nrows
    # unknowns x[m][k] flattened m*(M+1)+k; equations rows (row, degree)
    rows = []
    coeff = [
        [[d_i.rows[r][m].coeffs[a] for a in range(M + 1)] for m in range(r_i)]
        for r in range(r_prev)
    ]
    for r in range(r_prev):
        for g in range(M + 1):
            row = [Fraction(0)] * (r_i * (M + 1))
            for m in range(r_i):
                for k in range(g + 1):
                    v = coeff[r][m][g - k]
                    if v != 0:
                        row[m * (M + 1) + k] = v
            rows.append(row)
    mat = Matrix(QQ, rows)
    out = []
    for vec in kernel_basis(mat):
        series = []
        for m in range(r_i):
            series.append(TruncSeries(vec[m * (M + 1) : (m + 1) * (M + 1)], M))
        out.append(series)
    return out
