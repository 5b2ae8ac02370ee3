"""Truncated formal deformations of a base algebra: the operation

    [v,w] = [v,w]_base + F_1(v,w) t + ... + F_M(v,w) t^M

with axiom verification modulo t^(M+1), leading-term analysis and
valuation certificates for the generic fiber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import IdentityReport, StructureTensor, check_identities
from .cohomology import Cochain, class_nonzero, is_two_cocycle
from .rings import QQ, SeriesRing, TruncSeries


class Trivial(ValueError):
    """leading_analysis on the trivial family (all maps zero)."""


class InsufficientOrder(ValueError):
    """The truncation order cannot certify the requested statement."""


class DeformationFamily:
    """base over Q plus degree-2 cochains F_1..F_M; order = M."""

    __slots__ = ("base", "maps", "order")

    def __init__(self, base: StructureTensor, maps, order=None):
        if base.ring is not QQ:
            base = base.with_ring(QQ)
        if order is None:
            order = len(maps)
        if order < 1:
            raise ValueError("order must be >= 1")
        maps = list(maps)
        if len(maps) != order:
            raise ValueError("need exactly `order` maps F_1..F_M")
        for f in maps:
            if not isinstance(f, Cochain) or f.degree != 2:
                raise ValueError("maps must be degree-2 cochains")
            if f.dim != base.dim:
                raise ValueError("cochain dimension mismatch")
            if base.kind == "lie" and f.kind != "lie":
                raise ValueError("lie base needs alternating cochains")
            if base.kind != "lie" and f.kind == "lie":
                raise ValueError("associative base needs tensor cochains")
        if base.kind == "graded_associative":
            degs = base.degrees
            for f in maps:
                for (i, j), vec in f.values.items():
                    for k, v in enumerate(vec):
                        if v != 0 and degs[k] != degs[i] + degs[j]:
                            raise ValueError(
                                "graded deformation maps must have internal degree 0"
                            )
        self.base = base
        self.maps = tuple(maps)
        self.order = order

    def pair_value(self, d, i, j):
        """Value vector of F_d on (e_i, e_j), honoring alternation."""
        f = self.maps[d - 1]
        n = self.base.dim
        if f.kind == "lie":
            if i == j:
                return [Fraction(0)] * n
            if i < j:
                vec = f.values.get((i, j))
                return list(vec) if vec else [Fraction(0)] * n
            vec = f.values.get((j, i))
            return [-x for x in vec] if vec else [Fraction(0)] * n
        vec = f.values.get((i, j))
        return list(vec) if vec else [Fraction(0)] * n

    def family_tensor(self) -> StructureTensor:
        """The deformed operation as a tensor over QQ[[t]]/t^(M+1)."""
        n = self.base.dim
        M = self.order
        ring = SeriesRing(M)
        coeffs = []
        for i in range(n):
            plane = []
            for j in range(n):
                row = []
                base_vec = self.base.coeffs[i][j]
                per_order = [self.pair_value(d, i, j) for d in range(1, M + 1)]
                for k in range(n):
                    cs = [base_vec[k]] + [per_order[d - 1][k] for d in range(1, M + 1)]
                    row.append(TruncSeries(cs, M))
                plane.append(row)
            coeffs.append(plane)
        return StructureTensor(
            self.base.kind, n, coeffs, ring=ring,
            degrees=self.base.degrees, unit_index=None,
        )

    def is_trivial(self):
        return all(f.is_zero() for f in self.maps)


def trivial_deformation(base: StructureTensor, order: int) -> DeformationFamily:
    kind = "lie" if base.kind == "lie" else "associative"
    zero = Cochain(kind, base.dim, 2, {})
    return DeformationFamily(base, [zero] * order, order)


def verify_deformation(d: DeformationFamily) -> IdentityReport:
    """Jacobi / associativity of the deformed operation, coefficientwise
    in t through order M."""
    return check_identities(d.family_tensor())


@dataclass
class LeadingAnalysis:
    n: int
    is_cocycle: bool
    class_nonzero: bool


def leading_analysis(d: DeformationFamily) -> LeadingAnalysis:
    """Least n with F_n != 0, plus cocycle/class tests of F_n over the
    base algebra."""
    n = None
    for idx, f in enumerate(d.maps, start=1):
        if not f.is_zero():
            n = idx
            break
    if n is None:
        raise Trivial("all maps vanish")
    f = d.maps[n - 1]
    return LeadingAnalysis(
        n=n,
        is_cocycle=is_two_cocycle(f, d.base),
        class_nonzero=class_nonzero(f, d.base),
    )


# ---------------------------------------------------------------------------
# Generic-fiber certificates from truncated data
# ---------------------------------------------------------------------------

@dataclass
class FiberReport:
    order: int
    pairs: list                      # column labels (i, j), i < j
    bracket_valuations: list         # n rows x C(n,2) cols of int | None
    minor_nonzero: dict              # size -> bool (a nonzero minor exists)
    certified_rank_lower_bound: int
    x_index: int
    ad_trace_valuation: object       # int | None
    ad_det_valuation: object         # int | None

    def require_rank(self, k):
        if k > self.certified_rank_lower_bound:
            raise InsufficientOrder(
                f"rank >= {k} not certified at order {self.order}"
            )


def _series_minor_det(rows):
    """Determinant of a small square matrix of TruncSeries, by cofactor
    expansion along the first row."""
    k = len(rows)
    if k == 0:
        raise ValueError("empty minor")
    if k == 1:
        return rows[0][0]
    acc = None
    for j in range(k):
        a = rows[0][j]
        if a.is_zero():
            continue
        sub = [[r[jj] for jj in range(k) if jj != j] for r in rows[1:]]
        term = a * _series_minor_det(sub)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        acc = TruncSeries.constant(0, rows[0][0].order)
    return acc


def fiber_invariants(d: DeformationFamily, x_index=0) -> FiberReport:
    """Valuation data of the deformed bracket matrix: entry valuations,
    minor-based certified rank over the Laurent-series field, and the
    trace/determinant valuations of ad(x) on the span of the brackets
    [e_j, x], j != x."""
    if d.base.kind != "lie":
        raise ValueError("fiber_invariants needs a lie family")
    if not verify_deformation(d).passed:
        raise ValueError("family fails its deformation identities")
    ft = d.family_tensor()
    n = d.base.dim
    pairs = list(combinations(range(n), 2))
    cols = [ft.product(i, j) for (i, j) in pairs]
    matrix = [[cols[c][r] for c in range(len(pairs))] for r in range(n)]
    vals = [[x.valuation() for x in row] for row in matrix]
    minor_nonzero = {}
    certified = 0
    for size in range(1, min(n, len(pairs)) + 1):
        found = False
        for rsel in combinations(range(n), size):
            for csel in combinations(range(len(pairs)), size):
                det_s = _series_minor_det(
                    [[matrix[r][c] for c in csel] for r in rsel]
                )
                if not det_s.is_zero():
                    found = True
                    break
            if found:
                break
        minor_nonzero[size] = found
        if found:
            certified = size
        else:
            break  # larger minors expand through vanished ones
    # ad(x) on span{[e_j, x]}: [x,[e_j,x]] = -sum_k v_k [e_k, x]
    others = [j for j in range(n) if j != x_index]
    ad_rows = []
    for k in others:
        row = []
        for j in others:
            v = ft.product(j, x_index)
            row.append(-v[k])
        ad_rows.append(row)
    tr = ad_rows[0][0]
    for idx in range(1, len(others)):
        tr = tr + ad_rows[idx][idx]
    det_ad = _series_minor_det(ad_rows)
    return FiberReport(
        order=d.order,
        pairs=pairs,
        bracket_valuations=vals,
        minor_nonzero=minor_nonzero,
        certified_rank_lower_bound=certified,
        x_index=x_index,
        ad_trace_valuation=tr.valuation(),
        ad_det_valuation=det_ad.valuation(),
    )
