"""Witness-based orbit-closure verification, witness-to-deformation
conversion, and necessary-condition obstructions for refuting
degenerations.

A witness is an invertible matrix g over Q(t); verify_witness accepts
(A, B, g) when act(g, A) has t-regular coefficients whose limit at t=0
is exactly B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    NegativeValuation,
    StructureTensor,
    act,
    check_identities,
    derivation_dim,
    derived_rank,
    specialize,
)
from .cohomology import Cochain, hochschild_h_dim, lie_h_dim
from .deformation import DeformationFamily
from .linalg import Matrix, Singular, det, kernel_basis, rank
from .rings import QQ, RATFUNC, RationalFunction


class DimensionMismatch(ValueError):
    pass


class WitnessRejected(ValueError):
    def __init__(self, result):
        self.result = result
        super().__init__(f"witness rejected: {result.reason}")


class CycleFound(ValueError):
    def __init__(self, labels):
        self.labels = labels
        super().__init__(f"degeneration cycle through distinct classes {labels}")


class Witness:
    """Invertible matrix over Q(t); block-diagonal by degree for graded
    use is checked by act() itself."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if matrix.nrows != matrix.ncols:
            raise ValueError("witness must be square")
        if matrix.ring is not RATFUNC:
            matrix = matrix.map_entries(RATFUNC.coerce, RATFUNC)
        if det(matrix).is_zero():
            raise Singular("witness matrix has determinant zero")
        self.matrix = matrix

    @property
    def dim(self):
        return self.matrix.nrows

    @classmethod
    def identity(cls, n):
        return cls(Matrix.identity(RATFUNC, n))

    @classmethod
    def scaling(cls, n):
        """t^(-1) * identity: degenerates everything to the zero algebra."""
        tm1 = RationalFunction.t_power(-1)
        return cls(Matrix(RATFUNC, [[tm1 if i == j else 0 for j in range(n)]
                                    for i in range(n)]))

    @classmethod
    def from_inverse_images(cls, columns):
        """Witness with prescribed g^(-1): column j = coordinates of the
        new basis vector g^(-1)(e_j)."""
        n = len(columns)
        h = Matrix(RATFUNC, [[columns[j][i] for j in range(n)] for i in range(n)])
        from .linalg import inverse

        return cls(inverse(h))


@dataclass
class VerifyResult:
    accepted: bool
    reason: str = ""
    negative_entries: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)
    acted: StructureTensor | None = None
    limit: StructureTensor | None = None

    def __bool__(self):
        return self.accepted


def verify_witness(a: StructureTensor, b: StructureTensor, g: Witness) -> VerifyResult:
    """Accept iff act(g, a) has all valuations >= 0 and specializes at
    t=0 to exactly b (coefficientwise)."""
    if a.dim != b.dim or a.kind != b.kind:
        raise DimensionMismatch("source and target must share kind and dimension")
    if a.kind == "graded_associative" and a.degrees != b.degrees:
        raise DimensionMismatch("graded witnesses need matching degree vectors")
    if g.dim != a.dim:
        raise DimensionMismatch("witness dimension mismatch")
    for name, t in (("source", a), ("target", b)):
        if not check_identities(t).passed:
            raise ValueError(f"{name} tensor fails its defining identities")
    acted = act(g.matrix, a)
    try:
        limit = specialize(acted)
    except NegativeValuation as e:
        return VerifyResult(
            accepted=False,
            reason="negative valuation in the transported tensor",
            negative_entries=list(e.entries),
            acted=acted,
        )
    bq = b if b.ring is QQ else b.with_ring(QQ)
    mismatches = []
    n = a.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                got = limit.coeffs[i][j][k]
                want = bq.coeffs[i][j][k]
                if got != want:
                    mismatches.append(((i, j, k), got, want))
    if mismatches:
        return VerifyResult(
            accepted=False,
            reason="limit at t=0 differs from the target tensor",
            mismatches=mismatches,
            acted=acted,
            limit=limit,
        )
    return VerifyResult(accepted=True, acted=acted, limit=limit)


def witness_to_deformation(
    a: StructureTensor, b: StructureTensor, g: Witness, order: int
) -> DeformationFamily:
    """Expand act(g, a) - b in powers of t: the coefficient of t^i becomes
    the map F_i of a truncated deformation of b."""
    res = verify_witness(a, b, g)
    if not res.accepted:
        raise WitnessRejected(res)
    acted = res.acted
    n = a.dim
    kind = "lie" if a.kind == "lie" else a.kind
    per_order = [dict() for _ in range(order + 1)]
    pairs = (
        [(i, j) for i in range(n) for j in range(i + 1, n)]
        if kind == "lie"
        else [(i, j) for i in range(n) for j in range(n)]
    )
    for (i, j) in pairs:
        series = [acted.coeffs[i][j][k].to_trunc(order) for k in range(n)]
        for d in range(1, order + 1):
            vec = [series[k].coeffs[d] for k in range(n)]
            if any(v != 0 for v in vec):
                per_order[d][(i, j)] = vec
    ckind = "lie" if kind == "lie" else kind
    maps = [Cochain(ckind, n, 2, per_order[d]) for d in range(1, order + 1)]
    return DeformationFamily(b, maps, order)


# ---------------------------------------------------------------------------
# Obstruction battery
# ---------------------------------------------------------------------------

SUPPLEMENTARY_NOTE = "standard semicontinuity argument, supplementary test"


@dataclass
class BatteryTest:
    name: str
    status: str  # pass | refute | inconclusive
    data: dict
    note: str = ""


@dataclass
class ObstructionReport:
    tests: list

    @property
    def refuted(self):
        return any(t.status == "refute" for t in self.tests)

    @property
    def decisive(self):
        for t in self.tests:
            if t.status == "refute":
                return t.name
        return None

    def lines(self):
        out = []
        for t in self.tests:
            note = f"  [{t.note}]" if t.note else ""
            data = ", ".join(f"{k}={v}" for k, v in sorted(t.data.items()))
            out.append(f"{t.status:12s} {t.name}: {data}{note}")
        return out


def _sym_form_coeffs(q):
    """Upper-triangle coefficient list of a symmetric matrix."""
    n = len(q)
    return [q[i][j] for i in range(n) for j in range(i, n)]


def _trace_forms(t: StructureTensor):
    """Quadratic forms v -> (tr ad v)^2 and v -> tr(ad v . ad v), as
    symmetric coefficient matrices over Q."""
    n = t.dim
    tq = t if t.ring is QQ else t.with_ring(QQ)
    ad = []
    for i in range(n):
        ad.append([[tq.coeffs[i][j][k] for j in range(n)] for k in range(n)])
    lin = [sum(ad[i][k][k] for k in range(n)) for i in range(n)]
    tau = [[lin[i] * lin[j] for j in range(n)] for i in range(n)]
    kappa = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = sum(
                ad[i][k][l] * ad[j][l][k] for k in range(n) for l in range(n)
            )
            kappa[i][j] = s
            kappa[j][i] = s
    return tau, kappa


def _trace_form_relations(t: StructureTensor):
    tau, kappa = _trace_forms(t)
    cols = list(zip(_sym_form_coeffs(tau), [-x for x in _sym_form_coeffs(kappa)]))
    m = Matrix(QQ, [list(row) for row in cols])
    return kernel_basis(m), tau, kappa


def obstruction_battery(a: StructureTensor, b: StructureTensor) -> ObstructionReport:
    """Necessary conditions for b to lie in the orbit closure of a; any
    single refutation rules the degeneration out, a pass never proves it."""
    if a.dim != b.dim or a.kind != b.kind:
        raise DimensionMismatch("battery needs matching kind and dimension")
    n = a.dim
    tests = []
    if a.kind == "lie":
        ra, rb = derived_rank(a), derived_rank(b)
        tests.append(
            BatteryTest(
                "derived-rank",
                "refute" if rb > ra else "pass",
                {"source": ra, "target": rb},
            )
        )
    da, db = derivation_dim(a), derivation_dim(b)
    oa, ob = n * n - da, n * n - db
    tests.append(
        BatteryTest(
            "orbit-dimension",
            "refute" if ob > oa else "pass",
            {"source": oa, "target": ob},
        )
    )
    if a.kind == "lie":
        for i in (0, 1, 2):
            ha, hb = lie_h_dim(a, i), lie_h_dim(b, i)
            tests.append(
                BatteryTest(
                    f"lie-h{i}-semicontinuity",
                    "refute" if hb < ha else "pass",
                    {"source": ha, "target": hb},
                    note=SUPPLEMENTARY_NOTE,
                )
            )
        rels, _, _ = _trace_form_relations(a)
        tau_b, kappa_b = _trace_forms(b)
        tb, kb = _sym_form_coeffs(tau_b), _sym_form_coeffs(kappa_b)
        violated = []
        for (c1, c2) in rels:
            if any(c1 * x - c2 * y != 0 for x, y in zip(tb, kb)):
                violated.append((c1, c2))
        tests.append(
            BatteryTest(
                "trace-form",
                "refute" if violated else "pass",
                {
                    "relations": len(rels),
                    "violated": [(str(x), str(y)) for x, y in violated],
                },
                note=SUPPLEMENTARY_NOTE,
            )
        )
    else:
        if a.unit_index is not None and b.unit_index is not None:
            for i in (0, 1, 2):
                ha = hochschild_h_dim(a, i)
                hb = hochschild_h_dim(b, i)
                tests.append(
                    BatteryTest(
                        f"hochschild-h{i}-semicontinuity",
                        "refute" if hb < ha else "pass",
                        {"source": ha, "target": hb},
                    )
                )
        else:
            tests.append(
                BatteryTest(
                    "hochschild-semicontinuity",
                    "inconclusive",
                    {"reason": "needs declared units on both tensors"},
                )
            )
    return ObstructionReport(tests)


# ---------------------------------------------------------------------------
# Partial-order audit
# ---------------------------------------------------------------------------

@dataclass
class AuditReport:
    edges: list      # (label_a, label_b, witness description)
    labels: list
    acyclic: bool


def audit_label_graph(label_edges) -> AuditReport:
    """Check a directed graph of (label_a, label_b) edges for cycles
    through two distinct labels; self-loops are fine."""
    adj = {}
    edges = []
    for (la, lb) in label_edges:
        edges.append((la, lb, ""))
        adj.setdefault(la, set()).add(lb)
        adj.setdefault(lb, set())
    for scc in _strongly_connected(adj):
        if len(scc) > 1:
            raise CycleFound(sorted(scc))
    return AuditReport(edges=edges, labels=sorted(adj), acyclic=True)


def partial_order_audit(witness_set) -> AuditReport:
    """witness_set: iterable of (A, B, witness[, description]) triples of
    verified 3-dimensional lie witnesses.  Quotients the accepted edges by
    classifier label and checks there is no cycle through two distinct
    labels (self-loops are fine)."""
    from .lie3 import classify3  # deferred: lie3 builds on this module

    edges = []
    for item in witness_set:
        a, b, g = item[0], item[1], item[2]
        desc = item[3] if len(item) > 3 else ""
        res = verify_witness(a, b, g)
        if not res.accepted:
            raise WitnessRejected(res)
        edges.append((str(classify3(a)), str(classify3(b)), desc))
    report = audit_label_graph([(la, lb) for (la, lb, _) in edges])
    return AuditReport(edges=edges, labels=report.labels, acyclic=True)


def _strongly_connected(adj):
    """Tarjan's algorithm, iterative."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]

    for root in adj:
        if root in index:
            continue
        work = [(root, iter(sorted(adj[root])))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(adj[nxt]))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == node:
                        break
                sccs.append(scc)
    return sccs
