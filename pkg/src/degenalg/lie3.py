"""Three-dimensional Lie algebras: the classification into L0..L5, the
second-cohomology table, the rigidity certificate for deformations of L2,
and the full closure diagram assembled from witnesses and obstructions.

Conventions: basis (x, y, z) = indices (0, 1, 2); the standard
representatives are

    L0: zero bracket                 L1: [x,y] = z
    L2: [x,y] = y                    L3: [x,y] = y, [x,z] = y+z
    L4(a): [x,y] = y, [x,z] = a z    L5: [x,y] = y, [x,z] = -z, [y,z] = x
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import random

from .algebra import StructureTensor, check_identities, derivation_dim, derived_rank, lie_tensor
from .cohomology import Cochain, NotJacobi, lie_h_dim
from .deformation import (
    DeformationFamily,
    InsufficientOrder,
    fiber_invariants,
    leading_analysis,
    verify_deformation,
    _series_minor_det,
)
from .degeneration import Witness, obstruction_battery, verify_witness
from .linalg import Matrix, rank, solve
from .rings import QQ, RationalFunction, TruncSeries, rat, series_invert


class NotRank2Invertible(ValueError):
    """ad(x) on the derived algebra is singular; impossible for a valid
    rank-2 input, so this flags bad data."""


class WrongLeadingTerm(ValueError):
    """l2_rigidity needs the normalized leading term lambda * z^x^ (x) z."""


# ---------------------------------------------------------------------------
# Standard representatives
# ---------------------------------------------------------------------------

def L0():
    return lie_tensor(3, {})


def L1():
    return lie_tensor(3, {(0, 1): {2: 1}})


def L2():
    return lie_tensor(3, {(0, 1): {1: 1}})


def L3():
    return lie_tensor(3, {(0, 1): {1: 1}, (0, 2): {1: 1, 2: 1}})


def L4(alpha):
    alpha = rat(alpha)
    if alpha == 0:
        raise ValueError("L4 needs a nonzero parameter")
    return lie_tensor(3, {(0, 1): {1: 1}, (0, 2): {2: alpha}})


def L5():
    return lie_tensor(3, {(0, 1): {1: 1}, (0, 2): {2: -1}, (1, 2): {0: 1}})


# ---------------------------------------------------------------------------
# Class labels
# ---------------------------------------------------------------------------

_TAG_ORDER = {"L0": 0, "L1": 1, "L2": 2, "L3": 3, "L4": 4, "L5": 5}


@dataclass(frozen=True)
class ClassLabel:
    tag: str
    kappa: Fraction | None = None   # tr^2/det of ad(x) on the derived algebra
    alpha: Fraction | None = None   # canonical root of z^2-(kappa-2)z+1, if rational

    def __str__(self):
        if self.tag != "L4":
            return self.tag
        if self.alpha is not None:
            return f"L4(alpha={self.alpha}, kappa={self.kappa})"
        return f"L4(kappa={self.kappa})"

    def sort_key(self):
        k = self.kappa if self.kappa is not None else Fraction(0)
        return (_TAG_ORDER[self.tag], k)


def _is_square(q: Fraction):
    if q < 0:
        return None
    pn, pd = q.numerator, q.denominator
    rn, rd = isqrt(pn), isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


def canonical_alpha(pairable: Fraction) -> Fraction:
    """Representative of {a, 1/a}: maximal by (numerator*denominator, a)."""
    a = rat(pairable)
    inv = 1 / a
    key = lambda b: (b.numerator * b.denominator, b)
    return max((a, inv), key=key)


def l4_label(alpha=None, kappa=None) -> ClassLabel:
    if alpha is not None:
        alpha = canonical_alpha(rat(alpha))
        kappa = (1 + alpha) ** 2 / alpha
        return ClassLabel("L4", kappa=kappa, alpha=alpha)
    kappa = rat(kappa)
    disc = (kappa - 2) ** 2 - 4
    root = _is_square(disc)
    if root is None:
        return ClassLabel("L4", kappa=kappa)
    a1 = ((kappa - 2) + root) / 2
    return ClassLabel("L4", kappa=kappa, alpha=canonical_alpha(a1))


LABEL_L0 = ClassLabel("L0")
LABEL_L1 = ClassLabel("L1")
LABEL_L2 = ClassLabel("L2")
LABEL_L3 = ClassLabel("L3")
LABEL_L5 = ClassLabel("L5")


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def classify3(t: StructureTensor) -> ClassLabel:
    """Classify a 3-dimensional lie tensor over Q up to isomorphism.

    rank 0 -> L0; rank 3 -> L5; rank 1 -> L1 when the derived algebra is
    central, else L2; rank 2 -> kappa = tr^2/det of ad(x) on the derived
    algebra: kappa=4 and ad(x) scalar -> L4(1), kappa=4 otherwise -> L3,
    anything else -> L4 with that kappa.
    """
    if t.kind != "lie" or t.dim != 3:
        raise ValueError("classify3 needs a 3-dimensional lie tensor")
    if not check_identities(t).passed:
        raise NotJacobi("tensor fails the Jacobi identity")
    tq = t if t.ring is QQ else t.with_ring(QQ)
    r = derived_rank(tq)
    if r == 0:
        return LABEL_L0
    if r == 3:
        return LABEL_L5
    cols = [tq.product(i, j) for i in range(3) for j in range(i + 1, 3)]
    if r == 1:
        u = next(c for c in cols if any(x != 0 for x in c))
        central = all(
            all(x == 0 for x in tq.mult_vectors(u, _unit_vec(i)))
            for i in range(3)
        )
        return LABEL_L1 if central else LABEL_L2
    # rank 2: a basis of the derived algebra from the bracket columns
    w = []
    for c in cols:
        if any(x != 0 for x in c):
            if not w or rank(Matrix(QQ, w + [c])) > len(w):
                w.append(c)
        if len(w) == 2:
            break
    w1, w2 = w
    if any(x != 0 for x in tq.mult_vectors(w1, w2)):
        raise NotRank2Invertible(
            "derived algebra of a rank-2 tensor is not abelian"
        )
    x_idx = next(
        i for i in range(3)
        if rank(Matrix(QQ, [w1, w2, _unit_vec(i)])) == 3
    )
    span = Matrix(QQ, [w1, w2]).transpose()
    m = []
    for wj in (w1, w2):
        img = tq.mult_vectors(_unit_vec(x_idx), wj)
        m.append(solve(span, img))  # ad(x) w_j in the (w1, w2) basis
    m00, m01 = m[0][0], m[1][0]
    m10, m11 = m[0][1], m[1][1]
    tr = m00 + m11
    dt = m00 * m11 - m01 * m10
    if dt == 0:
        raise NotRank2Invertible("ad(x) is singular on the derived algebra")
    kappa = tr * tr / dt
    if kappa == 4:
        scalar = m01 == 0 and m10 == 0 and m00 == m11
        return l4_label(alpha=1) if scalar else LABEL_L3
    return l4_label(kappa=kappa)


def _unit_vec(i):
    v = [Fraction(0)] * 3
    v[i] = Fraction(1)
    return v


def table1_representatives(alphas=(2, 3)):
    """Ordered (label, tensor) pairs for the standard list, with L4
    sampled at the given parameters plus -1 and 1."""
    entries = [
        (LABEL_L0, L0()),
        (LABEL_L1, L1()),
        (LABEL_L2, L2()),
        (LABEL_L3, L3()),
    ]
    seen = set()
    for a in tuple(alphas) + (-1, 1):
        lbl = l4_label(alpha=a)
        if lbl not in seen:
            seen.add(lbl)
            entries.append((lbl, L4(lbl.alpha)))
    entries.append((LABEL_L5, L5()))
    entries.sort(key=lambda e: e[0].sort_key())
    return entries


def h2_table(alphas=(2, 3)):
    """Second lie cohomology dimension for every standard representative."""
    return {
        lbl: lie_h_dim(t, 2) for (lbl, t) in table1_representatives(alphas)
    }


# ---------------------------------------------------------------------------
# Rigidity of L2: the three-branch certificate
# ---------------------------------------------------------------------------

@dataclass
class BranchRecord:
    branch: str   # rank_lt_2 | rank2_contradiction | rank3_det_zero
    data: dict

    def verified(self):
        return self.data.get("verified", False)


@dataclass
class RigidityCertificate:
    n: int
    lam: Fraction
    order: int
    branches: dict

    def all_verified(self):
        return all(b.verified() for b in self.branches.values())

    def summary(self):
        lines = [f"leading order n={self.n}, lambda={self.lam}, order M={self.order}"]
        for name in ("rank_lt_2", "rank2_contradiction", "rank3_det_zero"):
            b = self.branches[name]
            state = "verified" if b.verified() else "FAILED"
            lines.append(f"  {name}: {state}")
        return "\n".join(lines)


def _l2_components(d: DeformationFamily):
    """The nine bracket component series of a normalized family over L2:
    rows [y,x], [z,x], [z,y] in the coordinates (x, y, z)."""
    ft = d.family_tensor()
    return ft.product(1, 0), ft.product(2, 0), ft.product(2, 1)


def solve_l2_tail(f1, f2, f3, g2, g3, h2, n, lam, order):
    """Solve the three Jacobi constraints of a normalized L2 family for
    the dependent components h1, g1, h3 (capital series include the
    t^(n+1) factor).  Inputs are the free component series at full order.

    Returns (H1, G1, H3) with the convention
        [y,x] = F1 x + A y + F3 z,  A  = -1 + t^(n+1) f2
        [z,x] = G1 x + G2 y + B z,  B  = lam t^n + t^(n+1) g3
        [z,y] = H1 x + H2 y + H3 z
    """
    one = TruncSeries.constant(1, order)
    tn = TruncSeries.t_power(n, order)
    F1 = f1.shift(n + 1).truncate(order)
    A = -one + f2.shift(n + 1).truncate(order)
    F3 = f3.shift(n + 1).truncate(order)
    G2 = g2.shift(n + 1).truncate(order)
    B = lam * tn + g3.shift(n + 1).truncate(order)
    H2 = h2.shift(n + 1).truncate(order)
    inv_a = series_invert(A)
    inv_ab = series_invert(A + B)
    H1 = TruncSeries.constant(0, order)
    G1 = TruncSeries.constant(0, order)
    H3 = TruncSeries.constant(0, order)
    passes = (order // (n + 1)) + 2
    for _ in range(passes):
        G1 = inv_a * (B * H2 + F1 * G2 - G2 * H3)
        H3 = inv_a * (F3 * H2 + F3 * G1 - F1 * B)
        H1 = inv_ab * (F1 * H2 + G1 * H3)
    return H1, G1, H3


def l2_rigidity(d: DeformationFamily) -> RigidityCertificate:
    """The full rigidity certificate for a truncated deformation of L2
    with normalized leading term lam * z^x^ (x) z at order n:

    (a) rank_lt_2 -- the 2x2 minor of ([y,x],[z,x]) is -lam t^n mod
        t^(n+1), so the generic fiber has rank >= 2;
    (b) rank2_contradiction -- v(tr ad x) = 0 and v(det ad x) = n >= 1 on
        the span of the brackets, so the eigenvalue ratio of ad(x) cannot
        lie in the base field: no constant rank-2 fiber;
    (c) rank3_det_zero -- the dependent components h1, g1, h3 solved from
        the Jacobi constraints make the 3x3 bracket determinant vanish
        mod t^(M+1): no rank-3 fiber.
    """
    if d.base != L2():
        raise ValueError("l2_rigidity expects the base to be the standard L2 tensor")
    if not verify_deformation(d).passed:
        raise ValueError("family fails its deformation identities")
    la = leading_analysis(d)
    n, M = la.n, d.order
    lead = d.maps[n - 1]
    if set(lead.values) != {(0, 2)}:
        raise WrongLeadingTerm("leading term must be supported on z^ wedge x^")
    vec = lead.values[(0, 2)]
    if vec[0] != 0 or vec[1] != 0 or vec[2] == 0:
        raise WrongLeadingTerm("leading term must be a nonzero multiple of z^x^ (x) z")
    lam = -vec[2]  # stored on the sorted key (x,z); F(z,x) = lam * z
    if M < n + 1:
        raise InsufficientOrder("need order at least n+1")
    yx, zx, zy = _l2_components(d)
    # branch (a)
    minor = yx[1] * zx[2] - zx[1] * yx[2]
    expected = TruncSeries(
        [Fraction(0)] * n + [-lam], n
    )
    a_ok = (
        minor.truncate(n) == expected
        and not minor.is_zero()
    )
    branch_a = BranchRecord(
        "rank_lt_2",
        {
            "minor": minor,
            "valuation": minor.valuation(),
            "lambda": lam,
            "verified": bool(a_ok),
        },
    )
    # branch (b): ad(x) on span([y,x],[z,x])
    fr = fiber_invariants(d, x_index=0)
    tr_v, det_v = fr.ad_trace_valuation, fr.ad_det_valuation
    b_ok = tr_v == 0 and det_v is not None and det_v == n
    branch_b = BranchRecord(
        "rank2_contradiction",
        {
            "trace_valuation": tr_v,
            "det_valuation": det_v,
            "n": n,
            "argument": "unit trace forces a unit eigenvalue; det of valuation "
                        "n>=1 forces a non-unit one, so the ratio is not scalar",
            "verified": bool(b_ok),
        },
    )
    # branch (c): solve the dependent components, substitute, expand the det
    f1 = yx[0].shift(-(n + 1))
    f2 = (yx[1] + 1).shift(-(n + 1))
    f3 = yx[2].shift(-(n + 1))
    g2 = zx[1].shift(-(n + 1))
    g3 = (zx[2] - TruncSeries([Fraction(0)] * n + [lam], M)).shift(-(n + 1))
    h2 = zy[1].shift(-(n + 1))
    H1, G1, H3 = solve_l2_tail(f1, f2, f3, g2, g3, h2, n, lam, M)
    consistent = H1 == zy[0] and G1 == zx[0] and H3 == zy[2]
    det3 = _series_minor_det(
        [
            [yx[0], yx[1], yx[2]],
            [G1, zx[1], zx[2]],
            [H1, zy[1], H3],
        ]
    )
    c_ok = consistent and det3.is_zero()
    branch_c = BranchRecord(
        "rank3_det_zero",
        {
            "determinant": det3,
            "solved_match_family": bool(consistent),
            "verified": bool(c_ok),
        },
    )
    cert = RigidityCertificate(
        n=n,
        lam=lam,
        order=M,
        branches={
            "rank_lt_2": branch_a,
            "rank2_contradiction": branch_b,
            "rank3_det_zero": branch_c,
        },
    )
    return cert


def l2_family_from_components(free, n, lam, order) -> DeformationFamily:
    """Build an admissible normalized deformation of L2 from free data.

    free = (f1, f2, f3, g2, g3, h2): either TruncSeries of order
    order-(n+1) or plain coefficient lists; the dependent components are
    solved from the Jacobi constraints, so the family always verifies.
    """
    lam = rat(lam)
    comps = []
    for s in free:
        if not isinstance(s, TruncSeries):
            s = TruncSeries(list(s), order - (n + 1))
        elif s.order != order - (n + 1):
            s = s.truncate(order - (n + 1))
        comps.append(s)
    f1, f2, f3, g2, g3, h2 = comps
    H1, G1, H3 = solve_l2_tail(f1, f2, f3, g2, g3, h2, n, lam, order)
    maps = []

    def cap(s):
        return s.shift(n + 1).truncate(order)

    caps = {
        "F1": cap(f1), "F2": cap(f2), "F3": cap(f3),
        "G1": G1, "G2": cap(g2), "G3": cap(g3),
        "H1": H1, "H2": cap(h2), "H3": H3,
    }
    for d in range(1, order + 1):
        entries = {}
        # keys are bracket pairs; family values F_d(i,j) honor alternation
        yx = [caps["F1"].coeffs[d], caps["F2"].coeffs[d], caps["F3"].coeffs[d]]
        zx = [caps["G1"].coeffs[d], caps["G2"].coeffs[d], caps["G3"].coeffs[d]]
        zy = [caps["H1"].coeffs[d], caps["H2"].coeffs[d], caps["H3"].coeffs[d]]
        if d == n:
            zx = [zx[0], zx[1], zx[2] + lam]
        if any(v != 0 for v in yx):
            entries[(1, 0)] = yx
        if any(v != 0 for v in zx):
            entries[(2, 0)] = zx
        if any(v != 0 for v in zy):
            entries[(2, 1)] = zy
        maps.append(Cochain("lie", 3, 2, entries))
    return DeformationFamily(L2(), maps, order)


def random_l2_deformation(rng, n, order, lam=None, spread=4):
    """A random admissible normalized deformation of L2: free components
    drawn at orders n+1..M, dependent components solved from the Jacobi
    constraints.  Used by the verification suites to sample families."""
    if lam is None:
        lam = Fraction(rng.choice([c for c in range(-spread, spread + 1) if c]))
    free = [
        [Fraction(rng.randint(-spread, spread)) for _ in range(order - n)]
        for _ in range(6)
    ]
    return l2_family_from_components(free, n, lam, order)


# ---------------------------------------------------------------------------
# Closure diagram
# ---------------------------------------------------------------------------

def _winv_cols(cols):
    """Witness from the columns of g^(-1) given over Q(t)."""
    return Witness.from_inverse_images(cols)


def _t():
    return RationalFunction.t_power(1)


def bundled_witness(la: ClassLabel, lb: ClassLabel):
    """Witness certifying la -> lb, or None when no edge exists.

    Every algebra reaches itself (identity) and L0 (scaling); the proper
    edges are L5 -> {L4(-1), L1}, L3 -> {L4(1), L1}, L4(a != 1) -> L1 and
    L2 -> L1.
    """
    t = _t()
    one = RationalFunction.constant(1)
    zero = RationalFunction.constant(0)
    if la == lb:
        return Witness.identity(3)
    if lb == LABEL_L0:
        return Witness.scaling(3)
    if lb == LABEL_L1:
        if la == LABEL_L5:
            # new basis: t*y, t*z, t^2*x
            return _winv_cols(
                [[zero, t, zero], [zero, zero, t], [t * t, zero, zero]]
            )
        if la == LABEL_L2:
            return _winv_cols(
                [[t, zero, zero], [zero, one, one], [zero, t, zero]]
            )
        if la == LABEL_L3:
            return _winv_cols(
                [[t, zero, zero], [zero, zero, one], [zero, t, t]]
            )
        if la.tag == "L4" and la.alpha is not None and la.alpha != 1:
            a = RationalFunction.constant(la.alpha)
            return _winv_cols(
                [[t, zero, zero], [zero, one, one], [zero, t, a * t]]
            )
        return None
    if la == LABEL_L5 and lb == l4_label(alpha=-1):
        return _winv_cols([[one, zero, zero], [zero, t, zero], [zero, zero, t]])
    if la == LABEL_L3 and lb == l4_label(alpha=1):
        return _winv_cols([[one, zero, zero], [zero, one, zero], [zero, zero, t]])
    return None


@dataclass
class DiagramEntry:
    status: str       # edge | refuted
    mechanism: str
    detail: str = ""


@dataclass
class DiagramReport:
    labels: list
    entries: dict      # (str(la), str(lb)) -> DiagramEntry
    l2_certificate: RigidityCertificate | None

    def inconclusive_pairs(self):
        return [k for k, e in self.entries.items() if e.status == "inconclusive"]

    def edge_pairs(self):
        return [k for k, e in self.entries.items() if e.status == "edge"]

    def to_text(self):
        lines = ["closure diagram (rows: source, columns: target)"]
        names = [str(l) for l in self.labels]
        for a in names:
            outs = [b for b in names if self.entries[(a, b)].status == "edge"]
            lines.append(f"{a} -> {', '.join(outs)}")
        lines.append("")
        lines.append("refutations:")
        for a in names:
            for b in names:
                e = self.entries[(a, b)]
                if e.status == "refuted":
                    d = f" ({e.detail})" if e.detail else ""
                    lines.append(f"  {a} -/-> {b}: {e.mechanism}{d}")
        if self.l2_certificate is not None:
            lines.append("")
            lines.append("rigidity certificate for deformations of L2:")
            for ln in self.l2_certificate.summary().splitlines():
                lines.append("  " + ln)
        return "\n".join(lines)


def agaoka_diagram(sample_alphas=(2, 3)) -> DiagramReport:
    """For every ordered pair of labels: a verified witness edge, or a
    refutation naming the decisive obstruction."""
    reps = table1_representatives(sample_alphas)
    entries = {}
    cert = l2_rigidity(random_l2_deformation(random.Random(52), 1, 6, lam=1))
    for (la, ta) in reps:
        for (lb, tb) in reps:
            key = (str(la), str(lb))
            w = bundled_witness(la, lb)
            if w is not None:
                res = verify_witness(ta, tb, w)
                if not res.accepted:
                    raise AssertionError(
                        f"bundled witness {key} rejected: {res.reason}"
                    )
                entries[key] = DiagramEntry("edge", "verified witness")
                continue
            rep = obstruction_battery(ta, tb)
            if rep.refuted:
                detail = ""
                if lb == LABEL_L2:
                    detail = "corroborated by the L2 rigidity certificate"
                entries[key] = DiagramEntry("refuted", rep.decisive, detail)
                continue
            # distinct classes with target orbit at least as large cannot
            # degenerate: the boundary of an orbit has strictly smaller dim
            oa = 9 - derivation_dim(ta)
            ob = 9 - derivation_dim(tb)
            if la != lb and ob >= oa:
                entries[key] = DiagramEntry(
                    "refuted",
                    "orbit-dimension-equality",
                    f"distinct classes with dim O(target)={ob} >= dim O(source)={oa}",
                )
                continue
            entries[key] = DiagramEntry("inconclusive", "none")
    return DiagramReport(
        labels=[l for (l, _) in reps], entries=entries, l2_certificate=cert
    )
