"""Exact coefficient rings: rationals, truncated power series in t,
Laurent polynomials in t, and rational functions in t.

All values are immutable after construction and all operations are pure.
The base field is Q (arbitrary-precision rationals via fractions.Fraction).
"""

from __future__ import annotations

import math
from fractions import Fraction


class NotAUnit(ValueError):
    """Raised when inverting a series whose constant term is zero."""


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class TruncSeries:
    """Power series in t known modulo t^(order+1).

    coeffs has length order+1.  Binary operations carry order = min of the
    operand orders; equality compares coefficients up to the common order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [rat(c) for c in coeffs[: order + 1]]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def constant(cls, c, order):
        return cls([rat(c)], order)

    @classmethod
    def t_power(cls, k, order):
        if k < 0:
            raise ValueError("t_power needs k >= 0")
        cs = [Fraction(0)] * (order + 1)
        if k <= order:
            cs[k] = Fraction(1)
        return cls(cs, order)

    def _promote(self, other):
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.constant(rat(other), self.order)

    def __add__(self, other):
        o = self._promote(other)
        m = min(self.order, o.order)
        return TruncSeries([self.coeffs[i] + o.coeffs[i] for i in range(m + 1)], m)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._promote(other))

    def __rsub__(self, other):
        return self._promote(other) - self

    def __mul__(self, other):
        o = self._promote(other)
        m = min(self.order, o.order)
        out = [Fraction(0)] * (m + 1)
        for i, a in enumerate(self.coeffs[: m + 1]):
            if a == 0:
                continue
            for j in range(m + 1 - i):
                b = o.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(out, m)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.invert() ** (-n)
        result = TruncSeries.constant(1, self.order)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            o = self._promote(other)
        except TypeError:
            return NotImplemented
        m = min(self.order, o.order)
        return self.coeffs[: m + 1] == o.coeffs[: m + 1]

    def __hash__(self):
        raise TypeError("TruncSeries is unhashable (truncation-aware equality)")

    def is_zero(self):
        """True when every known coefficient vanishes."""
        return all(c == 0 for c in self.coeffs)

    def valuation(self):
        """Least exponent with nonzero known coefficient; None if zero mod
        t^(order+1) (the true valuation then exceeds the order)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def invert(self):
        """Multiplicative inverse modulo t^(order+1)."""
        if self.coeffs[0] == 0:
            raise NotAUnit("constant term is zero")
        u0 = self.coeffs[0]
        inv = [Fraction(1) / u0]
        for k in range(1, self.order + 1):
            s = sum(self.coeffs[i] * inv[k - i] for i in range(1, k + 1))
            inv.append(-s / u0)
        return TruncSeries(inv, self.order)

    def shift(self, k):
        """Multiply by the exact monomial t^k (k may be negative when the
        low coefficients vanish).  Known order moves with the shift."""
        if k >= 0:
            return TruncSeries(
                [Fraction(0)] * k + list(self.coeffs), self.order + k
            )
        if any(c != 0 for c in self.coeffs[:-k]):
            raise ValueError("shift below valuation")
        if self.order + k < 0:
            raise ValueError("shift exhausts known coefficients")
        return TruncSeries(list(self.coeffs[-k:]), self.order + k)

    def truncate(self, order):
        if order <= self.order:
            return TruncSeries(list(self.coeffs[: order + 1]), order)
        raise ValueError("cannot extend a truncated series")

    def eval_at_zero(self):
        return self.coeffs[0]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t" if c != 1 else "t")
            else:
                terms.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.order + 1})"


def series_invert(u: TruncSeries) -> TruncSeries:
    """Inverse of a unit series: u * series_invert(u) == 1 mod t^(order+1)."""
    return u.invert()


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Finite Q-linear combination of integer powers of t.

    Stored as {exponent: nonzero coefficient}; the zero polynomial has
    empty support and valuation +inf.
    """

    __slots__ = ("support",)

    def __init__(self, support=None):
        cleaned = {}
        if support:
            for e, c in support.items():
                c = rat(c)
                if c != 0:
                    cleaned[int(e)] = c
        self.support = cleaned

    @classmethod
    def constant(cls, c):
        return cls({0: rat(c)})

    @classmethod
    def t_power(cls, k, coeff=1):
        return cls({k: rat(coeff)})

    def _promote(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(rat(other))

    def is_zero(self):
        return not self.support

    def valuation(self):
        if not self.support:
            return math.inf
        return min(self.support)

    def degree(self):
        if not self.support:
            return -math.inf
        return max(self.support)

    def __add__(self, other):
        o = self._promote(other)
        out = dict(self.support)
        for e, c in o.support.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.support.items()})

    def __sub__(self, other):
        return self + (-self._promote(other))

    def __rsub__(self, other):
        return self._promote(other) - self

    def __mul__(self, other):
        o = self._promote(other)
        out = {}
        for e1, c1 in self.support.items():
            for e2, c2 in o.support.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers need RationalFunction")
        result = LaurentPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            o = self._promote(other)
        except TypeError:
            return NotImplemented
        return self.support == o.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def shift(self, k):
        return LaurentPoly({e + k: c for e, c in self.support.items()})

    def leading_coeff(self):
        """Coefficient of the highest power of t."""
        if not self.support:
            return Fraction(0)
        return self.support[max(self.support)]

    def eval_at_zero(self):
        if self.support and min(self.support) < 0:
            raise ValueError("negative valuation at t=0")
        return self.support.get(0, Fraction(0))

    def to_trunc(self, order):
        if self.support and min(self.support) < 0:
            raise ValueError("negative valuation cannot be truncated")
        cs = [Fraction(0)] * (order + 1)
        for e, c in self.support.items():
            if e <= order:
                cs[e] = c
        return TruncSeries(cs, order)

    def divmod_poly(self, other):
        """Polynomial division; both operands must have valuation >= 0."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if (self.support and min(self.support) < 0) or min(other.support) < 0:
            raise ValueError("divmod needs polynomial operands")
        rem = dict(self.support)
        quo = {}
        d = other.degree()
        lc = other.leading_coeff()
        while rem:
            e = max(rem)
            if e < d:
                break
            f = rem[e] / lc
            quo[e - d] = f
            for e2, c2 in other.support.items():
                tgt = e - d + e2
                v = rem.get(tgt, Fraction(0)) - f * c2
                if v == 0:
                    rem.pop(tgt, None)
                else:
                    rem[tgt] = v
        return LaurentPoly(quo), LaurentPoly(rem)

    def exact_div(self, other):
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise ValueError("inexact division")
        return q

    def __repr__(self):
        if not self.support:
            return "0"
        terms = []
        for e in sorted(self.support):
            c = self.support[e]
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append(f"{c}*t" if c != 1 else "t")
            else:
                terms.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
        return " + ".join(terms)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two polynomials (valuation >= 0) over Q."""
    while not b.is_zero():
        _, r = a.divmod_poly(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a * LaurentPoly.constant(Fraction(1) / a.leading_coeff())


def valuation(f):
    """t-adic valuation: min exponent of the support; +inf for 0.

    Accepts LaurentPoly and RationalFunction (v(num) - v(den) there).
    """
    if isinstance(f, LaurentPoly):
        return f.valuation()
    if isinstance(f, RationalFunction):
        return f.valuation()
    raise TypeError(f"no valuation for {type(f).__name__}")


def normalize_unit_part(f: LaurentPoly) -> LaurentPoly:
    """t^(-v(f)) * f, so the result has valuation 0; 0 maps to 0."""
    if f.is_zero():
        return f
    return f.shift(-f.valuation())


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Quotient of Laurent polynomials in canonical form: gcd(num, den) = 1
    and den monic with valuation 0.  Then valuation(f) = valuation(num)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(rat(num))
        if den is None:
            den = LaurentPoly.constant(1)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(rat(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = LaurentPoly()
            self.den = LaurentPoly.constant(1)
            return
        vn, vd = num.valuation(), den.valuation()
        pn, pd = num.shift(-vn), den.shift(-vd)
        g = poly_gcd(pn, pd)
        pn, pd = pn.exact_div(g), pd.exact_div(g)
        lc = pd.leading_coeff()
        pn = pn * LaurentPoly.constant(Fraction(1) / lc)
        pd = pd * LaurentPoly.constant(Fraction(1) / lc)
        self.num = pn.shift(vn - vd)
        self.den = pd

    @classmethod
    def constant(cls, c):
        return cls(LaurentPoly.constant(rat(c)))

    @classmethod
    def t_power(cls, k, coeff=1):
        return cls(LaurentPoly.t_power(k, coeff))

    @classmethod
    def from_laurent(cls, p):
        return cls(p)

    def _promote(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        return RationalFunction.constant(rat(other))

    def is_zero(self):
        return self.num.is_zero()

    def valuation(self):
        if self.is_zero():
            return math.inf
        return self.num.valuation()

    def __add__(self, other):
        o = self._promote(other)
        return RationalFunction(
            self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._promote(other))

    def __rsub__(self, other):
        return self._promote(other) - self

    def __mul__(self, other):
        o = self._promote(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._promote(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._promote(other) / self

    def __pow__(self, n):
        if n < 0:
            return (RationalFunction.constant(1) / self) ** (-n)
        result = RationalFunction.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self):
        return RationalFunction.constant(1) / self

    def __eq__(self, other):
        try:
            o = self._promote(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def eval_at_zero(self):
        v = self.valuation()
        if v is not math.inf and v < 0:
            raise ValueError("negative valuation at t=0")
        return self.num.eval_at_zero() / self.den.eval_at_zero()

    def to_trunc(self, order):
        """Series expansion mod t^(order+1); needs valuation >= 0."""
        v = self.valuation()
        if v is math.inf:
            return TruncSeries.constant(0, order)
        if v < 0:
            raise ValueError("negative valuation cannot be expanded at 0")
        return self.num.to_trunc(order) * self.den.to_trunc(order).invert()

    def __repr__(self):
        if self.den == LaurentPoly.constant(1):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------------------
# Ring descriptors
# ---------------------------------------------------------------------------

class Ring:
    """Descriptor for a coefficient ring: coercion plus zero/one."""

    name = "?"
    is_field = False

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero_elem(self, x):
        return self.coerce(x) == self.zero

    def __repr__(self):
        return self.name


class RationalField(Ring):
    name = "QQ"
    is_field = True

    def coerce(self, x):
        if isinstance(x, (LaurentPoly, RationalFunction, TruncSeries)):
            raise TypeError(f"cannot coerce {type(x).__name__} into QQ")
        return rat(x)


class LaurentRing(Ring):
    name = "QQ[t,t^-1]"

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (RationalFunction, TruncSeries)):
            raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")
        return LaurentPoly.constant(rat(x))


class RationalFunctionField(Ring):
    name = "QQ(t)"
    is_field = True

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, LaurentPoly):
            return RationalFunction(x)
        if isinstance(x, TruncSeries):
            raise TypeError("cannot coerce TruncSeries into QQ(t)")
        return RationalFunction.constant(rat(x))


class SeriesRing(Ring):
    """Truncated series ring QQ[[t]] / t^(order+1)."""

    def __init__(self, order):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        self.name = f"QQ[[t]]/t^{order + 1}"

    def coerce(self, x):
        if isinstance(x, TruncSeries):
            if x.order < self.order:
                raise ValueError(
                    f"series of order {x.order} in ring of order {self.order}"
                )
            return x.truncate(self.order) if x.order > self.order else x
        if isinstance(x, LaurentPoly):
            return x.to_trunc(self.order)
        if isinstance(x, RationalFunction):
            return x.to_trunc(self.order)
        return TruncSeries.constant(rat(x), self.order)

    def is_zero_elem(self, x):
        return self.coerce(x).is_zero()

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and other.order == self.order

    def __hash__(self):
        return hash(("SeriesRing", self.order))


QQ = RationalField()
LAURENT = LaurentRing()
RATFUNC = RationalFunctionField()
