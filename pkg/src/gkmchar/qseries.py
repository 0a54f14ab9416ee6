"""Truncated q-series with Laurent polynomial coefficients.

A :class:`QSeries` stores coefficients for q^min_order .. q^order; everything
above ``order`` is unknown, not zero.  Arithmetic tracks how far results are
determined.  On top of this sit the sigma function, Phi(q), the elliptic Euler
class, Looijenga theta functions and exact order-by-order division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPoly, NotDivisible, divide_exact_binomial, weyl_act
from .lattice import points_below
from .rootdata import LevelForm, Weight, is_integral, pairing, wadd, whalf, wneg, wscale


class QSeries:
    """sum_{m=min_order}^{order} c_m q^m + O(q^(order+1)), c_m LaurentPoly.

    Leading zero coefficients are stripped, so ``min_order`` is the order of
    the first nonzero coefficient (``order + 1`` for a series known to vanish).
    """

    __slots__ = ("rank", "min_order", "order", "coeffs")

    def __init__(self, rank: int, coeffs, order: int, min_order: int = 0):
        if isinstance(coeffs, dict):
            items = {m: c for m, c in coeffs.items() if m <= order}
            lo = min(items, default=order + 1)
            seq = [items.get(m, LaurentPoly.zero(rank)) for m in range(lo, order + 1)]
        else:
            seq = list(coeffs)[: max(0, order - min_order + 1)]
            lo = min_order
        seq = [_as_laurent(rank, c) for c in seq]
        while seq and seq[0].is_zero():
            seq.pop(0)
            lo += 1
        if not seq:
            lo = order + 1
        while len(seq) < order - lo + 1:
            seq.append(LaurentPoly.zero(rank))
        self.rank = rank
        self.min_order = lo
        self.order = order
        self.coeffs = tuple(seq)

    # -- constructors ----------------------------------------------------------
    @classmethod
    def constant(cls, c, order: int, rank: int | None = None) -> "QSeries":
        c = _as_laurent(rank, c)
        return cls(c.rank, [c], order, 0)

    @classmethod
    def zero(cls, rank: int, order: int) -> "QSeries":
        return cls(rank, [], order, order + 1)

    # -- access ----------------------------------------------------------------
    def __getitem__(self, m: int) -> LaurentPoly:
        if m > self.order:
            raise IndexError(f"q^{m} is beyond the truncation order {self.order}")
        if m < self.min_order:
            return LaurentPoly.zero(self.rank)
        return self.coeffs[m - self.min_order]

    def items(self):
        """(order, coefficient) pairs for nonzero coefficients."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield self.min_order + i, c

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> LaurentPoly:
        if not self.coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend truncation order {self.order} to {order}")
        return QSeries(self.rank, self.coeffs, order, self.min_order)

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QSeries):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self._add_exact(_as_laurent(self.rank, other), 0)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        lo = min(self.min_order, other.min_order)
        return QSeries(self.rank, [self[m] + other[m] for m in range(lo, order + 1)], order, lo)

    __radd__ = __add__

    def _add_exact(self, c: LaurentPoly, m: int) -> "QSeries":
        if m > self.order:
            return self
        d = dict(self.items())
        d[m] = d.get(m, LaurentPoly.zero(self.rank)) + c
        return QSeries(self.rank, d, self.order, min(self.min_order, m))

    def __neg__(self):
        return QSeries(self.rank, [-c for c in self.coeffs], self.order, self.min_order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            c = _as_laurent(self.rank, other)
            return QSeries(self.rank, [a * c for a in self.coeffs], self.order, self.min_order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return qs_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use qs_divide for inverses")
        out = QSeries.constant(LaurentPoly.constant(self.rank), self.order)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, s: int) -> "QSeries":
        """Multiply by q^s."""
        return QSeries(self.rank, self.coeffs, self.order + s, self.min_order + s)

    def weyl_act(self, w) -> "QSeries":
        return QSeries(self.rank, [weyl_act(w, c) for c in self.coeffs], self.order, self.min_order)

    def map(self, fn) -> "QSeries":
        return QSeries(self.rank, [fn(c) for c in self.coeffs], self.order, self.min_order)

    def __eq__(self, other):
        """Equality of all coefficients through the common truncation order."""
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.rank != self.rank:
            return False
        order = min(self.order, other.order)
        lo = min(self.min_order, other.min_order)
        return all(self[m] == other[m] for m in range(lo, order + 1))

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "min_order": self.min_order,
            "N": self.order,
            "coeffs": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, rank: int, data) -> "QSeries":
        return cls(rank, [LaurentPoly.from_json(rank, c) for c in data["coeffs"]], data["N"], data["min_order"])

    def __str__(self):
        parts = []
        for m, c in self.items():
            qm = "" if m == 0 else ("q" if m == 1 else f"q^{m}")
            body = str(c)
            if qm:
                body = f"({body})*{qm}" if len(c) > 1 or body.startswith("-") else (
                    qm if body == "1" else f"{body}*{qm}")
            parts.append(body)
        if not parts:
            parts.append("0")
        parts.append(f"O(q^{self.order + 1})")
        return " + ".join(parts)

    def __repr__(self):
        return f"QSeries(rank={self.rank}, min_order={self.min_order}, order={self.order}, coeffs={self.coeffs!r})"


def _as_laurent(rank, c) -> LaurentPoly:
    if isinstance(c, LaurentPoly):
        if rank is not None and c.rank != rank:
            raise ValueError("rank mismatch")
        return c
    if rank is None:
        raise ValueError("rank needed for scalar coefficient")
    return LaurentPoly.constant(rank, c)


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product; known through min(N_a + lo_b, N_b + lo_a)."""
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    order = min(a.order + b.min_order, b.order + a.min_order)
    lo = a.min_order + b.min_order
    if a.is_zero() or b.is_zero():
        return QSeries.zero(a.rank, order)
    out = []
    for m in range(lo, order + 1):
        acc = LaurentPoly.zero(a.rank)
        for i in range(a.min_order, m - b.min_order + 1):
            ca, cb = a[i], b[m - i]
            if ca and cb:
                acc = acc + ca * cb
        out.append(acc)
    return QSeries(a.rank, out, order, lo)


# ---------------------------------------------------------------------------
# factored leading coefficients and division


@dataclass(frozen=True)
class Factored:
    """coeff * z^monomial * prod (1 - z^beta) for beta in binomials."""

    rank: int
    coeff: Fraction = Fraction(1)
    monomial: Weight | None = None
    binomials: tuple = ()

    def expand(self) -> LaurentPoly:
        mono = self.monomial if self.monomial is not None else (0,) * self.rank
        out = LaurentPoly.monomial(mono, self.coeff)
        for b in self.binomials:
            out = out - out.shift(b)
        return out

    def divide(self, f: LaurentPoly) -> LaurentPoly:
        """Exact f / self, raising NotDivisible."""
        g = f * (Fraction(1) / Fraction(self.coeff))
        if self.monomial is not None:
            g = g.shift(wneg(self.monomial))
        for b in self.binomials:
            g = divide_exact_binomial(g, b)
        return g

    def times(self, other: "Factored") -> "Factored":
        mono = wadd(self.monomial or (0,) * self.rank, other.monomial or (0,) * self.rank)
        return Factored(self.rank, Fraction(self.coeff) * Fraction(other.coeff), mono, self.binomials + other.binomials)


def qs_divide(num: QSeries, den: QSeries, lead: Factored | None = None) -> QSeries:
    """Exact quotient C with num = den * C through the determined orders.

    ``lead`` is the lowest coefficient of ``den`` in factored form; when
    omitted that coefficient must be a single monomial.  Each order is solved
    as C_m = (num_m - sum_{i<m} C_i den_{m-i}) / D_0 with exact Laurent
    division; failure raises NotDivisible carrying the q-order.
    """
    if num.rank != den.rank:
        raise ValueError("rank mismatch")
    if den.is_zero():
        raise ZeroDivisionError("division by a series that vanishes through its order")
    d0 = den.leading()
    if lead is None:
        if not d0.is_monomial():
            raise ValueError("leading coefficient must be supplied in factored form")
        (e, c), = d0.items()
        lead = Factored(num.rank, c, e, ())
    elif lead.expand() != d0:
        raise ValueError("factored leading coefficient does not match the denominator")
    c0 = num.min_order - den.min_order
    if num.is_zero():
        return QSeries.zero(num.rank, num.order - den.min_order)
    span = min(num.order - num.min_order, den.order - den.min_order)
    quot = []
    for j in range(span + 1):
        acc = num[num.min_order + j]
        for i in range(j):
            if quot[i]:
                dj = den[den.min_order + j - i]
                if dj:
                    acc = acc - quot[i] * dj
        try:
            quot.append(lead.divide(acc))
        except NotDivisible as exc:
            raise NotDivisible(f"series division fails at q^{c0 + j}: {exc}",
                               witness={"order": c0 + j, "detail": exc.witness}) from None
    return QSeries(num.rank, quot, c0 + span, c0)


# ---------------------------------------------------------------------------
# special series


def phi(order: int, rank: int = 1) -> QSeries:
    """Phi(q) = prod_{n>=1} (1 - q^n)^2 through q^order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for n in range(1, order + 1):
        for _ in range(2):
            for m in range(order, n - 1, -1):
                coeffs[m] -= coeffs[m - n]
    return QSeries(rank, [LaurentPoly.constant(rank, c) for c in coeffs], order, 0)


def phi_inverse(order: int, rank: int = 1) -> QSeries:
    one = QSeries.constant(LaurentPoly.constant(rank), order)
    return qs_divide(one, phi(order, rank))


def _wall_product(lam: Weight, order: int) -> QSeries:
    """prod_{n=1}^{order} (1 - q^n z^lam)(1 - q^n z^-lam)."""
    rank = len(lam)
    one = LaurentPoly.constant(rank)
    zl, zm = LaurentPoly.monomial(lam), LaurentPoly.monomial(wneg(lam))
    out = QSeries.constant(one, order)
    for n in range(1, order + 1):
        for mono in (zl, zm):
            factor = QSeries(rank, {0: one, n: -mono}, order)
            out = qs_mul(out, factor)
    return out


def sigma(lam: Weight, order: int) -> QSeries:
    """Weierstrass sigma function evaluated at z^lam, through q^order."""
    lam = tuple(lam)
    if not any(lam):
        raise ValueError("sigma needs a nonzero weight")
    if not is_integral(lam):
        raise ValueError(f"sigma needs an integral weight, got {lam}")
    half = whalf(lam)
    lead = LaurentPoly.monomial(half) - LaurentPoly.monomial(wneg(half))
    prod = _wall_product(lam, order) * lead
    return qs_mul(prod, phi_inverse(order, len(lam)))


def elliptic_euler(weights, order: int, rank: int | None = None) -> QSeries:
    """(-1)^n prod sigma(z^lam_i) over the n given weights."""
    weights = [tuple(w) for w in weights]
    if rank is None:
        if not weights:
            raise ValueError("rank needed for an empty weight list")
        rank = len(weights[0])
    out = QSeries.constant(LaurentPoly.constant(rank, (-1) ** len(weights)), order)
    for w in weights:
        if not any(w):
            raise ValueError("elliptic Euler class of a trivial summand")
        out = qs_mul(out, sigma(w, order))
    return out


def weyl_kac_denominator(weights, order: int, rank: int) -> tuple:
    """prod (z^{a/2} - z^{-a/2}) prod_n (1 - q^n z^a)(1 - q^n z^-a), with its factored lead.

    Each leading factor is rewritten z^{a/2} - z^{-a/2} = z^{a/2} (1 - z^{-a}).
    """
    one = LaurentPoly.constant(rank)
    out = QSeries.constant(one, order)
    lead = Factored(rank, Fraction(1), (0,) * rank, ())
    for a in weights:
        half = whalf(a)
        out = qs_mul(out, _wall_product(a, order) * (LaurentPoly.monomial(half) - LaurentPoly.monomial(wneg(half))))
        lead = lead.times(Factored(rank, Fraction(1), half, (wneg(a),)))
    return out, lead


# ---------------------------------------------------------------------------
# theta functions


@dataclass(frozen=True)
class ThetaIndex:
    level: int
    weight: Weight

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("theta level must be positive")
        if not is_integral(self.weight):
            raise ValueError(f"theta index weight {self.weight} is not integral")


def _pairing_vector(lam: Weight) -> list:
    """lam(alpha_i^vee) for each simple coroot."""
    return [Fraction(c, 2) for c in lam]


def theta_terms(level: int, lam: Weight, form: LevelForm, order: int) -> list:
    """(q-exponent, z-exponent) for every x with level*phi(x) + lam(x) <= order."""
    a = [[level * v for v in row] for row in form.gram]
    pts = points_below(a, _pairing_vector(lam), order)
    out = []
    for x in pts:
        e = level * form.phi(x) + pairing(lam, x)
        assert e.denominator == 1
        out.append((int(e), wadd(wscale(form.sharp(x), level), lam), x))
    return out


def theta(idx: ThetaIndex | int, form: LevelForm, order: int, weight: Weight | None = None) -> QSeries:
    """Looijenga theta function theta_{k,lam} through q^order.

    Call as ``theta(ThetaIndex(k, lam), form, N)`` or ``theta(k, form, N, lam)``.
    """
    if not isinstance(idx, ThetaIndex):
        idx = ThetaIndex(idx, tuple(weight))
    if order < 0:
        raise ValueError("order must be nonnegative")
    rank = form.rank
    coeffs = {}
    for m, mu, _ in theta_terms(idx.level, idx.weight, form, order):
        coeffs.setdefault(m, {})
        coeffs[m][mu] = coeffs[m].get(mu, 0) + 1
    lo = min(coeffs)
    return QSeries(rank, {m: LaurentPoly(rank, t) for m, t in coeffs.items()}, order, lo)


def _reduce_index(level: int, lam: Weight, form: LevelForm) -> tuple:
    """Representative of lam mod level*I#(coroot lattice) minimising the q-shift.

    Returns (rep, y) with rep = lam + level*I#(y) and level*phi(y) + lam(y)
    minimal (ties broken by the smallest rep), so theta_{level,rep} starts at q^0.
    """
    terms = theta_terms(level, lam, form, 0)
    best = min(terms, key=lambda t: (t[0], t[1]))
    return best[1], best[2]


def reduce_theta_index(level: int, lam: Weight, form: LevelForm) -> Weight:
    return _reduce_index(level, tuple(lam), form)[0]


def theta_index_set(level: int, form: LevelForm) -> list:
    """Canonical representatives of Lambda / level*I#(Lambda^vee), sorted.

    Grown breadth-first from 0 by fundamental weights, canonicalising each
    class with :func:`reduce_theta_index`; the count equals det(level * gram).
    """
    from .rootdata import int_det

    rank = form.rank
    expected = abs(int_det([[level * v for v in row] for row in form.gram]))
    start = reduce_theta_index(level, (0,) * rank, form)
    seen = {start}
    frontier = [start]
    steps = []
    for i in range(rank):
        e = tuple(2 * (j == i) for j in range(rank))
        steps += [e, wneg(e)]
    while frontier:
        nxt = []
        for lam in frontier:
            for s in steps:
                rep = reduce_theta_index(level, wadd(lam, s), form)
                if rep not in seen:
                    seen.add(rep)
                    nxt.append(rep)
        frontier = nxt
    if len(seen) != expected:
        raise RuntimeError(f"index set has {len(seen)} classes, expected {expected}")
    return sorted(seen)


def _qp_mismatch(f: QSeries, level: int, x, form: LevelForm):
    """First coefficient pair violating f(q^x z) = q^{-k phi(x)} z^{-k I#(x)} f(z)."""
    kphi = level * form.phi(x)
    if kphi.denominator != 1:
        raise ValueError("level * phi(x) is not an integer")
    kphi = int(kphi)
    if f.order - kphi < f.min_order and not f.is_zero():
        raise ValueError(f"empty comparison window: order {f.order} too small for k*phi(x) = {kphi}")
    shift = wscale(form.sharp(x), level)
    N = f.order

    def coeff(m, mu):
        if m < f.min_order or m > N:
            return Fraction(0)
        return f[m].coefficient(mu)

    for m, c in f.items():
        for mu, v in c.items():
            p = pairing(mu, x)
            # forward: (m, mu) -> (m + mu(x) + k phi(x), mu + k I#(x))
            tm = m + p + kphi
            if tm.denominator != 1:
                return (m, mu), None
            tm = int(tm)
            if tm <= N and coeff(tm, wadd(mu, shift)) != v:
                return (m, mu), (tm, wadd(mu, shift))
            # backward: source of (m, mu) is (m - mu(x) + k phi(x), mu - k I#(x))
            sm = m - p + kphi
            sm = int(sm)
            src = tuple(a - b for a, b in zip(mu, shift))
            if sm <= N and coeff(sm, src) != v:
                return (sm, src), (m, mu)
    return None


def quasi_periodicity_check(f: QSeries, level: int, x, form: LevelForm) -> bool:
    """Check the level-``level`` Looijenga transformation law along coroot x.

    The substitution z^mu -> q^{mu(x)} z^mu pairs coefficient (m, mu) with
    (m + mu(x) + k phi(x), mu + k I#(x)); every pair whose orders are both
    within the truncation is compared.
    """
    return _qp_mismatch(f, level, tuple(x), form) is None
