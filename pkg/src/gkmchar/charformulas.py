"""Weyl, cohomological and Weyl-Kac character formulas in closed form.

Every formula is evaluated over the full Weyl denominator of G: the sum over
cosets wW_H is rewritten as 1/|W_H| times a sum over all of W_G, after
multiplying numerator and denominator by the H-part of the denominator.  The
numerator is then alternating and the quotient is computed by exact
cancellation of one factor at a time.  For H = T this is literally the sum
over W_G of det(w) w(f) over the Weyl denominator.

These are independent of :mod:`gkmchar.localize`, which sums fixed-point
contributions over the common denominator of the occurring Euler classes.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly, Poly, binomial, divide_exact_binomial, poly_divide_exact_linear, weyl_act
from .momentgraph import is_invariant
from .qseries import QSeries, phi, qs_divide, qs_mul, theta, weyl_kac_denominator
from .rootdata import COORDINATES, EqualRankPair, RootSystem, dual_coxeter_number, looijenga_form, wadd, wneg


def _alternating_sum(rs: RootSystem, f):
    out = None
    for w in rs.weyl_group:
        term = weyl_act(w, f)
        term = term if w.det > 0 else -term
        out = term if out is None else out + term
    return out


def weyl_denominator(rs: RootSystem) -> LaurentPoly:
    """prod over positive roots of (z^{a/2} - z^{-a/2})."""
    out = LaurentPoly.constant(rs.rank)
    for a in rs.positive_roots:
        half = tuple(c // 2 for c in a)
        out = out * (LaurentPoly.monomial(half) - LaurentPoly.monomial(wneg(half)))
    return out


def weyl_numerator(rs: RootSystem, lam=None) -> LaurentPoly:
    """sum_w det(w) z^{w(lam)}; lam defaults to rho."""
    lam = rs.rho if lam is None else tuple(lam)
    return _alternating_sum(rs, LaurentPoly.monomial(lam))


def weyl_ind(p: EqualRankPair, chi: LaurentPoly) -> LaurentPoly:
    """Character of the representation induced from the H-character ``chi``.

    sum_{[w]} w(chi) / prod_{a in R} (1 - z^{w a})
      = (-1)^N / |W_H| * sum_{w in W_G} det(w) w(chi * P_H * z^rho) / Delta_G
    with P_H = prod over negative H-roots of (1 - z^b), N the number of
    positive roots of G and Delta_G = z^{-rho} prod_{b>0} (1 - z^b).
    """
    if not is_invariant(p, chi):
        raise ValueError("character is not W_H-invariant")
    rs = p.ambient
    f = chi.shift(rs.rho)
    for b in p.negative_roots_H:
        f = f * binomial(b)
    num = _alternating_sum(rs, f).shift(rs.rho)
    for b in rs.positive_roots:
        num = divide_exact_binomial(num, b)
    sign = -1 if len(rs.positive_roots) % 2 else 1
    return num * Fraction(sign, len(p.W_H))


def cohomology_pushforward(p: EqualRankPair, f: Poly) -> Poly:
    """sum_{[w]} w(f) / prod_{a in R} w(a), i.e. 1/|W_H| sum det(w) w(f P_H) / prod_{a<0} a.

    For H = T this is sum_w det(w) f^w / prod_{a in R} a.
    """
    if not is_invariant(p, f):
        raise ValueError("polynomial is not W_H-invariant")
    rs = p.ambient
    g = f
    for b in p.negative_roots_H:
        g = g * Poly.linear(b)
    num = _alternating_sum(rs, g)
    for a in rs.negative_roots:
        num = poly_divide_exact_linear(num, a)
    return num * Fraction(1, len(p.W_H))


def kac_ind(p: EqualRankPair, f: QSeries, order: int | None = None) -> QSeries:
    """(-Phi)^d sum det(w) w(f) / [prod_{a in R} (z^{a/2}-z^{-a/2}) prod_n (1-q^n z^a)(1-q^n z^-a)].

    For general H the coset sum is expanded over W_G as in :func:`weyl_ind`.
    """
    if not is_invariant(p, f):
        raise ValueError("theta function is not W_H-invariant")
    rs = p.ambient
    rank = rs.rank
    order = f.order if order is None else min(order, f.order)
    f = f.truncate(order)
    if f.is_zero():
        return QSeries.zero(rank, order)
    d = p.dimension
    if p.negative_roots_H:
        dh, _ = weyl_kac_denominator(p.negative_roots_H, order, rank)
        f = qs_mul(f, dh)
    num = _alternating_sum(rs, f)
    minus_phi = -phi(order, rank)
    for _ in range(d):
        num = qs_mul(num, minus_phi)
    num = num * Fraction(1, len(p.W_H))
    den, lead = weyl_kac_denominator(rs.negative_roots, order, rank)
    return qs_divide(num, den, lead)


def kac_fiber_ind(p: EqualRankPair, f: QSeries, order: int | None = None) -> QSeries:
    """Induction along the fibre H/T of G/T -> G/H.

    (-Phi)^{d_H} sum_{u in W_H} det(u) u(f) / prod over negative H-roots of the
    Weyl-Kac factor.  The result is W_H-invariant with exponents in rho_H + P,
    which is what the elliptic push-forward from G/H needs, and
    kac_ind(p, kac_fiber_ind(p, f)) = kac_ind(G/T, f).
    """
    rank = p.ambient.rank
    order = f.order if order is None else min(order, f.order)
    f = f.truncate(order)
    neg = p.negative_roots_H
    if not neg:
        return f
    alt = None
    for u in p.W_H:
        term = weyl_act(u, f) if u.det > 0 else -weyl_act(u, f)
        alt = term if alt is None else alt + term
    minus_phi = -phi(order, rank)
    for _ in neg:
        alt = qs_mul(alt, minus_phi)
    den, lead = weyl_kac_denominator(neg, order, rank)
    return qs_divide(alt, den, lead)


def kac_numerator(rs: RootSystem, level: int, lam, order: int) -> QSeries:
    """sum_w det(w) theta_{level, w(lam)}, built from the individual theta functions."""
    form = looijenga_form(rs)
    out = None
    for w in rs.weyl_group:
        t = theta(level, form, order, w.act(tuple(lam)))
        t = t if w.det > 0 else -t
        out = t if out is None else out + t
    return out


def kac_basis_ind(rs: RootSystem, level: int, lam, order: int) -> QSeries:
    """ind(theta_{level+g, lam}) for H = T; the result has level ``level``."""
    g = dual_coxeter_number(rs)
    lam = tuple(lam)
    num = kac_numerator(rs, level + g, lam, order)
    d = len(rs.positive_roots)
    minus_phi = -phi(order, rs.rank)
    for _ in range(d):
        num = qs_mul(num, minus_phi)
    den, lead = weyl_kac_denominator(rs.negative_roots, order, rs.rank)
    return qs_divide(num, den, lead)


def kac_metadata(rs: RootSystem, level: int, lam) -> dict:
    """Bookkeeping reported alongside kac_basis_ind (not used in computation)."""
    g = dual_coxeter_number(rs)
    return {
        "type": str(rs.cartan_type),
        "level": level,
        "theta_level": level + g,
        "dual_coxeter": g,
        "coordinates": COORDINATES,
        "weight": list(lam),
        "shifted_highest_weight": list(wadd(tuple(lam), rs.rho)),
        "dimension": len(rs.positive_roots),
        # the overall sign/normalisation of the printed formula is kept as is;
        # comparisons with loop-group tables differ by +-Phi^(d+r)
        "normalization": "(-Phi)^d * numerator / denominator, no further factor",
        "residual_sign_undetermined": True,
    }
