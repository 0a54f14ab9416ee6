"""Euler classes at fixed points and the localization push-forward to a point.

At the fixed point [w] of G/H the tangent weights are w(alpha) for alpha in
R = (negative roots of G) minus (roots of H).  The Euler class is

    H:   prod w(alpha)                     (linear forms)
    K:   prod (1 - z^{w(alpha)})
    Ell: (-1)^|R| prod sigma(q, z^{w(alpha)})

The push-forward sum_v s_v / e_v is put over the common denominator
prod (factor for beta) with beta running over the positive roots that occur,
then every factor is cancelled by exact division.  A remainder means the
input was not the restriction of a genuine class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPoly, NotDivisible, Poly, binomial, divide_exact_binomial, poly_divide_exact_linear
from .momentgraph import GKMSection, MomentGraph, Theory, check_gkm
from .qseries import Factored, QSeries, elliptic_euler, qs_divide, qs_mul, sigma
from .rootdata import EqualRankPair, WeylElement, wadd, whalf, wneg


class NotGKM(NotDivisible):
    """Section fails the GKM edge condition; ``witness`` is the failing edge."""


@dataclass(frozen=True)
class EulerClass:
    vertex: WeylElement
    weights: tuple
    theory: Theory
    rank: int

    def canonical(self, is_positive) -> tuple:
        """(sign, positives) with prod over weights = sign-adjusted prod over positives.

        For K-theory the unit also carries a monomial: 1 - z^g = -z^g (1 - z^{-g}).
        Returns (coeff, monomial, positives).
        """
        coeff, mono, pos = 1, (0,) * self.rank, []
        for g in self.weights:
            if is_positive(g):
                pos.append(g)
            else:
                coeff = -coeff
                pos.append(wneg(g))
                if self.theory is Theory.K_THEORY:
                    mono = wadd(mono, g)
        if self.theory is Theory.ELLIPTIC and len(self.weights) % 2:
            coeff = -coeff
        return coeff, mono, tuple(pos)

    def value(self, order: int | None = None):
        rank = self.rank
        if self.theory is Theory.K_THEORY:
            out = LaurentPoly.constant(rank)
            for g in self.weights:
                out = out * binomial(g)
            return out
        if self.theory is Theory.COHOMOLOGY:
            out = Poly.constant(rank)
            for g in self.weights:
                out = out * Poly.linear(g)
            return out
        if order is None:
            raise ValueError("elliptic Euler class needs a truncation order")
        return elliptic_euler(self.weights, order, rank)


def euler_class(p: EqualRankPair, v: WeylElement, theory) -> EulerClass:
    theory = Theory.of(theory)
    return EulerClass(v, tuple(v.act(a) for a in p.R), theory, p.ambient.rank)


def euler_data(p: EqualRankPair, theory, vertices=None) -> dict:
    vertices = vertices if vertices is not None else [w for w, _ in p.cosets]
    return {v: euler_class(p, v, theory) for v in vertices}


def _common_roots(canon: dict, rs) -> list:
    seen = set()
    for _, _, pos in canon.values():
        seen.update(pos)
    return sorted(seen, key=lambda b: (rs.height(b), b))


def pushforward(g: MomentGraph, s: GKMSection, e: dict | None = None, order: int | None = None, verify: bool = True):
    """sum over fixed points of s_v / e_v, returned as a genuine ring element.

    Raises NotGKM when ``verify`` is set and the section fails an edge
    condition (not available for the elliptic theory), and NotDivisible if the
    localized sum does not cancel.
    """
    theory = Theory.of(s.theory)
    p = g.pair
    rs = p.ambient
    rank = rs.rank
    e = e if e is not None else euler_data(p, theory, g.vertices)
    if set(e) != set(g.vertices) or set(s.values) != set(g.vertices):
        raise ValueError("section and Euler data must share the vertex set")
    if any(ec.theory is not theory for ec in e.values()):
        raise ValueError("Euler data theory does not match the section")
    if verify and theory is not Theory.ELLIPTIC:
        ok, edge = check_gkm(g, s)
        if not ok:
            raise NotGKM(f"section fails the GKM condition on edge {edge.source.name()}--{edge.target.name()}",
                         witness=edge)

    canon = {v: e[v].canonical(rs.is_positive_root) for v in g.vertices}
    common = _common_roots(canon, rs)

    if theory is Theory.K_THEORY:
        num = LaurentPoly.zero(rank)
        for v in g.vertices:
            coeff, mono, pos = canon[v]
            term = s.values[v].shift(wneg(mono)) * Fraction(1, coeff)
            for b in common:
                if b not in pos:
                    term = term * binomial(b)
            num = num + term
        for b in common:
            num = divide_exact_binomial(num, b)
        return num

    if theory is Theory.COHOMOLOGY:
        num = Poly.zero(rank)
        for v in g.vertices:
            coeff, _, pos = canon[v]
            term = s.values[v] * Fraction(1, coeff)
            for b in common:
                if b not in pos:
                    term = term * Poly.linear(b)
            num = num + term
        for b in common:
            num = poly_divide_exact_linear(num, b)
        return num

    # elliptic
    if order is None:
        order = min(val.order for val in s.values.values())
    sig = {b: sigma(b, order) for b in common}
    num = QSeries.zero(rank, order)
    for v in g.vertices:
        coeff, _, pos = canon[v]
        term = s.values[v].truncate(order) * Fraction(1, coeff)
        for b in common:
            if b not in pos:
                term = qs_mul(term, sig[b])
        num = num + term
    den = QSeries.constant(LaurentPoly.constant(rank), order)
    lead = Factored(rank, Fraction(1), (0,) * rank, ())
    for b in common:
        den = qs_mul(den, sig[b])
        lead = lead.times(Factored(rank, Fraction(1), whalf(b), (wneg(b),)))
    return qs_divide(num, den, lead)
