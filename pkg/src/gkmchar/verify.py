"""On-demand invariant suites used by ``gkmchar verify``.

Each suite returns a :class:`Report`: an overall verdict plus one line per
check.  Failures carry a witness in their line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .charformulas import kac_basis_ind, kac_numerator, weyl_denominator, weyl_ind, weyl_numerator
from .laurent import LaurentPoly, NotDivisible, chern_character, orbit_sum, weyl_act
from .momentgraph import GKMSection, Theory, build_moment_graph, check_gkm, restrict_character
from .qseries import _qp_mismatch, theta, theta_index_set
from .rootdata import EqualRankPair, RootSystem, dual_coxeter_number, fund_coords, looijenga_form, weight, wneg


@dataclass
class Report:
    suite: str
    ok: bool = True
    lines: list = field(default_factory=list)

    def check(self, cond: bool, what: str, witness=None) -> bool:
        if cond:
            self.lines.append(f"PASS {what}")
        else:
            self.ok = False
            tail = f" (witness: {witness})" if witness is not None else ""
            self.lines.append(f"FAIL {what}{tail}")
        return cond

    def note(self, text: str):
        self.lines.append(f"  {text}")

    def text(self) -> str:
        return "\n".join(self.lines + [f"{self.suite}: {'PASS' if self.ok else 'FAIL'}"])


def _fmt(lam) -> str:
    return "(" + ",".join(str(c) for c in fund_coords(lam)) + ")"


def small_weights(rank: int, height: int) -> list:
    """Integral weights with sum of |fundamental coordinates| <= height."""
    out = []
    for c in product(range(-height, height + 1), repeat=rank):
        if sum(abs(v) for v in c) <= height:
            out.append(weight(c))
    return sorted(out)


def invariant_orbit_characters(p: EqualRankPair, height: int = 3) -> list:
    """Distinct W_H-orbit sums of z^lam over the weights of :func:`small_weights`."""
    seen, out = set(), []
    for lam in small_weights(p.ambient.rank, height):
        chi = orbit_sum(p.W_H, lam)
        if chi not in seen:
            seen.add(chi)
            out.append((lam, chi))
    return out


def denominator_suite(rs: RootSystem) -> Report:
    rep = Report(f"denominator {rs.cartan_type}")
    lhs, rhs = weyl_numerator(rs), weyl_denominator(rs)
    rep.check(lhs == rhs, f"sum det(w) z^w(rho) = prod (z^a/2 - z^-a/2) over |W| = {len(rs.weyl_group)}",
              witness=lhs - rhs)
    return rep


def gkm_suite(p: EqualRankPair, height: int = 3, degrees: int = 3) -> Report:
    """Restrictions of invariant characters and their Chern parts satisfy GKM."""
    rs = p.ambient
    g = build_moment_graph(p)
    rep = Report(f"gkm {rs.cartan_type} sub={_fmt_sub(p)}")
    rep.note(f"{len(g.vertices)} vertices, {len(g.edges)} edges")
    bad_k = bad_h = 0
    chars = invariant_orbit_characters(p, height)
    for lam, chi in chars:
        ok, e = check_gkm(g, restrict_character(g, chi))
        if not ok:
            bad_k += 1
            rep.check(False, f"K-theory section of orbit {_fmt(lam)}", witness=e.label)
        for j in range(degrees + 1):
            ok, e = check_gkm(g, restrict_character(g, chern_character(chi, j)))
            if not ok:
                bad_h += 1
                rep.check(False, f"cohomology section ch_{j} of orbit {_fmt(lam)}", witness=e.label)
    rep.check(bad_k == 0, f"K-theory GKM for {len(chars)} orbit characters of height <= {height}")
    rep.check(bad_h == 0, f"cohomology GKM for their Chern parts of degree <= {degrees}")
    if g.edges:
        # a section that is nonzero at one vertex only is never a class
        v = g.vertices[0]
        vals = {u: LaurentPoly.zero(rs.rank) for u in g.vertices}
        vals[v] = LaurentPoly.constant(rs.rank)
        ok, e = check_gkm(g, GKMSection(vals, Theory.K_THEORY))
        rep.check(not ok, "point-supported constant is rejected", witness=None if not ok else "accepted")
    return rep


def _fmt_sub(p: EqualRankPair) -> str:
    idx = [i + 1 for i, a in enumerate(p.ambient.simple_roots) if a in p.sub_simple_roots]
    return ",".join(map(str, idx)) if len(idx) == len(p.sub_simple_roots) else str(list(p.sub_simple_roots))


def simple_coroots(rank: int) -> list:
    return [tuple(int(i == j) for j in range(rank)) for i in range(rank)]


def theta_suite(rs: RootSystem, level: int, order: int) -> Report:
    """Quasi-periodicity along simple coroots and W-equivariance of every basis theta."""
    form = looijenga_form(rs)
    rep = Report(f"theta {rs.cartan_type} level {level} through q^{order}")
    idx = theta_index_set(level, form)
    rep.note(f"{len(idx)} basis theta functions")
    for lam in idx:
        t = theta(level, form, order, lam)
        for x in simple_coroots(rs.rank):
            bad = _qp_mismatch(t, level, x, form)
            rep.check(bad is None, f"theta_{level},{_fmt(lam)} quasi-periodic along {x}", witness=bad)
        worst = None
        for w in rs.weyl_group:
            if weyl_act(w, t) != theta(level, form, order, w.act(lam)):
                worst = w.name()
                break
        rep.check(worst is None, f"theta_{level},{_fmt(lam)} is W-equivariant", witness=worst)
    return rep


def kac_suite(rs: RootSystem, level: int, order: int) -> Report:
    """Kac formula on the level-(k+g) basis: division, classical limit, level-k law."""
    form = looijenga_form(rs)
    g = dual_coxeter_number(rs)
    p = EqualRankPair(rs)
    rep = Report(f"kac {rs.cartan_type} level {level} (theta level {level + g}) through q^{order}")
    for lam in theta_index_set(level + g, form):
        tag = f"lam={_fmt(lam)}"
        try:
            out = kac_basis_ind(rs, level, lam, order)
        except NotDivisible as exc:
            rep.check(False, f"{tag} exact division", witness=exc)
            continue
        rep.check(True, f"{tag} divides exactly through q^{order}")
        f = theta(level + g, form, order, lam)
        alt = None
        for w in rs.weyl_group:
            term = weyl_act(w, f) if w.det > 0 else -weyl_act(w, f)
            alt = term if alt is None else alt + term
        rep.check(alt == kac_numerator(rs, level + g, lam, order), f"{tag} numerator identity")
        if out.is_zero():
            rep.note(f"{tag} lies on an affine wall; the induced series vanishes")
            continue
        m0 = f.min_order
        classical = weyl_ind(p, f[m0].shift(wneg(rs.rho)))
        rep.check(out[m0] == classical, f"{tag} q^{m0} coefficient equals the finite Weyl quotient",
                  witness=out[m0])
        for x in simple_coroots(rs.rank):
            bad = _qp_mismatch(out, level, x, form)
            rep.check(bad is None, f"{tag} quasi-periodic at level {level} along {x}", witness=bad)
    return rep


__all__ = [
    "Report",
    "denominator_suite",
    "gkm_suite",
    "theta_suite",
    "kac_suite",
    "small_weights",
    "invariant_orbit_characters",
    "simple_coroots",
]
