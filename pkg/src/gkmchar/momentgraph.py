"""Moment graphs of G/H and GKM conditions on fixed-point data.

Vertices are the cosets wW_H, labelled by minimal-length representatives.
There is an edge labelled alpha between [w] and [s_alpha w] for each positive
root alpha with w^{-1}(alpha) negative and not a root of H.  Edges are stored
once, with the shorter coset representative as ``source``.  JSON labels use
doubled coordinates like the rest of the library; DOT labels are in plain
fundamental-weight coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .laurent import LaurentPoly, NotDivisible, Poly, divide_exact_binomial, poly_divide_exact_linear, weyl_act
from .rootdata import COORDINATES, EqualRankPair, WeylElement, fund_coords


class Theory(str, Enum):
    COHOMOLOGY = "H"
    K_THEORY = "K"
    ELLIPTIC = "Ell"

    @classmethod
    def of(cls, value) -> "Theory":
        if isinstance(value, Theory):
            return value
        aliases = {"h": cls.COHOMOLOGY, "k": cls.K_THEORY, "ell": cls.ELLIPTIC}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown theory {value!r}") from None


@dataclass(frozen=True)
class Edge:
    source: WeylElement
    target: WeylElement
    label: tuple  # positive root
    # True when the source/target order was swapped relative to the
    # [w] -> [s_alpha w] orientation of the construction.
    reversed: bool = False


@dataclass(frozen=True)
class MomentGraph:
    pair: EqualRankPair
    vertices: tuple
    edges: tuple

    def degree(self, v: WeylElement) -> int:
        return sum(1 for e in self.edges if v in (e.source, e.target))

    def edges_at(self, v: WeylElement) -> list:
        return [e for e in self.edges if v in (e.source, e.target)]

    def labels_at(self, v: WeylElement) -> list:
        return [e.label for e in self.edges_at(v)]

    def vertex_name(self, v: WeylElement) -> str:
        return v.name()

    def to_json(self) -> dict:
        return {
            "type": str(self.pair.ambient.cartan_type),
            "coordinates": COORDINATES,
            "sub": [list(b) for b in self.pair.sub_simple_roots],
            "vertices": [v.name() for v in self.vertices],
            "edges": [
                {"source": e.source.name(), "target": e.target.name(), "label": list(e.label)}
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = [f'graph "{self.pair.ambient.cartan_type}" {{']
        for v in self.vertices:
            lines.append(f'  "{v.name()}";')
        for e in self.edges:
            label = ",".join(str(c) for c in fund_coords(e.label))
            lines.append(f'  "{e.source.name()}" -- "{e.target.name()}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


def build_moment_graph(p: EqualRankPair) -> MomentGraph:
    rs = p.ambient
    reps = [w for w, _ in p.cosets]
    edges = []
    for w in reps:
        winv = rs.inverse(w)
        for alpha in rs.positive_roots:
            beta = winv.act(alpha)
            if rs.is_positive_root(beta) or beta in p.roots_H:
                continue
            target = p.coset_rep(rs.compose(rs.reflection(alpha), w))
            flip = (target.length, target.word) < (w.length, w.word)
            src, dst = (target, w) if flip else (w, target)
            edges.append(Edge(src, dst, alpha, flip))
    order = {w.matrix: i for i, w in enumerate(reps)}
    edges.sort(key=lambda e: (order[e.source.matrix], order[e.target.matrix], e.label))
    return MomentGraph(p, tuple(reps), tuple(edges))


@dataclass
class GKMSection:
    """Per-vertex values; ``theory`` says which ring they live in."""

    values: dict
    theory: Theory = Theory.K_THEORY
    meta: dict = field(default_factory=dict)

    def __getitem__(self, v):
        return self.values[v]


def _check_edge(theory, a, b, label):
    diff = a - b
    if diff.is_zero():
        return True
    try:
        if theory is Theory.K_THEORY:
            divide_exact_binomial(diff, label)
        else:
            poly_divide_exact_linear(diff, label)
    except NotDivisible:
        return False
    return True


def check_gkm(g: MomentGraph, s: GKMSection) -> tuple:
    """(ok, witness edge or None).

    K-theory: s_v - s_v' divisible by 1 - z^alpha on each edge.
    Cohomology: divisible by the linear form alpha.
    """
    theory = Theory.of(s.theory)
    if theory is Theory.ELLIPTIC:
        raise NotImplementedError("the elliptic edge condition has no finite Laurent model")
    kind = LaurentPoly if theory is Theory.K_THEORY else Poly
    for v in g.vertices:
        if not isinstance(s.values[v], kind):
            raise TypeError(f"section value at {v.name()} is not a {kind.__name__}")
    for e in g.edges:
        if not _check_edge(theory, s.values[e.source], s.values[e.target], e.label):
            return False, e
    return True, None


def is_invariant(p: EqualRankPair, f) -> bool:
    """True if f is fixed by every element of W_H."""
    return all(weyl_act(h, f) == f for h in p.W_H)


def restrict_character(g: MomentGraph, chi, p: EqualRankPair | None = None) -> GKMSection:
    """Fixed-point restriction: value w(chi) at [w].

    ``chi`` may be a LaurentPoly (K-theory), a Poly (cohomology) or a QSeries
    (elliptic); it must be W_H-invariant so the value is independent of the
    coset representative.
    """
    from .qseries import QSeries

    p = p or g.pair
    if isinstance(chi, LaurentPoly):
        theory = Theory.K_THEORY
    elif isinstance(chi, Poly):
        theory = Theory.COHOMOLOGY
    elif isinstance(chi, QSeries):
        theory = Theory.ELLIPTIC
    else:
        raise TypeError(f"cannot restrict {type(chi).__name__}")
    if not is_invariant(p, chi):
        raise ValueError("character is not W_H-invariant")
    return GKMSection({v: weyl_act(v, chi) for v in g.vertices}, theory)


def section_from_values(g: MomentGraph, values, theory) -> GKMSection:
    """Section from a list aligned with ``g.vertices``."""
    values = list(values)
    if len(values) != len(g.vertices):
        raise ValueError("one value per vertex required")
    return GKMSection(dict(zip(g.vertices, values)), Theory.of(theory))


def graph_json_text(g: MomentGraph) -> str:
    return json.dumps(g.to_json(), sort_keys=True)


__all__ = [
    "Theory",
    "Edge",
    "MomentGraph",
    "GKMSection",
    "build_moment_graph",
    "check_gkm",
    "restrict_character",
    "section_from_values",
    "is_invariant",
    "graph_json_text",
]
