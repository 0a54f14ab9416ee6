"""Root systems, Weyl groups and level forms for small simple Lie groups.

Weights are stored as integer tuples in the basis of *half* fundamental
weights: the fundamental weight omega_i has coordinate 2 in slot i.  This lets
square roots of characters such as z^(alpha/2) live on an integer lattice.
A weight is integral (lies in the honest weight lattice) iff every coordinate
is even.  Coroots are integer tuples in the basis of simple coroots.

The Cartan matrix follows the convention ``a[i][j] = <alpha_i^vee, alpha_j>``,
so the fundamental-weight coordinates of alpha_j are column j.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Weight = tuple  # tuple[int, ...] in half-fundamental-weight coordinates
Coroot = tuple  # tuple[int, ...] in simple-coroot coordinates

MAX_WEYL_RANK = 4
MAX_RANK = 4


class RootDataError(ValueError):
    """Unsupported or inconsistent root data."""


# ---------------------------------------------------------------------------
# weights


COORDINATES = "doubled fundamental weights (omega_i has coordinate 2)"


def weight(fund_coords: Iterable) -> Weight:
    """Half-lattice weight from fundamental-weight coordinates (may be halves)."""
    out = []
    for c in fund_coords:
        d = Fraction(c) * 2
        if d.denominator != 1:
            raise RootDataError(f"coordinate {c} is not in the half-weight lattice")
        out.append(int(d))
    return tuple(out)


def fund_coords(w: Weight) -> tuple:
    """Fundamental-weight coordinates of ``w`` as Fractions."""
    return tuple(Fraction(c, 2) for c in w)


def is_integral(w: Weight) -> bool:
    return all(c % 2 == 0 for c in w)


def pairing(w: Weight, x: Coroot) -> Fraction:
    """<w, x> for a weight and a coroot-lattice vector."""
    if len(w) != len(x):
        raise RootDataError("rank mismatch")
    return Fraction(sum(a * b for a, b in zip(w, x)), 2)


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wscale(a: Weight, k: int) -> Weight:
    return tuple(k * x for x in a)


def whalf(a: Weight) -> Weight:
    """a/2, defined when ``a`` is integral."""
    if not is_integral(a):
        raise RootDataError(f"{a} is not integral, cannot halve")
    return tuple(x // 2 for x in a)


# ---------------------------------------------------------------------------
# Cartan types


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam not in ("A", "B", "C", "D", "G"):
            raise RootDataError(f"unsupported family {fam!r}")
        if not isinstance(n, int) or n < 1:
            raise RootDataError(f"rank must be a positive integer, got {n!r}")
        minimum = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2}[fam]
        if n < minimum:
            raise RootDataError(f"{fam}{n}: rank must be at least {minimum}")
        if fam == "G" and n != 2:
            raise RootDataError("only G2 is supported in family G")
        if n > MAX_RANK:
            raise RootDataError(f"rank {n} exceeds supported maximum {MAX_RANK}")

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "CartanType":
        """Parse ``"A2"``, ``"G2"`` or ``"B"`` together with an explicit rank."""
        m = re.fullmatch(r"\s*([A-Za-z])\s*(\d*)\s*", text or "")
        if not m:
            raise RootDataError(f"cannot parse Cartan type {text!r}")
        fam = m.group(1).upper()
        n = int(m.group(2)) if m.group(2) else rank
        if m.group(2) and rank is not None and rank != n:
            raise RootDataError(f"type {text!r} conflicts with rank {rank}")
        if n is None:
            raise RootDataError(f"type {text!r} needs a rank")
        return cls(fam, n)

    def __str__(self):
        return f"{self.family}{self.rank}"

    def cartan_matrix(self) -> tuple:
        n, fam = self.rank, self.family
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        if fam == "G":
            # alpha_1 short, alpha_2 long
            a[0][1], a[1][0] = -3, -1
            return tuple(map(tuple, a))
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if fam == "B":
            a[n - 1][n - 2] = -2
        elif fam == "C":
            a[n - 2][n - 1] = -2
        elif fam == "D":
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return tuple(map(tuple, a))


# ---------------------------------------------------------------------------
# small integer matrix helpers


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def _matvec(a, v):
    return tuple(sum(r * x for r, x in zip(row, v)) for row in a)


def _transpose(a):
    return tuple(zip(*a))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def int_det(a) -> int:
    """Exact determinant of a small integer matrix (fraction elimination)."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    assert det.denominator == 1
    return int(det)


# ---------------------------------------------------------------------------
# Weyl elements


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as its integer matrix on weight coordinates.

    ``word`` is a reduced word (1-based simple reflection indices, applied
    right to left as written: ``(1, 2)`` means s1*s2).
    """

    matrix: tuple
    length: int = field(default=0, compare=False)
    word: tuple = field(default=(), compare=False)

    @property
    def det(self) -> int:
        return -1 if self.length % 2 else 1

    def act(self, w: Weight) -> Weight:
        return _matvec(self.matrix, w)

    def __call__(self, w: Weight) -> Weight:
        return self.act(w)

    def name(self) -> str:
        return "e" if not self.word else "".join(f"s{i}" for i in self.word)


# ---------------------------------------------------------------------------
# root system


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType
    cartan_matrix: tuple
    positive_roots: tuple  # half-lattice weights, sorted by height then coords
    positive_root_coords: tuple  # same roots in simple-root coordinates
    positive_coroots: tuple  # matching coroots in simple-coroot coordinates
    simple_reflections: tuple
    highest_root: Weight

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    def simple_root(self, i: int) -> Weight:
        return self.positive_roots[self.positive_root_coords.index(
            tuple(int(j == i) for j in range(self.rank)))]

    @cached_property
    def simple_roots(self) -> tuple:
        return tuple(self.simple_root(i) for i in range(self.rank))

    @cached_property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(wneg(a) for a in self.positive_roots)

    @cached_property
    def negative_roots(self) -> tuple:
        return tuple(wneg(a) for a in self.positive_roots)

    @cached_property
    def _positive_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    @cached_property
    def _coroot_of(self) -> dict:
        out = {}
        for a, c in zip(self.positive_roots, self.positive_coroots):
            out[a] = c
            out[wneg(a)] = tuple(-x for x in c)
        return out

    def is_root(self, w: Weight) -> bool:
        return w in self._coroot_of

    def is_positive_root(self, w: Weight) -> bool:
        return w in self._positive_set

    def coroot(self, alpha: Weight) -> Coroot:
        try:
            return self._coroot_of[alpha]
        except KeyError:
            raise RootDataError(f"{alpha} is not a root") from None

    def height(self, alpha: Weight) -> int:
        if alpha in self._positive_set:
            return sum(self.positive_root_coords[self.positive_roots.index(alpha)])
        return -self.height(wneg(alpha))

    @cached_property
    def rho(self) -> Weight:
        """Half the sum of the positive roots (equals the sum of fundamental weights)."""
        total = tuple(sum(c) for c in zip(*self.positive_roots))
        return whalf(total)

    def zero(self) -> Weight:
        return (0,) * self.rank

    def reflection_matrix(self, alpha: Weight) -> tuple:
        """Matrix of s_alpha on half-lattice weight coordinates."""
        x = self.coroot(alpha)
        n = self.rank
        # s(v) = v - <v, x> alpha, and <v, x> = sum(v_j x_j) / 2 on doubled coords;
        # alpha is integral so alpha/2 is an integer vector.
        half = whalf(alpha)
        return tuple(
            tuple(int(i == j) - half[i] * x[j] for j in range(n)) for i in range(n)
        )

    def reflection(self, alpha: Weight) -> WeylElement:
        mat = self.reflection_matrix(alpha)
        if self.rank <= MAX_WEYL_RANK:
            return self._weyl_index[mat]
        return WeylElement(mat)

    @cached_property
    def weyl_group(self) -> tuple:
        return tuple(weyl_group(self))

    @cached_property
    def _weyl_index(self) -> dict:
        return {w.matrix: w for w in self.weyl_group}

    def lookup(self, matrix) -> WeylElement:
        return self._weyl_index[tuple(map(tuple, matrix))]

    def compose(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._weyl_index[_matmul(a.matrix, b.matrix)]

    def inverse(self, w: WeylElement) -> WeylElement:
        mat = _identity(self.rank)
        for i in w.word:  # reversed word of w
            mat = _matmul(self.simple_reflections[i - 1].matrix, mat)
        return self._weyl_index[mat]

    def coroot_matrix(self, w: WeylElement) -> tuple:
        """Matrix of w on simple-coroot coordinates (contragredient action)."""
        return _transpose(self.inverse(w).matrix)

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.weyl_group, key=lambda w: w.length)

    def inversion_count(self, w: WeylElement) -> int:
        return sum(1 for a in self.positive_roots if not self.is_positive_root(w.act(a)))

    def dominant_conjugate(self, lam: Weight) -> tuple:
        """(dominant weight, Weyl element w with w(lam) dominant)."""
        w = self.weyl_group[0]
        cur = lam
        changed = True
        while changed:
            changed = False
            for i, s in enumerate(self.simple_reflections):
                if cur[i] < 0:
                    cur = s.act(cur)
                    w = self.compose(s, w)
                    changed = True
        return cur, w

    def to_json(self) -> dict:
        return {
            "type": self.cartan_type.family,
            "rank": self.rank,
            "coordinates": COORDINATES,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "positive_roots": [list(a) for a in self.positive_roots],
            "weyl_order": weyl_order(self.cartan_type),
        }


def weyl_order(t: CartanType) -> int:
    from math import factorial

    n = t.rank
    return {
        "A": factorial(n + 1),
        "B": 2**n * factorial(n),
        "C": 2**n * factorial(n),
        "D": 2 ** (n - 1) * factorial(n),
        "G": 12,
    }[t.family]


def build_root_system(t: CartanType) -> RootSystem:
    """Root data for ``t`` by closing the simple roots under simple reflections.

    Roots are tracked in simple-root coordinates together with their coroots
    in simple-coroot coordinates; both are reflected by the same word, so the
    pairing root -> coroot is W-equivariant by construction.
    """
    a = t.cartan_matrix()
    n = t.rank

    def reflect_root(i, c):
        # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i ; <beta, alpha_i^vee> = sum_j a[i][j] c_j
        k = sum(a[i][j] * c[j] for j in range(n))
        return tuple(c[j] - (k if j == i else 0) for j in range(n))

    def reflect_coroot(i, x):
        # s_i(x) = x - <alpha_i, x> alpha_i^vee ; <alpha_i, x> = sum_j a[j][i] x_j
        k = sum(a[j][i] * x[j] for j in range(n))
        return tuple(x[j] - (k if j == i else 0) for j in range(n))

    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = {u: u for u in unit}
    queue = deque(unit)
    while queue:
        c = queue.popleft()
        x = found[c]
        for i in range(n):
            c2 = reflect_root(i, c)
            if c2 not in found:
                found[c2] = reflect_coroot(i, x)
                queue.append(c2)

    pos = sorted((c for c in found if all(v >= 0 for v in c)), key=lambda c: (sum(c), c))
    if 2 * len(pos) != len(found):
        raise RootDataError(f"{t}: root closure is not symmetric")

    def to_weight(c):
        # fundamental coordinates of sum c_j alpha_j are sum_j a[i][j] c_j
        return tuple(2 * sum(a[i][j] * c[j] for j in range(n)) for i in range(n))

    pos_w = tuple(to_weight(c) for c in pos)
    simple = []
    for i in range(n):
        mat = tuple(tuple(int(r == j) - (a[r][i] if j == i else 0) for j in range(n)) for r in range(n))
        simple.append(WeylElement(mat, 1, (i + 1,)))
    return RootSystem(
        cartan_type=t,
        cartan_matrix=a,
        positive_roots=pos_w,
        positive_root_coords=tuple(pos),
        positive_coroots=tuple(found[c] for c in pos),
        simple_reflections=tuple(simple),
        highest_root=pos_w[-1],
    )


def root_system(name: str, rank: int | None = None) -> RootSystem:
    """Convenience: ``root_system("A2")``."""
    return build_root_system(CartanType.parse(name, rank))


def weyl_group(rs: RootSystem) -> list:
    """All Weyl group elements by breadth-first search on left multiplication.

    BFS depth in the Cayley graph on simple reflections equals Coxeter length,
    so ``length`` and ``word`` are exact.
    """
    if rs.rank > MAX_WEYL_RANK:
        raise RootDataError(f"Weyl group enumeration is limited to rank <= {MAX_WEYL_RANK}")
    e = WeylElement(_identity(rs.rank), 0, ())
    seen = {e.matrix: e}
    order = [e]
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for i, s in enumerate(rs.simple_reflections):
            m = _matmul(s.matrix, w.matrix)
            if m not in seen:
                el = WeylElement(m, w.length + 1, (i + 1,) + w.word)
                seen[m] = el
                order.append(el)
                queue.append(el)
    return order


def dual_coxeter_number(rs: RootSystem) -> int:
    """g = <rho, theta^vee> + 1 for the highest root theta."""
    if not _is_connected(rs.cartan_matrix):
        raise RootDataError("dual Coxeter number needs a simple root system")
    theta_vee = rs.coroot(rs.highest_root)
    return int(pairing(rs.rho, theta_vee)) + 1


def _is_connected(a) -> bool:
    n = len(a)
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if a[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


# ---------------------------------------------------------------------------
# level forms


@dataclass(frozen=True)
class LevelForm:
    """An even W-invariant form on the coroot lattice, as a Gram matrix."""

    gram: tuple
    dual_coxeter: int

    @property
    def rank(self) -> int:
        return len(self.gram)

    def value(self, x: Coroot, y: Coroot) -> int:
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def phi(self, x: Coroot) -> Fraction:
        """Half the norm, phi(x) = I(x, x) / 2."""
        return Fraction(self.value(x, x), 2)

    def sharp(self, x: Coroot) -> Weight:
        """I^#(x) = I(x, -) as a half-lattice weight."""
        return tuple(2 * sum(self.gram[i][j] * x[j] for j in range(self.rank)) for i in range(self.rank))


def pontryagin_gram(rs: RootSystem) -> tuple:
    """Gram matrix of sum over negative roots of alpha (x) alpha on simple coroots."""
    n = rs.rank
    g = [[0] * n for _ in range(n)]
    for alpha in rs.negative_roots:
        f = [c // 2 for c in alpha]  # <alpha, alpha_i^vee>
        for i in range(n):
            for j in range(n):
                g[i][j] += f[i] * f[j]
    return tuple(map(tuple, g))


def looijenga_form(rs: RootSystem) -> LevelForm:
    g = dual_coxeter_number(rs)
    p1 = pontryagin_gram(rs)
    gram = []
    for row in p1:
        if any(v % g for v in row):
            raise RootDataError(f"first Pontryagin form {p1} is not divisible by g={g}")
        gram.append(tuple(v // g for v in row))
    form = LevelForm(tuple(gram), g)
    if any(form.gram[i][i] % 2 for i in range(rs.rank)):
        raise RootDataError(f"level form {form.gram} is not even")
    if rs.rank <= MAX_WEYL_RANK:
        for s in rs.simple_reflections:
            m = rs.coroot_matrix(s)
            if _matmul(_matmul(_transpose(m), form.gram), m) != form.gram:
                raise RootDataError("level form is not Weyl invariant")
    return form


# ---------------------------------------------------------------------------
# equal-rank pairs


@dataclass(frozen=True)
class EqualRankPair:
    """G together with an equal-rank subgroup H containing the maximal torus.

    H is described by positive roots of G forming its simple roots; an empty
    tuple means H = T.
    """

    ambient: RootSystem
    sub_simple_roots: tuple = ()

    def __post_init__(self):
        for b in self.sub_simple_roots:
            if not self.ambient.is_positive_root(b):
                raise RootDataError(f"{b} is not a positive root of {self.ambient.cartan_type}")
        # W_H must preserve R (negative G-roots outside H); otherwise G/H has no
        # invariant complex structure compatible with the chosen positive roots.
        rset = frozenset(self.R)
        for h in self.W_H:
            for a in self.R:
                if h.act(a) not in rset:
                    raise RootDataError("W_H does not preserve the negative roots outside H")

    @classmethod
    def parabolic(cls, rs: RootSystem, indices: Sequence[int] = ()) -> "EqualRankPair":
        """H generated by the simple roots with the given 1-based indices."""
        for i in indices:
            if not 1 <= i <= rs.rank:
                raise RootDataError(f"simple root index {i} out of range 1..{rs.rank}")
        return cls(rs, tuple(rs.simple_roots[i - 1] for i in sorted(set(indices))))

    @cached_property
    def W_H(self) -> tuple:
        rs = self.ambient
        gens = [rs.reflection(b) for b in self.sub_simple_roots]
        e = rs.weyl_group[0]
        seen = {e.matrix: e}
        queue = deque([e])
        while queue:
            w = queue.popleft()
            for s in gens:
                v = rs.compose(s, w)
                if v.matrix not in seen:
                    seen[v.matrix] = v
                    queue.append(v)
        return tuple(sorted(seen.values(), key=lambda w: (w.length, w.word)))

    @cached_property
    def roots_H(self) -> frozenset:
        out = set()
        for h in self.W_H:
            for b in self.sub_simple_roots:
                out.add(h.act(b))
                out.add(h.act(wneg(b)))
        return frozenset(out)

    @cached_property
    def R(self) -> tuple:
        """Negative roots of G that are not roots of H (tangent weights at [1])."""
        return tuple(a for a in self.ambient.negative_roots if a not in self.roots_H)

    @cached_property
    def negative_roots_H(self) -> tuple:
        return tuple(a for a in self.ambient.negative_roots if a in self.roots_H)

    @property
    def dimension(self) -> int:
        """Complex dimension of G/H."""
        return len(self.R)

    @cached_property
    def cosets(self) -> tuple:
        """(minimal representative, frozenset of coset members) pairs."""
        rs = self.ambient
        seen = {}
        for w in rs.weyl_group:
            key = frozenset(rs.compose(w, h).matrix for h in self.W_H)
            cur = seen.get(key)
            if cur is None or (w.length, w.word) < (cur.length, cur.word):
                seen[key] = w
        pairs = [(w, k) for k, w in seen.items()]
        pairs.sort(key=lambda p: (p[0].length, p[0].word))
        return tuple(pairs)

    def coset_rep(self, w: WeylElement) -> WeylElement:
        for rep, members in self.cosets:
            if w.matrix in members:
                return rep
        raise RootDataError("element not in the Weyl group")

    def is_invariant(self, act) -> bool:
        """True if ``act(h)`` holds for every h in W_H (helper for callers)."""
        return all(act(h) for h in self.W_H)


def coset_representatives(p: EqualRankPair) -> list:
    """Minimal-length representatives of W_G / W_H, ordered by length."""
    return [w for w, _ in p.cosets]


def to_json_text(rs: RootSystem) -> str:
    return json.dumps(rs.to_json(), sort_keys=True)
