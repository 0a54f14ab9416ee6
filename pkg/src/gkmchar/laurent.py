"""Exact Laurent polynomials on the half-weight lattice, and polynomials on t.

``LaurentPoly`` is the group ring Q[Lambda/2]: K-theory coefficients and
characters.  Exponents are half-lattice weights (see :mod:`gkmchar.rootdata`).

``Poly`` is the polynomial ring Q[x_1..x_r] where x_i is the fundamental weight
omega_i regarded as a linear function on t: cohomology coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .rootdata import Weight, wadd, wscale


class NotDivisible(ArithmeticError):
    """Exact division failed; ``witness`` describes the obstruction."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient {c!r} is not rational")


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_exp(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def _join_terms(parts) -> str:
    """Join (coefficient, monomial-string) pairs as ``a + b - c``."""
    if not parts:
        return "0"
    out = []
    for i, (c, mono) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class LaurentPoly:
    """Finite sum of c * z^mu with mu a half-lattice weight and c rational."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != rank:
                    raise ValueError(f"exponent {e} does not have rank {rank}")
                c = _frac(c)
                if c:
                    clean[e] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank, terms):
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: Weight, coeff=1) -> "LaurentPoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def constant(cls, rank: int, c=1) -> "LaurentPoly":
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls._raw(rank, {})

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def exponents(self):
        return self._terms.keys()

    def coefficient(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return LaurentPoly.constant(self.rank, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly._raw(self.rank, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            c = _frac(other)
            if not c:
                return LaurentPoly.zero(self.rank)
            return LaurentPoly._raw(self.rank, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.rank, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self * (Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, c), = self._terms.items()
                return LaurentPoly.monomial(wscale(e, n), Fraction(1) / c ** (-n))
            raise ValueError("only monomials have Laurent inverses")
        out = LaurentPoly.constant(self.rank)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, exp: Weight) -> "LaurentPoly":
        """Multiply by the monomial z^exp."""
        return LaurentPoly._raw(self.rank, {wadd(e, exp): c for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    # -- misc ----------------------------------------------------------------
    def weyl_act(self, w) -> "LaurentPoly":
        return weyl_act(w, self)

    def evaluate_at_one(self) -> Fraction:
        return evaluate_at_one(self)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def sorted_items(self, reverse=False):
        return sorted(self._terms.items(), reverse=reverse)

    def to_json(self) -> list:
        return [
            {"coords": list(e), "num": c.numerator, "den": c.denominator}
            for e, c in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, rank: int, data) -> "LaurentPoly":
        return cls(rank, {tuple(d["coords"]): Fraction(d["num"], d["den"]) for d in data})

    def __str__(self):
        """Human-readable form in fundamental-weight exponents.

        For rank 1 the variable is ``z`` = z^omega; otherwise ``z1..zr``.
        """
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            parts.append((c, _monomial_str(e)))
        return _join_terms(parts)

    def __repr__(self):
        return f"LaurentPoly({self.rank}, {dict(sorted(self._terms.items()))!r})"


def _monomial_str(e) -> str:
    names = ["z"] if len(e) == 1 else [f"z{i + 1}" for i in range(len(e))]
    bits = []
    for name, c in zip(names, e):
        if c == 0:
            continue
        x = Fraction(c, 2)
        bits.append(name if x == 1 else f"{name}^{_fmt_exp(x)}")
    return "*".join(bits)


def weyl_act(w, f):
    """Apply a Weyl element to a LaurentPoly, Poly or QSeries (ring automorphism)."""
    if isinstance(f, LaurentPoly):
        mat = w.matrix
        t = {}
        for e, c in f._terms.items():
            t[tuple(sum(r * x for r, x in zip(row, e)) for row in mat)] = c
        return LaurentPoly._raw(f.rank, t)
    return f.weyl_act(w)


def evaluate_at_one(f: LaurentPoly) -> Fraction:
    """Sum of coefficients: the dimension of a virtual representation."""
    return sum(f._terms.values(), Fraction(0))


def binomial(alpha: Weight) -> LaurentPoly:
    """The Laurent polynomial 1 - z^alpha."""
    rank = len(alpha)
    return LaurentPoly(rank, {(0,) * rank: 1}) - LaurentPoly.monomial(alpha)


def _fiber(e, alpha, i):
    """Split exponent e as (rep, t) with e = rep + t*alpha, rep canonical mod Z*alpha."""
    t = e[i] // alpha[i]
    return tuple(a - t * b for a, b in zip(e, alpha)), t


def fiber_sums(f: LaurentPoly, alpha: Weight) -> dict:
    """Sum of coefficients of f over each coset of Z*alpha."""
    i = next(j for j, a in enumerate(alpha) if a)
    sums = {}
    for e, c in f._terms.items():
        rep, _ = _fiber(e, alpha, i)
        sums[rep] = sums.get(rep, 0) + c
    return sums


def divide_exact_binomial(f: LaurentPoly, alpha: Weight) -> LaurentPoly:
    """Return g with f = (1 - z^alpha) * g, or raise NotDivisible.

    Exponents are grouped into cosets of Z*alpha.  Along each coset f is a
    Laurent polynomial in u = z^alpha, divisible by 1 - u iff its coefficients
    sum to zero; the quotient coefficients are then prefix sums.
    """
    alpha = tuple(alpha)
    if not any(alpha):
        raise ValueError("cannot divide by 1 - z^0")
    if len(alpha) != f.rank:
        raise ValueError("rank mismatch")
    i = next(j for j, a in enumerate(alpha) if a)
    fibers = {}
    for e, c in f._terms.items():
        rep, t = _fiber(e, alpha, i)
        fibers.setdefault(rep, {})[t] = c
    out = {}
    for rep, line in fibers.items():
        total = sum(line.values(), Fraction(0))
        if total:
            raise NotDivisible(
                f"not divisible by 1 - z^{alpha}: coset of {rep} sums to {total}",
                witness={"coset": rep, "sum": total},
            )
        lo, hi = min(line), max(line)
        acc = Fraction(0)
        for t in range(lo, hi):
            acc += line.get(t, 0)
            if acc:
                out[tuple(a + t * b for a, b in zip(rep, alpha))] = acc
    return LaurentPoly._raw(f.rank, out)


def is_divisible_by_binomial(f: LaurentPoly, alpha: Weight) -> bool:
    return not any(fiber_sums(f, alpha).values())


# ---------------------------------------------------------------------------
# polynomials on t


class Poly:
    """Polynomial in x_1..x_r (x_i = omega_i as a linear function on t)."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != rank or any(k < 0 for k in e):
                    raise ValueError(f"bad multidegree {e} for rank {rank}")
                c = _frac(c)
                if c:
                    clean[e] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank, terms):
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, rank: int, c=1) -> "Poly":
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def zero(cls, rank: int) -> "Poly":
        return cls._raw(rank, {})

    @classmethod
    def linear(cls, w: Weight) -> "Poly":
        """The linear form of a half-lattice weight (coefficients may be halves)."""
        rank = len(w)
        return cls(rank, {tuple(int(i == j) for j in range(rank)): Fraction(c, 2) for i, c in enumerate(w)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Poly.constant(self.rank, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly._raw(self.rank, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            c = _frac(other)
            if not c:
                return Poly.zero(self.rank)
            return Poly._raw(self.rank, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly._raw(self.rank, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self * (Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.rank, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def weyl_act(self, w) -> "Poly":
        """Substitute x_i -> w(omega_i)."""
        images = [Poly.linear(tuple(2 * row[i] for row in w.matrix)) for i in range(self.rank)]
        out = Poly.zero(self.rank)
        cache = {}
        for e, c in self._terms.items():
            term = Poly.constant(self.rank, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def to_json(self) -> list:
        return [
            {"degrees": list(e), "num": c.numerator, "den": c.denominator}
            for e, c in sorted(self._terms.items())
        ]

    def __str__(self):
        names = ["x"] if self.rank == 1 else [f"x{i + 1}" for i in range(self.rank)]
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0]))):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append((c, mono))
        return _join_terms(parts)

    def __repr__(self):
        return f"Poly({self.rank}, {dict(sorted(self._terms.items()))!r})"


def poly_divide_exact_linear(f: Poly, alpha) -> Poly:
    """Exact quotient of f by a linear form, or raise NotDivisible.

    ``alpha`` is a weight (half-lattice tuple) or a linear ``Poly``.  Division
    runs in the variable x_j of the last nonzero coefficient of alpha, which
    makes alpha monic up to a scalar in that variable.
    """
    lin = alpha if isinstance(alpha, Poly) else Poly.linear(tuple(alpha))
    if lin.degree() != 1 or not lin.is_homogeneous():
        raise ValueError(f"{lin} is not a nonzero linear form")
    coeffs = [Fraction(0)] * lin.rank
    for e, c in lin.items():
        coeffs[e.index(1)] = c
    j = max(i for i, c in enumerate(coeffs) if c)
    lead = coeffs[j]
    rem = dict(f._terms)
    quot = {}
    while True:
        live = [e for e in rem if e[j] > 0]
        if not live:
            break
        e = max(live, key=lambda t: (t[j], t))
        c = rem[e] / lead
        qe = tuple(k - (i == j) for i, k in enumerate(e))
        quot[qe] = quot.get(qe, 0) + c
        for i, a in enumerate(coeffs):
            if a:
                te = tuple(k + (m == i) for m, k in enumerate(qe))
                v = rem.get(te, 0) - c * a
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
    if rem:
        raise NotDivisible(f"not divisible by {lin}: remainder {Poly._raw(f.rank, rem)}",
                           witness=Poly._raw(f.rank, rem))
    return Poly(f.rank, quot)


def chern_character(f: LaurentPoly, degree: int) -> Poly:
    """Degree-``degree`` part of the Chern character: sum c * mu^d / d!."""
    out = Poly.zero(f.rank)
    scale = Fraction(1, math.factorial(degree))
    for e, c in f.items():
        out = out + Poly.linear(e) ** degree * (c * scale)
    return out


def orbit_sum(group, lam: Weight) -> LaurentPoly:
    """Sum of z^mu over the orbit of lam under an iterable of Weyl elements."""
    orbit = {w.act(lam) for w in group}
    return LaurentPoly(len(lam), {mu: 1 for mu in orbit})


def laurent_from_exponents(rank, pairs) -> LaurentPoly:
    """Build sum c*z^e from (exponent, coeff) pairs, accumulating repeats."""
    t = {}
    for e, c in pairs:
        e = tuple(e)
        t[e] = t.get(e, 0) + _frac(c)
    return LaurentPoly(rank, t)


__all__ = [
    "LaurentPoly",
    "Poly",
    "NotDivisible",
    "weyl_act",
    "evaluate_at_one",
    "binomial",
    "divide_exact_binomial",
    "is_divisible_by_binomial",
    "fiber_sums",
    "poly_divide_exact_linear",
    "chern_character",
    "orbit_sum",
    "laurent_from_exponents",
]
