"""Exact multivariate polynomials and rational functions over the rationals.

This is the coefficient layer for everything else: the even part of a
superfunction is a quotient of two polynomials in the even coordinates,
with arbitrary-precision rational coefficients.

Equality of quotients is decided by cross-multiplication, so correctness
never depends on how far a fraction has been reduced.  Reduction is done
opportunistically (scalar content, monomial content, trial division) to
contain expression swell.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Expo = tuple[int, ...]


def grlex_key(expo: Expo) -> tuple:
    """Graded-lex sort key: total degree first, then lexicographic."""
    return (sum(expo), expo)


class Poly:
    """Multivariate polynomial: sparse map from exponent tuples to Fraction.

    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Expo, Fraction] | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: Fraction | int) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, slot: int) -> "Poly":
        e = [0] * nvars
        e[slot] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, expo: Expo, c: Fraction | int = 1) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {tuple(expo): c})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: Fraction(1)}

    def is_constant(self) -> bool:
        return not self.terms or self.terms.keys() == {(0,) * self.nvars}

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial (0 for the zero polynomial)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.nvars, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        terms: dict[Expo, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.nvars, terms)

    def scale(self, c: Fraction | int) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self, slot: int) -> "Poly":
        terms: dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            k = e[slot]
            if k == 0:
                continue
            e2 = list(e)
            e2[slot] = k - 1
            terms[tuple(e2)] = c * k
        return Poly(self.nvars, terms)

    def antiderivative(self, slot: int) -> "Poly":
        terms: dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[slot] = e[slot] + 1
            terms[tuple(e2)] = c / (e[slot] + 1)
        return Poly(self.nvars, terms)

    def eval(self, point: list[Fraction]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def eval_partial(self, slot: int, value: Fraction) -> "Poly":
        """Substitute a rational value for one variable (slot keeps exponent 0)."""
        terms: dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[slot]
            e2[slot] = 0
            c2 = c * Fraction(value) ** k if k else c
            e2t = tuple(e2)
            s = terms.get(e2t, Fraction(0)) + c2
            if s:
                terms[e2t] = s
            else:
                terms.pop(e2t, None)
        return Poly(self.nvars, terms)

    # -- structure ---------------------------------------------------------

    def leading(self) -> tuple[Expo, Fraction]:
        """Leading term in graded-lex order."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def min_exponents(self) -> Expo:
        """Componentwise minimum exponent over all terms (monomial content)."""
        its = iter(self.terms)
        m = list(next(its))
        for e in its:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    def shift_down(self, expo: Expo) -> "Poly":
        """Divide by the monomial x^expo (every term must be divisible)."""
        return Poly(
            self.nvars,
            {tuple(a - b for a, b in zip(e, expo)): c for e, c in self.terms.items()},
        )

    def depends_on(self, slot: int) -> bool:
        return any(e[slot] for e in self.terms)

    def map_slots(self, mapping: list[int], new_nvars: int) -> "Poly":
        """Reindex variables: old slot i becomes mapping[i] in a new ring."""
        terms: dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * new_nvars
            for i, k in enumerate(e):
                if k:
                    e2[mapping[i]] += k
            terms[tuple(e2)] = c
        return Poly(new_nvars, terms)

    def divmod(self, den: "Poly") -> tuple["Poly", "Poly"]:
        """Greedy division by the graded-lex leading term of ``den``.

        Returns (quotient, remainder); the division is exact iff the
        remainder is zero.
        """
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        le, lc = den.leading()
        quo = Poly.zero(self.nvars)
        rem = self
        while rem.terms:
            e, c = rem.leading()
            diff = tuple(a - b for a, b in zip(e, le))
            if any(d < 0 for d in diff):
                break
            t = Poly.monomial(self.nvars, diff, c / lc)
            quo = quo + t
            rem = rem - t * den
        return quo, rem

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        _, r = other.divmod(self)
        return r.is_zero()

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.terms!r})"


def _integerize(polys: list[Poly]) -> list[Poly]:
    """Scale a family of polynomials jointly to integer coefficients with
    overall content 1."""
    denoms = [c.denominator for p in polys for c in p.terms.values()]
    if not denoms:
        return polys
    l = lcm(*denoms)
    polys = [p.scale(l) for p in polys]
    nums = [abs(c.numerator) for p in polys for c in p.terms.values()]
    g = gcd(*nums)
    if g > 1:
        polys = [p.scale(Fraction(1, g)) for p in polys]
    return polys


class Rat:
    """Quotient of two polynomials; the denominator is never the zero
    polynomial.  Equality is decided by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "Rat":
        return cls(p, Poly.const(p.nvars, 1))

    @classmethod
    def const(cls, nvars: int, c: Fraction | int) -> "Rat":
        return cls.from_poly(Poly.const(nvars, c))

    @classmethod
    def zero(cls, nvars: int) -> "Rat":
        return cls.from_poly(Poly.zero(nvars))

    @classmethod
    def one(cls, nvars: int) -> "Rat":
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, slot: int) -> "Rat":
        return cls.from_poly(Poly.variable(nvars, slot))

    # -- predicates --------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> Poly | None:
        """The underlying polynomial when the denominator is constant."""
        if self.den.is_constant():
            return self.num.scale(1 / self.den.constant_value())
        return None

    def is_constant(self) -> Fraction | None:
        if self.num.is_constant() and self.den.is_constant():
            return self.num.constant_value() / self.den.constant_value()
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rat):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Rat") -> "Rat":
        if self.den == other.den:
            return Rat(self.num + other.num, self.den)
        return Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Rat":
        return Rat(-self.num, self.den)

    def __sub__(self, other: "Rat") -> "Rat":
        return self + (-other)

    def __mul__(self, other: "Rat") -> "Rat":
        return Rat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Rat") -> "Rat":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return Rat(self.num * other.den, self.den * other.num)

    def inv(self) -> "Rat":
        return Rat.one(self.nvars) / self

    def scale(self, c: Fraction | int) -> "Rat":
        return Rat(self.num.scale(c), self.den)

    def __pow__(self, n: int) -> "Rat":
        if n < 0:
            return self.inv() ** (-n)
        return Rat(self.num**n, self.den**n)

    def derivative(self, slot: int) -> "Rat":
        if not self.den.depends_on(slot):
            return Rat(self.num.derivative(slot), self.den)
        num = self.num.derivative(slot) * self.den - self.num * self.den.derivative(slot)
        return Rat(num, self.den * self.den)

    def eval(self, point: list[Fraction]) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.eval(point) / d

    def depends_on(self, slot: int) -> bool:
        return self.num.depends_on(slot) or self.den.depends_on(slot)

    def map_slots(self, mapping: list[int], new_nvars: int) -> "Rat":
        return Rat(self.num.map_slots(mapping, new_nvars), self.den.map_slots(mapping, new_nvars))

    def __repr__(self) -> str:
        return f"Rat({self.num!r}, {self.den!r})"


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    one = Poly.const(num.nvars, 1)
    if num.is_zero():
        return num, one
    if den.is_constant():
        c = den.constant_value()
        if c != 1:
            num = num.scale(1 / c)
        return num, one
    # common monomial content
    mn = num.min_exponents()
    md = den.min_exponents()
    common = tuple(min(a, b) for a, b in zip(mn, md))
    if any(common):
        num = num.shift_down(common)
        den = den.shift_down(common)
        if den.is_constant():
            return _normalize(num, den)
    # trial division: exact quotients collapse the fraction
    q, r = num.divmod(den)
    if r.is_zero():
        return _normalize(q, one)
    if not num.is_constant():
        q, r = den.divmod(num)
        if r.is_zero() and not q.is_constant():
            return _normalize(one, q)
    # joint integer scaling, positive leading denominator coefficient
    num, den = _integerize([num, den])
    if den.leading()[1] < 0:
        num, den = -num, -den
    return num, den
