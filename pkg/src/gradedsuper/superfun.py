"""The superfunction ring over a chart.

A superfunction is a Grassmann polynomial in the odd coordinates whose
coefficients are rational functions (exact rational coefficients) in the
even coordinates:

    f = sum_I  xi_I * c_I(x),

where I runs over strictly increasing tuples of odd-coordinate indices.
Since even coefficients are parity 0, their placement inside a term is
immaterial; the odd monomial is kept in canonical ascending order and
reordering picks up the permutation sign.

The odd partial derivative is the LEFT derivative throughout: to
differentiate by xi, move xi to the front of the monomial (collecting the
sign) and strike it.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import Chart, Degree, EVEN, ODD
from .poly import Poly, Rat

OddMon = tuple[int, ...]


class ChartMismatch(ValueError):
    pass


class ParityError(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class AnyWeight:
    """Degree of the zero function: homogeneous of every degree."""

    def __repr__(self):
        return "AnyWeight"


ANY_WEIGHT = AnyWeight()


def merge_odd(a: OddMon, b: OddMon) -> tuple[int, OddMon] | None:
    """Concatenate two canonical odd monomials.

    Returns (sign, merged) or None when an index repeats (nilpotence).
    The sign counts the transpositions needed to interleave ``b`` into
    ``a``; each generator is parity 1.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    sign = 1
    out: list[int] = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a)-i generators of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


class SuperFunction:
    """Element of the superfunction ring of a chart.  Immutable."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: dict[OddMon, Rat] | None = None):
        self.chart = chart
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "SuperFunction":
        return cls(chart, {})

    @classmethod
    def const(cls, chart: Chart, c: Fraction | int) -> "SuperFunction":
        return cls(chart, {(): Rat.const(chart.n_even, c)})

    @classmethod
    def one(cls, chart: Chart) -> "SuperFunction":
        return cls.const(chart, 1)

    @classmethod
    def from_rat(cls, chart: Chart, r: Rat) -> "SuperFunction":
        return cls(chart, {(): r})

    @classmethod
    def coordinate(cls, chart: Chart, i: int) -> "SuperFunction":
        if chart.parity(i) == EVEN:
            return cls(chart, {(): Rat.variable(chart.n_even, chart.even_slots[i])})
        return cls(chart, {(i,): Rat.one(chart.n_even)})

    @classmethod
    def monomial(cls, chart: Chart, odd: OddMon, coeff: Rat) -> "SuperFunction":
        return cls(chart, {tuple(odd): coeff})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperFunction):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    __hash__ = None  # type: ignore[assignment]

    def body(self) -> Rat:
        """Coefficient of the empty odd monomial."""
        return self.terms.get((), Rat.zero(self.chart.n_even))

    def parity(self) -> int | None:
        """0/1 for a pure-parity function, None for mixed, 0 for zero."""
        if not self.terms:
            return EVEN
        parities = {len(m) % 2 for m in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def parity_part(self, parity: int) -> "SuperFunction":
        return SuperFunction(
            self.chart, {m: c for m, c in self.terms.items() if len(m) % 2 == parity % 2}
        )

    def is_polynomial(self) -> bool:
        return all(c.den.is_constant() for c in self.terms.values())

    def _check_chart(self, other: "SuperFunction"):
        if self.chart != other.chart:
            raise ChartMismatch("superfunctions live on different charts")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "SuperFunction") -> "SuperFunction":
        self._check_chart(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            terms[m] = c if s is None else s + c
        return SuperFunction(self.chart, terms)

    def __neg__(self) -> "SuperFunction":
        return SuperFunction(self.chart, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SuperFunction") -> "SuperFunction":
        return self + (-other)

    def __mul__(self, other: "SuperFunction") -> "SuperFunction":
        self._check_chart(other)
        terms: dict[OddMon, Rat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                merged = merge_odd(m1, m2)
                if merged is None:
                    continue
                sign, m = merged
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = terms.get(m)
                terms[m] = c if s is None else s + c
        return SuperFunction(self.chart, terms)

    def scale(self, c: Fraction | int) -> "SuperFunction":
        return SuperFunction(self.chart, {m: v.scale(c) for m, v in self.terms.items()})

    def scale_rat(self, r: Rat) -> "SuperFunction":
        return SuperFunction(self.chart, {m: v * r for m, v in self.terms.items()})

    def invert(self) -> "SuperFunction":
        """Exact inverse: f * f.invert() == 1.

        Requires a nonzero body; the nilpotent tail is resolved by the
        finite geometric series, which terminates after at most
        (number of odd coordinates) steps.
        """
        body = self.body()
        if body.is_zero():
            raise NotInvertible("superfunction has zero body")
        inv0 = SuperFunction.from_rat(self.chart, body.inv())
        n = self - SuperFunction.from_rat(self.chart, body)
        if n.is_zero():
            return inv0
        minus = (-n) * inv0
        out = SuperFunction.one(self.chart)
        term = SuperFunction.one(self.chart)
        for _ in range(self.chart.n_odd):
            term = term * minus
            if term.is_zero():
                break
            out = out + term
        return inv0 * out

    def __pow__(self, n: int) -> "SuperFunction":
        if n < 0:
            return self.invert() ** (-n)
        out = SuperFunction.one(self.chart)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def partial(self, i: int) -> "SuperFunction":
        """Partial derivative by coordinate index ``i`` (left derivative
        for odd coordinates)."""
        chart = self.chart
        if not 0 <= i < len(chart):
            raise ChartMismatch(f"no coordinate with index {i}")
        terms: dict[OddMon, Rat] = {}
        if chart.parity(i) == EVEN:
            slot = chart.even_slots[i]
            for m, c in self.terms.items():
                d = c.derivative(slot)
                if not d.is_zero():
                    terms[m] = d
            return SuperFunction(chart, terms)
        for m, c in self.terms.items():
            if i not in m:
                continue
            pos = m.index(i)
            rest = m[:pos] + m[pos + 1:]
            v = c if pos % 2 == 0 else -c
            s = terms.get(rest)
            terms[rest] = v if s is None else s + v
        return SuperFunction(chart, terms)

    def partial_name(self, name: str) -> "SuperFunction":
        return self.partial(self.chart.coord_index(name))

    # -- substitution ------------------------------------------------------

    def substitute(self, images: dict[int, "SuperFunction"], target: Chart) -> "SuperFunction":
        """Ring-morphism evaluation: replace coordinate ``i`` by ``images[i]``.

        Every coordinate of the source chart must be assigned an image on
        the target chart, with matching parity; denominators are resolved
        through ``invert`` and must have invertible bodies.
        """
        chart = self.chart
        for i in range(len(chart)):
            if i not in images:
                raise ChartMismatch(f"no image for coordinate {chart.names[i]!r}")
            img = images[i]
            if img.chart != target:
                raise ChartMismatch("image lives on the wrong chart")
            p = img.parity()
            if chart.parity(i) == EVEN and p != EVEN:
                raise ParityError(f"even coordinate {chart.names[i]!r} mapped to non-even value")
            if chart.parity(i) == ODD and not img.is_zero() and p != ODD:
                raise ParityError(f"odd coordinate {chart.names[i]!r} mapped to non-odd value")
        even_images = [images[i] for i in chart.even_coords]
        powers: list[dict[int, SuperFunction]] = [dict() for _ in even_images]

        def even_power(slot: int, k: int) -> SuperFunction:
            cache = powers[slot]
            if k not in cache:
                cache[k] = even_images[slot] ** k
            return cache[k]

        def eval_poly(p: Poly) -> SuperFunction:
            out = SuperFunction.zero(target)
            for expo, coeff in p.terms.items():
                term = SuperFunction.const(target, coeff)
                for slot, k in enumerate(expo):
                    if k:
                        term = term * even_power(slot, k)
                out = out + term
            return out

        result = SuperFunction.zero(target)
        for m, c in self.terms.items():
            value = eval_poly(c.num)
            den = eval_poly(c.den)
            if not den.body():
                raise NotInvertible("denominator not invertible after substitution")
            value = value * den.invert()
            for i in m:
                value = value * images[i]
            result = result + value
        return result

    def rename_chart(self, target: Chart, index_map: dict[int, int]) -> "SuperFunction":
        """Transport to a chart containing the same coordinates (by index map).

        Used to embed functions into product or lifted charts; parities
        must match and even/odd structure is preserved.
        """
        even_map = [0] * self.chart.n_even
        for i, slot in self.chart.even_slots.items():
            even_map[slot] = target.even_slots[index_map[i]]
        terms: dict[OddMon, Rat] = {}
        for m, c in self.terms.items():
            m2 = tuple(sorted(index_map[i] for i in m))
            # index maps used here are monotone on odd coordinates, so no sign
            terms[m2] = c.map_slots(even_map, target.n_even)
        return SuperFunction(target, terms)

    # -- homogeneity -------------------------------------------------------

    def term_degrees(self):
        """Iterate over (odd monomial, degree) for every stored monomial,
        or yield None weight when a coefficient mixes weights."""
        chart = self.chart
        even_ws = [chart.weight(i) for i in chart.even_coords]
        for m, c in self.terms.items():
            odd_w = sum((chart.weight(i) for i in m), Fraction(0))
            w = _rat_weight(c, even_ws)
            yield m, (None if w is None else Degree(len(m) % 2, w + odd_w))

    def weight_of(self):
        """Degree of a homogeneous function, ANY_WEIGHT for 0, None otherwise.

        Sound and complete for this representation: coordinates are
        homogeneous, so each monomial has a definite weight; a quotient is
        homogeneous iff numerator and denominator split into matching
        weight layers, which is checked exactly.
        """
        if not self.terms:
            return ANY_WEIGHT
        degree = None
        for _, d in self.term_degrees():
            if d is None:
                return None
            if degree is None:
                degree = d
            elif degree != d:
                return None
        return degree

    def is_homogeneous(self) -> bool:
        return self.weight_of() is not None

    def evaluate_base(self) -> Fraction:
        """Value at the chart base point (odd coordinates vanish there)."""
        return self.body().eval(self.chart.even_point())


def _poly_weights(p: Poly, even_ws: list[Fraction]) -> set[Fraction]:
    return {
        sum((k * even_ws[s] for s, k in enumerate(e) if k), Fraction(0))
        for e in p.terms
    }


def _poly_nabla(p: Poly, even_ws: list[Fraction]) -> Poly:
    """Diagonal weight field applied to a polynomial: scale each monomial
    by its total coordinate weight."""
    terms = {}
    for e, c in p.terms.items():
        w = sum((k * even_ws[s] for s, k in enumerate(e) if k), Fraction(0))
        if w:
            terms[e] = c * w
    return Poly(p.nvars, terms)


def _rat_weight(c: Rat, even_ws: list[Fraction]) -> Fraction | None:
    """Weight of a homogeneous rational function, None if inhomogeneous.

    Single-monomial-layer quotients are read off directly; otherwise the
    definitional test nabla(c) = w * c is decided exactly through the
    quotient rule: nabla(num)*den - num*nabla(den) must be proportional
    to num*den.
    """
    nw = _poly_weights(c.num, even_ws)
    dw = _poly_weights(c.den, even_ws)
    if len(nw) == 1 and len(dw) == 1:
        return nw.pop() - dw.pop()
    p = _poly_nabla(c.num, even_ws) * c.den - c.num * _poly_nabla(c.den, even_ws)
    q = c.num * c.den
    if p.is_zero():
        return Fraction(0)
    e, qc = q.leading()
    w = p.terms.get(e, Fraction(0)) / qc
    return w if (p - q.scale(w)).is_zero() else None


def rat_weight(chart: Chart, c: Rat) -> Fraction | None:
    """Weight of an even-coordinate rational function on the chart."""
    return _rat_weight(c, [chart.weight(i) for i in chart.even_coords])


def coordinate_functions(chart: Chart) -> list[SuperFunction]:
    return [SuperFunction.coordinate(chart, i) for i in range(len(chart))]


def restrict_function(
    f: SuperFunction, sub: Chart, zeroed: set[str] | list[str]
) -> SuperFunction:
    """Restriction to the homogeneous submanifold {zeroed coordinates = 0}."""
    zeroed = set(zeroed)
    images: dict[int, SuperFunction] = {}
    for i, name in enumerate(f.chart.names):
        if name in zeroed:
            images[i] = SuperFunction.zero(sub)
        else:
            images[i] = SuperFunction.coordinate(sub, sub.coord_index(name))
    return f.substitute(images, sub)
