"""Differential forms as the trigraded algebra of coordinates and their
differentials, with the Deligne sign convention.

Each generator carries a bi-degree (parity, form-rank): a coordinate
function xi is (1, 0), an even coordinate function is (0, 0), and the
differential d(x^a) is (parity of x^a, 1).  Exchanging two generators u, v
costs the sign

    (-1)^{parity(u) parity(v) + rank(u) rank(v)},

the "scalar product" of the bi-degrees.  Consequences: differentials of
even coordinates are exterior generators (square zero), differentials of
odd coordinates commute with themselves and may repeat, and a homogeneous
r_a-form a and r_b-form b satisfy a^b = (-1)^{s_a s_b + r_a r_b} b^a.

A form monomial is stored canonically as

    xi_{i_1} ... xi_{i_k} . d(x^{a_1}) ... d(x^{a_r}) . c(x)

with odd factors first (ascending), then differentials (ascending by
coordinate index, repeats only for odd coordinates), and the purely even
coefficient on the right (it is parity 0 and moves freely).

The de Rham derivative places the differential on the LEFT of the
coefficient it produces, d f = d(x^a) . (df/dx^a); the order of factors
matters for everything odd.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import Chart, Degree, EVEN, ODD
from .poly import Rat
from .superfun import ChartMismatch, SuperFunction, merge_odd, rat_weight
from .fields import VectorField

FormKey = tuple[tuple[int, ...], tuple[int, ...]]  # (odd part, differential part)

Token = tuple[str, int]  # ('x', i) odd coordinate factor, ('d', i) differential


def _token_bidegree(chart: Chart, tok: Token) -> tuple[int, int]:
    kind, i = tok
    if kind == "x":
        return 1, 0
    return chart.parity(i), 1


def _token_key(tok: Token) -> tuple[int, int]:
    return (0 if tok[0] == "x" else 1, tok[1])


def canonicalize(chart: Chart, tokens: list[Token]) -> tuple[int, FormKey] | None:
    """Sort a generator word into canonical order.

    Returns (sign, key) such that `product(tokens) == sign * product(key)`,
    or None when the word vanishes (repeated odd factor, or repeated
    differential of an even coordinate).
    """
    toks = list(tokens)
    sign = 1
    n = len(toks)
    for a in range(1, n):
        b = a
        while b > 0 and _token_key(toks[b - 1]) > _token_key(toks[b]):
            p1, r1 = _token_bidegree(chart, toks[b - 1])
            p2, r2 = _token_bidegree(chart, toks[b])
            if (p1 * p2 + r1 * r2) % 2:
                sign = -sign
            toks[b - 1], toks[b] = toks[b], toks[b - 1]
            b -= 1
    for a in range(n - 1):
        if toks[a] == toks[a + 1]:
            kind, i = toks[a]
            if kind == "x" or chart.parity(i) == EVEN:
                return None
    odd = tuple(i for kind, i in toks if kind == "x")
    dgens = tuple(i for kind, i in toks if kind == "d")
    return sign, (odd, dgens)


def key_tokens(key: FormKey) -> list[Token]:
    odd, dgens = key
    return [("x", i) for i in odd] + [("d", i) for i in dgens]


class SuperForm:
    """Sum of canonical form monomials over a chart.  Immutable."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: dict[FormKey, Rat] | None = None):
        self.chart = chart
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "SuperForm":
        return cls(chart, {})

    @classmethod
    def from_function(cls, f: SuperFunction) -> "SuperForm":
        return cls(f.chart, {(m, ()): c for m, c in f.terms.items()})

    @classmethod
    def monomial(cls, chart: Chart, odd, dgens, coeff: Rat) -> "SuperForm":
        canon = canonicalize(chart, [("x", i) for i in odd] + [("d", i) for i in dgens])
        if canon is None:
            return cls.zero(chart)
        sign, key = canon
        return cls(chart, {key: coeff if sign > 0 else -coeff})

    @classmethod
    def differential_of(cls, chart: Chart, i: int) -> "SuperForm":
        """The 1-form d(x^i)."""
        return cls(chart, {((), (i,)): Rat.one(chart.n_even)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperForm):
            return NotImplemented
        if self.chart != other.chart or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "SuperForm"):
        if self.chart != other.chart:
            raise ChartMismatch("forms live on different charts")

    def ranks(self) -> set[int]:
        return {len(d) for _, d in self.terms}

    def max_rank(self) -> int:
        return max((len(d) for _, d in self.terms), default=0)

    def rank_part(self, r: int) -> "SuperForm":
        return SuperForm(self.chart, {k: c for k, c in self.terms.items() if len(k[1]) == r})

    def function_part(self) -> SuperFunction:
        """The rank-0 component as a superfunction."""
        return SuperFunction(self.chart, {m: c for (m, d), c in self.terms.items() if not d})

    def monomial_parity(self, key: FormKey) -> int:
        odd, dgens = key
        return (len(odd) + sum(self.chart.parity(i) for i in dgens)) % 2

    def parity(self) -> int | None:
        parities = {self.monomial_parity(k) for k in self.terms}
        if not parities:
            return EVEN
        return parities.pop() if len(parities) == 1 else None

    def tri_degree(self) -> tuple[Degree, int] | None:
        """(degree, rank) by monomial inspection when uniform, else None.

        The zero form reports ((even, 0), 0); callers that care should
        test is_zero first.
        """
        chart = self.chart
        if not self.terms:
            return Degree(EVEN, Fraction(0)), 0
        found = None
        for (odd, dgens), c in self.terms.items():
            w = rat_weight(chart, c)
            if w is None:
                return None
            w += sum((chart.weight(i) for i in odd), Fraction(0))
            w += sum((chart.weight(i) for i in dgens), Fraction(0))
            entry = (Degree(self.monomial_parity((odd, dgens)), w), len(dgens))
            if found is None:
                found = entry
            elif found != entry:
                return None
        return found

    # -- linear operations ---------------------------------------------------

    def __add__(self, other: "SuperForm") -> "SuperForm":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            terms[k] = c if s is None else s + c
        return SuperForm(self.chart, terms)

    def __neg__(self) -> "SuperForm":
        return SuperForm(self.chart, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SuperForm") -> "SuperForm":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "SuperForm":
        return SuperForm(self.chart, {k: v.scale(c) for k, v in self.terms.items()})

    # -- multiplicative structure --------------------------------------------

    def wedge(self, other: "SuperForm") -> "SuperForm":
        self._check(other)
        chart = self.chart
        terms: dict[FormKey, Rat] = {}
        for k1, c1 in self.terms.items():
            t1 = key_tokens(k1)
            for k2, c2 in other.terms.items():
                canon = canonicalize(chart, t1 + key_tokens(k2))
                if canon is None:
                    continue
                sign, key = canon
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = terms.get(key)
                terms[key] = c if s is None else s + c
        return SuperForm(chart, terms)

    def left_mul(self, f: SuperFunction) -> "SuperForm":
        """Multiply by a superfunction from the left."""
        return SuperForm.from_function(f).wedge(self)

    def d(self) -> "SuperForm":
        """De Rham derivative: the bidegree (0, 1) derivation with
        d(x^a) -> dx^a on generators, differentials going to the left of
        the produced coefficients."""
        chart = self.chart
        out: dict[FormKey, Rat] = {}

        def put(tokens: list[Token], coeff: Rat):
            canon = canonicalize(chart, tokens)
            if canon is None:
                return
            sign, key = canon
            c = coeff if sign > 0 else -coeff
            s = out.get(key)
            out[key] = c if s is None else s + c

        for (odd, dgens), c in self.terms.items():
            xtok = [("x", i) for i in odd]
            dtok = [("d", i) for i in dgens]
            # d hits an odd coordinate factor (d passes rank-0 factors freely)
            for k in range(len(odd)):
                toks = xtok[:k] + [("d", odd[k])] + xtok[k + 1:] + dtok
                put(toks, c)
            # d hits the even coefficient, passing the whole differential block
            sign = -1 if len(dgens) % 2 else 1
            for slot, i in enumerate(chart.even_coords):
                dc = c.derivative(slot)
                if dc.is_zero():
                    continue
                put(xtok + dtok + [("d", i)], dc if sign > 0 else -dc)
        return SuperForm(chart, out)

    def is_closed(self) -> bool:
        return self.d().is_zero()

    def interior(self, x: VectorField) -> "SuperForm":
        """Interior product i_X = sum_a X^a d/d(dx^a): the left derivation
        of bidegree (parity X^a d_a, -1) striking one differential."""
        if x.chart != self.chart:
            raise ChartMismatch("field and form live on different charts")
        chart = self.chart
        out: dict[FormKey, Rat] = {}
        for (odd, dgens), c in self.terms.items():
            k_odd = len(odd)
            for a, coeff_a in enumerate(x.coeffs):
                if coeff_a.is_zero():
                    continue
                sa = chart.parity(a)
                for j, b in enumerate(dgens):
                    if b != a:
                        continue
                    # move the derivation past the odd block and the first
                    # j differentials
                    s = (sa * k_odd) % 2
                    for g in dgens[:j]:
                        s = (s + sa * chart.parity(g) + 1) % 2
                    rest = dgens[:j] + dgens[j + 1:]
                    base = c if s == 0 else -c
                    # left-multiply by the coefficient X^a
                    for m, cm in coeff_a.terms.items():
                        merged = merge_odd(m, odd)
                        if merged is None:
                            continue
                        sgn, modd = merged
                        val = cm * base
                        if sgn < 0:
                            val = -val
                        key = (modd, rest)
                        sacc = out.get(key)
                        out[key] = val if sacc is None else sacc + val
        return SuperForm(chart, out)

    def lie_derivative(self, x: VectorField) -> "SuperForm":
        """L_X = d i_X + i_X d."""
        return self.interior(x).d() + self.d().interior(x)

    # -- decomposition helpers (used by the primitive construction) ----------

    def split_off(self, i: int) -> dict[tuple[int, int], "SuperForm"]:
        """Write the form as sum over (a, j) of  xi^a (d xi)^j ^ rest,
        where the rests do not contain the coordinate factor or its
        differential (a is 0/1 presence of the odd factor; for an even
        coordinate a is always 0 and j is 0/1).

        Coefficient dependence on the coordinate is untouched; the keys
        classify only the generator content.
        """
        chart = self.chart
        parts: dict[tuple[int, int], dict[FormKey, Rat]] = {}
        for (odd, dgens), c in self.terms.items():
            a = 1 if i in odd else 0
            j = sum(1 for g in dgens if g == i)
            rest_odd = tuple(o for o in odd if o != i)
            rest_d = tuple(g for g in dgens if g != i)
            prefix = [("x", i)] * a + [("d", i)] * j
            tokens = prefix + [("x", o) for o in rest_odd] + [("d", g) for g in rest_d]
            canon = canonicalize(chart, tokens)
            sign, key = canon
            if key != (odd, dgens):
                raise AssertionError("split_off produced a different monomial")
            dest = parts.setdefault((a, j), {})
            val = c if sign > 0 else -c
            s = dest.get((rest_odd, rest_d))
            dest[(rest_odd, rest_d)] = val if s is None else s + val
        return {k: SuperForm(chart, t) for k, t in parts.items()}

    def attach_prefix(self, i: int, a: int, j: int) -> "SuperForm":
        """Left-wedge with xi^a (d xi)^j (inverse of split_off pieces)."""
        chart = self.chart
        out: dict[FormKey, Rat] = {}
        prefix = [("x", i)] * a + [("d", i)] * j
        for (odd, dgens), c in self.terms.items():
            canon = canonicalize(
                chart, prefix + [("x", o) for o in odd] + [("d", g) for g in dgens]
            )
            if canon is None:
                continue
            sign, key = canon
            val = c if sign > 0 else -c
            s = out.get(key)
            out[key] = val if s is None else s + val
        return SuperForm(chart, out)

    def involves(self, i: int) -> bool:
        """Does the coordinate appear as a factor, a differential, or inside
        a coefficient?"""
        chart = self.chart
        slot = chart.even_slots.get(i)
        for (odd, dgens), c in self.terms.items():
            if i in odd or i in dgens:
                return True
            if slot is not None and c.depends_on(slot):
                return True
        return False

    def map_coefficients(self, fn) -> "SuperForm":
        return SuperForm(self.chart, {k: fn(c) for k, c in self.terms.items()})

    def evaluate_base(self) -> dict[FormKey, Fraction]:
        """Constant-coefficient shadow at the chart base point: kill odd
        factors, evaluate even coefficients at the base values."""
        point = self.chart.even_point()
        out = {}
        for (odd, dgens), c in self.terms.items():
            if odd:
                continue
            v = c.eval(point)
            if v:
                out[((), dgens)] = v
        return out

    def __repr__(self) -> str:
        return f"SuperForm({self.terms!r})"


def wedge(a: SuperForm, b: SuperForm) -> SuperForm:
    return a.wedge(b)


def d(form_or_function) -> SuperForm:
    if isinstance(form_or_function, SuperFunction):
        return SuperForm.from_function(form_or_function).d()
    return form_or_function.d()


def interior(x: VectorField, form: SuperForm) -> SuperForm:
    return form.interior(x)


def lie_derivative(x: VectorField, form: SuperForm) -> SuperForm:
    return form.lie_derivative(x)


def is_closed(form: SuperForm) -> bool:
    return form.is_closed()
