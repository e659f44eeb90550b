"""Vector fields over a chart, the graded Lie bracket, and pushforwards.

A vector field is stored through its left coefficients,
X = sum_a X^a * d/dx^a.  For fields of pure parity s_X and s_Y the
bracket in coordinates is

    [X, Y]^j = sum_i ( X^i d_i(Y^j) - (-1)^{s_X s_Y} Y^i d_i(X^j) );

mixed-parity inputs are split into parity parts and recombined linearly.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import Chart, Degree, EVEN, ODD
from .superfun import ANY_WEIGHT, ChartMismatch, ParityError, SuperFunction


class VectorField:
    """Left-coefficient vector field over a chart.  Immutable."""

    __slots__ = ("chart", "coeffs")

    def __init__(self, chart: Chart, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != len(chart):
            raise ChartMismatch("one coefficient per coordinate required")
        for c in coeffs:
            if c.chart != chart:
                raise ChartMismatch("coefficient lives on the wrong chart")
        self.chart = chart
        self.coeffs = coeffs

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        z = SuperFunction.zero(chart)
        return cls(chart, [z] * len(chart))

    @classmethod
    def basis(cls, chart: Chart, i: int) -> "VectorField":
        coeffs = [SuperFunction.zero(chart) for _ in range(len(chart))]
        coeffs[i] = SuperFunction.one(chart)
        return cls(chart, coeffs)

    @classmethod
    def from_dict(cls, chart: Chart, named: dict[str, SuperFunction]) -> "VectorField":
        coeffs = [SuperFunction.zero(chart) for _ in range(len(chart))]
        for name, f in named.items():
            coeffs[chart.coord_index(name)] = f
        return cls(chart, coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.chart != other.chart:
            raise ChartMismatch("vector fields on different charts")
        return VectorField(self.chart, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, [-c for c in self.coeffs])

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scale(self, c) -> "VectorField":
        return VectorField(self.chart, [f.scale(c) for f in self.coeffs])

    def mul_left(self, f: SuperFunction) -> "VectorField":
        return VectorField(self.chart, [f * c for c in self.coeffs])

    def apply(self, f: SuperFunction) -> SuperFunction:
        """X(f) = sum_a X^a * d_a(f)."""
        if f.chart != self.chart:
            raise ChartMismatch("function lives on a different chart")
        out = SuperFunction.zero(self.chart)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            out = out + c * f.partial(i)
        return out

    # -- parity ------------------------------------------------------------

    def parity(self) -> int | None:
        """Parity of X^a d_a is parity(X^a) + parity(x^a)."""
        parities = set()
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            p = c.parity()
            if p is None:
                return None
            parities.add((p + self.chart.parity(i)) % 2)
        if not parities:
            return EVEN
        return parities.pop() if len(parities) == 1 else None

    def parity_part(self, parity: int) -> "VectorField":
        coeffs = [
            c.parity_part((parity + self.chart.parity(i)) % 2)
            for i, c in enumerate(self.coeffs)
        ]
        return VectorField(self.chart, coeffs)


def weight_field(chart: Chart, which: int = 1) -> VectorField:
    """The diagonal weight vector field sum_a w_a x^a d_a."""
    coeffs = []
    for i in range(len(chart)):
        w = chart.weight(i) if which == 1 else chart.weight2(i)
        coeffs.append(SuperFunction.coordinate(chart, i).scale(w))
    return VectorField(chart, coeffs)


def _bracket_pure(x: VectorField, y: VectorField, sx: int, sy: int) -> VectorField:
    chart = x.chart
    sign = -1 if (sx * sy) % 2 else 1
    coeffs = []
    for j in range(len(chart)):
        term = SuperFunction.zero(chart)
        for i in range(len(chart)):
            if not x.coeffs[i].is_zero():
                term = term + x.coeffs[i] * y.coeffs[j].partial(i)
            if not y.coeffs[i].is_zero():
                d = y.coeffs[i] * x.coeffs[j].partial(i)
                term = term - d if sign > 0 else term + d
        coeffs.append(term)
    return VectorField(chart, coeffs)


def bracket(x: VectorField, y: VectorField) -> VectorField:
    """Graded Lie bracket; mixed parities are split and recombined."""
    if x.chart != y.chart:
        raise ChartMismatch("vector fields on different charts")
    out = VectorField.zero(x.chart)
    for sx in (EVEN, ODD):
        xp = x.parity_part(sx)
        if xp.is_zero():
            continue
        for sy in (EVEN, ODD):
            yp = y.parity_part(sy)
            if yp.is_zero():
                continue
            out = out + _bracket_pure(xp, yp, sx, sy)
    return out


def field_weight(x: VectorField) -> Degree | None:
    """Tensor degree of a vector field: [nabla, X] = w * X, plus a parity.

    Returns ANY_WEIGHT for the zero field and None when inhomogeneous.
    """
    if x.is_zero():
        return ANY_WEIGHT
    p = x.parity()
    if p is None:
        return None
    nabla = weight_field(x.chart)
    b = bracket(nabla, x)
    w = _proportionality(b, x)
    return None if w is None else Degree(p, w)


def _proportionality(numer: VectorField, denom: VectorField) -> Fraction | None:
    """Scalar w with numer == w * denom, if one exists (denom nonzero)."""
    w = None
    for a, b in zip(numer.coeffs, denom.coeffs):
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        for m, c in b.terms.items():
            if m not in a.terms:
                continue
            ratio = (a.terms[m] / c).is_constant()
            if ratio is not None:
                w = ratio
                break
        if w is not None:
            break
    if w is None:
        w = Fraction(0)
    for a, b in zip(numer.coeffs, denom.coeffs):
        if not (a - b.scale(w)).is_zero():
            return None
    return w


# -- coordinate changes ------------------------------------------------------


class CoordinateMap:
    """Invertible coordinate change between two charts.

    ``forward[j]`` expresses target coordinate j as a superfunction of the
    source coordinates; ``inverse[i]`` expresses source coordinate i in
    target coordinates.
    """

    def __init__(
        self,
        source: Chart,
        target: Chart,
        forward: dict[int, SuperFunction],
        inverse: dict[int, SuperFunction],
    ):
        self.source = source
        self.target = target
        self.forward = dict(forward)
        self.inverse = dict(inverse)
        for j in range(len(target)):
            if j not in self.forward or self.forward[j].chart != source:
                raise ChartMismatch("forward images must cover the target chart")
        for i in range(len(source)):
            if i not in self.inverse or self.inverse[i].chart != target:
                raise ChartMismatch("inverse images must cover the source chart")

    @classmethod
    def from_names(cls, source: Chart, target: Chart, forward, inverse) -> "CoordinateMap":
        fwd = {target.coord_index(n): f for n, f in forward.items()}
        inv = {source.coord_index(n): f for n, f in inverse.items()}
        return cls(source, target, fwd, inv)

    def pull_back(self, f: SuperFunction) -> SuperFunction:
        """Pull a function on the target back to the source chart."""
        if f.chart != self.target:
            raise ChartMismatch("function must live on the target chart")
        return f.substitute(self.forward, self.source)

    def push_forward_function(self, f: SuperFunction) -> SuperFunction:
        if f.chart != self.source:
            raise ChartMismatch("function must live on the source chart")
        return f.substitute(self.inverse, self.target)

    def verify_inverse(self) -> bool:
        """Check both compositions are the identity on coordinates."""
        for i in range(len(self.source)):
            xi = SuperFunction.coordinate(self.source, i)
            back = self.inverse[i].substitute(self.forward, self.source)
            if back != xi:
                return False
        for j in range(len(self.target)):
            yj = SuperFunction.coordinate(self.target, j)
            back = self.forward[j].substitute(self.inverse, self.target)
            if back != yj:
                return False
        return True

    def compose(self, other: "CoordinateMap") -> "CoordinateMap":
        """The map ``other after self`` (self: M->N, other: N->P)."""
        if self.target != other.source:
            raise ChartMismatch("maps are not composable")
        fwd = {
            k: f.substitute(self.forward, self.source) for k, f in other.forward.items()
        }
        inv = {
            i: f.substitute(other.inverse, other.target) for i, f in self.inverse.items()
        }
        return CoordinateMap(self.source, other.target, fwd, inv)


def pushforward(cmap: CoordinateMap, x: VectorField) -> VectorField:
    """phi_* X expressed in the target chart via the chain rule."""
    if x.chart != cmap.source:
        raise ChartMismatch("field must live on the source chart")
    coeffs = []
    for j in range(len(cmap.target)):
        applied = x.apply(cmap.forward[j])
        coeffs.append(applied.substitute(cmap.inverse, cmap.target))
    return VectorField(cmap.target, coeffs)
