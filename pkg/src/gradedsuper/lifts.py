"""Tangent and cotangent lifts, fiber-linear functions, tensor weights,
and the bounded homogeneous-distribution check.

Adapted fiber coordinates follow the shifted degrees

    deg(x_dot^a) = deg(x^a) + shift,      deg(p_a) = -deg(x^a) + shift,

and carry a second weight (0 on the base, 1 on fibers) recording the
Euler field of the bundle structure, so lifted charts are honest double
homogeneity charts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chart import Chart, Coordinate, Degree, EVEN, ODD
from .fields import VectorField, bracket, field_weight, weight_field
from .forms import SuperForm
from .linalg import solve
from .poly import Poly, Rat
from .superfun import ANY_WEIGHT, ChartMismatch, SuperFunction


@dataclass
class LiftedChart:
    """A tangent or cotangent chart over a base chart."""

    chart: Chart
    base: Chart
    kind: str  # 'tangent' | 'cotangent'
    shift: Degree
    base_index: dict  # base coordinate index -> index in the lifted chart
    fiber_index: dict  # base coordinate index -> fiber coordinate index


def _lift_chart(base: Chart, shift: Degree, kind: str) -> LiftedChart:
    coords = []
    for c in base.coordinates:
        coords.append(Coordinate(c.name, c.parity, c.weight, c.base, Fraction(0)))
    for i, c in enumerate(base.coordinates):
        parity = (c.parity + shift.parity) % 2
        if kind == "tangent":
            name = f"{c.name}_dot"
            weight = c.weight + shift.weight
        else:
            name = f"p_{c.name}"
            weight = -c.weight + shift.weight
        coords.append(Coordinate(name, parity, weight, Fraction(0), Fraction(1)))
    n = len(base)
    chart = Chart(coords)
    return LiftedChart(
        chart,
        base,
        kind,
        shift,
        base_index={i: i for i in range(n)},
        fiber_index={i: n + i for i in range(n)},
    )


def tangent_chart(base: Chart, shift: Degree | None = None) -> LiftedChart:
    return _lift_chart(base, shift or Degree(EVEN, Fraction(0)), "tangent")


def cotangent_chart(base: Chart, shift: Degree | None = None) -> LiftedChart:
    return _lift_chart(base, shift or Degree(EVEN, Fraction(0)), "cotangent")


def embed_function(f: SuperFunction, lifted: LiftedChart) -> SuperFunction:
    """View a base-chart superfunction on the lifted chart."""
    return f.rename_chart(lifted.chart, lifted.base_index)


def embed_field(x: VectorField, lifted: LiftedChart) -> VectorField:
    coeffs = [SuperFunction.zero(lifted.chart) for _ in range(len(lifted.chart))]
    for i, c in enumerate(x.coeffs):
        coeffs[lifted.base_index[i]] = embed_function(c, lifted)
    return VectorField(lifted.chart, coeffs)


def _pure_tangent_lift(y: VectorField, lifted: LiftedChart) -> VectorField:
    base = lifted.base
    chart = lifted.chart
    coeffs = [SuperFunction.zero(chart) for _ in range(len(chart))]
    for a in range(len(base)):
        ya = embed_function(y.coeffs[a], lifted)
        coeffs[lifted.base_index[a]] = ya
        fib = SuperFunction.zero(chart)
        for b in range(len(base)):
            dba = y.coeffs[a].partial(b)
            if dba.is_zero():
                continue
            xdot_b = SuperFunction.coordinate(chart, lifted.fiber_index[b])
            fib = fib + xdot_b * embed_function(dba, lifted)
        coeffs[lifted.fiber_index[a]] = fib
    return VectorField(chart, coeffs)


def _pure_cotangent_lift(y: VectorField, parity: int, lifted: LiftedChart) -> VectorField:
    base = lifted.base
    chart = lifted.chart
    coeffs = [SuperFunction.zero(chart) for _ in range(len(chart))]
    for a in range(len(base)):
        coeffs[lifted.base_index[a]] = embed_function(y.coeffs[a], lifted)
        fib = SuperFunction.zero(chart)
        for b in range(len(base)):
            dab = y.coeffs[b].partial(a)
            if dab.is_zero():
                continue
            p_b = SuperFunction.coordinate(chart, lifted.fiber_index[b])
            fib = fib + p_b * embed_function(dab, lifted)
        sign = -1 if (parity * base.parity(a)) % 2 else 1
        coeffs[lifted.fiber_index[a]] = fib.scale(-sign)
    return VectorField(chart, coeffs)


def tangent_lift(y: VectorField, lifted: LiftedChart | None = None) -> VectorField:
    """dt Y = Y^a d_a + (x_dot^b d_b(Y^a)) d_{x_dot^a}, extended linearly
    over parity parts."""
    lifted = lifted or tangent_chart(y.chart)
    if lifted.base != y.chart or lifted.kind != "tangent":
        raise ChartMismatch("lifted chart does not match the field")
    out = VectorField.zero(lifted.chart)
    for p in (EVEN, ODD):
        part = y.parity_part(p)
        if not part.is_zero():
            out = out + _pure_tangent_lift(part, lifted)
    return out


def cotangent_lift(y: VectorField, lifted: LiftedChart | None = None) -> VectorField:
    """dt* Y = Y^a d_a - (-1)^{s s_a} (p_b d_a(Y^b)) d_{p_a} for Y of
    parity s, extended linearly over parity parts."""
    lifted = lifted or cotangent_chart(y.chart)
    if lifted.base != y.chart or lifted.kind != "cotangent":
        raise ChartMismatch("lifted chart does not match the field")
    out = VectorField.zero(lifted.chart)
    for p in (EVEN, ODD):
        part = y.parity_part(p)
        if not part.is_zero():
            out = out + _pure_cotangent_lift(part, p, lifted)
    return out


def iota_field(x: VectorField, lifted: LiftedChart) -> SuperFunction:
    """Fiber-linear function of a vector field on a cotangent chart:
    iota_X = sum_a X^a p_a (left coefficients)."""
    if lifted.kind != "cotangent" or lifted.base != x.chart:
        raise ChartMismatch("iota of a field lives on a cotangent chart")
    out = SuperFunction.zero(lifted.chart)
    for a, c in enumerate(x.coeffs):
        if c.is_zero():
            continue
        p_a = SuperFunction.coordinate(lifted.chart, lifted.fiber_index[a])
        out = out + embed_function(c, lifted) * p_a
    return out


def iota_form(alpha: SuperForm, lifted: LiftedChart) -> SuperFunction:
    """Fiber-linear function of a 1-form on a tangent chart: replace each
    d(x^a) by the fiber coordinate x_dot^a keeping the stored coefficient
    on the right."""
    if lifted.kind != "tangent" or lifted.base != alpha.chart:
        raise ChartMismatch("iota of a form lives on a tangent chart")
    if alpha.ranks() - {1}:
        raise ChartMismatch("iota is defined for 1-forms")
    out = SuperFunction.zero(lifted.chart)
    for (odd, dgens), c in alpha.terms.items():
        a = dgens[0]
        xdot = SuperFunction.coordinate(lifted.chart, lifted.fiber_index[a])
        coeff = SuperFunction(alpha.chart, {odd: c})
        out = out + xdot * embed_function(coeff, lifted)
    return out


def tensor_weight(k) -> "Degree | AnyWeightType | None":
    """Degree of a tensor: L_nabla K = w K for forms, [nabla, K] = w K for
    vector fields, the monomial answer for superfunctions."""
    if isinstance(k, SuperFunction):
        return k.weight_of()
    if isinstance(k, VectorField):
        return field_weight(k)
    if isinstance(k, SuperForm):
        if k.is_zero():
            return ANY_WEIGHT
        p = k.parity()
        if p is None:
            return None
        nabla = weight_field(k.chart)
        lk = k.lie_derivative(nabla)
        w = _form_proportionality(lk, k)
        return None if w is None else Degree(p, w)
    raise TypeError(f"no tensor weight for {type(k).__name__}")


AnyWeightType = type(ANY_WEIGHT)


def _form_proportionality(numer: SuperForm, denom: SuperForm) -> Fraction | None:
    w = None
    for k, c in denom.terms.items():
        if k in numer.terms:
            ratio = (numer.terms[k] / c).is_constant()
            if ratio is not None:
                w = ratio
                break
    if w is None:
        w = Fraction(0)
    diff = numer - denom.scale(w)
    return w if diff.is_zero() else None


# -- homogeneous distributions ------------------------------------------------


@dataclass
class DistributionVerdict:
    proven: bool
    witnesses: list[list[SuperFunction]] | None  # witnesses[i][j] = f_i^j

    @property
    def inconclusive(self) -> bool:
        return not self.proven


def _polynomial_basis(chart: Chart, max_degree: int):
    """All superfunction monomials of total degree <= max_degree."""
    from itertools import combinations

    evens = chart.even_coords
    odds = chart.odd_coords
    expos: list[tuple[int, ...]] = []

    def rec(prefix, remaining_slots, budget):
        if remaining_slots == 0:
            expos.append(tuple(prefix))
            return
        for k in range(budget + 1):
            rec(prefix + [k], remaining_slots - 1, budget - k)

    rec([], len(evens), max_degree)
    basis = []
    for e in expos:
        used = sum(e)
        for r in range(0, min(len(odds), max_degree - used) + 1):
            for subset in combinations(odds, r):
                basis.append((subset, e))
    return basis


def distribution_is_homogeneous(
    gens: list[VectorField], ansatz_degree: int
) -> DistributionVerdict:
    """Solve [nabla, X_i] = sum_j f_i^j X_j for polynomial superfunctions
    f_i^j of total degree <= ansatz_degree, by exact linear algebra on
    monomial coefficients.

    Returns a proven verdict with witnesses, or inconclusive when the
    bounded search fails (never a disproof).
    """
    if not gens:
        raise ValueError("no generators")
    chart = gens[0].chart
    for g in gens:
        if g.chart != chart:
            raise ChartMismatch("generators on different charts")
        for c in g.coeffs:
            if not c.is_polynomial():
                raise ValueError("rational-function generators rejected")
    nabla = weight_field(chart)
    basis = _polynomial_basis(chart, ansatz_degree)
    nb = len(basis)
    ng = len(gens)

    # flat index for unknown coefficient (j, b): f_i^j = sum_b u[j*nb+b] m_b
    # one independent linear system per generator i
    witnesses: list[list[SuperFunction]] = []
    for xi in gens:
        target = bracket(nabla, xi)
        # row space: superfunction-monomial coordinates per chart coordinate a
        rows: dict[tuple[int, tuple, tuple], dict[int, Fraction]] = {}
        rhs: dict[tuple[int, tuple, tuple], Fraction] = {}

        def add_entry(a, f: SuperFunction, col: int | None, scale=Fraction(1)):
            for m, c in f.terms.items():
                p = c.is_polynomial()
                if p is None:
                    raise ValueError("rational-function generators rejected")
                for e, val in p.terms.items():
                    key = (a, m, e)
                    if col is None:
                        rhs[key] = rhs.get(key, Fraction(0)) + val * scale
                        rows.setdefault(key, {})
                    else:
                        row = rows.setdefault(key, {})
                        row[col] = row.get(col, Fraction(0)) + val * scale

        for a in range(len(chart)):
            add_entry(a, target.coeffs[a], None)
            for j, xj in enumerate(gens):
                if xj.coeffs[a].is_zero():
                    continue
                for b, (odd, expo) in enumerate(basis):
                    mono = SuperFunction.monomial(
                        chart, odd, Rat.from_poly(Poly.monomial(chart.n_even, expo))
                    )
                    prod = mono * xj.coeffs[a]
                    add_entry(a, prod, j * nb + b)

        keys = sorted(rows.keys())
        ncols = ng * nb
        a_mat = [[rows[k].get(c, Fraction(0)) for c in range(ncols)] for k in keys]
        b_vec = [rhs.get(k, Fraction(0)) for k in keys]
        sol = solve(a_mat, b_vec)
        if sol is None:
            return DistributionVerdict(False, None)
        fs = []
        for j in range(ng):
            f = SuperFunction.zero(chart)
            for b, (odd, expo) in enumerate(basis):
                coeff = sol[j * nb + b]
                if coeff:
                    f = f + SuperFunction.monomial(
                        chart, odd, Rat.from_poly(Poly.monomial(chart.n_even, expo, coeff))
                    )
            fs.append(f)
        witnesses.append(fs)

    return DistributionVerdict(True, witnesses)
