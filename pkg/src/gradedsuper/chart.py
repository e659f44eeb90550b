"""Charts with degree-labelled coordinates.

A chart is an ordered list of named coordinates, each carrying a parity,
an exact rational weight, and a base-point value (odd coordinates are
based at 0).  A second weight per coordinate is allowed for double
homogeneity; the two induced diagonal weight fields then commute
automatically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

EVEN = 0
ODD = 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ChartError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse `p` or `p/q`; decimals are rejected deliberately."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ChartError(f"not a rational `p/q`: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ChartError(f"zero denominator in rational: {text!r}") from None


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class Degree:
    """Element of Z2 x Q: parity and weight."""

    parity: int
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "parity", self.parity % 2)
        object.__setattr__(self, "weight", Fraction(self.weight))

    def __add__(self, other: "Degree") -> "Degree":
        return Degree((self.parity + other.parity) % 2, self.weight + other.weight)

    def __sub__(self, other: "Degree") -> "Degree":
        return Degree((self.parity + other.parity) % 2, self.weight - other.weight)

    def __neg__(self) -> "Degree":
        return Degree(self.parity, -self.weight)

    def scale(self, n: int) -> "Degree":
        return Degree((self.parity * n) % 2, self.weight * n)

    def __str__(self) -> str:
        return f"({'even' if self.parity == EVEN else 'odd'}, {self.weight})"


@dataclass(frozen=True)
class Coordinate:
    name: str
    parity: int
    weight: Fraction
    base: Fraction = Fraction(0)
    weight2: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "base", Fraction(self.base))
        if self.weight2 is not None:
            object.__setattr__(self, "weight2", Fraction(self.weight2))
        if self.parity == ODD and self.base != 0:
            raise ChartError(f"odd coordinate {self.name!r} must be based at 0")

    @property
    def degree(self) -> Degree:
        return Degree(self.parity, self.weight)


class Chart:
    """Ordered homogeneous coordinates with the derived index tables."""

    def __init__(self, coordinates):
        coords = tuple(coordinates)
        names = [c.name for c in coords]
        if len(set(names)) != len(names):
            raise ChartError("duplicate coordinate names in chart")
        self.coordinates = coords
        self.names = tuple(names)
        self.index = {c.name: i for i, c in enumerate(coords)}
        self.even_slots = {}   # coordinate index -> even variable slot
        self.even_coords = []  # even variable slot -> coordinate index
        self.odd_coords = []
        for i, c in enumerate(coords):
            if c.parity == EVEN:
                self.even_slots[i] = len(self.even_coords)
                self.even_coords.append(i)
            else:
                self.odd_coords.append(i)

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.coordinates)

    @property
    def n_even(self) -> int:
        return len(self.even_coords)

    @property
    def n_odd(self) -> int:
        return len(self.odd_coords)

    def parity(self, i: int) -> int:
        return self.coordinates[i].parity

    def weight(self, i: int) -> Fraction:
        return self.coordinates[i].weight

    def degree(self, i: int) -> Degree:
        return self.coordinates[i].degree

    def base(self, i: int) -> Fraction:
        return self.coordinates[i].base

    def coord_index(self, name: str) -> int:
        if name not in self.index:
            raise ChartError(f"unknown coordinate {name!r}")
        return self.index[name]

    def even_point(self) -> list[Fraction]:
        """Base values of the even coordinates, in even-slot order."""
        return [self.coordinates[i].base for i in self.even_coords]

    def has_weight2(self) -> bool:
        return any(c.weight2 is not None for c in self.coordinates)

    def weight2(self, i: int) -> Fraction:
        w2 = self.coordinates[i].weight2
        return Fraction(0) if w2 is None else w2

    def __eq__(self, other) -> bool:
        return isinstance(other, Chart) and self.coordinates == other.coordinates

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return "Chart(" + ", ".join(
            f"{c.name}:{'E' if c.parity == EVEN else 'O'}:{c.weight}" for c in self.coordinates
        ) + ")"


def chart(spec: str) -> Chart:
    """Compact chart builder: ``"x E 1, xi O 3 , y E -1 base=2"``."""
    coords = [_parse_coord_line(part, 0) for part in spec.split(",") if part.strip()]
    return Chart(coords)


def product_chart(c1: Chart, c2: Chart) -> Chart:
    """Cartesian product: concatenated coordinates, weight fields add.

    Clashing names from the second factor are renamed deterministically.
    """
    taken = set(c1.names)
    coords = list(c1.coordinates)
    for c in c2.coordinates:
        name = c.name
        k = 2
        while name in taken:
            name = f"{c.name}_{k}"
            k += 1
        taken.add(name)
        coords.append(Coordinate(name, c.parity, c.weight, c.base, c.weight2))
    return Chart(coords)


def restrict_chart(c: Chart, zeroed: set[str] | list[str]) -> Chart:
    """Homogeneous submanifold chart: drop the zeroed coordinates.

    The diagonal weight field is always tangent to {x^a = 0}, so any
    subset is admissible; the restricted field is the diagonal field of
    the remaining coordinates.
    """
    zeroed = set(zeroed)
    unknown = zeroed - set(c.names)
    if unknown:
        raise ChartError(f"cannot zero unknown coordinates: {sorted(unknown)}")
    return Chart([co for co in c.coordinates if co.name not in zeroed])


def weight_monoid(c: Chart, bound: int) -> list[Fraction]:
    """All sums of at most ``bound`` coordinate weights (with repetition)."""
    if bound < 0:
        raise ChartError("bound must be >= 0")
    weights = sorted(set(co.weight for co in c.coordinates))
    sums = {Fraction(0)}
    frontier = {Fraction(0)}
    for _ in range(bound):
        frontier = {s + w for s in frontier for w in weights}
        sums |= frontier
    return sorted(sums)


# -- chart files ------------------------------------------------------------
#
# Line-oriented text, one coordinate per line:
#     name parity(E|O) weight(p/q) [base=p/q] [weight2=p/q]
# `#` starts a comment.  Rationals round-trip bit-exactly.


def _parse_coord_line(line: str, lineno: int) -> Coordinate:
    tokens = line.split()
    if len(tokens) < 3:
        raise ChartError(f"line {lineno}: expected `name E|O weight [base=p/q]`")
    name, par, weight = tokens[0], tokens[1], tokens[2]
    if not name.isidentifier():
        raise ChartError(f"line {lineno}: bad coordinate name {name!r}")
    if par not in ("E", "O"):
        raise ChartError(f"line {lineno}: parity must be E or O, got {par!r}")
    try:
        w = parse_rational(weight)
    except ChartError as e:
        raise ChartError(f"line {lineno}: {e}") from None
    base = Fraction(0)
    weight2 = None
    for tok in tokens[3:]:
        if tok.startswith("base="):
            base = parse_rational(tok[5:])
        elif tok.startswith("weight2="):
            weight2 = parse_rational(tok[8:])
        else:
            raise ChartError(f"line {lineno}: unknown field {tok!r}")
    try:
        return Coordinate(name, EVEN if par == "E" else ODD, w, base, weight2)
    except ChartError as e:
        raise ChartError(f"line {lineno}: {e}") from None


def parse_chart_text(text: str) -> Chart:
    coords = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        coords.append(_parse_coord_line(line, lineno))
    if not coords:
        raise ChartError("chart file defines no coordinates")
    return Chart(coords)


def load_chart(path) -> Chart:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_chart_text(fh.read())


def chart_to_text(c: Chart) -> str:
    lines = []
    for co in c.coordinates:
        parts = [co.name, "E" if co.parity == EVEN else "O", format_rational(co.weight)]
        if co.base != 0:
            parts.append(f"base={format_rational(co.base)}")
        if co.weight2 is not None:
            parts.append(f"weight2={format_rational(co.weight2)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
