"""Exact sparse Laurent polynomials, parametrised coefficients, and systems.

All coefficient arithmetic is over the rationals via ``fractions.Fraction``;
floats are rejected at construction time so that zero tests stay exact.
Values are immutable after construction and therefore safe to share across
threads; every operation is a pure function of its inputs.

The canonical monomial order used for rendering and for column labels of a
:class:`VerticalSystem` is graded lexicographic, largest first: higher total
degree wins, ties are broken lexicographically on the exponent tuple.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "ExponentVector",
    "Support",
    "ParameterPolynomial",
    "ParametrisedPolynomial",
    "LaurentPolynomial",
    "PolynomialSystem",
    "VerticalSystem",
    "canonical_monomial_order",
    "exact_fraction",
    "grlex_key",
    "minimal_vertical_system",
]


def exact_fraction(value) -> Fraction:
    """Coerce a coefficient to Fraction, rejecting inexact floats."""
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not supported; use int, str or Fraction")
    return Fraction(value)


class ExponentVector(tuple):
    """A lattice point in Z^n: the exponent vector of one Laurent monomial.

    Behaves like a tuple (hashable, totally ordered) but with componentwise
    ``+``, ``-`` and unary negation instead of tuple concatenation.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]):
        vec = super().__new__(cls, entries)
        for entry in vec:
            if not isinstance(entry, int):
                raise TypeError(f"exponents must be integers, got {entry!r}")
        return vec

    @classmethod
    def zero(cls, n: int) -> "ExponentVector":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, axis: int, scale: int = 1) -> "ExponentVector":
        """Vector with ``scale`` at 0-based position ``axis``, zero elsewhere."""
        if not 0 <= axis < n:
            raise ValueError(f"axis {axis} out of range for dimension {n}")
        return cls(scale if i == axis else 0 for i in range(n))

    def _same_length(self, other) -> None:
        if len(self) != len(other):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._same_length(other)
        return ExponentVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._same_length(other)
        return ExponentVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return ExponentVector(-a for a in self)

    @property
    def degree(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"ExponentVector({tuple(self)!r})"


def grlex_key(alpha: Sequence[int]):
    """Sort key for graded lexicographic order: total degree, then lex."""
    return (sum(alpha), tuple(alpha))


def canonical_monomial_order(points: Iterable[ExponentVector]) -> list[ExponentVector]:
    """Monomials sorted in the canonical order (graded lex, largest first)."""
    return sorted(points, key=grlex_key, reverse=True)


class Support:
    """A finite deduplicated set of exponent vectors of one common dimension."""

    __slots__ = ("_points", "_n")

    def __init__(self, points: Iterable, n: int | None = None):
        pts = frozenset(
            p if isinstance(p, ExponentVector) else ExponentVector(p) for p in points
        )
        lengths = {len(p) for p in pts}
        if len(lengths) > 1:
            raise ValueError("support points must all share one dimension")
        if n is None:
            if not lengths:
                raise ValueError("ambient dimension n is required for an empty support")
            (n,) = lengths
        elif lengths and lengths != {n}:
            raise ValueError(f"points of dimension {lengths.pop()} in a dimension-{n} support")
        self._points = pts
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    @property
    def points(self) -> frozenset:
        return self._points

    def sorted_points(self) -> list[ExponentVector]:
        return canonical_monomial_order(self._points)

    def translate(self, shift) -> "Support":
        shift = shift if isinstance(shift, ExponentVector) else ExponentVector(shift)
        return Support((p + shift for p in self._points), self._n)

    def __or__(self, other: "Support") -> "Support":
        if not isinstance(other, Support):
            return NotImplemented
        if other._n != self._n:
            raise ValueError("cannot unite supports of different dimensions")
        return Support(self._points | other._points, self._n)

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[ExponentVector]:
        return iter(self.sorted_points())

    def __contains__(self, point) -> bool:
        return point in self._points

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Support)
            and self._n == other._n
            and self._points == other._points
        )

    def __hash__(self) -> int:
        return hash((self._n, self._points))

    def __repr__(self) -> str:
        return f"Support({[tuple(p) for p in self.sorted_points()]}, n={self._n})"


# --- shared rendering helpers -------------------------------------------------

def _monomial_factors(letter: str, exponents: Sequence[int]) -> list[str]:
    return [
        f"{letter}{i + 1}" + (f"^{e}" if e != 1 else "")
        for i, e in enumerate(exponents)
        if e != 0
    ]

def _render_term(coeff_abs: Fraction, factors: list[str]) -> str:
    if not factors:
        return str(coeff_abs)
    if coeff_abs == 1:
        return "*".join(factors)
    return "*".join([str(coeff_abs), *factors])

def _join_signed(parts: list[tuple[str, str]]) -> str:
    sign, body = parts[0]
    chunks = [body if sign == "+" else f"-{body}"]
    for sign, body in parts[1:]:
        chunks.append(f" {sign} {body}")
    return "".join(chunks)


class ParameterPolynomial:
    """Polynomial in the parameters k1..km with exact rational coefficients.

    Exponents are nonnegative (the coefficient ring is a plain polynomial
    ring, not a Laurent ring). The zero polynomial stores no terms.
    """

    __slots__ = ("_terms", "_m")

    def __init__(self, terms=(), m: int = 0):
        if not isinstance(m, int) or m < 0:
            raise ValueError("parameter count m must be a nonnegative integer")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != m:
                raise ValueError(f"parameter exponent {exps} has length {len(exps)}, expected {m}")
            for e in exps:
                if not isinstance(e, int) or e < 0:
                    raise ValueError(f"parameter exponents must be nonnegative integers, got {e!r}")
            value = acc.get(exps, Fraction(0)) + exact_fraction(coeff)
            if value == 0:
                acc.pop(exps, None)
            else:
                acc[exps] = value
        self._terms = acc
        self._m = m

    @classmethod
    def zero(cls, m: int) -> "ParameterPolynomial":
        return cls((), m)

    @classmethod
    def constant(cls, value, m: int) -> "ParameterPolynomial":
        return cls({(0,) * m: exact_fraction(value)}, m)

    @classmethod
    def parameter(cls, m: int, index: int, exp: int = 1) -> "ParameterPolynomial":
        """The monomial k_{index+1}^exp (index is 0-based)."""
        if not 0 <= index < m:
            raise ValueError(f"parameter index {index} out of range for m={m}")
        if exp < 0:
            raise ValueError("parameters cannot carry negative exponents")
        exps = tuple(exp if i == index else 0 for i in range(m))
        return cls({exps: Fraction(1)}, m)

    @property
    def m(self) -> int:
        return self._m

    @property
    def terms(self) -> Mapping[tuple[int, ...], Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def evaluate(self, values: Sequence) -> Fraction:
        """Exact value at the given parameter point."""
        vals = [exact_fraction(v) for v in values]
        if len(vals) != self._m:
            raise ValueError(f"expected {self._m} parameter values, got {len(vals)}")
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for e, v in zip(exps, vals):
                if e:
                    term *= v**e
            total += term
        return total

    def _binary(self, other, sign: int) -> "ParameterPolynomial":
        if not isinstance(other, ParameterPolynomial):
            other = ParameterPolynomial.constant(other, self._m)
        if other._m != self._m:
            raise ValueError("parameter counts differ")
        items = list(self._terms.items()) + [(e, sign * c) for e, c in other._terms.items()]
        return ParameterPolynomial(items, self._m)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return ParameterPolynomial(((e, -c) for e, c in self._terms.items()), self._m)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = exact_fraction(other)
            return ParameterPolynomial(((e, c * v) for e, v in self._terms.items()), self._m)
        if not isinstance(other, ParameterPolynomial):
            return NotImplemented
        if other._m != self._m:
            raise ValueError("parameter counts differ")
        items = []
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                items.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return ParameterPolynomial(items, self._m)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ParameterPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ParameterPolynomial.constant(1, self._m)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ParameterPolynomial)
            and self._m == other._m
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._m, frozenset(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, key=grlex_key, reverse=True):
            coeff = self._terms[exps]
            body = _render_term(abs(coeff), _monomial_factors("k", exps))
            parts.append(("-" if coeff < 0 else "+", body))
        return _join_signed(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ParameterPolynomial({self.render()!r}, m={self._m})"


class LaurentPolynomial:
    """Sparse Laurent polynomial in x1..xn with exact rational coefficients."""

    __slots__ = ("_terms", "_n")

    def __init__(self, terms=(), n: int | None = None):
        if n is None or not isinstance(n, int) or n < 0:
            raise ValueError("ambient variable count n must be a nonnegative integer")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExponentVector, Fraction] = {}
        for mono, coeff in items:
            mono = mono if isinstance(mono, ExponentVector) else ExponentVector(mono)
            if len(mono) != n:
                raise ValueError(f"monomial {tuple(mono)} has dimension {len(mono)}, expected {n}")
            value = acc.get(mono, Fraction(0)) + exact_fraction(coeff)
            if value == 0:
                acc.pop(mono, None)
            else:
                acc[mono] = value
        self._terms = acc
        self._n = n

    @classmethod
    def zero(cls, n: int) -> "LaurentPolynomial":
        return cls((), n)

    @classmethod
    def constant(cls, value, n: int) -> "LaurentPolynomial":
        return cls({(0,) * n: exact_fraction(value)}, n)

    @classmethod
    def monomial(cls, coeff, exponents) -> "LaurentPolynomial":
        exponents = ExponentVector(exponents)
        return cls({exponents: exact_fraction(coeff)}, len(exponents))

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[ExponentVector, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono) -> Fraction:
        mono = mono if isinstance(mono, ExponentVector) else ExponentVector(mono)
        return self._terms.get(mono, Fraction(0))

    def support(self) -> Support:
        """The set of exponent vectors carrying a nonzero coefficient."""
        return Support(self._terms.keys(), self._n)

    def monomial_multiply(self, shift) -> "LaurentPolynomial":
        """Multiply by the monomial x^shift: every exponent moves by ``shift``."""
        shift = shift if isinstance(shift, ExponentVector) else ExponentVector(shift)
        if len(shift) != self._n:
            raise ValueError(f"shift of dimension {len(shift)} applied to dimension {self._n}")
        return LaurentPolynomial({m + shift: c for m, c in self._terms.items()}, self._n)

    def _binary(self, other, sign: int) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if other._n != self._n:
            raise ValueError("ambient variable counts differ")
        items = list(self._terms.items()) + [(m, sign * c) for m, c in other._terms.items()]
        return LaurentPolynomial(items, self._n)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return LaurentPolynomial(((m, -c) for m, c in self._terms.items()), self._n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = exact_fraction(other)
            return LaurentPolynomial(((m, c * v) for m, v in self._terms.items()), self._n)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if other._n != self._n:
            raise ValueError("ambient variable counts differ")
        items = []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                items.append((m1 + m2, c1 * c2))
        return LaurentPolynomial(items, self._n)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPolynomial)
            and self._n == other._n
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._n, frozenset(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in canonical_monomial_order(self._terms):
            coeff = self._terms[mono]
            body = _render_term(abs(coeff), _monomial_factors("x", mono))
            parts.append(("-" if coeff < 0 else "+", body))
        return _join_signed(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.render()!r}, n={self._n})"


class ParametrisedPolynomial:
    """Laurent polynomial whose coefficients are polynomials in k1..km."""

    __slots__ = ("_terms", "_n", "_m")

    def __init__(self, terms=(), n: int | None = None, m: int | None = None):
        if n is None or m is None:
            raise ValueError("both the variable count n and parameter count m are required")
        if not isinstance(n, int) or n < 0 or not isinstance(m, int) or m < 0:
            raise ValueError("n and m must be nonnegative integers")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExponentVector, ParameterPolynomial] = {}
        for mono, coeff in items:
            mono = mono if isinstance(mono, ExponentVector) else ExponentVector(mono)
            if len(mono) != n:
                raise ValueError(f"monomial {tuple(mono)} has dimension {len(mono)}, expected {n}")
            if not isinstance(coeff, ParameterPolynomial):
                coeff = ParameterPolynomial.constant(coeff, m)
            if coeff.m != m:
                raise ValueError("coefficient parameter count differs from ambient m")
            merged = acc[mono] + coeff if mono in acc else coeff
            if merged.is_zero:
                acc.pop(mono, None)
            else:
                acc[mono] = merged
        self._terms = acc
        self._n = n
        self._m = m

    @classmethod
    def zero(cls, n: int, m: int) -> "ParametrisedPolynomial":
        return cls((), n, m)

    @classmethod
    def constant(cls, value, n: int, m: int) -> "ParametrisedPolynomial":
        return cls({ExponentVector.zero(n): ParameterPolynomial.constant(value, m)}, n, m)

    @classmethod
    def variable(cls, n: int, m: int, axis: int, exp: int = 1) -> "ParametrisedPolynomial":
        """The monomial x_{axis+1}^exp (axis is 0-based; exp may be negative)."""
        mono = ExponentVector.unit(n, axis, exp)
        return cls({mono: ParameterPolynomial.constant(1, m)}, n, m)

    @classmethod
    def parameter(cls, n: int, m: int, index: int, exp: int = 1) -> "ParametrisedPolynomial":
        return cls({ExponentVector.zero(n): ParameterPolynomial.parameter(m, index, exp)}, n, m)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def terms(self) -> Mapping[ExponentVector, ParameterPolynomial]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> Support:
        return Support(self._terms.keys(), self._n)

    def specialise(self, values: Sequence) -> LaurentPolynomial:
        """Substitute parameter values; terms whose coefficient vanishes drop out."""
        vals = [exact_fraction(v) for v in values]
        if len(vals) != self._m:
            raise ValueError(f"expected {self._m} parameter values, got {len(vals)}")
        return LaurentPolynomial(
            ((mono, coeff.evaluate(vals)) for mono, coeff in self._terms.items()), self._n
        )

    def _binary(self, other, sign: int) -> "ParametrisedPolynomial":
        if not isinstance(other, ParametrisedPolynomial):
            return NotImplemented
        if (other._n, other._m) != (self._n, self._m):
            raise ValueError("ambient dimensions differ")
        items = list(self._terms.items())
        items += [(mono, coeff if sign > 0 else -coeff) for mono, coeff in other._terms.items()]
        return ParametrisedPolynomial(items, self._n, self._m)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return ParametrisedPolynomial(
            ((mono, -coeff) for mono, coeff in self._terms.items()), self._n, self._m
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str, ParameterPolynomial)):
            if not isinstance(other, ParameterPolynomial):
                other = ParameterPolynomial.constant(other, self._m)
            return ParametrisedPolynomial(
                ((mono, coeff * other) for mono, coeff in self._terms.items()),
                self._n,
                self._m,
            )
        if not isinstance(other, ParametrisedPolynomial):
            return NotImplemented
        if (other._n, other._m) != (self._n, self._m):
            raise ValueError("ambient dimensions differ")
        items = []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                items.append((m1 + m2, c1 * c2))
        return ParametrisedPolynomial(items, self._n, self._m)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ParametrisedPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers of a sum are defined")
        result = ParametrisedPolynomial.constant(1, self._n, self._m)
        for _ in range(exponent):
            result = result * self
        return result

    def is_affine_linear_in_x(self) -> bool:
        """True iff every monomial has nonnegative exponents of total degree <= 1."""
        return all(min(mono, default=0) >= 0 and mono.degree <= 1 for mono in self._terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ParametrisedPolynomial)
            and (self._n, self._m) == (other._n, other._m)
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._n, self._m, frozenset(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in canonical_monomial_order(self._terms):
            coeff = self._terms[mono]
            xfactors = _monomial_factors("x", mono)
            if len(coeff.terms) == 1:
                ((exps, value),) = coeff.terms.items()
                factors = _monomial_factors("k", exps) + xfactors
                parts.append(("-" if value < 0 else "+", _render_term(abs(value), factors)))
            else:
                body = f"({coeff.render()})"
                if xfactors:
                    body += "*" + "*".join(xfactors)
                parts.append(("+", body))
        return _join_signed(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ParametrisedPolynomial({self.render()!r}, n={self._n}, m={self._m})"


class PolynomialSystem:
    """An ordered system of nonzero Laurent polynomials in a common ring.

    The order is significant: it fixes the row order of the coefficient
    matrix built from the system. Zero polynomials and empty systems are
    rejected outright.
    """

    __slots__ = ("_polys", "_n")

    def __init__(self, polys: Iterable[LaurentPolynomial], n: int | None = None):
        polys = tuple(polys)
        if not polys:
            raise ValueError("a polynomial system needs at least one polynomial")
        if n is None:
            n = polys[0].n
        for p in polys:
            if not isinstance(p, LaurentPolynomial):
                raise TypeError("system members must be LaurentPolynomial values")
            if p.n != n:
                raise ValueError("all polynomials must share the ambient variable count")
            if p.is_zero:
                raise ValueError("zero polynomials are not allowed in a system")
        self._polys = polys
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    @property
    def k(self) -> int:
        return len(self._polys)

    @property
    def polys(self) -> tuple[LaurentPolynomial, ...]:
        return self._polys

    def distinct_monomials(self) -> Support:
        """Union of the member supports; its size drives the support score."""
        points = set()
        for p in self._polys:
            points.update(p.terms.keys())
        return Support(points, self._n)

    def supports(self) -> tuple[Support, ...]:
        return tuple(p.support() for p in self._polys)

    def __len__(self) -> int:
        return len(self._polys)

    def __iter__(self) -> Iterator[LaurentPolynomial]:
        return iter(self._polys)

    def __getitem__(self, index: int) -> LaurentPolynomial:
        return self._polys[index]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolynomialSystem)
            and self._n == other._n
            and self._polys == other._polys
        )

    def __hash__(self) -> int:
        return hash((self._n, self._polys))

    def render_lines(self) -> list[str]:
        return [p.render() for p in self._polys]

    def __repr__(self) -> str:
        return f"PolynomialSystem({self.render_lines()!r}, n={self._n})"


class VerticalSystem:
    """Coefficient matrix of a system over its distinct monomials.

    Column j is labelled by the monomial ``support[j]``; entry (i, j) is the
    coefficient of that monomial in the i-th polynomial. Attaching one scaling
    parameter per column and setting all of them to 1 recovers the source
    system row by row, so this is the smallest one-parameter-per-monomial
    family specialising to it.
    """

    __slots__ = ("_support", "_coeffs", "_n")

    def __init__(self, support: Sequence, coeffs: Sequence[Sequence]):
        support = tuple(
            p if isinstance(p, ExponentVector) else ExponentVector(p) for p in support
        )
        if not support:
            raise ValueError("support must be nonempty")
        if len(set(support)) != len(support):
            raise ValueError("support monomials must be pairwise distinct")
        n = len(support[0])
        if any(len(p) != n for p in support):
            raise ValueError("support points must all share one dimension")
        rows = tuple(tuple(exact_fraction(c) for c in row) for row in coeffs)
        if not rows:
            raise ValueError("coefficient matrix must have at least one row")
        if any(len(row) != len(support) for row in rows):
            raise ValueError("each coefficient row needs one entry per support monomial")
        for j in range(len(support)):
            if all(row[j] == 0 for row in rows):
                raise ValueError(f"column {j} (monomial {tuple(support[j])}) is entirely zero")
        for i, row in enumerate(rows):
            if all(c == 0 for c in row):
                raise ValueError(f"row {i} is entirely zero")
        self._support = support
        self._coeffs = rows
        self._n = n

    @classmethod
    def from_system(cls, system: PolynomialSystem) -> "VerticalSystem":
        support = canonical_monomial_order(system.distinct_monomials().points)
        coeffs = [[p.coefficient(mono) for mono in support] for p in system]
        return cls(support, coeffs)

    @property
    def support(self) -> tuple[ExponentVector, ...]:
        return self._support

    @property
    def coeffs(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._coeffs

    @property
    def n(self) -> int:
        return self._n

    @property
    def k(self) -> int:
        return len(self._coeffs)

    @property
    def m(self) -> int:
        return len(self._support)

    def specialise(self, values: Sequence) -> PolynomialSystem:
        """Scale column j by values[j] and read the rows back as polynomials."""
        vals = [exact_fraction(v) for v in values]
        if len(vals) != self.m:
            raise ValueError(f"expected {self.m} scaling values, got {len(vals)}")
        polys = [
            LaurentPolynomial(
                ((mono, c * v) for mono, c, v in zip(self._support, row, vals)), self._n
            )
            for row in self._coeffs
        ]
        return PolynomialSystem(polys, self._n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VerticalSystem)
            and self._support == other._support
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self._support, self._coeffs))

    def __repr__(self) -> str:
        return f"VerticalSystem(m={self.m}, k={self.k}, n={self._n})"


def minimal_vertical_system(system: PolynomialSystem) -> VerticalSystem:
    """The one-parameter-per-distinct-monomial family specialising to ``system``."""
    return VerticalSystem.from_system(system)
