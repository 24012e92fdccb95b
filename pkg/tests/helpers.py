"""Shared builders, strategies and independent oracles for the test suite."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from vertembed import (
    ExponentVector,
    LaurentPolynomial,
    MacaulayMatrix,
    ParameterPolynomial,
    ParametrisedPolynomial,
    PolynomialSystem,
    Support,
    parse_laurent_polynomial,
)
from vertembed.rng import SplitMix64, derive_seed


def laurent(text: str, n: int) -> LaurentPolynomial:
    return parse_laurent_polynomial(text, n)


def system(*texts: str, n: int) -> PolynomialSystem:
    return PolynomialSystem([laurent(t, n) for t in texts], n)


def embedding_pair() -> tuple[PolynomialSystem, PolynomialSystem]:
    """The two-generator running example: same ideal, different systems."""
    first = system("x1^2 + x2^2 + x1", "x1^2 + x2^2 + 1", n=2)
    second = system("x1^2 + x2^2 + x1", "x1^2*x2 + x2^3 + x2", n=2)
    return first, second


def reduced_629(values=(1, 1, 1, 1)) -> PolynomialSystem:
    """The surviving pair of the five-species binding network, at given rates."""
    c2, c3, c4, c5 = (Fraction(v) for v in values)
    f3 = LaurentPolynomial({(1, 0, 1, 0, 0): -c2, (0, 1, 0, 0, 0): c3}, 5)
    f5 = LaurentPolynomial({(0, 1, 0, 1, 0): c4, (0, 0, 0, 0, 1): -c5}, 5)
    return PolynomialSystem([f3, f5], 5)


def reduced_405(values=(1, 1, 1, 1)) -> PolynomialSystem:
    """The four surviving polynomials of the cycling network, at given rates."""
    c2, c3, c4, c5 = (Fraction(v) for v in values)
    f2 = LaurentPolynomial(
        {(0, 1, 0, 0, 1): -c4, (0, 1, 0, 0, 0): -c5, (0, 0, 0, 0, 0): c2}, 5
    )
    f3 = LaurentPolynomial({(1, 0, 0, 0, 1): c4, (0, 0, 1, 0, 0): -c3}, 5)
    f4 = LaurentPolynomial({(0, 1, 0, 0, 1): c4, (0, 0, 0, 1, 0): -c3}, 5)
    f5 = LaurentPolynomial(
        {(1, 0, 0, 0, 1): -c4, (0, 1, 0, 0, 1): -c4, (0, 0, 1, 0, 0): c3, (0, 0, 0, 1, 0): c3}, 5
    )
    return PolynomialSystem([f2, f3, f4, f5], 5)


# --- independent oracles --------------------------------------------------------

def leibniz_determinant(rows) -> Fraction:
    """Determinant by the permutation-sum formula (exponential, exact)."""
    size = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(size)):
        sign = 1
        seen = list(perm)
        # count inversions for the signature
        inversions = sum(
            1 for i in range(size) for j in range(i + 1, size) if seen[i] > seen[j]
        )
        sign = -1 if inversions % 2 else 1
        product = Fraction(1)
        for i in range(size):
            product *= rows[i][perm[i]]
        total += sign * product
    return total


def matching_by_permutations(rows, subset) -> bool:
    """Non-triviality by brute force: some column ordering has a nonzero diagonal."""
    return any(
        all(rows[i][perm[i]] != 0 for i in range(len(rows)))
        for perm in itertools.permutations(subset)
    )


def union_size(supports, translations) -> int:
    """Direct union cardinality of translated point sets."""
    points = set()
    for support, shift in zip(supports, translations):
        shift = ExponentVector(shift)
        points.update(p + shift for p in support.points)
    return len(points)


def best_two_set_overlap(first: Support, second: Support) -> int:
    """Minimal union size of two sets by scanning every pairwise difference."""
    best = len(first) + len(second)
    for a in first.points:
        for b in second.points:
            v = a - b
            overlap = sum(1 for p in second.points if p + v in first.points)
            best = min(best, len(first) + len(second) - overlap)
    return best


def random_support(rng: SplitMix64, n: int = 2, max_size: int = 5, coord_max: int = 6) -> Support:
    size = rng.integer(1, max_size)
    points = set()
    while len(points) < size:
        points.add(ExponentVector(rng.integer(0, coord_max) for _ in range(n)))
    return Support(points, n)


def random_instance(seed: int, index: int, max_k: int = 3) -> list[Support]:
    rng = SplitMix64(derive_seed(seed, f"instance:{index}"))
    k = rng.integer(1, max_k)
    return [random_support(rng) for _ in range(k)]


def random_macaulay_matrix(rng: SplitMix64, max_k: int = 4, max_m: int = 8) -> MacaulayMatrix:
    """Random small matrix with roughly 40% zero entries in {-3..3}."""
    k = rng.integer(1, max_k)
    m = rng.integer(k, max_m)
    rows = []
    for _ in range(k):
        row = []
        for _ in range(m):
            if rng.below(10) < 4:
                row.append(0)
            else:
                value = rng.integer(1, 3)
                row.append(-value if rng.below(2) else value)
        rows.append(row)
    columns = [ExponentVector((j,)) for j in range(m)]
    return MacaulayMatrix(rows, columns)


# --- hypothesis strategies ------------------------------------------------------

def coefficients():
    return st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=3).filter(
        lambda f: f != 0
    )

def exponent_vectors(n: int, low: int = -3, high: int = 3):
    return st.lists(st.integers(low, high), min_size=n, max_size=n).map(ExponentVector)

def laurent_polys(n: int, max_terms: int = 4, nonzero: bool = True):
    terms = st.dictionaries(exponent_vectors(n), coefficients(), min_size=1 if nonzero else 0, max_size=max_terms)
    return terms.map(lambda d: LaurentPolynomial(d, n))

def parameter_polys(m: int, max_terms: int = 3):
    exps = st.lists(st.integers(0, 2), min_size=m, max_size=m).map(tuple)
    return st.dictionaries(exps, coefficients(), min_size=1, max_size=max_terms).map(
        lambda d: ParameterPolynomial(d, m)
    )

def parametrised_polys(n: int, m: int, max_terms: int = 3):
    terms = st.dictionaries(exponent_vectors(n), parameter_polys(m), min_size=1, max_size=max_terms)
    return terms.map(lambda d: ParametrisedPolynomial(d, n, m))

def polynomial_systems(n: int = 2, max_k: int = 3):
    return st.lists(laurent_polys(n), min_size=1, max_size=max_k).map(
        lambda polys: PolynomialSystem(polys, n)
    )
