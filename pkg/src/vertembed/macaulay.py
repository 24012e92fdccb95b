"""Coefficient-matrix minors, triviality detection, and embedding scores.

A k-by-m coefficient matrix has one k-by-k minor per k-subset of columns. A
minor is *non-trivial* when the selected columns can be ordered so that the
diagonal is entirely nonzero, i.e. when the rows-to-columns graph of nonzero
entries has a perfect matching; trivial minors vanish identically (every
Leibniz summand contains a zero factor). The five scores summarise how many
minors there are, how many vanish, and how those two interact.

Everything here is exact: determinants use fraction-free Bareiss elimination
over the rationals, and the matching test is an augmenting-path search.
All functions are pure; enumeration over column subsets may be chunked and
tallied in any order without changing the result.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EnumerationCapError
from .poly import (
    ExponentVector,
    PolynomialSystem,
    VerticalSystem,
    exact_fraction,
    minimal_vertical_system,
)

__all__ = [
    "DEFAULT_MINOR_CAP",
    "MacaulayMatrix",
    "MinorCounts",
    "Score",
    "ScoreReport",
    "macaulay_matrix",
    "minor_value",
    "minor_is_nontrivial",
    "minor_counts",
    "score_report",
]

DEFAULT_MINOR_CAP = 10_000_000


class MacaulayMatrix:
    """A rational matrix whose columns are labelled by distinct monomials."""

    __slots__ = ("_rows", "_columns")

    def __init__(self, rows: Sequence[Sequence], columns: Sequence):
        columns = tuple(
            c if isinstance(c, ExponentVector) else ExponentVector(c) for c in columns
        )
        if not columns:
            raise ValueError("a coefficient matrix needs at least one column")
        if len(set(columns)) != len(columns):
            raise ValueError("column labels must be pairwise distinct")
        rows = tuple(tuple(exact_fraction(c) for c in row) for row in rows)
        if not rows:
            raise ValueError("a coefficient matrix needs at least one row")
        if any(len(row) != len(columns) for row in rows):
            raise ValueError("every row needs one entry per column")
        self._rows = rows
        self._columns = columns

    @classmethod
    def from_vertical_system(cls, vertical: VerticalSystem) -> "MacaulayMatrix":
        return cls(vertical.coeffs, vertical.support)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def columns(self) -> tuple[ExponentVector, ...]:
        return self._columns

    @property
    def k(self) -> int:
        return len(self._rows)

    @property
    def m(self) -> int:
        return len(self._columns)

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def column_index(self, label) -> int:
        label = label if isinstance(label, ExponentVector) else ExponentVector(label)
        return self._columns.index(label)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MacaulayMatrix)
            and self._rows == other._rows
            and self._columns == other._columns
        )

    def __repr__(self) -> str:
        return f"MacaulayMatrix(k={self.k}, m={self.m})"


def macaulay_matrix(system: PolynomialSystem) -> MacaulayMatrix:
    """Coefficient matrix of a system over its distinct monomials.

    Identical data to :func:`minimal_vertical_system`: canonical column
    order, one row per polynomial.
    """
    return MacaulayMatrix.from_vertical_system(minimal_vertical_system(system))


def _bareiss_determinant(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination.

    The two-term update divides by the previous pivot, which is an exact
    division at every step, keeping intermediate entries small compared to
    naive fraction Gaussian elimination.
    """
    size = len(rows)
    mat = [list(row) for row in rows]
    sign = 1
    prev = Fraction(1)
    for step in range(size - 1):
        if mat[step][step] == 0:
            for r in range(step + 1, size):
                if mat[r][step] != 0:
                    mat[step], mat[r] = mat[r], mat[step]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = mat[step][step]
        for r in range(step + 1, size):
            for c in range(step + 1, size):
                mat[r][c] = (mat[r][c] * pivot - mat[r][step] * mat[step][c]) / prev
            mat[r][step] = Fraction(0)
        prev = pivot
    return sign * mat[size - 1][size - 1]


def _validate_subset(matrix: MacaulayMatrix, subset: Sequence[int]) -> tuple[int, ...]:
    subset = tuple(subset)
    if len(subset) != matrix.k:
        raise ValueError(f"column subset must have size k={matrix.k}, got {len(subset)}")
    for j in subset:
        if not 0 <= j < matrix.m:
            raise ValueError(f"column index {j} out of range (m={matrix.m})")
    if any(a >= b for a, b in zip(subset, subset[1:])):
        raise ValueError("column subset must be strictly increasing")
    return subset


def minor_value(matrix: MacaulayMatrix, subset: Sequence[int]) -> Fraction:
    """Exact k-by-k minor on the given strictly increasing column subset."""
    subset = _validate_subset(matrix, subset)
    return _bareiss_determinant([[row[j] for j in subset] for row in matrix.rows])


def _has_perfect_matching(adjacency: list[list[int]], n_right: int) -> bool:
    """Augmenting-path search for a matching covering every left vertex."""
    match_right = [-1] * n_right

    def try_assign(left: int, seen: list[bool]) -> bool:
        for right in adjacency[left]:
            if not seen[right]:
                seen[right] = True
                if match_right[right] < 0 or try_assign(match_right[right], seen):
                    match_right[right] = left
                    return True
        return False

    for left in range(len(adjacency)):
        if not try_assign(left, [False] * n_right):
            return False
    return True


def minor_is_nontrivial(matrix: MacaulayMatrix, subset: Sequence[int]) -> bool:
    """True iff the selected columns admit an ordering with nonzero diagonal.

    Equivalently: the bipartite graph (rows vs selected columns, edges at
    nonzero entries) has a perfect matching.
    """
    subset = _validate_subset(matrix, subset)
    adjacency = [
        [pos for pos, j in enumerate(subset) if row[j] != 0] for row in matrix.rows
    ]
    if any(not neighbours for neighbours in adjacency):
        return False
    return _has_perfect_matching(adjacency, len(subset))


@dataclass(frozen=True)
class MinorCounts:
    """Tallies over all k-subsets of columns of one coefficient matrix."""

    total: int
    zero: int
    nontrivial: int
    nontrivial_zero: int

    def __post_init__(self):
        if not 0 <= self.zero <= self.total:
            raise ValueError("zero-minor count out of range")
        if not 0 <= self.nontrivial <= self.total:
            raise ValueError("non-trivial minor count out of range")
        if self.nontrivial_zero > min(self.zero, self.nontrivial):
            raise ValueError("non-trivial zero minors exceed their bounds")
        if self.total - self.nontrivial > self.zero:
            raise ValueError("trivial minors must all be zero minors")

    def to_json(self) -> dict:
        return {
            "M": self.total,
            "M0": self.zero,
            "Mnt": self.nontrivial,
            "M0nt": self.nontrivial_zero,
        }


class Score(enum.Enum):
    """The five embedding scores; higher is better for every one of them."""

    S = "S"
    S0 = "S0"
    S0NT = "S0nt"
    R0 = "R0"
    R0NT = "R0nt"

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> "Score":
        for score in cls:
            if score.value == label:
                return score
        raise ValueError(f"unknown score {label!r}; expected one of {[s.value for s in cls]}")


@dataclass(frozen=True)
class ScoreReport:
    """The five scores derived from one matrix's minor counts.

    ``S`` is minus the total minor count (so maximising it minimises the
    distinct-monomial count), ``S0`` counts zero minors, ``S0nt`` counts
    non-trivial zero minors, and ``R0`` / ``R0nt`` are the corresponding
    exact fractions of all / of non-trivial minors.
    """

    S: int
    S0: int
    S0nt: int
    R0: Fraction
    R0nt: Fraction

    @classmethod
    def from_counts(cls, counts: MinorCounts) -> "ScoreReport":
        if counts.total == 0:
            raise ValueError("scores are undefined for a matrix with no minors")
        if counts.nontrivial == 0:
            raise ValueError("ratio of non-trivial zero minors is undefined: no non-trivial minors")
        return cls(
            S=-counts.total,
            S0=counts.zero,
            S0nt=counts.nontrivial_zero,
            R0=Fraction(counts.zero, counts.total),
            R0nt=Fraction(counts.nontrivial_zero, counts.nontrivial),
        )

    def value(self, score: Score):
        return {
            Score.S: self.S,
            Score.S0: self.S0,
            Score.S0NT: self.S0nt,
            Score.R0: self.R0,
            Score.R0NT: self.R0nt,
        }[score]

    def to_json(self) -> dict:
        return {
            "S": self.S,
            "S0": self.S0,
            "S0nt": self.S0nt,
            "R0": str(self.R0),
            "R0nt": str(self.R0nt),
        }


def minor_counts(matrix: MacaulayMatrix, cap: int = DEFAULT_MINOR_CAP) -> MinorCounts:
    """Exhaustive tallies over all C(m, k) column subsets.

    Raises :class:`EnumerationCapError` when C(m, k) exceeds ``cap`` and
    ValueError when k > m (no k-by-k minors exist to enumerate).
    """
    k, m = matrix.k, matrix.m
    if k > m:
        raise ValueError(f"no size-{k} column subsets in a matrix with {m} columns")
    total = math.comb(m, k)
    if total > cap:
        raise EnumerationCapError(
            f"{total} column subsets exceed the enumeration cap of {cap}"
        )
    zero = nontrivial = nontrivial_zero = 0
    for subset in itertools.combinations(range(m), k):
        is_zero = minor_value(matrix, subset) == 0
        is_nontrivial = minor_is_nontrivial(matrix, subset)
        if is_zero:
            zero += 1
        if is_nontrivial:
            nontrivial += 1
            if is_zero:
                nontrivial_zero += 1
    return MinorCounts(total, zero, nontrivial, nontrivial_zero)


def score_report(system: PolynomialSystem, cap: int = DEFAULT_MINOR_CAP) -> ScoreReport:
    """Scores of a system's coefficient matrix over its distinct monomials."""
    return ScoreReport.from_counts(minor_counts(macaulay_matrix(system), cap))
