"""Monomial-shift perturbations and score-maximality experiments.

A perturbation replaces one polynomial f_i of a system by x_j^s * f_i with
s in {-1, 0, +1}; the shift moves that polynomial's support by one lattice
step without changing anything else. For each of the five scores we ask
whether the original system is a maximum among all its single-step
perturbations, and if so whether the maximum is strict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .macaulay import (
    DEFAULT_MINOR_CAP,
    Score,
    ScoreReport,
    macaulay_matrix,
    minor_counts,
    score_report,
)
from .poly import ExponentVector, PolynomialSystem

__all__ = [
    "Perturbation",
    "MaximalityReport",
    "TiebreakReport",
    "CorpusScoreResult",
    "enumerate_perturbations",
    "score_value",
    "maximality_report",
    "all_score_maximality",
    "corpus_score_experiment",
    "tiebreak_report",
]


@dataclass(frozen=True)
class Perturbation:
    """One perturbation step: multiply polynomial ``poly_index`` by x_{var_index}^shift.

    Indices are 1-based to match the polynomial numbering f1..fk and the
    variable naming x1..xn used everywhere in reports; ``shift = 0`` is the
    identity perturbation, which leaves the system unchanged.
    """

    poly_index: int
    var_index: int
    shift: int

    def __post_init__(self):
        if self.shift not in (-1, 0, 1):
            raise ValueError("shift must be -1, 0 or +1")
        if self.poly_index < 1 or self.var_index < 1:
            raise ValueError("poly_index and var_index are 1-based and must be >= 1")

    @property
    def is_identity(self) -> bool:
        return self.shift == 0

    def shift_vector(self, n: int) -> ExponentVector:
        if self.var_index > n:
            raise ValueError(f"variable x{self.var_index} out of range (n={n})")
        return ExponentVector.unit(n, self.var_index - 1, self.shift)

    def apply(self, system: PolynomialSystem) -> PolynomialSystem:
        if self.poly_index > system.k:
            raise ValueError(f"polynomial index {self.poly_index} out of range (k={system.k})")
        if self.is_identity:
            return system
        shift = self.shift_vector(system.n)
        polys = list(system.polys)
        polys[self.poly_index - 1] = polys[self.poly_index - 1].monomial_multiply(shift)
        return PolynomialSystem(polys, system.n)

    def to_json(self) -> dict:
        return {"poly_index": self.poly_index, "var_index": self.var_index, "shift": self.shift}


def enumerate_perturbations(
    system: PolynomialSystem, include_identity: bool = False
) -> list[tuple[Perturbation, PolynomialSystem]]:
    """All 2*k*n single-step perturbations in canonical (i, j, s) order.

    With ``include_identity`` one identity entry is prepended, so the count
    becomes 2*k*n + 1.
    """
    out: list[tuple[Perturbation, PolynomialSystem]] = []
    if include_identity:
        out.append((Perturbation(1, 1, 0), system))
    for i in range(1, system.k + 1):
        for j in range(1, system.n + 1):
            for s in (-1, 1):
                perturbation = Perturbation(i, j, s)
                out.append((perturbation, perturbation.apply(system)))
    return out


def score_value(system: PolynomialSystem, score: Score, cap: int = DEFAULT_MINOR_CAP):
    """Value of one score for a system.

    The support score needs only the distinct-monomial count (minus the
    number of column subsets); the other four require the full minor
    enumeration.
    """
    if score is Score.S:
        return -math.comb(len(system.distinct_monomials()), system.k)
    return ScoreReport.from_counts(minor_counts(macaulay_matrix(system), cap)).value(score)


@dataclass(frozen=True)
class MaximalityReport:
    """Comparison of one score on a system against all its perturbations.

    ``better`` holds the perturbations scoring strictly higher, ``ties``
    those scoring equal; the original is a maximum iff ``better`` is empty
    and a strict maximum iff ``ties`` is empty as well.
    """

    score: Score
    original_value: int | Fraction
    better: tuple[tuple[Perturbation, int | Fraction], ...]
    ties: tuple[tuple[Perturbation, int | Fraction], ...]

    @property
    def is_maximum(self) -> bool:
        return not self.better

    @property
    def is_strict_maximum(self) -> bool:
        return not self.better and not self.ties

    def to_json(self) -> dict:
        def entry(pair):
            perturbation, value = pair
            return {**perturbation.to_json(), "value": _json_value(value)}

        return {
            "score": self.score.label,
            "original_value": _json_value(self.original_value),
            "is_maximum": self.is_maximum,
            "is_strict_maximum": self.is_strict_maximum,
            "n_better": len(self.better),
            "n_ties": len(self.ties),
            "better": [entry(p) for p in self.better],
            "ties": [entry(p) for p in self.ties],
        }


def _json_value(value):
    return value if isinstance(value, int) else str(value)


def maximality_report(
    system: PolynomialSystem, score: Score, cap: int = DEFAULT_MINOR_CAP
) -> MaximalityReport:
    """Test whether the system scores at least as high as every perturbation.

    Identity perturbations are excluded: they tie every score by definition.
    """
    original = score_value(system, score, cap)
    better = []
    ties = []
    for perturbation, perturbed in enumerate_perturbations(system):
        value = score_value(perturbed, score, cap)
        if value > original:
            better.append((perturbation, value))
        elif value == original:
            ties.append((perturbation, value))
    return MaximalityReport(score, original, tuple(better), tuple(ties))


def all_score_maximality(
    system: PolynomialSystem, cap: int = DEFAULT_MINOR_CAP
) -> dict[Score, MaximalityReport]:
    """Maximality reports for all five scores with one enumeration pass.

    Each perturbed system's minors are enumerated once and reused across
    the scores, so this is the economical way to scan a whole corpus.
    """
    original = score_report(system, cap)
    better: dict[Score, list] = {score: [] for score in Score}
    ties: dict[Score, list] = {score: [] for score in Score}
    for perturbation, perturbed in enumerate_perturbations(system):
        report = score_report(perturbed, cap)
        for score in Score:
            value = report.value(score)
            reference = original.value(score)
            if value > reference:
                better[score].append((perturbation, value))
            elif value == reference:
                ties[score].append((perturbation, value))
    return {
        score: MaximalityReport(score, original.value(score), tuple(better[score]), tuple(ties[score]))
        for score in Score
    }


@dataclass(frozen=True)
class CorpusScoreResult:
    """Per-score success counts of the maximality test over a corpus."""

    total: int
    successes: dict[Score, int]
    outcomes: tuple[tuple[int, dict[Score, MaximalityReport]], ...]
    failures: tuple[tuple[int, str], ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "evaluated": len(self.outcomes),
            "successes": {score.label: count for score, count in self.successes.items()},
            "failures": [{"index": i, "error": msg} for i, msg in self.failures],
        }


def corpus_score_experiment(
    corpus: Sequence[PolynomialSystem] | Iterable[PolynomialSystem],
    cap: int = DEFAULT_MINOR_CAP,
) -> CorpusScoreResult:
    """Count, per score, the corpus members that are maxima among perturbations.

    Per-member failures (enumeration cap, degenerate matrices) are recorded
    and skipped rather than aborting the run.
    """
    corpus = list(corpus)
    successes = {score: 0 for score in Score}
    outcomes = []
    failures = []
    for index, system in enumerate(corpus):
        try:
            reports = all_score_maximality(system, cap)
        except (ValueError, RuntimeError) as exc:
            failures.append((index, str(exc)))
            continue
        outcomes.append((index, reports))
        for score, report in reports.items():
            if report.is_maximum:
                successes[score] += 1
    return CorpusScoreResult(len(corpus), successes, tuple(outcomes), tuple(failures))


@dataclass(frozen=True)
class TiebreakReport:
    """Full score reports for the perturbations tying the support score.

    Lets the caller check whether the original system beats, ties or loses
    to each tying perturbation on the four remaining scores.
    """

    original: ScoreReport
    ties: tuple[tuple[Perturbation, ScoreReport], ...]

    def scores_lost_to_ties(self) -> tuple[Score, ...]:
        """Scores (other than the support score) where some tie beats the original."""
        lost = []
        for score in Score:
            if score is Score.S:
                continue
            if any(report.value(score) > self.original.value(score) for _, report in self.ties):
                lost.append(score)
        return tuple(lost)

    def to_json(self) -> dict:
        return {
            "original": self.original.to_json(),
            "ties": [
                {**perturbation.to_json(), "scores": report.to_json()}
                for perturbation, report in self.ties
            ],
            "scores_lost_to_ties": [s.label for s in self.scores_lost_to_ties()],
        }


def tiebreak_report(system: PolynomialSystem, cap: int = DEFAULT_MINOR_CAP) -> TiebreakReport:
    """Restrict attention to perturbations tying the support score.

    Returns the original system's full score report together with the full
    reports of every tying perturbation, in canonical enumeration order.
    """
    original = score_report(system, cap)
    reference = original.S
    ties = []
    for perturbation, perturbed in enumerate_perturbations(system):
        if -math.comb(len(perturbed.distinct_monomials()), perturbed.k) == reference:
            ties.append((perturbation, score_report(perturbed, cap)))
    return TiebreakReport(original, tuple(ties))
