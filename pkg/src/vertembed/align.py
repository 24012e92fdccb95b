"""Translation alignment of lattice point sets.

Given finite subsets of Z^n, the task is to translate each one so that the
union of the translated sets is as small as possible; applied to monomial
supports, this minimises the distinct-monomial count of a system of
monomial multiples.

Two solvers are provided. The greedy pass fixes the first set, then aligns
every further set against the union built so far, scanning exactly the
candidate translations that create at least one overlap. The exact oracle
exploits that some optimal solution has a connected overlap graph (a
disconnected component could be moved to create an overlap, shrinking the
union), so relative translations along a spanning tree are differences of
member points; enumerating all spanning trees and all edge assignments is
exponential but exact and is guarded by a cap.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EnumerationCapError
from .poly import ExponentVector, PolynomialSystem, Support
from .rng import SplitMix64, derive_seed

__all__ = [
    "DEFAULT_ORACLE_CAP",
    "TieBreak",
    "AlignmentResult",
    "TrialStatistics",
    "greedy_alignment",
    "optimal_alignment",
    "random_translation_trials",
]

DEFAULT_ORACLE_CAP = 10_000_000


class TieBreak(enum.Enum):
    """How the greedy step picks among equally good translations.

    ``LEX`` takes the lexicographically smallest vector (deterministic and
    translation-invariant), ``ZERO`` prefers the zero vector when it is
    among the minimisers and falls back to lex, ``RANDOM`` picks a seeded
    uniform choice among the minimisers.
    """

    LEX = "lex"
    ZERO = "zero"
    RANDOM = "random"

    @classmethod
    def from_label(cls, label: str) -> "TieBreak":
        for mode in cls:
            if mode.value == label:
                return mode
        raise ValueError(f"unknown tie-break mode {label!r}")


@dataclass(frozen=True)
class AlignmentResult:
    """Chosen translations and the union of the translated sets."""

    translations: tuple[ExponentVector, ...]
    union: Support
    method: str
    tie_break: str | None = None

    @property
    def union_size(self) -> int:
        return len(self.union)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "tie_break": self.tie_break,
            "translations": [list(v) for v in self.translations],
            "union_size": self.union_size,
            "union": [list(p) for p in self.union.sorted_points()],
        }


def _validate_sets(sets: Sequence[Support]) -> int:
    if not sets:
        raise ValueError("at least one point set is required")
    n = sets[0].n
    for s in sets:
        if not isinstance(s, Support):
            raise TypeError("alignment inputs must be Support values")
        if s.n != n:
            raise ValueError("all point sets must share the ambient dimension")
        if len(s) == 0:
            raise ValueError("point sets must be nonempty")
    return n


def greedy_alignment(
    sets: Sequence[Support],
    tie_break: TieBreak = TieBreak.LEX,
    seed: int | None = None,
) -> AlignmentResult:
    """Align sets one at a time against the union built so far.

    The first set stays put. For each further set the candidates are all
    differences (union point) - (set point); each guarantees at least one
    overlap, and any translation outside that set overlaps nothing, so the
    scan is exhaustive for the step objective. ``seed`` only matters for
    the RANDOM tie-break mode.
    """
    n = _validate_sets(sets)
    rng = SplitMix64(0 if seed is None else seed)
    translations = [ExponentVector.zero(n)]
    union = set(sets[0].points)
    for current in sets[1:]:
        points = sorted(current.points)
        candidates = sorted({u - p for u in union for p in points})
        best_new = None
        minimisers = []
        for v in candidates:
            new_points = sum(1 for p in points if p + v not in union)
            if best_new is None or new_points < best_new:
                best_new = new_points
                minimisers = [v]
            elif new_points == best_new:
                minimisers.append(v)
        if tie_break is TieBreak.ZERO and ExponentVector.zero(n) in minimisers:
            chosen = ExponentVector.zero(n)
        elif tie_break is TieBreak.RANDOM:
            chosen = rng.choice(minimisers)
        else:
            chosen = minimisers[0]
        translations.append(chosen)
        union.update(p + chosen for p in points)
    return AlignmentResult(
        translations=tuple(translations),
        union=Support(union, n),
        method="greedy",
        tie_break=tie_break.value,
    )


def _spanning_trees(k: int):
    """All spanning trees on k labelled nodes, decoded from Pruefer sequences."""
    if k == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(k), repeat=k - 2):
        degree = [1] * k
        for node in seq:
            degree[node] += 1
        leaves = [i for i in range(k) if degree[i] == 1]
        heapq.heapify(leaves)
        edges = []
        for node in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, node))
            degree[node] -= 1
            if degree[node] == 1:
                heapq.heappush(leaves, node)
        edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
        yield edges


def optimal_alignment(sets: Sequence[Support], cap: int = DEFAULT_ORACLE_CAP) -> AlignmentResult:
    """Globally minimal union size by exhaustive spanning-tree enumeration.

    For every spanning tree on the k sets and every assignment of a shared
    point per tree edge, the induced translations are evaluated; the first
    tuple attaining the minimal union size (in enumeration order, with the
    first set normalised to translation zero) is returned.
    """
    n = _validate_sets(sets)
    k = len(sets)
    if k == 1:
        return AlignmentResult((ExponentVector.zero(n),), sets[0], method="oracle")

    point_lists = [sorted(s.points) for s in sets]

    # v_i - v_j must be a difference (point of set j) - (point of set i)
    # whenever translated sets i and j share a point.
    diff_cache: dict[tuple[int, int], list[ExponentVector]] = {}

    def differences(i: int, j: int) -> list[ExponentVector]:
        key = (i, j)
        if key not in diff_cache:
            diff_cache[key] = sorted({b - a for a in point_lists[i] for b in point_lists[j]})
        return diff_cache[key]

    trees = list(_spanning_trees(k))
    total = 0
    for edges in trees:
        size = 1
        for i, j in edges:
            size *= len(differences(i, j))
        total += size
    if total > cap:
        raise EnumerationCapError(
            f"{total} spanning-tree assignments exceed the enumeration cap of {cap}"
        )

    best_size = None
    best_translations = None
    zero = ExponentVector.zero(n)
    for edges in trees:
        adjacency: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(k)}
        for e, (i, j) in enumerate(edges):
            adjacency[i].append((j, e, -1))  # v_j = v_i - delta_e
            adjacency[j].append((i, e, +1))  # v_i = v_j + delta_e
        order = []  # (node, parent, edge index, sign) in BFS order from node 0
        seen = {0}
        queue = [0]
        parent_link = {}
        while queue:
            node = queue.pop(0)
            for neighbour, e, sign in adjacency[node]:
                if neighbour not in seen:
                    seen.add(neighbour)
                    parent_link[neighbour] = (node, e, sign)
                    order.append(neighbour)
                    queue.append(neighbour)
        for assignment in itertools.product(*(differences(i, j) for i, j in edges)):
            translations = [zero] * k
            for node in order:
                parent, e, sign = parent_link[node]
                delta = assignment[e]
                translations[node] = (
                    translations[parent] + delta if sign > 0 else translations[parent] - delta
                )
            union = set()
            for points, v in zip(point_lists, translations):
                union.update(p + v for p in points)
            if best_size is None or len(union) < best_size:
                best_size = len(union)
                best_translations = tuple(translations)
    union = set()
    for points, v in zip(point_lists, best_translations):
        union.update(p + v for p in points)
    return AlignmentResult(best_translations, Support(union, n), method="oracle")


@dataclass(frozen=True)
class TrialStatistics:
    """Union sizes over seeded random-translation trials of one system."""

    trial_sizes: tuple[int, ...]
    baseline: int
    mean_ratio: Fraction
    best_ratio: Fraction

    def to_json(self) -> dict:
        return {
            "trial_sizes": list(self.trial_sizes),
            "baseline": self.baseline,
            "mean_ratio": str(self.mean_ratio),
            "best_ratio": str(self.best_ratio),
        }


def random_translation_trials(
    system: PolynomialSystem,
    trials: int,
    seed: int,
    box_exponent: int = 8,
    tie_break: TieBreak = TieBreak.LEX,
) -> TrialStatistics:
    """Greedily re-align randomly translated copies of a system's supports.

    Per trial, every polynomial is multiplied by a monomial whose exponent
    vector is drawn uniformly from [0, 2^box_exponent - 1]^n, the greedy
    alignment is run on the translated supports, and the resulting union
    size is recorded. The baseline is the original distinct-monomial count;
    identical seeds produce identical statistics, and each trial draws from
    its own substream so results do not depend on evaluation order.
    """
    if trials < 1:
        raise ValueError("at least one trial is required")
    if box_exponent < 0:
        raise ValueError("box_exponent must be nonnegative")
    baseline = len(system.distinct_monomials())
    bound = 1 << box_exponent
    sizes = []
    for trial in range(trials):
        rng = SplitMix64(derive_seed(seed, f"trial:{trial}"))
        translated = []
        for p in system:
            shift = ExponentVector(rng.below(bound) for _ in range(system.n))
            translated.append(p.monomial_multiply(shift).support())
        result = greedy_alignment(
            translated, tie_break, seed=derive_seed(seed, f"trial:{trial}/tie")
        )
        sizes.append(result.union_size)
    return TrialStatistics(
        trial_sizes=tuple(sizes),
        baseline=baseline,
        mean_ratio=Fraction(sum(sizes), trials * baseline),
        best_ratio=Fraction(min(sizes), baseline),
    )
