import pytest

from helpers import reduced_405, reduced_629, system
from vertembed import (
    ExponentVector,
    LaurentPolynomial,
    Perturbation,
    PolynomialSystem,
    Score,
    all_score_maximality,
    corpus_score_experiment,
    enumerate_perturbations,
    maximality_report,
    score_report,
    score_value,
    tiebreak_report,
)


def brute_force_distinct_count(system_, perturbation):
    """Independent count: shift one support with raw set operations."""
    supports = [set(p.terms.keys()) for p in system_]
    shift = ExponentVector.unit(system_.n, perturbation.var_index - 1, perturbation.shift)
    index = perturbation.poly_index - 1
    supports[index] = {p + shift for p in supports[index]}
    return len(set().union(*supports))


class TestEnumeration:
    def test_count_without_identity(self):
        F = system("x1 + x2", "x1 - 1", n=2)
        assert len(enumerate_perturbations(F)) == 2 * 2 * 2

    def test_identity_included_once_and_first(self):
        F = system("x1 + x2", "x1 - 1", n=2)
        entries = enumerate_perturbations(F, include_identity=True)
        assert len(entries) == 9
        head, head_system = entries[0]
        assert head.is_identity
        assert head_system == F

    def test_canonical_order(self):
        F = system("x1 + 1", n=2)
        labels = [(p.poly_index, p.var_index, p.shift) for p, _ in enumerate_perturbations(F)]
        assert labels == [(1, 1, -1), (1, 1, 1), (1, 2, -1), (1, 2, 1)]

    def test_binding_network_witness_system(self):
        F = reduced_629()
        entries = dict(
            ((p.poly_index, p.var_index, p.shift), s) for p, s in enumerate_perturbations(F)
        )
        perturbed = entries[(1, 4, 1)]
        assert perturbed[0] == F[0].monomial_multiply((0, 0, 0, 1, 0))
        assert perturbed[1] == F[1]
        assert len(perturbed.distinct_monomials()) == 3

    def test_invalid_perturbations_rejected(self):
        with pytest.raises(ValueError):
            Perturbation(1, 1, 2)
        with pytest.raises(ValueError):
            Perturbation(0, 1, 1)
        F = system("x1", n=1)
        with pytest.raises(ValueError):
            Perturbation(2, 1, 1).apply(F)


class TestMaximality:
    def test_binding_network_not_maximal(self):
        F = reduced_629((2, 3, 5, 7))
        report = maximality_report(F, Score.S)
        assert not report.is_maximum
        witnesses = {(p.poly_index, p.var_index, p.shift): v for p, v in report.better}
        assert witnesses[(1, 4, 1)] == -3  # 3 distinct monomials, k = 2
        assert score_value(F, Score.S) == -6

    def test_cycling_network_maximal_with_ties(self):
        F = reduced_405((2, 3, 5, 7))
        report = maximality_report(F, Score.S)
        assert report.is_maximum
        assert not report.is_strict_maximum
        ties = {(p.poly_index, p.var_index, p.shift) for p, _ in report.ties}
        assert {(1, 3, 1), (1, 4, 1), (1, 5, 1)} <= ties
        # every tie keeps exactly the original number of distinct monomials
        for perturbation, value in report.ties:
            assert brute_force_distinct_count(F, perturbation) == 6
            assert value == report.original_value

    def test_ties_match_brute_force_exactly(self):
        F = reduced_405()
        report = maximality_report(F, Score.S)
        expected_ties = set()
        expected_better = set()
        original = len(F.distinct_monomials())
        for perturbation, _ in enumerate_perturbations(F):
            count = brute_force_distinct_count(F, perturbation)
            key = (perturbation.poly_index, perturbation.var_index, perturbation.shift)
            if count == original:
                expected_ties.add(key)
            elif count < original:
                expected_better.add(key)
        assert {(p.poly_index, p.var_index, p.shift) for p, _ in report.ties} == expected_ties
        assert {(p.poly_index, p.var_index, p.shift) for p, _ in report.better} == expected_better

    def test_strict_maximum_when_all_perturbations_grow(self):
        F = system("x1 + 1", "x1 + 1", n=1)
        report = maximality_report(F, Score.S)
        assert report.is_strict_maximum

    def test_identity_ties_every_score(self):
        F = reduced_629()
        identity = Perturbation(1, 1, 0)
        assert score_report(identity.apply(F)) == score_report(F)

    def test_perturbation_round_trip_restores_scores(self):
        F = reduced_405()
        forward = Perturbation(2, 3, 1).apply(F)
        back = Perturbation(2, 3, -1).apply(forward)
        assert score_report(back) == score_report(F)

    def test_maximality_invariant_under_variable_permutation(self):
        F = reduced_629()
        # rotate the variable axes by one position
        def rotate(p):
            return LaurentPolynomial(
                {ExponentVector(e[1:] + e[:1]): c for e, c in p.terms.items()}, p.n
            )

        rotated = PolynomialSystem([rotate(p) for p in F], F.n)
        assert (
            maximality_report(rotated, Score.S).is_maximum
            == maximality_report(F, Score.S).is_maximum
        )

    def test_contained_shift_cannot_hurt_support_score(self):
        # the second polynomial's shifted support stays inside the first's
        F = system("x1^2 + x1 + 1", "x1 + 1", n=1)
        original = score_value(F, Score.S)
        shifted = Perturbation(2, 1, 1).apply(F)
        assert score_value(shifted, Score.S) >= original


class TestCorpusExperiment:
    def test_binding_network_fails_support_score(self):
        result = corpus_score_experiment([reduced_629()])
        assert result.successes[Score.S] == 0
        assert result.total == 1 and len(result.outcomes) == 1

    def test_cycling_network_succeeds_non_strictly(self):
        result = corpus_score_experiment([reduced_405()])
        assert result.successes[Score.S] == 1
        _, reports = result.outcomes[0]
        assert not reports[Score.S].is_strict_maximum

    def test_empty_corpus(self):
        result = corpus_score_experiment([])
        assert result.total == 0
        assert all(count == 0 for count in result.successes.values())

    def test_failures_recorded_not_fatal(self):
        degenerate = system("x1 + x2", "x1 + x2", "x1 + x2", n=2)  # k > m
        result = corpus_score_experiment([degenerate, reduced_405()])
        assert len(result.failures) == 1
        assert result.failures[0][0] == 0
        assert result.successes[Score.S] == 1

    def test_all_scores_consistent_with_single_queries(self):
        F = reduced_629()
        combined = all_score_maximality(F)
        for score in Score:
            single = maximality_report(F, score)
            assert combined[score].is_maximum == single.is_maximum
            assert combined[score].original_value == single.original_value


class TestTiebreak:
    def test_cycling_network_ties_present(self):
        report = tiebreak_report(reduced_405())
        labels = {(p.poly_index, p.var_index, p.shift) for p, _ in report.ties}
        assert {(1, 3, 1), (1, 4, 1), (1, 5, 1)} <= labels

    def test_strict_maximum_has_no_ties(self):
        report = tiebreak_report(system("x1 + 1", "x1 + 1", n=1))
        assert report.ties == ()

    def test_running_example_tie_scan_matches_brute_force(self):
        F = system("x1^2 + x2^2 + x1", "x1^2 + x2^2 + 1", n=2)
        report = tiebreak_report(F)
        original = len(F.distinct_monomials())
        expected = {
            (p.poly_index, p.var_index, p.shift)
            for p, _ in enumerate_perturbations(F)
            if brute_force_distinct_count(F, p) == original
        }
        assert {(p.poly_index, p.var_index, p.shift) for p, _ in report.ties} == expected

    def test_lost_scores_reported(self):
        report = tiebreak_report(reduced_405())
        assert set(report.scores_lost_to_ties()) <= {Score.S0, Score.S0NT, Score.R0, Score.R0NT}
