"""Embedding polynomial systems into one-parameter-per-monomial families.

The package provides exact sparse Laurent polynomial systems, coefficient
matrices over their distinct monomials with minor-based embedding scores,
single-step monomial perturbation experiments, greedy and exact alignment
of monomial supports under lattice translations, and a reaction-network
model ingestion layer with a batch CLI.
"""

from .align import (
    DEFAULT_ORACLE_CAP,
    AlignmentResult,
    TieBreak,
    TrialStatistics,
    greedy_alignment,
    optimal_alignment,
    random_translation_trials,
)
from .errors import EnumerationCapError, ModelSchemaError, PolynomialParseError
from .macaulay import (
    DEFAULT_MINOR_CAP,
    MacaulayMatrix,
    MinorCounts,
    Score,
    ScoreReport,
    macaulay_matrix,
    minor_counts,
    minor_is_nontrivial,
    minor_value,
    score_report,
)
from .models import (
    ODEModel,
    SpecialisationOptions,
    builtin_fixtures_dir,
    builtin_model_ids,
    constraint_reduction,
    draw_parameter_values,
    fixed_specialisation,
    is_toric_candidate,
    load_builtin_model,
    load_model,
    model_to_document,
    parse_model,
    random_specialisation,
    specialise_model,
)
from .parsing import (
    parse_laurent_polynomial,
    parse_parametrised_polynomial,
    parse_rational,
)
from .perturb import (
    CorpusScoreResult,
    MaximalityReport,
    Perturbation,
    TiebreakReport,
    all_score_maximality,
    corpus_score_experiment,
    enumerate_perturbations,
    maximality_report,
    score_value,
    tiebreak_report,
)
from .poly import (
    ExponentVector,
    LaurentPolynomial,
    ParameterPolynomial,
    ParametrisedPolynomial,
    PolynomialSystem,
    Support,
    VerticalSystem,
    canonical_monomial_order,
    minimal_vertical_system,
)
from .rng import SplitMix64, derive_seed

__version__ = "0.1.0"
