import json
from fractions import Fraction

import pytest

from helpers import laurent, system
from vertembed import (
    ModelSchemaError,
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
    parse_parametrised_polynomial,
    random_specialisation,
    specialise_model,
)
from vertembed.rng import SplitMix64

AKT_MATRIX = [
    [1, -1, 1, 0, 0, 0, 0],
    [-1, 0, 0, 1, -1, 0, 0],
    [0, 1, -1, 0, 0, 1, -1],
    [0, 0, 0, -1, 1, -1, 1],
]


def synthetic_document(**overrides):
    document = {
        "id": "TEST0001",
        "description": "two-species toy network",
        "n_species": 2,
        "n_params": 3,
        "odes": ["-k1*x1*x2 + k2*x2", "k1*x1*x2 - k2*x2"],
        "constraints": ["k3*x1 + k3*x2 - k3"],
        "stoichiometric_matrix": [[-1, 1], [1, -1]],
    }
    document.update(overrides)
    return document


class TestParseModel:
    def test_akt_switch_fixture(self):
        model = load_builtin_model("BIOMD0000000854")
        assert model.description == "Gray2016 - The Akt switch model"
        assert (model.n_species, model.n_params) == (4, 11)
        assert [list(row) for row in model.stoichiometric_matrix] == AKT_MATRIX
        assert model.ode_polys[0] == parse_parametrised_polynomial(
            "-k1*k3*x1 + k2*x2 + k1*x3", 4, 11
        )

    def test_bundled_ids(self):
        assert builtin_model_ids() == [
            "BIOMD0000000405",
            "BIOMD0000000629",
            "BIOMD0000000854",
        ]

    def test_missing_field(self):
        document = synthetic_document()
        del document["n_species"]
        with pytest.raises(ModelSchemaError):
            parse_model(document)

    def test_unknown_field_rejected(self):
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(extra_field=1))

    def test_wrong_ode_count(self):
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(odes=["x1"]))

    def test_matrix_shape_checked(self):
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(stoichiometric_matrix=[[1, -1]]))
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(stoichiometric_matrix=[[1], [1, -1]]))

    def test_non_linear_constraint_rejected(self):
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(constraints=["k1*x1*x2 - k2"]))

    def test_parameter_in_exponent_rejected(self):
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(odes=["x1^k1 + x2", "x1 - x2"]))

    def test_param_values_validated(self):
        document = synthetic_document(param_values=["1", "1/2", "-3"])
        model = parse_model(document)
        assert model.default_params == (1, Fraction(1, 2), -3)
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(param_values=["1", "2"]))
        with pytest.raises(ModelSchemaError):
            parse_model(synthetic_document(param_values=[0.5, "1", "1"]))

    def test_render_parse_round_trip(self):
        for model_id in builtin_model_ids():
            model = load_builtin_model(model_id)
            assert parse_model(model_to_document(model)) == model
        enriched = parse_model(
            synthetic_document(
                param_values=["2", "1/3", "-1"],
                deficiency=0,
                kinetic_matrix=[[1, 1], [0, 1]],
                reconfigured_stoichiometric_matrix=[[-1, 1], [1, -1]],
            )
        )
        assert parse_model(model_to_document(enriched)) == enriched

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ModelSchemaError):
            load_model(path)


class TestConstraintReduction:
    def test_binding_network_pivots(self):
        model = load_builtin_model("BIOMD0000000629")
        assert constraint_reduction(model) == frozenset({1, 2, 4})

    def test_pivots_stable_under_parameter_choice(self):
        model = load_builtin_model("BIOMD0000000629")
        values = draw_parameter_values(model, SplitMix64(123))
        assert constraint_reduction(model, values) == frozenset({1, 2, 4})

    def test_no_constraints(self):
        document = synthetic_document(constraints=[])
        assert constraint_reduction(parse_model(document)) == frozenset()

    def test_identity_constraints_omit_everything(self):
        document = synthetic_document(constraints=["x1 - k1", "x2 - k2"])
        assert constraint_reduction(parse_model(document)) == frozenset({1, 2})

    def test_omitted_count_equals_rank(self):
        # rank via the transposed matrix must agree with the pivot count
        model = load_builtin_model("BIOMD0000000629")
        n = model.n_species
        rows = [
            [c.specialise([1] * model.n_params).coefficient(tuple(1 if i == axis else 0 for i in range(n)))
             for axis in range(n)]
            for c in model.constraints
        ]
        transposed = [[rows[r][c] for r in range(len(rows))] for c in range(n)]
        from vertembed.models import _row_echelon_pivots

        assert len(constraint_reduction(model)) == len(_row_echelon_pivots(transposed))


class TestSpecialisation:
    def test_random_specialisation_is_deterministic(self):
        model = load_builtin_model("BIOMD0000000629")
        opts = SpecialisationOptions(seed=99)
        assert random_specialisation(model, opts) == random_specialisation(model, opts)

    def test_square_system_guarantee(self):
        for model_id in builtin_model_ids():
            model = load_builtin_model(model_id)
            for seed in (0, 1, 2):
                opts = SpecialisationOptions(constraint=True, reduce=True, seed=seed)
                assert random_specialisation(model, opts).k == model.n_species

    def test_reduced_binding_network_members(self):
        model = load_builtin_model("BIOMD0000000629")
        reduced = random_specialisation(model, SpecialisationOptions(reduce=True, seed=4))
        assert reduced.k == 2
        supports = [set(map(tuple, p.support().points)) for p in reduced]
        assert supports[0] == {(1, 0, 1, 0, 0), (0, 1, 0, 0, 0)}
        assert supports[1] == {(0, 1, 0, 1, 0), (0, 0, 0, 0, 1)}

    def test_parameters_in_signed_byte_range(self):
        model = load_builtin_model("BIOMD0000000854")
        values = draw_parameter_values(model, SplitMix64(7))
        assert len(values) == 11
        for v in values:
            assert v != 0
            assert -128 <= v <= 127
            assert v.denominator == 1

    def test_fixed_specialisation_uses_stored_values(self):
        document = synthetic_document(param_values=["1", "1", "1"])
        model = parse_model(document)
        fixed = fixed_specialisation(model, SpecialisationOptions())
        assert fixed[0] == laurent("-x1*x2 + x2", 2)
        assert fixed_specialisation(model, SpecialisationOptions()) == fixed

    def test_fixed_specialisation_requires_values(self):
        model = parse_model(synthetic_document())
        with pytest.raises(ValueError):
            fixed_specialisation(model, SpecialisationOptions())

    def test_vanishing_coefficient_shrinks_support(self):
        document = synthetic_document(
            odes=["(k1 - k2)*x1 + k3*x2", "k1*x1 - k3*x2"],
            constraints=[],
            param_values=["2", "2", "1"],
        )
        model = parse_model(document)
        fixed = fixed_specialisation(model, SpecialisationOptions())
        assert fixed[0] == laurent("x2", 2)
        assert len(fixed[0].support()) < len(model.ode_polys[0].support())

    def test_no_zero_coefficients_stored(self):
        model = load_builtin_model("BIOMD0000000854")
        specialised = random_specialisation(model, SpecialisationOptions(seed=11))
        for p in specialised:
            assert all(c != 0 for c in p.terms.values())

    def test_explicit_values(self):
        model = load_builtin_model("BIOMD0000000629")
        systemised = specialise_model(model, [1] * 8, constraint=False, reduce=True)
        assert systemised[0] == laurent("-x1*x3 + x2", 5)
        assert systemised[1] == laurent("x2*x4 - x5", 5)


class TestToricCandidates:
    def test_binomials_are_candidates(self):
        assert is_toric_candidate(system("x1^2 + x2", "x1 - 1", n=2))

    def test_monomial_member_disqualifies(self):
        assert not is_toric_candidate(system("x1*x2", "x1 + x2", n=2))

    def test_reduced_binding_network_is_candidate(self):
        model = load_builtin_model("BIOMD0000000629")
        reduced = random_specialisation(model, SpecialisationOptions(reduce=True, seed=0))
        assert is_toric_candidate(reduced)


def test_fixtures_directory_contains_only_models():
    for path in builtin_fixtures_dir().glob("*.json"):
        with path.open(encoding="utf-8") as handle:
            parse_model(json.load(handle))
