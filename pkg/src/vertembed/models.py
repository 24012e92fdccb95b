"""Reaction-network model ingestion and specialisation.

Models arrive as JSON documents with precomputed steady-state polynomials
(one per species), affine-linear conservation constraints, and matrix
metadata; see :data:`MODEL_SCHEMA_KEYS` for the accepted fields. Parsing is
strict: unknown fields, dimension mismatches, floats, and non-linear
constraints are all rejected.

Specialisation substitutes rational values for the reaction-rate parameters
k1..km, either drawn uniformly from the nonzero signed 8-bit range or taken
from the model's stored values. With ``constraint=True`` the specialised
constraints are appended; with ``reduce=True`` the ODE polynomials whose
species is a pivot of the row-reduced constraint coefficient matrix are
omitted. Both together yield a square system (one polynomial per species).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ModelSchemaError, PolynomialParseError
from .parsing import parse_parametrised_polynomial, parse_rational
from .poly import (
    ExponentVector,
    ParametrisedPolynomial,
    PolynomialSystem,
)
from .rng import SplitMix64

__all__ = [
    "MODEL_SCHEMA_KEYS",
    "ODEModel",
    "SpecialisationOptions",
    "parse_model",
    "model_to_document",
    "load_model",
    "constraint_reduction",
    "specialise_model",
    "random_specialisation",
    "fixed_specialisation",
    "draw_parameter_values",
    "is_toric_candidate",
    "builtin_model_ids",
    "builtin_fixtures_dir",
    "load_builtin_model",
]

_REQUIRED_KEYS = (
    "id",
    "description",
    "n_species",
    "n_params",
    "odes",
    "constraints",
    "stoichiometric_matrix",
)
_OPTIONAL_KEYS = (
    "reconfigured_stoichiometric_matrix",
    "kinetic_matrix",
    "deficiency",
    "param_values",
)
MODEL_SCHEMA_KEYS = _REQUIRED_KEYS + _OPTIONAL_KEYS


@dataclass(frozen=True)
class ODEModel:
    """A reaction-network model with steady-state polynomials and constraints."""

    id: str
    description: str
    n_species: int
    n_params: int
    ode_polys: tuple[ParametrisedPolynomial, ...]
    constraints: tuple[ParametrisedPolynomial, ...]
    stoichiometric_matrix: tuple[tuple[int, ...], ...]
    reconfigured_stoichiometric_matrix: tuple[tuple[int, ...], ...] | None = None
    kinetic_matrix: tuple[tuple[int, ...], ...] | None = None
    deficiency: int | None = None
    default_params: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class SpecialisationOptions:
    """Flags steering specialisation: append constraints, drop pivot species."""

    constraint: bool = False
    reduce: bool = False
    seed: int | None = None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ModelSchemaError(message)


def _int_matrix(value, name: str, rows_expected: int | None = None) -> tuple[tuple[int, ...], ...]:
    _require(isinstance(value, list) and value, f"{name} must be a nonempty list of rows")
    rows = []
    width = None
    for row in value:
        _require(isinstance(row, list), f"{name} rows must be lists")
        for entry in row:
            _require(
                isinstance(entry, int) and not isinstance(entry, bool),
                f"{name} entries must be integers",
            )
        if width is None:
            width = len(row)
        _require(len(row) == width, f"{name} rows must all have the same length")
        rows.append(tuple(row))
    if rows_expected is not None:
        _require(
            len(rows) == rows_expected,
            f"{name} must have {rows_expected} rows (one per species), got {len(rows)}",
        )
    return tuple(rows)


def parse_model(document: Mapping) -> ODEModel:
    """Validate a model document and parse its polynomials exactly."""
    _require(isinstance(document, Mapping), "model document must be a JSON object")
    unknown = set(document) - set(MODEL_SCHEMA_KEYS)
    _require(not unknown, f"unknown model fields: {sorted(unknown)}")
    missing = [key for key in _REQUIRED_KEYS if key not in document]
    _require(not missing, f"missing model fields: {missing}")

    model_id = document["id"]
    description = document["description"]
    _require(isinstance(model_id, str) and model_id, "id must be a nonempty string")
    _require(isinstance(description, str), "description must be a string")
    n = document["n_species"]
    m = document["n_params"]
    _require(isinstance(n, int) and n >= 1, "n_species must be a positive integer")
    _require(isinstance(m, int) and m >= 0, "n_params must be a nonnegative integer")

    odes_raw = document["odes"]
    _require(isinstance(odes_raw, list), "odes must be a list of polynomial strings")
    _require(
        len(odes_raw) == n,
        f"expected {n} ODE polynomials (one per species), got {len(odes_raw)}",
    )
    constraints_raw = document["constraints"]
    _require(isinstance(constraints_raw, list), "constraints must be a list of polynomial strings")

    def parse_poly(text, what: str) -> ParametrisedPolynomial:
        _require(isinstance(text, str), f"{what} must be a string")
        try:
            return parse_parametrised_polynomial(text, n, m)
        except PolynomialParseError as exc:
            raise ModelSchemaError(f"{what}: {exc}") from exc

    odes = tuple(parse_poly(text, f"ODE polynomial {i + 1}") for i, text in enumerate(odes_raw))
    constraints = tuple(
        parse_poly(text, f"constraint {i + 1}") for i, text in enumerate(constraints_raw)
    )
    for i, constraint in enumerate(constraints):
        _require(
            constraint.is_affine_linear_in_x(),
            f"constraint {i + 1} is not affine-linear in the species variables",
        )

    stoich = _int_matrix(document["stoichiometric_matrix"], "stoichiometric_matrix", n)
    reconf = document.get("reconfigured_stoichiometric_matrix")
    if reconf is not None:
        reconf = _int_matrix(reconf, "reconfigured_stoichiometric_matrix", n)
    kinetic = document.get("kinetic_matrix")
    if kinetic is not None:
        kinetic = _int_matrix(kinetic, "kinetic_matrix")
    deficiency = document.get("deficiency")
    if deficiency is not None:
        _require(
            isinstance(deficiency, int) and not isinstance(deficiency, bool) and deficiency >= 0,
            "deficiency must be a nonnegative integer",
        )
    params = document.get("param_values")
    if params is not None:
        _require(isinstance(params, list), "param_values must be a list of rational strings")
        _require(
            len(params) == m,
            f"param_values must have {m} entries, got {len(params)}",
        )
        try:
            params = tuple(parse_rational(v) for v in params)
        except PolynomialParseError as exc:
            raise ModelSchemaError(str(exc)) from exc

    return ODEModel(
        id=model_id,
        description=description,
        n_species=n,
        n_params=m,
        ode_polys=odes,
        constraints=constraints,
        stoichiometric_matrix=stoich,
        reconfigured_stoichiometric_matrix=reconf,
        kinetic_matrix=kinetic,
        deficiency=deficiency,
        default_params=params,
    )


def model_to_document(model: ODEModel) -> dict:
    """Render a model back to its JSON document form (parse round-trips)."""
    document = {
        "id": model.id,
        "description": model.description,
        "n_species": model.n_species,
        "n_params": model.n_params,
        "odes": [p.render() for p in model.ode_polys],
        "constraints": [p.render() for p in model.constraints],
        "stoichiometric_matrix": [list(row) for row in model.stoichiometric_matrix],
    }
    if model.reconfigured_stoichiometric_matrix is not None:
        document["reconfigured_stoichiometric_matrix"] = [
            list(row) for row in model.reconfigured_stoichiometric_matrix
        ]
    if model.kinetic_matrix is not None:
        document["kinetic_matrix"] = [list(row) for row in model.kinetic_matrix]
    if model.deficiency is not None:
        document["deficiency"] = model.deficiency
    if model.default_params is not None:
        document["param_values"] = [str(v) for v in model.default_params]
    return document


def load_model(path) -> ODEModel:
    """Load and validate a model JSON file."""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            document = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ModelSchemaError(f"{path}: invalid JSON ({exc})") from exc
    return parse_model(document)


def _resolve_params(model: ODEModel, params: Sequence | None) -> list[Fraction]:
    if params is None:
        if model.default_params is not None:
            return list(model.default_params)
        return [Fraction(1)] * model.n_params
    values = [parse_rational(v) if not isinstance(v, Fraction) else v for v in params]
    if len(values) != model.n_params:
        raise ValueError(f"expected {model.n_params} parameter values, got {len(values)}")
    return values


def _row_echelon_pivots(rows: list[list[Fraction]]) -> list[int]:
    """Pivot column indices (0-based) of the exact row-echelon form.

    Pivots are chosen leftmost-first under the given column order; the
    pivot count equals the rank of the matrix.
    """
    mat = [list(row) for row in rows]
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    pivots = []
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot_row = next((r for r in range(rank, n_rows) if mat[r][col] != 0), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pivot = mat[rank][col]
        for r in range(rank + 1, n_rows):
            if mat[r][col]:
                factor = mat[r][col] / pivot
                for c in range(col, n_cols):
                    mat[r][c] -= factor * mat[rank][c]
        pivots.append(col)
        rank += 1
    return pivots


def constraint_reduction(model: ODEModel, params: Sequence | None = None) -> frozenset[int]:
    """Species (1-based indices) made redundant by the constraints.

    The constraints' coefficient matrix over the species variables is built
    at the parameter values in use (stored values if present, otherwise all
    ones, unless explicit values are given), row-reduced exactly, and the
    pivot columns are returned. Omitting the pivot species' ODE polynomials
    and appending the constraints yields a square system.
    """
    values = _resolve_params(model, params)
    n = model.n_species
    rows = []
    for i, constraint in enumerate(model.constraints):
        if not constraint.is_affine_linear_in_x():
            raise ValueError(f"constraint {i + 1} is not affine-linear in the species variables")
        specialised = constraint.specialise(values)
        rows.append(
            [specialised.coefficient(ExponentVector.unit(n, axis)) for axis in range(n)]
        )
    if not rows:
        return frozenset()
    return frozenset(col + 1 for col in _row_echelon_pivots(rows))


def specialise_model(
    model: ODEModel,
    values: Sequence,
    constraint: bool = False,
    reduce: bool = False,
) -> PolynomialSystem:
    """Specialise a model at explicit parameter values.

    ODE polynomials come first in species order (minus the pivot species
    when ``reduce`` is set), followed by the specialised constraints when
    ``constraint`` is set.
    """
    resolved = _resolve_params(model, values)
    omitted = constraint_reduction(model, resolved) if reduce else frozenset()
    polys = [
        p.specialise(resolved)
        for species, p in enumerate(model.ode_polys, start=1)
        if species not in omitted
    ]
    if constraint:
        polys.extend(c.specialise(resolved) for c in model.constraints)
    return PolynomialSystem(polys, model.n_species)


def draw_parameter_values(model: ODEModel, rng: SplitMix64) -> tuple[Fraction, ...]:
    """One uniform draw per parameter from the nonzero signed 8-bit range.

    Zero is excluded: a zero reaction rate collapses monomial support and
    produces degenerate specialisations.
    """
    values = []
    for _ in range(model.n_params):
        raw = rng.below(255)  # [-128..-1] then [1..127]
        values.append(Fraction(raw - 128 if raw < 128 else raw - 127))
    return tuple(values)


def random_specialisation(
    model: ODEModel, opts: SpecialisationOptions = SpecialisationOptions()
) -> PolynomialSystem:
    """Specialise at seeded-random parameter values (entropy-seeded if no seed)."""
    seed = opts.seed
    if seed is None:
        seed = int.from_bytes(os.urandom(8), "big")
    values = draw_parameter_values(model, SplitMix64(seed))
    return specialise_model(model, values, constraint=opts.constraint, reduce=opts.reduce)


def fixed_specialisation(
    model: ODEModel, opts: SpecialisationOptions = SpecialisationOptions()
) -> PolynomialSystem:
    """Specialise at the model's stored parameter values."""
    if model.default_params is None:
        raise ValueError(f"model {model.id} has no stored parameter values")
    return specialise_model(
        model, model.default_params, constraint=opts.constraint, reduce=opts.reduce
    )


def is_toric_candidate(system: PolynomialSystem) -> bool:
    """True iff no polynomial of the system is a single monomial.

    A system containing a monomial equation has no solutions with all
    coordinates nonzero, so only these candidates are worth scoring.
    """
    return all(len(p.terms) >= 2 for p in system)


# --- bundled fixtures ----------------------------------------------------------

def builtin_fixtures_dir() -> Path:
    """Directory holding the bundled model fixtures."""
    return Path(str(resources.files(__package__).joinpath("fixtures")))


def builtin_model_ids() -> list[str]:
    return sorted(path.stem for path in builtin_fixtures_dir().glob("*.json"))


def load_builtin_model(model_id: str) -> ODEModel:
    path = builtin_fixtures_dir() / f"{model_id}.json"
    if not path.exists():
        raise FileNotFoundError(f"no bundled model named {model_id}")
    return load_model(path)
