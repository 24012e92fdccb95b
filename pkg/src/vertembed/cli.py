"""Command-line interface for batch scoring, perturbation scans, and alignment runs.

Every randomized run is seeded (default seed 0) and each model draws its
parameters from a substream derived from the global seed and the model id,
so reports are byte-identical across reruns and independent of processing
order. Reports carry the seed and a hash of the effective configuration.

Subcommands::

    model info        show id, description, matrices and polynomials
    model specialise  print the specialised polynomial system per model
    scores            minor counts and embedding scores per model
    perturb scan      score-maximality among single-step perturbations
    align greedy      greedy alignment of the system's monomial supports
    align oracle      exact optimal alignment (exponential, cap-guarded)
    align experiment  greedy alignment of random monomial translations
    pipeline          end-to-end batch over a model corpus
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .align import (
    TieBreak,
    greedy_alignment,
    optimal_alignment,
    random_translation_trials,
)
from .errors import EnumerationCapError, ModelSchemaError, PolynomialParseError
from .macaulay import DEFAULT_MINOR_CAP, Score, ScoreReport, macaulay_matrix, minor_counts
from .models import (
    ODEModel,
    constraint_reduction,
    draw_parameter_values,
    is_toric_candidate,
    load_model,
    specialise_model,
)
from .perturb import all_score_maximality, maximality_report
from .rng import SplitMix64, derive_seed

__all__ = ["main", "build_parser"]


# --- argument plumbing ---------------------------------------------------------

def _add_io_arguments(parser, formats=("json", "csv"), default="json"):
    parser.add_argument("paths", nargs="+", help="model JSON files or directories of them")
    parser.add_argument("--format", choices=formats, default=default, help="output format")
    parser.add_argument("--out", type=Path, default=None, help="write the report to this path")
    parser.add_argument("--seed", type=int, default=0, help="global seed for randomized steps")


def _add_specialisation_arguments(parser):
    parser.add_argument(
        "--fixed", action="store_true", help="use stored parameter values instead of random ones"
    )
    parser.add_argument(
        "--constraint", action="store_true", help="append the specialised constraints"
    )
    parser.add_argument(
        "--reduce", action="store_true", help="omit ODE polynomials of constraint-pivot species"
    )


def _add_cap_argument(parser):
    parser.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_MINOR_CAP,
        help="enumeration cap for minor counts and the alignment oracle",
    )


def _add_alignment_arguments(parser):
    parser.add_argument(
        "--tie-break",
        choices=[mode.value for mode in TieBreak],
        default=TieBreak.LEX.value,
        help="tie-break rule of the greedy alignment step",
    )
    parser.add_argument("--trials", type=int, default=10, help="random-translation trials")
    parser.add_argument(
        "--box-exponent",
        type=int,
        default=8,
        help="translations are drawn from [0, 2^e - 1] per coordinate",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vertembed",
        description="Embedding scores, perturbation scans and support alignment for polynomial systems",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    model_parser = subparsers.add_parser("model", help="inspect or specialise model files")
    model_sub = model_parser.add_subparsers(dest="subcommand", required=True)

    info = model_sub.add_parser("info", help="show model metadata and polynomials")
    _add_io_arguments(info, formats=("text", "json", "csv"), default="text")
    info.set_defaults(handler=_cmd_model_info, command_name="model info")

    specialise = model_sub.add_parser("specialise", help="print the specialised system per model")
    _add_io_arguments(specialise)
    _add_specialisation_arguments(specialise)
    specialise.set_defaults(handler=_cmd_model_specialise, command_name="model specialise")

    scores = subparsers.add_parser("scores", help="minor counts and embedding scores per model")
    _add_io_arguments(scores)
    _add_specialisation_arguments(scores)
    _add_cap_argument(scores)
    scores.set_defaults(handler=_cmd_scores, command_name="scores")

    perturb_parser = subparsers.add_parser("perturb", help="perturbation experiments")
    perturb_sub = perturb_parser.add_subparsers(dest="subcommand", required=True)
    scan = perturb_sub.add_parser("scan", help="score maximality among perturbations")
    _add_io_arguments(scan)
    _add_specialisation_arguments(scan)
    _add_cap_argument(scan)
    scan.add_argument(
        "--score",
        choices=[score.value for score in Score] + ["all"],
        default="S",
        help="score to test (or all five)",
    )
    scan.add_argument(
        "--strict",
        action="store_true",
        help="count only strict maxima as successes in the summary",
    )
    scan.set_defaults(handler=_cmd_perturb_scan, command_name="perturb scan")

    align_parser = subparsers.add_parser("align", help="monomial-support alignment")
    align_sub = align_parser.add_subparsers(dest="subcommand", required=True)
    for mode, helptext in (
        ("greedy", "greedy alignment of the system's supports"),
        ("oracle", "exact optimal alignment (cap-guarded)"),
        ("experiment", "greedy alignment of seeded random translations"),
    ):
        sub = align_sub.add_parser(mode, help=helptext)
        _add_io_arguments(sub)
        _add_specialisation_arguments(sub)
        _add_cap_argument(sub)
        _add_alignment_arguments(sub)
        sub.set_defaults(handler=_cmd_align, command_name=f"align {mode}", align_mode=mode)

    pipeline = subparsers.add_parser("pipeline", help="end-to-end batch over a model corpus")
    _add_io_arguments(pipeline)
    _add_specialisation_arguments(pipeline)
    _add_cap_argument(pipeline)
    _add_alignment_arguments(pipeline)
    pipeline.add_argument(
        "--max-species",
        type=int,
        default=16,
        help="skip models with more species than this",
    )
    pipeline.set_defaults(handler=_cmd_pipeline, command_name="pipeline")

    return parser


# --- shared helpers ------------------------------------------------------------

def _collect_model_files(paths) -> tuple[list[Path], list[dict]]:
    files: list[Path] = []
    errors: list[dict] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(sorted(path.glob("*.json")))
        elif path.is_file():
            files.append(path)
        else:
            errors.append({"path": str(path), "error": "no such file or directory"})
    return files, errors


def _load_models(paths) -> tuple[list[ODEModel], list[dict]]:
    files, errors = _collect_model_files(paths)
    models = []
    for path in files:
        try:
            models.append(load_model(path))
        except (ModelSchemaError, PolynomialParseError, OSError) as exc:
            errors.append({"path": str(path), "error": str(exc)})
    models.sort(key=lambda model: model.id)
    return models, errors


def _specialised_system(model: ODEModel, args):
    """Specialised system plus the parameter values and omitted species used."""
    if args.fixed:
        if model.default_params is None:
            raise ValueError(f"model {model.id} has no stored parameter values")
        values = model.default_params
    else:
        values = draw_parameter_values(
            model, SplitMix64(derive_seed(args.seed, f"{model.id}/params"))
        )
    omitted = constraint_reduction(model, values) if args.reduce else frozenset()
    system = specialise_model(model, values, constraint=args.constraint, reduce=args.reduce)
    return system, values, omitted


def _config_payload(args, keys) -> tuple[dict, str]:
    config = {"command": args.command_name}
    for key in keys:
        config[key] = getattr(args, key)
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return config, hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _emit_json(payload: dict, out: Path | None) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True), out)


def _emit_csv(rows: list[dict], fieldnames: list[str], out: Path | None) -> None:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    _emit(buffer.getvalue(), out)


def _warn(errors: list[dict]) -> None:
    for entry in errors:
        sys.stderr.write(f"error: {entry['path']}: {entry['error']}\n")


def _matrix_lines(matrix) -> list[str]:
    width = max((len(str(entry)) for row in matrix for entry in row), default=1)
    return ["[" + " ".join(f"{entry:>{width}}" for entry in row) + "]" for row in matrix]


# --- model info ----------------------------------------------------------------

def _cmd_model_info(args) -> int:
    models, errors = _load_models(args.paths)
    config, config_hash = _config_payload(args, ["seed", "format"])

    if args.format == "text":
        lines = []
        for model in models:
            lines.append(f"{model.id}: {model.description}")
            lines.append(f"  {model.n_species} species and {model.n_params} parameters")
            if model.deficiency is not None:
                lines.append(f"  deficiency: {model.deficiency}")
            lines.append("  stoichiometric matrix:")
            lines.extend(f"    {row}" for row in _matrix_lines(model.stoichiometric_matrix))
            lines.append("  steady-state polynomials:")
            lines.extend(f"    f{i} = {p.render()}" for i, p in enumerate(model.ode_polys, 1))
            if model.constraints:
                lines.append("  constraints:")
                lines.extend(f"    c{i} = {p.render()}" for i, p in enumerate(model.constraints, 1))
            lines.append("")
        lines.extend(f"error: {e['path']}: {e['error']}" for e in errors)
        _emit("\n".join(lines), args.out)
    elif args.format == "csv":
        rows = [
            {
                "model_id": model.id,
                "seed": args.seed,
                "config_hash": config_hash,
                "description": model.description,
                "n_species": model.n_species,
                "n_params": model.n_params,
                "deficiency": "" if model.deficiency is None else model.deficiency,
            }
            for model in models
        ]
        _emit_csv(
            rows,
            ["model_id", "seed", "config_hash", "description", "n_species", "n_params", "deficiency"],
            args.out,
        )
        _warn(errors)
    else:
        payload = {
            "command": args.command_name,
            "config": config,
            "config_hash": config_hash,
            "models": [
                {
                    "id": model.id,
                    "description": model.description,
                    "summary": f"{model.n_species} species and {model.n_params} parameters",
                    "n_species": model.n_species,
                    "n_params": model.n_params,
                    "deficiency": model.deficiency,
                    "stoichiometric_matrix": [list(row) for row in model.stoichiometric_matrix],
                    "odes": [p.render() for p in model.ode_polys],
                    "constraints": [p.render() for p in model.constraints],
                }
                for model in models
            ],
            "errors": errors,
        }
        _emit_json(payload, args.out)
    return 1 if errors else 0


# --- model specialise ----------------------------------------------------------

def _cmd_model_specialise(args) -> int:
    models, errors = _load_models(args.paths)
    config, config_hash = _config_payload(
        args, ["seed", "format", "fixed", "constraint", "reduce"]
    )
    entries = []
    for model in models:
        try:
            system, values, omitted = _specialised_system(model, args)
        except ValueError as exc:
            errors.append({"path": model.id, "error": str(exc)})
            continue
        entries.append(
            {
                "id": model.id,
                "omitted_species": sorted(omitted),
                "parameter_values": [str(v) for v in values],
                "polynomials": system.render_lines(),
                "k": system.k,
                "n_monomials": len(system.distinct_monomials()),
            }
        )
    if args.format == "csv":
        rows = [
            {
                "model_id": entry["id"],
                "seed": args.seed,
                "config_hash": config_hash,
                "k": entry["k"],
                "n_monomials": entry["n_monomials"],
                "omitted_species": " ".join(str(s) for s in entry["omitted_species"]),
                "polynomials": "; ".join(entry["polynomials"]),
            }
            for entry in entries
        ]
        _emit_csv(
            rows,
            ["model_id", "seed", "config_hash", "k", "n_monomials", "omitted_species", "polynomials"],
            args.out,
        )
        _warn(errors)
    else:
        payload = {
            "command": args.command_name,
            "config": config,
            "config_hash": config_hash,
            "models": entries,
            "errors": errors,
        }
        _emit_json(payload, args.out)
    return 1 if errors else 0


# --- scores --------------------------------------------------------------------

def _cmd_scores(args) -> int:
    models, errors = _load_models(args.paths)
    config, config_hash = _config_payload(
        args, ["seed", "format", "fixed", "constraint", "reduce", "cap"]
    )
    entries = []
    skipped = []
    for model in models:
        try:
            system, _, _ = _specialised_system(model, args)
            counts = minor_counts(macaulay_matrix(system), args.cap)
            report = ScoreReport.from_counts(counts)
        except EnumerationCapError as exc:
            skipped.append({"id": model.id, "reason": str(exc)})
            continue
        except ValueError as exc:
            errors.append({"path": model.id, "error": str(exc)})
            continue
        entries.append({"id": model.id, **counts.to_json(), **report.to_json()})
    if args.format == "csv":
        rows = [
            {
                "model_id": entry["id"],
                "seed": args.seed,
                "config_hash": config_hash,
                **{key: entry[key] for key in ("M", "M0", "Mnt", "M0nt", "S", "S0", "S0nt", "R0", "R0nt")},
            }
            for entry in entries
        ]
        _emit_csv(
            rows,
            ["model_id", "seed", "config_hash", "M", "M0", "Mnt", "M0nt", "S", "S0", "S0nt", "R0", "R0nt"],
            args.out,
        )
        _warn(errors)
    else:
        payload = {
            "command": args.command_name,
            "config": config,
            "config_hash": config_hash,
            "models": entries,
            "skipped": skipped,
            "errors": errors,
        }
        _emit_json(payload, args.out)
    return 1 if errors else 0


# --- perturb scan ----------------------------------------------------------------

def _cmd_perturb_scan(args) -> int:
    models, errors = _load_models(args.paths)
    config, config_hash = _config_payload(
        args, ["seed", "format", "fixed", "constraint", "reduce", "cap", "score", "strict"]
    )
    selected = list(Score) if args.score == "all" else [Score.from_label(args.score)]
    entries = []
    skipped = []
    successes = {score: 0 for score in selected}
    for model in models:
        try:
            system, _, _ = _specialised_system(model, args)
            if args.score == "all":
                reports = all_score_maximality(system, args.cap)
            else:
                reports = {score: maximality_report(system, score, args.cap) for score in selected}
        except EnumerationCapError as exc:
            skipped.append({"id": model.id, "reason": str(exc)})
            continue
        except ValueError as exc:
            errors.append({"path": model.id, "error": str(exc)})
            continue
        entry = {"id": model.id, "reports": {}}
        for score in selected:
            report = reports[score]
            entry["reports"][score.label] = report.to_json()
            success = report.is_strict_maximum if args.strict else report.is_maximum
            if success:
                successes[score] += 1
        entries.append(entry)
    summary = {
        "evaluated": len(entries),
        "successes": {score.label: count for score, count in successes.items()},
        "strict": args.strict,
    }
    if args.format == "csv":
        rows = []
        for entry in entries:
            for label, report in entry["reports"].items():
                rows.append(
                    {
                        "model_id": entry["id"],
                        "score": label,
                        "is_max": report["is_maximum"],
                        "is_strict": report["is_strict_maximum"],
                        "n_better": report["n_better"],
                        "n_ties": report["n_ties"],
                        "seed": args.seed,
                        "config_hash": config_hash,
                    }
                )
        _emit_csv(
            rows,
            ["model_id", "score", "is_max", "is_strict", "n_better", "n_ties", "seed", "config_hash"],
            args.out,
        )
        _warn(errors)
    else:
        payload = {
            "command": args.command_name,
            "config": config,
            "config_hash": config_hash,
            "models": entries,
            "skipped": skipped,
            "summary": summary,
            "errors": errors,
        }
        _emit_json(payload, args.out)
    return 1 if errors else 0


# --- align ----------------------------------------------------------------------

def _cmd_align(args) -> int:
    models, errors = _load_models(args.paths)
    config, config_hash = _config_payload(
        args,
        [
            "seed",
            "format",
            "fixed",
            "constraint",
            "reduce",
            "cap",
            "tie_break",
            "trials",
            "box_exponent",
        ],
    )
    tie_break = TieBreak.from_label(args.tie_break)
    entries = []
    skipped = []
    csv_rows = []
    for model in models:
        try:
            system, _, _ = _specialised_system(model, args)
        except ValueError as exc:
            errors.append({"path": model.id, "error": str(exc)})
            continue
        baseline = len(system.distinct_monomials())
        try:
            if args.align_mode == "greedy":
                result = greedy_alignment(
                    system.supports(), tie_break, seed=derive_seed(args.seed, f"{model.id}/tie")
                )
                entries.append({"id": model.id, "baseline": baseline, **result.to_json()})
                csv_rows.append(
                    {
                        "model_id": model.id,
                        "seed": args.seed,
                        "config_hash": config_hash,
                        "method": "greedy",
                        "tie_break": tie_break.value,
                        "union_size": result.union_size,
                        "baseline": baseline,
                    }
                )
            elif args.align_mode == "oracle":
                result = optimal_alignment(system.supports(), cap=args.cap)
                entries.append({"id": model.id, "baseline": baseline, **result.to_json()})
                csv_rows.append(
                    {
                        "model_id": model.id,
                        "seed": args.seed,
                        "config_hash": config_hash,
                        "method": "oracle",
                        "tie_break": "",
                        "union_size": result.union_size,
                        "baseline": baseline,
                    }
                )
            else:
                stats = random_translation_trials(
                    system,
                    trials=args.trials,
                    seed=derive_seed(args.seed, f"{model.id}/trials"),
                    box_exponent=args.box_exponent,
                    tie_break=tie_break,
                )
                try:
                    oracle_size = optimal_alignment(system.supports(), cap=args.cap).union_size
                except EnumerationCapError:
                    oracle_size = None
                entries.append(
                    {
                        "id": model.id,
                        "tie_break": tie_break.value,
                        "oracle_union_size": oracle_size,
                        **stats.to_json(),
                    }
                )
                for trial, size in enumerate(stats.trial_sizes):
                    csv_rows.append(
                        {
                            "model_id": model.id,
                            "seed": args.seed,
                            "config_hash": config_hash,
                            "trial": trial,
                            "union_size": size,
                            "baseline": stats.baseline,
                            "ratio": str(Fraction(size, stats.baseline)),
                        }
                    )
        except EnumerationCapError as exc:
            skipped.append({"id": model.id, "reason": str(exc)})
    if args.format == "csv":
        if args.align_mode == "experiment":
            fields = ["model_id", "seed", "config_hash", "trial", "union_size", "baseline", "ratio"]
        else:
            fields = ["model_id", "seed", "config_hash", "method", "tie_break", "union_size", "baseline"]
        _emit_csv(csv_rows, fields, args.out)
        _warn(errors)
    else:
        payload = {
            "command": args.command_name,
            "config": config,
            "config_hash": config_hash,
            "models": entries,
            "skipped": skipped,
            "errors": errors,
        }
        _emit_json(payload, args.out)
    return 1 if errors else 0


# --- pipeline --------------------------------------------------------------------

def _cmd_pipeline(args) -> int:
    models, errors = _load_models(args.paths)
    config, config_hash = _config_payload(
        args,
        [
            "seed",
            "format",
            "fixed",
            "constraint",
            "reduce",
            "cap",
            "tie_break",
            "trials",
            "box_exponent",
            "max_species",
        ],
    )
    tie_break = TieBreak.from_label(args.tie_break)
    entries = []
    score_successes = {score: 0 for score in Score}
    strict_successes = {score: 0 for score in Score}
    evaluated = skipped = 0

    for model in models:
        entry = {
            "id": model.id,
            "seed": args.seed,
            "config_hash": config_hash,
            "n_species": model.n_species,
            "n_params": model.n_params,
        }
        if model.n_species > args.max_species:
            entry.update(status="skipped", reason=f"more than {args.max_species} species")
            entries.append(entry)
            skipped += 1
            continue
        try:
            system, _, omitted = _specialised_system(model, args)
            if not is_toric_candidate(system):
                entry.update(
                    status="skipped",
                    reason="not a toric candidate (some polynomial is a single monomial)",
                )
                entries.append(entry)
                skipped += 1
                continue
            counts = minor_counts(macaulay_matrix(system), args.cap)
            report = ScoreReport.from_counts(counts)
            maximality = all_score_maximality(system, args.cap)
            stats = random_translation_trials(
                system,
                trials=args.trials,
                seed=derive_seed(args.seed, f"{model.id}/trials"),
                box_exponent=args.box_exponent,
                tie_break=tie_break,
            )
        except (EnumerationCapError, ValueError) as exc:
            entry.update(status="skipped", reason=str(exc))
            entries.append(entry)
            skipped += 1
            continue
        evaluated += 1
        for score, max_report in maximality.items():
            if max_report.is_maximum:
                score_successes[score] += 1
            if max_report.is_strict_maximum:
                strict_successes[score] += 1
        entry.update(
            status="ok",
            system={
                "k": system.k,
                "n": system.n,
                "omitted_species": sorted(omitted),
                "distinct_monomials": len(system.distinct_monomials()),
                "polynomials": system.render_lines(),
            },
            minors=counts.to_json(),
            scores=report.to_json(),
            maximality={score.label: rep.to_json() for score, rep in maximality.items()},
            alignment_trials=stats.to_json(),
        )
        entries.append(entry)

    failed = len(errors)
    payload = {
        "command": args.command_name,
        "config": config,
        "config_hash": config_hash,
        "models": entries,
        "errors": errors,
        "summary": {
            "models_total": len(models),
            "evaluated": evaluated,
            "skipped": skipped,
            "errors": failed,
            "score_successes": {score.label: n for score, n in score_successes.items()},
            "score_successes_strict": {score.label: n for score, n in strict_successes.items()},
        },
    }
    if args.format == "csv":
        rows = []
        for entry in entries:
            base = {
                "model_id": entry["id"],
                "seed": entry["seed"],
                "config_hash": entry["config_hash"],
                "status": entry["status"],
                "reason": entry.get("reason", ""),
                "n_species": entry["n_species"],
            }
            if entry["status"] != "ok":
                rows.append(
                    {
                        **base,
                        "n_polys": "",
                        "n_monomials": "",
                        "score": "",
                        "score_value": "",
                        "is_max": "",
                        "is_strict": "",
                        "n_better": "",
                        "n_ties": "",
                        "trials_baseline": "",
                        "trials_mean_ratio": "",
                        "trials_best_ratio": "",
                    }
                )
                continue
            for label, rep in entry["maximality"].items():
                rows.append(
                    {
                        **base,
                        "n_polys": entry["system"]["k"],
                        "n_monomials": entry["system"]["distinct_monomials"],
                        "score": label,
                        "score_value": rep["original_value"],
                        "is_max": rep["is_maximum"],
                        "is_strict": rep["is_strict_maximum"],
                        "n_better": rep["n_better"],
                        "n_ties": rep["n_ties"],
                        "trials_baseline": entry["alignment_trials"]["baseline"],
                        "trials_mean_ratio": entry["alignment_trials"]["mean_ratio"],
                        "trials_best_ratio": entry["alignment_trials"]["best_ratio"],
                    }
                )
        fields = [
            "model_id",
            "seed",
            "config_hash",
            "status",
            "reason",
            "n_species",
            "n_polys",
            "n_monomials",
            "score",
            "score_value",
            "is_max",
            "is_strict",
            "n_better",
            "n_ties",
            "trials_baseline",
            "trials_mean_ratio",
            "trials_best_ratio",
        ]
        _emit_csv(rows, fields, args.out)
        _warn(errors)
    else:
        _emit_json(payload, args.out)
    return 1 if errors else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
