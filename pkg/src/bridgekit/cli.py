"""Command-line pipelines: convert, harmonize, pairs, train, eval,
importance, analyze, and the end-to-end run command.

Exit codes: 0 success, 1 configuration error, 2 parse error, 3 pipeline
error. Every run-command output lands under a directory named from a hash
of the resolved configuration (excluding the output directory itself), so
identical configurations map to identical paths and byte-identical
reports; nothing in the outputs depends on the clock.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BridgekitError, ConfigError, ParseError
from .gbdt import (
    HyperParams,
    cross_validate,
    default_grid,
    encode,
    evaluate,
    gain_importance,
    load_model,
    mda_importance,
    random_baseline,
    save_model,
    train,
)
from .harmonize import (
    HarmonizeOptions,
    format_report,
    harmonize_corpus,
    read_exclusion_list,
)
from .ingest import (
    DIALECT_PARSERS,
    emit_canonical,
    guess_dialect,
    read_documents,
)
from .model import Document
from .pairgen import (
    DEFAULT_PRONOUN_TAGS,
    PairDataset,
    bridging_rate_per_1k,
    build_balanced_dataset,
    dataset_from_jsonl,
    dataset_to_csv,
    dataset_to_jsonl,
)
from .stats import (
    anaphor_entity_distribution,
    chi_square_residuals,
    confident_errors,
    definiteness_contingency,
    definiteness_contingency_corpus,
    entity_pair_distribution,
    subtype_distribution,
)

OUTPUT_DIR_ENV = "BRIDGEKIT_OUTPUT_DIR"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARSE = 2
EXIT_PIPELINE = 3


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class CorpusSpec:
    name: str
    dialect: str
    train: tuple[str, ...]
    dev: tuple[str, ...] = ()
    test: tuple[str, ...] = ()
    extra_test: tuple[str, ...] = ()

    @property
    def train_files(self) -> tuple[str, ...]:
        return self.train + self.dev

    @property
    def eval_files(self) -> tuple[str, ...]:
        return self.test + self.extra_test


@dataclass(frozen=True)
class PipelineConfig:
    seed: int
    corpora: tuple[CorpusSpec, ...]
    output_dir: str = "runs"
    exclusion_list: str | None = None
    pronoun_tags: tuple[str, ...] = tuple(sorted(DEFAULT_PRONOUN_TAGS))
    lemma_top_k: int = 200
    cv_folds: int = 5
    grid: tuple[HyperParams, ...] = field(default_factory=lambda: tuple(default_grid()))
    grid_name: str = "default"
    baseline_p: float = 1.0 / 3.0
    baseline_runs: int = 5
    tau: float = 0.10
    residual_source: str = "dataset"
    distribution_threshold: float = 0.01

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "output_dir": self.output_dir,
            "corpora": [
                {
                    "name": c.name,
                    "dialect": c.dialect,
                    "train": list(c.train),
                    "dev": list(c.dev),
                    "test": list(c.test),
                    "extra_test": list(c.extra_test),
                }
                for c in self.corpora
            ],
            "exclusion_list": self.exclusion_list,
            "pronoun_tags": list(self.pronoun_tags),
            "lemma_top_k": self.lemma_top_k,
            "cv_folds": self.cv_folds,
            "grid": [hp.to_dict() for hp in self.grid],
            "baseline_p": self.baseline_p,
            "baseline_runs": self.baseline_runs,
            "tau": self.tau,
            "residual_source": self.residual_source,
            "distribution_threshold": self.distribution_threshold,
        }

    def run_id(self) -> str:
        payload = self.to_dict()
        del payload["output_dir"]
        digest = hashlib.sha256(
            json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
        ).hexdigest()
        return f"run-{digest[:12]}"


def _as_path_tuple(value, key: str) -> tuple[str, ...]:
    if value is None:
        return ()
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ConfigError(f"{key} must be a list of paths")
    return tuple(value)


def load_config(path: str | Path, overrides: dict | None = None) -> PipelineConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc.msg}")
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    raw.update(overrides or {})

    if "seed" not in raw or not isinstance(raw["seed"], int) or isinstance(raw["seed"], bool):
        raise ConfigError("config requires an integer seed; no clock-based default exists")
    corpora_raw = raw.get("corpora")
    if not isinstance(corpora_raw, list) or not corpora_raw:
        raise ConfigError("config requires a non-empty corpora list")
    corpora = []
    for entry in corpora_raw:
        if not isinstance(entry, dict) or "name" not in entry or "dialect" not in entry:
            raise ConfigError("each corpus needs at least name and dialect")
        if entry["dialect"] not in DIALECT_PARSERS:
            raise ConfigError(f"unknown dialect {entry['dialect']!r}")
        spec = CorpusSpec(
            name=entry["name"],
            dialect=entry["dialect"],
            train=_as_path_tuple(entry.get("train"), "train"),
            dev=_as_path_tuple(entry.get("dev"), "dev"),
            test=_as_path_tuple(entry.get("test"), "test"),
            extra_test=_as_path_tuple(entry.get("extra_test"), "extra_test"),
        )
        if not spec.train_files:
            raise ConfigError(f"corpus {spec.name!r} has no training files")
        if not spec.eval_files:
            raise ConfigError(f"corpus {spec.name!r} has no evaluation files")
        corpora.append(spec)
    if len({c.name for c in corpora}) != len(corpora):
        raise ConfigError("corpus names must be unique")

    grid_raw = raw.get("grid", "default")
    grid_name = "custom"
    if grid_raw == "default":
        grid, grid_name = tuple(default_grid()), "default"
    elif isinstance(grid_raw, list) and grid_raw:
        try:
            grid = tuple(HyperParams(**entry) for entry in grid_raw)
        except TypeError as exc:
            raise ConfigError(f"bad grid entry: {exc}")
    else:
        raise ConfigError("grid must be \"default\" or a non-empty list of objects")

    if raw.get("residual_source", "dataset") not in ("dataset", "corpus"):
        raise ConfigError("residual_source must be dataset or corpus")

    config = PipelineConfig(
        seed=raw["seed"],
        corpora=tuple(corpora),
        output_dir=os.environ.get(OUTPUT_DIR_ENV) or raw.get("output_dir", "runs"),
        exclusion_list=raw.get("exclusion_list"),
        pronoun_tags=tuple(
            sorted(DEFAULT_PRONOUN_TAGS)
            if raw.get("pronoun_tags") is None
            else raw["pronoun_tags"]
        ),
        lemma_top_k=int(raw.get("lemma_top_k", 200)),
        cv_folds=int(raw.get("cv_folds", 5)),
        grid=grid,
        grid_name=grid_name,
        baseline_p=float(raw.get("baseline_p", 1.0 / 3.0)),
        baseline_runs=int(raw.get("baseline_runs", 5)),
        tau=float(raw.get("tau", 0.10)),
        residual_source=raw.get("residual_source", "dataset"),
        distribution_threshold=float(raw.get("distribution_threshold", 0.01)),
    )
    _check_paths(config, base=Path(path).parent)
    return config


def _check_paths(config: PipelineConfig, base: Path) -> None:
    for corpus in config.corpora:
        for rel in corpus.train_files + corpus.eval_files:
            if not (base / rel).exists() and not Path(rel).exists():
                raise ConfigError(f"corpus {corpus.name!r}: input path does not exist: {rel}")
    if config.exclusion_list is not None:
        if not (base / config.exclusion_list).exists() and not Path(config.exclusion_list).exists():
            raise ConfigError(f"exclusion list does not exist: {config.exclusion_list}")


def _resolve(base: Path, rel: str) -> Path:
    p = Path(rel)
    if p.exists():
        return p
    return base / rel


# ---------------------------------------------------------------------------
# simple subcommands


def cmd_convert(args) -> int:
    docs = read_documents(args.input, args.dialect)
    Path(args.out).write_bytes(emit_canonical(docs))
    print(f"wrote {len(docs)} documents to {args.out}")
    return EXIT_OK


def cmd_harmonize(args) -> int:
    docs = read_documents(args.input, args.dialect)
    options = HarmonizeOptions(
        exclusions=read_exclusion_list(args.exclusions) if args.exclusions else frozenset()
    )
    harmonized, report = harmonize_corpus(docs, options)
    Path(args.out).write_bytes(emit_canonical(harmonized))
    if args.report:
        _write(Path(args.report), _dump_json(report.to_dict()))
    print(format_report(report))
    if report.unresolved_entity_types:
        print(
            "warning: unresolved entity type labels: "
            + ", ".join(report.unresolved_entity_types),
            file=sys.stderr,
        )
    return EXIT_OK


def _read_many(paths: list[str], dialect: str | None) -> list[Document]:
    docs: list[Document] = []
    for path in paths:
        docs.extend(read_documents(path, dialect))
    return docs


def cmd_pairs(args) -> int:
    docs = _read_many(args.input, args.dialect)
    if args.harmonize:
        docs, _ = harmonize_corpus(docs)
    dataset = build_balanced_dataset(
        docs,
        seed=args.seed,
        corpus=args.corpus,
        partition=args.partition,
        pronoun_tags=frozenset(args.pronoun_tags),
    )
    Path(args.out).write_bytes(dataset_to_jsonl(dataset))
    if args.csv:
        _write(Path(args.csv), dataset_to_csv(dataset))
    counts = dataset.label_counts()
    print(
        f"{len(dataset.examples)} examples "
        f"(bridging {counts['bridging']}, coref {counts['coref']}, none {counts['none']}), "
        f"distance cap {dataset.provenance.max_distance}"
    )
    for warning in dataset.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def _explicit_params(args) -> HyperParams | None:
    keys = ("n_rounds", "max_depth", "learning_rate", "l2_leaf_penalty",
            "split_gain_threshold", "min_child_hessian")
    given = {k: getattr(args, k) for k in keys if getattr(args, k) is not None}
    if not given:
        return None
    return HyperParams(**given)


def cmd_train(args) -> int:
    dataset = dataset_from_jsonl(Path(args.pairs).read_bytes())
    explicit = _explicit_params(args)
    if explicit is not None:
        best = explicit
        cv_results = []
    else:
        grid = default_grid() if args.grid == "default" else _small_grid()
        best, cv_results = cross_validate(dataset, grid, k=args.folds, seed=args.seed)
    X, y, schema = encode(dataset, lemma_top_k=args.lemma_top_k)
    model = train(X, y, best, seed=args.seed, schema=schema)
    save_model(model, args.out)
    summary = {
        "params": best.to_dict(),
        "final_training_loss": model.training_loss[-1],
        "cv": [
            {"params": r.params.to_dict(), "mean_f1": r.mean_f1, "fold_f1": list(r.fold_f1)}
            for r in cv_results
        ],
    }
    print(_dump_json(summary), end="")
    return EXIT_OK


def _small_grid() -> list[HyperParams]:
    return [
        HyperParams(n_rounds=n, max_depth=d, learning_rate=0.3,
                    l2_leaf_penalty=1.0, split_gain_threshold=0.0, min_child_hessian=1.0)
        for n in (25, 50)
        for d in (3, 4)
    ]


def cmd_eval(args) -> int:
    model = load_model(args.model)
    dataset = dataset_from_jsonl(Path(args.pairs).read_bytes())
    metrics = evaluate(model, dataset)
    baseline = random_baseline(dataset, p=args.baseline_p, runs=args.baseline_runs,
                               seed=args.seed)
    payload = {"model": metrics.to_dict(), "random_baseline": baseline.to_dict()}
    if args.out:
        _write(Path(args.out), _dump_json(payload))
    print(_dump_json(payload), end="")
    return EXIT_OK


def cmd_importance(args) -> int:
    model = load_model(args.model)
    dataset = dataset_from_jsonl(Path(args.pairs).read_bytes())
    gain = gain_importance(model)
    mda = mda_importance(model, dataset, repeats=args.repeats, seed=args.seed)
    payload = {"gain": gain, "mda": mda}
    if args.out:
        _write(Path(args.out), _dump_json(payload))
    print(_dump_json(payload), end="")
    return EXIT_OK


def cmd_analyze(args) -> int:
    dataset = dataset_from_jsonl(Path(args.pairs).read_bytes())
    payload: dict = {}

    table = definiteness_contingency(dataset)
    residuals = chi_square_residuals(table, adjusted=args.adjusted)
    payload["residuals"] = residuals.to_dict()
    print("definiteness residuals:")
    print(residuals.to_text())

    if args.docs:
        docs = _read_many(args.docs, args.dialect)
        pair_types = entity_pair_distribution(docs, threshold=args.threshold)
        anaphor_types = anaphor_entity_distribution(docs)
        subtypes = subtype_distribution(docs)
        payload["pair_type_distribution"] = [
            {"ante_type": a, "ana_type": b, "proportion": p, "visible": v}
            for a, b, p, v in pair_types.rows()
        ]
        payload["anaphor_entity_distribution"] = [
            {"label": label, "count": count, "proportion": p}
            for label, count, p in anaphor_types.rows()
        ]
        payload["subtype_distribution"] = [
            {"label": label, "count": count, "proportion": p}
            for label, count, p in subtypes.rows()
        ]
        print("\nanaphor entity types:")
        print(anaphor_types.to_text())
        print("\nbridging subtypes:")
        print(subtypes.to_text())

    if args.model:
        model = load_model(args.model)
        errors = confident_errors(model, dataset, tau=args.tau)
        payload["confident_errors"] = [e.to_dict() for e in errors]
        print(f"\n{len(errors)} gold bridging pairs under probability {args.tau}")

    if args.out:
        _write(Path(args.out), _dump_json(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# end-to-end run


class _StageFailure(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause


def cmd_run(args) -> int:
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out_dir is not None:
        overrides["output_dir"] = args.out_dir
    config = load_config(args.config, overrides)
    base = Path(args.config).parent

    run_dir = Path(config.output_dir) / config.run_id()
    run_dir.mkdir(parents=True, exist_ok=True)
    _write(run_dir / "resolved_config.json", _dump_json(config.to_dict()))

    report: dict = {
        "run_id": config.run_id(),
        "config": config.to_dict(),
        "corpora": {},
        "metrics": {},
        "baselines": {},
        "importance": {},
        "residuals": {},
        "distributions": {},
        "confident_errors": {},
        "warnings": [],
    }
    stage = "load"
    try:
        exclusions = (
            read_exclusion_list(_resolve(base, config.exclusion_list))
            if config.exclusion_list
            else frozenset()
        )
        options = HarmonizeOptions(exclusions=exclusions)
        pronoun_tags = frozenset(config.pronoun_tags)

        splits: dict[str, dict[str, list[Document]]] = {}
        for corpus in config.corpora:
            stage = f"load:{corpus.name}"
            raw_train = [
                doc
                for rel in corpus.train_files
                for doc in read_documents(_resolve(base, rel), corpus.dialect)
            ]
            raw_eval = [
                doc
                for rel in corpus.eval_files
                for doc in read_documents(_resolve(base, rel), corpus.dialect)
            ]

            stage = f"harmonize:{corpus.name}"
            train_docs, train_report = harmonize_corpus(raw_train, options)
            eval_docs, eval_report = harmonize_corpus(raw_eval, options)
            train_report.merge(eval_report)
            splits[corpus.name] = {"train": train_docs, "eval": eval_docs}
            _write(
                run_dir / "harmonized" / f"{corpus.name}_train.jsonl",
                emit_canonical(train_docs).decode("utf-8"),
            )
            _write(
                run_dir / "harmonized" / f"{corpus.name}_eval.jsonl",
                emit_canonical(eval_docs).decode("utf-8"),
            )
            _write(
                run_dir / f"harmonize_report_{corpus.name}.json",
                _dump_json(train_report.to_dict()),
            )
            report["corpora"][corpus.name] = {
                "harmonize": train_report.to_dict(),
                "bridging_rate_per_1k": bridging_rate_per_1k(train_docs + eval_docs),
            }
            report["warnings"].extend(
                f"{corpus.name}: unresolved entity type {label!r}"
                for label in train_report.unresolved_entity_types
            )

        datasets: dict[str, dict[str, PairDataset]] = {}
        for corpus in config.corpora:
            stage = f"datasets:{corpus.name}"
            per_role = {}
            for role in ("train", "eval"):
                dataset = build_balanced_dataset(
                    splits[corpus.name][role],
                    seed=config.seed,
                    corpus=corpus.name,
                    partition=role,
                    pronoun_tags=pronoun_tags,
                )
                per_role[role] = dataset
                _write(
                    run_dir / "datasets" / f"{corpus.name}_{role}.jsonl",
                    dataset_to_jsonl(dataset).decode("utf-8"),
                )
                _write(
                    run_dir / "datasets" / f"{corpus.name}_{role}.csv",
                    dataset_to_csv(dataset),
                )
                report["warnings"].extend(
                    f"{corpus.name}/{role}: {w}" for w in dataset.warnings
                )
            datasets[corpus.name] = per_role
            report["corpora"][corpus.name]["dataset_counts"] = {
                role: per_role[role].label_counts() for role in per_role
            }
            report["corpora"][corpus.name]["max_distance"] = {
                role: per_role[role].provenance.max_distance for role in per_role
            }

        models = {}
        for corpus in config.corpora:
            stage = f"cv:{corpus.name}"
            best, cv_results = cross_validate(
                datasets[corpus.name]["train"], list(config.grid),
                k=config.cv_folds, seed=config.seed,
            )
            _write(
                run_dir / "cv" / f"{corpus.name}.json",
                _dump_json(
                    [
                        {
                            "params": r.params.to_dict(),
                            "mean_f1": r.mean_f1,
                            "fold_f1": list(r.fold_f1),
                        }
                        for r in cv_results
                    ]
                ),
            )
            stage = f"train:{corpus.name}"
            X, y, schema = encode(
                datasets[corpus.name]["train"], lemma_top_k=config.lemma_top_k
            )
            model = train(X, y, best, seed=config.seed, schema=schema)
            models[corpus.name] = model
            (run_dir / "models").mkdir(parents=True, exist_ok=True)
            save_model(model, run_dir / "models" / f"{corpus.name}.json")
            report["corpora"][corpus.name]["best_params"] = best.to_dict()
            report["corpora"][corpus.name]["final_training_loss"] = model.training_loss[-1]

        stage = "evaluate"
        for model_name, model in models.items():
            report["metrics"][model_name] = {}
            for corpus in config.corpora:
                metrics = evaluate(model, datasets[corpus.name]["eval"])
                report["metrics"][model_name][corpus.name] = metrics.to_dict()
        for corpus in config.corpora:
            baseline = random_baseline(
                datasets[corpus.name]["eval"], p=config.baseline_p,
                runs=config.baseline_runs, seed=config.seed,
            )
            report["baselines"][corpus.name] = baseline.to_dict()
        _write(
            run_dir / "eval" / "metrics.json",
            _dump_json({"models": report["metrics"], "baselines": report["baselines"]}),
        )

        for corpus in config.corpora:
            stage = f"importance:{corpus.name}"
            model = models[corpus.name]
            gain = gain_importance(model)
            mda = mda_importance(
                model, datasets[corpus.name]["eval"], repeats=config.baseline_runs,
                seed=config.seed,
            )
            report["importance"][corpus.name] = {"gain": gain, "mda": mda}
            _write(
                run_dir / "importance" / f"{corpus.name}.json",
                _dump_json({"gain": gain, "mda": mda}),
            )

        stage = "analysis"
        for corpus in config.corpora:
            if config.residual_source == "dataset":
                table = definiteness_contingency(datasets[corpus.name]["eval"])
            else:
                table = definiteness_contingency_corpus(splits[corpus.name]["eval"])
            residuals = chi_square_residuals(table)
            report["residuals"][corpus.name] = residuals.to_dict()

            all_docs = splits[corpus.name]["train"] + splits[corpus.name]["eval"]
            pair_types = entity_pair_distribution(
                all_docs, threshold=config.distribution_threshold
            )
            eval_docs = splits[corpus.name]["eval"]
            report["distributions"][corpus.name] = {
                "pair_types": [
                    {"ante_type": a, "ana_type": b, "proportion": p, "visible": v}
                    for a, b, p, v in pair_types.rows()
                ],
                "anaphor_entity": [
                    {"label": label, "count": count, "proportion": p}
                    for label, count, p in anaphor_entity_distribution(eval_docs).rows()
                ],
                "subtypes": [
                    {"label": label, "count": count, "proportion": p}
                    for label, count, p in subtype_distribution(eval_docs).rows()
                ],
            }
            _write(
                run_dir / "analysis" / f"{corpus.name}_pair_types.csv",
                pair_types.to_csv(),
            )

        for model_name, model in models.items():
            for corpus in config.corpora:
                errors = confident_errors(
                    model, datasets[corpus.name]["eval"], tau=config.tau
                )
                report["confident_errors"][f"{model_name}_on_{corpus.name}"] = [
                    e.to_dict() for e in errors
                ]

        stage = "report"
        _write(run_dir / "report.json", _dump_json(report))
    except BridgekitError as exc:
        report["failed_stage"] = stage
        report["error"] = str(exc)
        _write(run_dir / "report.partial.json", _dump_json(report))
        raise _StageFailure(stage, exc)

    print(f"run complete: {run_dir / 'report.json'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bridgekit",
        description="Bridging-anaphora corpus harmonization and pair classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert a corpus file to canonical JSONL")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--dialect", choices=sorted(DIALECT_PARSERS), default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("harmonize", help="apply harmonization rules")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--dialect", choices=sorted(DIALECT_PARSERS), default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--report", default=None)
    p.add_argument("--exclusions", default=None)
    p.set_defaults(func=cmd_harmonize)

    p = sub.add_parser("pairs", help="build a balanced mention-pair dataset")
    p.add_argument("--in", dest="input", nargs="+", required=True)
    p.add_argument("--dialect", choices=sorted(DIALECT_PARSERS), default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--csv", default=None)
    p.add_argument("--corpus", default="")
    p.add_argument("--partition", default="")
    p.add_argument("--harmonize", action="store_true",
                   help="harmonize documents before pairing")
    p.add_argument("--pronoun-tags", nargs="+", default=sorted(DEFAULT_PRONOUN_TAGS))
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("train", help="cross-validate and train a model")
    p.add_argument("--pairs", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--grid", choices=("default", "small"), default="default")
    p.add_argument("--lemma-top-k", type=int, default=200)
    p.add_argument("--n-rounds", dest="n_rounds", type=int, default=None)
    p.add_argument("--max-depth", dest="max_depth", type=int, default=None)
    p.add_argument("--learning-rate", dest="learning_rate", type=float, default=None)
    p.add_argument("--l2-leaf-penalty", dest="l2_leaf_penalty", type=float, default=None)
    p.add_argument("--split-gain-threshold", dest="split_gain_threshold", type=float,
                   default=None)
    p.add_argument("--min-child-hessian", dest="min_child_hessian", type=float, default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a model on a pair dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--baseline-p", type=float, default=1.0 / 3.0)
    p.add_argument("--baseline-runs", type=int, default=5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("importance", help="gain and permutation importance")
    p.add_argument("--model", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_importance)

    p = sub.add_parser("analyze", help="residuals, distributions, confident errors")
    p.add_argument("--pairs", required=True)
    p.add_argument("--docs", nargs="*", default=None)
    p.add_argument("--dialect", choices=sorted(DIALECT_PARSERS), default=None)
    p.add_argument("--model", default=None)
    p.add_argument("--tau", type=float, default=0.10)
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--adjusted", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("run", help="full pipeline from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _StageFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc.cause, ParseError):
            return EXIT_PARSE
        if isinstance(exc.cause, ConfigError):
            return EXIT_CONFIG
        return EXIT_PIPELINE
    except BridgekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
