"""Command-line front end.

Subcommands: predict, select, simulate, experiment, benchmark, cv-k.
Exit status is 0 on success, 1 on a data or validation error and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .core import (
    KnnConfig,
    Task,
    dataset_rows,
    read_csv,
    standardize,
    validate_dataset,
    write_csv,
)
from .distance import DistanceMetric
from .errors import KnnSelectError, SchemaMismatch
from .experiment import ExperimentConfig, run_benchmark, run_experiment
from .knn import predict_batch
from .selection import (
    ExternalTest,
    InternalSplit,
    SelectionConfig,
    best_of,
    cross_validate_k,
    forward_select,
    k_fold_losses,
)
from .simgen import ClassifSimConfig, RegressSimConfig, gen_classification, gen_regression


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _metric(text):
    try:
        return DistanceMetric.parse(text)
    except (KnnSelectError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _task(text):
    try:
        return Task.parse(text)
    except KnnSelectError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    parent.add_argument("--metric", type=_metric, default=DistanceMetric.euclidean(),
                        help="euclidean | manhattan | minkowski:<p> | jaccard")
    parent.add_argument("--k", type=int, default=5, help="number of neighbors (default 5)")
    parent.add_argument("--task", type=_task, default=Task.CLASSIFICATION, help="class | reg")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="knnselect", description="kNN with forward variable selection")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", parents=[common], help="plain kNN predictions")
    p.add_argument("--train", required=True, type=Path)
    p.add_argument("--test", required=True, type=Path)
    p.add_argument("--response", required=True)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--standardize", action="store_true", help="z-score features using training moments")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("select", parents=[common], help="forward variable selection")
    p.add_argument("--train", required=True, type=Path)
    p.add_argument("--test", required=True, type=Path)
    p.add_argument("--response", required=True)
    p.add_argument("--cv-k", type=_int_list, default=None, help="tune k over this list first")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--internal-split", type=float, default=None, metavar="FRACTION",
                   help="select on a holdout of the training data (implied when the test file has no response)")
    p.add_argument("--out-json", required=True, type=Path)
    p.add_argument("--out-predictions", type=Path, default=None)
    p.add_argument("--standardize", action="store_true")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("simulate", parents=[common], help="write a synthetic dataset (--task picks the design)")
    p.add_argument("--n", type=int, default=None, help="rows (default 200 class / 100 reg)")
    p.add_argument("--p", type=int, default=None, help="predictors (default 10 class / 9 reg)")
    p.add_argument("--signal", type=int, default=5)
    p.add_argument("--beta", type=_float_list, default=None)
    p.add_argument("--correlation", type=float, default=0.0)
    p.add_argument("--noise-sd", type=float, default=1.0)
    p.add_argument("--shuffle-columns", action="store_true")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--out-meta", type=Path, default=None, help="metadata JSON (default: <out>.json)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("experiment", parents=[common], help="replicated split/select/score study")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--generator", choices=["class", "reg"])
    src.add_argument("--data", type=Path)
    p.add_argument("--response", default="y")
    p.add_argument("--replications", type=int, default=50)
    p.add_argument("--train-fraction", type=float, default=0.7)
    p.add_argument("--mode", choices=["internal", "external"], default="internal")
    p.add_argument("--cv-k", type=_int_list, default=None)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--signal", type=int, default=None)
    p.add_argument("--beta", type=_float_list, default=None)
    p.add_argument("--correlation", type=float, default=None)
    p.add_argument("--noise-sd", type=float, default=None)
    p.add_argument("--shuffle-columns", action="store_true")
    p.add_argument("--out", required=True, type=Path, help="long-format replicate CSV")
    p.add_argument("--out-summary", type=Path, default=None, help="per-variable selection frequencies")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("benchmark", parents=[common], help="running time against p")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--p-list", type=_int_list, default=[10, 15, 20, 25, 30])
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("cv-k", parents=[common], help="choose k by cross-validation")
    p.add_argument("--train", required=True, type=Path)
    p.add_argument("--response", required=True)
    p.add_argument("--k-list", type=_int_list, required=True)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--out-json", type=Path, default=None)
    p.set_defaults(func=cmd_cv_k)
    return parser


def _load_train_test(args):
    x, names, y = read_csv(args.train, args.response, args.task)
    train = validate_dataset(x, names, y)
    xt, test_names, yt = read_csv(args.test, args.response, args.task, require_response=False)
    if list(test_names) != list(train.column_names):
        raise SchemaMismatch(f"test columns {test_names} do not match training columns {list(train.column_names)}")
    if args.standardize:
        scaled, xt = standardize(train.features, xt)
        train = validate_dataset(scaled, train.column_names, train.response)
    return train, np.asarray(xt, dtype=float), yt


def cmd_predict(args):
    train, xt, _ = _load_train_test(args)
    preds = predict_batch(train, xt, KnnConfig(args.k, args.metric, args.task))
    write_csv(args.out, ["row", "prediction"], enumerate(preds))
    return 0


def cmd_select(args):
    train, xt, yt = _load_train_test(args)
    k = args.k
    if args.cv_k:
        k = cross_validate_k(train, args.cv_k, args.folds, KnnConfig(args.k, args.metric, args.task), args.seed)
    knn = KnnConfig(k, args.metric, args.task)
    if args.internal_split is not None:
        mode = InternalSplit(args.internal_split)
    elif yt is None:
        print("test file has no response column; selecting on a 70/30 split of the training data", file=sys.stderr)
        mode = InternalSplit(0.7)
    else:
        mode = ExternalTest()
    result = forward_select(train, xt, yt, SelectionConfig(knn, mode, args.seed))
    payload = result.to_json(
        k=k,
        metric=str(args.metric),
        task=args.task.value,
        mode="internal" if isinstance(mode, InternalSplit) else "external",
        train_fraction=mode.train_fraction if isinstance(mode, InternalSplit) else None,
        seed=args.seed,
    )
    args.out_json.write_text(payload + "\n", encoding="utf-8")
    if args.out_predictions is not None:
        write_csv(args.out_predictions, ["row", "prediction"], enumerate(result.predictions))
    return 0


def cmd_simulate(args):
    if args.task is Task.CLASSIFICATION:
        cfg = ClassifSimConfig(
            n=args.n or 200,
            p=args.p or 10,
            signal=args.signal,
            beta=tuple(args.beta) if args.beta else None,
            correlation=args.correlation,
            shuffle_columns=args.shuffle_columns,
            seed=args.seed,
        )
        d = gen_classification(cfg)
    else:
        cfg = RegressSimConfig(
            n=args.n or 100, p=args.p or 9, noise_sd=args.noise_sd, correlation=args.correlation, seed=args.seed
        )
        d = gen_regression(cfg)
    header, rows = dataset_rows(d, "y")
    write_csv(args.out, header, rows)
    meta_path = args.out_meta or args.out.with_name(args.out.name + ".json")
    meta_path.write_text(json.dumps(d.metadata, indent=2) + "\n", encoding="utf-8")
    return 0


def _gen_options(args):
    keys = {
        "n": args.n, "p": args.p, "signal": args.signal, "correlation": args.correlation,
        "beta": tuple(args.beta) if args.beta else None,
        "noise_sd": args.noise_sd,
    }
    if args.generator == "class":
        keys.pop("noise_sd")
        if args.shuffle_columns:
            keys["shuffle_columns"] = True
    else:
        for name in ("signal", "beta"):
            keys.pop(name)
    return {k: v for k, v in keys.items() if v is not None}


def cmd_experiment(args):
    data = None
    if args.data is not None:
        x, names, y = read_csv(args.data, args.response, args.task)
        data = validate_dataset(x, names, y)
    cfg = ExperimentConfig(
        replications=args.replications,
        generator=args.generator,
        gen_options=_gen_options(args) if args.generator else {},
        data=data,
        train_fraction=args.train_fraction,
        k=args.k,
        cv_k=tuple(args.cv_k or ()),
        folds=args.folds,
        metric=args.metric,
        task=args.task,
        base_seed=args.seed,
        mode=args.mode,
    )
    result = run_experiment(cfg)
    write_csv(args.out, result.header, result.table())
    if args.out_summary is not None:
        header, rows = result.summary_table()
        write_csv(args.out_summary, header, rows)
    if result.failure is not None:
        print(f"error: replicate {len(result.rows) + 1} failed: {result.failure}", file=sys.stderr)
        return 1
    return 0


def cmd_benchmark(args):
    rows = run_benchmark(args.n, args.p_list, args.task, args.k, args.seed, args.metric, args.repeats)
    header = ["n", "p", "evaluations", "seconds"]
    table = [[r[h] for h in header] for r in rows]
    if args.out is None:
        print(",".join(header))
        for row in table:
            print(",".join(str(v) for v in row))
    else:
        write_csv(args.out, header, table)
    return 0


def cmd_cv_k(args):
    x, names, y = read_csv(args.train, args.response, args.task)
    train = validate_dataset(x, names, y)
    base = KnnConfig(args.k, args.metric, args.task)
    losses = k_fold_losses(train, args.k_list, args.folds, base, args.seed)
    best = best_of(args.task, list(losses.items()))[0]
    print(best)
    if args.out_json is not None:
        payload = {
            "best_k": best,
            "loss": args.task.loss_name,
            "mean_fold_loss": {str(k): v for k, v in losses.items()},
            "folds": args.folds,
            "seed": args.seed,
        }
        args.out_json.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (KnnSelectError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
