"""Experiment harness: spec files, single runs, method comparisons, sweeps, feature dumps.

Spec files are INI documents (see ``configs/acceptance.ini``)::

    [experiment]   seeds, test_fraction, sdbw_layer, out
    [dataset]      classes, dims, per_class, center_scale, spread, seed (optional)
    [stack]        encoder_dims, d_z, projector_dims, d_v
    [pretrain]     epochs, tau, eta, batch_size, noise_sigma, scale_lo, scale_hi, dropout_p
    [method.NAME]  method, N, alpha, eta, tau, lambda, batch_size   (one or more)

When ``[dataset] seed`` is omitted each run seed also seeds its own dataset.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import json
import logging
import math
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .datagen import AugmentConfig, Dataset, make_blobs, split_indices
from .errors import CoinError, SpecValidationError
from .metrics import s_dbw
from .model import StackConfig, encode, load_checkpoint, project, save_checkpoint
from .pipeline import METHODS, PretrainConfig, RunReport, TrainConfig, run

log = logging.getLogger(__name__)

REPORT_COLUMNS = ["epoch", "stage", "train_loss", "train_acc", "test_acc", "scat", "dens_bw", "s_dbw"]
SWEEP_PARAMS = ("alpha", "tau", "N")
EXIT_OK, EXIT_RUNTIME, EXIT_VALIDATION = 0, 1, 2


@dataclass(frozen=True)
class DatasetSpec:
    classes: int = 8
    dims: int = 32
    per_class: int = 500
    center_scale: float = 1.0
    spread: float = 0.5
    seed: Optional[int] = None

    def build(self, run_seed: int) -> Dataset:
        seed = self.seed if self.seed is not None else run_seed
        return make_blobs(self.classes, self.dims, self.per_class, self.center_scale,
                          self.spread, np.random.default_rng(seed))


@dataclass
class ExperimentSpec:
    dataset: DatasetSpec
    stack: StackConfig
    pretrain: PretrainConfig
    methods: dict[str, TrainConfig]
    seeds: list[int]
    test_fraction: float = 0.3
    sdbw_layer: str = "z"
    out: Optional[str] = None
    source: Optional[str] = field(default=None, repr=False)


# -- spec parsing ------------------------------------------------------------------

def _get(section, key, conv, default, where):
    if key not in section:
        return default
    raw = section[key].strip()
    try:
        return conv(raw)
    except ValueError:
        raise SpecValidationError(f"{where}.{key}", f"cannot parse {raw!r}") from None


def _int_list(text):
    text = text.strip()
    return [int(t) for t in text.split(",") if t.strip()] if text else []


def _check_keys(section, allowed, where):
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise SpecValidationError(f"{where}.{unknown[0]}", "unknown field")


def parse_spec(text: str, source: Optional[str] = None) -> ExperimentSpec:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text, source=source or "<spec>")
    except configparser.Error as exc:
        raise SpecValidationError("spec", str(exc).splitlines()[0]) from None

    allowed_sections = {"experiment", "dataset", "stack", "pretrain"}
    for name in cp.sections():
        if name not in allowed_sections and not name.startswith("method."):
            raise SpecValidationError(name, "unknown section")

    ex = cp["experiment"] if cp.has_section("experiment") else {}
    _check_keys(ex, {"seeds", "test_fraction", "sdbw_layer", "out"}, "experiment")
    seeds = _get(ex, "seeds", _int_list, [0], "experiment")
    test_fraction = _get(ex, "test_fraction", float, 0.3, "experiment")
    sdbw_layer = _get(ex, "sdbw_layer", str, "z", "experiment")
    out = _get(ex, "out", str, None, "experiment")

    ds = cp["dataset"] if cp.has_section("dataset") else {}
    _check_keys(ds, {"classes", "dims", "per_class", "center_scale", "spread", "seed"}, "dataset")
    dataset = DatasetSpec(
        classes=_get(ds, "classes", int, 8, "dataset"),
        dims=_get(ds, "dims", int, 32, "dataset"),
        per_class=_get(ds, "per_class", int, 500, "dataset"),
        center_scale=_get(ds, "center_scale", float, 1.0, "dataset"),
        spread=_get(ds, "spread", float, 0.5, "dataset"),
        seed=_get(ds, "seed", int, None, "dataset"),
    )

    st = cp["stack"] if cp.has_section("stack") else {}
    _check_keys(st, {"encoder_dims", "d_z", "projector_dims", "d_v"}, "stack")
    stack_kw = dict(
        d_in=dataset.dims,
        encoder_dims=tuple(_get(st, "encoder_dims", _int_list, [64, 64], "stack")),
        d_z=_get(st, "d_z", int, 32, "stack"),
        projector_dims=tuple(_get(st, "projector_dims", _int_list, [32], "stack")),
        d_v=_get(st, "d_v", int, 16, "stack"),
        num_classes=dataset.classes,
    )

    pt = cp["pretrain"] if cp.has_section("pretrain") else {}
    _check_keys(pt, {"epochs", "tau", "eta", "batch_size", "noise_sigma", "scale_lo",
                     "scale_hi", "dropout_p"}, "pretrain")
    aug_kw = dict(
        noise_sigma=_get(pt, "noise_sigma", float, 0.2 * dataset.spread, "pretrain"),
        scale_range=(_get(pt, "scale_lo", float, 0.8, "pretrain"),
                     _get(pt, "scale_hi", float, 1.2, "pretrain")),
        dropout_p=_get(pt, "dropout_p", float, 0.1, "pretrain"),
    )
    pre_kw = dict(
        epochs=_get(pt, "epochs", int, 30, "pretrain"),
        tau=_get(pt, "tau", float, 0.5, "pretrain"),
        eta=_get(pt, "eta", float, 0.05, "pretrain"),
        batch_size=_get(pt, "batch_size", int, 128, "pretrain"),
    )

    methods = {}
    for name in cp.sections():
        if not name.startswith("method."):
            continue
        sec = cp[name]
        label = name.split(".", 1)[1]
        if not label:
            raise SpecValidationError(name, "method section needs a name")
        _check_keys(sec, {"method", "N", "alpha", "eta", "tau", "lambda", "batch_size"}, name)
        kind = _get(sec, "method", str, label.upper(), name).upper()
        if kind not in METHODS:
            raise SpecValidationError(f"{name}.method", f"must be one of {', '.join(METHODS)}")
        kw = dict(
            method=kind,
            N=_get(sec, "N", int, 100, name),
            alpha=_get(sec, "alpha", float, 0.7, name),
            eta=_get(sec, "eta", float, 0.05, name),
            tau=_get(sec, "tau", float, 0.3, name),
            lam=_get(sec, "lambda", float, 0.1, name),
            batch_size=_get(sec, "batch_size", int, 128, name),
        )
        methods[label] = _build(TrainConfig, kw, name)

    spec = ExperimentSpec(
        dataset=dataset,
        stack=_build(StackConfig, stack_kw, "stack"),
        pretrain=_build(PretrainConfig, {**pre_kw, "aug": _build(AugmentConfig, aug_kw, "pretrain")},
                        "pretrain"),
        methods=methods,
        seeds=seeds,
        test_fraction=test_fraction,
        sdbw_layer=sdbw_layer,
        out=out,
        source=source,
    )
    validate(spec)
    return spec


def _build(cls, kw, where):
    try:
        return cls(**kw)
    except (CoinError, ValueError) as exc:
        if isinstance(exc, SpecValidationError):
            raise
        msg = str(exc)
        key = next((k for k in kw if k in msg), None)
        alias = {"lam": "lambda", "scale_range": "scale_lo"}.get(key, key)
        raise SpecValidationError(f"{where}.{alias}" if alias else where, msg) from None


def validate(spec: ExperimentSpec) -> None:
    if not spec.seeds:
        raise SpecValidationError("experiment.seeds", "seed list must not be empty")
    if len(set(spec.seeds)) != len(spec.seeds):
        raise SpecValidationError("experiment.seeds", "duplicate seeds")
    if not 0 < spec.test_fraction < 1:
        raise SpecValidationError("experiment.test_fraction", "must be in (0, 1)")
    if spec.sdbw_layer not in ("z", "v"):
        raise SpecValidationError("experiment.sdbw_layer", "must be 'z' or 'v'")
    d = spec.dataset
    if d.classes < 2 or d.dims < 1 or d.per_class < 2 or d.spread <= 0 or d.center_scale < 0:
        raise SpecValidationError("dataset", "need classes >= 2, dims >= 1, per_class >= 2, spread > 0")
    p = spec.pretrain
    if p.epochs < 0:
        raise SpecValidationError("pretrain.epochs", "must be >= 0")
    if p.batch_size < 2:
        raise SpecValidationError("pretrain.batch_size", "must be >= 2")
    if p.tau <= 0 or p.eta <= 0:
        raise SpecValidationError("pretrain", "tau and eta must be > 0")
    if not spec.methods:
        raise SpecValidationError("method", "at least one [method.NAME] section is required")


def load_spec(path) -> ExperimentSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecValidationError("spec", f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text, str(path))


def with_seeds(spec: ExperimentSpec, seeds: Optional[list[int]]) -> ExperimentSpec:
    if seeds is None:
        return spec
    out = replace(spec, seeds=list(seeds))
    validate(out)
    return out


# -- execution -----------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _seed_job(args):
    spec, names, seed = args
    data = spec.dataset.build(seed)
    cache: dict = {}
    reports = []
    for name in names:
        cfg = replace(spec.methods[name], seed=seed)
        reports.append(run(cfg, spec.stack, spec.pretrain, data, spec.test_fraction,
                           spec.sdbw_layer, cache=cache))
    return seed, reports


def run_all(spec: ExperimentSpec, names: list[str], jobs: int = 1) -> dict[tuple[str, int], RunReport]:
    """Run every (method, seed) pair. Methods sharing a seed share pretraining.

    Results are keyed by (method name, seed) and independent of ``jobs``.
    """
    tasks = [(spec, names, seed) for seed in spec.seeds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_seed_job, tasks))
    else:
        results = [_seed_job(t) for t in tasks]
    out = {}
    for seed, reports in results:
        for name, rep in zip(names, reports):
            out[(name, seed)] = rep
    return out


def write_report_csv(report: RunReport, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for r in report.per_epoch:
            w.writerow([_fmt(getattr(r, c)) for c in REPORT_COLUMNS])


def read_report_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        r["epoch"] = int(r["epoch"])
        for c in REPORT_COLUMNS[2:]:
            r[c] = float(r[c])
    return rows


def summary_dict(report: RunReport, cfg: TrainConfig) -> dict:
    return {
        "method": report.method,
        "seed": report.seed,
        "N": cfg.N,
        "alpha": cfg.alpha,
        "init_epochs": cfg.init_epochs,
        "finetune_epochs": cfg.finetune_epochs,
        "final_test_acc": report.final_accuracy,
        "final_scat": report.final_sdbw.scat,
        "final_dens_bw": report.final_sdbw.dens_bw,
        "final_s_dbw": report.final_sdbw.score,
        "pretrained_s_dbw": report.pretrain_sdbw.score,
        "init_seconds": report.init_seconds,
        "finetune_seconds": report.finetune_seconds,
        "wall_time_seconds": report.wall_time_seconds,
    }


def write_run_outputs(spec: ExperimentSpec, name: str, report: RunReport, out_dir: Path) -> Path:
    run_dir = out_dir / name / f"seed-{report.seed}"
    run_dir.mkdir(parents=True, exist_ok=True)
    write_report_csv(report, run_dir / "report.csv")
    cfg = replace(spec.methods[name], seed=report.seed)
    (run_dir / "summary.json").write_text(json.dumps(summary_dict(report, cfg), indent=2) + "\n")
    save_checkpoint(report.params, spec.stack, run_dir / "final.coin-ckpt")
    return run_dir


def _mean_std(xs):
    xs = list(xs)
    mean = math.fsum(xs) / len(xs)
    std = statistics.stdev(xs) if len(xs) > 1 else 0.0
    return mean, std


def cmd_run(spec: ExperimentSpec, out_dir: Path, jobs: int = 1) -> dict:
    names = list(spec.methods)
    results = run_all(spec, names, jobs)
    for (name, _seed), rep in results.items():
        write_run_outputs(spec, name, rep, out_dir)
    return results


COMPARE_COLUMNS = ["method", "kind", "N", "alpha", "n_seeds", "acc_mean", "acc_std",
                   "s_dbw_mean", "s_dbw_std"]


def cmd_compare(spec: ExperimentSpec, out_dir: Path, jobs: int = 1) -> list[dict]:
    """One row per method: mean/stddev of final accuracy and S_Dbw across seeds.

    Stage timings go to ``compare_timing.json`` so that ``compare.csv`` stays
    byte-for-byte reproducible.
    """
    names = list(spec.methods)
    if len(names) < 2:
        raise SpecValidationError("method", "compare needs at least two [method.NAME] sections")
    Ns = {spec.methods[n].N for n in names}
    if len(Ns) != 1:
        raise SpecValidationError("method.N", f"all methods must share the same N, got {sorted(Ns)}")
    results = run_all(spec, names, jobs)
    rows, timing = [], {}
    for name in names:
        reps = [results[(name, s)] for s in spec.seeds]
        cfg = spec.methods[name]
        acc = _mean_std(r.final_accuracy for r in reps)
        sd = _mean_std(r.final_sdbw.score for r in reps)
        rows.append({"method": name, "kind": cfg.method, "N": cfg.N, "alpha": cfg.alpha,
                     "n_seeds": len(reps), "acc_mean": acc[0], "acc_std": acc[1],
                     "s_dbw_mean": sd[0], "s_dbw_std": sd[1]})
        init_t = _mean_std(r.init_seconds for r in reps)
        ft_t = _mean_std(r.finetune_seconds for r in reps)
        total_t = _mean_std(r.init_seconds + r.finetune_seconds for r in reps)
        timing[name] = {"init_seconds_mean": init_t[0], "init_seconds_std": init_t[1],
                        "finetune_seconds_mean": ft_t[0], "finetune_seconds_std": ft_t[1],
                        "train_seconds_mean": total_t[0], "train_seconds_std": total_t[1]}
        for s, r in zip(spec.seeds, reps):
            write_run_outputs(spec, name, r, out_dir / "runs")
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_table(out_dir / "compare.csv", COMPARE_COLUMNS, rows)
    (out_dir / "compare_timing.json").write_text(json.dumps(timing, indent=2) + "\n")
    return rows


SWEEP_COLUMNS = ["param", "value", "n_seeds", "acc_mean", "acc_std", "s_dbw_mean", "s_dbw_std", "is_best"]


def cmd_sweep(spec: ExperimentSpec, param: str, values: list, out_dir: Path,
              method: Optional[str] = None, jobs: int = 1) -> list[dict]:
    """Vary one hyperparameter of one method; one row per value, best row flagged.

    The best row is the highest mean accuracy; ties go to the earlier value.
    Per-run reports land in ``out_dir/runs/<method>@<param>=<value>/seed-S``.
    """
    if param not in SWEEP_PARAMS:
        raise SpecValidationError("sweep.param", f"must be one of {', '.join(SWEEP_PARAMS)}")
    if not values:
        raise SpecValidationError("sweep.values", "value list must not be empty")
    if method is None:
        method = next((n for n, c in spec.methods.items() if c.method == "COIN"), next(iter(spec.methods)))
    if method not in spec.methods:
        raise SpecValidationError("sweep.method", f"no [method.{method}] section")
    base = spec.methods[method]
    field_name = {"alpha": "alpha", "tau": "tau", "N": "N"}[param]
    variants = {}
    for v in values:
        try:
            variants[f"{method}@{param}={v}"] = replace(base, **{field_name: v})
        except CoinError as exc:
            raise SpecValidationError("sweep.values", f"{param}={v}: {exc}") from None
    sweep_spec = replace(spec, methods=variants)
    results = run_all(sweep_spec, list(variants), jobs)
    rows = []
    for (label, cfg), v in zip(variants.items(), values):
        reps = [results[(label, s)] for s in spec.seeds]
        acc = _mean_std(r.final_accuracy for r in reps)
        sd = _mean_std(r.final_sdbw.score for r in reps)
        rows.append({"param": param, "value": v, "n_seeds": len(reps), "acc_mean": acc[0],
                     "acc_std": acc[1], "s_dbw_mean": sd[0], "s_dbw_std": sd[1], "is_best": 0})
        for r in reps:
            write_run_outputs(sweep_spec, label, r, out_dir / "runs")
    best = max(range(len(rows)), key=lambda i: (rows[i]["acc_mean"], -i))
    rows[best]["is_best"] = 1
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_table(out_dir / f"sweep_{param}.csv", SWEEP_COLUMNS, rows)
    return rows


def _write_table(path, columns, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in columns])


def read_table(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def cmd_dump_features(checkpoint, spec: ExperimentSpec, layer: str, out_path, seed: Optional[int] = None,
                      split: str = "all") -> float:
    """Write the dataset's z or v features plus labels, and a trailing S_Dbw comment.

    ``split`` picks the rows: ``all``, or the ``train``/``test`` side of the
    split that a run with ``seed`` would use.
    """
    if layer not in ("z", "v"):
        raise SpecValidationError("layer", "must be 'z' or 'v'")
    if split not in ("all", "train", "test"):
        raise SpecValidationError("split", "must be all, train or test")
    params, stack = load_checkpoint(checkpoint)
    if stack.d_in != spec.dataset.dims or stack.num_classes != spec.dataset.classes:
        raise SpecValidationError(
            "checkpoint",
            f"checkpoint expects d_in={stack.d_in}, K={stack.num_classes}; dataset has "
            f"dims={spec.dataset.dims}, classes={spec.dataset.classes}",
        )
    seed = spec.seeds[0] if seed is None else seed
    data = spec.dataset.build(seed)
    if split != "all":
        tr, te = split_indices(data, spec.test_fraction, np.random.default_rng(seed))
        data = data.subset(te if split == "test" else tr)
    feats = encode(params, data.features)
    if layer == "v":
        feats = project(params, feats)
    score = s_dbw(feats, data.labels).score
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"{layer}{j}" for j in range(feats.shape[1])] + ["label"])
        for row, lab in zip(feats, data.labels):
            w.writerow([_fmt(x) for x in row] + [int(lab)])
        fh.write(f"# s_dbw={_fmt(score)}\n")
    return score


def read_feature_dump(path):
    """Returns (features, labels, s_dbw from the trailing comment)."""
    score = None
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    body = []
    for line in lines:
        if line.startswith("# s_dbw="):
            score = float(line.split("=", 1)[1])
        elif line and not line.startswith("#"):
            body.append(line)
    rows = list(csv.reader(body[1:]))
    feats = np.array([[float(x) for x in r[:-1]] for r in rows])
    labels = np.array([int(r[-1]) for r in rows])
    return feats, labels, score


# -- command line --------------------------------------------------------------------

def _seed_list(text):
    try:
        seeds = _int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("seed list must not be empty")
    return seeds


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coin", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out_required=False):
        sp.add_argument("--spec", required=True, help="INI experiment spec")
        sp.add_argument("--out", required=out_required, help="output directory (default: spec's experiment.out)")
        sp.add_argument("--seeds", type=_seed_list, help="comma list overriding experiment.seeds")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (one seed per task)")

    common(sub.add_parser("run", help="train every method section for every seed"))
    common(sub.add_parser("compare", help="compare methods under an equal epoch budget"))
    sw = sub.add_parser("sweep", help="sweep alpha, tau or N of one method")
    common(sw)
    sw.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    sw.add_argument("--values", required=True, help="comma list of values")
    sw.add_argument("--method", help="method section name (default: first COIN section)")
    dump = sub.add_parser("dump-features", help="write z or v features of a checkpoint")
    dump.add_argument("--spec", required=True)
    dump.add_argument("--checkpoint", required=True)
    dump.add_argument("--layer", choices=("z", "v"), default="z")
    dump.add_argument("--out", required=True, help="output CSV path")
    dump.add_argument("--seeds", type=_seed_list, help="first seed selects dataset and split")
    dump.add_argument("--split", choices=("all", "train", "test"), default="all")
    return p


def _out_dir(args, spec) -> Path:
    out = args.out or spec.out
    if not out:
        raise SpecValidationError("experiment.out", "no output directory (use --out)")
    return Path(out)


def _parse_values(param, text):
    conv = int if param == "N" else float
    try:
        return [conv(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise SpecValidationError("sweep.values", f"cannot parse {text!r}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        spec = with_seeds(load_spec(args.spec), args.seeds)
        if args.command == "dump-features":
            score = cmd_dump_features(args.checkpoint, spec, args.layer, args.out, split=args.split)
            print(f"wrote {args.out} (s_dbw={score:.6f})")
            return EXIT_OK
        if getattr(args, "jobs", 1) < 1:
            raise SpecValidationError("jobs", "must be >= 1")
        out = _out_dir(args, spec)
        if args.command == "run":
            results = cmd_run(spec, out, args.jobs)
            for (name, seed), rep in results.items():
                print(f"{name} seed={seed} acc={rep.final_accuracy:.4f} s_dbw={rep.final_sdbw.score:.4f}")
        elif args.command == "compare":
            for r in cmd_compare(spec, out, args.jobs):
                print(f"{r['method']:>12}  acc={r['acc_mean']:.4f}±{r['acc_std']:.4f}  "
                      f"s_dbw={r['s_dbw_mean']:.4f}±{r['s_dbw_std']:.4f}")
        elif args.command == "sweep":
            values = _parse_values(args.param, args.values)
            for r in cmd_sweep(spec, args.param, values, out, args.method, args.jobs):
                mark = "  <- best" if r["is_best"] else ""
                print(f"{args.param}={r['value']}  acc={r['acc_mean']:.4f}  s_dbw={r['s_dbw_mean']:.4f}{mark}")
    except SpecValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, CoinError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
