"""Per-epoch accuracy and S_Dbw of one COIN run, showing the init stage effect.

    python3 scripts/enrichment_curve.py --spec configs/acceptance.ini --seed 0

During the init stage the classifier is frozen at its random initialization, so
its accuracy stays near chance while S_Dbw on the test features keeps falling.
Once fine-tuning starts, accuracy jumps. Pass ``--csv`` to keep the curve.
"""
import argparse
import csv
from dataclasses import replace

from coin.expcli import load_spec
from coin.pipeline import run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", default="configs/acceptance.ini")
    ap.add_argument("--method", default="COIN", help="method section of the spec")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", help="optional output path for the curve")
    args = ap.parse_args()

    spec = load_spec(args.spec)
    cfg = replace(spec.methods[args.method], seed=args.seed)
    rep = run(cfg, spec.stack, spec.pretrain, spec.dataset.build(args.seed),
              spec.test_fraction, spec.sdbw_layer)

    print(f"pretrained features: S_Dbw = {rep.pretrain_sdbw.score:.4f}")
    print(f"{'epoch':>5}  {'stage':<8}  {'test_acc':>8}  {'s_dbw':>7}")
    for r in rep.per_epoch:
        print(f"{r.epoch:>5}  {r.stage:<8}  {r.test_acc:>8.4f}  {r.s_dbw:>7.4f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["epoch", "stage", "test_acc", "s_dbw"])
            for r in rep.per_epoch:
                w.writerow([r.epoch, r.stage, repr(r.test_acc), repr(r.s_dbw)])


if __name__ == "__main__":
    main()
