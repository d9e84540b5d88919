"""Train the shipped date filter on the 70% split of the labeled set and
report held-out precision against the unfiltered grammar."""

import argparse
from pathlib import Path

from lexscan.dates import (TrainConfig, filter_candidates, precision, read_labeled_csv, split_labeled,
                           train_date_filter)


def main(argv=None):
    cfg = TrainConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--labels", type=Path, default=Path("src/lexscan/data/date_filter_labels.csv"))
    ap.add_argument("--out", type=Path, default=Path("src/lexscan/data/models/date_filter.json"))
    ap.add_argument("--epochs", type=int, default=cfg.epochs)
    ap.add_argument("--lr", type=float, default=cfg.learning_rate)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    args = ap.parse_args(argv)

    labeled = read_labeled_csv(args.labels.read_text(encoding="utf-8"))
    train, held = split_labeled(labeled, cfg.holdout_fraction, args.seed)
    history = []
    model = train_date_filter(train, epochs=args.epochs, learning_rate=args.lr, history=history)
    args.out.write_text(model.to_json() + "\n", encoding="utf-8")

    truth = {id(c): label for c, label in held}
    kept = filter_candidates([c for c, _ in held], model)
    raw_p = precision([label for _, label in held])
    kept_p = precision([truth[id(c)] for c in kept])
    recall = sum(truth[id(c)] for c in kept) / max(1, sum(label for _, label in held))
    print(f"train={len(train)} held_out={len(held)} loss {history[0]:.4f} -> {history[-1]:.4f}")
    print(f"held-out precision raw={raw_p:.3f} filtered={kept_p:.3f} recall={recall:.3f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
