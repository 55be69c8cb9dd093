#!/usr/bin/env python3
"""Write CNN/DailyMail splits as JSONL files that `newssum` and the
acceptance suite can read (train.jsonl, validation.jsonl, test.jsonl).

Requires the `datasets` package and access to the Hugging Face hub.
"""

import argparse
import json
import pathlib


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir", type=pathlib.Path)
    parser.add_argument("--version", default="3.0.0")
    parser.add_argument("--train-limit", type=int, default=2000,
                        help="rows to keep from the training split (0 = all)")
    args = parser.parse_args()

    from datasets import load_dataset

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for split in ("train", "validation", "test"):
        ds = load_dataset("cnn_dailymail", args.version, split=split)
        if split == "train" and args.train_limit:
            ds = ds.select(range(min(args.train_limit, len(ds))))
        path = args.out_dir / f"{split}.jsonl"
        with path.open("w", encoding="utf-8") as fh:
            for row in ds:
                fh.write(json.dumps({"id": row["id"], "article": row["article"],
                                     "highlights": row["highlights"]}) + "\n")
        print(f"{path}: {len(ds)} rows")


if __name__ == "__main__":
    main()
