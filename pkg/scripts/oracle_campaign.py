#!/usr/bin/env python3
"""Cross-check the dialog engine against the doc-level reference model
over many generated collections, and report throughput.

    python3 scripts/oracle_campaign.py --collections 5000 --actions 8

Exits nonzero on the first divergence, printing the offending seed and
action so it can be replayed in isolation.
"""
import argparse
import json
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracle import OracleDialog, OracleReject  # noqa: E402

from dlgen import dialog  # noqa: E402
from dlgen.datagen import generate_actions, generate_dataset  # noqa: E402
from dlgen.errors import EngineError  # noqa: E402
from dlgen.taxonomy import load_dataset  # noqa: E402


def run_one(seed: int, max_actions: int) -> int:
    rng = random.Random(seed)
    raw = generate_dataset(rng)
    ds = load_dataset(json.dumps(raw))
    mode = rng.choice(dialog.MODES)
    state = dialog.new_dialog(ds, mode)
    model = OracleDialog(raw, mode)
    for step, (action, arg) in enumerate(
        generate_actions(rng, raw, rng.randint(1, max_actions))
    ):
        engine_err = oracle_err = None
        try:
            state, _ = dialog.apply_action(state, action, arg)
        except EngineError as exc:
            engine_err = exc.code
        try:
            verdict = model.apply(action, arg)
        except OracleReject as exc:
            oracle_err = exc.code
            verdict = None
        where = f"seed={seed} mode={mode} step={step} action={action} arg={arg!r}"
        if verdict != "unknown" and engine_err != oracle_err:
            raise SystemExit(f"DIVERGED ({where}): "
                             f"engine={engine_err} oracle={oracle_err}")
        if dialog.remaining_doc_ids(state) != model.remaining():
            raise SystemExit(f"DIVERGED ({where}): remaining sets differ")
    return len(ds.documents)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--collections", type=int, default=1000)
    parser.add_argument("--actions", type=int, default=8,
                        help="max actions per generated session")
    parser.add_argument("--seed", type=int, default=0,
                        help="first seed; campaign covers seed..seed+collections-1")
    args = parser.parse_args()

    started = time.monotonic()
    docs = 0
    for seed in range(args.seed, args.seed + args.collections):
        docs += run_one(seed, args.actions)
    elapsed = time.monotonic() - started
    print(f"agreed on {args.collections} collections "
          f"({docs} documents total) in {elapsed:.1f}s "
          f"({args.collections / elapsed:.0f} collections/s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
