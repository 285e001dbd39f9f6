"""Command-line entry points: gin-export and planetoid-convert."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .data import DatasetError
from .planetoid import PlanetoidError, convert_planetoid
from .train import TrainSpec, TrainingDiverged, train_and_export


def main_export(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gin-export",
        description="Train a GIN classifier and export encoder embeddings")
    parser.add_argument("--dataset", required=True, help="bundled-layout dataset directory")
    parser.add_argument("--name", help="dataset name (default: directory basename)")
    parser.add_argument("--out", required=True, help="embeddings CSV path")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epochs", type=int, default=TrainSpec.epochs)
    args = parser.parse_args(argv)
    name = args.name or Path(args.dataset).name
    spec = TrainSpec(epochs=args.epochs)
    try:
        result = train_and_export(args.dataset, name, args.out, seed=args.seed, spec=spec)
    except TrainingDiverged as exc:
        print(f"gin-export: training diverged, no outputs written: {exc}", file=sys.stderr)
        return 3
    except (DatasetError, OSError) as exc:
        print(f"gin-export: {exc}", file=sys.stderr)
        return 2
    print(f"{name} seed {args.seed}: test accuracy {result.test_accuracy:.4f}, "
          f"embeddings -> {args.out}")
    return 0


def main_convert(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="planetoid-convert",
        description="Convert a pickled citation dataset to the node-task layout")
    parser.add_argument("--name", required=True, choices=["Cora", "CiteSeer", "PubMed"])
    parser.add_argument("--input", required=True, help="directory with ind.<name>.* files")
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)
    try:
        summary = convert_planetoid(args.input, args.name, args.out)
    except (PlanetoidError, OSError) as exc:
        print(f"planetoid-convert: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(summary))
    return 0


if __name__ == "__main__":
    sys.exit(main_export())
