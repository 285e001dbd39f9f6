"""Command-line surface.

Exit codes: 0 success, 1 usage error, 2 data/IO error, 3 resource-cap
error. Every artifact embeds the tool version and the full configuration,
and identical configurations produce byte-identical artifacts at any
thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .alignment import PairSampling, alignment_report
from .errors import DataError, ResourceCapError
from .exact import convergent_validity_report, is_isomorphic, iso_partition
from .fixtures import emit_fixture_graphs
from .ingest import (load_embeddings, load_node_task, load_tudataset,
                     read_graph_file)
from .kwl import k_wl_refine
from .model import Dataset, Partition, label_partition, GRAPH_LEVEL
from .partitions import (adversarial_relabel, ami_report, equivalence_table,
                         majority_vote_accuracy, AMI_NORMALIZATIONS)
from .refine import wl_partition, wl_refine
from .trust import identifiability, wl_sensitivity

OUT_DIR_ENV = "WLAUDIT_OUT"


@dataclass(frozen=True)
class AuditConfig:
    """Every knob of a CLI run; serialized into each artifact."""

    command: str
    dataset_format: Optional[str] = None
    dataset_dir: Optional[str] = None
    dataset_name: Optional[str] = None
    graph_files: tuple[str, ...] = ()
    embeddings: Optional[str] = None
    t: int = 3
    k: int = 3
    iso_node_cap: int = 512
    iso_cap_fallback: bool = False
    ged_node_cap: int = 8
    kwl_node_cap: Optional[int] = None
    pair_budget: Optional[int] = None
    sample_size: Optional[int] = None
    ami_normalization: str = "arithmetic"
    mi_base: float = 2.0
    mi_bins: int = 20
    bin_range: str = "fixed"
    sortedcount_only: bool = False
    dump_colors: bool = False
    dedupe: bool = False
    initial_colors: str = "auto"
    sensitivity_graph: int = 0
    group_names: tuple[str, ...] = ()
    include_group_color: bool = False
    seed: int = 0
    threads: int = 1
    out_dir: str = "wlaudit-out"
    formats: tuple[str, ...] = ("csv",)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _config_blob(cfg: AuditConfig) -> str:
    return json.dumps(asdict(cfg), sort_keys=True, separators=(",", ":"))


def _write_csv(path: Path, cfg: AuditConfig, columns: Sequence[str],
               rows: Sequence[Sequence]) -> None:
    lines = [f"# wlaudit {__version__}", f"# config {_config_blob(cfg)}"]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path: Path, cfg: AuditConfig, results: dict) -> None:
    doc = {"tool": "wlaudit", "version": __version__,
           "config": asdict(cfg), "results": results}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_markdown(path: Path, cfg: AuditConfig, columns: Sequence[str],
                    rows: Sequence[Sequence]) -> None:
    lines = [f"<!-- wlaudit {__version__} -->", f"<!-- config {_config_blob(cfg)} -->"]
    lines.append("| " + " | ".join(columns) + " |")
    lines.append("|" + "|".join("---" for _ in columns) + "|")
    for row in rows:
        lines.append("| " + " | ".join(str(x) for x in row) + " |")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_dataset(cfg: AuditConfig) -> Dataset:
    if cfg.dataset_dir is None:
        raise DataError("this command needs --dir")
    if cfg.dataset_format == "tudataset":
        name = cfg.dataset_name or Path(cfg.dataset_dir).name
        return load_tudataset(cfg.dataset_dir, name, dedupe=cfg.dedupe,
                              initial_colors=cfg.initial_colors)
    if cfg.dataset_format == "nodetask":
        return load_node_task(cfg.dataset_dir, name=cfg.dataset_name, dedupe=cfg.dedupe)
    raise DataError(f"unknown dataset format {cfg.dataset_format!r}")


def _out_dir(cfg: AuditConfig) -> Path:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_partitions(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    table = equivalence_table(ds, t_max=cfg.t, node_cap=cfg.iso_node_cap,
                              threads=cfg.threads, sortedcount_only=cfg.sortedcount_only,
                              cap_fallback=cfg.iso_cap_fallback)
    if cfg.dump_colors:
        history = wl_refine(ds, t_max=cfg.t)
        rows = []
        for g in range(len(ds.graphs)):
            for t in range(history.iterations + 1):
                for node, color in enumerate(history.graph_colors(g, t)):
                    rows.append([g, node, t, int(color)])
        _write_csv(_out_dir(cfg) / "colors.csv", cfg,
                   ["graph_id", "node_id", "t", "color"], rows)
    columns = ["dataset", "instances", "avg_nodes_per_graph",
               "label_classes", "label_singletons",
               "iso_classes", "iso_singletons", "iso_method", "iso_heuristic_merges"]
    row = [table.dataset_name, table.instances, f"{table.avg_nodes_per_graph:.2f}",
           table.label_classes if table.label_classes is not None else "",
           table.label_singletons if table.label_singletons is not None else "",
           table.iso_classes, table.iso_singletons, table.iso_method,
           table.iso_heuristic_merges]
    for t in range(1, cfg.t + 1):
        columns += [f"wl{t}_classes", f"wl{t}_singletons"]
        row += [table.wl_classes[t - 1], table.wl_singletons[t - 1]]
    out = _out_dir(cfg)
    if "csv" in cfg.formats:
        _write_csv(out / "partitions.csv", cfg, columns, [row])
    if "md" in cfg.formats:
        _write_markdown(out / "partitions.md", cfg, columns, [row])
    if "json" in cfg.formats:
        _write_json(out / "partitions.json", cfg,
                    {c: (None if v == "" else v) for c, v in zip(columns, row)})
    print(f"wrote partition statistics for {ds.name} to {out}")
    return 0


def _cmd_ami(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    matrix = ami_report(ds, t=cfg.t, average=cfg.ami_normalization,
                        node_cap=cfg.iso_node_cap, threads=cfg.threads,
                        cap_fallback=cfg.iso_cap_fallback)
    columns = ["partition"] + list(matrix.names)
    rows = []
    for i, name in enumerate(matrix.names):
        rows.append([name] + [f"{v:.6f}" for v in matrix.values[i]])
    out = _out_dir(cfg)
    if "csv" in cfg.formats:
        _write_csv(out / "ami.csv", cfg, columns, rows)
    if "json" in cfg.formats:
        _write_json(out / "ami.json", cfg, {
            "names": list(matrix.names),
            "values": [list(r) for r in matrix.values],
            "degenerate": [list(r) for r in matrix.degenerate],
        })
    print(f"wrote AMI matrix for {ds.name} to {out}")
    return 0


def _cmd_majority(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    labels = label_partition(ds)
    history = wl_refine(ds, t_max=cfg.t)
    wl_part = wl_partition(history, ds, cfg.t, cfg.sortedcount_only)
    if ds.level == GRAPH_LEVEL:
        iso = iso_partition(ds, node_cap=cfg.iso_node_cap, threads=cfg.threads,
                            cap_fallback=cfg.iso_cap_fallback)
    else:
        from .exact import node_duplicate_partition
        iso = node_duplicate_partition(ds.graphs[0])
    acc_iso = majority_vote_accuracy(iso, labels)
    acc_wl = majority_vote_accuracy(wl_part, labels)
    out = _out_dir(cfg)
    _write_csv(out / "majority.csv", cfg,
               ["dataset", "accuracy_iso", f"accuracy_wl{cfg.t}"],
               [[ds.name, f"{acc_iso:.2f}", f"{acc_wl:.2f}"]])
    print(f"{ds.name}: lookup accuracy {acc_iso:.2f} (isomorphism) / "
          f"{acc_wl:.2f} (refinement t={cfg.t})")
    return 0


def _cmd_align(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    embeddings = load_embeddings(cfg.embeddings) if cfg.embeddings else None
    sampling = None
    if cfg.sample_size is not None:
        sampling = PairSampling("uniform", size=cfg.sample_size, seed=cfg.seed)
    study = alignment_report(ds, embeddings=embeddings, t=cfg.t, sampling=sampling,
                             bins=cfg.mi_bins, mi_base=cfg.mi_base,
                             bin_range=cfg.bin_range, threads=cfg.threads,
                             keep_pairs="csv" in cfg.formats)
    out = _out_dir(cfg)
    _write_json(out / "align.json", cfg, study.to_json_dict())
    if "csv" in cfg.formats and study.pair_rows is not None:
        rows = [[i, j, f"{k:.9f}", "" if e is None else f"{e:.9f}", int(match)]
                for i, j, k, e, match in study.pair_rows]
        _write_csv(out / "align_pairs.csv", cfg,
                   ["graph_a", "graph_b", "kernel_cosine", "embedding_cosine", "label_match"],
                   rows)
    msg = f"{ds.name}: kernel MI {study.kernel_mi:.4f}"
    if study.embedding_mi is not None:
        msg += f", embedding MI {study.embedding_mi:.4f}"
    print(msg + f" over {study.num_pairs} pairs")
    return 0


def _cmd_trust(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    names = {}
    for spec in cfg.group_names:
        gid, _, label = spec.partition("=")
        if not label:
            raise DataError(f"--group-name needs id=name, got {spec!r}")
        names[int(gid)] = label
    report = identifiability(ds, t=cfg.t, group_names=names or None,
                             include_group_color=cfg.include_group_color)
    rows = [[report.dataset_name, report.overall.group, report.overall.count,
             report.overall.identifiable, f"{100 * report.overall.fraction:.2f}"]]
    for g in report.by_group:
        rows.append([report.dataset_name, g.group, g.count, g.identifiable,
                     f"{100 * g.fraction:.2f}"])
    out = _out_dir(cfg)
    _write_csv(out / "trust.csv", cfg,
               ["dataset", "group", "count", "identifiable", "percentage"], rows)
    print(f"wrote identifiability report for {ds.name} to {out}")
    return 0


def _cmd_sensitivity(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    g = ds.graphs[cfg.sensitivity_graph] if ds.level == GRAPH_LEVEL else ds.graphs[0]
    embeddings = load_embeddings(cfg.embeddings) if cfg.embeddings else None
    report = wl_sensitivity(g, t=cfg.t, budget=cfg.pair_budget, seed=cfg.seed,
                            embeddings=embeddings)
    out = _out_dir(cfg)
    _write_json(out / "sensitivity.json", cfg, {
        "note": "empirical lower bound over sampled single-edge edits",
        "iterations": report.t,
        "seed": report.seed,
        "edits": [list(e) for e in report.edits],
        "signature_changed": list(report.signature_changed),
        "changed_fraction": report.changed_fraction,
        "l1_distances": list(report.l1_distances) if report.l1_distances else None,
        "max_l1": report.max_l1,
        "missing_embeddings": list(report.missing_embeddings),
    })
    print(f"signature changed for {report.changed_fraction:.2%} of "
          f"{len(report.edits)} single-edge edits")
    return 0


def _cmd_pairs(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    if ds.level != GRAPH_LEVEL:
        raise DataError("pair listing needs a graph-level dataset")
    history = wl_refine(ds, t_max=cfg.t)
    part = wl_partition(history, ds, cfg.t, cfg.sortedcount_only)
    rows = []
    for members in part.members():
        for a_idx in range(len(members)):
            for b_idx in range(a_idx + 1, len(members)):
                a, b = members[a_idx], members[b_idx]
                cert = is_isomorphic(ds.graphs[a], ds.graphs[b], cfg.iso_node_cap)
                rows.append([a, b, "inconclusive",
                             "isomorphic" if cert.isomorphic else "non-isomorphic"])
    rows.sort(key=lambda r: (r[0], r[1]))
    out = _out_dir(cfg)
    _write_csv(out / "pairs.csv", cfg,
               ["graph_a", "graph_b", "wl_verdict", "exact_verdict"], rows)
    non_iso = sum(1 for r in rows if r[3] == "non-isomorphic")
    print(f"{len(rows)} refinement-inconclusive pairs at t={cfg.t}; "
          f"{non_iso} are non-isomorphic")
    return 0


def _cmd_ged(cfg: AuditConfig) -> int:
    graphs = [read_graph_file(p) for p in cfg.graph_files]
    if len(graphs) < 2:
        raise DataError("need at least two graph files")
    report = convergent_validity_report(graphs, ged_node_cap=cfg.ged_node_cap)
    rows = [[p.graph_a, p.graph_b, p.edit_distance, str(p.wl_distinguished).lower()]
            for p in report.pairs]
    out = _out_dir(cfg)
    _write_csv(out / "ged.csv", cfg,
               ["graph_a", "graph_b", "edit_distance", "wl_distinguished"], rows)
    inv_rows = [[a1, b1, a2, b2] for (a1, b1), (a2, b2) in report.inversions]
    _write_csv(out / "ged_inversions.csv", cfg,
               ["distinguished_a", "distinguished_b", "indistinguished_a", "indistinguished_b"],
               inv_rows)
    print(f"{len(report.pairs)} pairs, {len(report.inversions)} metric inversions")
    return 0


def _cmd_adversarial(cfg: AuditConfig) -> int:
    ds = _load_dataset(cfg)
    history = wl_refine(ds, t_max=cfg.t)
    part = wl_partition(history, ds, cfg.t, cfg.sortedcount_only)
    relabeling = adversarial_relabel(ds, part, node_cap=cfg.iso_node_cap,
                                     threads=cfg.threads,
                                     cap_fallback=cfg.iso_cap_fallback)
    accuracy = majority_vote_accuracy(
        part, Partition.from_assignments(relabeling.labels))
    out = _out_dir(cfg)
    _write_csv(out / "adversarial_labels.csv", cfg, ["instance", "label"],
               [[i, l] for i, l in enumerate(relabeling.labels)])
    _write_json(out / "adversarial.json", cfg, {
        "classes": part.num_classes,
        "instances": ds.num_instances,
        "lookup_accuracy_percent": accuracy,
        "duplicate_flagged_classes": list(relabeling.duplicate_classes),
    })
    print(f"adversarial lookup accuracy {accuracy:.2f}% "
          f"({part.num_classes} classes / {ds.num_instances} instances)")
    return 0


def _cmd_kwl(cfg: AuditConfig) -> int:
    g1 = read_graph_file(cfg.graph_files[0])
    g2 = read_graph_file(cfg.graph_files[1])
    distinguishes, used = k_wl_refine(g1, g2, cfg.k, node_cap=cfg.kwl_node_cap)
    out = _out_dir(cfg)
    _write_json(out / "kwl.json", cfg, {
        "k": cfg.k,
        "distinguishes": distinguishes,
        "iterations_used": used,
    })
    if distinguishes:
        print(f"{cfg.k}-WL: distinguished at iteration {used}")
    else:
        print(f"{cfg.k}-WL: not distinguished (stable after {used} iterations)")
    return 0


def _cmd_emit_fixtures(cfg: AuditConfig) -> int:
    paths = emit_fixture_graphs(cfg.out_dir)
    print(f"wrote {len(paths)} fixture graphs to {cfg.out_dir}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="dataset_format", default="tudataset",
                   choices=["tudataset", "nodetask"],
                   help="on-disk dataset layout (default: tudataset)")
    p.add_argument("--dir", dest="dataset_dir", help="dataset directory")
    p.add_argument("--name", dest="dataset_name",
                   help="dataset name (default: directory basename)")
    p.add_argument("--dedupe", action="store_true",
                   help="downgrade duplicate-edge errors to warnings")
    p.add_argument("--initial-colors", default="auto",
                   choices=["auto", "labels", "attributes", "degree", "uniform"],
                   help="what seeds iteration-0 colors (default: auto)")


def _add_common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", dest="out_dir",
                   default=os.environ.get(OUT_DIR_ENV, "wlaudit-out"),
                   help=f"output directory (default: ${OUT_DIR_ENV} or wlaudit-out)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads; output is identical at any count "
                        "(default: available cores)")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default: 0)")
    p.add_argument("--formats", default="csv",
                   help="comma-separated artifact formats: csv,md,json (default: csv)")
    p.add_argument("--iso-cap", dest="iso_node_cap", type=int, default=512,
                   help="node cap for exact isomorphism search (default: 512)")
    p.add_argument("--iso-cap-fallback", action="store_true",
                   help="beyond the cap, merge by refinement verdict instead of "
                        "failing (merges are counted as heuristic)")
    p.add_argument("--sortedcount-only", action="store_true",
                   help="compare sorted count vectors instead of full histograms")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wlaudit",
                     description="Color-refinement expressiveness audits for "
                                 "graph ML benchmarks")
    parser.add_argument("--version", action="version", version=f"wlaudit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("partitions", help="equivalence-class statistics table")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=3, help="refinement iterations (default: 3)")
    p.add_argument("--dump-colors", action="store_true",
                   help="also write per-node colors as colors.csv")

    p = sub.add_parser("ami", help="adjusted mutual information matrix")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=3, help="refinement iterations (default: 3)")
    p.add_argument("--ami-normalization", default="arithmetic",
                   choices=list(AMI_NORMALIZATIONS),
                   help="entropy normalization (default: arithmetic)")

    p = sub.add_parser("majority", help="majority-vote lookup accuracy bounds")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=3, help="refinement iterations (default: 3)")

    p = sub.add_parser("align", help="kernel vs. embedding similarity study")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=4, help="refinement iterations (default: 4)")
    p.add_argument("--embeddings", help="embeddings CSV (id,e0,...)")
    p.add_argument("--sample-size", type=int, default=None,
                   help="sample this many pairs instead of enumerating all")
    p.add_argument("--bins", dest="mi_bins", type=int, default=20,
                   help="similarity histogram bins (default: 20)")
    p.add_argument("--mi-base", type=float, default=2.0,
                   help="MI logarithm base (default: 2)")
    p.add_argument("--bin-range", default="fixed", choices=["fixed", "data"],
                   help="histogram range: theoretical or data-driven (default: fixed)")

    p = sub.add_parser("trust", help="per-group identifiability report")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=3, help="refinement iterations (default: 3)")
    p.add_argument("--group-name", dest="group_names", action="append", default=[],
                   metavar="ID=NAME", help="human-readable group names (repeatable)")
    p.add_argument("--include-group-color", action="store_true",
                   help="fold group membership into the initial colors "
                        "(excluded by default)")

    p = sub.add_parser("sensitivity", help="single-edge-edit sensitivity report")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=3, help="refinement iterations (default: 3)")
    p.add_argument("--graph", dest="sensitivity_graph", type=int, default=0,
                   help="graph index to perturb (default: 0)")
    p.add_argument("--budget", dest="pair_budget", type=int, default=None,
                   help="sample this many edits (default: all)")
    p.add_argument("--embeddings", help="embeddings CSV for original+edits")

    p = sub.add_parser("pairs", help="refinement-inconclusive pairs with exact verdicts")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=3, help="refinement iterations (default: 3)")

    p = sub.add_parser("ged", help="edit distance vs. refinement verdict over graph files")
    _add_common_args(p)
    p.add_argument("--graphs", dest="graph_files", nargs="+", required=True,
                   help="single-graph text files")
    p.add_argument("--ged-cap", dest="ged_node_cap", type=int, default=8,
                   help="node cap for exhaustive edit distance (default: 8)")

    p = sub.add_parser("adversarial", help="relabel instances to defeat refinement lookup")
    _add_dataset_args(p)
    _add_common_args(p)
    p.add_argument("--t", type=int, default=3, help="refinement iterations (default: 3)")

    p = sub.add_parser("kwl", help="pairwise k-WL check on two graph files")
    _add_common_args(p)
    p.add_argument("--k", type=int, default=3, help="tuple order (default: 3)")
    p.add_argument("--pair", dest="graph_files", nargs=2, required=True,
                   metavar=("G1", "G2"), help="two single-graph text files")
    p.add_argument("--node-cap", dest="kwl_node_cap", type=int, default=None,
                   help="override the per-k node cap")

    p = sub.add_parser("emit-fixtures", help="write the four demonstration graphs")
    p.add_argument("--out", dest="out_dir",
                   default=os.environ.get(OUT_DIR_ENV, "wlaudit-out"),
                   help="output directory")

    return parser


_HANDLERS = {
    "partitions": _cmd_partitions,
    "ami": _cmd_ami,
    "majority": _cmd_majority,
    "align": _cmd_align,
    "trust": _cmd_trust,
    "sensitivity": _cmd_sensitivity,
    "pairs": _cmd_pairs,
    "ged": _cmd_ged,
    "adversarial": _cmd_adversarial,
    "kwl": _cmd_kwl,
    "emit-fixtures": _cmd_emit_fixtures,
}


def _config_from_args(args: argparse.Namespace) -> AuditConfig:
    defaults = AuditConfig(command=args.command)
    values = {}
    for field_name in AuditConfig.__dataclass_fields__:
        if hasattr(args, field_name):
            values[field_name] = getattr(args, field_name)
        else:
            values[field_name] = getattr(defaults, field_name)
    values["command"] = args.command
    if hasattr(args, "formats") and isinstance(args.formats, str):
        values["formats"] = tuple(args.formats.split(","))
    if hasattr(args, "graph_files") and args.graph_files:
        values["graph_files"] = tuple(args.graph_files)
    if hasattr(args, "group_names"):
        values["group_names"] = tuple(args.group_names)
    return AuditConfig(**values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = _config_from_args(args)
    try:
        return _HANDLERS[cfg.command](cfg)
    except ResourceCapError as exc:
        print(f"wlaudit: resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (DataError, OSError) as exc:
        print(f"wlaudit: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
