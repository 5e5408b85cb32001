"""Command-line surface and persistence: CSV series, SVG charts, manifest.

Every output is byte-deterministic for a given invocation (the manifest's
duration fields are the one timing-dependent exception), so reruns can be
verified by hashing.  The manifest records every knob needed to reproduce a
run: full config, overlap policy, derived per-trial seeds, output paths.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import ConfigError, InvariantError
from .sim_runner import RunConfig, RunResult, derive_trial_seed, mean_series, run_single
from .svg_chart import emit_svg
from .tie_strength import OverlapPolicy

CSV_HEADER = "t,n_nodes,n_edges_base,n_edges_strong,count_ge_k,lcc_size"

_LIST_FLAGS = {"m", "epsilon"}
_INT_FLAGS = {"k", "max_nodes", "seed", "snapshot_every", "trials", "smoothing_window"}
_BOOL_FLAGS = {"oracle_check", "include_endpoints", "emit_svg"}
_STR_FLAGS = {"out_dir"}


@dataclass(frozen=True)
class CliInvocation:
    """Parsed command line: the run configs plus output options."""

    configs: tuple[RunConfig, ...]
    out_dir: Path
    emit_svg: bool


def parse_cli(argv: Sequence[str] | None = None) -> CliInvocation:
    """Parse flags (and an optional key=value config file) into run configs.

    ``--m`` and ``--epsilon`` accept comma-separated lists; the cross
    product defines the configs.  A missing ``--k`` defaults per epsilon.
    Command-line values override config-file values, which override the
    built-in defaults.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    config_path = _peek_config_path(args)
    if config_path is not None:
        try:
            parser.set_defaults(**_load_config_file(config_path))
        except OSError as exc:
            parser.error(f"cannot read config file: {exc}")
        except (ConfigError, ValueError) as exc:
            parser.error(str(exc))
    ns = parser.parse_args(args)

    policy = OverlapPolicy(exclude_endpoints=not ns.include_endpoints)
    configs = []
    try:
        for m in ns.m:
            for eps in ns.epsilon:
                configs.append(RunConfig(
                    m=m,
                    epsilon=eps,
                    max_nodes=ns.max_nodes,
                    k=ns.k,
                    seed=ns.seed,
                    snapshot_every=ns.snapshot_every,
                    trials=ns.trials,
                    oracle_check=ns.oracle_check,
                    policy=policy,
                    smoothing_window=ns.smoothing_window,
                ))
    except ConfigError as exc:
        parser.error(str(exc))
    return CliInvocation(configs=tuple(configs), out_dir=Path(ns.out_dir),
                         emit_svg=ns.emit_svg)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strongties",
        description="Grow preferential-attachment graphs and track the "
                    "strong-tie subgraph's metric series.",
    )
    parser.add_argument("--m", type=_int_list, default=[10, 20, 30],
                        help="edges per new node; comma-separated list sweeps "
                             "(default: 10,20,30)")
    parser.add_argument("--epsilon", type=_float_list, default=[0.01, 0.05, 0.1],
                        help="strong-tie overlap thresholds in [0,1); comma-separated "
                             "list sweeps (default: 0.01,0.05,0.1)")
    parser.add_argument("--k", type=int, default=None,
                        help="strong-degree threshold for the count metric "
                             "(default: 25 for epsilon 0.01/0.05, 10 for 0.1)")
    parser.add_argument("--max-nodes", type=int, default=100_000,
                        help="final node count per run (default: 100000)")
    parser.add_argument("--seed", type=int, default=42,
                        help="master seed; per-trial seeds are derived from it")
    parser.add_argument("--snapshot-every", type=int, default=None,
                        help="growth steps between snapshots (default: max_nodes/500)")
    parser.add_argument("--trials", type=int, default=1,
                        help="independent trials per config (default: 1)")
    parser.add_argument("--oracle-check", action="store_true",
                        help="verify incremental state against a full rebuild at "
                             "every snapshot (slow; for validation runs)")
    parser.add_argument("--include-endpoints", action="store_true",
                        help="count edge endpoints in the overlap denominator")
    parser.add_argument("--smoothing-window", type=int, default=9,
                        help="odd moving-average window for series summaries "
                             "(default: 9)")
    parser.add_argument("--out-dir", type=str, default="out",
                        help="output directory (default: ./out)")
    parser.add_argument("--emit-svg", action="store_true",
                        help="also write SVG line charts per series")
    parser.add_argument("--config", type=str, default=None,
                        help="key=value file supplying any flag; command line wins")
    return parser


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")


def _peek_config_path(args: list[str]) -> str | None:
    for i, tok in enumerate(args):
        if tok == "--config":
            if i + 1 < len(args):
                return args[i + 1]
        elif tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _load_config_file(path: str) -> dict:
    """key=value lines; '#' comments and blank lines ignored."""
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        dest = key.strip().replace("-", "_")
        value = value.strip()
        if dest in _LIST_FLAGS:
            values[dest] = _int_list(value) if dest == "m" else _float_list(value)
        elif dest in _INT_FLAGS:
            values[dest] = int(value)
        elif dest in _BOOL_FLAGS:
            if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ConfigError(f"{path}:{lineno}: bad boolean {value!r}")
            values[dest] = value.lower() in ("true", "1", "yes")
        elif dest in _STR_FLAGS:
            values[dest] = value
        else:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key.strip()!r}")
    return values


# -- serialization ---------------------------------------------------------

def write_series_csv(result: RunResult, path: str | Path) -> None:
    """One row per snapshot, integers in decimal, rows newline-terminated."""
    lines = [CSV_HEADER]
    for r in result.snapshots:
        lines.append(f"{r.t},{r.n_nodes},{r.n_edges_base},{r.n_edges_strong},"
                     f"{r.count_ge_k},{r.lcc_size}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_mean_csv(mean: dict, path: str | Path) -> None:
    """Trial-mean series; metric columns as fixed 6-decimal floats."""
    lines = [CSV_HEADER]
    for i in range(mean["t"].size):
        lines.append(
            f"{int(mean['t'][i])},{int(mean['n_nodes'][i])},"
            f"{mean['n_edges_base'][i]:.6f},{mean['n_edges_strong'][i]:.6f},"
            f"{mean['count_ge_k'][i]:.6f},{mean['lcc_size'][i]:.6f}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def config_to_dict(config: RunConfig) -> dict:
    return {
        "m": config.m,
        "epsilon": config.epsilon,
        "k": config.k,
        "max_nodes": config.max_nodes,
        "seed": config.seed,
        "snapshot_every": config.snapshot_every,
        "trials": config.trials,
        "oracle_check": config.oracle_check,
        "smoothing_window": config.smoothing_window,
        "policy": {
            "exclude_endpoints": config.policy.exclude_endpoints,
            "zero_denominator_value": config.policy.zero_denominator_value,
        },
    }


def config_from_dict(d: dict) -> RunConfig:
    """Inverse of config_to_dict; lets a manifest reproduce its runs."""
    policy = OverlapPolicy(
        exclude_endpoints=d["policy"]["exclude_endpoints"],
        zero_denominator_value=d["policy"]["zero_denominator_value"],
    )
    return RunConfig(
        m=d["m"], epsilon=d["epsilon"], max_nodes=d["max_nodes"], k=d["k"],
        seed=d["seed"], snapshot_every=d["snapshot_every"], trials=d["trials"],
        oracle_check=d["oracle_check"], policy=policy,
        smoothing_window=d["smoothing_window"],
    )


def build_manifest(entries: list[dict]) -> dict:
    return {
        "tool": {"name": "strongties", "version": __version__},
        "runs": entries,
    }


def write_manifest(manifest: dict, path: str | Path) -> None:
    """Stable key order (sorted), two-space indent, trailing newline."""
    Path(path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


# -- entry point -----------------------------------------------------------

def run_and_write(invocation: CliInvocation) -> Path:
    """Execute all configs, write every artifact; returns the manifest path."""
    out = invocation.out_dir
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for config in invocation.configs:
        tag = f"m{config.m}_eps{config.epsilon:g}_k{config.k}"
        started = time.perf_counter()
        results = [run_single(config, ti) for ti in range(config.trials)]
        duration = time.perf_counter() - started
        series_paths = []
        svg_paths = []
        for res in results:
            csv_path = out / f"series_{tag}_trial{res.trial_index}.csv"
            write_series_csv(res, csv_path)
            series_paths.append(csv_path.name)
            if invocation.emit_svg:
                svg_paths.extend(_emit_result_charts(res, out, tag))
        mean = mean_series(results)
        mean_path = out / f"series_{tag}_mean.csv"
        write_mean_csv(mean, mean_path)
        if invocation.emit_svg:
            svg_paths.extend(_emit_mean_charts(mean, config, out, tag))
        entries.append({
            "config": config_to_dict(config),
            "trial_seeds": [derive_trial_seed(config.seed, ti)
                            for ti in range(config.trials)],
            "outputs": {
                "series_csv": series_paths,
                "mean_csv": mean_path.name,
                "svg": svg_paths,
            },
            "duration_seconds": duration,
        })
        last = results[-1]
        print(f"{tag}: {config.trials} trial(s), {len(last.snapshots)} snapshots, "
              f"count peak {last.summary_count.peak_value:g} at index "
              f"{last.summary_count.peak_index}, lcc peak {last.summary_lcc.peak_value:g} "
              f"at index {last.summary_lcc.peak_index} [{duration:.1f}s]")
    manifest_path = out / "manifest.json"
    write_manifest(build_manifest(entries), manifest_path)
    return manifest_path


def _emit_result_charts(res: RunResult, out: Path, tag: str) -> list[str]:
    xs = [r.n_nodes for r in res.snapshots]
    names = []
    for metric, label in (("count_ge_k", f"nodes with >= {res.config.k} strong ties"),
                          ("lcc_size", "largest strong component size")):
        ys = [getattr(r, metric) for r in res.snapshots]
        path = out / f"fig_{metric}_{tag}_trial{res.trial_index}.svg"
        emit_svg(xs, ys, f"{label} (m={res.config.m}, eps={res.config.epsilon:g})",
                 path, y_label=label)
        names.append(path.name)
    return names


def _emit_mean_charts(mean: dict, config: RunConfig, out: Path, tag: str) -> list[str]:
    xs = mean["n_nodes"].tolist()
    names = []
    for metric, label in (("count_ge_k", f"nodes with >= {config.k} strong ties"),
                          ("lcc_size", "largest strong component size")):
        path = out / f"fig_{metric}_{tag}_mean.svg"
        emit_svg(xs, mean[metric].tolist(),
                 f"mean {label} (m={config.m}, eps={config.epsilon:g}, "
                 f"{config.trials} trials)", path, y_label=label)
        names.append(path.name)
    return names


def main(argv: Sequence[str] | None = None) -> int:
    invocation = parse_cli(argv)
    try:
        run_and_write(invocation)
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
