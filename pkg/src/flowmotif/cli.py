"""Command-line driver: ``flowmotif --graph G --motif M --delta X --phi Y --mode ...``."""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from dataclasses import dataclass

from .baseline import run_join
from .graph import GraphError, parse_number, read_graph
from .instances import enumerate_instances
from .matcher import find_structural_matches
from .motif import MotifError, resolve
from .output import fmt_num, instance_record, format_record, write_instances
from .significance import significance_run
from .synth import synth
from .topk import top1, top1_grouped, topk

MODES = ("enumerate", "count", "matches", "topk", "top1", "baseline", "significance", "synth")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    mode: str
    graph: str | None = None
    motif: str | None = None
    delta: float | None = None
    phi: float | None = None
    k: int | None = None
    samples: int = 20
    seed: int = 0
    threads: int = 1
    output: str | None = None
    format: str = "tsv"
    group_by: str | None = None
    # synth
    nodes: int = 100
    pairs: int = 500
    interactions: int = 10_000
    horizon: int = 1_000_000
    flow_law: str = "uniform:1:9"
    planted_cycles: int = 0
    planted_flow: float = 50.0

    def validate(self):
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.delta is not None and self.delta < 0:
            raise UsageError(f"--delta must be >= 0, got {fmt_num(self.delta)}")
        if self.phi is not None and self.phi < 0:
            raise UsageError(f"--phi must be >= 0, got {fmt_num(self.phi)}")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.mode == "synth":
            if self.output is None:
                raise UsageError("synth needs --output")
            return
        if self.graph is None:
            raise UsageError(f"--graph is required for mode {self.mode}")
        if self.motif is None:
            raise UsageError(f"--motif is required for mode {self.mode}")
        if self.mode == "topk" and (self.k is None or self.k < 1):
            raise UsageError("--mode topk needs --k N with N >= 1")
        if self.k is not None and self.mode != "topk":
            raise UsageError("--k only applies to --mode topk")
        if self.group_by is not None and self.mode != "top1":
            raise UsageError("--group-by only applies to --mode top1")
        if self.mode == "significance" and self.samples < 1:
            raise UsageError("--samples must be >= 1")


def _load_motif(cfg: RunConfig):
    spec = cfg.motif
    shorthand = spec.startswith(("chain:", "cycle:"))
    if shorthand and cfg.delta is None:
        raise UsageError("--delta is required with a chain:/cycle: motif")
    try:
        motif = resolve(spec, delta=cfg.delta or 0, phi=cfg.phi or 0)
    except OSError as exc:
        raise UsageError(f"cannot read motif file {spec!r}: {exc.strerror}") from None
    except MotifError as exc:
        raise UsageError(f"motif {spec!r}: {exc}") from None
    return motif.with_bounds(cfg.delta, cfg.phi)


def _load_graph(cfg: RunConfig):
    try:
        return read_graph(cfg.graph)
    except OSError as exc:
        raise UsageError(f"cannot read graph file {cfg.graph!r}: {exc.strerror}") from None
    except GraphError as exc:
        raise UsageError(f"graph {cfg.graph!r}: {exc}") from None


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute one run; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg.validate()
        if cfg.mode == "synth":
            synth(
                cfg.output,
                nodes=cfg.nodes,
                pairs=cfg.pairs,
                interactions=cfg.interactions,
                time_horizon=cfg.horizon,
                flow_law=cfg.flow_law,
                seed=cfg.seed,
                planted_cycles=cfg.planted_cycles,
                planted_flow=cfg.planted_flow,
            )
            return 0
        g = _load_graph(cfg)
        motif = _load_motif(cfg)
        with contextlib.ExitStack() as stack:
            dest = stack.enter_context(open(cfg.output, "w")) if cfg.output else out
            _dispatch(cfg, g, motif, dest, err)
    except (UsageError, ValueError) as exc:
        err.write(f"flowmotif: error: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"flowmotif: error: {exc}\n")
        return 1
    return 0


def _dispatch(cfg, g, motif, out, err):
    fmt = cfg.format
    if cfg.mode == "matches":
        for mt in find_structural_matches(g, motif):
            out.write(" ".join(map(str, mt.walk)) + "\n")
    elif cfg.mode == "count":
        out.write(f"{len(enumerate_instances(g, motif, threads=cfg.threads))}\n")
    elif cfg.mode == "enumerate":
        found = enumerate_instances(g, motif, threads=cfg.threads)
        write_instances(out, found, fmt, flows=found.flows.tolist())
    elif cfg.mode == "baseline":
        res = run_join(g, motif)
        for level, n in enumerate(res.level_counts):
            what = "tuples" if level == 0 else f"chains after level {level}"
            err.write(f"# {what}: {n}\n")
        write_instances(out, res.instances, fmt, flows=res.instances.flows.tolist())
    elif cfg.mode == "topk":
        best = topk(g, motif, cfg.k, threads=cfg.threads)
        write_instances(out, best, fmt, ranked=True, flows=best.flows.tolist())
    elif cfg.mode == "top1":
        if cfg.group_by:
            rows = top1_grouped(g, motif, cfg.group_by)
            _write_groups(out, rows, cfg.group_by, fmt)
            return
        res = top1(g, motif)
        if res is None:
            err.write("# no instance\n")
            if fmt == "tsv":
                out.write("\t".join(("rank", "walk", "edges", "flow", "span_first", "span_last")) + "\n")
            return
        write_instances(out, [res.instance], fmt, ranked=True, flows=[res.flow])
    elif cfg.mode == "significance":
        rep = significance_run(g, motif, cfg.samples, cfg.seed, threads=cfg.threads)
        z = "nan" if rep.z is None else repr(rep.z)
        if fmt == "jsonl":
            rec = {
                "motif": rep.motif,
                "r": rep.real_count,
                "mu": rep.mean,
                "sigma": rep.std,
                "z": rep.z,
                "p": rep.p_value,
                "samples": rep.sample_counts,
            }
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
        else:
            out.write("motif\tr\tmu\tsigma\tz\tp\tsamples\n")
            out.write(
                f"{rep.motif}\t{rep.real_count}\t{rep.mean!r}\t{rep.std!r}\t{z}\t{rep.p_value!r}\t"
                + ",".join(map(str, rep.sample_counts))
                + "\n"
            )
        if rep.z is None:
            err.write("# z-score undefined: sample standard deviation is 0\n")


def _write_groups(out, rows, group_by, fmt):
    if fmt == "tsv":
        out.write("walk\twindow_start\twindow_end\tflow\n" if group_by == "window" else "walk\tflow\n")
    for row in rows:
        walk = " ".join(map(str, row[0]))
        if group_by == "window":
            (s, e), fl = row[1], row[2]
            if fmt == "jsonl":
                out.write(json.dumps({"walk": list(row[0]), "window": [s, e], "flow": fl}) + "\n")
            else:
                out.write(f"{walk}\t{fmt_num(s)}\t{fmt_num(e)}\t{fmt_num(fl)}\n")
        else:
            if fmt == "jsonl":
                out.write(json.dumps({"walk": list(row[0]), "flow": row[1]}) + "\n")
            else:
                out.write(f"{walk}\t{fmt_num(row[1])}\n")


def _number(tok: str):
    try:
        return parse_number(tok)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {tok!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flowmotif", description="Find maximal flow-motif instances in interaction networks.")
    p.add_argument("--graph", help="interaction file: 'src dst t f' per line")
    p.add_argument("--motif", help="chain:<n>, cycle:<n> or a motif file")
    p.add_argument("--delta", type=_number, help="duration bound")
    p.add_argument("--phi", type=_number, help="minimum flow per motif edge (default 0)")
    p.add_argument("--mode", choices=MODES, default="enumerate")
    p.add_argument("--k", type=int)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    p.add_argument("--output")
    p.add_argument("--group-by", choices=("match", "window"))
    s = p.add_argument_group("synth")
    s.add_argument("--nodes", type=int, default=100)
    s.add_argument("--pairs", type=int, default=500)
    s.add_argument("--interactions", type=int, default=10_000)
    s.add_argument("--horizon", type=int, default=1_000_000)
    s.add_argument("--flow-law", default="uniform:1:9")
    s.add_argument("--planted-cycles", type=int, default=0)
    s.add_argument("--planted-flow", type=float, default=50.0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
