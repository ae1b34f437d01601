"""Instance record formats (tsv / jsonl) and their parsers."""
from __future__ import annotations

import json

from .graph import parse_number
from .instances import MotifInstance

TSV_HEADER = ("walk", "edges", "flow", "span_first", "span_last")


def fmt_num(x) -> str:
    if isinstance(x, float) and x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x) if isinstance(x, float) else str(x)


def _num(x):
    return int(x) if isinstance(x, float) and x.is_integer() and abs(x) < 2**53 else x


def instance_record(inst: MotifInstance, flow=None, rank: int | None = None) -> dict:
    rec = {}
    if rank is not None:
        rec["rank"] = rank
    rec["walk"] = list(inst.walk)
    rec["edges"] = [[[_num(x.t), _num(x.f)] for x in s] for s in inst.assignment]
    rec["flow"] = _num(float(inst.flow if flow is None else flow))
    rec["span"] = [_num(v) for v in inst.span]
    return rec


def format_record(rec: dict, fmt: str) -> str:
    if fmt == "jsonl":
        return json.dumps(rec, separators=(",", ":"))
    edges = ";".join(",".join(f"{fmt_num(t)}:{fmt_num(f)}" for t, f in s) for s in rec["edges"])
    cols = [" ".join(map(str, rec["walk"])), edges, fmt_num(rec["flow"]), fmt_num(rec["span"][0]), fmt_num(rec["span"][1])]
    if "rank" in rec:
        cols.insert(0, str(rec["rank"]))
    return "\t".join(cols)


def tsv_header(ranked: bool = False) -> str:
    return "\t".join((("rank",) if ranked else ()) + TSV_HEADER)


def write_instances(out, instances, fmt: str = "tsv", ranked: bool = False, flows=None) -> int:
    if fmt == "tsv":
        out.write(tsv_header(ranked) + "\n")
    n = 0
    for i, inst in enumerate(instances):
        fl = None if flows is None else flows[i]
        rec = instance_record(inst, fl, rank=i + 1 if ranked else None)
        out.write(format_record(rec, fmt) + "\n")
        n += 1
    return n


def parse_records(text: str, fmt: str = "tsv") -> list[dict]:
    """Inverse of ``write_instances``."""
    recs = []
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if fmt == "jsonl":
        return [json.loads(ln) for ln in lines]
    header = lines[0].split("\t")
    for ln in lines[1:]:
        cols = dict(zip(header, ln.split("\t")))
        rec = {}
        if "rank" in cols:
            rec["rank"] = int(cols["rank"])
        rec["walk"] = cols["walk"].split(" ")
        rec["edges"] = [
            [[parse_number(a) for a in item.split(":")] for item in part.split(",")] for part in cols["edges"].split(";")
        ]
        rec["flow"] = parse_number(cols["flow"])
        rec["span"] = [parse_number(cols["span_first"]), parse_number(cols["span_last"])]
        recs.append(rec)
    return recs
