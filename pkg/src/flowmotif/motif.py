"""Flow motif definitions: path-shaped edge orders with duration/flow bounds."""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Hashable


class MotifError(ValueError):
    pass


@dataclass(frozen=True)
class Motif:
    """Directed motif graph whose edges, in label order, form one walk.

    ``edges[i]`` is the edge labelled ``i + 1``. ``vertices`` defaults to the
    endpoints in first-appearance order along the walk.
    """

    edges: tuple[tuple[Hashable, Hashable], ...]
    delta: float = 0
    phi: float = 0
    vertices: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((a, b) for a, b in self.edges))
        if not self.vertices:
            seen = []
            for a, b in self.edges:
                for x in (a, b):
                    if x not in seen:
                        seen.append(x)
            object.__setattr__(self, "vertices", tuple(seen))
        else:
            object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def walk(self) -> tuple:
        """Motif vertices visited along the spanning path (length m + 1)."""
        if not self.edges:
            return ()
        return (self.edges[0][0],) + tuple(b for _, b in self.edges)

    def slots(self) -> tuple[int, ...]:
        """Walk positions as first-appearance vertex numbers, e.g. cycle:3 -> (0, 1, 2, 0)."""
        order: dict = {}
        return tuple(order.setdefault(v, len(order)) for v in self.walk)

    def with_bounds(self, delta=None, phi=None) -> "Motif":
        return replace(
            self,
            delta=self.delta if delta is None else delta,
            phi=self.phi if phi is None else phi,
        )

    def __str__(self):
        return self.name or " ".join(f"{a}->{b}" for a, b in self.edges)


def validate(motif: Motif) -> str | None:
    """Return None when ``motif`` is well formed, else a message naming the first violation."""
    if not motif.edges:
        return "motif has no edges"
    for i in range(motif.m - 1):
        if motif.edges[i][1] != motif.edges[i + 1][0]:
            return (
                f"chain break at position {i + 1}->{i + 2}: "
                f"edge {i + 1} ends at {motif.edges[i][1]!r}, edge {i + 2} starts at {motif.edges[i + 1][0]!r}"
            )
    endpoints = {x for e in motif.edges for x in e}
    for v in motif.vertices:
        if v not in endpoints:
            return f"vertex {v!r} is not an endpoint of any edge"
    if len(set(motif.vertices)) != len(motif.vertices):
        return "duplicate vertex identifiers"
    missing = endpoints - set(motif.vertices)
    if missing:
        return f"edge endpoint(s) {sorted(map(str, missing))} not in vertex set"
    if motif.delta < 0:
        return f"delta must be >= 0, got {motif.delta}"
    if motif.phi < 0:
        return f"phi must be >= 0, got {motif.phi}"
    return None


def check(motif: Motif) -> Motif:
    msg = validate(motif)
    if msg is not None:
        raise MotifError(msg)
    return motif


def builtin(kind: str, n: int, delta=0, phi=0) -> Motif:
    """``chain`` with n vertices (n-1 edges) or ``cycle`` with n vertices and n edges."""
    if n < 2:
        raise MotifError(f"{kind}:{n}: need at least 2 nodes")
    vs = [f"v{i}" for i in range(1, n + 1)]
    if kind == "chain":
        edges = list(zip(vs, vs[1:]))
    elif kind == "cycle":
        edges = list(zip(vs, vs[1:] + vs[:1]))
    else:
        raise MotifError(f"unknown motif kind {kind!r} (expected chain or cycle)")
    return Motif(tuple(edges), delta=delta, phi=phi, vertices=tuple(vs), name=f"{kind}:{n}")


_SHORTHAND = re.compile(r"^(chain|cycle):(\d+)$")


def parse_motif_file(text: str) -> Motif:
    from .graph import parse_number

    delta = phi = None
    labelled: dict[int, tuple[int, tuple[str, str]]] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key in ("delta", "phi") and len(parts) == 2:
                val = parse_number(parts[1])
                if key == "delta":
                    delta = val
                else:
                    phi = val
            elif key == "edge" and len(parts) == 4:
                label = int(parts[1])
                if label in labelled:
                    raise MotifError(f"line {no}: duplicate edge label {label}")
                labelled[label] = (no, (parts[2], parts[3]))
            else:
                raise MotifError(f"line {no}: malformed line {raw!r}")
        except ValueError as exc:
            if isinstance(exc, MotifError):
                raise
            raise MotifError(f"line {no}: bad number in {raw!r}") from None
    if delta is None:
        raise MotifError("missing 'delta' line")
    if phi is None:
        raise MotifError("missing 'phi' line")
    if not labelled:
        raise MotifError("no 'edge' lines")
    labels = sorted(labelled)
    for want, got in enumerate(labels, 1):
        if got != want:
            raise MotifError(f"line {labelled[got][0]}: label gap, expected {want} but found {got}")
    motif = Motif(tuple(labelled[i][1] for i in labels), delta=delta, phi=phi)
    return check(motif)


def resolve(spec: str, delta=0, phi=0) -> Motif:
    """CLI motif argument: ``chain:<n>``, ``cycle:<n>`` or a motif file path.

    For files, ``delta``/``phi`` come from the file itself.
    """
    m = _SHORTHAND.match(spec.strip())
    if m:
        return builtin(m.group(1), int(m.group(2)), delta=delta, phi=phi)
    with open(spec) as fh:
        return parse_motif_file(fh.read())
