"""Line-oriented text formats for instances, orientations and metadata.

Instance file::

    MGO 1 <n> <|E_D|> <|E_U|> <|P|>
    D tail head            # directed edge
    U a b                  # undirected edge, id = occurrence order
    R s t                  # request, id = occurrence order
    F v                    # feedback vertex hint (optional, ordered)
    B id v1 v2 ...         # tree-decomposition bag (optional)
    T id1 id2              # tree-decomposition tree edge (optional)
    X reqid v1 v2 ...      # mandated path (optional, fixed-paths instances)

Orientation file: one ``O a b`` line per undirected edge in id order,
meaning ``a -> b``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .decomposition import TreeDecomposition
from .errors import InputError
from .graph import MixedGraph, Orientation, Request

MAGIC = "MGO"
VERSION = "1"


@dataclass
class Instance:
    graph: MixedGraph
    requests: List[Request]
    fvs: Optional[List[int]] = None
    bags: Optional[List[List[int]]] = None
    tree_edges: List[Tuple[int, int]] = field(default_factory=list)
    paths: Optional[Dict[int, List[int]]] = None

    @property
    def decomposition(self) -> Optional[TreeDecomposition]:
        if self.bags is None:
            return None
        return TreeDecomposition.from_lists(self.bags, self.tree_edges)

    def mandated_paths(self) -> List[List[int]]:
        if not self.paths:
            raise InputError("instance has no mandated paths (X lines)")
        missing = [i for i in range(len(self.requests)) if i not in self.paths]
        if missing:
            raise InputError(f"requests {missing} have no mandated path")
        return [self.paths[i] for i in range(len(self.requests))]

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return emit_instance_text(self) == emit_instance_text(other)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _ints(tokens, lineno: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_instance_text(text: str) -> Instance:
    header = None
    directed, undirected, requests, fvs = [], [], [], []
    bags: Dict[int, List[int]] = {}
    tree_edges = []
    paths: Dict[int, List[int]] = {}
    lines: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        tag, args = tok[0], tok[1:]
        if header is None:
            if tag != MAGIC or len(args) != 5 or args[0] != VERSION:
                raise InputError(f"line {lineno}: expected header 'MGO 1 <n> <|E_D|> <|E_U|> <|P|>'")
            header = _ints(args[1:], lineno)
            lines["header"] = lineno
            if min(header) < 0:
                raise InputError(f"line {lineno}: negative count in header")
            continue
        n = header[0]
        vals = _ints(args, lineno)

        def check_vertices(vs):
            for v in vs:
                if not 0 <= v < n:
                    raise InputError(f"line {lineno}: vertex {v} outside 0..{n - 1}")

        if tag in ("D", "U", "R", "T"):
            if len(vals) != 2:
                raise InputError(f"line {lineno}: '{tag}' takes exactly two integers")
            if tag != "T":
                check_vertices(vals)
                if vals[0] == vals[1] and tag != "R":
                    raise InputError(f"line {lineno}: self-loop ({vals[0]}, {vals[1]})")
            {"D": directed, "U": undirected, "R": requests, "T": tree_edges}[tag].append(tuple(vals))
        elif tag == "F":
            if len(vals) != 1:
                raise InputError(f"line {lineno}: 'F' takes one vertex")
            check_vertices(vals)
            fvs.append(vals[0])
        elif tag == "B":
            if not vals:
                raise InputError(f"line {lineno}: 'B' needs a bag id")
            check_vertices(vals[1:])
            if vals[0] in bags:
                raise InputError(f"line {lineno}: duplicate bag id {vals[0]}")
            bags[vals[0]] = vals[1:]
        elif tag == "X":
            if len(vals) < 2:
                raise InputError(f"line {lineno}: 'X' needs a request id and at least one vertex")
            check_vertices(vals[1:])
            if vals[0] in paths:
                raise InputError(f"line {lineno}: duplicate mandated path for request {vals[0]}")
            paths[vals[0]] = vals[1:]
        else:
            raise InputError(f"line {lineno}: unknown record type {tag!r}")
    if header is None:
        raise InputError("line 1: missing header")
    n, n_d, n_u, n_p = header
    got = (len(directed), len(undirected), len(requests))
    if got != (n_d, n_u, n_p):
        raise InputError(f"line {lines['header']}: header declares |E_D|={n_d} |E_U|={n_u} |P|={n_p} "
                         f"but the file has {got[0]}, {got[1]}, {got[2]}")
    if bags and sorted(bags) != list(range(len(bags))):
        raise InputError("bag ids must be 0..k-1")
    for a, b in tree_edges:
        if a not in bags or b not in bags:
            raise InputError(f"tree edge ({a}, {b}) refers to an unknown bag")
    for r in paths:
        if not 0 <= r < n_p:
            raise InputError(f"mandated path for unknown request {r}")
    return Instance(
        graph=MixedGraph(n, directed, undirected),
        requests=[Request(s, t) for s, t in requests],
        fvs=fvs or None,
        bags=[bags[i] for i in range(len(bags))] if bags else None,
        tree_edges=[tuple(e) for e in tree_edges],
        paths=paths or None,
    )


def emit_instance_text(inst: Instance) -> str:
    g = inst.graph
    out = [f"{MAGIC} {VERSION} {g.n} {len(g.directed)} {len(g.undirected)} {len(inst.requests)}"]
    out += [f"D {a} {b}" for a, b in g.directed]
    out += [f"U {a} {b}" for a, b in g.undirected]
    out += [f"R {s} {t}" for s, t in inst.requests]
    out += [f"F {v}" for v in inst.fvs or ()]
    for i, bag in enumerate(inst.bags or ()):
        out.append(" ".join(["B", str(i)] + [str(v) for v in sorted(bag)]))
    out += [f"T {a} {b}" for a, b in sorted((min(a, b), max(a, b)) for a, b in inst.tree_edges)]
    for r in sorted(inst.paths or {}):
        out.append(" ".join(["X", str(r)] + [str(v) for v in inst.paths[r]]))
    return "\n".join(out) + "\n"


def parse_instance(path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_instance_text(text)


def emit_instance(inst: Instance, path) -> None:
    Path(path).write_text(emit_instance_text(inst))


def instance_digest(inst: Instance) -> str:
    return hashlib.sha256(emit_instance_text(inst).encode()).hexdigest()[:16]


def emit_orientation_text(graph: MixedGraph, orientation: Orientation) -> str:
    return "".join(f"O {orientation[e][0]} {orientation[e][1]}\n" for e in range(graph.num_undirected))


def parse_orientation_text(text: str) -> Orientation:
    """Read ``O a b`` lines; the k-th line orients undirected edge k. Consistency is checked later."""
    orientation: Orientation = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        if tok[0] != "O" or len(tok) != 3:
            raise InputError(f"line {lineno}: expected 'O a b'")
        a, b = _ints(tok[1:], lineno)
        orientation[len(orientation)] = (a, b)
    return orientation


def emit_metadata_text(meta: Dict[str, object]) -> str:
    return "".join(f"{k}={v}\n" for k, v in meta.items())


def parse_metadata_text(text: str) -> Dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if "=" not in raw:
            raise InputError(f"line {lineno}: expected key=value")
        k, v = raw.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_edge_list_text(text: str) -> Tuple[int, List[Tuple[int, int]]]:
    """``V E`` header followed by ``E`` lines of ``a b``."""
    rows = [_strip(r) for r in text.splitlines()]
    rows = [(i + 1, r.split()) for i, r in enumerate(rows) if r]
    if not rows:
        raise InputError("line 1: empty edge list")
    lineno, head = rows[0]
    if len(head) != 2:
        raise InputError(f"line {lineno}: expected header 'V E'")
    n, m = _ints(head, lineno)
    if len(rows) - 1 != m:
        raise InputError(f"line {lineno}: header declares {m} edges, file has {len(rows) - 1}")
    edges = []
    for lineno, tok in rows[1:]:
        if len(tok) != 2:
            raise InputError(f"line {lineno}: expected 'a b'")
        edges.append(tuple(_ints(tok, lineno)))
    return n, edges
