"""Local-to-global orientation around a junction vertex.

Every shortest path through a vertex ``v`` touches at most two edges of the
star around ``v``: the edge it arrives on and the edge it leaves on. Orienting
the free star edges by the method of conditional expectations satisfies at
least a quarter of these local paths, and any set of local paths satisfied
together can be realised globally by orienting the corresponding shortest
paths from source to target (on a mixed acyclic graph they never conflict).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import ContractViolation, InvariantError
from .graph import DIRECTED, UNDIRECTED, EdgeRef, MixedGraph, Orientation, default_direction
from .pathfinding import RoutedPath

IN = "in"    # other endpoint -> center
OUT = "out"  # center -> other endpoint


@dataclass(frozen=True)
class Spoke:
    ref: EdgeRef
    other: int
    fixed: Optional[str]  # IN / OUT for directed or already oriented edges, None if free


@dataclass(frozen=True)
class LocalPath:
    path: RoutedPath
    entry: Optional[EdgeRef]
    exit: Optional[EdgeRef]
    local_source: int
    local_target: int

    @property
    def requirements(self) -> List[Tuple[EdgeRef, str]]:
        req = []
        if self.entry is not None:
            req.append((self.entry, IN))
        if self.exit is not None:
            req.append((self.exit, OUT))
        return req

    def __len__(self):
        return len(self.requirements)


@dataclass
class LocalStar:
    center: int
    spokes: Dict[EdgeRef, Spoke]
    local_paths: List[LocalPath] = field(default_factory=list)

    @property
    def free_spokes(self) -> List[Spoke]:
        return [s for _, s in sorted(self.spokes.items()) if s.fixed is None]

    def is_blocked(self, lp: LocalPath) -> bool:
        """True if a fixed spoke points the wrong way for ``lp``."""
        for ref, need in lp.requirements:
            fixed = self.spokes[ref].fixed
            if fixed is not None and fixed != need:
                return True
        return False


class StarOrientation(NamedTuple):
    directions: Dict[int, Tuple[int, int]]  # free undirected spoke id -> (from, to)
    satisfied: List[int]                    # indices into star.local_paths
    blocked: List[int]
    initial_expectation: Fraction


def _spoke_tag(graph: MixedGraph, partial: Orientation, v: int, ref: EdgeRef) -> Optional[str]:
    if ref.kind == DIRECTED:
        return OUT if graph.directed[ref.id][0] == v else IN
    d = partial.get(ref.id)
    if d is None:
        return None
    return OUT if d[0] == v else IN


def build_local_star(graph: MixedGraph, partial: Optional[Orientation], v: int,
                     crossing_paths: Sequence[RoutedPath]) -> LocalStar:
    """Star around ``v`` with the local pieces of ``crossing_paths``."""
    partial = partial or {}
    spokes = {ref: Spoke(ref, other, _spoke_tag(graph, partial, v, ref))
              for ref, other in graph.incident[v]}
    star = LocalStar(v, spokes)
    for p in crossing_paths:
        verts = p.vertices
        if v not in verts or not p.steps:
            raise ContractViolation(f"path of request {p.request} does not cross vertex {v} via an edge")
        i = verts.index(v)
        entry = p.steps[i - 1][0] if i > 0 else None
        exit_ = p.steps[i][0] if i < len(p.steps) else None
        star.local_paths.append(LocalPath(
            path=p,
            entry=entry,
            exit=exit_,
            local_source=verts[i - 1] if i > 0 else v,
            local_target=verts[i + 1] if i < len(p.steps) else v,
        ))
    return star


def _expectation(star: LocalStar, active: Sequence[int], decided: Dict[EdgeRef, str]) -> Fraction:
    total = Fraction(0)
    for k in active:
        value = Fraction(1)
        for ref, need in star.local_paths[k].requirements:
            if star.spokes[ref].fixed is not None:
                continue
            got = decided.get(ref)
            if got is None:
                value /= 2
            elif got != need:
                value = Fraction(0)
                break
        total += value
    return total


def orient_star_derandomized(star: LocalStar) -> StarOrientation:
    """Orient free spokes greedily on the conditional expectation of satisfied local paths.

    Spokes are decided in edge-id order; on a tie the spoke goes from its
    lower endpoint to its higher endpoint.
    """
    blocked = [k for k, lp in enumerate(star.local_paths) if star.is_blocked(lp)]
    blocked_set = set(blocked)
    active = [k for k in range(len(star.local_paths)) if k not in blocked_set]
    decided: Dict[EdgeRef, str] = {}
    current = initial = _expectation(star, active, decided)
    for spoke in star.free_spokes:
        tie = OUT if star.center < spoke.other else IN
        options = {}
        for choice in (IN, OUT):
            decided[spoke.ref] = choice
            options[choice] = _expectation(star, active, decided)
        other = IN if tie == OUT else OUT
        pick = other if options[other] > options[tie] else tie
        decided[spoke.ref] = pick
        if options[pick] < current:
            raise InvariantError("conditional expectation decreased")
        current = options[pick]

    satisfied = [k for k in active
                 if all(star.spokes[ref].fixed == need or decided.get(ref) == need
                        for ref, need in star.local_paths[k].requirements)]
    if Fraction(len(satisfied)) != current or len(satisfied) < initial:
        raise InvariantError("derandomized star orientation below its expectation")
    directions = {}
    for ref, d in decided.items():
        other = star.spokes[ref].other
        directions[ref.id] = (star.center, other) if d == OUT else (other, star.center)
    return StarOrientation(directions, satisfied, blocked, initial)


def orient_path(orientation: Orientation, path: RoutedPath) -> None:
    """Orient ``path``'s undirected edges source to target, in place.

    Raises :class:`InvariantError` if an edge already points the other way.
    """
    for ref, frm, to in path.steps:
        if ref.kind != UNDIRECTED:
            continue
        d = orientation.get(ref.id)
        if d is not None and d != (frm, to):
            raise InvariantError(
                f"path of request {path.request} needs edge {ref.id} as {frm}->{to} "
                f"but it is already {d[0]}->{d[1]}")
        orientation[ref.id] = (frm, to)


def extend_to_global(graph: MixedGraph, partial: Optional[Orientation],
                     satisfied_paths: Sequence[RoutedPath]) -> Orientation:
    """Orient every given path source to target, then the rest lower id -> higher id.

    A conflict here means the local-to-global guarantee was violated, which
    is reported as :class:`InvariantError` rather than as a user error.
    """
    orientation: Orientation = dict(partial or {})
    for p in satisfied_paths:
        orient_path(orientation, p)
    for e in range(graph.num_undirected):
        if e not in orientation:
            orientation[e] = default_direction(graph, e)
    return orientation


class LocalSolution(NamedTuple):
    orientation: Orientation
    satisfied: List[int]  # request ids
    considered: int       # local paths not blocked by fixed spokes
    blocked: int


def local_solve(graph: MixedGraph, partial: Optional[Orientation], v: int,
                crossing_paths: Sequence[RoutedPath], require_unblocked: bool = False) -> LocalSolution:
    """Star orientation at ``v`` followed by global extension."""
    star = build_local_star(graph, partial, v, crossing_paths)
    result = orient_star_derandomized(star)
    if require_unblocked and result.blocked:
        raise InvariantError(f"{len(result.blocked)} pending paths blocked by already oriented spokes at {v}")
    chosen = [star.local_paths[k].path for k in result.satisfied]
    start = dict(partial or {})
    start.update(result.directions)
    orientation = extend_to_global(graph, start, chosen)
    considered = len(star.local_paths) - len(result.blocked)
    if 4 * len(chosen) < considered:
        raise InvariantError("local solution below a quarter of the unblocked local paths")
    return LocalSolution(orientation, sorted(p.request for p in chosen), considered, len(result.blocked))
