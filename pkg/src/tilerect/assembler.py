"""Assembly sequences, the deterministic policy, and directedness certification.

Directedness at temperature 1 is certified exactly, without enumerating
producible assemblies.  Let alpha be any terminal assembly reached from the
seed.  A producible assembly that disagrees with alpha has a first step that
places some tile t != alpha(p) at a position p of alpha, bound to a neighbour
q whose alpha-glue faces p.  Just before that step the assembly is a
connected sub-assembly of alpha that contains the seed and q but not p; such
a sub-assembly exists iff q stays connected to the seed once p is deleted
from alpha's binding graph.  (A disagreement outside dom(alpha) is
impossible because alpha is terminal.)  So alpha is the unique terminal
assembly iff it is terminal and no such "divergence" (q, p, t) exists, which
is a single articulation-point pass over the binding graph.

Naive pair closure, which lets any tile enter wherever some already-entered
neighbour offers a glue, ignores blocking and therefore flags every
guess-and-bump design as ambiguous; see :func:`naive_pair_closure`.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .core import (
    DIRECTIONS, OFFSETS, OPPOSITE, TAS, Assembly, AssemblyError, FrontierTracker, Pos, TileType,
    bond_strength, binds, binding_graph, step,
)

POLICY_ORDER = ("N", "E", "S", "W", "U", "D")
Box = Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]


class NondeterminismError(AssemblyError):
    def __init__(self, position: Pos, tiles: Sequence[TileType]):
        super().__init__("nondeterministic placement under policy")
        self.position = position
        self.tiles = tuple(tiles)


class EscapeError(AssemblyError):
    def __init__(self, position: Pos):
        super().__init__("assembly escapes bounding box")
        self.position = position


@dataclass(frozen=True)
class AssemblySequence:
    steps: Tuple[Tuple[Pos, TileType], ...]
    result: Assembly
    seed: Optional[int] = None

    def __len__(self) -> int:
        return len(self.steps)


def default_budget(k: int, N: int, margin: int = 2) -> Box:
    return ((-margin, k + margin), (-margin, N + margin), (0, 2))


def in_box(p: Pos, box: Box) -> bool:
    return all(lo <= v < hi for v, (lo, hi) in zip(p, box))


def replay(tas: TAS, steps: Iterable[Tuple[Pos, TileType]]) -> Assembly:
    """Replay a sequence from the seed, checking every step is a legal attachment."""
    tracker = FrontierTracker(tas)
    for p, t in steps:
        if p in tracker.cells and tracker.cells[p] == t and p in tas.seed:
            continue
        tracker.attach(p, t)
    return tracker.assembly()


def _run(tas: TAS, choose, budget: Optional[Box], max_steps: int) -> Tuple[FrontierTracker, list]:
    tracker = FrontierTracker(tas)
    steps: List[Tuple[Pos, TileType]] = [(p, t) for p, t in tas.seed.items()]
    while not tracker.is_terminal():
        if len(steps) > max_steps:
            raise AssemblyError("step limit exceeded")
        p, t = choose(tracker)
        if budget is not None and not in_box(p, budget):
            raise EscapeError(p)
        tracker.attach(p, t)
        steps.append((p, t))
    return tracker, steps


def run_policy_sequence(tas: TAS, budget: Optional[Box] = None, max_steps: int = 10**7) -> AssemblySequence:
    """Depth-first assembly that prefers z=0 placements, then N, E, S, W order.

    The most recently placed tile that exposes an attachable neighbour is
    extended first; among its neighbours, z=0 positions come before z=1 and
    ties are broken north, east, south, west (then up, down).
    """
    placed_at: Dict[Pos, int] = {p: 0 for p in tas.seed}

    def choose(tracker: FrontierTracker):
        best = None
        for p in tracker.positions():
            latest, rank = -1, 99
            for i, d in enumerate(POLICY_ORDER):
                q = step(p, OPPOSITE[d])  # parent q with p = q + d
                if q in tracker.cells:
                    t_q = placed_at[q]
                    if binds_any(tracker, q, d):
                        if t_q > latest or (t_q == latest and i < rank):
                            latest, rank = t_q, i
            key = (-latest, p[2], rank, p)
            if best is None or key < best[0]:
                best = (key, p)
        p = best[1]
        cands = tracker.frontier_at(p)
        if len(cands) != 1:
            raise NondeterminismError(p, cands)
        placed_at[p] = len(placed_at)
        return p, cands[0]

    def binds_any(tracker: FrontierTracker, q: Pos, d: str) -> bool:
        g = tracker.cells[q].glue(d)
        return g.strength > 0

    tracker, steps = _run(tas, choose, budget, max_steps)
    return AssemblySequence(tuple(steps), tracker.assembly())


def random_sequence(tas: TAS, seed: int, budget: Optional[Box] = None, max_steps: int = 10**7) -> AssemblySequence:
    """A uniformly random legal sequence (uniform over current frontier pairs)."""
    rng = random.Random(seed)

    def choose(tracker: FrontierTracker):
        pairs = sorted(tracker.frontier(), key=lambda pt: (pt[0], pt[1].name))
        return pairs[rng.randrange(len(pairs))]

    tracker, steps = _run(tas, choose, budget, max_steps)
    return AssemblySequence(tuple(steps), tracker.assembly(), seed)


# --------------------------------------------------------------------------
# Closure and directedness


@dataclass
class ClosureReport:
    cell_types: Dict[Pos, FrozenSet[TileType]]
    conflicts: List[Pos]
    domain: FrozenSet[Pos]
    terminal: bool
    assembly: Optional[Assembly] = None
    divergences: List[Tuple[Pos, Pos, TileType]] = field(default_factory=list)
    escape: Optional[Pos] = None

    @property
    def configuration(self) -> Optional[Assembly]:
        """The unique configuration when there are no conflicts."""
        return self.assembly if not self.conflicts else None


def _articulation_data(alpha: Assembly, root: Pos):
    """Iterative DFS over the binding graph: discovery, low-link, subtree spans."""
    g = binding_graph(alpha)
    disc: Dict[Pos, int] = {root: 0}
    low: Dict[Pos, int] = {root: 0}
    post: Dict[Pos, int] = {}
    parent: Dict[Pos, Optional[Pos]] = {root: None}
    children: Dict[Pos, List[Pos]] = {}
    counter = 1
    stack = [(root, iter(sorted(g.adj[root])))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                parent[w] = v
                children.setdefault(v, []).append(w)
                stack.append((w, iter(sorted(g.adj[w]))))
                advanced = True
                break
            if w != parent[v]:
                low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            post[v] = counter
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
    return g, disc, low, post, children


def _separates(p: Pos, q: Pos, disc, low, post, children) -> bool:
    """True iff deleting p disconnects q from the DFS root."""
    if p not in disc or q not in disc:
        return q not in disc
    if not (disc[p] < disc[q] < post[p]):
        return False
    kids = children.get(p, [])
    # the child of p whose subtree holds q: last child discovered before q
    c = None
    for k in kids:
        if disc[k] <= disc[q]:
            c = k
        else:
            break
    return c is not None and low[c] >= disc[p]


def divergences(tas: TAS, alpha: Assembly) -> List[Tuple[Pos, Pos, TileType]]:
    """All (q, p, t): t != alpha(p) can be producibly placed at p via q's glue."""
    (root,) = tuple(tas.seed) if len(tas.seed) == 1 else (sorted(tas.seed)[0],)
    g, disc, low, post, children = _articulation_data(alpha, root)
    out = []
    for q, tq in alpha.items():
        for d in DIRECTIONS:
            gl = tq.glue(d)
            if gl.strength <= 0:
                continue
            p = step(q, d)
            occupant = alpha.get(p)
            if occupant is None or p in tas.seed:
                continue
            for t in tas.presenting(OPPOSITE[d], gl):
                if t == occupant:
                    continue
                if not _separates(p, q, disc, low, post, children):
                    out.append((q, p, t))
    return out


def union_closure(tas: TAS, budget: Optional[Box] = None) -> ClosureReport:
    """Every (position, tile) pair that occurs in some producible assembly.

    Built from one terminal candidate plus the first-divergence analysis in
    the module docstring.  Exact at temperature 1.
    """
    if tas.temperature != 1:
        raise ValueError("union_closure is exact only at temperature 1")
    try:
        seq = run_policy_sequence(tas, budget)
    except EscapeError as exc:
        return ClosureReport({}, [], frozenset(), False, None, [], exc.position)
    except NondeterminismError as exc:
        # both candidates are producible placements at this position
        return ClosureReport({exc.position: frozenset(exc.tiles)}, [exc.position], frozenset(), False)
    alpha = seq.result
    tracker = FrontierTracker(tas, alpha)
    terminal = tracker.is_terminal()
    divs = divergences(tas, alpha)
    cell_types: Dict[Pos, Set[TileType]] = {p: {t} for p, t in alpha.items()}
    for _, p, t in divs:
        cell_types[p].add(t)
    conflicts = sorted(p for p, ts in cell_types.items() if len(ts) > 1)
    return ClosureReport({p: frozenset(ts) for p, ts in cell_types.items()}, conflicts,
                         frozenset(alpha), terminal, alpha, divs)


def naive_pair_closure(tas: TAS, budget: Box, limit: int = 10**6) -> Dict[Pos, Set[TileType]]:
    """Least fixed point of single-pair attachability, ignoring occupancy.

    An over-approximation of producible placements; used to contrast with
    :func:`union_closure` on blocking-based designs.
    """
    cells: Dict[Pos, Set[TileType]] = {p: {t} for p, t in tas.seed.items()}
    work = deque(tas.seed.items())
    while work:
        q, tq = work.popleft()
        for d in DIRECTIONS:
            gl = tq.glue(d)
            if gl.strength <= 0:
                continue
            p = step(q, d)
            if not in_box(p, budget) or not tas.allowed(p):
                continue
            for t in tas.presenting(OPPOSITE[d], gl):
                s = cells.setdefault(p, set())
                if t not in s:
                    s.add(t)
                    work.append((p, t))
                    if len(work) > limit:
                        raise AssemblyError("closure too large")
    return cells


def witness(tas: TAS, report: ClosureReport, p: Pos, t: TileType) -> AssemblySequence:
    """An explicit assembly sequence that places t at p."""
    alpha = report.assembly
    if alpha is None:
        raise ValueError("report has no candidate assembly")
    if alpha.get(p) == t:
        target, avoid = p, None
    else:
        match = [(q, pp, tt) for q, pp, tt in report.divergences if pp == p and tt == t]
        if not match:
            raise ValueError("pair is not in the closure")
        target, avoid = match[0][0], p
    g = binding_graph(alpha)
    if avoid is not None:
        g.remove_node(avoid)
    (root,) = tuple(tas.seed)
    order: List[Pos] = []
    prev: Dict[Pos, Optional[Pos]] = {root: None}
    dq = deque([root])
    while dq:
        v = dq.popleft()
        if v == target:
            break
        for w in sorted(g.adj[v]):
            if w not in prev:
                prev[w] = v
                dq.append(w)
    chain = []
    v: Optional[Pos] = target
    while v is not None:
        chain.append(v)
        v = prev[v]
    chain.reverse()
    steps = [(q, alpha[q]) for q in chain]
    if avoid is not None:
        steps.append((p, t))
    result = replay(tas, steps)
    return AssemblySequence(tuple(steps), result)


# --------------------------------------------------------------------------
# Shape and verdicts


def transpose(p: Pos) -> Pos:
    """Vertical frame (x, y, z) to the formal rectangle frame (y, x, z)."""
    return (p[1], p[0], p[2])


def shape_check(alpha: Iterable[Pos], k: int, N: int) -> bool:
    """{0..N-1} x {0..k-1} x {0} <= dom <= {0..N-1} x {0..k-1} x {0,1} (formal frame)."""
    dom = {transpose(p) for p in alpha}
    for a, b, z in dom:
        if not (0 <= a < N and 0 <= b < k and z in (0, 1)):
            return False
    return all((a, b, 0) in dom for a in range(N) for b in range(k))


@dataclass(frozen=True)
class Verdict:
    kind: str  # directed-and-correct | conflict | escape | not-terminal | shape-mismatch
    conflicts: Tuple[Pos, ...] = ()
    position: Optional[Pos] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.kind == "directed-and-correct"

    @property
    def exit_code(self) -> int:
        return {"directed-and-correct": 0, "conflict": 2, "escape": 3}.get(self.kind, 4)


def check_directed(tas: TAS, k: int, N: int, budget: Optional[Box] = None) -> Verdict:
    report = union_closure(tas, budget or default_budget(k, N))
    return verdict_from_report(report, k, N)


def verdict_from_report(report: ClosureReport, k: int, N: int) -> Verdict:
    if report.escape is not None:
        return Verdict("escape", position=report.escape)
    if report.conflicts:
        return Verdict("conflict", conflicts=tuple(report.conflicts))
    if not report.terminal:
        return Verdict("not-terminal")
    for p in report.domain:
        if not (0 <= p[0] < k and 0 <= p[1] < N and p[2] in (0, 1)):
            return Verdict("escape", position=p)
    if not shape_check(report.domain, k, N):
        missing = sum(1 for x in range(k) for y in range(N) if (x, y, 0) not in report.domain)
        return Verdict("shape-mismatch", detail=f"{missing} z=0 cells missing")
    return Verdict("directed-and-correct")


@dataclass
class DeterminismReport:
    strength_violations: List[int] = field(default_factory=list)
    input_violations: List[int] = field(default_factory=list)
    terminal: bool = True

    @property
    def ok(self) -> bool:
        return not self.strength_violations and not self.input_violations and self.terminal


def check_conditional_determinism(tas: TAS, seq: AssemblySequence) -> DeterminismReport:
    """Each step binds with strength exactly tau through a unique input glue."""
    report = DeterminismReport()
    cells: Dict[Pos, TileType] = {}
    for i, (p, t) in enumerate(seq.steps):
        if p in tas.seed and not cells:
            cells[p] = t
            continue
        s = bond_strength(cells, p, t)
        if s != tas.temperature:
            report.strength_violations.append(i)
        for d in DIRECTIONS:
            u = cells.get(step(p, d))
            if u is not None and binds(t.glue(d), u.glue(OPPOSITE[d])):
                if len(tas.presenting(d, t.glue(d))) != 1:
                    report.input_violations.append(i)
                    break
        cells[p] = t
    report.terminal = FrontierTracker(tas, cells).is_terminal()
    return report
