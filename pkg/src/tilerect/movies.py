"""Window movies, splicing, crossing pairings and the counting bounds for thin rectangles.

Rows of a column cut are indexed 1 (top) to k (bottom).  Crossing sequences
are tuples of endpoints ``(side, row)`` with side 0 for the near column and 1
for the far column.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from .core import DIRECTIONS, OPPOSITE, TAS, Assembly, AssemblyError, Glue, Pos, TileType, binds, step
from .params import iroot_ceil

Pair = Tuple[int, int]
Endpoint = Tuple[int, int]

class MovieError(ValueError):
    pass


# --------------------------------------------------------------------------
# Catalan numbers and crossing pairings


def catalan(p: int) -> int:
    if p < 0:
        raise ValueError("catalan needs p >= 0")
    return comb(2 * p, p) // (p + 1)


@dataclass(frozen=True)
class CrossingSpec:
    k: int
    E: FrozenSet[int]
    f: int
    lst: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "E", frozenset(self.E))
        e = len(self.E)
        if e % 2 == 0 or not 1 <= e <= self.k:
            raise ValueError("crossing set must have odd size between 1 and k")
        if not all(1 <= r <= self.k for r in self.E):
            raise ValueError("crossing rows must lie in 1..k")
        if self.f not in self.E or self.lst not in self.E:
            raise ValueError("first and last crossing rows must belong to E")

    @property
    def e(self) -> int:
        return len(self.E)

    @property
    def p(self) -> int:
        return (self.e - 1) // 2


def _ranked(E: Iterable[int], excluded: int) -> List[int]:
    rows = sorted(set(E) - {excluded})
    return rows


def pairing_to_parens(P: Iterable[Pair], E: Iterable[int], excluded: int) -> str:
    """Encode a non-crossing pairing of E minus ``excluded`` as balanced parentheses."""
    rows = _ranked(E, excluded)
    rank = {r: i for i, r in enumerate(rows)}
    out = [""] * len(rows)
    seen: Set[int] = set()
    pairs = [tuple(sorted(pr)) for pr in P]
    for a, b in pairs:
        if a not in rank or b not in rank or a == b:
            raise ValueError("pair element outside E minus the excluded row")
        if a in seen or b in seen:
            raise ValueError("overlapping pairs")
        seen.update((a, b))
        out[rank[a]], out[rank[b]] = "(", ")"
    if len(seen) != len(rows):
        raise ValueError("pairing does not cover E minus the excluded row")
    for (a, b), (c, d) in combinations(pairs, 2):
        if a < c < b < d or c < a < d < b:
            raise ValueError("non-nested pairing")
    return "".join(out)


def parens_to_pairs(x: str, rows: Sequence[int]) -> Dict[int, int]:
    """Partner map (both directions) for a balanced string indexed by ``rows``."""
    if len(x) != len(rows):
        raise ValueError("string length must equal the number of indexed rows")
    partner: Dict[int, int] = {}
    stack: List[int] = []
    for i, ch in enumerate(x):
        if ch == "(":
            stack.append(i)
        elif ch == ")":
            if not stack:
                raise ValueError("unbalanced parentheses")
            j = stack.pop()
            partner[rows[i]], partner[rows[j]] = rows[j], rows[i]
        else:
            raise ValueError(f"unexpected character {ch!r}")
    if stack:
        raise ValueError("unbalanced parentheses")
    return partner


def _noncrossing(rows: Sequence[int]) -> Iterator[List[Pair]]:
    if not rows:
        yield []
        return
    first = rows[0]
    for j in range(1, len(rows), 2):
        for inner in _noncrossing(rows[1:j]):
            for outer in _noncrossing(rows[j + 1:]):
                yield [(first, rows[j])] + inner + outer


def enumerate_pairings(E: Iterable[int], excluded: int) -> List[List[Pair]]:
    """All non-crossing perfect pairings of E minus ``excluded``."""
    E = set(E)
    if len(E) % 2 == 0 or excluded not in E:
        raise ValueError("E must have odd size and contain the excluded row")
    return list(_noncrossing(_ranked(E, excluded)))


def perfect_matchings(rows: Sequence[int]) -> Iterator[List[Pair]]:
    """Every perfect matching, crossing or not."""
    if not rows:
        yield []
        return
    first, rest = rows[0], list(rows[1:])
    for j, other in enumerate(rest):
        for m in perfect_matchings(rest[:j] + rest[j + 1:]):
            yield [(first, other)] + m


def greedy_reconstruct(spec: CrossingSpec, x0: str, x1: str) -> List[Endpoint]:
    """Follow both pairings from the near endpoint of ``f`` until ``lst`` is reached."""
    partner = (
        parens_to_pairs(x0, _ranked(spec.E, spec.f)),
        parens_to_pairs(x1, _ranked(spec.E, spec.lst)),
    )
    pi: List[Endpoint] = [(0, spec.f), (1, spec.f)]
    seen = set(pi)
    j, r = 1, spec.f
    while r != spec.lst:
        nxt = partner[j].get(r)
        if nxt is None or (j, nxt) in seen or (1 - j, nxt) in seen:
            break  # the pairings close a cycle before reaching lst
        r = nxt
        pi.append((j, r))
        j = 1 - j
        pi.append((j, r))
        seen.update(pi[-2:])
    return pi


def induced_pairings(pi: Sequence[Endpoint]) -> Tuple[List[Pair], List[Pair]]:
    """Near and far pairings induced by a crossing-endpoint sequence."""
    near: List[Pair] = []
    far: List[Pair] = []
    for i in range(1, len(pi) - 1, 2):
        (s1, a), (s2, b) = pi[i], pi[i + 1]
        assert s1 == s2, "consecutive endpoints between crossings share a side"
        (near if s1 == 0 else far).append((min(a, b), max(a, b)))
    return near, far


# --------------------------------------------------------------------------
# Counting bounds (exact integers)


def crossing_upper_bound(k: int, e: int) -> int:
    if e % 2 == 0 or not 1 <= e <= k:
        raise ValueError("e must be odd with 1 <= e <= k")
    return comb(k, e) * (e * catalan((e - 1) // 2)) ** 2


def submovie_intermediate_sum(k: int, g: int) -> int:
    return sum(crossing_upper_bound(k, e) * g**e for e in range(1, k + 1, 2))


def submovie_count_bound(k: int, g: int) -> Tuple[int, int]:
    """(final bound g^k * 2^(3k+2) * k, intermediate sum over odd e)."""
    if g < 1 or k < 1:
        raise ValueError("need k >= 1 and g >= 1")
    return g**k * 2 ** (3 * k + 2) * k, submovie_intermediate_sum(k, g)


def glue_bound_threshold(k: int, g: int) -> int:
    """Largest N for which a directed k x N system with g glues avoids pumping."""
    return 2 * submovie_count_bound(k, g)[0]


def glue_lower_bound(k: int, N: int) -> int:
    """ceil(N^(1/k) / 128): least G with (128 G)^k >= N."""
    if k < 1 or N < 1:
        raise ValueError("need k >= 1 and N >= 1")
    return -(-iroot_ceil(N, k) // 128)


def tile_lower_bound(k: int, N: int) -> int:
    """ceil(glue_lower_bound / 4)."""
    return -(-glue_lower_bound(k, N) // 4)


# --------------------------------------------------------------------------
# Window movies


@dataclass(frozen=True)
class Window:
    """Vertical cut between columns c0 and c0 + 1."""

    c0: int
    axis: str = "x"

    def __post_init__(self) -> None:
        if self.axis != "x":
            raise NotImplementedError("only vertical (column) windows are supported")

    def side(self, p: Pos) -> Optional[str]:
        """Direction from p toward the window, if p borders it."""
        if p[0] == self.c0:
            return "E"
        if p[0] == self.c0 + 1:
            return "W"
        return None

    def shifted(self, delta: int) -> "Window":
        return Window(self.c0 + delta, self.axis)


MovieStep = Tuple[Pos, str, Glue]


@dataclass(frozen=True)
class WindowMovie:
    steps: Tuple[MovieStep, ...]

    def shifted(self, delta: int) -> "WindowMovie":
        return WindowMovie(tuple(((x + delta, y, z), d, g) for (x, y, z), d, g in self.steps))

    def __len__(self) -> int:
        return len(self.steps)


def extract_movie(seq, w: Window, mode: str = "full", path: Optional[Sequence[Pos]] = None) -> WindowMovie:
    """Glue events on ``w`` in attachment order.

    ``mode`` is ``full``, ``bond-forming`` (glues that end up in a bond) or
    ``restricted`` (bonds between consecutive cells of a simple path; the
    path defaults to the sequence order, which must then be a simple path).
    A placement exposes at most one side to a vertical window, so each step
    contributes at most one event and no tie-breaking is needed.
    """
    steps = list(seq.steps)
    final = dict(seq.result) if hasattr(seq, "result") else dict(steps)
    if mode == "restricted":
        order = list(path) if path is not None else [p for p, _ in steps]
        if path is None:
            _require_simple_path(steps)
        on_path = {frozenset(e) for e in zip(order, order[1:])}
    events: List[MovieStep] = []
    for p, t in steps:
        d = w.side(p)
        if d is None:
            continue
        g = t.glue(d)
        if g.strength <= 0:
            continue
        q = step(p, d)
        u = final.get(q)
        if mode == "full":
            keep = True
        elif mode == "bond-forming":
            keep = u is not None and binds(g, u.glue(OPPOSITE[d]))
        elif mode == "restricted":
            keep = u is not None and binds(g, u.glue(OPPOSITE[d])) and frozenset((p, q)) in on_path
        else:
            raise ValueError(f"unknown movie mode {mode!r}")
        if keep:
            events.append((p, d, g))
    return WindowMovie(tuple(events))


def _require_simple_path(steps: Sequence[Tuple[Pos, TileType]]) -> None:
    for (p, t), (q, u) in zip(steps, steps[1:]):
        d = next((d for d in DIRECTIONS if step(p, d) == q), None)
        if d is None or not binds(t.glue(d), u.glue(OPPOSITE[d])):
            raise MovieError("restricted movie needs a simple-path sequence")
    cells = {}
    for i, (q, u) in enumerate(steps):
        cells[q] = u
        if i and sum(1 for d in DIRECTIONS
                     if step(q, d) in cells and binds(u.glue(d), cells[step(q, d)].glue(OPPOSITE[d]))) != 1:
            raise MovieError("restricted movie needs a simple-path sequence")


def splice(alpha, beta, w: Window, delta: int, mode: str = "bond-forming") -> Assembly:
    """alpha restricted west of ``w`` joined with beta east of ``w + delta``, shifted back.

    Requires the two window movies to agree after the shift.
    """
    m_a = extract_movie(alpha, w, mode)
    m_b = extract_movie(beta, w.shifted(delta), mode).shifted(-delta)
    if m_a != m_b:
        raise MovieError("window movies differ")
    left = {p: t for p, t in alpha.result.items() if p[0] <= w.c0}
    right = {(x - delta, y, z): t for (x, y, z), t in beta.result.items() if x > w.c0 + delta}
    overlap = set(left) & set(right)
    if overlap:
        raise MovieError("spliced halves overlap")
    left.update(right)
    return Assembly(left)


def producible_replay(tas: TAS, alpha: Mapping[Pos, TileType]) -> List[Tuple[Pos, TileType]]:
    """A legal temperature-1 assembly sequence building ``alpha`` from the seed.

    Raises AssemblyError when some tile cannot be reached by single bonds.
    """
    from .core import FrontierTracker

    for p, t in tas.seed.items():
        if alpha.get(p) != t:
            raise AssemblyError("configuration does not contain the seed")
    tracker = FrontierTracker(tas)
    order = [(p, t) for p, t in tas.seed.items()]
    queue = deque(tas.seed)
    while queue:
        q = queue.popleft()
        for d in DIRECTIONS:
            p = step(q, d)
            if p in alpha and p not in tracker.cells and binds(alpha[q].glue(d), alpha[p].glue(OPPOSITE[d])):
                tracker.attach(p, alpha[p])
                order.append((p, alpha[p]))
                queue.append(p)
    if len(tracker.cells) != len(alpha):
        raise AssemblyError("configuration is not producible")
    return order


# --------------------------------------------------------------------------
# Brute-force crossing census


CENSUS_LIMIT = 6


def _half_realizable(k: int, cols: range, anchor_col: int, terminal_col: int,
                     E: FrozenSet[int], lone: int, pairs: Tuple[Pair, ...]) -> bool:
    cells = {(r, c) for r in range(1, k + 1) for c in cols}
    boundary = frozenset((r, terminal_col) for r in range(1, k + 1))
    # the lone endpoint runs to the outer column; each pair is joined inside the half
    jobs = [(frozenset({(lone, anchor_col)}), boundary)]
    jobs += [(frozenset({(a, anchor_col)}), frozenset({(b, anchor_col)})) for a, b in pairs]
    return _route_jobs(cells, jobs)


def _route_jobs(free, jobs) -> bool:
    """Vertex-disjoint simple paths for every (sources, targets) job, by backtracking.

    Single-cell terminals are reserved for their own job; a multi-cell target
    set (the outer column) is shared space.
    """
    fixed = list(jobs)
    reserved = [frozenset(s | (t if len(t) == 1 else frozenset())) for s, t in fixed]

    def go(i: int, avail: Set) -> bool:
        if i == len(fixed):
            return True
        later = set().union(*reserved[i + 1:]) if i + 1 < len(fixed) else set()
        sources, targets = fixed[i]
        usable = avail - later
        for s in sorted(sources):
            if s not in usable:
                continue
            stack = [(s, iter(_nbrs(s)))]
            visited = {s}
            if s in targets and go(i + 1, avail - visited):
                return True
            while stack:
                v, it = stack[-1]
                for w in it:
                    if w in usable and w not in visited:
                        visited.add(w)
                        if w in targets and go(i + 1, avail - visited):
                            return True
                        stack.append((w, iter(_nbrs(w))))
                        break
                else:
                    stack.pop()
                    visited.discard(v)
        return False

    return go(0, set(free))


def _nbrs(v):
    r, c = v
    return ((r - 1, c), (r, c + 1), (r + 1, c), (r, c - 1))


def crossing_sequence(M0: Iterable[Pair], M1: Iterable[Pair], f: int, lst: int) -> Tuple[Endpoint, ...]:
    """Endpoint order of a path with near pairing M0 and far pairing M1 (may close early)."""
    partner = ({}, {})
    for j, M in enumerate((M0, M1)):
        for a, b in M:
            partner[j][a], partner[j][b] = b, a
    pi = [(0, f), (1, f)]
    j, r = 1, f
    while r != lst:
        nxt = partner[j].get(r)
        if nxt is None or (j, nxt) in pi:
            break
        r = nxt
        pi += [(j, r), (1 - j, r)]
        j = 1 - j
    return tuple(pi)


@dataclass
class CensusResult:
    k: int
    slack: int
    classes: Dict[Tuple[FrozenSet[int], int, int], Set[Tuple[Endpoint, ...]]]

    @property
    def count(self) -> int:
        return sum(len(v) for v in self.classes.values())

    def sequences(self) -> List[Tuple[Endpoint, ...]]:
        return sorted(s for v in self.classes.values() for s in v)

    def by_e(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (E, _, _), seqs in self.classes.items():
            out[len(E)] = out.get(len(E), 0) + len(seqs)
        return out

    def restricted_movie_count(self, g: int) -> int:
        """Distinct restricted movies when each crossing bond carries one of g glues."""
        return sum(len(seqs) * g ** len(E) for (E, _, _), seqs in self.classes.items())

    def dump(self) -> str:
        lines = []
        for s in self.sequences():
            lines.append(" ".join(f"{'nf'[side]}{row}" for side, row in s))
        return "\n".join(lines) + ("\n" if lines else "")


def brute_force_crossing_census(k: int, slack: int, workers: int = 1) -> CensusResult:
    """Every realizable crossing-endpoint sequence across the middle cut of a k x 2(slack+1) grid.

    A simple path from the west column to the east column crosses the cut at
    rows E; between crossings it lives entirely in one half.  So the path
    exists iff the west half admits disjoint paths for the near pairing (plus
    a path from the west column to f) and the east half admits disjoint paths
    for the far pairing (plus one from lst to the east column), and the two
    pairings chain into a single sequence.  All perfect matchings are tried,
    crossing ones included, and each half is decided by exhaustive search.
    """
    if not (1 <= k <= CENSUS_LIMIT and 0 <= slack <= CENSUS_LIMIT):
        raise ValueError(f"census limited to k <= {CENSUS_LIMIT} and slack <= {CENSUS_LIMIT}")
    width = slack + 1
    c0, c1 = width - 1, width
    jobs = [(E, f, lst) for e in range(1, k + 1, 2) for E in combinations(range(1, k + 1), e)
            for f in E for lst in E]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_census_class, [(k, width, c0, c1, E, f, lst) for E, f, lst in jobs]))
    else:
        parts = [_census_class((k, width, c0, c1, E, f, lst)) for E, f, lst in jobs]
    classes = {}
    for (E, f, lst), seqs in zip(jobs, parts):
        if seqs:
            classes[(frozenset(E), f, lst)] = seqs
    return CensusResult(k, slack, classes)


def _census_class(args) -> Set[Tuple[Endpoint, ...]]:
    k, width, c0, c1, E, f, lst = args
    Ef = frozenset(E)
    near = [M for M in perfect_matchings(sorted(Ef - {f}))
            if _left_ok(k, width, c0, Ef, f, tuple(M))]
    far = [M for M in perfect_matchings(sorted(Ef - {lst}))
           if _right_ok(k, width, c1, Ef, lst, tuple(M))]
    out = set()
    for M0 in near:
        for M1 in far:
            pi = crossing_sequence(M0, M1, f, lst)
            if len(pi) == 2 * len(E):
                out.add(pi)
    return out


@lru_cache(maxsize=None)
def _left_ok(k, width, c0, E, f, M) -> bool:
    return _half_realizable(k, range(0, width), c0, 0, E, f, M)


@lru_cache(maxsize=None)
def _right_ok(k, width, c1, E, lst, M) -> bool:
    return _half_realizable(k, range(c1, c1 + width), c1, c1 + width - 1, E, lst, M)


def simple_path_census(k: int, slack: int) -> Set[Tuple[Endpoint, ...]]:
    """Direct enumeration of all simple paths (tiny grids only): an independent oracle."""
    width = 2 * (slack + 1)
    c0 = slack
    found: Set[Tuple[Endpoint, ...]] = set()

    def rec(v, visited, crossings):
        r, c = v
        if c == width - 1:
            found.add(tuple(crossings))
        for w in _nbrs(v):
            wr, wc = w
            if 1 <= wr <= k and 0 <= wc < width and w not in visited:
                visited.add(w)
                if {c, wc} == {c0, c0 + 1}:
                    crossings.extend([(c - c0, r), (wc - c0, wr)])
                    rec(w, visited, crossings)
                    del crossings[-2:]
                else:
                    rec(w, visited, crossings)
                visited.remove(w)

    for r in range(1, k + 1):
        rec((r, 0), {(r, 0)}, [])
    return {s for s in found if s}


@dataclass
class AuditResult:
    ok: bool
    census: CensusResult
    rows: List[Tuple[int, int, int]]  # (e, census count, bound)
    violations: List[str]


def audit_crossings(k: int, slack: int = 3, workers: int = 1) -> AuditResult:
    census = brute_force_crossing_census(k, slack, workers)
    by_e = census.by_e()
    rows, bad = [], []
    for e in range(1, k + 1, 2):
        got, bound = by_e.get(e, 0), crossing_upper_bound(k, e)
        rows.append((e, got, bound))
        if got > bound:
            bad.append(f"e={e}: census {got} > bound {bound}")
    for (E, f, lst), seqs in sorted(census.classes.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][1:])):
        cap = catalan((len(E) - 1) // 2) ** 2
        if len(seqs) > cap:
            bad.append(f"E={sorted(E)} f={f} lst={lst}: {len(seqs)} > {cap}")
    return AuditResult(not bad, census, rows, bad)
