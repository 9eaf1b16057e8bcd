"""Abstract Tile Assembly Model: glues, tiles, assemblies and single-step semantics.

Positions are integer triples ``(x, y, z)`` with x growing east, y growing
north and z growing "up" out of the plane.  Two-dimensional systems are the
special case z == 0 with null U/D glues; just-barely-3D systems restrict z to
{0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

Pos = Tuple[int, int, int]

DIRECTIONS: Tuple[str, ...] = ("N", "E", "S", "W", "U", "D")
OFFSETS: Dict[str, Pos] = {
    "N": (0, 1, 0),
    "E": (1, 0, 0),
    "S": (0, -1, 0),
    "W": (-1, 0, 0),
    "U": (0, 0, 1),
    "D": (0, 0, -1),
}
OPPOSITE: Dict[str, str] = {"N": "S", "S": "N", "E": "W", "W": "E", "U": "D", "D": "U"}


class AssemblyError(ValueError):
    """Raised for illegal assemblies or attachments."""


def step(p: Pos, direction: str) -> Pos:
    dx, dy, dz = OFFSETS[direction]
    return (p[0] + dx, p[1] + dy, p[2] + dz)


def direction_between(p: Pos, q: Pos) -> Optional[str]:
    """Direction d with step(p, d) == q, or None if p and q are not adjacent."""
    delta = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
    for d, off in OFFSETS.items():
        if off == delta:
            return d
    return None


@dataclass(frozen=True, order=True)
class Glue:
    label: str = ""
    strength: int = 0

    def __post_init__(self) -> None:
        if self.strength < 0:
            raise ValueError("glue strength must be non-negative")

    @property
    def is_null(self) -> bool:
        return self.strength == 0


NULL_GLUE = Glue("", 0)


def binds(a: Glue, b: Glue) -> bool:
    return a.label == b.label and a.strength == b.strength and a.strength > 0


@dataclass(frozen=True)
class TileType:
    name: str
    glues: Tuple[Glue, ...] = field(default=(NULL_GLUE,) * 6)

    def __post_init__(self) -> None:
        if len(self.glues) != 6:
            raise ValueError("a tile type carries exactly six glues (N,E,S,W,U,D)")

    @classmethod
    def make(cls, name: str, **sides: Glue) -> "TileType":
        unknown = set(sides) - set(DIRECTIONS)
        if unknown:
            raise ValueError(f"unknown sides {sorted(unknown)}")
        return cls(name, tuple(sides.get(d, NULL_GLUE) for d in DIRECTIONS))

    def glue(self, direction: str) -> Glue:
        return self.glues[DIRECTIONS.index(direction)]

    def sides(self) -> Dict[str, Glue]:
        return dict(zip(DIRECTIONS, self.glues))

    def same_sides(self, other: "TileType") -> bool:
        return self.glues == other.glues


def duplicate_side_groups(tiles: Iterable[TileType]) -> List[List[str]]:
    """Lint: groups of distinct names whose six glues coincide."""
    groups: Dict[Tuple[Glue, ...], List[str]] = {}
    for t in tiles:
        groups.setdefault(t.glues, []).append(t.name)
    return [sorted(names) for names in groups.values() if len(names) > 1]


class Assembly(Mapping[Pos, TileType]):
    """An immutable partial map from positions to tile types."""

    __slots__ = ("_cells",)

    def __init__(self, placements: Mapping[Pos, TileType] | Iterable[Tuple[Pos, TileType]] = ()):
        cells = dict(placements)
        for p in cells:
            if len(p) != 3:
                raise AssemblyError(f"position {p!r} is not a 3-tuple")
        self._cells = MappingProxyType(cells)

    def __getitem__(self, p: Pos) -> TileType:
        return self._cells[p]

    def __iter__(self) -> Iterator[Pos]:
        return iter(self._cells)

    def __len__(self) -> int:
        return len(self._cells)

    def __repr__(self) -> str:
        return f"Assembly({len(self)} tiles)"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Assembly):
            return dict(self._cells) == dict(other._cells)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._cells.items()))

    def plus(self, p: Pos, t: TileType) -> "Assembly":
        cells = dict(self._cells)
        cells[p] = t
        return Assembly(cells)

    def bounding_box(self) -> Tuple[Pos, Pos]:
        xs, ys, zs = zip(*self._cells)
        return (min(xs), min(ys), min(zs)), (max(xs), max(ys), max(zs))


@dataclass(frozen=True)
class TAS:
    """A tile assembly system (T, sigma, tau)."""

    tiles: Tuple[TileType, ...]
    seed: Assembly
    temperature: int = 1
    just_barely_3d: bool = True

    def __post_init__(self) -> None:
        if self.temperature < 1:
            raise ValueError("temperature must be positive")
        names = [t.name for t in self.tiles]
        if len(set(names)) != len(names):
            raise ValueError("tile names must be unique within a tile set")
        if len(self.seed) == 0:
            raise AssemblyError("empty assembly")
        if not is_stable(self.seed, self.temperature):
            raise AssemblyError("seed assembly is not stable")
        index: Dict[Tuple[str, Glue], List[TileType]] = {}
        for t in self.tiles:
            for d, g in zip(DIRECTIONS, t.glues):
                if g.strength > 0:
                    index.setdefault((d, g), []).append(t)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_by_name", {t.name: t for t in self.tiles})

    def tile(self, name: str) -> TileType:
        return self._by_name[name]  # type: ignore[attr-defined]

    def presenting(self, direction: str, glue: Glue) -> List[TileType]:
        """Tile types whose side ``direction`` carries exactly ``glue``."""
        return self._index.get((direction, glue), [])  # type: ignore[attr-defined]

    def allowed(self, p: Pos) -> bool:
        return p[2] in (0, 1) if self.just_barely_3d else True

    def without(self, names: Iterable[str]) -> "TAS":
        drop = set(names)
        return TAS(tuple(t for t in self.tiles if t.name not in drop), self.seed,
                   self.temperature, self.just_barely_3d)


def bond_strength(alpha: Mapping[Pos, TileType], p: Pos, t: TileType) -> int:
    """Total strength with which ``t`` placed at ``p`` binds to ``alpha``."""
    total = 0
    for d in DIRECTIONS:
        q = step(p, d)
        u = alpha.get(q)
        if u is not None:
            g = t.glue(d)
            if binds(g, u.glue(OPPOSITE[d])):
                total += g.strength
    return total


def binding_graph(alpha: Mapping[Pos, TileType]) -> nx.Graph:
    if len(alpha) == 0:
        raise AssemblyError("empty assembly")
    g = nx.Graph()
    g.add_nodes_from(alpha)
    for p, t in alpha.items():
        for d in ("N", "E", "U"):
            q = step(p, d)
            u = alpha.get(q)
            if u is not None and binds(t.glue(d), u.glue(OPPOSITE[d])):
                g.add_edge(p, q, weight=t.glue(d).strength)
    return g


def is_stable(alpha: Mapping[Pos, TileType], temperature: int = 1) -> bool:
    """Every cut of the binding graph has weight at least ``temperature``."""
    g = binding_graph(alpha)
    if g.number_of_nodes() == 1:
        return True
    if not nx.is_connected(g):
        return False
    if temperature == 1:
        return True
    cut, _ = nx.stoer_wagner(g)
    return cut >= temperature


def _candidates_at(tas: TAS, alpha: Mapping[Pos, TileType], p: Pos) -> Dict[TileType, int]:
    """Tile types attachable at empty position ``p`` with their binding strength."""
    found: Dict[TileType, int] = {}
    for d in DIRECTIONS:
        u = alpha.get(step(p, d))
        if u is None:
            continue
        g = u.glue(OPPOSITE[d])
        if g.strength <= 0:
            continue
        for t in tas.presenting(d, g):
            if t not in found:
                found[t] = bond_strength(alpha, p, t)
    return {t: s for t, s in found.items() if s >= tas.temperature}


def frontier(tas: TAS, alpha: Mapping[Pos, TileType]) -> set:
    """All (position, tile) pairs attachable to ``alpha``; computed from scratch."""
    out = set()
    empties = {step(p, d) for p in alpha for d in DIRECTIONS} - set(alpha)
    for p in empties:
        if not tas.allowed(p):
            continue
        for t in _candidates_at(tas, alpha, p):
            out.add((p, t))
    return out


def attach(tas: TAS, alpha: Assembly, p: Pos, t: TileType) -> Assembly:
    if p in alpha:
        raise AssemblyError("illegal attachment")
    if not tas.allowed(p) or bond_strength(alpha, p, t) < tas.temperature:
        raise AssemblyError("illegal attachment")
    return alpha.plus(p, t)


def is_terminal(tas: TAS, alpha: Mapping[Pos, TileType]) -> bool:
    return not frontier(tas, alpha)


class FrontierTracker:
    """Mutable assembly with an incrementally maintained frontier.

    After each attachment only the empty neighbours of the new tile are
    re-examined, which is all that can change at any temperature.
    """

    def __init__(self, tas: TAS, alpha: Optional[Mapping[Pos, TileType]] = None):
        self.tas = tas
        self.cells: Dict[Pos, TileType] = dict(alpha if alpha is not None else tas.seed)
        self._front: Dict[Pos, Dict[TileType, int]] = {}
        for p in list(self.cells):
            self._refresh_around(p)

    def _refresh(self, p: Pos) -> None:
        if p in self.cells or not self.tas.allowed(p):
            self._front.pop(p, None)
            return
        cands = _candidates_at(self.tas, self.cells, p)
        if cands:
            self._front[p] = cands
        else:
            self._front.pop(p, None)

    def _refresh_around(self, p: Pos) -> None:
        self._front.pop(p, None)
        for d in DIRECTIONS:
            self._refresh(step(p, d))

    def attach(self, p: Pos, t: TileType) -> None:
        cands = self._front.get(p)
        if cands is None or t not in cands:
            raise AssemblyError("illegal attachment")
        self.cells[p] = t
        self._refresh_around(p)

    def frontier(self) -> set:
        return {(p, t) for p, c in self._front.items() for t in c}

    def frontier_at(self, p: Pos) -> Sequence[TileType]:
        return tuple(self._front.get(p, ()))

    def positions(self) -> List[Pos]:
        return list(self._front)

    def is_terminal(self) -> bool:
        return not self._front

    def assembly(self) -> Assembly:
        return Assembly(self.cells)
