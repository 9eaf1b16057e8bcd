"""Canonical JSON documents for tile sets and assemblies, and SVG rendering."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

from .core import DIRECTIONS, OPPOSITE, TAS, Assembly, AssemblyError, Glue, Pos, TileType, binds, step

FORMAT_VERSION = 1
TILES_SUFFIX = ".tiles.json"
ASSEMBLY_SUFFIX = ".asm.json"


class FormatError(ValueError):
    """Malformed or inconsistent interchange document."""


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _glue_doc(g: Glue) -> Dict[str, Any]:
    return {"label": g.label, "strength": g.strength}


def tileset_to_doc(tas: TAS) -> Dict[str, Any]:
    return {
        "formatVersion": FORMAT_VERSION,
        "kind": "tileset",
        "temperature": tas.temperature,
        "justBarely3D": tas.just_barely_3d,
        "seed": sorted(({"tile": t.name, "x": p[0], "y": p[1], "z": p[2]} for p, t in tas.seed.items()),
                       key=lambda r: (r["x"], r["y"], r["z"])),
        "tiles": sorted(({"name": t.name, "glues": {d: _glue_doc(t.glue(d)) for d in DIRECTIONS}}
                         for t in tas.tiles), key=lambda r: r["name"]),
    }


def serialize_tileset(tas: TAS) -> str:
    return canonical_json(tileset_to_doc(tas))


def _check_version(doc: Mapping[str, Any], kind: str) -> None:
    if not isinstance(doc, Mapping):
        raise FormatError("document must be a JSON object")
    if doc.get("formatVersion") != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {doc.get('formatVersion')!r}")
    if doc.get("kind", kind) != kind:
        raise FormatError(f"expected a {kind} document, got {doc.get('kind')!r}")


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def doc_to_tileset(doc: Mapping[str, Any]) -> TAS:
    _check_version(doc, "tileset")
    records = doc.get("tiles") or []
    if not records:
        raise FormatError("tile set must be non-empty")
    tiles: Dict[str, TileType] = {}
    try:
        for rec in records:
            name = rec["name"]
            if name in tiles:
                raise FormatError(f"duplicate tile name {name!r}")
            glues = rec["glues"]
            if set(glues) != set(DIRECTIONS):
                raise FormatError(f"tile {name!r} must list glues for {','.join(DIRECTIONS)}")
            tiles[name] = TileType(name, tuple(Glue(str(glues[d]["label"]), int(glues[d]["strength"]))
                                               for d in DIRECTIONS))
        seed_cells: Dict[Pos, TileType] = {}
        for rec in doc.get("seed") or []:
            p = (int(rec["x"]), int(rec["y"]), int(rec["z"]))
            if p in seed_cells:
                raise FormatError(f"duplicate seed position {p}")
            if rec["tile"] not in tiles:
                raise FormatError(f"unknown tile reference {rec['tile']!r}")
            seed_cells[p] = tiles[rec["tile"]]
        return TAS(tuple(tiles.values()), Assembly(seed_cells), int(doc.get("temperature", 1)),
                   bool(doc.get("justBarely3D", True)))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed tile set document: missing or bad field {exc}") from exc
    except AssemblyError as exc:
        raise FormatError(str(exc)) from exc


def parse_tileset(text: str) -> TAS:
    return doc_to_tileset(_load(text))


def assembly_to_doc(alpha: Mapping[Pos, TileType], provenance: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "formatVersion": FORMAT_VERSION,
        "kind": "assembly",
        "tiles": [{"x": p[0], "y": p[1], "z": p[2], "tile": alpha[p].name} for p in sorted(alpha)],
    }
    if provenance:
        doc["provenance"] = dict(provenance)
    return doc


def serialize_assembly(alpha: Mapping[Pos, TileType], provenance: Optional[Mapping[str, Any]] = None) -> str:
    return canonical_json(assembly_to_doc(alpha, provenance))


def doc_to_assembly(doc: Mapping[str, Any], tas: TAS) -> Assembly:
    _check_version(doc, "assembly")
    cells: Dict[Pos, TileType] = {}
    try:
        for rec in doc.get("tiles") or []:
            p = (int(rec["x"]), int(rec["y"]), int(rec["z"]))
            if p in cells:
                raise FormatError(f"duplicate position {p}")
            try:
                cells[p] = tas.tile(rec["tile"])
            except KeyError:
                raise FormatError(f"unknown tile reference {rec['tile']!r}") from None
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed assembly document: missing or bad field {exc}") from exc
    return Assembly(cells)


def parse_assembly(text: str, tas: TAS) -> Assembly:
    return doc_to_assembly(_load(text), tas)


def canonicalize(text: str) -> str:
    """Canonical form of a tile set or assembly document (validated structurally)."""
    doc = _load(text)
    if isinstance(doc, Mapping) and doc.get("kind") == "assembly":
        _check_version(doc, "assembly")
        doc = dict(doc)
        doc["tiles"] = sorted(doc.get("tiles") or [], key=lambda r: (r["x"], r["y"], r["z"]))
        return canonical_json(doc)
    return serialize_tileset(parse_tileset(text))


# --------------------------------------------------------------------------
# SVG


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderOptions:
    cell: int = 12
    inset: float = 0.5  # side of a z=1 square relative to a cell
    margin: int = 4
    max_width: int = 20000
    max_height: int = 20000
    shade: Optional[Callable[[TileType], bool]] = None


def _vertical_bond(alpha: Mapping[Pos, TileType], x: int, y: int) -> bool:
    lo, hi = alpha.get((x, y, 0)), alpha.get((x, y, 1))
    return lo is not None and hi is not None and binds(lo.glue("U"), hi.glue("D"))


def render_svg(alpha: Mapping[Pos, TileType], options: RenderOptions = RenderOptions()) -> str:
    """Draw z=0 tiles as large squares, z=1 tiles as inset squares, and vertical bonds as disks.

    Bonds inside a plane are strokes between tile centres: thick for z=0,
    thin for z=1.
    """
    if not alpha:
        raise RenderError("nothing to render: empty assembly")
    xs = [p[0] for p in alpha]
    ys = [p[1] for p in alpha]
    x_min, x_max, y_min, y_max = min(xs), max(xs), min(ys), max(ys)
    c, m = options.cell, options.margin
    width = (x_max - x_min + 1) * c + 2 * m
    height = (y_max - y_min + 1) * c + 2 * m
    if width > options.max_width or height > options.max_height:
        raise RenderError(f"viewport overflow: needs {width}x{height} px, "
                          f"limit {options.max_width}x{options.max_height}")

    def origin(x: int, y: int) -> Tuple[float, float]:
        return m + (x - x_min) * c, m + (y_max - y) * c

    def centre(p: Pos) -> Tuple[float, float]:
        ox, oy = origin(p[0], p[1])
        return ox + c / 2, oy + c / 2

    big, small, strokes, disks = [], [], [], []
    s = c * options.inset
    for p in sorted(alpha):
        t = alpha[p]
        ox, oy = origin(p[0], p[1])
        fill = "#bbbbbb" if options.shade and options.shade(t) else "#ffffff"
        if p[2] == 0:
            big.append(f'<rect class="t0" x="{ox:g}" y="{oy:g}" width="{c}" height="{c}" fill="{fill}"/>')
        else:
            off = (c - s) / 2
            small.append(f'<rect class="t1" x="{ox + off:g}" y="{oy + off:g}" width="{s:g}" height="{s:g}" '
                         f'fill="{fill}"/>')
        for d in ("N", "E"):
            q = step(p, d)
            u = alpha.get(q)
            if u is not None and binds(t.glue(d), u.glue(OPPOSITE[d])):
                (x1, y1), (x2, y2) = centre(p), centre(q)
                cls, w = ("b0", 3) if p[2] == 0 else ("b1", 1)
                strokes.append(f'<line class="{cls}" x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" '
                               f'stroke-width="{w}"/>')
        if p[2] == 0 and _vertical_bond(alpha, p[0], p[1]):
            cx, cy = centre(p)
            disks.append(f'<circle class="zb" cx="{cx:g}" cy="{cy:g}" r="{c / 8:g}"/>')
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<style>.t0,.t1{stroke:#000;stroke-width:0.5}.b0,.b1{stroke:#000}.zb{fill:#000}</style>',
        '<g id="z0">', *big, '</g>',
        '<g id="bonds">', *strokes, '</g>',
        '<g id="z1">', *small, '</g>',
        '<g id="zbonds">', *disks, '</g>',
        '</svg>',
    ]
    return "\n".join(parts) + "\n"


_CLASS_RE = re.compile(r'class="(t0|t1|b0|b1|zb)"')


def svg_element_counts(svg: str) -> Dict[str, int]:
    """Tally rendered elements by class: t0, t1 squares, b0, b1 strokes, zb disks."""
    counts = {k: 0 for k in ("t0", "t1", "b0", "b1", "zb")}
    for m in _CLASS_RE.finditer(svg):
        counts[m.group(1)] += 1
    return counts


def expected_element_counts(alpha: Mapping[Pos, TileType]) -> Dict[str, int]:
    """The element-count law computed directly from the assembly."""
    out = {"t0": 0, "t1": 0, "b0": 0, "b1": 0, "zb": 0}
    for p, t in alpha.items():
        out["t0" if p[2] == 0 else "t1"] += 1
        for d in ("N", "E"):
            u = alpha.get(step(p, d))
            if u is not None and binds(t.glue(d), u.glue(OPPOSITE[d])):
                out["b0" if p[2] == 0 else "b1"] += 1
        if p[2] == 0 and _vertical_bond(alpha, p[0], p[1]):
            out["zb"] += 1
    return out
