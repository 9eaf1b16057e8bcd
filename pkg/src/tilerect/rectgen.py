"""Tile-set generator for the just-barely-3D k x N rectangle construction.

The construction is a zig-zag base-m counter whose digits sit side by side
in 3-wide strips (x grows east, y grows north; the vertical frame).  Each
digit is stored as l bits stacked vertically, 3 rows per bit, the lowest bit
flagging the most significant digit ("left edge").  Bits are bumps: a writer
path blocks one of two positions next to a later reader's guess tile, so the
reader's path can only continue through the other one.

Every gadget is a path of tiles whose internal glues are private to the
gadget; the inter-gadget glues are the ``<...>`` labels produced by
:func:`encode_label`.  Templates below are written in a strip-local frame
(W=0, M=1, E=2 within a digit strip; y relative to the bit cell) and then
normalised so the first cell sits at relative (0, 0, z).
"""

from __future__ import annotations

from collections import Counter, OrderedDict
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import NULL_GLUE, OFFSETS, OPPOSITE, TAS, Assembly, Glue, Pos, TileType, duplicate_side_groups
from .params import ConstructionParams, compute_params

SEPARATOR = ","
RESERVED = (SEPARATOR, "#", "/")

W, M, E = 0, 1, 2  # columns of a digit strip
UNITS = ("seed", "counter", "return_row", "roof", "filler")

# Gadget families drawn gray in renders (they lay down the bit bumps).
WRITE_FAMILIES = frozenset({"Seed_Msb", "Seed_Bit", "Counter_Write", "Counter_Write_Msb"})


def encode_label(tokens: Sequence[object]) -> str:
    parts = [str(t) for t in tokens]
    if not parts:
        raise ValueError("empty label is reserved for the null glue")
    for p in parts:
        if p == "" or any(ch in p for ch in RESERVED):
            raise ValueError(f"token {p!r} is empty or contains a reserved character")
    return SEPARATOR.join(parts)


def bin_str(a: int, b: int) -> str:
    """The b low-order bits of a, most significant first."""
    if a < 0 or b < 0:
        raise ValueError("bin_str needs non-negative arguments")
    if b == 0:
        return ""
    return format(a % (1 << b), f"0{b}b")


def digit(a: int, base: int, i: int) -> int:
    """The i-th base-``base`` digit of a, counting from 1 at the right."""
    if base < 2 or i < 1:
        raise ValueError("digit needs base >= 2 and i >= 1")
    return (a // base ** (i - 1)) % base


def glue(*tokens: object) -> Glue:
    return Glue(encode_label(tokens), 1)


D_FILL = glue("d_fill")


@dataclass(frozen=True)
class Gadget:
    name: str
    family: str
    unit: str
    input: Optional[Tuple[str, Glue]]
    outputs: Tuple[Tuple[Pos, str, Glue], ...]
    cells: Tuple[Tuple[Pos, TileType], ...]
    input_sides: Tuple[Optional[str], ...] = ()

    @property
    def tiles(self) -> List[TileType]:
        return [t for _, t in self.cells]


def make_gadget(
    family: str,
    unit: str,
    path: Sequence[Pos],
    input_side: Optional[str],
    input_glue: Optional[Glue],
    outputs: Sequence[Tuple[int, str, Glue]] = (),
    leaves: Sequence[Tuple[int, str]] = (),
    name: Optional[str] = None,
) -> Gadget:
    """Build a gadget from a path of positions.

    ``outputs`` are (path index, side, glue); ``leaves`` are (path index, side)
    and hang one extra tile off that path cell.
    """
    if name is None:
        name = f"{family}[{input_glue.label}]" if input_glue is not None else family
    x0, y0 = path[0][0], path[0][1]
    rel = [(x - x0, y - y0, z) for x, y, z in path]
    sides: List[Dict[str, Glue]] = [dict() for _ in rel]
    in_sides: List[Optional[str]] = [input_side if input_glue is not None else None]
    for i in range(len(rel) - 1):
        d = _dir(rel[i], rel[i + 1])
        g = Glue(f"{name}#{i}", 1)
        sides[i][d] = g
        sides[i + 1][OPPOSITE[d]] = g
        in_sides.append(OPPOSITE[d])
    if input_glue is not None:
        sides[0][input_side] = input_glue
    outs = []
    for idx, side, g in outputs:
        if side in sides[idx]:
            raise ValueError(f"{name}: side {side} of cell {idx} already used")
        sides[idx][side] = g
        outs.append((rel[idx], side, g))
    leaf_cells = []
    for j, (idx, side) in enumerate(leaves):
        g = Glue(f"{name}#L{j}", 1)
        sides[idx][side] = g
        dx, dy, dz = OFFSETS[side]
        p = rel[idx]
        leaf_cells.append(((p[0] + dx, p[1] + dy, p[2] + dz), {OPPOSITE[side]: g}))
        in_sides.append(OPPOSITE[side])
    cells = []
    for i, (p, s) in enumerate(list(zip(rel, sides)) + leaf_cells):
        cells.append((p, TileType.make(f"{name}/{i}", **s)))
    positions = [p for p, _ in cells]
    if len(set(positions)) != len(positions):
        raise ValueError(f"{name}: template overlaps itself")
    return Gadget(name, family, unit, (input_side, input_glue) if input_glue else None,
                  tuple(outs), tuple(cells), tuple(in_sides))


def _dir(p: Pos, q: Pos) -> str:
    delta = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
    for d, off in OFFSETS.items():
        if off == delta:
            return d
    raise ValueError(f"template cells {p} and {q} are not adjacent")


# --------------------------------------------------------------------------
# Bit-cell templates, strip-local (column, y, z) with y relative to the cell.

def write_up(bit: int) -> List[Pos]:
    """Upward writer through one bit cell, entering (M,0,z0) from the south."""
    if bit:
        return [(M, 0, 0), (E, 0, 0), (E, 1, 0), (M, 1, 0), (M, 2, 0)]
    return [(M, 0, 0), (M, 0, 1), (M, 1, 1), (M, 1, 0), (M, 2, 0)]


def write_down(bit: int, top: int) -> List[Pos]:
    """Downward writer (seed) through the cell whose top row is ``top``."""
    b = top - 2
    if bit:
        return [(M, b + 2, 0), (M, b + 1, 0), (E, b + 1, 0), (E, b, 0), (M, b, 0)]
    return [(M, b + 2, 0), (M, b + 1, 0), (M, b + 1, 1), (M, b, 1), (M, b, 0)]


def read_path(bit: int) -> Tuple[List[Pos], str, List[Tuple[int, str]]]:
    """Reader path for a cell whose guess tile sits at (E, 0, z1).

    Returns the path up to (E, 2, z1), the input side of its first tile, and
    the filler leaves it carries.
    """
    if bit:
        return [(M, 0, 1), (M, 1, 1), (E, 1, 1), (E, 2, 1)], "E", [(3, "D")]
    return [(E, 0, 0), (E, 1, 0), (E, 2, 0), (E, 2, 1)], "U", []


def guess_outputs(op: str, suffix: str) -> List[Tuple[str, Glue]]:
    return [("W", glue(op, "read", "1" + suffix)), ("D", glue(op, "read", "0" + suffix))]


# --------------------------------------------------------------------------
# Units


def gen_seed_unit(p: ConstructionParams) -> List[Gadget]:
    d, l, c, s = p.d, p.l, p.c, p.s
    out: List[Gadget] = []

    def x0(i: int) -> int:
        return c + 3 * (d - i)

    def shift(cells: Iterable[Pos], i: int) -> List[Pos]:
        return [(x0(i) + x, y, z) for x, y, z in cells]

    start = [(x, 0, 0) for x in range(c)] + [(c, 0, 0), (c, 1, 0)]
    out.append(make_gadget("Seed_Start", "seed", start, None, None,
                           [(len(start) - 1, "N", glue("seed", "col", d, 1))],
                           name=f"Seed_Start_{c}"))
    for i in range(1, d + 1):
        code = bin_str(2 * digit(s, p.m, i) + (1 if i == d else 0), l)

        def bit(j: int) -> int:  # j-th bit from the right, 1-indexed
            return int(code[l - j])

        for j in range(1, 3 * l - 2):
            out.append(make_gadget("Up_Column", "seed", [(x0(i), 1 + j, 0)], "S",
                                   glue("seed", "col", i, j),
                                   [(0, "N", glue("seed", "col", i, j + 1))]))
        top = 3 * l
        path = shift([(W, top - 1, 0), (W, top, 0)] + write_down(bit(l), top), i)
        out.append(make_gadget("Seed_Msb", "seed", path, "S", glue("seed", "col", i, 3 * l - 2),
                               [(len(path) - 1, "S", glue("seed", "bit", i, l - 1))],
                               name=f"Seed_Msb_{bit(l)}[{encode_label(('seed', 'col', i, 3 * l - 2))}]"))
        for j in range(l - 1, 1, -1):
            out.append(_seed_bit(i, j, bit(j), shift(write_down(bit(j), 3 * j), i)))
    out.append(_seed_bit(d, 1, 1, shift(write_down(1, 3), d)))
    for i in range(1, d):
        out.append(_seed_bit(i, 1, 0, shift(write_down(0, 3), i)))
        path = [(x0(i + 1) + M, 0, 0), (x0(i + 1) + E, 0, 0), (x0(i), 0, 0), (x0(i), 1, 0)]
        out.append(make_gadget("Seed_Spacer", "seed", path, "N", glue("seed", "bit", i + 1, 0),
                               [(3, "N", glue("seed", "col", i, 1))]))
    path = [(x0(1) + M, 0, 0), (x0(1) + E, 0, 0), (x0(1) + E, 0, 1), (x0(1) + E, 1, 1)]
    out.append(make_gadget("Seed_End", "seed", path, "N", glue("seed", "bit", 1, 0),
                           [(3, side, g) for side, g in guess_outputs("inc", "")]))
    return out


def _seed_bit(i: int, j: int, b: int, path: List[Pos]) -> Gadget:
    g_in = glue("seed", "bit", i, j)
    return make_gadget("Seed_Bit", "seed", path, "N", g_in,
                       [(len(path) - 1, "S", glue("seed", "bit", i, j - 1))],
                       name=f"Seed_Bit_{b}[{g_in.label}]")


def gen_counter_units(p: ConstructionParams) -> List[Gadget]:
    l, m = p.l, p.m
    out: List[Gadget] = []

    # Counter_Read: reads bit i+1 and guesses bit i+2.
    for op in ("inc", "copy"):
        for i in range(l - 1):
            for u in _words(i):
                for b in (0, 1):
                    path, side, leaves = read_path(b)
                    path = path + [(E, 3, 1)]
                    suffix = f"{b}{u}"
                    out.append(make_gadget(
                        "Counter_Read", "counter", path, side, glue(op, "read", suffix),
                        [(len(path) - 1, s, g) for s, g in guess_outputs(op, suffix)], leaves,
                        name=f"Counter_Read_{b}[{encode_label((op, 'read', suffix))}]"))

    # Counter_Read_Msb: reads the top bit, hands the value to the writer.
    def read_msb(op: str, value: int, write: Glue) -> Gadget:
        code = bin_str(value, l)
        path, side, leaves = read_path(int(code[0]))
        path = path + [(E, 3, 1), (E, 3, 0), (E, 4, 0), (M, 4, 0)]
        n = len(path) - 1
        return make_gadget("Counter_Read_Msb", "counter", path, side, glue(op, "read", code),
                           [(n, "N", write), (n, "S", D_FILL)], leaves)

    for i in range(2 * m):
        out.append(read_msb("copy", i, glue("copy", "write", bin_str(i, l))))
    for i in range(2 * m - 2):
        out.append(read_msb("inc", i, glue("copy", "write", bin_str(i + 2, l))))
    out.append(read_msb("inc", 2 * m - 2, glue("inc", "write_all_0s", 1)))

    # Counter_Write: bits 1..l-1, bottom to top.
    def writer(g_in: Glue, b: int, g_out: Glue) -> Gadget:
        path = write_up(b)
        return make_gadget("Counter_Write", "counter", path, "S", g_in, [(4, "N", g_out)],
                           name=f"Counter_Write_{b}[{g_in.label}]")

    for i in range(1, l):
        out.append(writer(glue("inc", "write_all_0s", i), 0, glue("inc", "write_all_0s", i + 1)))
    for u in _words(l - 1):
        out.append(writer(glue("copy", "write", u + "0"), 0, glue("copy", "write", u)))
        out.append(writer(glue("copy", "write", u + "1"), 1, glue("msd", "write", u)))
    for i in range(1, l - 1):
        for u in _words(i):
            for op in ("copy", "msd"):
                for b in (0, 1):
                    out.append(writer(glue(op, "write", f"{u}{b}"), b, glue(op, "write", u)))

    # Counter_Write_Msb: top bit, then step west onto the descent column.
    def write_msb(g_in: Glue, b: int, op: str) -> Gadget:
        path = write_up(b) + [(W, 2, 0)]
        return make_gadget("Counter_Write_Msb", "counter", path, "S", g_in,
                           [(len(path) - 1, "S", glue(op, "down_z_0", 1))],
                           name=f"Counter_Write_Msb_{b}[{g_in.label}]")

    out.append(write_msb(glue("inc", "write_all_0s", l), 0, "inc"))
    for op in ("copy", "msd"):
        for b in (0, 1):
            out.append(write_msb(glue(op, "write", str(b)), b, op))

    # Down_Column in the z=0 plane of the strip's west column.
    for op, count in (("inc", 3 * l - 2), ("copy", 3 * l - 2), ("msd", 3 * l - 3)):
        for i in range(1, count + 1):
            out.append(make_gadget("Down_Column", "counter", [(W, 0, 0)], "N",
                                   glue(op, "down_z_0", i), [(0, "S", glue(op, "down_z_0", i + 1))]))

    # Return column: finish the z=0 descent, climb to z=1, descend, guess west.
    for op in ("inc", "copy"):
        path = [(W, 0, 0), (W, -1, 0), (W, -2, 0), (W, -2, 1)]
        out.append(make_gadget("Counter_Return_Column_Start", "counter", path, "N",
                               glue(op, "down_z_0", 3 * l - 1), [(3, "S", glue(op, "down_z_1", 1))]))
        for i in range(1, l):
            path = [(W, 0, 1), (W, -1, 1), (W, -2, 1)]
            out.append(make_gadget("Counter_Return_Column", "counter", path, "N",
                                   glue(op, "down_z_1", i), [(2, "S", glue(op, "down_z_1", i + 1))]))
        path = [(W, 0, 1), (W, -1, 1), (W, -2, 1), (W - 1, -2, 1)]
        out.append(make_gadget("Counter_Return_Column_End", "counter", path, "N",
                               glue(op, "down_z_1", l),
                               [(3, s, g) for s, g in guess_outputs(op, "")]))
    return out


def gen_return_row(p: ConstructionParams) -> List[Gadget]:
    l, d = p.l, p.d
    g_in = glue("msd", "down_z_0", 3 * l - 2)
    head = [(W, 1, 0), (W, 0, 0), (W, -1, 0), (W, -1, 1), (M, -1, 1), (E, -1, 1)]
    if d == 1:
        path = head + [(E, 0, 1)]
        n = len(path) - 1
        return [make_gadget("Return_Row_Single", "return_row", path, "N", g_in,
                            [(2, "S", D_FILL)] + [(n, s, g) for s, g in guess_outputs("inc", "")])]
    out = [make_gadget("Return_Row_Start", "return_row", head, "N", g_in,
                       [(2, "S", D_FILL), (5, "E", glue("return", 1))])]
    for i in range(1, d - 1):
        out.append(make_gadget("Return_Row", "return_row", [(W, 0, 1), (M, 0, 1), (E, 0, 1)], "W",
                               glue("return", i), [(2, "E", glue("return", i + 1))]))
    path = [(W, 0, 1), (M, 0, 1), (E, 0, 1), (E, 1, 1)]
    out.append(make_gadget("Return_Row_End", "return_row", path, "W", glue("return", d - 1),
                           [(3, s, g) for s, g in guess_outputs("inc", "")]))
    return out


def gen_roof(p: ConstructionParams) -> List[Gadget]:
    """The roof grows from the most significant digit once it overflows.

    Local y = 0 is the base of the top bit cell of the last row read.
    """
    l, m, d, c, r = p.l, p.m, p.d, p.c, p.r
    out: List[Gadget] = []

    def col(i: int) -> Glue:
        return glue("roof", "col", i)

    def up(path: List[Pos], side: str, g_in: Glue, out_side: str, g_out: Glue) -> Gadget:
        return make_gadget("Up_Column", "roof", path, side, g_in, [(len(path) - 1, out_side, g_out)])

    out.append(up([(M, 0, 1), (M, 1, 1), (M, 2, 1), (E, 2, 1), (E, 2, 0)], "E",
                  glue("inc", "read", bin_str(2 * m - 1, l)), "N", col(2)))
    out.append(up([(E, 3, 0), (E, 4, 0)], "S", col(2), "N", col(3)))
    filler = glue("roof", "filler", 1)
    for i in range(3, l + 3):
        y = 5 + 3 * (i - 3)
        if i < l + 2:
            path = [(E, y, 0), (E, y + 1, 0), (E, y + 1, 1), (E, y, 1), (M, y, 1),
                    (M, y + 1, 1), (M, y + 2, 1), (E, y + 2, 1), (E, y + 2, 0)]
            outs = [(3, "E", filler), (8, "N", col(i + 1))]
        else:
            path = [(E, y, 0), (E, y + 1, 0), (E, y + 1, 1), (E, y, 1)]
            outs = [(3, "E", filler), (3, "W", col(i + 1))]
        out.append(make_gadget("Roof_Chimney", "roof", path, "S", col(i), outs))
    for i in range(1, d):
        if r == 0:
            path = [(W, 0, 1), (W, 1, 1), (W, 2, 1), (M, 2, 1), (E, 2, 1),
                    (E, 2, 0), (E, 1, 0), (E, 0, 0), (E, 0, 1)]
        else:
            path = [(W, 0, 1), (W, 1, 1), (W, 2, 1), (M, 2, 1), (E, 2, 1), (E, 1, 1), (E, 0, 1)]
        out.append(make_gadget("Roof_Filler", "roof", path, "W", glue("roof", "filler", i),
                               [(len(path) - 1, "E", glue("roof", "filler", i + 1))]))
    # Above the last chimney: a short z=1 detour, then straight up in z=0.
    out.append(up([(M, 0, 1), (M, 1, 1)], "E", col(l + 3), "N", col(l + 4)))
    out.append(up([(M, 0, 1), (E, 0, 1)], "S", col(l + 4), "D", col(l + 5)))
    cap_side = "U"
    if r > 0:
        out.append(up([(E, 0, 0)], "U", col(l + 5), "N", col(l + 6)))
        for i in range(l + 6, l + r + 5):
            out.append(up([(E, 0, 0)], "S", col(i), "N", col(i + 1)))
        cap_side = "S"
    out.append(make_gadget("Roof_Cap", "roof", [(E, 0, 0)], cap_side, col(l + r + 5),
                           [(0, "E", glue("roof", "r_shingle", 1)), (0, "W", glue("roof", "l_shingle", 1))]))
    for i in range(1, c + 3):
        out.append(make_gadget("Roof_Left_Shingle", "roof", [(0, 0, 0)], "E", glue("roof", "l_shingle", i),
                               [(0, "S", D_FILL), (0, "W", glue("roof", "l_shingle", i + 1))]))
    if r > 0:
        for i in range(1, 3 * d - 2):
            out.append(make_gadget("Roof_Right_Shingle", "roof", [(0, 0, 0)], "W",
                                   glue("roof", "r_shingle", i),
                                   [(0, "S", D_FILL), (0, "E", glue("roof", "r_shingle", i + 1))]))
    return out


def gen_filler() -> List[Gadget]:
    return [make_gadget("Down_Fill", "filler", [(0, 0, 0)], "N", D_FILL, [(0, "S", D_FILL)],
                        name="Down_Fill")]


def _words(n: int) -> List[str]:
    return ["".join(bits) for bits in product("01", repeat=n)]


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratedTileset:
    params: ConstructionParams
    tas: TAS
    gadgets: Tuple[Gadget, ...]
    tile_gadget: Dict[str, str]

    def unit_tile_counts(self) -> Dict[str, int]:
        counts: Counter = Counter()
        by_name = {g.name: g for g in self.gadgets}
        for t in self.tas.tiles:
            counts[by_name[self.tile_gadget[t.name]].unit] += 1
        return {u: counts.get(u, 0) for u in UNITS}

    def gadget_of(self, tile_name: str) -> Gadget:
        return self._by_name()[self.tile_gadget[tile_name]]

    def family_of(self, tile_name: str) -> str:
        return self.gadget_of(tile_name).family

    def _by_name(self) -> Dict[str, Gadget]:
        cache = self.__dict__.get("_gadget_index")
        if cache is None:
            cache = {g.name: g for g in self.gadgets}
            object.__setattr__(self, "_gadget_index", cache)
        return cache

    def gadgets_in(self, family: str) -> List[Gadget]:
        return [g for g in self.gadgets if g.family == family]


def all_gadgets(p: ConstructionParams) -> List[Gadget]:
    return gen_seed_unit(p) + gen_counter_units(p) + gen_return_row(p) + gen_roof(p) + gen_filler()


def build_tileset(p: ConstructionParams, gadgets: Sequence[Gadget]) -> GeneratedTileset:
    """Union the gadget tiles (exact duplicates merged) and place the seed at the origin."""
    tiles: "OrderedDict[str, TileType]" = OrderedDict()
    seen: Dict[Tuple[Glue, ...], str] = {}
    owner: Dict[str, str] = {}
    names = [g.name for g in gadgets]
    if len(set(names)) != len(names):
        dup = [n for n, k in Counter(names).items() if k > 1]
        raise ValueError(f"duplicate gadget names: {dup[:5]}")
    seed_tile: Optional[TileType] = None
    for g in gadgets:
        for pos, t in g.cells:
            if g.family == "Seed_Start" and pos == (0, 0, 0):
                seed_tile = t
            if t.glues in seen:
                continue
            seen[t.glues] = t.name
            tiles[t.name] = t
            owner[t.name] = g.name
    if seed_tile is None:
        raise ValueError("tile set has no Seed_Start gadget")
    tas = TAS(tuple(tiles.values()), Assembly({(0, 0, 0): seed_tile}), 1, True)
    return GeneratedTileset(p, tas, tuple(gadgets), owner)


def generate_tileset(k: int, N: int) -> GeneratedTileset:
    p = compute_params(k, N)
    return build_tileset(p, all_gadgets(p))


def decode_counter(gen: GeneratedTileset, alpha: Assembly) -> List[List[Optional[int]]]:
    """Read the written bit bumps back as digits, one list per counter period.

    In period t the cell for bit j of digit i has its base row at
    ``1 + t*(3l+2) + 3(j-1)``.  A writer tile at (M, base, z1) means 0 and a
    writer tile at (E, base, z0) means 1.  A digit whose cells were never
    written (the most significant digit after roll-over) decodes to None.
    Digits are listed least significant first.
    """
    p = gen.params

    def writer_at(q: Pos) -> bool:
        t = alpha.get(q)
        return t is not None and gen.family_of(t.name) in WRITE_FAMILIES

    periods = []
    for t in range(p.rows + 1):
        digits: List[Optional[int]] = []
        for i in range(1, p.d + 1):
            x0 = p.c + 3 * (p.d - i)
            code = 0
            for j in range(1, p.l + 1):
                y = 1 + t * p.row_height + 3 * (j - 1)
                if writer_at((x0 + E, y, 0)):
                    code |= 1 << (j - 1)
                elif not writer_at((x0 + M, y, 1)):
                    code = None
                    break
            digits.append(None if code is None else code >> 1)
        periods.append(digits)
    return periods


def counter_values(gen: GeneratedTileset, alpha: Assembly) -> List[Optional[int]]:
    """Decoded counter value per period (None where a digit is missing)."""
    m = gen.params.m
    out = []
    for digits in decode_counter(gen, alpha):
        if any(v is None for v in digits):
            out.append(None)
        else:
            out.append(sum(v * m**i for i, v in enumerate(digits)))
    return out


def input_side_report(gen: GeneratedTileset) -> List[str]:
    """Non-seed tiles lacking exactly one designated, glued input side."""
    bad = []
    seed_names = {t.name for t in gen.tas.seed.values()}
    for g in gen.gadgets:
        for (_, t), side in zip(g.cells, g.input_sides):
            if t.name in seed_names:
                continue
            if side is None or t.glue(side).strength <= 0:
                bad.append(t.name)
    return bad


def label_roles(gen: GeneratedTileset) -> Dict[str, List[Tuple[str, str]]]:
    """For every inter-gadget label, the (gadget, role) pairs that use it."""
    roles: Dict[str, List[Tuple[str, str]]] = {}
    for g in gen.gadgets:
        if g.input is not None:
            roles.setdefault(g.input[1].label, []).append((g.name, "in:" + g.input[0]))
        for _, side, gl in g.outputs:
            roles.setdefault(gl.label, []).append((g.name, "out:" + side))
    return roles


def duplicate_tiles(gen: GeneratedTileset) -> List[List[str]]:
    return duplicate_side_groups(gen.tas.tiles)


__all__ = [
    "Gadget", "GeneratedTileset", "encode_label", "bin_str", "digit", "make_gadget",
    "gen_seed_unit", "gen_counter_units", "gen_return_row", "gen_roof", "gen_filler",
    "generate_tileset", "build_tileset", "all_gadgets", "NULL_GLUE", "D_FILL",
    "decode_counter", "counter_values", "input_side_report", "label_roles", "duplicate_tiles",
]
