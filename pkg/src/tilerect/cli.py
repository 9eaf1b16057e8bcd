"""Command-line entry point: ``tilerect gen|verify|bound|audit-crossings|render``."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .assembler import (
    EscapeError, NondeterminismError, Verdict, default_budget, random_sequence, run_policy_sequence,
    shape_check, union_closure, verdict_from_report,
)
from .core import AssemblyError
from .movies import (
    CENSUS_LIMIT, audit_crossings, glue_lower_bound, submovie_count_bound, glue_bound_threshold,
    tile_lower_bound,
)
from .params import ParamError
from .rectgen import UNITS, WRITE_FAMILIES, generate_tileset
from .render_io import (
    ASSEMBLY_SUFFIX, TILES_SUFFIX, FormatError, RenderError, RenderOptions, canonical_json,
    parse_assembly, parse_tileset, render_svg, serialize_assembly, serialize_tileset,
    svg_element_counts,
)

EXIT_OK, EXIT_USAGE, EXIT_CONFLICT, EXIT_ESCAPE, EXIT_NOT_TERMINAL, EXIT_FORMAT = 0, 1, 2, 3, 4, 5
DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which is reserved for conflicts
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def worker_count() -> int:
    raw = os.environ.get("TILERECT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, min(n, os.cpu_count() or 1))


def _digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def _stem(path: Path, suffix: str) -> Path:
    name = path.name
    for s in (suffix, ".json", ".svg"):
        if name.endswith(s):
            return path.with_name(name[: -len(s)])
    return path


def _write_manifest(target: Optional[Path], subcommand: str, params: Dict[str, Any],
                    inputs: Sequence[Path], outputs: Sequence[Path], result: Dict[str, Any],
                    started: float, seed: Optional[int] = None) -> None:
    if target is None:
        return
    doc = {
        "formatVersion": 1,
        "kind": "manifest",
        "tool": f"tilerect {__version__}",
        "subcommand": subcommand,
        "parameters": params,
        "seed": seed,
        "inputs": {str(p): _digest(p) for p in inputs},
        "outputs": {str(p): _digest(p) for p in outputs},
        "result": result,
        "wallClock": {"started": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime(started)),
                      "seconds": round(time.time() - started, 3)},
    }
    target.write_text(canonical_json(doc), encoding="utf-8")


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    started = time.time()
    try:
        gen = generate_tileset(args.k, args.N)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.out)
    if not out.name.endswith(TILES_SUFFIX):
        out = out.with_name(out.name + TILES_SUFFIX)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(serialize_tileset(gen.tas), encoding="utf-8")
    p = gen.params
    counts = gen.unit_tile_counts()
    print(f"params d={p.d} m={p.m} l={p.l} s={p.s} c={p.c} r={p.r}")
    print("unit        tiles")
    for unit in UNITS:
        print(f"{unit:<11} {counts.get(unit, 0):>5}")
    print(f"{'total':<11} {len(gen.tas.tiles):>5}")
    print(f"wrote {out}")
    result = {"params": dict(zip("dmlscr", p.as_tuple())), "unitTileCounts": counts,
              "tileCount": len(gen.tas.tiles)}
    _write_manifest(out.with_name(_stem(out, TILES_SUFFIX).name + ".manifest.json"),
                    "gen", {"k": args.k, "N": args.N}, [], [out], result, started)
    return EXIT_OK


def _policy_verdict(tas, k: int, N: int):
    try:
        seq = run_policy_sequence(tas, default_budget(k, N))
    except EscapeError as exc:
        return Verdict("escape", position=exc.position), None
    except NondeterminismError as exc:
        return Verdict("conflict", conflicts=(exc.position,)), None
    alpha = seq.result
    for q in alpha:
        if not (0 <= q[0] < k and 0 <= q[1] < N):
            return Verdict("escape", position=q), alpha
    if not shape_check(alpha, k, N):
        return Verdict("shape-mismatch"), alpha
    return Verdict("directed-and-correct"), alpha


def _describe(v: Verdict) -> str:
    if v.kind == "conflict":
        head = ", ".join(map(str, v.conflicts[:5]))
        return f"conflict at {len(v.conflicts)} position(s): {head}"
    if v.kind == "escape":
        return f"escape at {v.position}"
    if v.kind == "shape-mismatch":
        return f"shape mismatch ({v.detail})" if v.detail else "shape mismatch"
    return v.kind


def cmd_verify(args) -> int:
    started = time.time()
    tiles_path = Path(args.tiles)
    tas = parse_tileset(_read(tiles_path))
    k, N = args.k, args.N
    verdicts: Dict[str, str] = {}
    alpha = None
    final: Optional[Verdict] = None
    if args.mode in ("closure", "both"):
        report = union_closure(tas, default_budget(k, N))
        v = verdict_from_report(report, k, N)
        verdicts["closure"] = v.kind
        print(f"closure: {_describe(v)}")
        final, alpha = v, report.configuration
    if args.mode in ("policy", "both"):
        v, a = _policy_verdict(tas, k, N)
        verdicts["policy"] = v.kind
        print(f"policy: {_describe(v)}")
        if final is None:
            final, alpha = v, a
        elif final.kind != v.kind:
            print("error: closure and policy verdicts disagree", file=sys.stderr)
            final = final if not final.ok else v
    random_ok = None
    if args.random_runs and final.ok:
        ref = alpha
        random_ok = all(random_sequence(tas, args.seed + i, default_budget(k, N)).result == ref
                        for i in range(args.random_runs))
        print(f"random sequences: {args.random_runs} run(s), "
              f"{'all identical' if random_ok else 'DIFFERENT terminal assemblies'}")
        if not random_ok:
            final = Verdict("conflict")
    outputs: List[Path] = []
    if final.ok and alpha is not None:
        out = Path(args.out) if args.out else tiles_path.with_name(_stem(tiles_path, TILES_SUFFIX).name + ASSEMBLY_SUFFIX)
        provenance = {"k": k, "N": N, "mode": args.mode, "tiles": tiles_path.name}
        out.write_text(serialize_assembly(alpha, provenance), encoding="utf-8")
        outputs.append(out)
        print(f"wrote {out}")
    manifest_base = outputs[0] if outputs else tiles_path
    suffix = ASSEMBLY_SUFFIX if outputs else TILES_SUFFIX
    manifest = manifest_base.with_name(_stem(manifest_base, suffix).name + ".verify.manifest.json")
    _write_manifest(manifest, "verify", {"k": k, "N": N, "mode": args.mode, "randomRuns": args.random_runs},
                    [tiles_path], outputs, {"verdicts": verdicts, "verdict": final.kind,
                                            "randomIdentical": random_ok}, started, args.seed)
    return final.exit_code


def cmd_bound(args) -> int:
    started = time.time()
    k = args.k
    if k < 1:
        raise UsageError("--k must be positive")
    if args.N is not None:
        if args.N < 1:
            raise UsageError("--N must be positive")
        N = args.N
        g = glue_lower_bound(k, N)
    else:
        if args.glues < 1:
            raise UsageError("--glues must be positive")
        g = args.glues
        N = glue_bound_threshold(k, g)
    final_bound, intermediate = submovie_count_bound(k, g)
    values = {
        "k": k, "N": N, "glues": g,
        "glue_lower_bound": glue_lower_bound(k, N),
        "tile_lower_bound": tile_lower_bound(k, N),
        "glue_bound_threshold": glue_bound_threshold(k, g),
        "submovie_count_bound": final_bound,
        "submovie_intermediate_sum": intermediate,
    }
    for key, v in values.items():
        print(f"{key} {v}")
    _write_manifest(Path(args.manifest) if args.manifest else None, "bound",
                    {"k": k, "N": args.N, "glues": args.glues}, [], [], values, started)
    return EXIT_OK


def cmd_audit(args) -> int:
    started = time.time()
    if not 1 <= args.k <= CENSUS_LIMIT or not 0 <= args.slack <= CENSUS_LIMIT:
        raise UsageError(f"census refused: needs 1 <= k <= {CENSUS_LIMIT} and 0 <= slack <= {CENSUS_LIMIT}")
    res = audit_crossings(args.k, args.slack, worker_count())
    for e, got, bound in res.rows:
        print(f"e={e} census {got} bound {bound}")
    print(f"total census {res.census.count} vs bound {sum(b for _, _, b in res.rows)}")
    for line in res.violations:
        print(f"counterexample: {line}")
    if args.dump:
        Path(args.dump).write_text(res.census.dump(), encoding="utf-8")
    print("PASS" if res.ok else "FAIL")
    _write_manifest(Path(args.manifest) if args.manifest else None, "audit-crossings",
                    {"k": args.k, "slack": args.slack}, [], [Path(args.dump)] if args.dump else [],
                    {"pass": res.ok, "rows": res.rows, "violations": res.violations}, started)
    return EXIT_OK if res.ok else EXIT_NOT_TERMINAL


def _write_family(name: str) -> bool:
    family = re.sub(r"_[01]$", "", name.split("[", 1)[0].split("/", 1)[0])
    return family in WRITE_FAMILIES


def cmd_render(args) -> int:
    started = time.time()
    asm_path = Path(args.assembly)
    text = _read(asm_path)
    doc = json.loads(text) if text.strip().startswith("{") else None
    if doc is None:
        raise FormatError(f"{asm_path} is not a JSON assembly document")
    if args.tiles:
        tiles_path = Path(args.tiles)
    else:
        ref = (doc.get("provenance") or {}).get("tiles")
        if not ref:
            raise UsageError("assembly has no tile-set provenance; pass --tiles")
        tiles_path = asm_path.with_name(ref)
    tas = parse_tileset(_read(tiles_path))
    alpha = parse_assembly(text, tas)
    options = RenderOptions(cell=args.cell, shade=(lambda t: _write_family(t.name)) if args.gray else None)
    svg = render_svg(alpha, options)
    out = Path(args.out)
    out.write_text(svg, encoding="utf-8")
    counts = svg_element_counts(svg)
    print(f"wrote {out}: {counts['t0']} z=0 squares, {counts['t1']} z=1 squares, {counts['zb']} disks")
    _write_manifest(out.with_name(_stem(out, ".svg").name + ".manifest.json"), "render",
                    {"cell": args.cell, "gray": args.gray}, [asm_path, tiles_path], [out], counts, started)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tilerect", description="Thin-rectangle tile assembly toolkit.")
    parser.add_argument("--version", action="version", version=f"tilerect {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate the tile set for a k x N rectangle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", required=True, help="output path (.tiles.json appended if missing)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="certify directedness and shape of a tile set")
    p.add_argument("--tiles", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mode", choices=("closure", "policy", "both"), default="closure")
    p.add_argument("--out", help="assembly document path (default: beside the tile set)")
    p.add_argument("--random-runs", type=int, default=0, help="extra seeded random sequences to compare")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="evaluate the lower-bound formulas")
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--N", type=int)
    g.add_argument("--glues", type=int)
    p.add_argument("--manifest", help="write a run manifest here")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("audit-crossings", help="compare the crossing census with the counting bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--slack", type=int, default=3)
    p.add_argument("--dump", help="write the census, one crossing sequence per line")
    p.add_argument("--manifest", help="write a run manifest here")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("render", help="draw an assembly document as SVG")
    p.add_argument("--assembly", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tiles", help="tile set (default: taken from the assembly's provenance)")
    p.add_argument("--cell", type=int, default=12)
    p.add_argument("--gray", action="store_true", help="shade tiles of write gadgets")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssemblyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_TERMINAL


if __name__ == "__main__":
    sys.exit(main())
