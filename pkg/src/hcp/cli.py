"""Command-line interface: ``hcp <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 I/O or argument error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import bitset, codes, colorings, constructions
from .colorings import H1, H2_EVEN, H2_ODD, ParameterMatrix, chi_form, parse_matrix

EXIT_OK, EXIT_MISMATCH, EXIT_IO = 0, 1, 2

GOLAY_H1_MATRIX = ParameterMatrix.of([
    [0, 24, 0, 0, 0],
    [1, 0, 23, 0, 0],
    [0, 2, 0, 22, 0],
    [0, 0, 3, 0, 21],
    [0, 0, 0, 24, 0],
])
GOLAY_H2_MATRIX = ParameterMatrix.of([
    [0, 0, 276, 0, 0],
    [0, 23, 0, 253, 0],
    [1, 0, 44, 0, 231],
    [0, 3, 0, 273, 0],
    [0, 0, 36, 0, 240],
])
OMEGA_F_PARAMETERS = ParameterMatrix.of([[23, 253], [3, 273]])
CHI_L_PARAMETERS = ParameterMatrix.of([[28, 248], [8, 268]])

CODE_CLAIMS = {  # name: (size, minimum distance)
    "c8": (16, 4),
    "c8p": (16, 4),
    "b8": (128, 2),
    "f": (1 << 12, 8),
    "d": (1 << 18, 4),
    "c16": (1 << 11, 4),
    "l": (1 << 18, 2),
}


class VerificationFailed(Exception):
    pass


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def matrix_for_display(report: colorings.VerificationReport, col: colorings.Coloring) -> ParameterMatrix:
    """Characteristic 2-colorings are shown member color first."""
    return chi_form(report.matrix) if col.k == 2 else report.matrix


# Subcommands ----------------------------------------------------------------

def cmd_build_code(args) -> int:
    code = codes.BUILDERS[args.name]()
    codes.save(code, args.out)
    print(f"{code.name}: n={code.length} k={code.rank} size={len(code)} -> {args.out}")
    args.outputs.append(Path(args.out))
    return EXIT_OK


def cmd_verify_code(args) -> int:
    code = codes.load(args.input)
    size = len(code)
    dmin = codes.min_distance(code) if size > 1 else None
    print(f"{args.input}: n={code.length} size={size} min_distance={dmin}")
    ok = True
    if args.expect_size is not None and size != args.expect_size:
        print(f"MISMATCH: size {size} != expected {args.expect_size}")
        ok = False
    if args.expect_mindist is not None and dmin != args.expect_mindist:
        print(f"MISMATCH: minimum distance {dmin} != expected {args.expect_mindist}")
        ok = False
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_build_coloring(args) -> int:
    if args.kind == "union":
        spec = constructions.ConstructionSpec.parse(args.i or "", args.j or "")
        col = constructions.build_union(spec)
        print(f"union {spec}: c={spec.c}, expected {spec.expected()}")
    elif args.kind == "golay-distance":
        col = colorings.distance_coloring(codes.build_f())
        print(f"distance coloring of F: k={col.k}")
    else:
        col = colorings.characteristic(codes.build_l().words, 24, H2_EVEN, name="chi_L")
        print("characteristic function of L on the even component")
    colorings.save(col, args.out)
    args.outputs.append(Path(args.out))
    return EXIT_OK


def cmd_verify_coloring(args) -> int:
    col = colorings.load(args.input)
    report = colorings.verify_perfect(col, args.threads)
    if not report.perfect:
        print(f"VIOLATED: {report.witness}")
        return EXIT_MISMATCH
    shown = matrix_for_display(report, col)
    print(f"perfect on {col.graph}({col.n}) with parameters {shown}")
    if args.expect:
        expected = parse_matrix(args.expect)
        if expected != shown:
            print(f"MISMATCH: expected {expected}")
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_spectrum(args) -> int:
    entries = constructions.spectrum_table()
    if args.format == "json":
        print(dump_json([e.to_json() for e in entries]), end="")
    else:
        print(constructions.format_spectrum(entries))
    return EXIT_OK


def cmd_analyze_spheres(args) -> int:
    col = colorings.load(args.input)
    if col.graph == H1 or col.k != 2:
        raise ValueError("analyze-spheres needs a 2-coloring of a halved-cube component")
    dec = constructions.decompose_spheres(col.support(1), colorings.component_parity(col.graph), col.n)
    Path(args.report).write_text(dump_json(dec.to_json()))
    args.outputs.append(Path(args.report))
    print(f"{dec.centers.size} spheres, {dec.leftover.size} leftover words, disjoint={dec.pairwise_disjoint}")
    return EXIT_OK


def cmd_filter(args) -> int:
    verdict = constructions.nonexistence_filter(args.c)
    print(f"c={args.c}: {verdict}")
    note = constructions.uniqueness_note(args.c)
    if note:
        print(f"note: {note}")
    return EXIT_OK


def cmd_transform_matrix(args) -> int:
    s = parse_matrix(args.matrix)
    t = colorings.transform_matrix(s, args.n)
    print(";".join(",".join(map(str, r)) for r in t.entries))
    return EXIT_OK


class Checklist:
    def __init__(self):
        self.results: list[dict] = []

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.results.append({"check": name, "ok": bool(ok), "detail": detail})
        print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""), flush=True)
        if not ok:
            raise VerificationFailed(f"{name}: {detail}")


def reproduce(quick: bool = False, samples: int = 3, seed: int = 20240601, threads: int | None = None,
              extra_coloring: Path | None = None, extra_expect: str | None = None) -> Checklist:
    """Rebuild every code and coloring and check each claimed parameter."""
    cl = Checklist()
    built = {name: builder() for name, builder in codes.BUILDERS.items()}
    for name, (size, dmin) in CODE_CLAIMS.items():
        c = built[name]
        got = (len(c), codes.min_distance(c))
        cl.check(f"code {c.name} is ({c.length},{size},{dmin})", got == (size, dmin), f"got size={got[0]} d={got[1]}")
    inter = sorted(int(w) for w in set(built["c8"].words.tolist()) & set(built["c8p"].words.tolist()))
    cl.check("C8 and C8' meet in {00000000,11111111}", inter == [0, 255], str(inter))
    cl.check("|N| = 2^21", len(built["n"]) == 1 << 21)
    cl.check("F is a subcode of D", codes.is_subcode(built["f"], built["d"]))
    d_dn = codes.set_distance(built["d"], built["n"])
    cl.check("distance from D to N is 3", d_dn == 3, f"got {d_dn}")

    golay = colorings.distance_coloring(built["f"])
    cl.check("covering radius of F is 4", golay.k == 5, f"got {golay.k - 1}")
    if quick:
        h1 = None
        even = colorings.verify_perfect(colorings.restrict_to_component(golay, 0), threads)
        odd = colorings.verify_perfect(colorings.restrict_to_component(golay, 1), threads)
    else:
        h1, even, odd = colorings.verify_perfect_h2_from_h1(golay, threads)
        cl.check("Golay distance coloring on H(24)", h1.matrix == GOLAY_H1_MATRIX, str(h1.matrix))
    t = colorings.transform_matrix(GOLAY_H1_MATRIX, 24)
    cl.check("(S^2 - 24E)/2 of the H(24) matrix", t == GOLAY_H2_MATRIX, str(t))
    for rep, labels in ((even, (0, 2, 4)), (odd, (1, 3))):
        ok = rep.perfect and rep.labels == labels and rep.matrix == t.submatrix(labels)
        cl.check(f"Golay coloring on {rep.graph}(24), colors {labels}", ok, str(rep.matrix))
    cl.check("odd component 2-coloring ((23,253)(3,273))", odd.matrix == OMEGA_F_PARAMETERS)

    omega = colorings.characteristic(codes.neighborhood(built["f"]).words, 24, H2_ODD)
    rep = colorings.verify_perfect(omega, threads)
    ok = rep.perfect and chi_form(rep.matrix) == OMEGA_F_PARAMETERS
    cl.check("chi of Omega(F) on the odd component", ok, str(chi_form(rep.matrix)) if rep.perfect else str(rep))
    chi_l = colorings.characteristic(built["l"].words, 24, H2_EVEN)
    rep = colorings.verify_perfect(chi_l, threads)
    ok = rep.perfect and chi_form(rep.matrix) == CHI_L_PARAMETERS
    cl.check("chi of L on the even component", ok, str(chi_form(rep.matrix)) if rep.perfect else str(rep))

    specs = [constructions.ConstructionSpec(frozenset({1})), constructions.ConstructionSpec(j_set=frozenset({1}))]
    specs += constructions.random_mixed_specs(max(0, samples - len(specs)), seed)
    for spec in specs[:max(samples, 0)]:
        rep = colorings.verify_perfect(constructions.build_union(spec), threads)
        ok = rep.perfect and chi_form(rep.matrix) == spec.expected()
        cl.check(f"union {spec} (c={spec.c}, seed={seed})", ok, str(chi_form(rep.matrix)) if rep.perfect else str(rep))

    dec = constructions.decompose_spheres(omega.support(1), 1)
    ok = dec.pairwise_disjoint and dec.leftover.size == 0 and dec.centers.tolist() == built["f"].words.tolist()
    cl.check("Omega(F) is the disjoint union of the spheres centered at F", ok)

    if extra_coloring is not None:
        col = colorings.load(extra_coloring)
        rep = colorings.verify_perfect(col, threads)
        detail = str(rep.witness) if not rep.perfect else str(matrix_for_display(rep, col))
        ok = rep.perfect and (extra_expect is None or matrix_for_display(rep, col) == parse_matrix(extra_expect))
        cl.check(f"coloring file {extra_coloring}", ok, detail)

    entries = constructions.spectrum_table()
    counts = [sum(e.status == s for e in entries) for s in ("exists", "nonexistent", "open")]
    cl.check("spectrum has 121 / 5 / 2 entries", counts == [121, 5, 2], str(counts))
    print()
    print(constructions.format_spectrum(entries))
    return cl


def cmd_reproduce_paper(args) -> int:
    try:
        cl = reproduce(args.quick, args.samples, args.seed, args.threads,
                       Path(args.coloring) if args.coloring else None, args.expect)
    except VerificationFailed as exc:
        print(f"FAILED: {exc}")
        return EXIT_MISMATCH
    if args.report:
        Path(args.report).write_text(dump_json({"checks": cl.results, "seed": args.seed}))
        args.outputs.append(Path(args.report))
    print(f"\nall {len(cl.results)} checks passed")
    return EXIT_OK


# Parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (default: HCP_THREADS or CPU count)")
    common.add_argument("--manifest", default=argparse.SUPPRESS, help="write a JSON run manifest to this path")
    p = argparse.ArgumentParser(prog="hcp", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("build-code", help="build one of the named codes")
    s.add_argument("--name", required=True, choices=sorted(codes.BUILDERS))
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_build_code)

    s = sub.add_parser("verify-code", help="check size and minimum distance of a code file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--expect-size", type=int)
    s.add_argument("--expect-mindist", type=int)
    s.set_defaults(func=cmd_verify_code)

    s = sub.add_parser("build-coloring", help="write a coloring file")
    s.add_argument("--kind", choices=("union", "golay-distance", "chi-l"), default="union")
    s.add_argument("--i", help="Golay-neighborhood coset indices, e.g. '1,2,5'")
    s.add_argument("--j", help="L coset indices, e.g. '1'")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_build_coloring)

    s = sub.add_parser("verify-coloring", help="exhaustively check that a coloring is perfect")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--expect", help="expected matrix 'a,b;c,d' (2-colorings: color 1 first)")
    s.set_defaults(func=cmd_verify_coloring)

    s = sub.add_parser("spectrum", help="print the table of c = 1..128")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("analyze-spheres", help="decompose the color-1 set of a coloring into spheres")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--report", required=True)
    s.set_defaults(func=cmd_analyze_spheres)

    s = sub.add_parser("filter", help="nonexistence verdict for ((20+c,256-c)(c,276-c))")
    s.add_argument("--c", type=int, required=True)
    s.set_defaults(func=cmd_filter)

    s = sub.add_parser("transform-matrix", help="compute (S^2 - nE)/2")
    s.add_argument("--matrix", required=True, help="rows separated by ';', entries by ','")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_transform_matrix)

    s = sub.add_parser("reproduce-paper", help="rebuild and verify every construction")
    s.add_argument("--quick", action="store_true", help="skip the full H(24) sweep")
    s.add_argument("--samples", type=int, default=3, help="number of union colorings to verify")
    s.add_argument("--seed", type=int, default=20240601)
    s.add_argument("--coloring", help="also verify this coloring file")
    s.add_argument("--expect", help="expected matrix for --coloring")
    s.add_argument("--report", help="write the check list as JSON")
    s.set_defaults(func=cmd_reproduce_paper)
    return p


def write_manifest(path: Path, args, argv, wall: float, threads: int) -> None:
    manifest = {
        "arguments": list(argv),
        "command": args.command,
        "outputs": {str(p): sha256_file(p) for p in sorted(set(args.outputs))},
        "threads": threads,
        "wall_time": round(wall, 3),
    }
    path.write_text(dump_json(manifest))


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    for name in ("threads", "manifest"):  # the shared options are SUPPRESSed when absent
        if not hasattr(args, name):
            setattr(args, name, None)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_IO
    args.outputs = []
    start = time.perf_counter()
    try:
        code = args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.manifest:
        threads = args.threads or bitset.default_threads()
        try:
            write_manifest(Path(args.manifest), args, argv, time.perf_counter() - start, threads)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
