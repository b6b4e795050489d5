"""Command-line front end.

Exit codes: 0 success, 1 verification or search failure, 2 usage error,
3 resource guard.  The resolved configuration is echoed on stderr so that
stdout carries only results.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import geometry as geo
from ._backend import BACKEND, thread_count
from .binmat import BitMatrix, BitVector, max_column_intersection
from .code import build_code, descriptor, descriptor_json, min_distance_exhaustive
from .decoder import STRICT_MAJORITY, DecoderConfig, decode, guaranteed_radius
from .errors import DomainError, ResourceError, SearchFailure, ShapeError, StructureError
from .sim import ExperimentSpec, report_emit, run_experiment

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _threshold(text: str):
    if text == STRICT_MAJORITY:
        return text
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("threshold is 'strict-majority' or an integer") from exc


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, required=True, help="order of the plane (prime power)")
    p.add_argument("--t", type=int, default=1, help="number of bundles")
    p.add_argument("--multipliers", type=_int_list, default=None,
                   help="comma-separated multipliers s (bundle = shifts of sD)")


def _add_decoder_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--threshold", type=_threshold, default=STRICT_MAJORITY)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bundle-mdpc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build H and write it with a descriptor")
    _add_code_flags(p)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="re-check the structural predicates of saved files")
    p.add_argument("--in", dest="inp", type=Path, required=True,
                   help="construct output directory, matrix file or block-system file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("params", help="n, k, v, w, sH and the one-round radius")
    _add_code_flags(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("mindist", help="exact minimum distance by enumeration")
    _add_code_flags(p)
    p.add_argument("--budget", type=int, default=26, help="largest dimension to enumerate")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("decode", help="bit-flip decode a received word")
    _add_code_flags(p)
    _add_decoder_flags(p)
    p.add_argument("--word", required=True, help="received word as a 0/1 string")
    p.add_argument("--error", default=None, help="true error as a 0/1 string (optional)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("simulate", help="Monte-Carlo success rates at fixed error weights")
    p.add_argument("--spec", type=Path, default=None, help="experiment spec JSON file")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--multipliers", type=_int_list, default=None)
    p.add_argument("--weights", type=_int_list, default=None,
                   help="error weights; default floor((q+1)/4) + 1..3")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_decoder_flags(p)
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    return parser


def _echo_config(args: argparse.Namespace, **extra) -> None:
    config = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()}
    config.update(extra, backend=BACKEND, threads=thread_count())
    print("# config " + json.dumps(config, sort_keys=True), file=sys.stderr)


def _emit(args, data: dict, text: str) -> None:
    print(json.dumps(data, sort_keys=True) if args.json else text)


# -- subcommands ----------------------------------------------------------------


def cmd_construct(args) -> int:
    code = build_code(args.q, args.t, args.multipliers)
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "H.txt").write_text(code.H.to_text())
    (out / "code.json").write_text(descriptor_json(code))
    (out / "lines.txt").write_text(code.lines.to_text())
    for i, b in enumerate(code.bundles, start=1):
        (out / f"bundle-{i}.txt").write_text(b.to_text())
    d = descriptor(code)
    d.update(v=code.v, w=code.w)
    _emit(args, d, " ".join(f"{key}={d[key]}" for key in ("n", "k", "v", "w", "sH")))
    return EXIT_OK


def _solve_q(points: int) -> int | None:
    q = (math.isqrt(4 * points - 3) - 1) // 2
    return q if q * q + q + 1 == points and q >= 2 else None


def _systems_from_matrix(H: BitMatrix, q: int) -> list[geo.BlockSystem]:
    n = H.rows
    out = []
    for part in range(H.cols // n):
        cols = H.dense[:, part * n:(part + 1) * n]
        blocks = tuple(tuple(np.flatnonzero(cols[:, j]).tolist()) for j in range(n))
        out.append(geo.BlockSystem(q, n, blocks, "lines" if part == 0 else f"bundle:part{part}"))
    return out


def verify_matrix(H: BitMatrix, meta: dict | None = None) -> list[tuple[str, str, str]]:
    """(predicate, PASS|FAIL|SKIP, detail) for every structural check of H."""
    results = []

    def check(name, ok, detail=""):
        results.append((name, "PASS" if ok else "FAIL", detail))

    q = _solve_q(H.rows)
    shape_ok = q is not None and H.cols % H.rows == 0 and H.cols >= 2 * H.rows
    check("shape", shape_ok, f"{H.rows}x{H.cols}")
    if not shape_ok:
        return results
    t = H.cols // H.rows - 1
    cw, rw = H.column_weights(), H.row_weights()
    check("column-weight", bool(np.all(cw == q + 1)), f"expected {q + 1}, got {sorted(set(cw.tolist()))}")
    check("row-weight", bool(np.all(rw == (t + 1) * (q + 1))),
          f"expected {(t + 1) * (q + 1)}, got {sorted(set(rw.tolist()))}")
    systems = _systems_from_matrix(H, q)
    lines = systems[0]
    problem = lines.violation()
    check("plane-axioms", problem is None, problem or "")
    for i, b in enumerate(systems[1:], start=1):
        ok = problem is None and geo.is_projective_bundle(b, lines)
        check(f"bundle-axioms[{i}]", ok)
        check(f"tangency-plane[{i}]", ok and geo.tangency_plane_check(lines, b))
    if t >= 2:
        block_sets = [set(s.blocks) for s in systems[1:]]
        disjoint = all(not (a & b) for i, a in enumerate(block_sets) for b in block_sets[i + 1:])
        check("bundles-disjoint", disjoint)
    sH = max_column_intersection(H)
    if t == 1:
        check("sH", sH == 2, f"sH={sH}, expected 2")
    else:
        check("sH", sH <= 4, f"sH={sH}, expected <= 4")
    if meta:
        mismatched = [k for k in ("q", "t", "n", "sH") if k in meta and meta[k] != {"q": q, "t": t, "n": H.cols, "sH": sH}[k]]
        check("descriptor", not mismatched, f"mismatched fields {mismatched}" if mismatched else "")
    return results


def verify_block_system(system: geo.BlockSystem) -> list[tuple[str, str, str]]:
    problem = system.violation()
    results = [("plane-axioms", "PASS" if problem is None else "FAIL", problem or "")]
    reason = "no line system to compare against"
    results.append(("bundle-axioms", "SKIP", reason))
    results.append(("tangency-plane", "SKIP", reason))
    return results


def cmd_verify(args) -> int:
    path: Path = args.inp
    if path.is_dir():
        meta = json.loads((path / "code.json").read_text()) if (path / "code.json").exists() else None
        results = verify_matrix(BitMatrix.from_text((path / "H.txt").read_text()), meta)
    else:
        text = path.read_text()
        header = text.splitlines()[0].split() if text.strip() else []
        if len(header) == 2:
            results = verify_matrix(BitMatrix.from_text(text))
        elif len(header) == 3:
            results = verify_block_system(geo.BlockSystem.from_text(text))
        else:
            raise ValueError(f"unrecognised file header in {path}")
    if args.json:
        print(json.dumps([{"predicate": n, "status": s, "detail": d} for n, s, d in results]))
    else:
        for name, status, detail in results:
            print(f"{status} {name}" + (f": {detail}" if detail and status != "PASS" else ""))
    return EXIT_FAIL if any(s == "FAIL" for _, s, _ in results) else EXIT_OK


def cmd_params(args) -> int:
    code = build_code(args.q, args.t, args.multipliers)
    d = descriptor(code)
    d.update(v=code.v, w=code.w, radius=guaranteed_radius(code))
    _emit(args, d, " ".join(f"{k}={d[k]}" for k in ("n", "k", "v", "w", "sH", "radius")))
    return EXIT_OK


def cmd_mindist(args) -> int:
    code = build_code(args.q, args.t, args.multipliers)
    d = min_distance_exhaustive(code, args.budget)
    _emit(args, descriptor(code, d), str(d))
    return EXIT_OK


def cmd_decode(args) -> int:
    code = build_code(args.q, args.t, args.multipliers)
    y = BitVector.from_string(args.word)
    if y.length != code.n:
        raise ShapeError(f"word has length {y.length}, code length is {code.n}")
    error = BitVector.from_string(args.error) if args.error else None
    report = decode(code.H, y, DecoderConfig(args.threshold, args.rounds), error=error)
    text = (f"success={str(report.success).lower()} rounds={report.rounds} "
            f"flips_per_round={','.join(map(str, report.flips_per_round))}\n"
            f"word={report.word.to_string()}")
    if report.residual_weight is not None:
        text += f"\nresidual_weight={report.residual_weight}"
    data = report.to_dict()
    data["word"] = report.word.to_string()
    _emit(args, data, text)
    return EXIT_OK if report.success else EXIT_FAIL


def cmd_simulate(args) -> int:
    if args.spec is not None:
        spec = ExperimentSpec.from_json(args.spec.read_text())
    else:
        if args.q is None:
            raise DomainError("simulate needs --q or --spec")
        weights = args.weights
        if weights is None:
            r = (args.q + 1) // 4
            weights = [r + 1, r + 2, r + 3]
        spec = ExperimentSpec(q=args.q, t=args.t, multipliers=args.multipliers, weights=weights,
                              trials=args.trials, rounds=args.rounds, seed=args.seed,
                              threshold=args.threshold)
    print("# spec " + json.dumps(spec.to_dict(), sort_keys=True), file=sys.stderr)
    report = run_experiment(spec)
    sys.stdout.write(report_emit(report, "json" if args.json else "csv"))
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "params": cmd_params,
    "mindist": cmd_mindist,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _echo_config(args)
    try:
        return COMMANDS[args.command](args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SearchFailure, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (DomainError, ShapeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
