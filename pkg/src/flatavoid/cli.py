"""Command-line front end.

Exit codes: 0 success, 2 verification failed, 3 budget exceeded, 4 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path

from . import codes, constructions, geometry, spectrum, transforms
from .codes import AffineCode, LinearCode
from .geometry import DEFAULT_BUDGET, BudgetExceeded, Flat
from .gf2core import bits_from_string, bits_to_string

log = logging.getLogger("flatavoid")

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_INPUT; argparse's own status 2 means
    verification failed here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for key, value in report.items():
            w.writerow([key, " ".join(map(str, value)) if isinstance(value, list) else value])
        out.write(buf.getvalue())
    else:
        for key, value in report.items():
            if isinstance(value, list):
                value = " ".join(map(str, value))
            out.write(f"{key}: {value}\n")


def _load_code(path: str) -> LinearCode | AffineCode:
    try:
        return codes.read_code(path)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _code_report(c: LinearCode | AffineCode) -> dict:
    linear = c.linear if isinstance(c, AffineCode) else c
    w = codes.weight_enumerator(c)
    report = {
        "length": linear.length,
        "dim": linear.dimension,
        "generator": [bits_to_string(r, linear.length) for r in linear.rows],
        "parity_check": linear.parity_check.to_strings(),
        "weights": [str(a) for a in w.coeffs],
        "W(1,3)": str(codes.evaluate(w, 1, 3)),
        "W(3,1)": str(codes.evaluate(w, 3, 1)),
    }
    if isinstance(c, AffineCode):
        report["offset"] = bits_to_string(c.offset, linear.length)
    return report


def cmd_code(args) -> tuple[dict, int]:
    c = _load_code(args.file)
    if args.action == "dual":
        if isinstance(c, AffineCode):
            raise InputError("the dual is defined for linear codes only")
        c = codes.dual(c)
    report = _code_report(c)
    if args.action == "weights":
        report = {k: report[k] for k in ("length", "dim", "weights", "W(1,3)", "W(3,1)")}
    return report, EXIT_OK


def parse_flats(text: str) -> tuple[int, int, list[list[Flat]]]:
    """Flats file: ``n=<n> k=<k>``, then ``group`` lines opening each group and
    ``rep=<bits> basis=<bits>,<bits>,...`` lines, one flat each."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty flats file")
    try:
        head = dict(tok.split("=", 1) for tok in lines[0][1].split())
        n, k = int(head["n"]), int(head["k"])
    except (ValueError, KeyError):
        raise InputError(f"line {lines[0][0]}: expected 'n=<n> k=<k>'") from None
    groups: list[list[Flat]] = []
    for lineno, ln in lines[1:]:
        if ln == "group":
            groups.append([])
            continue
        try:
            fields = dict(tok.split("=", 1) for tok in ln.split())
            rep = fields["rep"]
            basis = [b for b in fields.get("basis", "").split(",") if b]
        except (ValueError, KeyError):
            raise InputError(f"line {lineno}: expected 'rep=<bits> basis=<bits>,...'") from None
        if any(len(v) != n or set(v) - {"0", "1"} for v in [rep, *basis]):
            raise InputError(f"line {lineno}: vectors must be {n} characters in {{0,1}}")
        flat = Flat(n, tuple(bits_from_string(b) for b in basis), bits_from_string(rep))
        if flat.k != len(basis):
            raise InputError(f"line {lineno}: basis vectors are linearly dependent")
        if not groups:
            groups.append([])
        groups[-1].append(flat)
    return n, k, groups


def cmd_construct(args) -> tuple[dict, int]:
    k = args.k
    kind = args.kind
    try:
        if kind in ("code-based", "affine"):
            c = _load_code(args.input)
            if kind == "code-based" and isinstance(c, AffineCode):
                raise InputError("code file has an offset; use 'construct affine'")
            if kind == "affine" and isinstance(c, LinearCode):
                c = AffineCode(c, 0)
            s = (
                constructions.code_based_set(c, k)
                if kind == "code-based"
                else constructions.affine_code_based_set(c, k)
            )
            predicted = constructions.predicted_size(c, k)
        elif kind == "hypergraph":
            try:
                h = constructions.read_hypergraph(args.input)
            except OSError as exc:
                raise InputError(str(exc)) from exc
            s = constructions.hypergraph_set(h, k)
            predicted = (1 << h.n) - constructions.count_independent_sets(h)
        else:
            try:
                text = Path(args.input).read_text()
            except OSError as exc:
                raise InputError(str(exc)) from exc
            n, file_k, groups = parse_flats(text)
            if args.k is not None and args.k != file_k:
                raise InputError(f"-k {args.k} disagrees with k={file_k} in the flats file")
            k = file_k
            s = constructions.flats_avoider(groups, k, n)
            predicted = None
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    geometry.write_set(s, args.output)
    actual = len(s)
    report = {
        "kind": kind,
        "n": s.n,
        "k": k,
        "predicted_size": predicted,
        "actual_size": actual,
        "output": str(args.output),
    }
    if predicted is not None and predicted != actual:
        report["error"] = "predicted and actual sizes differ"
        return report, EXIT_FAILED
    return report, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    try:
        s = geometry.read_set(args.set_file)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(f"{args.set_file}: {exc}") from exc
    if not 0 <= args.k <= s.n:
        raise InputError(f"k={args.k} outside [0, {s.n}]")
    if args.t is not None and not 0 <= args.t <= 1 << args.k:
        raise InputError(f"t={args.t} outside [0, 2^{args.k}]")
    start = time.perf_counter()
    prof = geometry.profile(s, args.k, budget=args.budget, threads=args.threads)
    log.info("profile scan took %.3f s", time.perf_counter() - start)
    report = {
        "n": s.n,
        "size": len(s),
        "k": args.k,
        "profile": prof,
        "flats_scanned": geometry.count_flats(s.n, args.k),
    }
    if args.evasive is not None:
        verdict = max(prof) <= args.evasive
        report.update(test="evasive", c=args.evasive, verdict="evasive" if verdict else "not evasive")
    else:
        verdict = args.t not in prof
        report.update(test="avoider", t=args.t, verdict="avoider" if verdict else "not avoider")
    return report, EXIT_OK if verdict else EXIT_FAILED


def cmd_transform(args) -> tuple[dict, int]:
    try:
        word = transforms.TransformWord(args.word)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    seed = LinearCode.trivial() if args.seed is None else _load_code(args.seed)
    if isinstance(seed, AffineCode):
        raise InputError("transforms act on linear codes")
    c = transforms.apply_word(word, seed)
    v = transforms.v_of_code(seed, word=word)
    m = transforms.word_matrix(word)
    report = {
        "word": str(word),
        "length": c.length,
        "dim": c.dimension,
        "matrix": [str(e) for e in m.as_tuple()],
        "W(1,3)": str(v.w13),
        "W(3,1)": str(v.w31),
        "avoider_size_k3": str((1 << (2 * c.length)) - v.w13),
    }
    if min(c.dimension, c.length - c.dimension) <= 20:
        report["generator"] = [bits_to_string(r, c.length) for r in c.rows]
    return report, EXIT_OK


def cmd_sizes(args) -> tuple[dict, int]:
    if not 0 <= args.r <= transforms.MAX_SIZES_R:
        raise InputError(f"r={args.r} outside [0, {transforms.MAX_SIZES_R}]")
    rep = transforms.distinct_sizes(args.r, balanced_only=args.balanced)
    return json.loads(rep.to_json()), EXIT_OK


def cmd_spectrum(args) -> tuple[dict, int]:
    try:
        res = spectrum.spectrum_exhaustive(args.n, args.k, args.t, cache_dir=args.cache_dir)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return res.to_dict(), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of flats to scan")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache-dir", default=None, help=f"spectrum cache (default: ${spectrum.CACHE_ENV})")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="flatavoid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("code", parents=[common], help="inspect a code file")
    q.add_argument("action", choices=("info", "dual", "weights"))
    q.add_argument("file")
    q.set_defaults(func=cmd_code)

    q = sub.add_parser("construct", parents=[common], help="build an avoider and write a set file")
    q.add_argument("kind", choices=("code-based", "affine", "hypergraph", "flats"))
    q.add_argument("input")
    q.add_argument("-k", type=int, default=None)
    q.add_argument("-o", "--output", required=True)
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("verify", parents=[common], help="compute a k-profile and test avoidance")
    q.add_argument("set_file")
    q.add_argument("-k", type=int, required=True)
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("-t", type=int)
    g.add_argument("--evasive", type=int, metavar="C")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("transform", parents=[common], help="apply a word over {a,b} to a seed code")
    q.add_argument("word")
    q.add_argument("--seed", default=None, help="seed code file (default: the length-0 code)")
    q.set_defaults(func=cmd_transform)

    q = sub.add_parser("sizes", parents=[common], help="distinct W(1,3) values over words of length r")
    q.add_argument("r", type=int)
    q.add_argument("--balanced", action="store_true")
    q.set_defaults(func=cmd_sizes)

    q = sub.add_parser("spectrum", parents=[common], help="exhaustive Sp(n;k,t) for n <= 4")
    q.add_argument("n", type=int)
    q.add_argument("k", type=int)
    q.add_argument("t", type=int)
    q.set_defaults(func=cmd_spectrum)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "construct" and args.kind != "flats" and args.k is None:
        args.k = 3
    try:
        report, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(report, args.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
