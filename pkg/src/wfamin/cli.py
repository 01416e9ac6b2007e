"""Command-line interface: evaluation, approximation and verification suites.

Exit codes follow a scripting contract: 0 on success, 1 when a verification
or certified approximation fails its assertions, 2 for usage, parse or
invalid-input errors.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import fock
from .aak import aak_approximate
from .errors import NumericalError
from .hankel import build_hankel, hankel_rank, is_minimal, spectral_recover
from .io import WfaDocument, load_document, parse_word, save_document
from .wfa import random_stable_wfa, spectral_radius

SUITES = ("hankel-eq", "shifts", "free-group", "nc-rational", "all")


def _timestamp_lines(args):
    if not args.no_timestamp:
        yield f"# generated: {datetime.now(timezone.utc).isoformat()}"


def cmd_eval(args) -> int:
    doc = load_document(args.file)
    word = parse_word(args.word, doc)
    print(repr(doc.wfa.evaluate(word)))
    return 0


def _default_output(path: Path, mode: str, k: int) -> Path:
    return path.with_name(f"{path.stem}-{mode}{k}{path.suffix or '.wfa'}")


def _approximate_aak(args, doc: WfaDocument):
    wfa = doc.wfa
    if wfa.alphabet_size != 1:
        raise ValueError(
            "aak mode needs a one-letter alphabet; no constructive optimal "
            "approximation is available for larger alphabets (use --mode svd "
            "for the truncated-SVD baseline)"
        )
    rho = spectral_radius(wfa.transitions[0])
    if rho >= 1.0:
        raise ValueError(f"aak mode needs spectral radius < 1, got {rho!r}")
    if not is_minimal(wfa):
        raise ValueError(
            "input automaton is not minimal (its Hankel rank is below the "
            "state count); minimize it before approximating"
        )
    result = aak_approximate(wfa, args.k, certify_rtol=args.tol)
    length = args.length if args.length is not None else 63
    h_block = build_hankel(wfa, length, length).entries
    approx_block = build_hankel(result.wfa, length, length).entries
    achieved = float(np.linalg.norm(h_block - approx_block, 2))
    sigmas = result.singular_values
    lines = [
        "mode: aak",
        f"input: {args.file} ({wfa.num_states} states, alphabet {' '.join(doc.labels)})",
        f"target states: {args.k}",
        "singular values: " + " ".join(repr(float(s)) for s in sigmas),
        f"error: {result.error!r}",
        f"evaluation block: {length + 1} x {length + 1}",
        f"achieved spectral-norm error: {achieved!r}",
    ]
    deviation = float(abs(achieved - result.error) / sigmas[0])
    lines.append(
        f"certificate: attained sigma_{args.k} within {deviation!r} relative "
        f"(tolerance {args.tol!r})"
    )
    for warning in result.warnings:
        lines.append(f"warning: {warning}")
    return result.wfa, lines, deviation <= args.tol


def _approximate_svd(args, doc: WfaDocument):
    wfa = doc.wfa
    length = args.length if args.length is not None else (63 if wfa.alphabet_size == 1 else 5)
    block = build_hankel(wfa, length, length)
    rank = hankel_rank(block)
    if args.k > rank:
        raise ValueError(f"k={args.k} exceeds the numerical rank {rank} of the block")
    singular = np.linalg.svd(block.entries, compute_uv=False)
    error = float(singular[args.k]) if args.k < singular.size else 0.0
    recovered = spectral_recover(block, args.k, wfa)
    approx_block = build_hankel(recovered, length, length).entries
    achieved = float(np.linalg.norm(block.entries - approx_block, 2))
    lines = [
        "mode: svd",
        f"input: {args.file} ({wfa.num_states} states, alphabet {' '.join(doc.labels)})",
        f"target states: {args.k}",
        "singular values: " + " ".join(repr(float(s)) for s in singular[: min(10, singular.size)]),
        f"truncated-block error (optimal, generally non-Hankel): {error!r}",
        f"evaluation block: {len(block.prefixes)} x {len(block.suffixes)}",
        f"achieved spectral-norm error: {achieved!r}",
    ]
    return recovered, lines, True


def cmd_approximate(args) -> int:
    doc = load_document(args.file)
    if args.k < 0 or args.k >= doc.wfa.num_states:
        raise ValueError(
            f"k must lie in [0, {doc.wfa.num_states}) for a "
            f"{doc.wfa.num_states}-state input, got {args.k}"
        )
    if args.mode == "aak":
        approx_wfa, lines, passed = _approximate_aak(args, doc)
    else:
        approx_wfa, lines, passed = _approximate_svd(args, doc)
    out_path = Path(args.output) if args.output else _default_output(Path(args.file), args.mode, args.k)
    out_doc = WfaDocument(
        labels=doc.labels,
        wfa=approx_wfa,
        name=f"{doc.name or Path(args.file).stem}-{args.mode}{args.k}",
        comment=f"rank-{args.k} {args.mode} approximation",
    )
    save_document(out_doc, out_path)
    for line in _timestamp_lines(args):
        print(line)
    for line in lines:
        print(line)
    print(f"output: {out_path}")
    return 0 if passed else 1


def _suite_hankel_eq(args):
    lines = ["suite: hankel-eq"]
    fixtures = []
    if args.file:
        doc = load_document(args.file)
        fixtures.append((f"file {args.file}", doc.wfa))
    else:
        for i in range(5):
            fixtures.append(
                (f"random (d=2, n=3, seed={args.seed + i})",
                 random_stable_wfa(2, 3, seed=args.seed + i, radius_bound=0.9))
            )
            fixtures.append(
                (f"random (d=3, n=3, seed={args.seed + 100 + i})",
                 random_stable_wfa(3, 3, seed=args.seed + 100 + i, radius_bound=0.9))
            )
    worst = 0.0
    for label, wfa in fixtures:
        degree = args.degree if wfa.alphabet_size > 1 else max(args.degree, 2)
        report = fock.verify_hankel_equation(wfa, degree)
        worst = max(worst, report.max_discrepancy)
        lines.append(f"fixture: {label}")
        lines.append(f"  degree: {report.degree}, comparisons: {report.comparisons}")
        lines.append(f"  max discrepancy: {report.max_discrepancy!r}")
    passed = worst == 0.0
    lines.append(f"max discrepancy over fixtures: {worst!r}")
    return lines, passed


def _suite_shifts(args):
    lines = ["suite: shifts"]
    passed = True
    for d, degree in ((2, args.degree), (3, min(args.degree, 4))):
        report = fock.verify_shift_inequalities(d, degree, trials=args.trials, seed=args.seed)
        lines.extend("  " + line for line in report.lines())
        passed = passed and report.passed
    return lines, passed


def _suite_free_group(args):
    report = fock.free_group_counterexample()
    lines = ["suite: free-group"]
    lines.extend("  " + line for line in report.lines())
    return lines, report.passed


def _suite_nc_rational(args):
    lines = ["suite: nc-rational"]
    if args.file:
        doc = load_document(args.file)
        realization = fock.NcRationalRealization.from_wfa(doc.wfa)
        lines.append(f"realization: file {args.file}")
    else:
        wfa = random_stable_wfa(2, 3, seed=args.seed, radius_bound=0.9)
        realization = fock.NcRationalRealization.from_wfa(wfa)
        lines.append(f"realization: random (d=2, n=3, seed={args.seed})")
    rng = np.random.default_rng(args.seed)
    d = realization.alphabet_size
    head = fock.nc_rational_eval(realization, [np.zeros((1, 1))] * d)[0, 0]
    exact = head == float(realization.c @ realization.b)
    lines.append(f"zero substitution returns head coefficient exactly: {exact}")
    worst_ratio = 0.0
    worst_rho = 0.0
    worst_norm_sum = 0.0
    for trial in range(args.trials):
        size = 1 + trial % 2
        arguments = [0.3 * rng.standard_normal((size, size)) for _ in range(d)]
        rho, norm_sum = fock.contraction_margins(realization, arguments)
        if rho >= 0.95:
            arguments = [0.5 * z for z in arguments]
            rho, norm_sum = fock.contraction_margins(realization, arguments)
        closed = fock.nc_rational_eval(realization, arguments)
        partial = fock.nc_rational_series(realization, arguments, 8)
        bound = fock.series_tail_bound(realization, arguments, 8)
        gap = float(np.linalg.norm(closed - partial, 2))
        worst_ratio = max(worst_ratio, gap / bound if bound > 0 else float(gap > 0))
        worst_rho = max(worst_rho, rho)
        worst_norm_sum = max(worst_norm_sum, norm_sum)
    lines.append(f"trials: {args.trials} (matrix sizes 1 and 2, degree-8 series)")
    lines.append(f"max |closed - series| / tail bound: {worst_ratio!r}")
    lines.append(f"max spectral radius of the substituted pencil: {worst_rho!r}")
    lines.append(f"max sum of ||z_j z_j^T||: {worst_norm_sum!r}")
    passed = exact and worst_ratio <= 1.0
    return lines, passed


def cmd_verify(args) -> int:
    suites = {
        "hankel-eq": _suite_hankel_eq,
        "shifts": _suite_shifts,
        "free-group": _suite_free_group,
        "nc-rational": _suite_nc_rational,
    }
    selected = list(suites) if args.suite == "all" else [args.suite]
    for line in _timestamp_lines(args):
        print(line)
    all_passed = True
    for name in selected:
        lines, passed = suites[name](args)
        for line in lines:
            print(line)
        print(f"result: {'pass' if passed else 'fail'}")
        all_passed = all_passed and passed
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfamin",
        description="Approximate minimization of weighted finite automata "
        "in the spectral norm.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate an automaton on a word")
    p_eval.add_argument("file", help="automaton document")
    p_eval.add_argument("word", help="word over the document's alphabet ('' for the empty word)")
    p_eval.set_defaults(func=cmd_eval)

    p_approx = sub.add_parser("approximate", help="compute a k-state approximation")
    p_approx.add_argument("file", help="automaton document")
    p_approx.add_argument("k", type=int, help="number of states of the approximation")
    p_approx.add_argument("--mode", choices=("aak", "svd"), default="aak",
                          help="aak: optimal Hankel approximation (one-letter only); "
                          "svd: truncated-SVD baseline (any alphabet)")
    p_approx.add_argument("--length", type=int, default=None,
                          help="prefix/suffix length of the evaluation block")
    p_approx.add_argument("--tol", type=float, default=1e-6,
                          help="relative certification tolerance (aak mode)")
    p_approx.add_argument("--output", "-o", default=None, help="output document path")
    p_approx.add_argument("--no-timestamp", action="store_true",
                          help="omit the timestamp line for byte-reproducible reports")
    p_approx.set_defaults(func=cmd_approximate)

    p_verify = sub.add_parser("verify", help="run numerical verification suites")
    p_verify.add_argument("file", nargs="?", default=None,
                          help="optional automaton document used as the fixture")
    p_verify.add_argument("--suite", choices=SUITES, default="all")
    p_verify.add_argument("--degree", type=int, default=5,
                          help="Fock-space truncation degree")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=100,
                          help="random trials for the shifts / nc-rational suites")
    p_verify.add_argument("--no-timestamp", action="store_true",
                          help="omit the timestamp line for byte-reproducible reports")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
