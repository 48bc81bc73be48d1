"""Command-line entry point.

Exit codes: 0 all checks pass (or NA), 1 a proved claim or an identity /
lemma check failed, 2 usage error, 3 I/O error.  Conjecture failures alone
exit 0 but print a counterexample banner.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from typing import IO, Iterator, Sequence

from . import __version__, _kernels
from .binomsums import get_family
from .claims import (
    corollary_substitution_check,
    get_claim,
    registry,
    sweep,
    zero_implication_scan,
)
from .modp2 import PrimeContext, primes_between
from .polyidentity import IDENTITIES, check_identity
from .report import emit, emit_outcomes
from .wz import LEMMAS, certificate_check, lemma_direct_check, recurrence_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")
_POWER = re.compile(r"^\s*(\(\s*-?\d+(?:/\d+)?\s*\)|-?\d+(?:/\d+)?)\s*\^\s*(\d+)\s*$")


def prime_range(text: str) -> tuple[int, int]:
    """Parse ``LO..HI`` (inclusive)."""
    m = _RANGE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty prime range {text!r}")
    return lo, hi


def rational(text: str) -> Fraction:
    """Parse ``a``, ``a/b``, ``(a)^e`` or ``a^e`` into an exact rational.

    ``-15^3`` is read as ``-(15^3)``, which equals ``(-15)^3`` for odd e.
    """
    m = _POWER.match(text)
    try:
        if m:
            base, exp = m.group(1), int(m.group(2))
            if base.startswith("("):
                return Fraction(base.strip("() ")) ** exp
            if base.startswith("-"):
                return -(Fraction(base[1:]) ** exp)
            return Fraction(base) ** exp
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercong",
        description="Exact verification of central binomial supercongruences mod p^2.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "jsonl"), default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="omit wall time")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("claims", parents=[common], help="sweep the claim registry")
    p.add_argument("--primes", type=prime_range, default=(5, 10000), metavar="LO..HI")
    p.add_argument("--claim", action="append", default=[], metavar="ID")
    p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("identity", parents=[common], help="polynomial congruences")
    p.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--primes", type=prime_range, default=(3, 200), metavar="LO..HI")

    p = sub.add_parser("lemma", parents=[common], help="exact lemma identities")
    p.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--max-m", type=_nonneg, default=200)

    p = sub.add_parser("recurrence", parents=[common], help="three-term recurrences")
    p.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--side", choices=("lhs", "rhs"), required=True)
    p.add_argument("--max-m", type=_nonneg, default=200)

    p = sub.add_parser("certificate", parents=[common], help="WZ certificates")
    p.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--side", choices=("lhs", "rhs"), required=True)
    p.add_argument("--max-m", type=_nonneg, default=30)
    p.add_argument("--max-k", type=_nonneg, default=30)

    p = sub.add_parser("substitution", parents=[common], help="square-root substitution")
    p.add_argument("--pair", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--m", type=rational, required=True, metavar="RATIONAL")
    p.add_argument("--primes", type=prime_range, default=(5, 2000), metavar="LO..HI")

    p = sub.add_parser("scan-zero", parents=[common], help="zero-implication scan")
    p.add_argument("--family", type=int, choices=(4, 5, 6), required=True)
    p.add_argument("--m", type=rational, required=True, metavar="RATIONAL")
    p.add_argument("--primes", type=prime_range, default=(5, 2000), metavar="LO..HI")
    return parser


@contextmanager
def _open_output(path: str | None) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as fh:
        yield fh


def _odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in primes_between(lo, hi) if p > 2]


def _cmd_claims(args, out: IO[str], parser: argparse.ArgumentParser) -> int:
    if args.claim:
        try:
            claims = [get_claim(c) for c in args.claim]
        except KeyError as exc:
            parser.error(f"--claim: {exc.args[0]}")
    else:
        claims = registry()
    lo, hi = args.primes
    start = time.perf_counter()
    reports = sweep(claims, primes_between(lo, hi), workers=args.workers)
    elapsed = time.perf_counter() - start
    config = {
        "primes": f"{lo}..{hi}",
        "claims": ",".join(c.id for c in claims) if args.claim else "all",
    }
    summary = emit(
        reports,
        args.format,
        out,
        config=config,
        wall_time=None if args.no_timing else elapsed,
    )
    if args.format == "jsonl" and summary.conjecture_failures:
        print(
            f"COUNTEREXAMPLE CANDIDATES for conjectures: {len(summary.conjecture_failures)}",
            file=sys.stderr,
        )
    return summary.exit_code()


def _outcomes(args):
    cmd = args.command
    if cmd == "identity":
        fam = IDENTITIES[args.family]
        for p in _odd_primes(*args.primes):
            yield check_identity(fam, PrimeContext(p))
    elif cmd == "lemma":
        yield lemma_direct_check(LEMMAS[args.family], args.max_m)
    elif cmd == "recurrence":
        yield recurrence_check(LEMMAS[args.family], args.side, args.max_m)
    elif cmd == "certificate":
        yield certificate_check(LEMMAS[args.family], args.side, args.max_m, args.max_k)
    elif cmd == "substitution":
        for p in primes_between(max(args.primes[0], 5), args.primes[1]):
            yield corollary_substitution_check(args.pair, args.m, p)
    elif cmd == "scan-zero":
        lo, hi = args.primes
        yield zero_implication_scan(get_family(args.family), args.m, hi, lo=lo)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "recurrence" and args.max_m < 2:
        parser.error("--max-m: recurrence checks need at least 2")
    if args.command == "certificate" and min(args.max_m, args.max_k) < 4:
        parser.error("--max-m/--max-k: certificate grids need bounds >= 4")
    try:
        with _open_output(args.output) as out:
            if args.command == "claims":
                return _cmd_claims(args, out, parser)
            start = time.perf_counter()
            ok = emit_outcomes(_outcomes(args), args.format, out)
            if args.format == "text" and not args.no_timing:
                out.write(
                    f"wall time: {time.perf_counter() - start:.3f}s "
                    f"(kernels: {_kernels.BACKEND})\n"
                )
            return EXIT_OK if ok else EXIT_FAIL
    except OSError as exc:
        print(f"supercong: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())
