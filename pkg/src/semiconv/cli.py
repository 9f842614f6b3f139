"""``semiconv`` command line.

Exit status: 0 success, 1 failed match / failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bench, selftest
from .algebra import BOOL, NAT, UnproductiveRecursion
from .conv import conv2d, standard_kernels
from .fixtures import BENCH_FIXTURES, FIXTURE_NAMES, fixture
from .keyed import format_weight
from .pgm import read_pgm, write_pgm
from .poly import dump_series, m_eval, ode_series, p_show, parse_poly
from .regexp import index_word, reinterpret
from .syntax import ParseError, parse
from .trie import TrieSemiring, t_index

RINGS = {"bool": BOOL, "nat": NAT}


class UsageError(Exception):
    pass


def cmd_match(args) -> int:
    ring = RINGS[args.semiring]
    if (args.expr is None) == (args.fixture is None):
        raise UsageError("give exactly one of --expr or --fixture")
    if args.fixture is not None:
        e = fixture(args.fixture, ring)
    else:
        env = {name: fixture(name, ring) for name in FIXTURE_NAMES}
        e = parse(args.expr, ring, env)
    if args.engine == "regexp":
        w = index_word(e, args.word)
    else:
        w = t_index(reinterpret(e, TrieSemiring(ring)), args.word)
    print(format_weight(w))
    return 1 if ring.is_zero(w) else 0


def cmd_bench(args) -> int:
    names = args.fixtures.split(",") if args.fixtures else list(BENCH_FIXTURES)
    for name in names:
        if name not in FIXTURE_NAMES:
            raise UsageError(f"unknown fixture {name!r}")
    try:
        rows = bench.run_bench(names, args.n, args.reps, ring=RINGS[args.semiring], timeout_ms=args.timeout_ms)
    except bench.EngineDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    bench.write_tsv(rows)
    return 0


def cmd_poly(args) -> int:
    p = parse_poly(args.p)
    if args.op == "pow":
        if args.n is None or args.n < 0:
            raise UsageError("poly pow needs --n >= 0")
        print(p_show(p ** args.n))
    else:
        env = {}
        for part in (args.at or "").split(","):
            if not part.strip():
                continue
            name, _, val = part.partition("=")
            if not val:
                raise UsageError(f"bad binding {part!r}; use name=value")
            v = Fraction(val.strip())
            env[name.strip()] = int(v) if v.denominator == 1 else v
        try:
            print(format_weight(m_eval(p, env)))
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    return 0


def cmd_series(args) -> int:
    table = ode_series()
    if args.name not in table:
        raise UsageError(f"unknown series {args.name!r}")
    sys.stdout.write(dump_series(table[args.name], args.count))
    return 0


def cmd_image(args) -> int:
    kernels = standard_kernels()
    if args.kernel not in kernels:
        raise UsageError(f"unknown kernel {args.kernel!r}; choose from {', '.join(kernels)}")
    img = read_pgm(args.input)
    write_pgm(conv2d(img, kernels[args.kernel]), args.output)
    return 0


def cmd_selftest(args) -> int:
    return 0 if selftest.run(args.seed) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semiconv", description="Convolution over semirings.")
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", help="weight of a word under an expression")
    m.add_argument("word")
    m.add_argument("--expr", help="expression text, e.g. \"'a'^* * 'a'^*\"")
    m.add_argument("--fixture", choices=FIXTURE_NAMES)
    m.add_argument("--semiring", choices=sorted(RINGS), default="bool")
    m.add_argument("--engine", choices=bench.ENGINES, default="trie")
    m.set_defaults(func=cmd_match)

    b = sub.add_parser("bench", help="time both engines on the example languages")
    b.add_argument("--fixtures", help="comma separated (default: all)")
    b.add_argument("--n", type=int, default=100, help="input length")
    b.add_argument("--reps", type=int, default=100)
    b.add_argument("--semiring", choices=sorted(RINGS), default="nat")
    b.add_argument("--timeout-ms", type=float, default=None)
    b.set_defaults(func=cmd_bench)

    p = sub.add_parser("poly", help="polynomial arithmetic")
    p.add_argument("op", choices=("pow", "eval"))
    p.add_argument("--p", required=True, help="polynomial text, e.g. \"x+3\"")
    p.add_argument("--n", type=int)
    p.add_argument("--at", help="variable bindings for eval, e.g. x=1,y=2")
    p.set_defaults(func=cmd_poly)

    s = sub.add_parser("series", help="power series coefficients")
    s.add_argument("--name", required=True, choices=("sin", "cos", "exp"))
    s.add_argument("--count", type=int, default=16)
    s.set_defaults(func=cmd_series)

    i = sub.add_parser("image", help="convolve a PGM image with a standard kernel")
    i.add_argument("--kernel", required=True)
    i.add_argument("input")
    i.add_argument("output")
    i.set_defaults(func=cmd_image)

    t = sub.add_parser("selftest", help="run the randomized oracle suites")
    t.add_argument("--seed", type=int, default=selftest.DEFAULT_SEED)
    t.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnproductiveRecursion as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
