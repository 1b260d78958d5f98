"""Command-line front door: exact fractions and TSV tables on stdout.

Exit codes: 0 success, 1 domain errors (singular Gram, caps, degenerate
patterns), 2 usage errors.  Each run logs its parameters and the tool
version to stderr so stdout stays byte-stable and machine-readable.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import DomainError, SingularGramError
from .group_dual import analyze_embedding, parse_embedding_file
from .homspace import (
    TruncatedMatrix,
    classify,
    count_truncations,
    free_projection_witness,
)
from .oracle import (
    exact_group_average,
    mc_bistochastic_average,
    mc_orthogonal_average,
)
from .partitions import CATEGORIES, UNPRIMED, enumerate_category, is_block_stable
from .sampling import GENERATOR, active_backend
from .weingarten import character_moment, gram_matrix, haar_moment, weingarten_matrix

MC_GROUPS = {"O": mc_orthogonal_average, "B": mc_bistochastic_average}


def parse_word(text, n):
    """Parse space-separated ``i,j`` pairs into a word of (row, column) letters."""
    text = text.strip()
    if not text:
        return ()
    word = []
    for token in text.split():
        parts = token.split(",")
        if len(parts) != 2:
            raise ValueError(f"malformed pair {token!r}; expected i,j")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"malformed pair {token!r}; expected integers") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"pair {token!r} outside 1..{n}")
        word.append((i, j))
    return tuple(word)


def _category_arg(parser, choices):
    parser.add_argument("--category", required=True, choices=sorted(choices))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="eqg",
        description="Exact partition categories, Weingarten integration and "
        "homogeneous-space checks for the easy orthogonal quantum groups.",
    )
    parser.add_argument("--version", action="version", version=f"eqg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", help="list the category's partitions")
    _category_arg(p, CATEGORIES)
    p.add_argument("--points", type=int, required=True)

    p = sub.add_parser("gram", help="exact Gram matrix as TSV")
    _category_arg(p, UNPRIMED)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("weingarten", help="exact Weingarten matrix as TSV")
    _category_arg(p, UNPRIMED)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("moment", help="Haar-state value of a coordinate word")
    _category_arg(p, UNPRIMED)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True)

    p = sub.add_parser("char-moments", help="character moments up to a power")
    _category_arg(p, UNPRIMED)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-power", type=int, required=True)

    p = sub.add_parser("block-stable", help="closure under removing blocks")
    _category_arg(p, CATEGORIES)
    p.add_argument("--points", type=int, required=True, help="largest point count checked")

    p = sub.add_parser("group-dual", help="row-subgroup analysis of a finite group dual")
    p.add_argument("--input", required=True)

    p = sub.add_parser("truncations", help="count distinct bottom-row truncations")
    _category_arg(p, ("S", "H"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("classify", help="matrix classes of a truncation read from TSV")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("oracle", help="ground-truth group average (exact or sampled)")
    _category_arg(p, ("S", "H", "O", "B"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("witness43", help="noncommutation witness norm at an angle")
    p.add_argument("--theta", type=float, required=True, help="angle in radians")

    return parser


def _log(args):
    fields = [f"eqg {__version__}", args.command]
    for key in ("category", "points", "n", "k", "word", "max_power", "samples", "input", "tol", "theta"):
        if getattr(args, key, None) is not None:
            fields.append(f"{key}={getattr(args, key)}")
    if args.command == "oracle" and args.category in MC_GROUPS:
        fields.append(f"seed={args.seed}")
        fields.append(f"generator={GENERATOR}")
        fields.append(f"backend={active_backend()}")
    print(" | ".join(fields), file=sys.stderr)


def run(args, out=None):
    """Dispatch a parsed command; returns the process exit status."""
    out = out if out is not None else sys.stdout
    _log(args)
    cmd = args.command
    if cmd == "partitions":
        for part in enumerate_category(args.category, args.points):
            print(part, file=out)
    elif cmd == "gram":
        print(gram_matrix(args.category, args.points, args.n).to_tsv(), file=out)
    elif cmd == "weingarten":
        print(weingarten_matrix(args.category, args.points, args.n).to_tsv(), file=out)
    elif cmd == "moment":
        word = parse_word(args.word, args.n)
        print(haar_moment(args.category, args.n, word), file=out)
    elif cmd == "char-moments":
        if args.max_power < 0:
            raise ValueError("--max-power must be >= 0")
        for s in range(args.max_power + 1):
            print(f"{s}\t{character_moment(args.category, args.n, s)}", file=out)
    elif cmd == "block-stable":
        stable, witness = is_block_stable(args.category, args.points)
        print("true" if stable else "false", file=out)
        if witness is not None:
            part, removed, offending = witness
            removed_text = "".join("{" + ",".join(map(str, b)) + "}" for b in removed)
            print(f"partition\t{part}", file=out)
            print(f"removed\t{removed_text}", file=out)
            print(f"offending\t{offending}", file=out)
    elif cmd == "group-dual":
        with open(args.input, encoding="utf-8") as fh:
            emb = parse_embedding_file(fh.read())
        for line in analyze_embedding(emb).to_lines():
            print(line, file=out)
    elif cmd == "truncations":
        print(count_truncations(args.category, args.n, args.k), file=out)
    elif cmd == "classify":
        with open(args.input, encoding="utf-8") as fh:
            matrix = TruncatedMatrix.from_tsv(fh.read())
        classes = classify(matrix, args.tol)
        print(",".join(sorted(c.value for c in classes)), file=out)
    elif cmd == "oracle":
        word = parse_word(args.word, args.n)
        if args.category in MC_GROUPS:
            report = MC_GROUPS[args.category](args.n, word, args.samples, args.seed)
            print(report.to_tsv(), file=out)
        else:
            print(exact_group_average(args.category, args.n, word), file=out)
    elif cmd == "witness43":
        print(repr(free_projection_witness(args.theta)), file=out)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except SingularGramError as err:
        print(f"singular Gram, rank {err.rank} of {err.size}", file=sys.stderr)
        return 1
    except DomainError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
