"""Command-line entry point."""

__author__ = "smisel developers"

__version__ = "0.1.0"

import argparse
import sys

from smisel.core.contract.error import SmiselError


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smiselctl",
        description="Sparse squared-loss mutual information feature selection.",
    )
    # Accepted before or after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        default=argparse.SUPPRESS,
        help="TOML file merged over smisel.toml",
    )
    parser.add_argument("--config", help="TOML file merged over smisel.toml")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser(
        "gen", parents=[common], help="write a toy dataset as CSV"
    )
    gen.add_argument("toy", choices=("and-or", "quad", "xor"))
    gen.add_argument("--n", type=int, default=400)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    select = commands.add_parser(
        "select", parents=[common], help="select k features of a CSV dataset"
    )
    select.add_argument("--data", required=True)
    select.add_argument("--task", choices=("reg", "class"), required=True)
    select.add_argument("--method", required=True)
    select.add_argument("--k", type=int, required=True)
    select.add_argument("--seed", type=int, default=0)

    bench = commands.add_parser(
        "bench", parents=[common], help="run the configured benchmark"
    )
    bench.add_argument("--out", required=True)

    lsmi = commands.add_parser(
        "lsmi", parents=[common], help="score a feature subset with LSMI"
    )
    lsmi.add_argument("--data", required=True)
    lsmi.add_argument("--features", required=True)
    lsmi.add_argument("--task", choices=("reg", "class"), default="class")
    lsmi.add_argument("--seed", type=int, default=0)

    table = commands.add_parser(
        "andor-table", parents=[common], help="rank the and-or 4-subsets"
    )
    table.add_argument("--n", type=int, default=400)
    table.add_argument("--seed", type=int, default=0)
    return parser


def _dispatch(args: argparse.Namespace) -> None:
    # Importing the package builds the default container.
    # pylint: disable=import-outside-toplevel
    import smisel
    from smisel.core import di

    injector = di.container
    if args.config is not None:
        injector = di.build_container(args.config)
    smisel.create_app(injector.config, injector.logging_gateway)

    match args.command:
        case "gen":
            truth = smisel.run_gen(injector, args.toy, args.n, args.seed, args.out)
            print(f"true features: {truth}")
        case "select":
            result = smisel.run_select(
                injector, args.data, args.task, args.method, args.k, args.seed
            )
            print(f"{result.method}: {result.selected}")
        case "bench":
            for path in smisel.run_bench(injector, args.out):
                print(path)
        case "lsmi":
            score = smisel.run_lsmi(
                injector, args.data, args.features, args.task, args.seed
            )
            print(f"{score.features}\t{score.value:.6f}")
        case "andor-table":
            for score in smisel.run_andor_table(injector, args.n, args.seed):
                print(f"{score.features}\t{score.value:.6f}")


def main(argv: list[str] | None = None) -> int:
    """Run one command and return the process exit code."""
    args = _parser().parse_args(argv)
    try:
        _dispatch(args)
    except SmiselError as e:
        print(f"smiselctl: error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
