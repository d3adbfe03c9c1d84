"""``grassbanach`` command line.

    grassbanach eval "<expr>" [--field real|rational|padic=p[:prec]]
                              [--norm l1|linf] [--format text|json]
                              [--ordering FILE]
    grassbanach check [--samples N] [--seed S]

``eval -`` reads one expression per line from stdin.  Exit codes: 0 ok,
2 parse error, 3 not invertible, 4 field/config error, 5 internal invariant
violation.  Errors print a single line on stderr and nothing on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    DescriptorMismatch,
    GrassmannError,
    LabelMismatch,
    ModeMismatch,
    NotInvertible,
    NotUltrametric,
    ParseError,
    PrecisionLoss,
)
from .expr import SessionConfig, run
from .fields import parse_field_spec
from .monomial import CANONICAL, OrderingFunction

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_INVERTIBLE = 3
EXIT_CONFIG = 4
EXIT_INTERNAL = 5


class ConfigError(Exception):
    pass


def _config(args) -> SessionConfig:
    try:
        field = parse_field_spec(args.field)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.norm not in ("l1", "linf"):
        raise ConfigError(f"unknown norm {args.norm!r}; expected l1 or linf")
    if args.format not in ("text", "json"):
        raise ConfigError(f"unknown format {args.format!r}; expected text or json")
    ordering = CANONICAL
    if args.ordering:
        try:
            ordering = OrderingFunction.load(args.ordering)
        except (OSError, ValueError, KeyError, TypeError, LabelMismatch) as exc:
            raise ConfigError(f"cannot load ordering from {args.ordering}: {exc}") from None
    cfg = SessionConfig(field=field, norm=args.norm, ordering=ordering, output=args.format)
    cfg.algebra()  # rejects l_inf over an Archimedean field
    return cfg


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_eval(args) -> int:
    try:
        cfg = _config(args)
        if args.expression == "-":
            lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
        else:
            lines = [args.expression]
        out = [run(text, cfg) for text in lines]
    except ParseError as exc:
        return _fail(EXIT_PARSE, f"parse error at offset {exc.position}: {exc.message}")
    except NotInvertible as exc:
        return _fail(EXIT_NOT_INVERTIBLE, str(exc))
    except (ConfigError, NotUltrametric, DescriptorMismatch, ModeMismatch, PrecisionLoss) as exc:
        return _fail(EXIT_CONFIG, str(exc))
    except GrassmannError as exc:
        return _fail(EXIT_INTERNAL, f"{type(exc).__name__}: {exc}")
    except Exception as exc:  # noqa: BLE001 - every failure maps to an exit code
        return _fail(EXIT_INTERNAL, f"internal error: {type(exc).__name__}: {exc}")
    sys.stdout.write("".join(line + "\n" for line in out))
    return EXIT_OK


def cmd_check(args) -> int:
    from .checks import run_checks

    try:
        results = run_checks(samples=args.samples, seed=args.seed)
    except Exception as exc:  # noqa: BLE001
        return _fail(EXIT_INTERNAL, f"internal error: {type(exc).__name__}: {exc}")
    if args.format == "json":
        print(json.dumps([{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]))
    else:
        for r in results:
            print(f"{'ok  ' if r.passed else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else ""))
    if all(r.passed for r in results):
        return EXIT_OK
    failed = ", ".join(r.name for r in results if not r.passed)
    return _fail(EXIT_INTERNAL, f"invariant violated: {failed}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassbanach", description="Evaluate expressions in Grassmann-Banach algebras."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression ('-' reads lines from stdin)")
    ev.add_argument("expression")
    ev.add_argument("--field", default="rational", help="real, rational or padic=p[:prec] (default rational)")
    ev.add_argument("--norm", default="l1", help="l1 or linf (linf needs a padic field)")
    ev.add_argument("--format", default="text", help="text or json")
    ev.add_argument("--ordering", help="JSON file with a table ordering function")
    ev.set_defaults(func=cmd_eval)

    ck = sub.add_parser("check", help="run the built-in property suite")
    ck.add_argument("--samples", type=int, default=50)
    ck.add_argument("--seed", type=int, default=0)
    ck.add_argument("--format", default="text", choices=("text", "json"))
    ck.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
