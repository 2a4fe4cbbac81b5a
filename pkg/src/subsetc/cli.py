import argparse
import sys
from pathlib import Path

from . import codegen, interpreter, lexer, parser
from .diagnostics import CompileError
from .driver import (EXIT_COMPILE_ERROR, EXIT_OK, EXIT_TOOLCHAIN, EXIT_USAGE,
                     CompileOptions, compile, front_end, run_tests)
from .subsets import resolve_features
from .toolchain import ToolchainError


class UsageError(Exception):
    pass


def _features(values):
    flags = []
    for v in values or []:
        flags.extend(part for part in v.split(",") if part)
    try:
        return resolve_features(flags)
    except CompileError as err:
        raise UsageError(err.diagnostics[0].message)


def _profile(name):
    if name is None:
        return codegen.host_profile()
    return codegen.get_profile(name)


def _add_common(p):
    p.add_argument("--features", action="append", metavar="SPEC",
                   help="all, none or stage1..stage6 (default: all)")
    p.add_argument("--target", choices=sorted(codegen.PROFILES),
                   help="target OS profile (default: host)")
    p.add_argument("-o", dest="output_dir", default="build", help="output directory")
    p.add_argument("--keep", action="store_true", help="keep intermediate files")


def build_arg_parser():
    ap = argparse.ArgumentParser(prog="subsetc", description="Compiler for the .dd language.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="compile a .dd file to an AArch64 executable")
    b.add_argument("file")
    b.add_argument("--tokens", action="store_true", help="write and print the token dump")
    b.add_argument("--ast", action="store_true", help="write and print the AST dump")
    b.add_argument("--asm", action="store_true", help="print the generated assembly")
    b.add_argument("--no-link", action="store_true", help="stop after writing the assembly")
    _add_common(b)

    i = sub.add_parser("interpret", help="evaluate a .dd file with the reference interpreter")
    i.add_argument("file")
    i.add_argument("--features", action="append", metavar="SPEC")

    t = sub.add_parser("test", help="run a valid/invalid test suite")
    t.add_argument("suite_dir")
    t.add_argument("-j", "--jobs", type=int, default=None)
    _add_common(t)
    return ap


def _print_diagnostics(err, filename):
    for d in err.diagnostics:
        print(d.format(filename), file=sys.stderr)


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def cmd_build(args):
    _read(args.file)
    opts = CompileOptions(
        input=Path(args.file),
        output_dir=Path(args.output_dir),
        dump_tokens=args.tokens,
        dump_ast=args.ast,
        dump_asm=args.asm,
        features=_features(args.features),
        profile=_profile(args.target),
        keep=args.keep,
        link=not args.no_link,
    )
    try:
        result = compile(opts)
    except CompileError as err:
        _print_diagnostics(err, args.file)
        return EXIT_COMPILE_ERROR
    except ToolchainError as err:
        print(f"subsetc: {err}", file=sys.stderr)
        if err.output:
            print(err.output, file=sys.stderr, end="" if err.output.endswith("\n") else "\n")
        return EXIT_TOOLCHAIN
    comp = result.compilation
    if opts.dump_tokens:
        print(lexer.render_token_dump(comp.tokens))
    if opts.dump_ast:
        print(parser.render_ast(comp.program))
    if opts.dump_asm:
        print(comp.asm, end="")
    for msg in result.messages:
        print(msg, file=sys.stderr if msg.startswith("note:") else sys.stdout)
    return EXIT_OK


def cmd_interpret(args):
    source = _read(args.file)
    try:
        comp = front_end(source, _features(args.features))
    except CompileError as err:
        _print_diagnostics(err, args.file)
        return EXIT_COMPILE_ERROR
    print(interpreter.interpret(comp.program))
    return EXIT_OK


def cmd_test(args):
    suite = Path(args.suite_dir)
    if not suite.is_dir():
        raise UsageError(f"{suite} is not a directory")
    opts = CompileOptions(
        input=suite,
        output_dir=Path(args.output_dir),
        features=_features(args.features),
        profile=_profile(args.target),
        keep=args.keep,
    )
    try:
        summary = run_tests(suite, opts, jobs=args.jobs)
    except ToolchainError as err:
        print(f"subsetc: {err}", file=sys.stderr)
        return EXIT_TOOLCHAIN
    for r in summary.records:
        mode = f" ({r.mode})" if r.mode else ""
        detail = f": {r.detail}" if r.detail else ""
        print(f"{r.status.upper():6} {r.name}{mode}{detail}")
    print(f"\n{summary.passed} passed, {summary.failed} failed")
    return EXIT_OK if summary.ok else EXIT_COMPILE_ERROR


def main(argv=None):
    args = build_arg_parser().parse_args(argv)
    handler = {"build": cmd_build, "interpret": cmd_interpret, "test": cmd_test}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"subsetc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
