"""Compilation pipeline, artifact writing and the test-suite runner."""

import concurrent.futures
import shutil
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from . import codegen, interpreter, lexer, parser, semantics
from .codegen import TargetProfile
from .diagnostics import CompileError
from .subsets import ALL, FeatureSet
from .toolchain import ToolchainError, assemble_and_link, resolve_toolchain, run_executable

EXIT_OK = 0
EXIT_COMPILE_ERROR = 1
EXIT_USAGE = 2
EXIT_TOOLCHAIN = 3


@dataclass
class CompileOptions:
    input: Path
    output_dir: Path = Path("build")
    dump_tokens: bool = False
    dump_ast: bool = False
    dump_asm: bool = False
    features: FeatureSet = ALL
    profile: TargetProfile = field(default_factory=codegen.host_profile)
    interpret_only: bool = False
    keep: bool = False
    link: bool = True


@dataclass
class Compilation:
    tokens: list
    program: object
    asm: Optional[str] = None


def front_end(source: str, features: FeatureSet = ALL) -> Compilation:
    """Scan, parse and check `source`; raises CompileError on any diagnostic."""
    tokens = lexer.tokenize(source, features)
    program = parser.parse(tokens, features)
    diagnostics = semantics.analyze(program, features)
    if diagnostics:
        raise CompileError(diagnostics)
    return Compilation(tokens, program)


def compile_source(source: str, features: FeatureSet = ALL,
                   profile: TargetProfile = codegen.LINUX) -> Compilation:
    result = front_end(source, features)
    result.asm = codegen.generate(result.program, profile)
    return result


@dataclass
class BuildResult:
    artifacts: List[Path] = field(default_factory=list)
    messages: List[str] = field(default_factory=list)
    compilation: Optional[Compilation] = None


def compile(opts: CompileOptions, toolchain=None) -> BuildResult:
    """Run the full pipeline for one `.dd` file and write its artifacts.

    Everything is computed in memory first, so a CompileError leaves the
    output directory untouched. A toolchain failure removes whatever this
    call wrote before re-raising.
    """
    source = Path(opts.input).read_text()
    result = BuildResult()
    comp = compile_source(source, opts.features, opts.profile)
    result.compilation = comp

    stem = Path(opts.input).stem
    out = Path(opts.output_dir)
    created_dir = not out.exists()
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def write(suffix, text):
        path = out / f"{stem}{suffix}"
        path.write_text(text if text.endswith("\n") else text + "\n")
        written.append(path)
        return path

    try:
        if opts.dump_tokens:
            write(".tokens", lexer.render_token_dump(comp.tokens))
        if opts.dump_ast:
            write(".ast", parser.render_ast(comp.program))
        asm_path = write(".asm", comp.asm)
        result.messages.append(f"Written {asm_path}.")
        if opts.link:
            if toolchain is None:
                toolchain = resolve_toolchain(opts.profile)
            if toolchain is None:
                result.messages.append(
                    f"note: no {opts.profile.name} toolchain on this host; "
                    f"skipped assembling and linking")
            else:
                exe = assemble_and_link(asm_path, opts.profile, toolchain, keep=opts.keep)
                written.append(exe)
                if opts.keep:
                    written.append(asm_path.with_suffix(".o"))
                result.messages.append(f"Linked {exe}.")
    except (ToolchainError, OSError):
        for path in written:
            if path.exists():
                path.unlink()
        if created_dir:
            shutil.rmtree(out, ignore_errors=True)
        raise
    result.artifacts = written
    return result


# -- test runner ------------------------------------------------------------

@dataclass(frozen=True)
class TestCase:
    source: Path
    kind: str  # "valid" or "invalid"
    expect_path: Path

    @property
    def name(self) -> str:
        return f"{self.kind}/{self.source.stem}"


@dataclass
class CaseResult:
    name: str
    kind: str
    status: str  # "passed", "failed" or "error"
    mode: str = ""  # "executed", "interpreted" or "rejected"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "passed"


@dataclass
class TestSummary:
    records: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0


def discover(suite_dir) -> List[TestCase]:
    suite_dir = Path(suite_dir)
    cases = []
    for kind in ("valid", "invalid"):
        for src in sorted((suite_dir / kind).glob("*.dd")):
            cases.append(TestCase(src, kind, src.with_suffix(".expect")))
    return cases


def read_expectation(case: TestCase):
    """Return ("exit", n) or ("error", CODE); raises ValueError if malformed."""
    if not case.expect_path.exists():
        raise ValueError(f"missing expectation file {case.expect_path.name}")
    words = case.expect_path.read_text().split()
    if len(words) == 2 and words[0] == "exit" and words[1].isdigit():
        return "exit", int(words[1]) & 0xFF
    if len(words) == 2 and words[0] == "error":
        return "error", words[1]
    raise ValueError(f"malformed expectation in {case.expect_path.name}: {' '.join(words)!r}")


def run_case(case: TestCase, opts: CompileOptions, toolchain, workdir: Path) -> CaseResult:
    try:
        what, expected = read_expectation(case)
    except ValueError as exc:
        return CaseResult(case.name, case.kind, "error", detail=str(exc))
    wanted = "exit" if case.kind == "valid" else "error"
    if what != wanted:
        return CaseResult(case.name, case.kind, "error",
                          detail=f"{case.kind} case needs an '{wanted}' expectation")

    build_opts = CompileOptions(
        input=case.source, output_dir=workdir, features=opts.features,
        profile=opts.profile, keep=opts.keep, link=toolchain is not None)
    try:
        build = compile(build_opts, toolchain)
    except CompileError as err:
        if what == "error":
            if expected in err.codes:
                return CaseResult(case.name, case.kind, "passed", "rejected", expected)
            return CaseResult(case.name, case.kind, "failed", "rejected",
                              f"expected {expected}, got {', '.join(err.codes)}")
        return CaseResult(case.name, case.kind, "failed", "rejected",
                          "; ".join(d.format(case.source.name) for d in err.diagnostics))
    except ToolchainError as err:
        return CaseResult(case.name, case.kind, "failed", detail=f"{err}\n{err.output}".strip())

    if what == "error":
        return CaseResult(case.name, case.kind, "failed", detail=f"compiled, expected {expected}")

    if toolchain is not None and toolchain.run:
        exe = workdir / case.source.stem
        try:
            status = run_executable(exe, toolchain)
        except ToolchainError as err:
            return CaseResult(case.name, case.kind, "failed", "executed", str(err))
        mode = "executed"
    else:
        status = interpreter.exit_status(interpreter.interpret(build.compilation.program))
        mode = "interpreted"
    if status == expected:
        return CaseResult(case.name, case.kind, "passed", mode, f"exit {status}")
    return CaseResult(case.name, case.kind, "failed", mode,
                      f"expected exit {expected}, got {status}")


def run_tests(suite_dir, opts: CompileOptions, toolchain=None, jobs=None) -> TestSummary:
    """Run every case under `suite_dir`/valid and `suite_dir`/invalid.

    Each case works in its own directory; without `opts.keep` these are
    temporary and removed afterwards, otherwise they persist under
    `opts.output_dir`.
    """
    cases = discover(suite_dir)
    if toolchain is None:
        toolchain = resolve_toolchain(opts.profile)

    def one(case):
        if opts.keep:
            workdir = Path(opts.output_dir) / case.kind / case.source.stem
            workdir.mkdir(parents=True, exist_ok=True)
            return run_case(case, opts, toolchain, workdir)
        with tempfile.TemporaryDirectory(prefix="subsetc-") as tmp:
            return run_case(case, opts, toolchain, Path(tmp))

    with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
        records = list(pool.map(one, cases))
    return TestSummary(records)
