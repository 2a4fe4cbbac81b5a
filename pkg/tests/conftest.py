import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).parent
sys.path.insert(0, str(TESTS))

import aarch64_emu  # noqa: E402

CORPUS = TESTS / "corpus"
GOLDEN = TESTS / "golden"


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def paper_source():
    return (GOLDEN / "main.dd").read_text()


@pytest.fixture(scope="session")
def golden():
    return lambda name: (GOLDEN / name).read_text()


@pytest.fixture(scope="session")
def emulator():
    if not aarch64_emu.available():
        pytest.skip("unicorn/pyelftools or clang/ld.lld not available")
    return aarch64_emu


@pytest.fixture
def emu_toolchain(emulator):
    from subsetc.toolchain import Toolchain
    cfg = aarch64_emu.CROSS_TOOLCHAIN
    return Toolchain(cfg["assemble"], cfg["link"],
                     f"{sys.executable} {aarch64_emu.__file__} {{exe}}")


_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        verdict = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{verdict:5} {name}")
