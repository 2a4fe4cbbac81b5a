"""Locating and invoking the assembler, linker and (optionally) a runner.

Commands are templates with `{asm}`, `{obj}`, `{exe}` and `{entry}`
placeholders. The SUBSETC_TOOLCHAIN environment variable may hold a JSON
object with `assemble`, `link` and optional `run` templates; otherwise the
native tools are used when the host can build for the requested profile.
"""

import json
import os
import platform
import shlex
import shutil
import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .codegen import TargetProfile

ENV_VAR = "SUBSETC_TOOLCHAIN"
RUN_TIMEOUT = 10


class ToolchainError(Exception):
    """A tool was missing or exited nonzero; `output` holds what it printed."""

    def __init__(self, message, output=""):
        super().__init__(message)
        self.output = output


@dataclass(frozen=True)
class Toolchain:
    assemble: str
    link: str
    run: Optional[str] = None

    def _argv(self, template, **paths):
        quoted = {k: shlex.quote(str(v)) for k, v in paths.items()}
        return shlex.split(template.format(**quoted))

    def assemble_cmd(self, asm, obj):
        return self._argv(self.assemble, asm=asm, obj=obj)

    def link_cmd(self, obj, exe, entry):
        return self._argv(self.link, obj=obj, exe=exe, entry=entry)

    def run_cmd(self, exe):
        return self._argv(self.run, exe=exe) if self.run else None


_NATIVE = {
    "darwin": Toolchain(
        assemble="as -arch arm64 {asm} -o {obj}",
        link="clang -arch arm64 {obj} -o {exe}",
        run="{exe}",
    ),
    "linux": Toolchain(
        assemble="as {asm} -o {obj}",
        link="ld -e {entry} {obj} -o {exe}",
        run="{exe}",
    ),
}


def _host_matches(profile: TargetProfile) -> bool:
    machine = platform.machine().lower()
    if machine not in ("arm64", "aarch64"):
        return False
    if profile.name == "darwin":
        return sys.platform == "darwin"
    return sys.platform.startswith("linux")


def _tools_present(tc: Toolchain) -> bool:
    templates = [tc.assemble, tc.link] + ([tc.run] if tc.run and not tc.run.startswith("{") else [])
    return all(shutil.which(shlex.split(t)[0]) for t in templates)


def resolve_toolchain(profile: TargetProfile, environ=None) -> Optional[Toolchain]:
    """Return the toolchain for `profile`, or None when none is usable here."""
    environ = os.environ if environ is None else environ
    override = environ.get(ENV_VAR)
    if override:
        try:
            cfg = json.loads(override)
            tc = Toolchain(cfg["assemble"], cfg["link"], cfg.get("run"))
        except (ValueError, KeyError, TypeError) as exc:
            raise ToolchainError(f"invalid {ENV_VAR}: {exc}")
        return tc
    if not _host_matches(profile):
        return None
    tc = _NATIVE[profile.name]
    return tc if _tools_present(tc) else None


def _check(argv, what):
    try:
        proc = subprocess.run(argv, capture_output=True, text=True)
    except OSError as exc:
        raise ToolchainError(f"{what} could not be started: {exc}")
    if proc.returncode != 0:
        raise ToolchainError(
            f"{what} failed with exit status {proc.returncode}: {' '.join(argv)}",
            proc.stdout + proc.stderr)


def assemble_and_link(asm_path, profile: TargetProfile, toolchain=None, keep=False) -> Path:
    """Assemble `asm_path` and link it into an executable next to it."""
    asm_path = Path(asm_path)
    if toolchain is None:
        toolchain = resolve_toolchain(profile)
    if toolchain is None:
        raise ToolchainError(
            f"toolchain unavailable: cannot build {profile.name} executables on "
            f"{sys.platform}/{platform.machine()} (set {ENV_VAR} to configure one)")
    obj = asm_path.with_suffix(".o")
    exe = asm_path.with_suffix("")
    try:
        _check(toolchain.assemble_cmd(asm_path, obj), "assembler")
        _check(toolchain.link_cmd(obj, exe, profile.entry_symbol), "linker")
    finally:
        if not keep and obj.exists():
            obj.unlink()
    return exe


def run_executable(exe, toolchain: Toolchain) -> int:
    """Run a linked program and return its exit status (0..255)."""
    argv = toolchain.run_cmd(Path(exe).resolve())
    if argv is None:
        raise ToolchainError("toolchain has no way to run executables")
    try:
        proc = subprocess.run(argv, capture_output=True, timeout=RUN_TIMEOUT)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise ToolchainError(f"running {exe} failed: {exc}")
    return proc.returncode & 0xFF
