"""Run a static AArch64 Linux ELF under unicorn and report its exit status.

Only what the compiler emits is supported: straight-line code that ends in
the `exit` system call. Usable as a script (`python aarch64_emu.py EXE`
exits with the program's status), which lets the driver's `run` template
point at it on hosts that cannot execute AArch64 natively.
"""

import shutil
import subprocess
import sys
from pathlib import Path

STACK_TOP = 0x7FFF0000
STACK_SIZE = 0x100000
PAGE = 0x1000
MAX_INSNS = 1_000_000

CROSS_TOOLCHAIN = {
    "assemble": "clang --target=aarch64-linux-gnu -c -x assembler {asm} -o {obj}",
    "link": "ld.lld -e {entry} {obj} -o {exe}",
}


def available() -> bool:
    try:
        import elftools  # noqa: F401
        import unicorn  # noqa: F401
    except ImportError:
        return False
    return bool(shutil.which("clang") and shutil.which("ld.lld"))


class EmulationError(Exception):
    pass


def run_elf(path) -> int:
    from elftools.elf.elffile import ELFFile
    from unicorn import UC_ARCH_ARM64, UC_HOOK_INTR, UC_MODE_ARM, Uc, UcError
    from unicorn.arm64_const import UC_ARM64_REG_SP, UC_ARM64_REG_X0, UC_ARM64_REG_X8

    uc = Uc(UC_ARCH_ARM64, UC_MODE_ARM)
    with open(path, "rb") as fh:
        elf = ELFFile(fh)
        entry = elf.header.e_entry
        for seg in elf.iter_segments():
            if seg["p_type"] != "PT_LOAD":
                continue
            start = seg["p_vaddr"] & ~(PAGE - 1)
            end = (seg["p_vaddr"] + seg["p_memsz"] + PAGE - 1) & ~(PAGE - 1)
            uc.mem_map(start, end - start)
            uc.mem_write(seg["p_vaddr"], seg.data())

    uc.mem_map(STACK_TOP - STACK_SIZE, STACK_SIZE)
    uc.reg_write(UC_ARM64_REG_SP, STACK_TOP - STACK_SIZE // 2)
    result = {}

    def on_svc(uc, intno, _):
        if uc.reg_read(UC_ARM64_REG_X8) == 93:
            result["status"] = uc.reg_read(UC_ARM64_REG_X0) & 0xFF
        else:
            result["error"] = f"unexpected syscall {uc.reg_read(UC_ARM64_REG_X8)}"
        uc.emu_stop()

    uc.hook_add(UC_HOOK_INTR, on_svc)
    try:
        uc.emu_start(entry, 0, count=MAX_INSNS)
    except UcError as exc:
        raise EmulationError(f"emulation fault: {exc}")
    if "error" in result:
        raise EmulationError(result["error"])
    if "status" not in result:
        raise EmulationError("program did not exit")
    return result["status"]


def build_and_run(asm: str, workdir) -> int:
    """Assemble and link Linux-profile assembly text, then emulate it."""
    workdir = Path(workdir)
    asm_path = workdir / "prog.asm"
    obj, exe = workdir / "prog.o", workdir / "prog"
    asm_path.write_text(asm)
    for argv in (
        ["clang", "--target=aarch64-linux-gnu", "-c", "-x", "assembler", str(asm_path), "-o", str(obj)],
        ["ld.lld", "-e", "main", str(obj), "-o", str(exe)],
    ):
        proc = subprocess.run(argv, capture_output=True, text=True)
        if proc.returncode != 0:
            raise EmulationError(f"{argv[0]} failed:\n{proc.stderr}")
    return run_elf(exe)


if __name__ == "__main__":
    sys.exit(run_elf(sys.argv[1]))
