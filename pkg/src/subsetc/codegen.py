"""AArch64 assembly generation.

Every expression leaves its value in X0. Binary operators spill the left
operand to the stack below sp, evaluate the right operand, and reload the
left one into X1. Variables live in fixed 16-byte slots at negative offsets
from an sp that is never moved.
"""

import sys
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from . import syntax as ast
from .diagnostics import IMMEDIATE_RANGE, CompileError, Diagnostic

WORD_SIZE = 16
MAX_IMMEDIATE = 0xFFFF
# Lowest offset the unscaled `str`/`ldr` addressing form can encode.
MIN_STACK_OFFSET = -256
STACK_RANGE = "STACK_RANGE"


@dataclass(frozen=True)
class TargetProfile:
    name: str
    entry_symbol: str
    align_directive: str
    exit_sequence: Tuple[Tuple[str, str], ...]


DARWIN = TargetProfile(
    name="darwin",
    entry_symbol="_main",
    align_directive=".align 4",
    exit_sequence=(("mov", "x16, #1"), ("svc", "#0xFFFF")),
)

LINUX = TargetProfile(
    name="linux",
    entry_symbol="main",
    align_directive=".align 2",
    exit_sequence=(("mov", "x8, #93"), ("svc", "#0")),
)

PROFILES = {p.name: p for p in (DARWIN, LINUX)}


def host_profile() -> TargetProfile:
    return DARWIN if sys.platform == "darwin" else LINUX


def get_profile(name: str) -> TargetProfile:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown target {name!r}; expected one of {sorted(PROFILES)}")


class CodegenBug(RuntimeError):
    """An invariant that analysis should have guaranteed did not hold."""


@dataclass
class CodegenContext:
    profile: TargetProfile = LINUX
    env: List[Dict[str, int]] = field(default_factory=lambda: [{}])
    stack_offset: int = -WORD_SIZE
    label_counter: int = 0
    out: List[str] = field(default_factory=list)

    def emit(self, mnemonic, operands=""):
        self.out.append(f"    {mnemonic:<8}{operands}".rstrip())

    def emit_label(self, label):
        self.out.append(f"{label}:")

    def blank(self):
        if self.out and self.out[-1] != "":
            self.out.append("")

    def lookup(self, name) -> int:
        for scope in reversed(self.env):
            if name in scope:
                return scope[name]
        raise CodegenBug(f"no stack slot for variable {name!r}")

    def set_offset(self, name, offset):
        self.env[-1][name] = offset

    def push_offset(self, pos):
        offset = self.stack_offset
        if offset < MIN_STACK_OFFSET:
            raise CompileError([Diagnostic(
                STACK_RANGE,
                f"expression nesting needs stack offset {offset}, below the "
                f"supported {MIN_STACK_OFFSET}", *pos)])
        self.stack_offset -= WORD_SIZE
        return offset


def fresh_local_label(prefix: str, ctx: CodegenContext) -> str:
    label = f".L{prefix}_{ctx.label_counter}"
    ctx.label_counter += 1
    return label


def emit_exit(ctx: CodegenContext):
    for mnemonic, operands in ctx.profile.exit_sequence:
        ctx.emit(mnemonic, operands)


_COMPARE_CONDITION = {
    ast.BinaryOp.EQ: "eq",
    ast.BinaryOp.GT: "gt",
    ast.BinaryOp.LT: "lt",
    ast.BinaryOp.GE: "ge",
    ast.BinaryOp.LE: "le",
}


def lower_expression(expr, ctx: CodegenContext):
    if isinstance(expr, ast.Immediate):
        if not 0 <= expr.value <= MAX_IMMEDIATE:
            raise CompileError([Diagnostic(
                IMMEDIATE_RANGE,
                f"integer literal {expr.value} is outside 0..{MAX_IMMEDIATE}", *expr.pos)])
        ctx.emit("mov", f"X0, #{expr.value}")
    elif isinstance(expr, ast.Variable):
        ctx.emit("ldr", f"X0, [sp, #{ctx.lookup(expr.name)}]")
    elif isinstance(expr, ast.Assign):
        lower_expression(expr.rhs, ctx)
        ctx.emit("str", f"X0, [sp, #{ctx.lookup(expr.name)}]")
    elif isinstance(expr, ast.Unary):
        lower_expression(expr.operand, ctx)
        if expr.op is ast.UnaryOp.NEG:
            ctx.emit("neg", "X0, X0")
        elif expr.op is ast.UnaryOp.BITNOT:
            ctx.emit("mvn", "X0, X0")
        else:
            ctx.emit("cmp", "X0, #0")
            ctx.emit("cset", "X0, eq")
    elif isinstance(expr, ast.Binary):
        lower_expression(expr.lhs, ctx)
        offset = ctx.push_offset(expr.pos)
        ctx.emit("str", f"X0, [sp, #{offset}]")
        lower_expression(expr.rhs, ctx)
        ctx.stack_offset += WORD_SIZE
        ctx.emit("ldr", f"X1, [sp, #{offset}]")
        _binary_tail(expr.op, ctx)
    else:
        raise CodegenBug(f"not an expression: {expr!r}")


def _binary_tail(op, ctx):
    # Left operand in X1, right operand in X0.
    if op is ast.BinaryOp.ADD:
        ctx.emit("add", "X0, X0, X1")
    elif op is ast.BinaryOp.SUB:
        ctx.emit("sub", "X0, X1, X0")
    elif op is ast.BinaryOp.MUL:
        ctx.emit("mul", "X0, X0, X1")
    elif op in _COMPARE_CONDITION:
        ctx.emit("cmp", "X1, X0")
        ctx.emit("cset", f"X0, {_COMPARE_CONDITION[op]}")
    else:
        # && and || evaluate both sides, then combine the truth values.
        ctx.emit("cmp", "X0, #0")
        ctx.emit("cset", "X0, ne")
        ctx.emit("cmp", "X1, #0")
        ctx.emit("cset", "X1, ne")
        ctx.emit("and" if op is ast.BinaryOp.AND else "orr", "X0, X0, X1")


def lower_block(block, ctx: CodegenContext):
    saved_offset = ctx.stack_offset
    ctx.env.append({})
    for stmt in block.statements:
        lower_statement(stmt, ctx)
    ctx.env.pop()
    ctx.stack_offset = saved_offset


def lower_statement(stmt, ctx: CodegenContext):
    if isinstance(stmt, ast.Return):
        lower_expression(stmt.expr, ctx)
        ctx.blank()
        emit_exit(ctx)
    elif isinstance(stmt, ast.DefineVar):
        offset = ctx.push_offset(stmt.pos)
        ctx.set_offset(stmt.name, offset)
        lower_expression(stmt.init, ctx)
        ctx.emit("str", f"X0, [sp, #{offset}]")
    elif isinstance(stmt, ast.ExprStatement):
        lower_expression(stmt.expr, ctx)
    elif isinstance(stmt, ast.If):
        lower_expression(stmt.condition, ctx)
        label_end = fresh_local_label("if_end", ctx)
        label_else = fresh_local_label("if_else", ctx)
        ctx.emit("cmp", "x0, #0")
        ctx.emit("beq", label_else)
        lower_block(stmt.then_block, ctx)
        ctx.emit("b", label_end)
        ctx.emit_label(label_else)
        if stmt.else_block is not None:
            lower_block(stmt.else_block, ctx)
        ctx.emit_label(label_end)
    else:
        raise CodegenBug(f"not a statement: {stmt!r}")
    ctx.blank()


def always_returns(stmt) -> bool:
    if isinstance(stmt, ast.Return):
        return True
    if isinstance(stmt, ast.If) and stmt.else_block is not None:
        return not falls_through(stmt.then_block) and not falls_through(stmt.else_block)
    return False


def falls_through(block) -> bool:
    return not any(always_returns(s) for s in block.statements)


def generate(program: ast.Program, profile: TargetProfile = LINUX) -> str:
    """Return the assembly listing for `program` as text.

    A body that can run off its end gets a trailing exit sequence, so the
    process exits with whatever X0 last held (0 for an empty body).
    """
    ctx = CodegenContext(profile=profile)
    entry = profile.entry_symbol
    ctx.out += [f".global {entry}", profile.align_directive, "", f"{entry}:"]
    fn = program.main
    body = fn.body if fn is not None else ast.Block([])
    if not body.statements:
        ctx.emit("mov", "X0, #0")
    lower_block(body, ctx)
    if falls_through(body):
        ctx.blank()
        emit_exit(ctx)
    return "\n".join(ctx.out).rstrip("\n") + "\n"
