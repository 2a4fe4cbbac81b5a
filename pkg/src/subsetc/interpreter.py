"""Tree-walking evaluator used as the reference for compiled programs.

Arithmetic wraps at 64 bits like the X registers, `&&`/`||` evaluate both
operands, and a body that runs off its end yields the last value computed
at statement level (what X0 would hold), or 0 for an empty body.
"""

from . import syntax as ast

_MASK = (1 << 64) - 1


def wrap64(value: int) -> int:
    value &= _MASK
    return value - (1 << 64) if value >> 63 else value


def exit_status(value: int) -> int:
    return value & 0xFF


class _Returned(Exception):
    def __init__(self, value):
        self.value = value


class EvalEnv:
    def __init__(self):
        self.scopes = [{}]

    def push(self):
        self.scopes.append({})

    def pop(self):
        self.scopes.pop()

    def define(self, name, value):
        self.scopes[-1][name] = value

    def _scope_of(self, name):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope
        raise RuntimeError(f"interpreter: unbound variable {name!r}")

    def get(self, name):
        return self._scope_of(name)[name]

    def set(self, name, value):
        self._scope_of(name)[name] = value


def evaluate(expr, env: EvalEnv) -> int:
    if isinstance(expr, ast.Immediate):
        return wrap64(expr.value)
    if isinstance(expr, ast.Variable):
        return env.get(expr.name)
    if isinstance(expr, ast.Assign):
        value = evaluate(expr.rhs, env)
        env.set(expr.name, value)
        return value
    if isinstance(expr, ast.Unary):
        v = evaluate(expr.operand, env)
        if expr.op is ast.UnaryOp.NEG:
            return wrap64(-v)
        if expr.op is ast.UnaryOp.BITNOT:
            return wrap64(~v)
        return int(v == 0)
    if isinstance(expr, ast.Binary):
        a = evaluate(expr.lhs, env)
        b = evaluate(expr.rhs, env)
        return _binary(expr.op, a, b)
    raise TypeError(f"not an expression: {expr!r}")


def _binary(op, a, b):
    Op = ast.BinaryOp
    if op is Op.ADD:
        return wrap64(a + b)
    if op is Op.SUB:
        return wrap64(a - b)
    if op is Op.MUL:
        return wrap64(a * b)
    if op is Op.AND:
        return int(a != 0 and b != 0)
    if op is Op.OR:
        return int(a != 0 or b != 0)
    if op is Op.EQ:
        return int(a == b)
    if op is Op.GT:
        return int(a > b)
    if op is Op.LT:
        return int(a < b)
    if op is Op.GE:
        return int(a >= b)
    if op is Op.LE:
        return int(a <= b)
    raise TypeError(f"unknown operator {op!r}")


class _Machine:
    def __init__(self):
        self.env = EvalEnv()
        self.last = 0

    def block(self, block):
        self.env.push()
        try:
            for stmt in block.statements:
                self.statement(stmt)
        finally:
            self.env.pop()

    def statement(self, stmt):
        if isinstance(stmt, ast.Return):
            raise _Returned(evaluate(stmt.expr, self.env))
        if isinstance(stmt, ast.DefineVar):
            # Bound before the initializer runs, mirroring the slot
            # assignment order in codegen.
            self.env.define(stmt.name, 0)
            self.last = evaluate(stmt.init, self.env)
            self.env.set(stmt.name, self.last)
        elif isinstance(stmt, ast.ExprStatement):
            self.last = evaluate(stmt.expr, self.env)
        elif isinstance(stmt, ast.If):
            self.last = evaluate(stmt.condition, self.env)
            if self.last != 0:
                self.block(stmt.then_block)
            elif stmt.else_block is not None:
                self.block(stmt.else_block)
        else:
            raise TypeError(f"not a statement: {stmt!r}")


def interpret(program: ast.Program) -> int:
    """Run `main` and return its signed 64-bit result."""
    fn = program.main
    if fn is None:
        return 0
    machine = _Machine()
    try:
        machine.block(fn.body)
    except _Returned as r:
        return r.value
    return machine.last
