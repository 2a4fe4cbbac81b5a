"""Declaration checks run between parsing and code generation."""

from typing import Dict, List, Optional, Tuple

from . import syntax as ast
from .diagnostics import REDECLARED_VAR, UNDECLARED_VAR, Diagnostic


class ScopeTable:
    """Stack of scopes mapping a name to its declaration site (line, col).

    Shadowing is not allowed, so a name is declared in at most one live
    scope at a time.
    """

    def __init__(self):
        self.scopes: List[Dict[str, Tuple[int, int]]] = [{}]

    def push(self):
        self.scopes.append({})

    def pop(self):
        self.scopes.pop()

    def lookup(self, name) -> Optional[Tuple[int, int]]:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def declare(self, name, site):
        self.scopes[-1][name] = site


def analyze(program: ast.Program, features=None) -> List[Diagnostic]:
    """Return every declaration error in `program` (empty when clean).

    Each undeclared name is reported once, at its first use.
    """
    diagnostics = []
    reported = set()
    scopes = ScopeTable()

    def use(name, pos):
        if scopes.lookup(name) is None and name not in reported:
            reported.add(name)
            diagnostics.append(Diagnostic(
                UNDECLARED_VAR, f"use of undeclared variable '{name}'", *pos))

    def expression(e):
        if isinstance(e, ast.Variable):
            use(e.name, e.pos)
        elif isinstance(e, ast.Assign):
            expression(e.rhs)
            use(e.name, e.pos)
        elif isinstance(e, ast.Unary):
            expression(e.operand)
        elif isinstance(e, ast.Binary):
            expression(e.lhs)
            expression(e.rhs)

    def block(b):
        scopes.push()
        for s in b.statements:
            statement(s)
        scopes.pop()

    def statement(s):
        if isinstance(s, ast.DefineVar):
            # The initializer is checked before the name comes into scope.
            expression(s.init)
            previous = scopes.lookup(s.name)
            if previous is not None:
                diagnostics.append(Diagnostic(
                    REDECLARED_VAR,
                    f"variable '{s.name}' is already declared at "
                    f"{previous[0]}:{previous[1]}", *s.pos))
            else:
                scopes.declare(s.name, s.pos)
        elif isinstance(s, (ast.Return, ast.ExprStatement)):
            expression(s.expr)
        elif isinstance(s, ast.If):
            expression(s.condition)
            block(s.then_block)
            if s.else_block is not None:
                block(s.else_block)

    for fn in program.functions:
        block(fn.body)
    return diagnostics
