"""Recursive-descent parser and AST pretty-printer."""

from typing import List, Optional

from . import syntax as ast
from .diagnostics import FEATURE_DISABLED, PARSE_ERROR, CompileError, Diagnostic
from .lexer import Token, TokenKind
from .subsets import ALL, ConstructKind, FeatureSet, required_feature

# Binding power of each binary operator; higher binds tighter. All are
# left-associative. Assignment sits below all of them and is handled apart.
BINARY_PRECEDENCE = {
    TokenKind.OR_OR: 1,
    TokenKind.AND_AND: 2,
    TokenKind.EQ_EQ: 3,
    TokenKind.LT: 4,
    TokenKind.GT: 4,
    TokenKind.LE: 4,
    TokenKind.GE: 4,
    TokenKind.PLUS: 5,
    TokenKind.MINUS: 5,
    TokenKind.STAR: 6,
}

_BINARY_OPS = {
    TokenKind.OR_OR: ast.BinaryOp.OR,
    TokenKind.AND_AND: ast.BinaryOp.AND,
    TokenKind.EQ_EQ: ast.BinaryOp.EQ,
    TokenKind.LT: ast.BinaryOp.LT,
    TokenKind.GT: ast.BinaryOp.GT,
    TokenKind.LE: ast.BinaryOp.LE,
    TokenKind.GE: ast.BinaryOp.GE,
    TokenKind.PLUS: ast.BinaryOp.ADD,
    TokenKind.MINUS: ast.BinaryOp.SUB,
    TokenKind.STAR: ast.BinaryOp.MUL,
}

_UNARY_OPS = {
    TokenKind.MINUS: ast.UnaryOp.NEG,
    TokenKind.TILDE: ast.UnaryOp.BITNOT,
    TokenKind.BANG: ast.UnaryOp.LOGNOT,
}

BINARY_CONSTRUCT = {op: ConstructKind["BINARY_" + op.name] for op in ast.BinaryOp}
UNARY_CONSTRUCT = {op: ConstructKind["UNARY_" + op.name] for op in ast.UnaryOp}

_OPERAND_START = (TokenKind.NUMBER, TokenKind.IDENTIFIER, TokenKind.LPAREN)


def parse(tokens: List[Token], features: FeatureSet = ALL) -> ast.Program:
    """Build the AST for `tokens`; the first error raises CompileError."""
    return Parser(tokens, features).parse_program()


class Parser:
    def __init__(self, tokens, features=ALL):
        self.tokens = list(tokens)
        self.features = features
        self.index = 0

    # -- token helpers --------------------------------------------------

    def peek(self, offset=0) -> Optional[Token]:
        i = self.index + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, kind, offset=0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind is kind

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def eof_position(self):
        if not self.tokens:
            return (1, 1)
        last = self.tokens[-1]
        return (last.line, last.column + len(last.lexeme))

    def fail(self, message, tok=None, code=PARSE_ERROR):
        if tok is None:
            tok = self.peek()
        line, col = (tok.line, tok.column) if tok is not None else self.eof_position()
        raise CompileError([Diagnostic(code, message, line, col)])

    def expect(self, kind, what) -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected {what} but reached end of input")
        if tok.kind is not kind:
            self.fail(f"expected {what} but found '{tok.lexeme}'")
        return self.advance()

    def require(self, construct: ConstructKind, tok: Token):
        subset = required_feature(construct)
        if subset not in self.features:
            self.fail(
                f"{construct.value} requires {subset.flag} ({subset.title}), "
                f"which is disabled",
                tok, code=FEATURE_DISABLED)

    # -- program structure ----------------------------------------------

    def parse_program(self) -> ast.Program:
        if self.peek() is None:
            return ast.Program([])
        function = self.parse_function()
        if self.peek() is not None:
            self.fail(f"unexpected '{self.peek().lexeme}' after the function body; "
                      f"a program holds a single function")
        return ast.Program([function])

    def parse_function(self) -> ast.Function:
        fun = self.expect(TokenKind.FUN, "'fun'")
        name = self.expect(TokenKind.IDENTIFIER, "function name")
        if name.lexeme != "main":
            self.fail(f"function must be named 'main', not '{name.lexeme}'", name)
        self.expect(TokenKind.LPAREN, "'('")
        self.expect(TokenKind.RPAREN, "')'")
        body = self.parse_braced_block()
        return ast.Function(name.lexeme, body, pos=(fun.line, fun.column))

    def parse_braced_block(self) -> ast.Block:
        self.expect(TokenKind.LBRACE, "'{'")
        statements = []
        while not self.at(TokenKind.RBRACE):
            if self.peek() is None:
                self.fail("expected '}' but reached end of input")
            statements.append(self.parse_statement())
        self.advance()
        return ast.Block(statements)

    def parse_statement(self):
        tok = self.peek()
        if tok.kind is TokenKind.RETURN:
            self.require(ConstructKind.RETURN_STATEMENT, tok)
            self.advance()
            expr = self.parse_expression()
            self.expect_semicolon()
            return ast.Return(expr, pos=(tok.line, tok.column))
        if tok.kind is TokenKind.VAR:
            self.require(ConstructKind.DEFINE_VAR, tok)
            self.advance()
            name = self.expect(TokenKind.IDENTIFIER, "variable name")
            self.expect(TokenKind.ASSIGN, "'='")
            init = self.parse_expression()
            self.expect_semicolon()
            return ast.DefineVar(name.lexeme, init, pos=(name.line, name.column))
        if tok.kind is TokenKind.IF:
            self.require(ConstructKind.IF_STATEMENT, tok)
            self.advance()
            self.expect(TokenKind.LPAREN, "'('")
            condition = self.parse_expression()
            self.expect(TokenKind.RPAREN, "')'")
            then_block = self.parse_braced_block()
            else_block = None
            if self.at(TokenKind.ELSE):
                self.advance()
                else_block = self.parse_braced_block()
            return ast.If(condition, then_block, else_block, pos=(tok.line, tok.column))
        if tok.kind is TokenKind.ELSE:
            self.fail("'else' without a matching 'if'")
        self.require(ConstructKind.EXPRESSION_STATEMENT, tok)
        expr = self.parse_expression()
        self.expect_semicolon()
        return ast.ExprStatement(expr, pos=(tok.line, tok.column))

    def expect_semicolon(self):
        tok = self.peek()
        if tok is not None and tok.kind in _OPERAND_START:
            self.fail(f"missing operator before '{tok.lexeme}'")
        return self.expect(TokenKind.SEMICOLON, "';'")

    # -- expressions ----------------------------------------------------

    def parse_expression(self):
        if self.at(TokenKind.IDENTIFIER) and self.at(TokenKind.ASSIGN, 1):
            name = self.advance()
            self.require(ConstructKind.ASSIGN, name)
            self.advance()
            rhs = self.parse_expression()
            return ast.Assign(name.lexeme, rhs, pos=(name.line, name.column))
        return self.parse_binary(1)

    def parse_binary(self, min_prec):
        lhs = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in BINARY_PRECEDENCE:
                return lhs
            prec = BINARY_PRECEDENCE[tok.kind]
            if prec < min_prec:
                return lhs
            op = _BINARY_OPS[tok.kind]
            self.require(BINARY_CONSTRUCT[op], tok)
            self.advance()
            rhs = self.parse_binary(prec + 1)
            lhs = ast.Binary(op, lhs, rhs, pos=(tok.line, tok.column))

    def parse_unary(self):
        tok = self.peek()
        if tok is None:
            self.fail("expected an expression but reached end of input")
        if tok.kind in _UNARY_OPS:
            op = _UNARY_OPS[tok.kind]
            self.require(UNARY_CONSTRUCT[op], tok)
            self.advance()
            operand = self.parse_unary()
            return ast.Unary(op, operand, pos=(tok.line, tok.column))
        return self.parse_primary()

    def parse_primary(self):
        tok = self.peek()
        if tok.kind is TokenKind.NUMBER:
            self.require(ConstructKind.IMMEDIATE, tok)
            self.advance()
            return ast.Immediate(tok.value, pos=(tok.line, tok.column))
        if tok.kind is TokenKind.IDENTIFIER:
            self.require(ConstructKind.VARIABLE_REF, tok)
            self.advance()
            return ast.Variable(tok.lexeme, pos=(tok.line, tok.column))
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.parse_expression()
            self.expect(TokenKind.RPAREN, "')'")
            return inner
        if tok.kind in BINARY_PRECEDENCE:
            self.fail(f"unknown operator '{tok.lexeme}' at the start of an expression")
        self.fail(f"expected an expression but found '{tok.lexeme}'")


# -- AST dump -------------------------------------------------------------

def render_ast(program: ast.Program) -> str:
    out = ["---AST---"]

    def emit(depth, text):
        out.append("  " * depth + text)

    def expression(e, depth):
        if isinstance(e, ast.Immediate):
            emit(depth, f"IMMEDIATE {e.value}")
        elif isinstance(e, ast.Variable):
            emit(depth, f"VARIABLE '{e.name}'")
        elif isinstance(e, ast.Assign):
            emit(depth, f"ASSIGNMENT '{e.name}'")
            expression(e.rhs, depth + 1)
        elif isinstance(e, ast.Unary):
            emit(depth, f"UNARY '{e.op.value}'")
            expression(e.operand, depth + 1)
        elif isinstance(e, ast.Binary):
            emit(depth, f"BINARY '{e.op.value}'")
            expression(e.lhs, depth + 1)
            expression(e.rhs, depth + 1)
        else:
            raise TypeError(f"not an expression: {e!r}")

    def block(b, depth):
        emit(depth, "BLOCK")
        for s in b.statements:
            statement(s, depth + 1)

    def statement(s, depth):
        if isinstance(s, ast.Return):
            emit(depth, "RETURN")
            expression(s.expr, depth + 1)
        elif isinstance(s, ast.DefineVar):
            emit(depth, f"DEFINE VARIABLE '{s.name}'")
            emit(depth + 1, f"'{s.name}' INITIAL VALUE")
            expression(s.init, depth + 2)
        elif isinstance(s, ast.ExprStatement):
            expression(s.expr, depth)
        elif isinstance(s, ast.If):
            emit(depth, "IF")
            emit(depth + 1, "CONDITION")
            expression(s.condition, depth + 2)
            emit(depth + 1, "THEN")
            block(s.then_block, depth + 2)
            if s.else_block is not None:
                emit(depth + 1, "ELSE")
                block(s.else_block, depth + 2)
        else:
            raise TypeError(f"not a statement: {s!r}")

    emit(1, "TOP LEVEL")
    for fn in program.functions:
        emit(2, f"FUNCTION '{fn.name}'")
        block(fn.body, 3)
    return "\n".join(out)
