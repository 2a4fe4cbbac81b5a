"""AST node classes.

Positions are excluded from equality so that structurally identical trees
compare equal regardless of where they came from.
"""

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Union


class UnaryOp(enum.Enum):
    NEG = "-"
    BITNOT = "~"
    LOGNOT = "!"


class BinaryOp(enum.Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    AND = "&&"
    OR = "||"
    EQ = "=="
    GT = ">"
    LT = "<"
    GE = ">="
    LE = "<="


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Immediate:
    value: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class Variable:
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class Assign:
    name: str
    rhs: "Expression"
    pos: tuple = _pos()


@dataclass(frozen=True)
class Unary:
    op: UnaryOp
    operand: "Expression"
    pos: tuple = _pos()


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    lhs: "Expression"
    rhs: "Expression"
    pos: tuple = _pos()


Expression = Union[Immediate, Variable, Assign, Unary, Binary]


@dataclass(frozen=True)
class Block:
    statements: List["Statement"] = field(default_factory=list)


@dataclass(frozen=True)
class Return:
    expr: Expression
    pos: tuple = _pos()


@dataclass(frozen=True)
class DefineVar:
    name: str
    init: Expression
    pos: tuple = _pos()


@dataclass(frozen=True)
class ExprStatement:
    expr: Expression
    pos: tuple = _pos()


@dataclass(frozen=True)
class If:
    condition: Expression
    then_block: Block
    else_block: Optional[Block] = None
    pos: tuple = _pos()


Statement = Union[Return, DefineVar, ExprStatement, If]


@dataclass(frozen=True)
class Function:
    name: str
    body: Block
    pos: tuple = _pos()


@dataclass(frozen=True)
class Program:
    functions: List[Function] = field(default_factory=list)

    @property
    def main(self) -> Optional[Function]:
        return self.functions[0] if self.functions else None
