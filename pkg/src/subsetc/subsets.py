"""The six cumulative language subsets and the construct -> subset table."""

import enum
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional

from .diagnostics import UNKNOWN_FEATURE, CompileError, Diagnostic


class Subset(enum.IntEnum):
    S1_RETURN = 1
    S2_UNARY = 2
    S3_BINARY_ARITH = 3
    S4_BINARY_LOGIC = 4
    S5_VARIABLES = 5
    S6_CONDITIONALS = 6

    @property
    def flag(self) -> str:
        return f"stage{int(self)}"

    @property
    def title(self) -> str:
        return _TITLES[self]


_TITLES = {
    Subset.S1_RETURN: "return statements",
    Subset.S2_UNARY: "unary operators",
    Subset.S3_BINARY_ARITH: "primary binary operators",
    Subset.S4_BINARY_LOGIC: "additional binary operators",
    Subset.S5_VARIABLES: "variables",
    Subset.S6_CONDITIONALS: "conditional statements",
}


@dataclass(frozen=True)
class FeatureSet:
    """Enabled subsets, stored as the highest enabled stage.

    Storing a level rather than a set makes prefix closure hold by
    construction: stage k always implies stages 1..k-1.
    """

    level: int = 6

    def __post_init__(self):
        if not 0 <= self.level <= 6:
            raise ValueError(f"feature level out of range: {self.level}")

    @property
    def enabled(self) -> FrozenSet[Subset]:
        return frozenset(s for s in Subset if s <= self.level)

    def __contains__(self, subset: Subset) -> bool:
        return subset <= self.level

    @classmethod
    def stage(cls, k: int) -> "FeatureSet":
        return cls(k)

    def __str__(self):
        return "none" if self.level == 0 else f"stage{self.level}"


ALL = FeatureSet(6)
BASE = FeatureSet(0)


def resolve_features(flags: Optional[Iterable[str]]) -> FeatureSet:
    """Turn CLI feature flags into a FeatureSet.

    Several flags combine by union, which under prefix closure is the
    highest stage named.
    """
    flags = [f for f in (flags or []) if f != ""]
    if not flags:
        return ALL
    level = 0
    for flag in flags:
        text = flag.strip().lower()
        if text == "all":
            k = 6
        elif text == "none":
            k = 0
        elif text.startswith("stage") and text[5:].isdigit() and 1 <= int(text[5:]) <= 6:
            k = int(text[5:])
        else:
            raise CompileError([Diagnostic(UNKNOWN_FEATURE, f"unknown feature {flag}")])
        level = max(level, k)
    return FeatureSet(level)


class ConstructKind(enum.Enum):
    RETURN_STATEMENT = "return statement"
    IMMEDIATE = "integer literal"
    EXPRESSION_STATEMENT = "expression statement"
    UNARY_NEG = "unary '-'"
    UNARY_BITNOT = "unary '~'"
    UNARY_LOGNOT = "unary '!'"
    BINARY_ADD = "binary '+'"
    BINARY_SUB = "binary '-'"
    BINARY_MUL = "binary '*'"
    BINARY_AND = "binary '&&'"
    BINARY_OR = "binary '||'"
    BINARY_EQ = "binary '=='"
    BINARY_GT = "binary '>'"
    BINARY_LT = "binary '<'"
    BINARY_GE = "binary '>='"
    BINARY_LE = "binary '<='"
    DEFINE_VAR = "variable declaration"
    ASSIGN = "assignment"
    VARIABLE_REF = "variable reference"
    IF_STATEMENT = "if statement"


_REQUIRED = {
    ConstructKind.RETURN_STATEMENT: Subset.S1_RETURN,
    ConstructKind.IMMEDIATE: Subset.S1_RETURN,
    ConstructKind.EXPRESSION_STATEMENT: Subset.S1_RETURN,
    ConstructKind.UNARY_NEG: Subset.S2_UNARY,
    ConstructKind.UNARY_BITNOT: Subset.S2_UNARY,
    ConstructKind.UNARY_LOGNOT: Subset.S2_UNARY,
    ConstructKind.BINARY_ADD: Subset.S3_BINARY_ARITH,
    ConstructKind.BINARY_SUB: Subset.S3_BINARY_ARITH,
    ConstructKind.BINARY_MUL: Subset.S3_BINARY_ARITH,
    ConstructKind.BINARY_AND: Subset.S4_BINARY_LOGIC,
    ConstructKind.BINARY_OR: Subset.S4_BINARY_LOGIC,
    ConstructKind.BINARY_EQ: Subset.S4_BINARY_LOGIC,
    ConstructKind.BINARY_GT: Subset.S4_BINARY_LOGIC,
    ConstructKind.BINARY_LT: Subset.S4_BINARY_LOGIC,
    ConstructKind.BINARY_GE: Subset.S4_BINARY_LOGIC,
    ConstructKind.BINARY_LE: Subset.S4_BINARY_LOGIC,
    ConstructKind.DEFINE_VAR: Subset.S5_VARIABLES,
    ConstructKind.ASSIGN: Subset.S5_VARIABLES,
    ConstructKind.VARIABLE_REF: Subset.S5_VARIABLES,
    ConstructKind.IF_STATEMENT: Subset.S6_CONDITIONALS,
}


def required_feature(construct: ConstructKind) -> Subset:
    return _REQUIRED[construct]
