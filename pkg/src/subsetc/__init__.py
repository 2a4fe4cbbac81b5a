"""A staged compiler for a small C-like language targeting AArch64."""

from .codegen import DARWIN, LINUX, generate
from .diagnostics import CompileError, Diagnostic
from .driver import CompileOptions, compile_source, front_end, run_tests
from .interpreter import interpret
from .lexer import Token, TokenKind, render_token_dump, tokenize
from .parser import parse, render_ast
from .semantics import analyze
from .subsets import ALL, FeatureSet, Subset, resolve_features

__version__ = "0.1.0"

__all__ = [
    "ALL", "DARWIN", "LINUX", "CompileError", "CompileOptions", "Diagnostic",
    "FeatureSet", "Subset", "Token", "TokenKind", "analyze", "compile_source",
    "front_end", "generate", "interpret", "parse", "render_ast",
    "render_token_dump", "resolve_features", "run_tests", "tokenize",
]
