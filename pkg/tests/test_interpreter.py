from hypothesis import given, strategies as st

import progen
from subsetc.driver import front_end
from subsetc.interpreter import exit_status, interpret, wrap64


def run(src):
    return interpret(front_end(src).program)


def test_paper_program(paper_source):
    assert run(paper_source) == 9


def test_lognot():
    assert run("fun main() { return !7; }") == 0
    assert run("fun main() { return !0; }") == 1


def test_if_else():
    assert run("fun main() { var a = 9; if (a < 0) { return a; } else { return a-3; } }") == 6


def test_fall_off_end():
    assert run("") == 0
    assert run("fun main() { }") == 0
    assert run("fun main() { var a = 4; a = a * 3; }") == 12
    assert run("fun main() { var a = 0; if (a) { return 1; } }") == 0


def test_wraparound():
    big = "65535 * 65535 * 65535 * 65535 * 65535"
    assert run(f"fun main() {{ return {big}; }}") == wrap64(65535 ** 5)
    assert run("fun main() { return -5; }") == -5
    assert exit_status(-5) == 251


def test_logical_ops_evaluate_both_sides():
    assert run("fun main() { var a = 0; var b = (a = 1) || (a = 2); return a * 10 + b; }") == 21
    assert run("fun main() { var a = 5; var b = 0 && (a = 3); return a * 10 + b; }") == 30


def test_comparisons_are_signed():
    assert run("fun main() { return 0 - 1 < 0; }") == 1
    assert run("fun main() { return ~0 > 0; }") == 0


def test_block_scoping():
    src = "fun main() { var a = 1; if (a) { var b = 5; a = b; } else { var b = 7; a = b; } return a; }"
    assert run(src) == 5


_i64 = st.integers(-(2 ** 63), 2 ** 63 - 1)


@given(_i64)
def test_unary_involutions(v):
    # Build the value from literal pieces the language can express.
    src_v = f"(0 - {abs(v) // 65536} * 65536 - {abs(v) % 65536})" if v < 0 else \
        f"({v // 65536} * 65536 + {v % 65536})"
    assert run(f"fun main() {{ return {src_v}; }}") == v
    assert run(f"fun main() {{ return ~~{src_v}; }}") == v
    assert run(f"fun main() {{ return - -{src_v}; }}") == v


@given(_i64, _i64)
def test_wrap64_matches_twos_complement(a, b):
    assert wrap64(a + b) == ((a + b + 2 ** 63) % 2 ** 64) - 2 ** 63
    assert -(2 ** 63) <= wrap64(a * b) < 2 ** 63


def test_agrees_with_independent_evaluator():
    for seed in range(500):
        stmts = progen.generate(seed)
        src = progen.show_program(stmts)
        assert run(src) == progen.eval_program(stmts), src
        assert run(progen.show_program(stmts, full=True)) == progen.eval_program(stmts)


def test_pure():
    prog = front_end("fun main() { var a = 3; a = a * a; return a; }").program
    assert interpret(prog) == interpret(prog) == 9
