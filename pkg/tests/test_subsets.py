import pytest
from hypothesis import given, strategies as st

from subsetc.diagnostics import CompileError
from subsetc.subsets import (ALL, BASE, ConstructKind, FeatureSet, Subset,
                             required_feature, resolve_features)


def test_stage3_is_prefix_closed():
    assert resolve_features(["stage3"]).enabled == {
        Subset.S1_RETURN, Subset.S2_UNARY, Subset.S3_BINARY_ARITH}


def test_all_and_default():
    assert resolve_features(["all"]).enabled == set(Subset)
    assert resolve_features(None) == ALL
    assert resolve_features([]) == ALL


def test_none_is_base_only():
    assert resolve_features(["none"]).enabled == set()
    assert resolve_features(["none"]) == BASE


def test_unknown_flag():
    with pytest.raises(CompileError) as exc:
        resolve_features(["stage9"])
    assert exc.value.diagnostics[0].message == "unknown feature stage9"


@pytest.mark.parametrize("bad", ["stage0", "stage7", "everything", "stage", "s3"])
def test_rejected_flags(bad):
    with pytest.raises(CompileError):
        resolve_features([bad])


def test_multiple_flags_union():
    assert resolve_features(["stage2", "stage4", "none"]) == FeatureSet(4)


@given(st.integers(0, 6))
def test_prefix_closure_invariant(level):
    fs = FeatureSet(level)
    for s in Subset:
        if s in fs:
            assert all(earlier in fs for earlier in Subset if earlier < s)


def test_required_feature_examples():
    assert required_feature(ConstructKind.RETURN_STATEMENT) is Subset.S1_RETURN
    assert required_feature(ConstructKind.IF_STATEMENT) is Subset.S6_CONDITIONALS
    assert required_feature(ConstructKind.BINARY_MUL) is Subset.S3_BINARY_ARITH


def test_required_feature_is_total():
    expected = {
        Subset.S1_RETURN: {"RETURN_STATEMENT", "IMMEDIATE", "EXPRESSION_STATEMENT"},
        Subset.S2_UNARY: {"UNARY_NEG", "UNARY_BITNOT", "UNARY_LOGNOT"},
        Subset.S3_BINARY_ARITH: {"BINARY_ADD", "BINARY_SUB", "BINARY_MUL"},
        Subset.S4_BINARY_LOGIC: {"BINARY_AND", "BINARY_OR", "BINARY_EQ", "BINARY_GT",
                                 "BINARY_LT", "BINARY_GE", "BINARY_LE"},
        Subset.S5_VARIABLES: {"DEFINE_VAR", "ASSIGN", "VARIABLE_REF"},
        Subset.S6_CONDITIONALS: {"IF_STATEMENT"},
    }
    for kind in ConstructKind:
        owners = [s for s, names in expected.items() if kind.name in names]
        assert owners == [required_feature(kind)]
