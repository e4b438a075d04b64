"""Tests for chain descriptor parsing and process expansion."""

import pytest

from spancert.descriptors import ChainDescriptor, ChainSyntaxError, process, step_names


def test_parse_basic_forms():
    assert str(ChainDescriptor.parse("(3)")) == "(3)"
    assert str(ChainDescriptor.parse("(3.2.2)")) == "(3.2.2)"
    assert str(ChainDescriptor.parse("(3,2,2)")) == "(3.2.2)"
    assert str(ChainDescriptor.parse("(2.2)[2.3]")) == "(2.2)[2.3]"


def test_pointwise_free_chain_collapses():
    assert ChainDescriptor.parse("(1,1)") == ChainDescriptor.parse("(2)")
    assert ChainDescriptor.parse("(1,1,1)") == ChainDescriptor.parse("(3)")


def test_lengths():
    assert ChainDescriptor.parse("(1)").length == 1
    assert ChainDescriptor.parse("(3.2)").length == 4
    assert ChainDescriptor.parse("(2.3.2.2)").length == 6
    assert ChainDescriptor.parse("(2.2)[2.3]").length == 6


def test_rejects_malformed():
    for bad in ["", "(1.2)", "(0)", "(2.1)", "[2]", "(2)(3)", "(2.2"]:
        with pytest.raises(ChainSyntaxError):
            ChainDescriptor.parse(bad)


def test_process_names_follow_renaming():
    assert step_names(ChainDescriptor.parse("(3.2)")) == ["(1)", "(2)", "(3.1)", "(3.2)"]
    assert step_names(ChainDescriptor.parse("(3.2.2)")) == [
        "(1)", "(2)", "(3.1)", "(3.2.1)", "(3.2.2)",
    ]


def test_process_hosts_and_anchors():
    steps = process(ChainDescriptor.parse("(3.2.2)"))
    # every center past the first sits on the newest curve
    assert all(s.on == s.index - 1 for s in steps[1:])
    # the forced phase steps anchor on the previous phase's next-to-last curve
    assert steps[3].meeting == 1  # (3.2.1) meets (2)
    assert steps[4].meeting == 2  # (3.2.2) meets (3.1)


def test_bracket_group_anchors_on_pre_group_curve():
    steps = process(ChainDescriptor.parse("(2.2)[2.3]"))
    assert [s.name for s in steps[3:]] == ["[2.1]", "[2.2]", "[2.3]"]
    assert steps[3].meeting is None  # restart at a free point
    assert steps[4].meeting == 2 and steps[5].meeting == 2
