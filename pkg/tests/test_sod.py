import pytest
from hypothesis import given, strategies as st

from twistk3.errors import InvalidInput, InvalidState
from twistk3.sod import (ExceptionalList, Marker, PicClass, fibration_decomposition,
                         left_mutate_marker, mutation_report, residual_orthogonal,
                         serre_mutate_last_to_front, verify_mutation_identity)

classes = st.builds(PicClass, st.integers(-5, 5), st.integers(-5, 5))


def test_class_printing():
    assert str(PicClass(2, 1)) == "O(2H1+H2)"
    assert str(PicClass(-1, 0)) == "O(-H1)"
    assert str(PicClass()) == "O"


def test_serre_moves_last_to_front():
    coll = ExceptionalList([PicClass(0, 0), PicClass(1, 0), PicClass(3, 2)])
    out = serre_mutate_last_to_front(coll)
    assert out.items[0] == PicClass(1, 0)
    assert out.items[1:] == coll.items[:-1]


def test_serre_with_trivial_canonical():
    coll = ExceptionalList([PicClass()])
    assert serre_mutate_last_to_front(coll, PicClass()) == coll


@given(st.lists(classes, min_size=1, max_size=8), classes)
def test_serre_twist_then_untwist_rotates(items, k):
    coll = ExceptionalList(items)
    once = serre_mutate_last_to_front(coll, k)
    assert len(once) == len(coll)
    back = ExceptionalList(once.items[1:] + (once.items[0] + -k,))
    assert back == coll


def test_serre_rejects_marker_last():
    with pytest.raises(InvalidInput):
        serre_mutate_last_to_front(ExceptionalList([PicClass(), Marker("C")]))


def test_decompositions_have_seven_components():
    for i in (1, 2):
        coll = fibration_decomposition(i)
        assert len(coll) == 7 and isinstance(coll.items[0], Marker)
    assert fibration_decomposition(1).swapped().classes == fibration_decomposition(2).classes


def test_residuals_agree():
    report = mutation_report()
    expected = {PicClass(a, b) for a, b in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)]}
    assert report.residuals == [expected, expected]
    assert report.agree


def test_residual_edge_cases():
    assert residual_orthogonal(ExceptionalList([Marker("C")])) == frozenset()
    assert residual_orthogonal(ExceptionalList()) == frozenset()
    with pytest.raises(InvalidState):
        residual_orthogonal(ExceptionalList([PicClass(), Marker("C")]))
    with pytest.raises(InvalidState):
        left_mutate_marker(ExceptionalList([Marker("C"), PicClass()]))


def test_left_mutation_moves_marker_right():
    coll = ExceptionalList([PicClass(1, 0), Marker("C"), PicClass(0, 1)])
    out = left_mutate_marker(coll)
    assert out.items[1] == PicClass(1, 0) and isinstance(out.items[0], Marker)
    assert len(out) == len(coll)


def test_identity_and_its_failure_modes():
    assert verify_mutation_identity()
    assert verify_mutation_identity(swap=True)
    assert not verify_mutation_identity(perturb=(6, PicClass(3, 1)))
    with pytest.raises(InvalidInput):
        verify_mutation_identity(perturb=(0, PicClass()))
