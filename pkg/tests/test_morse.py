import pytest
from hypothesis import given, settings, strategies as st

from symknot import morse
from symknot.diagram import DiagramError
from symknot.invariants import jones
from symknot.morse import build, cap, cross, cup, point_image, reflect, widths


def trefoil_word(h=1):
    return [cap(0), cap(1), cross(0, h), cross(0, h), cross(0, h), cup(1), cup(0)]


def test_widths():
    assert widths(trefoil_word()) == [0, 2, 4, 4, 4, 4, 2, 0]
    with pytest.raises(DiagramError):
        widths([cup(0)])


def test_unknot_and_free_loops():
    assert build([cap(0), cup(0)]).diagram.free_loops == 1
    two = build([cap(0), cap(0), cup(0), cup(0)]).diagram
    assert two.n_components == 2 and len(two) == 0


def test_open_word_rejected():
    with pytest.raises(DiagramError, match="open strands"):
        build([cap(0)])


def test_trefoil_sign_convention():
    d = build(trefoil_word(1)).diagram
    assert d.is_knot and d.signs == [1, 1, 1]
    assert build(trefoil_word(-1)).diagram.signs == [-1, -1, -1]


def test_tags_follow_crossings():
    word = [cap(0), cap(1), cross(0, 1, "a"), cross(0, 1, "b"), cross(0, 1, "c"), cup(1), cup(0)]
    assert build(word).tags == ("a", "b", "c")


def test_reflect_gives_mirror():
    d = build(trefoil_word()).diagram
    r = build(reflect(trefoil_word())).diagram
    assert jones(r).jones == jones(d).jones.invert_variable()


def test_point_image_gives_mirror():
    d = build(trefoil_word()).diagram
    p = build(point_image(trefoil_word())).diagram
    assert jones(p).jones == jones(d).jones.invert_variable()


@st.composite
def closed_words(draw):
    ops, w = [], 0
    for _ in range(draw(st.integers(1, 10))):
        choices = ["cap"] + (["cross", "cross", "cup"] if w >= 2 else [])
        k = draw(st.sampled_from(choices))
        if k == "cap":
            ops.append(cap(draw(st.integers(0, w))))
            w += 2
        elif k == "cup":
            ops.append(cup(draw(st.integers(0, w - 2))))
            w -= 2
        else:
            ops.append(cross(draw(st.integers(0, w - 2)), draw(st.sampled_from((1, -1)))))
    while w:
        ops.append(cup(0))
        w -= 2
    return ops


@given(closed_words())
@settings(max_examples=80, deadline=None)
def test_words_build_valid_diagrams(word):
    d = build(word).diagram
    assert d.validate().valid


@given(closed_words())
@settings(max_examples=80, deadline=None)
def test_point_image_is_involution(word):
    assert point_image(point_image(word)) == word
    assert reflect(reflect(word)) == word


def test_retag():
    word = morse.retag(trefoil_word(), lambda t: "z")
    assert all(op.tag == "z" for op in word)


def test_bad_op():
    with pytest.raises(ValueError):
        morse.Op("twist", 0)
    with pytest.raises(ValueError):
        cross(0, 0)
