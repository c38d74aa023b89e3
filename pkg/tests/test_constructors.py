import pytest

from symknot.analysis import has_spa_certificate, is_square_up_to_units
from symknot.constructors import (
    CROSSINGLESS_HALF,
    TREFOIL_HALF,
    BraidWord,
    HalfDiagram,
    QuarterTemplate,
    TwistSpec,
    braid_closure,
    expand_almost,
    expand_template,
    half_from_braid,
    parse_braid,
    parse_step,
    parse_switch,
    parse_template,
    partial_knot,
    rosette,
    shipped_template,
    shipped_templates,
    symmetric_union,
    twist_region,
)
from symknot.diagram import DiagramError
from symknot.invariants import alexander, determinant, jones
from symknot.laurent import LaurentPoly

t = LaurentPoly.monomial(1)

CLASP = """
name: clasp
quarter:
  axis_cap
  cap 1
  c1: cross 0 -
  c2: cross 0 -
  y 1
wiring:
  x1: 0 1
"""


# braids and rosettes

def test_parse_braid():
    w = parse_braid("3: 1 -2 1 -2")
    assert w == BraidWord(3, (1, -2, 1, -2))
    assert parse_braid("braid:2: 1,1,1").letters == (1, 1, 1)
    assert str(w) == "3: 1 -2 1 -2"
    with pytest.raises(ValueError):
        parse_braid("1 -2")
    with pytest.raises(ValueError):
        parse_braid("2: 1 2")


def test_braid_permutation():
    assert BraidWord(3, (1, -2)).cycle_count() == 1
    assert BraidWord(3, (1, -2) * 3).cycle_count() == 3
    assert BraidWord(2, (1, 1)).cycle_count() == 2


def test_braid_closure_crossings_equal_letters():
    w = parse_braid("3: 1 -2 1 -2 1 -2 1 -2 1 -2")
    assert len(braid_closure(w)) == 10


@pytest.mark.parametrize("n, det", [(2, 5), (4, 45), (5, 121), (7, 841), (8, 2205)])
def test_rosettes(n, det):
    d = rosette(n)
    assert len(d) == 2 * n and d.is_knot
    assert determinant(d) == det
    assert jones(d).jones.is_palindromic()


def test_rosette_errors():
    with pytest.raises(ValueError):
        rosette(1)
    with pytest.raises(DiagramError, match="multi-component rosette"):
        rosette(6)


def test_twist_region():
    assert [op.sign for op in twist_region(-3)] == [-1, -1, -1]
    assert len(twist_region(0)) == 0


# half diagrams and symmetric unions

def test_parse_step():
    assert str(parse_step("c1: cross 2 -")) == "c1: cross 2 -"
    assert parse_step("cap 3").d == 3
    assert parse_step("axis_cap").kind == "axis_cap"
    with pytest.raises(ValueError):
        parse_step("loop 3")


def test_half_validation():
    with pytest.raises(DiagramError):
        HalfDiagram.parse("axis_cap\ny 1")
    with pytest.raises(DiagramError):
        HalfDiagram.parse("axis_cap\ny 1\ny 1\naxis_cup")


def test_crossingless_half_gives_unknots():
    for n in (-2, 0, 3):
        assert determinant(symmetric_union(CROSSINGLESS_HALF, [n])) == 1


def test_trefoil_half():
    assert determinant(partial_knot(TREFOIL_HALF)) == 3
    k0 = symmetric_union(TREFOIL_HALF, [0])
    assert alexander(k0).delta == (t ** -1 - 1 + t) ** 2
    k1 = symmetric_union(TREFOIL_HALF, [1])
    # frozen from the Alexander matrix oracle: a symmetric union with odd twist
    assert alexander(k1).delta == -2 * t ** -1 + 5 - 2 * t
    assert determinant(k1) == 9


@pytest.mark.parametrize("n", [-4, -2, 2, 4])
def test_even_twists_square_partial(n):
    k = symmetric_union(TREFOIL_HALF, [n])
    dj = alexander(partial_knot(TREFOIL_HALF)).delta
    assert alexander(k).delta == dj * dj


def test_half_from_braid_det_law():
    h = half_from_braid("3: 1 -2 1 -2")
    dj = determinant(partial_knot(h))
    for n in (-1, 1, 3):
        assert determinant(symmetric_union(h, [n])) == dj * dj


def test_symmetric_union_slot_count():
    with pytest.raises(ValueError):
        symmetric_union(TREFOIL_HALF, [1, 2])


# templates

def test_parse_template_and_round_trip():
    q = parse_template(CLASP)
    assert (q.n_x, q.n_y, q.quarter_size) == (1, 1, 2)
    assert parse_template(q.to_text()) == q


@pytest.mark.parametrize("text, msg", [
    ("name: a\nquarter:\n  cap 0\n", "axis_cap"),
    ("name: a\nquarter:\n  axis_cap\n  axis_cap\n", "axis_cap"),
    ("name: a\nquarter:\n  axis_cap\n  cap 0\n  c1: cross 1 +\nwiring:\n  x1: 2 3\n", "x slot"),
    ("name: a\nquarter:\n  axis_cap\n  cap 0\n  cap 0\nwiring:\n  x1: 0 1\n  x2: 1 2\n", "disjoint"),
    ("name: a\nquarter:\n  axis_cap\n  cap 0\n  c1: cross 1 +\n  c1: cross 1 +\n", "distinct"),
    ("name: a\nquarter:\n  axis_cap\n  y 2\n", "numbered"),
])
def test_template_validation(text, msg):
    with pytest.raises(DiagramError, match=msg):
        parse_template(text)


@pytest.mark.parametrize("text", [
    "quarter:\n  axis_cap\n",
    "name: a\nquarter:\n  axis_cap\nwiring:\n  x1: 0 2\n",
    "name: a\nquarter:\n  axis_cap\nwiring:\n  x1 0 1\n",
    "name: a\nstray line\n",
    "name: a\ny_slots: 2\nquarter:\n  axis_cap\n  y 1\n",
])
def test_template_format_errors(text):
    with pytest.raises(ValueError):
        parse_template(text)


def test_shipped_templates():
    names = [q.name for q in shipped_templates()]
    assert names == ["clasp", "clasp_split", "twist_kink"]
    with pytest.raises(KeyError):
        shipped_template("t99")


def test_twist_spec():
    s = TwistSpec.parse("0, 0, 3", "1", ["I,III:c2"])
    assert s == TwistSpec((0, 0, 3), (1,), (("I,III", "c2"),))
    assert str(s) == "(0, 0, 3 | 1) [I,III:c2]"
    with pytest.raises(ValueError):
        TwistSpec.parse("a", "")
    with pytest.raises(ValueError):
        parse_switch("I,II:c1")
    with pytest.raises(ValueError):
        parse_switch("I,III")


def test_expansion_structure():
    q = parse_template(CLASP)
    ex = expand_template(q, TwistSpec((1,), (2,)))
    d = ex.diagram
    assert len(d) == q.crossing_count(ex.spec) == 14
    assert all(ex.rho[ex.rho[c]] == c and ex.rho[c] != c for c in range(len(d)))
    assert has_spa_certificate(d, ex.rho)
    assert ex.label == "clasp(1 | 2)"
    quads = {tg[0] for tg in ex.tags}
    assert quads == {"I", "II", "III", "IV", "y+", "y-", "x-", "x+"}


def test_lower_axis_copy_carries_negated_twist():
    ex = expand_template(parse_template(CLASP), TwistSpec((1,), (3,)))
    signs = ex.diagram.signs
    up = [signs[i] for i, tg in enumerate(ex.tags) if tg[0] == "y+"]
    down = [signs[i] for i, tg in enumerate(ex.tags) if tg[0] == "y-"]
    assert len(up) == len(down) == 3
    assert len(set(up)) == 1 and set(down) == {-up[0]}


def test_expansion_argument_errors():
    q = parse_template(CLASP)
    with pytest.raises(ValueError, match="y slots"):
        expand_template(q, TwistSpec((1,), ()))
    with pytest.raises(ValueError, match="switches"):
        expand_template(q, TwistSpec((1,), (1,), (("I,III", "c1"),)))
    with pytest.raises(ValueError, match="not in template"):
        expand_almost(q, TwistSpec((1,), (1,), (("I,III", "zz"),)))
    with pytest.raises(ValueError, match="exactly one"):
        expand_almost(q, TwistSpec((1,), (1,)))


def test_one_crossing_quarter_example():
    # 14 crossings, det 25 = 5^2 (frozen from the invariants module)
    q = shipped_template("twist_kink")
    assert q.quarter_size == 1
    ex = expand_template(q, TwistSpec((2,), (3,)))
    assert len(ex.diagram) == 14
    assert determinant(ex.diagram) == 25
    assert determinant(ex.partial_knot()) == 5
    assert is_square_up_to_units(alexander(ex.diagram).delta)


def test_almost_doubly_symmetric_breaks_det_law():
    ex = expand_almost(shipped_template("clasp"), TwistSpec((-3,), (0,), (("I,III", "c1"),)))
    d = ex.diagram
    assert len(d) == 14
    assert has_spa_certificate(d, ex.rho)
    assert is_square_up_to_units(alexander(d).delta)
    assert determinant(d) == 25
    assert determinant(ex.partial_knot()) == 11


def test_switch_pairs_are_symmetric():
    q = parse_template(CLASP)
    a = expand_almost(q, TwistSpec((1,), (1,), (("I,III", "c1"),)))
    b = expand_almost(q, TwistSpec((1,), (1,), (("III,I", "c1"),)))
    assert a.diagram.pd == b.diagram.pd
    base = expand_template(q, TwistSpec((1,), (1,)))
    flipped = [i for i, (x, y) in enumerate(zip(a.diagram.signs, base.diagram.signs)) if x != y]
    assert len(flipped) == 2 and a.rho[flipped[0]] == flipped[1]


def test_x_twist_zero_turns_back():
    q = shipped_template("twist_kink")
    ex = expand_template(q, TwistSpec((0,), (1,)))
    assert not any(tg[0] in ("x-", "x+") for tg in ex.tags)
