from symknot.analysis import BatchRow
from symknot.constructors import TwistSpec, expand_template, shipped_template
from symknot.laurent import LaurentPoly
from symknot.morse import cap, cross, cup
from symknot.plotting import batch_figure, morse_figure, polynomial_figure


def test_polynomial_figure(tmp_path):
    p = polynomial_figure({"V": LaurentPoly({-2: 1, 0: -1, 2: 1}), "D": LaurentPoly(1)}, tmp_path / "a" / "p.png")
    assert p.exists() and p.stat().st_size > 0


def test_batch_figure(tmp_path):
    rows = [BatchRow("a", det=25, det_partial_sq=25), BatchRow("b", status="skip")]
    assert batch_figure(rows, tmp_path / "b.png").exists()


def test_morse_figure_svg(tmp_path):
    ex = expand_template(shipped_template("clasp"), TwistSpec((1,), (2,)))
    p = morse_figure(ex.word, tmp_path / "m.svg", ex.tags, title=ex.label)
    text = p.read_text()
    assert text.lstrip().startswith("<?xml") and "<svg" in text


def test_morse_figure_untagged(tmp_path):
    word = [cap(0), cap(1), cross(0, 1), cross(0, -1), cup(1), cup(0)]
    assert morse_figure(word, tmp_path / "w.png").exists()
