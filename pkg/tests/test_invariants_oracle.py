"""Invariants against KnotInfo data for every prime knot through 10 crossings."""

from symknot.codes import from_dt
from symknot.diagram import Diagram, mirror
from symknot.invariants import alexander, determinant, determinant_goeritz, jones, normalize_alexander


def _pd(row):
    return Diagram.from_pd([tuple(x) for x in row["pd"]]).check()


def test_reference_size(knotinfo):
    assert len(knotinfo) == 249


def test_jones_exact_from_pd(knotinfo):
    bad = [r["name"] for r in knotinfo if jones(_pd(r)).jones_t != r["jones_poly"]]
    assert bad == []


def test_jones_of_mirror_inverts_variable(knotinfo):
    for r in knotinfo[:40]:
        assert jones(mirror(_pd(r))).jones_t == r["jones_poly"].invert_variable()


def test_alexander_normalized(knotinfo):
    bad = [r["name"] for r in knotinfo if alexander(_pd(r)).delta != normalize_alexander(r["alexander_poly"])]
    assert bad == []


def test_determinant_both_routes(knotinfo):
    for r in knotinfo:
        d = _pd(r)
        assert determinant(d) == r["determinant"], r["name"]
        assert determinant_goeritz(d) == r["determinant"], r["name"]


def test_dt_realization_matches_up_to_mirror(knotinfo):
    for r in knotinfo:
        d = from_dt(r["dt"])
        v = jones(d).jones_t
        assert v in (r["jones_poly"], r["jones_poly"].invert_variable()), r["name"]
        assert alexander(d).delta == normalize_alexander(r["alexander_poly"]), r["name"]


def test_braid_closures_match(knotinfo):
    from symknot.constructors import BraidWord, braid_closure

    for r in knotinfo[:60]:
        letters = tuple(r["braid"])
        w = BraidWord(max(abs(x) for x in letters) + 1, letters)
        d = braid_closure(w)
        assert jones(d).jones_t in (r["jones_poly"], r["jones_poly"].invert_variable()), r["name"]
        assert determinant(d) == r["determinant"]
