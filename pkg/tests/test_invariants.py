import random

import pytest

from symknot.codes import parse_pd
from symknot.constructors import BraidWord, braid_closure, rosette
from symknot.diagram import Diagram, DiagramError, mirror
from symknot.invariants import (
    BRUTEFORCE_LIMIT,
    alexander,
    alexander_matrix,
    bracket,
    bracket_bruteforce,
    bracket_contract,
    checkerboard,
    contraction_order,
    determinant,
    determinant_goeritz,
    goeritz,
    int_det,
    jones,
    jones_from_bracket,
    normalize_alexander,
)
from symknot.laurent import LaurentPoly
from symknot.moves import r1_add

A = LaurentPoly.monomial(1)
TREFOIL = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
FIG8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")


def test_unknot():
    u = Diagram.unknot()
    assert bracket(u) == 1
    assert jones(u).jones == 1
    assert alexander(u).delta == 1
    assert determinant(u) == 1


@pytest.mark.parametrize("variant", range(4))
def test_kinks(variant):
    k = r1_add(Diagram.unknot(), None, variant)
    br = bracket_bruteforce(k)
    # a positive kink contributes -A^3, a negative one -A^-3
    assert br == (-(A ** 3) if k.writhe > 0 else -(A ** -3))
    assert jones(k).jones == 1


def test_trefoil_bracket():
    # frozen from the brute-force state sum
    d = braid_closure(BraidWord(2, (1, 1, 1)))
    assert d.writhe == 3
    assert bracket_bruteforce(d) == A ** -7 - A ** -3 - A ** 5
    assert jones(d).jones_t == LaurentPoly({1: 1, 3: 1, 4: -1})


def test_jones_of_mirror():
    assert jones(mirror(TREFOIL)).jones == jones(TREFOIL).jones.invert_variable()


def test_jones_from_bracket_rejects_odd():
    with pytest.raises(AssertionError):
        jones_from_bracket(A, 0)


def test_jones_requires_knot():
    with pytest.raises(DiagramError):
        jones(parse_pd("X[4,1,3,2] X[2,3,1,4]"))


def test_contract_matches_bruteforce_on_catalogue(knotinfo):
    for r in knotinfo[:60]:
        d = Diagram.from_pd([tuple(x) for x in r["pd"]])
        assert bracket_contract(d) == bracket_bruteforce(d), r["name"]


def test_contract_with_any_order():
    rng = random.Random(3)
    order = list(range(len(FIG8)))
    for _ in range(5):
        rng.shuffle(order)
        assert bracket_contract(FIG8, order) == bracket_bruteforce(FIG8)


def test_contract_on_links_and_loops():
    hopf = parse_pd("X[4,1,3,2] X[2,3,1,4]")
    assert bracket_contract(hopf) == bracket_bruteforce(hopf)
    two = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2] Loop[]")
    assert bracket_contract(two) == bracket_bruteforce(two)


def test_contraction_order_is_deterministic_permutation():
    d = rosette(7)
    o = contraction_order(d)
    assert sorted(o) == list(range(len(d)))
    assert o == contraction_order(d)


def test_bruteforce_limit():
    assert BRUTEFORCE_LIMIT >= 12
    with pytest.raises(ValueError):
        bracket_bruteforce(rosette(11))


def test_alexander_trefoil_and_fig8():
    t = LaurentPoly.monomial(1)
    assert alexander(TREFOIL).delta == t ** -1 - 1 + t
    assert alexander(FIG8).delta == -(t ** -1) + 3 - t
    assert alexander(TREFOIL).determinant == 3


def test_alexander_matrix_shape():
    m = alexander_matrix(FIG8)
    assert len(m) == 4 and all(len(r) == 4 for r in m)


def test_normalize_alexander():
    t = LaurentPoly.monomial(1)
    assert normalize_alexander(-(1 - t + t ** 2).shift(5)) == t ** -1 - 1 + t
    assert normalize_alexander(-(1 - 3 * t + t ** 2)) == -(t ** -1) + 3 - t


def test_int_det():
    assert int_det([[2, 1], [1, 3]]) == 5
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([]) == 1
    assert int_det([[1, 2], [2, 4]]) == 0


def test_goeritz_and_checkerboard():
    col = checkerboard(FIG8)
    assert set(col) == {0, 1}
    g = goeritz(FIG8)
    assert abs(g.det()) == 5
    assert determinant_goeritz(TREFOIL) == 3


def test_determinant_routes_agree_on_rosettes():
    for n in (2, 4, 5, 7, 8):
        d = rosette(n)
        assert determinant(d) == determinant_goeritz(d)
