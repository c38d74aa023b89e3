"""Acceptance gate: one test per criterion, one summary line per criterion.

Tolerances are pinned below.  The summary lines are printed at the end of
the pytest run (see conftest.py) and when this file is run as a script.
"""

import itertools
import random
import time

import pytest

from symknot.analysis import batch_verify, Construction, has_spa_certificate, identify, is_square_up_to_units, poly_sqrt
from symknot.cli import fuzz_bases, run_fuzz
from symknot.codes import from_dt
from symknot.constructors import BraidWord, TwistSpec, braid_closure, expand_template, rosette, shipped_templates
from symknot.diagram import Diagram, DiagramError
from symknot.invariants import alexander, bracket_bruteforce, bracket_contract, determinant_goeritz, jones
from symknot.laurent import LaurentPoly
from symknot.morse import build, cap, cross, cup

ROSETTE_SECONDS = 1.0
SUITE_SECONDS = 60.0
SUITE_MIN_EXPANSIONS = 200
SUITE_MAX_CROSSINGS = 18
SUITE_TWIST_RANGE = range(-6, 7)
ORACLE_DIAGRAMS = 200
ORACLE_MAX_CROSSINGS = 12
FUZZ_SEQUENCES = 1000
FUZZ_BASES = 20
FUZZ_LENGTH = 6
BIG_CROSSINGS = 24
BIG_SECONDS = 10.0

RESULTS: dict[int, tuple[bool, str]] = {}

t = LaurentPoly.monomial(1)


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def summary_lines() -> list[str]:
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


# ----------------------------------------------------------------------
# shared corpus


def _suite():
    rows = []
    for q in shipped_templates():
        for tw in itertools.product(SUITE_TWIST_RANGE, repeat=q.n_x + q.n_y):
            spec = TwistSpec(tw[:q.n_x], tw[q.n_x:])
            if q.crossing_count(spec) > SUITE_MAX_CROSSINGS:
                continue
            try:
                rows.append(expand_template(q, spec))
            except DiagramError:
                continue  # links are not part of the suite
    return rows


@pytest.fixture(scope="module")
def suite():
    t0 = time.perf_counter()
    rows = _suite()
    return rows, time.perf_counter() - t0


# ----------------------------------------------------------------------


def test_criterion_1_rosette_determinants():
    got, worst = {}, 0.0
    for n in (5, 7):
        t0 = time.perf_counter()
        d = rosette(n)
        got[n] = (abs(alexander(d).delta(-1)), determinant_goeritz(d))
        worst = max(worst, time.perf_counter() - t0)
    ok = got[5] == (121, 121) and got[7] == (841, 841) and worst < ROSETTE_SECONDS
    record(1, ok, f"det rosette(5)={got[5][0]}, rosette(7)={got[7][0]}, slowest {worst:.3f}s")


def test_criterion_2_paper_square_roots():
    targets = [1 - t ** 2 + t ** 4, 2 - 4 * t + 3 * t ** 2 - 4 * t ** 3 + 2 * t ** 4]
    roots = [poly_sqrt(f * f) for f in targets]
    record(2, roots == targets, "roots " + ", ".join(str(r) for r in roots))


def test_criterion_3_construction_suite(suite):
    rows, build_time = suite
    t0 = time.perf_counter()
    bad = []
    for ex in rows:
        d = ex.diagram
        k = alexander(d).delta
        j = alexander(ex.partial_knot()).delta
        checks = (
            has_spa_certificate(d, ex.rho),
            jones(d).jones.is_palindromic(),
            is_square_up_to_units(k),
            abs(k(-1)) == abs(j(-1)) ** 2,
        )
        if not all(checks):
            bad.append((ex.label, checks))
    elapsed = build_time + time.perf_counter() - t0
    ok = len(rows) >= SUITE_MIN_EXPANSIONS and not bad and elapsed < SUITE_SECONDS
    record(3, ok, f"{len(rows)} knot expansions, {len(bad)} failing, {elapsed:.1f}s")


def test_criterion_4_even_twist_law(suite):
    rows, _ = suite
    even = [ex for ex in rows if all(n % 2 == 0 for n in ex.spec.y)]
    bad = [ex.label for ex in even
           if alexander(ex.diagram).delta != alexander(ex.partial_knot()).delta ** 2]
    record(4, bool(even) and not bad, f"{len(even)} all-even expansions, {len(bad)} violations")


def _random_word(rng: random.Random, max_crossings: int):
    ops, w, n = [], 0, 0
    while True:
        moves = ["cap"] if w < 8 else []
        if w >= 2:
            moves += ["cup"] + ["cross"] * 3 * (n < max_crossings)
        if not moves or (n >= max_crossings and w == 0):
            break
        k = rng.choice(moves)
        if k == "cap":
            ops.append(cap(rng.randint(0, w)))
            w += 2
        elif k == "cup":
            ops.append(cup(rng.randint(0, w - 2)))
            w -= 2
            if w == 0 and n:
                break
        else:
            ops.append(cross(rng.randint(0, w - 2), rng.choice((1, -1))))
            n += 1
    while w:
        ops.append(cup(0))
        w -= 2
    return ops


def _random_diagrams(count: int, max_crossings: int, seed: int = 20240901):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if rng.random() < 0.5:
            s = rng.randint(2, 4)
            letters = tuple(rng.choice((1, -1)) * rng.randint(1, s - 1) for _ in range(rng.randint(1, max_crossings)))
            d = braid_closure(BraidWord(s, letters))
        else:
            d = build(_random_word(rng, rng.randint(1, max_crossings))).diagram
        if 0 < len(d) <= max_crossings:
            out.append(d)
    return out


def test_criterion_5_contraction_matches_state_sum():
    ds = _random_diagrams(ORACLE_DIAGRAMS, ORACLE_MAX_CROSSINGS)
    bad = [i for i, d in enumerate(ds) if bracket_contract(d) != bracket_bruteforce(d)]
    links = sum(not d.is_knot for d in ds)
    record(5, not bad, f"{len(ds)} diagrams ({links} links, max {max(map(len, ds))} crossings), {len(bad)} mismatches")


def test_criterion_6_dual_route_determinant(suite, knotinfo):
    rows, _ = suite
    corpus = [Diagram.from_pd([tuple(x) for x in r["pd"]]) for r in knotinfo]
    corpus += [from_dt(r["dt"]) for r in knotinfo[:100]]
    corpus += [ex.diagram for ex in rows] + [ex.partial_knot() for ex in rows]
    corpus += [rosette(n) for n in (2, 4, 5, 7, 8, 10, 11)]
    bad = [i for i, d in enumerate(corpus) if abs(alexander(d).delta(-1)) != determinant_goeritz(d)]
    record(6, not bad, f"{len(corpus)} diagrams, {len(bad)} mismatches")


def test_criterion_7_move_fuzz():
    bases = fuzz_bases(FUZZ_BASES)
    rep = run_fuzz(bases, FUZZ_SEQUENCES, FUZZ_LENGTH, seed=7)
    kinds = rep["moves"]
    ok = (rep["sequences"] >= FUZZ_SEQUENCES and rep["bases"] == FUZZ_BASES and not rep["failures"]
          and all(kinds.get(k, 0) > 0 for k in ("r1+", "r1-", "r2+", "r2-", "r3")))
    mix = " ".join(f"{k}:{kinds[k]}" for k in sorted(kinds))
    record(7, ok, f"{rep['sequences']} sequences of {FUZZ_LENGTH} moves on {rep['bases']} bases ({mix}), "
                  f"{len(rep['failures'])} invariant changes")


def test_criterion_8_identification():
    got = {
        "rosette(2)": [c.name for c in identify(rosette(2))],
        "rosette(4)": [c.name for c in identify(rosette(4))],
        "s1^3": [c.name for c in identify(braid_closure(BraidWord(2, (1, 1, 1))))],
    }
    ok = got == {"rosette(2)": ["4_1"], "rosette(4)": ["8_18"], "s1^3": ["3_1"]}
    record(8, ok, ", ".join(f"{k} -> {v}" for k, v in got.items()))


def _big_expansions():
    out = []
    for q in shipped_templates():
        for tw in itertools.product(range(-8, 9), repeat=q.n_x + q.n_y):
            spec = TwistSpec(tw[:q.n_x], tw[q.n_x:])
            if q.crossing_count(spec) != BIG_CROSSINGS:
                continue
            try:
                out.append(expand_template(q, spec))
            except DiagramError:
                continue
    return out


def test_criterion_9_large_bracket():
    bigs = _big_expansions()
    worst = 0.0
    for ex in bigs:
        t0 = time.perf_counter()
        bracket_contract(ex.diagram)
        worst = max(worst, time.perf_counter() - t0)
    entries = [Construction(ex.label, "template", (ex.template, ex.spec)) for ex in bigs[:12]]
    one = [r.as_json() for r in batch_verify(entries, jobs=1).rows]
    two = [r.as_json() for r in batch_verify(entries, jobs=4).rows]
    ok = bool(bigs) and worst < BIG_SECONDS and one == two
    record(9, ok, f"{len(bigs)} expansions with {BIG_CROSSINGS} crossings, slowest bracket {worst:.3f}s, "
                  f"jobs 1 vs 4 {'identical' if one == two else 'differ'}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
