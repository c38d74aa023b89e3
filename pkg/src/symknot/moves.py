"""Reidemeister moves on PD diagrams and a random move fuzzer.

Every move returns a new validated diagram.  Additions are checked by
recognising the configuration they create (a kink, a bigon face, a triangle
face) in the result, so an applied move is always undone by its inverse.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import Crossing, Diagram, DiagramError, _head, _tail


class MoveError(DiagramError):
    """The requested move does not apply at the given site."""


@dataclass(frozen=True)
class Move:
    kind: str  # r1+, r1-, r2+, r2-, r3
    site: tuple

    def __str__(self):
        return f"{self.kind}{self.site}"


def _fresh(d: Diagram, k: int = 1) -> list[int]:
    top = max(d.arc_slots, default=0)
    return list(range(top + 1, top + 1 + k))


def _rebuild(pd, ids=None, free_loops: int = 0) -> Diagram:
    if ids is None:
        ids = range(len(pd))
    return Diagram(tuple(Crossing(tuple(x), i) for x, i in zip(pd, ids)), free_loops)


def remove_crossings(d: Diagram, indices) -> Diagram:
    """Delete crossings, letting both strands run straight through each one.

    Arc classes that no longer touch a crossing become free loops.
    """
    drop = set(indices)
    parent = {a: a for a in d.arc_slots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in drop:
        a, b, c, dd = d.crossings[i].arcs
        for u, v in ((a, c), (b, dd)):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    keep = [c for i, c in enumerate(d.crossings) if i not in drop]
    used = {find(a) for c in keep for a in c.arcs}
    loops = len({find(a) for a in d.arc_slots} - used)
    out = Diagram(tuple(Crossing(tuple(find(a) for a in c.arcs), c.id) for c in keep),
                  d.free_loops + loops)
    if not out.crossings and out.free_loops == 0:
        out = Diagram((), 1)
    return out.check()


# ----------------------------------------------------------------------
# R1

R1_VARIANTS = 4


def r1_add(d: Diagram, arc: int | None = None, variant: int = 0) -> Diagram:
    """Add a kink on ``arc``; variants 0..3 choose side and sign."""
    d.check()
    if not d.crossings:
        if d.free_loops != 1:
            raise MoveError("kinks on split links are not supported")
        kinks = [(1, 1, 2, 2), (1, 2, 2, 1), (2, 1, 1, 2), (2, 2, 1, 1)]
        return _rebuild([kinks[variant % 4]]).check()
    if arc is None or arc not in d.arc_slots:
        raise MoveError(f"arc {arc} is not in the diagram")
    x_out, k = _fresh(d, 2)
    hi, hs = _head(d, arc)
    pd = [list(c.arcs) for c in d.crossings]
    pd[hi][hs] = x_out
    x = arc
    kink = [(x, x_out, k, k), (x, k, k, x_out), (k, x, x_out, k), (k, k, x_out, x)][variant % 4]
    pd.append(kink)
    ids = list(d.ids) + [max(d.ids) + 1]
    return _rebuild(pd, ids, d.free_loops).check()


def kinks(d: Diagram) -> list[int]:
    """Indices of crossings with a repeated arc at adjacent slots (R1 sites)."""
    out = []
    for i, c in enumerate(d.crossings):
        a = c.arcs
        if any(a[k] == a[(k + 1) % 4] for k in range(4)):
            out.append(i)
    return out


def r1_remove(d: Diagram, index: int) -> Diagram:
    d.check()
    if index not in kinks(d):
        raise MoveError(f"crossing {index} is not a kink")
    return remove_crossings(d, [index])


# ----------------------------------------------------------------------
# R2


def _face_arcs(d: Diagram, face) -> list[int]:
    out = []
    for i, k in face:
        arcs = d.crossings[i].arcs
        for a in (arcs[(k - 1) % 4], arcs[k]):
            if a not in out:
                out.append(a)
    return out


def _is_bigon(d: Diagram, i: int, j: int, x: int, y: int) -> bool:
    for f in d.faces:
        if len(f) == 2 and {f[0][0], f[1][0]} == {i, j} and set(_face_arcs(d, f)) == {x, y}:
            return True
    return False


def r2_add(d: Diagram, over: int, under: int) -> Diagram:
    """Push arc ``over`` across arc ``under`` through a face they share."""
    d.check()
    if over == under:
        raise MoveError("R2 needs two different arcs")
    shared = [f for f in d.faces if {over, under} <= set(_face_arcs(d, f))]
    if not shared:
        raise MoveError(f"arcs {over} and {under} do not bound a common face")
    x1, y1 = over, under
    x2, x3, y2, y3 = _fresh(d, 4)
    base = [list(c.arcs) for c in d.crossings]
    hx, hy = _head(d, x1), _head(d, y1)
    n = len(base)
    ids = list(d.ids)
    new_ids = [max(ids) + 1, max(ids) + 2]
    for order in (0, 1):
        for s in (1, -1):
            pd = [list(c) for c in base]
            pd[hx[0]][hx[1]] = x3
            pd[hy[0]][hy[1]] = y3
            # the over strand meets crossing n then n+1
            unders = [(y1, y2), (y2, y3)] if order == 0 else [(y2, y3), (y1, y2)]
            overs = [(x1, x2), (x2, x3)]
            for (ui, uo), (oi, oo), sg in zip(unders, overs, (s, -s)):
                pd.append([ui, oo, uo, oi] if sg > 0 else [ui, oi, uo, oo])
            cand = _rebuild(pd, ids + new_ids, d.free_loops)
            if not cand.validate().valid:
                continue
            if _is_bigon(cand, n, n + 1, x2, y2):
                return cand
    raise MoveError(f"no planar R2 between arcs {over} and {under}")


def bigons(d: Diagram) -> list[tuple[int, int]]:
    """Crossing pairs bounding a bigon face with one strand over at both."""
    out = []
    for f in d.faces:
        if len(f) != 2:
            continue
        i, j = f[0][0], f[1][0]
        if i == j:
            continue
        x, y = _face_arcs(d, f)[:2]
        si, sj = d.strands[i], d.strands[j]
        over_i = {si.over_in, si.over_out}
        over_j = {sj.over_in, sj.over_out}
        for a in (x, y):
            if a in over_i and a in over_j:
                out.append((min(i, j), max(i, j)))
                break
    return sorted(set(out))


def r2_remove(d: Diagram, i: int, j: int) -> Diagram:
    d.check()
    if (min(i, j), max(i, j)) not in bigons(d):
        raise MoveError(f"crossings {i}, {j} do not bound a removable bigon")
    return remove_crossings(d, [i, j])


# ----------------------------------------------------------------------
# R3


def triangles(d: Diagram) -> list[int]:
    """Indices of triangle faces with a strand passing over at both its corners."""
    out = []
    for fi, f in enumerate(d.faces):
        if len(f) != 3 or len({i for i, _ in f}) != 3:
            continue
        try:
            _r3_plan(d, f)
        except MoveError:
            continue
        out.append(fi)
    return out


def _r3_plan(d: Diagram, face):
    cross_set = {i for i, _ in face}
    mids = _face_arcs(d, face)
    if len(mids) != 3:
        raise MoveError("degenerate triangle")
    strands = []
    for m in mids:
        ti, ts = _tail(d, m)
        hi, hs = _head(d, m)
        if ti == hi or ti not in cross_set or hi not in cross_set:
            raise MoveError("triangle arc does not join two triangle crossings")
        a_in = d.crossings[ti].arcs[(ts + 2) % 4]
        a_out = d.crossings[hi].arcs[(hs + 2) % 4]
        if len({a_in, a_out, m}) != 3:
            raise MoveError("triangle strand revisits itself")
        strands.append((a_in, m, a_out, ti, hi))
    over_count = {}
    for k, (a_in, m, a_out, ti, hi) in enumerate(strands):
        st_t, st_h = d.strands[ti], d.strands[hi]
        over_count[k] = (m == st_t.over_out) + (m == st_h.over_in)
    if 2 not in over_count.values():
        raise MoveError("alternating triangle: R3 does not apply")
    return strands


def r3(d: Diagram, face_index: int) -> Diagram:
    """Slide one strand across the crossing of the other two."""
    d.check()
    face = d.faces[face_index]
    if len(face) != 3:
        raise MoveError(f"face {face_index} is not a triangle")
    strands = _r3_plan(d, face)
    # new (in, out) arcs of each strand at each of its crossings
    new_io: dict[tuple[int, int], tuple[int, int]] = {}
    for k, (a_in, m, a_out, ti, hi) in enumerate(strands):
        new_io[(k, ti)] = (m, a_out)  # was first, now second
        new_io[(k, hi)] = (a_in, m)  # was second, now first
    pd = [list(c.arcs) for c in d.crossings]
    for ci in {s[3] for s in strands} | {s[4] for s in strands}:
        st = d.strands[ci]
        ks = [k for k, s in enumerate(strands) if ci in (s[3], s[4])]
        under_k = over_k = None
        for k in ks:
            a_in, m, a_out, ti, hi = strands[k]
            old_in = a_in if ci == ti else m
            if old_in == st.under_in:
                under_k = k
            elif old_in == st.over_in:
                over_k = k
        if under_k is None or over_k is None:
            raise MoveError("triangle crossing is not shared by two strands")
        ui, uo = new_io[(under_k, ci)]
        oi, oo = new_io[(over_k, ci)]
        pd[ci] = [ui, oo, uo, oi] if st.sign > 0 else [ui, oi, uo, oo]
    out = _rebuild(pd, d.ids, d.free_loops)
    rep = out.validate()
    if not rep.valid:
        raise MoveError("R3 produced an invalid diagram: " + "; ".join(rep.errors))
    if not any(len(f) == 3 and set(_face_arcs(out, f)) == {s[1] for s in strands} for f in out.faces):
        raise MoveError("R3 did not produce the expected triangle")
    return out


# ----------------------------------------------------------------------
# random moves


def random_move(d: Diagram, rng: random.Random, max_crossings: int = 30) -> tuple[Diagram, Move]:
    """Apply one applicable move chosen at random."""
    n = len(d.crossings)
    kinds = ["r1+", "r2+", "r3", "r1-", "r2-", "r3"]
    if n >= max_crossings:
        kinds = ["r1-", "r2-", "r3"]
    rng.shuffle(kinds)
    for kind in kinds:
        try:
            if kind == "r1+":
                arc = rng.choice(d.arcs) if d.crossings else None
                v = rng.randrange(R1_VARIANTS)
                return r1_add(d, arc, v), Move(kind, (arc, v))
            if kind == "r1-":
                ks = kinks(d)
                if ks:
                    i = rng.choice(ks)
                    return r1_remove(d, i), Move(kind, (i,))
            if kind == "r2+" and d.crossings:
                f = rng.choice(d.faces)
                arcs = _face_arcs(d, f)
                if len(arcs) >= 2:
                    x, y = rng.sample(arcs, 2)
                    return r2_add(d, x, y), Move(kind, (x, y))
            if kind == "r2-":
                bs = bigons(d)
                if bs:
                    i, j = rng.choice(bs)
                    return r2_remove(d, i, j), Move(kind, (i, j))
            if kind == "r3":
                ts = triangles(d)
                if ts:
                    fi = rng.choice(ts)
                    return r3(d, fi), Move(kind, (fi,))
        except MoveError:
            continue
    # a kink always applies
    arc = d.arcs[0] if d.crossings else None
    return r1_add(d, arc, 0), Move("r1+", (arc, 0))


def random_sequence(d: Diagram, length: int, rng: random.Random, max_crossings: int = 30):
    moves = []
    for _ in range(length):
        d, mv = random_move(d, rng, max_crossings)
        moves.append(mv)
    return d, moves


def reidemeister_move(d: Diagram, move: str, site) -> Diagram:
    """Dispatch on a move name: ``r1+`` (arc, variant), ``r1-`` (crossing,),
    ``r2+`` (over arc, under arc), ``r2-`` (crossing, crossing), ``r3`` (face,)."""
    site = tuple(site) if isinstance(site, (tuple, list)) else (site,)
    if move == "r1+":
        return r1_add(d, *site)
    if move == "r1-":
        return r1_remove(d, *site)
    if move == "r2+":
        return r2_add(d, *site)
    if move == "r2-":
        return r2_remove(d, *site)
    if move == "r3":
        return r3(d, *site)
    raise MoveError(f"unknown move {move!r}; expected r1+, r1-, r2+, r2- or r3")
