"""Diagrams from Morse words.

A Morse word describes a diagram read from top to bottom as a sequence of
elementary pieces acting on a row of vertical strands (positions 0, 1, ...
from the left):

* ``cap(i)`` opens a new pair of strands at positions i, i+1 (a local maximum),
* ``cup(i)`` closes the strands at positions i, i+1 (a local minimum),
* ``cross(i, h)`` crosses the strands at positions i, i+1.  With ``h = +1``
  the strand running from upper right to lower left passes over; with both
  strands oriented downward this is a positive crossing.

Every Morse word gives a planar diagram, so constructors never have to check
planarity by hand.  Crossing ids follow the order in which crossings appear.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Hashable, Iterable, Sequence

from .diagram import Crossing, Diagram, DiagramError

NW, NE, SW, SE = 0, 1, 2, 3
_OPPOSITE = {NW: SE, SE: NW, NE: SW, SW: NE}
# counterclockwise around a crossing drawn with y pointing up
_CCW = (NW, SW, SE, NE)


@dataclass(frozen=True)
class Op:
    kind: str  # "cap", "cup" or "cross"
    index: int
    sign: int = 0
    tag: Hashable = None

    def __post_init__(self):
        if self.kind not in ("cap", "cup", "cross"):
            raise ValueError(f"unknown Morse piece {self.kind!r}")
        if self.kind == "cross" and self.sign not in (1, -1):
            raise ValueError("a crossing needs sign +1 or -1")


def cap(i: int, tag=None) -> Op:
    return Op("cap", i, 0, tag)


def cup(i: int, tag=None) -> Op:
    return Op("cup", i, 0, tag)


def cross(i: int, h: int, tag=None) -> Op:
    return Op("cross", i, h, tag)


def widths(ops: Sequence[Op], start: int = 0) -> list[int]:
    """Width before each op, followed by the final width."""
    out = [start]
    w = start
    for op in ops:
        if op.kind == "cap":
            if not 0 <= op.index <= w:
                raise DiagramError(f"cap at {op.index} outside width {w}")
            w += 2
        else:
            if not 0 <= op.index <= w - 2:
                raise DiagramError(f"{op.kind} at {op.index} outside width {w}")
            if op.kind == "cup":
                w -= 2
        out.append(w)
    return out


def reflect(ops: Sequence[Op], start: int = 0, retag=None) -> list[Op]:
    """Reflection in a vertical line: positions reversed, every crossing flips."""
    ws = widths(ops, start)
    out = []
    for op, w in zip(ops, ws):
        tag = retag(op.tag) if retag else op.tag
        if op.kind == "cap":
            out.append(Op("cap", w - op.index, 0, tag))
        elif op.kind == "cup":
            out.append(Op("cup", w - 2 - op.index, 0, tag))
        else:
            out.append(Op("cross", w - 2 - op.index, -op.sign, tag))
    return out


def point_image(ops: Sequence[Op], start: int = 0, retag=None) -> list[Op]:
    """Rotation by pi in the plane followed by switching every crossing.

    The word is read backwards, caps and cups trade places and positions are
    reversed.  A half-turn keeps each crossing's over-diagonal, so after the
    switch every crossing sign flips.
    """
    ws = widths(ops, start)
    out = []
    for k in range(len(ops) - 1, -1, -1):
        op = ops[k]
        big = max(ws[k], ws[k + 1])
        tag = retag(op.tag) if retag else op.tag
        if op.kind == "cap":
            out.append(Op("cup", big - 2 - op.index, 0, tag))
        elif op.kind == "cup":
            out.append(Op("cap", big - 2 - op.index, 0, tag))
        else:
            out.append(Op("cross", ws[k] - 2 - op.index, -op.sign, tag))
    return out


@dataclass(frozen=True)
class MorseDiagram:
    """A diagram together with the provenance tag of each crossing."""

    diagram: Diagram
    tags: tuple

    def crossings_tagged(self, pred) -> list[int]:
        return [i for i, t in enumerate(self.tags) if pred(t)]


def build(ops: Iterable[Op]) -> MorseDiagram:
    """Assemble a closed Morse word into an oriented PD diagram."""
    ops = list(ops)
    link: dict[Hashable, Hashable] = {}
    cap_other: dict[Hashable, Hashable] = {}
    pos: list[Hashable] = []
    signs: list[int] = []
    tags: list = []
    fresh = 0

    def join(u, v):
        link[u] = v
        link[v] = u

    for step, op in enumerate(ops):
        w = len(pos)
        if op.kind == "cap":
            if not 0 <= op.index <= w:
                raise DiagramError(f"step {step}: cap at {op.index} outside width {w}")
            a, b = ("cap", fresh, 0), ("cap", fresh, 1)
            fresh += 1
            cap_other[a] = b
            cap_other[b] = a
            pos[op.index:op.index] = [a, b]
        elif op.kind == "cup":
            if not 0 <= op.index <= w - 2:
                raise DiagramError(f"step {step}: cup at {op.index} outside width {w}")
            join(pos[op.index], pos[op.index + 1])
            del pos[op.index:op.index + 2]
        else:
            if not 0 <= op.index <= w - 2:
                raise DiagramError(f"step {step}: cross at {op.index} outside width {w}")
            c = len(signs)
            join(pos[op.index], (c, NW))
            join(pos[op.index + 1], (c, NE))
            pos[op.index] = (c, SW)
            pos[op.index + 1] = (c, SE)
            signs.append(op.sign)
            tags.append(op.tag)
    if pos:
        raise DiagramError(f"Morse word leaves {len(pos)} open strands")

    seen_caps: set = set()

    def walk(t):
        # follow the strand leaving slot t until it reaches a crossing slot
        u = link[t]
        while u in cap_other:
            v = cap_other[u]
            seen_caps.add(u)
            seen_caps.add(v)
            u = link[v]
        return u

    n = len(signs)
    arc_at: dict[tuple[int, int], int] = {}
    in_slot: set = set()
    label = 0
    for c in range(n):
        for start in (NW, NE):
            if (c, start) in in_slot or (c, _OPPOSITE[start]) in in_slot:
                continue
            # a strand not yet traversed: orient it downward through c
            cur = (c, start)
            while True:
                in_slot.add(cur)
                out = (cur[0], _OPPOSITE[cur[1]])
                nxt = walk(out)
                label += 1
                arc_at[out] = label
                arc_at[nxt] = label
                cur = nxt
                if cur == (c, start):
                    break
    free = 0
    for t in cap_other:
        if t in seen_caps:
            continue
        free += 1
        u = t
        while u not in seen_caps:
            seen_caps.add(u)
            v = cap_other[u]
            seen_caps.add(v)
            u = link[v]

    crossings = []
    for c in range(n):
        under = (NW, SE) if signs[c] > 0 else (NE, SW)
        first = under[0] if (c, under[0]) in in_slot else under[1]
        k = _CCW.index(first)
        arcs = tuple(arc_at[(c, _CCW[(k + j) % 4])] for j in range(4))
        crossings.append(Crossing(arcs, c))
    if not crossings and free == 0:
        free = 1
    return MorseDiagram(Diagram(tuple(crossings), free), tuple(tags))


def retag(ops: Sequence[Op], fn) -> list[Op]:
    return [replace(op, tag=fn(op.tag)) for op in ops]
