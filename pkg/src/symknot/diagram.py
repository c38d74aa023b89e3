"""Planar diagram (PD) representation of knots and links.

Each crossing lists four arc labels counterclockwise, starting at the incoming
under-strand.  Arc labels are arbitrary integers; each appears exactly twice in
a valid diagram.  Crossingless components are counted in ``free_loops``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property


class DiagramError(ValueError):
    """Raised when an operation receives a structurally invalid diagram."""


@dataclass(frozen=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    id: int = 0

    def __post_init__(self):
        if len(self.arcs) != 4:
            raise DiagramError(f"crossing {self.id} has {len(self.arcs)} arcs, expected 4")
        object.__setattr__(self, "arcs", tuple(int(a) for a in self.arcs))

    def __iter__(self):
        return iter(self.arcs)

    def __getitem__(self, k):
        return self.arcs[k]


@dataclass(frozen=True)
class StrandInfo:
    """Oriented passage data of one crossing."""

    under_in: int
    under_out: int
    over_in: int
    over_out: int
    over_in_slot: int  # 1 or 3
    sign: int


@dataclass
class ValidationReport:
    valid: bool
    errors: list[str] = field(default_factory=list)
    n_components: int = 0
    n_faces: int = 0
    euler: int | None = None
    pieces: int = 0

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        xs = tuple(c if isinstance(c, Crossing) else Crossing(tuple(c), i)
                   for i, c in enumerate(self.crossings))
        object.__setattr__(self, "crossings", xs)
        if not xs and self.free_loops == 0:
            # the empty diagram is the unknot
            object.__setattr__(self, "free_loops", 1)

    # ------------------------------------------------------------------
    @classmethod
    def from_pd(cls, pd, free_loops: int = 0) -> "Diagram":
        return cls(tuple(Crossing(tuple(x), i) for i, x in enumerate(pd)), free_loops)

    @classmethod
    def unknot(cls) -> "Diagram":
        return cls((), 1)

    def __len__(self):
        return len(self.crossings)

    @property
    def pd(self) -> list[tuple[int, int, int, int]]:
        return [c.arcs for c in self.crossings]

    @property
    def ids(self) -> list[int]:
        return [c.id for c in self.crossings]

    def index_of(self, cid: int) -> int:
        for i, c in enumerate(self.crossings):
            if c.id == cid:
                return i
        raise KeyError(cid)

    @cached_property
    def arc_slots(self) -> dict[int, list[tuple[int, int]]]:
        """arc label -> list of (crossing index, slot)."""
        out: dict[int, list[tuple[int, int]]] = {}
        for i, c in enumerate(self.crossings):
            for k, a in enumerate(c.arcs):
                out.setdefault(a, []).append((i, k))
        return out

    @property
    def arcs(self) -> list[int]:
        return sorted(self.arc_slots)

    # ------------------------------------------------------------------
    # orientation
    @cached_property
    def _orientation(self):
        """Solve for the over-strand direction at every crossing.

        Returns (over_in_slot per crossing, list of conflicts).
        """
        slots = self.arc_slots
        n = len(self.crossings)
        over_in = [None] * n
        conflicts: list[str] = []
        # role[(ci, k)] = "in" / "out"
        role: dict[tuple[int, int], str] = {}
        stack: list[tuple[int, int]] = []

        def assign(pos, r):
            old = role.get(pos)
            if old is not None:
                if old != r:
                    conflicts.append(f"arc {self.crossings[pos[0]].arcs[pos[1]]} has inconsistent orientation")
                return
            role[pos] = r
            stack.append(pos)

        def propagate():
            while stack:
                ci, k = stack.pop()
                r = role[(ci, k)]
                a = self.crossings[ci].arcs[k]
                occ = slots.get(a, [])
                others = [p for p in occ if p != (ci, k)]
                for p in others[:1]:
                    assign(p, "out" if r == "in" else "in")
                if k in (1, 3):
                    other = 4 - k
                    assign((ci, other), "out" if r == "in" else "in")
                    if over_in[ci] is None:
                        over_in[ci] = k if r == "in" else other

        for ci in range(n):
            assign((ci, 0), "in")
            assign((ci, 2), "out")
        propagate()
        for ci in range(n):
            if over_in[ci] is None:
                # component never passes under anything: pick d -> b
                assign((ci, 3), "in")
                propagate()
        return over_in, conflicts

    @cached_property
    def strands(self) -> list[StrandInfo]:
        over_in, _ = self._orientation
        out = []
        for c, oi in zip(self.crossings, over_in):
            a, b, cc, d = c.arcs
            if oi == 3:
                out.append(StrandInfo(a, cc, d, b, 3, +1))
            else:
                out.append(StrandInfo(a, cc, b, d, 1, -1))
        return out

    @property
    def signs(self) -> list[int]:
        return [s.sign for s in self.strands]

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def next_arc(self) -> dict[int, int]:
        """arc -> the arc that follows it along the orientation."""
        nxt = {}
        for s in self.strands:
            nxt[s.under_in] = s.under_out
            nxt[s.over_in] = s.over_out
        return nxt

    @cached_property
    def components(self) -> list[tuple[int, ...]]:
        """Arc cycles, each listed from its smallest arc label along the orientation."""
        nxt = self.next_arc
        seen = set()
        comps = []
        for a in sorted(nxt):
            if a in seen:
                continue
            cyc = []
            x = a
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = nxt.get(x)
                if x is None:
                    break
            comps.append(tuple(cyc))
        return comps

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def is_knot(self) -> bool:
        return self.n_components == 1

    # ------------------------------------------------------------------
    # faces
    @cached_property
    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces as cycles of (crossing index, slot).

        Element (i, k) stands for the corner between slots k-1 and k at crossing i.
        """
        slots = self.arc_slots
        partner = {}
        for a, occ in slots.items():
            if len(occ) == 2:
                partner[occ[0]] = occ[1]
                partner[occ[1]] = occ[0]
        seen = set()
        faces = []
        for i in range(len(self.crossings)):
            for k in range(4):
                start = (i, k)
                if start in seen:
                    continue
                face = []
                x = start
                while x not in seen:
                    seen.add(x)
                    face.append(x)
                    p = partner.get(x)
                    if p is None:
                        break
                    x = (p[0], (p[1] + 1) % 4)
                faces.append(face)
        return faces

    def face_of_corner(self) -> dict[tuple[int, int], int]:
        out = {}
        for fi, f in enumerate(self.faces):
            for x in f:
                out[x] = fi
        return out

    @cached_property
    def pieces(self) -> int:
        """Number of connected pieces of the underlying 4-valent graph."""
        n = len(self.crossings)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for occ in self.arc_slots.values():
            if len(occ) == 2:
                ra, rb = find(occ[0][0]), find(occ[1][0])
                if ra != rb:
                    parent[ra] = rb
        return len({find(i) for i in range(n)})

    # ------------------------------------------------------------------
    def validate(self) -> ValidationReport:
        return validate(self)

    def check(self) -> "Diagram":
        rep = self._report
        if not rep.valid:
            raise DiagramError("; ".join(rep.errors))
        return self

    @cached_property
    def _report(self) -> ValidationReport:
        return validate(self)

    def require_knot(self) -> "Diagram":
        self.check()
        if not self.is_knot:
            raise DiagramError(f"not a knot: diagram has {self.n_components} components")
        return self

    def with_ids(self, ids) -> "Diagram":
        return Diagram(tuple(Crossing(c.arcs, i) for c, i in zip(self.crossings, ids)), self.free_loops)

    def __str__(self):
        from .codes import emit_pd

        return emit_pd(self)


def validate(d: Diagram) -> ValidationReport:
    """Check arc pairing, orientation consistency and planarity (Euler count)."""
    errors = []
    for c in d.crossings:
        if len(c.arcs) != 4:
            errors.append(f"crossing {c.id}: arity {len(c.arcs)}")
    ids = [c.id for c in d.crossings]
    if len(set(ids)) != len(ids):
        errors.append("duplicate crossing ids")
    for a, occ in sorted(d.arc_slots.items()):
        if len(occ) == 1:
            errors.append(f"dangling arc {a}")
        elif len(occ) != 2:
            errors.append(f"odd arc multiplicity: arc {a} appears {len(occ)} times")
    if errors:
        return ValidationReport(False, errors)
    _, conflicts = d._orientation
    errors.extend(sorted(set(conflicts)))
    n = len(d.crossings)
    if n == 0:
        return ValidationReport(not errors, errors, d.n_components, 2, 2, 0)
    F = len(d.faces)
    V, E = n, 2 * n
    euler = V - E + F
    if euler != 2 * d.pieces:
        errors.append(f"non-planar pairing: V - E + F = {euler}, expected {2 * d.pieces}")
    return ValidationReport(not errors, errors, d.n_components, F, euler, d.pieces)


# ----------------------------------------------------------------------
# transforms

def relabel(d: Diagram, mapping: dict[int, int]) -> Diagram:
    return Diagram(tuple(Crossing(tuple(mapping[a] for a in c.arcs), c.id) for c in d.crossings),
                   d.free_loops)


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing; labels and ids are kept."""
    out = []
    for c, s in zip(d.crossings, d.strands):
        a, b, cc, dd = c.arcs
        if s.over_in_slot == 3:
            arcs = (dd, a, b, cc)
        else:
            arcs = (b, cc, dd, a)
        out.append(Crossing(arcs, c.id))
    return Diagram(tuple(out), d.free_loops)


def switch_crossings(d: Diagram, ids) -> Diagram:
    """Switch only the crossings whose id is in ``ids``."""
    ids = set(ids)
    m = mirror(d)
    return Diagram(tuple(mc if c.id in ids else c for c, mc in zip(d.crossings, m.crossings)),
                   d.free_loops)


def reverse(d: Diagram) -> Diagram:
    """Reverse the orientation of every component."""
    out = []
    for c, s in zip(d.crossings, d.strands):
        a, b, cc, dd = c.arcs
        out.append(Crossing((cc, dd, a, b), c.id))
    return Diagram(tuple(out), d.free_loops)


def standardize(d: Diagram, start: int = 1) -> Diagram:
    """Relabel arcs consecutively along each component (in component order)."""
    mapping = {}
    k = start
    for comp in d.components:
        for a in comp:
            mapping[a] = k
            k += 1
    return relabel(d, mapping)


def canonical_form(d: Diagram, max_tries: int = 200000):
    """Label-independent key: equal keys iff diagrams agree up to relabeling.

    Orientation is part of the PD data, so reversal is not quotiented out.
    """
    d.check()
    comps = d.components
    n = len(comps)
    tries = 1
    for c in comps:
        tries *= len(c)
    tries *= 1 if n < 2 else len(list(itertools.permutations(range(n))))
    if tries > max_tries:
        raise DiagramError("diagram too large for exhaustive canonical form")
    best = None
    for order in itertools.permutations(range(n)):
        for starts in itertools.product(*[range(len(comps[i])) for i in order]):
            mapping = {}
            k = 1
            for ci, s in zip(order, starts):
                comp = comps[ci]
                for j in range(len(comp)):
                    mapping[comp[(s + j) % len(comp)]] = k
                    k += 1
            key = tuple(sorted(tuple(mapping[a] for a in c.arcs) for c in d.crossings))
            if best is None or key < best:
                best = key
    return (best or (), d.free_loops)


def same_up_to_relabeling(a: Diagram, b: Diagram) -> bool:
    if len(a) != len(b) or a.free_loops != b.free_loops:
        return False
    return canonical_form(a) == canonical_form(b)


def disjoint_labels(d: Diagram, offset: int) -> Diagram:
    return relabel(d, {a: a + offset for a in d.arc_slots})


def connected_sum(a: Diagram, b: Diagram) -> Diagram:
    """Band sum of two knot diagrams along their smallest-labelled arcs."""
    a.require_knot()
    b.require_knot()
    if not a.crossings:
        return standardize(b)
    if not b.crossings:
        return standardize(a)
    a = standardize(a)
    b = disjoint_labels(standardize(b), 2 * len(a))
    x = 1  # arc of a
    y = 2 * len(a) + 1  # arc of b
    # head occurrence = where the arc is incoming
    head_a = _head(a, x)
    head_b = _head(b, y)
    cr = [list(c.arcs) for c in a.crossings] + [list(c.arcs) for c in b.crossings]
    na = len(a)
    cr[head_a[0]][head_a[1]] = y
    cr[na + head_b[0]][head_b[1]] = x
    out = Diagram(tuple(Crossing(tuple(c), i) for i, c in enumerate(cr)))
    return standardize(out.check())


def _head(d: Diagram, arc: int) -> tuple[int, int]:
    """(crossing index, slot) where ``arc`` enters a crossing."""
    for i, s in enumerate(d.strands):
        if s.under_in == arc:
            return (i, 0)
        if s.over_in == arc:
            return (i, s.over_in_slot)
    raise KeyError(arc)


def _tail(d: Diagram, arc: int) -> tuple[int, int]:
    for i, s in enumerate(d.strands):
        if s.under_out == arc:
            return (i, 2)
        if s.over_out == arc:
            return (i, 4 - s.over_in_slot)
    raise KeyError(arc)
