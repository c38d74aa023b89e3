"""Text encodings: PD terms, Gauss codes and Dowker-Thistlethwaite codes."""

from __future__ import annotations

import itertools
import re

from .diagram import Crossing, Diagram, DiagramError


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:,\s*)?(?:(X)\[([^\]]*)\]|(Loop)\[\s*\d*\s*\]|(\S+))")


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _strip_comments(text: str) -> str:
    # keep positions intact so error columns stay meaningful
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)


def parse_pd(text: str) -> Diagram:
    """Parse ``X[a,b,c,d]`` terms (and ``Loop[]`` for crossingless components)."""
    text = _strip_comments(text)
    crossings = []
    loops = 0
    pos = 0
    while pos < len(text):
        if text[pos:].strip(" \t\r\n,") == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unexpected character", *_line_col(text, pos))
        if m.group(1):
            body = m.group(2)
            start = m.start(1)
            parts = [p for p in re.split(r"[\s,]+", body.strip()) if p]
            if len(parts) != 4:
                raise ParseError(f"arity: X[...] needs 4 arcs, got {len(parts)}", *_line_col(text, start))
            try:
                arcs = tuple(int(p) for p in parts)
            except ValueError:
                raise ParseError(f"non-integer arc label in X[{body}]", *_line_col(text, start)) from None
            crossings.append(Crossing(arcs, len(crossings)))
        elif m.group(3):
            loops += 1
        else:
            raise ParseError(f"unknown token {m.group(4)!r}", *_line_col(text, m.start(4)))
        pos = m.end()
    if not crossings and loops == 0:
        loops = 1
    return Diagram(tuple(crossings), loops)


def parse_pd_lines(text: str) -> list[Diagram]:
    """One diagram per non-empty line."""
    out = []
    for ln, line in enumerate(text.splitlines(), 1):
        body = _strip_comments(line)
        if not body.strip():
            continue
        try:
            out.append(parse_pd(body))
        except ParseError as e:
            raise ParseError(str(e).split(": ", 1)[1], ln, e.column) from None
    return out


def emit_pd(d: Diagram) -> str:
    terms = [f"X[{a},{b},{c},{dd}]" for a, b, c, dd in d.pd]
    extra = d.free_loops if d.crossings else d.free_loops - 1
    terms += ["Loop[]"] * extra
    return " ".join(terms)


# ----------------------------------------------------------------------
# Gauss code

def to_gauss(d: Diagram) -> list[list[int]]:
    """Per component: crossing numbers (index + 1), positive when passing over."""
    d.check()
    where = {}
    for i, s in enumerate(d.strands):
        where[s.under_in] = -(i + 1)
        where[s.over_in] = i + 1
    return [[where[a] for a in comp] for comp in d.components]


def from_gauss(code: list[int], signs: list[int]) -> Diagram:
    """Knot diagram from a single-component Gauss code and crossing signs.

    ``signs[k]`` is the sign of crossing ``k + 1``.
    """
    n2 = len(code)
    arcs_in = {}
    for p, g in enumerate(code):
        c = abs(g)
        arc_in = (p - 1) % n2 + 1
        arc_out = p + 1
        arcs_in.setdefault(c, {})["over" if g > 0 else "under"] = (arc_in, arc_out)
    crossings = []
    for c in sorted(arcs_in):
        info = arcs_in[c]
        if set(info) != {"over", "under"}:
            raise DiagramError(f"Gauss code crossing {c} must appear once over and once under")
        ui, uo = info["under"]
        oi, oo = info["over"]
        arcs = (ui, oo, uo, oi) if signs[c - 1] > 0 else (ui, oi, uo, oo)
        crossings.append(Crossing(arcs, c - 1))
    return Diagram(tuple(crossings))


# ----------------------------------------------------------------------
# DT code

def to_dt(d: Diagram) -> tuple[int, ...]:
    """DT code read from the smallest arc label; evens are negative at under-passages."""
    d.check()
    if d.n_components != 1:
        raise DiagramError("DT code requires a knot (got a link)")
    if not d.crossings:
        return ()
    comp = d.components[0]
    head = {}
    for i, s in enumerate(d.strands):
        head[s.under_in] = (i, False)
        head[s.over_in] = (i, True)
    passes: dict[int, list[tuple[int, bool]]] = {}
    for k, a in enumerate(comp, 1):
        ci, over = head[a]
        passes.setdefault(ci, []).append((k, over))
    pairs = {}
    for ci, pl in passes.items():
        (p1, o1), (p2, o2) = pl
        if (p1 + p2) % 2 == 0:
            raise DiagramError("diagram does not admit a DT code (parity)")
        odd, even = (p1, (p2, o2)) if p1 % 2 else (p2, (p1, o1))
        pairs[odd] = even[0] if even[1] else -even[0]
    return tuple(pairs[o] for o in sorted(pairs))


def parse_dt(text: str) -> tuple[int, ...]:
    m = re.fullmatch(r"\s*(?:dt\s*:\s*)?\(?\s*([-\d,\s]*)\)?\s*", text)
    if not m:
        raise ParseError(f"cannot parse DT code {text!r}")
    vals = [int(v) for v in re.split(r"[\s,]+", m.group(1).strip()) if v]
    _check_dt(vals)
    return tuple(vals)


def format_dt(code) -> str:
    return "dt:(" + " ".join(str(v) for v in code) + ")"


def _check_dt(vals):
    n = len(vals)
    if any(v % 2 for v in vals):
        raise ParseError("DT entries must be even")
    if sorted(abs(v) for v in vals) != list(range(2, 2 * n + 1, 2)):
        raise ParseError("DT entries must be distinct in absolute value and cover 2..2n")


def _count_faces(pd) -> int:
    slots = {}
    for i, c in enumerate(pd):
        for k, a in enumerate(c):
            slots.setdefault(a, []).append((i, k))
    partner = {}
    for occ in slots.values():
        partner[occ[0]] = occ[1]
        partner[occ[1]] = occ[0]
    seen = set()
    faces = 0
    for start in partner:
        if start in seen:
            continue
        faces += 1
        x = start
        while x not in seen:
            seen.add(x)
            p = partner[x]
            x = (p[0], (p[1] + 1) % 4)
    return faces


MAX_DT_REALIZE = 18


def from_dt(code) -> Diagram:
    """Realize a DT code as a planar diagram.

    The rotation (handedness) of every crossing is searched so that the Euler
    count is planar; the first crossing is fixed, which fixes the global
    reflection.  Realizations are unique up to reflection for prime codes.
    """
    vals = list(code)
    _check_dt(vals)
    n = len(vals)
    if n == 0:
        return Diagram.unknot()
    if n > MAX_DT_REALIZE:
        raise DiagramError(f"DT realization supports at most {MAX_DT_REALIZE} crossings")
    n2 = 2 * n
    # per crossing: (under passage, over passage)
    passages = []
    for i, e in enumerate(vals):
        odd = 2 * i + 1
        even = abs(e)
        if e > 0:
            passages.append((odd, even))
        else:
            passages.append((even, odd))

    def arc_into(p):
        return (p - 2) % n2 + 1

    base = []
    for u, o in passages:
        base.append((arc_into(u), u, arc_into(o), o))
    target = n + 2
    for bits in itertools.product((1, -1), repeat=n - 1):
        signs = (1,) + bits
        pd = [(ui, oo, uo, oi) if s > 0 else (ui, oi, uo, oo)
              for (ui, uo, oi, oo), s in zip(base, signs)]
        if _count_faces(pd) == target:
            return Diagram(tuple(Crossing(x, i) for i, x in enumerate(pd)))
    raise DiagramError(f"DT code {format_dt(vals)} is not realizable in the plane")
