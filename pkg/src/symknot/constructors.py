"""Diagram constructors: braid closures, symmetric unions, quarter templates.

Half-diagrams and quarter templates are written as short programs in
*distance coordinates*: strands left of the vertical axis are numbered by
their distance from it (0 is the innermost strand).  Steps are

``axis_cap`` / ``axis_cup``
    a strand crossing the vertical axis at the top / bottom,
``cap d`` / ``cup d``
    open / close the pair of strands at distances d and d+1,
``cross d h``
    cross the strands at distances d and d+1 (``h`` is ``+`` or ``-``),
``y k``
    the position of vertical-axis twist slot k.

The right half is always the reflection of the left half, so the programs
describe the left side only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import morse
from .diagram import Diagram, DiagramError
from .morse import Op

# ----------------------------------------------------------------------
# braids


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise ValueError(f"braid letter {x} out of range for {self.strands} strands")

    def permutation(self) -> list[int]:
        """Strand permutation: position of each strand after the word (0-based)."""
        perm = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return perm

    def cycle_count(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for s in range(self.strands):
            if not seen[s]:
                cycles += 1
                while not seen[s]:
                    seen[s] = True
                    s = perm[s]
        return cycles

    def __str__(self):
        return f"{self.strands}: " + " ".join(str(x) for x in self.letters)


def parse_braid(text: str) -> BraidWord:
    """Parse ``"3: 1 -2 1 -2"`` (an optional ``braid:`` prefix is accepted)."""
    body = text.strip()
    if body.startswith("braid:"):
        body = body[len("braid:"):]
    m = re.fullmatch(r"\s*(\d+)\s*:\s*([-\d\s,]*)", body)
    if not m:
        raise ValueError(f"cannot parse braid {text!r}; expected 'strands: letters'")
    letters = tuple(int(v) for v in re.split(r"[\s,]+", m.group(2).strip()) if v)
    return BraidWord(int(m.group(1)), letters)


def braid_word_ops(w: BraidWord) -> list[Op]:
    s = w.strands
    ops = [morse.cap(k) for k in range(s)]
    ops += [morse.cross(abs(x) - 1, 1 if x > 0 else -1, tag=("braid", j)) for j, x in enumerate(w.letters)]
    ops += [morse.cup(k) for k in range(s - 1, -1, -1)]
    return ops


def braid_closure(w: BraidWord) -> Diagram:
    """Closure with the return strands to the right of the braid."""
    return morse.build(braid_word_ops(w)).diagram


def rosette(n: int) -> Diagram:
    """Closure of (s1 s2^-1)^n on three strands."""
    if n < 2:
        raise ValueError("rosette needs n >= 2")
    if n % 3 == 0:
        raise DiagramError(f"multi-component rosette: (s1 s2^-1)^{n} closes to a 3-component link")
    return braid_closure(BraidWord(3, (1, -2) * n))


def twist_region(n: int) -> tuple[Op, ...]:
    """|n| crossings on a pair of vertical strands; n > 0 is right-handed."""
    h = 1 if n > 0 else -1
    return tuple(morse.cross(0, h, tag=("twist", j)) for j in range(abs(n)))


# ----------------------------------------------------------------------
# half programs


@dataclass(frozen=True)
class Step:
    kind: str  # axis_cap, axis_cup, cap, cup, cross, y
    d: int = 0
    h: int = 0
    name: str = ""

    def __str__(self):
        if self.kind in ("axis_cap", "axis_cup"):
            return self.kind
        if self.kind == "cross":
            head = f"{self.name}: " if self.name else ""
            return f"{head}cross {self.d} {'+' if self.h > 0 else '-'}"
        return f"{self.kind} {self.d}"


_STEP = re.compile(
    r"^(?:(?P<name>[A-Za-z]\w*)\s*:\s*)?(?P<kind>axis_cap|axis_cup|cap|cup|cross|y)"
    r"(?:\s+(?P<a>-?\d+))?(?:\s+(?P<h>[-+]1?))?\s*$"
)


def parse_step(line: str) -> Step:
    m = _STEP.match(line.strip())
    if not m:
        raise ValueError(f"cannot parse step {line.strip()!r}")
    kind = m.group("kind")
    a, h, name = m.group("a"), m.group("h"), m.group("name") or ""
    if kind in ("axis_cap", "axis_cup"):
        if a is not None or h is not None:
            raise ValueError(f"{kind} takes no arguments")
        return Step(kind)
    if a is None:
        raise ValueError(f"{kind} needs a distance")
    if kind == "cross":
        if h is None:
            raise ValueError("cross needs a sign (+ or -)")
        return Step(kind, int(a), 1 if h.startswith("+") else -1, name)
    if h is not None:
        raise ValueError(f"{kind} takes one argument")
    return Step(kind, int(a))


def _flip(steps: Sequence[Step], suffix: str) -> list[Step]:
    """Upside-down copy of a program (rotation about the horizontal axis)."""
    swap = {"axis_cap": "axis_cup", "axis_cup": "axis_cap", "cap": "cup", "cup": "cap"}
    out = []
    for s in reversed(steps):
        if s.kind in swap:
            out.append(Step(swap[s.kind], s.d))
        elif s.kind == "cross":
            out.append(Step("cross", s.d, s.h, s.name + suffix if s.name else ""))
        else:
            out.append(Step("y", -s.d))  # lower copy of slot k, stored as -k
    return out


def _check_program(steps: Sequence[Step], closed: bool) -> int:
    """Validate widths; return the number of left strands at the end."""
    m = 0
    axis = 0
    for s in steps:
        if s.kind == "axis_cap":
            axis += 1
            m += 1
        elif s.kind == "axis_cup":
            if m < 1 or axis < 1:
                raise DiagramError("axis_cup without an open axis strand")
            axis -= 1
            m -= 1
        elif s.kind == "cap":
            if not 0 <= s.d <= m:
                raise DiagramError(f"cap {s.d} with only {m} strands on the left")
            m += 2
        elif s.kind in ("cup", "cross"):
            if not 0 <= s.d <= m - 2:
                raise DiagramError(f"{s.kind} {s.d} needs strands at distances {s.d} and {s.d + 1}")
            if s.kind == "cup":
                m -= 2
        elif s.kind == "y":
            if m < 1:
                raise DiagramError("y slot with no strand next to the axis")
    if closed and m != 0:
        raise DiagramError(f"program leaves {m} open strands")
    return m


def _mirror_pair(steps: Sequence[Step], y_twists: dict[int, int], flips=frozenset()) -> list[Op]:
    """Morse word of a program drawn left of the axis and reflected to the right.

    ``flips`` holds (side, crossing name) pairs whose sign is switched on that
    side only ("L" or "R").
    """
    ops: list[Op] = []
    m = 0
    for s in steps:
        if s.kind == "axis_cap":
            ops.append(morse.cap(m))
            m += 1
        elif s.kind == "axis_cup":
            ops.append(morse.cup(m - 1))
            m -= 1
        elif s.kind == "cap":
            ops.append(morse.cap(m - s.d))
            ops.append(morse.cap(m + 2 + s.d))
            m += 2
        elif s.kind == "cup":
            ops.append(morse.cup(m - 2 - s.d))
            ops.append(morse.cup(m - 2 + s.d))
            m -= 2
        elif s.kind == "cross":
            hl = -s.h if ("L", s.name) in flips else s.h
            hr = -s.h if ("R", s.name) in flips else s.h
            ops.append(morse.cross(m - 2 - s.d, hl, tag=("L", s.name)))
            ops.append(morse.cross(m + s.d, -hr, tag=("R", s.name)))
        else:
            n = y_twists.get(s.d, 0)
            h = 1 if n > 0 else -1
            ops += [morse.cross(m - 1, h, tag=("y", s.d, j)) for j in range(abs(n))]
    return ops


def horizontal_twist(d: int, n: int, name: str = "x") -> list[Step]:
    """Twist region lying along a horizontal axis on the pair (d, d+1).

    With n = 0 the two strands from above are joined to each other and so
    are the two from below; otherwise |n| crossings of sign(n) connect them
    through the axis.
    """
    if n == 0:
        return [Step("cup", d), Step("cap", d)]
    h = 1 if n > 0 else -1
    return ([Step("cap", d)]
            + [Step("cross", d + 1, h, f"{name}.{j + 1}") for j in range(abs(n))]
            + [Step("cup", d + 2)])


def _left_ops(steps: Sequence[Step], m: int, side: str = "L") -> list[Op]:
    """Morse ops for steps acting only left of the axis (m strands there)."""
    ops: list[Op] = []
    for s in steps:
        if s.kind == "cap":
            ops.append(morse.cap(m - s.d))
            m += 2
        elif s.kind == "cup":
            ops.append(morse.cup(m - 2 - s.d))
            m -= 2
        elif s.kind == "cross":
            ops.append(morse.cross(m - 2 - s.d, s.h, tag=(side, s.name)))
        else:
            raise ValueError(f"{s.kind} is not allowed here")
    return ops


def _left_closure(steps: Sequence[Step]) -> list[Op]:
    """The left half closed by a strand running down the axis."""
    ops: list[Op] = []
    m = 0
    for s in steps:
        if s.kind == "axis_cap":
            ops.append(morse.cap(m))
            m += 1
        elif s.kind == "axis_cup":
            ops.append(morse.cup(m - 1))
            m -= 1
        elif s.kind == "cap":
            ops.append(morse.cap(m - s.d))
            m += 2
        elif s.kind == "cup":
            ops.append(morse.cup(m - 2 - s.d))
            m -= 2
        elif s.kind == "cross":
            ops.append(morse.cross(m - 2 - s.d, s.h, tag=("L", s.name)))
    return ops


@dataclass(frozen=True)
class HalfDiagram:
    """Left half of a symmetric union, with the vertical-axis twist slots marked."""

    steps: tuple[Step, ...]

    def __post_init__(self):
        caps = sum(s.kind == "axis_cap" for s in self.steps)
        cups = sum(s.kind == "axis_cup" for s in self.steps)
        if caps != 1 or cups != 1:
            raise DiagramError("a half diagram crosses the axis exactly once at the top and once at the bottom")
        _check_program(self.steps, closed=True)
        ys = [s.d for s in self.steps if s.kind == "y"]
        if len(set(ys)) != len(ys):
            raise DiagramError("duplicate y slot")

    @classmethod
    def parse(cls, text: str) -> "HalfDiagram":
        steps = [parse_step(ln) for ln in _content_lines(text)]
        return cls(tuple(steps))

    @property
    def y_slots(self) -> list[int]:
        """Slot keys in top-to-bottom order."""
        return [s.d for s in self.steps if s.kind == "y"]

    def __str__(self):
        return "\n".join(str(s) for s in self.steps)


def _content_lines(text: str):
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            yield ln


def _y_map(h: HalfDiagram, y_twists: Sequence[int]) -> dict[int, int]:
    slots = h.y_slots
    if len(y_twists) != len(slots):
        raise ValueError(f"expected {len(slots)} y twists, got {len(y_twists)}")
    return dict(zip(slots, y_twists))


def symmetric_union_word(h: HalfDiagram, y_twists: Sequence[int]) -> list[Op]:
    return _mirror_pair(h.steps, _y_map(h, y_twists))


def symmetric_union(h: HalfDiagram, y_twists: Sequence[int]) -> Diagram:
    """The half, its reflection, and twist regions on the axis.

    Raises DiagramError ("not a knot") when the result has several components.
    """
    d = morse.build(symmetric_union_word(h, y_twists)).diagram
    return d.require_knot()


def partial_knot(h: HalfDiagram) -> Diagram:
    return morse.build(_left_closure(h.steps)).diagram


def half_from_braid(w: BraidWord | str, y_after: int = 1) -> HalfDiagram:
    """Half diagram whose partial knot is the closure of ``w``.

    The braid runs next to the axis with strand 1 innermost; the return
    strands lie further out.  A single y slot sits after the first
    ``y_after`` letters.  A slot at either end of the word only adds a
    removable kink, so the default places it after the first letter.
    """
    if isinstance(w, str):
        w = parse_braid(w)
    s = w.strands
    if not 0 <= y_after <= len(w.letters):
        raise ValueError(f"y_after must lie in 0..{len(w.letters)}")
    letters = [Step("cross", abs(x) - 1, 1 if x > 0 else -1, f"b{j + 1}") for j, x in enumerate(w.letters)]
    steps = [Step("axis_cap")]
    steps += [Step("cap", k) for k in range(1, s)]
    steps += letters[:y_after] + [Step("y", 1)] + letters[y_after:]
    steps += [Step("cup", k) for k in range(s - 1, 0, -1)]
    steps.append(Step("axis_cup"))
    return HalfDiagram(tuple(steps))


CROSSINGLESS_HALF = HalfDiagram((Step("axis_cap"), Step("y", 1), Step("axis_cup")))
TREFOIL_HALF = half_from_braid(BraidWord(2, (1, 1, 1)))


# ----------------------------------------------------------------------
# quarter templates


QUADRANT_PAIRS = {"I,III": "R", "III,I": "R", "II,IV": "L", "IV,II": "L"}


@dataclass(frozen=True)
class QuarterTemplate:
    """Upper-left quarter of a doubly symmetric diagram plus its twist slots.

    ``steps`` is a program for quadrant II ending on the negative x-axis.
    ``x_slots[k]`` is the distance d of the strand pair (d, d+1) twisted by
    horizontal-axis slot k+1; slots are listed left to right.
    """

    name: str
    steps: tuple[Step, ...]
    x_slots: tuple[int, ...] = ()
    description: str = ""

    def __post_init__(self):
        if sum(s.kind == "axis_cap" for s in self.steps) != 1:
            raise DiagramError("a quarter must contain exactly one axis_cap")
        if any(s.kind == "axis_cup" for s in self.steps):
            raise DiagramError("axis_cup belongs to the lower half; a quarter may not contain one")
        m = _check_program(self.steps, closed=False)
        for k, d in enumerate(self.x_slots, 1):
            if not 0 <= d <= m - 2:
                raise DiagramError(f"x slot {k} twists distances {d},{d + 1} but only {m} strands reach the axis")
        used = [e for d in self.x_slots for e in (d, d + 1)]
        if len(set(used)) != len(used):
            raise DiagramError("x slots must twist disjoint strand pairs")
        ys = self.y_slot_keys
        if sorted(ys) != list(range(1, len(ys) + 1)):
            raise DiagramError("y slots must be numbered 1..k without gaps")
        names = [s.name for s in self.steps if s.kind == "cross"]
        if any(not n for n in names) or len(set(names)) != len(names):
            raise DiagramError("quarter crossings need distinct names")

    @property
    def y_slot_keys(self) -> list[int]:
        return [s.d for s in self.steps if s.kind == "y"]

    @property
    def n_x(self) -> int:
        return len(self.x_slots)

    @property
    def n_y(self) -> int:
        return len(self.y_slot_keys)

    @property
    def crossing_names(self) -> list[str]:
        return [s.name for s in self.steps if s.kind == "cross"]

    @property
    def quarter_size(self) -> int:
        return len(self.crossing_names)

    def crossing_count(self, spec: "TwistSpec") -> int:
        return 4 * self.quarter_size + 2 * sum(map(abs, spec.x)) + 2 * sum(map(abs, spec.y))

    def half(self, x_twists: Sequence[int]) -> HalfDiagram:
        """The full left half: quarter, x-axis twists, flipped quarter."""
        if len(x_twists) != self.n_x:
            raise ValueError(f"expected {self.n_x} x twists, got {len(x_twists)}")
        mid = []
        for k, (d, n) in enumerate(zip(self.x_slots, x_twists), 1):
            mid += horizontal_twist(d, n, f"x{k}")
        return HalfDiagram(tuple(self.steps) + tuple(mid) + tuple(_flip(self.steps, "'")))

    def to_text(self) -> str:
        lines = [f"name: {self.name}"]
        if self.description:
            lines.append(f"description: {self.description}")
        lines.append(f"x_slots: {self.n_x}")
        lines.append(f"y_slots: {self.n_y}")
        lines.append("quarter:")
        lines += [f"  {s}" for s in self.steps]
        lines.append("wiring:")
        lines += [f"  x{k}: {d} {d + 1}" for k, d in enumerate(self.x_slots, 1)]
        return "\n".join(lines) + "\n"


def parse_template(text: str) -> QuarterTemplate:
    """Read the structured template format (see README)."""
    fields: dict[str, str] = {}
    steps: list[Step] = []
    wiring: dict[int, int] = {}
    section = None
    for ln in _content_lines(text):
        key, sep, rest = ln.partition(":")
        key = key.strip()
        if sep and key in ("name", "description", "x_slots", "y_slots", "quarter", "wiring"):
            if key in ("quarter", "wiring"):
                section = key
                if rest.strip():
                    raise ValueError(f"'{key}:' starts a block; put entries on the following lines")
            else:
                fields[key] = rest.strip()
                section = None
            continue
        if section == "quarter":
            steps.append(parse_step(ln))
        elif section == "wiring":
            m = re.fullmatch(r"x(\d+)\s*:\s*(\d+)\s+(\d+)", ln)
            if not m:
                raise ValueError(f"cannot parse wiring line {ln!r}; expected 'xK: d d+1'")
            a, b = int(m.group(2)), int(m.group(3))
            if b != a + 1:
                raise ValueError(f"x slot {m.group(1)} must join adjacent distances, got {a} {b}")
            wiring[int(m.group(1))] = a
        else:
            raise ValueError(f"unexpected line {ln!r}")
    if "name" not in fields:
        raise ValueError("template needs a name")
    n_x = int(fields.get("x_slots", len(wiring)))
    if sorted(wiring) != list(range(1, n_x + 1)):
        raise ValueError(f"wiring must place x slots 1..{n_x}")
    t = QuarterTemplate(fields["name"], tuple(steps), tuple(wiring[k] for k in range(1, n_x + 1)),
                        fields.get("description", ""))
    if "y_slots" in fields and int(fields["y_slots"]) != t.n_y:
        raise ValueError(f"y_slots says {fields['y_slots']} but the quarter marks {t.n_y}")
    return t


def load_template(path: str | Path) -> QuarterTemplate:
    return parse_template(Path(path).read_text())


TEMPLATE_DIR = Path(__file__).parent / "data" / "templates"


def shipped_templates() -> list[QuarterTemplate]:
    return [load_template(p) for p in sorted(TEMPLATE_DIR.glob("*.tpl"))]


def shipped_template(name: str) -> QuarterTemplate:
    for t in shipped_templates():
        if t.name == name:
            return t
    raise KeyError(f"no shipped template named {name!r}")


@dataclass(frozen=True)
class TwistSpec:
    x: tuple[int, ...] = ()
    y: tuple[int, ...] = ()
    switches: tuple[tuple[str, str], ...] = ()

    @classmethod
    def parse(cls, x: str = "", y: str = "", switches: Sequence[str] = ()) -> "TwistSpec":
        return cls(_int_list(x), _int_list(y), tuple(parse_switch(s) for s in switches))

    def __str__(self):
        body = f"({', '.join(map(str, self.x))} | {', '.join(map(str, self.y))})"
        for pair, name in self.switches:
            body += f" [{pair}:{name}]"
        return body


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in re.split(r"[\s,]+", text) if v)
    except ValueError:
        raise ValueError(f"cannot parse twist list {text!r}") from None


def parse_switch(text: str) -> tuple[str, str]:
    pair, sep, name = text.strip().partition(":")
    pair = pair.replace(" ", "")
    if not sep or pair not in QUADRANT_PAIRS or not name:
        raise ValueError(f"cannot parse switch {text!r}; expected e.g. 'I,III:c2'")
    return pair, name.strip()


@dataclass(frozen=True)
class Expansion:
    """A template expansion with its point-symmetry involution."""

    template: QuarterTemplate
    spec: TwistSpec
    diagram: Diagram
    rho: tuple[int, ...]  # crossing id -> partner id
    tags: tuple = field(repr=False)
    word: tuple[Op, ...] = field(repr=False)

    def half(self) -> HalfDiagram:
        return self.template.half(self.spec.x)

    def partial_knot(self) -> Diagram:
        return partial_knot(self.half())

    @property
    def label(self) -> str:
        return f"{self.template.name}{self.spec}"


def _check_spec(t: QuarterTemplate, s: TwistSpec):
    if len(s.x) != t.n_x:
        raise ValueError(f"template {t.name} has {t.n_x} x slots, got {len(s.x)} twists")
    if len(s.y) != t.n_y:
        raise ValueError(f"template {t.name} has {t.n_y} y slots, got {len(s.y)} twists")
    names = set(t.crossing_names)
    for pair, name in s.switches:
        if name not in names:
            raise ValueError(f"switch names crossing {name!r}, not in template {t.name}")


def _expand(t: QuarterTemplate, s: TwistSpec, require_knot: bool = True) -> Expansion:
    _check_spec(t, s)
    flips: set = set()
    for pair, name in s.switches:
        flips ^= {(QUADRANT_PAIRS[pair], name)}
    y_map = dict(zip(t.y_slot_keys, s.y))
    upper = _mirror_pair(t.steps, y_map, frozenset(flips))
    m = _check_program(t.steps, closed=False)
    left_x: list[Op] = []
    for k, (d, n) in enumerate(zip(t.x_slots, s.x), 1):
        left_x += _left_ops(horizontal_twist(d, n, f"x{k}"), m, side="X")
    # the right-hand copy is the half-turn image, so the middle is exactly symmetric
    right_x = morse.point_image(left_x, start=2 * m, retag=_lower_tag)
    lower = morse.point_image(upper, retag=_lower_tag)
    word = upper + left_x + right_x + lower
    built = morse.build(word)
    d = built.diagram
    if require_knot:
        d.require_knot()
    n = len(d.crossings)
    rho = tuple(n - 1 - c for c in range(n))
    tags = tuple(_quadrant_tag(tg) for tg in built.tags)
    return Expansion(t, s, d, rho, tags, tuple(word))


def _lower_tag(tag):
    if tag is None:
        return None
    if tag[0] == "y":
        return ("y-",) + tag[1:]
    return ("lower",) + tuple(tag)


def _quadrant_tag(tag):
    """Readable provenance: ('II', 'c1'), ('y+', 1, j), ('x-', 'x1.2'), ..."""
    if tag is None:
        return None
    if tag[0] == "X":
        return ("x-", tag[1])
    if tag[0] == "L":
        return ("II", tag[1])
    if tag[0] == "R":
        return ("I", tag[1])
    if tag[0] == "y":
        return ("y+",) + tag[1:]
    if tag[0] == "lower":
        inner = tag[1:]
        if inner[0] == "L":
            return ("IV", inner[1])
        if inner[0] == "R":
            return ("III", inner[1])
        if inner[0] == "X":
            return ("x+", inner[1])
    return tag


def expand_template(t: QuarterTemplate, s: TwistSpec) -> Expansion:
    """Doubly symmetric diagram of a template with the given twists.

    Quadrant II holds the quarter, quadrant I its reflection, and the lower
    half is the half-turn image with every crossing switched, so the
    vertical-axis twists below the horizontal axis carry the negated values.
    """
    if s.switches:
        raise ValueError("expand_template takes no switches; use expand_almost")
    return _expand(t, s)


def expand_almost(t: QuarterTemplate, s: TwistSpec, allow_multiple: bool = False) -> Expansion:
    """Almost doubly symmetric diagram: one half-turn-symmetric pair switched.

    ``I,III:cK`` switches the copies of quarter crossing cK in quadrants I and
    III, ``II,IV:cK`` those in II and IV.
    """
    if len(s.switches) != 1 and not allow_multiple:
        raise ValueError(f"expand_almost takes exactly one switch, got {len(s.switches)}")
    if not s.switches:
        raise ValueError("expand_almost needs at least one switch")
    return _expand(t, s)
