"""Symmetry certificates, squareness tests, catalog identification, batches."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .codes import from_dt, parse_dt
from .diagram import Diagram, DiagramError
from .invariants import alexander, determinant, determinant_goeritz, jones
from .laurent import LaurentPoly

# ----------------------------------------------------------------------
# symmetry certificate


@dataclass(frozen=True)
class SymmetryCertificate:
    """Half-turn onto the mirror image, preserving the knot orientation.

    ``involution`` maps crossing ids to crossing ids; ``arc_map`` is the
    induced bijection on arcs.
    """

    involution: Mapping[int, int]
    arc_map: Mapping[int, int]
    sign_flip: bool = True


class CertificateError(ValueError):
    def __init__(self, failures: list[str]):
        super().__init__("; ".join(failures))
        self.failures = failures


def _as_mapping(d: Diagram, rho) -> dict[int, int]:
    if isinstance(rho, Mapping):
        return {int(k): int(v) for k, v in rho.items()}
    rho = list(rho)
    ids = d.ids
    if len(rho) != len(ids):
        raise CertificateError([f"involution has {len(rho)} entries for {len(ids)} crossings"])
    # a sequence is indexed by crossing position and names crossing ids
    return {ids[i]: int(r) for i, r in enumerate(rho)}


def certify_spa(d: Diagram, rho) -> SymmetryCertificate:
    """Check that rho realizes a half-turn of the diagram onto its mirror.

    Switching a crossing and applying one arc bijection phi to it must give
    the partner crossing rho(X) exactly, and partners must have opposite
    signs.  Raises CertificateError listing every failed condition.
    """
    d.check()
    failures: list[str] = []
    mapping = _as_mapping(d, rho)
    ids = set(d.ids)
    if set(mapping) != ids or not set(mapping.values()) <= ids:
        failures.append("involution does not act on the crossing ids of the diagram")
        raise CertificateError(failures)
    bad_inv = [c for c in ids if mapping[mapping[c]] != c]
    if bad_inv:
        failures.append(f"rho is not an involution (e.g. crossing {bad_inv[0]})")
    fixed = sorted(c for c in ids if mapping[c] == c)
    if fixed:
        failures.append(f"rho fixes crossings {fixed}")
    by_id = {c.id: c for c in d.crossings}
    sign = {c.id: s for c, s in zip(d.crossings, d.signs)}
    phi: dict[int, int] = {}
    conflict = None
    for c, st in zip(d.crossings, d.strands):
        a, b, cc, dd = c.arcs
        # switching makes the old over strand the new under strand
        switched = (dd, a, b, cc) if st.over_in_slot == 3 else (b, cc, dd, a)
        image = by_id[mapping[c.id]].arcs
        for src, dst in zip(switched, image):
            if phi.setdefault(src, dst) != dst and conflict is None:
                conflict = (c.id, src, phi[src], dst)
    if conflict:
        cid, src, one, two = conflict
        failures.append(f"mirror condition fails at crossing {cid}: arc {src} sent to both {one} and {two}")
    elif sorted(phi.values()) != sorted(phi):
        failures.append("induced arc map is not a bijection")
    wrong_sign = [c for c in ids if sign[mapping[c]] != -sign[c]]
    if wrong_sign:
        failures.append(f"sign condition fails at crossings {sorted(wrong_sign)[:5]}")
    if failures:
        raise CertificateError(failures)
    return SymmetryCertificate(dict(mapping), dict(phi))


def has_spa_certificate(d: Diagram, rho) -> bool:
    try:
        certify_spa(d, rho)
    except CertificateError:
        return False
    return True


# ----------------------------------------------------------------------
# squares


def poly_sqrt(p: LaurentPoly) -> LaurentPoly | None:
    """Integer Laurent square root with positive lowest coefficient, or None."""
    if not p:
        return LaurentPoly()
    lo, hi = p.min_exp, p.max_exp
    if lo % 2 or hi % 2:
        return None
    lead = p[lo]
    if lead < 0:
        return None
    r0 = math.isqrt(lead)
    if r0 * r0 != lead:
        return None
    top = p[hi]
    if top < 0 or math.isqrt(top) ** 2 != top:
        return None
    n = (hi - lo) // 2
    f = [r0] + [0] * n
    for k in range(1, n + 1):
        acc = p[lo + k] - sum(f[i] * f[k - i] for i in range(1, k))
        if acc % (2 * r0):
            return None
        f[k] = acc // (2 * r0)
    root = LaurentPoly.from_list(f, lo // 2)
    if root * root != p:
        return None
    return root


def square_root_up_to_units(p: LaurentPoly) -> LaurentPoly | None:
    """A square root of +-t^k p for some k, or None.

    Useful for normalized Alexander polynomials, whose root may sit at a
    half-integral centre.
    """
    if not p:
        return LaurentPoly()
    base = p.shift(-p.min_exp)
    for q in (base, -base):
        r = poly_sqrt(q)
        if r is not None:
            return r
    return None


def is_square_up_to_units(p: LaurentPoly) -> bool:
    return square_root_up_to_units(p) is not None


# ----------------------------------------------------------------------
# necessary conditions


def check_union_det(K: Diagram, J: Diagram) -> bool:
    """det(K) == det(J)**2, the determinant law for symmetric unions."""
    return determinant(K) == determinant(J) ** 2


@dataclass(frozen=True)
class AmphicheiralReport:
    jones: LaurentPoly
    alexander: LaurentPoly
    jones_palindromic: bool
    alexander_root: LaurentPoly | None

    @property
    def alexander_square(self) -> bool:
        return self.alexander_root is not None

    @property
    def passed(self) -> bool:
        return self.jones_palindromic and self.alexander_square


def check_amphicheiral_necessary(d: Diagram) -> AmphicheiralReport:
    """V(q) = V(1/q) and a square Alexander polynomial (both necessary for SPA)."""
    d.require_knot()
    v = jones(d).jones
    delta = alexander(d).delta
    return AmphicheiralReport(v, delta, v.is_palindromic(), square_root_up_to_units(delta))


# ----------------------------------------------------------------------
# fingerprints and the catalog


@dataclass(frozen=True)
class Fingerprint:
    det: int
    delta: LaurentPoly
    jones_canonical: LaurentPoly
    chirality: int  # +1 / -1 picks V or its mirror, 0 when V is palindromic

    @property
    def key(self) -> tuple:
        return (self.det, self.delta, self.jones_canonical)

    def mirror(self) -> "Fingerprint":
        return Fingerprint(self.det, self.delta, self.jones_canonical, -self.chirality)


def fingerprint(d: Diagram) -> Fingerprint:
    d.require_knot()
    v = jones(d).jones
    vm = v.invert_variable()
    delta = alexander(d).delta
    if v == vm:
        canon, chir = v, 0
    elif v.sort_key() < vm.sort_key():
        canon, chir = v, 1
    else:
        canon, chir = vm, -1
    return Fingerprint(abs(delta(-1)), delta, canon, chir)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dt: tuple[int, ...]
    fingerprint: Fingerprint
    amphicheiral: bool = False


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]


CATALOG_ENV = "SYMKNOT_CATALOG"
DEFAULT_CATALOG = Path(__file__).parent / "data" / "catalog.txt"


def catalog_path() -> Path:
    return Path(os.environ.get(CATALOG_ENV) or DEFAULT_CATALOG)


def parse_catalog(text: str) -> list[tuple[str, tuple[int, ...], bool]]:
    """Lines read ``name dt:(...)`` with an optional trailing ``amphicheiral``."""
    out = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, code = line.partition(" ")
        code = code.strip()
        amph = code.endswith("amphicheiral")
        if amph:
            code = code[: -len("amphicheiral")].strip()
        if not code:
            raise ValueError(f"catalog line {ln}: expected 'name dt:(...)'")
        out.append((name, parse_dt(code), amph))
    return out


def build_catalog(rows: Iterable[tuple]) -> Catalog:
    """Fingerprints are always computed here from the stored codes."""
    entries = []
    for name, dt, *flag in rows:
        amph = bool(flag and flag[0])
        entries.append(CatalogEntry(name, tuple(dt), fingerprint(from_dt(dt)), amph))
    return Catalog(tuple(entries))


@lru_cache(maxsize=4)
def _load_catalog(path: str, mtime: float) -> Catalog:
    return build_catalog(parse_catalog(Path(path).read_text()))


def load_catalog(path: str | Path | None = None) -> Catalog:
    p = Path(path) if path else catalog_path()
    return _load_catalog(str(p), p.stat().st_mtime)


@dataclass(frozen=True)
class Candidate:
    name: str
    mirror: bool
    amphicheiral: bool = False

    def __str__(self):
        if self.amphicheiral:
            return f"{self.name} (amphicheiral)"
        return f"mirror of {self.name}" if self.mirror else self.name


def identify(d: Diagram, catalog: Catalog | None = None) -> list[Candidate]:
    """Catalog entries whose fingerprint matches; empty means not in catalog."""
    if catalog is None:
        catalog = load_catalog()
    fp = fingerprint(d)
    out = []
    for e in catalog.entries:
        if e.fingerprint.key == fp.key:
            mirror = fp.chirality != 0 and e.fingerprint.chirality == -fp.chirality
            out.append(Candidate(e.name, mirror, e.amphicheiral))
    return out


# ----------------------------------------------------------------------
# batch verification


@dataclass
class BatchRow:
    input: str
    crossings: int | None = None
    det: int | None = None
    det_partial_sq: int | None = None
    alex_square: bool | None = None
    jones_palindromic: bool | None = None
    spa_certificate: bool | None = None
    candidates: list[str] = field(default_factory=list)
    asserted: tuple[str, ...] = ()
    status: str = "pass"  # pass, fail, skip, error
    message: str = ""

    def as_json(self) -> dict:
        return {
            "input": self.input,
            "crossings": self.crossings,
            "det": self.det,
            "det_partial_sq": self.det_partial_sq,
            "alex_square": self.alex_square,
            "jones_palindromic": self.jones_palindromic,
            "spa_certificate": self.spa_certificate,
            "candidates": list(self.candidates),
        }

    def check_failures(self) -> list[str]:
        bad = []
        for name in self.asserted:
            if name == "det_partial_sq":
                if self.det != self.det_partial_sq:
                    bad.append(name)
            elif getattr(self, name) is not True:
                bad.append(name)
        return bad


@dataclass
class BatchReport:
    rows: list[BatchRow]

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skip": 0, "error": 0}
        for r in self.rows:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        c = self.counts
        return c["fail"] == 0 and c["error"] == 0


@dataclass(frozen=True)
class Construction:
    """One batch entry: a label, a way to build it, and what to assert."""

    label: str
    kind: str  # braid, rosette, template, pd, dt, half
    payload: tuple


def _evaluate(entry: Construction, catalog_file: str | None) -> BatchRow:
    from . import constructors as C
    from .codes import parse_pd

    row = BatchRow(entry.label)
    try:
        partial = None
        rho = None
        asserted: tuple[str, ...] = ()
        if entry.kind == "braid":
            w = C.parse_braid(entry.payload[0])
            d = C.braid_closure(w)
        elif entry.kind == "rosette":
            d = C.rosette(int(entry.payload[0]))
            asserted = ("jones_palindromic",)
        elif entry.kind == "pd":
            d = parse_pd(entry.payload[0])
        elif entry.kind == "dt":
            d = from_dt(parse_dt(entry.payload[0]))
        elif entry.kind == "half":
            h = C.HalfDiagram.parse(entry.payload[0])
            d = C.symmetric_union(h, entry.payload[1])
            partial = C.partial_knot(h)
            asserted = ("det_partial_sq",)
        elif entry.kind == "template":
            t, spec = entry.payload
            ex = C.expand_almost(t, spec, allow_multiple=True) if spec.switches else C.expand_template(t, spec)
            d = ex.diagram
            rho = ex.rho
            asserted = ("spa_certificate", "jones_palindromic", "alex_square")
            if not spec.switches:
                partial = ex.partial_knot()
                asserted += ("det_partial_sq",)
        else:
            raise ValueError(f"unknown entry kind {entry.kind!r}")
        d.check()
        if not d.is_knot:
            row.crossings = len(d.crossings)
            row.status = "skip"
            row.message = f"not a knot: diagram has {d.n_components} components"
            return row
        row.crossings = len(d.crossings)
        rep = check_amphicheiral_necessary(d)
        row.det = abs(rep.alexander(-1))
        row.alex_square = rep.alexander_square
        row.jones_palindromic = rep.jones_palindromic
        if partial is not None:
            row.det_partial_sq = determinant(partial) ** 2
        if rho is not None:
            row.spa_certificate = has_spa_certificate(d, rho)
        if len(d.crossings) <= 18:
            cat = load_catalog(catalog_file)
            row.candidates = [str(c) for c in identify(d, cat)]
        row.asserted = asserted
        bad = row.check_failures()
        if bad:
            row.status = "fail"
            row.message = "failed: " + ", ".join(bad)
    except DiagramError as e:
        msg = str(e)
        row.status = "skip" if msg.startswith(("not a knot", "multi-component")) else "error"
        row.message = msg
    except Exception as e:  # noqa: BLE001 - one bad entry must not stop the batch
        row.status = "error"
        row.message = f"{type(e).__name__}: {e}"
    return row


def batch_verify(entries: Sequence[Construction], jobs: int = 1, catalog_file: str | None = None) -> BatchReport:
    """Evaluate every entry; rows come back in input order for any ``jobs``."""
    entries = list(entries)
    if jobs <= 1 or len(entries) < 2:
        rows = [_evaluate(e, catalog_file) for e in entries]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_evaluate, entries, [catalog_file] * len(entries)))
    return BatchReport(rows)
