"""Command line interface.

Exit codes: 0 success, 1 a check failed (or the input is not what was asked
for), 2 usage or parse errors.  Text output is tab-delimited ``key<TAB>value``
lines; ``--json`` gives the same content as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    CATALOG_ENV,
    CertificateError,
    Construction,
    batch_verify,
    certify_spa,
    check_amphicheiral_necessary,
    identify,
    load_catalog,
)
from .codes import ParseError, emit_pd, from_dt, parse_dt, parse_pd
from .constructors import (
    HalfDiagram,
    TwistSpec,
    braid_closure,
    expand_almost,
    expand_template,
    load_template,
    parse_braid,
    rosette,
    shipped_template,
    shipped_templates,
)
from .diagram import Diagram, DiagramError
from .invariants import alexander, determinant_goeritz, jones
from .laurent import LaurentPoly
from .moves import random_sequence

OK, FAILED, USAGE = 0, 1, 2

INVARIANTS_SCHEMA = "symknot.invariants/1"
EXPAND_SCHEMA = "symknot.expand/1"
CHECK_SCHEMA = "symknot.check/1"
IDENTIFY_SCHEMA = "symknot.identify/1"
BATCH_SCHEMA = "symknot.batch/1"
FUZZ_SCHEMA = "symknot.fuzz/1"

_RHO_LINE = re.compile(r"^\s*#\s*rho\s*:(.*)$", re.M)


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------------
# input helpers


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def read_diagram_file(path: str) -> tuple[Diagram, tuple[int, ...] | None]:
    """PD text, plus the involution if an expansion embedded one."""
    text = _read_text(path)
    rho = None
    m = _RHO_LINE.search(text)
    if m:
        rho = tuple(int(v) for v in m.group(1).split())
    return parse_pd(text).check(), rho


def _add_source(p: argparse.ArgumentParser):
    p.add_argument("diagram", nargs="?", help="PD file ('-' for stdin)")
    p.add_argument("--braid", help="braid word, e.g. '3: 1 -2 1 -2'")
    p.add_argument("--dt", help="DT code, e.g. 'dt:(4 6 2)'")
    p.add_argument("--rosette", type=int, metavar="N", help="closure of (s1 s2^-1)^N")


def _load_source(args) -> tuple[Diagram, tuple[int, ...] | None]:
    given = [k for k in ("diagram", "braid", "dt", "rosette") if getattr(args, k) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one input: a PD file, --braid, --dt or --rosette")
    if args.diagram is not None:
        return read_diagram_file(args.diagram)
    if args.braid is not None:
        return braid_closure(parse_braid(args.braid)), None
    if args.dt is not None:
        return from_dt(parse_dt(args.dt)), None
    return rosette(args.rosette), None


def _resolve_template(name: str):
    p = Path(name)
    if p.exists():
        return load_template(p)
    try:
        return shipped_template(name)
    except KeyError:
        raise UsageError(f"no template file or shipped template named {name!r}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _rows(pairs) -> str:
    return "\n".join(f"{k}\t{v}" for k, v in pairs)


def _poly_json(p: LaurentPoly | None, var: str = "t"):
    if p is None:
        return None
    return {"text": p.to_string(var), "terms": p.serialize()}


def _mark(v) -> str:
    if v is None:
        return "n/a"
    return "pass" if v else "fail"


# ----------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    d, _ = _load_source(args)
    if args.knot_only and not d.is_knot:
        what = "multi-component rosette" if args.rosette or _is_rosette_word(args.braid) else "not a knot"
        raise DiagramError(f"{what}: diagram has {d.n_components} components")
    _emit(emit_pd(d), args.output)
    return OK


def _is_rosette_word(text: str | None) -> bool:
    if not text:
        return False
    w = parse_braid(text)
    letters = list(w.letters)
    return w.strands == 3 and len(letters) % 2 == 0 and letters == [1, -2] * (len(letters) // 2)


def _expansion_text(ex) -> str:
    lines = [
        f"# template: {ex.label}",
        f"# crossings: {len(ex.diagram.crossings)}",
        "# rho: " + " ".join(map(str, ex.rho)),
        "# certificate: " + ("ok" if _certificate_ok(ex.diagram, ex.rho) else "failed"),
        emit_pd(ex.diagram),
    ]
    return "\n".join(lines)


def _certificate_ok(d, rho) -> bool:
    try:
        certify_spa(d, rho)
        return True
    except CertificateError:
        return False


def cmd_expand(args) -> int:
    t = _resolve_template(args.template)
    if args.x is None or args.y is None:
        raise UsageError("expand needs both --x and --y (use \"\" for no slots)")
    spec = TwistSpec.parse(args.x, args.y, args.switch or ())
    if len(spec.x) != t.n_x or len(spec.y) != t.n_y:
        raise UsageError(f"template {t.name} takes {t.n_x} x twists and {t.n_y} y twists, "
                         f"got {len(spec.x)} and {len(spec.y)}")
    ex = expand_almost(t, spec) if spec.switches else expand_template(t, spec)
    if args.figures:
        from .plotting import morse_figure

        morse_figure(ex.word, Path(args.figures) / f"{_slug(ex.label)}.svg", ex.tags, title=ex.label)
    if args.json:
        body = {
            "schema": EXPAND_SCHEMA,
            "template": t.name,
            "x": list(spec.x),
            "y": list(spec.y),
            "switches": [f"{p}:{n}" for p, n in spec.switches],
            "crossings": len(ex.diagram.crossings),
            "pd": [list(c) for c in ex.diagram.pd],
            "rho": list(ex.rho),
            "certificate": _certificate_ok(ex.diagram, ex.rho),
            "tags": [list(tg) if tg else None for tg in ex.tags],
        }
        _emit(json.dumps(body, indent=2), args.output)
    else:
        _emit(_expansion_text(ex), args.output)
    return OK


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_")


def invariants_report(d: Diagram) -> dict:
    """Invariants of a knot diagram as a JSON-ready dict."""
    d.require_knot()
    br = jones(d)
    alex = alexander(d).delta
    return {
        "schema": INVARIANTS_SCHEMA,
        "crossings": len(d.crossings),
        "components": d.n_components,
        "writhe": br.writhe,
        "det": abs(alex(-1)),
        "det_goeritz": determinant_goeritz(d),
        "alexander": _poly_json(alex),
        "jones": _poly_json(br.jones, "q"),
        "jones_t": _poly_json(br.jones_t, "t"),
        "bracket": {"text": br.bracket.to_string("A"), "terms": br.bracket.serialize()},
    }


def cmd_invariants(args) -> int:
    d, _ = _load_source(args)
    rep = invariants_report(d)
    if args.figures:
        from .plotting import polynomial_figure

        polys = {"V(t)": jones(d).jones_t, "Delta(t)": alexander(d).delta}
        stem = Path(args.diagram).stem if args.diagram and args.diagram != "-" else "diagram"
        polynomial_figure(polys, Path(args.figures) / f"{stem}_invariants.png", title=stem)
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        print(_rows([
            ("crossings", rep["crossings"]),
            ("components", rep["components"]),
            ("writhe", rep["writhe"]),
            ("det", rep["det"]),
            ("det_goeritz", rep["det_goeritz"]),
            ("alexander", rep["alexander"]["text"]),
            ("jones", rep["jones"]["text"]),
            ("jones_t", rep["jones_t"]["text"]),
            ("bracket", rep["bracket"]["text"]),
        ]))
    return OK


def cmd_check(args) -> int:
    d, rho = _load_source(args)
    if args.rho:
        rho = tuple(int(v) for v in re.split(r"[\s,]+", args.rho.strip()) if v)
    d.require_knot()
    results: dict[str, bool | None] = {}
    detail: dict[str, object] = {}
    if args.spa or not args.partial:
        rep = check_amphicheiral_necessary(d)
        results["jones_palindromic"] = rep.jones_palindromic
        results["alexander_square"] = rep.alexander_square
        if rep.alexander_root is not None:
            detail["alexander_root"] = str(rep.alexander_root)
        if rho is not None:
            try:
                certify_spa(d, rho)
                results["spa_certificate"] = True
            except CertificateError as e:
                results["spa_certificate"] = False
                detail["certificate_failures"] = list(e.failures)
    if args.partial:
        j, _ = read_diagram_file(args.partial)
        dk, dj = abs(alexander(d).delta(-1)), abs(alexander(j.require_knot()).delta(-1))
        results["det_partial_sq"] = dk == dj * dj
        detail["det"] = dk
        detail["det_partial"] = dj
    ok = all(v is not False for v in results.values())
    if args.json:
        print(json.dumps({"schema": CHECK_SCHEMA, "checks": results, "detail": detail, "ok": ok}, indent=2))
    else:
        print(_rows([(k, _mark(v)) for k, v in results.items()] + list(detail.items())))
    return OK if ok else FAILED


def cmd_identify(args) -> int:
    d, _ = _load_source(args)
    d.require_knot()
    cat = load_catalog(args.catalog)
    cands = [str(c) for c in identify(d, cat)]
    if args.json:
        print(json.dumps({"schema": IDENTIFY_SCHEMA, "candidates": cands}, indent=2))
    else:
        print("\n".join(cands) if cands else "no catalog match")
    return OK if cands else FAILED


def parse_manifest_line(line: str, base: Path) -> Construction | None:
    """One construction per line; '#' starts a comment.

    ``braid:3: 1 -2``, ``rosette:5``, ``dt:(4 6 2)``, ``pd:FILE``,
    ``half:FILE y=1,2`` and ``template:NAME x=0,1 y=2 [switch=I,III:c1]``.
    """
    line = line.split("#", 1)[0].strip()
    if not line:
        return None
    kind, sep, rest = line.partition(":")
    if not sep:
        raise ParseError(f"manifest line {line!r} has no 'kind:' prefix")
    kind, rest = kind.strip(), rest.strip()
    if kind == "braid":
        parse_braid(rest)
        return Construction(line, "braid", (rest,))
    if kind == "rosette":
        return Construction(line, "rosette", (int(rest),))
    if kind == "dt":
        return Construction(line, "dt", ("dt:" + rest,))
    if kind == "pd":
        return Construction(line, "pd", (_read_text(str(base / rest)),))
    words = rest.split()
    if not words:
        raise ParseError(f"manifest line {line!r} names no file")
    opts = {}
    for w in words[1:]:
        k, eq, v = w.partition("=")
        if not eq or k not in ("x", "y", "switch"):
            raise ParseError(f"manifest option {w!r}; expected x=, y= or switch=")
        opts.setdefault(k, []).append(v)
    if kind == "half":
        path = base / words[0]
        h = HalfDiagram.parse(path.read_text())
        y = TwistSpec.parse("", ",".join(opts.get("y", []))).y
        return Construction(line, "half", (str(h), y))
    if kind == "template":
        t = _resolve_template(str(base / words[0])) if (base / words[0]).exists() else _resolve_template(words[0])
        spec = TwistSpec.parse(",".join(opts.get("x", [])), ",".join(opts.get("y", [])), opts.get("switch", []))
        return Construction(line, "template", (t, spec))
    raise ParseError(f"unknown manifest entry kind {kind!r}")


def read_manifest(path: str):
    base = Path(path).parent if path != "-" else Path(".")
    text = _read_text(path)
    for ln, line in enumerate(text.splitlines(), 1):
        try:
            entry = parse_manifest_line(line, base)
        except (ValueError, OSError) as e:
            raise ParseError(f"manifest line {ln}: {e}") from None
        if entry is not None:
            yield entry


BATCH_COLUMNS = ("input", "crossings", "det", "det_partial_sq", "alex_square",
                 "jones_palindromic", "spa_certificate", "status", "candidates")


def cmd_batch(args) -> int:
    entries = list(read_manifest(args.manifest))
    rep = batch_verify(entries, jobs=args.jobs, catalog_file=args.catalog)
    if args.figures:
        from .plotting import batch_figure

        batch_figure(rep.rows, Path(args.figures) / f"{Path(args.manifest).stem}_batch.png")
    if args.json:
        rows = []
        for r in rep.rows:
            body = r.as_json()
            body["status"] = r.status
            body["message"] = r.message
            rows.append(body)
        print(json.dumps({"schema": BATCH_SCHEMA, "rows": rows, "counts": rep.counts, "ok": rep.ok}, indent=2))
    else:
        print("\t".join(BATCH_COLUMNS))
        for r in rep.rows:
            vals = r.as_json()
            vals["status"] = r.status if not r.message else f"{r.status} ({r.message})"
            vals["candidates"] = "; ".join(r.candidates)
            print("\t".join("" if vals[c] is None else str(vals[c]) for c in BATCH_COLUMNS))
        c = rep.counts
        print(f"# pass {c['pass']}  fail {c['fail']}  skip {c['skip']}  error {c['error']}")
    return OK if rep.ok else FAILED


def fuzz_bases(count: int) -> list[Diagram]:
    """Catalog knots in file order, used when no diagram is given."""
    cat = load_catalog()
    return [from_dt(e.dt) for e in cat.entries[:count]]


def run_fuzz(bases, sequences: int, length: int, seed: int, max_crossings: int = 24) -> dict:
    rng = random.Random(seed)
    failures = []
    kinds: dict[str, int] = {}
    per_base = max(1, sequences // len(bases))
    done = 0
    for bi, base in enumerate(bases):
        ref = (determinant_goeritz(base), alexander(base).delta, jones(base).jones)
        for _ in range(per_base):
            d, moves = random_sequence(base, length, rng, max_crossings)
            for m in moves:
                kinds[m.kind] = kinds.get(m.kind, 0) + 1
            got = (determinant_goeritz(d), alexander(d).delta, jones(d).jones)
            done += 1
            if got != ref:
                failures.append({"base": bi, "moves": [str(m) for m in moves]})
    return {"schema": FUZZ_SCHEMA, "seed": seed, "sequences": done, "length": length,
            "bases": len(bases), "moves": dict(sorted(kinds.items())), "failures": failures}


def cmd_fuzz(args) -> int:
    given = [k for k in ("diagram", "braid", "dt", "rosette") if getattr(args, k) is not None]
    bases = [_load_source(args)[0]] if given else fuzz_bases(args.bases)
    for b in bases:
        b.require_knot()
    rep = run_fuzz(bases, args.sequences, args.length, args.seed)
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        print(_rows([("seed", rep["seed"]), ("bases", rep["bases"]), ("sequences", rep["sequences"]),
                     ("length", rep["length"]), ("failures", len(rep["failures"]))]))
    return OK if not rep["failures"] else FAILED


def cmd_templates(args) -> int:
    for t in shipped_templates():
        print(f"{t.name}\tx_slots={t.n_x}\ty_slots={t.n_y}\tquarter={t.quarter_size}\t{t.description}")
    return OK


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symknot", description="Symmetric knot diagrams and their invariants.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write the PD code of a braid closure, rosette or DT code")
    _add_source(b)
    b.add_argument("--knot-only", action="store_true", help="fail unless the result is a knot")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    e = sub.add_parser("expand", help="expand a template with twist numbers")
    e.add_argument("template", help="template file or shipped template name")
    e.add_argument("--x", help="x-axis twists, e.g. '0,0,3'")
    e.add_argument("--y", help="y-axis twists, e.g. '1'")
    e.add_argument("--switch", action="append", help="switch a symmetric pair, e.g. 'I,III:c1'")
    e.add_argument("--json", action="store_true")
    e.add_argument("--figures", metavar="DIR", help="write an SVG drawing of the expansion")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_expand)

    i = sub.add_parser("invariants", help="determinant, Alexander, Jones and bracket")
    _add_source(i)
    i.add_argument("--json", action="store_true")
    i.add_argument("--figures", metavar="DIR", help="write coefficient plots")
    i.set_defaults(func=cmd_invariants)

    c = sub.add_parser("check", help="necessary conditions for strong positive amphicheirality")
    _add_source(c)
    c.add_argument("--spa", action="store_true", help="Jones symmetry, square Alexander, certificate")
    c.add_argument("--rho", help="crossing involution, overriding one embedded in the file")
    c.add_argument("--partial", metavar="FILE", help="partial knot PD file for the determinant law")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("identify", help="match against the knot catalog")
    _add_source(d)
    d.add_argument("--catalog", help=f"catalog file (default: ${CATALOG_ENV} or the shipped one)")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_identify)

    t = sub.add_parser("batch", help="verify every construction in a manifest")
    t.add_argument("manifest")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--catalog")
    t.add_argument("--json", action="store_true")
    t.add_argument("--figures", metavar="DIR", help="write a summary figure")
    t.set_defaults(func=cmd_batch)

    f = sub.add_parser("fuzz", help="random Reidemeister sequences must keep the invariants")
    _add_source(f)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--sequences", type=int, default=100)
    f.add_argument("--length", type=int, default=8)
    f.add_argument("--bases", type=int, default=20, help="catalog knots to start from")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fuzz)

    ls = sub.add_parser("templates", help="list shipped templates")
    ls.set_defaults(func=cmd_templates)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except (UsageError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except DiagramError as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILED
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
