"""Matplotlib figures for reports.

Everything here writes to files with the non-interactive Agg backend, so the
CLI can run headless.  The output format follows the file suffix.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .laurent import LaurentPoly  # noqa: E402
from .morse import Op, widths  # noqa: E402

# one colour per quadrant of a template expansion
QUADRANT_COLORS = {
    "I": "tab:blue",
    "II": "tab:orange",
    "III": "tab:green",
    "IV": "tab:red",
    "y+": "tab:purple",
    "y-": "tab:pink",
    "x-": "tab:brown",
    "x+": "tab:olive",
}


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def polynomial_figure(polys: Mapping[str, LaurentPoly], path, title: str = "") -> Path:
    """Stem plot of the coefficients of each polynomial, one panel each."""
    names = list(polys)
    fig, axes = plt.subplots(len(names), 1, figsize=(6, 2.2 * max(1, len(names))), squeeze=False)
    for ax, name in zip(axes[:, 0], names):
        p = polys[name]
        exps = sorted(e for e, _ in p.items()) or [0]
        vals = [p[e] for e in exps]
        ax.stem(exps, vals, basefmt="k-")
        ax.set_ylabel(name)
        ax.axhline(0, color="0.7", lw=0.5)
        ax.set_xticks(exps)
    axes[-1, 0].set_xlabel("exponent")
    if title:
        fig.suptitle(title)
    return _save(fig, path)


def batch_figure(rows: Sequence, path) -> Path:
    """Determinant against squared partial-knot determinant, plus row statuses."""
    fig, (ax, bx) = plt.subplots(1, 2, figsize=(9, 3.8))
    pts = [(r.det_partial_sq, r.det) for r in rows if r.det is not None and r.det_partial_sq is not None]
    if pts:
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=14)
        top = max(max(xs), max(ys), 1)
        ax.plot([1, top], [1, top], color="0.6", lw=0.8, ls="--")
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("det(J)^2")
    ax.set_ylabel("det(K)")
    ax.set_title("determinant law")
    statuses = ["pass", "fail", "skip", "error"]
    counts = [sum(r.status == s for r in rows) for s in statuses]
    bx.bar(statuses, counts, color=["tab:green", "tab:red", "0.6", "black"])
    bx.set_title(f"{len(rows)} entries")
    return _save(fig, path)


def morse_figure(word: Sequence[Op], path, tags: Sequence | None = None, title: str = "") -> Path:
    """Grid drawing of a Morse word, one row per piece, read top to bottom.

    Crossings are coloured by the first entry of their tag when tags are
    given (template expansions tag crossings with their quadrant).
    """
    ws = widths(word)
    fig, ax = plt.subplots(figsize=(0.5 * max(ws) + 1.5, 0.32 * len(word) + 1))
    seen = 0
    for row, (op, w) in enumerate(zip(word, ws)):
        y0, y1 = -row, -row - 1
        i = op.index
        if op.kind == "cap":
            for p in range(w):
                q = p + 2 if p >= i else p
                ax.plot([p, q], [y0, y1], "k-", lw=1)
            ax.plot([i, i + 0.5, i + 1], [y1, y0 - 0.35, y1], "k-", lw=1)
        elif op.kind == "cup":
            for p in range(w):
                if p in (i, i + 1):
                    continue
                q = p - 2 if p > i + 1 else p
                ax.plot([p, q], [y0, y1], "k-", lw=1)
            ax.plot([i, i + 0.5, i + 1], [y0, y1 + 0.35, y0], "k-", lw=1)
        else:
            for p in range(w):
                if p not in (i, i + 1):
                    ax.plot([p, p], [y0, y1], "k-", lw=1)
            color = "k"
            if tags is not None and seen < len(tags) and tags[seen]:
                color = QUADRANT_COLORS.get(tags[seen][0], "k")
            seen += 1
            over = [(i + 1, y0), (i, y1)] if op.sign > 0 else [(i, y0), (i + 1, y1)]
            under = [(i, y0), (i + 1, y1)] if op.sign > 0 else [(i + 1, y0), (i, y1)]
            (ax_, ay), (bx_, by) = under
            gap = 0.3
            ax.plot([ax_, ax_ + (bx_ - ax_) * gap], [ay, ay + (by - ay) * gap], "-", color=color, lw=1.4)
            ax.plot([bx_ - (bx_ - ax_) * gap, bx_], [by - (by - ay) * gap, by], "-", color=color, lw=1.4)
            ax.plot(*zip(*over), "-", color=color, lw=1.4)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    return _save(fig, path)
