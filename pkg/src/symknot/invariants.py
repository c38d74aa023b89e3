"""Kauffman bracket, Jones and Alexander polynomials, determinant.

Two bracket routes are provided: an exhaustive state sum (the oracle) and a
frontier contraction that absorbs one crossing at a time while tracking the
planar matching of the open arcs.  Both return exactly the same polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram import Diagram, DiagramError
from .laurent import DELTA, LaurentPoly

BRUTEFORCE_LIMIT = 20
EXHAUSTIVE_ORDER_LIMIT = 12


def _smoothings(arcs):
    """(A-pairing, B-pairing) of the four arcs of a PD crossing."""
    a, b, c, d = arcs
    return ((a, b), (c, d)), ((a, d), (b, c))


# ----------------------------------------------------------------------
# brute force

def bracket_bruteforce(d: Diagram) -> LaurentPoly:
    """Sum over all 2**n smoothings; loops counted with a union-find."""
    d.check()
    n = len(d.crossings)
    if n > BRUTEFORCE_LIMIT:
        raise ValueError(f"brute-force bracket limited to {BRUTEFORCE_LIMIT} crossings, got {n}")
    labels = d.arcs
    index = {a: i for i, a in enumerate(labels)}
    smooth = [[tuple((index[p], index[q]) for p, q in pairing) for pairing in _smoothings(c.arcs)]
              for c in d.crossings]
    m = len(labels)
    delta_pows: dict[int, LaurentPoly] = {}
    acc: dict[tuple[int, int], int] = {}  # (a_count, loops) -> multiplicity
    for state in range(1 << n):
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for i in range(n):
            bit = (state >> i) & 1
            if bit == 0:
                a_count += 1
            for p, q in smooth[i][bit]:
                rp, rq = find(p), find(q)
                if rp != rq:
                    parent[rp] = rq
        loops = len({find(x) for x in range(m)}) + d.free_loops
        key = (a_count, loops)
        acc[key] = acc.get(key, 0) + 1
    total = LaurentPoly()
    for (a_count, loops), mult in acc.items():
        if loops - 1 not in delta_pows:
            delta_pows[loops - 1] = DELTA ** (loops - 1)
        total = total + delta_pows[loops - 1].shift(a_count - (n - a_count)) * mult
    return total


# ----------------------------------------------------------------------
# contraction

def _frontier_sizes(crossings, order):
    seen: dict[int, int] = {}
    sizes = []
    width = 0
    for i in order:
        for a in crossings[i]:
            k = seen.get(a, 0) + 1
            seen[a] = k
            width += 1 if k == 1 else -1
        sizes.append(width)
    return sizes


def contraction_order(d: Diagram) -> list[int]:
    """Crossing order keeping the open-arc frontier small.

    Exact minimax search over subsets for small diagrams, greedy otherwise.
    Ties go to the lowest crossing index, so the order is deterministic.
    """
    xs = [c.arcs for c in d.crossings]
    n = len(xs)
    if n == 0:
        return []
    if n <= EXHAUSTIVE_ORDER_LIMIT:
        return _exhaustive_order(xs)
    return _greedy_order(xs)


def _greedy_order(xs):
    n = len(xs)
    count: dict[int, int] = {}
    order = []
    remaining = set(range(n))
    width = 0
    nbrs = {}
    for i, c in enumerate(xs):
        for a in c:
            nbrs.setdefault(a, set()).add(i)
    while remaining:
        best = None
        cand = set()
        for a, k in count.items():
            if k == 1:
                cand |= nbrs[a] & remaining
        if not cand:
            cand = {min(remaining)}
        for i in sorted(cand):
            delta = 0
            local: dict[int, int] = {}
            for a in xs[i]:
                local[a] = local.get(a, 0) + 1
            for a, k in local.items():
                before = count.get(a, 0)
                after = before + k
                delta += (1 if after == 1 else 0) - (1 if before == 1 else 0)
            key = (delta, i)
            if best is None or key < best[0]:
                best = (key, i)
        i = best[1]
        for a in xs[i]:
            count[a] = count.get(a, 0) + 1
        width += best[0][0]
        order.append(i)
        remaining.discard(i)
    return order


def _exhaustive_order(xs):
    n = len(xs)
    arc_mask: dict[int, int] = {}
    for i, c in enumerate(xs):
        for a in c:
            arc_mask[a] = arc_mask.get(a, 0) | (1 << i)
    masks = list(arc_mask.values())

    def width(S):
        w = 0
        for m in masks:
            inter = m & S
            if inter and inter != m:
                w += 1
        return w

    full = (1 << n) - 1
    # best[S] = (max width along the best path to S, sum of widths)
    best = {0: (0, 0, None, None)}
    for S in range(1 << n):
        if S not in best:
            continue
        mx, sm, _, _ = best[S]
        for i in range(n):
            if S >> i & 1:
                continue
            T = S | (1 << i)
            w = width(T)
            cand = (max(mx, w), sm + w, S, i)
            old = best.get(T)
            if old is None or cand[:2] < old[:2]:
                best[T] = cand
    order = []
    S = full
    while S:
        _, _, prev, i = best[S]
        order.append(i)
        S = prev
    return order[::-1]


def bracket_contract(d: Diagram, order: list[int] | None = None) -> LaurentPoly:
    """Kauffman bracket by frontier contraction.

    The state maps a planar matching of the open arcs to a polynomial in A.
    Each crossing contributes its A- and B-smoothing; closed loops multiply
    the coefficient by the loop value.  The final sum is divided by one loop.
    """
    d.check()
    xs = [c.arcs for c in d.crossings]
    if not xs:
        return DELTA ** (d.free_loops - 1)
    if order is None:
        order = contraction_order(d)
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    delta_cache = {0: {0: 1}}

    def dpow(k):
        if k not in delta_cache:
            delta_cache[k] = (DELTA ** k).coeffs
        return delta_cache[k]

    for i in order:
        arcs = xs[i]
        smooth = _smoothings(arcs)
        new_states: dict[tuple, dict[int, int]] = {}
        for key, poly in states.items():
            partner = {}
            for p, q in key:
                partner[p] = q
                partner[q] = p
            for shift, pairing in ((1, smooth[0]), (-1, smooth[1])):
                pt = dict(partner)
                loops = 0
                for u, v in pairing:
                    if u == v:
                        loops += 1
                        continue
                    iu, iv = u in pt, v in pt
                    if iu and iv:
                        pu, pv = pt.pop(u), pt.pop(v)
                        if pu == v:
                            loops += 1
                        else:
                            pt[pu] = pv
                            pt[pv] = pu
                    elif iu:
                        pu = pt.pop(u)
                        pt[pu] = v
                        pt[v] = pu
                    elif iv:
                        pv = pt.pop(v)
                        pt[pv] = u
                        pt[u] = pv
                    else:
                        pt[u] = v
                        pt[v] = u
                nk = tuple(sorted((p, q) for p, q in pt.items() if p < q))
                target = new_states.setdefault(nk, {})
                dp = dpow(loops)
                for e, c in poly.items():
                    for e2, c2 in dp.items():
                        ee = e + shift + e2
                        target[ee] = target.get(ee, 0) + c * c2
        states = {k: {e: c for e, c in v.items() if c} for k, v in new_states.items()}
    total = LaurentPoly(states.get((), {}))
    # every final state closed at least one loop; the bracket counts loops - 1
    total = total.exact_div(DELTA)
    if d.free_loops:
        total = total * DELTA ** d.free_loops
    return total


def bracket(d: Diagram) -> LaurentPoly:
    return bracket_contract(d)


# ----------------------------------------------------------------------
# Jones

@dataclass(frozen=True)
class BracketResult:
    bracket: LaurentPoly  # in A
    writhe: int
    jones: LaurentPoly  # in q = t**(1/2)

    @property
    def jones_t(self) -> LaurentPoly:
        """V in the usual variable t (knots only; exponents are even in q)."""
        return self.jones.divide_exponents(2)


def jones_from_bracket(br: LaurentPoly, writhe: int) -> LaurentPoly:
    """(-A^3)^(-w) <K>, then A = q^(-1/2)."""
    sign = -1 if writhe % 2 else 1
    f = br.shift(-3 * writhe) * sign
    out = {}
    for e, c in f.items():
        if e % 2:
            raise AssertionError(f"half-integral q exponent from A^{e}")
        out[-e // 2] = c
    return LaurentPoly(out)


def jones(d: Diagram, method: str = "contract") -> BracketResult:
    d.check()
    if not d.is_knot:
        raise DiagramError(f"Jones polynomial requires a knot; diagram has {d.n_components} components")
    br = bracket_contract(d) if method == "contract" else bracket_bruteforce(d)
    w = d.writhe
    return BracketResult(br, w, jones_from_bracket(br, w))


# ----------------------------------------------------------------------
# Alexander

@dataclass(frozen=True)
class AlexanderResult:
    delta: LaurentPoly

    @property
    def determinant(self) -> int:
        return abs(self.delta(-1))


def alexander_matrix(d: Diagram) -> list[list[LaurentPoly]]:
    """Abelianized Fox Jacobian of the Wirtinger presentation.

    Rows are crossings, columns over-arcs (generators).  Entries are
    Laurent polynomials in t.
    """
    d.check()
    xs = d.crossings
    # over-arc classes: b ~ d at every crossing
    parent = {a: a for a in d.arc_slots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in xs:
        rb, rd = find(c.arcs[1]), find(c.arcs[3])
        if rb != rd:
            parent[rb] = rd
    gens = sorted({find(a) for a in d.arc_slots})
    col = {g: j for j, g in enumerate(gens)}
    t = LaurentPoly({1: 1})
    tinv = LaurentPoly({-1: 1})
    one = LaurentPoly({0: 1})
    rows = []
    for c, s in zip(xs, d.strands):
        row = [LaurentPoly() for _ in gens]
        k = col[find(s.over_in)]
        i = col[find(s.under_in)]
        j = col[find(s.under_out)]
        if s.sign > 0:
            # x_j = x_k x_i x_k^-1
            row[k] = row[k] + (one - t)
            row[i] = row[i] + t
        else:
            # x_j = x_k^-1 x_i x_k
            row[k] = row[k] + (one - tinv)
            row[i] = row[i] + tinv
        row[j] = row[j] - one
        rows.append(row)
    return rows


def _poly_det_bareiss(mat: list[list[list[int]]]) -> list[int]:
    """Fraction-free determinant of a matrix of dense Z[t] polynomials."""
    n = len(mat)
    if n == 0:
        return [1]
    M = [[list(e) for e in row] for row in mat]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not any(M[k][k]):
            for r in range(k + 1, n):
                if any(M[r][k]):
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return [0]
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _psub(_pmul(M[i][j], pivot), _pmul(M[i][k], M[k][j]))
                q = _pdiv(num, prev)
                M[i][j] = q
        prev = pivot
    det = M[n - 1][n - 1]
    return [sign * c for c in det]


def _to_dense(p: LaurentPoly) -> list[int]:
    """Coefficients from degree 0 upward (p must have no negative exponents)."""
    if not p:
        return []
    return [0] * p.min_exp + p.dense()


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _pdiv(num, den):
    from .laurent import _dense_exact_div

    if not num:
        return []
    den = _trim(list(den))
    q = _dense_exact_div(num, den)
    if q is None:
        raise ArithmeticError("Bareiss division was not exact")
    return _trim(q)


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Shift to the palindromic position and fix the sign so that p(1) = 1."""
    if not p:
        raise ArithmeticError("Alexander polynomial vanished (split link?)")
    if p.span % 2:
        raise ArithmeticError("Alexander polynomial has odd span")
    p = p.shift(-(p.min_exp + p.max_exp) // 2)
    v = p(1)
    if v < 0:
        p = -p
    return p


def alexander(d: Diagram) -> AlexanderResult:
    d.check()
    if not d.is_knot:
        raise DiagramError(f"Alexander polynomial requires a knot; diagram has {d.n_components} components")
    if not d.crossings:
        return AlexanderResult(LaurentPoly({0: 1}))
    rows = alexander_matrix(d)
    n = len(rows)
    minor = [row[: n - 1] for row in rows[: n - 1]]
    # each row is multiplied by a unit so its entries are genuine polynomials
    dense = []
    for row in minor:
        lo = min((e.min_exp for e in row if e), default=0)
        dense.append([_to_dense(e.shift(-lo)) for e in row])
    det = LaurentPoly.from_list(_poly_det_bareiss(dense))
    delta = normalize_alexander(det)
    if delta(1) != 1:
        raise ArithmeticError(f"Alexander normalization failed: Delta(1) = {delta(1)}")
    return AlexanderResult(delta)


# ----------------------------------------------------------------------
# Goeritz

@dataclass(frozen=True)
class GoeritzMatrix:
    matrix: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrix)

    def det(self) -> int:
        return int_det(self.matrix)


def int_det(m) -> int:
    """Bareiss determinant over the integers."""
    M = [list(r) for r in m]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def checkerboard(d: Diagram) -> list[int]:
    """Two-colouring of the faces (0/1) so that faces sharing an arc differ."""
    faces = d.faces
    fid = d.face_of_corner()
    nf = len(faces)
    adj = [set() for _ in range(nf)]
    for i in range(len(d.crossings)):
        for k in range(4):
            f1 = fid[(i, k)]
            f2 = fid[(i, (k + 1) % 4)]
            adj[f1].add(f2)
            adj[f2].add(f1)
    color = [-1] * nf
    for s in range(nf):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if color[g] == -1:
                    color[g] = 1 - color[f]
                    stack.append(g)
                elif color[g] == color[f]:
                    raise AssertionError("checkerboard colouring failed: diagram is not planar")
    return color


def goeritz(d: Diagram) -> GoeritzMatrix:
    """Reduced Goeritz matrix on the faces of colour 0 (one face deleted)."""
    d.check()
    if not d.is_knot:
        raise DiagramError("Goeritz matrix requires a knot")
    if not d.crossings:
        raise DiagramError("Goeritz matrix requires at least one crossing")
    color = checkerboard(d)
    fid = d.face_of_corner()
    white = sorted({f for f, c in enumerate(color) if c == 0})
    idx = {f: j for j, f in enumerate(white)}
    m = len(white)
    G = [[0] * m for _ in range(m)]
    for i in range(len(d.crossings)):
        # corners 1 and 3 are the regions merged by the A-smoothing
        if color[fid[(i, 1)]] == 0:
            f1, f2, eta = fid[(i, 1)], fid[(i, 3)], 1
        else:
            f1, f2, eta = fid[(i, 0)], fid[(i, 2)], -1
        if f1 == f2:
            continue
        a, b = idx[f1], idx[f2]
        G[a][b] -= eta
        G[b][a] -= eta
        G[a][a] += eta
        G[b][b] += eta
    reduced = tuple(tuple(row[1:]) for row in G[1:])
    return GoeritzMatrix(reduced)


def determinant(d: Diagram) -> int:
    """|Delta(-1)|."""
    return alexander(d).determinant


def determinant_goeritz(d: Diagram) -> int:
    d.require_knot()
    if not d.crossings:
        return 1
    return abs(goeritz(d).det())
