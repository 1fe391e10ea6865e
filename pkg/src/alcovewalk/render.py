"""SVG pictures of alcove walks for rank 1 and rank 2 data.

Each sheet pi_j A^+ visited by a walk gets its own panel; panels are stacked
top to bottom.  Hyperplanes carry their affine coroot label and a +/- mark
on each side (periodic orientation).  Crossings are straight segments
between alcove centres, folds are hooks that touch the folding wall and come
back; grey folds are drawn grey.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .affine import AffineGroup
from .rootdata import AffineCoroot, PreconditionError, RootDatum
from .walks import AlcoveWalk

UNIT = 80.0
PAD = 40.0


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Plane:
    """Euclidean picture of weight space from a W-invariant form."""

    def __init__(self, D: RootDatum):
        n = D.rank
        cor = D.positive_coroots
        gram = [[float(sum(c[i] * c[j] for c in cor)) for j in range(n)] for i in range(n)]
        # Cholesky factor L with gram = L L^T; a point x maps to L^T x
        L = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                s = gram[i][j] - sum(L[i][k] * L[j][k] for k in range(j))
                L[i][j] = math.sqrt(s) if i == j else s / L[j][j]
        self.L = L
        self.n = n
        scale = max(abs(x) for row in L for x in row)
        self.L = [[x / scale for x in row] for row in L]

    def point(self, x) -> tuple[float, ...]:
        n, L = self.n, self.L
        return tuple(sum(L[i][k] * float(x[i]) for i in range(n)) for k in range(n))

    def normal(self, cv) -> tuple[float, ...]:
        """Gradient of <x, cv> in picture coordinates, i.e. L^{-1} cv."""
        n, L = self.n, self.L
        out = [0.0] * n
        for i in range(n):
            out[i] = (float(cv[i]) - sum(L[i][k] * out[k] for k in range(i))) / L[i][i]
        return tuple(out)


def _clip(p, d, box):
    """Clip the line p + s d to the box (x0, y0, x1, y1); None if it misses."""
    lo, hi = -1e9, 1e9
    for k in range(2):
        a, b = box[k], box[k + 2]
        if abs(d[k]) < 1e-12:
            if not a <= p[k] <= b:
                return None
            continue
        s1, s2 = (a - p[k]) / d[k], (b - p[k]) / d[k]
        lo, hi = max(lo, min(s1, s2)), min(hi, max(s1, s2))
    if lo >= hi:
        return None
    return (p[0] + lo * d[0], p[1] + lo * d[1]), (p[0] + hi * d[0], p[1] + hi * d[1])


class _Canvas:
    def __init__(self):
        self.items: list[str] = []
        self.width = 0.0
        self.height = 0.0

    def line(self, a, b, cls):
        self.items.append(f'<line class="{cls}" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(b[1])}"/>')

    def path(self, pts, cls):
        d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts)
        self.items.append(f'<path class="{cls}" d="{d}"/>')

    def text(self, p, s, cls, anchor="middle"):
        self.items.append(f'<text class="{cls}" x="{_fmt(p[0])}" y="{_fmt(p[1])}" text-anchor="{anchor}">{escape(s)}</text>')

    def dot(self, p, cls):
        self.items.append(f'<circle class="{cls}" cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="3"/>')

    def svg(self) -> str:
        style = (
            ".wall{stroke:#999;stroke-width:1}"
            ".walk{stroke:#000;stroke-width:2;fill:none}"
            ".grey{stroke:#888;stroke-width:2;fill:none;stroke-dasharray:4 2}"
            ".jump{stroke:#000;stroke-width:1;fill:none;stroke-dasharray:2 3}"
            ".label{font:10px sans-serif;fill:#555}"
            ".sign{font:9px sans-serif;fill:#c33}"
            ".title{font:12px sans-serif}"
            ".start{fill:#fff;stroke:#000}.end{fill:#000}"
        )
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(self.width)}" height="{_fmt(self.height)}" '
            f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">'
        )
        return "\n".join([head, f"<style>{style}</style>", *self.items, "</svg>"]) + "\n"


def _sheet_runs(G: AffineGroup, h: AlcoveWalk):
    """Split a walk into (sheet, [(alcove, step or None)]) runs; sheet steps start a new run."""
    runs = []
    cur = [(h.start, None)]
    sheet = G.sheet(h.start)
    for s in h.steps:
        if s.kind == "sheet":
            runs.append((sheet, cur))
            sheet = G.sheet(s.after)
            cur = [(s.after, None)]
        else:
            cur.append((s.after, s))
    runs.append((sheet, cur))
    return runs


def _walls_between(D: RootDatum, pts, cv) -> range:
    """Integer levels c of hyperplanes <x, cv> = c met by the bounding range of the points."""
    vals = [D.pairing(p, cv) for p in pts]
    return range(math.floor(min(vals)) - 1, math.ceil(max(vals)) + 2)


def _fold_hook(P, wall_point, toward=0.85):
    Q = tuple(p + toward * (w - p) for p, w in zip(P, wall_point))
    return Q


def _panel_rank2(cv: _Canvas, D, G, plane, run, top, title):
    pts_w = [G.barycenter(a) for a, _ in run]
    pts = [plane.point(x) for x in pts_w]
    xs = [p[0] for p in pts]
    ys = [-p[1] for p in pts]
    box = (min(xs) - 0.9, min(ys) - 0.9, max(xs) + 0.9, max(ys) + 0.9)
    ox = PAD - box[0] * UNIT
    oy = top + PAD - box[1] * UNIT

    def px(p):
        return (ox + p[0] * UNIT, oy - p[1] * UNIT)

    cv.text((PAD, top + 16), title, "title", anchor="start")
    placed: list[tuple[float, float]] = []
    for c in D.positive_coroots:
        nrm = plane.normal(c)
        nn = sum(x * x for x in nrm)
        d = (-nrm[1], nrm[0])
        for level in _walls_between(D, pts_w, c):
            base = (level * nrm[0] / nn, level * nrm[1] / nn)
            seg = _clip((base[0], -base[1]), (d[0], -d[1]), box)
            if seg is None:
                continue
            a, b = ((s[0], -s[1]) for s in seg)
            cv.line(px(a), px(b), "wall")
            label = str(AffineCoroot(tuple(c), -level))
            for end in (px(b), px(a)):
                if all(abs(end[0] - x) > 70 or abs(end[1] - y) > 12 for x, y in placed):
                    placed.append(end)
                    cv.text(end, f"H[{label}]", "label", anchor="start")
                    break
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            off = 0.12 / math.sqrt(nn)
            cv.text(px((mid[0] + off * nrm[0], mid[1] + off * nrm[1])), "+", "sign")
            cv.text(px((mid[0] - off * nrm[0], mid[1] - off * nrm[1])), "−", "sign")
    height = (box[3] - box[1]) * UNIT + 2 * PAD
    width = (box[2] - box[0]) * UNIT + 2 * PAD + 80
    pos = px(pts[0])
    cv.dot(pos, "start")
    for (a, step), p in zip(run[1:], pts[1:]):
        if step.kind == "cross":
            q = px(p)
            cv.line(pos, q, "walk")
            pos = q
        else:
            wall = G.wall(step.before, step.gen)
            nrm = plane.normal(wall.finite)
            nn = sum(x * x for x in nrm)
            cur = plane.point(G.barycenter(step.before))
            val = sum(x * y for x, y in zip(cur, nrm)) + wall.level
            foot = tuple(x - val * y / nn for x, y in zip(cur, nrm))
            cls = "grey" if step.color == "grey" else "walk"
            cv.path([pos, px(_fold_hook(cur, foot)), pos], cls)
    cv.dot(pos, "end")
    return width, height, pos


def _panel_rank1(cv: _Canvas, D, G, run, top, title):
    vals = [float(G.barycenter(a)[0]) for a, _ in run]
    lo, hi = math.floor(min(vals)) - 1, math.ceil(max(vals)) + 1
    rows = len(run)
    step_h = 22.0
    ox = PAD - lo * UNIT
    y0 = top + PAD + 12

    def px(x, k):
        return (ox + x * UNIT, y0 + k * step_h)

    cv.text((PAD, top + 16), title, "title", anchor="start")
    for c in range(lo, hi + 1):
        a, b = px(c, -0.6), px(c, rows - 0.4)
        cv.line(a, b, "wall")
        label = str(AffineCoroot(tuple(D.positive_coroots[0]), -c))
        cv.text((a[0], a[1] - 4), f"H[{label}]", "label")
        cv.text((a[0] + 8, b[1] + 10), "+", "sign")
        cv.text((a[0] - 8, b[1] + 10), "−", "sign")
    pos = px(vals[0], 0)
    cv.dot(pos, "start")
    for k, ((a, step), x) in enumerate(zip(run[1:], vals[1:]), start=1):
        if step.kind == "cross":
            q = px(x, k)
            cv.line(pos, q, "walk")
        else:
            wall = G.wall(step.before, step.gen)
            level = -wall.level / wall.finite[0]
            cur = float(G.barycenter(step.before)[0])
            hook = px(cur + 0.85 * (level - cur), k - 0.5)
            q = px(x, k)
            cv.path([pos, hook, q], "grey" if step.color == "grey" else "walk")
        pos = q
    cv.dot(pos, "end")
    width = (hi - lo) * UNIT + 2 * PAD
    height = rows * step_h + 2 * PAD + 12
    return width, height, pos


def render_svg(D: RootDatum, G: AffineGroup, walks: list[AlcoveWalk]) -> str:
    """One SVG showing the given walks, one row of stacked sheet panels per walk."""
    if D.rank > 2:
        raise PreconditionError("render draws rank 1 and rank 2 data only")
    cv = _Canvas()
    plane = _Plane(D) if D.rank == 2 else None
    top = 0.0
    width = 0.0
    for h in walks:
        prev = None
        for sheet, run in _sheet_runs(G, h):
            name = "A+" if sheet == 0 else f"pi{sheet} A+"
            title = f"type {h.type}, start {G.format(h.start)}, mask {h.mask}, sheet {name}"
            if plane is None:
                w, ht, end = _panel_rank1(cv, D, G, run, top, title)
            else:
                w, ht, end = _panel_rank2(cv, D, G, plane, run, top, title)
            if prev is not None:
                cv.line(prev, (prev[0], top + PAD), "jump")
            prev = end
            top += ht
            width = max(width, w, PAD + 6.5 * len(title))
    cv.width = max(width, 200.0)
    cv.height = max(top, 60.0)
    return cv.svg()
