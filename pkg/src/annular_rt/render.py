"""Static SVG pictures of matchings and tangle words on the annulus.

Outer label j sits at angle 2*pi*j/N, counterclockwise from the positive
x-axis.  A tangle word is drawn as concentric layers, one per factor, with
the domain on the inner circle.
"""

from __future__ import annotations

import math
from typing import Sequence

from .matchings import Matching
from .tangles import Generator, Kind, TangleWord

__all__ = ["render_matching", "render_word"]

SIZE = 400
C = SIZE / 2
R_IN, R_OUT = 60.0, 170.0
GAP = 0.18  # fraction of a strand left out under a crossing


def _xy(r: float, theta: float) -> tuple[float, float]:
    return C + r * math.cos(theta), C - r * math.sin(theta)


def _path(points: Sequence[tuple[float, float]], **attrs) -> str:
    d = "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in points)
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<path d="{d}" fill="none" stroke="black" stroke-width="2"{extra}/>'


def _polar_curve(r0, t0, r1, t1, steps=24, bulge=0.0):
    pts = []
    for s in range(steps + 1):
        u = s / steps
        r = r0 + (r1 - r0) * u + bulge * math.sin(math.pi * u)
        pts.append(_xy(r, t0 + (t1 - t0) * u))
    return pts


def _header() -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<circle cx="{C}" cy="{C}" r="{R_IN}" fill="none" stroke="#888" stroke-width="1"/>',
        f'<circle cx="{C}" cy="{C}" r="{R_OUT}" fill="none" stroke="#888" stroke-width="1"/>',
    ]


def _dot(r: float, theta: float, label: str | None = None, outward: float = 14) -> list[str]:
    x, y = _xy(r, theta)
    out = [f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>']
    if label is not None:
        lx, ly = _xy(r + outward, theta)
        out.append(f'<text x="{lx:.2f}" y="{ly + 4:.2f}" font-size="12" text-anchor="middle">{label}</text>')
    return out


def render_matching(alpha: Matching) -> str:
    N = alpha.size
    ang = lambda j: 2 * math.pi * j / N
    parts = _header()
    through = alpha.through
    for d in through:
        parts.append(_path([_xy(R_IN, ang(d)), _xy(R_OUT, ang(d))]))
        parts += _dot(R_IN, ang(d))
    depth = R_OUT - R_IN
    for a, b in alpha.cups:
        # draw on the side that holds no through point
        if any(a < d < b for d in through):
            t0, t1, span = ang(b), ang(a) + 2 * math.pi, N - (b - a)
        else:
            t0, t1, span = ang(a), ang(b), b - a
        bulge = -0.85 * depth * min(1.0, span / max(N - alpha.m, 1))
        parts.append(_path(_polar_curve(R_OUT, t0, R_OUT, t1, steps=40, bulge=bulge)))
    for j in range(1, N + 1):
        parts += _dot(R_OUT, ang(j), str(j))
    parts.append(f'<text x="8" y="16" font-size="12">{alpha}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_word(word: TangleWord) -> str:
    factors = list(word.application_order())
    L = max(len(factors), 1)
    radii = [R_IN + (R_OUT - R_IN) * b / L for b in range(L + 1)]
    ar = [word.domain_arity] + [g.codomain_arity for g in factors]
    parts = _header()

    def th(j: float, a: int) -> float:
        return 2 * math.pi * j / a if a else 0.0

    for layer, g in enumerate(factors):
        r0, r1 = radii[layer], radii[layer + 1]
        a0, a1 = ar[layer], ar[layer + 1]
        parts += _layer(g, r0, r1, a0, a1, th)
    for b in (0, len(factors)):
        a = ar[b]
        for j in range(1, a + 1):
            parts += _dot(radii[b], th(j, a), str(j), outward=14 if b else -14)
    parts.append(f'<text x="8" y="16" font-size="12">{word or "id"}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _strand(r0, t0, r1, t1, gap=False):
    # raw label angles interpolate monotonically, so strand order is kept
    pts = _polar_curve(r0, t0, r1, t1)
    if not gap:
        return [_path(pts)]
    k = len(pts)
    lo, hi = int(k * (0.5 - GAP)), int(k * (0.5 + GAP))
    return [_path(pts[:lo + 1]), _path(pts[hi:])]


def _layer(g: Generator, r0, r1, a0, a1, th) -> list[str]:
    out = []
    kind, n, i = g.kind, g.n, g.i
    if kind is Kind.CUP:
        for j in range(1, a0 + 1):
            out += _strand(r0, th(j, a0), r1, th(j if j < i else j + 2, a1))
        out.append(_path(_polar_curve(r1, th(i, a1), r1, th(i + 1, a1), bulge=-(r1 - r0) * 0.8)))
    elif kind is Kind.CAP:
        for j in range(1, a1 + 1):
            out += _strand(r0, th(j if j < i else j + 2, a0), r1, th(j, a1))
        out.append(_path(_polar_curve(r0, th(i, a0), r0, th(i + 1, a0), bulge=(r1 - r0) * 0.8)))
    elif kind is Kind.CROSS:
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                out += _strand(r0, th(j, n), r1, th(j, n))
        # sign 1: the strand from inner i to outer i+1 passes over
        over_up = g.sign == 1
        out += _strand(r0, th(i + 1, n), r1, th(i, n), gap=over_up)
        out += _strand(r0, th(i, n), r1, th(i + 1, n), gap=not over_up)
    elif kind is Kind.TWIST:
        for j in range(1, n + 1):
            out += _strand(r0, th(j, n), r1, th(j, n))
        x, y = _xy((r0 + r1) / 2, th(i, n))
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="6" fill="white" stroke="black" stroke-width="2"/>')
        out.append(f'<text x="{x + 8:.2f}" y="{y - 6:.2f}" font-size="10">{"+" if g.sign == 1 else "-"}</text>')
    elif kind in (Kind.ROT, Kind.ROT_INV):
        d = -1 if kind is Kind.ROT else 1
        for j in range(1, n + 1):
            out += _strand(r0, th(j, n), r1, th(j + d, n))
    elif kind in (Kind.WIND, Kind.WIND_INV):
        for j in range(1, n + 1):
            if j != i:
                out += _strand(r0, th(j, n), r1, th(j, n))
        turn = -2 * math.pi if kind is Kind.WIND else 2 * math.pi
        pts = _polar_curve(r0, th(i, n), r1, th(i, n) + turn, steps=120)
        others = [th(j, n) % (2 * math.pi) for j in range(1, n + 1) if j != i]
        seg: list = []
        for s, p in enumerate(pts):
            t = (th(i, n) + turn * s / 120) % (2 * math.pi)
            hidden = any(min(abs(t - o), 2 * math.pi - abs(t - o)) < 0.12 for o in others)
            if hidden:
                if len(seg) > 1:
                    out.append(_path(seg))
                seg = []
            else:
                seg.append(p)
        if len(seg) > 1:
            out.append(_path(seg))
    return out
