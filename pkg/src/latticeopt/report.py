"""Report artifacts: CSV vertex/facet tables, OFF meshes and matplotlib figures.

Unbounded polyhedra are clipped to a box before drawing. CSV output keeps
exact rationals; OFF and the figures are float renderings and say so.
"""

from __future__ import annotations

import csv
import math
import os
from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from mpl_toolkits.mplot3d.art3d import Poly3DCollection  # noqa: E402

from .exact_geom import HRep, VRep, dot, h_to_v, unit  # noqa: E402
from .lattice_sets import UpperSet  # noqa: E402
from .jsonio import fmt  # noqa: E402

OFF_DIGITS = 15


def _f(x) -> float:
    return float(Fraction(x))


def bounding_box(points: Sequence, pad=1, extra=None) -> tuple:
    """Box around the points, padded by ``pad`` on every side (and by ``extra`` on top)."""
    q = len(points[0])
    lo = [min(p[i] for p in points) - pad for i in range(q)]
    hi = [max(p[i] for p in points) + pad + (extra or 0) for i in range(q)]
    return tuple(Fraction(x) for x in lo), tuple(Fraction(x) for x in hi)


def clip(h: HRep, box: tuple) -> VRep:
    lo, hi = box
    q = h.dim
    rows = list(h.ineqs)
    for i in range(q):
        e = unit(q, i)
        rows.append((e, lo[i]))
        rows.append((tuple(-x for x in e), -hi[i]))
    return h_to_v(HRep(q, tuple(rows)))


def _order_polygon(pts2d):
    cx = sum(p[0] for p in pts2d) / len(pts2d)
    cy = sum(p[1] for p in pts2d) / len(pts2d)
    return sorted(range(len(pts2d)), key=lambda i: math.atan2(pts2d[i][1] - cy, pts2d[i][0] - cx))


def faces_3d(h: HRep, v: VRep) -> list:
    """Vertex index cycles for each facet of a bounded 3-polytope."""
    pts = list(v.points)
    faces = []
    for a, b in h.ineqs:
        idx = [i for i, p in enumerate(pts) if dot(a, p) == b]
        if len(idx) < 3:
            continue
        # project onto the two coordinates the normal leans on least
        drop = max(range(3), key=lambda k: abs(a[k]))
        keep = [k for k in range(3) if k != drop]
        proj = [(_f(pts[i][keep[0]]), _f(pts[i][keep[1]])) for i in idx]
        faces.append([idx[j] for j in _order_polygon(proj)])
    return faces


def clipped_mesh(h: HRep, box: tuple) -> tuple[list, list]:
    """(vertices, faces) of h ∩ box; faces index into vertices."""
    v = clip(h, box)
    if not v.points:
        return [], []
    q = h.dim
    lo, hi = box
    full = HRep(q, h.ineqs + tuple((unit(q, i), lo[i]) for i in range(q)) +
                tuple((tuple(-x for x in unit(q, i)), -hi[i]) for i in range(q)))
    pts = list(v.points)
    if q == 2:
        order = _order_polygon([(_f(p[0]), _f(p[1])) for p in pts])
        return pts, [order]
    if q == 3:
        return pts, faces_3d(full, v)
    raise ValueError("meshes are only built in two or three dimensions")


def write_off(path: str, vertices: Sequence, faces: Sequence) -> str:
    """OFF mesh; coordinates are rounded to 15 significant digits."""
    q = len(vertices[0]) if vertices else 3
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("OFF\n")
        fh.write(f"# lossy: true (rationals rounded to {OFF_DIGITS} significant digits)\n")
        fh.write(f"{len(vertices)} {len(faces)} 0\n")
        for p in vertices:
            coords = [format(_f(x), f".{OFF_DIGITS}g") for x in p] + (["0"] if q == 2 else [])
            fh.write(" ".join(coords) + "\n")
        for f in faces:
            fh.write(" ".join([str(len(f))] + [str(i) for i in f]) + "\n")
    return path


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> str:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(x) if isinstance(x, (Fraction, int)) and not isinstance(x, bool) else x for x in r])
    return path


def polyhedron_tables(outdir: str, stem: str, h: HRep, v: VRep) -> list:
    q = h.dim
    vrows = [("point",) + tuple(p) for p in v.points] + [("direction",) + tuple(d) for d in v.directions]
    frows = [tuple(a) + (b,) for a, b in h.ineqs]
    coords = [f"z{i + 1}" for i in range(q)]
    return [
        write_csv(os.path.join(outdir, f"{stem}_vertices.csv"), ["kind"] + coords, vrows),
        write_csv(os.path.join(outdir, f"{stem}_facets.csv"), [f"a{i + 1}" for i in range(q)] + ["b"], frows),
    ]


def _draw(ax, h: HRep, box, color, label, marks=()):
    pts, faces = clipped_mesh(h, box)
    if not pts:
        return
    q = h.dim
    if q == 2:
        poly = [(_f(pts[i][0]), _f(pts[i][1])) for i in faces[0]]
        ax.fill([p[0] for p in poly], [p[1] for p in poly], color=color, alpha=0.35, label=label, lw=0)
        ax.plot([p[0] for p in poly] + [poly[0][0]], [p[1] for p in poly] + [poly[0][1]], color=color, lw=1)
        if marks:
            ax.scatter([_f(m[0]) for m in marks], [_f(m[1]) for m in marks], color="k", s=14, zorder=3)
    else:
        polys = [[tuple(_f(x) for x in pts[i]) for i in f] for f in faces]
        ax.add_collection3d(Poly3DCollection(polys, facecolor=color, edgecolor="k", alpha=0.3, lw=0.5))
        if marks:
            ax.scatter([_f(m[0]) for m in marks], [_f(m[1]) for m in marks], [_f(m[2]) for m in marks],
                       color="k", s=10)
    ax.set_xlim(_f(box[0][0]), _f(box[1][0]))
    ax.set_ylim(_f(box[0][1]), _f(box[1][1]))
    if q == 3:
        ax.set_zlim(_f(box[0][2]), _f(box[1][2]))


def _figure(q: int):
    fig = plt.figure(figsize=(4.5, 4))
    ax = fig.add_subplot(111, projection="3d" if q == 3 else None)
    return fig, ax


def plot_polyhedron(path: str, h: HRep, v: VRep, box, title: str, color="tab:blue", marks=()) -> str:
    fig, ax = _figure(h.dim)
    _draw(ax, h, box, color, title, marks)
    ax.set_title(title, fontsize=10)
    ax.set_xlabel("$z_1$")
    ax.set_ylabel("$z_2$")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def export_polyhedron(outdir: str, stem: str, h: HRep, v: VRep, title: str, box=None,
                      color="tab:blue", marks=()) -> list:
    """CSV tables always; OFF and PNG in two or three dimensions."""
    os.makedirs(outdir, exist_ok=True)
    files = polyhedron_tables(outdir, stem, h, v)
    if h.dim in (2, 3) and v.points:
        if box is None:
            box = bounding_box(list(v.points) + list(marks))
        pts, faces = clipped_mesh(h, box)
        files.append(write_off(os.path.join(outdir, f"{stem}.off"), pts, faces))
        files.append(plot_polyhedron(os.path.join(outdir, f"{stem}.png"), h, v, box, title, color, marks))
    return files


def export_upper(outdir: str, stem: str, a: UpperSet, title: str, marks=()) -> list:
    if not a.is_proper:
        os.makedirs(outdir, exist_ok=True)
        return [write_csv(os.path.join(outdir, f"{stem}_kind.csv"), ["kind"], [[a.kind]])]
    box = bounding_box(list(a.vrep.points) + list(marks), extra=1)
    return export_polyhedron(outdir, stem, a.hrep, a.vrep, title, box=box, marks=marks)


def lvo_report(outdir: str, upper: UpperSet, dual_h: HRep | None = None, dual_v: VRep | None = None,
               images: Sequence = ()) -> list:
    files = export_upper(outdir, "upper_image", upper, "upper image", marks=images)
    if dual_h is not None and dual_v is not None and dual_v.points:
        q = dual_h.dim
        pts = list(dual_v.points)
        lo, hi = bounding_box(pts)
        lo = lo[:q - 1] + (lo[q - 1] - 1,)
        files += export_polyhedron(outdir, "geometric_dual", dual_h, dual_v, "geometric dual",
                                   box=(lo, hi), color="tab:orange")
    return files
