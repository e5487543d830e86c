#!/usr/bin/env python3
"""Writes the platonic-solid OFF fixtures under data/.

Faces are merged from coplanar hull facets and ordered counterclockwise seen
from outside. The cube uses a fixed labeling so that (v0, v5, v7) are the
three corners adjacent to v2.
"""
import itertools
import math
import pathlib

import numpy as np
from scipy.spatial import ConvexHull

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def polygon_faces(points):
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    groups = {}
    for simplex, eq in zip(hull.simplices, hull.equations):
        key = tuple(np.round(eq, 9))
        groups.setdefault(key, set()).update(int(i) for i in simplex)
    faces = []
    for key, verts in groups.items():
        n = np.array(key[:3])
        verts = list(verts)
        c = pts[verts].mean(axis=0)
        u = pts[verts[0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        ang = [math.atan2(np.dot(pts[v] - c, w), np.dot(pts[v] - c, u)) for v in verts]
        faces.append([v for _, v in sorted(zip(ang, verts))])
    faces.sort(key=lambda f: (min(f), f))
    return faces


def fmt(x):
    r = repr(float(x))
    return "0" if r in ("0.0", "-0.0") else r


def write(name, points, faces, header):
    lines = ["OFF", f"# {header}", f"{len(points)} {len(faces)} 0"]
    lines += [" ".join(fmt(c) for c in p) for p in points]
    lines += [" ".join(str(i) for i in [len(f)] + list(f)) for f in faces]
    (OUT / name).write_text("\n".join(lines) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    cube = [(1, 1, 0), (1, 0, 0), (1, 1, 1), (0, 1, 0), (0, 0, 0), (0, 1, 1), (0, 0, 1), (1, 0, 1)]
    write("cube.off", cube, polygon_faces(cube), "unit cube")

    tet = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    write("tetrahedron.off", tet, polygon_faces(tet), "regular tetrahedron, edge 2*sqrt(2)")

    octa = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    write("octahedron.off", octa, polygon_faces(octa), "regular octahedron, edge sqrt(2)")

    phi = (1 + math.sqrt(5)) / 2
    dod = list(itertools.product((-1, 1), repeat=3))
    for a, b in itertools.product((-1, 1), repeat=2):
        dod += [(0, a / phi, b * phi), (a / phi, b * phi, 0), (a * phi, 0, b / phi)]
    write("dodecahedron.off", dod, polygon_faces(dod), "regular dodecahedron, edge 2/phi")


if __name__ == "__main__":
    main()
