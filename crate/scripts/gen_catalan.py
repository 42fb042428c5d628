#!/usr/bin/env python3
"""Write Catalan solid vertex files as polar duals of the embedded Archimedean solids.

The dual vertices are the poles of the Archimedean face planes with respect to
the unit sphere. Orientation follows the Archimedean coordinates used by the
catalog, which matches the common public Catalan coordinate listings.

Usage: python3 scripts/gen_catalan.py [out_dir]
Requires: numpy, scipy.
"""
import itertools
import json
import os
import sys

import numpy as np
from scipy.spatial import ConvexHull

PHI = (1 + 5 ** 0.5) / 2
SQRT2 = 2 ** 0.5


def perms(v, kind):
    out = []
    for p in itertools.permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        if kind == "all" or (kind == "even") == (inv % 2 == 0):
            out.append(tuple(v[i] for i in p))
    return out


def gen(groups):
    pts = set()
    for v, kind in groups:
        for s in itertools.product([1, -1], repeat=3):
            signed = tuple(a * b for a, b in zip(v, s))
            for q in perms(signed, kind):
                pts.add(tuple(round(c, 12) + 0.0 for c in q))
    return np.array(sorted(pts))


ARCHIMEDEAN = {
    "cuboctahedron": [((1, 1, 0), "all")],
    "truncated cube": [((1, 1, SQRT2 - 1), "all")],
    "truncated octahedron": [((0, 1, 2), "all")],
    "rhombicuboctahedron": [((1, 1, 1 + SQRT2), "all")],
    "truncated cuboctahedron": [((1, 1 + SQRT2, 1 + 2 * SQRT2), "all")],
    "icosidodecahedron": [((0, 0, PHI), "all"), ((0.5, PHI / 2, PHI * PHI / 2), "even")],
    "truncated dodecahedron": [
        ((0, 1 / PHI, 2 + PHI), "even"),
        ((1 / PHI, PHI, 2 * PHI), "even"),
        ((PHI, 2, PHI + 1), "even"),
    ],
    "truncated icosahedron": [
        ((0, 1, 3 * PHI), "odd"),
        ((1, 2 + PHI, 2 * PHI), "odd"),
        ((PHI, 2, 2 * PHI + 1), "odd"),
    ],
    "truncated icosidodecahedron": [
        ((1 / PHI, 1 / PHI, 3 + PHI), "even"),
        ((2 / PHI, PHI, 1 + 2 * PHI), "even"),
        ((1 / PHI, PHI * PHI, -1 + 3 * PHI), "even"),
        ((2 * PHI - 1, 2, 2 + PHI), "even"),
        ((PHI, 3, 2 * PHI), "even"),
    ],
}

CATALAN = {
    "rhombic dodecahedron": "cuboctahedron",
    "triakis octahedron": "truncated cube",
    "tetrakis hexahedron": "truncated octahedron",
    "deltoidal icositetrahedron": "rhombicuboctahedron",
    "disdyakis dodecahedron": "truncated cuboctahedron",
    "rhombic triacontahedron": "icosidodecahedron",
    "triakis icosahedron": "truncated dodecahedron",
    "pentakis dodecahedron": "truncated icosahedron",
    "disdyakis triacontahedron": "truncated icosidodecahedron",
}


def polar_dual(pts):
    hull = ConvexHull(pts)
    poles = {}
    for eq in hull.equations:
        normal, offset = eq[:3], -eq[3]
        pole = normal / offset
        poles[tuple(np.round(pole, 9))] = pole
    return np.array(sorted(poles.values(), key=tuple))


def clean(c):
    c = float(c)
    return 0.0 if abs(c) < 1e-14 else c


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "data/catalan"
    os.makedirs(out_dir, exist_ok=True)
    for name, source in CATALAN.items():
        verts = polar_dual(gen(ARCHIMEDEAN[source]))
        rows = [
            "    [" + ", ".join(json.dumps(clean(c)) for c in v) + "]" for v in verts
        ]
        path = os.path.join(out_dir, name.replace(" ", "_") + ".json")
        with open(path, "w") as fh:
            fh.write("{\n")
            fh.write(f'  "name": {json.dumps(name)},\n')
            fh.write('  "point_symmetric": true,\n')
            fh.write('  "vertices": [\n' + ",\n".join(rows) + "\n  ]\n}\n")
        print(f"{path}: {len(verts)} vertices")


if __name__ == "__main__":
    main()
