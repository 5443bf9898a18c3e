#!/usr/bin/env python3
"""Generate and verify the checked-in test fixtures.

Deterministic: fixed seeds, byte-stable output. Run from the repository root:

    python3 scripts/make_fixtures.py

Every mesh intended for circumcentric-dual operators is verified here to be
strictly Delaunay (positive dual edge lengths) and to satisfy the one-sided
condition on boundary edges (triangle circumcenter on the same side as the
opposite vertex). Topological fixtures are verified by dense rank.
"""

import os

import numpy as np
from scipy.spatial import Delaunay

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")


def fmt(x):
    return repr(float(x))


def write_rows(path, rows, formatter):
    with open(os.path.join(OUT, path), "w") as f:
        for row in rows:
            f.write(" ".join(formatter(v) for v in row) + "\n")


def write_mesh(name, vertices, triangles):
    write_rows(name + "_vertices.txt", vertices, fmt)
    write_rows(name + "_elements.txt", triangles, lambda v: str(int(v)))


def mesh_edges(triangles):
    edges = set()
    for t in triangles:
        a, b, c = sorted(t)
        edges.update([(a, b), (a, c), (b, c)])
    return sorted(edges)


def edge_triangle_map(triangles):
    m = {}
    for ti, t in enumerate(triangles):
        a, b, c = sorted(t)
        for e in [(a, b), (a, c), (b, c)]:
            m.setdefault(e, []).append(ti)
    return m


def angle_at(p, q, r):
    """Angle at vertex p of triangle (p, q, r)."""
    u, v = q - p, r - p
    c = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
    return np.arccos(np.clip(c, -1.0, 1.0))


def check_delaunay(vertices, triangles, name):
    """Strictly positive dual edge lengths and acute opposite angles on the
    boundary; these are exactly the conditions the dual-volume code enforces."""
    et = edge_triangle_map(triangles)
    margin_int, margin_bnd = np.inf, np.inf
    for (a, b), tris in et.items():
        assert len(tris) in (1, 2), f"{name}: edge {(a, b)} in {len(tris)} triangles"
        angles = []
        for ti in tris:
            opp = [v for v in triangles[ti] if v not in (a, b)][0]
            angles.append(angle_at(vertices[opp], vertices[a], vertices[b]))
        if len(tris) == 2:
            margin_int = min(margin_int, np.pi - sum(angles))
        else:
            margin_bnd = min(margin_bnd, np.pi / 2 - angles[0])
    assert margin_int > 1e-6, f"{name}: interior Delaunay margin {margin_int}"
    assert margin_bnd > 1e-6, f"{name}: boundary acuteness margin {margin_bnd}"
    return margin_int, margin_bnd


def betti(vertices_count, triangles):
    """b0, b1 over the reals by dense rank of the boundary operators."""
    edges = mesh_edges(triangles)
    eidx = {e: i for i, e in enumerate(edges)}
    d1 = np.zeros((vertices_count, len(edges)))
    for (a, b), i in eidx.items():
        d1[a, i] = -1.0
        d1[b, i] = 1.0
    d2 = np.zeros((len(edges), len(triangles)))
    for ti, t in enumerate(triangles):
        a, b, c = sorted(t)
        d2[eidx[(b, c)], ti] = 1.0
        d2[eidx[(a, c)], ti] = -1.0
        d2[eidx[(a, b)], ti] = 1.0
    r1 = np.linalg.matrix_rank(d1)
    r2 = np.linalg.matrix_rank(d2)
    b0 = vertices_count - r1
    b1 = len(edges) - r1 - r2
    return b0, b1


def compress(vertices, triangles):
    """Drop unused vertices and reindex; row order preserved."""
    used = sorted({v for t in triangles for v in t})
    remap = {v: i for i, v in enumerate(used)}
    return vertices[used], [[remap[v] for v in t] for t in triangles]


def fan():
    vertices = np.array([[0, 0], [1, 0], [2, 0], [1, 1], [2, 1]], dtype=float)
    triangles = [[0, 1, 3], [1, 2, 3], [2, 4, 3]]
    write_mesh("fan", vertices, triangles)


def ell_bitmap():
    with open(os.path.join(OUT, "ell_bitmap.txt"), "w") as f:
        f.write("0 1\n1 1\n")


def pisquare16():
    n = 16
    h = np.pi / n
    vertices = []
    grid = {}
    for j in range(n + 1):
        for i in range(n + 1):
            grid[(i, j)] = len(vertices)
            vertices.append([i * h, j * h])
    center = {}
    for j in range(n):
        for i in range(n):
            center[(i, j)] = len(vertices)
            vertices.append([(i + 0.5) * h, (j + 0.5) * h])
    triangles = []
    for j in range(n):
        for i in range(n):
            sw, se = grid[(i, j)], grid[(i + 1, j)]
            nw, ne = grid[(i, j + 1)], grid[(i + 1, j + 1)]
            c = center[(i, j)]
            triangles += [[sw, se, c], [se, ne, c], [ne, nw, c], [nw, sw, c]]
    vertices = np.array(vertices)
    assert len(vertices) == 545 and len(triangles) == 1024
    edges = mesh_edges(triangles)
    assert len(edges) == 1568
    et = edge_triangle_map(triangles)
    boundary_edges = [e for e, ts in et.items() if len(ts) == 1]
    assert len(boundary_edges) == 64
    on_boundary = {v for e in boundary_edges for v in e}
    assert len(vertices) - len(on_boundary) == 481
    write_mesh("pisquare16", vertices, triangles)


def darcy():
    per_side = 11
    side = np.linspace(0.0, 1.0, per_side)
    boundary = []
    for s in side[:-1]:
        boundary.append([s, 0.0])
    for s in side[:-1]:
        boundary.append([1.0, s])
    for s in side[:-1]:
        boundary.append([1.0 - s, 1.0])
    for s in side[:-1]:
        boundary.append([0.0, 1.0 - s])
    boundary = np.array(boundary)
    h = 1.0 / (per_side - 1)
    for seed in range(100):
        rng = np.random.default_rng(seed)
        gx, gy = np.meshgrid(side[1:-1], side[1:-1])
        interior = np.column_stack([gx.ravel(), gy.ravel()])
        interior += rng.uniform(-0.22 * h, 0.22 * h, interior.shape)
        points = np.vstack([boundary, interior])
        tri = Delaunay(points)
        triangles = [sorted(t) for t in tri.simplices.tolist()]
        try:
            check_delaunay(points, triangles, "darcy")
        except AssertionError:
            continue
        b0, b1 = betti(len(points), triangles)
        assert (b0, b1) == (1, 0)
        assert len(triangles) == 200, len(triangles)
        write_mesh("darcy", points, triangles)
        print(f"darcy: seed {seed}, {len(triangles)} triangles")
        return
    raise RuntimeError("no darcy seed satisfied the Delaunay margins")


def equilateral_lattice(cols, rows):
    """Triangular lattice: vertex (i, j) at (i + (j % 2) / 2, j * sqrt(3) / 2)."""
    idx = {}
    vertices = []
    for j in range(rows + 1):
        for i in range(cols + 1):
            idx[(i, j)] = len(vertices)
            vertices.append([i + 0.5 * (j % 2), j * np.sqrt(3) / 2])
    triangles = []
    for j in range(rows):
        for i in range(cols):
            a, b = idx[(i, j)], idx[(i + 1, j)]
            c, d = idx[(i, j + 1)], idx[(i + 1, j + 1)]
            if j % 2 == 0:
                triangles += [[a, b, c], [b, d, c]]
            else:
                triangles += [[a, b, d], [a, d, c]]
    return np.array(vertices, dtype=float), triangles, idx


def punch_star(triangles, vertex):
    return [t for t in triangles if vertex not in t]


def fourhole():
    vertices, triangles, idx = equilateral_lattice(16, 12)
    for hole in [(4, 4), (12, 4), (4, 8), (12, 8)]:
        triangles = punch_star(triangles, idx[hole])
    vertices, triangles = compress(vertices, triangles)
    check_delaunay(vertices, triangles, "fourhole")
    b0, b1 = betti(len(vertices), triangles)
    assert (b0, b1) == (1, 4), (b0, b1)
    write_mesh("fourhole", vertices, triangles)
    print(f"fourhole: {len(vertices)} vertices, {len(triangles)} triangles")


def disk():
    vertices, triangles, idx = equilateral_lattice(10, 8)
    vertices, triangles = compress(vertices, triangles)
    check_delaunay(vertices, triangles, "disk")
    b0, b1 = betti(len(vertices), triangles)
    assert (b0, b1) == (1, 0), (b0, b1)
    write_mesh("disk", vertices, triangles)


def annulus():
    vertices, triangles, idx = equilateral_lattice(14, 12)
    center = np.array([7.3, 12 * np.sqrt(3) / 4 + 0.1])
    kept = []
    for t in triangles:
        d = np.linalg.norm(vertices[t].mean(axis=0) - center)
        if 1.6 <= d <= 4.6:
            kept.append(t)
    vertices, triangles = compress(vertices, kept)
    check_delaunay(vertices, triangles, "annulus")
    b0, b1 = betti(len(vertices), triangles)
    assert (b0, b1) == (1, 1), (b0, b1)
    write_mesh("annulus", vertices, triangles)
    print(f"annulus: {len(vertices)} vertices, {len(triangles)} triangles")


def rips_betti(points, r):
    """Rips complex to dimension 2 by brute force; returns (b0, b1, n_edges)."""
    n = len(points)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if np.linalg.norm(points[i] - points[j]) <= r]
    eset = set(edges)
    triangles = [(i, j, k) for (i, j) in edges for k in range(j + 1, n)
                 if (i, k) in eset and (j, k) in eset]
    eidx = {e: i for i, e in enumerate(edges)}
    d1 = np.zeros((n, max(len(edges), 1)))
    for (a, b), i in eidx.items():
        d1[a, i] = -1.0
        d1[b, i] = 1.0
    d2 = np.zeros((max(len(edges), 1), max(len(triangles), 1)))
    for ti, (a, b, c) in enumerate(triangles):
        d2[eidx[(b, c)], ti] = 1.0
        d2[eidx[(a, c)], ti] = -1.0
        d2[eidx[(a, b)], ti] = 1.0
    r1 = np.linalg.matrix_rank(d1) if edges else 0
    r2 = np.linalg.matrix_rank(d2) if triangles else 0
    return n - r1, len(edges) - r1 - r2, len(edges)


def circle20():
    n = 20
    theta = 2 * np.pi * np.arange(n) / n
    points = np.column_stack([np.cos(theta), np.sin(theta)])
    chord = 2 * np.sin(np.pi / n)
    r = 1.2 * chord
    b0, b1, ne = rips_betti(points, r)
    assert ne == n and b1 == 1, (ne, b1)
    write_rows("circle20_points.txt", points, fmt)
    print(f"circle20: radius {r:.6f}, {ne} edges")


def gridcov():
    side = np.linspace(0.0, 1.0, 11)
    gx, gy = np.meshgrid(side, side)
    points = np.column_stack([gx.ravel(), gy.ravel()])
    b0, b1, ne = rips_betti(points, 0.16)
    assert (b0, b1) == (1, 0), (b0, b1)
    write_rows("gridcov_points.txt", points, fmt)
    print(f"gridcov: {ne} edges, b1 = {b1}")


def sensor300():
    rng = np.random.default_rng(2026)
    points = rng.uniform(0.0, 1.0, (300, 2))
    _, _, ne = rips_betti(points, 0.15)
    assert ne > 0
    write_rows("sensor300_points.txt", points, fmt)
    print(f"sensor300: {ne} edges at r = 0.15")


def rank_fixtures():
    write_rows("rank_path_edges.txt", [[0, 1, 1], [1, 2, 1]], lambda v: str(v))
    write_rows("rank_cycle_edges.txt", [[0, 1, 1], [1, 2, 1], [2, 0, 1]],
               lambda v: str(v))
    write_rows("rank_triangle_edges.txt", [[0, 1, 1], [1, 2, 1], [0, 2, 2]],
               lambda v: str(v))


def main():
    os.makedirs(OUT, exist_ok=True)
    fan()
    ell_bitmap()
    pisquare16()
    darcy()
    fourhole()
    disk()
    annulus()
    circle20()
    gridcov()
    sensor300()
    rank_fixtures()
    print("all fixtures written and verified")


if __name__ == "__main__":
    main()
