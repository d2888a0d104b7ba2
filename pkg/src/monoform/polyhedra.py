"""Convex polyhedra: construction, mass properties, and equilibrium census.

A resting feature of a convex polyhedron P with center of mass p is a
face, edge, or vertex F whose supporting plane through the foot point q is
perpendicular to q - p.  Faces give stable points, edges saddle points,
vertices unstable points, and a clean census satisfies S - H + U = 2.

Hulls are built with Qhull and adjacent coplanar triangles are merged into
polygonal faces deterministically (fixed input order, BFS in ascending
triangle index, boundary cycles started at the smallest vertex index), so
face combinatorics are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import kernels
from .errors import (
    DegenerateCensusError,
    MassError,
    MeshError,
    ParameterDomainError,
)
from .mass import MassProperties
from .params import ShapeParams
from .surface import EquilibriumCensus, census as _census_of

#: Default geometric tolerance for planarity, relative-interior and
#: normal-cone margins, and nondegeneracy checks.
GEOM_TOL = 1e-9


@dataclass(frozen=True)
class ConvexPolyhedron:
    """Vertices, outward-oriented polygonal faces, and derived edges."""

    vertices: np.ndarray = field(repr=False)
    faces: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int, int], ...]  # (v_a, v_b, face_left, face_right)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def face_plane(self, face_index: int):
        """(unit outward normal, offset) with normal . x = offset on the face."""
        idx = np.array(self.faces[face_index])
        pts = self.vertices[idx]
        normal = np.zeros(3)
        centroid = pts.mean(axis=0)
        for k in range(len(idx)):
            normal += np.cross(pts[k] - centroid, pts[(k + 1) % len(idx)] - centroid)
        normal /= np.linalg.norm(normal)
        return normal, float(normal @ centroid)


def _boundary_cycle(tri_group: list[tuple[int, int, int]]) -> list[int]:
    """Outer boundary of a set of consistently oriented triangles."""
    directed = set()
    for a, b, c in tri_group:
        directed.update([(a, b), (b, c), (c, a)])
    succ = {}
    for a, b in directed:
        if (b, a) not in directed:
            if a in succ:
                raise MeshError("non-manifold boundary while merging coplanar faces")
            succ[a] = b
    start = min(succ)
    cycle = [start]
    node = succ[start]
    while node != start:
        cycle.append(node)
        node = succ[node]
        if len(cycle) > len(succ):
            raise MeshError("unclosed boundary while merging coplanar faces")
    if len(cycle) != len(succ):
        raise MeshError("merged face boundary is not a single cycle")
    return cycle


def convex_hull(points, merge_tol: float = GEOM_TOL) -> ConvexPolyhedron:
    """Convex hull with coplanar facets merged into polygonal faces."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 4:
        raise MeshError("need at least four 3-d points")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise MeshError(f"hull construction failed: {exc}") from exc

    tris = hull.simplices.copy()
    normals = hull.equations[:, :3]
    # Wind every triangle so its own normal matches Qhull's outward normal.
    for t in range(len(tris)):
        a, b, c = tris[t]
        if np.cross(pts[b] - pts[a], pts[c] - pts[a]) @ normals[t] < 0.0:
            tris[t, 1], tris[t, 2] = tris[t, 2], tris[t, 1]

    scale = max(1.0, float(np.abs(pts).max()))
    offsets = np.einsum("ij,ij->i", normals, pts[tris[:, 0]])

    group_of = np.full(len(tris), -1, dtype=int)
    groups: list[list[int]] = []
    for seed in range(len(tris)):
        if group_of[seed] >= 0:
            continue
        gid = len(groups)
        group, stack = [], [seed]
        group_of[seed] = gid
        n0, off0 = normals[seed], offsets[seed]
        while stack:
            t = stack.pop()
            group.append(t)
            for nb in hull.neighbors[t]:
                if group_of[nb] >= 0:
                    continue
                if normals[nb] @ n0 < 1.0 - 1e-12:
                    continue
                if np.abs(pts[tris[nb]] @ n0 - off0).max() > merge_tol * scale:
                    continue
                group_of[nb] = gid
                stack.append(nb)
        groups.append(sorted(group))

    faces = []
    for group in groups:
        if len(group) == 1:
            faces.append(tuple(int(v) for v in tris[group[0]]))
        else:
            faces.append(tuple(_boundary_cycle([tuple(tris[t]) for t in group])))

    used = sorted({v for f in faces for v in f})
    remap = {old: new for new, old in enumerate(used)}
    vertices = pts[used]
    faces = tuple(tuple(remap[v] for v in f) for f in faces)
    poly = ConvexPolyhedron(vertices=vertices, faces=faces, edges=_derive_edges(faces))
    _validate(poly, merge_tol * scale)
    return poly


def _derive_edges(faces) -> tuple[tuple[int, int, int, int], ...]:
    sides: dict[tuple[int, int], list[int]] = {}
    for fi, face in enumerate(faces):
        for k in range(len(face)):
            a, b = face[k], face[(k + 1) % len(face)]
            key = (min(a, b), max(a, b))
            sides.setdefault(key, []).append(fi)
    edges = []
    for (a, b), fs in sorted(sides.items()):
        if len(fs) != 2:
            raise MeshError(f"edge ({a}, {b}) is shared by {len(fs)} faces, expected 2")
        edges.append((a, b, fs[0], fs[1]))
    return tuple(edges)


def _validate(poly: ConvexPolyhedron, plane_tol: float) -> None:
    V, E, F = poly.counts
    if V - E + F != 2:
        raise MeshError(f"Euler check failed: V-E+F = {V - E + F}")
    directed = set()
    for face in poly.faces:
        if len(face) < 3 or len(set(face)) != len(face):
            raise MeshError("face with repeated or too few vertices")
        for k in range(len(face)):
            half = (face[k], face[(k + 1) % len(face)])
            if half in directed:
                raise MeshError("inconsistent face orientation")
            directed.add(half)
    interior = poly.vertices.mean(axis=0)
    for fi, face in enumerate(poly.faces):
        normal, off = poly.face_plane(fi)
        pts = poly.vertices[list(face)]
        if np.abs(pts @ normal - off).max() > max(plane_tol, 1e-12):
            raise MeshError(f"face {fi} is not planar within tolerance")
        if normal @ interior > off:
            raise MeshError(f"face {fi} is not outward oriented")


def generate_symmetric_mesh(params: ShapeParams, m_theta: int, m_phi: int) -> ConvexPolyhedron:
    """Hull of surface samples on a grid aligned with the mirror planes.

    m_phi must be a multiple of 2n so the longitudes include both kinds of
    mirror meridian (phi = 0 and phi = pi/n); both poles are always added.
    The vertex set then inherits the full dihedral symmetry.
    """
    if m_theta < 8:
        raise ParameterDomainError("m_theta must be >= 8")
    if m_phi % (2 * params.n) != 0:
        raise ParameterDomainError("m_phi must be a multiple of 2*n")
    theta = -math.pi / 2 + np.arange(1, m_theta + 1) * (math.pi / (m_theta + 1))
    phi = np.arange(m_phi) * (2.0 * math.pi / m_phi)
    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    R = 1.0 + params.d * kernels.rho_grid(params.n, params.c, TH, PH)
    ct = np.cos(TH)
    grid_pts = np.stack(
        [R * ct * np.cos(PH), R * ct * np.sin(PH), R * np.sin(TH)], axis=-1
    ).reshape(-1, 3)
    poles = np.array(
        [[0.0, 0.0, -(1.0 - params.d)], [0.0, 0.0, 1.0 + params.d]]
    )
    return convex_hull(np.vstack([poles, grid_pts]))


def poly_mass(poly: ConvexPolyhedron) -> MassProperties:
    """Volume, centroid, and equatorial moment by signed tetrahedra."""
    volume = 0.0
    first_moment = np.zeros(3)
    for face in poly.faces:
        pts = poly.vertices[list(face)]
        for k in range(1, len(face) - 1):
            a, b, c = pts[0], pts[k], pts[k + 1]
            v6 = float(a @ np.cross(b, c))
            volume += v6
            first_moment += v6 * (a + b + c)
    volume /= 6.0
    first_moment /= 24.0  # (a+b+c+0)/4 per tet, v6/6 volumes
    if volume <= 0.0:
        raise MassError("non-positive volume: surface orientation is inconsistent")
    return MassProperties(
        volume=volume,
        centroid=first_moment / volume,
        M_xy=float(first_moment[2]),
        H=None,
    )


@dataclass(frozen=True)
class PolyEquilibrium:
    """A resting feature of a convex polyhedron."""

    feature: tuple  # ("face", i) | ("edge", (a, b)) | ("vertex", i)
    kind: str
    foot_point: np.ndarray = field(repr=False)
    degenerate: bool
    margin: float


def _support_degeneracy(poly, direction, foot, expected: set[int], tol: float) -> bool:
    """True if the supporting plane grazes vertices beyond the feature."""
    direction = direction / np.linalg.norm(direction)
    heights = poly.vertices @ direction - foot @ direction
    touching = set(np.flatnonzero(heights > -tol).tolist())
    if not touching <= expected:
        return True
    return bool(np.any(heights > tol))


def poly_equilibria(
    poly: ConvexPolyhedron, reference_point, tol: float = GEOM_TOL
) -> tuple[list[PolyEquilibrium], EquilibriumCensus]:
    """Classified resting features with respect to a strictly interior point.

    Faces: foot of the perpendicular in the relative interior -> stable.
    Edges: foot inside the open segment with q - p in the wedge of the two
    adjacent outward normals -> saddle.  Vertices: v - p inside the vertex
    normal cone (verified by brute-force support over all vertices)
    -> unstable.  Any margin within tol of zero, or a supporting plane that
    touches the body beyond its feature, sets the degenerate flag.
    """
    p = np.asarray(reference_point, dtype=float)
    planes = [poly.face_plane(fi) for fi in range(len(poly.faces))]
    clearances = [off - normal @ p for normal, off in planes]
    if min(clearances) <= tol:
        raise ParameterDomainError("reference point must be strictly interior")

    found: list[PolyEquilibrium] = []

    for fi, face in enumerate(poly.faces):
        normal, off = planes[fi]
        q = p + clearances[fi] * normal
        pts = poly.vertices[list(face)]
        margin = math.inf
        for k in range(len(face)):
            a, b = pts[k], pts[(k + 1) % len(face)]
            inward = np.cross(normal, b - a)
            inward /= np.linalg.norm(inward)
            margin = min(margin, float((q - a) @ inward))
        if margin <= -tol:
            continue
        degen = margin <= tol or _support_degeneracy(
            poly, normal, q, set(face), tol
        )
        found.append(PolyEquilibrium(("face", fi), "stable", q, degen, margin))

    for a, b, fa, fb in poly.edges:
        va, vb = poly.vertices[a], poly.vertices[b]
        e = vb - va
        elen2 = float(e @ e)
        t = float((p - va) @ e) / elen2
        seg_margin = min(t, 1.0 - t) * math.sqrt(elen2)
        if seg_margin <= -tol:
            continue
        q = va + t * e
        m = q - p
        ehat = e / math.sqrt(elen2)
        na, _ = planes[fa]
        nb, _ = planes[fb]
        w2 = np.cross(ehat, na)
        nb_w2 = float(nb @ w2)
        if abs(nb_w2) < 1e-14:
            # Adjacent faces coplanar within roundoff: cannot split the wedge.
            found.append(PolyEquilibrium(("edge", (a, b)), "saddle", q, True, 0.0))
            continue
        beta = float(m @ w2) / nb_w2
        alpha = float(m @ na) - float(nb @ na) * beta
        cone_margin = min(alpha, beta) / float(np.linalg.norm(m))
        margin = min(seg_margin, cone_margin)
        if margin <= -tol:
            continue
        degen = margin <= tol or _support_degeneracy(poly, m, q, {a, b}, tol)
        found.append(PolyEquilibrium(("edge", (a, b)), "saddle", q, degen, margin))

    verts = poly.vertices
    for vi in range(len(verts)):
        m = verts[vi] - p
        heights = (verts - verts[vi]) @ (m / np.linalg.norm(m))
        heights[vi] = -math.inf
        top = float(heights.max())
        if top >= tol:
            continue
        margin = -top
        degen = top > -tol
        found.append(
            PolyEquilibrium(("vertex", vi), "unstable", verts[vi].copy(), degen, margin)
        )

    return found, _census_of(found)


def mechanical_complexity(poly: ConvexPolyhedron, cens: EquilibriumCensus) -> int:
    """Total feature count minus total equilibrium count.

    Refuses a census carrying degenerate flags: the complexity of a
    degenerate configuration is not well defined.
    """
    if cens.degenerate_count > 0:
        raise DegenerateCensusError(
            "census has degenerate equilibria; complexity undefined"
        )
    V, E, F = poly.counts
    return (V + E + F) - (cens.S + cens.H_saddle + cens.U)
