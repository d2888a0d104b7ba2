"""Mesh file formats.

OBJ is the primary format: ASCII ``v x y z`` / ``f i j k ...`` lines with
coordinates printed at 17 significant digits, which round-trips doubles
exactly.  Binary STL (80-byte header, uint32 triangle count, 50-byte
records, little-endian) is provided for printing workflows; it stores
float32 and therefore truncates coordinates.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import MeshFormatError


def write_obj(path, vertices, faces) -> None:
    vertices = np.asarray(vertices, dtype=float)
    with open(path, "w", encoding="ascii") as fh:
        for v in vertices:
            fh.write(f"v {v[0]:.17g} {v[1]:.17g} {v[2]:.17g}\n")
        for face in faces:
            fh.write("f " + " ".join(str(i + 1) for i in face) + "\n")


def read_obj(path):
    """(vertices, faces) from an OBJ file; texture/normal refs are ignored."""
    vertices: list[list[float]] = []
    faces: list[tuple[int, ...]] = []
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            tag = parts[0]
            try:
                if tag == "v":
                    if len(parts) < 4:
                        raise ValueError("vertex with fewer than 3 coordinates")
                    vertices.append([float(x) for x in parts[1:4]])
                elif tag == "f":
                    idx = tuple(int(tok.split("/")[0]) - 1 for tok in parts[1:])
                    if len(idx) < 3:
                        raise ValueError("face with fewer than 3 vertices")
                    faces.append(idx)
            except ValueError as exc:
                raise MeshFormatError(f"{path}:{lineno}: {exc}") from exc
    if not vertices:
        raise MeshFormatError(f"{path}: no vertices found")
    verts = np.array(vertices, dtype=float)
    for face in faces:
        if any(i < 0 or i >= len(verts) for i in face):
            raise MeshFormatError(f"{path}: face index out of range")
    return verts, faces


def _triangulate(faces):
    for face in faces:
        for k in range(1, len(face) - 1):
            yield face[0], face[k], face[k + 1]


def write_stl(path, vertices, faces) -> None:
    vertices = np.asarray(vertices, dtype=float)
    tris = list(_triangulate(faces))
    with open(path, "wb") as fh:
        fh.write(b"monoform binary STL".ljust(80, b"\0"))
        fh.write(struct.pack("<I", len(tris)))
        for a, b, c in tris:
            va, vb, vc = vertices[a], vertices[b], vertices[c]
            normal = np.cross(vb - va, vc - va)
            norm = np.linalg.norm(normal)
            if norm > 0:
                normal = normal / norm
            fh.write(struct.pack("<3f", *normal))
            fh.write(struct.pack("<3f", *va))
            fh.write(struct.pack("<3f", *vb))
            fh.write(struct.pack("<3f", *vc))
            fh.write(struct.pack("<H", 0))


def read_stl(path):
    """(vertices, faces) from binary STL; exact-duplicate vertices merged.

    Vertices are deduplicated on exact float32 coordinate equality in
    first-seen order, so re-writing the same mesh is stable.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 84:
        raise MeshFormatError(f"{path}: too short for binary STL")
    (count,) = struct.unpack_from("<I", blob, 80)
    expected = 84 + 50 * count
    if len(blob) < expected:
        raise MeshFormatError(
            f"{path}: truncated STL ({len(blob)} bytes, need {expected})"
        )
    index: dict[tuple[float, float, float], int] = {}
    vertices: list[tuple[float, float, float]] = []
    faces: list[tuple[int, int, int]] = []
    off = 84
    for _ in range(count):
        rec = struct.unpack_from("<12fH", blob, off)
        off += 50
        tri = []
        for k in range(3):
            xyz = rec[3 + 3 * k : 6 + 3 * k]
            i = index.get(xyz)
            if i is None:
                i = len(vertices)
                index[xyz] = i
                vertices.append(xyz)
            tri.append(i)
        faces.append(tuple(tri))
    if not vertices:
        raise MeshFormatError(f"{path}: empty STL")
    return np.array(vertices, dtype=float), faces


def detect_format(path) -> str:
    """'obj' or 'stl' by extension, falling back to content sniffing."""
    name = str(path).lower()
    if name.endswith(".obj"):
        return "obj"
    if name.endswith(".stl"):
        return "stl"
    with open(path, "rb") as fh:
        head = fh.read(84)
    if head[:1] in (b"v", b"#", b"o", b"g"):
        return "obj"
    if len(head) >= 84:
        return "stl"
    raise MeshFormatError(f"{path}: cannot determine mesh format")
