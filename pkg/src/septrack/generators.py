"""Seeded graph family generators; every family carries its rotation system.

Families:
  grid(rows, cols)                  rectangular grid in its natural embedding
  stacked_triangulation(n)          grown by face stacking, FIFO face order
  random_triangulation(n) (seeded)  face stacking with uniformly chosen faces
  cylinder_triangulation(rings, size)  triangulated concentric rings

All generators are deterministic functions of (family, args, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .embedding import RotationSystem
from .errors import GraphError
from .graph import Graph


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    args: tuple[int, ...]
    seed: int = 0

    def label(self) -> str:
        base = f"{self.family}:{'x'.join(str(a) for a in self.args)}"
        return f"{base}@{self.seed}" if self.family in SEEDED_FAMILIES else base


SEEDED_FAMILIES = frozenset({"random_triangulation"})
FAMILY_ARITY = {
    "grid": 2,
    "stacked_triangulation": 1,
    "random_triangulation": 1,
    "cylinder_triangulation": 2,
}


def _grid(rows: int, cols: int) -> tuple[Graph, RotationSystem]:
    if rows < 1 or cols < 1:
        raise GraphError("grid requires rows >= 1 and cols >= 1")
    n = rows * cols

    def vid(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    rot: list[tuple[int, ...]] = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    for r in range(rows):
        for c in range(cols):
            order = []
            if c + 1 < cols:
                order.append(vid(r, c + 1))  # east
            if r - 1 >= 0:
                order.append(vid(r - 1, c))  # north
            if c - 1 >= 0:
                order.append(vid(r, c - 1))  # west
            if r + 1 < rows:
                order.append(vid(r + 1, c))  # south
            rot.append(tuple(order))
    return Graph.from_edges(n, edges), RotationSystem(tuple(rot))


def _stacked(n: int, rng: random.Random | None) -> tuple[Graph, RotationSystem]:
    """Face stacking from a triangle; FIFO order when rng is None."""
    if n < 3:
        raise GraphError("stacked triangulation requires n >= 3")
    rot_lists: list[list[int]] = [[1, 2], [2, 0], [0, 1]]
    edges: list[tuple[int, int]] = [(0, 1), (0, 2), (1, 2)]
    # both sides of the starting triangle are stackable faces
    faces: list[tuple[int, int, int]] = [(0, 1, 2), (0, 2, 1)]
    head = 0  # consumed prefix; the list only grows, keeping iteration stable
    for w in range(3, n):
        if rng is not None:
            # uniform choice among live faces, moved to the front slot
            i = rng.randrange(head, len(faces))
            faces[head], faces[i] = faces[i], faces[head]
        x, y, z = faces[head]
        head += 1
        # split face (x, y, z) into (x,y,w), (y,z,w), (z,x,w)
        rot_lists.append([x, z, y])
        rot_lists[x].insert(rot_lists[x].index(z) + 1, w)
        rot_lists[y].insert(rot_lists[y].index(x) + 1, w)
        rot_lists[z].insert(rot_lists[z].index(y) + 1, w)
        edges.extend([(x, w), (y, w), (z, w)])
        faces.extend([(x, y, w), (y, z, w), (z, x, w)])
    return Graph.from_edges(n, edges), RotationSystem(tuple(tuple(r) for r in rot_lists))


def _cylinder(rings: int, size: int) -> tuple[Graph, RotationSystem]:
    if rings < 2 or size < 3:
        raise GraphError("cylinder requires rings >= 2 and ring size >= 3")
    a = size

    def vid(r: int, j: int) -> int:
        return r * a + j % a

    edges = []
    rot: list[tuple[int, ...]] = []
    for r in range(rings):
        for j in range(a):
            edges.append((vid(r, j), vid(r, j + 1)))
            if r + 1 < rings:
                edges.append((vid(r, j), vid(r + 1, j)))
                edges.append((vid(r, j), vid(r + 1, j + 1)))
    for r in range(rings):
        for j in range(a):
            order = []
            if r + 1 < rings:
                order.append(vid(r + 1, j))      # radially outward
                order.append(vid(r + 1, j + 1))  # outward diagonal
            order.append(vid(r, j + 1))          # around, one way
            if r - 1 >= 0:
                order.append(vid(r - 1, j))      # radially inward
                order.append(vid(r - 1, j - 1))  # inward diagonal
            order.append(vid(r, j - 1))          # around, the other way
            rot.append(tuple(order))
    return Graph.from_edges(rings * a, edges), RotationSystem(tuple(rot))


def generate(spec: GeneratorSpec) -> tuple[Graph, RotationSystem]:
    """Build the graph and rotation system for a generator spec."""
    if spec.family not in FAMILY_ARITY:
        raise GraphError(f"unknown family {spec.family!r}; known: {sorted(FAMILY_ARITY)}")
    if len(spec.args) != FAMILY_ARITY[spec.family]:
        raise GraphError(
            f"family {spec.family!r} takes {FAMILY_ARITY[spec.family]} args, got {len(spec.args)}"
        )
    if spec.family == "grid":
        return _grid(*spec.args)
    if spec.family == "stacked_triangulation":
        return _stacked(spec.args[0], None)
    if spec.family == "random_triangulation":
        return _stacked(spec.args[0], random.Random(spec.seed))
    return _cylinder(*spec.args)
