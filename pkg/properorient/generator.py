"""
Seeded random tripartite graphs and structured fixture families.

The random generator is a fixed 64-bit linear congruential recurrence so a
(sizes, p, seed) triple names the same graph everywhere:

    x <- (6364136223846793005 * x + 1442695040888963407) mod 2^64

The state starts at the seed. Candidate pairs (u < v, different parts) are
visited in lexicographic order with one step each; the pair becomes an edge
iff (x >> 32) * den < num * 2^32. Part 1 is numbered first, then part 2,
then part 3.
"""

import logging
from itertools import combinations
from typing import List, Tuple

from properorient.models import Graph, Partition, RandomTripartiteSpec

logger = logging.getLogger(__name__)

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_MASK = (1 << 64) - 1


class Lcg:
    """The generator's 64-bit linear congruential stream."""

    def __init__(self, seed: int):
        self.state = seed & LCG_MASK

    def next(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & LCG_MASK
        return self.state


def gen_random(spec: RandomTripartiteSpec) -> Tuple[Graph, Partition]:
    """
    Random tripartite graph keeping each cross-part pair with probability p.

    Returns:
        The graph and its partition (parts numbered in order of the sizes)
    """
    parts = [part for part, size in enumerate(spec.sizes, start=1) for _ in range(size)]
    n = len(parts)
    rng = Lcg(spec.seed)
    threshold = spec.p.num << 32
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if parts[u - 1] == parts[v - 1]:
                continue
            if (rng.next() >> 32) * spec.p.den < threshold:
                edges.append((u, v))
    logger.debug(f"gen_random sizes={spec.sizes} p={spec.p} seed={spec.seed}: {len(edges)} edges")
    return Graph(n=n, edges=edges), Partition(r=3, parts=tuple(parts))


def complete_tripartite(a: int, b: int, c: int) -> Tuple[Graph, Partition]:
    parts = [1] * a + [2] * b + [3] * c
    n = len(parts)
    edges = [(u, v) for u, v in combinations(range(1, n + 1), 2) if parts[u - 1] != parts[v - 1]]
    return Graph(n=n, edges=edges), Partition(r=3, parts=tuple(parts))


def sharpness_graph(k: int) -> Tuple[Graph, Partition]:
    """K_{2k-1,2k-1}: Mad is exactly 2k - 1 and its proper orientation number is k."""
    side = 2 * k - 1
    return complete_tripartite(side, side, 0)


def cycle(n: int) -> Graph:
    return Graph(n=n, edges=[(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    return Graph(n=n, edges=[(i, i + 1) for i in range(1, n)])


def triangulated_grid(rows: int, cols: int) -> Tuple[Graph, Partition]:
    """Grid with one diagonal per square; colored (i + j) mod 3."""
    def vid(i: int, j: int) -> int:
        return i * cols + j + 1

    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j)))
            if i + 1 < rows and j + 1 < cols:
                edges.append((vid(i, j), vid(i + 1, j + 1)))
    parts = tuple((i + j) % 3 + 1 for i in range(rows) for j in range(cols))
    return Graph(n=rows * cols, edges=edges), Partition(r=3, parts=parts)


def even_wheel(rim: int) -> Tuple[Graph, Partition]:
    """Hub 1 joined to an even rim 2..rim+1."""
    if rim < 4 or rim % 2:
        raise ValueError(f"rim length must be even and at least 4, got {rim}")
    edges = [(1, v) for v in range(2, rim + 2)]
    edges.extend((v, v + 1) for v in range(2, rim + 1))
    edges.append((2, rim + 1))
    parts = (3,) + tuple(1 if v % 2 == 0 else 2 for v in range(2, rim + 2))
    return Graph(n=rim + 1, edges=edges), Partition(r=3, parts=parts)


def stacked_triangles(layers: int) -> Tuple[Graph, Partition]:
    """Nested triangles, each band triangulated by the diagonals x_t - (x+1)_{t+1}."""
    def vid(t: int, x: int) -> int:
        return 3 * t + x + 1

    edges = []
    for t in range(layers):
        edges.extend([(vid(t, 0), vid(t, 1)), (vid(t, 1), vid(t, 2)), (vid(t, 0), vid(t, 2))])
        if t + 1 < layers:
            for x in range(3):
                edges.append((vid(t, x), vid(t + 1, x)))
                edges.append((vid(t, x), vid(t + 1, (x + 1) % 3)))
    parts = tuple((x + t) % 3 + 1 for t in range(layers) for x in range(3))
    return Graph(n=3 * layers, edges=edges), Partition(r=3, parts=parts)


def fan(length: int) -> Tuple[Graph, Partition]:
    """Hub 1 joined to every vertex of the path 2..length+1."""
    edges = [(1, v) for v in range(2, length + 2)]
    edges.extend((v, v + 1) for v in range(2, length + 1))
    parts = (3,) + tuple(1 if v % 2 == 0 else 2 for v in range(2, length + 2))
    return Graph(n=length + 1, edges=edges), Partition(r=3, parts=parts)


def snake_triangulation(n: int) -> Tuple[Graph, Partition]:
    """Strip of triangles: i joined to i+1 and i+2."""
    edges = [(i, j) for i in range(1, n + 1) for j in (i + 1, i + 2) if j <= n]
    return Graph(n=n, edges=edges), Partition(r=3, parts=tuple(i % 3 + 1 for i in range(1, n + 1)))


def planar_families() -> List[Tuple[str, Graph, Partition]]:
    """Every planar fixture family at a few sizes."""
    families = []
    for rows, cols in ((2, 3), (3, 3), (4, 5)):
        families.append((f"grid-{rows}x{cols}", *triangulated_grid(rows, cols)))
    for rim in (4, 6, 10):
        families.append((f"wheel-{rim}", *even_wheel(rim)))
    for layers in (1, 2, 4):
        families.append((f"stacked-{layers}", *stacked_triangles(layers)))
    for length in (3, 6, 12):
        families.append((f"fan-{length}", *fan(length)))
    for n in (3, 7, 15):
        families.append((f"snake-{n}", *snake_triangulation(n)))
    return families
