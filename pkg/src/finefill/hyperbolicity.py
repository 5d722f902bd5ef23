"""Exact Gromov hyperbolicity of finite graphs via the four-point condition.

delta is half the largest gap between the two biggest of the three pairing
sums d(x,y)+d(z,w), maximized over vertex quadruples of the 1-skeleton.
The scan is exhaustive (refused above a vertex cap rather than sampled),
distances are unit-length BFS, and the reported witness is the
lexicographically least quadruple attaining the maximum.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DisconnectedError, TooLargeError

DEFAULT_VERTEX_CAP = 400


def all_pairs_distances(complex_):
    """BFS distance table over the 1-skeleton; unit edge lengths."""
    def build():
        adj = {v: set() for v in complex_.vertices}
        for e in complex_.edges:
            if e.tail != e.head:
                adj[e.tail].add(e.head)
                adj[e.head].add(e.tail)
        dist = {}
        for src in complex_.vertices:
            d = {src: 0}
            frontier = [src]
            level = 0
            while frontier:
                level += 1
                nxt = []
                for v in frontier:
                    for w in adj[v]:
                        if w not in d:
                            d[w] = level
                            nxt.append(w)
                frontier = nxt
            if len(d) != len(complex_.vertices):
                raise DisconnectedError("graph is not connected")
            dist[src] = d
        return dist
    return complex_.cached("apsp", build)


@dataclass(frozen=True)
class DeltaReport:
    delta: Fraction
    witness: tuple      # attaining quadruple (sorted vertex ids) or None
    vertex_count: int
    diameter: int


def hyperbolicity_delta(complex_, vertex_cap=DEFAULT_VERTEX_CAP):
    """Exact four-point delta with a deterministic witness.

    Every quadruple is scanned; beyond ``vertex_cap`` vertices the call
    refuses (TooLargeError) instead of sampling.
    """
    n = len(complex_.vertices)
    if n > vertex_cap:
        raise TooLargeError(f"{n} vertices exceeds the cap {vertex_cap}")
    dist = all_pairs_distances(complex_)
    diameter = max((dist[u][v] for u in complex_.vertices for v in complex_.vertices),
                   default=0)
    best = Fraction(0)
    witness = None
    for quad in combinations(sorted(complex_.vertices), 4):
        a, b, c, d = quad
        s1 = dist[a][b] + dist[c][d]
        s2 = dist[a][c] + dist[b][d]
        s3 = dist[a][d] + dist[b][c]
        mid, hi = sorted((s1, s2, s3))[1:]
        gap = Fraction(hi - mid, 2)
        if gap > best:
            best = gap
            witness = quad
    if witness is None and n >= 4:
        witness = tuple(sorted(complex_.vertices)[:4])
    return DeltaReport(best, witness, n, diameter)
