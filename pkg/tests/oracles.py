"""Independent oracles the suites check the library against.

Nothing here shares code with the implementation paths it verifies:
fillings are exhaustive bounded searches, homology uses determinant
divisors, distances use Floyd-Warshall, cycle sets use raw coefficient
vectors, circuit counts use degree-two edge subsets.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from finefill import Chain, INT, boundary, is_cycle


def exhaustive_int_filling(cx, gamma, cap):
    """Least norm of an integral 2-chain with the given boundary, searching
    every chain of norm <= cap; None if none exists within the cap."""
    faces = [f.id for f in cx.faces]
    best = None

    def rec(i, rem, acc):
        nonlocal best
        ch = Chain(2, INT, dict(acc))
        if boundary(cx, ch) == gamma:
            v = ch.l1()
            if best is None or v < best:
                best = v
        if i == len(faces):
            return
        rec(i + 1, rem, acc)
        for c in range(1, rem + 1):
            for s in (1, -1):
                acc[faces[i]] = s * c
                rec(i + 1, rem - c, acc)
            del acc[faces[i]]

    rec(0, cap, {})
    return best


def fillings_of_norm(cx, gamma, norm):
    """Every integral 2-chain of norm exactly ``norm`` bounding ``gamma``."""
    faces = [f.id for f in cx.faces]
    out = []

    def rec(i, rem, acc):
        if rem == 0:
            ch = Chain(2, INT, dict(acc))
            if boundary(cx, ch) == gamma:
                out.append(ch)
            return
        if i == len(faces):
            return
        rec(i + 1, rem, acc)
        for c in range(1, rem + 1):
            for s in (1, -1):
                acc[faces[i]] = s * c
                rec(i + 1, rem - c, acc)
            del acc[faces[i]]

    rec(0, norm, {})
    return out


def brute_cycles(cx, k):
    """Serializations of all integral 1-cycles with l1-norm <= k, found by
    scanning raw coefficient vectors (use only when edges <= 8)."""
    eids = [e.id for e in cx.edges]
    found = set()

    def rec(i, rem, acc):
        if i == len(eids):
            ch = Chain(1, INT, dict(acc))
            if is_cycle(cx, ch):
                found.add(ch.serialize())
            return
        for c in range(-rem, rem + 1):
            if c:
                acc[eids[i]] = c
            rec(i + 1, rem - abs(c), acc)
            acc.pop(eids[i], None)

    rec(0, k, {})
    return found


def brute_circuit_count(cx, max_len, anchor=None):
    """Circuits as edge subsets: connected, every vertex of degree two."""
    count = 0
    for r in range(1, min(len(cx.edges), max_len) + 1):
        for sub in combinations(cx.edges, r):
            if anchor is not None and all(e.id != anchor for e in sub):
                continue
            deg = {}
            for e in sub:
                if e.tail == e.head:
                    deg[e.tail] = deg.get(e.tail, 0) + 2
                else:
                    deg[e.tail] = deg.get(e.tail, 0) + 1
                    deg[e.head] = deg.get(e.head, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            vs = set(deg)
            adj = {v: set() for v in vs}
            for e in sub:
                if e.tail != e.head:
                    adj[e.tail].add(e.head)
                    adj[e.head].add(e.tail)
            seen, stack = set(), [next(iter(vs))]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(adj[v])
            if seen == vs:
                count += 1
    return count


def determinant_divisor_factors(matrix):
    """Invariant factors via gcds of k x k minors (exact, independent of
    any normal-form elimination; small matrices only)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0

    def minors_gcd(k):
        g = 0
        for rsub in combinations(range(rows), k):
            for csub in combinations(range(cols), k):
                sub = [[matrix[i][j] for j in csub] for i in rsub]
                g = gcd(g, _det(sub))
        return g

    factors = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        dk = minors_gcd(k)
        if dk == 0:
            break
        factors.append(dk // prev)
        prev = dk
    return factors


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


def rank_over_q(matrix):
    """Row reduction rank with Fractions."""
    m = [[Fraction(v) for v in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(rows):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def partition_maximum(values, n):
    """max over partitions n = n_1 + ... + n_k of sum f(n_i), brute force."""
    best = None

    def rec(remaining, smallest, acc):
        nonlocal best
        if remaining == 0:
            if best is None or acc > best:
                best = acc
            return
        for part in range(smallest, remaining + 1):
            rec(remaining - part, part, acc + values[part - 1])

    rec(n, 1, Fraction(0))
    return best


def floyd_warshall(cx):
    inf = float("inf")
    vs = list(cx.vertices)
    dist = {u: {v: (0 if u == v else inf) for v in vs} for u in vs}
    for e in cx.edges:
        if e.tail != e.head:
            dist[e.tail][e.head] = 1
            dist[e.head][e.tail] = 1
    for k in vs:
        for i in vs:
            dik = dist[i][k]
            if dik == inf:
                continue
            for j in vs:
                if dik + dist[k][j] < dist[i][j]:
                    dist[i][j] = dik + dist[k][j]
    return dist


def four_point_delta(cx):
    """Quadruple scan over Floyd-Warshall distances."""
    dist = floyd_warshall(cx)
    best = Fraction(0)
    for a, b, c, d in combinations(sorted(cx.vertices), 4):
        s = sorted((dist[a][b] + dist[c][d],
                    dist[a][c] + dist[b][d],
                    dist[a][d] + dist[b][c]))
        gap = Fraction(s[2] - s[1], 2)
        if gap > best:
            best = gap
    return best
