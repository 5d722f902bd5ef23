"""Cycles, circuits, and bounded enumeration.

A circuit is a simple closed combinatorial path: vertices distinct except
the closing return, edges pairwise distinct.  Circuits are deduplicated by
a canonical key (lexicographically least over rotations and the two
directions), so loops and parallel-edge bigons count once each.
"""

from dataclasses import dataclass
from fractions import Fraction

from .complexes import Chain, INT, RAT, boundary, format_ratio, parse_ratio
from .errors import (FormatError, NotACircuitError, NotACycleError,
                     UnknownEdgeError)


@dataclass(frozen=True)
class Circuit:
    walk: tuple  # ((sign, edge_id), ...) in traversal order
    key: tuple   # canonical token tuple, identifies the circuit

    @property
    def length(self):
        return len(self.walk)

    def edge_ids(self):
        return frozenset(e for _, e in self.walk)

    def contains_edge(self, eid):
        return any(e == eid for _, e in self.walk)

    def induced_cycle(self, ring=INT):
        return Chain(1, ring, {e: s for s, e in self.walk})

    def __lt__(self, other):
        return (self.length, self.key) < (other.length, other.key)


def _walk_tokens(walk):
    return tuple(("+" if s > 0 else "-") + e for s, e in walk)


def _reverse_walk(walk):
    return tuple((-s, e) for s, e in reversed(walk))


def canonical_walk_key(walk):
    """Least token tuple over all rotations of both directions."""
    walk = tuple(walk)
    best = None
    for w in (walk, _reverse_walk(walk)):
        toks = _walk_tokens(w)
        n = len(toks)
        for r in range(n):
            cand = toks[r:] + toks[:r]
            if best is None or cand < best:
                best = cand
    return best


def make_circuit(walk):
    return Circuit(tuple(walk), canonical_walk_key(walk))


def is_cycle(complex_, chain):
    """True iff the 1-chain has zero boundary."""
    if chain.dimension != 1:
        raise NotACycleError("expected a 1-chain")
    return boundary(complex_, chain).is_zero()


def is_disjoint(a, b):
    """True iff no basis cell has nonzero coefficients in both chains."""
    small, large = (a.coeffs, b.coeffs) if len(a.coeffs) <= len(b.coeffs) else (b.coeffs, a.coeffs)
    return not any(c in large for c in small)


def circuit_from_chain(complex_, chain):
    """Reconstruct the circuit inducing ``chain``, or None if it is not one.

    A circuit-induced cycle has all coefficients +-1 and its signed edges
    trace a single closed walk with distinct vertices.
    """
    if chain.dimension != 1 or chain.is_zero():
        return None
    if any(abs(c) != 1 for c in chain.coeffs.values()):
        return None
    steps = {}
    for eid, c in sorted(chain.coeffs.items()):
        if eid not in complex_.edge_by_id:
            return None
        sign = 1 if c > 0 else -1
        start, end = complex_.edge_endpoints((sign, eid))
        steps.setdefault(start, []).append(((sign, eid), end))
    first = min(steps)
    walk = []
    seen_vertices = set()
    cur = first
    while True:
        if cur in seen_vertices:
            return None
        seen_vertices.add(cur)
        outs = steps.get(cur)
        if not outs or len(outs) > 1:
            return None
        step, nxt = outs[0]
        walk.append(step)
        cur = nxt
        if cur == first:
            break
        if len(walk) > len(chain.coeffs):
            return None
    if len(walk) != len(chain.coeffs):
        return None
    return make_circuit(walk)


def enumerate_circuits(complex_, anchor=None, max_length=1):
    """All circuits of length <= max_length, sorted by (length, key).

    With ``anchor`` set, only circuits containing that edge are returned
    (same list, filtered), matching the direct-search reading of fineness.
    """
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    if anchor is not None and anchor not in complex_.edge_by_id:
        raise UnknownEdgeError(f"unknown edge {anchor!r}")
    circuits = _all_circuits(complex_, max_length)
    if anchor is not None:
        circuits = [c for c in circuits if c.contains_edge(anchor)]
    return circuits


def _all_circuits(complex_, max_length):
    def build():
        found = {}
        order = {v: i for i, v in enumerate(sorted(complex_.vertex_set))}
        for start in sorted(complex_.vertex_set):
            # only circuits whose least vertex is the start; prevents
            # rediscovery from every vertex on the circuit
            stack = [(start, (), frozenset(), frozenset((start,)))]
            while stack:
                cur, walk, used, visited = stack.pop()
                for step in complex_.incident(cur):
                    _sign, eid = step
                    if eid in used:
                        continue
                    end = complex_.edge_endpoints(step)[1]
                    if end == start:
                        c = make_circuit(walk + (step,))
                        found.setdefault(c.key, c)
                        continue
                    if len(walk) + 1 >= max_length:
                        continue
                    if order[end] < order[start] or end in visited:
                        continue
                    stack.append((end, walk + (step,), used | {eid}, visited | {end}))
        return tuple(sorted(found.values()))
    key = ("circuits", max_length)
    return list(complex_.cached(key, build))


def decompose_into_circuits(complex_, cycle):
    """Split an integral 1-cycle into circuit-induced cycles, norms adding.

    Greedy walk extraction: trace sign-respecting steps through the support
    and peel a circuit at the first repeated vertex.  The returned circuits
    satisfy sum(induced) == cycle and sum of lengths == l1(cycle).
    """
    if cycle.ring != INT:
        raise NotACycleError("decomposition is defined for integral cycles")
    if not is_cycle(complex_, cycle):
        raise NotACycleError("boundary is nonzero")
    remaining = dict(cycle.coeffs)
    out = []
    while remaining:
        start_eid = min(remaining)
        sign = 1 if remaining[start_eid] > 0 else -1
        start, _ = complex_.edge_endpoints((sign, start_eid))
        walk = []
        positions = {start: 0}
        cur = start
        while True:
            step = _least_outgoing(complex_, remaining, cur)
            walk.append(step)
            cur = complex_.edge_endpoints(step)[1]
            if cur in positions:
                circ_walk = walk[positions[cur]:]
                break
            positions[cur] = len(walk)
        circuit = make_circuit(circ_walk)
        out.append(circuit)
        for s, eid in circ_walk:
            remaining[eid] -= s
            if remaining[eid] == 0:
                del remaining[eid]
    return out


def _least_outgoing(complex_, remaining, vertex):
    # flow conservation of cycles guarantees an outgoing step exists
    for step in complex_.incident(vertex):
        sign, eid = step
        c = remaining.get(eid, 0)
        if c * sign > 0:
            return step
    raise NotACycleError(f"no continuation at vertex {vertex!r}")


def enumerate_cycles(complex_, max_norm, ring=INT):
    """Every integral 1-cycle with l1-norm <= max_norm, exactly once.

    Realized by summing multisets of signed circuits with total length
    within budget (complete because every cycle splits into circuits with
    additive norms), then deduplicating; includes the zero cycle.
    """
    if ring != INT:
        raise ValueError("cycle enumeration is defined over the integers")
    if max_norm < 0:
        raise ValueError("max_norm must be >= 0")
    cycles = {(): Chain(1, INT, {})}
    if max_norm >= 1:
        circuits = _all_circuits(complex_, max_norm)
        vecs = [c.induced_cycle().coeffs for c in circuits]
        lens = [c.length for c in circuits]
        n = len(circuits)

        def extend(idx_from, budget, acc):
            for i in range(idx_from, n):
                li = lens[i]
                if li > budget:
                    continue
                for sign in (1, -1):
                    m = 1
                    while m * li <= budget:
                        nxt = dict(acc)
                        for e, c in vecs[i].items():
                            v = nxt.get(e, 0) + sign * m * c
                            if v:
                                nxt[e] = v
                            elif e in nxt:
                                del nxt[e]
                        key = tuple(sorted(nxt.items()))
                        if key not in cycles:
                            cycles[key] = Chain(1, INT, nxt)
                        extend(i + 1, budget - m * li, nxt)
                        m += 1

        extend(0, max_norm, {})
    out = [c for c in cycles.values() if c.l1() <= max_norm]
    out.sort(key=lambda c: (c.l1(), c.serialize()))
    return out


# -- cy v1 text format --------------------------------------------------------

_CY_HEADER = "chain1 v1"


def parse_chain(text):
    lines = [l for l in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if l]
    if not lines:
        raise FormatError("empty chain file")
    head = lines[0].split()
    if len(head) != 3 or " ".join(head[:2]) != _CY_HEADER or head[2] not in (INT, RAT, "INT", "RAT"):
        raise FormatError(f"expected '{_CY_HEADER} <INT|RAT>' header")
    ring = INT if head[2] in (INT, "INT") else RAT
    acc = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"cannot parse chain line: {line!r}")
        coeff = parse_ratio(parts[0])
        if ring == INT and coeff.denominator != 1:
            raise FormatError(f"rational coefficient {parts[0]} in INT chain")
        acc[parts[1]] = acc.get(parts[1], 0) + (coeff.numerator if ring == INT else coeff)
    return Chain(1, ring, acc)


def write_chain(chain):
    tag = "INT" if chain.ring == INT else "RAT"
    out = [f"{_CY_HEADER} {tag}"]
    for cell, c in sorted(chain.coeffs.items()):
        out.append(f"{format_ratio(c)} {cell}")
    return "\n".join(out) + "\n"


def require_circuit(complex_, chain):
    """The Circuit inducing ``chain``, or NotACircuitError."""
    circ = circuit_from_chain(complex_, chain)
    if circ is None:
        raise NotACircuitError("chain is not induced by a circuit")
    return circ
