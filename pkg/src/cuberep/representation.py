"""k-partite representations of cube subgraphs.

A representation embeds a graph H into Q_l so that every edge has exactly
k non-zero bits (k-1 ones plus the flip-bit) and carries a colouring
sigma: [l] -> [k] that is injective on the non-zero bit positions of every
edge.  The support map sends each edge to its k-set of non-zero positions;
the image of the host edge set is a k-uniform hypergraph on [l], which is
k-partite under sigma's colour classes.

Distinct host edges may share a support set (both paper-style cycle
representations do this two-to-one); the extracted hypergraph keeps one
copy and the verifier flags the collisions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .cube import (
    AbstractGraph,
    CapError,
    CubeEdge,
    CubeSubgraph,
    FormatError,
    _content_lines,
    find_abstract_copy,
    loads_cube,
    dumps_cube,
    mask_of,
    positions_of,
)

SEARCH_L_CAP = 8
SEARCH_VERTEX_CAP = 20


def edge_support(e: CubeEdge) -> frozenset[int]:
    """Positions of the non-zero bits of an edge: ones plus the flip-bit."""
    return frozenset(positions_of(e.support))


@dataclass(frozen=True)
class Representation:
    """Host dimension l, arity k, the embedded subgraph, and the colouring.

    sigma is a total map on positions 1..l, stored as a tuple indexed by
    position-1.  Construction checks only structural well-formedness;
    the definition's three conditions are checked by verify_representation.
    """

    l: int
    k: int
    host: CubeSubgraph
    sigma: tuple[int, ...]

    def __post_init__(self):
        if self.l < 1 or self.k < 1:
            raise ValueError("l and k must be positive")
        if len(self.sigma) != self.l:
            raise ValueError(f"sigma has {len(self.sigma)} values, expected {self.l}")
        for i, c in enumerate(self.sigma, start=1):
            if not 1 <= c <= self.k:
                raise ValueError(f"sigma({i}) = {c} outside [1, {self.k}]")

    def colour(self, position: int) -> int:
        return self.sigma[position - 1]


@dataclass(frozen=True)
class KUniformHypergraph:
    """Vertex count m, arity k, and a set of k-subsets of {1..m}."""

    m: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 0 or self.k < 1:
            raise ValueError("bad hypergraph parameters")
        norm = set()
        for edge in self.edges:
            tup = tuple(sorted(edge))
            if len(set(tup)) != self.k or len(tup) != self.k:
                raise ValueError(f"edge {edge} is not a {self.k}-set")
            if tup[0] < 1 or tup[-1] > self.m:
                raise ValueError(f"edge {edge} outside vertex range [1, {self.m}]")
            norm.add(tup)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(1, self.m + 1)}
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def is_partite_under(self, classes: Iterable[Iterable[int]]) -> bool:
        """True iff every edge meets each given class exactly once."""
        sets = [frozenset(c) for c in classes]
        for e in self.edges:
            for c in sets:
                if len(c & set(e)) != 1:
                    return False
        return True


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the three-condition check; pass iff no violations.

    Violations are (edge, rule, detail) with rule one of 'a' (host lies in
    Q_l), 'b' (exactly k non-zero bits), 'c' (sigma injective onto [k]).
    Flags carry non-fatal observations such as repeated support sets.
    """

    passed: bool
    violations: tuple[tuple[Optional[CubeEdge], str, str], ...] = ()
    flags: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.passed


def verify_representation(r: Representation) -> VerificationReport:
    """Check the defining conditions; failures are reported, never raised."""
    violations: list[tuple[Optional[CubeEdge], str, str]] = []
    if r.host.n != r.l:
        violations.append(
            (None, "a", f"host dimension {r.host.n} differs from l={r.l}")
        )
    for e in r.host:
        nz = e.ones.bit_count() + 1
        if nz != r.k:
            violations.append(
                (e, "b", f"edge {e} has {nz} non-zero bits, expected {r.k}")
            )
            continue
        if r.host.n == r.l:
            image = {r.colour(p) for p in positions_of(e.support)}
            if image != set(range(1, r.k + 1)):
                violations.append(
                    (e, "c", f"sigma image of {e} is {sorted(image)}, not 1..{r.k}")
                )
    flags: list[str] = []
    support_count: dict[int, int] = {}
    for e in r.host:
        support_count[e.support] = support_count.get(e.support, 0) + 1
    for mask, cnt in sorted(support_count.items()):
        if cnt > 1:
            flags.append(
                f"support {set(positions_of(mask))} shared by {cnt} host edges"
            )
    return VerificationReport(not violations, tuple(violations), tuple(flags))


def representation_hypergraph(r: Representation) -> KUniformHypergraph:
    """The k-uniform hypergraph of host-edge supports, on vertex set [l].

    Repeated supports collapse to a single hypergraph edge (they are flagged
    by the verifier).  Raises on a representation that fails verification.
    """
    report = verify_representation(r)
    if not report.passed:
        raise ValueError(
            f"representation fails verification ({len(report.violations)} violations)"
        )
    edges = {edge_support(e) for e in r.host}
    return KUniformHypergraph(r.l, r.k, tuple(tuple(sorted(e)) for e in edges))


def partite_sizes(r: Representation) -> tuple[int, ...]:
    """Class sizes (|sigma^-1(1)|, ..., |sigma^-1(k)|); they sum to l."""
    report = verify_representation(r)
    if not report.passed:
        raise ValueError("representation fails verification")
    sizes = [0] * r.k
    for c in r.sigma:
        sizes[c - 1] += 1
    return tuple(sizes)


# --- bounded exhaustive search ---------------------------------------------
#
# Every edge with exactly k non-zero bits joins a (k-1)-set to a k-set, so a
# host must embed into the bilayer of Q_l spanned by levels k-1 and k.  The
# search walks all such embeddings up to coordinate permutation (the image
# of one pattern edge is pinned to ones {1..k-1}, flip k; both orientations
# of that edge are tried) and prunes with an exact rainbow-colourability
# check on the partial support hypergraph.


@lru_cache(maxsize=None)
def _rainbow_colouring(
    supports: frozenset[int], k: int, l: int
) -> Optional[tuple[int, ...]]:
    """A colouring of positions 1..l giving each support mask k distinct
    colours, or None.  Exact backtracking; each support is a k-clique of
    the conflict graph, so this is proper k-colouring."""
    positions = sorted({p for m in supports for p in positions_of(m)})
    containing: dict[int, list[int]] = {p: [] for p in positions}
    support_list = sorted(supports)
    for idx, m in enumerate(support_list):
        for p in positions_of(m):
            containing[p].append(idx)
    # most-constrained-first: positions in many supports first
    positions.sort(key=lambda p: (-len(containing[p]), p))
    colour: dict[int, int] = {}

    def conflict(p: int, c: int) -> bool:
        for idx in containing[p]:
            for q in positions_of(support_list[idx]):
                if q != p and colour.get(q) == c:
                    return True
        return False

    def assign(i: int) -> bool:
        if i == len(positions):
            return True
        p = positions[i]
        for c in range(1, k + 1):
            if not conflict(p, c):
                colour[p] = c
                if assign(i + 1):
                    return True
                del colour[p]
        return False

    if not assign(0):
        return None
    sigma = tuple(colour.get(p, 1) for p in range(1, l + 1))
    return sigma


def _bilayer_search(H: AbstractGraph, k: int, l: int) -> Optional[Representation]:
    if H.n_edges == 0:
        raise ValueError("pattern graph has no edges")
    deg = H.degrees()
    if any(d == 0 for d in deg):
        raise ValueError("pattern graph has isolated vertices")
    adj = H.adjacency()
    # order: first edge's endpoints, then always a vertex with a mapped neighbour
    u0, v0 = H.edges[0]
    order = [u0, v0]
    placed = {u0, v0}
    remaining = set(range(H.n_vertices)) - placed
    while remaining:
        nxt = max(remaining, key=lambda v: (len(adj[v] & placed), deg[v], -v))
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    lower0 = (1 << (k - 1)) - 1          # ones {1..k-1}
    upper0 = (1 << k) - 1                # plus flip-bit k
    full = (1 << l) - 1

    assignment: dict[int, int] = {}
    used: set[int] = set()

    def up_neighbours(x: int) -> list[int]:
        rest = full & ~x
        out = []
        while rest:
            b = rest & -rest
            out.append(x | b)
            rest ^= b
        return out

    def down_neighbours(y: int) -> list[int]:
        bits = y
        out = []
        while bits:
            b = bits & -bits
            out.append(y & ~b)
            bits ^= b
        return out

    def mapped_supports() -> frozenset[int]:
        sup = set()
        for a, b in H.edges:
            if a in assignment and b in assignment:
                sup.add(assignment[a] | assignment[b])
        return frozenset(sup)

    def candidates(v: int) -> list[int]:
        nbr_imgs = [assignment[w] for w in adj[v] if w in assignment]
        if not nbr_imgs:
            # fresh component: any bilayer vertex
            lows = [mask_of(c) for c in itertools.combinations(range(1, l + 1), k - 1)]
            ups = [mask_of(c) for c in itertools.combinations(range(1, l + 1), k)]
            return sorted(lows + ups)
        first = nbr_imgs[0]
        if first.bit_count() == k - 1:
            cands = up_neighbours(first)
        else:
            cands = down_neighbours(first)
        out = []
        for c in cands:
            ok = True
            for img in nbr_imgs[1:]:
                lo, hi = min(c, img), max(c, img)
                if not (lo.bit_count() == k - 1 and hi.bit_count() == k
                        and lo & hi == lo and (hi & ~lo).bit_count() == 1):
                    ok = False
                    break
            if ok:
                out.append(c)
        return sorted(out)

    def extend(i: int) -> Optional[Representation]:
        if i == len(order):
            sigma = _rainbow_colouring(mapped_supports(), k, l)
            if sigma is None:
                return None
            host_edges = []
            for a, b in H.edges:
                x, y = assignment[a], assignment[b]
                lo, hi = min(x, y), max(x, y)
                flip_bit = hi & ~lo
                host_edges.append(CubeEdge(l, lo, flip_bit.bit_length()))
            rep = Representation(l, k, CubeSubgraph(l, host_edges), sigma)
            assert verify_representation(rep).passed
            return rep
        v = order[i]
        for c in candidates(v):
            if c in used:
                continue
            assignment[v] = c
            used.add(c)
            if _rainbow_colouring(mapped_supports(), k, l) is not None:
                found = extend(i + 1)
                if found is not None:
                    return found
            del assignment[v]
            used.remove(c)
        return None

    for first, second in ((lower0, upper0), (upper0, lower0)):
        assignment.clear()
        used.clear()
        assignment[u0] = first
        assignment[v0] = second
        used.update((first, second))
        found = extend(2)
        if found is not None:
            return found
    return None


def search_representation(
    H: AbstractGraph,
    k: int,
    l_max: int,
    vertex_cap: int = SEARCH_VERTEX_CAP,
    l_cap: int = SEARCH_L_CAP,
) -> Optional[Representation]:
    """Exhaustive bounded search for a k-partite representation of H.

    Tries every host dimension l from k to l_max, every embedding of H
    into the level-(k-1)/level-k bilayer of Q_l up to coordinate
    permutation, and every colouring.  A None result means none exists
    within these bounds; it is never a claim of absolute non-existence.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if l_max > l_cap:
        raise CapError(f"l_max={l_max} exceeds cap {l_cap}")
    if H.n_vertices > vertex_cap:
        raise CapError(f"pattern has {H.n_vertices} vertices, cap is {vertex_cap}")
    for l in range(k, l_max + 1):
        found = _bilayer_search(H, k, l)
        if found is not None:
            return found
    return None


# --- file formats ----------------------------------------------------------
#
# Representation:  cube subgraph block, then `k=<int>`, then
#                  `sigma= <v1> <v2> ... <vl>`.
# Hypergraph:      `m=<int> k=<int>`, then one edge per line as k
#                  space-separated vertex indices.


def loads_representation(text: str) -> Representation:
    lines = list(_content_lines(text))
    k_idx = next((i for i, (_, s) in enumerate(lines) if s.startswith("k=")), None)
    if k_idx is None:
        raise FormatError("missing 'k=<int>' line")
    cube_text = "\n".join(s for _, s in lines[:k_idx])
    host = loads_cube(cube_text)
    lineno, k_line = lines[k_idx]
    try:
        k = int(k_line[2:])
    except ValueError:
        raise FormatError(f"bad arity {k_line!r}", lineno) from None
    if k_idx + 1 >= len(lines):
        raise FormatError("missing 'sigma=' line")
    lineno, sig_line = lines[k_idx + 1]
    if not sig_line.startswith("sigma="):
        raise FormatError(f"expected 'sigma= ...', got {sig_line!r}", lineno)
    try:
        sigma = tuple(int(tok) for tok in sig_line[6:].split())
    except ValueError:
        raise FormatError(f"bad sigma values in {sig_line!r}", lineno) from None
    if k_idx + 2 < len(lines):
        extra_lineno, extra = lines[k_idx + 2]
        raise FormatError(f"unexpected trailing content {extra!r}", extra_lineno)
    try:
        return Representation(host.n, k, host, sigma)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dumps_representation(r: Representation) -> str:
    return (
        dumps_cube(r.host)
        + f"k={r.k}\n"
        + "sigma= " + " ".join(str(c) for c in r.sigma) + "\n"
    )


def loads_hypergraph(text: str) -> KUniformHypergraph:
    lines = _content_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatError("empty hypergraph file") from None
    parts = head.split()
    if len(parts) != 2 or not parts[0].startswith("m=") or not parts[1].startswith("k="):
        raise FormatError(f"expected 'm=<int> k=<int>', got {head!r}", lineno)
    try:
        m, k = int(parts[0][2:]), int(parts[1][2:])
    except ValueError:
        raise FormatError(f"bad header {head!r}", lineno) from None
    edges = []
    for lineno, line in lines:
        try:
            edge = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FormatError(f"bad vertex index in {line!r}", lineno) from None
        if len(edge) != k:
            raise FormatError(f"edge {line!r} has {len(edge)} vertices, expected {k}", lineno)
        edges.append(edge)
    try:
        return KUniformHypergraph(m, k, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dumps_hypergraph(h: KUniformHypergraph) -> str:
    lines = [f"m={h.m} k={h.k}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"
