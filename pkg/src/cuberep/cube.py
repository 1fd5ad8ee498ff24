"""Bit-level model of the hypercube Q_n, its subgraphs, and a generic
subgraph-isomorphism oracle.

Vertices of Q_n live in {0,1}^n and are stored as integer bitmasks.
Coordinate positions are 1-indexed; position 1 is the leftmost character
of the textual form, so ``[01*11]`` has ones at positions {2,4,5} and its
flip-bit at position 3.  An edge joins the two vertices that agree on the
ones-mask and differ exactly at the flip-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Optional

DIMENSION_CAP = 24      # hard refusal above this
MATERIALIZE_CAP = 16    # full_cube() builds explicit edge lists only up to here
COPY_VERTEX_CAP = 20    # pattern-size guard for the isomorphism search


class FormatError(ValueError):
    """Malformed textual input; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapError(ValueError):
    """A configured resource cap would be exceeded."""


def mask_of(positions: Iterable[int]) -> int:
    m = 0
    for p in positions:
        m |= 1 << (p - 1)
    return m


def positions_of(mask: int) -> tuple[int, ...]:
    out = []
    p = 1
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return tuple(out)


@dataclass(frozen=True, slots=True)
class CubeVertex:
    """A vertex of Q_n: the set of positions holding a 1, as a bitmask."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"vertex bits outside dimension {self.n}")

    @property
    def level(self) -> int:
        return self.bits.bit_count()

    def positions(self) -> tuple[int, ...]:
        return positions_of(self.bits)

    def __str__(self) -> str:
        return "[" + "".join(
            "1" if (self.bits >> i) & 1 else "0" for i in range(self.n)
        ) + "]"


@dataclass(frozen=True, slots=True)
class CubeEdge:
    """An edge of Q_n: a ones-mask plus the 1-indexed flip-bit position."""

    n: int
    ones: int
    flip: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if not 1 <= self.flip <= self.n:
            raise ValueError(f"flip position {self.flip} outside [1, {self.n}]")
        if self.ones < 0 or self.ones >> self.n:
            raise ValueError(f"ones mask outside dimension {self.n}")
        if (self.ones >> (self.flip - 1)) & 1:
            raise ValueError(f"flip position {self.flip} must not carry a one")

    @property
    def level(self) -> int:
        """Level j of the lower endpoint; the edge joins levels j and j+1."""
        return self.ones.bit_count()

    @property
    def support(self) -> int:
        """Mask of all non-zero bits: ones plus the flip-bit."""
        return self.ones | (1 << (self.flip - 1))

    def endpoints(self) -> tuple[CubeVertex, CubeVertex]:
        lo = CubeVertex(self.n, self.ones)
        hi = CubeVertex(self.n, self.ones | (1 << (self.flip - 1)))
        return lo, hi

    def sort_key(self) -> tuple[tuple[int, ...], int]:
        return positions_of(self.ones), self.flip

    def __str__(self) -> str:
        chars = []
        for i in range(self.n):
            if i == self.flip - 1:
                chars.append("*")
            elif (self.ones >> i) & 1:
                chars.append("1")
            else:
                chars.append("0")
        return "[" + "".join(chars) + "]"


def parse_edge(text: str, line: int | None = None) -> CubeEdge:
    """Parse a {0,1,*} string such as ``[01*11]`` into a CubeEdge.

    Brackets and interior whitespace are optional; exactly one '*' is
    required and the string length (after stripping) fixes the dimension.
    """
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    body = "".join(body.split())
    if not body:
        raise FormatError("empty edge string", line)
    ones = 0
    flip = None
    for i, ch in enumerate(body):
        if ch == "1":
            ones |= 1 << i
        elif ch == "*":
            if flip is not None:
                raise FormatError(f"multiple '*' in edge {text!r}", line)
            flip = i + 1
        elif ch != "0":
            raise FormatError(f"invalid character {ch!r} in edge {text!r}", line)
    if flip is None:
        raise FormatError(f"no '*' in edge {text!r}", line)
    return CubeEdge(len(body), ones, flip)


def render_edge(e: CubeEdge) -> str:
    return str(e)


def edge_endpoints(e: CubeEdge) -> tuple[CubeVertex, CubeVertex]:
    return e.endpoints()


def edge_level(e: CubeEdge) -> int:
    return e.level


class CubeSubgraph:
    """A dimension n plus a canonical set of edges of Q_n.

    Edges are deduplicated and stored sorted by (ones as a position list,
    flip), so equal subgraphs compare and render identically.
    """

    __slots__ = ("n", "edges", "_keys")

    def __init__(self, n: int, edges: Iterable[CubeEdge] = ()):
        if n < 1:
            raise ValueError("dimension must be positive")
        if n > DIMENSION_CAP:
            raise CapError(f"dimension {n} exceeds cap {DIMENSION_CAP}")
        seen: dict[tuple[int, int], CubeEdge] = {}
        for e in edges:
            if e.n != n:
                raise ValueError(f"edge {e} has dimension {e.n}, expected {n}")
            seen[(e.ones, e.flip)] = e
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self, "edges", tuple(sorted(seen.values(), key=CubeEdge.sort_key))
        )
        object.__setattr__(self, "_keys", frozenset(seen))

    def __setattr__(self, name, value):
        raise AttributeError("CubeSubgraph is immutable")

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[CubeEdge]:
        return iter(self.edges)

    def __contains__(self, e: CubeEdge) -> bool:
        return e.n == self.n and (e.ones, e.flip) in self._keys

    def has_edge(self, ones: int, flip: int) -> bool:
        return (ones, flip) in self._keys

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CubeSubgraph)
            and self.n == other.n
            and self._keys == other._keys
        )

    def __hash__(self) -> int:
        return hash((self.n, self._keys))

    def __repr__(self) -> str:
        return f"CubeSubgraph(n={self.n}, edges={len(self.edges)})"

    def edges_at_level(self, j: int) -> tuple[CubeEdge, ...]:
        return tuple(e for e in self.edges if e.level == j)

    def vertex_masks(self) -> tuple[int, ...]:
        """Masks of all edge endpoints, ascending (isolated vertices of Q_n
        are not part of the stored data)."""
        out = set()
        for e in self.edges:
            out.add(e.ones)
            out.add(e.support)
        return tuple(sorted(out))


def iter_full_cube_edges(n: int) -> Iterator[CubeEdge]:
    """All 2^(n-1) * n edges of Q_n, without materializing a subgraph."""
    if n < 1:
        raise ValueError("dimension must be positive")
    if n > DIMENSION_CAP:
        raise CapError(f"dimension {n} exceeds cap {DIMENSION_CAP}")
    for ones in range(1 << n):
        for flip in range(1, n + 1):
            if not (ones >> (flip - 1)) & 1:
                yield CubeEdge(n, ones, flip)


def full_cube(n: int) -> CubeSubgraph:
    """Q_n itself.  Materialized up to n=16; use iter_full_cube_edges above
    that (2^n growth makes explicit lists pointless)."""
    if n > MATERIALIZE_CAP:
        raise CapError(
            f"full_cube materializes only up to n={MATERIALIZE_CAP}; "
            f"use iter_full_cube_edges for n={n}"
        )
    return CubeSubgraph(n, iter_full_cube_edges(n))


@dataclass(frozen=True)
class AbstractGraph:
    """A simple unlabeled graph: vertex count plus sorted edge list.

    Vertices are 0-based indices.  'A copy of H' everywhere in this package
    means an injective vertex map sending every H-edge to an edge of the
    target, i.e. ordinary (not induced) subgraph isomorphism.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u},{v}) outside vertex range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def _pattern_order(H: AbstractGraph) -> list[int]:
    """Vertex order for backtracking: descending degree, then preferring
    vertices adjacent to already-ordered ones (fail-first)."""
    deg = H.degrees()
    adj = H.adjacency()
    remaining = {v for v in range(H.n_vertices) if deg[v] > 0}
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        best = max(
            remaining,
            key=lambda v: (len(adj[v] & placed), deg[v], -v),
        )
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order


def _find_monomorphism(
    H: AbstractGraph,
    target_adj: dict[int, set[int]],
    all_targets: list[int],
    yield_all: bool = False,
) -> Iterator[dict[int, int]]:
    """Backtracking search for injective maps from H into a target adjacency
    structure (target vertices are opaque ints).  Yields complete maps; stops
    after the first one unless yield_all."""
    order = _pattern_order(H)
    deg_h = H.degrees()
    adj_h = H.adjacency()
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> Iterator[dict[int, int]]:
        if i == len(order):
            yield dict(assignment)
            return
        v = order[i]
        mapped_nbrs = [assignment[w] for w in adj_h[v] if w in assignment]
        if mapped_nbrs:
            cands = set(target_adj.get(mapped_nbrs[0], ()))
            for t in mapped_nbrs[1:]:
                cands &= target_adj.get(t, set())
            cand_list = sorted(cands)
        else:
            cand_list = all_targets
        for c in cand_list:
            if c in used or len(target_adj.get(c, ())) < deg_h[v]:
                continue
            assignment[v] = c
            used.add(c)
            yield from extend(i + 1)
            del assignment[v]
            used.remove(c)

    for m in extend(0):
        yield m
        if not yield_all:
            return


def find_abstract_copy(
    G: CubeSubgraph, H: AbstractGraph, vertex_cap: int = COPY_VERTEX_CAP
) -> Optional[dict[int, CubeVertex]]:
    """Search G for a copy of H; return an injective vertex map or None.

    The map sends every H-vertex to a CubeVertex and every H-edge to an
    edge of G.  None means the exhaustive backtracking tree was emptied.
    Isolated H-vertices are placed on arbitrary unused cube vertices.
    """
    if H.n_vertices > vertex_cap:
        raise CapError(f"pattern has {H.n_vertices} vertices, cap is {vertex_cap}")
    adj: dict[int, set[int]] = {}
    for e in G.edges:
        lo, hi = e.ones, e.support
        adj.setdefault(lo, set()).add(hi)
        adj.setdefault(hi, set()).add(lo)
    all_targets = sorted(adj)
    for partial in _find_monomorphism(H, adj, all_targets):
        deg = H.degrees()
        isolated = [v for v in range(H.n_vertices) if deg[v] == 0]
        if isolated:
            used = set(partial.values())
            fresh = (m for m in range(1 << G.n) if m not in used)
            try:
                for v in isolated:
                    partial[v] = next(fresh)
            except StopIteration:
                return None
        return {v: CubeVertex(G.n, m) for v, m in partial.items()}
    return None


def cube_to_abstract(sg: CubeSubgraph) -> tuple[AbstractGraph, list[int]]:
    """Forget cube structure: relabel the incident vertices 0..m-1.
    Returns the abstract graph and the mask of each abstract vertex."""
    masks = list(sg.vertex_masks())
    index = {m: i for i, m in enumerate(masks)}
    edges = [(index[e.ones], index[e.support]) for e in sg.edges]
    return AbstractGraph(len(masks), tuple(edges)), masks


def abstract_isomorphic(a: AbstractGraph, b: AbstractGraph) -> bool:
    """True iff a and b are isomorphic as simple graphs (exact, backtracking)."""
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    adj_b = {v: nbrs for v, nbrs in enumerate(b.adjacency())}
    all_targets = list(range(b.n_vertices))
    # Injective monomorphism with equal vertex/edge counts is an isomorphism.
    for _ in _find_monomorphism(a, adj_b, all_targets):
        return True
    return a.n_edges == 0  # edge counts equal, so both edgeless


def cube_graphs_isomorphic(a: CubeSubgraph, b: CubeSubgraph) -> bool:
    """Abstract-graph isomorphism of two cube subgraphs (edge-incident parts)."""
    ga, _ = cube_to_abstract(a)
    gb, _ = cube_to_abstract(b)
    return abstract_isomorphic(ga, gb)


# --- file formats ---------------------------------------------------------
#
# Cube subgraph:   first line `n=<int>`, then one edge per line in {0,1,*}
#                  form (brackets optional); `#` starts a comment line.
# Abstract graph:  first line `v=<int>`, then one edge per line as two
#                  0-based vertex indices; `#` comments as above.


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line


def loads_cube(text: str) -> CubeSubgraph:
    lines = _content_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatError("empty cube subgraph file") from None
    if not head.startswith("n="):
        raise FormatError(f"expected 'n=<int>', got {head!r}", lineno)
    try:
        n = int(head[2:])
    except ValueError:
        raise FormatError(f"bad dimension {head!r}", lineno) from None
    edges = []
    for lineno, line in lines:
        e = parse_edge(line, line=lineno)
        if e.n != n:
            raise FormatError(
                f"edge {line!r} has length {e.n}, expected {n}", lineno
            )
        edges.append(e)
    return CubeSubgraph(n, edges)


def dumps_cube(sg: CubeSubgraph) -> str:
    lines = [f"n={sg.n}"]
    lines.extend(str(e) for e in sg.edges)
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> AbstractGraph:
    lines = _content_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatError("empty graph file") from None
    if not head.startswith("v="):
        raise FormatError(f"expected 'v=<int>', got {head!r}", lineno)
    try:
        nv = int(head[2:])
    except ValueError:
        raise FormatError(f"bad vertex count {head!r}", lineno) from None
    edges = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"bad vertex index in {line!r}", lineno) from None
        edges.append((u, v))
    try:
        return AbstractGraph(nv, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dumps_graph(g: AbstractGraph) -> str:
    lines = [f"v={g.n_vertices}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def level_edge_capacity(n: int, j: int) -> int:
    """Number of Q_n edges between levels j and j+1: (n-j) * C(n,j)."""
    if not 0 <= j < n:
        return 0
    return (n - j) * comb(n, j)
