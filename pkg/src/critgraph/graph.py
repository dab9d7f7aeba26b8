"""Small simple graphs as immutable bit-set adjacency rows.

Vertices are the dense integers 0..n-1 and every vertex subset is a plain
Python int used as a bitmask, so the subset-heavy potential scans and the
exhaustive enumeration stay allocation-free. Graph values are immutable:
every "mutating" operation returns a fresh Graph, which makes them safe to
share across worker processes.

Serialization speaks graph6 (packed ASCII, short form, n <= 62) and the
DIMACS coloring format (``p edge n m`` header plus 1-based ``e u v`` lines).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphFormatError(ValueError):
    """Malformed graph6 or DIMACS input."""


# ---------------------------------------------------------------------------
# bitmask helpers


def mask_of(vertices: Iterable[int]) -> int:
    """Pack vertex ids into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> list[int]:
    """Unpack a bitmask into the sorted list of vertex ids."""
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def as_mask(subset: int | Iterable[int], n: int) -> int:
    """Normalize a vertex subset (bitmask or iterable) to a validated bitmask."""
    if isinstance(subset, int):
        if subset < 0 or subset >> n:
            raise ValueError(f"subset mask {subset:#x} out of range for n={n}")
        return subset
    m = 0
    for v in subset:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# the graph value


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus one adjacency bitmask per vertex.

    Invariants enforced at construction: adjacency is symmetric, no
    self-loops, no bits outside 0..n-1. ``m`` caches the edge count.
    """

    n: int
    adj: tuple[int, ...]
    m: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        degsum = 0
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row of {v} has bits outside 0..n-1")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            degsum += row.bit_count()
        for v, row in enumerate(self.adj):
            r = row
            while r:
                b = r & -r
                r ^= b
                u = b.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "m", degsum // 2)

    # -- queries ------------------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits_of(self.adj[v])

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges (u, v) with u < v in lexicographic order."""
        for u in range(self.n):
            row = self.adj[u] >> (u + 1) << (u + 1)
            while row:
                b = row & -row
                row ^= b
                yield u, b.bit_length() - 1

    def components(self) -> list[int]:
        """Connected components as bitmasks, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = 1 << s
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= self.adj[b.bit_length() - 1]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- functional updates --------------------------------------------------

    def with_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise ValueError("cannot add a self-loop")
        if self.has_edge(u, v):
            raise ValueError(f"edge {u}-{v} already present")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def without_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise ValueError(f"edge {u}-{v} not present")
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def subgraph(self, subset: int | Iterable[int]) -> Graph:
        """Induced subgraph on the given vertices, relabeled compactly in order."""
        mask = as_mask(subset, self.n)
        kept = bits_of(mask)
        idx = {v: i for i, v in enumerate(kept)}
        rows = [0] * len(kept)
        for v in kept:
            r = self.adj[v] & mask
            while r:
                b = r & -r
                r ^= b
                rows[idx[v]] |= 1 << idx[b.bit_length() - 1]
        return Graph(len(kept), tuple(rows))

    def without_vertex(self, v: int) -> Graph:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        return self.subgraph(self.vertex_mask() & ~(1 << v))

    def relabeled(self, perm: Sequence[int]) -> Graph:
        """Apply the bijection perm (old id -> new id) to the vertex labels."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm is not a bijection on 0..n-1")
        rows = [0] * self.n
        for v in range(self.n):
            r = self.adj[v]
            nv = perm[v]
            while r:
                b = r & -r
                r ^= b
                rows[nv] |= 1 << perm[b.bit_length() - 1]
        return Graph(self.n, tuple(rows))


# ---------------------------------------------------------------------------
# constructors


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {u}-{v} out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complete_graph(k: int) -> Graph:
    full = (1 << k) - 1
    return Graph(k, tuple(full & ~(1 << v) for v in range(k)))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return from_edges(k, [(i, i + 1) for i in range(k - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# ---------------------------------------------------------------------------
# vertex identification (gluing)


def identify_vertices_with_map(G: Graph, u: int, v: int) -> tuple[Graph, list[int]]:
    """Glue two non-adjacent vertices; also return the old->new vertex map.

    The merged vertex keeps the label min(u, v); labels above max(u, v)
    shift down by one. Parallel edges collapse, so the result is simple.
    """
    if u == v:
        raise ValueError("cannot identify a vertex with itself")
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise ValueError("vertex out of range")
    if G.has_edge(u, v):
        raise ValueError(f"{u} and {v} are adjacent; gluing would create a loop")
    lo, hi = min(u, v), max(u, v)

    def newid(w: int) -> int:
        if w == hi:
            return lo
        return w if w < hi else w - 1

    rows = [0] * (G.n - 1)
    for a, b in G.edges():
        na, nb = newid(a), newid(b)
        rows[na] |= 1 << nb
        rows[nb] |= 1 << na
    return Graph(G.n - 1, tuple(rows)), [newid(w) for w in range(G.n)]


def identify_vertices(G: Graph, u: int, v: int) -> Graph:
    """Glue two non-adjacent vertices into one (see identify_vertices_with_map)."""
    return identify_vertices_with_map(G, u, v)[0]


# ---------------------------------------------------------------------------
# subset edge counting and triangles


def edges_within(G: Graph, subset: int | Iterable[int]) -> int:
    """Number of edges with both endpoints in the given subset."""
    mask = as_mask(subset, G.n)
    total = 0
    r = mask
    while r:
        b = r & -r
        r ^= b
        total += (G.adj[b.bit_length() - 1] & mask).bit_count()
    return total // 2


def first_triangle(G: Graph) -> tuple[int, int, int] | None:
    """First triangle in edge order, or None if the graph is triangle-free."""
    for u, v in G.edges():
        common = G.adj[u] & G.adj[v]
        if common:
            w = (common & -common).bit_length() - 1
            return tuple(sorted((u, v, w)))  # type: ignore[return-value]
    return None


# ---------------------------------------------------------------------------
# graph6


def write_graph6(G: Graph) -> str:
    """Encode in short-form graph6: length byte 63+n, then the upper triangle
    column by column, packed into 6-bit chunks offset by 63, zero padded."""
    if G.n > 62:
        raise ValueError("short-form graph6 supports n <= 62 only")
    out = [chr(63 + G.n)]
    acc = 0
    nbits = 0
    for j in range(1, G.n):
        for i in range(j):
            acc = acc << 1 | (G.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one short-form graph6 line (an optional '>>graph6<<' header is
    tolerated and stripped)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :].strip()
    if not s:
        raise GraphFormatError("empty graph6 string")
    c0 = ord(s[0])
    if c0 == 126:
        raise GraphFormatError("long-form graph6 (n > 62) is not supported")
    n = c0 - 63
    if not 0 <= n <= 62:
        raise GraphFormatError(f"malformed graph6 length byte {s[0]!r}")
    npairs = n * (n - 1) // 2
    need = (npairs + 5) // 6
    data = s[1:]
    if len(data) < need:
        raise GraphFormatError("graph6 string truncated")
    if len(data) > need:
        raise GraphFormatError("trailing garbage after graph6 data")
    bits: list[int] = []
    for ch in data:
        val = ord(ch) - 63
        if not 0 <= val <= 63:
            raise GraphFormatError(f"invalid graph6 character {ch!r}")
        for k in range(5, -1, -1):
            bits.append(val >> k & 1)
    if any(bits[npairs:]):
        raise GraphFormatError("nonzero padding bits in graph6 data")
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# DIMACS col


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS coloring input: 'c' comments, one 'p edge n m' line,
    'e u v' edge lines with 1-based vertices."""
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "col"):
                raise GraphFormatError(f"line {lineno}: malformed problem line")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: malformed problem line") from exc
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: malformed edge line")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: malformed edge line") from exc
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {lineno}: vertex out of range")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop")
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing problem line")
    return from_edges(n, edges)


def write_dimacs(G: Graph) -> str:
    lines = [f"p edge {G.n} {G.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# canonical labeling (n <= 16)


def _refined_colors(G: Graph) -> list[int]:
    """Iterated degree refinement. The returned dense color ids are a graph
    invariant: re-keying sorts the (old color, neighbor multiset) signatures."""
    colors = [row.bit_count() for row in G.adj]
    while True:
        keys = []
        for v in range(G.n):
            nb = sorted(colors[u] for u in bits_of(G.adj[v]))
            keys.append((colors[v], tuple(nb)))
        lut = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [lut[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def canonical_form(G: Graph) -> Graph:
    """Relabeling of G that maximizes the packed adjacency encoding.

    Isomorphic inputs map to the same output graph. Degree refinement fixes
    which color class each position draws from; a branch-and-bound search
    over consistent orderings maximizes the column-by-column upper-triangle
    bits. Branches that place one of a pair of twins (vertices with the same
    neighborhood off the pair) are skipped, since swapping twins is an
    automorphism. Capped at n <= 16: all enumeration targets are small.
    """
    n = G.n
    if n > 16:
        raise ValueError("canonical labeling is capped at n <= 16")
    if n <= 1:
        return G
    adj = G.adj
    colors = _refined_colors(G)
    pattern = sorted(colors, reverse=True)

    best_cols: list[int] | None = None
    best_perm: list[int] | None = None
    version = 0
    placed: list[int] = []
    cols: list[int] = []
    unplaced = (1 << n) - 1

    def twins(a: int, b: int) -> bool:
        d = adj[a] ^ adj[b]
        return not d & ~((1 << a) | (1 << b))

    def rec(rel: int) -> None:
        # rel: 0 = prefix ties the incumbent, 1 = strictly beats it
        nonlocal best_cols, best_perm, version, unplaced
        depth = len(placed)
        if depth == n:
            if best_cols is None or rel == 1:
                best_cols = cols.copy()
                best_perm = placed.copy()
                version += 1
            return
        want = pattern[depth]
        cands = []
        for v in bits_of(unplaced):
            if colors[v] != want:
                continue
            code = 0
            av = adj[v]
            for p in placed:
                code = code << 1 | (av >> p & 1)
            cands.append((code, v))
        cands.sort(key=lambda t: (-t[0], t[1]))
        kept: list[tuple[int, int]] = []
        for code, v in cands:
            if any(c == code and twins(v, w) for c, w in kept):
                continue
            kept.append((code, v))
        local_rel = rel
        for code, v in kept:
            crel = local_rel
            if best_cols is not None and local_rel == 0:
                b = best_cols[depth]
                if code < b:
                    break  # kept is sorted by code descending
                if code > b:
                    crel = 1
            seen = version
            placed.append(v)
            cols.append(code)
            unplaced ^= 1 << v
            rec(crel)
            unplaced ^= 1 << v
            cols.pop()
            placed.pop()
            if version != seen:
                # improvement below: our prefix is now exactly the incumbent's
                local_rel = 0

    rec(0)
    assert best_perm is not None
    pos = [0] * n
    for i, v in enumerate(best_perm):
        pos[v] = i
    return G.relabeled(pos)


def canonical_label(G: Graph) -> bytes:
    """Canonical byte string: graph6 of the canonical relabeling. Equal for
    isomorphic graphs, distinct otherwise (within the n <= 16 scope)."""
    return write_graph6(canonical_form(G)).encode("ascii")
