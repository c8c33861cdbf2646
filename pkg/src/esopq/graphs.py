"""Graph ingestion, generation, and exact maximum-independent-set oracles.

Vertices are 0-indexed everywhere.  A vertex subset is represented as an
n-bit integer mask with bit ``i`` set when vertex ``i`` is in the subset.

Edge *order* is semantically meaningful downstream (the XOR-of-cubes
expansion of the independence constraints depends on it), so every
construction path fixes a documented, deterministic order:

* graphs parsed from graph6 keep the graph6 bit order, i.e. the
  column-major upper-triangle order (0,1), (0,2), (1,2), (0,3), ...;
* randomly generated graphs use lexicographic (i, j) order;
* :func:`p4_fixture` pins a hand-picked order for the path on four
  vertices so its derived cube set stays stable for golden tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

#: Largest vertex count a single-byte graph6 size header can express.
GRAPH6_MAX_N = 62

#: Desk-scale cap for anything that enumerates all 2^n assignments.
ENUMERATION_MAX_N = 24


class Graph6Error(ValueError):
    """Base class for graph6 codec failures."""


class Graph6HeaderError(Graph6Error):
    """Size header missing, out of range, or unsupported."""


class Graph6LengthError(Graph6Error):
    """Body byte count does not match the vertex count."""


class Graph6PaddingError(Graph6Error):
    """Trailing pad bits of the last body byte are not zero."""


class Graph6ByteError(Graph6Error):
    """A byte falls outside the printable graph6 range 63..126."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with an explicit, ordered edge list.

    ``edges[k]`` is edge number ``k``; each edge is a pair ``(i, j)`` with
    ``i < j``.  The sequence order is part of the value and is preserved
    by all operations that accept a Graph.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= GRAPH6_MAX_N:
            raise ValueError(f"vertex count {self.n} outside 1..{GRAPH6_MAX_N}")
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge ({i}, {j}) for n={self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        neigh: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            neigh[i].append(j)
            neigh[j].append(i)
        return tuple(tuple(sorted(a)) for a in neigh)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def graph6_pair_order(n: int):
    """Yield vertex pairs in graph6 bit order: (0,1), (0,2), (1,2), (0,3), ..."""
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> Graph:
    """Decode a single graph6 token into a :class:`Graph`.

    The token is one header byte ``n + 63`` (n <= 62) followed by
    ``ceil(n(n-1)/2 / 6)`` body bytes, each carrying six adjacency bits of
    the column-major upper triangle, most significant bit first, zero
    padded at the end.  An optional ``>>graph6<<`` prefix is tolerated.

    Raises a distinct :class:`Graph6Error` subclass for a malformed
    header, a wrong body length, nonzero pad bits, or a byte outside the
    printable range.
    """
    token = text.strip()
    if token.startswith(">>graph6<<"):
        token = token[len(">>graph6<<"):]
    try:
        data = token.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6ByteError(f"non-ASCII byte in graph6 token: {token!r}") from exc
    if not data:
        raise Graph6HeaderError("empty graph6 token")
    head = data[0]
    if head == 126:
        raise Graph6HeaderError("multi-byte size header (n > 62) not supported")
    if not 63 <= head <= 125:
        raise Graph6HeaderError(f"size header byte {head} outside 63..125")
    n = head - 63
    if n < 1:
        raise Graph6HeaderError("graphs need at least one vertex")

    body = data[1:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise Graph6LengthError(
            f"n={n} needs {expected} body bytes, got {len(body)}"
        )
    for b in body:
        if not 63 <= b <= 126:
            raise Graph6ByteError(f"body byte {b} outside 63..126")

    edges = []
    for k, (i, j) in enumerate(graph6_pair_order(n)):
        bit = ((body[k // 6] - 63) >> (5 - k % 6)) & 1
        if bit:
            edges.append((i, j))
    if nbits % 6:
        pad_mask = (1 << (6 - nbits % 6)) - 1
        if (body[-1] - 63) & pad_mask:
            raise Graph6PaddingError("nonzero pad bits in final body byte")
    return Graph(n, tuple(edges))


def encode_graph6(g: Graph) -> str:
    """Encode a graph's adjacency as a graph6 token.

    Only the adjacency is encoded; the edge order of ``g`` is not
    recoverable from the token (decoding always yields graph6 order).
    """
    nbits = g.n * (g.n - 1) // 2
    edge_set = g.edge_set
    out = [g.n + 63]
    acc = 0
    filled = 0
    for pair in graph6_pair_order(g.n):
        acc = (acc << 1) | (1 if pair in edge_set else 0)
        filled += 1
        if filled == 6:
            out.append(acc + 63)
            acc, filled = 0, 0
    if filled:
        out.append((acc << (6 - filled)) + 63)
    assert len(out) - 1 == (nbits + 5) // 6
    return bytes(out).decode("ascii")


def read_graph6_file(path) -> list[Graph]:
    """Parse a file with one graph6 token per line; blank lines are skipped."""
    graphs = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                graphs.append(parse_graph6(line))
    return graphs


def _is_connected(n: int, adjacency) -> bool:
    if n == 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def random_connected_graph(
    n: int,
    edge_prob: float = 0.5,
    seed: int = 0,
    max_tries: int = 1000,
) -> Graph:
    """Sample a connected G(n, p) graph, deterministic per (n, p, seed).

    Each candidate flips one coin per vertex pair in lexicographic order
    and keeps the first connected draw.  Gives up after ``max_tries``
    rejections, which signals that ``edge_prob`` is too low for ``n``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not 0.0 < edge_prob <= 1.0:
        raise ValueError("edge_prob must be in (0, 1]")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = tuple(
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < edge_prob
        )
        neigh: list[list[int]] = [[] for _ in range(n)]
        for i, j in edges:
            neigh[i].append(j)
            neigh[j].append(i)
        if _is_connected(n, neigh):
            return Graph(n, edges)
    raise RuntimeError(
        f"no connected graph after {max_tries} draws of G({n}, {edge_prob})"
    )


def is_independent(g: Graph, bits: int) -> bool:
    """True when no edge of ``g`` has both endpoints inside the mask."""
    return all((bits >> i) & (bits >> j) & 1 == 0 for i, j in g.edges)


def brute_force_mis(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exhaustive maximum-independent-set oracle.

    Enumerates all 2^n vertex masks and returns ``(alpha, optima)`` where
    ``alpha`` is the independence number and ``optima`` lists every mask
    of an independent set of that size, in ascending mask order.
    """
    if g.n > ENUMERATION_MAX_N:
        raise ValueError(f"n={g.n} exceeds the 2^n enumeration cap {ENUMERATION_MAX_N}")
    z = np.arange(1 << g.n, dtype=np.uint64)
    ok = np.ones(z.shape, dtype=bool)
    for i, j in g.edges:
        ok &= ((z >> np.uint64(i)) & (z >> np.uint64(j)) & np.uint64(1)) == 0
    pop = np.bitwise_count(z)
    alpha = int(pop[ok].max())
    optima = z[ok & (pop == alpha)]
    return alpha, tuple(int(m) for m in optima)


def p4_fixture() -> Graph:
    """The path on four vertices with the fixed edge order (1,3), (0,3), (0,2).

    Golden tests pin the cube set this order produces; the adjacency is
    the same path the graph6 token ``CU`` decodes to, only the edge
    sequence differs.
    """
    return Graph(4, ((1, 3), (0, 3), (0, 2)))
