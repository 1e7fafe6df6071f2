"""Small simple graphs stored as per-vertex adjacency bitsets.

Rows are kept as a ``(n, words)`` array of ``uint64`` so the counting kernels
can intersect neighbourhoods word by word.  Python-int rows are cached for the
many places where a single arbitrary-width bitmask is more convenient.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Sequence

import numpy as np

MAX_VERTICES = 512

# Labeling used throughout: pendants z1, z2, z3 hang off triangle z4, z5, z6.
NET_EDGES = ((0, 3), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5))


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} (byte offset {offset})")
        self.offset = offset


def n_words(n: int) -> int:
    return max(1, (n + 63) // 64)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "_rows")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        self.n = n
        self.adj = np.zeros((n, n_words(n)), dtype=np.uint64)
        self._rows = None
        for u, v in edges:
            self._set(u, v)

    def _set(self, u: int, v: int, on: bool = True) -> None:
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
        for a, b in ((u, v), (v, u)):
            w, bit = divmod(b, 64)
            mask = np.uint64(1) << np.uint64(bit)
            if on:
                self.adj[a, w] |= mask
            else:
                self.adj[a, w] &= ~mask
        self._rows = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        n = len(rows)
        g = cls(n)
        for u, r in enumerate(rows):
            for w in range(g.adj.shape[1]):
                g.adj[u, w] = np.uint64((r >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        g._check_symmetric()
        return g

    @classmethod
    def from_matrix(cls, mat) -> "Graph":
        m = np.asarray(mat, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise GraphError("adjacency matrix must be square")
        if np.any(np.diag(m)) or np.any(m != m.T):
            raise GraphError("adjacency matrix must be symmetric with zero diagonal")
        us, vs = np.nonzero(np.triu(m, 1))
        return cls(m.shape[0], zip(us.tolist(), vs.tolist()))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Graph whose edge ``i`` of ``itertools.combinations(range(n), 2)`` is bit ``i``."""
        pairs = itertools.combinations(range(n), 2)
        return cls(n, (p for i, p in enumerate(pairs) if mask >> i & 1))

    def _check_symmetric(self) -> None:
        m = self.matrix()
        if np.any(np.diag(m)) or np.any(m != m.T):
            raise GraphError("adjacency rows are not symmetric / loop-free")

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.adj = self.adj.copy()
        g._rows = self._rows
        return g

    # views ----------------------------------------------------------------

    @property
    def rows(self) -> list[int]:
        if self._rows is None:
            rows = []
            for u in range(self.n):
                r = 0
                for w in range(self.adj.shape[1] - 1, -1, -1):
                    r = (r << 64) | int(self.adj[u, w])
                rows.append(r)
            self._rows = rows
        return self._rows

    def matrix(self) -> np.ndarray:
        bits = np.unpackbits(self.adj.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.n].astype(bool)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        r = self.rows[v]
        return [u for u in range(self.n) if r >> u & 1]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count() if hasattr(int, "bit_count") else bin(self.rows[v]).count("1")

    def degrees(self) -> list[int]:
        return [bin(r).count("1") for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors(u) if u < v]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def triangles(self) -> list[tuple[int, int, int]]:
        rows = self.rows
        out = []
        for a in range(self.n):
            hi = rows[a] >> (a + 1) << (a + 1)
            for b in _bits(hi):
                for c in _bits(hi & rows[b] >> (b + 1) << (b + 1)):
                    out.append((a, b, c))
        return out

    # derived graphs -------------------------------------------------------

    def induced(self, vertices: Sequence[int]) -> "Graph":
        vs = list(vertices)
        rows = self.rows
        sub = []
        for u in vs:
            r = 0
            for j, v in enumerate(vs):
                if rows[u] >> v & 1:
                    r |= 1 << j
            sub.append(r)
        return Graph.from_rows(sub)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` of ``self`` becomes vertex ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation")
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def toggled(self, u: int, v: int) -> "Graph":
        g = self.copy()
        g._set(u, v, not self.has_edge(u, v))
        return g

    def without(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced([v for v in range(self.n) if v not in drop])

    def complement(self) -> "Graph":
        return Graph(self.n, ((u, v) for u, v in itertools.combinations(range(self.n), 2)
                              if not self.has_edge(u, v)))

    # comparisons ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.rows)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "adjacency": [self.neighbors(v) for v in range(self.n)]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        adjacency = data["adjacency"]
        if len(adjacency) != n:
            raise GraphError("adjacency list length does not match n")
        edges = set()
        for u, nbrs in enumerate(adjacency):
            for v in nbrs:
                edges.add((min(u, v), max(u, v)))
        g = cls(n, edges)
        for u, nbrs in enumerate(adjacency):
            if sorted(set(nbrs)) != g.neighbors(u):
                raise GraphError(f"adjacency list for vertex {u} is not symmetric")
        return g


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits(x: int) -> list[int]:
    return list(_bits(x))


def make_net() -> Graph:
    """The net: triangle z4 z5 z6 with pendants z1-z4, z2-z5, z3-z6 (0-based)."""
    return Graph(6, NET_EDGES)


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_matrix(upper | upper.T)


# graph6 --------------------------------------------------------------------

_HEADER = ">>graph6<<"


def emit_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~"] + [chr(((n >> s) & 63) + 63) for s in (12, 6, 0)]
    rows = g.rows
    bitstream = [rows[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bitstream += [0] * (-len(bitstream) % 6)
    for k in range(0, len(bitstream), 6):
        val = 0
        for b in bitstream[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip("\n")
    start = 0
    if s.startswith(_HEADER):
        start = len(_HEADER)
    if start >= len(s):
        raise Graph6Error("empty graph6 string", start)
    for i in range(start, len(s)):
        if not 63 <= ord(s[i]) <= 126:
            raise Graph6Error(f"invalid graph6 character {s[i]!r}", i)
    pos = start
    if s[pos] == "~":
        if pos + 1 < len(s) and s[pos + 1] == "~":
            raise Graph6Error("graphs this large are not supported", pos)
        if len(s) < pos + 4:
            raise Graph6Error("truncated size field", pos)
        n = 0
        for c in s[pos + 1:pos + 4]:
            n = (n << 6) | (ord(c) - 63)
        pos += 4
    else:
        n = ord(s[pos]) - 63
        pos += 1
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} outside 1..{MAX_VERTICES}", start)
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != nchars:
        raise Graph6Error(f"expected {nchars} data bytes, found {len(body)}", pos + min(len(body), nchars))
    vals = [ord(c) - 63 for c in body]
    pad = nchars * 6 - nbits
    if pad and vals and vals[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", pos + nchars - 1)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, off = divmod(k, 6)
            if vals[byte] >> (5 - off) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph.from_rows(rows)
