"""Induced-subgraph counting, with a fast path for the net.

Every induced net has exactly one triangle.  For a triangle ``abc`` the
candidate pendants of ``a`` are ``N(a) - N(b) - N(c)``; a net is a triangle
plus one candidate pendant per corner, the three pendants pairwise
non-adjacent.  Counting such triples word-by-word over the bitset rows is the
whole kernel.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from . import _jit
from ._jit import njit
from .canon import canonical_form
from .graph import Graph, GraphError, make_net

GENERIC_MAX_VERTICES = 64


# --------------------------------------------------------------------------
# numba kernels

@njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _has(adj, u, v):
    return (adj[u, v >> 6] >> np.uint64(v & 63)) & np.uint64(1)


@njit(cache=True)
def _members(mask, n, out):
    k = 0
    for w in range(mask.shape[0]):
        x = mask[w]
        base = w * 64
        while x:
            low = x & (~x + np.uint64(1))
            b = 0
            t = low
            while t > np.uint64(1):
                t >>= np.uint64(1)
                b += 1
            out[k] = base + b
            k += 1
            x ^= low
    return k


@njit(cache=True)
def _net_kernel(adj, per_vertex, want_per_vertex):
    n, nw = adj.shape
    total = np.int64(0)
    pa = np.empty(nw, np.uint64)
    pb = np.empty(nw, np.uint64)
    pc = np.empty(nw, np.uint64)
    qb = np.empty(nw, np.uint64)
    rr = np.empty(nw, np.uint64)
    ia = np.empty(n, np.int64)
    ib = np.empty(n, np.int64)
    ir = np.empty(n, np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            if not _has(adj, a, b):
                continue
            for c in range(b + 1, n):
                if not (_has(adj, a, c) and _has(adj, b, c)):
                    continue
                for w in range(nw):
                    pa[w] = adj[a, w] & ~adj[b, w] & ~adj[c, w]
                    pb[w] = adj[b, w] & ~adj[a, w] & ~adj[c, w]
                    pc[w] = adj[c, w] & ~adj[a, w] & ~adj[b, w]
                na = _members(pa, n, ia)
                tri = np.int64(0)
                for s in range(na):
                    p = ia[s]
                    for w in range(nw):
                        qb[w] = pb[w] & ~adj[p, w]
                    nb = _members(qb, n, ib)
                    sub_p = np.int64(0)
                    for t in range(nb):
                        q = ib[t]
                        k = np.int64(0)
                        for w in range(nw):
                            rr[w] = pc[w] & ~adj[p, w] & ~adj[q, w]
                            k += _popcount(rr[w])
                        sub_p += k
                        if want_per_vertex and k:
                            per_vertex[q] += k
                            nr = _members(rr, n, ir)
                            for u in range(nr):
                                per_vertex[ir[u]] += 1
                    if want_per_vertex:
                        per_vertex[p] += sub_p
                    tri += sub_p
                if want_per_vertex:
                    per_vertex[a] += tri
                    per_vertex[b] += tri
                    per_vertex[c] += tri
                total += tri
    return total


# --------------------------------------------------------------------------
# numpy fallback

def _net_numpy(g: Graph, want_per_vertex: bool):
    m = g.matrix()
    non = ~m
    per = np.zeros(g.n, dtype=np.int64)
    total = 0
    for a, b, c in g.triangles():
        sa = m[a] & non[b] & non[c]
        sb = m[b] & non[a] & non[c]
        sc = m[c] & non[a] & non[b]
        ia, ib, ic = np.flatnonzero(sa), np.flatnonzero(sb), np.flatnonzero(sc)
        if not (ia.size and ib.size and ic.size):
            continue
        pair_ok = non[np.ix_(ia, ib)].astype(np.int64)
        fa = non[np.ix_(ia, ic)].astype(np.int64)
        fb = non[np.ix_(ib, ic)].astype(np.int64)
        k = (fa @ fb.T) * pair_ok
        tri = int(k.sum())
        total += tri
        if want_per_vertex and tri:
            per[[a, b, c]] += tri
            np.add.at(per, ia, k.sum(axis=1))
            np.add.at(per, ib, k.sum(axis=0))
            np.add.at(per, ic, (fa * (pair_ok @ fb)).sum(axis=0))
    return total, per


def _net_counts(g: Graph, want_per_vertex: bool):
    if _jit.HAS_NUMBA:
        per = np.zeros(g.n, dtype=np.int64)
        total = _net_kernel(g.adj, per, want_per_vertex)
        return int(total), per
    total, per = _net_numpy(g, want_per_vertex)
    return int(total), per


# --------------------------------------------------------------------------
# public API

def net_count(g: Graph) -> int:
    """Number of induced nets in ``g``."""
    return _net_counts(g, False)[0]


def per_vertex_net_counts(g: Graph) -> list[int]:
    """``counts[u]`` is the number of induced nets containing ``u``."""
    return [int(x) for x in _net_counts(g, True)[1]]


def pair_net_count(g: Graph, u: int, v: int) -> int:
    """Number of induced nets containing both ``u`` and ``v``."""
    if u == v:
        raise GraphError("pair_net_count needs two distinct vertices")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"vertex out of range for n={g.n}")
    if g.n < 6:
        return 0
    # inclusion-exclusion over the vertex-deleted subgraphs
    full = net_count(g)
    without_u = net_count(g.without([u]))
    without_v = net_count(g.without([v]))
    without_uv = net_count(g.without([u, v])) if g.n > 2 else 0
    return full - without_u - without_v + without_uv


def _invariants(rows: list[int]) -> tuple:
    degs = sorted(bin(r).count("1") for r in rows)
    return (sum(degs), tuple(degs))


def induced_count(h: Graph, g: Graph) -> int:
    """Number of vertex subsets ``S`` of ``g`` with ``g[S]`` isomorphic to ``h``.

    Plain subset enumeration; ``g`` is limited to 64 vertices.  Larger hosts
    are accepted only when ``h`` is a net, and go through :func:`net_count`.
    """
    k = h.n
    if k > g.n:
        raise GraphError(f"pattern has {k} vertices but host only {g.n}")
    if g.n > GENERIC_MAX_VERTICES:
        if k == 6 and canonical_form(h) == canonical_form(make_net()):
            return net_count(g)
        raise GraphError(f"generic induced counting is limited to {GENERIC_MAX_VERTICES} host vertices")
    target_inv = _invariants(h.rows)
    target = canonical_form(h)
    rows = g.rows
    count = 0
    for sub in itertools.combinations(range(g.n), k):
        sub_rows = []
        for u in sub:
            r = 0
            ru = rows[u]
            for j, v in enumerate(sub):
                if ru >> v & 1:
                    r |= 1 << j
            sub_rows.append(r)
        if _invariants(sub_rows) != target_inv:
            continue
        if canonical_form(Graph.from_rows(sub_rows)) == target:
            count += 1
    return count


def pair_bound(n: int) -> int:
    """C(n-2, 4): trivial cap on the number of nets through a fixed pair."""
    return comb(n - 2, 4) if n >= 2 else 0
