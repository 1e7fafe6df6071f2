"""Exhaustive and heuristic search for graphs with many induced nets."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .canon import canonical_form
from .counting import net_count, pair_net_count, per_vertex_net_counts
from .graph import Graph, GraphError, emit_graph6, parse_graph6

EXHAUSTIVE_MAX_N = 8
LOCAL_MAX_N = 200

# simulated annealing schedule: T_k = T0 * (T_END / T0) ** (k / budget)
SA_T0 = 2.0
SA_T_END = 0.02
SA_CLONE_PROB = 0.3


@dataclass
class SearchReport:
    n: int
    max_count: int
    extremal_classes: list[bytes]
    method: str
    visited: int
    flags: dict = field(default_factory=dict)
    best_graph: Graph | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_count": self.max_count,
            "extremal_classes": [c.decode("ascii") for c in self.extremal_classes],
            "method": self.method,
            "visited": self.visited,
            "flags": dict(self.flags),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# --------------------------------------------------------------------------
# isomorph-free generation

_class_cache: dict[int, list[bytes]] = {}


def iso_classes(n: int) -> list[bytes]:
    """Canonical forms of all graphs on n vertices, sorted.

    Built by vertex addition: every class on n vertices arises from some class
    on n - 1 vertices by adding a vertex with an arbitrary neighbourhood, and
    canonical forms remove the duplicates.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n in _class_cache:
        return _class_cache[n]
    if n == 1:
        out = [canonical_form(Graph(1))]
    else:
        seen = set()
        for code in iso_classes(n - 1):
            parent = parse_graph6(code.decode("ascii"))
            base_edges = parent.edges()
            for nbhd in range(1 << (n - 1)):
                edges = base_edges + [(v, n - 1) for v in range(n - 1) if nbhd >> v & 1]
                seen.add(canonical_form(Graph(n, edges)))
        out = sorted(seen)
    _class_cache[n] = out
    return out


_EDGE_INDEX_CACHE: dict[int, np.ndarray] = {}


def raw_canonical_ids(n: int) -> np.ndarray:
    """For every edge mask on n <= 6 vertices, the least mask over all relabellings.

    Independent of :mod:`netinduce.canon`: applies all n! permutations to all
    2^C(n,2) masks at once.
    """
    if n > 6:
        raise ValueError("raw enumeration is limited to n <= 6")
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    m = len(pairs)
    masks = np.arange(1 << m, dtype=np.int64)
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        out = np.zeros_like(masks)
        for k, (u, v) in enumerate(pairs):
            a, b = perm[u], perm[v]
            target = index[(min(a, b), max(a, b))]
            out |= ((masks >> k) & 1) << target
        np.minimum(best, out, out=best)
    return best


def raw_exhaustive(n: int) -> tuple[int, int, list[int]]:
    """(number of classes, max net count, extremal class masks) by labelled enumeration."""
    ids = raw_canonical_ids(n)
    reps = np.unique(ids)
    counts = {int(r): net_count(Graph.from_edge_mask(n, int(r))) for r in reps}
    top = max(counts.values())
    return len(reps), top, sorted(r for r, c in counts.items() if c == top)


def exhaustive_max(n: int) -> SearchReport:
    """Exact maximum net count over all graphs on n <= 8 vertices."""
    if not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise GraphError(f"exhaustive search supports 1..{EXHAUSTIVE_MAX_N} vertices")
    classes = iso_classes(n)
    best, winners = -1, []
    for code in classes:
        c = net_count(parse_graph6(code.decode("ascii")))
        if c > best:
            best, winners = c, [code]
        elif c == best:
            winners.append(code)
    report = SearchReport(n=n, max_count=best, extremal_classes=winners,
                          method="exhaustive", visited=len(classes))
    for code in winners:  # re-verify every listed class
        if net_count(parse_graph6(code.decode("ascii"))) != best:
            raise AssertionError("extremal class failed re-verification")
    return report


# --------------------------------------------------------------------------
# moves

def clone_swap(g: Graph, kill: int, copy: int) -> Graph:
    """Delete ``kill`` and add a non-adjacent twin of ``copy`` in its slot."""
    if kill == copy:
        raise GraphError("kill and copy must differ")
    h = g.copy()
    for v in range(g.n):
        if v != kill and h.has_edge(kill, v):
            h._set(kill, v, False)
    for v in g.neighbors(copy):
        if v != kill:
            h._set(kill, v)
    return h


def lemma1_identity(g: Graph, kill: int, copy: int) -> tuple[int, int]:
    """Both sides of I(G') - I(G) = H^copy - H^{copy,kill} - H^kill for G' = clone_swap."""
    lhs = net_count(clone_swap(g, kill, copy)) - net_count(g)
    per = per_vertex_net_counts(g)
    rhs = per[copy] - pair_net_count(g, copy, kill) - per[kill]
    return lhs, rhs


def lemma1_spread(g: Graph) -> tuple[int, int, bool]:
    """(max |H^u - H^v|, C(n-2, 4), whether the spread respects the bound)."""
    per = per_vertex_net_counts(g)
    spread = max(per) - min(per) if per else 0
    bound = comb(g.n - 2, 4) if g.n >= 2 else 0
    return spread, bound, spread <= bound


# --------------------------------------------------------------------------
# local search

def _toggle(adj: np.ndarray, u: int, v: int) -> None:
    adj[u, v >> 6] ^= np.uint64(1) << np.uint64(v & 63)
    adj[v, u >> 6] ^= np.uint64(1) << np.uint64(u & 63)


def _graph_from_adj(adj: np.ndarray) -> Graph:
    g = Graph(adj.shape[0])
    g.adj[:] = adj
    g._rows = None
    return g


def local_search(n: int, seed: int, budget: int, p: float = 0.5,
                 reference: int | None = None) -> SearchReport:
    """Simulated annealing over edge toggles and clone swaps.

    Moves are accepted when they do not lose nets, or with probability
    exp(delta / T) otherwise, with geometric cooling from SA_T0 to SA_T_END
    over the move budget.  The best graph seen is returned; nothing is
    claimed about optimality.
    """
    if not 2 <= n <= LOCAL_MAX_N:
        raise GraphError(f"local search supports 2..{LOCAL_MAX_N} vertices")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    upper = np.triu(rng.random((n, n)) < p, 1)
    g = Graph.from_matrix(upper | upper.T)
    adj = g.adj.copy()
    cur = net_count(g)
    best, best_adj = cur, adj.copy()
    cooling = (SA_T_END / SA_T0) ** (1.0 / max(budget, 1))
    temp = SA_T0
    for _ in range(budget):
        if rng.random() < SA_CLONE_PROB:
            kill, copy = (int(v) for v in rng.choice(n, size=2, replace=False))
            trial = clone_swap(_graph_from_adj(adj), kill, copy).adj
        else:
            u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
            trial = adj.copy()
            _toggle(trial, u, v)
        val = net_count(_graph_from_adj(trial))
        delta = val - cur
        if delta >= 0 or rng.random() < math.exp(delta / temp):
            adj, cur = trial, val
            if cur > best:
                best, best_adj = cur, adj.copy()
        temp *= cooling
    bg = _graph_from_adj(best_adj)
    code = canonical_form(bg) if n <= 16 else emit_graph6(bg).encode("ascii")
    flags = {"optimality_claimed": False, "seed": seed, "budget": budget}
    if reference is not None:
        flags["reference"] = reference
        flags["below_reference"] = best < reference
    return SearchReport(n=n, max_count=best, extremal_classes=[code], method="local",
                        visited=budget, flags=flags, best_graph=bg)
