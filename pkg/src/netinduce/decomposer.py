"""Root nets, blob classes Z_i, funky pairs and the blob-balance statistics.

A vertex ``v`` outside the root ``Z = (z_1..z_6)`` belongs to ``Z_i`` when it
has the same adjacency to ``Z - z_i`` as ``z_i`` does, i.e. swapping ``v`` in
for ``z_i`` gives a net with the same labelling.  The net has no twins, so
the ``Z_i`` are pairwise disjoint.

Rooted extensions: a pair ``u in Z_i``, ``v in Z_j`` (i != j) whose adjacency
matches ``z_i z_j`` forms an N22 extension; two vertices of the same ``Z_i``
form an N3 extension.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .graph import NET_EDGES, Graph, GraphError, bits

# pattern[i] = bitmask over root positions adjacent to position i
PATTERN = [0] * 6
for _u, _v in NET_EDGES:
    PATTERN[_u] |= 1 << _v
    PATTERN[_v] |= 1 << _u
NET_EDGE_SET = frozenset(frozenset(e) for e in NET_EDGES)
PAIRS = list(itertools.combinations(range(6), 2))
EDGE_PAIRS = [p for p in PAIRS if frozenset(p) in NET_EDGE_SET]

LHS_THRESHOLD = 0.000149043538
DEFAULT_A = 4.99
TRASH = 0


def is_pattern_edge(i: int, j: int) -> bool:
    """Blob indices are 0-based here (0..5 for z_1..z_6)."""
    return bool(PATTERN[i] >> j & 1)


@dataclass(frozen=True)
class RootedNet:
    host: Graph
    vertices: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) != 6 or len(set(vs)) != 6:
            raise GraphError("a root needs six distinct vertices")
        if not all(0 <= v < self.host.n for v in vs):
            raise GraphError("root vertex out of range")
        for i, j in PAIRS:
            if self.host.has_edge(vs[i], vs[j]) != is_pattern_edge(i, j):
                raise GraphError(f"vertices {vs} do not induce a net with the standard labelling")

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices)}


def root_signature(rows: list[int], root: tuple[int, ...], v: int) -> int:
    sig = 0
    for k, z in enumerate(root):
        if rows[v] >> z & 1:
            sig |= 1 << k
    return sig


def blob_candidates(g: Graph, root: RootedNet) -> list[int]:
    """Bitmasks Z_1..Z_6 (as index 0..5); root vertex z_i is placed in Z_i."""
    rows = g.rows
    zs = root.vertices
    masks = [0] * 6
    in_root = set(zs)
    for v in range(g.n):
        if v in in_root:
            continue
        sig = root_signature(rows, zs, v)
        for i in range(6):
            others = 0b111111 ^ (1 << i)
            if sig & others == PATTERN[i] & others:
                masks[i] |= 1 << v
                break
    for i, z in enumerate(zs):
        masks[i] |= 1 << z
    return masks


# --------------------------------------------------------------------------
# rooted extension counts

N22, N3, NEITHER = "N22", "N3", "neither"


def _rooted_rows(g: Graph, root: RootedNet, u: int, v: int) -> tuple[int, ...]:
    order = list(root.vertices) + [u, v]
    sub = g.induced(order)
    return tuple(sub.rows)


def _catalog_rows(kind: str) -> set[tuple[int, ...]]:
    """Labelled 8-vertex extension graphs: root on 0..5, clones on 6 and 7."""
    out = set()
    targets = [(i, j) for i, j in PAIRS] if kind == N22 else [(i, i) for i in range(6)]
    for i, j in targets:
        edges = list(NET_EDGES)
        for c, orig in ((6, i), (7, j)):
            for k in range(6):
                if k != orig and is_pattern_edge(orig, k):
                    edges.append((c, k))
        dotted = [(6, i), (7, j)]
        if i == j:
            dotted.append((6, 7))
        elif is_pattern_edge(i, j):
            edges.append((6, 7))
        for choice in range(1 << len(dotted)):
            extra = [d for b, d in enumerate(dotted) if choice >> b & 1]
            g = Graph(8, edges + extra)
            out.add(tuple(g.rows))
            out.add(tuple(g.relabel([0, 1, 2, 3, 4, 5, 7, 6]).rows))
    return out


_CATALOGS: dict[str, set] = {}


def extension_catalog(kind: str) -> set[tuple[int, ...]]:
    if kind not in _CATALOGS:
        _CATALOGS[kind] = _catalog_rows(kind)
    return _CATALOGS[kind]


def extension_class(g: Graph, root: RootedNet, u: int, v: int) -> str:
    """Classify {u, v} against the generated N22 / N3 catalogs."""
    if u == v:
        raise GraphError("u and v must differ")
    if u in root.vertices or v in root.vertices:
        raise GraphError("u and v must lie outside the root")
    rows = _rooted_rows(g, root, u, v)
    if rows in extension_catalog(N22):
        return N22
    if rows in extension_catalog(N3):
        return N3
    return NEITHER


def _counts_from_masks(rows: list[int], masks: list[int]) -> tuple[int, int]:
    n22 = 0
    for i, j in PAIRS:
        mi, mj = masks[i], masks[j]
        if not mi or not mj:
            continue
        adj = sum((rows[u] & mj).bit_count() for u in bits(mi))
        n22 += adj if is_pattern_edge(i, j) else mi.bit_count() * mj.bit_count() - adj
    n3 = sum(comb(m.bit_count(), 2) for m in masks)
    return n22, n3


def rooted_counts(g: Graph, root: RootedNet) -> tuple[int, int]:
    """(N22, N3) over unordered pairs of non-root vertices."""
    rootmask = sum(1 << z for z in root.vertices)
    masks = [m & ~rootmask for m in blob_candidates(g, root)]
    return _counts_from_masks(g.rows, masks)


def rooted_counts_bruteforce(g: Graph, root: RootedNet) -> tuple[int, int]:
    """Oracle: classify every pair by the explicit 8-vertex catalog check."""
    rest = [v for v in range(g.n) if v not in root.vertices]
    n22 = n3 = 0
    for u, v in itertools.combinations(rest, 2):
        c = extension_class(g, root, u, v)
        n22 += c == N22
        n3 += c == N3
    return n22, n3


def _as_fraction(a) -> Fraction:
    return a if isinstance(a, Fraction) else Fraction(a).limit_denominator(10**9)


def root_objective(g: Graph, root: RootedNet, a) -> Fraction:
    n22, n3 = rooted_counts(g, root)
    return n22 - _as_fraction(a) * n3


# --------------------------------------------------------------------------
# root search

def _pendant_sets(rows, t):
    a, b, c = t
    return (rows[a] & ~rows[b] & ~rows[c],
            rows[b] & ~rows[a] & ~rows[c],
            rows[c] & ~rows[a] & ~rows[b])


def _partial_caps(rows, n, known: dict[int, int]) -> list[int]:
    """Candidate masks for Z_i' given some root positions (position -> vertex)."""
    allmask = (1 << n) - 1
    used = 0
    for z in known.values():
        used |= 1 << z
    caps = []
    for i in range(6):
        m = allmask & ~used
        for k, z in known.items():
            if k == i:
                continue
            m &= rows[z] if is_pattern_edge(i, k) else ~rows[z]
        caps.append(m)
    return caps


def _bound(caps: list[int], a: Fraction, extra_root: int = 0) -> Fraction:
    """Upper bound on N22 - a N3 when Z_i' is contained in caps[i].

    With s_i = |Z_i'| and S = sum s_i, N22 <= sum_{i<j} s_i s_j, and
    sum s_i^2 >= S^2 / 6, giving (5 - a) S^2 / 12 + a S / 2 (for a < 5).
    ``extra_root`` vertices still to be chosen from the caps are discounted.
    """
    union = 0
    total = 0
    for m in caps:
        union |= m
        total += m.bit_count()
    s = min(total, union.bit_count()) - extra_root
    s = max(s, 0)
    return (5 - a) * s * s / 12 + a * s / 2


def iter_roots(g: Graph):
    """All rooted nets in canonical order: sorted triangle, then pendants ascending."""
    rows = g.rows
    for t in g.triangles():
        pa, pb, pc = _pendant_sets(rows, t)
        for p1 in bits(pa):
            for p2 in bits(pb & ~rows[p1]):
                for p3 in bits(pc & ~rows[p1] & ~rows[p2]):
                    yield (p1, p2, p3) + t


def best_root_bruteforce(g: Graph, a) -> tuple[RootedNet, Fraction]:
    a = _as_fraction(a)
    best, best_val = None, None
    for zs in iter_roots(g):
        val = root_objective(g, RootedNet(g, zs), a)
        if best_val is None or val > best_val:
            best, best_val = zs, val
    if best is None:
        raise GraphError("graph contains no induced net")
    return RootedNet(g, best), best_val


def best_root(g: Graph, a=DEFAULT_A) -> RootedNet:
    """Root net maximizing N22 - a N3; ties go to the first root in canonical order.

    Branch and bound: triangles are processed in order of decreasing bound,
    and a subtree is skipped when its bound is below the incumbent, or equal
    to it while every key in the subtree is later than the incumbent's key.
    The canonical key of a root is (t1, t2, t3, p1, p2, p3).
    """
    return best_root_with_value(g, a)[0]


def best_root_with_value(g: Graph, a=DEFAULT_A) -> tuple[RootedNet, Fraction]:
    a = _as_fraction(a)
    if not 0 < a < 5:
        raise ValueError("a must lie in (0, 5)")
    rows = g.rows
    n = g.n
    tri_nodes = []
    for t in g.triangles():
        pa, pb, pc = _pendant_sets(rows, t)
        if not (pa and pb and pc):
            continue
        caps = _partial_caps(rows, n, {3: t[0], 4: t[1], 5: t[2]})
        tri_nodes.append((-_bound(caps, a, extra_root=3), t, (pa, pb, pc)))
    if not tri_nodes:
        raise GraphError("graph contains no induced net")
    tri_nodes.sort()
    best_key, best_val = None, None

    def worse(bound, key_prefix):
        if best_val is None:
            return False
        if bound < best_val:
            return True
        return bound == best_val and key_prefix > best_key[:len(key_prefix)]

    for neg_bound, t, (pa, pb, pc) in tri_nodes:
        if worse(-neg_bound, t):
            continue
        known = {3: t[0], 4: t[1], 5: t[2]}
        for p1 in bits(pa):
            known[0] = p1
            caps = _partial_caps(rows, n, known)
            if worse(_bound(caps, a, extra_root=2), t + (p1,)):
                continue
            for p2 in bits(pb & ~rows[p1]):
                known[1] = p2
                caps = _partial_caps(rows, n, known)
                if worse(_bound(caps, a, extra_root=1), t + (p1, p2)):
                    continue
                for p3 in bits(pc & ~rows[p1] & ~rows[p2]):
                    key = t + (p1, p2, p3)
                    known[2] = p3
                    masks = _partial_caps(rows, n, known)
                    n22, n3 = _counts_from_masks(rows, masks)
                    val = n22 - a * n3
                    if best_val is None or val > best_val or (val == best_val and key < best_key):
                        best_val, best_key = val, key
                known.pop(2, None)
            known.pop(1, None)
        known.pop(0, None)
    if best_key is None:
        raise GraphError("graph contains no induced net")
    t1, t2, t3, p1, p2, p3 = best_key
    return RootedNet(g, (p1, p2, p3, t1, t2, t3)), best_val


# --------------------------------------------------------------------------
# decomposition

@dataclass
class Decomposition:
    root: RootedNet
    blob_of: list[int]  # 0 = trash, 1..6 = X_1..X_6
    funky_pairs: list[tuple[int, int, str]]
    x: list[float]  # x_0..x_6
    f: float
    d_f: list[float]
    moves: int = 0
    flags: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.blob_of)

    def blob_sizes(self) -> list[int]:
        sizes = [0] * 7
        for b in self.blob_of:
            sizes[b] += 1
        return sizes

    def to_json(self) -> dict:
        return {
            "root": list(self.root.vertices),
            "blob_of": list(self.blob_of),
            "funky_pairs": [[u, v, kind] for u, v, kind in self.funky_pairs],
            "stats": {"x": list(self.x), "f": self.f, "d_f": list(self.d_f)},
            "moves": self.moves,
            "flags": dict(self.flags),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def summary(self) -> str:
        lines = [f"root z1..z6 = {list(self.root.vertices)}",
                 "blob  size  x_i"]
        sizes = self.blob_sizes()
        for i in range(7):
            name = "X0(trash)" if i == 0 else f"X{i}"
            lines.append(f"{name:<9} {sizes[i]:>4}  {self.x[i]:.6f}")
        lines.append(f"funky pairs: {len(self.funky_pairs)}   f = {self.f:.6g}")
        lines.append(f"max d_f = {max(self.d_f) if self.d_f else 0:.6g}")
        return "\n".join(lines)


def funky_pairs(g: Graph, blob_of: list[int]) -> list[tuple[int, int, str]]:
    """Cross-blob pairs (trash excluded) whose adjacency contradicts the pattern.

    ``kind`` is the actual relation in ``g``: "edge" where the pattern wants a
    non-edge, "non-edge" where it wants an edge.
    """
    rows = g.rows
    out = []
    n = g.n
    for u in range(n):
        bu = blob_of[u]
        if bu == TRASH:
            continue
        for v in range(u + 1, n):
            bv = blob_of[v]
            if bv == TRASH or bv == bu:
                continue
            actual = bool(rows[u] >> v & 1)
            if actual != is_pattern_edge(bu - 1, bv - 1):
                out.append((u, v, "edge" if actual else "non-edge"))
    return out


def _funky_degrees(rows, n, blob_masks: list[int], blob_of: list[int]) -> list[int]:
    deg = [0] * n
    for v in range(n):
        b = blob_of[v]
        if b == TRASH:
            continue
        d = 0
        for j in range(6):
            if j == b - 1:
                continue
            m = blob_masks[j]
            if is_pattern_edge(b - 1, j):
                d += (m & ~rows[v]).bit_count()
            else:
                d += (m & rows[v]).bit_count()
        deg[v] = d
    return deg


def lhs_41_values(x, f, a, pairs: str = "all") -> float:
    """2 sum_{i<j} x_i x_j - 2 f - a sum x_i^2 over blobs 1..6.

    ``pairs="edges"`` restricts the cross sum to the six pattern edges.
    """
    xs = list(x)[-6:]
    use = PAIRS if pairs == "all" else EDGE_PAIRS
    cross = sum(xs[i] * xs[j] for i, j in use)
    return 2 * cross - 2 * f - a * sum(t * t for t in xs)


def lhs_41(d: Decomposition, a=DEFAULT_A, pairs: str = "all") -> float:
    return lhs_41_values(d.x[1:], d.f, a, pairs)


def _lhs_from_counts(sizes, funky, n, a, pairs):
    x = [s / n for s in sizes]
    return lhs_41_values(x, funky / comb(n, 2) if n > 1 else 0.0, a, pairs)


def classify(g: Graph, root: RootedNet, a=DEFAULT_A, pairs: str = "all",
             x_min: float = 0.165791592261) -> Decomposition:
    """Blob decomposition relative to ``root``.

    X_i starts as Z_i; then single vertices are moved between X_i and the
    trash (root vertices stay put) by first-improvement hill-climbing on the
    blob-balance left-hand side, scanning vertices in index order, until no move
    improves it.  The result is locally, not globally, optimal.
    """
    n = g.n
    rows = g.rows
    cand = blob_candidates(g, root)
    zblob = [TRASH] * n
    for i, m in enumerate(cand):
        for v in bits(m):
            zblob[v] = i + 1
    blob_of = list(zblob)
    fixed = set(root.vertices)
    a_f = float(a)

    def state():
        masks = [0] * 6
        for v, b in enumerate(blob_of):
            if b:
                masks[b - 1] |= 1 << v
        deg = _funky_degrees(rows, n, masks, blob_of)
        sizes = [m.bit_count() for m in masks]
        return masks, deg, sizes, sum(deg) // 2

    masks, deg, sizes, funky = state()
    current = _lhs_from_counts(sizes, funky, n, a_f, pairs)
    moves = 0
    improved = True
    while improved:
        improved = False
        for v in range(n):
            if v in fixed or zblob[v] == TRASH:
                continue
            b = blob_of[v]
            new_sizes = list(sizes)
            if b:
                new_sizes[b - 1] -= 1
                new_funky = funky - deg[v]
                target = TRASH
            else:
                b2 = zblob[v]
                new_sizes[b2 - 1] += 1
                d = 0
                for j in range(6):
                    if j == b2 - 1:
                        continue
                    m = masks[j]
                    d += (m & ~rows[v] if is_pattern_edge(b2 - 1, j) else m & rows[v]).bit_count()
                new_funky = funky + d
                target = b2
            val = _lhs_from_counts(new_sizes, new_funky, n, a_f, pairs)
            if val > current + 1e-15:
                blob_of[v] = target
                masks, deg, sizes, funky = state()
                current = val
                moves += 1
                improved = True
    pairs_list = funky_pairs(g, blob_of)
    x = [blob_of.count(i) / n for i in range(7)]
    f = len(pairs_list) / comb(n, 2) if n > 1 else 0.0
    d_f = [d / n for d in deg]
    cap = 1 - (1 + a_f) * x_min + 2 / n
    flags = {
        "local_optimum": True,
        "funky_degree_bound": all(d <= cap for v, d in enumerate(d_f) if blob_of[v]),
        "funky_degree_cap": cap,
        "pairs": pairs,
    }
    return Decomposition(root=root, blob_of=blob_of, funky_pairs=pairs_list, x=x, f=f,
                         d_f=d_f, moves=moves, flags=flags)
