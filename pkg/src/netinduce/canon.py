"""Canonical labelling for graphs with at most 16 vertices.

Individualization-refinement: an equitable ordered partition is refined from
the trivial partition, then every vertex of the first smallest non-singleton
cell is individualized in turn.  The certificate is the graph6 string of the
relabelling whose upper-triangle bitstream is lexicographically largest.
Cells consisting of mutual twins are branched on once, which keeps empty,
complete and blown-up graphs cheap.
"""

from __future__ import annotations

from .graph import Graph, GraphError, emit_graph6

MAX_CANON_VERTICES = 16


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _refine(rows: list[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        for s in cells:
            smask = 0
            for v in s:
                smask |= 1 << v
            new = []
            split = False
            for c in cells:
                if len(c) == 1:
                    new.append(c)
                    continue
                groups: dict[int, list[int]] = {}
                for v in c:
                    groups.setdefault(_popcount(rows[v] & smask), []).append(v)
                if len(groups) > 1:
                    split = True
                    new.extend(groups[k] for k in sorted(groups))
                else:
                    new.append(c)
            if split:
                cells = new
                break
        else:
            return cells


def _all_twins(rows: list[int], cell: list[int]) -> bool:
    u = cell[0]
    for v in cell[1:]:
        if rows[u] & ~(1 << v) != rows[v] & ~(1 << u):
            return False
    return True


def _leaf_code(rows: list[int], order: list[int]) -> int:
    code = 0
    n = len(order)
    for j in range(1, n):
        rj = rows[order[j]]
        for i in range(j):
            code = (code << 1) | (rj >> order[i] & 1)
    return code


def canonical_labeling(g: Graph) -> list[int]:
    """Order of vertices (``order[k]`` gets new label ``k``) giving the canonical form."""
    if g.n > MAX_CANON_VERTICES:
        raise GraphError(f"canonical form supports at most {MAX_CANON_VERTICES} vertices, got {g.n}")
    rows = g.rows
    best = [-1, None]

    def visit(cells):
        cells = _refine(rows, cells)
        target = None
        for idx, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = idx
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(rows, order)
            if code > best[0]:
                best[0] = code
                best[1] = order
            return
        cell = cells[target]
        choices = cell[:1] if _all_twins(rows, cell) else cell
        for v in choices:
            rest = [u for u in cell if u != v]
            visit(cells[:target] + [[v], rest] + cells[target + 1:])

    visit([list(range(g.n))])
    return best[1]


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for k, v in enumerate(order):
        perm[v] = k
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-class certificate: equal for two graphs iff they are isomorphic."""
    return emit_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges() or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
