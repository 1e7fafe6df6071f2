"""Blow-ups of the net and the recurrence C(n) = prod(x_i) + sum C(x_i).

``C(n)`` is the number of nets in the balanced iterated blow-up on ``n``
vertices, which is conjectured extremal for every n (and verified for n <= 8
by exhaustive search).
"""

from __future__ import annotations

import csv
import io
import json
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, prod

from .graph import Graph, GraphError, empty_graph, make_net

RECURRENCE_MAX_N = 10**7
CACHE_ENV = "NETINDUCE_CACHE_DIR"


def pendant_k4() -> Graph:
    """K4 on 0..3 with pendant ``4 + i`` attached to vertex ``i``."""
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i, i + 4) for i in range(4)]
    return Graph(8, edges)


def blowup(base: Graph, parts: list[Graph]) -> Graph:
    """Replace vertex ``i`` of ``base`` by ``parts[i]``; parts are joined per base edges."""
    if len(parts) != base.n:
        raise GraphError(f"blow-up needs {base.n} parts, got {len(parts)}")
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + p.n)
    g = Graph(offsets[-1])
    for i, p in enumerate(parts):
        for u, v in p.edges():
            g._set(offsets[i] + u, offsets[i] + v)
    for i, j in base.edges():
        for u in range(offsets[i], offsets[i + 1]):
            for v in range(offsets[j], offsets[j + 1]):
                g._set(u, v)
    return g


def balanced_parts(n: int) -> tuple[int, ...]:
    """Six part sizes differing by at most one; remainders go to the lowest parts."""
    q, r = divmod(n, 6)
    return tuple(q + 1 if i < r else q for i in range(6))


def balanced_iterated_blowup(n: int) -> Graph:
    if n < 1:
        raise GraphError("n must be positive")
    if n < 6:
        return empty_graph(n)
    net = make_net()
    parts = []
    for size in balanced_parts(n):
        parts.append(balanced_iterated_blowup(size) if size >= 1 else None)
    parts = [p for p in parts if p is not None]
    if len(parts) < 6:  # pragma: no cover - n >= 6 gives six nonempty parts
        raise GraphError("unexpected empty part")
    return blowup(net, parts)


# --------------------------------------------------------------------------
# recurrence

_memo: dict[int, int] = {0: 0}
_memo_lock = threading.Lock()


def recurrence_value(n: int) -> int:
    """C(n) for the balanced composition; C(n) = 0 below 6."""
    if n < 0 or n > RECURRENCE_MAX_N:
        raise ValueError(f"n must lie in 0..{RECURRENCE_MAX_N}")
    hit = _memo.get(n)
    if hit is not None:
        return hit
    if n < 6:
        val = 0
    else:
        parts = balanced_parts(n)
        val = prod(parts) + sum(recurrence_value(p) for p in parts)
    with _memo_lock:
        _memo[n] = val
    return val


def _cache_path() -> str | None:
    d = os.environ.get(CACHE_ENV)
    return os.path.join(d, "recurrence.json") if d else None


def load_cache() -> int:
    """Merge the on-disk memo (if the cache env var is set); returns entries read."""
    path = _cache_path()
    if not path or not os.path.exists(path):
        return 0
    with open(path) as fh:
        data = json.load(fh)
    with _memo_lock:
        for k, v in data.items():
            _memo.setdefault(int(k), int(v))
    return len(data)


def save_cache() -> str | None:
    path = _cache_path()
    if not path:
        return None
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with _memo_lock:
        data = {str(k): v for k, v in sorted(_memo.items())}
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)
    return path


@dataclass
class RecurrenceTable:
    values: dict[int, int] = field(default_factory=dict)
    provenance: dict[int, str] = field(default_factory=dict)
    compositions: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @classmethod
    def build(cls, n_max: int) -> "RecurrenceTable":
        t = cls()
        for n in range(n_max + 1):
            t.values[n] = recurrence_value(n)
            if n <= 6:
                t.provenance[n] = "base-case"
            else:
                t.provenance[n] = "recurrence"
                t.compositions[n] = balanced_parts(n)
        return t

    def get(self, n: int) -> int:
        v = self.values.get(n)
        return recurrence_value(n) if v is None else v

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "C(n)", "composition", "provenance"])
        for n in sorted(self.values):
            comp = self.compositions.get(n)
            w.writerow([n, self.values[n], " ".join(map(str, comp)) if comp else "", self.provenance[n]])
        return buf.getvalue()


# --------------------------------------------------------------------------
# composition optimizer

@dataclass
class CompositionResult:
    parts: tuple[int, ...]
    value: int
    window: int
    exclusion_certified: bool

    @property
    def balanced(self) -> bool:
        return max(self.parts) - min(self.parts) <= 1


def composition_window(n: int) -> int:
    return 3 * ceil(n / 100) + 3


def _max_product(total: int, k: int) -> int:
    """Largest product of k positive integers summing to ``total`` (0 if impossible)."""
    if k == 0:
        return 1 if total == 0 else 0
    if total < k:
        return 0
    q, r = divmod(total, k)
    return (q + 1) ** r * q ** (k - r)


class _CTable:
    """C(m) and its running maximum for m <= n."""

    def __init__(self, n: int, table: RecurrenceTable | None):
        get = table.get if table is not None else recurrence_value
        self.c = [get(m) for m in range(n + 1)]
        self.cmax = list(self.c)
        for m in range(1, n + 1):
            self.cmax[m] = max(self.cmax[m], self.cmax[m - 1])


def _search_window(n: int, lo: int, hi: int, ct: _CTable):
    """Best composition (sorted descending) with every part in [lo, hi].

    Branch and bound over the parts in nonincreasing order.  The bound for a
    prefix is prod(prefix) * maxprod(rest) + sum C(prefix) + k * Cmax(cap).
    The balanced composition seeds the incumbent, which is replaced only on
    a strictly larger value, so ties resolve in favour of balance.
    """
    best_val, best = -1, None
    seed = balanced_parts(n)
    if lo <= min(seed) and max(seed) <= hi:
        best_val, best = prod(seed) + sum(ct.c[p] for p in seed), seed
    visited = 0

    def rec(prefix_prod, prefix_c, parts, remaining, slots, cap):
        nonlocal best_val, best, visited
        visited += 1
        if slots == 0:
            if remaining == 0:
                v = prefix_prod + prefix_c
                if v > best_val:
                    best_val, best = v, tuple(parts)
            return
        top = min(cap, hi, remaining - lo * (slots - 1))
        for p in range(top, lo - 1, -1):
            if p * slots < remaining:
                break
            rest = remaining - p
            bound = (prefix_prod * p * _max_product(rest, slots - 1)
                     + prefix_c + ct.c[p] + (slots - 1) * ct.cmax[min(p, rest)])
            if bound <= best_val:
                continue
            parts.append(p)
            rec(prefix_prod * p, prefix_c + ct.c[p], parts, rest, slots - 1, p)
            parts.pop()

    rec(1, 0, [], n, 6, hi)
    return best_val, best, visited


def _exclusion_bound(n: int, lo: int, hi: int, ct: _CTable) -> int:
    """Upper bound on the value of any positive composition with a part outside [lo, hi].

    Largest part x > hi: value <= x * maxprod(n - x, 5) + C(x) + 5 * Cmax(min(x, n - x - 4)).
    Otherwise smallest part y < lo with all parts <= hi:
    value <= y * maxprod(n - y, 5) + C(y) + 5 * Cmax(hi).
    """
    bound = -1
    for x in range(hi + 1, n - 4):
        b = x * _max_product(n - x, 5) + ct.c[x] + 5 * ct.cmax[min(x, n - x - 4)]
        bound = max(bound, b)
    cap = min(hi, n)
    for y in range(1, min(lo, n)):
        b = y * _max_product(n - y, 5) + ct.c[y] + 5 * ct.cmax[cap]
        bound = max(bound, b)
    return bound


def best_composition(n: int, table: RecurrenceTable | None = None) -> CompositionResult:
    """Composition of n into six positive parts maximizing prod(x_i) + sum C(x_i).

    Parts are first searched in the window [n/6 - w, n/6 + w]; every
    composition with a part outside it is excluded by an explicit integer
    upper bound that must fall strictly below the in-window optimum.  If
    that certificate fails the search silently widens to all compositions.
    """
    if n < 6:
        raise ValueError("n must be at least 6")
    w = composition_window(n)
    lo = max(1, -(-(n - 6 * w) // 6))
    hi = min(n - 5, (n + 6 * w) // 6)
    ct = _CTable(n, table)
    val, parts, _ = _search_window(n, lo, hi, ct)
    certified = True
    if lo > 1 or hi < n - 5:
        certified = _exclusion_bound(n, lo, hi, ct) < val
    if not certified:
        val, parts, _ = _search_window(n, 1, n - 5, ct)
    return CompositionResult(parts=parts, value=val, window=w, exclusion_certified=certified)


def exhaustive_composition(n: int, table: RecurrenceTable | None = None) -> tuple[int, tuple[int, ...]]:
    """Plain scan of all positive compositions (oracle for small n)."""
    get = table.get if table is not None else recurrence_value
    best_val, best = -1, None
    for parts in _sorted_compositions(n, 6, n):
        v = prod(parts) + sum(get(p) for p in parts)
        if v > best_val:
            best_val, best = v, parts
    return best_val, best


def _sorted_compositions(total, k, cap):
    if k == 0:
        if total == 0:
            yield ()
        return
    for p in range(min(cap, total - (k - 1)), 0, -1):
        if p * k < total:
            break
        for rest in _sorted_compositions(total - p, k - 1, p):
            yield (p,) + rest


def limit_density(k: int) -> Fraction:
    """C(6^k) / binom(6^k, 6)."""
    if not 1 <= k <= 8:
        raise ValueError("k must lie in 1..8")
    n = 6**k
    return Fraction(recurrence_value(n), comb(n, 6))


LIMIT_DENSITY = Fraction(24, 1555)
