"""Configuration enumeration for nets through a funky pair.

Setting: a vertex ``x`` sits in blob ``x_blob`` and ``w`` in ``w_blob``, and
the ``x``-``w`` adjacency contradicts the blob pattern.  A net through both is
described by the blobs of its four other vertices and by which of them are
funky partners of ``x`` (their adjacency to ``x`` is flipped too).  Pairs of
vertices in different blobs otherwise follow the pattern; pairs inside one
blob are free, and a description is feasible when some choice of those free
edges produces a net.

Each feasible description (a *signature*) stands for roughly
``prod |X_b|^{m_b} / m_b!`` vertex sets, so with ``|X_b| <= x_max`` and ``d_b``
the funky mass of ``x`` inside blob ``b`` it contributes
``prod 1/m! * x_max^(4-k) * prod d_b^(alpha_b)`` where ``k = sum alpha_b``.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .constants import BUDGET_GAIN, X0_MAX, X_MAX, X_MIN
from .decomposer import is_pattern_edge

OUTER = frozenset({1, 2, 3})
PAIRS6 = list(itertools.combinations(range(6), 2))


def pattern(bi: int, bj: int) -> bool:
    """Blob pattern with 1-based blob indices."""
    return is_pattern_edge(bi - 1, bj - 1)


def _net_shape(edges) -> tuple[list[int], dict[int, int]] | None:
    """If ``edges`` on 0..5 form a net return (triangle, pendant_of)."""
    deg = [0] * 6
    adj = [set() for _ in range(6)]
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].add(b)
        adj[b].add(a)
    if sorted(deg) != [1, 1, 1, 3, 3, 3]:
        return None
    tri = [v for v in range(6) if deg[v] == 3]
    if not all(b in adj[a] for a, b in itertools.combinations(tri, 2)):
        return None
    pend = {}
    for t in tri:
        leaf = [u for u in adj[t] if deg[u] == 1]
        if len(leaf) != 1:
            return None
        pend[t] = leaf[0]
    return tri, pend


def _realizations(verts):
    """All free-edge choices turning ``verts`` into a net.

    ``verts[k] = (blob, funky)``; index 0 is x, index 1 is w.
    """
    fixed, free = [], []
    bx = verts[0][0]
    for p, q in PAIRS6:
        bp, fp = verts[p]
        bq, fq = verts[q]
        if (p, q) == (0, 1):
            fixed.append((p, q, not pattern(bx, verts[1][0])))
            continue
        if bp == bq:
            free.append((p, q))
            continue
        e = pattern(bp, bq)
        if p == 0 and fq:
            e = not e
        fixed.append((p, q, e))
    base = [(p, q) for p, q, e in fixed if e]
    out = []
    for mask in range(1 << len(free)):
        edges = base + [free[i] for i in range(len(free)) if mask >> i & 1]
        shape = _net_shape(edges)
        if shape is not None:
            out.append(shape)
    return out


@dataclass(frozen=True)
class BlobAssignment:
    """A net through x and w with its positions labelled z_1..z_6 (0-based here).

    ``blobs[k]`` is the blob of position ``k``; ``funky_marks`` holds the
    position pairs whose adjacency is flipped (all of them contain ``x_pos``).
    """

    blobs: tuple[int, ...]
    x_pos: int
    w_pos: int
    funky_marks: frozenset
    signature: tuple

    @property
    def extra_funky(self) -> int:
        return len(self.funky_marks) - 1

    @property
    def extra_funky_blobs(self) -> tuple[int, ...]:
        out = []
        for a, b in self.funky_marks:
            other = b if a == self.x_pos else a
            if other != self.w_pos:
                out.append(self.blobs[other])
        return tuple(sorted(out))

    def edges(self, within: frozenset = frozenset()) -> list[tuple[int, int]]:
        """Explicit net edges on positions (position pairs)."""
        out = []
        for p, q in PAIRS6:
            if self.blobs[p] == self.blobs[q]:
                if frozenset((p, q)) in within:
                    out.append((p, q))
                continue
            e = pattern(self.blobs[p], self.blobs[q])
            if frozenset((p, q)) in self.funky_marks:
                e = not e
            if e:
                out.append((p, q))
        return out

    def to_json(self) -> dict:
        return {
            "blobs": list(self.blobs),
            "x_pos": self.x_pos,
            "w_pos": self.w_pos,
            "funky_marks": sorted(sorted(m) for m in self.funky_marks),
            "extra_funky_blobs": list(self.extra_funky_blobs),
        }


def check_funky(x_blob: int, w_blob: int, pair_type: str) -> None:
    if not (1 <= x_blob <= 6 and 1 <= w_blob <= 6) or x_blob == w_blob:
        raise ValueError("x and w must lie in two different blobs 1..6")
    if pair_type not in ("edge", "non-edge"):
        raise ValueError("pair_type must be 'edge' or 'non-edge'")
    if (pair_type == "edge") == pattern(x_blob, w_blob):
        raise ValueError(f"an {pair_type} between X{x_blob} and X{w_blob} follows the pattern; not funky")


def funky_type(x_blob: int, w_blob: int) -> str:
    return "non-edge" if pattern(x_blob, w_blob) else "edge"


def _options(x_blob):
    return [(b, False) for b in range(1, 7)] + [(b, True) for b in range(1, 7) if b != x_blob]


def signatures(x_blob: int, w_blob: int, pair_type: str) -> list[tuple]:
    """Feasible multisets of (blob, funky) for the four vertices beyond x and w."""
    check_funky(x_blob, w_blob, pair_type)
    out = []
    for combo in itertools.combinations_with_replacement(_options(x_blob), 4):
        verts = [(x_blob, False), (w_blob, True)] + list(combo)
        if _realizations(verts):
            out.append(combo)
    return out


def _assignment(verts, combo, shape) -> BlobAssignment:
    tri, pend = shape
    best = None
    for order in itertools.permutations(tri):
        pos = {}
        for k, t in enumerate(order):
            pos[t] = 3 + k
            pos[pend[t]] = k
        blobs = [0] * 6
        for v, p in pos.items():
            blobs[p] = verts[v][0]
        marks = frozenset(frozenset((pos[0], pos[v])) for v in range(1, 6) if verts[v][1])
        key = (tuple(blobs), pos[0], pos[1], tuple(sorted(tuple(sorted(m)) for m in marks)))
        if best is None or key < best[0]:
            best = (key, marks)
    (blobs, xp, wp, _), marks = best
    return BlobAssignment(blobs=blobs, x_pos=xp, w_pos=wp, funky_marks=marks, signature=combo)


def enumerate_configurations(x_blob: int, w_blob: int, pair_type: str) -> list[BlobAssignment]:
    """All labelled nets through the funky pair, up to relabelling inside blobs."""
    seen = {}
    for combo in signatures(x_blob, w_blob, pair_type):
        verts = [(x_blob, False), (w_blob, True)] + list(combo)
        for shape in _realizations(verts):
            a = _assignment(verts, combo, shape)
            key = (a.blobs, a.x_pos, a.w_pos, a.funky_marks)
            seen.setdefault(key, a)
    return sorted(seen.values(), key=lambda a: (a.extra_funky, a.blobs, a.x_pos, a.w_pos,
                                                 sorted(sorted(m) for m in a.funky_marks)))


def signature_coefficient(combo) -> Fraction:
    c = Fraction(1)
    for m in _multiplicities(combo):
        c /= math.factorial(m)
    return c


def _multiplicities(combo):
    counts = defaultdict(int)
    for item in combo:
        counts[item] += 1
    return counts.values()


def raw_terms(x_blob: int, w_blob: int, pair_type: str) -> dict[tuple[int, ...], Fraction]:
    """Coefficient per funky-count vector (alpha_1..alpha_6), before aggregation."""
    terms = defaultdict(Fraction)
    for combo in signatures(x_blob, w_blob, pair_type):
        alpha = [0] * 6
        for b, f in combo:
            if f:
                alpha[b - 1] += 1
        terms[tuple(alpha)] += signature_coefficient(combo)
    return dict(terms)


# --------------------------------------------------------------------------
# aggregation over placements of the funky mass

def _solve_fraction(mat, rhs):
    """Gaussian elimination over Fractions; None if singular."""
    n = len(mat)
    m = [list(row) + [r] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col] / m[col][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def max_quadratic_on_simplex(q: dict[tuple[int, int], Fraction], dims: list[int]) -> Fraction:
    """Exact max of sum q[i,j] d_i d_j (i <= j) over the simplex on ``dims``.

    Enumerates supports S and solves the KKT system Q_S d = lam 1, sum d = 1.
    A singular face has a constant direction, so its maximum is attained on
    a smaller face that is enumerated anyway.
    """
    def qv(i, j):
        if i == j:
            return 2 * q.get((i, i), Fraction(0))
        return q.get((min(i, j), max(i, j)), Fraction(0))

    best = Fraction(0)
    for r in range(1, len(dims) + 1):
        for sup in itertools.combinations(dims, r):
            k = len(sup)
            mat = [[qv(sup[a], sup[b]) for b in range(k)] + [Fraction(-1)] for a in range(k)]
            mat.append([Fraction(1)] * k + [Fraction(0)])
            sol = _solve_fraction(mat, [Fraction(0)] * k + [Fraction(1)])
            if sol is None:
                continue
            d = sol[:k]
            if any(v < 0 for v in d):
                continue
            val = sum(q.get((min(sup[a], sup[b]), max(sup[a], sup[b])), Fraction(0)) * d[a] * d[b]
                      for a in range(k) for b in range(a, k))
            best = max(best, val)
    return best


def _monomial_max(alpha) -> Fraction:
    """max of prod d_i^alpha_i over the simplex = prod (alpha_i / k)^alpha_i."""
    k = sum(alpha)
    out = Fraction(1)
    for a in alpha:
        if a:
            out *= Fraction(a, k) ** a
    return out


def aggregate_degree(terms: dict, k: int, model: str = "exclusive") -> tuple[Fraction, bool]:
    """Coefficient of d_f^k x_max^(4-k) and whether it is exact (not just an upper bound)."""
    deg = {alpha: c for alpha, c in terms.items() if sum(alpha) == k and c}
    if not deg:
        return Fraction(0), True
    if k == 0:
        return sum(deg.values(), Fraction(0)), True
    if model == "additive":
        return sum((c * _monomial_max(alpha) for alpha, c in deg.items()), Fraction(0)), False
    if model != "exclusive":
        raise ValueError("funky_budget_model must be 'exclusive' or 'additive'")
    if k == 1:
        return max(deg.values()), True
    if k == 2:
        q = {}
        dims = set()
        for alpha, c in deg.items():
            idx = [i for i, a in enumerate(alpha) for _ in range(a)]
            q[(idx[0], idx[1])] = q.get((idx[0], idx[1]), Fraction(0)) + c
            dims.update(idx)
        return max_quadratic_on_simplex(q, sorted(dims)), True
    diag = [c for alpha, c in deg.items() if max(alpha) == k]
    mixed = [(alpha, c) for alpha, c in deg.items() if max(alpha) < k]
    # pure powers are convex on the simplex, so their sum peaks at a vertex
    val = max(diag) if diag else Fraction(0)
    val += sum((c * _monomial_max(alpha) for alpha, c in mixed), Fraction(0))
    return val, not mixed


@dataclass
class BoundPolynomial:
    """x0_coeff * x_0 + sum_k coeffs[k] * d_f^k * x_max^(4-k)."""

    x0_coeff: Fraction
    coeffs: tuple[Fraction, ...]
    exact: tuple[bool, ...] = ()
    case: tuple = ()
    model: str = "exclusive"
    terms: dict = field(default_factory=dict)

    def __call__(self, x0: float, x_max: float, d: float) -> float:
        return float(self.x0_coeff) * x0 + sum(float(c) * d**k * x_max ** (4 - k)
                                               for k, c in enumerate(self.coeffs))

    def monomials(self) -> dict[tuple[int, int, int], Fraction]:
        """Exponents (x_0, x_max, d_f) -> coefficient, nonzero only."""
        out = {}
        if self.x0_coeff:
            out[(1, 0, 0)] = self.x0_coeff
        for k, c in enumerate(self.coeffs):
            if c:
                out[(0, 4 - k, k)] = c
        return out

    def table_row(self) -> tuple[Fraction, ...]:
        """(x_0, x_max^4, d x_max^3, d^2 x_max^2, d^3 x_max) coefficients."""
        return (self.x0_coeff,) + tuple(self.coeffs[:4])

    def pretty(self) -> str:
        parts = []
        names = ["x_max^4", "d_f x_max^3", "d_f^2 x_max^2", "d_f^3 x_max", "d_f^4"]
        if self.x0_coeff:
            parts.append(f"({self.x0_coeff}) x_0")
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c}) {names[k]}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "case": list(self.case),
            "model": self.model,
            "x0": str(self.x0_coeff),
            "coefficients": [str(c) for c in self.coeffs],
            "exact": list(self.exact),
            "pretty": self.pretty(),
        }


def bound_polynomial(x_blob: int, w_blob: int, pair_type: str | None = None,
                     funky_budget_model: str = "exclusive") -> BoundPolynomial:
    """Upper-bound polynomial for nets through the funky pair, plus x_0 / 6 for trash."""
    if pair_type is None:
        pair_type = funky_type(x_blob, w_blob)
    terms = raw_terms(x_blob, w_blob, pair_type)
    coeffs, exact = [], []
    for k in range(5):
        c, e = aggregate_degree(terms, k, funky_budget_model)
        coeffs.append(c)
        exact.append(e)
    return BoundPolynomial(x0_coeff=Fraction(1, 6), coeffs=tuple(coeffs), exact=tuple(exact),
                           case=(x_blob, w_blob, pair_type), model=funky_budget_model, terms=terms)


def polynomial_from_row(row) -> BoundPolynomial:
    """Build a polynomial from (x_0, x_max^4, d x_max^3, d^2 x_max^2, d^3 x_max) coefficients."""
    return BoundPolynomial(x0_coeff=Fraction(row[0]), coeffs=tuple(Fraction(c) for c in row[1:]) + (Fraction(0),))


def solve_df_threshold(poly, x_min: float = X_MIN, x_max: float = X_MAX, x0: float = X0_MAX,
                       tol: float = 1e-12) -> float:
    """Smallest d >= 0 with x_min^3 (x_min - d) <= poly(x_0, x_max, d).

    The gain side decreases and the polynomial increases in d, so plain
    bisection on [0, 1] applies.
    """
    def excess(d):
        return x_min**3 * (x_min - d) - poly(x0, x_max, d)

    if excess(0.0) <= 0:
        return 0.0
    if excess(1.0) > 0:
        raise ValueError("no crossing in [0, 1]; constants are inconsistent")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return hi


# --------------------------------------------------------------------------
# exclusion budgets for funky pairs among the blobs

SUB_CASES = {
    # name: (blob of u, blob of v, exclusion stage)
    "inner-inner": (4, 5, 0),
    "outer-inner-non-edge": (1, 4, 1),
    "outer-inner-edge": (1, 5, 2),
    "outer-outer": (1, 2, 3),
}


def _excluded(bi, bj, edge, stage):
    """Funky pair types already ruled out at a given stage of the argument."""
    if stage >= 1 and bi not in OUTER and bj not in OUTER:
        return True
    if stage >= 2 and not edge:
        return True
    if stage >= 3 and (bi in OUTER) != (bj in OUTER):
        return True
    return False


def claim5_budget_detail(sub_case: str) -> dict[str, Fraction]:
    """Coefficients of d_f x_max^3 for nets with one extra funky vertex w.

    ``w`` is funky to u only, to v only, or to both; the other three vertices
    are non-funky.  Funky pair types eliminated earlier in the argument are
    skipped.
    """
    if sub_case not in SUB_CASES:
        raise ValueError(f"unknown sub-case {sub_case!r}; expected one of {sorted(SUB_CASES)}")
    bu, bv, stage = SUB_CASES[sub_case]
    out = {}
    for mode in ("both", "u", "v"):
        fu = mode in ("u", "both")
        fv = mode in ("v", "both")
        total = Fraction(0)
        for bw in range(1, 7):
            if (fu and bw == bu) or (fv and bw == bv):
                continue
            if fu and _excluded(bu, bw, not pattern(bu, bw), stage):
                continue
            if fv and _excluded(bv, bw, not pattern(bv, bw), stage):
                continue
            for combo in itertools.combinations_with_replacement(range(1, 7), 3):
                if _budget_feasible([bu, bv, bw] + list(combo), fu, fv):
                    total += signature_coefficient(combo)
        out[mode] = total
    return out


def _budget_feasible(blobs, fu, fv) -> bool:
    fixed, free = [], []
    for p, q in PAIRS6:
        if (p, q) == (0, 1):
            fixed.append((p, q, not pattern(blobs[0], blobs[1])))
            continue
        if blobs[p] == blobs[q]:
            free.append((p, q))
            continue
        e = pattern(blobs[p], blobs[q])
        if ((p, q) == (0, 2) and fu) or ((p, q) == (1, 2) and fv):
            e = not e
        fixed.append((p, q, e))
    base = [(p, q) for p, q, e in fixed if e]
    for mask in range(1 << len(free)):
        if _net_shape(base + [free[i] for i in range(len(free)) if mask >> i & 1]):
            return True
    return False


def claim5_budget(sub_case: str) -> Fraction:
    return sum(claim5_budget_detail(sub_case).values(), Fraction(0))


def claim5_admissible_c(x_max: float = X_MAX, x0: float = X0_MAX, d_f_cap: float | None = None,
                        f_cap: float = 0.0, gain: float = BUDGET_GAIN, a: float = 4.99,
                        x_min: float = X_MIN) -> float:
    """Largest c with x_max^4/12 + c d x_max^3 + x_0/6 + d^2 + f/2 < gain for all d <= d_f_cap.

    The left side increases in d, so d = d_f_cap is the binding case.  The
    default cap is the funky-degree bound 1 - (1 + a) x_min.  Returns +inf
    when there is no funky mass; raises when nothing is admissible.
    """
    if d_f_cap is None:
        d_f_cap = 1 - (1 + a) * x_min
    slack = gain - x_max**4 / 12 - x0 / 6 - d_f_cap**2 - f_cap / 2
    if slack <= 0:
        raise ValueError("no admissible c: the gain is already exhausted")
    denom = d_f_cap * x_max**3
    if denom <= 0:
        return math.inf
    return slack / denom
