"""Certified upper bound for the trash-vertex neighbourhood program.

A trash vertex ``x`` has ``a_i`` (neighbours) and ``b_i`` (non-neighbours) of
mass in blob ``X_i``.  The number of nets through ``x`` is bounded by the
polynomial ``f = A + B + C`` below, and the program asks for its maximum
subject to

* ``sum (a_i + b_i) = 1``,
* ``x_min <= a_i + b_i <= x_cap`` for every blob,
* for every blob ``i``: the funky mass ``x`` would have if put into ``X_i``
  is at least the threshold of that blob (outer blobs 1-3, inner 4-6).

Coordinates are ordered ``(a_1..a_6, b_1..b_6)``.  Every coefficient of
``f`` and of each partial derivative is nonnegative, so both are monotone
on the nonnegative orthant; that is what makes the box bounds sound.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _jit
from ._jit import njit
from .constants import DF_INNER, DF_OUTER, NEIGHBOURHOOD_THRESHOLD, X0_MAX, X_CAP, X_MAX, X_MIN
from .decomposer import is_pattern_edge

DIM = 12
SOUNDNESS_MARGIN = 1e-9


def ai(i: int) -> int:
    """Coordinate of a_i (1-based blob)."""
    return i - 1


def bi(i: int) -> int:
    return 5 + i


# --------------------------------------------------------------------------
# sparse polynomials: list of (coefficient, exponent tuple)

def _mono(coef, **powers):
    e = [0] * DIM
    for name, k in powers.items():
        kind, idx = name[0], int(name[1:])
        e[ai(idx) if kind == "a" else bi(idx)] += k
    return (Fraction(coef), tuple(e))


def _collect(terms):
    acc = {}
    for c, e in terms:
        acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
    return sorted(((c, e) for e, c in acc.items() if c != 0), key=lambda t: t[1])


def objective_terms():
    """A + B + C as displayed, expanded into monomials."""
    t = []
    # A: x plus one vertex from each of five blobs
    t += [_mono(1, b2=1, b3=1, a4=1, b5=1, b6=1), _mono(1, b1=1, b3=1, b4=1, a5=1, b6=1),
          _mono(1, b1=1, b2=1, b4=1, b5=1, a6=1), _mono(1, a1=1, b2=1, b3=1, a5=1, a6=1),
          _mono(1, b1=1, a2=1, b3=1, a4=1, a6=1), _mono(1, b1=1, b2=1, a3=1, a4=1, a5=1)]
    # B: five coblobular vertices
    for i in range(1, 7):
        t.append(_mono(Fraction(1, 12), **{f"a{i}": 3, f"b{i}": 2}))
        t.append(_mono(Fraction(1, 24), **{f"a{i}": 1, f"b{i}": 4}))
    # C: two neighbours and two non-neighbours in one blob plus one more neighbour
    q = Fraction(1, 4)
    for i in range(1, 4):
        for j in range(1, 7):
            if j not in (i, i + 3):
                t.append((q, _add(_mono(q, **{f"a{i}": 2, f"b{i}": 2})[1], ai(j))))
    for i in range(4, 7):
        for j in range(1, 4):
            if j != i - 3:
                t.append((q, _add(_mono(q, **{f"a{i}": 2, f"b{i}": 2})[1], ai(j))))
    return _collect(t)


def _add(e, idx, k=1):
    e = list(e)
    e[idx] += k
    return tuple(e)


def displayed_partials():
    """The four partial derivatives as displayed: d/da_1, d/da_4, d/db_1, d/db_4."""
    q, h = Fraction(1, 4), Fraction(1, 2)
    da1 = [_mono(1, b2=1, b3=1, a5=1, a6=1), _mono(Fraction(1, 24), b1=4), _mono(q, a1=2, b1=2)]
    da1 += [_mono(h, a1=1, b1=2, **{f"a{j}": 1}) for j in (2, 3, 5, 6)]
    da1 += [_mono(q, **{f"a{j}": 2, f"b{j}": 2}) for j in (2, 3, 5, 6)]
    da4 = [_mono(1, b2=1, b3=1, b5=1, b6=1), _mono(1, b1=1, a2=1, b3=1, a6=1),
           _mono(1, b1=1, b2=1, a3=1, a5=1), _mono(Fraction(1, 24), b4=4), _mono(q, a4=2, b4=2)]
    da4 += [_mono(q, **{f"a{j}": 2, f"b{j}": 2}) for j in (2, 3)]
    da4 += [_mono(h, a4=1, b4=2, **{f"a{j}": 1}) for j in (2, 3)]
    db1 = [_mono(1, b3=1, b4=1, a5=1, b6=1), _mono(1, b2=1, b4=1, b5=1, a6=1),
           _mono(1, a2=1, b3=1, a4=1, a6=1), _mono(1, b2=1, a3=1, a4=1, a5=1),
           _mono(Fraction(1, 6), a1=3, b1=1), _mono(Fraction(1, 6), a1=1, b1=3)]
    db1 += [_mono(h, a1=2, b1=1, **{f"a{j}": 1}) for j in (2, 3, 5, 6)]
    db4 = [_mono(1, b1=1, b3=1, a5=1, b6=1), _mono(1, b1=1, b2=1, b5=1, a6=1),
           _mono(Fraction(1, 6), a4=3, b4=1), _mono(Fraction(1, 6), a4=1, b4=3)]
    db4 += [_mono(h, a4=2, b4=1, **{f"a{j}": 1}) for j in (2, 3)]
    return {ai(1): _collect(da1), ai(4): _collect(da4), bi(1): _collect(db1), bi(4): _collect(db4)}


# simultaneous rotation 1->2->3->1, 4->5->6->4 of the blobs
_ROT = {1: 2, 2: 3, 3: 1, 4: 5, 5: 6, 6: 4}


def _rotate(terms, times):
    out = []
    for c, e in terms:
        new = [0] * DIM
        for i in range(1, 7):
            j = i
            for _ in range(times):
                j = _ROT[j]
            new[ai(j)] = e[ai(i)]
            new[bi(j)] = e[bi(i)]
        out.append((c, tuple(new)))
    return _collect(out)


def gradient_terms():
    """All twelve partials: the four displayed ones and their rotations."""
    base = displayed_partials()
    out = [None] * DIM
    for coord, terms in base.items():
        kind = "a" if coord < 6 else "b"
        blob = coord + 1 if kind == "a" else coord - 5
        for r in range(3):
            j = blob
            for _ in range(r):
                j = _ROT[j]
            out[ai(j) if kind == "a" else bi(j)] = _rotate(terms, r)
    return out


def differentiate(terms, k):
    out = []
    for c, e in terms:
        if e[k]:
            out.append((c * e[k], _add(e, k, -1)))
    return _collect(out)


def template_terms():
    """Independent count of nets through x by enumerating blob templates.

    Five vertices are drawn from blobs 1..6, each marked as a neighbour or a
    non-neighbour of x.  Cross-blob pairs follow the blob pattern, pairs
    inside a blob are free, and a multiset counts when some choice of free
    edges makes x plus the five vertices a net.  Coefficient: prod 1/m! over
    groups of identical (blob, mark) choices.
    """
    from .cases import _net_shape

    opts = [(b, nb) for b in range(1, 7) for nb in (True, False)]
    out = []
    for combo in itertools.combinations_with_replacement(opts, 5):
        verts = [(0, None)] + list(combo)
        fixed, free = [], []
        for p, q in itertools.combinations(range(6), 2):
            if p == 0:
                fixed.append((p, q, verts[q][1]))
                continue
            if verts[p][0] == verts[q][0]:
                free.append((p, q))
                continue
            fixed.append((p, q, is_pattern_edge(verts[p][0] - 1, verts[q][0] - 1)))
        base = [(p, q) for p, q, e in fixed if e]
        ok = any(_net_shape(base + [free[i] for i in range(len(free)) if m >> i & 1])
                 for m in range(1 << len(free)))
        if not ok:
            continue
        coef = Fraction(1)
        e = [0] * DIM
        for item in set(combo):
            coef /= math.factorial(combo.count(item))
        for b, nb in combo:
            e[ai(b) if nb else bi(b)] += 1
        out.append((coef, tuple(e)))
    return _collect(out)


def _arrays(terms):
    coef = np.array([float(c) for c, _ in terms], dtype=np.float64)
    exps = np.array([e for _, e in terms], dtype=np.int64).reshape(-1, DIM)
    return coef, exps


# --------------------------------------------------------------------------
# evaluation kernels

@njit(cache=True)
def _poly_eval(coef, exps, p):
    total = 0.0
    for m in range(coef.shape[0]):
        v = coef[m]
        for k in range(exps.shape[1]):
            e = exps[m, k]
            if e:
                x = p[k]
                for _ in range(e):
                    v *= x
        total += v
    return total


def _poly_eval_numpy(coef, exps, pts):
    pts = np.atleast_2d(pts)
    vals = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
    return vals @ coef


class Polynomial:
    def __init__(self, terms):
        self.terms = terms
        self.coef, self.exps = _arrays(terms)

    def __call__(self, p):
        p = np.asarray(p, dtype=np.float64)
        if p.ndim == 1:
            if _jit.HAS_NUMBA:
                return float(_poly_eval(self.coef, self.exps, p))
            return float(_poly_eval_numpy(self.coef, self.exps, p)[0])
        return _poly_eval_numpy(self.coef, self.exps, p)


_OBJ = None
_GRAD = None


def _obj():
    global _OBJ
    if _OBJ is None:
        _OBJ = Polynomial(objective_terms())
    return _OBJ


def _grad():
    global _GRAD
    if _GRAD is None:
        _GRAD = [Polynomial(t) for t in gradient_terms()]
    return _GRAD


def objective(p) -> float:
    """f = A + B + C at p = (a_1..a_6, b_1..b_6)."""
    return _obj()(p)


def gradient(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    return np.array([g(p) for g in _grad()])


def global_gradient_bound(x_cap: float = X_CAP, verify: bool = True) -> float:
    """(4/3) x_cap^4, checked against every partial when a_i + b_i <= x_cap."""
    bound = 4.0 / 3.0 * x_cap**4
    if verify and x_cap > 0:
        worst = max(partial_sup_on_bands(k, x_cap, target=bound) for k in range(DIM))
        if worst > bound * (1 + SOUNDNESS_MARGIN):
            raise ArithmeticError(f"a partial reaches {worst:.6g} > {bound:.6g}")
    return bound


def partial_sup_on_bands(k: int, x_cap: float, tol: float = 1e-3, max_boxes: int = 2000000,
                         target: float | None = None) -> float:
    """Upper bound on sup of partial k over {a_i, b_i >= 0, a_i + b_i <= x_cap}.

    Partials increase with the blob masses, so the masses sit at x_cap and
    a_i = x_cap t_i, b_i = x_cap (1 - t_i).  Each monomial in t_i and
    (1 - t_i) is bounded on a t-box by maximizing every blob factor
    separately (one peak per factor); boxes are bisected
    until the bound is within a relative ``tol`` of the best sampled value,
    or below ``target`` when one is given.  Returns the certified upper bound.
    """
    coef, exps = _grad()[k].coef, _grad()[k].exps
    ea, eb = exps[:, :6], exps[:, 6:]
    scale = coef * x_cap ** exps.sum(axis=1)

    tot = ea + eb
    peak = np.where(tot > 0, ea / np.maximum(tot, 1), 0.5)

    def upper(lo, hi):
        # max of t^alpha (1 - t)^beta on [lo, hi] sits at the clipped peak
        t = np.clip(peak[None], lo[:, None, :], hi[:, None, :])
        return np.prod(t ** ea[None] * (1 - t) ** eb[None], axis=2) @ scale

    def value(t):
        return (np.prod(t[:, None, :] ** ea[None], axis=2) *
                np.prod((1 - t)[:, None, :] ** eb[None], axis=2)) @ scale

    lo = np.zeros((1, 6))
    hi = np.ones((1, 6))
    best_low = float(value(np.full((1, 6), 0.5))[0])
    certified = 0.0
    boxes = 0
    while lo.shape[0]:
        ub = upper(lo, hi)
        mid = 0.5 * (lo + hi)
        best_low = max(best_low, float(value(mid).max()))
        done = ub <= max(best_low * (1 + tol), target or 0.0)
        if done.any():
            certified = max(certified, float(ub[done].max()))
        lo, hi = lo[~done], hi[~done]
        boxes += lo.shape[0]
        if boxes > max_boxes:
            return max(certified, float(upper(lo, hi).max()))
        if not lo.shape[0]:
            break
        axis = np.argmax(hi - lo, axis=1)
        rows = np.arange(lo.shape[0])
        cut = 0.5 * (lo[rows, axis] + hi[rows, axis])
        lo2, hi2 = lo.copy(), hi.copy()
        hi[rows, axis] = cut
        lo2[rows, axis] = cut
        lo = np.vstack([lo, lo2])
        hi = np.vstack([hi, hi2])
    return max(certified, best_low)


# --------------------------------------------------------------------------
# constraints

@dataclass
class Constraints:
    """Linear constraints: rows @ p >= rhs, plus the sum and band constraints."""

    x_min: float = X_MIN
    x_cap: float = X_CAP
    rows: np.ndarray = None
    rhs: np.ndarray = None
    total: float = 1.0

    def __post_init__(self):
        if self.rows is None:
            self.rows, self.rhs = funky_rows()


def funky_rows(outer: float = DF_OUTER, inner: float = DF_INNER, variant: str = "derived"):
    """Funky mass of x if placed in blob i: non-neighbours where the pattern wants edges,
    neighbours where it wants non-edges.

    ``variant="printed"`` reproduces the row list exactly as typeset, whose
    second row reads a_1 + a_3 + a_4 + b_5 + a_5 (a_5 where the pattern gives a_6).
    """
    rows = np.zeros((6, DIM))
    rhs = np.zeros(6)
    for i in range(1, 7):
        for j in range(1, 7):
            if j == i:
                continue
            rows[i - 1, bi(j) if is_pattern_edge(i - 1, j - 1) else ai(j)] = 1.0
        rhs[i - 1] = outer if i <= 3 else inner
    if variant == "printed":
        rows[1, ai(6)] = 0.0
        rows[1, ai(5)] = 1.0
    elif variant != "derived":
        raise ValueError("variant must be 'derived' or 'printed'")
    return rows, rhs


@njit(cache=True)
def _status(lo, hi, rows, rhs, x_min, x_cap, total):
    """0 = infeasible, 1 = partial, 2 = every point satisfies the inequalities."""
    s_lo = 0.0
    s_hi = 0.0
    for k in range(12):
        s_lo += lo[k]
        s_hi += hi[k]
    if s_lo > total + 1e-15 or s_hi < total - 1e-15:
        return 0
    full = True
    for i in range(6):
        m_lo = lo[i] + lo[6 + i]
        m_hi = hi[i] + hi[6 + i]
        if m_lo > x_cap + 1e-15 or m_hi < x_min - 1e-15:
            return 0
        if m_lo < x_min or m_hi > x_cap:
            full = False
    for r in range(rows.shape[0]):
        r_lo = 0.0
        r_hi = 0.0
        for k in range(12):
            if rows[r, k] != 0.0:
                r_lo += rows[r, k] * lo[k]
                r_hi += rows[r, k] * hi[k]
        if r_hi < rhs[r] - 1e-15:
            return 0
        if r_lo < rhs[r]:
            full = False
    if full and s_lo == s_hi:
        return 2
    return 1


@njit(cache=True)
def _tighten(lo, hi, rows, rhs, x_min, x_cap, total):
    """Interval propagation of the linear constraints; False if the box empties."""
    for _ in range(8):
        changed = False
        s_lo = 0.0
        s_hi = 0.0
        for k in range(12):
            s_lo += lo[k]
            s_hi += hi[k]
        for k in range(12):
            up = total - (s_lo - lo[k])
            dn = total - (s_hi - hi[k])
            if up < hi[k]:
                hi[k] = up
                changed = True
            if dn > lo[k]:
                lo[k] = dn
                changed = True
        for i in range(6):
            for k, o in ((i, 6 + i), (6 + i, i)):
                up = x_cap - lo[o]
                dn = x_min - hi[o]
                if up < hi[k]:
                    hi[k] = up
                    changed = True
                if dn > lo[k]:
                    lo[k] = dn
                    changed = True
        for r in range(rows.shape[0]):
            r_hi = 0.0
            for k in range(12):
                if rows[r, k] != 0.0:
                    r_hi += hi[k]
            for k in range(12):
                if rows[r, k] != 0.0:
                    dn = rhs[r] - (r_hi - hi[k])
                    if dn > lo[k]:
                        lo[k] = dn
                        changed = True
        for k in range(12):
            if lo[k] > hi[k] + 1e-15:
                return False
            if lo[k] > hi[k]:
                hi[k] = lo[k]
        if not changed:
            break
    return True


@njit(cache=True)
def _box_bound(lo, hi, coef, exps, gcoef, gexps, gstart, mode):
    """(bound, center value); mode 0 = gradient inflation, 1 = monotone, 2 = min of both."""
    c = np.empty(12)
    for k in range(12):
        c[k] = 0.5 * (lo[k] + hi[k])
    fc = _poly_eval(coef, exps, c)
    grad_bound = fc
    if mode != 1:
        for k in range(12):
            h = 0.5 * (hi[k] - lo[k])
            if h > 0.0:
                g = _poly_eval(gcoef[gstart[k]:gstart[k + 1]], gexps[gstart[k]:gstart[k + 1]], hi)
                grad_bound += h * g
    if mode == 0:
        return grad_bound, fc
    mono = _poly_eval(coef, exps, hi)
    if mode == 1:
        return mono, fc
    return min(mono, grad_bound), fc


@njit(cache=True)
def _bnb_kernel(lo0, hi0, rows, rhs, x_min, x_cap, total, coef, exps, gcoef, gexps, gstart,
                threshold, margin, mode, max_depth, budget, out_stats, witness):
    """Depth-first branch and bound.  Returns 0 success, 1 depth failure, 2 budget failure.

    out_stats: [boxes, feasible leaves, max center, max certified bound, max depth,
    infeasible boxes]
    """
    cap = max_depth + 2
    stack_lo = np.empty((cap * 2 + 4, 12))
    stack_hi = np.empty((cap * 2 + 4, 12))
    stack_d = np.empty(cap * 2 + 4, np.int64)
    top = 0
    stack_lo[0] = lo0
    stack_hi[0] = hi0
    stack_d[0] = 0
    top = 1
    lo = np.empty(12)
    hi = np.empty(12)
    while top > 0:
        top -= 1
        lo[:] = stack_lo[top]
        hi[:] = stack_hi[top]
        d = stack_d[top]
        out_stats[0] += 1
        if out_stats[0] > budget:
            witness[:12] = lo
            witness[12:] = hi
            return 2
        if d > out_stats[4]:
            out_stats[4] = d
        if not _tighten(lo, hi, rows, rhs, x_min, x_cap, total):
            out_stats[5] += 1
            continue
        st = _status(lo, hi, rows, rhs, x_min, x_cap, total)
        if st == 0:
            out_stats[5] += 1
            continue
        b, fc = _box_bound(lo, hi, coef, exps, gcoef, gexps, gstart, mode)
        b = b * (1.0 + margin)
        if fc > out_stats[2]:
            out_stats[2] = fc
        if b < threshold:
            out_stats[1] += 1
            if b > out_stats[3]:
                out_stats[3] = b
            continue
        if d >= max_depth:
            witness[:12] = lo
            witness[12:] = hi
            return 1
        # widest coordinate, ties to the lowest index
        axis = 0
        wmax = -1.0
        for k in range(12):
            w = hi[k] - lo[k]
            if w > wmax:
                wmax = w
                axis = k
        mid = 0.5 * (lo[axis] + hi[axis])
        # push upper half first so the lower half is explored first
        stack_lo[top] = lo
        stack_hi[top] = hi
        stack_lo[top, axis] = mid
        stack_d[top] = d + 1
        top += 1
        stack_lo[top] = lo
        stack_hi[top] = hi
        stack_hi[top, axis] = mid
        stack_d[top] = d + 1
        top += 1
    return 0


def _py_bnb(lo0, hi0, rows, rhs, x_min, x_cap, total, coef, exps, gcoef, gexps, gstart,
            threshold, margin, mode, max_depth, budget, out_stats, witness):
    """Same algorithm as the compiled kernel, for the pure-numpy backend."""
    stack = [(lo0.copy(), hi0.copy(), 0)]
    grads = [(gcoef[gstart[k]:gstart[k + 1]], gexps[gstart[k]:gstart[k + 1]]) for k in range(12)]
    while stack:
        lo, hi, d = stack.pop()
        lo, hi = lo.copy(), hi.copy()
        out_stats[0] += 1
        if out_stats[0] > budget:
            witness[:12], witness[12:] = lo, hi
            return 2
        out_stats[4] = max(out_stats[4], d)
        if not _tighten(lo, hi, rows, rhs, x_min, x_cap, total):
            out_stats[5] += 1
            continue
        if _status(lo, hi, rows, rhs, x_min, x_cap, total) == 0:
            out_stats[5] += 1
            continue
        c = 0.5 * (lo + hi)
        fc = float(_poly_eval_numpy(coef, exps, c)[0])
        gb = fc + sum(0.5 * (hi[k] - lo[k]) * float(_poly_eval_numpy(*grads[k], hi)[0])
                      for k in range(12) if hi[k] > lo[k])
        mono = float(_poly_eval_numpy(coef, exps, hi)[0])
        b = gb if mode == 0 else mono if mode == 1 else min(gb, mono)
        b *= 1.0 + margin
        out_stats[2] = max(out_stats[2], fc)
        if b < threshold:
            out_stats[1] += 1
            out_stats[3] = max(out_stats[3], b)
            continue
        if d >= max_depth:
            witness[:12], witness[12:] = lo, hi
            return 1
        axis = int(np.argmax(hi - lo))
        mid = 0.5 * (lo[axis] + hi[axis])
        up_lo = lo.copy()
        up_lo[axis] = mid
        stack.append((up_lo, hi.copy(), d + 1))
        dn_hi = hi.copy()
        dn_hi[axis] = mid
        stack.append((lo.copy(), dn_hi, d + 1))
    return 0


if not _jit.HAS_NUMBA:  # pragma: no cover - exercised with the numpy backend
    def _poly_eval(coef, exps, p):  # noqa: F811
        return float(_poly_eval_numpy(coef, exps, p)[0])

    _bnb_kernel = _py_bnb  # noqa: F811


# --------------------------------------------------------------------------
# boxes and certificates

@dataclass
class Box:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.lower = np.asarray(self.lower, dtype=np.float64).copy()
        self.upper = np.asarray(self.upper, dtype=np.float64).copy()
        if self.lower.shape != (DIM,) or self.upper.shape != (DIM,):
            raise ValueError("boxes are 12-dimensional")
        if np.any(self.lower > self.upper):
            raise ValueError("lower must not exceed upper")

    @classmethod
    def full(cls, x_cap: float = X_CAP) -> "Box":
        return cls(np.zeros(DIM), np.full(DIM, x_cap))

    @classmethod
    def point(cls, p) -> "Box":
        return cls(p, p)

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def to_json(self) -> dict:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist()}


def feasible(box: Box, cons: Constraints | None = None) -> str:
    """'no' if the box misses the feasible region, 'yes' if it lies inside, else 'partial'."""
    cons = cons or Constraints()
    st = _status(box.lower, box.upper, cons.rows, cons.rhs, cons.x_min, cons.x_cap, cons.total)
    return ("no", "partial", "yes")[st]


def point_feasible(p, cons: Constraints | None = None, tol: float = 1e-12) -> bool:
    cons = cons or Constraints()
    p = np.asarray(p, dtype=float)
    if np.any(p < -tol) or abs(p.sum() - cons.total) > tol:
        return False
    mass = p[:6] + p[6:]
    if np.any(mass < cons.x_min - tol) or np.any(mass > cons.x_cap + tol):
        return False
    return bool(np.all(cons.rows @ p >= cons.rhs - tol))


@dataclass
class Certificate:
    threshold: float
    success: bool
    status: str
    boxes_examined: int
    feasible_leaves: int
    infeasible_boxes: int
    max_center_value: float
    max_inflated_value: float
    refinement_depth_max: int
    mode: str
    bound: str
    seconds: float
    witness: Box | None = None
    witness_center_value: float | None = None
    settings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "threshold": self.threshold,
            "success": self.success,
            "status": self.status,
            "boxes_examined": self.boxes_examined,
            "feasible_leaves": self.feasible_leaves,
            "infeasible_boxes": self.infeasible_boxes,
            "max_center_value": self.max_center_value,
            "max_inflated_value": self.max_inflated_value,
            "refinement_depth_max": self.refinement_depth_max,
            "mode": self.mode,
            "bound": self.bound,
            "seconds": self.seconds,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "witness_center_value": self.witness_center_value,
            "settings": self.settings,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


_BOUND_MODES = {"gradient": 0, "monotone": 1, "best": 2}


def _kernel_args():
    obj = _obj()
    grads = _grad()
    gcoef = np.concatenate([g.coef for g in grads])
    gexps = np.vstack([g.exps for g in grads])
    gstart = np.zeros(DIM + 1, dtype=np.int64)
    for k, g in enumerate(grads):
        gstart[k + 1] = gstart[k] + g.coef.shape[0]
    return obj.coef, obj.exps, gcoef, gexps, gstart


def _run(box, cons, threshold, mode, max_depth, budget):
    coef, exps, gcoef, gexps, gstart = _kernel_args()
    stats = np.zeros(6)
    witness = np.zeros(2 * DIM)
    code = _bnb_kernel(box.lower.copy(), box.upper.copy(), cons.rows, cons.rhs, cons.x_min,
                       cons.x_cap, cons.total, coef, exps, gcoef, gexps, gstart, threshold,
                       SOUNDNESS_MARGIN, _BOUND_MODES[mode], max_depth, budget, stats, witness)
    return int(code), stats, witness


def certify(threshold: float = NEIGHBOURHOOD_THRESHOLD, max_depth: int = 200,
            budget: int = 10**12, mode: str = "bnb", bound: str = "gradient",
            region: Box | None = None, cons: Constraints | None = None,
            grid_cells: int = 2, grid_refine: int = 60) -> Certificate:
    """Show f < threshold on the feasible part of ``region`` (default: the full box).

    bnb: one depth-first worklist over the region, bisecting the widest side.
    grid: the region is first cut into ``grid_cells`` equal pieces per
    coordinate; each cell is then refined like bnb, at most ``grid_refine``
    levels deep.
    """
    cons = cons or Constraints()
    region = region or Box.full(cons.x_cap)
    if bound not in _BOUND_MODES:
        raise ValueError(f"bound must be one of {sorted(_BOUND_MODES)}")
    t0 = time.time()
    settings = {"max_depth": max_depth, "budget": budget, "grid_cells": grid_cells,
                "grid_refine": grid_refine, "x_min": cons.x_min, "x_cap": cons.x_cap,
                "margin": SOUNDNESS_MARGIN}
    if mode == "bnb":
        cells = [region]
        depth = max_depth
    elif mode == "grid":
        edges = [np.linspace(region.lower[k], region.upper[k], grid_cells + 1) for k in range(DIM)]
        cells = None
        depth = grid_refine
    else:
        raise ValueError("mode must be 'bnb' or 'grid'")
    totals = np.zeros(6)
    status, wit = "success", None
    remaining = budget

    def cell_iter():
        if cells is not None:
            yield from cells
            return
        for idx in itertools.product(range(grid_cells), repeat=DIM):
            lo = np.array([edges[k][i] for k, i in enumerate(idx)])
            hi = np.array([edges[k][i + 1] for k, i in enumerate(idx)])
            yield Box(lo, hi)

    for cell in cell_iter():
        if mode == "grid" and feasible(cell, cons) == "no":
            totals[0] += 1
            totals[5] += 1
            continue
        code, stats, witness = _run(cell, cons, threshold, bound, depth, remaining)
        totals[0] += stats[0]
        totals[1] += stats[1]
        totals[2] = max(totals[2], stats[2])
        totals[3] = max(totals[3], stats[3])
        totals[4] = max(totals[4], stats[4])
        totals[5] += stats[5]
        remaining = max(0, budget - int(totals[0]))
        if code:
            status = "depth" if code == 1 else "budget"
            wit = Box(witness[:DIM], np.maximum(witness[DIM:], witness[:DIM]))
            break
    cert = Certificate(threshold=threshold, success=status == "success", status=status,
                       boxes_examined=int(totals[0]), feasible_leaves=int(totals[1]),
                       infeasible_boxes=int(totals[5]), max_center_value=float(totals[2]),
                       max_inflated_value=float(totals[3]), refinement_depth_max=int(totals[4]),
                       mode=mode, bound=bound, seconds=time.time() - t0, settings=settings)
    if wit is not None:
        cert.witness = wit
        cert.witness_center_value = objective(wit.center)
    return cert


def relaxation_point(x, a_frac, x_min: float = X_MIN, x_max: float = X_MAX, x0: float = X0_MAX):
    """Widen a point of the trash-aware program into the relaxed one.

    ``x`` are the blob masses (x_1..x_6) plus trash x_0 in ``x[0]``; the
    trash is spread over the blobs in proportion to their masses, keeping
    each blob's neighbour fraction ``a_frac[i]``.
    """
    x = np.asarray(x, dtype=float)
    mass = x[1:] + x[0] * x[1:] / x[1:].sum()
    a = mass * np.asarray(a_frac)
    return np.concatenate([a, mass - a])
