"""The four symmetric quadratic programs bounding blob sizes, trash and funky mass.

Full program: variables x_0..x_6 >= 0 with sum 1 and f >= 0, subject to
``2 sum_{i<j} x_i x_j - 2 f - a sum x_i^2 >= rhs`` (strict inequality
closed).  Symmetrizing x_2..x_6 and dropping f preserves feasibility, which
leaves two variables x_1 and y = x_2 = ... = x_6 (x_0 = 1 - x_1 - 5y):

    g(x_1, y) = 10 x_1 y - 5 (a - 4) y^2 - a x_1^2 >= rhs.

Every optimum of a two-variable program with one quadratic and three linear
constraints sits at a KKT point; here those are roots of quadratics, so all
candidates are listed in closed form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

OBJECTIVES = ("min_x1", "max_x1", "max_x0", "max_f")
FEAS_TOL = 1e-12


class InfeasibleProgram(ValueError):
    pass


@dataclass(frozen=True)
class ProgramSpec:
    objective: str
    a: float = 4.99
    rhs: float = 0.000149043538
    sign: str = "derived"  # "published" keeps the y^2 coefficient as printed

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if not 4 < self.a <= 5:
            raise ValueError("a must lie in (4, 5]")
        if self.rhs < 0:
            raise ValueError("rhs must be nonnegative")
        if self.sign not in ("derived", "published"):
            raise ValueError("sign must be 'derived' or 'published'")


@dataclass
class ReducedProgram:
    objective: str
    variables: tuple[str, ...]
    # g = cxy * x1 * y + cyy * y^2 + cxx * x1^2 (x1 objectives)
    cxy: float = 0.0
    cyy: float = 0.0
    cxx: float = 0.0
    # one-variable programs: k * (1 - x0)^2 >= rhs, or f <= f_bound
    k: float = 0.0
    f_bound: float = 0.0
    rhs: float = 0.0
    text: str = ""

    def g(self, x1, y):
        return self.cxy * x1 * y + self.cyy * y * y + self.cxx * x1 * x1


@dataclass
class SolveResult:
    objective: str
    optimum: float
    argument: dict
    kkt_residual: float
    candidates: list = field(default_factory=list)
    grid_ok: bool | None = None
    grid_best: float | None = None

    def to_json(self) -> dict:
        return {
            "objective": self.objective,
            "optimum": self.optimum,
            "argument": self.argument,
            "kkt_residual": self.kkt_residual,
            "candidates": self.candidates,
            "grid_ok": self.grid_ok,
            "grid_best": self.grid_best,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def reduce(spec: ProgramSpec) -> ReducedProgram:
    a, rhs = spec.a, spec.rhs
    if spec.objective in ("min_x1", "max_x1"):
        cyy = -5 * (a - 4) if spec.sign == "derived" else 5 * (a - 4)
        text = (f"{spec.objective.split('_')[0]}imize x1 s.t. x0 + x1 + 5y = 1, x0, x1, y >= 0, "
                f"10 x1 y {'-' if cyy < 0 else '+'} {abs(cyy):.6g} y^2 - {a:.6g} x1^2 >= {rhs:.12g}")
        return ReducedProgram(spec.objective, ("x0", "x1", "y"), cxy=10.0, cyy=cyy, cxx=-a,
                              rhs=rhs, text=text)
    if spec.objective == "max_x0":
        k = (5 - a) / 6
        text = f"maximize x0 s.t. {k:.12g} (1 - x0)^2 >= {rhs:.12g}, 0 <= x0 <= 1"
        return ReducedProgram("max_x0", ("x0",), k=k, rhs=rhs, text=text)
    fb = ((5 - a) / 6 - rhs) / 2
    text = f"maximize f s.t. (5 - a)/6 - 2 f >= rhs, i.e. f <= {fb:.12g}"
    return ReducedProgram("max_f", ("f",), f_bound=fb, rhs=rhs, text=text)


def _quad_roots(qa, qb, qc):
    if abs(qa) < 1e-300:
        return [] if qb == 0 else [-qc / qb]
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    s = math.sqrt(disc)
    # numerically stable pair
    q = -0.5 * (qb + math.copysign(s, qb))
    roots = [q / qa]
    if q != 0:
        roots.append(qc / q)
    else:
        roots.append(0.0)
    return roots


def _x1_candidates(rp: ReducedProgram) -> list[tuple[float, float, str]]:
    """KKT candidates (x1, y) with g = rhs active."""
    out = []
    cxy, cyy, cxx, rhs = rp.cxy, rp.cyy, rp.cxx, rp.rhs
    # dg/dy = 0 (y interior): y = -cxy x1 / (2 cyy), then g = x1^2 * kappa
    if cyy < 0:
        ratio = -cxy / (2 * cyy)
        kappa = cxy * ratio + cyy * ratio**2 + cxx
        if kappa > 0:
            x1 = math.sqrt(rhs / kappa)
            out.append((x1, ratio * x1, "g active, y stationary"))
    # x0 = 0: y = (1 - x1) / 5
    qa = -cxy / 5 + cyy / 25 + cxx
    qb = cxy / 5 - 2 * cyy / 25
    qc = cyy / 25 - rhs
    for x1 in _quad_roots(qa, qb, qc):
        out.append((x1, (1 - x1) / 5, "g active, x0 = 0"))
    # y = 0: g = cxx x1^2 = rhs
    if cxx > 0:
        x1 = math.sqrt(rhs / cxx)
        out.append((x1, 0.0, "g active, y = 0"))
    # x1 = 0: g = cyy y^2 = rhs
    if cyy > 0:
        y = math.sqrt(rhs / cyy)
        out.append((0.0, y, "g active, x1 = 0"))
    return out


def _constraints(rp: ReducedProgram, x1, y):
    """h_k(x1, y) >= 0 and their gradients."""
    g = rp.g(x1, y) - rp.rhs
    dg = (rp.cxy * y + 2 * rp.cxx * x1, rp.cxy * x1 + 2 * rp.cyy * y)
    return [
        (g, dg),
        (x1, (1.0, 0.0)),
        (y, (0.0, 1.0)),
        (1 - x1 - 5 * y, (-1.0, -5.0)),
    ]


def _feasible(rp, x1, y, tol=FEAS_TOL):
    return all(h >= -tol for h, _ in _constraints(rp, x1, y))


def kkt_residual_x1(rp: ReducedProgram, x1: float, y: float, active_tol: float = 1e-9) -> float:
    """Stationarity + complementary slackness + infeasibility, with NNLS multipliers."""
    sign = 1.0 if rp.objective == "min_x1" else -1.0
    grad_phi = np.array([sign, 0.0])
    cons = _constraints(rp, x1, y)
    # scale the quadratic constraint so its gradient has unit size
    active = []
    for h, dh in cons:
        norm = math.hypot(*dh) or 1.0
        if abs(h) / norm <= active_tol:
            active.append((h / norm, np.array(dh) / norm))
    infeas = sum(max(0.0, -h) for h, _ in cons)
    if not active:
        return float(np.linalg.norm(grad_phi)) + infeas
    mat = np.column_stack([dh for _, dh in active])
    mu, res = nnls(mat, grad_phi)
    slack = sum(abs(m * h) for m, (h, _) in zip(mu, active))
    return float(res) + slack + infeas


def grid_check_x1(rp: ReducedProgram, optimum: float, per_axis: int = 1000, tol: float = 1e-9):
    """Dense grid over x1 in [0, 1], y in [0, 1/5]; returns (ok, best grid value)."""
    x1 = np.linspace(0.0, 1.0, per_axis)
    y = np.linspace(0.0, 0.2, per_axis)
    X, Y = np.meshgrid(x1, y, indexing="ij")
    feas = (rp.g(X, Y) >= rp.rhs) & (X + 5 * Y <= 1 + 1e-15)
    if not feas.any():
        return True, None
    vals = X[feas]
    if rp.objective == "min_x1":
        best = float(vals.min())
        return best >= optimum - tol, best
    best = float(vals.max())
    return best <= optimum + tol, best


def solve(spec: ProgramSpec, grid: bool = True, per_axis: int = 1000) -> SolveResult:
    rp = reduce(spec)
    if rp.objective == "max_x0":
        if rp.k <= 0 or rp.k < rp.rhs:
            if rp.k <= 0 or rp.rhs > rp.k:
                raise InfeasibleProgram("no x0 in [0, 1] satisfies the constraint")
        x0 = 1 - math.sqrt(rp.rhs / rp.k)
        resid = abs(rp.k * (1 - x0) ** 2 - rp.rhs)
        res = SolveResult("max_x0", x0, {"x0": x0, "x_i": (1 - x0) / 6}, resid,
                          candidates=[{"x0": x0, "kind": "constraint active"}])
        if grid:
            xs = np.linspace(0, 1, per_axis * per_axis)
            ok = xs[rp.k * (1 - xs) ** 2 >= rp.rhs]
            res.grid_best = float(ok.max()) if ok.size else None
            res.grid_ok = res.grid_best is None or res.grid_best <= x0 + 1e-9
        return res
    if rp.objective == "max_f":
        if rp.f_bound < 0:
            raise InfeasibleProgram("symmetric point violates the constraint even at f = 0")
        res = SolveResult("max_f", rp.f_bound, {"f": rp.f_bound, "x_i": 1 / 6}, 0.0,
                          candidates=[{"f": rp.f_bound, "kind": "constraint active"}])
        if grid:
            fs = np.linspace(0, 1, per_axis * per_axis)
            ok = fs[(5 - spec.a) / 6 - 2 * fs >= rp.rhs]
            res.grid_best = float(ok.max()) if ok.size else None
            res.grid_ok = res.grid_best is None or res.grid_best <= rp.f_bound + 1e-9
        return res
    cands = []
    for x1, y, kind in _x1_candidates(rp):
        if _feasible(rp, x1, y, tol=1e-12):
            cands.append((x1, y, kind))
    if not cands:
        raise InfeasibleProgram("reduced program has no feasible KKT point")
    pick = min if rp.objective == "min_x1" else max
    x1, y, kind = pick(cands, key=lambda c: c[0])
    resid = kkt_residual_x1(rp, x1, y)
    res = SolveResult(rp.objective, x1, {"x1": x1, "y": y, "x0": 1 - x1 - 5 * y, "active": kind},
                      resid, candidates=[{"x1": c[0], "y": c[1], "kind": c[2]} for c in cands])
    if grid:
        res.grid_ok, res.grid_best = grid_check_x1(rp, x1, per_axis)
    return res


def full_lhs(x, f, a):
    """Left side of the blob-balance inequality for x = (x_0, x_1, ..., x_6)."""
    xs = np.asarray(x, dtype=float)[1:]
    s = xs.sum()
    cross = (s * s - (xs * xs).sum())  # = 2 sum_{i<j} x_i x_j
    return cross - 2 * f - a * (xs * xs).sum()


def symmetrize(x, f):
    """Keep x_0, x_1; replace x_2..x_6 by their mean; drop f."""
    x = np.asarray(x, dtype=float).copy()
    x[2:] = (1 - x[0] - x[1]) / 5
    return x, 0.0


def sweep_a(a_values, rhs: float = 0.000149043538) -> list[dict]:
    """Solve all four programs for each a; infeasible programs are reported, not raised."""
    rows = []
    for a in a_values:
        row = {"a": float(a)}
        for obj in OBJECTIVES:
            try:
                row[obj] = solve(ProgramSpec(obj, float(a), rhs), grid=False).optimum
            except InfeasibleProgram:
                row[obj] = None
        rows.append(row)
    return rows


def effective_rhs_for(x1_min: float, a: float = 4.99) -> float:
    """The rhs at which the x0 = 0 boundary root of the min program equals ``x1_min``."""
    y = (1 - x1_min) / 5
    return 10 * x1_min * y - 5 * (a - 4) * y * y - a * x1_min**2
