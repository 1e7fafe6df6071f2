import numpy as np
import pytest

from netinduce import constants, qp


def spec(obj, **kw):
    return qp.ProgramSpec(obj, kw.pop("a", 4.99), kw.pop("rhs", constants.LHS_THRESHOLD), **kw)


def test_stated_constants_give_interior_optimum():
    res = qp.solve(spec("min_x1"))
    assert res.optimum == pytest.approx(0.0496319, abs=1e-7)
    assert res.argument["active"] == "g active, y stationary"
    assert res.kkt_residual < 1e-10 and res.grid_ok
    assert qp.solve(spec("max_x1")).optimum == pytest.approx(0.1811971, abs=1e-7)
    assert qp.solve(spec("max_x0")).optimum == pytest.approx(0.700958, abs=1e-6)
    assert qp.solve(spec("max_f")).optimum == pytest.approx(0.000758812, abs=1e-9)


def test_effective_rhs_reproduces_blob_bounds():
    rhs = qp.effective_rhs_for(constants.X_MIN)
    lo = qp.solve(spec("min_x1", rhs=rhs))
    hi = qp.solve(spec("max_x1", rhs=rhs))
    assert lo.optimum == pytest.approx(constants.X_MIN, abs=1e-9)
    assert hi.optimum == pytest.approx(constants.X_MAX, abs=1e-9)
    assert qp.solve(spec("max_f", rhs=rhs)).optimum == pytest.approx(constants.F_MAX, abs=1e-8)
    assert qp.solve(spec("max_x0", rhs=rhs)).optimum == pytest.approx(constants.X0_MAX, abs=1e-7)


def test_symmetrization_preserves_feasibility():
    rng = np.random.default_rng(0)
    hits = 0
    for _ in range(20000):
        x = rng.dirichlet(np.ones(7) * 20)
        f = rng.uniform(0, 1e-4)
        if qp.full_lhs(x, f, 4.99) >= constants.LHS_THRESHOLD:
            hits += 1
            xs, fs = qp.symmetrize(x, f)
            assert qp.full_lhs(xs, fs, 4.99) >= qp.full_lhs(x, f, 4.99) - 1e-15
    assert hits > 0


def test_published_sign_changes_program():
    a = qp.solve(spec("min_x1"))
    b = qp.solve(spec("min_x1", sign="published"))
    assert a.optimum != b.optimum
    assert "+ 4.95 y^2" in qp.reduce(spec("min_x1", sign="published")).text


def test_infeasible_and_invalid():
    with pytest.raises(qp.InfeasibleProgram):
        qp.solve(spec("max_f", rhs=0.01))
    with pytest.raises(qp.InfeasibleProgram):
        qp.solve(spec("min_x1", rhs=0.5))
    with pytest.raises(ValueError):
        qp.ProgramSpec("min_x2")
    with pytest.raises(ValueError):
        qp.ProgramSpec("min_x1", a=3.0)


def test_sweep():
    rows = qp.sweep_a([4.9, 4.95, 4.99])
    assert [r["a"] for r in rows] == [4.9, 4.95, 4.99]
    mins = [r["min_x1"] for r in rows]
    assert all(m is not None for m in mins)
