import numpy as np
import pytest

from netinduce import constants
from netinduce import gridcert as G

CAP = constants.X_CAP


def point(**kw):
    p = np.zeros(G.DIM)
    for name, v in kw.items():
        p[G.ai(int(name[1])) if name[0] == "a" else G.bi(int(name[1]))] = v
    return p


def test_objective_examples():
    assert G.objective(np.r_[np.full(6, 1 / 6), np.zeros(6)]) == 0.0
    p = point(b2=1 / 6, b3=1 / 6, b5=1 / 6, b6=1 / 6, a4=1 / 6)
    assert G.objective(p) == pytest.approx((1 / 6) ** 5, rel=1e-12)


def test_objective_matches_template_oracle():
    assert G.objective_terms() == G.template_terms()
    oracle = G.Polynomial(G.template_terms())
    rng = np.random.default_rng(1)
    for _ in range(200):
        p = rng.uniform(0, CAP, G.DIM)
        assert G.objective(p) == pytest.approx(oracle(p), rel=1e-13)


def test_gradient_examples():
    assert np.all(G.gradient(np.zeros(G.DIM)) == 0)
    assert G.gradient(point(b1=1.0))[G.ai(1)] == pytest.approx(1 / 24)


def test_rotated_partials_equal_symbolic_derivatives():
    obj = G.objective_terms()
    grads = G.gradient_terms()
    for k in range(G.DIM):
        assert grads[k] == G.differentiate(obj, k)


def test_gradient_finite_differences():
    rng = np.random.default_rng(2)
    h = 1e-6
    for _ in range(300):
        p = rng.uniform(0, CAP, G.DIM)
        g = G.gradient(p)
        for k in range(G.DIM):
            e = np.zeros(G.DIM)
            e[k] = h
            fd = (G.objective(p + e) - G.objective(p - e)) / (2 * h)
            assert abs(fd - g[k]) <= 1e-6 * abs(g[k])


def test_global_gradient_bound():
    assert G.global_gradient_bound(CAP) == pytest.approx(1.0926e-3, abs=1e-7)
    assert G.global_gradient_bound(0.0) == 0.0
    # each partial's supremum on the band region sits below the bound
    for k in (G.ai(1), G.ai(4), G.bi(1), G.bi(4)):
        assert G.partial_sup_on_bands(k, CAP) < 4 / 3 * CAP**4


def test_gradient_bound_fails_on_the_whole_cube():
    # without a_i + b_i <= x_cap the partials reach far above (4/3) x_cap^4
    corner = np.full(G.DIM, CAP)
    assert G.gradient(corner).max() > 4 / 3 * CAP**4


def test_feasible_examples():
    p = point(a4=1 / 6, b1=1 / 6, b2=1 / 6, b3=1 / 6, b5=1 / 6, b6=1 / 6)
    assert G.feasible(G.Box.point(p)) == "no"
    assert G.feasible(G.Box(np.zeros(G.DIM), np.full(G.DIM, 0.05))) == "no"  # sum below 1
    assert G.feasible(G.Box.full()) == "partial"
    assert G.feasible(G.Box.point(np.full(G.DIM, 1 / 12))) == "yes"


def test_rows_follow_the_pattern():
    rows, rhs = G.funky_rows()
    # blob 1: pendant adjacent to blob 4 only
    expect = np.zeros(G.DIM)
    expect[[G.ai(2), G.ai(3), G.bi(4), G.ai(5), G.ai(6)]] = 1
    assert np.array_equal(rows[0], expect)
    assert list(rhs) == [constants.DF_OUTER] * 3 + [constants.DF_INNER] * 3
    printed, _ = G.funky_rows(variant="printed")
    assert printed[1, G.ai(5)] == 1 and printed[1, G.bi(5)] == 1  # a_5 + b_5: always >= x_min


def test_printed_rows_admit_a_point_above_the_threshold():
    p = point(a2=0.05526, a5=0.16684, b1=0.16684, b2=0.11053, b3=0.16684, b4=0.16684, b6=0.16684)
    p /= p.sum()
    rows, rhs = G.funky_rows(variant="printed")
    assert G.point_feasible(p, G.Constraints(rows=rows, rhs=rhs), tol=1e-9)
    assert not G.point_feasible(p, tol=1e-9)
    assert G.objective(p) > constants.NEIGHBOURHOOD_THRESHOLD


def test_certify_succeeds():
    cert = G.certify(constants.NEIGHBOURHOOD_THRESHOLD)
    assert cert.success and cert.status == "success"
    assert cert.max_inflated_value < constants.NEIGHBOURHOOD_THRESHOLD
    again = G.certify(constants.NEIGHBOURHOOD_THRESHOLD)
    assert again.boxes_examined == cert.boxes_examined
    assert again.max_inflated_value == cert.max_inflated_value
    js = cert.to_json()
    assert js["success"] and js["witness"] is None


def test_certify_low_threshold_gives_witness():
    cert = G.certify(1e-6, max_depth=60)
    assert not cert.success and cert.status == "depth"
    assert cert.witness_center_value > 1e-6


def test_certify_budget():
    cert = G.certify(constants.NEIGHBOURHOOD_THRESHOLD, budget=100)
    assert cert.status == "budget" and cert.witness is not None


def test_certify_empty_region():
    cons = G.Constraints(x_min=0.2)  # six blobs of mass >= 0.2 cannot sum to 1
    cert = G.certify(constants.NEIGHBOURHOOD_THRESHOLD, cons=cons)
    assert cert.success and cert.feasible_leaves == 0


def test_bound_modes_agree():
    for bound in ("monotone", "best"):
        assert G.certify(constants.NEIGHBOURHOOD_THRESHOLD, bound=bound).success


def _box_bounds(lo, hi, mode):
    coef, exps, gcoef, gexps, gstart = G._kernel_args()
    return G._box_bound(lo, hi, coef, exps, gcoef, gexps, gstart, mode)


def test_box_bounds_are_sound():
    rng = np.random.default_rng(3)
    for _ in range(20):
        c = rng.uniform(0, CAP, G.DIM)
        w = rng.uniform(0, 0.01, G.DIM)
        lo, hi = np.clip(c - w, 0, CAP), np.clip(c + w, 0, CAP)
        samples = rng.uniform(lo, hi, (10000, G.DIM))
        vals = G.Polynomial(G.objective_terms())(samples)
        for mode in (0, 1, 2):
            bound, _ = _box_bounds(lo, hi, mode)
            assert vals.max() <= bound * (1 + G.SOUNDNESS_MARGIN)


def test_local_gradient_bounds_below_global_in_band_region():
    rng = np.random.default_rng(4)
    bound = G.global_gradient_bound(CAP, verify=False)
    for _ in range(2000):
        m = rng.uniform(0, CAP, 6)
        t = rng.uniform(0, 1, 6)
        hi = np.r_[m * t, m * (1 - t)]
        assert G.gradient(hi).max() <= bound


def test_grid_mode_agrees_on_a_slab():
    from netinduce.acceptance import SLAB_CENTER, SLAB_HALF_WIDTH

    c = np.array(SLAB_CENTER)
    slab = G.Box(np.clip(c - SLAB_HALF_WIDTH, 0, CAP), np.clip(c + SLAB_HALF_WIDTH, 0, CAP))
    assert G.feasible(slab) == "partial"
    bnb = G.certify(constants.NEIGHBOURHOOD_THRESHOLD, region=slab)
    grid = G.certify(constants.NEIGHBOURHOOD_THRESHOLD, region=slab, mode="grid", grid_cells=2)
    assert bnb.success and grid.success
    assert grid.boxes_examined >= 2**12


def test_relaxation_widens_into_the_relaxed_program():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(3000):
        x0 = rng.uniform(0, constants.X0_MAX)
        masses = rng.uniform(constants.X_MIN, constants.X_MAX, 6)
        masses *= (1 - x0) / masses.sum()
        if masses.min() < constants.X_MIN or masses.max() > constants.X_MAX:
            continue
        frac = rng.uniform(0, 1, 6)
        a = masses * frac
        unrelaxed = np.r_[a, masses - a]
        rows, rhs = G.funky_rows()
        if np.any(rows @ unrelaxed < rhs):
            continue
        wide = G.relaxation_point(np.r_[x0, masses], frac)
        assert G.point_feasible(wide, tol=1e-12)
        assert G.objective(wide) >= G.objective(unrelaxed)
        checked += 1
    assert checked > 100


def test_box_validation():
    with pytest.raises(ValueError):
        G.Box(np.ones(G.DIM), np.zeros(G.DIM))
    with pytest.raises(ValueError):
        G.Box(np.zeros(3), np.ones(3))
    with pytest.raises(ValueError):
        G.certify(mode="sideways")


def test_pure_numpy_certifier_matches_kernel():
    import os
    import subprocess
    import sys

    code = ("from netinduce import gridcert as G, backend\n"
            "c = G.certify(budget=3000)\n"
            "print(backend(), c.status, c.boxes_examined, round(c.max_center_value, 15))\n")
    env = dict(os.environ, NETINDUCE_PURE_NUMPY="1")
    slow = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env.pop("NETINDUCE_PURE_NUMPY")
    fast = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert slow.stdout.split()[0] == "numpy" and fast.stdout.split()[0] == "numba"
    assert slow.stdout.split()[1:] == fast.stdout.split()[1:]
