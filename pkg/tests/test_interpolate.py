import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskinterp import (
    BoundaryData,
    CertificationError,
    DomainError,
    EtaSchedule,
    NoContractionError,
    StagePin,
    cluster_by_oscillation,
    eval_interpolant,
    eval_stage,
    iterative_interpolant,
    make_schedule,
    pin_stages,
    residual_bound_after,
    single_stage,
)
from conftest import random_problem

TWO_PI = 2.0 * math.pi
GRID = 1 << 14
MARGIN = 1e-9


# ---------------------------------------------------------------- schedule


def test_schedule_example():
    s = make_schedule(1.0, 3)
    assert s.terms == (0.25, 0.125, 0.0625)
    assert sum(s.terms) == pytest.approx(0.4375)
    assert sum(s.terms) < 1.0


@given(st.floats(1e-12, 1e6), st.integers(1, 60))
def test_schedule_sums_below_eta(eta, n_max):
    s = make_schedule(eta, n_max)
    assert len(s.terms) == n_max
    assert all(t > 0 for t in s.terms)
    assert math.fsum(s.terms) < eta


def test_schedule_rejects_bad_inputs():
    with pytest.raises(ValueError):
        make_schedule(0.0, 3)
    with pytest.raises(ValueError):
        make_schedule(-1.0, 3)
    with pytest.raises(ValueError):
        make_schedule(1.0, 0)
    with pytest.raises(ValueError):
        EtaSchedule(1.0, (0.5, 0.5))  # sum not strictly below eta


def test_truncated_tail_bound():
    # eta_n + sum_{k>=n} eta_k at n = n_max collapses to eta/2^n_max
    s = make_schedule(0.01, 20)
    assert residual_bound_after(s, 20) == pytest.approx(0.01 / 2**20, rel=1e-12)
    assert residual_bound_after(s, 0) == 0.0
    assert residual_bound_after(s, 3) == pytest.approx(
        s.terms[2] + math.fsum(s.terms[2:]), rel=1e-12
    )


# ---------------------------------------------------------------- single stage


def test_stage_zero_data():
    data = BoundaryData.from_pairs([0.0, 2.0], [0.0, 0.0])
    st_ = single_stage(data, 0.1, GRID, MARGIN)
    assert all(c == 0 for c in st_.coefficients)
    assert st_.certified_sup == 0.0
    assert st_.certified_residual == 0.0
    assert eval_stage(st_, 0.5 + 0j) == 0.0


def test_stage_single_point_closed_form():
    # E={1}, f=1, eps=0.01: arc half-width pi/2, power 14, h=(1/1.01)((1+z)/2)^14
    data = BoundaryData.from_pairs([0.0], [1.0])
    st_ = single_stage(data, 0.01, GRID, 1e-6)
    assert st_.power == 14
    assert st_.normalization == pytest.approx(1 / 1.01, rel=1e-15)
    assert eval_stage(st_, 1 + 0j) == pytest.approx(1 / 1.01, rel=1e-14)
    for z in (0.0 + 0j, 0.3 - 0.6j, -1j):
        expected = (1 / 1.01) * ((1 + z) / 2) ** 14
        assert eval_stage(st_, z) == pytest.approx(expected, abs=1e-15)


def test_stage_bounds_on_seeded_problems(rng):
    # pre-normalization: sup <= (1+eps)*supnorm, residual < eps*(1+supnorm)
    # post-normalization: sup <= supnorm, residual < eps*(1+2*supnorm)
    for _ in range(8):
        data = random_problem(rng, 8)
        eps = float(rng.uniform(0.03, 0.4))
        st_ = single_stage(data, eps, GRID, MARGIN)
        sup = data.sup_norm
        pre_sup = st_.certified_sup / st_.normalization
        assert pre_sup <= (1 + eps) * sup + 1e-9
        assert st_.certified_sup <= sup

        at_e = eval_stage(st_, data.set.complex_points())
        pre_res = np.max(np.abs(data.value_array() - at_e / st_.normalization))
        assert pre_res < eps * (1 + sup)
        assert st_.certified_residual < eps * (1 + 2 * sup)


def test_stage_rejects_bad_epsilon():
    data = BoundaryData.from_pairs([0.0], [1.0])
    with pytest.raises(ValueError):
        single_stage(data, 0.0, GRID, MARGIN)
    with pytest.raises(ValueError):
        single_stage(data, -0.1, GRID, MARGIN)


def test_stage_propagates_no_contraction():
    # near-coincident points with far-apart values force split clusters with
    # tiny clearance; the inflated off-arc estimate reaches 1
    data = BoundaryData.from_pairs([0.0, 1e-5], [0.0, 1.0])
    with pytest.raises(NoContractionError):
        single_stage(data, 0.1, GRID, 1e-6)


def test_stage_pinned_power_certification_failure():
    # power 1 leaves heavy cross-cluster leakage; the residual contract breaks
    data = BoundaryData.from_pairs([0.0, 2.0], [1.0, 1.0 + 1.0j])
    with pytest.raises(CertificationError):
        single_stage(data, 1e-3, GRID, MARGIN, power=1)


# ---------------------------------------------------------------- pipeline


def test_pipeline_zero_data():
    data = BoundaryData.from_pairs([0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
    g = iterative_interpolant(data, 0.01, 5, GRID, MARGIN)
    assert len(g.stages) == 0
    cert = g.certificate
    assert cert.measured_boundary_sup == 0.0
    assert cert.measured_max_residual_on_E == 0.0
    assert cert.residual_bound_theoretical == 0.0
    zs = np.array([0.0 + 0j, 0.5j, 1.0 + 0j])
    assert np.all(eval_interpolant(g, zs) == 0.0)


def test_pipeline_certificate_bounds(rng):
    for _ in range(4):
        data = random_problem(rng, 6)
        g = iterative_interpolant(data, 0.02, 10, GRID, MARGIN)
        cert = g.certificate
        assert cert.measured_boundary_sup <= data.sup_norm + 0.02 + 1e-9
        assert (
            cert.measured_max_residual_on_E
            <= cert.residual_bound_theoretical + 1e-12
        )
        assert cert.sup_norm_input == data.sup_norm
        assert cert.grid_size == GRID


def test_pipeline_telescoping_and_sup_chain(rng):
    data = random_problem(rng, 6)
    eta, n_max = 0.02, 8
    g = iterative_interpolant(data, eta, n_max, GRID, MARGIN)
    schedule = g.schedule
    residual = data.value_array()
    res_sup = data.sup_norm
    e_pts = data.set.complex_points()
    for n, stage in enumerate(g.stages, start=1):
        # stage sup never exceeds the sup norm of its input residual
        assert stage.certified_sup <= res_sup
        residual = residual - np.asarray(eval_stage(stage, e_pts))
        res_sup = float(np.max(np.abs(residual)))
        # telescoping: |f - sum_{j<=n} H_j| on E below eta_n
        assert res_sup < schedule.terms[n - 1]
        assert res_sup == pytest.approx(stage.certified_residual, abs=1e-14)


def test_pipeline_eval_matches_stage_sum(rng):
    data = random_problem(rng, 5)
    g = iterative_interpolant(data, 0.05, 4, GRID, MARGIN)
    zs = 0.8 * np.exp(2j * np.pi * np.arange(64) / 64)
    total = sum(np.asarray(eval_stage(s, zs)) for s in g.stages)
    assert np.max(np.abs(eval_interpolant(g, zs) - total)) < 1e-14


def test_one_stage_interpolant_equals_stage(rng):
    data = random_problem(rng, 4)
    g = iterative_interpolant(data, 0.05, 1, GRID, MARGIN)
    assert len(g.stages) == 1
    zs = np.exp(2j * np.pi * np.arange(128) / 128)
    diff = eval_interpolant(g, zs) - np.asarray(eval_stage(g.stages[0], zs))
    assert np.max(np.abs(diff)) == 0.0


def test_pipeline_values_near_data(rng):
    data = random_problem(rng, 6)
    g = iterative_interpolant(data, 0.01, 20, GRID, MARGIN)
    vals = eval_interpolant(g, data.set.complex_points())
    err = np.max(np.abs(vals - data.value_array()))
    assert err <= g.certificate.residual_bound_theoretical + 1e-12


def test_pipeline_rejects_bad_parameters(rng):
    data = random_problem(rng, 3)
    with pytest.raises(ValueError):
        iterative_interpolant(data, 0.0, 5, GRID, MARGIN)
    with pytest.raises(ValueError):
        iterative_interpolant(data, 0.01, 0, GRID, MARGIN)


def test_pipeline_stage_budget_enforced(rng):
    # a pinned underpowered stage must trip the per-stage budget check
    data = BoundaryData.from_pairs([0.0, 2.0, 4.0], [1.0, -1.0, 1.0j])
    pins = [StagePin(power=1)]
    with pytest.raises(CertificationError):
        iterative_interpolant(data, 0.01, 3, GRID, MARGIN, pins=pins)


def test_eval_outside_disk_rejected(rng):
    data = random_problem(rng, 3)
    g = iterative_interpolant(data, 0.05, 2, GRID, MARGIN)
    with pytest.raises(DomainError):
        eval_interpolant(g, 1.5 + 0j)
    with pytest.raises(DomainError):
        eval_stage(g.stages[0], np.array([2.0 + 0j]))


# ---------------------------------------------------------------- properties


def test_linearity_with_pinned_stages(rng):
    data = random_problem(rng, 6)
    g = iterative_interpolant(data, 0.02, 6, GRID, MARGIN)
    pins = pin_stages(g)
    c = 0.37 + 0.2j
    scaled = BoundaryData(data.set, tuple(c * v for v in data.values))
    g_scaled = iterative_interpolant(
        scaled, 0.02, len(pins), GRID, MARGIN, pins=pins
    )
    zs = np.concatenate(
        [
            np.exp(2j * np.pi * np.arange(256) / 256),
            0.6 * np.exp(2j * np.pi * np.arange(64) / 64),
        ]
    )
    diff = eval_interpolant(g_scaled, zs) - c * eval_interpolant(g, zs)
    assert np.max(np.abs(diff)) < 1e-10


def test_conjugation_symmetry():
    # conjugate-symmetric data; singleton partition pinned at every stage so
    # the adaptive clustering cannot break the mirror symmetry
    thetas = [0.0, 0.9, TWO_PI - 0.9, 2.2, TWO_PI - 2.2]
    vals = [0.8, 0.5 + 0.4j, 0.5 - 0.4j, -0.3 + 0.9j, -0.3 - 0.9j]
    data = BoundaryData.from_pairs(thetas, vals)
    singletons = cluster_by_oscillation(data, 1e-12)
    assert len(singletons) == len(thetas)
    pins = [StagePin(clustering=singletons)] * 8
    g = iterative_interpolant(data, 0.01, 8, GRID, MARGIN, pins=pins)
    zs = np.concatenate(
        [
            np.exp(2j * np.pi * np.arange(256) / 256),
            0.7 * np.exp(2j * np.pi * np.arange(64) / 64),
        ]
    )
    diff = eval_interpolant(g, np.conj(zs)) - np.conj(eval_interpolant(g, zs))
    assert np.max(np.abs(diff)) < 1e-10


def test_max_modulus_consistency(rng):
    data = random_problem(rng, 5)
    g = iterative_interpolant(data, 0.02, 6, GRID, MARGIN)
    boundary = np.max(
        np.abs(eval_interpolant(g, np.exp(2j * np.pi * np.arange(GRID) / GRID)))
    )
    zr = (
        (1 - 1e-9)
        * np.sqrt(rng.uniform(size=10**4))
        * np.exp(1j * rng.uniform(0, TWO_PI, 10**4))
    )
    interior = np.max(np.abs(eval_interpolant(g, zr)))
    assert interior <= boundary + 1e-9
