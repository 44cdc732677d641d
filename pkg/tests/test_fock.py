import math

import numpy as np
import pytest

from pixelport.fock import (
    BetaGrid,
    bell_completeness,
    bell_probability_density,
    coherent_state,
    create,
    destroy,
    displacement,
    joint_state,
    momentum_op,
    oracle_average_fidelity,
    photocurrent_check,
    position_op,
    project_bell,
    run_all_checks,
    tail_population,
    two_mode_squeezed,
    verify_eigen_relations,
)


def gaussian_density(r, dist):
    c2 = math.cosh(r) ** 2
    return math.exp(-(dist**2) / c2) / (math.pi * c2)


def test_ladder_commutator_below_edge():
    dim = 25
    a = destroy(dim)
    comm = a @ create(dim) - create(dim) @ a
    assert np.allclose(np.diag(comm)[: dim - 1], 1.0, rtol=0, atol=1e-14)
    # the top level shows the truncation
    assert np.diag(comm)[dim - 1] == pytest.approx(1.0 - dim, rel=1e-15)


def test_quadrature_operators_hermitian():
    for op in (position_op(12), momentum_op(12)):
        assert np.allclose(op, op.conj().T)


def test_coherent_vacuum():
    c = coherent_state(0.0, 10)
    assert c[0] == 1.0
    assert np.all(c[1:] == 0.0)


def test_coherent_mean_photon_number():
    alpha = 1.2 - 0.7j
    c = coherent_state(alpha, 60)
    n_mean = float(np.sum(np.arange(60) * np.abs(c) ** 2))
    assert n_mean == pytest.approx(abs(alpha) ** 2, rel=1e-10)


def test_coherent_overlap_identity():
    dim = 40
    a1, a2 = 0.8 + 0.3j, -0.4 + 0.9j
    ov = abs(np.vdot(coherent_state(a1, dim), coherent_state(a2, dim))) ** 2
    assert ov == pytest.approx(math.exp(-abs(a1 - a2) ** 2), rel=1e-10)


def test_coherent_tail_warning():
    with pytest.warns(UserWarning, match="loses"):
        coherent_state(3.0, 12)


def test_displacement_unitary_and_generates_coherent():
    dim = 40
    alpha = 0.7 - 0.2j
    d = displacement(alpha, dim)
    assert np.allclose(d @ d.conj().T, np.eye(dim), atol=1e-12)
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1.0
    assert np.allclose(d @ vac, coherent_state(alpha, dim), atol=1e-12)


def test_two_mode_squeezed_vacuum_limit():
    m = two_mode_squeezed(0.0, 8)
    want = np.zeros((8, 8))
    want[0, 0] = 1.0
    assert np.array_equal(m, want)


def test_two_mode_squeezed_norm_deficit():
    r, dim = 1.0, 30
    m = two_mode_squeezed(r, dim)
    deficit = 1.0 - float(np.vdot(m, m).real)
    assert deficit == pytest.approx(math.tanh(r) ** (2 * dim), rel=1e-10)


def test_two_mode_squeezed_mean_photons():
    r, dim = 0.8, 50
    m = two_mode_squeezed(r, dim)
    pops = np.abs(np.diag(m)) ** 2
    n_mean = float(np.sum(np.arange(dim) * pops))
    assert n_mean == pytest.approx(math.sinh(r) ** 2, rel=1e-12)


def test_two_mode_squeezed_warns_when_truncated():
    with pytest.warns(UserWarning, match="loses"):
        two_mode_squeezed(2.0, 20)


def test_two_mode_squeezed_rejects_negative():
    with pytest.raises(ValueError):
        two_mode_squeezed(-0.1, 10)


def test_tail_population_vacuumish():
    c = coherent_state(0.5, 30)
    assert tail_population(c) < 1e-15
    assert tail_population(np.zeros(10)) == 0.0


def test_project_bell_no_entanglement_leaves_vacuum():
    dim = 20
    joint = joint_state(0.4 + 0.1j, 0.0, dim)
    for beta in (0.0, 0.3 - 0.5j, 1.0 + 1.0j):
        proj = project_bell(joint, beta, dim)
        assert abs(proj.state[0]) == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.abs(proj.state[1:]) < 1e-12)


def test_project_bell_conditional_state_example():
    dim = 30
    proj = project_bell(joint_state(0.5, 1.0, dim), 0.2, dim)
    zeta = math.tanh(1.0) * (0.5 - 0.2)
    ov = abs(np.vdot(coherent_state(zeta, dim), proj.state)) ** 2
    assert ov >= 0.999


def test_project_bell_density_is_norm_squared():
    dim = 25
    proj = project_bell(joint_state(0.3, 0.7, dim), 0.4 + 0.2j, dim)
    assert proj.density == pytest.approx(proj.norm**2, rel=1e-15)
    assert np.linalg.norm(proj.state) == pytest.approx(1.0, rel=1e-12)


def test_project_bell_rejects_wrong_mode_count():
    with pytest.raises(ValueError):
        project_bell(np.zeros((5, 5)), 0.0)
    with pytest.raises(ValueError):
        project_bell(np.zeros((5, 5, 4)), 0.0)


def test_bell_completeness():
    # density integrates to 1 over the guarded outcome grid
    assert bell_completeness(0.3 + 0.1j, 0.5, 48, BetaGrid(n=41)) == pytest.approx(1.0, abs=1e-3)
    assert bell_completeness(0.0, 0.0, 40, BetaGrid(n=41)) == pytest.approx(1.0, abs=1e-3)


def test_density_at_center():
    for r in (0.0, 0.5, 1.0):
        for alpha in (0.0, 0.5 + 0.5j, -0.8 + 0.2j):
            got = bell_probability_density(alpha, r, alpha, 40)
            assert got == pytest.approx(1.0 / (math.pi * math.cosh(r) ** 2), abs=1e-6)


def test_density_vacuum_point():
    assert bell_probability_density(0.0, 0.0, 0.0, 30) == pytest.approx(1.0 / math.pi, rel=1e-10)


def test_density_ratios_match_gaussian():
    dim = 40
    r = 0.7
    alpha = 0.2 - 0.3j
    rng = np.random.default_rng(23)
    for _ in range(8):
        b1 = alpha + complex(*rng.normal(scale=1.0, size=2))
        b2 = alpha + complex(*rng.normal(scale=1.0, size=2))
        got = bell_probability_density(alpha, r, b1, dim) / bell_probability_density(alpha, r, b2, dim)
        want = gaussian_density(r, abs(b1 - alpha)) / gaussian_density(r, abs(b2 - alpha))
        assert got == pytest.approx(want, rel=1e-8)


def test_eigen_relations_zero_outcome():
    res = verify_eigen_relations(0.0, 30)
    assert np.all(res < 1e-10)


@pytest.mark.parametrize("beta", [1.0 + 0.0j, 1.0 + 2.0j])
def test_eigen_residuals_shrink_with_dim(beta):
    res = np.array([np.max(verify_eigen_relations(beta, dim)) for dim in (10, 20, 40)])
    assert res[0] > res[1] > res[2]


def test_eigen_relations_severely_truncated():
    # deliberately tiny space: the relations visibly fail
    assert np.max(verify_eigen_relations(1.0 + 2.0j, 4)) > 1e-3


def test_photocurrent_vacuum():
    dim = 8
    vac = np.zeros((dim, dim), dtype=complex)
    vac[0, 0] = 1.0
    for phase in (0.0, math.pi / 2):
        lhs, rhs = photocurrent_check(0.5, phase, vac, dim)
        assert abs(lhs) < 1e-12 and abs(rhs) < 1e-12


def test_photocurrent_coherent_q_phase():
    dim = 10
    test = np.einsum("a,c->ac", coherent_state(0.3 - 0.2j, dim), coherent_state(0.25 + 0.35j, dim))
    lhs, rhs = photocurrent_check(0.45, 0.0, test, dim)
    assert abs(lhs - rhs) < 1e-8
    # the q expectation of a coherent state is sqrt(2) Re(alpha)
    want = 0.45 * math.sqrt(2.0) * (0.25 - 0.3)
    assert rhs == pytest.approx(want, abs=1e-9)


def test_photocurrent_coherent_p_phase():
    dim = 10
    test = np.einsum("a,c->ac", coherent_state(0.3 - 0.2j, dim), coherent_state(0.25 + 0.35j, dim))
    lhs, rhs = photocurrent_check(0.45, math.pi / 2, test, dim)
    assert abs(lhs - rhs) < 1e-8
    want = 0.45 * math.sqrt(2.0) * (-0.2 + 0.35)
    assert rhs == pytest.approx(want, abs=1e-9)


def test_photocurrent_random_state_both_phases():
    # dim must hold the LO coherent state to well below the tolerance
    dim = 12
    rng = np.random.default_rng(3)
    state = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    state /= np.linalg.norm(state)
    for phase in (0.0, math.pi / 2):
        lhs, rhs = photocurrent_check(0.7, phase, state, dim)
        assert abs(lhs - rhs) < 1e-10


def test_photocurrent_rejects_other_phases():
    vac = np.zeros((4, 4), dtype=complex)
    vac[0, 0] = 1.0
    with pytest.raises(ValueError):
        photocurrent_check(0.5, 0.3, vac, 4)


def test_photocurrent_rejects_wrong_shape():
    with pytest.raises(ValueError):
        photocurrent_check(0.5, 0.0, np.zeros(4), 4)


def test_oracle_average_fidelity_unsqueezed():
    got = oracle_average_fidelity(0.4 + 0.2j, 0.0, 30, BetaGrid(n=41))
    assert got == pytest.approx(0.5, abs=0.005)


def test_oracle_average_fidelity_r1():
    got = oracle_average_fidelity(0.4 + 0.2j, 1.0, 30, BetaGrid(n=41))
    assert got == pytest.approx((1 + math.tanh(1.0)) / 2, abs=0.005)


@pytest.mark.filterwarnings("ignore:two-mode squeezed")
def test_oracle_average_fidelity_r2_needs_room():
    # mean photon number sinh(2)^2 ~ 13 per arm and outcomes out to
    # |beta|^2 ~ 70: dim = 60 visibly undershoots, dim = 90 is enough
    want = (1 + math.tanh(2.0)) / 2
    low = oracle_average_fidelity(0.3 + 0.1j, 2.0, 60, BetaGrid(n=41))
    assert low < want - 0.01
    got = oracle_average_fidelity(0.3 + 0.1j, 2.0, 90, BetaGrid(n=41))
    assert got == pytest.approx(want, abs=0.01)


def test_beta_grid_validation():
    with pytest.raises(ValueError):
        BetaGrid(n=2)


def test_run_all_checks_default_pass():
    results = run_all_checks()
    assert all(r.passed for r in results)
    named = {r.name for r in results}
    assert "eigen_residual_1" in named and "photocurrent_q" in named
    # residual-type rows are far below their tolerances at the defaults
    for r in results:
        if "residual" in r.name or "photocurrent" in r.name:
            assert r.value < 1e-6


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_run_all_checks_undersized_space_fails():
    results = run_all_checks(dim=4)
    failing = {r.name for r in results if not r.passed}
    assert any(name.startswith("eigen_residual") for name in failing)


def test_run_all_checks_tolerance_override():
    results = run_all_checks(tolerances={"average_fidelity": 1e-12})
    by_name = {r.name: r for r in results}
    assert not by_name["average_fidelity"].passed
    with pytest.raises(ValueError):
        run_all_checks(tolerances={"no_such_check": 1.0})
