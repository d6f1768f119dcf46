import math

import numpy as np
import pytest
import scipy.linalg

from rotlandau.core import (
    OMEGA_L_SIGN,
    QuantumNumbers,
    SystemParams,
    cyclotron_frequency,
    energy_level,
)
from rotlandau.eigensolve import (
    RadialGrid,
    TridiagonalOperator,
    build_operator,
    count_sign_changes,
    default_grid,
    eigenvector,
    gershgorin_interval,
    labeled_energies,
    lowest_eigenvalues,
    richardson,
    solve_radial,
    sturm_count,
    turning_point_rho_max,
)

PARAMS_REST = SystemParams(mass=1.0, quad_moment=1.0, lam=1.0)  # omega = delta = 2
PARAMS_ROT = SystemParams(mass=1.0, quad_moment=1.0, lam=1.0, omega_rot=0.5)


class TestRadialGrid:
    def test_validation(self):
        with pytest.raises(ValueError):
            RadialGrid(0.0, 10.0, 100)
        with pytest.raises(ValueError):
            RadialGrid(1.0, 0.5, 100)
        with pytest.raises(ValueError):
            RadialGrid(1e-4, 10.0, 8)

    def test_geometry(self):
        grid = RadialGrid(1e-4, 10.0 + 1e-4, 100)
        assert grid.spacing == pytest.approx(0.1)
        centers = grid.cell_centers()
        faces = grid.faces()
        assert centers.size == 100
        assert faces.size == 101
        np.testing.assert_allclose(centers, 0.5 * (faces[1:] + faces[:-1]), rtol=1e-14)

    def test_doubling_points_halves_spacing(self):
        coarse = RadialGrid(1e-4, 8.0, 500)
        fine = RadialGrid(1e-4, 8.0, 1000)
        assert coarse.spacing == 2.0 * fine.spacing


class TestBuildOperator:
    def test_flux_form_entries(self):
        grid = RadialGrid(1e-4, 5.0, 32)
        op = build_operator(PARAMS_REST, 2, grid)
        m, delta = 1.0, 2.0
        h = grid.spacing
        rho = grid.cell_centers()
        faces = grid.faces().copy()
        faces[0] = 0.0
        kin = 1.0 / (2.0 * m * h * h)
        potential = 4.0 / (2.0 * m * rho**2) + (m * delta**2 / 8.0) * rho**2
        expected_diag = kin * (faces[1:] + faces[:-1]) / rho + potential
        expected_diag[-1] += kin * faces[-1] / rho[-1]
        np.testing.assert_allclose(op.diagonal, expected_diag, rtol=1e-14)
        expected_off = -kin * faces[1:-1] / np.sqrt(rho[:-1] * rho[1:])
        np.testing.assert_allclose(op.off_diagonal, expected_off, rtol=1e-14)

    def test_matrix_is_even_in_l(self):
        grid = RadialGrid(1e-4, 6.0, 64)
        plus = build_operator(PARAMS_ROT, 3, grid)
        minus = build_operator(PARAMS_ROT, -3, grid)
        np.testing.assert_array_equal(plus.diagonal, minus.diagonal)
        np.testing.assert_array_equal(plus.off_diagonal, minus.off_diagonal)
        assert plus.energy_offset == -minus.energy_offset

    def test_offset_carries_the_channel_linear_terms(self):
        grid = RadialGrid(1e-4, 6.0, 64)
        omega = cyclotron_frequency(PARAMS_ROT)
        for l in (-2, 0, 1, 4):
            op = build_operator(PARAMS_ROT, l, grid)
            assert op.energy_offset == pytest.approx(
                0.5 * omega * l - PARAMS_ROT.omega_rot * l
            )

    def test_operator_validation(self):
        with pytest.raises(ValueError):
            TridiagonalOperator(np.array([1.0, 2.0]), np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            TridiagonalOperator(np.array([1.0, math.inf]), np.array([0.0]))


class TestSturmCount:
    def test_two_by_two(self):
        op = TridiagonalOperator(np.array([2.0, 2.0]), np.array([1.0]))
        assert sturm_count(op, 2.0) == 1  # eigenvalues 1 and 3
        assert sturm_count(op, 0.5) == 0
        assert sturm_count(op, 10.0) == 2

    def test_gershgorin_brackets_spectrum(self):
        rng = np.random.default_rng(7)
        op = TridiagonalOperator(rng.normal(size=40) * 3, rng.normal(size=39))
        lo, hi = gershgorin_interval(op)
        assert sturm_count(op, lo - 1e-9) == 0
        assert sturm_count(op, hi + 1e-9) == 40

    def test_monotone_in_x(self):
        rng = np.random.default_rng(3)
        op = TridiagonalOperator(rng.normal(size=30), rng.uniform(0.1, 1.0, size=29))
        xs = np.linspace(*gershgorin_interval(op), 50)
        counts = [sturm_count(op, float(x)) for x in xs]
        assert counts == sorted(counts)


class TestLowestEigenvalues:
    def test_diagonal_matrix(self):
        op = TridiagonalOperator(np.array([1.0, 2.0, 3.0]), np.zeros(2))
        np.testing.assert_allclose(lowest_eigenvalues(op, 2), [1.0, 2.0], atol=1e-11)

    def test_two_by_two_pair(self):
        op = TridiagonalOperator(np.array([2.0, 2.0]), np.array([1.0]))
        np.testing.assert_allclose(lowest_eigenvalues(op, 2), [1.0, 3.0], atol=1e-11)

    def test_against_lapack_on_random_matrix(self):
        rng = np.random.default_rng(11)
        diag = rng.uniform(-5.0, 5.0, size=60)
        off = rng.uniform(0.05, 2.0, size=59)
        op = TridiagonalOperator(diag, off)
        got = lowest_eigenvalues(op, 9)
        ref = scipy.linalg.eigh_tridiagonal(
            diag, off, select="i", select_range=(0, 8)
        )[0]
        np.testing.assert_allclose(got, ref, atol=1e-10)

    def test_k_bounds(self):
        op = TridiagonalOperator(np.array([1.0, 2.0]), np.array([0.3]))
        with pytest.raises(ValueError):
            lowest_eigenvalues(op, 0)
        with pytest.raises(ValueError):
            lowest_eigenvalues(op, 3)


class TestEigenvector:
    def test_recovers_known_eigenvector(self):
        # eigenpairs: 1 <-> (1,-1)/sqrt(2), 3 <-> (1,1)/sqrt(2)
        op = TridiagonalOperator(np.array([2.0, 2.0]), np.array([1.0]))
        vec1 = eigenvector(op, 1.0)
        np.testing.assert_allclose(np.abs(vec1), [0.5**0.5, 0.5**0.5], rtol=1e-6)
        assert np.sign(vec1[0]) != np.sign(vec1[1])
        vec3 = eigenvector(op, 3.0)
        np.testing.assert_allclose(np.abs(vec3), [0.5**0.5, 0.5**0.5], rtol=1e-6)
        assert np.sign(vec3[0]) == np.sign(vec3[1])

    def test_node_counts_label_radial_states(self):
        grid = default_grid(PARAMS_ROT, 0, 3, n_points=1200)
        labels = [nodes for nodes, _ in labeled_energies(PARAMS_ROT, 0, grid, 4)]
        assert labels == [0, 1, 2, 3]

    def test_count_sign_changes_ignores_noise_floor(self):
        values = np.array([1.0, 1e-12, -1.0, 1.0])
        assert count_sign_changes(values, rel_floor=1e-8) == 2


class TestSolveRadial:
    def test_rest_frame_ladder(self):
        grid = default_grid(PARAMS_REST, 0, 2, n_points=4000)
        assert grid.rho_max >= 8.0
        energies = solve_radial(PARAMS_REST, 0, grid, 3).energies
        np.testing.assert_allclose(energies, [1.0, 3.0, 5.0], atol=1e-4)

    def test_rotating_ground_state(self):
        grid = default_grid(PARAMS_ROT, 0, 0, n_points=4000)
        energies = solve_radial(PARAMS_ROT, 0, grid, 1).energies
        assert energies[0] == pytest.approx(math.sqrt(8.0) / 2.0, abs=1e-4)

    def test_signed_channels_differ_only_by_offset(self):
        grid = default_grid(PARAMS_ROT, 2, 1, n_points=800)
        plus = solve_radial(PARAMS_ROT, 2, grid, 2)
        minus = solve_radial(PARAMS_ROT, -2, grid, 2)
        op = build_operator(PARAMS_ROT, 2, grid)
        np.testing.assert_allclose(
            plus.energies - op.energy_offset,
            minus.energies + op.energy_offset,
            rtol=1e-12,
        )


class TestRichardson:
    def test_fixed_point(self):
        assert richardson(0.7, 0.7) == 0.7

    def test_exact_quadratic_error_model(self):
        assert richardson(1.04, 1.01) == pytest.approx(1.0)

    def test_extrapolation_beats_raw_error(self):
        exact = energy_level(PARAMS_REST, QuantumNumbers(0, 1))
        rho_max = turning_point_rho_max(PARAMS_REST, 1, 0)
        e_h = solve_radial(PARAMS_REST, 1, RadialGrid(1e-4, rho_max, 800), 1).energies[0]
        e_h2 = solve_radial(PARAMS_REST, 1, RadialGrid(1e-4, rho_max, 1600), 1).energies[0]
        extrapolated = richardson(e_h, e_h2)
        assert abs(extrapolated - exact) < abs(e_h2 - exact)


class TestSignConventionArbitration:
    def test_numeric_oracle_selects_the_module_sign(self):
        # The finite-difference spectrum, labeled by node count, agrees with
        # exactly one sign of the omega*l/2 term; it must be the module's.
        omega = cyclotron_frequency(PARAMS_ROT)
        delta_term = {}
        for l in (1, 2, -3):
            grid = default_grid(PARAMS_ROT, l, 2, n_points=2000)
            for nodes, numeric in labeled_energies(PARAMS_ROT, l, grid, 3):
                qn = QuantumNumbers(nodes, l)
                chosen = energy_level(PARAMS_ROT, qn)
                radial = chosen - OMEGA_L_SIGN * 0.5 * omega * l + PARAMS_ROT.omega_rot * l
                flipped = radial - OMEGA_L_SIGN * 0.5 * omega * l - PARAMS_ROT.omega_rot * l
                assert abs(numeric - chosen) < 1e-3
                assert abs(numeric - flipped) > 0.1
                delta_term[(nodes, l)] = abs(numeric - chosen)
        assert max(delta_term.values()) < 1e-3

    def test_convergence_order_is_second(self):
        exact = energy_level(PARAMS_ROT, QuantumNumbers(0, 1))
        rho_max = turning_point_rho_max(PARAMS_ROT, 1, 0)
        e_h = solve_radial(PARAMS_ROT, 1, RadialGrid(1e-4, rho_max, 700), 1).energies[0]
        e_h2 = solve_radial(PARAMS_ROT, 1, RadialGrid(1e-4, rho_max, 1400), 1).energies[0]
        order = math.log2(abs(e_h - exact) / abs(e_h2 - exact))
        assert 1.7 <= order <= 2.3

    def test_numeric_multiset_matches_analytic_over_symmetric_window(self):
        numeric, analytic = [], []
        for l in range(-2, 3):
            grid = default_grid(PARAMS_ROT, l, 1, n_points=2000)
            numeric.extend(solve_radial(PARAMS_ROT, l, grid, 2).energies)
            analytic.extend(
                energy_level(PARAMS_ROT, QuantumNumbers(n, l)) for n in range(2)
            )
        np.testing.assert_allclose(sorted(numeric), sorted(analytic), atol=1e-3)
