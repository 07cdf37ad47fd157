# Copyright 2024 Google LLC.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Tests for spectral."""

import math

from frac_schrodinger import errors
from frac_schrodinger import fractional_order
from frac_schrodinger import grid as grid_lib
from frac_schrodinger import initial_state
from frac_schrodinger import spectral
import hypothesis
from hypothesis import strategies as st
import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

_GRID = grid_lib.GridSpec(n=16, length=2.0 * math.pi)
_HALF = fractional_order.FractionalOrder(0.5)


def _random_state(grid: grid_lib.GridSpec,
                  seed: int) -> grid_lib.WaveFunction:
  rng = np.random.default_rng(seed)
  return grid_lib.WaveFunction(
      grid, rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n))


def _potential(grid: grid_lib.GridSpec) -> np.ndarray:
  return 1.0 + np.cos(grid.points())


class SpectralOperatorTest(parameterized.TestCase):

  def test_free_laplacian_symbol(self):
    op = spectral.build_free_laplacian(_GRID)

    self.assertEqual(0.0, op.symbol[0])
    self.assertAlmostEqual(1.0, op.symbol[1], places=12)
    self.assertAlmostEqual(64.0, op.max_eigenvalue, places=10)

  def test_free_laplacian_differentiates_modes(self):
    op = spectral.build_free_laplacian(_GRID)
    v = initial_state.ModeState(3).build(_GRID)

    np.testing.assert_allclose(
        spectral.apply_operator(op, v).values, 9.0 * v.values, atol=1e-12)

  def test_negative_symbol_raises_domain_error(self):
    with self.assertRaises(errors.DomainError):
      spectral.SpectralOperator(_GRID, np.full(16, -1.0))

  def test_tiny_negative_symbol_is_clamped(self):
    symbol = np.ones(16)
    symbol[0] = -1e-12

    op = spectral.SpectralOperator(_GRID, symbol)

    self.assertEqual(0.0, op.symbol[0])

  def test_tiny_negative_symbol_keeps_raw_minimum(self):
    symbol = np.ones(16)
    symbol[3] = -1e-12

    op = spectral.SpectralOperator(_GRID, symbol)

    self.assertEqual(-1e-12, op.raw_min_eigenvalue)
    self.assertEqual(0.0, op.symbol.min())

  def test_non_finite_symbol_raises_numerical_error(self):
    with self.assertRaises(errors.NumericalError):
      spectral.SpectralOperator(_GRID, np.full(16, np.inf))

  def test_wrong_symbol_shape_raises_contract_error(self):
    with self.assertRaises(errors.ContractError):
      spectral.SpectralOperator(_GRID, np.ones(8))

  def test_stencil_symbol_matches_schrodinger_without_potential(self):
    op = spectral.build_schrodinger(_GRID, np.zeros(16))

    np.testing.assert_allclose(
        np.sort(spectral.stencil_symbol(_GRID)), op.symbol, atol=1e-10)

  def test_schrodinger_spectrum_is_nonnegative_and_sorted(self):
    op = spectral.build_schrodinger(_GRID, _potential(_GRID))

    self.assertGreaterEqual(op.symbol[0], 0.0)
    self.assertTrue(np.all(np.diff(op.symbol) >= 0))

  def test_schrodinger_two_point_grid(self):
    grid = grid_lib.GridSpec(n=2, length=2.0)

    op = spectral.build_schrodinger(grid, np.zeros(2))

    # The stencil matrix is [[2, -2], [-2, 2]].
    np.testing.assert_allclose([0.0, 4.0], op.symbol, atol=1e-12)

  @parameterized.named_parameters(('free', False), ('schrodinger', True))
  def test_operator_is_self_adjoint(self, with_potential):
    if with_potential:
      op = spectral.build_schrodinger(_GRID, _potential(_GRID))
    else:
      op = spectral.build_free_laplacian(_GRID)
    v = _random_state(_GRID, 3)
    w = _random_state(_GRID, 4)

    left = np.vdot(spectral.apply_operator(op, v).values, w.values)
    right = np.vdot(v.values, spectral.apply_operator(op, w).values)

    self.assertLess(abs(left - right), 1e-10 * max(1.0, abs(left)))

  @parameterized.named_parameters(('free', False), ('schrodinger', True))
  def test_change_of_basis_is_unitary(self, with_potential):
    if with_potential:
      op = spectral.build_schrodinger(_GRID, _potential(_GRID))
    else:
      op = spectral.build_free_laplacian(_GRID)
    v = _random_state(_GRID, 5)

    coefficients = op.to_spectral(v.values)

    self.assertAlmostEqual(np.linalg.norm(v.values),
                           np.linalg.norm(coefficients), places=10)
    np.testing.assert_allclose(v.values, op.from_spectral(coefficients),
                               atol=1e-12)

  def test_schrodinger_negative_potential_raises_domain_error(self):
    potential = np.zeros(16)
    potential[5] = -0.5

    with self.assertRaisesRegex(errors.DomainError, r'V\[5\]'):
      spectral.build_schrodinger(_GRID, potential)

  def test_schrodinger_wrong_potential_length_raises_contract_error(self):
    with self.assertRaises(errors.ContractError):
      spectral.build_schrodinger(_GRID, np.zeros(15))

  def test_schrodinger_non_finite_potential_raises_domain_error(self):
    potential = np.zeros(16)
    potential[0] = np.nan

    with self.assertRaises(errors.DomainError):
      spectral.build_schrodinger(_GRID, potential)

  def test_grid_mismatch_raises_contract_error(self):
    op = spectral.build_free_laplacian(_GRID)
    v = grid_lib.WaveFunction(grid_lib.GridSpec(16, 1.0), np.ones(16))

    with self.assertRaises(errors.ContractError):
      spectral.propagate(op, _HALF, 1.0, v)


class PropagateTest(parameterized.TestCase):

  def test_propagate_at_zero_is_identity(self):
    op = spectral.build_free_laplacian(_GRID)
    v = _random_state(_GRID, 0)

    self.assertIs(v, spectral.propagate(op, _HALF, 0.0, v))

  def test_propagate_mode_rotates_phase(self):
    # A**(1/alpha) with alpha = 1/2 multiplies mode k by k**4.
    op = spectral.build_free_laplacian(_GRID)
    v = initial_state.ModeState(2).build(_GRID)

    u = spectral.propagate(op, _HALF, 0.1, v)

    np.testing.assert_allclose(u.values, np.exp(1.6j) * v.values, atol=1e-12)

  @hypothesis.settings(deadline=None, max_examples=25)
  @hypothesis.given(
      alpha=st.floats(0.1, 0.9),
      t=st.floats(-10.0, 10.0),
      seed=st.integers(0, 2**16))
  def test_propagate_conserves_norm(self, alpha, t, seed):
    op = spectral.build_schrodinger(_GRID, _potential(_GRID))
    v = _random_state(_GRID, seed)

    u = spectral.propagate(op, fractional_order.FractionalOrder(alpha), t, v)

    self.assertLess(abs(u.norm() - v.norm()), 1e-12 * max(1.0, v.norm()))

  @parameterized.parameters((0.3, 0.7), (1.0, -1.0), (-0.4, 2.5))
  def test_propagate_group_law(self, t, s):
    op = spectral.build_free_laplacian(_GRID)
    v = _random_state(_GRID, 3)
    order = fractional_order.FractionalOrder(0.75)

    combined = spectral.propagate(op, order, t + s, v)
    stepped = spectral.propagate(op, order, t,
                                 spectral.propagate(op, order, s, v))

    np.testing.assert_allclose(combined.values, stepped.values, atol=1e-10)

  def test_generator_apply_is_time_derivative(self):
    op = spectral.build_free_laplacian(grid_lib.GridSpec(8, 2.0 * math.pi))
    v = initial_state.GaussianState(1.0, 0.8).build(op.grid)
    order = fractional_order.FractionalOrder(0.9)
    step = 1e-6

    difference = (spectral.propagate(op, order, step, v).values
                  - spectral.propagate(op, order, -step, v).values) / (
                      2.0 * step)

    np.testing.assert_allclose(
        spectral.generator_apply(op, order, v).values, difference,
        rtol=1e-5, atol=1e-5)


class MeasureTest(absltest.TestCase):

  def test_spectral_measure_masses_sum_to_norm_squared(self):
    op = spectral.build_schrodinger(_GRID, _potential(_GRID))
    v = _random_state(_GRID, 1)

    eigenvalues, masses = spectral.spectral_measure(op, v)

    np.testing.assert_array_equal(eigenvalues, op.symbol)
    self.assertAlmostEqual(v.norm()**2, np.sum(masses), places=10)

  def test_fractional_domain_norm_of_mode(self):
    op = spectral.build_free_laplacian(_GRID)
    v = initial_state.ModeState(2).build(_GRID)

    # |A**2 v| = 16 * |v| for mode 2 when alpha = 1/2.
    self.assertAlmostEqual(16.0 * v.norm(),
                           spectral.fractional_domain_norm(op, _HALF, v),
                           places=9)

  def test_band_limit_drops_top_modes(self):
    op = spectral.build_free_laplacian(_GRID)
    v = _random_state(_GRID, 2)

    limited = spectral.band_limit(op, v, keep_fraction=0.5)

    _, masses = spectral.spectral_measure(op, limited)
    order = np.argsort(op.symbol, kind='stable')
    self.assertAlmostEqual(0.0, np.sum(masses[order[8:]]), places=15)
    self.assertLessEqual(limited.norm(), v.norm())

  def test_band_limit_invalid_fraction_raises_spec_error(self):
    op = spectral.build_free_laplacian(_GRID)

    with self.assertRaises(errors.SpecError):
      spectral.band_limit(op, _random_state(_GRID, 0), keep_fraction=0.0)


if __name__ == '__main__':
  absltest.main()
