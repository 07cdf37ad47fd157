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


"""Tests for harness."""

import json
import math
import os
from unittest import mock

from frac_schrodinger import errors
from frac_schrodinger import fractional_order
from frac_schrodinger import grid as grid_lib
from frac_schrodinger import harness
from frac_schrodinger import initial_state
from frac_schrodinger import quadrature
from frac_schrodinger import schwartz_function
from frac_schrodinger import spectral
import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

_QUAD = quadrature.QuadratureSpec()
_HALF = fractional_order.FractionalOrder(0.5)
_GRID = grid_lib.GridSpec(n=16, length=2.0 * math.pi)


def _rng(seed: int = 0) -> np.random.Generator:
  return np.random.default_rng(seed)


class SpectralChecksTest(parameterized.TestCase):

  @parameterized.parameters(0.25, 0.5, 0.75)
  def test_norm_conservation_passes(self, alpha):
    op = spectral.build_free_laplacian(_GRID)

    report = harness.check_norm_conservation(
        op, fractional_order.FractionalOrder(alpha),
        harness.random_state(_GRID, _rng()), [-3.0, 0.0, 1.5, 10.0])

    self.assertEqual('norm_conservation', report.name)
    self.assertTrue(report.passed, report)

  def test_group_law_passes_with_inverse_and_identity_pairs(self):
    op = spectral.build_schrodinger(_GRID, _rng().uniform(size=16))

    report = harness.check_group_law(
        op, _HALF, harness.random_state(_GRID, _rng(1)),
        [(1.0, 2.0), (4.0, -4.0), (3.0, 0.0)], name='group_law[schrodinger]')

    self.assertEqual('group_law[schrodinger]', report.name)
    self.assertTrue(report.passed, report)

  def test_group_law_zero_state_raises_degenerate_input_error(self):
    op = spectral.build_free_laplacian(_GRID)

    with self.assertRaises(errors.DegenerateInputError):
      harness.check_group_law(
          op, _HALF, grid_lib.WaveFunction(_GRID, np.zeros(16)), [(1.0, 1.0)])

  def test_generator_passes_on_low_modes(self):
    op = spectral.build_free_laplacian(_GRID)

    report = harness.check_generator(
        op, _HALF, harness.low_mode_state(op, _rng()), harness.GENERATOR_STEPS)

    self.assertTrue(report.passed, report)

  @parameterized.named_parameters(
      ('two_steps', (1e-2, 5e-3)),
      ('negative_step', (1e-2, -5e-3, 2.5e-3)),
  )
  def test_generator_invalid_steps_raise_spec_error(self, steps):
    op = spectral.build_free_laplacian(_GRID)

    with self.assertRaises(errors.SpecError):
      harness.check_generator(op, _HALF, harness.random_state(_GRID, _rng()),
                              steps)

  def test_equivalence_passes_with_stable_steps(self):
    op = spectral.build_free_laplacian(grid_lib.GridSpec(32, 2.0 * math.pi))
    order = fractional_order.FractionalOrder(0.75)
    steps = max(256, 2 * harness.minimum_stable_steps(op, order, 0.1))
    v = harness.stable_state(op, order, _rng(), 0.5 / (0.2 / steps))

    report = harness.check_equivalence(op, order, v, 0.1, steps)

    self.assertTrue(report.passed, report)
    self.assertEqual(steps, report.metadata['steps'])

  def test_equivalence_unstable_step_raises_stability_error(self):
    op = spectral.build_free_laplacian(_GRID)

    with self.assertRaises(errors.StabilityError):
      harness.check_equivalence(op, _HALF, harness.random_state(_GRID, _rng()),
                                horizon=1.0, steps=8)

  def test_equivalence_too_few_steps_raises_spec_error(self):
    op = spectral.build_free_laplacian(_GRID)

    with self.assertRaises(errors.SpecError):
      harness.check_equivalence(op, _HALF, harness.random_state(_GRID, _rng()),
                                horizon=1.0, steps=4)

  def test_equivalence_at_zero_horizon_is_trivial(self):
    op = spectral.build_free_laplacian(_GRID)

    report = harness.check_equivalence(
        op, _HALF, harness.random_state(_GRID, _rng()), horizon=0.0, steps=8)

    self.assertEqual(0.0, report.residual)

  def test_minimum_stable_steps(self):
    op = spectral.build_free_laplacian(_GRID)

    # max h**(1/alpha) = 64**2 for alpha = 1/2.
    self.assertEqual(math.ceil(4096 / 2.8),
                     harness.minimum_stable_steps(op, _HALF, 1.0))

  def test_positivity_passes(self):
    report = harness.check_positivity(_GRID, _rng(), count=5)

    self.assertTrue(report.passed, report)
    self.assertTrue(report.metadata['rejects_negative_potential'])

  def test_low_mode_state_stays_below_max_symbol(self):
    op = spectral.build_free_laplacian(_GRID)

    v = harness.low_mode_state(op, _rng(), max_symbol=4.0, modes=3)

    eigenvalues, masses = spectral.spectral_measure(op, v)
    self.assertAlmostEqual(0.0, np.sum(masses[eigenvalues > 4.0]), places=15)
    self.assertGreater(v.norm(), 0.0)

  def test_low_mode_state_survives_band_limit(self):
    op = spectral.build_free_laplacian(_GRID)
    v = harness.low_mode_state(op, _rng(2))

    limited = spectral.band_limit(op, v)

    np.testing.assert_allclose(v.values, limited.values, atol=1e-12)

  def test_generator_bound_keeps_margin_on_single_mode(self):
    op = spectral.build_free_laplacian(_GRID)
    v = initial_state.ModeState(1).build(_GRID)

    report = harness.check_generator(op, _HALF, v, harness.GENERATOR_STEPS)

    # |exp(ix) - 1 - ix| / x**2 tends to 1/2, so the sharp ratio is near 1.
    self.assertTrue(report.passed, report)
    self.assertEqual(1.1, report.metadata['margin'])
    self.assertAlmostEqual(1.1 * report.metadata['sharp_constant'],
                           report.metadata['constant'])
    self.assertBetween(report.metadata['bound_ratio'], 0.85, 0.95)

  def test_group_law_records_strict_verdict(self):
    op = spectral.build_free_laplacian(_GRID)
    v = harness.random_state(_GRID, _rng(4))

    report = harness.check_group_law(
        op, fractional_order.FractionalOrder(0.25), v, [(1.0, 2.0)])

    self.assertEqual(1e-12, report.metadata['strict_tolerance'])
    self.assertEqual(report.residual <= 1e-12,
                     report.metadata['passes_strict'])
    self.assertGreater(report.tolerance, 1e-12)

  def test_group_law_with_identity_pair_passes_strict(self):
    op = spectral.build_free_laplacian(_GRID)

    report = harness.check_group_law(
        op, _HALF, harness.random_state(_GRID, _rng(5)), [(3.0, 0.0)])

    self.assertEqual(0.0, report.residual)
    self.assertTrue(report.metadata['passes_strict'])

  def test_positivity_reports_raw_minimum_eigenvalue(self):
    rng = _rng(3)
    expected = min(
        spectral.build_schrodinger(
            _GRID, rng.uniform(0.0, 1.0, size=16)).raw_min_eigenvalue
        for _ in range(5))

    report = harness.check_positivity(_GRID, _rng(3), count=5)

    self.assertEqual(expected, report.metadata['min_eigenvalue'])
    self.assertEqual(max(0.0, -expected), report.residual)

  @mock.patch.object(spectral, 'build_schrodinger', autospec=True)
  def test_positivity_residual_uses_unclamped_spectrum(self, build):
    def fake_build(grid, potential):
      if np.any(potential < 0):
        raise errors.DomainError('negative potential')
      symbol = np.ones(grid.n)
      symbol[0] = -5e-11
      return spectral.SpectralOperator(grid, symbol)
    build.side_effect = fake_build

    report = harness.check_positivity(_GRID, _rng(), count=2)

    self.assertEqual(5e-11, report.residual)
    self.assertEqual(-5e-11, report.metadata['min_eigenvalue'])


class ScalarChecksTest(parameterized.TestCase):

  def test_scalar_solutions_pass(self):
    report = harness.check_scalar_solutions(_QUAD, alphas=(0.5,))

    self.assertEqual('scalar_weak_solution', report.name)
    self.assertTrue(report.passed, report)

  def test_frequency_selectivity_passes(self):
    report = harness.check_frequency_selectivity(_HALF, _QUAD)

    self.assertTrue(report.passed, report)
    self.assertLen(report.metadata['weak_residuals'], 3)

  def test_exponential_convolution_passes(self):
    report = harness.check_exponential_convolution(_QUAD, _rng(), count=2)

    self.assertTrue(report.passed, report)

  def test_love_identity_passes(self):
    self.assertTrue(harness.check_love_identity(_QUAD).passed)

  def test_kernel_semigroup_passes(self):
    report = harness.check_kernel_semigroup(_QUAD, _rng(), _HALF, count=4)

    self.assertTrue(report.passed, report)
    self.assertLen(report.metadata['cases'], 6)

  def test_duality_bound_passes(self):
    report = harness.check_duality_bound(_QUAD, alphas=(0.5,))

    self.assertTrue(report.passed, report)

  def test_caputo_contrast_passes(self):
    report = harness.check_caputo_contrast()

    self.assertTrue(report.passed, report)
    self.assertGreater(report.metadata['caputo_deviation'], 1e-3)

  def test_fourier_symbol_passes_for_gaussian(self):
    report = harness.check_fourier_symbol(
        _HALF, schwartz_function.gaussian(), harness.FOURIER_SIGMAS)

    self.assertTrue(report.passed, report)
    self.assertLess(report.metadata['analytic_transform_error'], 1e-10)
    self.assertIn('backward_transform_defect', report.metadata)

  def test_fourier_symbol_narrow_window_raises_spec_error(self):
    with self.assertRaises(errors.SpecError):
      harness.check_fourier_symbol(
          _HALF, schwartz_function.gaussian(width=3.0), (1.0,), window=12.0)

  def test_fourier_symbol_too_few_samples_raises_spec_error(self):
    with self.assertRaises(errors.SpecError):
      harness.check_fourier_symbol(
          _HALF, schwartz_function.gaussian(), (1.0,), samples=100)


class VerificationSuiteTest(absltest.TestCase):

  def test_invalid_suite_raises_value_error(self):
    with self.assertRaises(ValueError):
      harness.VerificationSuite(_HALF, _GRID, suite='everything')

  def test_spectral_suite_passes_in_declared_order(self):
    suite = harness.VerificationSuite(_HALF, _GRID, seed=7, suite='spectral')

    reports = suite.run()

    self.assertEqual([
        'positivity', 'norm_conservation[free]',
        'norm_conservation[schrodinger]', 'group_law[free]',
        'group_law[schrodinger]', 'generator', 'equivalence'
    ], [report.name for report in reports])
    for index, report in enumerate(reports):
      self.assertTrue(report.passed, report)
      self.assertEqual(7, report.metadata['seed'])
      self.assertEqual(index, report.metadata['check_index'])

  def test_same_seed_gives_identical_reports(self):
    first = harness.VerificationSuite(_HALF, _GRID, seed=3, suite='spectral')
    second = harness.VerificationSuite(_HALF, _GRID, seed=3, suite='spectral')
    first.run()
    second.run()

    self.assertEqual(first.to_json(), second.to_json())

  def test_full_suite_passes(self):
    suite = harness.VerificationSuite(
        _HALF, grid_lib.GridSpec(64, 16.0 * math.pi), seed=0)

    reports = suite.run()

    self.assertLen(reports, 15)
    failed = [report.name for report in reports if not report.passed]
    self.assertEmpty(failed)

  def test_save_reports_writes_json_array(self):
    suite = harness.VerificationSuite(_HALF, _GRID, suite='spectral')
    suite.run()
    path = os.path.join(self.create_tempdir().full_path, 'reports.json')

    suite.save_reports(path)

    with open(path, encoding='utf-8') as report_file:
      loaded = json.load(report_file)
    self.assertLen(loaded, 7)
    self.assertEqual('positivity', loaded[0]['name'])
    self.assertTrue(all(entry['passed'] for entry in loaded))


if __name__ == '__main__':
  absltest.main()
