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


"""Tests for exponential_signal."""

import cmath
import math

from frac_schrodinger import exponential_signal
import numpy as np
from absl.testing import absltest


class ExponentialSignalTest(absltest.TestCase):

  def test_exponential_signal_values(self):
    u = exponential_signal.ExponentialSignal(amplitude=2.0j, frequency=0.5)

    np.testing.assert_allclose(
        u.values(np.array([0.0, 2.0])), [2.0j, 2.0j * cmath.exp(1j)])
    self.assertEqual(2.0, u.sup_norm())
    self.assertFalse(u.is_zero)

  def test_zero_amplitude_is_zero(self):
    self.assertTrue(exponential_signal.ExponentialSignal(0.0, 3.0).is_zero)

  def test_scaled(self):
    u = exponential_signal.ExponentialSignal(1.0, 1.0).scaled(-3.0)

    self.assertEqual(-3.0, u.amplitude)
    self.assertEqual(1.0, u.frequency)

  def test_non_finite_frequency_raises_value_error(self):
    with self.assertRaises(ValueError):
      exponential_signal.ExponentialSignal(1.0, math.nan)

  def test_non_finite_amplitude_raises_value_error(self):
    with self.assertRaises(ValueError):
      exponential_signal.ExponentialSignal(math.inf, 1.0)


if __name__ == '__main__':
  absltest.main()
