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


"""Tests for grid."""

import math

from frac_schrodinger import errors
from frac_schrodinger import grid as grid_lib
import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

_GRID = grid_lib.GridSpec(n=8, length=4.0)


class GridSpecTest(parameterized.TestCase):

  def test_grid_spec_constructor(self):
    self.assertEqual(0.5, _GRID.spacing)
    np.testing.assert_allclose(_GRID.points(), np.arange(8) * 0.5)

  @parameterized.named_parameters(
      ('odd_n', 7, 1.0),
      ('too_small', 0, 1.0),
      ('float_n', 8.0, 1.0),
      ('zero_length', 8, 0.0),
      ('infinite_length', 8, math.inf),
  )
  def test_invalid_grid_raises_value_error(self, n, length):
    with self.assertRaises(ValueError):
      grid_lib.GridSpec(n=n, length=length)


class WaveFunctionTest(absltest.TestCase):

  def test_norm_and_inner(self):
    v = grid_lib.WaveFunction(_GRID, np.full(8, 1.0 + 1.0j))
    w = grid_lib.WaveFunction(_GRID, np.full(8, 2.0))

    self.assertAlmostEqual(math.sqrt(8.0), v.norm(), places=14)
    self.assertAlmostEqual(8.0 - 8.0j, v.inner(w), places=14)

  def test_values_are_read_only(self):
    v = grid_lib.WaveFunction(_GRID, np.zeros(8))

    with self.assertRaises(ValueError):
      v.values[0] = 1.0

  def test_wrong_length_raises_contract_error(self):
    with self.assertRaises(errors.ContractError):
      grid_lib.WaveFunction(_GRID, np.zeros(6))

  def test_non_finite_values_raise_value_error(self):
    values = np.zeros(8)
    values[3] = math.nan
    with self.assertRaises(ValueError):
      grid_lib.WaveFunction(_GRID, values)

  def test_inner_across_grids_raises_contract_error(self):
    v = grid_lib.WaveFunction(_GRID, np.ones(8))
    w = grid_lib.WaveFunction(grid_lib.GridSpec(8, 5.0), np.ones(8))

    with self.assertRaises(errors.ContractError):
      v.inner(w)

  def test_with_values_keeps_grid(self):
    v = grid_lib.WaveFunction(_GRID, np.ones(8)).with_values(np.arange(8))

    self.assertEqual(_GRID, v.grid)
    self.assertEqual(7.0, v.values[7])


if __name__ == '__main__':
  absltest.main()
