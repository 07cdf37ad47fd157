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

"""Module defining the GridSpec and WaveFunction data classes."""
import dataclasses
import math

import numpy as np

from frac_schrodinger import errors


@dataclasses.dataclass(frozen=True)
class GridSpec:
  """Uniform periodic grid of n points on [0, length)."""
  n: int
  length: float

  def __post_init__(self) -> None:
    if isinstance(self.n, bool) or not isinstance(self.n, int):
      raise ValueError(f'n must be an integer, got {self.n!r}')
    if self.n < 2 or self.n % 2:
      raise ValueError(f'n must be even and at least 2, got {self.n}')
    if not math.isfinite(self.length) or self.length <= 0:
      raise ValueError(f'length must be strictly positive, got {self.length}')

  @property
  def spacing(self) -> float:
    return self.length / self.n

  def points(self) -> np.ndarray:
    return np.arange(self.n) * self.spacing


@dataclasses.dataclass(frozen=True, eq=False)
class WaveFunction:
  """Complex grid function with the discrete L2 norm of its grid."""
  grid: GridSpec
  values: np.ndarray

  def __post_init__(self) -> None:
    values = np.array(self.values, dtype=complex)
    if values.shape != (self.grid.n,):
      raise errors.ContractError(
          f'expected {self.grid.n} values, got shape {values.shape}')
    if not np.all(np.isfinite(values)):
      raise ValueError('wave function values must be finite')
    values.setflags(write=False)
    object.__setattr__(self, 'values', values)

  def norm(self) -> float:
    """Returns sqrt(dx * sum |v_j|**2)."""
    return math.sqrt(self.grid.spacing) * float(np.linalg.norm(self.values))

  def inner(self, other: 'WaveFunction') -> complex:
    """Returns dx * sum conj(v_j) * w_j."""
    if other.grid != self.grid:
      raise errors.ContractError('wave functions live on different grids')
    return complex(self.grid.spacing * np.vdot(self.values, other.values))

  def with_values(self, values: np.ndarray) -> 'WaveFunction':
    return WaveFunction(self.grid, values)
