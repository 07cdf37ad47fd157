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

"""Initial wave functions selectable from the command line."""
import abc
import dataclasses
import math

import numpy as np

from frac_schrodinger import grid as grid_lib


@dataclasses.dataclass(frozen=True)
class BaseInitialState(abc.ABC):
  """Base class for the initial state v of the evolution problem."""

  @abc.abstractmethod
  def build(self, grid: grid_lib.GridSpec) -> grid_lib.WaveFunction:
    """Samples the state on the grid."""


@dataclasses.dataclass(frozen=True)
class GaussianState(BaseInitialState):
  """exp(-(d(x, center) / width)**2) with d the periodic distance."""
  center: float
  width: float

  def __post_init__(self) -> None:
    if not math.isfinite(self.center):
      raise ValueError(f'center must be finite, got {self.center}')
    if not math.isfinite(self.width) or self.width <= 0:
      raise ValueError(f'width must be strictly positive, got {self.width}')

  def build(self, grid: grid_lib.GridSpec) -> grid_lib.WaveFunction:
    offset = grid.points() - self.center
    distance = offset - grid.length * np.round(offset / grid.length)
    return grid_lib.WaveFunction(grid, np.exp(-(distance / self.width)**2))


@dataclasses.dataclass(frozen=True)
class ModeState(BaseInitialState):
  """The Fourier mode exp(2*pi*i*mode*x / length)."""
  mode: int

  def __post_init__(self) -> None:
    if isinstance(self.mode, bool) or not isinstance(self.mode, int):
      raise ValueError(f'mode must be an integer, got {self.mode!r}')

  def build(self, grid: grid_lib.GridSpec) -> grid_lib.WaveFunction:
    if abs(self.mode) > grid.n // 2:
      raise ValueError(
          f'mode {self.mode} is not resolved on a grid of {grid.n} points')
    phase = 2.0 * math.pi * self.mode * grid.points() / grid.length
    return grid_lib.WaveFunction(grid, np.exp(1j * phase))


def parse_initial_state(text: str) -> BaseInitialState:
  """Parses 'gaussian:center,width' or 'mode:k'.

  Raises:
    ValueError: If the text does not describe a known state.
  """
  kind, _, arguments = text.partition(':')
  kind = kind.strip().lower()
  try:
    if kind == 'gaussian':
      center, width = (float(value) for value in arguments.split(','))
      return GaussianState(center=center, width=width)
    if kind == 'mode':
      return ModeState(mode=int(arguments))
  except ValueError as error:
    raise ValueError(f'Failed to parse initial state {text!r}') from error
  raise ValueError(
      f'Unknown initial state {text!r}; expected gaussian:c,w or mode:k')
