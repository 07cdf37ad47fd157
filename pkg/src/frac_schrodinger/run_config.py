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

"""Module defining the RunConfig data class."""
import dataclasses
import enum
import math
from typing import Optional, Tuple

from frac_schrodinger import fractional_order
from frac_schrodinger import grid as grid_lib
from frac_schrodinger import harness
from frac_schrodinger import initial_state
from frac_schrodinger import quadrature

DEFAULT_LENGTH = 16.0 * math.pi
DEFAULT_TIMES = (0.0, 0.5, 1.0, 1.5, 2.0)


class Command(enum.Enum):
  KERNEL = 'kernel'
  SCALAR = 'scalar'
  PROPAGATE = 'propagate'
  VERIFY = 'verify'


def parse_times(text: str) -> Tuple[float, ...]:
  """Parses a comma-separated list of decimal times.

  Raises:
    ValueError: If an entry is not a finite number or the list is empty.
  """
  entries = [entry.strip() for entry in text.split(',')]
  if not any(entries):
    raise ValueError('times cannot be empty')
  times = []
  for entry in entries:
    value = float(entry)
    if not math.isfinite(value):
      raise ValueError(f'time {entry!r} is not finite')
    times.append(value)
  return tuple(times)


@dataclasses.dataclass(frozen=True)
class RunConfig:
  """Validated settings of one command-line run."""
  command: Command
  alpha: float = 0.5
  n: int = 64
  length: float = DEFAULT_LENGTH
  potential_path: Optional[str] = None
  init: initial_state.BaseInitialState = initial_state.GaussianState(
      center=0.0, width=1.0)
  times: Tuple[float, ...] = DEFAULT_TIMES
  beta: float = 0.5
  t: float = 1.0
  seed: int = 0
  output_path: Optional[str] = None
  quad: quadrature.QuadratureSpec = quadrature.QuadratureSpec()
  suite: str = 'full'

  def __post_init__(self) -> None:
    if not isinstance(self.command, Command):
      raise ValueError(f'unknown command {self.command!r}')
    fractional_order.FractionalOrder(self.alpha)
    grid_lib.GridSpec(self.n, self.length)
    object.__setattr__(self, 'times', tuple(self.times))
    if not self.times:
      raise ValueError('times cannot be empty')
    for time in self.times:
      if not math.isfinite(time):
        raise ValueError(f'times must be finite, got {time}')
    if not math.isfinite(self.beta) or self.beta <= 0:
      raise ValueError(f'beta must be strictly positive, got {self.beta}')
    if not math.isfinite(self.t):
      raise ValueError(f't must be finite, got {self.t}')
    if self.suite not in harness.SUITES:
      raise ValueError(
          f'suite must be one of {harness.SUITES}, got {self.suite!r}')
    if not isinstance(self.init, initial_state.BaseInitialState):
      raise ValueError(f'init must be an initial state, got {self.init!r}')
    self.init.build(self.grid)

  @property
  def order(self) -> fractional_order.FractionalOrder:
    return fractional_order.FractionalOrder(self.alpha)

  @property
  def grid(self) -> grid_lib.GridSpec:
    return grid_lib.GridSpec(self.n, self.length)
