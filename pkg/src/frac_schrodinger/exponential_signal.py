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

"""Module defining the ExponentialSignal data class."""
import dataclasses
import math

import numpy as np


@dataclasses.dataclass(frozen=True)
class ExponentialSignal:
  """The bounded signal u(t) = amplitude * exp(i * frequency * t)."""
  amplitude: complex
  frequency: float

  def __post_init__(self) -> None:
    if not np.isfinite(complex(self.amplitude)):
      raise ValueError(f'amplitude must be finite, got {self.amplitude}')
    if not math.isfinite(self.frequency):
      raise ValueError(f'frequency must be finite, got {self.frequency}')

  @property
  def is_zero(self) -> bool:
    return self.amplitude == 0

  def values(self, t: np.ndarray) -> np.ndarray:
    return self.amplitude * np.exp(1j * self.frequency * np.asarray(t))

  def sup_norm(self) -> float:
    return abs(self.amplitude)

  def scaled(self, factor: complex) -> 'ExponentialSignal':
    return dataclasses.replace(self, amplitude=self.amplitude * factor)
