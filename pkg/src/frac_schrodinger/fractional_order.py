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

"""Module defining the FractionalOrder data class."""
import dataclasses
import math

from frac_schrodinger import errors


@dataclasses.dataclass(frozen=True)
class FractionalOrder:
  """The order alpha of the time derivative, strictly between 0 and 1."""
  alpha: float

  def __post_init__(self) -> None:
    if not math.isfinite(self.alpha) or not 0.0 < self.alpha < 1.0:
      raise errors.DomainError(
          f'alpha must lie strictly between 0 and 1, got {self.alpha}')

  @property
  def reciprocal(self) -> float:
    """The exponent 1/alpha applied to the spectrum of A."""
    return 1.0 / self.alpha

  @property
  def complement(self) -> float:
    """The kernel order 1 - alpha used by the derivative convolutions."""
    return 1.0 - self.alpha
