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

"""Module defining the CheckReport data class."""
import dataclasses
import math
from typing import Any, Dict, Mapping

import numpy as np


def _to_builtin(value: Any) -> Any:
  """Converts numpy and complex values into JSON-friendly builtins."""
  if isinstance(value, Mapping):
    return {str(key): _to_builtin(item) for key, item in value.items()}
  if isinstance(value, (list, tuple, np.ndarray)):
    return [_to_builtin(item) for item in value]
  if isinstance(value, np.generic):
    value = value.item()
  if isinstance(value, complex):
    return [_to_builtin(value.real), _to_builtin(value.imag)]
  if isinstance(value, float) and not math.isfinite(value):
    return repr(value)
  return value


@dataclasses.dataclass(frozen=True)
class CheckReport:
  """Outcome of one verification check."""
  name: str
  residual: float
  tolerance: float
  metadata: Dict[str, Any] = dataclasses.field(default_factory=dict)

  def __post_init__(self) -> None:
    if not self.name:
      raise ValueError('name cannot be empty')
    if not self.residual >= 0:
      raise ValueError(f'residual must be nonnegative, got {self.residual}')
    if not self.tolerance > 0:
      raise ValueError(f'tolerance must be positive, got {self.tolerance}')
    object.__setattr__(self, 'residual', float(self.residual))
    object.__setattr__(self, 'tolerance', float(self.tolerance))

  @property
  def passed(self) -> bool:
    return self.residual <= self.tolerance

  def to_json_dict(self) -> Dict[str, Any]:
    return {
        'name': self.name,
        'residual': _to_builtin(self.residual),
        'tolerance': self.tolerance,
        'passed': self.passed,
        'metadata': _to_builtin(self.metadata),
    }
