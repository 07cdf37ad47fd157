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

"""The scalar equation D^alpha u = (i*a)**alpha * u on the whole line.

Its bounded solutions are exactly k * exp(i*a*t). This module measures how far
a given exponential signal is from solving the equation in weak form, and
contrasts the conservative dynamics with the Caputo mode equation.
"""
import cmath
import dataclasses
import math
from typing import List, Sequence, Tuple

from frac_schrodinger import errors
from frac_schrodinger import exponential_signal
from frac_schrodinger import fracderiv
from frac_schrodinger import fractional_order
from frac_schrodinger import quadrature
from frac_schrodinger import schwartz_function

_DEFAULT_CENTERS = (-2.0, 0.0, 2.0)
_DEFAULT_WIDTHS = (0.5, 1.0, 2.0)
_CAPUTO_TIME_RANGE = (0.0, 2.0)
_CAPUTO_SERIES_LIMIT = 5.0


def default_test_family() -> Tuple[schwartz_function.TestFunction, ...]:
  """Gaussians exp(-((t - c) / w)**2), c in {-2, 0, 2}, w in {0.5, 1, 2}."""
  return tuple(
      schwartz_function.gaussian(center=center, width=width)
      for center in _DEFAULT_CENTERS
      for width in _DEFAULT_WIDTHS)


@dataclasses.dataclass(frozen=True)
class ScalarProblem:
  """Find bounded u with D^alpha u = (i * frequency)**alpha * u."""
  alpha: fractional_order.FractionalOrder
  frequency: float
  test_family: Tuple[schwartz_function.TestFunction, ...] = dataclasses.field(
      default_factory=default_test_family)

  def __post_init__(self) -> None:
    object.__setattr__(self, 'test_family', tuple(self.test_family))
    if not self.test_family:
      raise ValueError('test_family cannot be empty')
    for phi in self.test_family:
      if not isinstance(phi, schwartz_function.TestFunction):
        raise ValueError(
            f'test_family members must be TestFunction, got {phi!r}')
    if not math.isfinite(self.frequency):
      raise ValueError(f'frequency must be finite, got {self.frequency}')


@dataclasses.dataclass(frozen=True)
class CaputoSample:
  t: float
  modulus_weyl: float
  modulus_caputo: float


def pairing_defects(prob: ScalarProblem,
                    u: exponential_signal.ExponentialSignal,
                    quad: quadrature.QuadratureSpec) -> List[float]:
  """Relative weak-form defect of u against each member of the test family.

  Each defect is divided by |k| + |s<u, phi>|, where k is the amplitude of u,
  so it does not change when u is multiplied by a nonzero constant.
  """
  if u.is_zero:
    return [0.0] * len(prob.test_family)
  symbol = fracderiv.complex_power(prob.alpha, prob.frequency)
  defects = []
  for phi in prob.test_family:
    lhs = fracderiv.weak_pairing(prob.alpha, u, phi, quad)
    rhs = symbol * fracderiv.signal_pairing(u, phi, quad)
    defects.append(abs(lhs - rhs) / (u.sup_norm() + abs(rhs)))
  return defects


def scalar_weak_residual(prob: ScalarProblem,
                         u: exponential_signal.ExponentialSignal,
                         quad: quadrature.QuadratureSpec) -> float:
  """Returns max over phi of |<D^a u, phi> - s<u, phi>| / (|k| + |s<u, phi>|).

  Here s = (i * prob.frequency)**alpha. The residual is near zero exactly when
  u oscillates at prob.frequency.
  """
  return max(pairing_defects(prob, u, quad))


def caputo_compare(alpha: float, lam: float,
                   t_grid: Sequence[float]) -> List[CaputoSample]:
  """Moduli of the conservative and the Caputo mode solutions.

  The conservative mode is exp(i * lam**(1/alpha) * t); the Caputo mode is
  E_alpha(i**alpha * lam * t**alpha), which solves the Caputo equation with
  w(0) = 1.

  Args:
    alpha: Order in (0, 1]. alpha = 1 is the classical equation.
    lam: Nonnegative eigenvalue.
    t_grid: Times in [0, 2].

  Returns:
    One CaputoSample per time, in input order.

  Raises:
    DomainError: If an argument is out of range or lam * t**alpha > 5.
  """
  if not 0.0 < alpha <= 1.0:
    raise errors.DomainError(f'alpha must lie in (0, 1], got {alpha}')
  if not math.isfinite(lam) or lam < 0:
    raise errors.DomainError(f'lambda must be nonnegative, got {lam}')
  rotation = cmath.exp(0.5j * math.pi * alpha)
  samples = []
  for t in t_grid:
    if not _CAPUTO_TIME_RANGE[0] <= t <= _CAPUTO_TIME_RANGE[1]:
      raise errors.DomainError(f'time {t} is outside [0, 2]')
    scale = lam * t**alpha
    if scale > _CAPUTO_SERIES_LIMIT:
      raise errors.DomainError(
          f'lambda * t**alpha = {scale} exceeds the series range '
          f'{_CAPUTO_SERIES_LIMIT}')
    samples.append(CaputoSample(
        t=t,
        modulus_weyl=abs(cmath.exp(1j * lam**(1.0 / alpha) * t)),
        modulus_caputo=abs(fracderiv.mittag_leffler(alpha, rotation * scale))))
  return samples
