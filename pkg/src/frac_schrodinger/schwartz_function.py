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

"""Module defining the GaussianTerm and TestFunction data classes."""
import dataclasses
import math
from typing import Tuple

import numpy as np
from scipy import special

from frac_schrodinger import errors
from frac_schrodinger import quadrature

MAX_DEGREE = 8
# exp(-81) is far below double precision relative to the peak.
_SUPPORT_WIDTHS = 9.0


@dataclasses.dataclass(frozen=True)
class GaussianTerm:
  """One term coefficient * t**degree * exp(-((t - center) / width)**2)."""
  coefficient: complex
  degree: int
  center: float
  width: float

  def __post_init__(self) -> None:
    if isinstance(self.degree, bool) or not isinstance(self.degree, int):
      raise ValueError(f'degree must be an integer, got {self.degree!r}')
    if not 0 <= self.degree <= MAX_DEGREE:
      raise ValueError(
          f'degree must lie in [0, {MAX_DEGREE}], got {self.degree}')
    if not math.isfinite(self.center):
      raise ValueError(f'center must be finite, got {self.center}')
    if not math.isfinite(self.width) or self.width <= 0:
      raise ValueError(f'width must be strictly positive, got {self.width}')
    if not np.isfinite(complex(self.coefficient)):
      raise ValueError(f'coefficient must be finite, got {self.coefficient}')

  def _envelope(self, t: np.ndarray) -> np.ndarray:
    return np.exp(-((t - self.center) / self.width)**2)

  def values(self, t: np.ndarray) -> np.ndarray:
    return self.coefficient * t**self.degree * self._envelope(t)

  def derivative(self, t: np.ndarray) -> np.ndarray:
    slope = -2.0 * (t - self.center) / self.width**2 * t**self.degree
    if self.degree:
      slope = slope + self.degree * t**(self.degree - 1)
    return self.coefficient * slope * self._envelope(t)

  def support(self) -> Tuple[float, float]:
    reach = _SUPPORT_WIDTHS * self.width
    return self.center - reach, self.center + reach


@dataclasses.dataclass(frozen=True)
class TestFunction:
  """A finite sum of Gaussian-modulated monomials, a Schwartz-class function.

  The empty sum is the zero function.
  """
  __test__ = False  # Not a test case.

  terms: Tuple[GaussianTerm, ...] = ()

  def __post_init__(self) -> None:
    object.__setattr__(self, 'terms', tuple(self.terms))
    for term in self.terms:
      if not isinstance(term, GaussianTerm):
        raise ValueError(f'terms must be GaussianTerm instances, got {term!r}')

  @property
  def is_zero(self) -> bool:
    return not self.terms

  def values(self, t: np.ndarray) -> np.ndarray:
    """Evaluates the function at the given times."""
    t = np.asarray(t, dtype=float)
    total = np.zeros(t.shape, dtype=complex)
    for term in self.terms:
      total += term.values(t)
    return total

  def derivative(self, t: np.ndarray) -> np.ndarray:
    """Evaluates the analytic first derivative at the given times."""
    t = np.asarray(t, dtype=float)
    total = np.zeros(t.shape, dtype=complex)
    for term in self.terms:
      total += term.derivative(t)
    return total

  def support(self) -> Tuple[float, float]:
    """Returns the interval outside which every term is negligible.

    Raises:
      DegenerateInputError: For the zero function.
    """
    if self.is_zero:
      raise errors.DegenerateInputError('the zero function has no support')
    bounds = [term.support() for term in self.terms]
    return min(lo for lo, _ in bounds), max(hi for _, hi in bounds)

  def __add__(self, other: 'TestFunction') -> 'TestFunction':
    if not isinstance(other, TestFunction):
      return NotImplemented
    return TestFunction(self.terms + other.terms)

  def scaled(self, factor: complex) -> 'TestFunction':
    return TestFunction(tuple(
        dataclasses.replace(term, coefficient=term.coefficient * factor)
        for term in self.terms))

  def conjugate(self) -> 'TestFunction':
    return TestFunction(tuple(
        dataclasses.replace(term, coefficient=np.conj(term.coefficient))
        for term in self.terms))

  def shifted(self, shift: float) -> 'TestFunction':
    """Returns t -> phi(t + shift).

    (t + s)**d is expanded binomially, so the result stays in the family with
    every center moved to center - shift.
    """
    terms = []
    for term in self.terms:
      for power in range(term.degree + 1):
        factor = special.comb(term.degree, power, exact=True) * shift**(
            term.degree - power)
        terms.append(GaussianTerm(
            coefficient=term.coefficient * factor,
            degree=power,
            center=term.center - shift,
            width=term.width))
    return TestFunction(tuple(terms))

  def l1_norm(self, quad: quadrature.QuadratureSpec) -> float:
    """Integral of |phi| over its support."""
    return self._absolute_integral(self.values, quad)

  def derivative_l1_norm(self, quad: quadrature.QuadratureSpec) -> float:
    """Integral of |phi'| over its support."""
    return self._absolute_integral(self.derivative, quad)

  def _absolute_integral(self, function, quad) -> float:
    if self.is_zero:
      return 0.0
    lo, hi = self.support()
    # |.| has kinks at the zeros, so oversample the panels.
    t, w = quadrature.gauss_legendre(
        lo, hi, 4 * quad.panels, quad.nodes_per_panel)
    return float(np.sum(w * np.abs(function(t))))


def gaussian(coefficient: complex = 1.0,
             center: float = 0.0,
             width: float = 1.0,
             degree: int = 0) -> TestFunction:
  """Convenience constructor for a single-term test function."""
  return TestFunction((GaussianTerm(
      coefficient=coefficient, degree=degree, center=center, width=width),))
