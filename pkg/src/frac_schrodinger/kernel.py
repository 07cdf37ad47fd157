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

"""The fractional kernel g_beta and half-line convolutions against it.

g_beta(t) = t**(beta - 1) / Gamma(beta) on (0, infinity). Convolutions of
exponential signals reduce to the oscillatory power integral
Q_p(a, R) = integral over (R, infinity) of y**p * exp(-i*a*y) dy, which is
evaluated by Gauss-Legendre quadrature up to Y and a boundary expansion
beyond it.
"""
import cmath
import math
from typing import Tuple, Union

import numpy as np
from scipy import special

from frac_schrodinger import errors
from frac_schrodinger import fractional_order
from frac_schrodinger import quadrature

ArrayLike = Union[float, np.ndarray]


def gamma_kernel(beta: float, t: ArrayLike) -> ArrayLike:
  """Returns g_beta(t) = t**(beta - 1) / Gamma(beta).

  Args:
    beta: Kernel order, strictly positive.
    t: Strictly positive time or array of times.

  Raises:
    DomainError: If beta or any t is not strictly positive.
  """
  if not math.isfinite(beta) or beta <= 0:
    raise errors.DomainError(f'beta must be strictly positive, got {beta}')
  values = np.asarray(t, dtype=float)
  if not np.all(np.isfinite(values)) or np.any(values <= 0):
    raise errors.DomainError(
        f'g_beta is only defined for t > 0, got {t}')
  result = values**(beta - 1.0) / special.gamma(beta)
  if result.ndim == 0:
    return float(result)
  return result


def principal_power(a: ArrayLike, exponent: float) -> Union[complex,
                                                             np.ndarray]:
  """Returns (i*a)**exponent on the principal branch.

  (i*a)**p = |a|**p * exp(i * p * sign(a) * pi / 2). For a = 0 the value is 0
  when p > 0 and 1 when p = 0.

  Raises:
    DomainError: If a = 0 and exponent < 0.
  """
  a = np.asarray(a, dtype=float)
  if exponent < 0 and np.any(a == 0):
    raise errors.DomainError(
        f'(i*0)**{exponent} is undefined for a negative exponent')
  with np.errstate(divide='ignore'):
    result = np.abs(a)**exponent * np.exp(
        0.5j * math.pi * exponent * np.sign(a))
  if result.ndim == 0:
    return complex(result)
  return result


def _boundary_expansion(p: float, a: float, upper: float,
                        order: int) -> complex:
  """Integration by parts of y**p * exp(-i*a*y) over (upper, infinity)."""
  total = 0j
  derivative = upper**p
  for k in range(order + 1):
    total += derivative / (1j * a)**(k + 1)
    derivative *= (p - k) / upper
  return cmath.exp(-1j * a * upper) * total


def power_exponential_integral(p: float, a: float, lower: float,
                               quad: quadrature.QuadratureSpec) -> complex:
  """Returns the integral of y**p * exp(-i*a*y) over (lower, infinity).

  Args:
    p: Power in (-2, 0]. Values of p <= -1 need lower > 0.
    a: Angular frequency.
    lower: Nonnegative lower limit.
    quad: Quadrature specification.

  Raises:
    DomainError: If p or lower is out of range.
    DivergenceError: If the integral does not converge.
  """
  if not -2.0 < p <= 0.0:
    raise errors.DomainError(f'power must lie in (-2, 0], got {p}')
  if lower < 0:
    raise errors.DomainError(f'lower limit must be nonnegative, got {lower}')
  if lower == 0 and p <= -1.0:
    raise errors.DivergenceError(
        f'y**{p} is not integrable at the origin')
  if a == 0:
    if p >= -1.0:
      raise errors.DivergenceError(
          f'y**{p} is not integrable at infinity without oscillation')
    return complex(lower**(p + 1.0) / (-p - 1.0))

  total = 0j
  start = lower
  if lower == 0:
    y, w = quadrature.singular_nodes(
        p + 1.0, 1.0, quad.nodes_per_panel, frequency=a)
    total += np.sum(w * np.exp(-1j * a * y))
    start = 1.0
  upper = max(quad.truncation, start)
  if upper > start:
    edges = quadrature.oscillatory_edges(start, upper, a, quad.panels)
    y, w = quadrature.composite_nodes(edges, quad.nodes_per_panel)
    total += np.sum(w * y**p * np.exp(-1j * a * y))
  total += _boundary_expansion(p, a, upper, quad.tail_correction_order)
  return complex(total)


def power_exponential_tails(p: float, a: float, lowers: np.ndarray,
                            quad: quadrature.QuadratureSpec) -> np.ndarray:
  """Vectorized power_exponential_integral for strictly positive lowers.

  The farthest lower limit is integrated once; the finite stretches between
  each lower limit and the farthest one use row-wise mapped nodes.
  """
  lowers = np.asarray(lowers, dtype=float)
  if np.any(lowers <= 0):
    raise errors.DomainError('tail lower limits must be strictly positive')
  if a == 0:
    if p >= -1.0:
      raise errors.DivergenceError(
          f'y**{p} is not integrable at infinity without oscillation')
    return (lowers**(p + 1.0) / (-p - 1.0)).astype(complex)
  farthest = float(lowers.max())
  far_value = power_exponential_integral(p, a, farthest, quad)
  span = farthest - float(lowers.min())
  panels = max(quad.panels, math.ceil(span * abs(a) / math.pi))
  y, w = quadrature.mapped_nodes(
      lowers, np.full_like(lowers, farthest), panels, quad.nodes_per_panel)
  return far_value + np.sum(w * y**p * np.exp(-1j * a * y), axis=1)


def exponential_convolution_oracle(beta: float, a: float, t: float) -> complex:
  """Analytic value (i*a)**(-beta) * exp(i*a*t) of g_beta * exp(i*a*.)."""
  if a == 0:
    raise errors.DivergenceError('g_beta is not integrable on (0, infinity)')
  return principal_power(a, -beta) * cmath.exp(1j * a * t)


def convolve_exponential(beta: float, a: float, t: float,
                         quad: quadrature.QuadratureSpec) -> complex:
  """Quadrature value of the integral of g_beta(y) * exp(i*a*(t - y)) dy.

  Args:
    beta: Kernel order in (0, 1].
    a: Nonzero angular frequency.
    t: Evaluation time.
    quad: Quadrature specification.

  Returns:
    An approximation of (i*a)**(-beta) * exp(i*a*t).

  Raises:
    DomainError: If beta is outside (0, 1].
    DivergenceError: If a = 0.
  """
  if not 0.0 < beta <= 1.0:
    raise errors.DomainError(f'beta must lie in (0, 1], got {beta}')
  if a == 0:
    raise errors.DivergenceError('g_beta is not integrable on (0, infinity)')
  integral = power_exponential_integral(beta - 1.0, a, 0.0, quad)
  return cmath.exp(1j * a * t) * integral / special.gamma(beta)


def love_identity_sides(alpha: fractional_order.FractionalOrder, a: float,
                        t: float,
                        quad: quadrature.QuadratureSpec) -> Tuple[complex,
                                                                  complex]:
  """Both sides of g_{1-alpha} * (g_alpha * u)(t) = (...)(0) + int_0^t u.

  u(y) = exp(i*a*y); the inner convolution is analytic and the outer one is
  evaluated by quadrature.

  Returns:
    The pair (left-hand side, right-hand side).
  """
  if a == 0:
    raise errors.DivergenceError('the Love identity needs a nonzero frequency')
  inner = principal_power(a, -alpha.alpha)

  def outer(time: float) -> complex:
    return inner * convolve_exponential(alpha.complement, a, time, quad)

  at_origin = outer(0.0)
  lhs = outer(t) if t != 0 else at_origin
  rhs = at_origin + (cmath.exp(1j * a * t) - 1.0) / (1j * a)
  return lhs, rhs


def love_identity_residual(alpha: fractional_order.FractionalOrder, a: float,
                           t: float, quad: quadrature.QuadratureSpec) -> float:
  """Returns |LHS - RHS| of the Love identity for u(y) = exp(i*a*y)."""
  lhs, rhs = love_identity_sides(alpha, a, t, quad)
  return abs(lhs - rhs)


def kernel_convolution(beta: float, gamma: float, t: float,
                       quad: quadrature.QuadratureSpec) -> float:
  """Returns the finite convolution of g_beta and g_gamma at t > 0.

  The interval (0, t) is split at t/2 so that each endpoint singularity is
  handled by its own substitution.
  """
  if beta <= 0 or gamma <= 0 or beta > 1 or gamma > 1:
    raise errors.DomainError(
        f'kernel orders must lie in (0, 1], got {beta} and {gamma}')
  if t <= 0:
    raise errors.DomainError(f't must be strictly positive, got {t}')
  half = 0.5 * t
  y, w = quadrature.singular_nodes(beta, half, quad.nodes_per_panel)
  left = np.sum(w * (t - y)**(gamma - 1.0))
  z, v = quadrature.singular_nodes(gamma, half, quad.nodes_per_panel)
  right = np.sum(v * (t - z)**(beta - 1.0))
  return float((left + right) / (special.gamma(beta) * special.gamma(gamma)))
