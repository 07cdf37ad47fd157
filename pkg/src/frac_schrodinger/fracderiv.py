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

"""Fractional derivatives of test functions and weak-derivative pairings.

The backward derivative of a test function is evaluated through its
regularized form

  D^alpha_- phi(t) = A * int_0^inf y**(-alpha-1) * (phi(t + y) - phi(t)) dy,

with A = 1 / |Gamma(-alpha)| = alpha / Gamma(1 - alpha). The integral is split
at y = 1; the piece on (0, 1] is integrated by parts into a bounded integrand
against phi', and the piece on (1, Y] is only integrated where phi is not
negligible.
"""
import cmath
import functools
import math
from typing import Callable, Tuple

import numpy as np
from scipy import special

from frac_schrodinger import errors
from frac_schrodinger import exponential_signal
from frac_schrodinger import fractional_order
from frac_schrodinger import kernel
from frac_schrodinger import quadrature
from frac_schrodinger import schwartz_function

FractionalOrder = fractional_order.FractionalOrder
ExponentialSignal = exponential_signal.ExponentialSignal
TestFunction = schwartz_function.TestFunction
QuadratureSpec = quadrature.QuadratureSpec

_CHUNK = 256
_MITTAG_LEFFLER_RADIUS = 5.0
_MITTAG_LEFFLER_CUTOFF = 1e-16
_MITTAG_LEFFLER_SMALL_TERMS = 3
_MITTAG_LEFFLER_MAX_TERMS = 100_000


def reflection_constant(alpha: FractionalOrder) -> float:
  """Returns 1 / |Gamma(-alpha)|."""
  return alpha.alpha / special.gamma(alpha.complement)


def _singular_panels(quad: QuadratureSpec) -> int:
  return max(1, quad.panels // 4)


def _chunked(evaluate: Callable[[np.ndarray], np.ndarray],
             t: np.ndarray) -> np.ndarray:
  t = np.atleast_1d(np.asarray(t, dtype=float))
  out = np.empty(t.shape, dtype=complex)
  for start in range(0, t.size, _CHUNK):
    out[start:start + _CHUNK] = evaluate(t[start:start + _CHUNK])
  return out


def backward_deriv_values(alpha: FractionalOrder, phi: TestFunction,
                          t: np.ndarray, quad: QuadratureSpec) -> np.ndarray:
  """Vectorized backward_deriv over an array of times."""
  t = np.atleast_1d(np.asarray(t, dtype=float))
  if phi.is_zero:
    return np.zeros(t.shape, dtype=complex)
  a = alpha.alpha
  y, w = quadrature.singular_nodes(
      alpha.complement, 1.0, quad.nodes_per_panel,
      panels=_singular_panels(quad))

  def evaluate(times: np.ndarray) -> np.ndarray:
    # The phi(t) terms of both pieces cancel: +phi(t)/alpha from the
    # integration by parts on (0, 1] and -phi(t)/alpha from the constant part
    # of the tail, of which -phi(t) * Y**-alpha / alpha lies beyond Y.
    near = (phi.derivative(times[:, None] + y[None, :]) @ w
            - phi.values(times + 1.0)) / a
    far = np.zeros(times.shape, dtype=complex)
    for term in phi.terms:
      lo, hi = term.support()
      x, v = quadrature.mapped_nodes(
          np.maximum(1.0, lo - times),
          np.minimum(quad.truncation, hi - times),
          quad.panels, quad.nodes_per_panel)
      far += np.sum(v * x**(-a - 1.0) * term.values(x + times[:, None]),
                    axis=1)
    return near + far

  return reflection_constant(alpha) * _chunked(evaluate, t)


@functools.lru_cache(maxsize=64)
def _backward_window(
    alpha: FractionalOrder, phi: TestFunction,
    quad: QuadratureSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
  """Nodes, weights and backward derivative on the window [lo - 1, hi]."""
  lo, hi = phi.support()
  t, w = quadrature.gauss_legendre(
      lo - 1.0, hi, quad.panels, quad.nodes_per_panel)
  values = backward_deriv_values(alpha, phi, t, quad)
  for array in (t, w, values):
    array.setflags(write=False)
  return t, w, values


def backward_deriv(alpha: FractionalOrder, phi: TestFunction, t: float,
                   quad: QuadratureSpec) -> complex:
  """Returns the backward fractional derivative of phi at t.

  Args:
    alpha: Order of the derivative.
    phi: Test function.
    t: Evaluation time.
    quad: Quadrature specification.

  Returns:
    The regularized integral value, equal to
    int_0^inf g_{1-alpha}(y) * phi'(t + y) dy.
  """
  return complex(backward_deriv_values(alpha, phi, np.array([t]), quad)[0])


def backward_deriv_defining(alpha: FractionalOrder,
                            phi: TestFunction,
                            t: float,
                            quad: QuadratureSpec,
                            refinement: int = 10) -> complex:
  """Backward derivative from its definition, at a finer node density.

  Integrates g_{1-alpha}(y) * phi'(t + y) directly, without integration by
  parts and without clipping at Y.
  """
  if phi.is_zero:
    return 0j
  fine = quad.refined(refinement)
  y, w = quadrature.singular_nodes(
      alpha.complement, 1.0, fine.nodes_per_panel,
      panels=_singular_panels(fine))
  total = np.sum(w * phi.derivative(t + y))
  for term in phi.terms:
    lo, hi = term.support()
    lower = max(1.0, lo - t)
    if hi - t > lower:
      x, v = quadrature.gauss_legendre(
          lower, hi - t, fine.panels, fine.nodes_per_panel)
      total += np.sum(v * x**(-alpha.alpha) * term.derivative(t + x))
  return complex(total / special.gamma(alpha.complement))


def forward_deriv_values(alpha: FractionalOrder, phi: TestFunction,
                         t: np.ndarray, quad: QuadratureSpec) -> np.ndarray:
  """Forward derivative int_0^inf g_{1-alpha}(y) * phi'(t - y) dy."""
  t = np.atleast_1d(np.asarray(t, dtype=float))
  if phi.is_zero:
    return np.zeros(t.shape, dtype=complex)
  y, w = quadrature.singular_nodes(
      alpha.complement, 1.0, quad.nodes_per_panel,
      panels=_singular_panels(quad))

  def evaluate(times: np.ndarray) -> np.ndarray:
    total = phi.derivative(times[:, None] - y[None, :]) @ w
    for term in phi.terms:
      lo, hi = term.support()
      x, v = quadrature.mapped_nodes(
          np.maximum(1.0, times - hi), times - lo,
          quad.panels, quad.nodes_per_panel)
      total += np.sum(
          v * x**(-alpha.alpha) * term.derivative(times[:, None] - x),
          axis=1)
    return total

  return _chunked(evaluate, t) / special.gamma(alpha.complement)


def signal_pairing(u: ExponentialSignal, phi: TestFunction,
                   quad: QuadratureSpec) -> complex:
  """Returns the distribution pairing int u(t) * phi(t) dt."""
  if u.is_zero or phi.is_zero:
    return 0j
  lo, hi = phi.support()
  t, w = quadrature.gauss_legendre(lo, hi, quad.panels, quad.nodes_per_panel)
  return complex(np.sum(w * u.values(t) * phi.values(t)))


def weak_pairing(alpha: FractionalOrder, u: ExponentialSignal,
                 phi: TestFunction, quad: QuadratureSpec) -> complex:
  """Returns <D^alpha u, phi> = -int u(t) * D^alpha_- phi(t) dt.

  The outer integral runs over [lo - 1, hi], where (lo, hi) is the support of
  phi. Left of lo - 1 the backward derivative reduces to
  A * int phi(s) * (s - t)**(-alpha-1) ds, and integrating it against u in
  closed form leaves A * k * int phi(s) * exp(i*a*s) * Q(s - lo + 1) ds with
  Q(R) = int_R^inf r**(-alpha-1) * exp(-i*a*r) dr.

  Args:
    alpha: Order of the derivative.
    u: Exponential signal k * exp(i*a*t).
    phi: Test function.
    quad: Quadrature specification.

  Returns:
    The weak pairing, which equals (i*a)**alpha * int u * phi for these u.
  """
  if u.is_zero or phi.is_zero:
    return 0j
  lo, hi = phi.support()
  left = lo - 1.0
  t, w, derivative = _backward_window(alpha, phi, quad)
  core = np.sum(w * u.values(t) * derivative)
  s, v = quadrature.gauss_legendre(lo, hi, quad.panels, quad.nodes_per_panel)
  tails = kernel.power_exponential_tails(
      -alpha.alpha - 1.0, u.frequency, s - left, quad)
  tail = reflection_constant(alpha) * np.sum(
      v * phi.values(s) * u.values(s) * tails)
  return complex(-(core + tail))


def forward_pairing(alpha: FractionalOrder, u: ExponentialSignal,
                    phi: TestFunction, quad: QuadratureSpec) -> complex:
  """Returns -int (g_{1-alpha} * u)(t) * phi'(t) dt.

  The convolution of the exponential signal is the analytic one, so this is
  the forward-side evaluation of the same weak derivative.
  """
  if u.is_zero or phi.is_zero or u.frequency == 0:
    return 0j
  lo, hi = phi.support()
  t, w = quadrature.gauss_legendre(lo, hi, quad.panels, quad.nodes_per_panel)
  convolved = u.amplitude * kernel.principal_power(
      u.frequency, -alpha.complement) * np.exp(1j * u.frequency * t)
  return complex(-np.sum(w * convolved * phi.derivative(t)))


def complex_power(alpha: FractionalOrder, a: float) -> complex:
  """Returns (i*a)**alpha on the principal branch; 0 for a = 0."""
  return kernel.principal_power(a, alpha.alpha)


def mittag_leffler(alpha: float, z: complex) -> complex:
  """Returns E_alpha(z) = sum_n z**n / Gamma(alpha*n + 1).

  The series is summed until 3 consecutive terms fall below 1e-16 in
  magnitude; real and imaginary parts are accumulated with math.fsum.

  Args:
    alpha: Order in (0, 1].
    z: Argument with |z| <= 5.

  Raises:
    DomainError: If alpha or z is out of range.
    NumericalError: If the series does not settle.
  """
  if not 0.0 < alpha <= 1.0:
    raise errors.DomainError(f'alpha must lie in (0, 1], got {alpha}')
  z = complex(z)
  # Slack for |exp(i*theta)| rounding above 1.
  if abs(z) > _MITTAG_LEFFLER_RADIUS * (1.0 + 1e-12):
    raise errors.DomainError(
        f'|z| = {abs(z)} exceeds the series range {_MITTAG_LEFFLER_RADIUS}')
  if z == 0:
    return 1 + 0j
  log_z = cmath.log(z)
  real, imag = [1.0], [0.0]
  small = 0
  for n in range(1, _MITTAG_LEFFLER_MAX_TERMS):
    try:
      term = cmath.exp(n * log_z - special.gammaln(alpha * n + 1.0))
    except OverflowError as error:
      raise errors.NumericalError(
          f'Mittag-Leffler term {n} overflows for alpha={alpha}, z={z}'
      ) from error
    real.append(term.real)
    imag.append(term.imag)
    if abs(term) < _MITTAG_LEFFLER_CUTOFF:
      small += 1
      if small == _MITTAG_LEFFLER_SMALL_TERMS:
        return complex(math.fsum(real), math.fsum(imag))
    else:
      small = 0
  raise errors.NumericalError(
      f'Mittag-Leffler series did not settle for alpha={alpha}, z={z}')


def backward_deriv_l1_norm(alpha: FractionalOrder, phi: TestFunction,
                           quad: QuadratureSpec) -> float:
  """Numerical value of int |D^alpha_- phi(t)| dt.

  The window [lo - 1, hi] is integrated directly. Left of it the derivative is
  A * int phi(s) * (s - t)**(-alpha-1) ds, integrated on geometric panels up
  to a distance Y, and the remainder beyond Y is closed with the
  x**(-alpha-1) decay of the far field.
  """
  if phi.is_zero:
    return 0.0
  a = alpha.alpha
  lo, hi = phi.support()
  left = lo - 1.0
  t, w = quadrature.gauss_legendre(
      left, hi, 2 * quad.panels, quad.nodes_per_panel)
  core = np.sum(w * np.abs(backward_deriv_values(alpha, phi, t, quad)))

  s, v = quadrature.gauss_legendre(lo, hi, quad.panels, quad.nodes_per_panel)
  weighted = v * phi.values(s)
  edges = np.concatenate(
      [[0.0], np.geomspace(1.0, quad.truncation, quad.panels + 1)])
  x, wx = quadrature.composite_nodes(edges, quad.nodes_per_panel)
  x = np.append(x, quad.truncation)
  distances = s[None, :] - left + x[:, None]
  far_field = reflection_constant(alpha) * np.abs(
      (distances**(-a - 1.0)) @ weighted)
  tail = np.sum(wx * far_field[:-1]) + far_field[-1] * quad.truncation / a
  return float(core + tail)


def duality_bound(alpha: FractionalOrder, phi: TestFunction,
                  quad: QuadratureSpec) -> float:
  """Returns A * (|phi'|_1 / (1 - alpha) + 2 * |phi|_1 / alpha)."""
  return reflection_constant(alpha) * (
      phi.derivative_l1_norm(quad) / alpha.complement
      + 2.0 * phi.l1_norm(quad) / alpha.alpha)
