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

"""Finite spectral theorem: diagonalized operators and their functions.

A SpectralOperator is a unitary change of basis U together with a nonnegative
symbol h, so that A = U^-1 diag(h) U. Functions of A act as multipliers on the
coefficients Uv; in particular the solution operator is
S_alpha(t) = U^-1 diag(exp(i*t*h**(1/alpha))) U.
"""
import dataclasses
from typing import Optional, Tuple

from absl import logging
import numpy as np
from scipy import fft
from scipy import linalg

from frac_schrodinger import errors
from frac_schrodinger import fractional_order
from frac_schrodinger import grid as grid_lib

WaveFunction = grid_lib.WaveFunction
FractionalOrder = fractional_order.FractionalOrder

_NEGATIVE_EIGENVALUE_LIMIT = -1e-10


@dataclasses.dataclass(frozen=True, eq=False)
class SpectralOperator:
  """A nonnegative self-adjoint operator in diagonal form.

  Attributes:
    grid: Grid the operator acts on.
    symbol: Eigenvalues h, one per basis vector.
    eigenvectors: Orthonormal eigenvectors as columns, or None for the discrete
      Fourier basis in numpy's frequency order.
    raw_min_eigenvalue: Smallest eigenvalue before rounding noise below zero
      was clamped to 0.
  """
  grid: grid_lib.GridSpec
  symbol: np.ndarray
  eigenvectors: Optional[np.ndarray] = None
  raw_min_eigenvalue: float = dataclasses.field(init=False)

  def __post_init__(self) -> None:
    n = self.grid.n
    symbol = np.array(self.symbol, dtype=float)
    if symbol.shape != (n,):
      raise errors.ContractError(
          f'expected {n} eigenvalues, got shape {symbol.shape}')
    if not np.all(np.isfinite(symbol)):
      raise errors.NumericalError('eigenvalues must be finite')
    if symbol.min() < _NEGATIVE_EIGENVALUE_LIMIT:
      raise errors.DomainError(
          f'operator is not nonnegative: min eigenvalue {symbol.min()}')
    object.__setattr__(self, 'raw_min_eigenvalue', float(symbol.min()))
    symbol = np.maximum(symbol, 0.0)
    symbol.setflags(write=False)
    object.__setattr__(self, 'symbol', symbol)
    if self.eigenvectors is not None:
      vectors = np.array(self.eigenvectors)
      if vectors.shape != (n, n):
        raise errors.ContractError(
            f'expected a {n}x{n} eigenvector matrix, got {vectors.shape}')
      vectors.setflags(write=False)
      object.__setattr__(self, 'eigenvectors', vectors)

  @property
  def max_eigenvalue(self) -> float:
    return float(self.symbol.max())

  def to_spectral(self, values: np.ndarray) -> np.ndarray:
    """Returns the coefficients Uv in the eigenbasis."""
    if self.eigenvectors is None:
      return fft.fft(values, norm='ortho')
    return self.eigenvectors.conj().T @ values

  def from_spectral(self, coefficients: np.ndarray) -> np.ndarray:
    """Returns U^-1 c."""
    if self.eigenvectors is None:
      return fft.ifft(coefficients, norm='ortho')
    return self.eigenvectors @ coefficients

  def check_grid(self, v: WaveFunction) -> None:
    if v.grid != self.grid:
      raise errors.ContractError(
          f'wave function grid {v.grid} does not match operator grid '
          f'{self.grid}')

  def apply_multiplier(self, v: WaveFunction,
                       multiplier: np.ndarray) -> WaveFunction:
    """Returns U^-1 diag(multiplier) U v."""
    self.check_grid(v)
    return v.with_values(
        self.from_spectral(multiplier * self.to_spectral(v.values)))

  def apply(self, v: WaveFunction) -> WaveFunction:
    return self.apply_multiplier(v, self.symbol)

  def symbol_power(self, exponent: float) -> np.ndarray:
    """Returns h**exponent as exp(exponent * ln h), with 0 mapped to 0."""
    positive = self.symbol > 0
    power = np.zeros_like(self.symbol)
    power[positive] = np.exp(exponent * np.log(self.symbol[positive]))
    return power

  def fractional_power(self, alpha: FractionalOrder) -> np.ndarray:
    """Returns the symbol of A**(1/alpha)."""
    return self.symbol_power(alpha.reciprocal)


def build_free_laplacian(grid: grid_lib.GridSpec) -> SpectralOperator:
  """-d^2/dx^2 on the periodic grid with its exact Fourier symbol k**2."""
  wavenumbers = 2.0 * np.pi * fft.fftfreq(grid.n, d=grid.spacing)
  logging.debug('free Laplacian on %s, max symbol %g', grid,
                wavenumbers.max()**2)
  return SpectralOperator(grid=grid, symbol=wavenumbers**2)


def stencil_symbol(grid: grid_lib.GridSpec) -> np.ndarray:
  """Eigenvalues (2 - 2cos(k*dx)) / dx**2 of the 3-point periodic stencil."""
  wavenumbers = 2.0 * np.pi * fft.fftfreq(grid.n, d=grid.spacing)
  return (2.0 - 2.0 * np.cos(wavenumbers * grid.spacing)) / grid.spacing**2


def build_schrodinger(grid: grid_lib.GridSpec,
                      potential: np.ndarray) -> SpectralOperator:
  """-Laplacian + V with the 3-point periodic stencil, diagonalized.

  Args:
    grid: Periodic grid.
    potential: Nonnegative potential values, one per grid point.

  Returns:
    The operator with eigenvalues sorted ascending.

  Raises:
    DomainError: If V has a negative or non-finite entry, or the computed
      spectrum dips below -1e-10.
    NumericalError: If the eigendecomposition fails.
  """
  potential = np.asarray(potential, dtype=float)
  if potential.shape != (grid.n,):
    raise errors.ContractError(
        f'expected {grid.n} potential values, got shape {potential.shape}')
  if not np.all(np.isfinite(potential)):
    raise errors.DomainError('potential values must be finite')
  if np.any(potential < 0):
    index = int(np.argmin(potential))
    raise errors.DomainError(
        f'potential must be nonnegative, got V[{index}] = {potential[index]}')
  shift = np.roll(np.eye(grid.n), 1, axis=1)
  matrix = (2.0 * np.eye(grid.n) - shift - shift.T) / grid.spacing**2
  matrix += np.diag(potential)
  try:
    eigenvalues, eigenvectors = linalg.eigh(matrix)
  except linalg.LinAlgError as error:
    raise errors.NumericalError(
        f'eigendecomposition failed on {grid}') from error
  logging.debug('Schrodinger operator on %s, spectrum [%g, %g]', grid,
                eigenvalues[0], eigenvalues[-1])
  return SpectralOperator(
      grid=grid, symbol=eigenvalues, eigenvectors=eigenvectors)


def apply_operator(op: SpectralOperator, v: WaveFunction) -> WaveFunction:
  """Returns A v = U^-1 diag(h) U v."""
  return op.apply(v)


def propagate(op: SpectralOperator, alpha: FractionalOrder, t: float,
              v: WaveFunction) -> WaveFunction:
  """Returns S_alpha(t) v = U^-1 diag(exp(i*t*h**(1/alpha))) U v.

  Raises:
    ContractError: If v lives on another grid.
  """
  op.check_grid(v)
  if t == 0:
    return v
  return op.apply_multiplier(v, np.exp(1j * t * op.fractional_power(alpha)))


def generator_apply(op: SpectralOperator, alpha: FractionalOrder,
                    v: WaveFunction) -> WaveFunction:
  """Returns i * A**(1/alpha) v, the generator of S_alpha applied to v."""
  return op.apply_multiplier(v, 1j * op.fractional_power(alpha))


def spectral_measure(op: SpectralOperator,
                     v: WaveFunction) -> Tuple[np.ndarray, np.ndarray]:
  """Finite shadow of the spectral measure of A relative to v.

  Returns:
    The eigenvalues and the masses dx * |(Uv)_j|**2, which sum to |v|**2.
  """
  op.check_grid(v)
  coefficients = op.to_spectral(v.values)
  return op.symbol.copy(), v.grid.spacing * np.abs(coefficients)**2


def fractional_domain_norm(op: SpectralOperator,
                           alpha: FractionalOrder,
                           v: WaveFunction,
                           power: float = 2.0) -> float:
  """Returns (sum_j h_j**(power/alpha) * mass_j)**(1/2).

  power = 2 gives |A**(1/alpha) v|, the quantity whose finiteness defines the
  domain of the generator.
  """
  _, mass = spectral_measure(op, v)
  return float(np.sqrt(np.sum(op.symbol_power(power / alpha.alpha) * mass)))


def band_limit(op: SpectralOperator,
               v: WaveFunction,
               keep_fraction: float = 0.9) -> WaveFunction:
  """Zeroes the coefficients of the top (1 - keep_fraction) of modes."""
  if not 0.0 < keep_fraction <= 1.0:
    raise errors.SpecError(
        f'keep_fraction must lie in (0, 1], got {keep_fraction}')
  order = np.argsort(op.symbol, kind='stable')
  keep = int(np.floor(keep_fraction * op.grid.n))
  mask = np.zeros(op.grid.n)
  mask[order[:keep]] = 1.0
  return op.apply_multiplier(v, mask)
