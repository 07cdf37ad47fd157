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

"""Composite Gauss-Legendre rules for the improper integrals of the package.

Every integral over (0, infinity) is split into a singular piece on (0, 1], a
finite piece on (1, Y] and, where the integrand oscillates, a closed-form
boundary expansion beyond Y. QuadratureSpec carries the knobs; the helpers
below build node/weight arrays that callers contract with numpy.
"""
import dataclasses
import functools
import math
from typing import Tuple

import numpy as np

from frac_schrodinger import errors

NodesAndWeights = Tuple[np.ndarray, np.ndarray]

_DEFAULT_TRUNCATION = 1e4
_DEFAULT_PANELS = 64
_DEFAULT_NODES_PER_PANEL = 16
_DEFAULT_TAIL_CORRECTION_ORDER = 1
_MAX_TAIL_CORRECTION_ORDER = 2
_DYADIC_LEVELS = 12


@dataclasses.dataclass(frozen=True)
class QuadratureSpec:
  """Discretization of the improper integrals.

  Attributes:
    truncation: Finite upper limit Y replacing infinity. Must exceed 1 so that
      both the singular piece (0, 1] and the tail (1, Y] are nonempty.
    panels: Number of geometric panels on (1, Y], also the panel count of
      finite windows.
    nodes_per_panel: Gauss-Legendre nodes on each panel.
    tail_correction_order: Number K of derivative corrections in the
      closed-form boundary expansion of oscillatory tails beyond Y. The
      leading term exp(-i*a*Y) * Y**p / (i*a) is always kept, and order K adds
      the terms with the first K derivatives of y**p. With K = 1 the error of
      the tail is O(Y**(p - 2)).
  """
  truncation: float = _DEFAULT_TRUNCATION
  panels: int = _DEFAULT_PANELS
  nodes_per_panel: int = _DEFAULT_NODES_PER_PANEL
  tail_correction_order: int = _DEFAULT_TAIL_CORRECTION_ORDER

  def __post_init__(self) -> None:
    if not math.isfinite(self.truncation) or self.truncation <= 1.0:
      raise errors.SpecError(
          f'truncation must be a finite number above 1, got {self.truncation}')
    for name in ('panels', 'nodes_per_panel'):
      value = getattr(self, name)
      if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise errors.SpecError(
            f'{name} must be a positive integer, got {value}')
    if self.tail_correction_order not in range(_MAX_TAIL_CORRECTION_ORDER + 1):
      raise errors.SpecError(
          'tail_correction_order must be one of 0, 1, 2, got '
          f'{self.tail_correction_order}')

  def refined(self, factor: int) -> 'QuadratureSpec':
    """Returns a copy with `factor` times as many nodes per panel."""
    return dataclasses.replace(
        self, nodes_per_panel=self.nodes_per_panel * factor)

  def with_truncation(self, truncation: float) -> 'QuadratureSpec':
    return dataclasses.replace(self, truncation=truncation)


@functools.lru_cache(maxsize=None)
def _reference_rule(nodes: int) -> NodesAndWeights:
  points, weights = np.polynomial.legendre.leggauss(nodes)
  points.setflags(write=False)
  weights.setflags(write=False)
  return points, weights


def composite_nodes(edges: np.ndarray, nodes: int) -> NodesAndWeights:
  """Gauss-Legendre nodes and weights on consecutive panels.

  Args:
    edges: Increasing panel boundaries.
    nodes: Nodes per panel.

  Returns:
    A flat array of nodes and the matching weights.
  """
  edges = np.asarray(edges, dtype=float)
  points, weights = _reference_rule(nodes)
  lower, upper = edges[:-1], edges[1:]
  half = 0.5 * (upper - lower)
  middle = 0.5 * (upper + lower)
  x = middle[:, None] + half[:, None] * points[None, :]
  w = half[:, None] * weights[None, :]
  return x.ravel(), w.ravel()


def gauss_legendre(lower: float, upper: float, panels: int,
                   nodes: int) -> NodesAndWeights:
  """Composite rule on `panels` equal panels of [lower, upper]."""
  return composite_nodes(np.linspace(lower, upper, panels + 1), nodes)


def oscillatory_edges(lower: float, upper: float, frequency: float,
                      panels: int) -> np.ndarray:
  """Geometric panels on [lower, upper] refined to half oscillation periods.

  Args:
    lower: Left end, strictly positive.
    upper: Right end.
    frequency: Angular frequency of the oscillating factor.
    panels: Number of geometric panels before refinement.

  Returns:
    Increasing panel edges.
  """
  edges = np.geomspace(lower, upper, panels + 1)
  if frequency:
    pieces = math.ceil((upper - lower) * abs(frequency) / math.pi)
    edges = np.union1d(edges, np.linspace(lower, upper, pieces + 1))
  return edges


def singular_nodes(beta: float, length: float, nodes: int,
                   frequency: float = 0.0,
                   panels: int = 1) -> NodesAndWeights:
  """Nodes for the weighted integral of y**(beta - 1) * f(y) over (0, length].

  The substitution y = length * s**(1/beta) absorbs the endpoint singularity,
  so that the integral equals length**beta / beta times the integral of
  f(length * s**(1/beta)) over s in (0, 1]. Panels in s are dyadically graded
  towards 0 and refined so that no panel spans more than half an oscillation
  of exp(i * frequency * y).

  Args:
    beta: Exponent of the weight, in (0, 1].
    length: Right end of the interval.
    nodes: Nodes per panel.
    frequency: Angular frequency of any oscillating factor of f.
    panels: Minimum number of uniform panels in s.

  Returns:
    Nodes y and weights such that sum(w * f(y)) approximates the integral.
  """
  dyadic = np.concatenate([[0.0], 2.0**-np.arange(_DYADIC_LEVELS, -1, -1)])
  # |dy/ds| <= length / beta bounds the stretch of a uniform s panel.
  pieces = max(panels, math.ceil(abs(frequency) * length / (beta * math.pi)))
  edges = np.union1d(dyadic, np.linspace(0.0, 1.0, pieces + 1))
  s, w = composite_nodes(edges, nodes)
  return length * s**(1.0 / beta), w * length**beta / beta


def mapped_nodes(lowers: np.ndarray, uppers: np.ndarray, panels: int,
                 nodes: int) -> NodesAndWeights:
  """Row-wise composite rules on the intervals [lowers[i], uppers[i]].

  Rows whose interval is empty get zero weights.

  Args:
    lowers: Left ends, one per row.
    uppers: Right ends, one per row.
    panels: Equal panels per row.
    nodes: Nodes per panel.

  Returns:
    Arrays of shape (rows, panels * nodes).
  """
  lowers = np.asarray(lowers, dtype=float)
  uppers = np.asarray(uppers, dtype=float)
  span = np.maximum(uppers - lowers, 0.0)
  reference, weights = gauss_legendre(0.0, 1.0, panels, nodes)
  x = lowers[:, None] + span[:, None] * reference[None, :]
  w = span[:, None] * weights[None, :]
  return x, w
