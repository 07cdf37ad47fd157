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

"""This module defines the PotentialLoader class and the CSV writers.

Typical usage example:
potential = PotentialLoader('potential.csv').load(grid)

write_snapshot('out/snapshot_0.csv', wave_function)
"""

import csv
from typing import List, Sequence

import numpy as np

from frac_schrodinger import grid as grid_lib

_POTENTIAL_COLUMN = 0
_POTENTIAL_HEADER_ROW = 0
_SNAPSHOT_HEADER = ('x', 're', 'im', 'abs2')
_NORMS_HEADER = ('t', 'norm', 'norm_drift')
_LINE_TERMINATOR = '\n'


def _format(value: float) -> str:
  return '%.17g' % value


def _is_number(cell: str) -> bool:
  try:
    float(cell)
  except ValueError:
    return False
  return True


class PotentialLoader:
  """Reads a one-column CSV of potential values, one per grid point.

  A first row whose cell is not a number is treated as a header and skipped.
  """

  def __init__(self, path: str):
    """Constructor.

    Args:
      path: Path of the CSV file.

    Raises:
      ValueError: If the path is empty.
    """
    if not path:
      raise ValueError('path cannot be empty')
    self._path = path

  def load(self, grid: grid_lib.GridSpec) -> np.ndarray:
    """Returns the potential sampled on the grid.

    Raises:
      OSError: If the file cannot be read.
      ValueError: If a row is not a single finite number, or the number of
        values does not match the grid.
    """
    with open(self._path, newline='', encoding='utf-8') as csv_file:
      rows = list(csv.reader(csv_file))

    values: List[float] = []
    for index, row in enumerate(rows):
      if not row or not ''.join(row).strip():
        continue
      if (index == _POTENTIAL_HEADER_ROW
          and not _is_number(row[_POTENTIAL_COLUMN])):
        continue
      try:
        if len(row) != 1:
          raise ValueError(f'expected 1 column, got {len(row)}')
        value = float(row[_POTENTIAL_COLUMN])
        if not np.isfinite(value):
          raise ValueError(f'{value} is not finite')
      except ValueError as error:
        raise ValueError(
            f'Failed to read the potential from row {index+1} of '
            f'{self._path}, please double check this row\'s value') from error
      values.append(value)

    if len(values) != grid.n:
      raise ValueError(
          f'{self._path} holds {len(values)} potential values, the grid has '
          f'{grid.n} points')
    return np.array(values)


def write_snapshot(path: str, wave_function: grid_lib.WaveFunction) -> None:
  """Writes x, re, im, abs2 columns with a header row."""
  points = wave_function.grid.points()
  values = wave_function.values
  with open(path, 'w', newline='', encoding='utf-8') as csv_file:
    writer = csv.writer(csv_file, lineterminator=_LINE_TERMINATOR)
    writer.writerow(_SNAPSHOT_HEADER)
    for x, value in zip(points, values):
      writer.writerow((_format(x), _format(value.real), _format(value.imag),
                       _format(abs(value)**2)))


def write_norms(csv_file, times: Sequence[float],
                norms: Sequence[float], initial_norm: float) -> None:
  """Writes t, norm, norm_drift rows to an open text stream."""
  writer = csv.writer(csv_file, lineterminator=_LINE_TERMINATOR)
  writer.writerow(_NORMS_HEADER)
  for t, norm in zip(times, norms):
    writer.writerow(
        (_format(t), _format(norm), _format(abs(norm - initial_norm))))
