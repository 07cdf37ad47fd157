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

"""Exceptions raised by the frac_schrodinger package."""


class Error(Exception):
  """Base class for every error raised by this package."""


class DomainError(Error, ValueError):
  """An argument lies outside the domain where the quantity is defined."""


class DivergenceError(Error, ValueError):
  """The requested improper integral does not converge."""


class SpecError(Error, ValueError):
  """A numerical specification (quadrature, window, step list) is invalid."""


class ContractError(Error, ValueError):
  """Inputs are individually valid but do not fit together."""


class StabilityError(Error, ValueError):
  """An explicit time step exceeds the stability limit of the integrator."""


class DegenerateInputError(Error, ValueError):
  """The input makes a relative measure meaningless, e.g. a zero state."""


class NumericalError(Error, ArithmeticError):
  """A numerical routine failed to produce a trustworthy value."""
