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


"""Tests for errors."""

from frac_schrodinger import errors
from absl.testing import absltest
from absl.testing import parameterized


class ErrorsTest(parameterized.TestCase):

  @parameterized.parameters(errors.DomainError, errors.DivergenceError,
                            errors.SpecError, errors.ContractError,
                            errors.StabilityError, errors.DegenerateInputError)
  def test_argument_errors_are_value_errors(self, error_class):
    with self.assertRaises(ValueError):
      raise error_class('bad argument')

  def test_numerical_error_is_arithmetic_error(self):
    self.assertTrue(issubclass(errors.NumericalError, ArithmeticError))
    self.assertFalse(issubclass(errors.NumericalError, ValueError))

  def test_every_error_derives_from_package_base(self):
    for error_class in (errors.DomainError, errors.NumericalError,
                        errors.StabilityError):
      self.assertTrue(issubclass(error_class, errors.Error))


if __name__ == '__main__':
  absltest.main()
