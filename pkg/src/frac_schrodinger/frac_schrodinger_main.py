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

"""This module defines the FracSchrodingerMain class and the command line.

The FracSchrodingerMain class runs one of the kernel, scalar, propagate or
verify commands described by a RunConfig.

Typical usage:
  frac-schrodinger verify --alpha 0.5 --n 64 --seed 7
  frac-schrodinger propagate --init mode:1 --L 6.283185 --times 0,3.14159

or, from Python:
  runner = frac_schrodinger_main.FracSchrodingerMain(config)
  exit_code = runner.run()
"""

import argparse
import os
import sys
from typing import List, Optional, Sequence, TextIO

from absl import app
from absl import logging
from absl.flags import argparse_flags

from frac_schrodinger import errors
from frac_schrodinger import exponential_signal
from frac_schrodinger import harness
from frac_schrodinger import initial_state
from frac_schrodinger import kernel
from frac_schrodinger import potential_loader
from frac_schrodinger import quadrature
from frac_schrodinger import run_config
from frac_schrodinger import scalar
from frac_schrodinger import spectral

EXIT_SUCCESS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO_ERROR = 3
EXIT_NUMERICAL_ERROR = 4

_KERNEL_FREQUENCIES = (-2.0, -1.0, 1.0, 2.0)
_SCALAR_PROBLEM_FREQUENCY = 1.0
_SCALAR_SIGNAL_FREQUENCIES = (0.0, 0.5, 1.0, 2.0)
_SCALAR_SOLUTION_TOLERANCE = 1e-4
_CAPUTO_LAMBDA = 1.0
_NORM_TOLERANCE = 1e-12
_NORMS_FILENAME = 'norms.csv'


class FracSchrodingerMain:
  """Runs the command described by a RunConfig and reports an exit code."""

  def __init__(self, config: run_config.RunConfig,
               stdout: Optional[TextIO] = None):
    """Constructor for the FracSchrodingerMain class.

    Args:
      config: Validated run configuration.
      stdout: Stream for tables and reports; sys.stdout when None.
    """
    self._config = config
    self._stdout = stdout or sys.stdout

  def run(self) -> int:
    """Runs the configured command.

    Returns:
      0 if every check passed, 1 if a check failed, 3 on file errors and 4 on
      numerical or domain errors.
    """
    command = self._config.command
    logging.info('running %s with %s', command.value, self._config)
    handlers = {
        run_config.Command.KERNEL: self._run_kernel,
        run_config.Command.SCALAR: self._run_scalar,
        run_config.Command.PROPAGATE: self._run_propagate,
        run_config.Command.VERIFY: self._run_verify,
    }
    try:
      return handlers[command]()
    except OSError as error:
      logging.error('I/O failure: %s', error)
      print(f'error: {error}', file=sys.stderr)
      return EXIT_IO_ERROR
    except errors.Error as error:
      logging.error('%s: %s', type(error).__name__, error)
      print(f'error: {error}', file=sys.stderr)
      return EXIT_NUMERICAL_ERROR

  def _print(self, *fields) -> None:
    print(','.join(str(field) for field in fields), file=self._stdout)

  def _run_kernel(self) -> int:
    """Prints g_beta(t), then convolutions against their oracles."""
    config = self._config
    print(repr(float(kernel.gamma_kernel(config.beta, config.t))),
          file=self._stdout)
    if config.beta > 1:
      return EXIT_SUCCESS
    self._print('a', 'numeric_re', 'numeric_im', 'oracle_re', 'oracle_im',
                'abs_error')
    for frequency in _KERNEL_FREQUENCIES:
      numeric = kernel.convolve_exponential(config.beta, frequency, config.t,
                                            config.quad)
      oracle = kernel.exponential_convolution_oracle(config.beta, frequency,
                                                     config.t)
      self._print(frequency, repr(numeric.real), repr(numeric.imag),
                  repr(oracle.real), repr(oracle.imag),
                  repr(abs(numeric - oracle)))
    return EXIT_SUCCESS

  def _run_scalar(self) -> int:
    """Prints weak residuals against a = 1 and the Caputo modulus table."""
    config = self._config
    problem = scalar.ScalarProblem(config.order, _SCALAR_PROBLEM_FREQUENCY)
    passed = True
    self._print('u_frequency', 'weak_residual')
    for frequency in _SCALAR_SIGNAL_FREQUENCIES:
      u = exponential_signal.ExponentialSignal(1.0, frequency)
      residual = scalar.scalar_weak_residual(problem, u, config.quad)
      self._print(frequency, repr(residual))
      if frequency == _SCALAR_PROBLEM_FREQUENCY:
        passed &= residual <= _SCALAR_SOLUTION_TOLERANCE
      else:
        passed &= residual > harness.SELECTIVITY_MARGIN
    self._print('t', 'modulus_weyl', 'modulus_caputo')
    for sample in scalar.caputo_compare(config.alpha, _CAPUTO_LAMBDA,
                                        config.times):
      self._print(sample.t, repr(sample.modulus_weyl),
                  repr(sample.modulus_caputo))
    return EXIT_SUCCESS if passed else EXIT_CHECK_FAILED

  def _build_operator(self) -> spectral.SpectralOperator:
    config = self._config
    if config.potential_path:
      potential = potential_loader.PotentialLoader(
          config.potential_path).load(config.grid)
      return spectral.build_schrodinger(config.grid, potential)
    return spectral.build_free_laplacian(config.grid)

  def _run_propagate(self) -> int:
    """Writes a snapshot per time and the norm drift table.

    Creates the output directory if it doesn't exist.
    """
    config = self._config
    try:
      operator = self._build_operator()
    except ValueError as error:
      if isinstance(error, errors.Error):
        raise
      raise errors.ContractError(str(error)) from error
    v = config.init.build(config.grid)
    initial_norm = v.norm()
    if config.output_path:
      os.makedirs(config.output_path, exist_ok=True)
    norms = []
    for index, t in enumerate(config.times):
      u = spectral.propagate(operator, config.order, t, v)
      norms.append(u.norm())
      if config.output_path:
        potential_loader.write_snapshot(
            os.path.join(config.output_path, f'snapshot_{index}.csv'), u)
    if config.output_path:
      with open(os.path.join(config.output_path, _NORMS_FILENAME), 'w',
                newline='', encoding='utf-8') as csv_file:
        potential_loader.write_norms(csv_file, config.times, norms,
                                     initial_norm)
    else:
      potential_loader.write_norms(self._stdout, config.times, norms,
                                   initial_norm)
    drift = max(abs(norm - initial_norm) for norm in norms)
    logging.info('propagated %d snapshots, max norm drift %.3e',
                 len(norms), drift)
    tolerance = _NORM_TOLERANCE * max(1.0, initial_norm)
    return EXIT_SUCCESS if drift <= tolerance else EXIT_CHECK_FAILED

  def _run_verify(self) -> int:
    """Runs the verification suite and writes the JSON report."""
    config = self._config
    potential = None
    if config.potential_path:
      try:
        potential = potential_loader.PotentialLoader(
            config.potential_path).load(config.grid)
      except ValueError as error:
        raise errors.ContractError(str(error)) from error
    suite = harness.VerificationSuite(
        alpha=config.order,
        grid=config.grid,
        seed=config.seed,
        quad=config.quad,
        suite=config.suite,
        potential=potential)
    reports = suite.run()
    if config.output_path:
      directory = os.path.dirname(config.output_path)
      if directory:
        os.makedirs(directory, exist_ok=True)
      suite.save_reports(config.output_path)
    else:
      self._stdout.write(suite.to_json())
    failed = [report.name for report in reports if not report.passed]
    if failed:
      logging.warning('failed checks: %s', ', '.join(failed))
      return EXIT_CHECK_FAILED
    return EXIT_SUCCESS


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
  """Adds the flags shared by every command."""
  parser.add_argument('--alpha', type=float, default=0.5,
                      help='Order of the time derivative, in (0, 1).')
  parser.add_argument('--n', type=int, default=64,
                      help='Number of grid points (even, at least 2).')
  parser.add_argument('--L', dest='length', type=float,
                      default=run_config.DEFAULT_LENGTH,
                      help='Length of the periodic domain [0, L).')
  parser.add_argument('--potential', dest='potential_path', default=None,
                      help='One-column CSV with V >= 0 at each grid point. '
                      'The free Laplacian is used when absent.')
  parser.add_argument('--init', type=initial_state.parse_initial_state,
                      default=initial_state.GaussianState(0.0, 1.0),
                      help='Initial state: gaussian:center,width or mode:k.')
  parser.add_argument('--times', type=run_config.parse_times,
                      default=run_config.DEFAULT_TIMES,
                      help='Comma-separated list of times.')
  parser.add_argument('--beta', type=float, default=0.5,
                      help='Kernel order for the kernel command.')
  parser.add_argument('--t', type=float, default=1.0,
                      help='Evaluation time for the kernel command.')
  parser.add_argument('--seed', type=int, default=0,
                      help='Seed of the random inputs of the verify command.')
  parser.add_argument('--out', dest='output_path', default=None,
                      help='Snapshot directory for propagate, JSON file for '
                      'verify. Results go to stdout when absent.')
  parser.add_argument('--quad-Y', dest='quad_y', type=float, default=1e4,
                      help='Truncation Y of the improper integrals.')
  parser.add_argument('--quad-panels', dest='quad_panels', type=int,
                      default=64, help='Gauss-Legendre panels.')
  parser.add_argument('--suite', choices=harness.SUITES, default='full',
                      help='Group of checks run by verify.')


def parse_flags(argv: List[str]) -> argparse.Namespace:
  """Parses the command line into a namespace with a `command` attribute."""
  parser = argparse_flags.ArgumentParser(
      description='Fractional Schrodinger kernels, solvers and checks.',
      allow_abbrev=False)
  subparsers = parser.add_subparsers(dest='command', required=True)
  helps = {
      run_config.Command.KERNEL: 'Print g_beta(t) and exponential '
                                 'convolutions against their oracles.',
      run_config.Command.SCALAR: 'Print scalar weak residuals and the '
                                 'Caputo modulus table.',
      run_config.Command.PROPAGATE: 'Write wave-function snapshots and norm '
                                    'drift.',
      run_config.Command.VERIFY: 'Run the verification suite.',
  }
  for command, text in helps.items():
    _add_common_flags(
        subparsers.add_parser(command.value, help=text, allow_abbrev=False))
  return parser.parse_args(argv[1:])


def config_from_args(args: argparse.Namespace) -> run_config.RunConfig:
  """Builds the RunConfig from parsed flags.

  Raises:
    ValueError: If the flags describe an invalid configuration.
  """
  quad = quadrature.QuadratureSpec(truncation=args.quad_y,
                                   panels=args.quad_panels)
  return run_config.RunConfig(
      command=run_config.Command(args.command),
      alpha=args.alpha,
      n=args.n,
      length=args.length,
      potential_path=args.potential_path,
      init=args.init,
      times=args.times,
      beta=args.beta,
      t=args.t,
      seed=args.seed,
      output_path=args.output_path,
      quad=quad,
      suite=args.suite)


def main(args: argparse.Namespace) -> int:
  try:
    config = config_from_args(args)
  except ValueError as error:
    raise app.UsageError(str(error), exitcode=EXIT_USAGE) from error
  return FracSchrodingerMain(config).run()


def run_main(argv: Optional[Sequence[str]] = None) -> None:
  """Console-script entry point."""
  app.run(main, argv=argv, flags_parser=parse_flags)


if __name__ == '__main__':
  run_main()
