"""
Provides a command-line interface for the rho_ortho package.

The RhoOrthoCLI class parses command-line arguments and calls methods on an
OrthogonalityToolkit to compute norm derivatives, orthogonality verdicts,
numerical ranges, symmetry witnesses and probes. Results go to standard
output as JSON (or CSV for ranges), diagnostics to standard error.
"""

import argparse
import json
import logging
import sys

from .api import OrthogonalityToolkit
from .config import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRIALS
from .exceptions import NumericalError
from .export import dump_json, export_json, export_range_csv, write_range_csv
from .goldens import GOLDENS
from .linalg import DEFAULT_TOLERANCES
from .selftest import DEFAULT_CHECK_TRIALS
from .symmetry import LEFT, RIGHT

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_MISMATCH = 3


class RhoOrthoCLI:
    """
    A class to run rho-orthogonality computations from the command line.

    Attributes:
        parser (argparse.ArgumentParser): Command-line argument parser.
        toolkit (OrthogonalityToolkit): Toolkit configured from the last parsed arguments.
    """

    def __init__(self):
        """
        Initialize the RhoOrthoCLI class.
        """
        self.parser = self.setup_parser()
        self.toolkit = None

    @staticmethod
    def setup_parser():
        """
        Set up the command-line argument parser.

        Returns:
            argparse.ArgumentParser: The configured parser.
        """
        # Options shared by every command
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--tol", type=float, default=DEFAULT_TOLERANCES.tol_ortho_decision,
                            help="Orthogonality decision tolerance. Example: --tol 1e-8")
        common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                            help="Boundary angles for numerical ranges. Example: --samples 256")
        common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for probes. Example: --seed 7")
        common.add_argument("--trials", type=int,
                            help=f"Trials for probes (default {DEFAULT_TRIALS}) or per self-test check "
                                 f"(default {DEFAULT_CHECK_TRIALS}). Example: --trials 200")
        common.add_argument("--field", choices=("real", "complex"),
                            help="Force the scalar field of matrix inputs. Example: --field complex")
        common.add_argument("-o", "--output", metavar="FILENAME",
                            help="Write the result to a file instead of standard output")

        parser = argparse.ArgumentParser(prog="rho_ortho", description="Rho-orthogonality of operators")
        commands = parser.add_subparsers(dest="command", required=True)

        derivative = commands.add_parser("derivative", parents=[common],
                                         help="Norm derivatives at T in the direction A. Example: derivative T.json A.json")
        derivative.add_argument("T", help="Matrix or l-infinity fixture, as a file or inline JSON")
        derivative.add_argument("A", help="Direction operator")

        check = commands.add_parser("check", parents=[common],
                                    help="Decide T rho-orthogonal to A. Example: check T.json A.json")
        check.add_argument("T")
        check.add_argument("A")

        numrange = commands.add_parser("numrange", parents=[common],
                                       help="Sample the numerical range of A. Example: numrange A.json --csv")
        numrange.add_argument("A")
        numrange.add_argument("--csv", action="store_true", help="Print the boundary as CSV")

        maxrange = commands.add_parser("maxrange", parents=[common],
                                       help="Sample the maximal numerical range W_T(A*T). Example: maxrange T.json A.json")
        maxrange.add_argument("T")
        maxrange.add_argument("A")
        maxrange.add_argument("--csv", action="store_true", help="Print the boundary as CSV")

        witness = commands.add_parser("witness", parents=[common],
                                      help="Construct a symmetry witness. Example: witness right D.json")
        witness.add_argument("direction", choices=(LEFT, RIGHT))
        witness.add_argument("T")

        probe = commands.add_parser("probe", parents=[common],
                                    help="Randomized symmetry probe. Example: probe left T.json --trials 200 --seed 7")
        probe.add_argument("direction", choices=(LEFT, RIGHT))
        probe.add_argument("T")

        reproduce = commands.add_parser("reproduce", parents=[common],
                                        help="Reproduce a named golden example. Example: reproduce linf-necessity")
        reproduce.add_argument("name", choices=tuple(GOLDENS))

        commands.add_parser("selftest", parents=[common], help="Run the invariant checks")
        return parser

    @staticmethod
    def load_document(source):
        """
        Parse an input given inline (starting with '{') or as a file path.

        Raises:
            json.JSONDecodeError: If the text is not JSON.
            OSError: If the file cannot be read.
        """
        if source.lstrip().startswith("{"):
            return json.loads(source)
        with open(source) as f:
            return json.load(f)

    def operator(self, source):
        return self.toolkit.operator(self.load_document(source))

    def main(self, argv=None):
        """
        The main entry point for the CLI.

        Args:
            argv (list): Arguments without the program name; sys.argv[1:] by default.

        Returns:
            int: Exit code.
        """
        args = self.parser.parse_args(argv)
        try:
            return self.run(args)
        except (ValueError, json.JSONDecodeError, OSError) as e:
            logging.error(f"Invalid input for {args.command}: {e}")
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_INPUT
        except NumericalError as e:
            logging.error(f"Numerical failure in {args.command}: {e}")
            print(f"Numerical error: {e}", file=sys.stderr)
            return EXIT_NUMERICAL

    def emit(self, result, args):
        """Write a result to the output file or to standard output."""
        if args.output:
            if not export_json(result, args.output):
                print(f"Error: could not write {args.output}", file=sys.stderr)
                return EXIT_INPUT
            return EXIT_OK
        dump_json(result, sys.stdout)
        return EXIT_OK

    def emit_range(self, sample, args):
        if not args.csv:
            return self.emit(sample, args)
        if args.output:
            if not export_range_csv(sample, args.output):
                print(f"Error: could not write {args.output}", file=sys.stderr)
                return EXIT_INPUT
            return EXIT_OK
        write_range_csv(sample, sys.stdout)
        return EXIT_OK

    def run(self, args):
        """
        Execute the command named by the parsed arguments.

        Args:
            args (argparse.Namespace): Parsed command-line arguments.

        Returns:
            int: Exit code.
        """
        if args.trials is None:
            args.trials = DEFAULT_CHECK_TRIALS if args.command == "selftest" else DEFAULT_TRIALS
        self.toolkit = OrthogonalityToolkit(DEFAULT_TOLERANCES.with_decision(args.tol), args.samples, args.seed,
                                            args.trials, args.field)

        if args.command == "derivative":
            return self.emit(self.toolkit.derivative(self.operator(args.T), self.operator(args.A)), args)

        if args.command == "check":
            return self.emit(self.toolkit.check(self.operator(args.T), self.operator(args.A)), args)

        if args.command == "numrange":
            return self.emit_range(self.toolkit.numerical_range(self.operator(args.A)), args)

        if args.command == "maxrange":
            sample = self.toolkit.maximal_numerical_range(self.operator(args.T), self.operator(args.A))
            return self.emit_range(sample, args)

        if args.command == "witness":
            result = self.toolkit.witness(args.direction, self.operator(args.T))
            return self.emit({"witness": None} if result is None else result, args)

        if args.command == "probe":
            return self.emit(self.toolkit.probe(args.direction, self.operator(args.T)), args)

        if args.command == "reproduce":
            result = self.toolkit.reproduce(args.name)
            code = self.emit(result, args)
            if not result.passed:
                print(f"Golden {args.name} does not match its expected values.", file=sys.stderr)
                return EXIT_MISMATCH
            return code

        if args.command == "selftest":
            checks = self.toolkit.selftest(args.trials)
            passed = all(check.passed for check in checks)
            code = self.emit({"passed": passed, "checks": [check.to_dict() for check in checks]}, args)
            if not passed:
                failed = ", ".join(check.name for check in checks if not check.passed)
                print(f"Self-test failed: {failed}", file=sys.stderr)
                return EXIT_MISMATCH
            return code

        raise ValueError(f"Unknown command {args.command!r}.")


def main():
    """
    The main function to execute the RhoOrthoCLI.
    """
    # Create an instance of the RhoOrthoCLI class
    rho_ortho_cli = RhoOrthoCLI()

    # Run it and report the exit code to the shell
    sys.exit(rho_ortho_cli.main())


if __name__ == "__main__":
    # Execute the main function if the script is run as the main module
    main()
