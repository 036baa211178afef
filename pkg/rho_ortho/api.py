"""
Class bundling the package's computations behind one set of settings.
"""

import logging

from .config import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRIALS, setup_logging
from .exceptions import MatrixFormatError
from .geometry import maximal_numerical_range, numerical_range
from .goldens import reproduce
from .linalg import DEFAULT_TOLERANCES, as_matrix, matrix_from_json
from .linf import LinfOperator, is_rho_orthogonal_linf, operator_from_fixture, rho_pm_linf_op
from .rho import is_rho_orthogonal, rho_operator
from .selftest import run_selftest
from .symmetry import LEFT, RIGHT, left_witness, probe_left_symmetry, probe_right_symmetry, right_witness


class OrthogonalityToolkit:
    """
    Entry point for rho-orthogonality computations.

    Attributes:
        tol (Tolerances): Tolerances used by every call.
        samples (int): Boundary angles for range sampling.
        seed (int): Seed for randomized probes.
        trials (int): Trials per probe.
        field (str): 'real' or 'complex' to force the scalar field of parsed matrices, or None.
    """

    def __init__(self, tol=DEFAULT_TOLERANCES, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, trials=DEFAULT_TRIALS,
                 field=None):
        """
        Initialize the toolkit and its logging.
        """
        setup_logging()
        self.tol = tol
        self.samples = samples
        self.seed = seed
        self.trials = trials
        self.field = field
        logging.info(f"Orthogonality toolkit initialized with tolerances {tol.to_dict()}.")

    def operator(self, document):
        """
        Decode a matrix document or an l-infinity fixture.

        Args:
            document (dict): Parsed JSON.

        Returns:
            np.ndarray or LinfOperator: The operator.
        """
        if isinstance(document, dict) and "space" in document:
            return operator_from_fixture(document)
        return as_matrix(matrix_from_json(document), field=self.field)

    @staticmethod
    def _pair_kind(T, A):
        linf = isinstance(T, LinfOperator), isinstance(A, LinfOperator)
        if linf[0] != linf[1]:
            raise MatrixFormatError("Both operands must be matrices or both l-infinity fixtures.")
        return linf[0]

    def derivative(self, T, A):
        """
        Norm derivatives at T in the direction A.

        Returns:
            DerivativeReport: rho'_+, rho'_- and rho'.
        """
        if self._pair_kind(T, A):
            return rho_pm_linf_op(T, A, self.tol)
        return rho_operator(T, A, self.tol)

    def check(self, T, A):
        """Orthogonality verdict for the ordered pair (T, A)."""
        verdict = is_rho_orthogonal_linf(T, A, self.tol) if self._pair_kind(T, A) else is_rho_orthogonal(T, A, self.tol)
        logging.info(f"Checked pair: rho-orthogonal={verdict.rho_orthogonal}, bj-orthogonal={verdict.bj_orthogonal}.")
        return verdict

    def numerical_range(self, A):
        return numerical_range(A, self.samples, self.tol)

    def maximal_numerical_range(self, T, A):
        return maximal_numerical_range(T, A, self.tol, self.samples)

    def witness(self, direction, T):
        """
        Construct a left or right symmetry witness for T.

        Returns:
            WitnessResult: The verified witness, or None when T has none.
        """
        if direction == LEFT:
            return left_witness(T, self.tol)
        if direction == RIGHT:
            return right_witness(T, self.tol)
        raise ValueError(f"Unknown direction {direction!r}.")

    def probe(self, direction, T):
        """Run the randomized left or right symmetry probe on T with the toolkit's seed and trial count."""
        if direction == LEFT:
            return probe_left_symmetry(T, self.trials, self.seed, self.tol)
        if direction == RIGHT:
            return probe_right_symmetry(T, self.trials, self.seed, self.tol)
        raise ValueError(f"Unknown direction {direction!r}.")

    def reproduce(self, name):
        return reproduce(name, self.tol)

    def selftest(self, trials=None):
        """Run the invariant checks with the toolkit's seed; trials defaults to the toolkit's trial count."""
        return run_selftest(self.trials if trials is None else trials, self.seed, self.tol)
