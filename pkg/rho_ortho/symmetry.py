"""
Left and right rho-symmetry of Hilbert space operators.

T is rho-left symmetric when T rho-orthogonal to A always implies A
rho-orthogonal to T, and rho-right symmetric for the converse implication.
Apart from the zero operator (and, in two real dimensions, scalar multiples of
isometries) no operator has either property, and this module builds the
operators A that show it:

    left_witness      T rho-orthogonal to A, A not rho-orthogonal to T
    right_witness     A rho-orthogonal to T, T not rho-orthogonal to A

Every witness is verified before it is returned. Randomized probes search
for violations directly, and the truncation study follows diagonal operators
whose norm is not attained.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import (DEFAULT_BAND, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRIALS, SHIFT_MAX_STEPS,
                     SHIFT_REDRAW_FACTOR, SHIFT_RESIDUAL, WITNESS_SAMPLES)
from .exceptions import BadSequence, ConstructionFailed, DimensionError, ShiftFailed, ZeroOperator
from .geometry import identity_subspace, norm_attainment_subspace, numerical_range
from .linalg import (DEFAULT_TOLERANCES, field_dtype, gaussian_matrix, hermitian_eig, matrix_to_json,
                     operator_norm, polar_decompose, require_square, svd)
from .rho import is_rho_orthogonal, midpoint_shift, rho_operator

LEFT = "left"
RIGHT = "right"

# |Re(l_1 conj(l_n))| <= CASE_II_THRESHOLD |l_1 l_n| selects the rotated rank-one construction
CASE_II_THRESHOLD = 1e-10
# Required ratio of a construction's asymmetry to the decision bound
_MARGIN = 4.0


@dataclass(frozen=True, eq=False)
class WitnessResult:
    """
    A verified operator showing that T is not rho-left (or rho-right) symmetric.

    Attributes:
        operator (np.ndarray): The operator T.
        witness (np.ndarray): The constructed operator A.
        direction (str): LEFT or RIGHT.
        forward_verdict (OrthogonalityVerdict): The orthogonality that holds.
        reverse_verdict (OrthogonalityVerdict): The orthogonality that fails.
        construction_tag (str): Which construction produced A.
    """

    operator: np.ndarray
    witness: np.ndarray
    direction: str
    forward_verdict: object
    reverse_verdict: object
    construction_tag: str

    def to_dict(self):
        return {
            "direction": self.direction,
            "construction_tag": self.construction_tag,
            "operator": matrix_to_json(self.operator),
            "witness": matrix_to_json(self.witness),
            "forward_verdict": self.forward_verdict.to_dict(),
            "reverse_verdict": self.reverse_verdict.to_dict(),
        }


@dataclass(frozen=True, eq=False)
class SymmetryProbeReport:
    """
    Outcome of a randomized symmetry probe.

    Attributes:
        trials (int): Partners tested.
        failures (int): Partners for which the reverse orthogonality failed.
        first_counterexample (np.ndarray): First failing partner, or None.
        discarded (int): Samples dropped before testing.
    """

    trials: int
    failures: int
    first_counterexample: object = None
    discarded: int = 0

    def __post_init__(self):
        if not 0 <= self.failures <= self.trials:
            raise ValueError(f"Failures {self.failures} out of range for {self.trials} trials.")

    def to_dict(self):
        first = self.first_counterexample
        return {
            "trials": self.trials,
            "failures": self.failures,
            "discarded": self.discarded,
            "first_counterexample": None if first is None else matrix_to_json(first),
        }


class WSymmetry(NamedTuple):
    w_symmetric: bool
    all_theta_orthogonal: bool
    failing_theta: object


class TruncationRow(NamedTuple):
    n: int
    band_size: int
    decay_value: float
    reverse_value: float


@dataclass(frozen=True)
class TruncationTable:
    rows: tuple
    delta: float
    band: str

    def is_decreasing(self):
        """True when the decay column strictly decreases with N."""
        return all(b.decay_value < a.decay_value for a, b in zip(self.rows, self.rows[1:]))

    def to_dict(self):
        return {
            "delta": self.delta,
            "band": self.band,
            "decreasing": self.is_decreasing(),
            "rows": [row._asdict() for row in self.rows],
        }


def _verify(T, A, direction, tag, tol, samples):
    """Check the witness on `samples` angles and again on four times as many."""
    if not np.any(A):
        raise ConstructionFailed(f"The {direction} witness '{tag}' is the zero operator.")
    first, second = (T, A) if direction == LEFT else (A, T)
    first_space = norm_attainment_subspace(first, tol)
    second_space = norm_attainment_subspace(second, tol)
    for grid in (samples, 4 * samples):
        forward = is_rho_orthogonal(first, second, tol, grid, first_space, second_space.sigma_max)
        reverse = is_rho_orthogonal(second, first, tol, grid, second_space, first_space.sigma_max)
        if not forward.rho_orthogonal or reverse.rho_orthogonal:
            logging.error(f"{direction} witness '{tag}' failed verification on {grid} angles: "
                          f"forward={forward.rho_orthogonal}, reverse={reverse.rho_orthogonal}.")
            raise ConstructionFailed(f"The {direction} witness '{tag}' does not verify.")
    logging.info(f"Verified {direction} witness '{tag}' for a {T.shape[0]}x{T.shape[0]} operator.")
    return WitnessResult(T, A, direction, forward, reverse, tag)


def _rotation_block(basis):
    """Operator sending b1 to (b1 + b2)/sqrt(2), b2 to (b2 - b1)/sqrt(2) and b3 to -b3/sqrt(2)."""
    c = 1 / math.sqrt(2)
    block = np.array([[c, -c, 0.0], [c, c, 0.0], [0.0, 0.0, -c]])
    return basis @ block @ basis.conj().T


def left_witness(T, tol=DEFAULT_TOLERANCES, samples=WITNESS_SAMPLES):
    """
    Build A with T rho-orthogonal to A while A is not rho-orthogonal to T.

    Cases are tried in order:

    1. T does not vanish on the complement of H0: A = (Tz) z* for the next
       right singular vector z.
    2. T is a scalar multiple of an isometry and n >= 3: A = TB where B
       rotates e1, e2 by 45 degrees and sends e3 to -e3/sqrt(2).
    3. Otherwise A mixes x_a in H0 and x_b outside it through a vector w0
       orthogonal to T(H0), unless T(H0) lies in H0 and dim H0 >= 3, where
       the rotation of case 2 is applied inside H0.

    Args:
        T (np.ndarray): Square operator.
        tol (Tolerances): Tolerances.
        samples (int): Angles for the first verification pass.

    Returns:
        WitnessResult: Verified witness, or None for T = 0 and for scalar
        multiples of isometries in dimension below 3.

    Raises:
        ConstructionFailed: If the constructed operator does not verify.
    """
    T = np.asarray(T)
    require_square(T)
    n = T.shape[0]
    if not np.any(T):
        logging.info("The zero operator is rho-left symmetric; no witness.")
        return None
    sigma, right, left = svd(T, tol)
    k = int(np.sum(sigma >= sigma[0] * (1 - tol.tol_attain)))

    if k < n and sigma[k] > _MARGIN * tol.tol_ortho_decision * sigma[0]:
        z = right[:, k]
        return _verify(T, np.outer(T @ z, z.conj()), LEFT, "prop-kernel-violation", tol, samples)

    if k == n:
        if n < 3:
            logging.info(f"{n}x{n} scalar multiple of an isometry: no left witness.")
            return None
        A = T @ _rotation_block(np.eye(n, dtype=field_dtype(T))[:, :3])
        return _verify(T, A, LEFT, "left-isometry-case-I", tol, samples)

    basis, complement = right[:, :k], right[:, k:]
    coupling = complement.conj().T @ T @ basis
    invariant = np.max(np.abs(coupling)) <= tol.tol_ortho_decision * sigma[0]
    if invariant and k >= 3:
        A = T @ _rotation_block(basis[:, :3])
        return _verify(T, A, LEFT, "left-restricted-isometry", tol, samples)

    beta, alpha = (0, 0) if invariant else np.unravel_index(np.argmax(np.abs(coupling)), coupling.shape)
    x_alpha, x_beta = basis[:, alpha], complement[:, beta]
    w0 = sigma[0] * left[:, k]
    A = np.outer(w0, x_alpha.conj()) + np.outer((w0 + T @ x_alpha) / math.sqrt(2), x_beta.conj())
    return _verify(T, A, LEFT, "left-case-II", tol, samples)


def _margin_ok(asymmetry, norm_A, norm_D, tol):
    return abs(asymmetry) >= _MARGIN * tol.tol_ortho_decision * norm_A * norm_D


def _sorted_diagonal_witness(d, tol):
    """Witness and tag for diag(d) with |d| non-increasing, or None."""
    n = len(d)
    dtype = complex if np.iscomplexobj(d) else float
    m = abs(d[0])
    k = int(np.sum(np.abs(d) >= m * (1 - tol.tol_attain)))
    A = np.zeros((n, n), dtype=dtype)

    if k == n:
        if n < 3:
            logging.info(f"{n}x{n} scalar multiple of an isometry: no right witness.")
            return None
        A[1, 0] = d[1]
        A[0, 1] = -d[0]
        for j in range(2, n):
            A[j, j] = d[j] / 2
        return A, "right-isometry"

    for j in range(k):
        A[j, j] = d[j] / 2
    if n - k >= 2:
        A[k + 1, k] = m
        return A, "right-codim-2"

    last = d[n - 1]
    if abs(last) <= tol.tol_ortho_decision * m / 4:
        A[n - 1, n - 1] = m
        return A, "right-codim-1-kernel"

    cross = float(np.real(d[0] * np.conj(last)))
    if abs(cross) <= CASE_II_THRESHOLD * abs(d[0] * last):
        # Rotate d_1 onto the positive imaginary axis
        rotation = 1j * m / d[0]
        rotated = rotation * d
        u = np.zeros(n, dtype=complex)
        u[0], u[n - 1] = -1j / math.sqrt(2), 1 / math.sqrt(2)
        w = np.zeros(n, dtype=complex)
        w[0] = np.conj(rotated[n - 1]) / math.sqrt(2)
        w[n - 1] = -1j * np.conj(rotated[0]) / math.sqrt(2)
        candidate = np.conj(rotation) * np.outer(w, u.conj())
        asymmetry = m * abs(rotated[n - 1]) / 2
        tag = "lemma-diagonal-case-II"
    else:
        u = np.zeros(n, dtype=dtype)
        u[0] = u[n - 1] = 1 / math.sqrt(2)
        w = np.zeros(n, dtype=dtype)
        w[0], w[n - 1] = last, -d[0]
        candidate = np.outer(w, u.conj())
        asymmetry = cross / math.sqrt(2)
        tag = "lemma-diagonal-case-I"
    if n < 3 or _margin_ok(asymmetry, np.linalg.norm(w), m, tol):
        return candidate, tag

    # Too little asymmetry for a reliable decision: rotate e1 into e_n instead
    A[0, 0] = 0
    A[n - 1, 0] = m
    A[0, n - 1] = -m
    return A, "right-codim-1-rotation"


def _diagonal_model(lambdas, tol):
    d = np.asarray(lambdas)
    order = np.argsort(-np.abs(d), kind="stable")
    model = _sorted_diagonal_witness(d[order], tol)
    if model is None:
        return None
    B, tag = model
    permutation = np.eye(len(d))[:, order]
    return permutation @ B @ permutation.T, tag


def diagonal_right_witness(lambdas, tol=DEFAULT_TOLERANCES, samples=WITNESS_SAMPLES):
    """
    Right witness for the diagonal operator diag(lambdas).

    With k entries of maximal modulus m the construction depends on the codimension of H0:

    - k = n: A e1 = l_2 e2, A e2 = -l_1 e1, A e_j = l_j e_j / 2 otherwise.
    - n - k >= 2: A = D/2 on H0 and A e_{k+1} = m e_{k+2}.
    - n - k = 1 with l_n = 0: A = D/2 on H0 and A e_n = m e_n.
    - n - k = 1 otherwise: the rank-one A z = <z, u> w with u = (e1 + e_n)/sqrt(2)
      and w = l_n e1 - l_1 e_n, or, when Re(l_1 conj(l_n)) = 0, its version
      rotated so that l_1 becomes purely imaginary.

    Args:
        lambdas: Diagonal entries, real or complex.
        tol (Tolerances): Tolerances.
        samples (int): Angles for the first verification pass.

    Returns:
        WitnessResult: Verified witness, or None when none exists.
    """
    d = np.asarray(lambdas)
    if d.ndim != 1 or d.size == 0:
        raise DimensionError(f"Expected a nonempty vector of diagonal entries, got shape {d.shape}.")
    if not np.any(d):
        return None
    model = _diagonal_model(d, tol)
    if model is None:
        return None
    A, tag = model
    return _verify(np.diag(d), A, RIGHT, tag, tol, samples)


def right_witness(T, tol=DEFAULT_TOLERANCES, samples=WITNESS_SAMPLES):
    """
    Build A with A rho-orthogonal to T while T is not rho-orthogonal to A.

    Diagonal T is handled directly by diagonal_right_witness. Otherwise T = UP
    is split by the polar decomposition, P = V diag(p) V* is diagonalized, the
    diagonal witness B for diag(p) is conjugated back and A = U V B V*.

    Args:
        T (np.ndarray): Square operator.
        tol (Tolerances): Tolerances.
        samples (int): Angles for the first verification pass.

    Returns:
        WitnessResult: Verified witness, or None for T = 0 and for scalar
        multiples of isometries in dimension below 3.

    Raises:
        ConstructionFailed: If the constructed operator does not verify.
    """
    T = np.asarray(T)
    require_square(T)
    if not np.any(T):
        logging.info("The zero operator is rho-right symmetric; no witness.")
        return None
    if not np.any(T - np.diag(np.diag(T))):
        return diagonal_right_witness(np.diag(T), tol, samples)

    unitary, positive = polar_decompose(T, tol)
    spectrum = hermitian_eig(positive, tol)
    model = _diagonal_model(spectrum.eigenvalues, tol)
    if model is None:
        return None
    B, tag = model
    V = spectrum.eigenvectors
    return _verify(T, unitary @ V @ B @ V.conj().T, RIGHT, tag, tol, samples)


def _require_nonzero(T):
    T = np.asarray(T)
    require_square(T)
    if not np.any(T):
        raise ZeroOperator("Symmetry probes need a nonzero operator.")
    return T


def probe_left_symmetry(T, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, tol=DEFAULT_TOLERANCES,
                        samples=None, self_adjoint=False):
    """
    Count random A with T rho-orthogonal to A but A not rho-orthogonal to T.

    Each Gaussian sample (in the field of T) is moved by midpoint_shift so
    that T is rho-orthogonal to it.

    Args:
        T (np.ndarray): Nonzero square operator.
        trials (int): Number of samples.
        seed (int): Seed of the generator.
        tol (Tolerances): Tolerances.
        samples (int, optional): Angle count for the sampled range path.
        self_adjoint (bool): Draw self-adjoint samples only.

    Returns:
        SymmetryProbeReport: Trial and failure counts.
    """
    T = _require_nonzero(T)
    n = T.shape[0]
    subspace = norm_attainment_subspace(T, tol)
    rng = np.random.default_rng(seed)
    failures, first = 0, None
    for _ in range(trials):
        A = gaussian_matrix(n, n, rng, np.iscomplexobj(T))
        if self_adjoint:
            A = (A + A.conj().T) / 2
        A = midpoint_shift(T, A, tol, samples, subspace)
        if not is_rho_orthogonal(A, T, tol, samples, norm_A=subspace.sigma_max).rho_orthogonal:
            failures += 1
            if first is None:
                first = A
    logging.info(f"Left symmetry probe: {failures} failures in {trials} trials (seed {seed}).")
    return SymmetryProbeReport(trials, failures, first)


def shift_to_partner(T, A, tol=DEFAULT_TOLERANCES, samples=None, norm_T=None):
    """
    Shift A along T until A is rho-orthogonal to T.

    Shifting can move M_A, so the coefficient is iterated: a first step
    c = (rho'_+ + rho'_-)(A, T) / (2 |Tv|^2) for v in M_A, then secant steps on
    the accumulated shift. Each step decomposes the shifted operator once.

    Raises:
        ShiftFailed: If SHIFT_MAX_STEPS steps do not reach SHIFT_RESIDUAL.
    """
    if norm_T is None:
        norm_T = operator_norm(T, tol)
    shift, previous = 0.0, None
    current = A
    for _ in range(SHIFT_MAX_STEPS):
        if not np.any(current):
            raise ShiftFailed("Shift reached the zero operator.")
        subspace = norm_attainment_subspace(current, tol)
        report = rho_operator(current, T, tol, samples, subspace=subspace)
        residual = report.rho_plus + report.rho_minus
        if abs(residual) <= SHIFT_RESIDUAL * subspace.sigma_max * norm_T:
            return current
        if previous is not None and residual != previous[1]:
            step = -residual * (shift - previous[0]) / (residual - previous[1])
        else:
            v = subspace.basis[:, 0]
            weight = float(np.linalg.norm(T @ v) ** 2)
            if weight <= tol.tol_resid * norm_T ** 2:
                raise ShiftFailed("T vanishes on M_A; the shift cannot move the extent.")
            step = residual / (2 * weight)
        previous = (shift, residual)
        shift += step
        current = A - shift * T
    raise ShiftFailed(f"Shift did not converge in {SHIFT_MAX_STEPS} steps.")


def probe_right_symmetry(T, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, tol=DEFAULT_TOLERANCES,
                         samples=None, candidates=()):
    """
    Count A with A rho-orthogonal to T but T not rho-orthogonal to A.

    Candidates are tested first, then Gaussian samples. Each is moved by
    shift_to_partner; samples whose shift fails are discarded and redrawn, at
    most SHIFT_REDRAW_FACTOR times per trial.

    Args:
        T (np.ndarray): Nonzero square operator.
        trials (int): Number of partners to test.
        seed (int): Seed of the generator.
        tol (Tolerances): Tolerances.
        samples (int, optional): Angle count for the sampled range path.
        candidates (iterable): Partners tested before random draws.

    Returns:
        SymmetryProbeReport: Trial, failure and discard counts.

    Raises:
        ShiftFailed: If the discard limit is exceeded.
    """
    T = _require_nonzero(T)
    n = T.shape[0]
    subspace = norm_attainment_subspace(T, tol)
    rng = np.random.default_rng(seed)
    pending = [np.asarray(candidate) for candidate in candidates]
    total = max(trials, len(pending))
    limit = SHIFT_REDRAW_FACTOR * max(total, 1)
    tested = failures = discarded = 0
    first = None
    while tested < total:
        A = pending.pop(0) if pending else gaussian_matrix(n, n, rng, np.iscomplexobj(T))
        if A.shape != T.shape:
            raise DimensionError(f"Candidate shape {A.shape} does not match {T.shape}.")
        try:
            A = shift_to_partner(T, A, tol, samples, subspace.sigma_max)
        except ShiftFailed as error:
            discarded += 1
            logging.warning(f"Right symmetry probe discarded a sample: {error}")
            if discarded > limit:
                logging.error(f"Right symmetry probe gave up after {discarded} discarded samples.")
                raise ShiftFailed(f"More than {limit} samples discarded.") from error
            continue
        tested += 1
        if not is_rho_orthogonal(T, A, tol, samples, subspace).rho_orthogonal:
            failures += 1
            if first is None:
                first = A
    logging.info(f"Right symmetry probe: {failures} failures in {tested} trials, {discarded} discarded (seed {seed}).")
    return SymmetryProbeReport(tested, failures, first, discarded)


def w_symmetry_equivalence(A, theta_samples=DEFAULT_SAMPLES, tol=DEFAULT_TOLERANCES):
    """
    Compare origin symmetry of W(A) with e^{i theta} I rho-orthogonal to A for every sampled theta.

    Args:
        A (np.ndarray): Square matrix, treated as complex.
        theta_samples (int): Even number of angles, at least 8.
        tol (Tolerances): tol_ortho_decision scaled by |A| for both tests.

    Returns:
        WSymmetry: Both booleans and the first angle at which orthogonality fails.
    """
    A = np.asarray(A).astype(complex)
    require_square(A)
    if theta_samples % 2 or theta_samples < 8:
        raise ValueError(f"Need an even number of at least 8 angles, got {theta_samples}.")
    norm_A = operator_norm(A, tol)
    if norm_A == 0:
        return WSymmetry(True, True, None)
    sample = numerical_range(A, theta_samples, tol)
    support = sample.support_values
    gap = np.max(np.abs(support - np.roll(support, -(theta_samples // 2))))
    w_symmetric = bool(gap <= tol.tol_ortho_decision * norm_A)

    identity = np.eye(A.shape[0], dtype=complex)
    unit_space = identity_subspace(A.shape[0], complex)
    failing = None
    for theta in sample.thetas:
        verdict = is_rho_orthogonal(np.exp(1j * theta) * identity, A, tol, subspace=unit_space, norm_A=norm_A)
        if not verdict.rho_orthogonal:
            failing = float(theta)
            break
    return WSymmetry(w_symmetric, failing is None, failing)


def identity_membership_in_S(A, tol=DEFAULT_TOLERANCES, samples=None):
    """
    Membership of A in S, the operators with A rho-orthogonal to I implying I rho-orthogonal to A.

    Random search for non-members is search_identity_nonmembers.
    """
    A = np.asarray(A)
    require_square(A)
    dtype = field_dtype(A)
    identity = np.eye(A.shape[0], dtype=dtype)
    if not is_rho_orthogonal(A, identity, tol, samples, norm_A=1.0).rho_orthogonal:
        return True
    return is_rho_orthogonal(identity, A, tol, samples, identity_subspace(A.shape[0], dtype)).rho_orthogonal


def search_identity_nonmembers(n, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, tol=DEFAULT_TOLERANCES,
                               complex_field=False):
    """Random search for operators outside S; each failure of the report is a non-member."""
    identity = np.eye(n, dtype=complex if complex_field else float)
    return probe_right_symmetry(identity, trials, seed, tol)


def self_adjoint_identity_probe(n, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, tol=DEFAULT_TOLERANCES,
                                complex_field=False):
    """
    Check that I rho-orthogonal to a self-adjoint A implies A rho-orthogonal to I.

    Each random self-adjoint A is shifted by the midpoint of its spectrum,
    which makes I rho-orthogonal to it.

    Returns:
        SymmetryProbeReport: Failures of A rho-orthogonal to I.
    """
    rng = np.random.default_rng(seed)
    dtype = complex if complex_field else float
    identity = np.eye(n, dtype=dtype)
    unit_space = identity_subspace(n, dtype)
    failures = discarded = 0
    first = None
    for _ in range(trials):
        A = gaussian_matrix(n, n, rng, complex_field)
        A = (A + A.conj().T) / 2
        eigenvalues = hermitian_eig(A, tol).eigenvalues
        A = A - (eigenvalues[0] + eigenvalues[-1]) / 2 * identity
        if not is_rho_orthogonal(identity, A, tol, subspace=unit_space).rho_orthogonal:
            discarded += 1
            logging.warning("Spectral midpoint shift did not give I rho-orthogonal to A.")
            continue
        if not is_rho_orthogonal(A, identity, tol, norm_A=1.0).rho_orthogonal:
            failures += 1
            if first is None:
                first = A
    logging.info(f"Self-adjoint identity probe: {failures} failures in {trials - discarded} trials.")
    return SymmetryProbeReport(trials - discarded, failures, first, discarded)


def default_lambda(k):
    """The sequence 1 - 1/(k + 1)."""
    return 1 - 1 / (k + 1)


def diagonal_truncation_study(lambdas=default_lambda, n_values=(50, 200, 1000, 2000), delta=DEFAULT_BAND,
                              weights=None, band="squared"):
    """
    Follow T = diag(l_k), A = diag(w_k) through finite truncations.

    For each N the decay value is the largest Re(l_k conj(w_k)) = Re<T e_k, A e_k>
    over the near-norming band of the N x N truncation, and the reverse value
    is Re<A e_m, T e_m> at the coordinate m where |w_m| is largest.

    Args:
        lambdas: Callable k -> l_k (k from 1) or a sequence of entries.
        n_values: Truncation sizes.
        delta (float): Band width.
        weights: Callable (k, l_k) -> w_k; defaults to l_k / k.
        band (str): "squared" keeps |l_k|^2 >= max |l_j|^2 - delta, "modulus"
            keeps |l_k| >= max |l_j| - delta.

    Returns:
        TruncationTable: One row per N.

    Raises:
        BadSequence: If |l_k| is not strictly increasing below 1 or l_1 = 0.
    """
    if band not in ("squared", "modulus"):
        raise ValueError(f"Unknown band {band!r}; expected 'squared' or 'modulus'.")
    if delta <= 0:
        raise ValueError(f"Band width must be positive, got {delta}.")
    sizes = [int(size) for size in n_values]
    if not sizes or min(sizes) < 1:
        raise ValueError("Truncation sizes must be positive.")
    largest = max(sizes)
    ks = np.arange(1, largest + 1)
    if callable(lambdas):
        values = np.array([lambdas(int(k)) for k in ks])
    else:
        values = np.asarray(lambdas)[:largest]
        if values.size < largest:
            raise BadSequence(f"Sequence has {values.size} entries, {largest} needed.")
    moduli = np.abs(values)
    if moduli[0] == 0 or np.any(moduli >= 1) or np.any(np.diff(moduli) <= 0):
        raise BadSequence("Moduli must increase strictly towards 1 from a nonzero start.")
    if weights is None:
        diagonal = values / ks
    else:
        diagonal = np.array([weights(int(k), value) for k, value in zip(ks, values)])
    forward = np.real(values * np.conj(diagonal))

    rows = []
    for size in sizes:
        top = moduli[:size].max()
        if band == "squared":
            in_band = moduli[:size] ** 2 >= top ** 2 - delta
        else:
            in_band = moduli[:size] >= top - delta
        m = int(np.argmax(np.abs(diagonal[:size])))
        reverse = float(np.real(diagonal[m] * np.conj(values[m])))
        rows.append(TruncationRow(size, int(in_band.sum()), float(forward[:size][in_band].max()), reverse))
    logging.info(f"Truncation study over N = {sizes} with {band} band {delta}.")
    return TruncationTable(tuple(rows), float(delta), band)
