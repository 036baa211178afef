"""
Invariant checks run by `rho_ortho selftest`.

Every check draws its operators from a seeded generator, so a run is
reproducible. Counts are kept small enough for an interactive run; the probe
commands of the CLI reach the full sizes.
"""

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from .config import DEFAULT_SEED
from .exceptions import RhoOrthoError
from .geometry import (compressed_extent, compression, maximal_numerical_range, norm_attainment_subspace,
                       project_theta, real_extent)
from .goldens import GOLDENS
from .linalg import (DEFAULT_TOLERANCES, gaussian_matrix, hermitian_eig, operator_norm, polar_decompose,
                     random_unitary, svd)
from .linf import (LinfOperator, extreme_sign_pair, is_rho_orthogonal_linf, mt_ext, rho_pm_linf_op,
                   rho_pm_linf_vec)
from .rho import (decide, finite_difference_rho_minus, finite_difference_rho_plus, is_rho_orthogonal, midpoint_shift,
                  rho_operator, rho_vec)
from .symmetry import (left_witness, probe_left_symmetry, probe_right_symmetry, right_witness,
                       self_adjoint_identity_probe, w_symmetry_equivalence)

DEFAULT_CHECK_TRIALS = 20
FINITE_DIFFERENCE_STEP = 1e-6
FINITE_DIFFERENCE_ACCURACY = 1e-4
LINF_DIFFERENCE_STEP = 1e-7
LINF_DIFFERENCE_ACCURACY = 1e-5
# Random unit vectors per sphere-sampling check
UNIT_SAMPLES = 1000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self):
        return asdict(self)


def _random_pair(rng, n, complex_field):
    return gaussian_matrix(n, n, rng, complex_field), gaussian_matrix(n, n, rng, complex_field)


def _scaled_orthogonal_2d(rng):
    angle = rng.uniform(0, 2 * math.pi)
    rotation = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    if rng.random() < 0.5:
        rotation = rotation @ np.diag([1.0, -1.0])
    return rng.uniform(0.5, 2.0) * rotation


def check_goldens(rng, trials, tol):
    failed = [name for name, golden in GOLDENS.items() if not golden(tol).passed]
    return not failed, f"failed: {failed}" if failed else f"{len(GOLDENS)} goldens reproduced"


def check_homogeneity(rng, trials, tol):
    """rho'_+(aT, bA) = ab rho'_+(T, A) for ab >= 0, ab rho'_-(T, A) otherwise; rho'(zT, zA) = |z|^2 rho'(T, A)."""
    for _ in range(trials):
        T, A = _random_pair(rng, 3, True)
        scale = operator_norm(T, tol) * operator_norm(A, tol)
        a, b = rng.uniform(0.1, 2, size=2) * rng.choice((-1, 1), size=2)
        base = rho_operator(T, A, tol)
        scaled = rho_operator(a * T, b * A, tol)
        expected = a * b * (base.rho_plus if a * b >= 0 else base.rho_minus)
        if abs(scaled.rho_plus - expected) > 1e-8 * abs(a * b) * scale:
            return False, f"real homogeneity broken for a={a:.3f}, b={b:.3f}"
        z = complex(*rng.uniform(0.1, 2, size=2))
        rotated = rho_operator(z * T, z * A, tol)
        if abs(rotated.rho - abs(z) ** 2 * base.rho) > 1e-8 * abs(z) ** 2 * scale:
            return False, f"complex homogeneity broken for z={z:.3f}"
    return True, f"{trials} pairs"


def check_unitary_invariance(rng, trials, tol):
    for _ in range(trials):
        T, A = _random_pair(rng, 3, True)
        U, V = random_unitary(3, rng, True), random_unitary(3, rng, True)
        base = rho_operator(T, A, tol)
        moved = rho_operator(U @ T @ V, U @ A @ V, tol)
        scale = operator_norm(T, tol) * operator_norm(A, tol)
        if abs(base.rho_plus - moved.rho_plus) > 1e-8 * scale or abs(base.rho_minus - moved.rho_minus) > 1e-8 * scale:
            return False, "derivatives change under unitary conjugation"
    return True, f"{trials} pairs"


def check_finite_differences(rng, trials, tol):
    for _ in range(trials):
        n = int(rng.integers(2, 6))
        T, A = _random_pair(rng, n, bool(rng.integers(2)))
        report = rho_operator(T, A, tol)
        scale = operator_norm(T, tol) * operator_norm(A, tol)
        plus = finite_difference_rho_plus(T, A, FINITE_DIFFERENCE_STEP, tol)
        minus = finite_difference_rho_minus(T, A, FINITE_DIFFERENCE_STEP, tol)
        if abs(plus - report.rho_plus) > FINITE_DIFFERENCE_ACCURACY * scale \
                or abs(minus - report.rho_minus) > FINITE_DIFFERENCE_ACCURACY * scale:
            return False, f"difference quotients disagree at n={n}"
        verdict = is_rho_orthogonal(T, A, tol)
        bound = tol.tol_ortho_decision * scale
        if verdict.bj_orthogonal != (report.rho_minus <= bound and report.rho_plus >= -bound):
            return False, "Birkhoff-James verdict disagrees with the sign conditions"
    return True, f"{trials} pairs"


def check_rho_implies_bj(rng, trials, tol):
    """Every rho-orthogonal pair, drawn or shifted, is Birkhoff-James orthogonal."""
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        T, A = _random_pair(rng, n, bool(rng.integers(2)))
        drawn = is_rho_orthogonal(T, A, tol)
        if drawn.rho_orthogonal and not drawn.bj_orthogonal:
            return False, f"drawn pair is rho- but not Birkhoff-James orthogonal at n={n}"
        shifted = is_rho_orthogonal(T, midpoint_shift(T, A, tol), tol)
        if not (shifted.rho_orthogonal and shifted.bj_orthogonal):
            return False, "shifted pair is not orthogonal in both senses"
    return True, f"{2 * trials} pairs"


def check_singleton_attainment(rng, trials, tol):
    """With M_T = {x0} up to scalars, T rho-orthogonal to A iff Re<Ax0, Tx0> = 0."""
    for _ in range(trials):
        T, A = _random_pair(rng, 3, True)
        subspace = norm_attainment_subspace(T, tol)
        if subspace.dim != 1:
            continue
        x0 = subspace.basis[:, 0]
        for B in (A, midpoint_shift(T, A, tol)):
            scale = subspace.sigma_max * operator_norm(B, tol)
            pointwise = decide(rho_vec(T @ x0, B @ x0), scale, tol)
            if is_rho_orthogonal(T, B, tol).rho_orthogonal != pointwise.rho_orthogonal:
                return False, "operator and pointwise verdicts differ on a singleton M_T"
    return True, f"{trials} pairs"


def check_pointwise_sufficiency(rng, trials, tol):
    """Tx rho-orthogonal to Ax on all of M_T gives T rho-orthogonal to A."""
    for _ in range(trials):
        U, V = random_unitary(3, rng, True), random_unitary(3, rng, True)
        T = U @ np.diag([2.0, 2.0, 1.0]) @ V
        basis = norm_attainment_subspace(T, tol).basis
        K = gaussian_matrix(basis.shape[1], basis.shape[1], rng, True)
        A = T @ basis @ (K - K.conj().T) @ basis.conj().T
        x = basis @ gaussian_matrix(basis.shape[1], 1, rng, True)[:, 0]
        x = x / np.linalg.norm(x)
        scale = 2 * operator_norm(A, tol)
        if not decide(rho_vec(T @ x, A @ x), scale, tol).rho_orthogonal:
            return False, "constructed direction is not pointwise orthogonal on M_T"
        if not is_rho_orthogonal(T, A, tol).rho_orthogonal:
            return False, "pointwise orthogonality on M_T did not give operator orthogonality"
    return True, f"{trials} pairs"


def check_self_adjoint_identity(rng, trials, tol):
    report = self_adjoint_identity_probe(3, trials, int(rng.integers(2 ** 31)), tol, complex_field=True)
    return report.failures == 0, f"{report.failures} failures in {report.trials} trials"


def check_two_dimensional_isometries(rng, trials, tol):
    for _ in range(max(trials // 10, 1)):
        T = _scaled_orthogonal_2d(rng)
        seed = int(rng.integers(2 ** 31))
        left = probe_left_symmetry(T, 10, seed, tol)
        right = probe_right_symmetry(T, 10, seed, tol)
        if left.failures or right.failures:
            return False, "a scaled planar isometry failed a symmetry probe"
        if left_witness(T, tol) is not None or right_witness(T, tol) is not None:
            return False, "a witness was returned for a scaled planar isometry"
    return True, f"{max(trials // 10, 1)} operators"


def check_witnesses(rng, trials, tol):
    for _ in range(trials):
        n = int(rng.integers(3, 7))
        T = gaussian_matrix(n, n, rng, bool(rng.integers(2)))
        if left_witness(T, tol) is None or right_witness(T, tol) is None:
            return False, f"no witness for a random {n}x{n} operator"
    return True, f"{trials} operators"


def check_w_symmetry(rng, trials, tol):
    for index in range(trials):
        n = int(rng.integers(1, 4))
        if index % 2:
            B = gaussian_matrix(n, n, rng, True)
            A = np.block([[B, np.zeros((n, n))], [np.zeros((n, n)), -B]])
        else:
            A = gaussian_matrix(2 * n, 2 * n, rng, True)
        result = w_symmetry_equivalence(A, 16, tol)
        if result.w_symmetric != result.all_theta_orthogonal:
            return False, f"W(A) symmetry and identity orthogonality disagree for n={2 * n}"
    return True, f"{trials} matrices"


def check_eigen_residuals(rng, trials, tol):
    """Eigenpair residuals within tol_resid |M| and eigenvector Gram deviation within tol_orth."""
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        M = gaussian_matrix(n, n, rng, bool(rng.integers(2)))
        H = M + M.conj().T
        spectrum = hermitian_eig(H, tol)
        V, w = spectrum.eigenvectors, spectrum.eigenvalues
        residual = np.max(np.linalg.norm(H @ V - V * w, axis=0))
        if residual > tol.tol_resid * np.linalg.norm(H, 2):
            return False, f"eigenpair residual {residual:.3e} at n={n}"
        if np.max(np.abs(V.conj().T @ V - np.eye(n))) > tol.tol_orth:
            return False, f"eigenvectors not orthonormal at n={n}"
    return True, f"{trials} matrices"


def check_singular_values(rng, trials, tol):
    """sigma_1 bounds |Mv| on the unit sphere; a Hermitian M has singular values |lambda_i|."""
    for _ in range(trials):
        n = int(rng.integers(2, 6))
        complex_field = bool(rng.integers(2))
        M = gaussian_matrix(n, n, rng, complex_field)
        sigma = svd(M, tol).singular_values
        v = gaussian_matrix(n, UNIT_SAMPLES, rng, complex_field)
        images = np.linalg.norm(M @ (v / np.linalg.norm(v, axis=0)), axis=0)
        if np.max(images) > sigma[0] * (1 + 1e-12):
            return False, f"|Mv| = {np.max(images):.6g} exceeds sigma_1 = {sigma[0]:.6g}"
        H = M + M.conj().T
        absolute = np.sort(np.abs(hermitian_eig(H, tol).eigenvalues))[::-1]
        if np.max(np.abs(svd(H, tol).singular_values - absolute)) > 1e-10 * absolute[0]:
            return False, f"Hermitian singular values differ from |eigenvalues| at n={n}"
    return True, f"{trials} matrices"


def check_polar(rng, trials, tol):
    """U*U = I and P positive semidefinite with UP = S."""
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        S = gaussian_matrix(n, n, rng, True)
        if rng.random() < 0.5:
            S[:, 0] = 0
        unitary, positive = polar_decompose(S, tol)
        scale = np.linalg.norm(S, 2)
        if np.max(np.abs(unitary.conj().T @ unitary - np.eye(n))) > tol.tol_orth:
            return False, f"polar factor is not unitary at n={n}"
        if hermitian_eig(positive, tol).eigenvalues[-1] < -tol.tol_resid * scale:
            return False, f"positive factor has a negative eigenvalue at n={n}"
        if np.max(np.abs(unitary @ positive - S)) > 1e-10 * scale:
            return False, f"polar factors do not reproduce S at n={n}"
    return True, f"{trials} matrices"


def check_compression_identity(rng, trials, tol):
    """Re<Tx, Ax> = Re<Ky, y> for x = B0 y on the unit sphere of H0, inside the compressed extent."""
    for _ in range(trials):
        U, V = random_unitary(3, rng, True), random_unitary(3, rng, True)
        T = U @ np.diag([2.0, 2.0, 1.0]) @ V
        A = gaussian_matrix(3, 3, rng, True)
        K, subspace = compression(T, A, tol)
        extent = compressed_extent(T, A, tol, subspace)
        scale = subspace.sigma_max * operator_norm(A, tol)
        y = gaussian_matrix(subspace.dim, UNIT_SAMPLES, rng, True)
        y = y / np.linalg.norm(y, axis=0)
        x = subspace.basis @ y
        pointwise = np.real(np.sum((A @ x).conj() * (T @ x), axis=0))
        compressed = np.real(np.sum(y.conj() * (K @ y), axis=0))
        if np.max(np.abs(pointwise - compressed)) > 1e-10 * scale:
            return False, "quadratic form on H0 differs from the compression"
        if np.min(pointwise) < extent.lo - 1e-10 * scale or np.max(pointwise) > extent.hi + 1e-10 * scale:
            return False, "a point of W_T(A*T) lies outside the compressed extent"
    return True, f"{trials} pairs"


def check_range_extent(rng, trials, tol):
    """rho'_+ and rho'_- are the ends of Re W_T(A*T), and that extent is invariant under U*TU, U*AU."""
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        complex_field = bool(rng.integers(2))
        T, A = _random_pair(rng, n, complex_field)
        U = random_unitary(n, rng, complex_field)
        scale = operator_norm(T, tol) * operator_norm(A, tol)
        report = rho_operator(T, A, tol)
        sampled = real_extent(maximal_numerical_range(T, A, tol, 16))
        if abs(report.rho_plus - sampled.hi) > 1e-9 * scale or abs(report.rho_minus - sampled.lo) > 1e-9 * scale:
            return False, f"derivatives are not the ends of the sampled range at n={n}"
        moved = real_extent(maximal_numerical_range(U.conj().T @ T @ U, U.conj().T @ A @ U, tol, 16))
        if abs(moved.hi - sampled.hi) > 1e-8 * scale or abs(moved.lo - sampled.lo) > 1e-8 * scale:
            return False, f"range extent changes under unitary conjugation at n={n}"
    return True, f"{trials} pairs"


def check_extent_refinement(rng, trials, tol):
    """Refining the angle grid never shrinks the sampled range."""
    for _ in range(trials):
        T, A = _random_pair(rng, 3, True)
        coarse = maximal_numerical_range(T, A, tol, 8)
        for samples in (16, 64):
            fine = maximal_numerical_range(T, A, tol, samples)
            if np.max(fine.boundary_points.real) < np.max(coarse.boundary_points.real) - 1e-10 \
                    or np.min(fine.boundary_points.real) > np.min(coarse.boundary_points.real) + 1e-10:
                return False, f"sampled extent shrank from {len(coarse.thetas)} to {samples} angles"
            coarse = fine
    return True, f"{trials} pairs"


def check_projection(rng, trials, tol):
    """Pr_theta is idempotent and lands on the line through 0 and e^{i theta}."""
    for _ in range(trials):
        z = complex(*rng.standard_normal(2))
        theta = rng.uniform(0, 2 * math.pi)
        p = project_theta(z, theta)
        if abs(project_theta(p, theta) - p) > 1e-12 * abs(z):
            return False, f"projection is not idempotent at theta={theta:.4f}"
        if abs((p * np.exp(-1j * theta)).imag) > 1e-12 * abs(z):
            return False, f"projection leaves the line at theta={theta:.4f}"
    return True, f"{trials} points"


def _sup_norm_quotient(x, y, t):
    peak = np.max(np.abs(x))
    return peak * (np.max(np.abs(x + t * y)) - peak) / t


def _centred_linf(T, A, tol):
    report = rho_pm_linf_op(T, A, tol)
    return LinfOperator(A.matrix - (report.rho_plus + report.rho_minus) / (2 * T.norm ** 2) * T.matrix)


def check_linf_differences(rng, trials, tol):
    """rho'_+ and rho'_- on l-infinity^n against one-sided quotients of |x + ty| at t = +-1e-7."""
    count = 10 * trials
    for _ in range(count):
        n = int(rng.integers(2, 6))
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        report = rho_pm_linf_vec(x, y)
        bound = LINF_DIFFERENCE_ACCURACY * np.max(np.abs(x)) * np.max(np.abs(y))
        if abs(_sup_norm_quotient(x, y, LINF_DIFFERENCE_STEP) - report.rho_plus) > bound \
                or abs(_sup_norm_quotient(x, y, -LINF_DIFFERENCE_STEP) - report.rho_minus) > bound:
            return False, f"difference quotients disagree at n={n}"
    return True, f"{count} pairs"


def check_linf_necessity(rng, trials, tol):
    """T rho-orthogonal to A on l-infinity^n gives sign vectors x, y in M_T with rho'(Tx, Ax) >= 0 >= rho'(Ty, Ay)."""
    for _ in range(trials):
        n = int(rng.integers(2, 4))
        T = LinfOperator(rng.standard_normal((n, n)))
        A = _centred_linf(T, LinfOperator(rng.standard_normal((n, n))), tol)
        if not is_rho_orthogonal_linf(T, A, tol).rho_orthogonal:
            return False, f"centred direction is not orthogonal at n={n}"
        if extreme_sign_pair(T, A, tol) is None:
            return False, f"no sign pair of opposite derivatives at n={n}"
    return True, f"{trials} pairs"


def check_linf_pointwise_sufficiency(rng, trials, tol):
    """rho'(Tx, Ax) = 0 on every norm-attaining sign vector gives T rho-orthogonal to A."""
    checked = 0
    for _ in range(trials):
        T = LinfOperator(rng.standard_normal((2, 2)))
        A = _centred_linf(T, LinfOperator(rng.standard_normal((2, 2))), tol)
        bound = tol.tol_ortho_decision * T.norm * A.norm
        if any(abs(rho_pm_linf_vec(T(x), A(x)).rho) > bound for x in mt_ext(T, tol)):
            continue
        checked += 1
        if not is_rho_orthogonal_linf(T, A, tol).rho_orthogonal:
            return False, "pointwise orthogonality on M_T did not give operator orthogonality"
    return True, f"{checked} pairs"


def check_predicate_homogeneity(rng, trials, tol):
    """aT rho-orthogonal to bA exactly when T is rho-orthogonal to A, for real nonzero a, b."""
    for _ in range(trials):
        T, A = _random_pair(rng, 3, bool(rng.integers(2)))
        a, b = rng.uniform(0.1, 3, size=2) * rng.choice((-1, 1), size=2)
        for B in (A, midpoint_shift(T, A, tol)):
            base = is_rho_orthogonal(T, B, tol)
            scaled = is_rho_orthogonal(a * T, b * B, tol)
            if (base.rho_orthogonal, base.bj_orthogonal) != (scaled.rho_orthogonal, scaled.bj_orthogonal):
                return False, f"verdicts change under a={a:.3f}, b={b:.3f}"
    return True, f"{trials} pairs"


CHECKS = (
    ("eigen-residuals", check_eigen_residuals),
    ("singular-values", check_singular_values),
    ("polar-decomposition", check_polar),
    ("compression-identity", check_compression_identity),
    ("range-extent", check_range_extent),
    ("extent-refinement", check_extent_refinement),
    ("projection-idempotence", check_projection),
    ("linf-finite-differences", check_linf_differences),
    ("linf-necessity", check_linf_necessity),
    ("linf-pointwise-sufficiency", check_linf_pointwise_sufficiency),
    ("goldens", check_goldens),
    ("homogeneity", check_homogeneity),
    ("predicate-homogeneity", check_predicate_homogeneity),
    ("unitary-invariance", check_unitary_invariance),
    ("finite-differences", check_finite_differences),
    ("rho-implies-bj", check_rho_implies_bj),
    ("singleton-attainment", check_singleton_attainment),
    ("pointwise-sufficiency", check_pointwise_sufficiency),
    ("self-adjoint-identity", check_self_adjoint_identity),
    ("planar-isometries", check_two_dimensional_isometries),
    ("witnesses", check_witnesses),
    ("w-symmetry", check_w_symmetry),
)


def run_selftest(trials=DEFAULT_CHECK_TRIALS, seed=DEFAULT_SEED, tol=DEFAULT_TOLERANCES):
    """
    Run every invariant check.

    Args:
        trials (int): Random cases per check.
        seed (int): Seed shared by all checks.
        tol (Tolerances): Tolerances.

    Returns:
        list: One CheckResult per check, in a fixed order.
    """
    results = []
    for name, check in CHECKS:
        rng = np.random.default_rng(seed)
        try:
            passed, detail = check(rng, trials, tol)
        except RhoOrthoError as error:
            logging.error(f"Self-test check {name} raised {type(error).__name__}: {error}")
            passed, detail = False, f"{type(error).__name__}: {error}"
        results.append(CheckResult(name, bool(passed), detail))
    logging.info(f"Self-test: {sum(r.passed for r in results)} of {len(results)} checks passed.")
    return results
