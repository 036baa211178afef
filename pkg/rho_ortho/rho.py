"""
Norm derivatives and the orthogonality predicates built on them.

For Hilbert vectors the norm is smooth away from zero, so both one-sided
derivatives rho'_+(x, y) and rho'_-(x, y) equal Re<y, x>. For operators they
are the ends of the real extent of the maximal numerical range W_T(A*T):
rho'_+(T, A) = sup Re W_T(A*T) and rho'_-(T, A) = inf Re W_T(A*T).

T is rho-orthogonal to A when rho'_+ + rho'_- vanishes, and Birkhoff-James
orthogonal when rho'_- <= 0 <= rho'_+. Both decisions use the tolerance
tol_ortho_decision scaled by |T| |A|.
"""

import logging
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import DimensionError, ZeroBasePoint, ZeroOperator
from .geometry import compressed_extent, maximal_numerical_range, norm_attainment_subspace, real_extent
from .linalg import DEFAULT_TOLERANCES, check_pair, inner, operator_norm


@dataclass(frozen=True)
class DerivativeReport:
    """
    One-sided norm derivatives at T in the direction A.

    Attributes:
        rho_plus (float): Right derivative rho'_+.
        rho_minus (float): Left derivative rho'_-.
        rho (float): Their mean rho'.
        norm_T (float): Norm of the base point.
    """

    rho_plus: float
    rho_minus: float
    rho: float
    norm_T: float

    @classmethod
    def from_bounds(cls, rho_plus, rho_minus, norm_T):
        return cls(float(rho_plus), float(rho_minus), (float(rho_plus) + float(rho_minus)) / 2, float(norm_T))

    @classmethod
    def zero(cls, norm_T=0.0):
        return cls(0.0, 0.0, 0.0, float(norm_T))

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class OrthogonalityVerdict:
    """
    Outcome of the rho- and Birkhoff-James orthogonality tests for one ordered pair.

    Attributes:
        rho_orthogonal (bool): Whether |rho'_+ + rho'_-| <= tol * scale.
        bj_orthogonal (bool): Whether rho'_- <= tol * scale and rho'_+ >= -tol * scale.
        report (DerivativeReport): The derivatives the decision was taken on.
        scale (float): |T| |A|, zero when either operator vanishes.
    """

    rho_orthogonal: bool
    bj_orthogonal: bool
    report: DerivativeReport
    scale: float

    def to_dict(self):
        return {
            "rho_orthogonal": self.rho_orthogonal,
            "bj_orthogonal": self.bj_orthogonal,
            "scale": self.scale,
            "report": self.report.to_dict(),
        }


def rho_vec(x, y, strict=False):
    """
    Norm derivatives of Hilbert vectors, rho'_+(x, y) = rho'_-(x, y) = Re<y, x>.

    Args:
        x: Base point.
        y: Direction.
        strict (bool): Raise on x = 0 instead of returning the zero report.

    Returns:
        DerivativeReport: Equal one-sided values with norm_T = |x|.

    Raises:
        ZeroBasePoint: If x = 0 in strict mode.
    """
    x = np.asarray(x).ravel()
    y = np.asarray(y).ravel()
    if x.shape != y.shape:
        raise DimensionError(f"Vector lengths differ: {x.size} and {y.size}.")
    norm = float(np.linalg.norm(x))
    if norm == 0:
        if strict:
            raise ZeroBasePoint("Norm derivatives at the zero vector requested in strict mode.")
        return DerivativeReport.zero()
    value = float(np.real(inner(y, x)))
    return DerivativeReport(value, value, value, norm)


def _operator_report(T, A, subspace, tol, samples):
    if samples is None:
        extent = compressed_extent(T, A, tol, subspace)
    else:
        extent = real_extent(maximal_numerical_range(T, A, tol, samples, subspace))
    return DerivativeReport.from_bounds(extent.hi, extent.lo, subspace.sigma_max)


def rho_operator(T, A, tol=DEFAULT_TOLERANCES, samples=None, strict=False, subspace=None):
    """
    Norm derivatives of the operator norm at T in the direction A.

    Args:
        T (np.ndarray): Base operator.
        A (np.ndarray): Direction, same shape as T.
        tol (Tolerances): Tolerances.
        samples (int, optional): Sample W_T(A*T) on this many angles; by default
            the extent is read off the compression directly.
        strict (bool): Raise on T = 0 instead of returning the zero report.
        subspace (NormAttainmentSubspace, optional): H0 of T when already known.

    Returns:
        DerivativeReport: rho'_+ and rho'_- as sup and inf of Re W_T(A*T).

    Raises:
        ZeroOperator: If T = 0 in strict mode.
    """
    T, A = check_pair(T, A)
    if subspace is None:
        if not np.any(T):
            if strict:
                raise ZeroOperator("Norm derivatives at the zero operator requested in strict mode.")
            return DerivativeReport.zero()
        subspace = norm_attainment_subspace(T, tol)
    return _operator_report(T, A, subspace, tol, samples)


def decide(report, scale, tol=DEFAULT_TOLERANCES):
    """Orthogonality verdict for computed derivatives at the given scale."""
    bound = tol.tol_ortho_decision * scale
    rho_orthogonal = abs(report.rho_plus + report.rho_minus) <= bound
    bj_orthogonal = report.rho_minus <= bound and report.rho_plus >= -bound
    return OrthogonalityVerdict(bool(rho_orthogonal), bool(bj_orthogonal), report, float(scale))


def is_rho_orthogonal(T, A, tol=DEFAULT_TOLERANCES, samples=None, subspace=None, norm_A=None):
    """
    Decide T rho-orthogonal to A (and Birkhoff-James orthogonal alongside).

    Pairs with T = 0 or A = 0 are orthogonal in both senses. Loops over many
    directions for one T pass its subspace, and loops over many base points
    for one A pass its norm.

    Args:
        T (np.ndarray): Base operator.
        A (np.ndarray): Direction.
        tol (Tolerances): tol_ortho_decision is scaled by |T| |A|.
        samples (int, optional): Angle count for the sampled range path.
        subspace (NormAttainmentSubspace, optional): H0 of T when already known.
        norm_A (float, optional): |A| when already known.

    Returns:
        OrthogonalityVerdict: Both verdicts with the derivatives used.
    """
    T, A = check_pair(T, A)
    if subspace is None and not np.any(T):
        return OrthogonalityVerdict(True, True, DerivativeReport.zero(), 0.0)
    if norm_A is None:
        norm_A = operator_norm(A, tol)
    if norm_A == 0:
        norm_T = operator_norm(T, tol) if subspace is None else subspace.sigma_max
        return OrthogonalityVerdict(True, True, DerivativeReport.zero(norm_T), 0.0)
    if subspace is None:
        subspace = norm_attainment_subspace(T, tol)
    return decide(_operator_report(T, A, subspace, tol, samples), subspace.sigma_max * norm_A, tol)


def is_bj_orthogonal(T, A, tol=DEFAULT_TOLERANCES, samples=None):
    """Birkhoff-James orthogonality, rho'_-(T, A) <= 0 <= rho'_+(T, A) within tolerance."""
    return is_rho_orthogonal(T, A, tol, samples).bj_orthogonal


def finite_difference_rho_plus(T, A, t, tol=DEFAULT_TOLERANCES):
    """
    One-sided difference quotient |T| (|T + tA| - |T|) / t approximating rho'_+(T, A).

    Raises:
        ValueError: If t is not positive.
    """
    if t <= 0:
        raise ValueError(f"Step must be positive, got {t}.")
    T, A = check_pair(T, A)
    norm = operator_norm(T, tol)
    return norm * (operator_norm(T + t * A, tol) - norm) / t


def finite_difference_rho_minus(T, A, t, tol=DEFAULT_TOLERANCES):
    """Left quotient |T| (|T - tA| - |T|) / (-t) approximating rho'_-(T, A); t must be positive."""
    if t <= 0:
        raise ValueError(f"Step must be positive, got {t}.")
    T, A = check_pair(T, A)
    norm = operator_norm(T, tol)
    return norm * (operator_norm(T - t * A, tol) - norm) / -t


def midpoint_shift(T, A, tol=DEFAULT_TOLERANCES, samples=None, subspace=None):
    """
    Shift A along T until T is rho-orthogonal to it.

    Subtracting cT moves W_T(A*T) by -c |T|^2 for real c, so
    c = (rho'_+ + rho'_-) / (2 |T|^2) centres the extent on the origin.

    Args:
        T (np.ndarray): Nonzero operator.
        A (np.ndarray): Operator to shift.
        tol (Tolerances): Tolerances.
        samples (int, optional): Angle count for the sampled range path.
        subspace (NormAttainmentSubspace, optional): H0 of T when already known.

    Returns:
        np.ndarray: A - cT, or A itself when already orthogonal.

    Raises:
        ZeroOperator: If T is zero.
    """
    T, A = check_pair(T, A)
    if subspace is None:
        if not np.any(T):
            raise ZeroOperator("Cannot shift along the zero operator.")
        subspace = norm_attainment_subspace(T, tol)
    norm_T = subspace.sigma_max
    report = _operator_report(T, A, subspace, tol, samples)
    if decide(report, norm_T * operator_norm(A, tol), tol).rho_orthogonal:
        return A
    c = (report.rho_plus + report.rho_minus) / (2 * norm_T ** 2)
    logging.debug(f"Midpoint shift c = {c:.6g}")
    return A - c * T
