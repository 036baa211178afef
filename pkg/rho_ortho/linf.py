"""
Norm derivatives on real l-infinity^n.

The supporting functionals of x that are extreme points are the signed
coordinate functionals sgn(x_k) e*_k over the coordinates of maximal modulus,
so rho'_+(x, y) and rho'_-(x, y) are |x| times the largest and smallest value
of those functionals at y. For operators the derivatives are aggregated over
the sign vectors on which T attains its norm.
"""

import itertools
import logging
import re
from dataclasses import dataclass

import numpy as np

from .config import LINF_MAX_DIMENSION, LINF_TIE_TOLERANCE
from .exceptions import DimensionError, MatrixFormatError, UnsupportedDimension, ZeroOperator, ZeroVector
from .linalg import DEFAULT_TOLERANCES, as_matrix, matrix_to_json
from .rho import DerivativeReport, OrthogonalityVerdict, decide

_POINT_KEY = re.compile(r"^\(\s*([^()]+)\s*\)$")
# Edges of the unit square in scan order: fixed coordinate, fixed value
_SQUARE_FACES = ((0, 1.0), (1, 1.0), (0, -1.0), (1, -1.0))
_BISECTION_STEPS = 60


@dataclass(frozen=True)
class SupportFunctional:
    """The functional sign * e*_index on l-infinity^n; index is zero-based."""

    index: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"Functional sign must be +1 or -1, got {self.sign}.")

    def __call__(self, y):
        return self.sign * float(y[self.index])

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}e*_{self.index + 1}"


class LinfOperator:
    """
    Real operator on l-infinity^n acting by matrix-vector product.

    Attributes:
        matrix (np.ndarray): Real matrix of the operator.
    """

    def __init__(self, matrix):
        matrix = as_matrix(matrix)
        if np.iscomplexobj(matrix):
            raise MatrixFormatError("Operators on l-infinity are real.")
        self.matrix = matrix

    @property
    def dim(self):
        return self.matrix.shape[1]

    @property
    def norm(self):
        """Operator norm l-infinity to l-infinity, the largest absolute row sum."""
        return float(np.max(np.sum(np.abs(self.matrix), axis=1)))

    def __call__(self, x):
        return self.matrix @ np.asarray(x, dtype=float)

    def to_dict(self):
        return matrix_to_json(self.matrix)

    @classmethod
    def from_images(cls, points, images):
        """
        Build the operator sending each designated point to its image.

        Args:
            points: n points forming a basis, one per row.
            images: Their images, one per row.

        Returns:
            LinfOperator: The operator M with M p_i = q_i.

        Raises:
            MatrixFormatError: If the points are not a basis.
        """
        P = as_matrix(points, field='real')
        Q = as_matrix(images, field='real')
        if P.shape[0] != P.shape[1] or Q.shape[0] != P.shape[0]:
            raise DimensionError(f"Need n points and n images, got {P.shape} and {Q.shape}.")
        try:
            return cls(np.linalg.solve(P, Q).T)
        except np.linalg.LinAlgError as error:
            raise MatrixFormatError("Designated points do not form a basis.") from error


def _parse_point(key):
    match = _POINT_KEY.match(key.strip())
    if not match:
        raise MatrixFormatError(f"Malformed point key {key!r}.")
    try:
        return [float(part) for part in match.group(1).split(",")]
    except ValueError as error:
        raise MatrixFormatError(f"Malformed point key {key!r}.") from error


def operator_from_fixture(document):
    """
    Decode an operator given by images of designated points.

    The document reads {"space": "linf2", "images": {"(1,1)": [1, 0.5], ...}}.

    Raises:
        MatrixFormatError: If the fixture does not follow the format.
    """
    if not isinstance(document, dict) or "images" not in document:
        raise MatrixFormatError("Fixture must be an object with an 'images' map.")
    space = document.get("space", "")
    match = re.fullmatch(r"linf(\d+)", str(space))
    if not match:
        raise MatrixFormatError(f"Unknown fixture space {space!r}.")
    n = int(match.group(1))
    images = document["images"]
    if not isinstance(images, dict) or len(images) != n:
        raise MatrixFormatError(f"Space {space} needs exactly {n} designated points.")
    points = [_parse_point(key) for key in images]
    values = list(images.values())
    if any(len(p) != n for p in points) or any(not isinstance(v, list) or len(v) != n for v in values):
        raise MatrixFormatError(f"Points and images of {space} must have {n} coordinates.")
    return LinfOperator.from_images(points, values)


def as_linf(operator):
    return operator if isinstance(operator, LinfOperator) else LinfOperator(operator)


def ext_support_functionals(x):
    """
    Extreme supporting functionals of x: sgn(x_k) e*_k for every k with |x_k| = |x|.

    Ties are taken with relative tolerance LINF_TIE_TOLERANCE.

    Raises:
        ZeroVector: If x = 0.
    """
    x = np.asarray(x, dtype=float).ravel()
    peak = np.max(np.abs(x))
    if peak == 0:
        raise ZeroVector("The zero vector has no supporting functionals.")
    ties = np.flatnonzero(np.abs(x) >= peak * (1 - LINF_TIE_TOLERANCE))
    return [SupportFunctional(int(k), 1 if x[k] > 0 else -1) for k in ties]


def rho_pm_linf_vec(x, y, strict=False):
    """
    Norm derivatives on l-infinity^n at x in the direction y.

    Args:
        x: Base point.
        y: Direction.
        strict (bool): Raise on x = 0 instead of returning the zero report.

    Returns:
        DerivativeReport: |x| times the max and min of f(y) over the extreme functionals.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise DimensionError(f"Vector lengths differ: {x.size} and {y.size}.")
    if not np.any(x):
        if strict:
            raise ZeroVector("Norm derivatives at the zero vector requested in strict mode.")
        return DerivativeReport.zero()
    peak = float(np.max(np.abs(x)))
    values = [f(y) for f in ext_support_functionals(x)]
    return DerivativeReport.from_bounds(peak * max(values), peak * min(values), peak)


def mt_ext(T, tol=DEFAULT_TOLERANCES):
    """
    Sign vectors on which T attains its norm, the set M_T intersected with the extreme points of the ball.

    Args:
        T: LinfOperator or real matrix.
        tol (Tolerances): tol_attain is the relative attainment gap.

    Returns:
        list: Sign vectors eps with |T eps| >= |T| (1 - tol_attain).

    Raises:
        UnsupportedDimension: Above LINF_MAX_DIMENSION coordinates.
        ZeroOperator: If T = 0.
    """
    T = as_linf(T)
    if T.dim > LINF_MAX_DIMENSION:
        raise UnsupportedDimension(f"Sign enumeration is limited to n <= {LINF_MAX_DIMENSION}, got {T.dim}.")
    norm = T.norm
    if norm == 0:
        raise ZeroOperator("The zero operator attains its norm everywhere.")
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=T.dim)))
    image_norms = np.max(np.abs(signs @ T.matrix.T), axis=1)
    return [signs[i] for i in np.flatnonzero(image_norms >= norm * (1 - tol.tol_attain))]


def _check_linf_pair(T, A):
    T, A = as_linf(T), as_linf(A)
    if T.matrix.shape != A.matrix.shape:
        raise DimensionError(f"Operator shapes differ: {T.matrix.shape} and {A.matrix.shape}.")
    return T, A


def rho_pm_linf_op(T, A, tol=DEFAULT_TOLERANCES, strict=False):
    """
    Operator norm derivatives on l-infinity^n.

    rho'_+(T, A) is the largest rho'_+(Tx, Ax) and rho'_-(T, A) the smallest
    rho'_-(Tx, Ax) over the sign vectors x of mt_ext(T).

    Raises:
        ZeroOperator: If T = 0 in strict mode.
    """
    T, A = _check_linf_pair(T, A)
    if T.norm == 0:
        if strict:
            raise ZeroOperator("Norm derivatives at the zero operator requested in strict mode.")
        return DerivativeReport.zero()
    reports = [rho_pm_linf_vec(T(x), A(x)) for x in mt_ext(T, tol)]
    return DerivativeReport.from_bounds(max(r.rho_plus for r in reports),
                                        min(r.rho_minus for r in reports), T.norm)


def is_rho_orthogonal_linf(T, A, tol=DEFAULT_TOLERANCES):
    """Orthogonality verdict on l-infinity^n with the same decision rule as the Hilbert predicate."""
    T, A = _check_linf_pair(T, A)
    if T.norm == 0 or A.norm == 0:
        return OrthogonalityVerdict(True, True, DerivativeReport.zero(T.norm), 0.0)
    return decide(rho_pm_linf_op(T, A, tol), T.norm * A.norm, tol)


def extreme_sign_pair(T, A, tol=DEFAULT_TOLERANCES):
    """
    Sign vectors x, y in mt_ext(T) with rho'(Tx, Ax) >= 0 >= rho'(Ty, Ay) within tolerance.

    Such a pair exists whenever T is rho-orthogonal to A.

    Returns:
        tuple: (x, y), or None if no such pair exists.
    """
    T, A = _check_linf_pair(T, A)
    bound = tol.tol_ortho_decision * T.norm * A.norm
    points = mt_ext(T, tol)
    values = [rho_pm_linf_vec(T(x), A(x)).rho for x in points]
    upper = [x for x, value in zip(points, values) if value >= -bound]
    lower = [y for y, value in zip(points, values) if value <= bound]
    if not upper or not lower:
        return None
    return upper[0], lower[0]


def _pointwise_rho(T, A, xs):
    """rho'(Tx, Ax) for each row x of xs."""
    images = xs @ T.matrix.T
    directions = xs @ A.matrix.T
    peak = np.max(np.abs(images), axis=1)
    ties = np.abs(images) >= peak[:, None] * (1 - LINF_TIE_TOLERANCE)
    values = np.where(ties, np.sign(images) * directions, np.nan)
    return peak * (np.nanmax(values, axis=1) + np.nanmin(values, axis=1)) / 2


def _face_points(axis, value, s):
    points = np.empty((len(s), 2))
    points[:, axis] = value
    points[:, 1 - axis] = s
    return points


def pointwise_witness_scan(T, A, grid=10000, tol=DEFAULT_TOLERANCES):
    """
    Search the faces of the unit square inside M_T for x0 with Tx0 rho-orthogonal to Ax0.

    Each edge is sampled on `grid` points; sign changes of rho'(Tx, Ax)
    between neighbouring points of M_T are refined by bisection. Edges are
    scanned in the order x1 = 1, x2 = 1, x1 = -1, x2 = -1.

    Args:
        T: LinfOperator or real 2x2 matrix.
        A: Direction operator.
        grid (int): Points per edge.
        tol (Tolerances): tol_attain selects M_T, tol_ortho_decision accepts a zero.

    Returns:
        np.ndarray: The first witness found, or None.

    Raises:
        UnsupportedDimension: If n != 2.
        ZeroOperator: If T = 0.
    """
    T, A = _check_linf_pair(T, A)
    if T.dim != 2 or T.matrix.shape[0] != 2:
        raise UnsupportedDimension(f"The face scan is defined on l-infinity^2 only, got n = {T.dim}.")
    if grid < 2:
        raise ValueError(f"Grid needs at least 2 points, got {grid}.")
    norm = T.norm
    if norm == 0:
        raise ZeroOperator("The zero operator attains its norm everywhere.")
    bound = tol.tol_ortho_decision * norm * A.norm
    threshold = norm * (1 - tol.tol_attain)
    s = np.linspace(-1.0, 1.0, grid)

    for axis, value in _SQUARE_FACES:
        points = _face_points(axis, value, s)
        in_mt = np.max(np.abs(points @ T.matrix.T), axis=1) >= threshold
        rho = _pointwise_rho(T, A, points)
        for i in range(grid):
            if not in_mt[i]:
                continue
            if abs(rho[i]) <= bound:
                return points[i]
            if i + 1 < grid and in_mt[i + 1] and np.sign(rho[i]) != np.sign(rho[i + 1]):
                lo, hi = s[i], s[i + 1]
                for _ in range(_BISECTION_STEPS):
                    mid = (lo + hi) / 2
                    value_mid = _pointwise_rho(T, A, _face_points(axis, value, np.array([mid])))[0]
                    if np.sign(value_mid) == np.sign(rho[i]):
                        lo = mid
                    else:
                        hi = mid
                candidate = _face_points(axis, value, np.array([(lo + hi) / 2]))
                if abs(_pointwise_rho(T, A, candidate)[0]) <= bound:
                    return candidate[0]
    logging.info("Face scan found no pointwise rho-orthogonal witness.")
    return None
