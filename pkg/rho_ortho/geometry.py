"""
Norm attainment subspaces, numerical ranges and their real extents.

A numerical range is stored through its support function: for each angle
theta the top eigenpair (h, v) of Re(e^{-i theta} A) gives the support value
h(theta) and the boundary point <Av, v>. For an operator T the maximal
numerical range of A*T relative to T is the numerical range of the
compression of A*T to the top singular subspace H0 of T.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import DEFAULT_SAMPLES
from .exceptions import ZeroOperator
from .linalg import DEFAULT_TOLERANCES, check_pair, hermitian_eig, require_square, svd

NUMERICAL_RANGE = "numerical_range"
MAXIMAL_NUMERICAL_RANGE = "maximal_numerical_range"
MIN_SAMPLES = 8


@dataclass(frozen=True, eq=False)
class NormAttainmentSubspace:
    """
    Top singular subspace H0 of an operator; its unit sphere is the norm attainment set M_T.

    Attributes:
        basis (np.ndarray): Orthonormal columns spanning H0.
        sigma_max (float): The operator norm.
        full_space (bool): True when H0 is the whole space.
    """

    basis: np.ndarray
    sigma_max: float
    full_space: bool

    @property
    def dim(self):
        return self.basis.shape[1]


@dataclass(frozen=True, eq=False)
class RangeSample:
    """
    Sampled boundary of a numerical range.

    Attributes:
        thetas (np.ndarray): Uniform support angles on [0, 2 pi).
        boundary_points (np.ndarray): Complex boundary point per angle.
        support_values (np.ndarray): Support function h(theta) per angle.
        kind (str): NUMERICAL_RANGE or MAXIMAL_NUMERICAL_RANGE.
    """

    thetas: np.ndarray
    boundary_points: np.ndarray
    support_values: np.ndarray
    kind: str

    def rows(self):
        """Yield (theta, re, im, support) rows in angle order."""
        for theta, point, support in zip(self.thetas, self.boundary_points, self.support_values):
            yield float(theta), float(point.real), float(point.imag), float(support)

    def to_dict(self):
        return {
            "kind": self.kind,
            "samples": len(self.thetas),
            "extent": real_extent(self).to_dict(),
            "boundary": [{"theta": theta, "re": re, "im": im, "support": support}
                         for theta, re, im, support in self.rows()],
        }


@dataclass(frozen=True)
class RealExtent:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Extent lower bound {self.lo} exceeds upper bound {self.hi}.")

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def to_dict(self):
        return {"lo": self.lo, "hi": self.hi}


class Compression(NamedTuple):
    operator: np.ndarray
    subspace: NormAttainmentSubspace


def norm_attainment_subspace(T, tol=DEFAULT_TOLERANCES):
    """
    Span of the right singular vectors with sigma_i >= sigma_1 (1 - tol_attain).

    Args:
        T (np.ndarray): Operator.
        tol (Tolerances): tol_attain sets the relative attainment gap.

    Returns:
        NormAttainmentSubspace: Basis of H0 with the operator norm.

    Raises:
        ZeroOperator: If T is zero.
    """
    T = np.asarray(T)
    if not np.any(T):
        raise ZeroOperator("The zero operator has no norm attainment subspace.")
    sigma, right, _ = svd(T, tol)
    attaining = sigma >= sigma[0] * (1 - tol.tol_attain)
    basis = right[:, attaining]
    return NormAttainmentSubspace(basis, float(sigma[0]), basis.shape[1] == T.shape[1])


def identity_subspace(n, dtype=float):
    """H0 of any unimodular multiple of the n x n identity: the whole space at norm one."""
    return NormAttainmentSubspace(np.eye(n, dtype=dtype), 1.0, True)


def numerical_range(A, samples=DEFAULT_SAMPLES, tol=DEFAULT_TOLERANCES, kind=NUMERICAL_RANGE):
    """
    Sample the boundary of W(A) by its support function.

    For theta on the grid 2 pi j / samples the top eigenpair (h, v) of
    cos(theta) Re(A) + sin(theta) Im(A) gives h(theta) and the boundary
    point <Av, v>.

    Args:
        A (np.ndarray): Square matrix.
        samples (int): Number of angles, at least 8. Even counts put theta = pi on the grid.
        tol (Tolerances): Tolerances passed to the eigensolver.
        kind (str): Label stored on the sample.

    Returns:
        RangeSample: Boundary points and support values in angle order.

    Raises:
        ValueError: If samples is below 8.
    """
    A = np.asarray(A)
    require_square(A)
    if samples < MIN_SAMPLES:
        raise ValueError(f"At least {MIN_SAMPLES} boundary samples are needed, got {samples}.")
    if samples % 2:
        logging.warning(f"Odd sample count {samples}: theta = pi is off the grid, lower extent is approximate.")

    thetas = math.pi * (2 * np.arange(samples) / samples)
    if A.shape[0] == 1:
        z = complex(A[0, 0])
        points = np.full(samples, z, dtype=complex)
        return RangeSample(thetas, points, np.real(np.exp(-1j * thetas) * z), kind)

    real_part = (A + A.conj().T) / 2
    imag_part = (A - A.conj().T) / 2j
    points = np.empty(samples, dtype=complex)
    support = np.empty(samples)
    for j, theta in enumerate(thetas):
        spectrum = hermitian_eig(math.cos(theta) * real_part + math.sin(theta) * imag_part, tol)
        v = spectrum.eigenvectors[:, 0]
        support[j] = spectrum.eigenvalues[0]
        points[j] = np.vdot(v, A @ v)
    return RangeSample(thetas, points, support, kind)


def compression(T, A, tol=DEFAULT_TOLERANCES, subspace=None):
    """
    Compress A*T to the norm attainment subspace H0 of T.

    Args:
        T (np.ndarray): Nonzero operator.
        A (np.ndarray): Operator of the same shape.
        tol (Tolerances): Tolerances.
        subspace (NormAttainmentSubspace, optional): H0 of T when already known.

    Returns:
        Compression: K = B0* (A*T) B0 with the subspace; K = A*T when H0 is the whole space.
    """
    T, A = check_pair(T, A)
    if subspace is None:
        subspace = norm_attainment_subspace(T, tol)
    K = A.conj().T @ T
    if not subspace.full_space:
        K = subspace.basis.conj().T @ K @ subspace.basis
    return Compression(K, subspace)


def maximal_numerical_range(T, A, tol=DEFAULT_TOLERANCES, samples=DEFAULT_SAMPLES, subspace=None):
    """
    Maximal numerical range W_T(A*T), the numerical range of the compression of A*T to H0.

    Args:
        T (np.ndarray): Nonzero operator.
        A (np.ndarray): Operator of the same shape.
        tol (Tolerances): Tolerances.
        samples (int): Number of boundary angles.
        subspace (NormAttainmentSubspace, optional): H0 of T when already known.

    Returns:
        RangeSample: Sample with kind MAXIMAL_NUMERICAL_RANGE.

    Raises:
        ZeroOperator: If T is zero.
    """
    K, _ = compression(T, A, tol, subspace)
    return numerical_range(K, samples, tol, kind=MAXIMAL_NUMERICAL_RANGE)


def real_extent(sample):
    """
    Real extent [lo, hi] of a sampled range: hi = h(0) and lo = -h(pi).

    With an odd sample count theta = pi is not sampled and lo falls back to
    the smallest real part among the boundary points.
    """
    support = sample.support_values
    count = len(support)
    hi = float(support[0])
    if count % 2 == 0:
        lo = -float(support[count // 2])
    else:
        lo = float(np.min(sample.boundary_points.real))
    if lo > hi:
        # Degenerate range, rounding only
        lo = hi = (lo + hi) / 2
    return RealExtent(lo, hi)


def compressed_extent(T, A, tol=DEFAULT_TOLERANCES, subspace=None):
    """Real extent of W_T(A*T) from one eigendecomposition of the compression's Hermitian part."""
    K, _ = compression(T, A, tol, subspace)
    eigenvalues = hermitian_eig((K + K.conj().T) / 2, tol).eigenvalues
    return RealExtent(float(eigenvalues[-1]), float(eigenvalues[0]))


def project_theta(z, theta):
    """Pr_theta(z) = e^{i theta} (Re(z) cos(theta) + Im(z) sin(theta)), the projection onto the line L_theta."""
    z = complex(z)
    return complex(np.exp(1j * theta) * (z.real * math.cos(theta) + z.imag * math.sin(theta)))


def is_extent_symmetric(extent, scale, tol=DEFAULT_TOLERANCES):
    """
    Test whether an extent is symmetric about the origin.

    Args:
        extent (RealExtent): The extent.
        scale (float): Positive scale, normally |T| |A|.
        tol (Tolerances): tol_ortho_decision is the relative bound.

    Returns:
        bool: True iff |lo + hi| <= tol_ortho_decision * scale.
    """
    if scale <= 0:
        raise ValueError(f"Scale must be positive, got {scale}.")
    return abs(extent.lo + extent.hi) <= tol.tol_ortho_decision * scale


def numerical_radius(A, samples=DEFAULT_SAMPLES, tol=DEFAULT_TOLERANCES):
    """Numerical radius w(A), the largest modulus on the sampled boundary of W(A)."""
    A = np.asarray(A)
    if not np.any(A):
        return 0.0
    return float(np.max(np.abs(numerical_range(A, samples, tol).boundary_points)))
