"""
Dense linear algebra over real and complex scalars.

Matrices are plain numpy arrays: float dtypes are the real field, complex
dtypes the complex field. Everything rests on one cyclic Jacobi eigensolver
for Hermitian matrices; the SVD diagonalizes M*M with it and the polar
decomposition is read off the SVD.

The inner product is linear in the first slot and conjugate-linear in the
second, so inner(u, v) = sum(u_i * conj(v_i)).
"""

import logging
import math
from dataclasses import dataclass, fields, replace
from typing import NamedTuple

import numpy as np

from .config import JACOBI_MAX_SWEEPS, JACOBI_RELATIVE_OFF, SVD_RANK_CUTOFF
from .exceptions import DimensionError, MatrixFormatError, NoConvergence, NotHermitian


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances shared by every computation.

    Attributes:
        tol_resid (float): Relative residual bound for decompositions.
        tol_orth (float): Bound on deviation from orthonormality.
        tol_unit (float): Bound on deviation of unit vectors from norm one.
        tol_attain (float): Relative gap below sigma_1 still counted as norm attaining.
        tol_ortho_decision (float): Orthogonality decision tolerance, scaled by norms where used.
    """

    tol_resid: float = 1e-10
    tol_orth: float = 1e-10
    tol_unit: float = 1e-10
    tol_attain: float = 1e-8
    tol_ortho_decision: float = 1e-8

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, (int, float)) or not 0.0 <= value <= 1e-2:
                raise ValueError(f"Tolerance {field.name}={value!r} must lie in [0, 1e-2].")

    def with_decision(self, tol):
        """Return a copy with a different orthogonality decision tolerance."""
        return replace(self, tol_ortho_decision=tol)

    def to_dict(self):
        return {field.name: getattr(self, field.name) for field in fields(self)}


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """
    Spectrum of a Hermitian matrix.

    Attributes:
        eigenvalues (np.ndarray): Real eigenvalues in descending order.
        eigenvectors (np.ndarray): Orthonormal eigenvectors as columns, matching eigenvalues.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class SingularValueDecomposition(NamedTuple):
    singular_values: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray


class PolarDecomposition(NamedTuple):
    unitary: np.ndarray
    positive: np.ndarray


def inner(u, v):
    """Inner product <u, v>, conjugate-linear in v."""
    return np.vdot(v, u)


def field_dtype(*matrices):
    """Complex if any operand is complex, float otherwise."""
    return complex if any(np.iscomplexobj(m) for m in matrices) else float


def as_matrix(data, field=None):
    """
    Coerce nested sequences or arrays to a finite 2-D float or complex array.

    Args:
        data: Array-like matrix entries.
        field (str, optional): 'real' or 'complex' to force the scalar field.

    Returns:
        np.ndarray: The matrix.

    Raises:
        DimensionError: If the data is not two-dimensional.
        MatrixFormatError: If entries are not finite, or complex entries are forced real.
    """
    matrix = np.array(data)
    if matrix.ndim != 2 or matrix.size == 0:
        raise DimensionError(f"Expected a nonempty 2-D matrix, got shape {matrix.shape}.")
    if np.iscomplexobj(matrix):
        matrix = matrix.astype(complex)
    else:
        try:
            matrix = matrix.astype(float)
        except (TypeError, ValueError) as error:
            raise MatrixFormatError(f"Matrix entries are not numeric: {error}") from error
    if not np.all(np.isfinite(matrix)):
        raise MatrixFormatError("Matrix entries must be finite.")
    if field == 'real':
        if np.iscomplexobj(matrix):
            if np.any(matrix.imag != 0):
                raise MatrixFormatError("Complex entries cannot be used in the real field.")
            matrix = matrix.real.copy()
    elif field == 'complex':
        matrix = matrix.astype(complex)
    elif field is not None:
        raise ValueError(f"Unknown field {field!r}; expected 'real' or 'complex'.")
    return matrix


def _parse_entry(entry, field):
    if isinstance(entry, bool):
        raise MatrixFormatError(f"Boolean matrix entry {entry!r}.")
    if isinstance(entry, (int, float)):
        if field == 'complex':
            raise MatrixFormatError("Complex matrices need [re, im] entries.")
        return complex(entry, 0.0)
    if isinstance(entry, (list, tuple)) and len(entry) == 2 \
            and all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in entry):
        re, im = entry
        if field == 'real' and im != 0:
            raise MatrixFormatError(f"Real matrix entry has imaginary part {im}.")
        return complex(re, im)
    raise MatrixFormatError(f"Malformed matrix entry {entry!r}.")


def matrix_from_json(document):
    """
    Decode the library-wide matrix JSON document.

    The document reads {"rows": n, "cols": m, "field": "real"|"complex",
    "entries": [[re, im], ...]} in row-major order; real matrices may list
    bare numbers.

    Args:
        document (dict): Parsed JSON object.

    Returns:
        np.ndarray: Float matrix for the real field, complex matrix otherwise.

    Raises:
        MatrixFormatError: If the document does not follow the schema.
    """
    if not isinstance(document, dict):
        raise MatrixFormatError("Matrix document must be a JSON object.")
    try:
        rows, cols, entries = document["rows"], document["cols"], document["entries"]
    except KeyError as error:
        raise MatrixFormatError(f"Matrix document is missing {error}.") from error
    field = document.get("field", "real")
    if field not in ("real", "complex"):
        raise MatrixFormatError(f"Unknown field {field!r}.")
    if not all(isinstance(count, int) and not isinstance(count, bool) and count > 0 for count in (rows, cols)):
        raise MatrixFormatError("rows and cols must be positive integers.")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise MatrixFormatError(f"Expected {rows * cols} entries.")

    values = np.array([_parse_entry(entry, field) for entry in entries], dtype=complex).reshape(rows, cols)
    if not np.all(np.isfinite(values)):
        raise MatrixFormatError("Matrix entries must be finite.")
    return values.real.copy() if field == "real" else values


def matrix_to_json(matrix):
    """Encode a matrix as the library-wide JSON document."""
    matrix = np.asarray(matrix)
    rows, cols = matrix.shape
    return {
        "rows": rows,
        "cols": cols,
        "field": "complex" if np.iscomplexobj(matrix) else "real",
        "entries": [[float(z.real), float(z.imag)] for z in matrix.astype(complex).ravel()],
    }


def require_square(matrix):
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {matrix.shape}.")


def check_pair(T, A):
    """Return T and A as arrays, requiring square operators of equal size."""
    T, A = np.asarray(T), np.asarray(A)
    require_square(T)
    require_square(A)
    if T.shape != A.shape:
        raise DimensionError(f"Operator shapes differ: {T.shape} and {A.shape}.")
    return T, A


def _off_diagonal_mass(matrix):
    # Hermitian, so the strict upper triangle carries half the mass
    return math.sqrt(2.0) * np.linalg.norm(np.triu(matrix, 1))


def _rotate(work, vectors, p, q):
    """One complex Jacobi rotation annihilating work[p, q]."""
    apq = work[p, q]
    magnitude = abs(apq)
    if magnitude == 0.0:
        return
    phase = apq / magnitude
    # Phase-align the (p, q) entry, then a real rotation diagonalizes the block
    theta = 0.5 * math.atan2(2.0 * magnitude, float(np.real(work[q, q] - work[p, p])))
    c, s = math.cos(theta), math.sin(theta)
    turn = np.conj(phase)
    # Columns by G = [[c, s], [-s conj(phase), c conj(phase)]], rows by G*
    for matrix in (work, vectors):
        col_p, col_q = matrix[:, p].copy(), matrix[:, q].copy()
        matrix[:, p] = c * col_p - s * turn * col_q
        matrix[:, q] = s * col_p + c * turn * col_q
    row_p, row_q = work[p, :].copy(), work[q, :].copy()
    work[p, :] = c * row_p - s * phase * row_q
    work[q, :] = s * row_p + c * phase * row_q
    work[p, q] = 0
    work[q, p] = 0
    work[p, p] = np.real(work[p, p])
    work[q, q] = np.real(work[q, q])


def _normalize_phases(vectors):
    """Make the first nonzero coordinate of each column real and positive."""
    magnitudes = np.abs(vectors)
    first = np.argmax(magnitudes > 1e-12, axis=0)
    columns = np.arange(vectors.shape[1])
    lead = vectors[first, columns]
    size = magnitudes[first, columns]
    nonzero = size > 1e-12
    vectors[:, nonzero] = vectors[:, nonzero] * (np.conj(lead[nonzero]) / size[nonzero])
    return vectors


def hermitian_eig(matrix, tol=DEFAULT_TOLERANCES):
    """
    Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        matrix (np.ndarray): Square Hermitian matrix, real or complex.
        tol (Tolerances): Tolerances; tol_resid bounds the allowed asymmetry.

    Returns:
        EigenDecomposition: Descending eigenvalues with orthonormal eigenvectors.

    Raises:
        DimensionError: If the matrix is not square.
        NotHermitian: If the matrix differs from its adjoint beyond tol_resid.
        NoConvergence: If the sweep limit is exhausted.
    """
    matrix = np.asarray(matrix)
    require_square(matrix)
    n = matrix.shape[0]
    dtype = field_dtype(matrix)
    scale = np.linalg.norm(matrix)
    if scale == 0:
        return EigenDecomposition(np.zeros(n), np.eye(n, dtype=dtype))

    asymmetry = np.max(np.abs(matrix - matrix.conj().T))
    if asymmetry > tol.tol_resid * scale:
        logging.error(f"Eigensolver received a non-Hermitian {n}x{n} matrix (asymmetry {asymmetry:.3e}).")
        raise NotHermitian(f"Matrix deviates from its adjoint by {asymmetry:.3e}.")

    work = ((matrix + matrix.conj().T) / 2).astype(dtype)
    vectors = np.eye(n, dtype=dtype)
    threshold = JACOBI_RELATIVE_OFF * scale
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_diagonal_mass(work) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(work, vectors, p, q)
    else:
        if _off_diagonal_mass(work) > threshold:
            logging.error(f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps (n={n}).")
            raise NoConvergence(f"No convergence after {JACOBI_MAX_SWEEPS} sweeps.")

    eigenvalues = np.real(np.diag(work)).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return EigenDecomposition(eigenvalues[order], _normalize_phases(vectors[:, order]))


def _project_out(vector, basis):
    # Two passes of Gram-Schmidt
    for _ in range(2):
        for b in basis:
            vector = vector - b * np.vdot(b, vector)
    return vector


def complete_orthonormal(basis, dim, count, dtype=float):
    """
    Extend orthonormal vectors by `count` further orthonormal vectors.

    Args:
        basis (list): Orthonormal vectors of length dim.
        dim (int): Ambient dimension.
        count (int): Number of vectors to add.
        dtype: Scalar type of the new vectors.

    Returns:
        list: The added vectors.
    """
    current = list(basis)
    added = []
    for _ in range(count):
        candidates = [_project_out(np.eye(dim, dtype=dtype)[:, j], current) for j in range(dim)]
        best = max(candidates, key=np.linalg.norm)
        best = _project_out(best / np.linalg.norm(best), current)
        best = best / np.linalg.norm(best)
        current.append(best)
        added.append(best)
    return added


def svd(matrix, tol=DEFAULT_TOLERANCES):
    """
    Singular value decomposition through the eigendecomposition of M*M.

    Left vectors are M v_i / sigma_i; those belonging to singular values below
    SVD_RANK_CUTOFF * sigma_1 are completed by orthonormalization, so the left
    factor is always a full set of orthonormal columns.

    Args:
        matrix (np.ndarray): Matrix to decompose.
        tol (Tolerances): Tolerances passed to the eigensolver.

    Returns:
        SingularValueDecomposition: Descending singular values, right and left vectors
        as columns, with matrix @ right[:, i] = sigma[i] * left[:, i].
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise DimensionError(f"Expected a 2-D matrix, got shape {matrix.shape}.")
    rows, cols = matrix.shape
    rank = min(rows, cols)
    dtype = field_dtype(matrix)

    gram = matrix.conj().T @ matrix
    spectrum = hermitian_eig((gram + gram.conj().T) / 2, tol)
    right = spectrum.eigenvectors[:, :rank]
    # Image norms stay accurate for small singular values
    sigma = np.linalg.norm(matrix @ right, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, right = sigma[order], right[:, order]

    cutoff = SVD_RANK_CUTOFF * sigma[0]
    left = []
    for i in range(rank):
        if sigma[i] == 0 or sigma[i] <= cutoff:
            break
        u = _project_out(matrix @ right[:, i] / sigma[i], left)
        left.append(u / np.linalg.norm(u))
    left += complete_orthonormal(left, rows, rank - len(left), dtype)
    return SingularValueDecomposition(sigma, right, np.column_stack(left).astype(dtype))


def operator_norm(matrix, tol=DEFAULT_TOLERANCES):
    """Spectral norm, the largest singular value."""
    matrix = np.asarray(matrix)
    if not np.any(matrix):
        return 0.0
    return float(svd(matrix, tol).singular_values[0])


def polar_decompose(matrix, tol=DEFAULT_TOLERANCES):
    """
    Polar decomposition S = U P with U unitary and P = (S*S)^(1/2).

    U stays unitary for singular S because the SVD completes the left vectors
    on the kernel.

    Args:
        matrix (np.ndarray): Square matrix S.
        tol (Tolerances): Tolerances passed to the SVD.

    Returns:
        PolarDecomposition: The unitary and positive semidefinite factors.
    """
    matrix = np.asarray(matrix)
    require_square(matrix)
    sigma, right, left = svd(matrix, tol)
    unitary = left @ right.conj().T
    positive = (right * sigma) @ right.conj().T
    positive = (positive + positive.conj().T) / 2
    return PolarDecomposition(unitary, positive)


def is_isometry(matrix, tol=DEFAULT_TOLERANCES):
    """
    Test whether T is a scalar multiple of an isometry.

    Args:
        matrix (np.ndarray): Square operator T.
        tol (Tolerances): tol_resid bounds |T*T - |T|^2 I| relative to |T|^2.

    Returns:
        bool: True iff T*T is |T|^2 times the identity within tolerance; False for T = 0.
    """
    matrix = np.asarray(matrix)
    require_square(matrix)
    norm = operator_norm(matrix, tol)
    if norm == 0:
        return False
    deviation = np.max(np.abs(matrix.conj().T @ matrix - norm ** 2 * np.eye(matrix.shape[0])))
    return bool(deviation <= tol.tol_resid * norm ** 2)


def gaussian_matrix(rows, cols, rng, complex_field=False):
    """Matrix with independent standard Gaussian entries."""
    matrix = rng.standard_normal((rows, cols))
    if complex_field:
        matrix = matrix + 1j * rng.standard_normal((rows, cols))
    return matrix


def random_unitary(n, rng, complex_field=False):
    """Random unitary (orthogonal in the real field) as a product of Householder reflections."""
    unitary = np.eye(n, dtype=complex if complex_field else float)
    for _ in range(n):
        v = gaussian_matrix(n, 1, rng, complex_field)[:, 0]
        v = v / np.linalg.norm(v)
        unitary = unitary - 2.0 * np.outer(v, v.conj() @ unitary)
    return unitary
