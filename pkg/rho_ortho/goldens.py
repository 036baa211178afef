"""
Named reproductions of the known counterexamples and constructions.

Each golden recomputes its values from scratch and compares them with the
expected ones; a mismatch is reported through GoldenResult.passed, never raised.
"""

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from .geometry import compressed_extent
from .linalg import DEFAULT_TOLERANCES
from .linf import (extreme_sign_pair, is_rho_orthogonal_linf, operator_from_fixture, pointwise_witness_scan,
                   rho_pm_linf_vec)
from .rho import rho_operator
from .symmetry import diagonal_truncation_study, left_witness, right_witness

# Accuracy of the Hilbert space goldens; the l-infinity values are exact
HILBERT_ACCURACY = 1e-6

NECESSITY_T = {"space": "linf2", "images": {"(1,1)": [1, 0.5], "(1,-1)": [1, -0.5]}}
NECESSITY_A = {"space": "linf2", "images": {"(1,1)": [0.5, 0], "(1,-1)": [-1, 0]}}
SUFFICIENCY_T = {"space": "linf2", "images": {"(1,1)": [1, 0], "(-1,1)": [0.5, 1]}}
SUFFICIENCY_A = {"space": "linf2", "images": {"(1,1)": [1, 0], "(-1,1)": [0, -1]}}


@dataclass(frozen=True)
class GoldenResult:
    """
    Outcome of one golden reproduction.

    Attributes:
        name (str): Registry name.
        passed (bool): Whether every value matched.
        values (dict): Computed values.
        expected (dict): Expected values.
    """

    name: str
    passed: bool
    values: dict
    expected: dict

    def to_dict(self):
        return asdict(self)


def _verdict_label(orthogonal):
    return "rho-orthogonal" if orthogonal else "not rho-orthogonal"


def _close(value, target):
    return abs(value - target) <= HILBERT_ACCURACY


def linf_necessity(tol=DEFAULT_TOLERANCES):
    """Pointwise witness on a face of M_T although T is not rho-orthogonal to A."""
    T = operator_from_fixture(NECESSITY_T)
    A = operator_from_fixture(NECESSITY_A)
    verdict = is_rho_orthogonal_linf(T, A, tol)
    x0 = pointwise_witness_scan(T, A, tol=tol)
    values = {
        "rho_plus": verdict.report.rho_plus,
        "rho_minus": verdict.report.rho_minus,
        "verdict": _verdict_label(verdict.rho_orthogonal),
        "witness": None if x0 is None else [float(c) for c in x0],
        "image_norm": None if x0 is None else float(np.max(np.abs(A(x0)))),
    }
    expected = {"rho_plus": 0.5, "rho_minus": -1.0, "verdict": "not rho-orthogonal", "witness": [1.0, 1 / 3]}
    passed = (values["rho_plus"] == 0.5 and values["rho_minus"] == -1.0 and not verdict.rho_orthogonal
              and x0 is not None and np.allclose(x0, expected["witness"], atol=1e-9))
    return GoldenResult("linf-necessity", bool(passed), values, expected)


def linf_sufficiency(tol=DEFAULT_TOLERANCES):
    """T rho-orthogonal to A on l-infinity^2 while T(1,1) is not rho-orthogonal to A(1,1)."""
    T = operator_from_fixture(SUFFICIENCY_T)
    A = operator_from_fixture(SUFFICIENCY_A)
    verdict = is_rho_orthogonal_linf(T, A, tol)
    corner = np.array([1.0, 1.0])
    pointwise = rho_pm_linf_vec(T(corner), A(corner)).rho
    pair = extreme_sign_pair(T, A, tol)
    values = {
        "rho_plus": verdict.report.rho_plus,
        "rho_minus": verdict.report.rho_minus,
        "verdict": _verdict_label(verdict.rho_orthogonal),
        "rho_at_corner": pointwise,
        "sign_pair": None if pair is None else [[float(c) for c in x] for x in pair],
    }
    expected = {"rho_plus": 1.0, "rho_minus": -1.0, "verdict": "rho-orthogonal", "rho_at_corner": 1.0}
    passed = (values["rho_plus"] == 1.0 and values["rho_minus"] == -1.0 and verdict.rho_orthogonal
              and pointwise == 1.0 and pair is not None)
    return GoldenResult("linf-sufficiency", bool(passed), values, expected)


def left_isometry_3d(tol=DEFAULT_TOLERANCES):
    """Left witness for the identity on a 3-dimensional space."""
    T = np.eye(3)
    result = left_witness(T, tol)
    extent = compressed_extent(T, result.witness, tol)
    reverse = rho_operator(result.witness, T, tol)
    half = 1 / math.sqrt(2)
    values = {
        "construction_tag": result.construction_tag,
        "forward_extent": [extent.lo, extent.hi],
        "reverse_value": reverse.rho_plus,
    }
    expected = {"construction_tag": "left-isometry-case-I", "forward_extent": [-half, half], "reverse_value": half}
    passed = (_close(extent.lo, -half) and _close(extent.hi, half) and _close(reverse.rho_plus, half)
              and _close(reverse.rho_minus, half))
    return GoldenResult("left-isometry-3d", bool(passed), values, expected)


def right_diagonal_3d(tol=DEFAULT_TOLERANCES):
    """Right witness for diag(1, 1, 1/2)."""
    T = np.diag([1.0, 1.0, 0.5])
    result = right_witness(T, tol)
    extent = compressed_extent(T, result.witness, tol)
    top = 1 / (2 * math.sqrt(2))
    values = {
        "construction_tag": result.construction_tag,
        "forward_orthogonal": result.forward_verdict.rho_orthogonal,
        "reverse_orthogonal": result.reverse_verdict.rho_orthogonal,
        "reverse_extent": [extent.lo, extent.hi],
    }
    expected = {
        "construction_tag": "lemma-diagonal-case-I",
        "forward_orthogonal": True,
        "reverse_orthogonal": False,
        "reverse_extent": [0.0, top],
    }
    passed = (result.construction_tag == expected["construction_tag"] and _close(extent.lo, 0.0)
              and _close(extent.hi, top))
    return GoldenResult("right-diagonal-3d", bool(passed), values, expected)


def truncation(tol=DEFAULT_TOLERANCES):
    """Band values of diag(1 - 1/(k+1)) against diag((1 - 1/(k+1)) / k) for growing truncations."""
    table = diagonal_truncation_study()
    last = table.rows[-1]
    values = table.to_dict()
    expected = {"decreasing": True, "final_decay_at_most": 1e-3, "reverse_value": 0.25}
    passed = (table.is_decreasing() and last.decay_value <= 1e-3
              and all(_close(row.reverse_value, 0.25) for row in table.rows))
    return GoldenResult("truncation", bool(passed), values, expected)


GOLDENS = {
    "linf-necessity": linf_necessity,
    "linf-sufficiency": linf_sufficiency,
    "left-isometry-3d": left_isometry_3d,
    "right-diagonal-3d": right_diagonal_3d,
    "truncation": truncation,
}


def reproduce(name, tol=DEFAULT_TOLERANCES):
    """
    Run one named golden.

    Args:
        name (str): A key of GOLDENS.
        tol (Tolerances): Tolerances.

    Returns:
        GoldenResult: Values, expected values and the pass flag.

    Raises:
        ValueError: If the name is unknown.
    """
    if name not in GOLDENS:
        raise ValueError(f"Unknown golden {name!r}; choose from {', '.join(GOLDENS)}.")
    result = GOLDENS[name](tol)
    if result.passed:
        logging.info(f"Golden {name} reproduced.")
    else:
        logging.warning(f"Golden {name} does not match: {result.values}")
    return result
