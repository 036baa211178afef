from .api import OrthogonalityToolkit
from .linalg import DEFAULT_TOLERANCES, Tolerances
from .rho import is_rho_orthogonal, rho_operator
from .symmetry import left_witness, right_witness
