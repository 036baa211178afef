"""
Package-wide defaults and logging setup.
"""

import os
import logging

CURRENT_DIR = os.path.dirname(__file__)
LOG_DIR = os.path.join(CURRENT_DIR, 'logs')
LOG_FILE_PATH = os.path.join(LOG_DIR, 'rho_ortho.log')
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# Boundary angles per numerical range sweep
DEFAULT_SAMPLES = 256
DEFAULT_SEED = 0
DEFAULT_TRIALS = 200
# Width of the near-norming band in the truncation study
DEFAULT_BAND = 1e-3

JACOBI_MAX_SWEEPS = 60
JACOBI_RELATIVE_OFF = 1e-14
# Singular values below this fraction of sigma_1 get completed left vectors
SVD_RANK_CUTOFF = 1e-12
# Relative tie tolerance for max-modulus coordinates in linf
LINF_TIE_TOLERANCE = 1e-12
LINF_MAX_DIMENSION = 12
SHIFT_MAX_STEPS = 32
# Residual |p + m| / (|A| |T|) at which the partner shift stops
SHIFT_RESIDUAL = 1e-12
# Redraws allowed per requested probe trial
SHIFT_REDRAW_FACTOR = 10
# Angles for witness verification; the re-check uses four times as many
WITNESS_SAMPLES = 16


def setup_logging(level=logging.INFO):
    """
    Route package logging to the log file.

    Args:
        level (int): Logging level passed to basicConfig.
    """
    os.makedirs(LOG_DIR, exist_ok=True)
    logging.basicConfig(level=level, filename=LOG_FILE_PATH, format=LOG_FORMAT)
