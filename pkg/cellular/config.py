"""
Global configuration module for the cellular integral workbench.

This module stores all project-level constants and tunables including:
- Enumeration limits
- Identity-testing parameters for factored rationals
- Quadrature and Monte Carlo settings
- Integer-relation acceptance thresholds

Use load_config() to retrieve all current settings as a dictionary.
Use update_config(key, value) to modify settings at runtime.
"""

import os
from pathlib import Path
from typing import Any, Dict

# ============================================================================
# PROJECT PATHS
# ============================================================================

BASE_DIR = Path(__file__).parent.parent
LOG_DIR = BASE_DIR / "logs"
LOG_FILE = LOG_DIR / "cellular.log"

# ============================================================================
# ENUMERATION
# ============================================================================

ENUMERATION_SOFT_CAP = 12  # Larger n is allowed but logged as slow
ENUMERATION_HARD_CAP = 13
DEFAULT_THREADS = int(os.getenv("CELLULAR_THREADS", "1"))

# ============================================================================
# FORMS
# ============================================================================

IDENTITY_FAILURE_BITS = 60  # Identity tests accept a false pass with probability below 2**-bits
IDENTITY_SAMPLE_BITS = 64  # Coordinates drawn from [-2**bits, 2**bits], widened for high degree
VALUATION_ORACLE_DIGITS = 60

# ============================================================================
# RECURRENCES
# ============================================================================

DISCOVER_SAFETY_MARGIN = 5  # Extra equations beyond the unknown count
DISCOVER_MODULUS = 2**61 - 1  # Prime used to screen candidate (order, degree) pairs
DIAGNOSTICS_DIGITS = 400

# ============================================================================
# QUADRATURE
# ============================================================================

DEFAULT_DIGITS = int(os.getenv("CELLULAR_DIGITS", "30"))
QUAD_START_LEVEL = 3  # Step 2**-3, roughly 2**6 nodes per dimension
QUAD_MAX_LEVEL = 8
QUAD_GUARD_DIGITS = 10
QUAD_GUARD_PER_DIM = 5
FAST_PATH_MAX_DIGITS = 15  # At or below this, tanh-sinh runs in numpy float64
QUAD_ANALYTIC_REDUCTION = True  # Integrate one eligible variable via 2F1
QUAD_MAX_DIMENSION = 3
QUAD_FAST_MAX_DIMENSION = 4

# ============================================================================
# MONTE CARLO
# ============================================================================

MC_DEFAULT_SAMPLES = 2**16
MC_SCRAMBLES = 16  # Independent scrambles; spread of their means gives the error
MC_BATCH = 2**16
MC_SMOOTHING = True  # x = u^2 (3 - 2u) before evaluating the integrand
MC_MAX_DIMENSION = 6

# ============================================================================
# MAXIMUM ON CELL
# ============================================================================

MAX_GRID_POINTS = 12  # Interior grid points per dimension
MAX_REFINE_STARTS = 4

# ============================================================================
# RELATIONS
# ============================================================================

RELATION_ACCEPT_EXPONENT = 0.6  # Residual must be below 10**(-0.6 * digits)
RELATION_MIN_DIGITS_BASE = 20
RELATION_MIN_DIGITS_PER_CONSTANT = 10
LLL_DELTA = "3/4"

# ============================================================================
# APPLICATION SETTINGS
# ============================================================================

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
DEFAULT_SEED = 20140917

# ============================================================================
# CONFIGURATION MANAGEMENT
# ============================================================================


def _defaults() -> Dict[str, Any]:
    return {
        "BASE_DIR": str(BASE_DIR),
        "LOG_FILE": str(LOG_FILE),

        # Enumeration
        "ENUMERATION_SOFT_CAP": ENUMERATION_SOFT_CAP,
        "ENUMERATION_HARD_CAP": ENUMERATION_HARD_CAP,
        "DEFAULT_THREADS": DEFAULT_THREADS,

        # Forms
        "IDENTITY_FAILURE_BITS": IDENTITY_FAILURE_BITS,
        "IDENTITY_SAMPLE_BITS": IDENTITY_SAMPLE_BITS,
        "VALUATION_ORACLE_DIGITS": VALUATION_ORACLE_DIGITS,

        # Recurrences
        "DISCOVER_SAFETY_MARGIN": DISCOVER_SAFETY_MARGIN,
        "DISCOVER_MODULUS": DISCOVER_MODULUS,
        "DIAGNOSTICS_DIGITS": DIAGNOSTICS_DIGITS,

        # Quadrature
        "DEFAULT_DIGITS": DEFAULT_DIGITS,
        "QUAD_START_LEVEL": QUAD_START_LEVEL,
        "QUAD_MAX_LEVEL": QUAD_MAX_LEVEL,
        "QUAD_GUARD_DIGITS": QUAD_GUARD_DIGITS,
        "QUAD_GUARD_PER_DIM": QUAD_GUARD_PER_DIM,
        "FAST_PATH_MAX_DIGITS": FAST_PATH_MAX_DIGITS,
        "QUAD_ANALYTIC_REDUCTION": QUAD_ANALYTIC_REDUCTION,
        "QUAD_MAX_DIMENSION": QUAD_MAX_DIMENSION,
        "QUAD_FAST_MAX_DIMENSION": QUAD_FAST_MAX_DIMENSION,

        # Monte Carlo
        "MC_DEFAULT_SAMPLES": MC_DEFAULT_SAMPLES,
        "MC_SCRAMBLES": MC_SCRAMBLES,
        "MC_BATCH": MC_BATCH,
        "MC_SMOOTHING": MC_SMOOTHING,
        "MC_MAX_DIMENSION": MC_MAX_DIMENSION,

        # Maximum on cell
        "MAX_GRID_POINTS": MAX_GRID_POINTS,
        "MAX_REFINE_STARTS": MAX_REFINE_STARTS,

        # Relations
        "RELATION_ACCEPT_EXPONENT": RELATION_ACCEPT_EXPONENT,
        "RELATION_MIN_DIGITS_BASE": RELATION_MIN_DIGITS_BASE,
        "RELATION_MIN_DIGITS_PER_CONSTANT": RELATION_MIN_DIGITS_PER_CONSTANT,
        "LLL_DELTA": LLL_DELTA,

        # Application
        "LOG_LEVEL": LOG_LEVEL,
        "DEFAULT_SEED": DEFAULT_SEED,
    }


# Global configuration dictionary (stores runtime-modifiable values)
_config: Dict[str, Any] = _defaults()


def load_config() -> Dict[str, Any]:
    """
    Load and return all current configuration values as a dictionary.

    Returns:
        Dict[str, Any]: A copy of every configuration key-value pair.

    Example:
        >>> config = load_config()
        >>> config["QUAD_START_LEVEL"]
        3
    """
    return _config.copy()


def update_config(key: str, value: Any) -> bool:
    """
    Update a configuration value at runtime.

    Args:
        key (str): The configuration key to update.
        value (Any): The new value for the configuration key.

    Returns:
        bool: True if update was successful.

    Raises:
        KeyError: If the key does not exist.
    """
    if key not in _config:
        raise KeyError(f"Configuration key '{key}' does not exist.")

    _config[key] = value
    return True


def get_config(key: str, default: Any = None) -> Any:
    """
    Get a specific configuration value.

    Args:
        key (str): The configuration key to retrieve.
        default (Any): Default value if key is not found.

    Returns:
        Any: The configuration value, or default if not found.
    """
    return _config.get(key, default)


def reset_config() -> None:
    """
    Reset all configuration values to their defaults.

    Useful for testing or resetting state between CLI invocations.
    """
    global _config
    _config = _defaults()
